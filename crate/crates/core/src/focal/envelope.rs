use crate::exactalg::matrix::{kernel, subsets};
use crate::exactalg::rat::Sampler;
use crate::exactalg::{gcd_polys, LinSubspace, MPoly, Monomial, Rat};
use crate::families::{df_image, df_rank, FamilySpec, FiberPoint, ParamPoint};
use crate::{Error, Result};

use super::charmat::CharMatrix;

/// A subspace of V containing the fiber cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentEnvelope {
    pub subspace: LinSubspace,
}

impl TangentEnvelope {
    pub fn projective_dim(&self) -> isize {
        self.subspace.projective_dim()
    }
}

/// Space spanned by the fiber and every normal direction that lies in the
/// image of the characteristic map at all fiber points. For line fibers
/// the membership conditions are the coefficient equations of
/// `Σ_i w_i ψ_i = 0`, where `ψ = φ / gcd(φ)` and `φ` are the signed maximal
/// minors of each `(n+1)`-row block of the matrix.
pub fn fixed_tangent_space(cm: &CharMatrix) -> Result<TangentEnvelope> {
    if cm.k() != 1 {
        return Err(Error::inapplicable("fixed tangent space is defined for line fibers"));
    }
    let n = cm.n();
    let c = cm.codim();
    if cm.matrix.maximal_minors().iter().all(|(_, m)| m.is_zero()) {
        return Err(Error::FocalFiber);
    }
    let mut equations: Vec<Vec<Rat>> = Vec::new();
    for rows in subsets(c, n + 1) {
        let block = cm.matrix.submatrix(&rows, &(0..n).collect::<Vec<_>>());
        let phi = block.signed_maximal_minors()?;
        let g = gcd_polys(&phi);
        if g.is_zero() {
            continue;
        }
        let psi: Vec<MPoly> = phi.iter().map(|p| p.div_exact(&g).expect("gcd divides")).collect();
        let deg = n as u32 - g.total_degree();
        for e in 0..=deg {
            let mono: Monomial = vec![deg - e, e];
            let mut eq = vec![Rat::from_integer(0.into()); c];
            for (&r, p) in rows.iter().zip(&psi) {
                eq[r] = p.coeff(&mono);
            }
            equations.push(eq);
        }
    }
    let sol = if equations.is_empty() {
        (0..c).map(|i| crate::exactalg::subspace::unit(c, i)).collect()
    } else {
        kernel(&equations, c)
    };
    let lifted: Vec<Vec<Rat>> = sol.iter().map(|w| cm.lift(w)).collect();
    let subspace = cm.fiber.sum(&LinSubspace::span(cm.fiber.ambient(), &lifted));
    Ok(TangentEnvelope { subspace })
}

/// Number of fiber points used by [`tangent_envelope`]: enough that a
/// form of degree `n` in `k+1` variables vanishing at all of them must vanish.
pub fn envelope_sample_count(spec: &FamilySpec, samples: usize) -> usize {
    let needed = binomial(spec.n() + spec.k(), spec.k()) + 1;
    samples.max(needed)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Intersection of the embedded tangent spaces of the union at random
/// smooth points of the fiber over `t`.
pub fn tangent_envelope(
    spec: &FamilySpec,
    t: &ParamPoint,
    samples: usize,
    sampler: &mut Sampler,
) -> Result<TangentEnvelope> {
    let want = envelope_sample_count(spec, samples);
    let full = spec.n() + spec.k() + 1;
    let mut acc: Option<LinSubspace> = None;
    let mut used = 0;
    let mut attempts = 0;
    while used < want && attempts < 4 * want {
        attempts += 1;
        let x = sampler.rats(spec.k() + 1);
        if x.iter().all(num::Zero::is_zero) || df_rank(spec, t, &x) < full {
            continue;
        }
        let tp = df_image(spec, t, &x);
        acc = Some(match acc {
            None => tp,
            Some(a) => a.intersect(&tp),
        });
        used += 1;
    }
    match acc {
        Some(subspace) if used == want => Ok(TangentEnvelope { subspace }),
        _ => Err(Error::non_generic("too few smooth points on the sampled fiber")),
    }
}

/// Rank of the incidence Jacobian at `(t, x)`; the point is focal iff this
/// is below `n + k + 1`.
pub fn df_rank_oracle(spec: &FamilySpec, t: &ParamPoint, x: &FiberPoint) -> usize {
    df_rank(spec, t, x.coords())
}
