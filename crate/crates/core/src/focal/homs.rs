use num::Zero;

use crate::exactalg::matrix::kernel;
use crate::exactalg::rat::Sampler;
use crate::exactalg::{LinSubspace, MPoly, Rat};
use crate::families::{FamilySpec, FiberPoint, ParamPoint};
use crate::{Error, Result};

use super::charmat::{characteristic_matrix, CharMatrix, TangentHom};
use super::divisor::focal_divisor;

/// A rank-one tangent homomorphism and the focal point it kills.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneClass {
    pub hom: TangentHom,
    pub combination: Vec<Rat>,
    pub kernel: FiberPoint,
    /// Dimension of the space of combinations killing the same point;
    /// above one the class is a whole pencil.
    pub pencil_dim: usize,
}

impl RankOneClass {
    pub fn is_pencil(&self) -> bool {
        self.pencil_dim > 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneHoms {
    /// One entry per rational focus.
    pub classes: Vec<RankOneClass>,
    /// Foci with no rational coordinates, grouped by their factor:
    /// `(factor, number of geometric foci)`.
    pub irrational: Vec<(MPoly, usize)>,
}

impl RankOneHoms {
    /// Number of classes over the algebraic closure.
    pub fn count(&self) -> usize {
        self.classes.len() + self.irrational.iter().map(|(_, c)| c).sum::<usize>()
    }

    pub fn has_pencil(&self) -> bool {
        self.classes.iter().any(|c| c.is_pencil())
    }
}

/// Rank-one elements of the span of `∂/∂t_1..∂/∂t_n`, one class per focus.
/// A combination `c` kills `v` exactly when `A(v)·c = 0`, so the classes
/// are the kernels `ker A(v)` over the foci `v`.
pub fn rank_one_homs(spec: &FamilySpec, t: &ParamPoint) -> Result<RankOneHoms> {
    if spec.k() != 1 {
        return Err(Error::inapplicable("rank-one homomorphisms are computed for line families"));
    }
    let cm = characteristic_matrix(spec, t)?;
    let div = focal_divisor(&cm);
    if div.whole_fiber_focal {
        return Err(Error::FocalFiber);
    }
    let mut classes = Vec::new();
    for (v, _) in &div.roots {
        let a = cm.at(v.coords());
        let ker = kernel(&a, cm.n());
        if ker.is_empty() {
            continue;
        }
        let c = ker[0].clone();
        let hom = cm.combination(&c);
        classes.push(RankOneClass {
            hom,
            combination: c,
            kernel: v.clone(),
            pencil_dim: ker.len(),
        });
    }
    let irrational = div
        .residual
        .iter()
        .map(|(f, _)| (f.clone(), f.total_degree() as usize))
        .collect();
    Ok(RankOneHoms { classes, irrational })
}

/// A pair `(η1, η2)` with `η1(v) = 0`, `η1 ≠ 0`, `η2(v) ∈ Im η1` and
/// `Im η2 ≠ Im η1`, or `None` when no such pair exists.
pub fn multiplicity_witness(
    spec: &FamilySpec,
    t: &ParamPoint,
    focus: &FiberPoint,
) -> Result<Option<(TangentHom, TangentHom)>> {
    let cm = characteristic_matrix(spec, t)?;
    if focus.coords().len() != spec.k() + 1 {
        return Err(Error::input("focus has the wrong number of fiber coordinates"));
    }
    let div = focal_divisor(&cm);
    if !div.whole_fiber_focal && !div.vanishes_at(focus.coords()) {
        return Err(Error::input(format!("{focus} is not a root of the focal divisor")));
    }
    Ok(witness_in(&cm, focus.coords()))
}

fn witness_in(cm: &CharMatrix, v: &[Rat]) -> Option<(TangentHom, TangentHom)> {
    let n = cm.n();
    let av = cm.at(v);
    let k_basis = kernel(&av, n);
    let mut sampler = Sampler::new(0x77);
    for c1 in candidates(&k_basis, &mut sampler) {
        let eta1 = cm.combination(&c1);
        if eta1.is_zero() {
            continue;
        }
        let im1 = eta1.image();
        // D = { d : A(v)·d ∈ Im η1 }: kernel of the composite with a projection
        // killing Im η1
        let proj = annihilator(&im1);
        let comp: Vec<Vec<Rat>> = proj
            .iter()
            .map(|row| {
                (0..n)
                    .map(|j| row.iter().zip(&av).fold(Rat::zero(), |acc, (p, r)| acc + p * &r[j]))
                    .collect()
            })
            .collect();
        let d_basis = if comp.is_empty() {
            (0..n).map(|i| crate::exactalg::subspace::unit(n, i)).collect()
        } else {
            kernel(&comp, n)
        };
        let line = LinSubspace::span(n, std::slice::from_ref(&c1));
        for d in candidates(&d_basis, &mut sampler) {
            if line.contains(&d) {
                continue;
            }
            let eta2 = cm.combination(&d);
            if eta2.image() != im1 {
                return Some((eta1, eta2));
            }
        }
    }
    None
}

/// Basis vectors followed by a few random combinations.
fn candidates(basis: &[Vec<Rat>], sampler: &mut Sampler) -> Vec<Vec<Rat>> {
    let mut out: Vec<Vec<Rat>> = basis.to_vec();
    if basis.len() > 1 {
        for _ in 0..3 {
            let cs = sampler.rats(basis.len());
            let mut v = vec![Rat::zero(); basis[0].len()];
            for (c, b) in cs.iter().zip(basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += c * y;
                }
            }
            out.push(v);
        }
    }
    out
}

/// Rows spanning the linear forms that vanish on `w`.
fn annihilator(w: &LinSubspace) -> Vec<Vec<Rat>> {
    kernel(w.basis(), w.ambient())
}
