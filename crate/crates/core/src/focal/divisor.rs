use num::{One, Zero};

use crate::exactalg::upoly::{self, UPoly};
use crate::exactalg::{gcd_polys, LinSubspace, MPoly, PolyMatrix, QuadNum, Rat, Vars};
use crate::families::FiberPoint;
use crate::{Error, Result};

use super::charmat::CharMatrix;

/// Rank-drop divisor of the characteristic map on one fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FocalDivisor {
    /// Monic form in `x0..xk`; zero when the whole fiber is focal.
    pub form: MPoly,
    pub degree: usize,
    /// Rational roots with multiplicity (line fibers only), sorted.
    pub roots: Vec<(FiberPoint, usize)>,
    /// Factors without rational roots, with multiplicity (line fibers only).
    pub residual: Vec<(MPoly, usize)>,
    pub whole_fiber_focal: bool,
    /// Computed as the determinant of the reduced square matrix.
    pub theorem_b: bool,
    /// Plane-or-higher fibers outside the square situation: the gcd of
    /// maximal minors is used as the focal form.
    pub extrapolated: bool,
}

impl FocalDivisor {
    pub fn vanishes_at(&self, x: &[Rat]) -> bool {
        self.form.eval(x).is_zero()
    }

    pub fn multiplicity_of(&self, p: &FiberPoint) -> usize {
        self.roots
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, m)| *m)
    }

    /// Total multiplicity accounted for by rational roots and residual factors.
    pub fn factored_degree(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum::<usize>()
            + self
                .residual
                .iter()
                .map(|(f, m)| f.total_degree() as usize * m)
                .sum::<usize>()
    }

    /// The form rendered as a product of its factors, e.g. `x0*x1^2`.
    pub fn factored_string(&self) -> String {
        if self.whole_fiber_focal {
            return "0".into();
        }
        if self.form.vars().len() != 2 {
            return self.form.to_string();
        }
        let vars = self.form.vars();
        let mut parts: Vec<String> = Vec::new();
        for (p, m) in &self.roots {
            let l = linear_form_vanishing_at(vars, p.coords());
            parts.push(power_string(&l, *m));
        }
        for (f, m) in &self.residual {
            parts.push(power_string(f, *m));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

fn power_string(f: &MPoly, m: usize) -> String {
    let base = if f.num_terms() > 1 { format!("({f})") } else { f.to_string() };
    if m == 1 {
        base
    } else {
        format!("{base}^{m}")
    }
}

/// `x1·p0 − x0·p1`, scaled monic: the binary linear form with root `p`.
pub fn linear_form_vanishing_at(vars: &Vars, p: &[Rat]) -> MPoly {
    let x0 = MPoly::var(vars, 0);
    let x1 = MPoly::var(vars, 1);
    (&x1.scale(&p[0]) - &x0.scale(&p[1])).monic()
}

/// Coordinates of the characteristic matrix columns in a basis of `w`,
/// a subspace of the normal space containing every coefficient vector.
pub fn reduced_matrix(cm: &CharMatrix, w: &LinSubspace) -> Result<PolyMatrix> {
    let xv = cm.fiber_vars().clone();
    let n = cm.n();
    let d = w.dim();
    let mut m = PolyMatrix::zeros(&xv, d, n);
    for (j, vs) in cm.coeffs.iter().enumerate() {
        let coords: Vec<Vec<Rat>> = vs
            .iter()
            .map(|v| {
                w.coordinates(v)
                    .ok_or_else(|| Error::inapplicable("characteristic image leaves the given subspace"))
            })
            .collect::<Result<_>>()?;
        for i in 0..d {
            let e = coords.iter().enumerate().fold(MPoly::zero(&xv), |acc, (a, c)| {
                &acc + &MPoly::var(&xv, a).scale(&c[i])
            });
            m.set(i, j, e);
        }
    }
    Ok(m)
}

pub fn focal_divisor(cm: &CharMatrix) -> FocalDivisor {
    let n = cm.n();
    let k = cm.k();
    let xv = cm.fiber_vars().clone();
    let minors: Vec<MPoly> = cm.matrix.maximal_minors().into_iter().map(|(_, m)| m).collect();
    let whole = minors.iter().all(|m| m.is_zero());
    let total = cm.total_image();
    let theorem_b = !whole && total.dim() == n && cm.codim() >= n;
    let form = if whole {
        MPoly::zero(&xv)
    } else if theorem_b {
        reduced_matrix(cm, &total)
            .expect("total image contains every column")
            .det()
            .expect("square")
            .monic()
    } else {
        gcd_polys(&minors)
    };
    let degree = form.total_degree() as usize;
    let (roots, residual) = if k == 1 && !whole {
        factor_binary_form(&form)
    } else {
        (Vec::new(), Vec::new())
    };
    FocalDivisor {
        form,
        degree,
        roots,
        residual,
        whole_fiber_focal: whole,
        theorem_b,
        extrapolated: k >= 2 && !theorem_b && n > 1,
    }
}

/// `F(1, y)` for a binary form `F(x0, x1)`.
pub fn dehomogenize(f: &MPoly) -> UPoly {
    let d = f.total_degree();
    let mut out = vec![Rat::zero(); d as usize + 1];
    for (e, c) in f.terms() {
        out[e[1] as usize] += c;
    }
    upoly::trim(out)
}

/// Binary form of degree `d` from `h(y)`: `x0^d·h(x1/x0)`.
pub fn homogenize(vars: &Vars, h: &[Rat], d: usize) -> MPoly {
    MPoly::from_terms(
        vars,
        h.iter()
            .enumerate()
            .map(|(i, c)| (vec![(d - i) as u32, i as u32], c.clone())),
    )
}

/// Rational roots with multiplicities and the remaining factors of a
/// binary form.
pub fn factor_binary_form(f: &MPoly) -> (Vec<(FiberPoint, usize)>, Vec<(MPoly, usize)>) {
    let vars = f.vars().clone();
    let d = f.total_degree() as usize;
    let g = dehomogenize(f);
    let mut roots = Vec::new();
    let mut residual = Vec::new();
    let e = g.len().saturating_sub(1);
    if d > e {
        roots.push((FiberPoint::new(vec![Rat::zero(), Rat::one()]).unwrap(), d - e));
    }
    for (factor, m) in upoly::squarefree_decomposition(&g) {
        let rs = upoly::rational_roots(&factor);
        let mut rest = factor.clone();
        for r in &rs {
            roots.push((FiberPoint::new(vec![Rat::one(), r.clone()]).unwrap(), m));
            rest = upoly::div_rem(&rest, &[-r.clone(), Rat::one()]).0;
        }
        if rest.len() > 1 {
            residual.push((homogenize(&vars, &rest, rest.len() - 1).monic(), m));
        }
    }
    roots.sort();
    (roots, residual)
}

/// The two conjugate roots `(1 : y±)` of an irreducible binary quadratic,
/// as points over Q(√disc).
pub fn quadratic_roots(q: &MPoly) -> Option<[Vec<QuadNum>; 2]> {
    let h = dehomogenize(q);
    if h.len() != 3 || q.total_degree() != 2 {
        return None;
    }
    let (c, b, a) = (&h[0], &h[1], &h[2]);
    let disc = b * b - Rat::from_integer(4.into()) * a * c;
    if crate::exactalg::rat::rat_sqrt(&disc).is_some() {
        return None;
    }
    let two_a = a * Rat::from_integer(2.into());
    let re = -b / &two_a;
    let im = Rat::one() / &two_a;
    let one = QuadNum::new(Rat::one(), Rat::zero(), disc.clone());
    Some([
        vec![one.clone(), QuadNum::new(re.clone(), im.clone(), disc.clone())],
        vec![one, QuadNum::new(re, -im, disc)],
    ])
}
