//! Whether two foci of a line sweep the same curve or surface.

use std::collections::BTreeMap;

use num::{BigInt, Integer, One, Zero};

use crate::exactalg::matrix::{det_int, kernel};
use crate::exactalg::rat::{rat_sqrt, Sampler};
use crate::exactalg::upoly::{self, UPoly};
use crate::exactalg::{square_root_up_to_constant, MPoly, Rat, Vars};
use crate::families::{FamilySpec, FiberPoint, ParamPoint};
use crate::focal::GlobalFocalForm;

/// Coefficients of `H` as a polynomial in the fiber coordinates, keyed by
/// the fiber exponent and living in the parameter ring.
pub(super) fn fiber_coefficients(h: &MPoly, params: &Vars) -> BTreeMap<Vec<u32>, MPoly> {
    let n = params.len();
    let mut out: BTreeMap<Vec<u32>, MPoly> = BTreeMap::new();
    for (e, c) in h.terms() {
        let (te, xe) = e.split_at(n);
        let term = MPoly::monomial(params, te.to_vec(), c.clone());
        let slot = out.entry(xe.to_vec()).or_insert_with(|| MPoly::zero(params));
        *slot = &*slot + &term;
    }
    out
}

/// A focus of the form `L(t, x) = α(t)·x0 + β(t)·x1 = 0`, swept by the map
/// `t ↦ β(t)·P0(t) − α(t)·P1(t)`.
#[derive(Clone, Debug)]
struct LinearBranch {
    alpha: MPoly,
    beta: MPoly,
}

impl LinearBranch {
    fn vanishes_at(&self, t: &ParamPoint, x: &[Rat]) -> bool {
        (self.alpha.eval(t.values()) * &x[0] + self.beta.eval(t.values()) * &x[1]).is_zero()
    }

    fn image_map(&self, spec: &FamilySpec) -> Vec<MPoly> {
        let p0 = spec.span()[0].coords();
        let p1 = spec.span()[1].coords();
        let raw: Vec<MPoly> = p0
            .iter()
            .zip(p1)
            .map(|(a, b)| &(&self.beta * a) - &(&self.alpha * b))
            .collect();
        let g = crate::exactalg::gcd_polys(&raw);
        raw.iter().map(|c| c.div_exact(&g).expect("gcd divides")).collect()
    }
}

/// Result of splitting the binary quadratic `H` over the parameter field.
enum Split {
    /// `H` is irreducible over the algebraic closure of the parameter field.
    Irreducible,
    Linear(LinearBranch, LinearBranch),
    /// Splits only after adjoining the square root of a constant.
    OverQuadraticField,
}

fn split_quadratic(gf: &GlobalFocalForm, params: &Vars) -> Option<Split> {
    let coeffs = fiber_coefficients(&gf.reduced, params);
    if coeffs.keys().any(|e| e.len() != 2 || e.iter().sum::<u32>() != 2) {
        return None;
    }
    let zero = MPoly::zero(params);
    let get = |e: [u32; 2]| coeffs.get(&e.to_vec()).cloned().unwrap_or_else(|| zero.clone());
    let a = get([2, 0]);
    let b = get([1, 1]);
    let c = get([0, 2]);
    let four = Rat::from_integer(4.into());
    let disc = &(&b * &b) - &(&a * &c).scale(&four);
    if disc.is_zero() {
        return None;
    }
    if a.is_zero() {
        // H = x1·(b·x0 + c·x1)
        let one = MPoly::one(params);
        return Some(Split::Linear(
            LinearBranch { alpha: zero.clone(), beta: one },
            LinearBranch { alpha: b, beta: c },
        ));
    }
    let Some(root) = square_root_up_to_constant(&disc) else {
        return Some(Split::Irreducible);
    };
    let lc = disc.leading_coeff();
    let Some(rho) = rat_sqrt(&lc) else {
        return Some(Split::OverQuadraticField);
    };
    // 4a·H = (2a·x0 + (b − ρR)·x1)(2a·x0 + (b + ρR)·x1)
    let two_a = a.scale(&Rat::from_integer(2.into()));
    let r = root.scale(&rho);
    Some(Split::Linear(
        LinearBranch { alpha: two_a.clone(), beta: &b - &r },
        LinearBranch { alpha: two_a, beta: &b + &r },
    ))
}

/// Whether the focal form of a line family is an irreducible binary
/// quadratic over the algebraic closure of the parameter field, so that
/// both foci of a member lie on one component.
pub fn focal_form_irreducible(spec: &FamilySpec, gf: &GlobalFocalForm) -> bool {
    spec.k() == 1 && matches!(split_quadratic(gf, spec.params()), Some(Split::Irreducible))
}

/// Decides whether the two simple foci `f1`, `f2` on the member over `t`
/// sweep the same locus. `None` when the question cannot be settled
/// exactly.
pub fn same_swept_locus(
    spec: &FamilySpec,
    gf: &GlobalFocalForm,
    t: &ParamPoint,
    f1: &FiberPoint,
    f2: &FiberPoint,
    sampler: &mut Sampler,
) -> Option<bool> {
    if spec.k() != 1 {
        return None;
    }
    match split_quadratic(gf, spec.params())? {
        Split::Irreducible => Some(true),
        Split::OverQuadraticField => None,
        Split::Linear(l1, l2) => {
            let (b1, b2) = if l1.vanishes_at(t, f1.coords()) && l2.vanishes_at(t, f2.coords()) {
                (l1, l2)
            } else if l2.vanishes_at(t, f1.coords()) && l1.vanishes_at(t, f2.coords()) {
                (l2, l1)
            } else {
                return None;
            };
            let q1 = spec.point_at(t, f1.coords());
            let q2 = spec.point_at(t, f2.coords());
            let forward = in_image(&b1.image_map(spec), &q2, sampler);
            let backward = in_image(&b2.image_map(spec), &q1, sampler);
            (forward == backward).then_some(forward)
        }
    }
}

/// Whether `q` lies on the image of the polynomial map `s` from the
/// parameter plane to P^N: the linear forms through `q` pulled back along
/// `s` must have a common zero. Two resultants of random combinations
/// are compared after a random linear change of parameters. The random
/// coefficients are small integers, which keeps the resultants cheap.
pub fn in_image(s: &[MPoly], q: &[Rat], sampler: &mut Sampler) -> bool {
    let vars = s[0].vars().clone();
    assert_eq!(vars.len(), 2, "image test is implemented for two parameters");
    let y1 = MPoly::var(&vars, 0);
    let y2 = MPoly::var(&vars, 1);
    let mut small = || Rat::from_integer(sampler.int(-IMAGE_BOUND, IMAGE_BOUND).into());
    let m: Vec<Rat> = (0..6).map(|_| small()).collect();
    let sub = [
        &(&y1.scale(&m[0]) + &y2.scale(&(&m[1] + Rat::one()))) + &MPoly::constant(&vars, m[4].clone()),
        &(&y1.scale(&(&m[2] + Rat::one())) + &y2.scale(&m[3])) + &MPoly::constant(&vars, m[5].clone()),
    ];
    let moved: Vec<MPoly> = s.iter().map(|c| c.compose(&sub, &vars)).collect();
    let forms = kernel(&[q.to_vec()], q.len());
    let pulled: Vec<MPoly> = forms
        .iter()
        .map(|l| {
            let p = l
                .iter()
                .zip(&moved)
                .fold(MPoly::zero(&vars), |acc, (c, p)| &acc + &p.scale(c));
            integral(&p)
        })
        .collect();
    if pulled.iter().all(|p| p.is_zero()) {
        return true;
    }
    let mut combo = || {
        pulled
            .iter()
            .fold(MPoly::zero(&vars), |acc, p| &acc + &p.scale(&small()))
    };
    let (a, b, c) = (combo(), combo(), combo());
    let r1 = resultant_in_second(&a, &b);
    let r2 = resultant_in_second(&a, &c);
    if r1.is_empty() || r2.is_empty() {
        return true;
    }
    upoly::gcd(&r1, &r2).len() > 1
}

const IMAGE_BOUND: i64 = 1000;

/// `p` scaled to integer coefficients.
fn integral(p: &MPoly) -> MPoly {
    let l = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    p.scale(&Rat::from_integer(l))
}

/// `Res_{y2}(a, b)` as a polynomial in `y1`, by evaluation at integer points
/// and interpolation. The Sylvester matrix uses the total degrees as formal
/// degrees in `y2`. Both inputs have integer coefficients.
fn resultant_in_second(a: &MPoly, b: &MPoly) -> UPoly {
    let da = a.total_degree() as usize;
    let db = b.total_degree() as usize;
    if da == 0 || db == 0 {
        // a nonzero constant has no common zero with anything
        let c = if da == 0 { a } else { b };
        return if c.is_zero() { Vec::new() } else { vec![Rat::one()] };
    }
    let bound = da * db;
    let xs: Vec<Rat> = (0..=bound as i64).map(|i| Rat::from_integer(i.into())).collect();
    let ys: Vec<Rat> = (0..=bound as i64)
        .map(|x| {
            let ua = coefficients_in_second(a, x, da);
            let ub = coefficients_in_second(b, x, db);
            Rat::from_integer(det_int(&sylvester(&ua, &ub)))
        })
        .collect();
    interpolate(&xs, &ys)
}

/// Coefficients in `y2` (ascending, padded to `d + 1`) after `y1 = x`.
fn coefficients_in_second(p: &MPoly, x: i64, d: usize) -> Vec<BigInt> {
    let x = BigInt::from(x);
    let mut out = vec![BigInt::zero(); d + 1];
    for (e, c) in p.terms() {
        debug_assert!(c.is_integer());
        out[e[1] as usize] += c.numer() * num::pow(x.clone(), e[0] as usize);
    }
    out
}

fn sylvester(a: &[BigInt], b: &[BigInt]) -> Vec<Vec<BigInt>> {
    let da = a.len() - 1;
    let db = b.len() - 1;
    let size = da + db;
    let mut m = vec![vec![BigInt::zero(); size]; size];
    for i in 0..db {
        for (j, c) in a.iter().rev().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..da {
        for (j, c) in b.iter().rev().enumerate() {
            m[db + i][i + j] = c.clone();
        }
    }
    m
}

/// Newton interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[Rat], ys: &[Rat]) -> UPoly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p: UPoly = vec![coef[n - 1].clone()];
    for i in (0..n - 1).rev() {
        p = upoly::mul(&p, &[-xs[i].clone(), Rat::one()]);
        if p.is_empty() {
            p = vec![Rat::zero()];
        }
        p[0] += &coef[i];
    }
    upoly::trim(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::rat;

    #[test]
    fn interpolation_recovers_a_cubic() {
        let p = vec![rat(3), rat(0), rat(-2), rat(5)];
        let xs: Vec<Rat> = (0..6).map(rat).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| upoly::eval(&p, x)).collect();
        assert_eq!(interpolate(&xs, &ys), p);
    }

    #[test]
    fn resultant_detects_common_roots() {
        let v = Vars::new(&["a", "b"]);
        let a = MPoly::var(&v, 0);
        let b = MPoly::var(&v, 1);
        // b - a and b + a - 2 meet at (1, 1)
        let f = &b - &a;
        let g = &(&b + &a) - &MPoly::constant(&v, rat(2));
        let r = resultant_in_second(&f, &g);
        assert_eq!(upoly::rational_roots(&r), vec![rat(1)]);
    }

    #[test]
    fn image_membership_on_the_veronese() {
        let v = Vars::new(&["u", "w"]);
        let u = MPoly::var(&v, 0);
        let w = MPoly::var(&v, 1);
        let s = vec![MPoly::one(&v), u.clone(), w.clone(), u.pow(2), &u * &w, w.pow(2)];
        let mut smp = Sampler::new(3);
        let on: Vec<Rat> = vec![rat(1), rat(2), rat(-3), rat(4), rat(-6), rat(9)];
        assert!(in_image(&s, &on, &mut smp));
        let off: Vec<Rat> = vec![rat(1), rat(2), rat(-3), rat(4), rat(-6), rat(10)];
        assert!(!in_image(&s, &off, &mut smp));
    }
}
