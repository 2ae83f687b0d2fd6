//! Focus branches: the focal locus near a member of the family, traced
//! through the global focal form `H(t, x)` on the incidence variety.

use num::{One, Zero};

use crate::exactalg::matrix::{kernel, mat_vec, rank, solve, transpose};
use crate::exactalg::rat::Sampler;
use crate::exactalg::upoly::{self, UPoly};
use crate::exactalg::{content_wrt, gcd_polys, squarefree_part_wrt, Field, MPoly, PolyMatrix, QuadNum, Rat, Vars};
use crate::families::{incidence, FamilySpec, FiberPoint, IncidenceMap, ParamPoint};
use crate::{Error, Result};

use super::charmat::characteristic_matrix;
use super::divisor::{focal_divisor, quadratic_roots, FocalDivisor};

/// Focal form of the whole family on the incidence variety.
#[derive(Clone, Debug)]
pub struct GlobalFocalForm {
    pub incidence: IncidenceMap,
    pub jacobian: PolyMatrix,
    /// gcd of the maximal minors of the incidence Jacobian, with the factors
    /// free of `x` removed.
    pub form: MPoly,
    /// `form` without repeated factors in `x`.
    pub reduced: MPoly,
    n: usize,
    k: usize,
}

impl GlobalFocalForm {
    pub fn vars(&self) -> &Vars {
        self.incidence.vars()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn point<F: Field>(t: &ParamPoint, x: &[F]) -> Vec<F> {
        t.values().iter().map(F::from_rat).chain(x.iter().cloned()).collect()
    }

    pub fn gradient_at<F: Field>(&self, t: &ParamPoint, x: &[F]) -> Vec<F> {
        let p = Self::point(t, x);
        (0..self.vars().len())
            .map(|i| self.reduced.derivative(i).eval_in(&p))
            .collect()
    }

    pub fn jacobian_at<F: Field>(&self, t: &ParamPoint, x: &[F]) -> Vec<Vec<F>> {
        self.jacobian.eval_in(&Self::point(t, x))
    }
}

pub fn global_focal_form(spec: &FamilySpec) -> Result<GlobalFocalForm> {
    let inc = incidence(spec);
    let jac = inc.jacobian();
    let minors: Vec<MPoly> = jac.maximal_minors().into_iter().map(|(_, m)| m).collect();
    let g0 = gcd_polys(&minors);
    if g0.is_zero() {
        return Err(Error::inapplicable("the union of the family has dimension below n + k"));
    }
    let xs = inc.x_indices();
    let content = content_wrt(&g0, &xs);
    let form = g0.div_exact(&content).expect("content divides").monic();
    let reduced = squarefree_part_wrt(&form, &xs);
    Ok(GlobalFocalForm {
        incidence: inc,
        jacobian: jac,
        form,
        reduced,
        n: spec.n(),
        k: spec.k(),
    })
}

/// A focal point on the fiber over `base`, possibly with coordinates in a
/// quadratic field.
#[derive(Clone, Debug, PartialEq)]
pub struct FocusBranch {
    pub base: ParamPoint,
    pub point: Vec<QuadNum>,
    pub multiplicity: usize,
}

impl FocusBranch {
    pub fn from_rational(base: &ParamPoint, x: &FiberPoint, multiplicity: usize) -> Self {
        FocusBranch {
            base: base.clone(),
            point: x.coords().iter().map(QuadNum::from_rat).collect(),
            multiplicity,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.point.iter().all(|c| c.is_rational())
    }

    pub fn rational_point(&self) -> Option<Vec<Rat>> {
        self.is_rational().then(|| self.point.iter().map(|c| c.a.clone()).collect())
    }
}

/// Focal points of a line fiber: rational roots, then conjugate pairs of
/// quadratic roots. Factors of higher degree are returned separately.
pub fn line_branches(div: &FocalDivisor, base: &ParamPoint) -> (Vec<FocusBranch>, Vec<MPoly>) {
    let mut out: Vec<FocusBranch> = div
        .roots
        .iter()
        .map(|(p, m)| FocusBranch::from_rational(base, p, *m))
        .collect();
    let mut unresolved = Vec::new();
    for (f, m) in &div.residual {
        match quadratic_roots(f) {
            Some(pair) => {
                for r in pair {
                    out.push(FocusBranch {
                        base: base.clone(),
                        point: r,
                        multiplicity: *m,
                    });
                }
            }
            None => unresolved.push(f.clone()),
        }
    }
    (out, unresolved)
}

/// Local data of the swept focal locus at a focus.
#[derive(Clone, Debug)]
pub struct BranchTangent {
    /// Affine cone over the tangent space of the swept locus at the focus.
    pub tangent: Vec<Vec<QuadNum>>,
    /// Projective dimension of the swept locus.
    pub swept_dim: usize,
    /// Rank of the map from parameters to focal points (`swept_dim − (k − 1)`).
    pub sweep_rank: usize,
    /// Dimension of the set of focal pairs `(t, x)` with the same image.
    pub corank: usize,
}

impl BranchTangent {
    /// Whether a positive-dimensional family of members passes through the focus.
    pub fn fundamental(&self) -> bool {
        self.corank > 0
    }
}

/// Tangent space of the swept focal locus: `J · ker ∇H` at `(t*, x*)`.
pub fn branch_tangent(gf: &GlobalFocalForm, b: &FocusBranch) -> Result<BranchTangent> {
    let grad = gf.gradient_at(&b.base, &b.point);
    if grad.iter().all(|g| g.is_zero_el()) {
        return Err(Error::indeterminate("focal form is singular at the focus"));
    }
    let dim = grad.len();
    let ker = kernel(&[grad], dim);
    let jac = gf.jacobian_at(&b.base, &b.point);
    let images: Vec<Vec<QuadNum>> = ker.iter().map(|v| mat_vec(&jac, v)).collect();
    let r = rank(&images);
    let swept_dim = r.saturating_sub(1);
    Ok(BranchTangent {
        tangent: images,
        swept_dim,
        sweep_rank: swept_dim.saturating_sub(gf.k() - 1),
        corank: (gf.n() + gf.k()).saturating_sub(r),
    })
}

/// Sweep rank of a focus branch.
pub fn focus_sweep_rank(spec: &FamilySpec, branch: &FocusBranch) -> Result<usize> {
    let gf = global_focal_form(spec)?;
    Ok(branch_tangent(&gf, branch)?.sweep_rank)
}

/// All line-fiber branches over `t` together with their tangent data.
pub fn branches_at(
    spec: &FamilySpec,
    gf: &GlobalFocalForm,
    t: &ParamPoint,
) -> Result<(FocalDivisor, Vec<(FocusBranch, Result<BranchTangent>)>)> {
    let cm = characteristic_matrix(spec, t)?;
    let div = focal_divisor(&cm);
    if div.whole_fiber_focal {
        return Err(Error::non_generic("the sampled member is a focal fiber"));
    }
    let (bs, _) = line_branches(&div, t);
    let out = bs
        .into_iter()
        .map(|b| {
            let tan = branch_tangent(gf, &b);
            (b, tan)
        })
        .collect();
    Ok((div, out))
}

/// Second-order jet of a focal surface swept by a branch of a line family
/// with two parameters: the point and its first and second derivatives.
#[derive(Clone, Debug)]
pub struct SurfaceJet<F> {
    pub s: Vec<F>,
    pub su: Vec<F>,
    pub sv: Vec<F>,
    pub suu: Vec<F>,
    pub suv: Vec<F>,
    pub svv: Vec<F>,
}

/// Jet of `t ↦ Σ_a x_a(t)·P_a(t)`, where `x(t)` solves `H(t, x) = 0`
/// near the branch point, with one fiber coordinate held at one.
pub fn focal_surface_jet(gf: &GlobalFocalForm, b: &FocusBranch) -> Result<SurfaceJet<QuadNum>> {
    if gf.n() != 2 || gf.k() != 1 {
        return Err(Error::inapplicable("focal surface jets need two parameters and line fibers"));
    }
    let (fixed, free) = if b.point[0].is_zero_el() { (1, 0) } else { (0, 1) };
    let scale = b.point[fixed].inv();
    let x: Vec<QuadNum> = b.point.iter().map(|c| c.mul(&scale)).collect();
    let p = GlobalFocalForm::point(&b.base, &x);
    let h = &gf.reduced;
    let yi = 2 + free;
    let d = |i: usize| h.derivative(i);
    let ev = |q: &MPoly| q.eval_in(&p);
    let hy = ev(&d(yi));
    if hy.is_zero_el() {
        return Err(Error::indeterminate("focus is not a simple root of the focal form"));
    }
    let hyi = hy.inv();
    let y1: Vec<QuadNum> = (0..2).map(|i| ev(&d(i)).mul(&hyi).neg()).collect();
    let mut y2 = vec![vec![QuadNum::zero_el(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let hij = ev(&d(i).derivative(j));
            let hiy = ev(&d(i).derivative(yi));
            let hjy = ev(&d(j).derivative(yi));
            let hyy = ev(&d(yi).derivative(yi));
            let num = hij
                .add(&hiy.mul(&y1[j]))
                .add(&hjy.mul(&y1[i]))
                .add(&hyy.mul(&y1[i]).mul(&y1[j]));
            y2[i][j] = num.mul(&hyi).neg();
        }
    }
    // derivatives of the fiber coordinates
    let mut dx = vec![vec![QuadNum::zero_el(); 2]; 2];
    let mut ddx = vec![vec![vec![QuadNum::zero_el(); 2]; 2]; 2];
    for i in 0..2 {
        dx[free][i] = y1[i].clone();
        for j in 0..2 {
            ddx[free][i][j] = y2[i][j].clone();
        }
    }
    let span = gf.incidence.coords();
    // P_a and its derivatives, read off the incidence map as ∂f/∂x_a
    let xa = |a: usize| 2 + a;
    let pa = |a: usize, ds: &[usize]| -> Vec<QuadNum> {
        span.iter()
            .map(|c| {
                let mut q = c.derivative(xa(a));
                for &i in ds {
                    q = q.derivative(i);
                }
                q.eval_in(&p)
            })
            .collect()
    };
    let dim = span.len();
    let zero = || vec![QuadNum::zero_el(); dim];
    let axpy = |acc: &mut Vec<QuadNum>, c: &QuadNum, v: &[QuadNum]| {
        for (a, b) in acc.iter_mut().zip(v) {
            *a = a.add(&c.mul(b));
        }
    };
    let mut s = zero();
    let mut s1 = vec![zero(), zero()];
    let mut s2 = vec![vec![zero(), zero()], vec![zero(), zero()]];
    for a in 0..2 {
        let p0 = pa(a, &[]);
        axpy(&mut s, &x[a], &p0);
        for i in 0..2 {
            let pi = pa(a, &[i]);
            axpy(&mut s1[i], &x[a], &pi);
            axpy(&mut s1[i], &dx[a][i], &p0);
            for j in 0..2 {
                let pj = pa(a, &[j]);
                let pij = pa(a, &[i, j]);
                axpy(&mut s2[i][j], &x[a], &pij);
                axpy(&mut s2[i][j], &dx[a][j], &pi);
                axpy(&mut s2[i][j], &dx[a][i], &pj);
                axpy(&mut s2[i][j], &ddx[a][i][j], &p0);
            }
        }
    }
    Ok(SurfaceJet {
        s,
        su: s1[0].clone(),
        sv: s1[1].clone(),
        suu: s2[0][0].clone(),
        suv: s2[0][1].clone(),
        svv: s2[1][1].clone(),
    })
}

/// Outcome of comparing the curves swept by two rational foci.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveComparison {
    Same,
    Different,
}

/// Decides whether the focus `other` lies on the curve swept by branch `b`.
/// The branch is followed along a random line of parameter space through
/// the base point: the root is expanded as a power series, recovered as a
/// rational function by Padé approximation and checked exactly; the image
/// curve is then tested for passing through `other`.
pub fn on_swept_curve(
    spec: &FamilySpec,
    gf: &GlobalFocalForm,
    b: &FocusBranch,
    other: &[Rat],
    sampler: &mut Sampler,
) -> Result<bool> {
    let x = b
        .rational_point()
        .ok_or_else(|| Error::indeterminate("curve comparison needs rational foci"))?;
    if spec.k() != 1 {
        return Err(Error::inapplicable("curve comparison is implemented for line families"));
    }
    let n = spec.n();
    let dir = sampler.rats(n);
    let lam = Vars::new(&["l"]);
    let l = MPoly::var(&lam, 0);
    let line: Vec<MPoly> = b
        .base
        .values()
        .iter()
        .zip(&dir)
        .map(|(t0, d)| &MPoly::constant(&lam, t0.clone()) + &l.scale(d))
        .collect();
    let (fixed, free) = if x[0].is_zero() { (1, 0) } else { (0, 1) };
    let y0 = &x[free] / &x[fixed];
    // h(λ, y) as a polynomial over the ring (l, y)
    let ly = Vars::new(&["l", "y"]);
    let mut images: Vec<MPoly> = line.iter().map(|p| p.embed(&ly, &[0])).collect();
    let yv = MPoly::var(&ly, 1);
    let one = MPoly::one(&ly);
    let mut xs = vec![one.clone(), one];
    xs[free] = yv;
    images.extend(xs);
    let h = gf.reduced.compose(&images, &ly);
    let root = lift_root(&h, &y0)?;
    let (num, den) = root;
    // Γ(λ) = den·P_fixed(t(λ)) + num·P_free(t(λ))
    let pts: Vec<Vec<UPoly>> = spec
        .span()
        .iter()
        .map(|p| p.coords().iter().map(|c| to_upoly(&c.compose(&line, &lam))).collect())
        .collect();
    let gamma: Vec<UPoly> = (0..spec.vdim())
        .map(|i| {
            let a = upoly::mul(&den, &pts[fixed][i]);
            let c = upoly::mul(&num, &pts[free][i]);
            add_u(&a, &c)
        })
        .collect();
    let cg = gamma.iter().fold(Vec::new(), |g: UPoly, p| upoly::gcd(&g, p));
    let gamma: Vec<UPoly> = gamma.iter().map(|p| upoly::div_rem(p, &cg).0).collect();
    let mut minors: Vec<UPoly> = Vec::new();
    for i in 0..gamma.len() {
        for j in i + 1..gamma.len() {
            let m = sub_u(
                &gamma[i].iter().map(|c| c * &other[j]).collect::<Vec<_>>(),
                &gamma[j].iter().map(|c| c * &other[i]).collect::<Vec<_>>(),
            );
            minors.push(m);
        }
    }
    let g = minors.iter().fold(Vec::new(), |g: UPoly, p| upoly::gcd(&g, p));
    if g.len() > 1 {
        return Ok(true);
    }
    // the point at λ = ∞
    let top = gamma.iter().map(|p| p.len()).max().unwrap_or(0);
    let lead: Vec<Rat> = gamma
        .iter()
        .map(|p| if p.len() == top { p[top - 1].clone() } else { Rat::zero() })
        .collect();
    Ok(rank(&[lead, other.to_vec()]) == 1)
}

/// Compares the curves swept by two rational foci of the same member.
pub fn compare_swept_curves(
    spec: &FamilySpec,
    gf: &GlobalFocalForm,
    b1: &FocusBranch,
    b2: &FocusBranch,
    sampler: &mut Sampler,
) -> Result<CurveComparison> {
    let p2 = b2
        .rational_point()
        .ok_or_else(|| Error::indeterminate("curve comparison needs rational foci"))?;
    let q2 = spec.point_at(&b2.base, &p2);
    let mut votes = Vec::new();
    for _ in 0..2 {
        votes.push(on_swept_curve(spec, gf, b1, &q2, sampler)?);
    }
    if votes.iter().all(|&v| v) {
        Ok(CurveComparison::Same)
    } else if votes.iter().all(|&v| !v) {
        Ok(CurveComparison::Different)
    } else {
        Err(Error::indeterminate("curve comparison is unstable across parameter lines"))
    }
}

fn to_upoly(p: &MPoly) -> UPoly {
    let mut out = vec![Rat::zero(); p.total_degree() as usize + 1];
    for (e, c) in p.terms() {
        out[e[0] as usize] += c;
    }
    upoly::trim(out)
}

fn add_u(a: &[Rat], b: &[Rat]) -> UPoly {
    let n = a.len().max(b.len());
    let z = Rat::zero();
    upoly::trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn sub_u(a: &[Rat], b: &[Rat]) -> UPoly {
    let nb: Vec<Rat> = b.iter().map(|c| -c).collect();
    add_u(a, &nb)
}

/// Truncated power series product.
fn series_mul(a: &[Rat], b: &[Rat], prec: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); prec];
    for (i, x) in a.iter().enumerate().take(prec) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(prec - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_inv(a: &[Rat], prec: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); prec];
    let inv0 = a[0].recip();
    out[0] = inv0.clone();
    for k in 1..prec {
        let mut s = Rat::zero();
        for i in 1..=k.min(a.len() - 1) {
            s += &a[i] * &out[k - i];
        }
        out[k] = -s * &inv0;
    }
    out
}

/// Evaluates `h(λ, y(λ))` for a series `y`.
fn series_eval(h: &MPoly, y: &[Rat], prec: usize) -> Vec<Rat> {
    let dy = h.degree_in(1) as usize;
    let mut pows = vec![{
        let mut one = vec![Rat::zero(); prec];
        one[0] = Rat::one();
        one
    }];
    for _ in 0..dy {
        let next = series_mul(pows.last().unwrap(), y, prec);
        pows.push(next);
    }
    let mut out = vec![Rat::zero(); prec];
    for (e, c) in h.terms() {
        let (i, j) = (e[0] as usize, e[1] as usize);
        if i >= prec {
            continue;
        }
        for (k, v) in pows[j].iter().enumerate().take(prec - i) {
            out[i + k] += c * v;
        }
    }
    out
}

/// Rational function `num/den` solving `h(λ, y) = 0` with `y(0) = y0`.
fn lift_root(h: &MPoly, y0: &Rat) -> Result<(UPoly, UPoly)> {
    let hy = h.derivative(1);
    let d = (h.degree_in(0) as usize).max(1);
    let prec = 2 * d + 2;
    let mut y = vec![Rat::zero(); prec];
    y[0] = y0.clone();
    let start = series_eval(&hy, &y, 1);
    if start[0].is_zero() {
        return Err(Error::indeterminate("focus is not a simple root along the parameter line"));
    }
    let mut cur = 1;
    while cur < prec {
        cur = (2 * cur).min(prec);
        let f = series_eval(h, &y, cur);
        let fp = series_eval(&hy, &y, cur);
        let corr = series_mul(&f, &series_inv(&fp, cur), cur);
        for i in 0..cur {
            y[i] -= &corr[i];
        }
    }
    // Padé: den = 1 + q_1 λ + … + q_d λ^d with den·y ≡ num (mod λ^{2d+1})
    let rows: Vec<Vec<Rat>> = (d + 1..=2 * d)
        .map(|m| (1..=d).map(|j| y[m - j].clone()).collect())
        .collect();
    let rhs: Vec<Rat> = (d + 1..=2 * d).map(|m| -y[m].clone()).collect();
    let q = solve(&rows, &rhs).ok_or_else(|| Error::indeterminate("no rational approximant for the focus"))?;
    let mut den = vec![Rat::one()];
    den.extend(q);
    let den = upoly::trim(den);
    let full = series_mul(&den, &y, d + 1);
    let num = upoly::trim(full);
    // exact check: den^deg_y · h(λ, num/den) = 0
    let dy = h.degree_in(1);
    let mut acc: UPoly = Vec::new();
    for (e, c) in h.terms() {
        let mut term = vec![c.clone()];
        term = upoly::mul(&term, &power_of_lambda(e[0] as usize));
        for _ in 0..e[1] {
            term = upoly::mul(&term, &num);
        }
        for _ in e[1]..dy {
            term = upoly::mul(&term, &den);
        }
        acc = add_u(&acc, &term);
    }
    if !acc.is_empty() {
        return Err(Error::indeterminate("focus is not a rational function along the parameter line"));
    }
    Ok((num, den))
}

fn power_of_lambda(i: usize) -> UPoly {
    let mut v = vec![Rat::zero(); i + 1];
    v[i] = Rat::one();
    v
}

/// Whether `v` lies in the span of `basis` over the field.
pub fn in_span<F: Field>(basis: &[Vec<F>], v: &[F]) -> bool {
    let r = rank(basis);
    let mut m = basis.to_vec();
    m.push(v.to_vec());
    rank(&m) == r
}

/// Coordinates of `v` in the (independent) list `basis`, if it lies in its span.
pub fn coordinates_in<F: Field>(basis: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
    solve(&transpose(basis), v)
}
