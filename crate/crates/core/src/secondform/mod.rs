//! Second fundamental form of parametrized surfaces: osculating spaces,
//! conjugate and asymptotic directions, and the Φ-surface test.

use std::fmt;

use serde::Serialize;

use crate::exactalg::matrix::{kernel, rank, rref};
use crate::exactalg::rat::{retry_generic, Sampler};
use crate::exactalg::{gcd_polys, Field, MPoly, Rat, Vars};
use crate::families::{FamilySpec, FiberPoint, MovingPoint, ParamPoint};
use crate::focal::branch::SurfaceJet;
use crate::focal::divisor::factor_binary_form;
use crate::{Error, Result};

pub const PATCH_IDS: [&str; 4] = ["veronese", "scroll", "scroll5", "developable"];

/// A surface `S(u, v)` in P^N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePatch {
    point: MovingPoint,
    label: String,
}

impl SurfacePatch {
    pub fn new(coords: Vec<MPoly>, label: impl Into<String>) -> Result<Self> {
        let point = MovingPoint::new(coords)?;
        if point.coords()[0].vars().len() != 2 {
            return Err(Error::input("a surface patch depends on exactly two parameters"));
        }
        Ok(SurfacePatch {
            point,
            label: label.into(),
        })
    }

    pub fn coords(&self) -> &[MPoly] {
        self.point.coords()
    }

    pub fn vars(&self) -> &Vars {
        self.point.coords()[0].vars()
    }

    pub fn ambient(&self) -> usize {
        self.coords().len() - 1
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    fn partial(&self, ds: &[usize]) -> Vec<MPoly> {
        self.coords()
            .iter()
            .map(|c| ds.iter().fold(c.clone(), |acc, &i| acc.derivative(i)))
            .collect()
    }

    /// Point and derivatives up to order two at `p`.
    pub fn jet(&self, p: &ParamPoint) -> SurfaceJet<Rat> {
        let ev = |ds: &[usize]| -> Vec<Rat> { self.partial(ds).iter().map(|c| c.eval(p.values())).collect() };
        SurfaceJet {
            s: ev(&[]),
            su: ev(&[0]),
            sv: ev(&[1]),
            suu: ev(&[0, 0]),
            suv: ev(&[0, 1]),
            svv: ev(&[1, 1]),
        }
    }
}

/// Catalog surfaces, all in the parameters `u, v`.
pub fn patch(name: &str) -> Result<SurfacePatch> {
    let vars = Vars::new(&["u", "v"]);
    let u = MPoly::var(&vars, 0);
    let v = MPoly::var(&vars, 1);
    let one = MPoly::one(&vars);
    let c = |k: i64| Rat::from_integer(k.into());
    match name {
        "veronese" => SurfacePatch::new(
            vec![one, u.clone(), v.clone(), u.pow(2), &u * &v, v.pow(2)],
            "Veronese surface",
        ),
        "scroll" => SurfacePatch::new(vec![one, u.clone(), v.clone(), u.pow(2), &u * &v], "cubic scroll"),
        "scroll5" => SurfacePatch::new(
            vec![one, u.clone(), v.clone(), u.pow(2), &u * &v, u.pow(3)],
            "scroll in P^5",
        ),
        "developable" => {
            // C(u) + v·C′(u) for the twisted cubic
            let coords = vec![
                one,
                &u + &v,
                &u.pow(2) + &(&u * &v).scale(&c(2)),
                &u.pow(3) + &(&u.pow(2) * &v).scale(&c(3)),
            ];
            SurfacePatch::new(coords, "tangent developable of the twisted cubic")
        }
        other => Err(Error::input(format!("unknown surface patch `{other}`"))),
    }
}

/// Second-order data of a surface at a point. Each quadric `(a, b, c)`
/// stands for `a·du² + 2b·du·dv + c·dv²`.
#[derive(Clone, Debug)]
pub struct IIData<F> {
    pub frame: [Vec<F>; 3],
    pub second: [Vec<F>; 3],
    /// Basis of the linear system |II|, in reduced echelon form.
    pub quadrics: Vec<[F; 3]>,
    /// Projective dimension of the second osculating space.
    pub osc2_dim: usize,
}

impl<F: Field> IIData<F> {
    /// Projective dimension of |II|; `-1` when the system is empty.
    pub fn system_dim(&self) -> isize {
        self.quadrics.len() as isize - 1
    }

    /// `II(w, w′)` for each quadric of the basis.
    pub fn pairing(&self, w: &[F], w2: &[F]) -> Vec<F> {
        self.quadrics
            .iter()
            .map(|[a, b, c]| {
                let cross = w[0].mul(&w2[1]).add(&w[1].mul(&w2[0]));
                a.mul(&w[0]).mul(&w2[0]).add(&b.mul(&cross)).add(&c.mul(&w[1]).mul(&w2[1]))
            })
            .collect()
    }

    pub fn is_asymptotic(&self, w: &[F]) -> bool {
        self.pairing(w, w).iter().all(Field::is_zero_el)
    }

    /// Tangent direction `(du : dv)` of a vector of the embedded tangent
    /// plane, or `None` if it does not lie there or is the point itself.
    pub fn direction_of(&self, p: &[F]) -> Option<Vec<F>> {
        let c = crate::focal::branch::coordinates_in(&self.frame, p)?;
        let w = vec![c[1].clone(), c[2].clone()];
        (!w.iter().all(Field::is_zero_el)).then_some(w)
    }
}

/// II from a second-order jet; fails when the jet is not immersive.
pub fn second_form_from_jet<F: Field>(jet: &SurfaceJet<F>) -> Result<IIData<F>> {
    let frame = [jet.s.clone(), jet.su.clone(), jet.sv.clone()];
    if rank(&frame) < 3 {
        return Err(Error::non_generic("surface is not immersive at the sampled point"));
    }
    let second = [jet.suu.clone(), jet.suv.clone(), jet.svv.clone()];
    let dim = jet.s.len();
    // linear forms vanishing on the tangent plane
    let forms = kernel(&frame, dim);
    let dot = |l: &[F], v: &[F]| l.iter().zip(v).fold(F::zero_el(), |acc, (a, b)| acc.add(&a.mul(b)));
    let mut rows: Vec<Vec<F>> = forms
        .iter()
        .map(|l| second.iter().map(|s| dot(l, s)).collect())
        .collect();
    let pivots = rref(&mut rows);
    let quadrics: Vec<[F; 3]> = rows
        .into_iter()
        .take(pivots.len())
        .map(|r| [r[0].clone(), r[1].clone(), r[2].clone()])
        .collect();
    let mut all: Vec<Vec<F>> = frame.to_vec();
    all.extend(second.iter().cloned());
    let osc2_dim = rank(&all) - 1;
    Ok(IIData {
        frame,
        second,
        quadrics,
        osc2_dim,
    })
}

pub fn second_form(s: &SurfacePatch, p: &ParamPoint) -> Result<IIData<Rat>> {
    if p.values().len() != 2 {
        return Err(Error::Shape {
            expected: "two parameter values".into(),
            found: format!("{} values", p.values().len()),
        });
    }
    second_form_from_jet(&s.jet(p))
}

/// Directions conjugate to a given one.
#[derive(Clone, Debug, PartialEq)]
pub enum Conjugate<F> {
    None,
    One(Vec<F>),
    All,
}

/// Solves `II(w, ·) = 0` on the tangent directions.
pub fn conjugate_direction<F: Field>(ii: &IIData<F>, w: &[F]) -> Conjugate<F> {
    let rows: Vec<Vec<F>> = ii
        .quadrics
        .iter()
        .map(|[a, b, c]| vec![a.mul(&w[0]).add(&b.mul(&w[1])), b.mul(&w[0]).add(&c.mul(&w[1]))])
        .collect();
    let ker = kernel(&rows, 2);
    match ker.len() {
        0 => Conjugate::None,
        1 => Conjugate::One(normalize(&ker[0])),
        _ => Conjugate::All,
    }
}

fn normalize<F: Field>(w: &[F]) -> Vec<F> {
    match w.iter().find(|c| !c.is_zero_el()) {
        Some(lead) => {
            let inv = lead.inv();
            w.iter().map(|c| c.mul(&inv)).collect()
        }
        None => w.to_vec(),
    }
}

fn direction_vars() -> Vars {
    Vars::new(&["du", "dv"])
}

fn binary_quadric(vars: &Vars, q: &[Rat; 3]) -> MPoly {
    let two = Rat::from_integer(2.into());
    MPoly::from_terms(
        vars,
        [
            (vec![2, 0], q[0].clone()),
            (vec![1, 1], &q[1] * &two),
            (vec![0, 2], q[2].clone()),
        ],
    )
}

/// Self-conjugate directions common to every quadric of |II|.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Asymptotic {
    All,
    Roots {
        rational: Vec<(FiberPoint, usize)>,
        /// Irreducible quadratic factors carrying a conjugate pair.
        irrational: Vec<(MPoly, usize)>,
    },
}

impl Asymptotic {
    pub fn count(&self) -> Option<usize> {
        match self {
            Asymptotic::All => None,
            Asymptotic::Roots { rational, irrational } => {
                Some(rational.len() + irrational.iter().map(|(f, _)| f.total_degree() as usize).sum::<usize>())
            }
        }
    }
}

pub fn asymptotic_directions(ii: &IIData<Rat>) -> Asymptotic {
    if ii.quadrics.is_empty() {
        return Asymptotic::All;
    }
    let vars = direction_vars();
    let forms: Vec<MPoly> = ii.quadrics.iter().map(|q| binary_quadric(&vars, q)).collect();
    let g = gcd_polys(&forms);
    let (rational, irrational) = factor_binary_form(&g);
    Asymptotic::Roots { rational, irrational }
}

/// A pair of mutually conjugate directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairKind {
    Distinct(FiberPoint, FiberPoint),
    /// Both directions coincide: an asymptotic direction.
    Double(FiberPoint),
    /// Conjugate over a quadratic field, given by their binary form.
    Irrational(MPoly),
}

/// Pairs of directions conjugate for every quadric of |II|.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugatePairs {
    None,
    Unique(PairKind),
    Infinite,
}

/// For a pencil the common pair is the Jacobian of two generators; a net
/// spans every binary quadric, leaving no pair; a single quadric or the
/// empty system leaves infinitely many.
pub fn conjugate_pairs(ii: &IIData<Rat>) -> ConjugatePairs {
    match ii.quadrics.len() {
        0 | 1 => ConjugatePairs::Infinite,
        2 => {
            let vars = direction_vars();
            let q1 = binary_quadric(&vars, &ii.quadrics[0]);
            let q2 = binary_quadric(&vars, &ii.quadrics[1]);
            let jac = &(&q1.derivative(0) * &q2.derivative(1)) - &(&q1.derivative(1) * &q2.derivative(0));
            let (roots, residual) = factor_binary_form(&jac);
            let kind = match (roots.as_slice(), residual.as_slice()) {
                ([(p, 2)], []) => PairKind::Double(p.clone()),
                ([(p, 1), (q, 1)], []) => PairKind::Distinct(p.clone(), q.clone()),
                ([], [(f, 1)]) => PairKind::Irrational(f.clone()),
                _ => unreachable!("the Jacobian of an independent pencil is a nonzero binary quadric"),
            };
            ConjugatePairs::Unique(kind)
        }
        _ => ConjugatePairs::None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Developable,
    Phi,
    General,
}

impl SurfaceKind {
    pub fn from_osc2_dim(d: usize) -> Self {
        match d {
            0..=3 => SurfaceKind::Developable,
            4 => SurfaceKind::Phi,
            _ => SurfaceKind::General,
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceKind::Developable => "developable",
            SurfaceKind::Phi => "phi",
            SurfaceKind::General => "general",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub kind: SurfaceKind,
    pub osc2_dims: Vec<usize>,
    /// All samples agreed on the osculating dimension.
    pub stable: bool,
    /// At every sample: a unique conjugate pair exactly when the sample is phi.
    pub pairs_agree: bool,
}

/// Classifies a surface by the dimension of its second osculating space at
/// random points. Disagreeing samples report the largest dimension.
pub fn phi_test(s: &SurfacePatch, trials: usize, sampler: &mut Sampler) -> Result<PhiReport> {
    let mut dims = Vec::new();
    let mut pairs_agree = true;
    for _ in 0..trials.max(1) {
        let ii = retry_generic(sampler, |smp| second_form(s, &ParamPoint(smp.rats(2))))?;
        let unique = matches!(conjugate_pairs(&ii), ConjugatePairs::Unique(_));
        if unique != (SurfaceKind::from_osc2_dim(ii.osc2_dim) == SurfaceKind::Phi) {
            pairs_agree = false;
        }
        dims.push(ii.osc2_dim);
    }
    let top = *dims.iter().max().expect("at least one sample");
    Ok(PhiReport {
        kind: SurfaceKind::from_osc2_dim(top),
        stable: dims.iter().all(|&d| d == top),
        osc2_dims: dims,
        pairs_agree,
    })
}

/// The family of embedded tangent planes `⟨S, S_u, S_v⟩`.
pub fn tangent_plane_family(s: &SurfacePatch) -> Result<FamilySpec> {
    let span = vec![
        MovingPoint::new(s.coords().to_vec())?,
        MovingPoint::new(s.partial(&[0]))?,
        MovingPoint::new(s.partial(&[1]))?,
    ];
    FamilySpec::new(
        s.ambient(),
        2,
        s.vars().clone(),
        span,
        format!("tangent planes of the {}", s.label()),
    )
}

/// Unit tangent direction along parameter `i`.
pub fn coordinate_direction<F: Field>(i: usize) -> Vec<F> {
    let mut w = vec![F::zero_el(), F::zero_el()];
    w[i] = F::one_el();
    w
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairKind::Distinct(a, b) => write!(f, "{a}, {b}"),
            PairKind::Double(a) => write!(f, "{a} twice"),
            PairKind::Irrational(q) => write!(f, "roots of {q}"),
        }
    }
}
