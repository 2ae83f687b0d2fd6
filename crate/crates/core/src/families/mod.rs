//! Parametrized families of k-planes, their incidence maps and the fixture
//! catalog.

mod catalog;

use std::fmt;

use num::Zero;

use crate::exactalg::matrix::{rank, rref};
use crate::exactalg::rat::{retry_generic, Sampler};
use crate::exactalg::{MPoly, PolyMatrix, Rat, Vars};
use crate::{Error, Result};

pub use catalog::{band_lines, band_planes, cone_over_surface, fixture, fixture_ids, FIXTURE_IDS};

/// A point of P^N depending polynomially on the parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MovingPoint {
    coords: Vec<MPoly>,
}

impl MovingPoint {
    pub fn new(coords: Vec<MPoly>) -> Result<Self> {
        let Some(first) = coords.first() else {
            return Err(Error::input("a moving point needs coordinates"));
        };
        if coords.iter().any(|c| c.vars() != first.vars()) {
            return Err(Error::VariableMismatch);
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::input("moving point is identically zero"));
        }
        Ok(MovingPoint { coords })
    }

    pub fn coords(&self) -> &[MPoly] {
        &self.coords
    }

    pub fn eval(&self, t: &[Rat]) -> Vec<Rat> {
        self.coords.iter().map(|c| c.eval(t)).collect()
    }

    pub fn derivative(&self, j: usize) -> Vec<MPoly> {
        self.coords.iter().map(|c| c.derivative(j)).collect()
    }
}

/// Values of the parameters `t_1..t_n`.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct ParamPoint(pub Vec<Rat>);

impl ParamPoint {
    pub fn values(&self) -> &[Rat] {
        &self.0
    }
}

/// A point of the fiber in the coordinates `x_0..x_k`, scaled so that the
/// first non-zero coordinate is one.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct FiberPoint(Vec<Rat>);

impl FiberPoint {
    pub fn new(mut x: Vec<Rat>) -> Result<Self> {
        let Some(lead) = x.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::input("fiber point has all coordinates zero"));
        };
        for c in x.iter_mut() {
            *c = &*c / &lead;
        }
        Ok(FiberPoint(x))
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }
}

impl fmt::Display for FiberPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(crate::exactalg::fmt_rat).collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// A family of k-planes in P^N spanned by `k+1` moving points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilySpec {
    ambient: usize,
    k: usize,
    params: Vars,
    span: Vec<MovingPoint>,
    label: String,
}

/// Seed of the sampler used for the construction-time independence check.
const VALIDATION_SEED: u64 = 0x00f0_ca1e;

impl FamilySpec {
    pub fn new(
        ambient: usize,
        k: usize,
        params: Vars,
        span: Vec<MovingPoint>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if span.len() != k + 1 {
            return Err(Error::Shape {
                expected: format!("{} spanning points for k = {k}", k + 1),
                found: format!("{} points", span.len()),
            });
        }
        for (a, p) in span.iter().enumerate() {
            if p.coords.len() != ambient + 1 {
                return Err(Error::Shape {
                    expected: format!("{} coordinates for N = {ambient}", ambient + 1),
                    found: format!("{} coordinates in point {a}", p.coords.len()),
                });
            }
            if p.coords[0].vars() != &params {
                return Err(Error::VariableMismatch);
            }
        }
        let n = params.len();
        if n == 0 {
            return Err(Error::input("a family needs at least one parameter"));
        }
        if n + k > ambient {
            return Err(Error::input(format!("n + k = {} exceeds N = {ambient}", n + k)));
        }
        for name in params.names() {
            if is_fiber_name(name, k) {
                return Err(Error::input(format!("parameter name `{name}` clashes with a fiber coordinate")));
            }
        }
        let spec = FamilySpec {
            ambient,
            k,
            params,
            span,
            label: label.into(),
        };
        let mut sampler = Sampler::new(VALIDATION_SEED);
        retry_generic(&mut sampler, |s| spec.sample_base(s).map(|_| ())).map_err(|_| {
            Error::input("spanning points are dependent at every sampled parameter value")
        })?;
        Ok(spec)
    }

    /// Projective dimension N of the ambient space.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Dimension of the vector space V = K^{N+1}.
    pub fn vdim(&self) -> usize {
        self.ambient + 1
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of parameters.
    pub fn n(&self) -> usize {
        self.params.len()
    }

    pub fn params(&self) -> &Vars {
        &self.params
    }

    pub fn span(&self) -> &[MovingPoint] {
        &self.span
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Matrix whose rows are the spanning points at `t`.
    pub fn span_at(&self, t: &ParamPoint) -> Vec<Vec<Rat>> {
        self.span.iter().map(|p| p.eval(&t.0)).collect()
    }

    /// Rows `∂P_a/∂t_j` at `t`.
    pub fn derivative_at(&self, t: &ParamPoint, j: usize) -> Vec<Vec<Rat>> {
        self.span
            .iter()
            .map(|p| p.coords.iter().map(|c| c.derivative(j).eval(&t.0)).collect())
            .collect()
    }

    /// Point `Σ x_a P_a(t)` of P^N.
    pub fn point_at(&self, t: &ParamPoint, x: &[Rat]) -> Vec<Rat> {
        let rows = self.span_at(t);
        let mut v = vec![Rat::zero(); self.vdim()];
        for (xa, row) in x.iter().zip(&rows) {
            for (vi, r) in v.iter_mut().zip(row) {
                *vi += xa * r;
            }
        }
        v
    }

    pub fn is_independent_at(&self, t: &ParamPoint) -> bool {
        rank(&self.span_at(t)) == self.k + 1
    }

    /// Random parameter value at which the spanning points are independent.
    pub fn sample_base(&self, sampler: &mut Sampler) -> Result<ParamPoint> {
        let t = ParamPoint(sampler.rats(self.n()));
        if self.is_independent_at(&t) {
            Ok(t)
        } else {
            Err(Error::non_generic("spanning points dependent at the sampled parameter"))
        }
    }

    pub fn random_base(&self, sampler: &mut Sampler) -> Result<ParamPoint> {
        retry_generic(sampler, |s| self.sample_base(s))
    }

    /// Applies a constant `(N+1)×(N+1)` matrix to every spanning point.
    pub fn transformed(&self, g: &[Vec<Rat>]) -> Result<Self> {
        let d = self.vdim();
        if g.len() != d || g.iter().any(|r| r.len() != d) {
            return Err(Error::Shape {
                expected: format!("{d}x{d} matrix"),
                found: format!("{} rows", g.len()),
            });
        }
        let span = self
            .span
            .iter()
            .map(|p| {
                let coords = (0..d)
                    .map(|i| {
                        p.coords.iter().zip(&g[i]).fold(MPoly::zero(&self.params), |acc, (c, gij)| {
                            &acc + &c.scale(gij)
                        })
                    })
                    .collect();
                MovingPoint::new(coords)
            })
            .collect::<Result<Vec<_>>>()?;
        FamilySpec::new(self.ambient, self.k, self.params.clone(), span, self.label.clone())
    }

    /// Replaces the spanning points by `Σ_b r[a][b]·P_b` for an invertible
    /// constant `(k+1)×(k+1)` matrix `r`.
    pub fn recombined(&self, r: &[Vec<Rat>]) -> Result<Self> {
        let m = self.k + 1;
        if r.len() != m || r.iter().any(|row| row.len() != m) {
            return Err(Error::Shape {
                expected: format!("{m}x{m} matrix"),
                found: format!("{} rows", r.len()),
            });
        }
        let span = r
            .iter()
            .map(|row| {
                let coords = (0..self.vdim())
                    .map(|i| {
                        row.iter().zip(&self.span).fold(MPoly::zero(&self.params), |acc, (c, p)| {
                            &acc + &p.coords[i].scale(c)
                        })
                    })
                    .collect();
                MovingPoint::new(coords)
            })
            .collect::<Result<Vec<_>>>()?;
        FamilySpec::new(self.ambient, self.k, self.params.clone(), span, self.label.clone())
    }

    /// The fiber coordinate ring `x0..xk`.
    pub fn fiber_vars(&self) -> Vars {
        fiber_vars(self.k)
    }
}

fn is_fiber_name(name: &str, k: usize) -> bool {
    name.strip_prefix('x')
        .and_then(|d| d.parse::<usize>().ok())
        .is_some_and(|i| i <= k)
}

pub fn fiber_vars(k: usize) -> Vars {
    let names: Vec<String> = (0..=k).map(|a| format!("x{a}")).collect();
    Vars::new(&names)
}

/// The map `(t, x) ↦ Σ_a x_a·P_a(t)` over the ring `t_1..t_n, x_0..x_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IncidenceMap {
    vars: Vars,
    n: usize,
    k: usize,
    coords: Vec<MPoly>,
}

impl IncidenceMap {
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn coords(&self) -> &[MPoly] {
        &self.coords
    }

    /// Index of `x_a` in the ring.
    pub fn x_index(&self, a: usize) -> usize {
        self.n + a
    }

    pub fn x_indices(&self) -> Vec<usize> {
        (0..=self.k).map(|a| self.n + a).collect()
    }

    /// Jacobian with respect to `(t_1..t_n, x_0..x_k)`, one row per coordinate.
    pub fn jacobian(&self) -> PolyMatrix {
        let rows = self
            .coords
            .iter()
            .map(|c| (0..self.vars.len()).map(|j| c.derivative(j)).collect())
            .collect();
        PolyMatrix::from_rows(&self.vars, rows).expect("rectangular")
    }

    pub fn eval(&self, t: &ParamPoint, x: &[Rat]) -> Vec<Rat> {
        let point = concat(t, x);
        self.coords.iter().map(|c| c.eval(&point)).collect()
    }
}

fn concat(t: &ParamPoint, x: &[Rat]) -> Vec<Rat> {
    let mut p = t.0.clone();
    p.extend(x.iter().cloned());
    p
}

pub fn incidence(spec: &FamilySpec) -> IncidenceMap {
    let xv = spec.fiber_vars();
    let vars = spec.params.extend(&xv);
    let n = spec.n();
    let t_map: Vec<usize> = (0..n).collect();
    let coords = (0..spec.vdim())
        .map(|i| {
            spec.span
                .iter()
                .enumerate()
                .fold(MPoly::zero(&vars), |acc, (a, p)| {
                    let xa = MPoly::var(&vars, n + a);
                    &acc + &(&xa * &p.coords[i].embed(&vars, &t_map))
                })
        })
        .collect();
    IncidenceMap {
        vars,
        n,
        k: spec.k,
        coords,
    }
}

/// Numeric Jacobian of the incidence map at `(t, x)`: columns
/// `Σ_a x_a ∂_j P_a(t)` for each parameter, then `P_a(t)` for each `x_a`.
pub fn df_matrix(spec: &FamilySpec, t: &ParamPoint, x: &[Rat]) -> Vec<Vec<Rat>> {
    let n = spec.n();
    let d = spec.vdim();
    let span = spec.span_at(t);
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n + spec.k + 1);
    for j in 0..n {
        let dj = spec.derivative_at(t, j);
        let mut c = vec![Rat::zero(); d];
        for (xa, row) in x.iter().zip(&dj) {
            for (ci, r) in c.iter_mut().zip(row) {
                *ci += xa * r;
            }
        }
        cols.push(c);
    }
    cols.extend(span);
    crate::exactalg::matrix::transpose(&cols)
}

/// Rank of the incidence Jacobian at `(t, x)`.
pub fn df_rank(spec: &FamilySpec, t: &ParamPoint, x: &[Rat]) -> usize {
    rank(&df_matrix(spec, t, x))
}

/// Column space of the incidence Jacobian at `(t, x)`, i.e. the affine cone
/// over the embedded tangent space of the union at that point.
pub fn df_image(spec: &FamilySpec, t: &ParamPoint, x: &[Rat]) -> crate::exactalg::LinSubspace {
    let cols = crate::exactalg::matrix::transpose(&df_matrix(spec, t, x));
    crate::exactalg::LinSubspace::span(spec.vdim(), &cols)
}

/// Result of the union-dimension probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionDimension {
    /// Projective dimension of the union X.
    pub dim: usize,
    pub expected: usize,
    pub matches_expected: bool,
}

/// Projective dimension of the union of the fibers: maximal Jacobian rank
/// over `trials` random points of the incidence variety, minus one.
pub fn union_dimension(spec: &FamilySpec, trials: usize, sampler: &mut Sampler) -> UnionDimension {
    let mut best = 0;
    for _ in 0..trials.max(1) {
        let t = ParamPoint(sampler.rats(spec.n()));
        let x = sampler.rats(spec.k + 1);
        best = best.max(df_rank(spec, &t, &x));
    }
    let dim = best.saturating_sub(1);
    let expected = spec.n() + spec.k;
    UnionDimension {
        dim,
        expected,
        matches_expected: dim == expected,
    }
}

/// Reduced row echelon basis of the fiber at `t`.
pub fn fiber_space(spec: &FamilySpec, t: &ParamPoint) -> Result<crate::exactalg::LinSubspace> {
    let rows = spec.span_at(t);
    let mut m = rows.clone();
    if rref(&mut m).len() != spec.k + 1 {
        return Err(Error::non_generic("spanning points dependent at the base point"));
    }
    Ok(crate::exactalg::LinSubspace::span(spec.vdim(), &rows))
}
