//! Sparse multivariate polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{One, Signed, Zero};

use super::rat::{fmt_rat, Rat};
use crate::{Error, Result};

/// Exponent vector, one entry per variable of the ring.
pub type Monomial = Vec<u32>;

/// Ordered variable names of a polynomial ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<Vec<String>>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars(Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    /// Concatenation of two variable lists.
    pub fn extend(&self, more: &Vars) -> Vars {
        let mut v: Vec<String> = self.0.to_vec();
        v.extend(more.0.iter().cloned());
        Vars(Arc::new(v))
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Graded lexicographic order: total degree first, then the first variable
/// is the most significant.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Multivariate polynomial over Q. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero(vars: &Vars) -> Self {
        MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn constant(vars: &Vars, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    /// The `i`-th variable.
    pub fn var(vars: &Vars, i: usize) -> Self {
        assert!(i < vars.len());
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Rat::one())
    }

    pub fn monomial(vars: &Vars, exps: Monomial, c: Rat) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: Rat) {
        assert_eq!(e.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        let remove = {
            let slot = self.terms.entry(e.clone()).or_insert_with(Rat::zero);
            *slot += c;
            slot.is_zero()
        };
        if remove {
            self.terms.remove(&e);
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Maximal total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// True when every monomial has total degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    /// Scaled to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.vars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    fn check_same(&self, other: &Self) {
        assert!(
            self.vars == other.vars,
            "polynomials over different variable sets: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        self.vars == other.vars
    }

    /// Evaluates at a full assignment given in variable order.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluates at values in any [`Field`](super::rat::Field) containing Q.
    pub fn eval_in<F: super::rat::Field>(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars());
        let mut acc = F::zero_el();
        for (e, c) in &self.terms {
            let mut t = F::from_rat(c);
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t.mul(x);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Evaluates with a name → value map; every variable that occurs must be assigned.
    pub fn eval_named(&self, assignment: &BTreeMap<String, Rat>) -> Result<Rat> {
        let point = self
            .vars
            .names()
            .iter()
            .enumerate()
            .map(|(i, v)| match assignment.get(v) {
                Some(x) => Ok(x.clone()),
                None if !self.involves(i) => Ok(Rat::zero()),
                None => Err(Error::MissingVariable(v.clone())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.eval(&point))
    }

    /// Substitutes constants for some variables; the ring is unchanged.
    pub fn partial_eval(&self, values: &[(usize, Rat)]) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            let mut c = c.clone();
            for (i, v) in values {
                let k = e[*i];
                if k > 0 {
                    c *= num::pow(v.clone(), k as usize);
                    e[*i] = 0;
                }
            }
            out.add_term(e, c);
        }
        out
    }

    /// Substitutes polynomials (over `target` ring) for every variable.
    pub fn compose(&self, images: &[MPoly], target: &Vars) -> Self {
        assert_eq!(images.len(), self.nvars());
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = &t * &img.pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Moves the polynomial into `target`, sending variable `i` to
    /// `target[map[i]]`.
    pub fn embed(&self, target: &Vars, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars());
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Moves into a ring whose variables include all of ours (matched by name).
    pub fn embed_by_name(&self, target: &Vars) -> Result<Self> {
        let map = self
            .vars
            .names()
            .iter()
            .map(|v| target.index_of(v).ok_or_else(|| Error::MissingVariable(v.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.embed(target, &map))
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut ne = e.clone();
                ne[i] -= 1;
                out.add_term(ne, c * Rat::from_integer(e[i].into()));
            }
        }
        out
    }

    /// Coefficients as a polynomial in variable `i`: entry `d` is the
    /// coefficient of `x_i^d` (still over the full ring, free of `x_i`).
    pub fn coeffs_in(&self, i: usize) -> Vec<MPoly> {
        let deg = self.degree_in(i) as usize;
        let mut out = vec![Self::zero(&self.vars); deg + 1];
        if self.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            let d = e[i] as usize;
            let mut ne = e.clone();
            ne[i] = 0;
            out[d].add_term(ne, c.clone());
        }
        out
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(vars: &Vars, i: usize, coeffs: &[MPoly]) -> Self {
        let mut out = Self::zero(vars);
        for (d, c) in coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut ne = e.clone();
                ne[i] += d as u32;
                out.add_term(ne, a.clone());
            }
        }
        out
    }

    /// Division with remainder by a single polynomial under graded lex.
    pub fn div_rem(&self, divisor: &MPoly) -> (MPoly, MPoly) {
        self.check_same(divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (le, lc) = divisor.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut q = Self::zero(&self.vars);
        let mut r = Self::zero(&self.vars);
        let mut p = self.clone();
        while let Some((pe, pc)) = p.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if divides(&le, &pe) {
                let e: Monomial = pe.iter().zip(&le).map(|(a, b)| a - b).collect();
                let c = &pc / &lc;
                let t = Self::monomial(&self.vars, e, c);
                p = &p - &(&t * divisor);
                q = &q + &t;
            } else {
                p.terms.remove(&pe);
                r.add_term(pe, pc);
            }
        }
        (q, r)
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Renders in the input grammar with the given variable names.
    fn render(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &Rat)> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex(b.0, a.0));
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_unit_monomial = e.iter().all(|&k| k == 0);
            if !abs.is_one() || is_unit_monomial {
                factors.push(fmt_rat(&abs));
            }
            for (name, &k) in self.vars.names().iter().zip(e.iter()) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.vars.names().join(","), self)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.check_same(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.check_same(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.check_same(rhs);
        let mut out = MPoly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rat::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::{rat, ratio};

    fn xy() -> (Vars, MPoly, MPoly) {
        let v = Vars::new(&["x", "y"]);
        let x = MPoly::var(&v, 0);
        let y = MPoly::var(&v, 1);
        (v, x, y)
    }

    #[test]
    fn arithmetic_cancels_to_zero() {
        let (_, x, y) = xy();
        let p = &(&x + &y) * &(&x - &y);
        let q = &(&x * &x) - &(&y * &y);
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
    }

    #[test]
    fn rendering_uses_grlex_and_signs() {
        let (v, x, y) = xy();
        let p = &(&(&x * &y).scale(&rat(-1)) + &y.pow(2).scale(&ratio(3, 2))) + &MPoly::constant(&v, rat(-4));
        assert_eq!(p.to_string(), "-x*y + 3/2*y^2 - 4");
        assert_eq!(MPoly::zero(&v).to_string(), "0");
        assert_eq!(MPoly::constant(&v, rat(1)).to_string(), "1");
    }

    #[test]
    fn exact_division() {
        let (_, x, y) = xy();
        let f = &(&x * &x) * &y;
        let g = &x * &y;
        assert_eq!(f.div_exact(&g), Some(x.clone()));
        assert_eq!(x.div_exact(&y), None);
    }

    #[test]
    fn coefficient_view_round_trip() {
        let (v, x, y) = xy();
        let p = &(&x.pow(2) * &y) + &(&y.scale(&rat(5)) + &x);
        let cs = p.coeffs_in(1);
        assert_eq!(cs.len(), 2);
        assert_eq!(MPoly::from_coeffs_in(&v, 1, &cs), p);
    }

    #[test]
    fn derivative_and_eval() {
        let (_, x, y) = xy();
        let p = &x.pow(3) + &(&x * &y);
        let dx = p.derivative(0);
        assert_eq!(dx.eval(&[rat(2), rat(5)]), rat(17));
        assert_eq!(p.partial_eval(&[(0, rat(2))]).eval(&[rat(0), rat(1)]), rat(10));
    }

    #[test]
    fn missing_variable_is_reported() {
        let (_, x, _) = xy();
        let mut a = BTreeMap::new();
        a.insert("x".to_string(), rat(1));
        assert_eq!(x.eval_named(&a), Ok(rat(1)));
        let y = MPoly::var(x.vars(), 1);
        assert_eq!(y.eval_named(&a), Err(Error::MissingVariable("y".into())));
    }
}
