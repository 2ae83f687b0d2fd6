//! Rational numbers, the field abstraction used by the linear algebra
//! routines, quadratic extensions of Q, and the seeded sampler that stands
//! in for "a general point".

use std::fmt;

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Bound for numerators and denominators of random rationals.
pub const SAMPLE_BOUND: i64 = 10_000;

/// How often a sampled computation is retried when it lands on a special locus.
pub const GENERICITY_RETRIES: usize = 5;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p/q`, or `p` for integers.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` (optionally signed).
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// Exact square root of a non-negative rational, if it is a square.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let p = r.numer().sqrt();
    let q = r.denom().sqrt();
    if &(&p * &p) == r.numer() && &(&q * &q) == r.denom() {
        Some(Rat::new(p, q))
    } else {
        None
    }
}

/// A commutative field with exact arithmetic.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_el() -> Self;
    fn one_el() -> Self;
    fn is_zero_el(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_rat(r: &Rat) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

impl Field for Rat {
    fn zero_el() -> Self {
        Zero::zero()
    }
    fn one_el() -> Self {
        One::one()
    }
    fn is_zero_el(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

/// Element `a + b·√d` of the quadratic field Q(√d), `d` not a square.
///
/// Rational elements carry `d = 0` and combine with any field; mixing two
/// different non-zero `d` is a logic error.
#[derive(Clone, Debug)]
pub struct QuadNum {
    pub a: Rat,
    pub b: Rat,
    pub d: Rat,
}

impl QuadNum {
    pub fn new(a: Rat, b: Rat, d: Rat) -> Self {
        QuadNum { a, b, d }
    }

    /// The generator `√d`.
    pub fn sqrt_of(d: Rat) -> Self {
        QuadNum {
            a: Rat::zero(),
            b: Rat::one(),
            d,
        }
    }

    fn field_d(&self, other: &Self) -> Rat {
        match (self.d.is_zero(), other.d.is_zero()) {
            (true, _) => other.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, other.d, "mixed quadratic fields");
                self.d.clone()
            }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
}

impl PartialEq for QuadNum {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl Field for QuadNum {
    fn zero_el() -> Self {
        QuadNum::new(Rat::zero(), Rat::zero(), Rat::zero())
    }
    fn one_el() -> Self {
        QuadNum::new(Rat::one(), Rat::zero(), Rat::zero())
    }
    fn is_zero_el(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        QuadNum::new(&self.a + &o.a, &self.b + &o.b, self.field_d(o))
    }
    fn sub(&self, o: &Self) -> Self {
        QuadNum::new(&self.a - &o.a, &self.b - &o.b, self.field_d(o))
    }
    fn mul(&self, o: &Self) -> Self {
        let d = self.field_d(o);
        QuadNum::new(
            &self.a * &o.a + &self.b * &o.b * &d,
            &self.a * &o.b + &self.b * &o.a,
            d,
        )
    }
    fn neg(&self) -> Self {
        QuadNum::new(-&self.a, -&self.b, self.d.clone())
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero_el(), "inverse of zero");
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        QuadNum::new(&self.a / &norm, -&self.b / &norm, self.d.clone())
    }
    fn from_rat(r: &Rat) -> Self {
        QuadNum::new(r.clone(), Rat::zero(), Rat::zero())
    }
}

/// Seeded source of random rationals. Every "general point" in the toolkit
/// is drawn from one of these.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound: SAMPLE_BOUND,
        }
    }

    /// Independent substream `stream` of the generator seeded with `seed`.
    pub fn substream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream + 1);
        Sampler {
            rng,
            bound: SAMPLE_BOUND,
        }
    }

    pub fn with_bound(mut self, bound: i64) -> Self {
        assert!(bound >= 1);
        self.bound = bound;
        self
    }

    /// Numerator uniform in `[-B, B]`, denominator uniform in `[1, B]`.
    pub fn rat(&mut self) -> Rat {
        let b = self.bound;
        let p = self.rng.gen_range(-b..=b);
        let q = self.rng.gen_range(1..=b);
        ratio(p, q)
    }

    pub fn nonzero_rat(&mut self) -> Rat {
        loop {
            let r = self.rat();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn rats(&mut self, n: usize) -> Vec<Rat> {
        (0..n).map(|_| self.rat()).collect()
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.gen()
    }
}

/// Runs `f` with fresh samples until it stops reporting a non-generic
/// sample, at most [`GENERICITY_RETRIES`] times.
pub fn retry_generic<T>(
    sampler: &mut Sampler,
    mut f: impl FnMut(&mut Sampler) -> crate::Result<T>,
) -> crate::Result<T> {
    let mut last = None;
    for _ in 0..GENERICITY_RETRIES {
        match f(sampler) {
            Err(crate::Error::NonGeneric(msg)) => last = Some(msg),
            other => return other,
        }
    }
    Err(crate::Error::NonGeneric(format!(
        "{} (after {} attempts)",
        last.unwrap_or_default(),
        GENERICITY_RETRIES
    )))
}

/// Integer content-free scaling: multiplies a rational vector by the lcm of
/// denominators and divides by the gcd of numerators.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for r in v {
        l = l.lcm(r.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|r| (r * Rat::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    let lead_sign = ints.iter().find(|x| !x.is_zero()).map(|x| x.sign());
    let g = if lead_sign == Some(Sign::Minus) { -g } else { g };
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn to_i64(r: &Rat) -> Option<i64> {
    if r.denom().is_one() {
        r.numer().to_i64()
    } else {
        None
    }
}
