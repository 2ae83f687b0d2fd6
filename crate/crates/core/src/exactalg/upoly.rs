//! Dense univariate polynomials over Q: Euclid, squarefree decomposition
//! and rational root finding by Hensel lifting.

use num::{BigInt, Integer, One, Signed, Zero};

use super::rat::{primitive_integer_vector, Rat};

/// Coefficients by ascending power, no trailing zeros (the zero polynomial is empty).
pub type UPoly = Vec<Rat>;

pub fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn degree(p: &[Rat]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn eval(p: &[Rat], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

pub fn derivative(p: &[Rat]) -> UPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
            .collect(),
    )
}

pub fn monic(p: &[Rat]) -> UPoly {
    match p.last() {
        None => Vec::new(),
        Some(l) => p.iter().map(|c| c / l).collect(),
    }
}

pub fn mul(a: &[Rat], b: &[Rat]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn div_rem(a: &[Rat], b: &[Rat]) -> (UPoly, UPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r: UPoly = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    let lb = b[db].clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lb;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

pub fn gcd(a: &[Rat], b: &[Rat]) -> UPoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Yun's squarefree decomposition: pairs `(factor, multiplicity)` with
/// monic, squarefree, pairwise coprime factors of positive degree.
pub fn squarefree_decomposition(p: &[Rat]) -> Vec<(UPoly, usize)> {
    let p = monic(&trim(p.to_vec()));
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let dp = derivative(&p);
    let mut a = gcd(&p, &dp);
    let mut b = div_rem(&p, &a).0;
    let mut c = div_rem(&dp, &a).0;
    let mut d = sub(&c, &derivative(&b));
    let mut i = 1;
    while b.len() > 1 {
        a = gcd(&b, &d);
        if a.len() > 1 {
            out.push((monic(&a), i));
        }
        b = div_rem(&b, &a).0;
        c = div_rem(&d, &a).0;
        d = sub(&c, &derivative(&b));
        i += 1;
    }
    out
}

fn sub(a: &[Rat], b: &[Rat]) -> UPoly {
    let n = a.len().max(b.len());
    let z = Rat::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

const PRIMES: [u64; 24] = [
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227,
];

/// Distinct rational roots, in increasing order.
pub fn rational_roots(p: &[Rat]) -> Vec<Rat> {
    let mut p = trim(p.to_vec());
    let mut roots = Vec::new();
    if p.len() <= 1 {
        return roots;
    }
    if p[0].is_zero() {
        roots.push(Rat::zero());
        while p.first().is_some_and(|c| c.is_zero()) {
            p.remove(0);
        }
    }
    // squarefree, integral, primitive
    let sq = div_rem(&p, &gcd(&p, &derivative(&p))).0;
    let ints = primitive_integer_vector(&sq);
    match ints.len() {
        0 | 1 => {}
        2 => roots.push(Rat::new(-ints[0].clone(), ints[1].clone())),
        3 => {
            let (c, b, a) = (&ints[0], &ints[1], &ints[2]);
            let disc: BigInt = b * b - BigInt::from(4) * a * c;
            if !disc.is_negative() {
                let s = disc.sqrt();
                if &s * &s == disc {
                    let two_a = BigInt::from(2) * a;
                    roots.push(Rat::new(-b + &s, two_a.clone()));
                    if !s.is_zero() {
                        roots.push(Rat::new(-b - &s, two_a));
                    }
                }
            }
        }
        _ => roots.extend(hensel_rational_roots(&ints)),
    }
    roots.sort();
    roots.dedup();
    roots
}

fn eval_mod(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Squarefree primitive integer polynomial with non-zero constant term.
fn hensel_rational_roots(f: &[BigInt]) -> Vec<Rat> {
    let lc = f.last().unwrap().clone();
    let a0 = f[0].clone();
    let bound: BigInt = BigInt::from(2) * lc.abs() * a0.abs() + BigInt::one();
    let df: Vec<BigInt> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    for &p in PRIMES.iter() {
        let pb = BigInt::from(p);
        if (&lc % &pb).is_zero() {
            continue;
        }
        let roots_mod_p: Vec<BigInt> = (0..p)
            .map(BigInt::from)
            .filter(|x| eval_mod(f, x, &pb).is_zero())
            .collect();
        // need every root simple mod p
        if roots_mod_p.iter().any(|x| eval_mod(&df, x, &pb).is_zero()) {
            continue;
        }
        let mut out = Vec::new();
        for r0 in roots_mod_p {
            let mut m = pb.clone();
            let mut r = r0;
            while m <= bound {
                m = &m * &m;
                let fv = eval_mod(f, &r, &m);
                let dv = eval_mod(&df, &r, &m);
                let inv = match inv_mod(&dv, &m) {
                    Some(i) => i,
                    None => break,
                };
                r = (&r - fv * inv).mod_floor(&m);
            }
            let mut c = (&lc * &r).mod_floor(&m);
            if &c * BigInt::from(2) > m {
                c -= &m;
            }
            let cand = Rat::new(c, lc.clone());
            let fr: Vec<Rat> = f.iter().map(|c| Rat::from_integer(c.clone())).collect();
            if eval(&fr, &cand).is_zero() {
                out.push(cand);
            }
        }
        return out;
    }
    rational_root_test(f)
}

/// Candidate search over `p/q` with `p | a0`, `q | lc`. Only reached when
/// every prime in the table divides the discriminant or the leading coefficient.
fn rational_root_test(f: &[BigInt]) -> Vec<Rat> {
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let n = n.abs();
        let lim = n.sqrt();
        let mut out = Vec::new();
        let mut i = BigInt::one();
        while i <= lim {
            if (&n % &i).is_zero() {
                out.push(i.clone());
                out.push(&n / &i);
            }
            i += 1;
        }
        out
    };
    let fr: Vec<Rat> = f.iter().map(|c| Rat::from_integer(c.clone())).collect();
    let mut out = Vec::new();
    for p in divisors(&f[0]) {
        for q in divisors(f.last().unwrap()) {
            for s in [p.clone(), -p.clone()] {
                let cand = Rat::new(s, q.clone());
                if eval(&fr, &cand).is_zero() {
                    out.push(cand);
                }
            }
        }
    }
    out
}

/// Multiplicity of `r` as a root of `p`.
pub fn root_multiplicity(p: &[Rat], r: &Rat) -> usize {
    let lin = vec![-r.clone(), Rat::one()];
    let mut q = trim(p.to_vec());
    let mut m = 0;
    while !q.is_empty() {
        let (d, rem) = div_rem(&q, &lin);
        if !rem.is_empty() {
            break;
        }
        q = d;
        m += 1;
    }
    m
}
