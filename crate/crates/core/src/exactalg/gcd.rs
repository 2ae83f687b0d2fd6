//! Multivariate GCD by content / primitive-part recursion on the last
//! variable, plus the squarefree and content helpers built on it.

use num::One;

use super::poly::{MPoly, Monomial};
use super::rat::Rat;

/// GCD of two polynomials, monic under graded lex. `gcd(0, 0) = 0`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    gcd_rec(a, b).monic()
}

/// GCD of a list; zero entries are ignored and an all-zero list gives zero.
pub fn gcd_polys(ps: &[MPoly]) -> MPoly {
    let mut it = ps.iter().filter(|p| !p.is_zero());
    let first = match it.next() {
        Some(p) => p.monic(),
        None => {
            return match ps.first() {
                Some(p) => MPoly::zero(p.vars()),
                None => panic!("gcd of an empty list"),
            }
        }
    };
    let mut g = first;
    for p in it {
        if g.is_constant() {
            break;
        }
        if p.div_exact(&g).is_some() {
            continue;
        }
        g = gcd(&g, p);
    }
    g.monic()
}

fn last_var(a: &MPoly, b: &MPoly) -> Option<usize> {
    (0..a.nvars()).rev().find(|&i| a.involves(i) || b.involves(i))
}

fn gcd_rec(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let v = match last_var(a, b) {
        Some(v) => v,
        None => return MPoly::one(a.vars()),
    };
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_rec(&ca, &cb).monic();
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if q.is_zero() {
            break;
        }
        if q.degree_in(v) == 0 {
            p = MPoly::one(a.vars());
            break;
        }
        let r = prem(&p, &q, v);
        p = q;
        q = if r.is_zero() { r } else { primitive_part_in(&r, v) };
    }
    let g = primitive_part_in(&p, v);
    (&c * &g).monic()
}

/// GCD of the coefficients of `a` viewed as a polynomial in variable `v`.
pub fn content_in(a: &MPoly, v: usize) -> MPoly {
    let cs: Vec<MPoly> = a.coeffs_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    if cs.is_empty() {
        return MPoly::zero(a.vars());
    }
    let mut g = cs[0].monic();
    for c in &cs[1..] {
        if g.is_constant() {
            break;
        }
        g = gcd_rec(&g, c).monic();
    }
    g
}

pub fn primitive_part_in(a: &MPoly, v: usize) -> MPoly {
    if a.is_zero() {
        return a.clone();
    }
    let c = content_in(a, v);
    a.div_exact(&c).expect("content divides").monic()
}

/// Pseudo-remainder of `p` by `q` as polynomials in variable `v`
/// (without the trailing power of the leading coefficient).
fn prem(p: &MPoly, q: &MPoly, v: usize) -> MPoly {
    let dq = q.degree_in(v);
    let qc = q.coeffs_in(v);
    let lq = qc[dq as usize].clone();
    let vars = p.vars().clone();
    let mut r = p.clone();
    while !r.is_zero() && r.degree_in(v) >= dq {
        let dr = r.degree_in(v);
        let lr = r.coeffs_in(v)[dr as usize].clone();
        let mut e = vec![0u32; vars.len()];
        e[v] = dr - dq;
        let shift = MPoly::monomial(&vars, e, Rat::one());
        r = &(&lq * &r) - &(&(&lr * &shift) * q);
    }
    r
}

/// Content of `p` seen as a polynomial in the variables `xs`, with
/// coefficients in the remaining variables.
pub fn content_wrt(p: &MPoly, xs: &[usize]) -> MPoly {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<Monomial, Vec<(Monomial, Rat)>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let key: Monomial = xs.iter().map(|&i| e[i]).collect();
        let mut rest = e.clone();
        for &i in xs {
            rest[i] = 0;
        }
        groups.entry(key).or_default().push((rest, c.clone()));
    }
    let coeffs: Vec<MPoly> = groups
        .into_values()
        .map(|ts| MPoly::from_terms(p.vars(), ts))
        .collect();
    if coeffs.is_empty() {
        return MPoly::zero(p.vars());
    }
    gcd_polys(&coeffs)
}

/// Removes repeated factors that involve any of the variables `xs`.
pub fn squarefree_part_wrt(p: &MPoly, xs: &[usize]) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut all = vec![p.clone()];
    all.extend(xs.iter().map(|&i| p.derivative(i)));
    let g = gcd_polys(&all);
    p.div_exact(&g).expect("gcd divides").monic()
}

/// Exact square root up to a constant: returns `q` with `p = c·q²` for
/// some non-zero constant `c`, if one exists.
pub fn square_root_up_to_constant(p: &MPoly) -> Option<MPoly> {
    if p.is_zero() {
        return Some(p.clone());
    }
    let p = p.monic();
    let vars = p.vars().clone();
    let (le, _) = p.leading()?;
    if le.iter().any(|k| k % 2 == 1) {
        return None;
    }
    let half: Monomial = le.iter().map(|k| k / 2).collect();
    let mut q = MPoly::monomial(&vars, half.clone(), Rat::one());
    let mut rem = &p - &(&q * &q);
    let mut guard = 0usize;
    while !rem.is_zero() {
        guard += 1;
        if guard > 10_000 {
            return None;
        }
        let (re, rc) = rem.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        if super::poly::grlex(&re, le) == std::cmp::Ordering::Greater {
            return None;
        }
        if re.iter().zip(&half).any(|(a, b)| a < b) {
            return None;
        }
        let e: Monomial = re.iter().zip(&half).map(|(a, b)| a - b).collect();
        let t = MPoly::monomial(&vars, e, rc / Rat::from_integer(2.into()));
        // (q + t)^2 = q^2 + 2qt + t^2
        rem = &(&rem - &(&(&q * &t).scale(&Rat::from_integer(2.into())))) - &(&t * &t);
        q = &q + &t;
        if q.num_terms() > p.num_terms() + 64 {
            return None;
        }
    }
    Some(q)
}
