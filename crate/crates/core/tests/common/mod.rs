//! Oracles shared by the integration tests. They recompute quantities by
//! routes that avoid the library's own elimination and focal machinery.

#![allow(dead_code)]

use focal_kit::exactalg::rat::Sampler;
use focal_kit::exactalg::{Field, MPoly, Rat};
use focal_kit::families::{FamilySpec, ParamPoint};
use num::{One, Zero};

/// Rank by elimination on the transpose, pivoting from the last column
/// and the bottom row, so the pivot order differs from the library's.
pub fn oracle_rank<F: Field>(m: &[Vec<F>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut a: Vec<Vec<F>> = (0..cols).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect();
    let mut rank = 0;
    let mut used = vec![false; a.len()];
    for c in (0..rows).rev() {
        let Some(p) = (0..a.len()).rev().find(|&r| !used[r] && !a[r][c].is_zero_el()) else {
            continue;
        };
        used[p] = true;
        rank += 1;
        let inv = a[p][c].inv();
        let pivot_row = a[p].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == p || row[c].is_zero_el() {
                continue;
            }
            let f = row[c].mul(&inv);
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = x.sub(&f.mul(y));
            }
        }
    }
    rank
}

/// The Jacobian of `(t, x) ↦ Σ_a x_a·P_a(t)` at a point, written from the
/// definition: one column per parameter, then one per spanning point.
pub fn incidence_jacobian<F: Field>(spec: &FamilySpec, t: &ParamPoint, x: &[F]) -> Vec<Vec<F>> {
    let n = spec.n();
    let vdim = spec.vdim();
    let lift = |p: &MPoly| F::from_rat(&p.eval(t.values()));
    let mut cols: Vec<Vec<F>> = Vec::new();
    for j in 0..n {
        let col = (0..vdim)
            .map(|i| {
                spec.span()
                    .iter()
                    .zip(x)
                    .fold(F::zero_el(), |acc, (p, xa)| acc.add(&xa.mul(&lift(&p.coords()[i].derivative(j)))))
            })
            .collect();
        cols.push(col);
    }
    for p in spec.span() {
        cols.push(p.coords().iter().map(lift).collect());
    }
    (0..vdim).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Whether `x` on the member over `t` is a rank-drop point of the
/// incidence differential.
pub fn oracle_is_focal<F: Field>(spec: &FamilySpec, t: &ParamPoint, x: &[F]) -> bool {
    oracle_rank(&incidence_jacobian(spec, t, x)) < spec.n() + spec.k() + 1
}

/// A random invertible matrix with small integer entries.
pub fn random_invertible(size: usize, sampler: &mut Sampler) -> Vec<Vec<Rat>> {
    loop {
        let m: Vec<Vec<Rat>> = (0..size)
            .map(|_| (0..size).map(|_| Rat::from_integer(sampler.int(-5, 5).into())).collect())
            .collect();
        if oracle_rank(&m) == size {
            return m;
        }
    }
}

/// Whether `v` lies in the span of `basis`, by comparing oracle ranks.
pub fn in_span<F: Field>(basis: &[Vec<F>], v: &[F]) -> bool {
    let mut with = basis.to_vec();
    with.push(v.to_vec());
    oracle_rank(&with) == oracle_rank(basis)
}

/// Two lists of vectors span the same space.
pub fn same_span(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> bool {
    let r = oracle_rank(a);
    r == oracle_rank(b) && b.iter().all(|v| in_span(a, v))
}

/// `(1, s, …, s^d)`.
pub fn moment(s: &Rat, d: usize) -> Vec<Rat> {
    let mut out = vec![Rat::one()];
    for _ in 0..d {
        let next = out.last().unwrap() * s;
        out.push(next);
    }
    out
}

/// `d/ds (1, s, …, s^d)`.
pub fn moment_derivative(s: &Rat, d: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero()];
    for i in 1..=d {
        let mut v = Rat::from_integer((i as i64).into());
        for _ in 1..i {
            v *= s;
        }
        out.push(v);
    }
    out
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Determinant by elimination with column pivoting from the right.
pub fn oracle_det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for c in (0..n).rev() {
        let Some(p) = (0..=c).find(|&r| !a[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in 0..c {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[c][c];
            for j in 0..=c {
                let d = &f * &a[c][j];
                a[r][j] -= d;
            }
        }
    }
    det
}

/// Univariate polynomials as coefficient vectors, constant term first.
pub fn u_trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn u_monic(p: Vec<Rat>) -> Vec<Rat> {
    let p = u_trim(p);
    match p.last().cloned() {
        Some(l) => p.into_iter().map(|c| c / &l).collect(),
        None => p,
    }
}

pub fn u_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = u_trim(a.to_vec());
    let b = u_trim(b.to_vec());
    while r.len() >= b.len() && !r.is_empty() {
        let f = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            let d = &f * c;
            r[shift + i] -= d;
        }
        r = u_trim(r);
    }
    r
}

pub fn u_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let (mut a, mut b) = (u_trim(a.to_vec()), u_trim(b.to_vec()));
    while !b.is_empty() {
        let r = u_rem(&a, &b);
        a = b;
        b = r;
    }
    u_monic(a)
}

/// Product of the distinct irreducible factors, monic.
pub fn u_squarefree(p: &[Rat]) -> Vec<Rat> {
    let p = u_trim(p.to_vec());
    if p.len() <= 1 {
        return u_monic(p);
    }
    let dp: Vec<Rat> = p.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect();
    let g = u_gcd(&p, &dp);
    // exact division p / g
    let mut q = vec![Rat::zero(); p.len() - g.len() + 1];
    let mut r = p.clone();
    for i in (0..q.len()).rev() {
        let f = &r[i + g.len() - 1] / g.last().unwrap();
        for (j, c) in g.iter().enumerate() {
            let d = &f * c;
            r[i + j] -= d;
        }
        q[i] = f;
    }
    u_monic(q)
}

/// Lagrange interpolation through `(i, values[i])`, `i = 0..len`.
pub fn interpolate(values: &[Rat]) -> Vec<Rat> {
    let n = values.len();
    let mut out = vec![Rat::zero(); n];
    for (i, yi) in values.iter().enumerate() {
        let mut basis = vec![Rat::one()];
        let mut denom = Rat::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![Rat::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * rat(j as i64);
            }
            basis = next;
            denom *= rat(i as i64 - j as i64);
        }
        for (o, c) in out.iter_mut().zip(basis) {
            *o += c * yi / &denom;
        }
    }
    out
}

fn subsets_of(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets_of(n - 1, k);
    for mut s in subsets_of(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Rank-drop locus of the incidence Jacobian along a line fiber, in the
/// chart `x = (1, y)`: the squarefree gcd of all maximal minors, each
/// interpolated in `y` from numeric determinants. The second value says
/// whether `(0:1)` is a rank-drop point.
pub fn oracle_focal_support(spec: &FamilySpec, t: &ParamPoint) -> (Vec<Rat>, bool) {
    assert_eq!(spec.k(), 1);
    let cols = spec.n() + 2;
    let rows = spec.vdim();
    let samples = spec.n() + 1;
    let mats: Vec<Vec<Vec<Rat>>> =
        (0..samples).map(|y| incidence_jacobian(spec, t, &[Rat::one(), rat(y as i64)])).collect();
    let mut g: Vec<Rat> = Vec::new();
    for pick in subsets_of(rows, cols) {
        let values: Vec<Rat> = mats
            .iter()
            .map(|m| oracle_det(&pick.iter().map(|&r| m[r].clone()).collect::<Vec<_>>()))
            .collect();
        g = u_gcd(&g, &interpolate(&values));
    }
    let at_infinity = oracle_is_focal(spec, t, &[Rat::zero(), Rat::one()]);
    (u_squarefree(&g), at_infinity)
}

/// The `i`-th standard basis vector of length `n`.
pub fn unit(n: usize, i: usize) -> Vec<Rat> {
    (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()
}
