//! Matrices of polynomials and dense linear algebra over an exact field.

use std::collections::{BTreeMap, HashMap};

use num::{BigInt, One, Zero};

use super::poly::{MPoly, Vars};
use super::rat::{Field, Rat};
use super::subspace::LinSubspace;
use crate::{Error, Result};

/// Row-major matrix of polynomials over a shared variable set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    vars: Vars,
    entries: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn new(vars: &Vars, rows: usize, cols: usize, entries: Vec<MPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape {
                expected: format!("{rows}x{cols} = {} entries", rows * cols),
                found: format!("{} entries", entries.len()),
            });
        }
        if entries.iter().any(|e| e.vars() != vars) {
            return Err(Error::VariableMismatch);
        }
        Ok(PolyMatrix {
            rows,
            cols,
            vars: vars.clone(),
            entries,
        })
    }

    pub fn from_rows(vars: &Vars, rows: Vec<Vec<MPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::Shape {
                expected: format!("rows of length {c}"),
                found: format!("a row of length {}", bad.len()),
            });
        }
        Self::new(vars, r, c, rows.into_iter().flatten().collect())
    }

    /// Constant matrix.
    pub fn from_rats(vars: &Vars, rows: &[Vec<Rat>]) -> Result<Self> {
        let polys = rows
            .iter()
            .map(|r| r.iter().map(|c| MPoly::constant(vars, c.clone())).collect())
            .collect();
        Self::from_rows(vars, polys)
    }

    pub fn zeros(vars: &Vars, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            vars: vars.clone(),
            entries: vec![MPoly::zero(vars); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MPoly) {
        assert!(p.vars() == &self.vars);
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[MPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<MPoly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            rows: self.cols,
            cols: self.rows,
            vars: self.vars.clone(),
            entries,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix {
            rows: rows.len(),
            cols: cols.len(),
            vars: self.vars.clone(),
            entries,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(|e| e.is_constant())
    }

    pub fn eval(&self, point: &[Rat]) -> Vec<Vec<Rat>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.eval(point)).collect())
            .collect()
    }

    pub fn eval_in<F: Field>(&self, point: &[F]) -> Vec<Vec<F>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.eval_in(point)).collect())
            .collect()
    }

    pub fn eval_named(&self, assignment: &BTreeMap<String, Rat>) -> Result<Vec<Vec<Rat>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.eval_named(assignment)).collect())
            .collect()
    }

    /// Determinant by expansion along rows, memoised on the set of used columns.
    pub fn det(&self) -> Result<MPoly> {
        if self.rows != self.cols {
            return Err(Error::Shape {
                expected: "square matrix".into(),
                found: format!("{}x{}", self.rows, self.cols),
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(MPoly::one(&self.vars));
        }
        assert!(n < 64);
        let mut memo: HashMap<u64, MPoly> = HashMap::new();
        Ok(self.det_rec(0, 0, &mut memo))
    }

    // minor on rows `row..n` and the columns not in `used`
    fn det_rec(&self, row: usize, used: u64, memo: &mut HashMap<u64, MPoly>) -> MPoly {
        let n = self.rows;
        if row == n {
            return MPoly::one(&self.vars);
        }
        if let Some(p) = memo.get(&used) {
            return p.clone();
        }
        let mut acc = MPoly::zero(&self.vars);
        let mut sign_pos = true;
        for j in 0..n {
            if used & (1 << j) != 0 {
                continue;
            }
            let e = self.get(row, j);
            if !e.is_zero() {
                let sub = self.det_rec(row + 1, used | (1 << j), memo);
                let t = e * &sub;
                acc = if sign_pos { &acc + &t } else { &acc - &t };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(used, acc.clone());
        acc
    }

    /// All maximal minors, keyed by the retained row (or column) indices.
    pub fn maximal_minors(&self) -> Vec<(Vec<usize>, MPoly)> {
        if self.rows >= self.cols {
            let cols: Vec<usize> = (0..self.cols).collect();
            subsets(self.rows, self.cols)
                .into_iter()
                .map(|rs| {
                    let d = self.submatrix(&rs, &cols).det().expect("square");
                    (rs, d)
                })
                .collect()
        } else {
            self.transpose().maximal_minors()
        }
    }

    /// `φ_i = (−1)^i · det(m without row i)` for a `(c+1)×c` matrix,
    /// rows counted from zero. With this sign, `Σ_i m[i][j]·φ_i = 0` for every
    /// column `j`.
    pub fn signed_maximal_minors(&self) -> Result<Vec<MPoly>> {
        if self.rows != self.cols + 1 {
            return Err(Error::Shape {
                expected: format!("{}x{}", self.cols + 1, self.cols),
                found: format!("{}x{}", self.rows, self.cols),
            });
        }
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok((0..self.rows)
            .map(|i| {
                let rs: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
                let d = self.submatrix(&rs, &cols).det().expect("square");
                if i % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .collect())
    }

    /// Exact rank after substituting the assignment.
    pub fn rank_at(&self, assignment: &BTreeMap<String, Rat>) -> Result<usize> {
        let mut m = self.eval_named(assignment)?;
        Ok(rref(&mut m).len())
    }

    /// Right kernel of a constant matrix.
    pub fn kernel_basis(&self) -> Result<LinSubspace> {
        if !self.is_constant() {
            return Err(Error::input("kernel_basis needs a constant matrix"));
        }
        let m: Vec<Vec<Rat>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.constant_value().unwrap()).collect())
            .collect();
        Ok(LinSubspace::from_basis_unchecked(self.cols, kernel(&m, self.cols)))
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Reduced row echelon form in place; returns the pivot columns.
/// Zero rows are moved to the bottom.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero_el()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero_el() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = m[r][j].mul(&f);
                    m[i][j] = m[i][j].sub(&d);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of the right kernel of `m` (which has `cols` columns).
pub fn kernel<F: Field>(m: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero_el(); cols];
            v[f] = F::one_el();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = a[r][f].neg();
            }
            v
        })
        .collect()
}

/// Solves `m·x = b`; `None` when inconsistent. Returns one particular solution.
pub fn solve<F: Field>(m: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<F>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![F::zero_el(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a[r][cols].clone();
    }
    Some(x)
}

pub fn mat_vec<F: Field>(m: &[Vec<F>], v: &[F]) -> Vec<F> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(F::zero_el(), |acc, (a, b)| acc.add(&a.mul(b)))
        })
        .collect()
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(F::zero_el(), |acc, k| acc.add(&row[k].mul(&b[k][j])))
                })
                .collect()
        })
        .collect()
}

pub fn transpose<F: Clone>(m: &[Vec<F>]) -> Vec<Vec<F>> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Determinant of a constant square matrix.
pub fn det_rat(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rat::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let d = &a[c][j] * &f;
                    a[i][j] -= d;
                }
            }
        }
    }
    det
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..n - 1 {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let v = &a[i][j] * &a[c][c] - &a[i][c] * &a[c][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[c][c].clone();
    }
    sign * &a[n - 1][n - 1]
}
