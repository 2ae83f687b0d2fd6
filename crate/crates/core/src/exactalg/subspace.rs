//! Linear subspaces of Q^m, stored by a reduced row echelon basis so that
//! equality is structural.

use num::Zero;

use super::matrix::{kernel, rref};
use super::rat::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinSubspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
}

impl LinSubspace {
    /// Span of the given vectors (dependent vectors are fine).
    pub fn span(ambient: usize, vectors: &[Vec<Rat>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length differs from ambient dimension");
        }
        let mut m = vectors.to_vec();
        let r = rref(&mut m).len();
        m.truncate(r);
        LinSubspace { ambient, basis: m }
    }

    /// Used when the vectors are known independent; still canonicalised.
    pub(crate) fn from_basis_unchecked(ambient: usize, vectors: Vec<Vec<Rat>>) -> Self {
        Self::span(ambient, &vectors)
    }

    pub fn zero(ambient: usize) -> Self {
        LinSubspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit(ambient, i)).collect();
        LinSubspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the projectivisation; −1 for the zero space.
    pub fn projective_dim(&self) -> isize {
        self.basis.len() as isize - 1
    }

    /// Reduced row echelon basis.
    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut m = self.basis.clone();
        m.push(v.to_vec());
        rref(&mut m).len() == self.basis.len()
    }

    pub fn contains_subspace(&self, other: &LinSubspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &LinSubspace) -> LinSubspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(self.ambient, &vs)
    }

    pub fn intersect(&self, other: &LinSubspace) -> LinSubspace {
        assert_eq!(self.ambient, other.ambient);
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Self::zero(self.ambient);
        }
        // Σ α_i u_i − Σ β_j w_j = 0, one row per ambient coordinate
        let m: Vec<Vec<Rat>> = (0..self.ambient)
            .map(|c| {
                self.basis
                    .iter()
                    .map(|u| u[c].clone())
                    .chain(other.basis.iter().map(|w| -w[c].clone()))
                    .collect()
            })
            .collect();
        let ker = kernel(&m, a + b);
        let vs: Vec<Vec<Rat>> = ker
            .iter()
            .map(|k| {
                let mut v = vec![Rat::zero(); self.ambient];
                for (alpha, u) in k[..a].iter().zip(&self.basis) {
                    for (x, y) in v.iter_mut().zip(u) {
                        *x += alpha * y;
                    }
                }
                v
            })
            .collect();
        Self::span(self.ambient, &vs)
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let pivots = self.pivots();
        let coords: Vec<Rat> = pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = vec![Rat::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (x, y) in w.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        (w == v).then_some(coords)
    }

    /// Leading column of each basis vector.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|b| b.iter().position(|x| !x.is_zero()).expect("non-zero basis vector"))
            .collect()
    }

    /// Indices of the standard basis vectors completing this subspace.
    pub fn complement_indices(&self) -> Vec<usize> {
        let p = self.pivots();
        (0..self.ambient).filter(|i| !p.contains(i)).collect()
    }

    /// Coordinates of `v` modulo this subspace in the complementary standard
    /// basis: subtract `v[p_a]·b_a` for every basis vector, read off the rest.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut w = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots()) {
            let c = w[p].clone();
            if !c.is_zero() {
                for (x, y) in w.iter_mut().zip(b) {
                    *x -= &c * y;
                }
            }
        }
        self.complement_indices().into_iter().map(|i| w[i].clone()).collect()
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::from_integer(1.into());
    v
}
