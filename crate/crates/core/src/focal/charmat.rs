use num::Zero;

use crate::exactalg::matrix::{rank, transpose};
use crate::exactalg::{LinSubspace, MPoly, PolyMatrix, Rat, Vars};
use crate::families::{fiber_space, FamilySpec, ParamPoint};
use crate::Result;

/// A tangent vector of the family at a fixed member, written as a map
/// from the fiber cone to the normal space: `(N−k)×(k+1)`, column `a` is
/// the image of the `a`-th spanning point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TangentHom {
    pub matrix: Vec<Vec<Rat>>,
}

impl TangentHom {
    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        crate::exactalg::matrix::mat_vec(&self.matrix, v)
    }

    /// Image as a subspace of the normal space.
    pub fn image(&self) -> LinSubspace {
        LinSubspace::span(self.matrix.len(), &transpose(&self.matrix))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|c| c.is_zero())
    }
}

/// The characteristic map at one member of the family, in a fixed basis of
/// the normal space. Entry `(i, j)` is a linear form in `x0..xk`.
#[derive(Clone, Debug)]
pub struct CharMatrix {
    pub base: ParamPoint,
    /// The fiber cone Λ̂ ⊂ V.
    pub fiber: LinSubspace,
    /// Standard basis indices spanning the chosen complement of Λ̂.
    pub quotient_basis: Vec<usize>,
    pub matrix: PolyMatrix,
    /// `coeffs[j][a]` is the normal-space vector `∂P_a/∂t_j mod Λ̂`.
    pub coeffs: Vec<Vec<Vec<Rat>>>,
}

impl CharMatrix {
    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn k(&self) -> usize {
        self.fiber.dim() - 1
    }

    /// Dimension of the normal space, N − k.
    pub fn codim(&self) -> usize {
        self.quotient_basis.len()
    }

    pub fn fiber_vars(&self) -> &Vars {
        self.matrix.vars()
    }

    /// The tangent homomorphism `∂/∂t_j`.
    pub fn hom(&self, j: usize) -> TangentHom {
        TangentHom {
            matrix: transpose(&self.coeffs[j]),
        }
    }

    /// The homomorphism `Σ_j c_j ∂/∂t_j`.
    pub fn combination(&self, c: &[Rat]) -> TangentHom {
        let rows = self.codim();
        let cols = self.k() + 1;
        let mut m = vec![vec![Rat::zero(); cols]; rows];
        for (cj, vs) in c.iter().zip(&self.coeffs) {
            if cj.is_zero() {
                continue;
            }
            for (a, v) in vs.iter().enumerate() {
                for (i, x) in v.iter().enumerate() {
                    m[i][a] += cj * x;
                }
            }
        }
        TangentHom { matrix: m }
    }

    /// The matrix at a fiber point, `(N−k)×n` over Q.
    pub fn at(&self, x: &[Rat]) -> Vec<Vec<Rat>> {
        self.matrix.eval(x)
    }

    pub fn at_in<F: crate::exactalg::Field>(&self, x: &[F]) -> Vec<Vec<F>> {
        self.matrix.eval_in(x)
    }

    /// Span of every coefficient vector: the smallest subspace containing the
    /// image of the characteristic map at every fiber point.
    pub fn total_image(&self) -> LinSubspace {
        let vs: Vec<Vec<Rat>> = self.coeffs.iter().flatten().cloned().collect();
        LinSubspace::span(self.codim(), &vs)
    }

    /// Lifts normal-space coordinates to a vector of V (zeros off the
    /// quotient basis).
    pub fn lift(&self, w: &[Rat]) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.fiber.ambient()];
        for (&i, c) in self.quotient_basis.iter().zip(w) {
            v[i] = c.clone();
        }
        v
    }
}

pub fn characteristic_matrix(spec: &FamilySpec, t: &ParamPoint) -> Result<CharMatrix> {
    let fiber = fiber_space(spec, t)?;
    let quotient_basis = fiber.complement_indices();
    let xv = spec.fiber_vars();
    let n = spec.n();
    let coeffs: Vec<Vec<Vec<Rat>>> = (0..n)
        .map(|j| spec.derivative_at(t, j).iter().map(|d| fiber.reduce(d)).collect())
        .collect();
    let rows = quotient_basis.len();
    let mut matrix = PolyMatrix::zeros(&xv, rows, n);
    for (j, vs) in coeffs.iter().enumerate() {
        for i in 0..rows {
            let entry = vs.iter().enumerate().fold(MPoly::zero(&xv), |acc, (a, v)| {
                &acc + &MPoly::var(&xv, a).scale(&v[i])
            });
            matrix.set(i, j, entry);
        }
    }
    Ok(CharMatrix {
        base: t.clone(),
        fiber,
        quotient_basis,
        matrix,
        coeffs,
    })
}
