//! Exact arithmetic layer: rationals, sparse polynomials, GCDs, polynomial
//! matrices and subspaces.

pub mod gcd;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod subspace;
pub mod upoly;

pub use gcd::{content_wrt, gcd, gcd_polys, square_root_up_to_constant, squarefree_part_wrt};
pub use matrix::{kernel, rank, rref, PolyMatrix};
pub use poly::{MPoly, Monomial, Vars};
pub use rat::{fmt_rat, parse_rat, rat, ratio, Field, QuadNum, Rat, Sampler};
pub use subspace::LinSubspace;
