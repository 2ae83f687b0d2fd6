//! Characteristic matrices, focal divisors, fixed tangent spaces and the
//! checks built on them.

pub mod branch;
pub mod charmat;
pub mod divisor;
pub mod envelope;
pub mod homs;
pub mod theorems;

pub use branch::{
    branch_tangent, branches_at, compare_swept_curves, focal_surface_jet, focus_sweep_rank, global_focal_form,
    BranchTangent, CurveComparison, FocusBranch, GlobalFocalForm,
};
pub use charmat::{characteristic_matrix, CharMatrix, TangentHom};
pub use divisor::{focal_divisor, FocalDivisor};
pub use envelope::{df_rank_oracle, fixed_tangent_space, tangent_envelope, TangentEnvelope};
pub use homs::{multiplicity_witness, rank_one_homs, RankOneClass, RankOneHoms};
pub use theorems::{focal_points, theorem_b_matrix, verify_focal_tangency, TangencyReport, TangencyTrial};
