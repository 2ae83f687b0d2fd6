//! Focal schemes and fixed tangent spaces of families of linear spaces,
//! computed with exact rational arithmetic.

pub mod error;
pub mod exactalg;
pub mod families;
pub mod focal;
pub mod secondform;
pub mod classify;
pub mod cli;

pub use error::{Error, Result};
