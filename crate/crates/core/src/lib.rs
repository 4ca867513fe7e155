//! Computes the F-symbols of the dual category `End_C(M)` from a fusion
//! category `C` and an indecomposable module category `M`, by decomposing the
//! module tube algebra into matrix blocks.

pub mod category;
pub mod endomorphizer;
pub mod error;
pub mod io;
pub mod linalg;
pub mod par;
pub mod tol;
pub mod tube;
pub mod wedderburn;

pub use category::{FusionCategoryData, ModuleCategoryData};
pub use error::{Error, Result};
pub use tol::Tolerances;
