//! The dependent fragment: Π, Σ, `Ans` and a Tarski universe.

pub mod check;
pub mod enumerate;
pub mod semantics;
pub mod syntax;

pub use check::{check, check_type, d_canonicity, d_normalize, infer, CheckError, DCanonicityError, DContext};
pub use semantics::{convert, convert_ty, d_eval, d_reflect, d_reify, d_reify_ty, DNbeError, DValue};
pub use syntax::{DNe, DNf, DTerm};
