//! System F and its relational interpretation.

pub mod church;
pub mod enumerate;
pub mod param;
pub mod syntax;

pub use param::{
    free_theorem_check, free_theorem_print, free_theorem_print_with, rel_member, FreeTheoremVerdict, RelEnv, RelError,
    RelInstance, Witness,
};
pub use syntax::{f_infer, f_normalize, is_beta_normal, FTerm, FType, FTypeError, FuelExhausted};
