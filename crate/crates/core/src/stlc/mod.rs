//! The simply typed calculus: syntax, normalization by evaluation, and an
//! independent rewriting oracle.

pub mod nbe;
pub mod oracle;
pub mod syntax;

pub use nbe::{
    canonicity, embed_ne, embed_nf, normalize, CanonicityError, NeutralForm, NormalForm, NormalizeError, Verdict,
};
pub use syntax::{infer, rename, subst, Context, Renaming, Substitution, Term, Type, TypeError};
