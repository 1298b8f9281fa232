//! Surface syntax: lexing, parsing with name resolution, and printing.

pub mod lexer;
pub mod parse;
pub mod pretty;

pub use lexer::SourceSpan;
pub use parse::{parse_term, Ast, Calculus, ParseError};
