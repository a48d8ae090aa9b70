//! Surface language and batch checker for naive cubical type theory.
//!
//! Source files are lexed, parsed into [`ast`] trees, elaborated into core
//! terms and checked definition by definition by the kernel in `nctt-core`.

pub mod ast;
pub mod driver;
pub mod elab;
pub mod lexer;
pub mod parser;
pub mod print;

pub use driver::{Diagnostic, Error, Options, Session};
