//! Kernel of a naive cubical type theory.
//!
//! Paths are functions out of an interval with connections; every type in the
//! universes `U0 : U1` supports a 0-biased filling operation, from which
//! composition, transport and the path eliminator are derived. Univalence is
//! provided by Glue types over half-adjoint isomorphisms.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod check;
pub mod fuel;
pub mod glue;
pub mod interval;
pub mod kan;
pub mod nbe;
pub mod pretty;
pub mod syntax;

pub use check::{check_def, Ctx, ErrorKind, TypeError};
pub use syntax::{GlobalDef, Span, Term};
