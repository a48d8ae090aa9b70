//! Normalisation by evaluation: a semantic domain with typed neutrals,
//! evaluation, substitution on values, readback and conversion.

pub mod conv;
pub mod eval;
pub mod occurs;
pub mod quote;
pub mod subst;
pub mod value;

pub use conv::{conv, conv_ty};
pub use eval::{apply, eval, eval_cof, eval_ival, fst, papply, snd, unglue};
pub use quote::Quote;
pub use subst::Subst;
pub use value::{fresh, CofV, Env, IClo, IVal, Lvl, Value};
