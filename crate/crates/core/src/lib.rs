//! Exact residues of rational 2-forms on P² and P¹×P¹ over finite fields,
//! with the functional and differential codes built from them.

pub mod agcodes;
pub mod codes;
pub mod error;
pub mod field;
pub mod fuzz;
pub mod laurent;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod surface;

pub use error::{Error, Result};
pub use field::{ArithOp, Field, FieldElement};
pub use poly::{BiPoly, UniPoly};
pub use rational::{BiRat, UniRat};
