//! Exact arithmetic for the path-composition product `#` on words and its
//! restriction to the classical combinatorial Hopf algebras realized as
//! noncommutative polynomials.
//!
//! Every algebra module pairs a combinatorial product rule with its word-level
//! meaning; [`realization`] expands labels into words so that each rule can be
//! checked against `u # v = d_{|u|}(uv)` directly.

pub mod enumerate;
pub mod error;
pub mod expr;
pub mod fqsym;
pub mod fsym;
pub mod lincomb;
pub mod normal_forms;
pub mod pbt;
pub mod pqsym;
pub mod realization;
pub mod sym_qsym;
pub mod trialg;
pub mod verify;
pub mod word;
pub mod wqsym;

pub use error::{Error, Result};
pub use lincomb::{LinComb, Series};
pub use normal_forms::{pack, park, std, PackedWord, ParkingFunction, Permutation};
pub use word::{Letter, Word};
