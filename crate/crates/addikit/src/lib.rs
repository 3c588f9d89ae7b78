//! Additive codes over finite field towers.
//!
//! `addikit` builds additive codes over F_{q^h} from linear codes over F_q,
//! brute-force verifies their parameters at desk scale, evaluates the
//! relevant Griesmer-type bounds with exact rational arithmetic, and
//! certifies non-equivalence to linear codes. Everything is exact and
//! deterministic: no floating point, no randomness.
//!
//! The companion guide under `book/` walks through the concepts; its code
//! snippets double as doctests of this crate.

pub mod additive;
pub mod bounds;
pub mod budget;
pub mod cert;
pub(crate) mod enumerate;
pub mod error;
pub mod field;
pub mod linalg;
pub mod linear;
pub mod normtrace;
pub mod reproduce;
pub mod semifield;

pub use additive::{AdditiveCode, AdditiveParams};
pub use budget::Budget;
pub use error::{Error, Result};
pub use field::{Extension, Field, FieldElement, FieldRef, FieldSpec, TowerContext};
pub use linalg::{Matrix, SolveOutcome};
pub use linear::LinearCode;
