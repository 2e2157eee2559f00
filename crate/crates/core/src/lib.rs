//! Semiring provenance for two-player games and for first-order and
//! positive least fixed-point logic.

pub mod cli;
pub mod error;
pub mod fixpoint;
pub mod game;
pub mod gen;
pub mod logic;
pub mod poly;
pub mod semiring;

pub use error::{Error, ErrorClass, Result};
pub use poly::{Monomial, PolyKind, Polynomial, Token};
pub use semiring::{CapabilityFlags, Semiring, Value};
