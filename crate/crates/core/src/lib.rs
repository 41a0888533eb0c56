//! Exact tropical exterior algebra over idempotent semifields.
//!
//! Scalars live in 𝔹 or in the max-plus semifield over ℚ. On top of the
//! scalars the crate provides sparse tensors in `∧V` with the wedge
//! product, the tropical Plücker relations with circuits and cocircuits,
//! and presentations of the quotient modules `Q_w` and `∧^k Q_w` together
//! with a decision procedure for "`∧^d Q_w` is free of rank one".

#![no_std]

extern crate alloc;

mod bitset;
pub mod error;
pub mod linmod;
pub mod plucker;
pub mod quotient;
pub mod semiring;
pub mod subset;
pub mod wedge;

pub use error::{Error, Result};
pub use linmod::{LinearForm, Vector};
pub use semiring::{Boolean, Scalar, Semifield, SemifieldKind, Tropical};
pub use subset::Subset;
pub use wedge::{Matrix, Tensor};
