//! Exact modular data, Whitehead W-matrices and colored braid-closure invariants
//! for the twisted quantum doubles `D^ω(Z_q ⋊ Z_p)`.

pub mod cyclotomic;
pub mod error;

pub use cyclotomic::{CycloNumber, PhaseSum, RootOfUnity};
pub use error::{Error, Result};
pub mod group;
pub mod cocycle;
pub mod double;
pub mod braid;
pub mod quandle;
pub mod modular;
