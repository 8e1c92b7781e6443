//! Exact p-adic representation of the Cuntz algebra and free coherent states.
//!
//! * [`scalar`]: exact arithmetic in `Q(√p) ⊕ i·Q(√p)`.
//! * [`padic`]: step functions on `Z_p`, Haar integration, `L²` pairing.
//! * [`fock`]: the truncated free Fock space with Fock and antifock ladders.
//! * [`rep`]: the Cuntz algebra on `L²(Z_p)` and its vacuum state.
//! * [`coherent`]: free coherent states, the renormalized pairing and the
//!   `T`-representation.
//! * [`json`]: the JSON wire formats.

pub mod coherent;
pub mod error;
pub mod fock;
pub mod json;
pub mod padic;
pub mod poly;
pub mod rep;
pub mod sample;
pub mod scalar;
pub mod word;

pub use coherent::{AntifockVacuum, CoherentState, PairingSeries};
pub use error::{Error, Result};
pub use fock::FockVector;
pub use padic::{CenterConvention, DiskAddress, StepFunction};
pub use poly::LambdaPoly;
pub use rep::{OpKind, OperatorWord};
pub use scalar::{Prime, Rational, Scalar};
pub use word::Word;
