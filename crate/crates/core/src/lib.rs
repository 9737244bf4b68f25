//! Spin-j Landau-Streater quantum channel.
//!
//! The channel acts on `C^(2j+1)` as `Φ[ρ] = (1/(j(j+1))) Σ_α J_α ρ J_α`
//! where `J_α` are the spin-j angular momentum matrices. Half-integer spins
//! are carried as doubled integers ([`TwoJ`]); basis index `k` labels
//! `|j, j−k⟩`.

pub mod angular;
pub mod capacity;
pub mod channel;
pub mod degradability;
pub mod entanglement;
pub mod error;
pub mod extremes;
pub mod linalg;
pub mod random;
pub mod spectral;

pub use angular::{HalfInt, TwoJ};
pub use channel::{landau_streater, KrausChannel};
pub use error::{Error, Result};
