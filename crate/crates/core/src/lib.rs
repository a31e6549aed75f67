//! Possibility-measure evidence (s-values) for general null hypotheses.
//!
//! An s-value is the largest level α whose likelihood-based confidence
//! region {θ : 2(ℓ(θ̂) - ℓ(θ)) ≤ F⁻¹(1-α)} still meets the closure of the
//! null set Θ₀. For strictly concave log-likelihoods it reduces to
//! `1 - F(T_Θ₀)`, with `T_Θ₀` the likelihood-ratio statistic.
//!
//! The crate pairs this measure with the usual likelihood-ratio and Wald
//! p-values, the p ↔ s duality transforms, and belief pairs
//! ⟨s(Θ₀), s(Θ₀ᶜ)⟩ read through the abstract belief calculus.

pub mod abc;
pub mod cli;
pub mod error;
pub mod evidence;
pub mod hypotheses;
pub mod models;
pub mod optimize;
pub mod special_fn;

pub use error::{Error, Result};
pub use evidence::{EvidenceReport, SupportPair};
pub use hypotheses::{Curve, NullSet};
pub use models::{LinearRegressionKnownVar, LogLikModel, MvnIdentityMean, ParamVector, Trinomial};
pub use special_fn::ChiSquare;
