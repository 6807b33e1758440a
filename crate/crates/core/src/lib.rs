//! Darboux and Calapso transforms of polarized curves in the light-cone
//! model of the conformal n-sphere, with numerical tools for studying their
//! behaviour at poles of the polarization.
//!
//! Module overview:
//!
//! * [`minkowski`]: Minkowski linear algebra (inner product, wedges, adjoints).
//! * [`projective`]: points and maps of the projectivized light cone.
//! * [`jet`]: truncated Taylor arithmetic used to differentiate curves exactly.
//! * [`curve`]: polarized curves, associated 1-forms, adapted frames.
//! * [`primitive`]: Lie-group integration of primitives Γ_p(ψ).
//! * [`poleform`]: pure pole forms, closed-form primitives, factorization.
//! * [`transform`]: the transforms themselves and limit analysis at a pole.

pub mod curve;
pub mod error;
pub mod expm;
pub mod jet;
pub mod minkowski;
pub mod poleform;
pub mod primitive;
pub mod projective;
pub mod transform;

pub use error::{Error, Result};
pub use minkowski::{MinkEndo, MinkVector};
