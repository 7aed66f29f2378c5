//! Birational maps between Severi–Brauer surfaces at the level of cycle data.
//!
//! - [`cycle`]: cycles `-d·ω - Σ bᵢxᵢ` and their Noether-type invariants.
//! - [`links`]: the elementary links `φ₃` and `φ₆`.
//! - [`untwist`]: factorization of a map datum into links.
//! - [`oracle`]: exact plane geometry over finite fields that checks the link
//!   formulas with explicit quadratic Cremona transformations.

pub mod cycle;
pub mod links;
pub mod oracle;
pub mod untwist;

pub use cycle::{BrauerLabel, CycleClass, CycleError, NoetherReport, Orbit, OrbitId};
pub use links::{Center, Link, LinkError, LinkKind, LinkSession};
pub use oracle::OracleError;
pub use untwist::{random_chain, untwist, Factorization, Parity, UntwistError};
