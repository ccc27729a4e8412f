//! Exact q-analogues of the Stirling, Bell, Whitney and Dowling families,
//! with two independent oracles for the q-boson algebra `a a† - q a† a = 1`:
//! symbolic normal ordering and a truncated Fock-space simulator.
//!
//! All arithmetic is exact. Coefficients are [`BigInt`]s, q-dependent values
//! are [`QPoly`]s and polynomials in `x` over those are [`XQPoly`]s.
//!
//! ```
//! use qspivey::identities::{verify_result1, Variant};
//!
//! let report = verify_result1(1, 2, 1, Variant::Corrected);
//! assert!(report.passed);
//! ```

pub mod boson;
pub mod error;
pub mod identities;
pub mod poly;
pub mod qcalc;
pub mod sequences;
pub mod sweep;

pub use boson::{FockVector, NormalForm, OpExpr};
pub use error::{Error, Result};
pub use identities::{Summary, Variant, VerificationReport};
pub use poly::{BigInt, QPoly, XQPoly};
pub use sequences::{Triangle, TriangleBig, TriangleQ};
