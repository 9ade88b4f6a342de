//! f-divergences on finite distributions, best-possible Pinsker-type
//! coefficients, numeric certification of the sufficient conditions, exact
//! rational polynomial certificates, and binary-space tightness tools.
//!
//! ```
//! use pinsker::{divergence, Distribution, Generator};
//!
//! let p = Distribution::new(vec![0.5, 0.5]).unwrap();
//! let q = Distribution::new(vec![0.75, 0.25]).unwrap();
//! let d = divergence::f_divergence(&Generator::kl(), &p, &q).unwrap();
//! assert!((d.value() - 0.5 * (4.0f64 / 3.0).ln()).abs() < 1e-12);
//! ```

pub mod certify;
pub mod dist;
pub mod divergence;
pub mod envelope;
pub mod error;
pub mod exact;
pub mod generators;
pub mod grid;
pub mod jet;
pub mod polycert;
pub mod sampling;

pub use dist::{Distribution, ExtReal};
pub use error::{Error, Result};
pub use exact::Number;
pub use generators::{Generator, PinskerCoefficients};
pub use grid::Grid;
