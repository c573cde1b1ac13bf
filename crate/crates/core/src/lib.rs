//! Harmonic analysis on bounded Vilenkin groups at a fixed digit resolution.
//!
//! Functions are step functions constant on level-`N` cosets, so Fourier
//! coefficients, `L^p` norms and dyadic moduli of continuity are all computed
//! exactly up to floating-point roundoff.
//!
//! - [`group`]: mixed-radix digits, group operation, cosets.
//! - [`transform`]: characters, Dirichlet kernels, fast and direct transforms.
//! - [`cesaro`]: Cesàro numbers and `(C, -alpha, -beta)` means.
//! - [`analysis`]: norms, translations, moduli of continuity.
//! - [`experiments`]: approximation-bound sweeps and the divergence example.

pub mod analysis;
pub mod cesaro;
pub mod error;
pub mod experiments;
pub mod group;
pub mod io;
pub mod transform;

pub use error::{Error, Result};
pub use group::{GroupPoint, VilenkinBase};
pub use num_complex::Complex64;
