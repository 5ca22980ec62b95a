//! Spectral theory of one-dimensional Dirac operators with general point
//! interactions.
//!
//! The operator acts as `−iσ₁ d/dx + mσ₃` on each half-line and couples the
//! traces at the origin through `(2iσ₁ − A)ψ(0₊) = (2iσ₁ + A)ψ(0₋)` for an
//! arbitrary complex 2×2 matrix `A`. The crate provides:
//!
//! * [`spectral`]: branch-aware square roots, `k(z)`, `ζ(z)` and 2×2 algebra;
//! * [`point`]: classification of the point spectrum, eigenfunctions,
//!   resolvent kernels and structural checks of the interaction;
//! * [`approximation`]: regular non-local approximations `D₀ + A⊗|v_ε⟩⟨v_ε|`,
//!   their eigenvalues and Hilbert–Schmidt resolvent distances;
//! * [`nonrelativistic`]: speed-of-light scaling and the Schrödinger limit;
//! * [`oracle`]: independent discretisations used for cross-checks.

pub mod approximation;
pub mod contour;
pub mod error;
pub mod exec;
pub mod kernel;
pub mod nonrelativistic;
pub mod oracle;
pub mod point;
pub mod quadrature;
pub mod spectral;

pub use error::{Error, Result};
pub use exec::Execution;
pub use kernel::{FreeKernel, KernelEvaluator, Side};
pub use point::CouplingMatrix;
pub use spectral::{ModelParams, C64};
