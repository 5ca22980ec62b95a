//! Regular non-local approximations `D₀ + A⊗|v_ε⟩⟨v_ε|` of a point
//! interaction, with `v_ε(x) = v(x/ε)/ε`.

mod distance;
mod form_factor;
mod profile;
mod resolvent;
mod spectrum;

pub use distance::{hs_distance, HsDistance, HsOptions, DEFAULT_GRID, PANEL_ORDER};
pub use form_factor::{alpha1, alpha1_derivative, alpha1_with_derivative, beta_epsilon_check};
pub use profile::{Profile, ProfileKind, SampledProfile};
pub use resolvent::{
    approx_matrix, approx_resolvent_kernel, eta_epsilon, eta_with_derivative, ApproxKernel,
};
pub use spectrum::{
    approx_eigenvalues, approx_eigenvalues_with, form_factor_radius, non_expansion_threshold,
    spectral_enclosure, ApproxEigenvalue,
};
