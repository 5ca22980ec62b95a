//! Speed-of-light scaling of the Dirac point interaction and its Schrödinger
//! limit.

mod limit;
mod scaling;
mod schrodinger;

pub use limit::{nonrel_limit_distance, LimitDistance, LimitOptions};
pub use scaling::{
    relativistic_kernel_c, relativistic_kernel_shifted, scale_coupling, RelativisticKernel,
    ScaledCoupling,
};
pub use schrodinger::{
    boundary_coupling, h_transmission_residual, krein_identity_check, mu_of,
    resolvent_condition, schrodinger_eigenvalues, schrodinger_resolvent_kernel, SchrodingerKernel,
    Traces, K_A_matrix,
};
