//! One-parameter fan subsolutions: kinematics from the density `rho_1`, the
//! admissible `eps_2` window, reconstruction of the constant matrix state
//! and an independent verifier.

pub mod fan;
pub mod kinematics;
pub mod limits;
pub mod verify;
pub mod window;

pub use fan::{reconstruct, reconstruct_with, FanSubsolution};
pub use kinematics::{kinematics, kinematics_with, Kinematics};
pub use limits::{
    eps1_bar, epsilon1_sign_change, epsilon1_sign_change_with, limit_quantities, LimitQuantities,
};
pub use verify::{
    verify_subsolution, verify_subsolution_with, Condition, EqualityCheck, InequalityCheck,
    ResidualReport,
};
pub use window::{eps2_window, eps2_window_with, BoundSource, EnergyConstraint, FeasibilityRecord};
