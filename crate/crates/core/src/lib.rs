//! Classification and fan-subsolution feasibility for the planar Riemann
//! problem of 2-D isentropic Euler with `p = rho^gamma`.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod data;
pub mod eos;
pub mod error;
pub mod format;
pub mod region;
pub mod riemann;
pub mod scalar;
pub mod subsolution;
pub mod threshold;
pub mod witness;

pub use data::{DataFunctionals, DensityOrder, RiemannData};
pub use eos::Eos;
pub use error::{Error, Result};
pub use region::{region_map_sweep, Axis, NonUniqueness, RegionCell, RegionMap, RegionSpec};
pub use riemann::{
    classify, classify_with, rankine_hugoniot, Family, WaveFan, WaveKind, WaveSpeed,
};
pub use scalar::{Scalar, Sign, Tolerances};
pub use subsolution::{
    eps2_window, kinematics, reconstruct, verify_subsolution, FanSubsolution, FeasibilityRecord,
    Kinematics, ResidualReport,
};
pub use threshold::{
    feasible_for_gap, scan_feasible, threshold_table, threshold_v, GapProbe, ScanConfig,
    ThresholdResult,
};
pub use witness::WitnessDocument;

pub type Eos64 = Eos<f64>;
pub type Eos32 = Eos<f32>;
pub type RiemannData64 = RiemannData<f64>;
pub type RiemannData32 = RiemannData<f32>;
pub type FanSubsolution64 = subsolution::FanSubsolution<f64>;
