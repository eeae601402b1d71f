//! Linearised optomechanical sideband cooling with a Fano-mirror cavity.
//!
//! * [`force`]: radiation-pressure force spectrum, cooling rate and the
//!   operating points that maximise cooling or suppress heating.
//! * [`lyapunov`]: drift/noise matrices and the steady-state covariance.
//! * [`cooling`]: Markovian reference cavities and `n_f(g)` sweeps.

pub mod cooling;
pub mod force;
pub mod lyapunov;

pub use cooling::{cooling_curve, cooling_curve_with, CoolingBase, CoolingPoint, MarkovianCavity};
pub use force::{
    cooling_rate, force_psd, force_psd_susceptibility, heating_minimizing_detuning,
    optimal_operating_point, rate_equation_occupation, sideband_heating_closed_form,
    suppressed_sideband_detuning, OperatingPoint,
};
pub use lyapunov::{
    build_drift, build_noise, is_stable, stability_margin, steady_covariance, CovarianceState,
    DriftMatrix, NoiseMatrix,
};
