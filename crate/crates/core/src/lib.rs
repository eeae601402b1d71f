//! Simulation of optical cavities bounded by strongly frequency-dependent
//! (Fano) mirrors.
//!
//! The crate provides two descriptions of the same cavity and the tools to
//! cross-check them:
//!
//! * [`transfer_matrix`]: the classical 1-D scattering picture, with a
//!   frequency-dependent polarizability for the left mirror.
//! * [`coupled_mode`]: the quantum coupled-mode picture, where the mirror
//!   resonance is an explicit mode `d` coupled to the cavity mode `a`, giving
//!   non-Markovian memory kernels once `d` is eliminated.
//!
//! [`model::identify_parameters`] maps physical mirror data onto the
//! coupled-mode parameters, and [`optomech`] builds sideband-cooling
//! predictions (force spectra, rates, Lyapunov steady states) on top.
//!
//! All frequencies are dimensionless angular frequencies in a unit chosen by
//! the caller. Detunings follow `Δ = ω_d − ω`.

pub mod coupled_mode;
pub mod error;
pub mod exec;
pub mod model;
pub mod numerics;
pub mod optomech;
pub mod transfer_matrix;

pub use error::{Error, Result};
pub use exec::Execution;
pub use model::{
    identify_parameters, ComplexSpectrum, CoupledModeParams, FanoSign, OptomechParams,
    PhysicalSetup, SpectrumKind,
};

pub use num_complex::Complex64 as C64;
