//! Quantum coupled-mode description: cavity mode `a` coupled to the mirror
//! mode `d`, both leaking into the left continuum, `a` also into the right.
//!
//! * [`kernels`]: memory kernels obtained by eliminating `d`.
//! * [`spectra`]: frequency-domain susceptibilities, transmission and
//!   linewidth extraction.
//! * [`dynamics`]: time-domain mean-field evolution, both as coupled ODEs
//!   and as the integro-differential equation with memory.

pub mod dynamics;
pub mod kernels;
pub mod spectra;

pub use dynamics::{
    fastest_rate,
    simulate_mean_response, simulate_memory_form, steady_state_transmission, MeanState, TimeGrid,
};
pub use kernels::{
    kernel_kappa_eff, kernel_kappa_in, kernel_kappa_in_prime, kernel_kappa_out, KernelCoefficients,
};
pub use spectra::{
    cavity_transmission_cm, compare_models, effective_linewidth, effective_linewidth_sampled,
    susceptibilities, transmission_spectrum_cm, DriveDetuning, transmission_spectrum_cm_with, ModelComparison,
    Susceptibilities,
};
