//! Force spectral density `S_F(ω)` and the derived sideband rates.
//!
//! `S_F(ω)` is the spectrum of the radiation-pressure force at mechanical
//! frequency ω: `S_F(ω_m)` sets the anti-Stokes (cooling) rate and
//! `S_F(−ω_m)` the Stokes (heating) rate.

use serde::Serialize;

use crate::coupled_mode::{susceptibilities, DriveDetuning};
use crate::{CoupledModeParams, OptomechParams, PhysicalSetup, Result};

/// Closed-form `S_F(ω)` for identified parameters (`φ ∈ {0, π}`).
///
/// With `u = ω − Δ_d`:
/// `S_F = 2g²{κ_R(γ² + u²) + (γ√κ₀ − s·u√κ_L)²}
///        / {[(κ+γ)u]² + [γ(κ₀+κ_R) − u(u + 2s√(κ₀κ_L))]²}`.
pub fn force_psd(cm: &CoupledModeParams, om: &OptomechParams, omega: f64) -> f64 {
    let s = cm.s.value();
    let (kl, kr, k0, g) = (cm.kappa_l, cm.kappa_r, cm.kappa_0, cm.gamma);
    let u = omega - om.delta_d;
    let g2 = 2.0 * om.g * om.g;
    let mixed = g * k0.sqrt() - s * u * kl.sqrt();
    let num = g2 * (kr * (g * g + u * u) + mixed * mixed);
    let a = (cm.kappa() + g) * u;
    let b = g * (k0 + kr) - u * (u + 2.0 * s * (k0 * kl).sqrt());
    num / (a * a + b * b)
}

/// `S_F(ω) = 2g²|χ̃_a(ω)|²[κ_R + |√κ_L − 𝒢₊χ_d(ω)√γ|²]`, valid for any
/// coupling phase.
pub fn force_psd_susceptibility(cm: &CoupledModeParams, om: &OptomechParams, omega: f64) -> f64 {
    let chi = susceptibilities(cm, DriveDetuning::from(om), omega);
    let (gp, _) = cm.coupling_g();
    let left = cm.kappa_l.sqrt() - gp * chi.chi_d * cm.gamma.sqrt();
    2.0 * om.g * om.g * chi.chi_a_dressed.norm_sqr() * (cm.kappa_r + left.norm_sqr())
}

/// `Γ_cool = ½[S_F(ω_m) − S_F(−ω_m)]`.
pub fn cooling_rate(cm: &CoupledModeParams, om: &OptomechParams) -> f64 {
    0.5 * (force_psd(cm, om, om.omega_m) - force_psd(cm, om, -om.omega_m))
}

/// Occupation predicted by the rate picture,
/// `[γ_m n̄ + ½S_F(−ω_m)] / [γ_m + Γ_cool]`.
///
/// Agrees with the Lyapunov steady state in the weak-coupling limit with
/// these unit prefactors.
pub fn rate_equation_occupation(cm: &CoupledModeParams, om: &OptomechParams) -> f64 {
    let heating = 0.5 * force_psd(cm, om, -om.omega_m);
    (om.gamma_m * om.nbar + heating) / (om.gamma_m + cooling_rate(cm, om))
}

/// Drive detuning `Δ_d = ω − sγ√(κ₀/κ_L)` at which `S_F(ω)` vanishes for a
/// one-sided cavity (and is minimal otherwise).
pub fn suppressed_sideband_detuning(cm: &CoupledModeParams, omega: f64) -> f64 {
    omega - cm.s.value() * cm.gamma * (cm.kappa_0 / cm.kappa_l).sqrt()
}

/// Drive detuning that suppresses Stokes scattering, `−ω_m − sγ√(κ₀/κ_L)`.
pub fn heating_minimizing_detuning(cm: &CoupledModeParams, omega_m: f64) -> f64 {
    suppressed_sideband_detuning(cm, -omega_m)
}

/// Leading-order heating rate `S_F(−ω_m) ≈ 2g²κ_Rζ₀²/Γ²` at the
/// heating-minimising detuning, for `Γ ≫ γ, ω_m`.
pub fn sideband_heating_closed_form(setup: &PhysicalSetup, g: f64) -> f64 {
    let kr = setup.zeta_r.map_or(0.0, |z| setup.fsr / (2.0 * z * z));
    2.0 * g * g * kr * setup.zeta0 * setup.zeta0 / (setup.fsr * setup.fsr)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatingPoint {
    /// `Δ_d = ω_m`, maximising `S_F(ω_m)`.
    pub delta_d_cool: f64,
    /// `Δ_d = −ω_m − sγ/(2ζ₀)`, suppressing `S_F(−ω_m)`.
    pub delta_d_heat_min: f64,
    /// `γ_opt = 4ζ₀ω_m`, for which the two detunings coincide (s = −1).
    pub gamma_opt: f64,
}

pub fn optimal_operating_point(setup: &PhysicalSetup, omega_m: f64) -> Result<OperatingPoint> {
    setup.validate()?;
    if !(omega_m > 0.0) || !omega_m.is_finite() {
        return Err(crate::Error::param("omega_m", format!("must be positive, got {omega_m}")));
    }
    Ok(OperatingPoint {
        delta_d_cool: omega_m,
        delta_d_heat_min: -omega_m - setup.s.value() * setup.gamma / (2.0 * setup.zeta0),
        gamma_opt: 4.0 * setup.zeta0 * omega_m,
    })
}
