//! Memory kernels `K(t) = w·δ(t) + A·e^{−ct}` (t ≥ 0) left behind when the
//! mirror mode is eliminated from the equations of motion.
//!
//! Convolutions run over `(−∞, t]`, so the δ sits on the endpoint and
//! contributes half its weight. With that convention the decay kernel
//! contributes κ_L to the total decay, as in the two-mode equations.

use num_complex::Complex64 as C64;

use crate::CoupledModeParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelCoefficients {
    /// Weight `w` of the δ(t) part.
    pub delta_weight: C64,
    /// Amplitude `A` of the exponential part.
    pub exp_amplitude: C64,
    /// Decay exponent `c`; `iω_d + γ` in the lab frame.
    pub exp_rate: C64,
}

impl KernelCoefficients {
    /// Exponential part `A·e^{−ct}` at `t ≥ 0`.
    pub fn exp_part(&self, t: f64) -> C64 {
        self.exp_amplitude * (-self.exp_rate * t).exp()
    }

    /// `∫₀^∞ K(t)e^{iωt}dt` with the half-weight δ.
    pub fn transform(&self, omega: f64) -> C64 {
        0.5 * self.delta_weight + self.exp_transform(omega)
    }

    /// Same transform with the δ counted at full weight.
    pub fn transform_full_delta(&self, omega: f64) -> C64 {
        self.delta_weight + self.exp_transform(omega)
    }

    /// `A/(c − iω)`, the transform of the exponential part alone.
    pub fn exp_transform(&self, omega: f64) -> C64 {
        self.exp_amplitude / (self.exp_rate - C64::new(0.0, omega))
    }

    /// Time integral of the kernel (half-weight δ).
    pub fn integrated_weight(&self) -> C64 {
        self.transform(0.0)
    }

    /// Time integral of the exponential part alone.
    pub fn integrated_exp_weight(&self) -> C64 {
        self.exp_transform(0.0)
    }

    /// Kernel seen in a frame rotating at `omega_l`: `c → c − iω_L`.
    pub fn in_frame(mut self, omega_l: f64) -> Self {
        self.exp_rate -= C64::new(0.0, omega_l);
        self
    }
}

fn rate(p: &CoupledModeParams) -> C64 {
    C64::new(p.gamma, p.omega_d)
}

/// `κ_eff(t) = 2κ_Lδ(t) − 𝒢₊𝒢₋e^{−(iω_d+γ)t}`.
pub fn kernel_kappa_eff(p: &CoupledModeParams) -> KernelCoefficients {
    let (gp, gm) = p.coupling_g();
    KernelCoefficients {
        delta_weight: C64::from(2.0 * p.kappa_l),
        exp_amplitude: -gp * gm,
        exp_rate: rate(p),
    }
}

/// `κ_in(t) = 2√(2κ_L)δ(t) − 𝒢₊√(2γ)e^{−(iω_d+γ)t}`.
pub fn kernel_kappa_in(p: &CoupledModeParams) -> KernelCoefficients {
    let (gp, _) = p.coupling_g();
    KernelCoefficients {
        delta_weight: C64::from(2.0 * (2.0 * p.kappa_l).sqrt()),
        exp_amplitude: -gp * (2.0 * p.gamma).sqrt(),
        exp_rate: rate(p),
    }
}

/// `κ_in′(t) = 2√(2κ_L)δ(t) − 𝒢₋√(2γ)e^{−(iω_d+γ)t}`.
pub fn kernel_kappa_in_prime(p: &CoupledModeParams) -> KernelCoefficients {
    let (_, gm) = p.coupling_g();
    KernelCoefficients {
        delta_weight: C64::from(2.0 * (2.0 * p.kappa_l).sqrt()),
        exp_amplitude: -gm * (2.0 * p.gamma).sqrt(),
        exp_rate: rate(p),
    }
}

/// `κ_out(t) = 2δ(t) − 2γe^{−(iω_d+γ)t}`.
pub fn kernel_kappa_out(p: &CoupledModeParams) -> KernelCoefficients {
    KernelCoefficients {
        delta_weight: C64::from(2.0),
        exp_amplitude: C64::from(-2.0 * p.gamma),
        exp_rate: rate(p),
    }
}
