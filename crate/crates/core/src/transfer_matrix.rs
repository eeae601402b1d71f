//! Classical 1-D scattering through two thin mirrors.
//!
//! A mirror of polarizability ζ has transfer matrix
//! `[[1+iζ, iζ], [−iζ, 1−iζ]]` (unit determinant), free propagation is
//! `diag(e^{iθ}, e^{−iθ})` and the cavity is `M = M_R·M_f·M_L`, with
//! transmission `1/m₂₂` and left-port reflection `−m₂₁/m₂₂`.
//!
//! The Fano polarizability diverges at `Δ = −sγ/2ζ₀`. To keep that point
//! exact, each mirror is carried in homogeneous form `ζ = num/den` and its
//! matrix is scaled by `den`; the scales are divided back out at the end, so
//! the pole gives exactly zero transmission instead of `∞·0`.

use std::ops::Mul;

use num_complex::Complex64 as C64;

use crate::model::check_grid;
use crate::{ComplexSpectrum, Execution, PhysicalSetup, Result, SpectrumKind};

const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mirror2x2 {
    pub m11: C64,
    pub m12: C64,
    pub m21: C64,
    pub m22: C64,
}

impl Mirror2x2 {
    pub fn identity() -> Self {
        Mirror2x2 {
            m11: C64::new(1.0, 0.0),
            m12: C64::new(0.0, 0.0),
            m21: C64::new(0.0, 0.0),
            m22: C64::new(1.0, 0.0),
        }
    }

    pub fn det(&self) -> C64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Transmission `1/m₂₂` of an unscaled (unit-determinant) matrix.
    pub fn transmission(&self) -> C64 {
        1.0 / self.m22
    }

    /// Reflection `−m₂₁/m₂₂` seen from the left port.
    pub fn reflection(&self) -> C64 {
        -self.m21 / self.m22
    }
}

impl Mul for Mirror2x2 {
    type Output = Mirror2x2;
    fn mul(self, o: Mirror2x2) -> Mirror2x2 {
        Mirror2x2 {
            m11: self.m11 * o.m11 + self.m12 * o.m21,
            m12: self.m11 * o.m12 + self.m12 * o.m22,
            m21: self.m21 * o.m11 + self.m22 * o.m21,
            m22: self.m21 * o.m12 + self.m22 * o.m22,
        }
    }
}

/// `ζ_L(Δ) = ζ₀(γ − 2sΔ/ζ₀)/(γ + 2sζ₀Δ)` as a `(numerator, denominator)`
/// pair.
pub fn polarizability_ratio(setup: &PhysicalSetup, delta: f64) -> (f64, f64) {
    let s = setup.s.value();
    let z0 = setup.zeta0;
    (
        z0 * setup.gamma - 2.0 * s * delta,
        setup.gamma + 2.0 * s * z0 * delta,
    )
}

/// Fano-mirror polarizability at detuning `delta`; ±∞ at the pole.
pub fn fano_polarizability(setup: &PhysicalSetup, delta: f64) -> f64 {
    let (num, den) = polarizability_ratio(setup, delta);
    num / den
}

/// Transfer matrix of a thin mirror with polarizability `zeta`.
///
/// For `zeta = ±∞` the returned matrix is the limit of `M(ζ)/|ζ|`, i.e. the
/// direction of a perfect mirror; its transmission is zero.
pub fn mirror_matrix(zeta: f64) -> Mirror2x2 {
    if zeta.is_infinite() {
        mirror_matrix_homogeneous(zeta.signum(), 0.0)
    } else {
        mirror_matrix_homogeneous(zeta, 1.0)
    }
}

/// `den · M(num/den)`.
pub fn mirror_matrix_homogeneous(num: f64, den: f64) -> Mirror2x2 {
    Mirror2x2 {
        m11: C64::new(den, num),
        m12: I * num,
        m21: -I * num,
        m22: C64::new(den, -num),
    }
}

pub fn propagation_matrix(theta: f64) -> Mirror2x2 {
    Mirror2x2 {
        m11: C64::from_polar(1.0, theta),
        m12: C64::new(0.0, 0.0),
        m21: C64::new(0.0, 0.0),
        m22: C64::from_polar(1.0, -theta),
    }
}

/// Single-pass phase `θ = ½[Δ/Γ + arctan(1/ζ_R) + arctan(1/ζ₀)]`, which puts
/// the cavity resonance at the mirror resonance.
pub fn round_trip_phase(setup: &PhysicalSetup, delta: f64) -> f64 {
    let right = setup.zeta_r.map_or(0.0, |z| (1.0 / z).atan());
    0.5 * (delta / setup.fsr + right + (1.0 / setup.zeta0).atan())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityResponse {
    pub transmission: C64,
    pub reflection: C64,
}

/// Response of two mirrors given in homogeneous form around a propagation
/// phase `theta`.
pub fn two_mirror_response(left: (f64, f64), right: (f64, f64), theta: f64) -> CavityResponse {
    let m = mirror_matrix_homogeneous(right.0, right.1)
        * propagation_matrix(theta)
        * mirror_matrix_homogeneous(left.0, left.1);
    CavityResponse {
        transmission: left.1 * right.1 / m.m22,
        reflection: m.reflection(),
    }
}

pub fn cavity_response(setup: &PhysicalSetup, delta: f64) -> CavityResponse {
    let right = setup.zeta_r.map_or((1.0, 0.0), |z| (z, 1.0));
    two_mirror_response(
        polarizability_ratio(setup, delta),
        right,
        round_trip_phase(setup, delta),
    )
}

/// Transmission amplitude `t̃(Δ)`; exactly zero at the polarizability pole.
pub fn cavity_transmission_tm(setup: &PhysicalSetup, delta: f64) -> C64 {
    cavity_response(setup, delta).transmission
}

/// Reflection amplitude from the left port.
pub fn cavity_reflection_tm(setup: &PhysicalSetup, delta: f64) -> C64 {
    cavity_response(setup, delta).reflection
}

/// `1/(1 − iζ)` for a lone mirror.
pub fn single_mirror_transmission(zeta: f64) -> C64 {
    1.0 / C64::new(1.0, -zeta)
}

/// `iζ/(1 − iζ)` for a lone mirror.
pub fn single_mirror_reflection(zeta: f64) -> C64 {
    if zeta.is_infinite() {
        return C64::new(-1.0, 0.0);
    }
    I * zeta / C64::new(1.0, -zeta)
}

pub fn transmission_spectrum_tm(setup: &PhysicalSetup, grid: &[f64]) -> Result<ComplexSpectrum> {
    transmission_spectrum_tm_with(setup, grid, Execution::default())
}

pub fn transmission_spectrum_tm_with(
    setup: &PhysicalSetup,
    grid: &[f64],
    exec: Execution,
) -> Result<ComplexSpectrum> {
    setup.validate()?;
    check_grid(grid)?;
    let values = exec.map(grid, |&d| cavity_transmission_tm(setup, d));
    ComplexSpectrum::new(grid.to_vec(), values, SpectrumKind::Transmission)
}

pub fn reflection_spectrum_tm(setup: &PhysicalSetup, grid: &[f64]) -> Result<ComplexSpectrum> {
    setup.validate()?;
    check_grid(grid)?;
    let values = Execution::default().map(grid, |&d| cavity_reflection_tm(setup, d));
    ComplexSpectrum::new(grid.to_vec(), values, SpectrumKind::Reflection)
}
