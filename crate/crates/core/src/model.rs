//! Domain types and the bridge from physical mirror data to coupled-mode
//! parameters.
//!
//! Conventions: every frequency and rate is an angular frequency in a unit
//! picked by the caller (e.g. `ω_m = 1` for cooling studies). Spectra are
//! indexed by the detuning `Δ = ω_d − ω` unless stated otherwise.

use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Orientation `s = ±1` of the Fano resonance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum FanoSign {
    Plus,
    Minus,
}

impl FanoSign {
    pub fn value(self) -> f64 {
        match self {
            FanoSign::Plus => 1.0,
            FanoSign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            FanoSign::Plus => FanoSign::Minus,
            FanoSign::Minus => FanoSign::Plus,
        }
    }
}

impl TryFrom<i8> for FanoSign {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(FanoSign::Plus),
            -1 => Ok(FanoSign::Minus),
            other => Err(format!("Fano orientation must be +1 or -1, got {other}")),
        }
    }
}

impl From<FanoSign> for i8 {
    fn from(s: FanoSign) -> i8 {
        match s {
            FanoSign::Plus => 1,
            FanoSign::Minus => -1,
        }
    }
}

impl fmt::Display for FanoSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FanoSign::Plus => "+1",
            FanoSign::Minus => "-1",
        })
    }
}

/// Experimentally meaningful description of the cavity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalSetup {
    /// Resonant polarizability ζ₀ of the left (Fano) mirror.
    pub zeta0: f64,
    /// Polarizability of the right mirror; `None` for a perfectly reflecting
    /// right mirror (one-sided cavity, κ_R = 0).
    pub zeta_r: Option<f64>,
    /// Free spectral range Γ = c/2L.
    pub fsr: f64,
    /// Half-width γ of the mirror resonance.
    pub gamma: f64,
    /// Frequency ω_d of the mirror resonance.
    pub omega_d: f64,
    /// Orientation of the Fano profile.
    pub s: FanoSign,
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be positive and finite, got {v}")))
    }
}

fn non_negative(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be non-negative and finite, got {v}")))
    }
}

fn finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be finite, got {v}")))
    }
}

impl PhysicalSetup {
    pub fn validate(&self) -> Result<()> {
        positive("zeta0", self.zeta0)?;
        if let Some(zr) = self.zeta_r {
            positive("zeta_r", zr)?;
        }
        positive("fsr", self.fsr)?;
        positive("gamma", self.gamma)?;
        finite("omega_d", self.omega_d)
    }

    pub fn is_one_sided(&self) -> bool {
        self.zeta_r.is_none()
    }

    /// Detuning of the transmission zero, `Δ = −sγ/(2ζ₀)`, where the Fano
    /// polarizability diverges.
    pub fn transmission_zero(&self) -> f64 {
        -self.s.value() * self.gamma / (2.0 * self.zeta0)
    }

    /// Narrow-mirror cavity half-width γ/(2ζ₀²).
    pub fn fano_hwhm(&self) -> f64 {
        self.gamma / (2.0 * self.zeta0 * self.zeta0)
    }

    /// Total loss rate κ₀ + κ_R of the equivalent cavity with frequency
    /// independent mirrors.
    pub fn markovian_hwhm(&self) -> f64 {
        let k0 = self.fsr / (2.0 * self.zeta0 * self.zeta0);
        let kr = self.zeta_r.map_or(0.0, |z| self.fsr / (2.0 * z * z));
        k0 + kr
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_sign(mut self, s: FanoSign) -> Self {
        self.s = s;
        self
    }
}

/// Parameters of the coupled-mode (cavity mode `a` + mirror mode `d`) model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoupledModeParams {
    pub omega_a: f64,
    pub omega_d: f64,
    /// Coupling magnitude λ (signed).
    pub lambda: f64,
    /// Coupling phase φ.
    pub phi: f64,
    pub kappa_l: f64,
    pub kappa_r: f64,
    /// Effective loss κ₀ through the left mirror far from its resonance.
    pub kappa_0: f64,
    pub gamma: f64,
    /// Fano orientation the parameters were identified with.
    pub s: FanoSign,
}

impl CoupledModeParams {
    pub fn validate(&self) -> Result<()> {
        finite("omega_a", self.omega_a)?;
        finite("omega_d", self.omega_d)?;
        finite("lambda", self.lambda)?;
        finite("phi", self.phi)?;
        non_negative("kappa_l", self.kappa_l)?;
        non_negative("kappa_r", self.kappa_r)?;
        non_negative("kappa_0", self.kappa_0)?;
        non_negative("gamma", self.gamma)
    }

    /// Total cavity decay κ = κ_L + κ_R.
    pub fn kappa(&self) -> f64 {
        self.kappa_l + self.kappa_r
    }

    /// Cavity–mirror detuning δ = ω_a − ω_d.
    pub fn delta(&self) -> f64 {
        self.omega_a - self.omega_d
    }

    /// `(𝒢₊, 𝒢₋)` with `𝒢_± = iλe^{±iφ} + √(κ_Lγ)`.
    pub fn coupling_g(&self) -> (C64, C64) {
        let direct = (self.kappa_l * self.gamma).sqrt();
        let i_lambda = C64::new(0.0, self.lambda);
        (
            i_lambda * C64::from_polar(1.0, self.phi) + direct,
            i_lambda * C64::from_polar(1.0, -self.phi) + direct,
        )
    }
}

/// Maps physical mirror data onto coupled-mode parameters.
///
/// `κ_L = 2Γ`, `κ₀ = Γ/2ζ₀²`, `κ_R = Γ/2ζ_R²` (zero when one-sided),
/// `λ = −s√(κ₀γ)`, `ω_a = ω_d − 2s√(κ₀κ_L)` and `φ = 0`, so that
/// `𝒢₊ = 𝒢₋ = √(κ_Lγ) − is√(κ₀γ)`.
pub fn identify_parameters(setup: &PhysicalSetup) -> Result<CoupledModeParams> {
    setup.validate()?;
    let s = setup.s.value();
    let kappa_l = 2.0 * setup.fsr;
    let kappa_0 = setup.fsr / (2.0 * setup.zeta0 * setup.zeta0);
    let kappa_r = setup.zeta_r.map_or(0.0, |z| setup.fsr / (2.0 * z * z));
    Ok(CoupledModeParams {
        omega_a: setup.omega_d - 2.0 * s * (kappa_0 * kappa_l).sqrt(),
        omega_d: setup.omega_d,
        lambda: -s * (kappa_0 * setup.gamma).sqrt(),
        phi: 0.0,
        kappa_l,
        kappa_r,
        kappa_0,
        gamma: setup.gamma,
        s: setup.s,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKind {
    Transmission,
    Reflection,
    Susceptibility,
    /// Real-valued power spectral density stored in the real part.
    ForcePsd,
}

/// A complex response sampled on a strictly increasing frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSpectrum {
    grid: Vec<f64>,
    values: Vec<C64>,
    kind: SpectrumKind,
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
    if let Some(bad) = grid.iter().position(|x| !x.is_finite()) {
        return Err(Error::InvalidGrid(format!("non-finite point at index {bad}")));
    }
    if let Some(i) = grid.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid(format!(
            "grid must be strictly increasing (index {} → {})",
            i,
            i + 1
        )));
    }
    Ok(())
}

impl ComplexSpectrum {
    pub fn new(grid: Vec<f64>, values: Vec<C64>, kind: SpectrumKind) -> Result<Self> {
        check_grid(&grid)?;
        if grid.len() != values.len() {
            return Err(Error::InvalidGrid(format!(
                "{} grid points but {} values",
                grid.len(),
                values.len()
            )));
        }
        Ok(ComplexSpectrum { grid, values, kind })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// `|value|²` at every grid point.
    pub fn power(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, C64)> + '_ {
        self.grid.iter().copied().zip(self.values.iter().copied())
    }
}

/// Linearised optomechanical parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptomechParams {
    pub omega_m: f64,
    /// Mechanical damping γ_m.
    pub gamma_m: f64,
    /// Thermal bath occupation n̄.
    pub nbar: f64,
    /// Linearised coupling g.
    pub g: f64,
    /// Drive detuning from the cavity quasi-mode, Δ_a = ω_a − ω_L.
    pub delta_a: f64,
    /// Drive detuning from the mirror mode, Δ_d = ω_d − ω_L.
    pub delta_d: f64,
}

impl OptomechParams {
    /// Builds parameters for a drive at `Δ_d`, deriving `Δ_a` from the
    /// cavity–mirror detuning of `cm`.
    pub fn new(
        cm: &CoupledModeParams,
        omega_m: f64,
        gamma_m: f64,
        nbar: f64,
        g: f64,
        delta_d: f64,
    ) -> Result<Self> {
        let om = OptomechParams {
            omega_m,
            gamma_m,
            nbar,
            g,
            delta_a: delta_d + cm.delta(),
            delta_d,
        };
        om.validate(cm)?;
        Ok(om)
    }

    pub fn validate(&self, cm: &CoupledModeParams) -> Result<()> {
        positive("omega_m", self.omega_m)?;
        positive("gamma_m", self.gamma_m)?;
        non_negative("nbar", self.nbar)?;
        non_negative("g", self.g)?;
        finite("delta_a", self.delta_a)?;
        finite("delta_d", self.delta_d)?;
        let mismatch = (self.delta_a - self.delta_d) - cm.delta();
        let scale = self.delta_a.abs().max(self.delta_d.abs()).max(cm.delta().abs()).max(1.0);
        if mismatch.abs() > 1e-9 * scale {
            return Err(Error::param(
                "delta_a",
                format!(
                    "Δ_a − Δ_d = {} but ω_a − ω_d = {}",
                    self.delta_a - self.delta_d,
                    cm.delta()
                ),
            ));
        }
        Ok(())
    }

    pub fn with_g(mut self, g: f64) -> Self {
        self.g = g;
        self
    }

    pub fn with_nbar(mut self, nbar: f64) -> Self {
        self.nbar = nbar;
        self
    }
}

/// `n` evenly spaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let h = (b - a) / (n - 1) as f64;
            (0..n).map(|i| if i + 1 == n { b } else { a + i as f64 * h }).collect()
        }
    }
}

/// `n` logarithmically spaced points from `a` to `b` inclusive (`a, b > 0`).
pub fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let (la, lb) = (a.ln(), b.ln());
    linspace(la, lb, n)
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            if i == 0 {
                a
            } else if i + 1 == n {
                b
            } else {
                x.exp()
            }
        })
        .collect()
}
