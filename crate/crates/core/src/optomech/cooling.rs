//! Final occupation `n_f(g)` of the Fano cavity and of two Markovian
//! reference cavities.

use serde::Serialize;

use super::lyapunov::{build_drift, build_noise, is_stable, steady_covariance};
use crate::numerics::DenseMatrix;
use crate::{identify_parameters, Error, Execution, OptomechParams, PhysicalSetup, Result};

/// Single-mode cavity with frequency-independent mirrors, over the
/// quadratures `(X_a, Y_a, q, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarkovianCavity {
    /// Total half-width κ.
    pub kappa: f64,
    /// Drive detuning Δ.
    pub delta: f64,
}

impl MarkovianCavity {
    /// Detuning `√(κ² + ω_m²)`, which minimises `n_f` at weak coupling.
    pub fn optimally_detuned(kappa: f64, omega_m: f64) -> Self {
        MarkovianCavity {
            kappa,
            delta: kappa.hypot(omega_m),
        }
    }

    /// Cavity with the narrowed Fano width, κ = γ/(2ζ₀²).
    pub fn equal_linewidth(setup: &PhysicalSetup, omega_m: f64) -> Self {
        Self::optimally_detuned(setup.fano_hwhm(), omega_m)
    }

    /// The same mirrors without the Fano resonance, κ = κ₀ + κ_R.
    pub fn unresolved(setup: &PhysicalSetup, omega_m: f64) -> Self {
        Self::optimally_detuned(setup.markovian_hwhm(), omega_m)
    }

    pub fn drift(&self, om: &OptomechParams) -> DenseMatrix<f64> {
        let (k, d, c) = (self.kappa, self.delta, 2.0 * om.g);
        let rows = [
            [-k, d, 0.0, 0.0],
            [-d, -k, -c, 0.0],
            [0.0, 0.0, -om.gamma_m, om.omega_m],
            [-c, 0.0, -om.omega_m, -om.gamma_m],
        ];
        DenseMatrix::from_rows(&rows).expect("4×4 literal")
    }

    pub fn noise(&self, om: &OptomechParams) -> DenseMatrix<f64> {
        let m = 2.0 * om.gamma_m * (2.0 * om.nbar + 1.0);
        let diag = [2.0 * self.kappa, 2.0 * self.kappa, m, m];
        DenseMatrix::from_fn(4, 4, |i, j| if i == j { diag[i] } else { 0.0 })
    }
}

/// Everything about the optomechanical operating point except `g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoolingBase {
    pub omega_m: f64,
    pub gamma_m: f64,
    pub nbar: f64,
    /// Drive detuning Δ_d of the Fano cavity.
    pub delta_d: f64,
}

/// One row of a cooling sweep; `None` marks an unstable point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoolingPoint {
    pub g: f64,
    pub fano: Option<f64>,
    pub markovian: Option<f64>,
    pub unresolved: Option<f64>,
}

fn occupation(a: &DenseMatrix<f64>, n: &DenseMatrix<f64>) -> Result<Option<f64>> {
    if !is_stable(a)? {
        return Ok(None);
    }
    Ok(Some(steady_covariance(a, n)?.n_f))
}

pub fn cooling_curve(setup: &PhysicalSetup, base: &CoolingBase, g_values: &[f64]) -> Result<Vec<CoolingPoint>> {
    cooling_curve_with(setup, base, g_values, Execution::default())
}

/// `n_f` of the Fano cavity and both Markovian references for every `g`.
pub fn cooling_curve_with(
    setup: &PhysicalSetup,
    base: &CoolingBase,
    g_values: &[f64],
    exec: Execution,
) -> Result<Vec<CoolingPoint>> {
    let cm = identify_parameters(setup)?;
    let om0 = OptomechParams::new(&cm, base.omega_m, base.gamma_m, base.nbar, 0.0, base.delta_d)?;
    if let Some(&g) = g_values.iter().find(|g| !(g.is_finite() && **g >= 0.0)) {
        return Err(Error::param("g", format!("must be non-negative and finite, got {g}")));
    }
    let equal = MarkovianCavity::equal_linewidth(setup, base.omega_m);
    let unresolved = MarkovianCavity::unresolved(setup, base.omega_m);
    exec.try_map(g_values, |&g| {
        let om = om0.with_g(g);
        let fano = occupation(&build_drift(&cm, &om).0, &build_noise(&cm, &om).0)?;
        let markovian = occupation(&equal.drift(&om), &equal.noise(&om))?;
        let unres = occupation(&unresolved.drift(&om), &unresolved.noise(&om))?;
        Ok(CoolingPoint {
            g,
            fano,
            markovian,
            unresolved: unres,
        })
    })
}
