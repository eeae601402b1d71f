//! Frequency-domain response of the coupled-mode model.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::model::check_grid;
use crate::numerics::bisect;
use crate::transfer_matrix::cavity_transmission_tm;
use crate::{
    identify_parameters, ComplexSpectrum, CoupledModeParams, Error, Execution, OptomechParams,
    PhysicalSetup, Result, SpectrumKind,
};

/// Drive detunings `Δ_a = ω_a − ω_L`, `Δ_d = ω_d − ω_L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveDetuning {
    pub delta_a: f64,
    pub delta_d: f64,
}

impl DriveDetuning {
    /// Drive at `Δ_d` from the mirror mode.
    pub fn from_delta_d(cm: &CoupledModeParams, delta_d: f64) -> Self {
        DriveDetuning {
            delta_a: delta_d + cm.delta(),
            delta_d,
        }
    }
}

impl From<&OptomechParams> for DriveDetuning {
    fn from(om: &OptomechParams) -> Self {
        DriveDetuning {
            delta_a: om.delta_a,
            delta_d: om.delta_d,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Susceptibilities {
    pub chi_a: C64,
    pub chi_d: C64,
    /// Cavity susceptibility dressed by the mirror mode.
    pub chi_a_dressed: C64,
}

/// Bare and dressed susceptibilities at frequency `omega` in the drive frame:
/// `χ_a⁻¹ = κ − i(ω − Δ_a)`, `χ_d⁻¹ = γ − i(ω − Δ_d)`,
/// `χ̃_a⁻¹ = χ_a⁻¹ − 𝒢₊𝒢₋χ_d`.
pub fn susceptibilities(cm: &CoupledModeParams, det: DriveDetuning, omega: f64) -> Susceptibilities {
    let (gp, gm) = cm.coupling_g();
    let chi_a_inv = C64::new(cm.kappa(), -(omega - det.delta_a));
    let chi_d = 1.0 / C64::new(cm.gamma, -(omega - det.delta_d));
    Susceptibilities {
        chi_a: 1.0 / chi_a_inv,
        chi_d,
        chi_a_dressed: 1.0 / (chi_a_inv - gp * gm * chi_d),
    }
}

/// Transmission amplitude at detuning `Δ = ω_d − ω` for arbitrary φ.
///
/// Zero for a one-sided cavity.
pub fn cavity_transmission_cm(cm: &CoupledModeParams, delta: f64) -> C64 {
    if cm.kappa_r == 0.0 {
        return C64::new(0.0, 0.0);
    }
    let (kl, kr, g, l) = (cm.kappa_l, cm.kappa_r, cm.gamma, cm.lambda);
    let dd = delta + cm.delta();
    let num = C64::new(0.0, 2.0 * kr.sqrt())
        * (C64::from_polar(l * g.sqrt(), cm.phi) - delta * kl.sqrt());
    let den = C64::new(
        l * l + kr * g - delta * dd,
        g * dd + cm.kappa() * delta - 2.0 * l * (kl * g).sqrt() * cm.phi.cos(),
    );
    num / den
}

pub fn transmission_spectrum_cm(cm: &CoupledModeParams, grid: &[f64]) -> Result<ComplexSpectrum> {
    transmission_spectrum_cm_with(cm, grid, Execution::default())
}

pub fn transmission_spectrum_cm_with(
    cm: &CoupledModeParams,
    grid: &[f64],
    exec: Execution,
) -> Result<ComplexSpectrum> {
    cm.validate()?;
    check_grid(grid)?;
    let values = exec.map(grid, |&d| cavity_transmission_cm(cm, d));
    ComplexSpectrum::new(grid.to_vec(), values, SpectrumKind::Transmission)
}

fn peak_index(power: &[f64]) -> Result<usize> {
    let mut best: Option<usize> = None;
    for (i, &p) in power.iter().enumerate() {
        if !p.is_finite() {
            return Err(Error::Linewidth(format!("non-finite sample at index {i}")));
        }
        if best.map_or(true, |b| p > power[b]) {
            best = Some(i);
        }
    }
    match best {
        Some(i) if power[i] > 0.0 => Ok(i),
        _ => Err(Error::Linewidth("spectrum has no positive maximum".into())),
    }
}

/// Indices `(j, j+1)` around the first sample below `half` walking away
/// from `peak` in direction `dir`.
fn crossing(power: &[f64], peak: usize, half: f64, left: bool) -> Result<(usize, usize)> {
    let mut j = peak;
    loop {
        let next = if left {
            j.checked_sub(1)
        } else {
            Some(j + 1).filter(|&n| n < power.len())
        };
        let Some(n) = next else {
            let side = if left { "below" } else { "above" };
            return Err(Error::Linewidth(format!(
                "no half-maximum crossing {side} the peak; widen the grid"
            )));
        };
        if power[n] < half {
            return Ok(if left { (n, j) } else { (j, n) });
        }
        j = n;
    }
}

fn golden_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// FWHM of a single-peaked response.
///
/// The sampled spectrum brackets the peak and the two half-maximum
/// crossings; `response` (the power |t|² as a function of the grid
/// variable) is then used to refine the peak by golden-section search and
/// each crossing by bisection to `tol`.
pub fn effective_linewidth(
    spectrum: &ComplexSpectrum,
    response: impl Fn(f64) -> f64,
    tol: f64,
) -> Result<f64> {
    let grid = spectrum.grid();
    let power = spectrum.power();
    let i = peak_index(&power)?;
    let mut peak = power[i];
    if i > 0 && i + 1 < grid.len() {
        let (_, refined) = golden_max(&response, grid[i - 1], grid[i + 1], tol);
        peak = peak.max(refined);
    }
    let half = 0.5 * peak;
    let f = |x: f64| response(x) - half;
    let (l0, l1) = crossing(&power, i, half, true)?;
    let (r0, r1) = crossing(&power, i, half, false)?;
    let left = bisect(f, grid[l0], grid[l1], tol)?;
    let right = bisect(f, grid[r0], grid[r1], tol)?;
    Ok(right - left)
}

/// FWHM from the samples alone, with linear interpolation at the crossings.
pub fn effective_linewidth_sampled(spectrum: &ComplexSpectrum) -> Result<f64> {
    let grid = spectrum.grid();
    let power = spectrum.power();
    let i = peak_index(&power)?;
    let half = 0.5 * power[i];
    let interp = |(a, b): (usize, usize)| {
        let w = (half - power[a]) / (power[b] - power[a]);
        grid[a] + w * (grid[b] - grid[a])
    };
    let left = interp(crossing(&power, i, half, true)?);
    let right = interp(crossing(&power, i, half, false)?);
    Ok(right - left)
}

/// Side-by-side transmission of both descriptions of the same setup.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelComparison {
    pub grid: Vec<f64>,
    pub t2_coupled_mode: Vec<f64>,
    pub t2_transfer_matrix: Vec<f64>,
    pub max_abs_diff: f64,
    /// Detuning of the largest deviation.
    pub argmax_delta: f64,
    /// FWHM of each curve, `None` when the grid does not contain both
    /// half-maximum crossings.
    pub fwhm_coupled_mode: Option<f64>,
    pub fwhm_transfer_matrix: Option<f64>,
}

impl ModelComparison {
    pub fn abs_diff(&self) -> Vec<f64> {
        self.t2_coupled_mode
            .iter()
            .zip(&self.t2_transfer_matrix)
            .map(|(a, b)| (a - b).abs())
            .collect()
    }
}

/// Evaluates both models on `grid` and reports their deviation.
///
/// Large deviations (expected for γ ∼ Γ) are reported, not treated as
/// errors.
pub fn compare_models(setup: &PhysicalSetup, grid: &[f64], exec: Execution) -> Result<ModelComparison> {
    setup.validate()?;
    let cm = identify_parameters(setup)?;
    let t_cm = transmission_spectrum_cm_with(&cm, grid, exec)?;
    let t_tm = crate::transfer_matrix::transmission_spectrum_tm_with(setup, grid, exec)?;
    let (p_cm, p_tm) = (t_cm.power(), t_tm.power());
    let mut max_abs_diff = 0.0;
    let mut argmax_delta = grid.first().copied().unwrap_or(0.0);
    for ((&d, a), b) in grid.iter().zip(&p_cm).zip(&p_tm) {
        let diff = (a - b).abs();
        if diff > max_abs_diff {
            max_abs_diff = diff;
            argmax_delta = d;
        }
    }
    let tol = 1e-10 * setup.fsr;
    let fwhm_cm = effective_linewidth(&t_cm, |d| cavity_transmission_cm(&cm, d).norm_sqr(), tol).ok();
    let fwhm_tm =
        effective_linewidth(&t_tm, |d| cavity_transmission_tm(setup, d).norm_sqr(), tol).ok();
    Ok(ModelComparison {
        grid: grid.to_vec(),
        t2_coupled_mode: p_cm,
        t2_transfer_matrix: p_tm,
        max_abs_diff,
        argmax_delta,
        fwhm_coupled_mode: fwhm_cm,
        fwhm_transfer_matrix: fwhm_tm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupled_mode::kernels::kernel_kappa_eff;
    use crate::model::linspace;
    use crate::FanoSign;

    fn fig2(s: FanoSign, gamma: f64) -> PhysicalSetup {
        PhysicalSetup {
            zeta0: 10.0,
            zeta_r: Some(10.0),
            fsr: 1.0,
            gamma,
            omega_d: 0.0,
            s,
        }
    }

    #[test]
    fn uncoupled_susceptibilities() {
        let mut cm = identify_parameters(&fig2(FanoSign::Minus, 0.1)).unwrap();
        cm.lambda = 0.0;
        cm.kappa_l = 0.0;
        cm.kappa_r = 0.5;
        let det = DriveDetuning::from_delta_d(&cm, 0.3);
        let chi = susceptibilities(&cm, det, det.delta_a);
        assert_eq!(chi.chi_a, C64::from(2.0));
        assert_eq!(chi.chi_a_dressed, chi.chi_a);
    }

    #[test]
    fn dressed_susceptibility_matches_kernel_transform() {
        for s in [FanoSign::Plus, FanoSign::Minus] {
            let cm = identify_parameters(&fig2(s, 0.37)).unwrap();
            let det = DriveDetuning::from_delta_d(&cm, -0.21);
            let kernel = kernel_kappa_eff(&cm).in_frame(cm.omega_d - det.delta_d);
            for &w in &[-3.0, -0.2, 0.0, 0.05, 1.7] {
                let chi = susceptibilities(&cm, det, w);
                let from_kernel =
                    C64::new(cm.kappa_r, -(w - det.delta_a)) + kernel.transform(w);
                let diff = (1.0 / chi.chi_a_dressed - from_kernel).norm();
                assert!(diff <= 1e-10 * from_kernel.norm(), "ω={w}: {diff}");
            }
        }
    }

    #[test]
    fn zero_unity_and_one_sided() {
        for s in [FanoSign::Plus, FanoSign::Minus] {
            let setup = fig2(s, 0.01);
            let cm = identify_parameters(&setup).unwrap();
            let zero = setup.transmission_zero();
            assert!(cavity_transmission_cm(&cm, zero).norm_sqr() <= 1e-20);
            assert!((cavity_transmission_cm(&cm, 0.0).norm_sqr() - 1.0).abs() < 1e-6);
            let one_sided = identify_parameters(&PhysicalSetup { zeta_r: None, ..setup }).unwrap();
            assert_eq!(cavity_transmission_cm(&one_sided, 0.01), C64::from(0.0));
        }
    }

    #[test]
    fn lorentzian_linewidth_is_exact() {
        let lor = |x: f64| 1.0 / (1.0 + x * x);
        let grid = linspace(-5.0, 5.0, 101);
        let values = grid.iter().map(|&x| C64::from(lor(x).sqrt())).collect();
        let spectrum = ComplexSpectrum::new(grid, values, SpectrumKind::Transmission).unwrap();
        let fwhm = effective_linewidth(&spectrum, lor, 1e-13).unwrap();
        assert!((fwhm - 2.0).abs() < 1e-9, "{fwhm}");
        let sampled = effective_linewidth_sampled(&spectrum).unwrap();
        assert!((sampled - 2.0).abs() < 1e-2);
    }

    #[test]
    fn narrow_grid_is_rejected() {
        let lor = |x: f64| 1.0 / (1.0 + x * x);
        let grid = linspace(-0.5, 0.5, 11);
        let values = grid.iter().map(|&x| C64::from(lor(x).sqrt())).collect();
        let spectrum = ComplexSpectrum::new(grid, values, SpectrumKind::Transmission).unwrap();
        let err = effective_linewidth(&spectrum, lor, 1e-12).unwrap_err();
        assert!(matches!(err, Error::Linewidth(ref m) if m.contains("widen")));
        let flat = ComplexSpectrum::new(vec![0.0, 1.0], vec![C64::from(0.0); 2], SpectrumKind::Transmission)
            .unwrap();
        assert!(effective_linewidth_sampled(&flat).is_err());
    }

    #[test]
    fn fano_cavity_narrowing() {
        let setup = fig2(FanoSign::Minus, 0.1);
        let grid = linspace(-0.01, 0.01, 4001);
        let cmp = compare_models(&setup, &grid, Execution::Sequential).unwrap();
        let want = setup.gamma / (setup.zeta0 * setup.zeta0);
        for fwhm in [cmp.fwhm_coupled_mode, cmp.fwhm_transfer_matrix] {
            let f = fwhm.unwrap();
            assert!((f - want).abs() <= 0.1 * want, "{f}");
        }
        assert!(cmp.max_abs_diff <= 0.02, "{}", cmp.max_abs_diff);
        assert_eq!(cmp.abs_diff().len(), grid.len());
    }

    #[test]
    fn markovian_limit_width() {
        let setup = fig2(FanoSign::Minus, 1e3);
        let hw = setup.markovian_hwhm();
        let grid = linspace(-10.0 * hw, 10.0 * hw, 2001);
        let cmp = compare_models(&setup, &grid, Execution::Parallel).unwrap();
        let f = cmp.fwhm_coupled_mode.unwrap();
        assert!((f - 2.0 * hw).abs() < 0.02 * 2.0 * hw, "{f}");
    }
}
