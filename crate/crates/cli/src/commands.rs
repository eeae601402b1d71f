//! One function per CLI verb, each producing a [`Report`].

use fanocav::coupled_mode::{
    compare_models, kernel_kappa_eff, kernel_kappa_in,
    kernel_kappa_in_prime, kernel_kappa_out, KernelCoefficients,
};
use fanocav::optomech::{
    cooling_curve_with, cooling_rate, force_psd, force_psd_susceptibility,
    heating_minimizing_detuning, optimal_operating_point, rate_equation_occupation,
    sideband_heating_closed_form, CoolingBase, MarkovianCavity,
};
use fanocav::transfer_matrix::cavity_reflection_tm;
use fanocav::{identify_parameters, Execution, PhysicalSetup, C64};

use crate::config::{RunConfig, Scale, Sweep, SweepVariable};
use crate::report::{Cell, Report};
use crate::CliError;

/// Products every command can emit.
pub const PRODUCTS: &[&str] = &["table", "summary"];

/// Width used to size default detuning grids: the narrower of the Fano and
/// Markovian half-widths.
fn natural_width(setup: &PhysicalSetup) -> f64 {
    setup.fano_hwhm().min(setup.markovian_hwhm())
}

/// Ascending detuning grid plus the matching absolute frequencies.
fn detuning_axis(cfg: &RunConfig, setup: &PhysicalSetup, points: usize) -> Result<Vec<f64>, CliError> {
    let w = natural_width(setup);
    let (var, values) = cfg.sweep_values(&[SweepVariable::Delta, SweepVariable::Omega], || Sweep {
        variable: SweepVariable::Delta,
        min: -30.0 * w,
        max: 30.0 * w,
        points,
        scale: Scale::Linear,
        include_zero: false,
    })?;
    Ok(match var {
        SweepVariable::Omega => values.iter().rev().map(|w| setup.omega_d - w).collect(),
        _ => values,
    })
}

pub fn transmission(cfg: &RunConfig, exec: Execution) -> Result<Report, CliError> {
    let setup = cfg.setup;
    let grid = detuning_axis(cfg, &setup, 2001)?;
    let cmp = compare_models(&setup, &grid, exec)?;
    let refl: Vec<f64> = exec.map(&grid, |&d| cavity_reflection_tm(&setup, d).norm_sqr());

    let mut r = Report::new("transmission").columns(&[
        "delta",
        "omega",
        "t2_coupled_mode",
        "t2_transfer_matrix",
        "abs_diff",
    ]);
    let diff = cmp.abs_diff();
    for i in 0..grid.len() {
        r.push_row(vec![
            grid[i].into(),
            (setup.omega_d - grid[i]).into(),
            cmp.t2_coupled_mode[i].into(),
            cmp.t2_transfer_matrix[i].into(),
            diff[i].into(),
        ]);
    }
    r.note("max_abs_diff", cmp.max_abs_diff);
    r.note("argmax_delta", cmp.argmax_delta);
    r.note("fwhm_coupled_mode", Cell::opt(cmp.fwhm_coupled_mode, "none"));
    r.note("fwhm_transfer_matrix", Cell::opt(cmp.fwhm_transfer_matrix, "none"));
    r.note("fwhm_narrow_mirror", 2.0 * setup.fano_hwhm());
    r.note("fwhm_markovian", 2.0 * setup.markovian_hwhm());
    r.note("transmission_zero_delta", setup.transmission_zero());
    r.note("gamma_over_fsr", setup.gamma / setup.fsr);

    let finite = cmp.t2_coupled_mode.iter().chain(&cmp.t2_transfer_matrix).all(|x| x.is_finite());
    r.gate("finite", finite, "all transmission values finite");
    let peak = cmp.t2_coupled_mode.iter().copied().fold(0.0, f64::max);
    r.gate("passivity", peak <= 1.0 + 1e-9, format!("max |t_cm|^2 = {peak:e}"));
    let unit = cmp
        .t2_transfer_matrix
        .iter()
        .zip(&refl)
        .map(|(t, r)| (t + r - 1.0).abs())
        .fold(0.0, f64::max);
    r.gate("unitarity", unit <= 1e-12, format!("max ||t|^2+|r|^2-1| = {unit:e}"));
    Ok(r)
}

fn regime(ratio: f64) -> &'static str {
    if ratio <= 0.1 {
        "narrow_mirror"
    } else if ratio >= 10.0 {
        "wide_mirror"
    } else {
        "intermediate"
    }
}

pub fn compare(cfg: &RunConfig, exec: Execution) -> Result<Report, CliError> {
    let gammas = cfg.gamma_values.clone().unwrap_or_else(|| vec![cfg.setup.gamma]);
    let mut r = Report::new("compare").columns(&[
        "gamma",
        "gamma_over_fsr",
        "regime",
        "max_abs_diff",
        "argmax_delta",
        "fwhm_coupled_mode",
        "fwhm_transfer_matrix",
        "within_0_02",
    ]);
    let mut worst_outside: f64 = 0.0;
    let mut worst_inside: f64 = 0.0;
    for &gamma in &gammas {
        let setup = cfg.setup.with_gamma(gamma);
        let grid = detuning_axis(cfg, &setup, 20001)?;
        let cmp = compare_models(&setup, &grid, exec)?;
        let ratio = gamma / setup.fsr;
        let reg = regime(ratio);
        if reg == "intermediate" {
            worst_inside = worst_inside.max(cmp.max_abs_diff);
        } else {
            worst_outside = worst_outside.max(cmp.max_abs_diff);
        }
        r.push_row(vec![
            gamma.into(),
            ratio.into(),
            reg.into(),
            cmp.max_abs_diff.into(),
            cmp.argmax_delta.into(),
            Cell::opt(cmp.fwhm_coupled_mode, "none"),
            Cell::opt(cmp.fwhm_transfer_matrix, "none"),
            (cmp.max_abs_diff <= 0.02).into(),
        ]);
        let peak = cmp.t2_coupled_mode.iter().copied().fold(0.0, f64::max);
        if !(peak <= 1.0 + 1e-9) {
            r.gate("passivity", false, format!("gamma = {gamma:e}: max |t_cm|^2 = {peak:e}"));
        }
    }
    r.note("max_abs_diff_outside_intermediate", worst_outside);
    r.note("max_abs_diff_intermediate", worst_inside);
    if r.gates.is_empty() {
        r.gate("passivity", true, "|t_cm|^2 <= 1 everywhere");
    }
    Ok(r)
}

pub fn sf_spectrum(cfg: &RunConfig, exec: Execution) -> Result<Report, CliError> {
    let cm = cfg.coupled_mode()?;
    let omc = cfg.optomech()?;
    let om = omc.params(&cm)?;
    let wm = om.omega_m;
    let (_, omegas) = cfg.sweep_values(&[SweepVariable::Omega], || Sweep {
        variable: SweepVariable::Omega,
        min: -3.0 * wm,
        max: 3.0 * wm,
        points: 1201,
        scale: Scale::Linear,
        include_zero: false,
    })?;
    let values: Vec<(f64, f64)> = exec.map(&omegas, |&w| {
        (force_psd(&cm, &om, w), force_psd_susceptibility(&cm, &om, w))
    });
    let mut r = Report::new("sf-spectrum").columns(&["omega", "s_f", "s_f_susceptibility"]);
    for (w, (a, b)) in omegas.iter().zip(&values) {
        r.push_row(vec![(*w).into(), (*a).into(), (*b).into()]);
    }
    let plus = force_psd(&cm, &om, wm);
    let minus = force_psd(&cm, &om, -wm);
    let op = optimal_operating_point(&cfg.setup, wm)?;
    let g2 = 2.0 * om.g * om.g;
    let ratio_bound = cm.kappa_r * cfg.setup.zeta0.powi(2) * (cm.kappa_0 + cm.kappa_r) / cfg.setup.fsr.powi(2);
    r.note("delta_d", om.delta_d);
    r.note("s_f_at_plus_omega_m", plus);
    r.note("s_f_at_minus_omega_m", minus);
    r.note("cooling_rate", cooling_rate(&cm, &om));
    r.note("analytic_s_f_plus_at_delta_d_omega_m", g2 / (cm.kappa_0 + cm.kappa_r));
    r.note("analytic_s_f_minus_at_heating_minimum", sideband_heating_closed_form(&cfg.setup, om.g));
    r.note("sideband_ratio", if plus > 0.0 { minus / plus } else { 0.0 });
    r.note("sideband_ratio_analytic", ratio_bound);
    r.note("delta_d_max_cooling", op.delta_d_cool);
    r.note("delta_d_min_heating", op.delta_d_heat_min);
    r.note("gamma_opt", op.gamma_opt);
    r.note("n_f_rate_equation", rate_equation_occupation(&cm, &om));

    let neg = values.iter().map(|v| v.0).fold(0.0, f64::min);
    r.gate("non_negative", neg >= 0.0, format!("min S_F = {neg:e}"));
    let floor = 1e-12 * g2 / (cm.kappa_0 + cm.kappa_r);
    let worst = values
        .iter()
        .map(|(a, b)| (a - b).abs() - 1e-10 * a.abs() - floor)
        .fold(f64::NEG_INFINITY, f64::max);
    r.gate(
        "forms_agree",
        values.is_empty() || worst <= 0.0,
        "closed form and susceptibility form agree to 1e-10 relative",
    );
    Ok(r)
}

fn simpson(f: impl Fn(f64) -> C64, a: f64, b: f64, n: usize) -> C64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        acc += f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

pub fn kernels(cfg: &RunConfig, _exec: Execution) -> Result<Report, CliError> {
    let cm = cfg.coupled_mode()?;
    let named: [(&str, KernelCoefficients); 4] = [
        ("kappa_eff", kernel_kappa_eff(&cm)),
        ("kappa_in", kernel_kappa_in(&cm)),
        ("kappa_in_prime", kernel_kappa_in_prime(&cm)),
        ("kappa_out", kernel_kappa_out(&cm)),
    ];
    let (_, times) = cfg.sweep_values(&[SweepVariable::Time], || Sweep {
        variable: SweepVariable::Time,
        min: 0.0,
        max: 10.0 / cm.gamma,
        points: 201,
        scale: Scale::Linear,
        include_zero: false,
    })?;
    if times.iter().any(|t| *t < 0.0) {
        return Err(CliError::Config("kernel times must be non-negative".into()));
    }
    let mut cols = vec!["t".to_string()];
    for (n, _) in &named {
        cols.push(format!("{n}_re"));
        cols.push(format!("{n}_im"));
    }
    let mut r = Report::new("kernels");
    r.columns = cols;
    for &t in &times {
        let mut row = vec![Cell::Num(t)];
        for (_, k) in &named {
            let v = k.exp_part(t);
            row.push(v.re.into());
            row.push(v.im.into());
        }
        r.push_row(row);
    }
    for (n, k) in &named {
        r.note(format!("{n}.delta_weight"), k.delta_weight.re);
        r.note(format!("{n}.exp_amplitude_re"), k.exp_amplitude.re);
        r.note(format!("{n}.exp_amplitude_im"), k.exp_amplitude.im);
        r.note(format!("{n}.exp_rate_re"), k.exp_rate.re);
        r.note(format!("{n}.exp_rate_im"), k.exp_rate.im);
        let w = k.integrated_weight();
        r.note(format!("{n}.integrated_weight_re"), w.re);
        r.note(format!("{n}.integrated_weight_im"), w.im);
    }
    let s = cm.s.value();
    r.note("markovian_decay_kappa_0", cm.kappa_0);
    r.note("markovian_shift", 2.0 * s * (cm.kappa_0 * cm.kappa_l).sqrt());

    // wide-mirror limit: the exponential part of κ_out integrates to −2
    let wide = identify_parameters(&cfg.setup.with_gamma(1e5 * cfg.setup.fsr))?;
    let k = kernel_kappa_out(&wide);
    let horizon = 60.0 / wide.gamma;
    let numeric = simpson(|t| k.exp_part(t), 0.0, horizon, 20_000);
    r.note("wide_mirror_kappa_out_exp_weight_re", numeric.re);
    r.note("wide_mirror_kappa_out_exp_weight_im", numeric.im);
    let dev = (numeric + 2.0).norm() / 2.0;
    r.gate(
        "wide_mirror_limit",
        dev <= 0.01,
        format!("integrated exponential weight of kappa_out deviates from -2 by {dev:e} (relative)"),
    );
    Ok(r)
}

pub fn cooling(cfg: &RunConfig, exec: Execution) -> Result<Report, CliError> {
    let cm = cfg.coupled_mode()?;
    let omc = cfg.optomech()?;
    let om = omc.params(&cm)?;
    let (_, g_values) = cfg.sweep_values(&[SweepVariable::G], || Sweep {
        variable: SweepVariable::G,
        min: 1e-3,
        max: 3.0,
        points: 99,
        scale: Scale::Log,
        include_zero: true,
    })?;
    let nbars = cfg.nbar_values.clone().unwrap_or_else(|| vec![om.nbar]);
    let mut r = Report::new("cooling").columns(&[
        "nbar",
        "g",
        "n_f_fano",
        "n_f_markovian_equal_linewidth",
        "n_f_unresolved",
        "stable_fano",
        "stable_markovian_equal_linewidth",
        "stable_unresolved",
    ]);
    let equal = MarkovianCavity::equal_linewidth(&cfg.setup, om.omega_m);
    let unres = MarkovianCavity::unresolved(&cfg.setup, om.omega_m);
    r.note("delta_d", om.delta_d);
    r.note("delta_d_min_heating", heating_minimizing_detuning(&cm, om.omega_m));
    r.note("kappa_markovian_equal_linewidth", equal.kappa);
    r.note("delta_markovian_equal_linewidth", equal.delta);
    r.note("kappa_unresolved", unres.kappa);
    r.note("delta_unresolved", unres.delta);
    let unit = om.with_g(1.0);
    r.note("s_f_plus_omega_m_per_g2", force_psd(&cm, &unit, om.omega_m));
    r.note("s_f_minus_omega_m_per_g2", force_psd(&cm, &unit, -om.omega_m));
    r.note("cooling_rate_per_g2", cooling_rate(&cm, &unit));

    let mut thermal_ok = true;
    let mut negative = false;
    for &nbar in &nbars {
        let base = CoolingBase {
            omega_m: om.omega_m,
            gamma_m: om.gamma_m,
            nbar,
            delta_d: om.delta_d,
        };
        let pts = cooling_curve_with(&cfg.setup, &base, &g_values, exec)?;
        let mut mins = [(f64::INFINITY, f64::NAN); 3];
        for p in &pts {
            let vals = [p.fano, p.markovian, p.unresolved];
            for (m, v) in mins.iter_mut().zip(vals) {
                if let Some(v) = v {
                    if v < m.0 {
                        *m = (v, p.g);
                    }
                    negative |= v < -1e-9;
                    if p.g == 0.0 {
                        thermal_ok &= (v - nbar).abs() <= 1e-10 * nbar.max(1.0);
                    }
                }
            }
            r.push_row(vec![
                nbar.into(),
                p.g.into(),
                Cell::opt(p.fano, "unstable"),
                Cell::opt(p.markovian, "unstable"),
                Cell::opt(p.unresolved, "unstable"),
                p.fano.is_some().into(),
                p.markovian.is_some().into(),
                p.unresolved.is_some().into(),
            ]);
        }
        let tag = crate::report::fmt_f64(nbar);
        for (name, (v, g)) in ["fano", "markovian_equal_linewidth", "unresolved"].iter().zip(mins) {
            r.note(format!("nbar={tag}.min_n_f_{name}"), Cell::opt(v.is_finite().then_some(v), "none"));
            r.note(format!("nbar={tag}.argmin_g_{name}"), Cell::opt(v.is_finite().then_some(g), "none"));
        }
    }
    r.gate("thermal_at_zero_coupling", thermal_ok, "n_f = nbar at g = 0 in every column");
    r.gate("non_negative", !negative, "n_f >= -1e-9 at every stable point");
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(extra: &str) -> RunConfig {
        RunConfig::parse(&format!(
            r#"{{"version": 1, "setup": {{"zeta0": 10, "zeta_r": 10, "fsr": 1, "gamma": 0.1, "omega_d": 0, "s": -1}}{extra}}}"#
        ))
        .unwrap()
    }

    #[test]
    fn single_point_transmission() {
        let c = cfg(r#", "sweep": {"variable": "delta", "min": 0, "max": 0, "points": 1}"#);
        let r = transmission(&c, Execution::Sequential).unwrap();
        assert_eq!(r.rows.len(), 1);
        for i in [2, 3] {
            match r.rows[0][i] {
                Cell::Num(x) => assert!((x - 1.0).abs() < 1e-6),
                ref other => panic!("{other:?}"),
            }
        }
        assert!(r.failed_gates().is_empty());
    }

    #[test]
    fn omega_axis_is_mirrored() {
        let c = cfg(r#", "sweep": {"variable": "omega", "min": -0.001, "max": 0.002, "points": 4}"#);
        let r = transmission(&c, Execution::Sequential).unwrap();
        assert_eq!(r.rows[0][0], Cell::Num(-0.002));
        assert_eq!(r.rows[0][1], Cell::Num(0.002));
    }

    #[test]
    fn wrong_sweep_variable() {
        let c = cfg(r#", "sweep": {"variable": "g", "min": 0, "max": 1, "points": 3}"#);
        assert!(matches!(transmission(&c, Execution::Sequential), Err(CliError::Config(_))));
        assert!(matches!(cooling(&cfg(""), Execution::Sequential), Err(CliError::Config(_))));
    }

    #[test]
    fn kernels_report() {
        let r = kernels(&cfg(""), Execution::Sequential).unwrap();
        assert!(r.failed_gates().is_empty(), "{:?}", r.failed_gates());
        assert_eq!(r.columns.len(), 9);
    }

    #[test]
    fn zero_coupling_spectrum() {
        let c = cfg(r#", "optomech": {"omega_m": 0.01, "gamma_m": 1e-6, "g": 0}"#);
        let r = sf_spectrum(&c, Execution::Sequential).unwrap();
        assert!(r.rows.iter().all(|row| row[1] == Cell::Num(0.0)));
    }
}
