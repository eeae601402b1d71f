//! Mean-field time evolution in the frame of the drive.
//!
//! Two independent integrators are provided:
//!
//! * [`simulate_mean_response`]: the two-mode equations
//!   `ȧ = −(iΔ_a+κ)a − 𝒢₊d + √(2κ_L)β`, `ḋ = −(iΔ_d+γ)d − 𝒢₋a + √(2γ)β`
//!   with classical RK4.
//! * [`simulate_memory_form`]: the single-mode equation with memory obtained
//!   by eliminating `d`,
//!   `ȧ = −(iΔ_a+κ_R)a − (κ_eff∗a)(t) + (κ_in∗β)(t) − 𝒢₊e^{−ct}d(0)`,
//!   stepped with a fourth-order Adams–Bashforth–Moulton predictor-corrector
//!   and the full stored history summed by composite Simpson quadrature.
//!
//! Both require `step · max(κ, γ, |𝒢±|, |Δ_a|, |Δ_d|) ≤ 0.1`.

use num_complex::Complex64 as C64;

use super::spectra::DriveDetuning;
use crate::numerics::integrate_fixed;
use crate::{CoupledModeParams, Error, Result};

/// Largest allowed `step × fastest rate`.
pub const STEP_BOUND: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanState {
    pub t: f64,
    pub a: C64,
    pub d: C64,
}

impl MeanState {
    pub fn vacuum() -> Self {
        MeanState {
            t: 0.0,
            a: C64::new(0.0, 0.0),
            d: C64::new(0.0, 0.0),
        }
    }

    /// Field leaving through the right mirror, `−√(2κ_R)a`.
    pub fn transmitted(&self, cm: &CoupledModeParams) -> C64 {
        -(2.0 * cm.kappa_r).sqrt() * self.a
    }

    /// Field reflected into the left port for input `beta`.
    pub fn reflected(&self, cm: &CoupledModeParams, beta: C64) -> C64 {
        beta - (2.0 * cm.kappa_l).sqrt() * self.a - (2.0 * cm.gamma).sqrt() * self.d
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub horizon: f64,
    pub step: f64,
    /// Record every n-th state (the first and last are always kept).
    pub record_every: usize,
}

impl TimeGrid {
    fn steps(&self) -> Result<usize> {
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return Err(Error::param("horizon", format!("must be positive, got {}", self.horizon)));
        }
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::param("step", format!("must be positive, got {}", self.step)));
        }
        if self.record_every == 0 {
            return Err(Error::param("record_every", "must be at least 1"));
        }
        let n = (self.horizon / self.step).round();
        if n < 1.0 || (n * self.step - self.horizon).abs() > 1e-9 * self.horizon {
            return Err(Error::param(
                "step",
                format!("{} does not divide the horizon {}", self.step, self.horizon),
            ));
        }
        Ok(n as usize)
    }
}

/// Fastest rate of the drive-frame equations.
pub fn fastest_rate(cm: &CoupledModeParams, det: DriveDetuning) -> f64 {
    let (gp, gm) = cm.coupling_g();
    [cm.kappa(), cm.gamma, gp.norm(), gm.norm(), det.delta_a.abs(), det.delta_d.abs()]
        .into_iter()
        .fold(0.0, f64::max)
}

fn check_step(cm: &CoupledModeParams, det: DriveDetuning, step: f64) -> Result<()> {
    let rate = fastest_rate(cm, det);
    if step * rate > STEP_BOUND {
        return Err(Error::StepTooLarge {
            step,
            rate,
            bound: STEP_BOUND,
            suggested: STEP_BOUND / rate,
        });
    }
    Ok(())
}

fn check_inputs(cm: &CoupledModeParams, det: DriveDetuning, grid: &TimeGrid) -> Result<usize> {
    cm.validate()?;
    if !det.delta_a.is_finite() || !det.delta_d.is_finite() {
        return Err(Error::param("detuning", "must be finite"));
    }
    let n = grid.steps()?;
    check_step(cm, det, grid.step)?;
    Ok(n)
}

fn record(i: usize, n: usize, every: usize) -> bool {
    i % every == 0 || i == n
}

/// Evolves `(⟨a⟩, ⟨d⟩)` under coherent drive `β(t)` with RK4.
pub fn simulate_mean_response<F>(
    cm: &CoupledModeParams,
    det: DriveDetuning,
    drive: F,
    initial: MeanState,
    grid: &TimeGrid,
) -> Result<Vec<MeanState>>
where
    F: Fn(f64) -> C64,
{
    check_inputs(cm, det, grid)?;
    let (gp, gm) = cm.coupling_g();
    let damp_a = C64::new(cm.kappa(), det.delta_a);
    let damp_d = C64::new(cm.gamma, det.delta_d);
    let (in_a, in_d) = ((2.0 * cm.kappa_l).sqrt(), (2.0 * cm.gamma).sqrt());
    let t0 = initial.t;
    let rhs = |t: f64, y: &[C64], dy: &mut [C64]| {
        let b = drive(t);
        dy[0] = -damp_a * y[0] - gp * y[1] + in_a * b;
        dy[1] = -damp_d * y[1] - gm * y[0] + in_d * b;
    };
    let traj = integrate_fixed(
        rhs,
        &[initial.a, initial.d],
        t0,
        t0 + grid.horizon,
        grid.step,
        grid.record_every,
    )?;
    Ok(traj
        .times
        .iter()
        .zip(&traj.states)
        .map(|(&t, y)| MeanState { t, a: y[0], d: y[1] })
        .collect())
}

/// Weight (in units of h) of sample `k` in the quadrature of `[0, n·h]`:
/// composite Simpson, with Simpson 3/8 on the last three intervals when `n`
/// is odd, and the trapezoid rule for `n = 1`.
fn quad_weight(n: usize, k: usize) -> f64 {
    debug_assert!(k <= n);
    match n {
        0 => 0.0,
        1 => 0.5,
        _ => {
            let m = if n % 2 == 0 { n } else { n - 3 };
            let mut w = 0.0;
            if k <= m && m > 0 {
                w += if k == 0 || k == m {
                    1.0 / 3.0
                } else if k % 2 == 1 {
                    4.0 / 3.0
                } else {
                    2.0 / 3.0
                };
            }
            if n % 2 == 1 && k >= m {
                w += if k == m || k == n { 3.0 / 8.0 } else { 9.0 / 8.0 };
            }
            w
        }
    }
}

/// `∫₀^{nh} K(nh − τ) f(τ) dτ` from samples, skipping `f[n]` (the caller
/// adds `weight(n, n)·f[n]` with `K(0) = 1`).
fn history(kernel: &[C64], f: &[C64], n: usize, h: f64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..n {
        acc += quad_weight(n, k) * kernel[n - k] * f[k];
    }
    acc * h
}

/// Sub-steps per coarse step used to generate the starting values.
const STARTUP_REFINEMENT: usize = 16;

/// Evolves `⟨a⟩` through the equation with memory; `⟨d⟩` is reconstructed
/// from the stored history.
///
/// The first three steps, where the four-step method has no history yet,
/// are taken from a run of the same scheme on a grid 16× finer, so the
/// low-order start does not limit the global accuracy.
pub fn simulate_memory_form<F>(
    cm: &CoupledModeParams,
    det: DriveDetuning,
    drive: F,
    initial: MeanState,
    grid: &TimeGrid,
) -> Result<Vec<MeanState>>
where
    F: Fn(f64) -> C64,
{
    let n_steps = check_inputs(cm, det, grid)?;
    let h = grid.step;
    let start = if n_steps > 3 {
        let fine = MemoryRun::new(cm, det, &drive, initial, 3 * STARTUP_REFINEMENT, h / STARTUP_REFINEMENT as f64);
        let a = fine.solve(&[])?;
        (1..=3).map(|k| a[k * STARTUP_REFINEMENT]).collect()
    } else {
        Vec::new()
    };
    let run = MemoryRun::new(cm, det, &drive, initial, n_steps, h);
    let a = run.solve(&start)?;
    Ok((0..=n_steps)
        .filter(|&n| record(n, n_steps, grid.record_every))
        .map(|n| MeanState {
            t: initial.t + n as f64 * h,
            a: a[n],
            d: run.mirror_mode(&a, n),
        })
        .collect())
}

/// Precomputed kernel samples and inhomogeneous terms for one run.
struct MemoryRun {
    n_steps: usize,
    h: f64,
    t0: f64,
    a0: C64,
    d0: C64,
    gp: C64,
    gm: C64,
    damp_a: C64,
    in_a: f64,
    in_d: f64,
    kernel: Vec<C64>,
    beta: Vec<C64>,
    /// `∫₀^{t_n} e^{−c(t_n−τ)}β(τ)dτ`.
    i_beta: Vec<C64>,
}

impl MemoryRun {
    fn new<F: Fn(f64) -> C64>(
        cm: &CoupledModeParams,
        det: DriveDetuning,
        drive: &F,
        initial: MeanState,
        n_steps: usize,
        h: f64,
    ) -> Self {
        let (gp, gm) = cm.coupling_g();
        let rate = C64::new(cm.gamma, det.delta_d);
        let kernel: Vec<C64> = (0..=n_steps).map(|j| (-rate * (j as f64 * h)).exp()).collect();
        let beta: Vec<C64> = (0..=n_steps).map(|j| drive(initial.t + j as f64 * h)).collect();
        let i_beta = (0..=n_steps)
            .map(|n| history(&kernel, &beta, n, h) + quad_weight(n, n) * h * beta[n])
            .collect();
        MemoryRun {
            n_steps,
            h,
            t0: initial.t,
            a0: initial.a,
            d0: initial.d,
            gp,
            gm,
            damp_a: C64::new(cm.kappa(), det.delta_a),
            in_a: (2.0 * cm.kappa_l).sqrt(),
            in_d: (2.0 * cm.gamma).sqrt(),
            kernel,
            beta,
            i_beta,
        }
    }

    /// Right-hand side at step `n` given `a_n` and the history sum without
    /// its last sample.
    fn rhs(&self, n: usize, a_n: C64, partial: C64) -> C64 {
        let i_a = partial + quad_weight(n, n) * self.h * a_n;
        -self.damp_a * a_n + self.gp * self.gm * i_a - self.gp * self.in_d * self.i_beta[n]
            + self.in_a * self.beta[n]
            - self.gp * self.kernel[n] * self.d0
    }

    fn mirror_mode(&self, a: &[C64], n: usize) -> C64 {
        let i_a = history(&self.kernel, a, n, self.h) + quad_weight(n, n) * self.h * a[n];
        self.kernel[n] * self.d0 - self.gm * i_a + self.in_d * self.i_beta[n]
    }

    /// Steps the equation; `start` optionally fixes `a_1, a_2, …`.
    fn solve(&self, start: &[C64]) -> Result<Vec<C64>> {
        let h = self.h;
        let mut a = Vec::with_capacity(self.n_steps + 1);
        let mut f_hist: Vec<C64> = Vec::with_capacity(self.n_steps + 1);
        a.push(self.a0);
        f_hist.push(self.rhs(0, self.a0, C64::new(0.0, 0.0)));
        for n in 0..self.n_steps {
            let partial = history(&self.kernel, &a, n + 1, h);
            let next = if let Some(&given) = start.get(n) {
                given
            } else {
                let f = |j: usize| f_hist[n - j];
                let predicted = a[n]
                    + h * match n {
                        0 => f(0),
                        1 => (3.0 * f(0) - f(1)) / 2.0,
                        2 => (23.0 * f(0) - 16.0 * f(1) + 5.0 * f(2)) / 12.0,
                        _ => (55.0 * f(0) - 59.0 * f(1) + 37.0 * f(2) - 9.0 * f(3)) / 24.0,
                    };
                let fp = self.rhs(n + 1, predicted, partial);
                a[n] + h * match n {
                    0 => (fp + f(0)) / 2.0,
                    1 => (5.0 * fp + 8.0 * f(0) - f(1)) / 12.0,
                    _ => (9.0 * fp + 19.0 * f(0) - 5.0 * f(1) + f(2)) / 24.0,
                }
            };
            if !next.re.is_finite() || !next.im.is_finite() {
                return Err(Error::NonFinite {
                    time: self.t0 + (n + 1) as f64 * h,
                });
            }
            f_hist.push(self.rhs(n + 1, next, partial));
            a.push(next);
        }
        Ok(a)
    }
}

/// Transmission at detuning `Δ = ω_d − ω` extracted from the long-time
/// response to a unit constant drive.
///
/// The horizon spans 40 e-foldings of the slowest eigenmode, so the
/// transient is below double precision; the step is the largest allowed
/// one.
pub fn steady_state_transmission(cm: &CoupledModeParams, delta: f64) -> Result<C64> {
    cm.validate()?;
    let det = DriveDetuning::from_delta_d(cm, delta);
    let (gp, gm) = cm.coupling_g();
    let m11 = -C64::new(cm.kappa(), det.delta_a);
    let m22 = -C64::new(cm.gamma, det.delta_d);
    let half_tr = 0.5 * (m11 + m22);
    let disc = (0.25 * (m11 - m22) * (m11 - m22) + gp * gm).sqrt();
    let slowest = (-(half_tr + disc).re).min(-(half_tr - disc).re);
    if !(slowest > 0.0) {
        return Err(Error::Unstable {
            max_real: -slowest,
            margin: 0.0,
        });
    }
    let horizon = 40.0 / slowest;
    let max_step = STEP_BOUND / fastest_rate(cm, det);
    let n = (horizon / max_step).ceil();
    let grid = TimeGrid {
        horizon,
        step: horizon / n,
        record_every: usize::MAX,
    };
    let states = simulate_mean_response(cm, det, |_| C64::from(1.0), MeanState::vacuum(), &grid)?;
    Ok(states.last().expect("trajectory is never empty").transmitted(cm))
}
