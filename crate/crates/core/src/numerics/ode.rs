//! Classical fixed-step 4th-order Runge–Kutta.
//!
//! Global error is O(h⁴) for smooth right-hand sides. For a linear system
//! `ẏ = Ay + b` with constant forcing the fixed point of the discrete map is
//! the exact steady state, independent of `h`.

use super::Scalar;
use crate::{Error, Result};

/// Reusable RK4 stepper holding its stage buffers.
#[derive(Debug, Clone)]
pub struct Rk4<T> {
    k1: Vec<T>,
    k2: Vec<T>,
    k3: Vec<T>,
    k4: Vec<T>,
    tmp: Vec<T>,
}

impl<T: Scalar> Rk4<T> {
    pub fn new(dim: usize) -> Self {
        let z = vec![T::zero(); dim];
        Rk4 {
            k1: z.clone(),
            k2: z.clone(),
            k3: z.clone(),
            k4: z.clone(),
            tmp: z,
        }
    }

    /// Advances `y` from `t` to `t + h` in place.
    pub fn step<F>(&mut self, f: &mut F, t: f64, y: &mut [T], h: f64)
    where
        F: FnMut(f64, &[T], &mut [T]),
    {
        let n = y.len();
        let hh = T::from_real(h);
        let half = T::from_real(0.5 * h);

        f(t, y, &mut self.k1);
        for i in 0..n {
            self.tmp[i] = y[i] + half * self.k1[i];
        }
        f(t + 0.5 * h, &self.tmp, &mut self.k2);
        for i in 0..n {
            self.tmp[i] = y[i] + half * self.k2[i];
        }
        f(t + 0.5 * h, &self.tmp, &mut self.k3);
        for i in 0..n {
            self.tmp[i] = y[i] + hh * self.k3[i];
        }
        f(t + h, &self.tmp, &mut self.k4);

        let sixth = T::from_real(h / 6.0);
        let two = T::from_real(2.0);
        for i in 0..n {
            y[i] += sixth * (self.k1[i] + two * (self.k2[i] + self.k3[i]) + self.k4[i]);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub times: Vec<f64>,
    pub states: Vec<Vec<T>>,
}

impl<T> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, &[T])> {
        Some((*self.times.last()?, self.states.last()?.as_slice()))
    }
}

/// Integrates `ẏ = f(t, y)` from `t0` to `t1` with fixed step `step`.
///
/// `step` must divide `t1 − t0` up to rounding (relative 1e−9). The initial
/// state and every `record_every`-th state are recorded, and the final state
/// always is.
pub fn integrate_fixed<T, F>(
    mut f: F,
    y0: &[T],
    t0: f64,
    t1: f64,
    step: f64,
    record_every: usize,
) -> Result<Trajectory<T>>
where
    T: Scalar,
    F: FnMut(f64, &[T], &mut [T]),
{
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::param("step", format!("must be positive and finite, got {step}")));
    }
    if !(t1 > t0) || !t0.is_finite() || !t1.is_finite() {
        return Err(Error::param("t1", format!("must exceed t0 (t0 = {t0}, t1 = {t1})")));
    }
    if record_every == 0 {
        return Err(Error::param("record_every", "must be at least 1"));
    }
    let span = t1 - t0;
    let steps = (span / step).round();
    if steps < 1.0 || (steps * step - span).abs() > 1e-9 * span {
        return Err(Error::param(
            "step",
            format!("{step} does not divide the interval length {span}"),
        ));
    }
    let steps = steps as usize;

    let mut y = y0.to_vec();
    let mut rk = Rk4::new(y.len());
    let mut out = Trajectory {
        times: vec![t0],
        states: vec![y.clone()],
    };
    for k in 0..steps {
        let t = t0 + k as f64 * step;
        rk.step(&mut f, t, &mut y, step);
        let t_next = t0 + (k + 1) as f64 * step;
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { time: t_next });
        }
        if (k + 1) % record_every == 0 || k + 1 == steps {
            out.times.push(t_next);
            out.states.push(y.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    fn decay_error(step: f64) -> f64 {
        let traj = integrate_fixed(|_, y: &[f64], d: &mut [f64]| d[0] = -y[0], &[1.0], 0.0, 1.0, step, 1)
            .unwrap();
        (traj.last().unwrap().1[0] - (-1.0f64).exp()).abs()
    }

    #[test]
    fn exponential_decay() {
        assert!(decay_error(1e-3) < 1e-8);
    }

    #[test]
    fn rotation_conserves_modulus() {
        let omega = 3.0;
        let traj = integrate_fixed(
            |_, y: &[C64], d: &mut [C64]| d[0] = C64::new(0.0, omega) * y[0],
            &[C64::new(1.0, 0.0)],
            0.0,
            10.0,
            1e-3,
            100,
        )
        .unwrap();
        for s in &traj.states {
            assert!((s[0].norm() - 1.0).abs() < 1e-8);
        }
        assert_eq!(traj.len(), 101);
    }

    #[test]
    fn fourth_order_convergence() {
        // halving the step should cut the error by ~16
        let steps = [0.1, 0.05, 0.025, 0.0125];
        let errs: Vec<f64> = steps.iter().map(|&h| decay_error(h)).collect();
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!((14.0..18.0).contains(&ratio), "ratio {ratio}");
        }
        let slope = (errs[0] / errs[3]).ln() / (steps[0] / steps[3]).ln();
        assert!((3.8..=4.2).contains(&slope), "slope {slope}");
    }

    #[test]
    fn steady_state_of_linear_system_is_exact() {
        // ẏ = −2y + 3 has fixed point 1.5 regardless of the step
        let traj =
            integrate_fixed(|_, y: &[f64], d: &mut [f64]| d[0] = -2.0 * y[0] + 3.0, &[0.0], 0.0, 40.0, 0.4, 1000)
                .unwrap();
        assert!((traj.last().unwrap().1[0] - 1.5).abs() < 1e-14);
    }

    #[test]
    fn non_finite_state_aborts_with_time() {
        let r = integrate_fixed(|_, y: &[f64], d: &mut [f64]| d[0] = y[0] * y[0], &[1.0], 0.0, 2.0, 0.01, 1);
        match r {
            Err(Error::NonFinite { time }) => assert!(time > 0.9 && time <= 2.0),
            other => panic!("expected blow-up, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_grids() {
        let f = |_: f64, _: &[f64], d: &mut [f64]| d[0] = 0.0;
        assert!(integrate_fixed(f, &[0.0], 0.0, 1.0, 0.3, 1).is_err());
        assert!(integrate_fixed(f, &[0.0], 0.0, 1.0, -0.1, 1).is_err());
        assert!(integrate_fixed(f, &[0.0], 1.0, 1.0, 0.1, 1).is_err());
        assert!(integrate_fixed(f, &[0.0], 0.0, 1.0, 0.1, 0).is_err());
    }
}
