use crate::{Error, Result};

/// Bisection for a sign change of `f` in `[a, b]`, stopping once the bracket
/// is narrower than `tol`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::param("tol", "must be positive"));
    }
    if a > b {
        std::mem::swap(&mut a, &mut b);
    }
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::param("bracket", format!("f({a}) and f({b}) do not bracket a root")));
    }
    // 200 halvings exhaust f64 resolution on any finite bracket
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
