//! Eigenvalues of small real matrices: Householder reduction to upper
//! Hessenberg form followed by Francis double-shift QR (the classic EISPACK
//! `orthes`/`hqr` pair, eigenvalues only).

use num_complex::Complex64 as C64;

use super::DenseMatrix;
use crate::{Error, Result};

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Reduces `m` to upper Hessenberg form by orthogonal similarity.
pub fn hessenberg(m: &DenseMatrix<f64>) -> Result<DenseMatrix<f64>> {
    if !m.is_square() {
        return Err(Error::Dimension("Hessenberg reduction needs a square matrix".into()));
    }
    let n = m.rows();
    let mut h = m.clone();
    let mut ort = vec![0.0; n];
    if n < 3 {
        return Ok(h);
    }
    for col in 1..n - 1 {
        let scale: f64 = (col..n).map(|i| h[(i, col - 1)].abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut norm2 = 0.0;
        for i in (col..n).rev() {
            ort[i] = h[(i, col - 1)] / scale;
            norm2 += ort[i] * ort[i];
        }
        let mut g = norm2.sqrt();
        if ort[col] > 0.0 {
            g = -g;
        }
        norm2 -= ort[col] * g;
        ort[col] -= g;

        for j in col..n {
            let f = (col..n).rev().map(|i| ort[i] * h[(i, j)]).sum::<f64>() / norm2;
            for i in col..n {
                h[(i, j)] -= f * ort[i];
            }
        }
        for i in 0..n {
            let f = (col..n).rev().map(|j| ort[j] * h[(i, j)]).sum::<f64>() / norm2;
            for j in col..n {
                h[(i, j)] -= f * ort[j];
            }
        }
        h[(col, col - 1)] = scale * g;
        for i in col + 1..n {
            h[(i, col - 1)] = 0.0;
        }
    }
    Ok(h)
}

/// Full spectrum of a real square matrix, in no particular order.
///
/// Complex eigenvalues come in conjugate pairs.
pub fn eigenvalues_real(m: &DenseMatrix<f64>) -> Result<Vec<C64>> {
    if !m.is_finite() {
        return Err(Error::param("matrix", "non-finite entry"));
    }
    let mut h = hessenberg(m)?;
    let nn = h.rows();
    let mut re = vec![0.0; nn];
    let mut im = vec![0.0; nn];

    let eps = f64::EPSILON;
    let mut norm = 0.0;
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm += h[(i, j)].abs();
        }
    }

    let mut n = nn as isize - 1;
    let mut exshift = 0.0;
    let mut iter = 0usize;
    let mut total = 0usize;
    let (mut p, mut q, mut r, mut s, mut z);
    let (mut x, mut y, mut w);

    while n >= 0 {
        let nu = n as usize;
        // look for a single small sub-diagonal element
        let mut l = nu;
        while l > 0 {
            s = h[(l - 1, l - 1)].abs() + h[(l, l)].abs();
            if s == 0.0 {
                s = norm;
            }
            if h[(l, l - 1)].abs() <= eps * s {
                break;
            }
            l -= 1;
        }

        if l == nu {
            re[nu] = h[(nu, nu)] + exshift;
            im[nu] = 0.0;
            n -= 1;
            iter = 0;
        } else if l + 1 == nu {
            w = h[(nu, nu - 1)] * h[(nu - 1, nu)];
            p = (h[(nu - 1, nu - 1)] - h[(nu, nu)]) / 2.0;
            q = p * p + w;
            z = q.abs().sqrt();
            x = h[(nu, nu)] + exshift;
            if q >= 0.0 {
                z = if p >= 0.0 { p + z } else { p - z };
                re[nu - 1] = x + z;
                re[nu] = if z != 0.0 { x - w / z } else { x + z };
                im[nu - 1] = 0.0;
                im[nu] = 0.0;
            } else {
                re[nu - 1] = x + p;
                re[nu] = x + p;
                im[nu - 1] = z;
                im[nu] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            x = h[(nu, nu)];
            y = h[(nu - 1, nu - 1)];
            w = h[(nu, nu - 1)] * h[(nu - 1, nu)];

            // exceptional shifts
            if iter == 10 {
                exshift += x;
                for i in 0..=nu {
                    h[(i, i)] -= x;
                }
                s = h[(nu, nu - 1)].abs() + h[(nu - 1, nu - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            if iter == 30 {
                s = (y - x) / 2.0;
                s = s * s + w;
                if s > 0.0 {
                    s = s.sqrt();
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / 2.0 + s);
                    for i in 0..=nu {
                        h[(i, i)] -= s;
                    }
                    exshift += s;
                    x = 0.964;
                    y = x;
                    w = x;
                }
            }

            iter += 1;
            total += 1;
            if total > MAX_SWEEPS_PER_EIGENVALUE * nn.max(1) {
                return Err(Error::NoConvergence { iterations: total });
            }

            // look for two consecutive small sub-diagonal elements
            let mut m0 = nu - 2;
            loop {
                z = h[(m0, m0)];
                r = x - z;
                s = y - z;
                p = (r * s - w) / h[(m0 + 1, m0)] + h[(m0, m0 + 1)];
                q = h[(m0 + 1, m0 + 1)] - z - r - s;
                r = h[(m0 + 2, m0 + 1)];
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m0 == l {
                    break;
                }
                let lhs = h[(m0, m0 - 1)].abs() * (q.abs() + r.abs());
                let rhs = eps
                    * (p.abs() * (h[(m0 - 1, m0 - 1)].abs() + z.abs() + h[(m0 + 1, m0 + 1)].abs()));
                if lhs < rhs {
                    break;
                }
                m0 -= 1;
            }
            for i in m0 + 2..=nu {
                h[(i, i - 2)] = 0.0;
                if i > m0 + 2 {
                    h[(i, i - 3)] = 0.0;
                }
            }

            // double QR step on rows l..=n, columns m0..=n
            for k in m0..nu {
                let notlast = k != nu - 1;
                if k != m0 {
                    p = h[(k, k - 1)];
                    q = h[(k + 1, k - 1)];
                    r = if notlast { h[(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x == 0.0 {
                        continue;
                    }
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = (p * p + q * q + r * r).sqrt();
                if p < 0.0 {
                    s = -s;
                }
                if s != 0.0 {
                    if k != m0 {
                        h[(k, k - 1)] = -s * x;
                    } else if l != m0 {
                        h[(k, k - 1)] = -h[(k, k - 1)];
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;

                    for j in k..nn {
                        p = h[(k, j)] + q * h[(k + 1, j)];
                        if notlast {
                            p += r * h[(k + 2, j)];
                            h[(k + 2, j)] -= p * z;
                        }
                        h[(k, j)] -= p * x;
                        h[(k + 1, j)] -= p * y;
                    }
                    for i in 0..=nu.min(k + 3) {
                        p = x * h[(i, k)] + y * h[(i, k + 1)];
                        if notlast {
                            p += z * h[(i, k + 2)];
                            h[(i, k + 2)] -= p * r;
                        }
                        h[(i, k)] -= p;
                        h[(i, k + 1)] -= p * q;
                    }
                }
            }
        }
    }

    Ok(re.into_iter().zip(im).map(|(a, b)| C64::new(a, b)).collect())
}
