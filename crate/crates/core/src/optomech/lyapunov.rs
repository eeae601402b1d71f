//! Steady-state covariance of the linearised quadrature dynamics
//! `ṙ = Ar + noise`, `r = (X_a, Y_a, X_d, Y_d, q, p)`.
//!
//! The steady state solves `AV + VAᵀ + N = 0`. It is found by vectorising to
//! the Kronecker-sum system `(I⊗A + A⊗I)vec(V) = −vec(N)` and solving by LU;
//! symmetry and positivity are checked afterwards, not imposed.

use crate::numerics::{eigenvalues_real, solve_dense, DenseMatrix};
use crate::{CoupledModeParams, Error, OptomechParams, Result};

/// 6×6 drift matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftMatrix(pub DenseMatrix<f64>);

/// 6×6 symmetric diffusion matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseMatrix(pub DenseMatrix<f64>);

impl AsRef<DenseMatrix<f64>> for DriftMatrix {
    fn as_ref(&self) -> &DenseMatrix<f64> {
        &self.0
    }
}

impl AsRef<DenseMatrix<f64>> for NoiseMatrix {
    fn as_ref(&self) -> &DenseMatrix<f64> {
        &self.0
    }
}

pub fn build_drift(cm: &CoupledModeParams, om: &OptomechParams) -> DriftMatrix {
    let (gp, gm) = cm.coupling_g();
    let (k, g) = (cm.kappa(), cm.gamma);
    let (da, dd) = (om.delta_a, om.delta_d);
    let c = 2.0 * om.g;
    let rows = [
        [-k, da, -gp.re, gp.im, 0.0, 0.0],
        [-da, -k, -gp.im, -gp.re, -c, 0.0],
        [-gm.re, gm.im, -g, dd, 0.0, 0.0],
        [-gm.im, -gm.re, -dd, -g, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, -om.gamma_m, om.omega_m],
        [-c, 0.0, 0.0, 0.0, -om.omega_m, -om.gamma_m],
    ];
    DriftMatrix(DenseMatrix::from_rows(&rows).expect("6×6 literal"))
}

pub fn build_noise(cm: &CoupledModeParams, om: &OptomechParams) -> NoiseMatrix {
    let k = 2.0 * cm.kappa();
    let g = 2.0 * cm.gamma;
    let x = 2.0 * (cm.kappa_l * cm.gamma).sqrt();
    let m = 2.0 * om.gamma_m * (2.0 * om.nbar + 1.0);
    let rows = [
        [k, 0.0, x, 0.0, 0.0, 0.0],
        [0.0, k, 0.0, x, 0.0, 0.0],
        [x, 0.0, g, 0.0, 0.0, 0.0],
        [0.0, x, 0.0, g, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, m, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, m],
    ];
    NoiseMatrix(DenseMatrix::from_rows(&rows).expect("6×6 literal"))
}

/// Largest real part of the spectrum of `a`.
pub fn stability_margin(a: &DenseMatrix<f64>) -> Result<f64> {
    Ok(eigenvalues_real(a)?.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max))
}

/// True iff every eigenvalue has real part below `−1e−12·‖A‖_max`.
pub fn is_stable(a: &DenseMatrix<f64>) -> Result<bool> {
    Ok(stability_margin(a)? < -1e-12 * a.norm_max())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceState {
    /// Symmetrised steady-state covariance.
    pub v: DenseMatrix<f64>,
    /// Mechanical occupation `(V_qq + V_pp − 2)/4`.
    pub n_f: f64,
    /// Occupation of the first optical mode `(V_XX + V_YY − 2)/4`.
    pub n_cav: f64,
    /// `‖AV + VAᵀ + N‖_max` of the returned `v`.
    pub residual: f64,
    /// 1-norm condition number of the vectorised system.
    pub condition: f64,
}

/// `AV + VAᵀ + N`.
pub fn lyapunov_residual(a: &DenseMatrix<f64>, v: &DenseMatrix<f64>, n: &DenseMatrix<f64>) -> DenseMatrix<f64> {
    let av = a.matmul(v);
    &(&av + &av.transpose()) + n
}

/// Solves `AV + VAᵀ + N = 0` for stable `A` (any even dimension; the last
/// two coordinates are taken as the mechanical quadratures).
pub fn steady_covariance(a: &DenseMatrix<f64>, n: &DenseMatrix<f64>) -> Result<CovarianceState> {
    let dim = a.rows();
    if !a.is_square() || n.rows() != dim || n.cols() != dim || dim < 2 || dim % 2 != 0 {
        return Err(Error::Dimension(format!(
            "drift {}×{} and noise {}×{} must be equal, square and even-sized",
            a.rows(),
            a.cols(),
            n.rows(),
            n.cols()
        )));
    }
    let margin = stability_margin(a)?;
    let eps = 1e-12 * a.norm_max();
    if !(margin < -eps) {
        return Err(Error::Unstable {
            max_real: margin,
            margin: eps,
        });
    }

    // column-major vec: V[i][j] ↦ i + dim·j
    let size = dim * dim;
    let mut k = DenseMatrix::zeros(size, size);
    for j in 0..dim {
        for i in 0..dim {
            let row = i + dim * j;
            for l in 0..dim {
                k[(row, l + dim * j)] += a[(i, l)];
                k[(row, i + dim * l)] += a[(j, l)];
            }
        }
    }
    let rhs: Vec<f64> = (0..size).map(|idx| -n[(idx % dim, idx / dim)]).collect();
    let sol = solve_dense(&k, &rhs)?;
    let raw = DenseMatrix::from_fn(dim, dim, |i, j| sol.x[i + dim * j]);

    // the solve is only good to about cond·ε, so judge the asymmetry there;
    // the residual check below is the binding one
    let scale = raw.norm_max().max(1.0);
    let asym = raw.asymmetry();
    let asym_tol = (64.0 * f64::EPSILON * sol.condition).max(1e-10);
    if asym > asym_tol * scale {
        return Err(Error::Lyapunov {
            reason: format!("solution asymmetry {asym:e}"),
            condition: sol.condition,
        });
    }
    let v = DenseMatrix::from_fn(dim, dim, |i, j| 0.5 * (raw[(i, j)] + raw[(j, i)]));
    let residual = lyapunov_residual(a, &v, n).norm_max();
    if residual > 1e-9 * n.norm_max() {
        return Err(Error::Lyapunov {
            reason: format!("residual {residual:e} exceeds 1e-9·‖N‖ = {:e}", 1e-9 * n.norm_max()),
            condition: sol.condition,
        });
    }
    let min_eig = eigenvalues_real(&v)?.iter().map(|e| e.re).fold(f64::INFINITY, f64::min);
    if min_eig < -1e-9 * scale {
        return Err(Error::Lyapunov {
            reason: format!("covariance has negative eigenvalue {min_eig:e}"),
            condition: sol.condition,
        });
    }
    let m = dim - 2;
    Ok(CovarianceState {
        n_f: (v[(m, m)] + v[(m + 1, m + 1)] - 2.0) / 4.0,
        n_cav: (v[(0, 0)] + v[(1, 1)] - 2.0) / 4.0,
        v,
        residual,
        condition: sol.condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{identify_parameters, FanoSign, PhysicalSetup};

    fn fig3() -> (CoupledModeParams, OptomechParams) {
        let cm = identify_parameters(&PhysicalSetup {
            zeta0: 10.0,
            zeta_r: Some(10.0),
            fsr: 1000.0,
            gamma: 40.0,
            omega_d: 0.0,
            s: FanoSign::Minus,
        })
        .unwrap();
        let om = OptomechParams::new(&cm, 1.0, 1e-6, 100.0, 0.1, 1.0).unwrap();
        (cm, om)
    }

    #[test]
    fn entries_match_layout() {
        let (cm, om) = fig3();
        let a = build_drift(&cm, &om).0;
        let n = build_noise(&cm, &om).0;
        assert_eq!(a[(0, 0)], -cm.kappa());
        assert_eq!(a[(4, 4)], -1e-6);
        assert_eq!(a[(5, 0)], -0.2);
        assert_eq!(a[(1, 4)], -0.2);
        assert_eq!(a[(0, 1)], om.delta_a);
        assert_eq!(a[(2, 3)], om.delta_d);
        let direct = (cm.kappa_l * cm.gamma).sqrt();
        let twisted = (cm.kappa_0 * cm.gamma).sqrt();
        // s = −1: 𝒢 = √(κ_Lγ) + i√(κ₀γ)
        assert!((a[(0, 2)] + direct).abs() < 1e-12);
        assert!((a[(0, 3)] - twisted).abs() < 1e-12);
        assert!((a[(1, 2)] + twisted).abs() < 1e-12);
        assert_eq!(n[(4, 4)], 2e-6 * 201.0);
        assert_eq!(n[(0, 2)], 2.0 * direct);
        assert_eq!(n, n.transpose());
    }

    #[test]
    fn decoupled_blocks() {
        let (cm, om) = fig3();
        let a = build_drift(&cm, &om.with_g(0.0)).0;
        for i in 0..4 {
            for j in 4..6 {
                assert_eq!(a[(i, j)], 0.0);
                assert_eq!(a[(j, i)], 0.0);
            }
        }
        assert!(is_stable(&a).unwrap());
        let state = steady_covariance(&a, &build_noise(&cm, &om).0).unwrap();
        assert!((state.n_f - 100.0).abs() <= 1e-10 * 100.0, "{}", state.n_f);
        assert!(state.n_cav.abs() < 1e-10);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((state.v[(i, j)] - want).abs() < 1e-9, "V[{i}][{j}] = {}", state.v[(i, j)]);
            }
        }
    }

    #[test]
    fn marginal_system_is_unstable() {
        let a = DenseMatrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]]).unwrap();
        assert!(!is_stable(&a).unwrap());
        let err = steady_covariance(&a, &DenseMatrix::identity(2)).unwrap_err();
        assert!(matches!(err, Error::Unstable { .. }));
    }

    #[test]
    fn fig3_point_is_consistent() {
        let (cm, om) = fig3();
        let a = build_drift(&cm, &om).0;
        let n = build_noise(&cm, &om).0;
        assert!(is_stable(&a).unwrap());
        let st = steady_covariance(&a, &n).unwrap();
        assert!(st.residual <= 1e-9 * n.norm_max());
        assert!(st.n_f > 0.0 && st.n_f < 100.0, "{}", st.n_f);
        assert!(st.v.asymmetry() == 0.0);
    }

    #[test]
    fn shape_errors() {
        let a = DenseMatrix::<f64>::identity(3);
        assert!(matches!(steady_covariance(&a, &a), Err(Error::Dimension(_))));
    }
}
