//! Direct Lyapunov solve against time-integration oracles.

use fanocav::numerics::{DenseMatrix, Rk4};
use fanocav::optomech::{
    build_drift, build_noise, is_stable, rate_equation_occupation, steady_covariance,
};
use fanocav::{identify_parameters, FanoSign, OptomechParams, PhysicalSetup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lyap_rhs(a: &DenseMatrix<f64>, n: &DenseMatrix<f64>, v: &[f64], dv: &mut [f64]) {
    let dim = a.rows();
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = n[(i, j)];
            for k in 0..dim {
                acc += a[(i, k)] * v[k * dim + j] + v[i * dim + k] * a[(j, k)];
            }
            dv[i * dim + j] = acc;
        }
    }
}

/// Integrates `V̇ = AV + VAᵀ + N` from `v0` until `‖V̇‖_max < 1e−10`.
fn integrate_to_steady(a: &DenseMatrix<f64>, n: &DenseMatrix<f64>, v0: &DenseMatrix<f64>) -> DenseMatrix<f64> {
    let dim = a.rows();
    let h = 0.05 / a.norm_max();
    let mut v = v0.as_slice().to_vec();
    let mut rk = Rk4::new(dim * dim);
    let mut f = |_t: f64, y: &[f64], dy: &mut [f64]| lyap_rhs(a, n, y, dy);
    let mut dv = vec![0.0; dim * dim];
    for it in 0.. {
        rk.step(&mut f, 0.0, &mut v, h);
        if it % 100 == 0 {
            lyap_rhs(a, n, &v, &mut dv);
            if dv.iter().all(|x| x.abs() < 1e-10) {
                break;
            }
            assert!(it < 50_000_000, "time integration did not settle");
        }
    }
    DenseMatrix::new(dim, dim, v).unwrap()
}

fn thermal(dim: usize, nbar: f64) -> DenseMatrix<f64> {
    DenseMatrix::from_fn(dim, dim, |i, j| match (i == j, i >= dim - 2) {
        (true, true) => 2.0 * nbar + 1.0,
        (true, false) => 1.0,
        _ => 0.0,
    })
}

fn n_f(v: &DenseMatrix<f64>) -> f64 {
    let m = v.rows() - 2;
    (v[(m, m)] + v[(m + 1, m + 1)] - 2.0) / 4.0
}

#[test]
fn direct_solve_matches_time_integration_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a9);
    let mut checked = 0;
    while checked < 20 {
        let setup = PhysicalSetup {
            zeta0: rng.gen_range(0.8..3.0),
            zeta_r: if rng.gen_bool(0.2) { None } else { Some(rng.gen_range(0.8..3.0)) },
            fsr: rng.gen_range(0.3..1.5),
            gamma: rng.gen_range(0.2..2.0),
            omega_d: 0.0,
            s: if rng.gen_bool(0.5) { FanoSign::Plus } else { FanoSign::Minus },
        };
        let cm = identify_parameters(&setup).unwrap();
        let om = OptomechParams::new(
            &cm,
            rng.gen_range(0.5..2.0),
            rng.gen_range(0.05..0.5),
            rng.gen_range(1.0..20.0),
            rng.gen_range(0.0..0.4),
            rng.gen_range(-1.5..1.5),
        )
        .unwrap();
        let a = build_drift(&cm, &om).0;
        let n = build_noise(&cm, &om).0;
        if !is_stable(&a).unwrap() {
            continue;
        }
        let direct = steady_covariance(&a, &n).unwrap();
        assert!(direct.residual <= 1e-9 * n.norm_max());
        let oracle = integrate_to_steady(&a, &n, &thermal(6, om.nbar));
        let rel = (direct.n_f - n_f(&oracle)).abs() / n_f(&oracle).abs();
        assert!(rel <= 1e-6, "instance {checked}: {} vs {} (rel {rel:e})", direct.n_f, n_f(&oracle));
        checked += 1;
    }
}

/// Exact-flow doubling: with `Φ_h ≈ e^{Ah}` and `Q_h = ∫₀^h e^{As}Ne^{Aᵀs}ds`
/// (one RK4 step each), `Q_{2h} = Φ_h Q_h Φ_hᵀ + Q_h`, `Φ_{2h} = Φ_h²`.
fn doubling_steady_state(a: &DenseMatrix<f64>, n: &DenseMatrix<f64>) -> DenseMatrix<f64> {
    let dim = a.rows();
    let h = 0.02 / a.norm_max();
    let mut rk = Rk4::new(dim * dim);
    let mut q = vec![0.0; dim * dim];
    rk.step(&mut |_t: f64, y: &[f64], dy: &mut [f64]| lyap_rhs(a, n, y, dy), 0.0, &mut q, h);
    let mut phi = vec![0.0; dim * dim];
    for col in 0..dim {
        let mut x = vec![0.0; dim];
        x[col] = 1.0;
        let mut rk1 = Rk4::new(dim);
        rk1.step(&mut |_t: f64, y: &[f64], dy: &mut [f64]| dy.copy_from_slice(&a.matvec(y)), 0.0, &mut x, h);
        for row in 0..dim {
            phi[row * dim + col] = x[row];
        }
    }
    let mut phi = DenseMatrix::new(dim, dim, phi).unwrap();
    let mut q = DenseMatrix::new(dim, dim, q).unwrap();
    for _ in 0..200 {
        let next = &phi.matmul(&q).matmul(&phi.transpose()) + &q;
        let change = (&next - &q).norm_max();
        q = next;
        phi = phi.matmul(&phi);
        if change <= 1e-15 * q.norm_max() && phi.norm_max() < 1e-30 {
            break;
        }
    }
    q
}

fn fig3(nbar: f64, g: f64) -> (DenseMatrix<f64>, DenseMatrix<f64>, f64) {
    let cm = identify_parameters(&PhysicalSetup {
        zeta0: 10.0,
        zeta_r: Some(10.0),
        fsr: 1000.0,
        gamma: 40.0,
        omega_d: 0.0,
        s: FanoSign::Minus,
    })
    .unwrap();
    let om = OptomechParams::new(&cm, 1.0, 1e-6, nbar, g, 1.0).unwrap();
    (build_drift(&cm, &om).0, build_noise(&cm, &om).0, rate_equation_occupation(&cm, &om))
}

#[test]
fn fig3_points_match_exact_flow_oracle() {
    for &(nbar, g) in &[(100.0, 0.05), (10.0, 0.3), (100.0, 1.0)] {
        let (a, n, _) = fig3(nbar, g);
        let direct = steady_covariance(&a, &n).unwrap();
        let oracle = doubling_steady_state(&a, &n);
        let rel = (direct.n_f - n_f(&oracle)).abs() / n_f(&oracle);
        assert!(rel <= 1e-6, "g={g}: {} vs {} (rel {rel:e})", direct.n_f, n_f(&oracle));
    }
}

#[test]
fn rate_picture_matches_in_weak_coupling() {
    for &g in &[1e-4, 3e-4, 1e-3] {
        let (a, n, rate) = fig3(100.0, g);
        let lyap = steady_covariance(&a, &n).unwrap().n_f;
        assert!((lyap - rate).abs() <= 1e-6 * lyap, "g={g}: {lyap} vs {rate}");
    }
    // still within 10% well beyond the calibration range
    let (a, n, rate) = fig3(100.0, 0.01);
    let lyap = steady_covariance(&a, &n).unwrap().n_f;
    assert!((lyap - rate).abs() <= 0.1 * lyap);
}

#[test]
fn ill_conditioned_fig3_points_match_extended_precision() {
    // n̄ = 10, reference n_f from a 40-digit solve of the Kronecker system;
    // the LU condition number here reaches ~2e9
    let golden = [
        (0.001, 9.0953137713791976),
        (0.0013865109906787932, 8.3948349865261417),
        (0.0036956706939815496, 4.2414397858028676),
        (0.3045496039666471, 0.0066388852812188923),
        (2.163704449635333, 0.061031862811354286),
    ];
    for (g, want) in golden {
        let (a, n, _) = fig3(10.0, g);
        let got = steady_covariance(&a, &n).unwrap().n_f;
        assert!((got - want).abs() <= 1e-9 * want, "g={g}: {got} vs {want}");
    }
}
