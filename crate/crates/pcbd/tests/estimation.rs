//! Estimation harness: exact recovery, block-effect invariance, orthogonality
//! payoff and Monte Carlo covariance.

use pcbd::constructions::{construct, MethodParams};
use pcbd::design_core::{BlockLayout, BlockedDesign, DifferenceMatrix};
use pcbd::estimation::{estimate, estimate_exact, exact_response, monte_carlo, orthogonality_payoff, simulate, ModelParams};
use pcbd::rational::{int, rat, Rational};
use pcbd::Error;

fn m1() -> BlockedDesign {
    construct(&MethodParams::new(1).n(18).k(6).b(9)).unwrap()
}

fn m6() -> BlockedDesign {
    construct(&MethodParams::new(6).n(24).k(6)).unwrap()
}

#[test]
fn noiseless_recovery_is_exact_for_any_block_effects() {
    let beta: Vec<Rational> = [3, -1, 2, 0, 5, -7].iter().map(|&v| rat(v, 3)).collect();
    for d in [m1(), m6()] {
        for g in 0..4i64 {
            let gamma: Vec<Rational> = (0..d.layout().blocks() as i64).map(|b| int((b * 7 + g * 13) % 11 - 5)).collect();
            let y = exact_response(&d, &beta, &gamma).unwrap();
            assert_eq!(estimate_exact(&d, &y).unwrap(), beta, "N={}", d.n());
        }
    }
}

#[test]
fn sigma_zero_simulation_equals_mean() {
    let d = m1();
    let p = ModelParams { beta: vec![1.0, -2.0, 0.5, 0.0, 3.0, 1.5], gamma: vec![4.0; 9], sigma: 0.0, seed: 1 };
    let y = simulate(&d, &p).unwrap();
    let blocks = d.layout().block_of_rows();
    for (r, yr) in y.iter().enumerate() {
        let fb: f64 = (0..6).map(|c| f64::from(d.f().get(r, c)) * p.beta[c]).sum();
        assert!((yr - fb - p.gamma[blocks[r]]).abs() < 1e-12);
    }
    let est = estimate(&d, &y).unwrap();
    for (a, b) in est.beta_hat.iter().zip(&p.beta) {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn block_shift_leaves_estimate_unchanged() {
    let d = m6();
    let p = ModelParams { beta: vec![0.3; 6], gamma: vec![0.0; d.layout().blocks()], sigma: 1.0, seed: 9 };
    let y = simulate(&d, &p).unwrap();
    let blocks = d.layout().block_of_rows();
    let shifted: Vec<f64> = y.iter().enumerate().map(|(r, v)| v + 10.0 * (blocks[r] as f64 + 1.0)).collect();
    let a = estimate(&d, &y).unwrap().beta_hat;
    let b = estimate(&d, &shifted).unwrap().beta_hat;
    for (x, z) in a.iter().zip(&b) {
        assert!((x - z).abs() < 1e-9);
    }
}

#[test]
fn same_seed_gives_identical_responses() {
    let d = m1();
    let p = ModelParams { beta: vec![1.0; 6], gamma: vec![0.0; 9], sigma: 2.0, seed: 42 };
    assert_eq!(simulate(&d, &p).unwrap(), simulate(&d, &p).unwrap());
    let q = ModelParams { seed: 43, ..p.clone() };
    assert_ne!(simulate(&d, &p).unwrap(), simulate(&d, &q).unwrap());
}

#[test]
fn dimension_errors() {
    let d = m1();
    assert!(matches!(estimate(&d, &[0.0; 17]), Err(Error::Shape(_))));
    let p = ModelParams { beta: vec![1.0; 5], gamma: vec![0.0; 9], sigma: 1.0, seed: 0 };
    assert!(simulate(&d, &p).is_err());
    let p = ModelParams { beta: vec![1.0; 6], gamma: vec![0.0; 8], sigma: 1.0, seed: 0 };
    assert!(simulate(&d, &p).is_err());
}

#[test]
fn singular_design_is_rejected() {
    // Constant column inside one block: M has a zero row.
    let f = DifferenceMatrix::from_rows(&[vec![2, 2], vec![2, -2]]).unwrap();
    let d = BlockedDesign::plain(f, BlockLayout::new(vec![2]).unwrap()).unwrap();
    assert!(matches!(estimate(&d, &[1.0, 0.0]), Err(Error::Singular(_))));
}

#[test]
fn orthogonality_payoff_distinguishes_methods() {
    assert!(orthogonality_payoff(&m6()).unwrap().identical_estimators);
    let m4 = construct(&MethodParams::new(4).n(18).k(8).k1(2).b(3)).unwrap();
    let r = orthogonality_payoff(&m4).unwrap();
    assert!(!r.orthogonally_blocked);
    assert!(!r.identical_estimators);
    assert!(r.max_difference > int(0));
    let f = DifferenceMatrix::from_rows(&[vec![2], vec![-2], vec![2], vec![-2]]).unwrap();
    let k1 = BlockedDesign::plain(f, BlockLayout::new(vec![2, 2]).unwrap()).unwrap();
    assert!(orthogonality_payoff(&k1).unwrap().identical_estimators);
}

#[test]
fn monte_carlo_covariance_matches_target() {
    let d = m1();
    let p = ModelParams { beta: vec![1.0, 0.0, -1.0, 0.5, 2.0, 0.0], gamma: vec![1.0; 9], sigma: 1.0, seed: 2024 };
    let r = monte_carlo(&d, &p, 10_000).unwrap();
    assert!(r.relative_frobenius_error < 0.05, "error {}", r.relative_frobenius_error);
    // M = 16I + 2J, so M⁻¹ = (I − J/14)/16 and the target is σ²·M⁻¹/4.
    for i in 0..6 {
        for j in 0..6 {
            let m_inv = (if i == j { 1.0 } else { 0.0 } - 1.0 / 14.0) / 16.0;
            assert!((r.target_cov[i][j] - m_inv / 4.0).abs() < 1e-12);
        }
    }
}

#[test]
fn covariance_scales_with_sigma_squared() {
    let d = m1();
    let p = ModelParams { beta: vec![0.0; 6], gamma: vec![0.0; 9], sigma: 1.0, seed: 5 };
    let a = monte_carlo(&d, &p, 4000).unwrap();
    let b = monte_carlo(&d, &ModelParams { sigma: 2.0, ..p }, 4000).unwrap();
    let tr = |c: &Vec<Vec<f64>>| (0..6).map(|i| c[i][i]).sum::<f64>();
    let ratio = tr(&b.empirical_cov) / tr(&a.empirical_cov);
    // Same seed and streams: the noise is exactly doubled.
    assert!((ratio - 4.0).abs() < 1e-9, "ratio {ratio}");
}
