//! Randomized properties of M, criterion values and estimation.

use nalgebra::DMatrix;
use pcbd::design_core::{BlockLayout, BlockedDesign, DifferenceMatrix};
use pcbd::estimation::{estimate_exact, exact_response};
use pcbd::info_matrix::{compute_info, evaluate, Criterion, InfoMatrix};
use pcbd::rational::{int, to_f64, Rational};
use proptest::prelude::*;

/// Random ±2 design: N rows, K columns, block sizes summing to N.
fn design() -> impl Strategy<Value = BlockedDesign> {
    (1usize..4, 1usize..5, 1usize..4).prop_flat_map(|(k, b, m)| {
        let sizes = proptest::collection::vec(1usize..=m + 1, b);
        (Just(k), sizes).prop_flat_map(|(k, sizes)| {
            let n: usize = sizes.iter().sum();
            proptest::collection::vec(any::<bool>(), n * k).prop_map(move |bits| {
                let rows: Vec<Vec<i8>> =
                    bits.chunks(k).map(|r| r.iter().map(|&x| if x { 2 } else { -2 }).collect()).collect();
                BlockedDesign::plain(DifferenceMatrix::from_rows(&rows).unwrap(), BlockLayout::new(sizes.clone()).unwrap())
                    .unwrap()
            })
        })
    })
}

fn rebuild(d: &BlockedDesign, rows: Vec<Vec<i8>>, sizes: Vec<usize>) -> BlockedDesign {
    BlockedDesign::plain(DifferenceMatrix::from_rows(&rows).unwrap(), BlockLayout::new(sizes).unwrap()).unwrap_or_else(|_| d.clone())
}

fn nonsingular(m: &InfoMatrix) -> bool {
    m.det() != int(0)
}

proptest! {
    #[test]
    fn m_is_symmetric_psd_and_bounded(d in design()) {
        let m = compute_info(&d);
        let k = d.k();
        for i in 0..k {
            prop_assert!(m.get(i, i) <= &int(d.n() as i64));
            for j in 0..k {
                prop_assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
        let eig = m.to_f64().symmetric_eigen();
        prop_assert!(eig.eigenvalues.iter().all(|&v| v > -1e-9));
    }

    #[test]
    fn m_matches_projector_form(d in design()) {
        let n = d.n();
        let f = DMatrix::from_fn(n, d.k(), |r, c| f64::from(d.f().get(r, c)));
        let blk = d.layout().block_of_rows();
        let z = DMatrix::from_fn(n, d.layout().blocks(), |r, c| if blk[r] == c { 1.0 } else { 0.0 });
        let p = DMatrix::<f64>::identity(n, n) - &z * (z.transpose() * &z).try_inverse().unwrap() * z.transpose();
        let direct = f.transpose() * p * f / 4.0;
        prop_assert!((compute_info(&d).to_f64() - direct).abs().max() < 1e-9);
    }

    #[test]
    fn m_invariant_under_row_and_block_permutation(d in design(), seed in any::<u64>()) {
        let ranges = d.layout().ranges();
        let mut order: Vec<usize> = (0..ranges.len()).collect();
        order.rotate_left(seed as usize % ranges.len().max(1));
        let mut rows = Vec::new();
        let mut sizes = Vec::new();
        for &b in &order {
            let mut block: Vec<Vec<i8>> = ranges[b].clone().map(|r| d.f().row(r).to_vec()).collect();
            block.reverse();
            sizes.push(block.len());
            rows.extend(block);
        }
        let e = rebuild(&d, rows, sizes);
        prop_assert_eq!(compute_info(&d), compute_info(&e));
    }

    #[test]
    fn column_negation_flips_signs(d in design(), c in 0usize..3) {
        let c = c % d.k();
        let e = BlockedDesign::plain(d.f().negate_column(c), d.layout().clone()).unwrap();
        let (m, n) = (compute_info(&d), compute_info(&e));
        for i in 0..d.k() {
            for j in 0..d.k() {
                let s = if (i == c) != (j == c) { -m.get(i, j) } else { m.get(i, j).clone() };
                prop_assert_eq!(n.get(i, j), &s);
            }
        }
        for crit in [Criterion::D, Criterion::Trace, Criterion::E] {
            match (evaluate(&m, crit), evaluate(&n, crit)) {
                (Ok(a), Ok(b)) => prop_assert!((a.to_f64() - b.to_f64()).abs() <= 1e-9 * (1.0 + a.to_f64().abs())),
                (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
            }
        }
    }

    #[test]
    fn column_permutation_preserves_criteria(d in design()) {
        let k = d.k();
        let idx: Vec<usize> = (0..k).rev().collect();
        let e = BlockedDesign::plain(d.f().select_columns(&idx).unwrap(), d.layout().clone()).unwrap();
        let (m, n) = (compute_info(&d), compute_info(&e));
        for crit in Criterion::ALL {
            match (evaluate(&m, crit), evaluate(&n, crit)) {
                (Ok(a), Ok(b)) => prop_assert!((a.to_f64() - b.to_f64()).abs() <= 1e-9 * (1.0 + a.to_f64().abs())),
                (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
            }
        }
    }

    #[test]
    fn noiseless_estimation_recovers_beta(
        d in design(),
        beta in proptest::collection::vec(-5i64..5, 3),
        gamma in proptest::collection::vec(-9i64..9, 4),
    ) {
        prop_assume!(nonsingular(&compute_info(&d)));
        let beta: Vec<Rational> = beta[..d.k()].iter().map(|&v| int(v)).collect();
        let gamma: Vec<Rational> = gamma[..d.layout().blocks()].iter().map(|&v| int(v)).collect();
        let y = exact_response(&d, &beta, &gamma).unwrap();
        prop_assert_eq!(estimate_exact(&d, &y).unwrap(), beta);
    }

    #[test]
    fn trace_equals_sum_of_diagonal(d in design()) {
        let m = compute_info(&d);
        let s: f64 = (0..d.k()).map(|i| to_f64(m.get(i, i))).sum();
        prop_assert!((to_f64(&m.trace()) - s).abs() < 1e-12);
    }
}
