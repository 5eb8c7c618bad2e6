//! Exhaustive oracle: agreement with a naive enumerator, symmetry reduction,
//! budgets, and optimality of the small constructed designs.

use nalgebra::DMatrix;
use pcbd::constructions::{construct, MethodParams};
use pcbd::design_core::{BlockLayout, DesignClassDescriptor};
use pcbd::info_matrix::{Criterion, CriterionValue};
use pcbd::optimality::{brute_force_best, compare_to_oracle, OracleBudget, Optimality};
use pcbd::rational::int;
use pcbd::Error;

/// Float det M over all raw ±2 designs, by brute force without any reduction.
fn naive_max_det(n: usize, k: usize, sizes: &[usize]) -> f64 {
    let block: Vec<usize> = sizes.iter().enumerate().flat_map(|(b, &m)| std::iter::repeat_n(b, m)).collect();
    let z = DMatrix::from_fn(n, sizes.len(), |r, c| if block[r] == c { 1.0 } else { 0.0 });
    let p = DMatrix::<f64>::identity(n, n) - &z * (z.transpose() * &z).try_inverse().unwrap() * z.transpose();
    let mut best = f64::NEG_INFINITY;
    for bits in 0u64..(1 << (n * k)) {
        let f = DMatrix::from_fn(n, k, |r, c| if bits >> (r * k + c) & 1 == 1 { 2.0 } else { -2.0 });
        let m = f.transpose() * &p * &f / 4.0;
        best = best.max(m.determinant());
    }
    best
}

fn best(n: usize, k: usize, sizes: &[usize], c: Criterion, budget: &OracleBudget) -> CriterionValue {
    let layout = BlockLayout::new(sizes.to_vec()).unwrap();
    brute_force_best(&DesignClassDescriptor::new(n, k, &layout), &layout, c, budget).unwrap().optimum
}

#[test]
fn d_optimum_agrees_with_naive_enumeration() {
    for (n, k, sizes) in [(4, 1, vec![2, 2]), (4, 2, vec![2, 2]), (6, 2, vec![2, 2, 2]), (5, 2, vec![2, 3])] {
        let v = best(n, k, &sizes, Criterion::D, &OracleBudget::default());
        let naive = naive_max_det(n, k, &sizes);
        assert!((v.to_f64() - naive).abs() < 1e-9, "N={n} K={k}: {} vs {naive}", v.to_f64());
    }
}

#[test]
fn symmetry_reduction_preserves_the_optimum() {
    let off = OracleBudget { symmetry_reduction: false, ..OracleBudget::default() };
    for c in Criterion::ALL {
        assert_eq!(
            best(6, 2, &[2, 2, 2], c, &OracleBudget::default()),
            best(6, 2, &[2, 2, 2], c, &off),
            "{c}"
        );
    }
}

#[test]
fn zero_entries_do_not_improve_the_optimum() {
    let with_zero = OracleBudget { include_zero: true, ..OracleBudget::default() };
    for c in [Criterion::D, Criterion::E, Criterion::Trace] {
        let a = best(4, 2, &[2, 2], c, &OracleBudget::default());
        let b = best(4, 2, &[2, 2], c, &with_zero);
        assert!((a.to_f64() - b.to_f64()).abs() < 1e-12, "{c}");
    }
}

#[test]
fn single_attribute_e_optimum_is_n() {
    let v = best(4, 1, &[2, 2], Criterion::E, &OracleBudget::default());
    assert_eq!(v.exact(), Some(&int(4)));
}

#[test]
fn witness_attains_the_optimum() {
    let layout = BlockLayout::new(vec![4, 4]).unwrap();
    let class = DesignClassDescriptor::new(8, 2, &layout);
    let res = brute_force_best(&class, &layout, Criterion::D, &OracleBudget::default()).unwrap();
    let v = compare_to_oracle(&res.witness, Criterion::D, &OracleBudget::default()).unwrap();
    assert_eq!(v.status, Optimality::Optimal);
    assert_eq!(v.design_value, res.optimum);
}

#[test]
fn method1_family_is_optimal_in_small_classes() {
    let budget = OracleBudget { max_candidates: 1 << 16, ..OracleBudget::default() };
    let designs = [
        construct(&MethodParams::new(1).n(6).k(2).b(3)).unwrap(),
        construct(&MethodParams::new(9).k(2).groups(&[(2, 4)])).unwrap(),
    ];
    for d in &designs {
        for c in [Criterion::D, Criterion::E] {
            let v = compare_to_oracle(d, c, &budget).unwrap();
            assert_eq!(v.status, Optimality::Optimal, "N={} {c}", d.n());
            assert!(v.candidates <= 1 << 16);
        }
    }
}

#[test]
fn budget_refusal_reports_the_count() {
    let layout = BlockLayout::new(vec![20]).unwrap();
    let class = DesignClassDescriptor::new(20, 6, &layout);
    let e = brute_force_best(&class, &layout, Criterion::D, &OracleBudget::default()).unwrap_err();
    match &e {
        Error::Budget { required, budget } => {
            assert!(required.len() > 10);
            assert_eq!(*budget, OracleBudget::default().max_candidates);
        }
        other => panic!("unexpected {other}"),
    }
    assert_eq!(e.exit_code(), 4);
}

#[test]
fn layout_must_sum_to_n() {
    let layout = BlockLayout::new(vec![2, 2]).unwrap();
    let class = DesignClassDescriptor::new(6, 2, &layout);
    assert!(brute_force_best(&class, &layout, Criterion::D, &OracleBudget::default()).is_err());
}
