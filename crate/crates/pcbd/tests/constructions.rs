//! Every construction method at its catalog parameters: structure, claims,
//! orthogonality and class validation.

use nalgebra::DMatrix;
use pcbd::constructions::{catalog, construct, MethodParams};
use pcbd::design_core::BlockedDesign;
use pcbd::info_matrix::{compute_info, eigenvalues, ij_eigenvalues, is_orthogonally_blocked, Eigenvalues, MatchStatus};
use pcbd::optimality::certify;
use pcbd::rational::int;
use pcbd::Error;

/// Independent floating-point M: ¼ F⊤(I − Z(Z⊤Z)⁻¹Z⊤)F.
fn float_info(d: &BlockedDesign) -> DMatrix<f64> {
    let n = d.n();
    let f = DMatrix::from_fn(n, d.k(), |r, c| f64::from(d.f().get(r, c)));
    let blocks = d.layout().block_of_rows();
    let b = d.layout().blocks();
    let z = DMatrix::from_fn(n, b, |r, c| if blocks[r] == c { 1.0 } else { 0.0 });
    let ztz_inv = (z.transpose() * &z).try_inverse().expect("Z⊤Z invertible");
    let p = DMatrix::<f64>::identity(n, n) - &z * ztz_inv * z.transpose();
    f.transpose() * p * f / 4.0
}

fn build(p: &MethodParams) -> BlockedDesign {
    construct(p).unwrap_or_else(|e| panic!("method {}: {e}", p.method))
}

#[test]
fn catalog_covers_all_methods() {
    let ids: Vec<u8> = catalog().iter().map(|m| m.id).collect();
    assert_eq!(ids, (1..=27).collect::<Vec<_>>());
}

#[test]
fn examples_are_valid_designs_with_correct_m() {
    for e in catalog() {
        let d = build(&e.example);
        assert_eq!(d.layout().total(), d.n(), "method {}", e.id);
        assert!(d.f().data().iter().all(|&v| v == 2 || v == -2), "method {} has non-±2 entries", e.id);
        let exact = compute_info(&d).to_f64();
        let oracle = float_info(&d);
        assert!((exact - oracle).abs().max() < 1e-9, "method {} M disagrees with projector form", e.id);
        assert_eq!(d.provenance().method, Some(e.id));
        assert!(d.provenance().claim.is_some(), "method {} lacks a claim", e.id);
    }
}

#[test]
fn closed_forms_match_exactly() {
    let exact = [1u8, 2, 3, 5, 6, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 22, 24, 25, 26, 27];
    for e in catalog().into_iter().filter(|e| exact.contains(&e.id)) {
        let c = certify(&build(&e.example));
        let form = c.form_check.expect("form check");
        assert_eq!(form.status, MatchStatus::ExactMatch, "method {}", e.id);
    }
}

#[test]
fn archived_methods_report_match_or_discrepancy() {
    for e in catalog().into_iter().filter(|e| [4u8, 7, 19, 20, 21].contains(&e.id)) {
        let c = certify(&build(&e.example));
        let form = c.form_check.expect("form check");
        match form.status {
            MatchStatus::ExactMatch => {}
            MatchStatus::Mismatch => assert!(form.difference.is_some(), "method {} lacks a difference", e.id),
            MatchStatus::WithinBound => panic!("closed form comparison must be exact"),
        }
    }
}

#[test]
fn method23_closed_form_is_unattainable() {
    // The Hadamard core of order N/2 makes the off-diagonal entries of M differ from 2.
    let c = certify(&build(&MethodParams::new(23).n(10).k(4).k1(3).b(5)));
    assert_eq!(c.form_check.unwrap().status, MatchStatus::Mismatch);
}

#[test]
fn method3_eigenvalues() {
    let d = build(&MethodParams::new(3).n(18).k(6).b(3));
    let f = compute_info(&d).as_ij().expect("I+J form");
    let mut expected = vec![int(16); 5];
    expected.push(int(28));
    assert_eq!(ij_eigenvalues(&f, 6), expected);
    assert_eq!(eigenvalues(&compute_info(&d)), Eigenvalues::Exact { values: expected });
}

#[test]
fn method14_all_eigenvalues_eight() {
    let d = build(&MethodParams::new(14).m(3).k(4));
    let f = compute_info(&d).as_ij().expect("I+J form");
    assert_eq!(ij_eigenvalues(&f, 4), vec![int(8); 4]);
}

#[test]
fn method22_smallest_instance_eigenvalues() {
    // b=3, m=3, K=4: M = (N−1)I + (1 − b/m)J = 8I.
    let d = build(&MethodParams::new(22).n(9).k(4).b(3));
    let f = compute_info(&d).as_ij().expect("I+J form");
    assert_eq!(ij_eigenvalues(&f, 4), vec![int(8); 4]);
}

#[test]
fn orthogonality_claims() {
    for (id, p) in [
        (1, MethodParams::new(1).n(6).k(2).b(3)),
        (2, MethodParams::new(2).n(30).k(6).b(5)),
        (3, MethodParams::new(3).n(18).k(6).b(3)),
        (6, MethodParams::new(6).n(24).k(6)),
        (11, MethodParams::new(11).n(10).k(4).sizes(&[4, 6])),
        (12, MethodParams::new(12).n(14).k(4).sizes(&[4, 4, 6])),
        (13, MethodParams::new(13).n(10).k(3).sizes(&[4, 6])),
        (19, MethodParams::new(19).n(30).k(6).b(5)),
    ] {
        assert!(is_orthogonally_blocked(&build(&p)), "method {id}");
    }
    assert!(!is_orthogonally_blocked(&build(&MethodParams::new(4).n(18).k(8).k1(2).b(3))));
}

#[test]
fn method10_is_not_orthogonally_blocked() {
    // Recorded discrepancy: the closed form holds but the block sums do not vanish.
    let c = certify(&build(&MethodParams::new(10).p(8).m1(2).i(1).k(4)));
    assert_eq!(c.form_check.unwrap().status, MatchStatus::ExactMatch);
    assert!(!c.orthogonally_blocked);
    assert_eq!(c.orthogonality_check, Some(MatchStatus::Mismatch));
}

#[test]
fn class_violations_are_rejected() {
    let e = construct(&MethodParams::new(1).n(16).k(6).b(8)).unwrap_err();
    assert!(matches!(e, Error::Class(_)));
    assert!(e.to_string().contains("N ≡ 2 (mod 4)"), "{e}");
    assert!(matches!(construct(&MethodParams::new(1).n(18).k(9).b(9)), Err(Error::Class(_))));
    assert!(matches!(construct(&MethodParams::new(22).n(15).k(4).b(3)), Err(Error::Class(_))));
    assert!(matches!(construct(&MethodParams::new(28).n(6).k(2)), Err(Error::Parameter(_))));
    assert!(construct(&MethodParams::new(1).k(2).b(3)).is_err());
}

#[test]
fn unsupported_hadamard_order_is_reported() {
    // N/2 − 1 = 22 has no Hadamard matrix in the registry.
    let e = construct(&MethodParams::new(1).n(46).k(4).b(23)).unwrap_err();
    assert_eq!(e.exit_code(), 3, "{e}");
}

#[test]
fn file_round_trip_preserves_design() {
    for e in catalog() {
        let d = build(&e.example);
        let csv = BlockedDesign::from_csv(&d.to_csv()).unwrap();
        assert_eq!(csv.f(), d.f(), "method {} csv", e.id);
        assert_eq!(csv.layout(), d.layout());
        let json = BlockedDesign::from_json(&d.to_json().to_string()).unwrap();
        assert_eq!(json.f(), d.f(), "method {} json", e.id);
        assert_eq!(json.provenance(), d.provenance());
        assert_eq!(certify(&json), certify(&d));
    }
}
