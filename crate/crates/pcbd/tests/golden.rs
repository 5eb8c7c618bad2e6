//! Level-pair tables of the worked examples, compared after whitespace normalization.

use std::time::{Duration, Instant};

use pcbd::constructions::{construct, MethodParams};

fn normalize(s: &str) -> String {
    s.lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join("\n")
}

fn check(params: MethodParams, transposed: bool, golden: &str) {
    let start = Instant::now();
    let d = construct(&params).expect("construct");
    let text = if transposed { d.to_pairs_transposed() } else { d.to_pairs() }.expect("render");
    assert!(start.elapsed() < Duration::from_secs(1), "construction too slow");
    assert_eq!(normalize(&text), normalize(golden), "table mismatch for method {}", params.method);
}

#[test]
fn method1_n18_k6_b9() {
    check(MethodParams::new(1).n(18).k(6).b(9), false, include_str!("golden/method01_n18_k6_b9.txt"));
}

#[test]
fn method2_n30_k6_b3() {
    check(MethodParams::new(2).n(30).k(6).b(3), false, include_str!("golden/method02_n30_k6_b3.txt"));
}

#[test]
fn method4_n18_k8_k1_2_b3() {
    check(MethodParams::new(4).n(18).k(8).k1(2).b(3), false, include_str!("golden/method04_n18_k8_k1_2_b3.txt"));
}

#[test]
fn method5_n12_k4_b4_transposed() {
    check(MethodParams::new(5).n(12).k(4).b(4), true, include_str!("golden/method05_n12_k4_b4_transposed.txt"));
}

#[test]
fn method6_n24_k6() {
    check(MethodParams::new(6).n(24).k(6), false, include_str!("golden/method06_n24_k6.txt"));
}

#[test]
fn method11_n26_k6() {
    check(
        MethodParams::new(11).n(26).k(6).sizes(&[4, 4, 4, 4, 4, 6]),
        false,
        include_str!("golden/method11_n26_k6.txt"),
    );
}

#[test]
fn method16_n17_k4_transposed() {
    check(
        MethodParams::new(16).n(17).k(4).sizes(&[3, 4, 4, 6]),
        true,
        include_str!("golden/method16_n17_k4_transposed.txt"),
    );
}

#[test]
fn pairs_rows_are_complementary_levels() {
    let d = construct(&MethodParams::new(1).n(18).k(6).b(9)).unwrap();
    for line in d.to_pairs().unwrap().lines() {
        for cell in line.split_whitespace() {
            assert!(cell == "(1,2)" || cell == "(2,1)", "unexpected cell {cell}");
        }
    }
}
