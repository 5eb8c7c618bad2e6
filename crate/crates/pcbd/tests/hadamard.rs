//! Hadamard generators checked against an independent integer product.

use pcbd::hadamard::{self, SignMatrix};
use pcbd::Error;

/// H·H⊤ computed with plain i64 loops, independent of the library's Gram code.
fn is_hadamard(h: &SignMatrix) -> bool {
    let n = h.rows();
    h.cols() == n
        && (0..n).all(|i| {
            (0..n).all(|j| {
                let dot: i64 = (0..n).map(|c| i64::from(h.get(i, c)) * i64::from(h.get(j, c))).sum();
                dot == if i == j { n as i64 } else { 0 }
            })
        })
}

#[test]
fn required_orders_satisfy_hht_eq_n_i() {
    for n in [1, 2, 4, 8, 12, 16, 20, 24, 28, 32, 64] {
        let h = hadamard::lookup(n).unwrap_or_else(|e| panic!("order {n}: {e}"));
        assert_eq!(h.rows(), n);
        assert!(is_hadamard(&h), "order {n}");
        assert!(hadamard::verify(&h).unwrap());
    }
}

#[test]
fn doubled_twelve_is_order_24() {
    let h = hadamard::double(&hadamard::plackett_burman(12).unwrap());
    assert_eq!(h.rows(), 24);
    assert!(is_hadamard(&h));
}

#[test]
fn every_listed_order_is_hadamard() {
    for n in hadamard::available_orders(64) {
        assert!(is_hadamard(&hadamard::known(n).unwrap()), "order {n}");
    }
}

#[test]
fn normalization_keeps_hadamard_property() {
    for n in [12, 20, 28] {
        let h = hadamard::normalize(&hadamard::lookup(n).unwrap()).unwrap();
        assert!(h.is_normalized());
        assert!(is_hadamard(&h));
    }
}

#[test]
fn sylvester_entries_follow_popcount() {
    let h = hadamard::sylvester(4).unwrap();
    for i in 0..16usize {
        for j in 0..16 {
            let expected = if (i & j).count_ones().is_multiple_of(2) { 1 } else { -1 };
            assert_eq!(h.get(i, j), expected);
        }
    }
}

#[test]
fn unsupported_orders() {
    for n in [3, 6, 10, 22] {
        let e = hadamard::lookup(n).unwrap_err();
        assert!(matches!(e, Error::UnsupportedOrder { .. }), "order {n}");
        assert_eq!(e.exit_code(), 3);
    }
}

#[test]
fn rejects_non_hadamard_input() {
    let h = hadamard::parse_csv("1,1\n1,1\n").unwrap();
    assert!(!hadamard::verify(&h).unwrap());
    assert!(matches!(hadamard::certify(&h), Err(Error::NotHadamard(_))));
    assert!(hadamard::parse_csv("1,0\n1,-1\n").is_err());
    assert!(matches!(hadamard::verify(&hadamard::parse_csv("1,1,1\n1,-1,1\n").unwrap()), Err(Error::Shape(_))));
}

#[test]
fn csv_round_trip() {
    let h = hadamard::lookup(20).unwrap();
    assert_eq!(hadamard::parse_csv(&hadamard::to_csv(&h)).unwrap(), h);
}
