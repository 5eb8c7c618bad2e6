//! Methods 23–27: mixed even/odd block sizes with M = αI + (c − δ)J.

use serde_json::json;

use super::{
    columns_from, const_row, first_columns, finish, hadamard_of, r, require, rows_of, rq, scaled_rows,
    Assembler, ClaimCriterion as C, ClaimForm, MethodParams, OptimalityClaim,
};
use crate::design_core::{BlockedDesign, DifferenceMatrix};
use crate::error::{Error, Result};
use crate::hadamard::{self, SignMatrix};
use crate::rational::zero;

/// Method 23.
pub(crate) fn method23(p: &MethodParams) -> Result<BlockedDesign> {
    let n = p.req_n()?;
    require(n % 4 == 2 && n >= 6, || format!("N ≡ 2 (mod 4) required, got N={n}"))?;
    let k = n / 2 - 1;
    if let Some(given) = p.k {
        require(given == k, || format!("K = N/2 − 1 = {k} required, got K={given}"))?;
    }
    let k1 = p.k1.ok_or_else(|| Error::Parameter("method 23 requires --k1".into()))?;
    require(k1 >= 1 && k1 < k, || format!("1 ≤ K₁ < K required so that K₂ ≥ 1, got K₁={k1}, K={k}"))?;
    let h = first_columns(&hadamard_of(k)?, k, &format!("H_{k}"))?;
    let mut rows = rows_of(&DifferenceMatrix::kron_av(&h));
    rows.push(const_row(k, 2));
    rows.push((0..k).map(|c| if c < k1 { 2 } else { -2 }).collect());
    let sizes = p.sizes_or_b(n)?;
    let mut asm = Assembler::new();
    asm.blocks_from(rows, &sizes)?;
    let claim = OptimalityClaim::new(&[C::E], ClaimForm::ij(r(n - 2), r(2)), "M = (N−2)I + 2J; E-optimal");
    finish(p, asm, claim, vec![("k", json!(k)), ("k2", json!(k - k1))], vec![])
}

/// Core of H_order: first row and column deleted.
fn core(order: usize) -> Result<SignMatrix> {
    let h = hadamard_of(order)?;
    let rows: Vec<usize> = (1..order).collect();
    let cols: Vec<usize> = (1..order).collect();
    hadamard::select_columns(&h.select_rows(&rows), &cols)
}

/// Block sizes ordered even, then ≡3 (mod 4), then ≡1 (mod 4).
fn arrange(sizes: &[usize]) -> Vec<usize> {
    let class = |s: &usize| match s % 4 {
        0 | 2 => 0,
        3 => 1,
        _ => 2,
    };
    let mut v = sizes.to_vec();
    v.sort_by_key(class);
    v
}

/// Even blocks beyond the first: [H_4t; J] ⊗ A_v with 8t + ℓ rows.
fn even_part(sum: usize, k: usize) -> Result<(Vec<Vec<i8>>, usize, usize)> {
    let (t, ell) = (sum / 8, sum % 8);
    let mut rows: Vec<Vec<i8>> = Vec::with_capacity(sum);
    if t > 0 {
        let h = first_columns(&hadamard_of(4 * t)?, k, &format!("H_{}", 4 * t))?;
        rows.extend(rows_of(&DifferenceMatrix::kron_av(&h)));
    }
    for _ in 0..ell / 2 {
        rows.push(const_row(k, 2));
        rows.push(const_row(k, -2));
    }
    Ok((rows, t, ell))
}

/// Methods 24–27.
pub(crate) fn method24_27(p: &MethodParams) -> Result<BlockedDesign> {
    let method = p.method;
    let k = p.req_k()?;
    let given = p.sizes.clone().ok_or_else(|| Error::Parameter(format!("method {method} requires --sizes")))?;
    require(given.iter().all(|&s| s >= 2), || format!("block sizes must be ≥ 2, got {given:?}"))?;
    let sizes = arrange(&given);
    let n: usize = sizes.iter().sum();
    if let Some(nn) = p.n {
        require(nn == n, || format!("block sizes {given:?} sum to {n}, not N={nn}"))?;
    }
    let (residue, excess) = if method == 24 || method == 25 { (2, 2) } else { (1, 1) };
    require(n % 4 == residue, || format!("N ≡ {residue} (mod 4) required, got N={n}"))?;
    require(k >= 3, || format!("K ≥ 3 required, got K={k}"))?;
    let evens: Vec<usize> = sizes.iter().copied().filter(|s| s % 2 == 0).collect();
    let y_sizes: Vec<usize> = sizes.iter().copied().filter(|s| s % 4 == 3).collect();
    let z_sizes: Vec<usize> = sizes.iter().copied().filter(|s| s % 4 == 1).collect();
    let (y, z) = (y_sizes.len(), z_sizes.len());

    let mut rows: Vec<Vec<i8>> = Vec::with_capacity(n);
    let mut derived = Vec::new();
    let (rest_from, ell_total);
    if method == 24 || method == 26 {
        let t1 = p.t1.unwrap_or(0);
        if t1 > 0 {
            require(evens.len() >= 2 && evens[0] == 2 * t1 && evens[1] == 2 * t1, || {
                format!("t₁={t1} requires the first two even blocks to have size 2t₁={}", 2 * t1)
            })?;
            let (sorted, n_plus) = hadamard::split_by_column(&hadamard_of(4 * t1)?, 1);
            debug_assert_eq!(n_plus, 2 * t1);
            let l = columns_from(&sorted, 2, k, &format!("H_{} without its first two columns", 4 * t1))?;
            rows.extend(scaled_rows(&l));
            rest_from = 2;
        } else {
            rest_from = 0;
        }
        let (l1, t, ell) = even_part(evens[rest_from..].iter().sum(), k)?;
        rows.extend(l1);
        ell_total = ell;
        derived.extend([("t1", json!(t1)), ("t", json!(t)), ("ell", json!(ell))]);
    } else {
        require(!evens.is_empty(), || "the first block must be even".to_string())?;
        let m1 = evens[0];
        let t1 = p.t1.unwrap_or(m1 / 4);
        require(4 * t1 <= m1 && m1 - 4 * t1 < 8, || format!("m₁ = 4t₁ + ℓ₁ with 0 ≤ ℓ₁ < 8 required, got m₁={m1}, t₁={t1}"))?;
        let ell1 = m1 - 4 * t1;
        if t1 > 0 {
            let h = hadamard_of(4 * t1)?;
            let l = columns_from(&h, 1, k, &format!("H_{} without its first column", 4 * t1))?;
            rows.extend(scaled_rows(&l));
        }
        if t1 > 0 {
            rows.extend((0..ell1 / 2).map(|_| const_row(k, 2)));
            rows.extend((0..ell1 / 2).map(|_| const_row(k, -2)));
        } else {
            rows.extend((0..ell1 / 2).flat_map(|_| [const_row(k, 2), const_row(k, -2)]));
        }
        rest_from = 1;
        let (l1, t, ell2) = even_part(evens[rest_from..].iter().sum(), k)?;
        rows.extend(l1);
        ell_total = ell1 + ell2;
        derived.extend([("t1", json!(t1)), ("ell1", json!(ell1)), ("t", json!(t)), ("ell2", json!(ell2))]);
    }
    let congruence = (ell_total + 3 * y + z) % 4;
    require(congruence == residue, || {
        format!("ℓ + 3y + z ≡ {residue} (mod 4) violated: ℓ={ell_total}, y={y}, z={z}")
    })?;
    require(ell_total + z == y + excess, || {
        format!("ℓ + z = y + {excess} violated: ℓ={ell_total}, y={y}, z={z}")
    })?;
    for &m in &y_sizes {
        let c = first_columns(&core(m + 1)?, k, &format!("core of H_{}", m + 1))?;
        rows.extend(scaled_rows(&c));
    }
    for &m in &z_sizes {
        require(m >= 5, || format!("blocks ≡ 1 (mod 4) need size ≥ 5, got {m}"))?;
        let c = first_columns(&core(m - 1)?, k, &format!("core of H_{}", m - 1))?;
        rows.push(const_row(k, 2));
        rows.extend(scaled_rows(&c));
        rows.push(const_row(k, 2));
    }
    let mut asm = Assembler::new();
    asm.blocks_from(rows, &sizes)?;
    let delta = sizes.iter().filter(|s| *s % 2 == 1).fold(zero(), |acc, &s| acc + rq(1, s));
    derived.push(("delta", json!(crate::rational::fmt(&delta))));
    let mut notes = Vec::new();
    if sizes != given {
        notes.push(format!("block sizes reordered to {sizes:?} (even, then ≡3, then ≡1 mod 4)"));
    }
    let claim = if excess == 2 {
        OptimalityClaim::new(
            &[C::D],
            ClaimForm::IjDelta { alpha: r(n - 2), base: r(2), delta_min: Some(r(1)), delta_max: Some(r(2)) },
            "M = (N−2)I + (2−δ)J with 1 < δ < 2; D-optimal",
        )
    } else {
        OptimalityClaim::new(
            &[C::E],
            ClaimForm::IjDelta { alpha: r(n - 1), base: r(1), delta_min: None, delta_max: Some(r(1)) },
            "M = (N−1)I + (1−δ)J with δ < 1; E-optimal",
        )
    };
    finish(p, asm, claim, derived, notes)
}
