//! Methods 1–8: equal or two-size blocks built from complementary pairs.

use serde_json::json;

use super::{
    block_size, column_order, const_row, first_columns, finish, hadamard_of, pair_list, r, require, rows_of,
    rq, take_columns, with_ones_row, Assembler, ClaimCriterion as C, ClaimForm, MethodParams,
    OptimalityClaim,
};
use crate::design_core::{BlockedDesign, DifferenceMatrix};
use crate::error::Result;
use crate::hadamard::{self, SignMatrix};
use crate::rational::Rational;

/// [H_{N/2−1} columns; 1ᵀ] ⊗ A_v, the Method-1 difference matrix (N rows).
pub(crate) fn method1_rows(n: usize, k: usize, weight_order: bool) -> Result<Vec<Vec<i8>>> {
    let order = n / 2 - 1;
    let h = hadamard_of(order)?;
    let l = take_columns(&h, &column_order(order, k, weight_order), &format!("H_{order}"))?;
    Ok(rows_of(&DifferenceMatrix::kron_av(&with_ones_row(&l))))
}

fn check_pairs_class(n: usize, b: usize, modulus: usize) -> Result<usize> {
    require(n % modulus == 2, || format!("N ≡ 2 (mod {modulus}) required, got N={n}"))?;
    let m = block_size(n, b)?;
    require(m % 2 == 0, || format!("block size m=N/b must be even, got m={m}"))?;
    Ok(m)
}

fn claim_n2(n: usize) -> ClaimForm {
    ClaimForm::ij(r(n) - r(2), r(2))
}

/// Method 1.
pub(crate) fn method1(p: &MethodParams) -> Result<BlockedDesign> {
    let (n, k, b) = (p.req_n()?, p.req_k()?, p.req_b()?);
    let m = check_pairs_class(n, b, 4)?;
    require(n >= 6, || format!("N ≥ 6 required, got N={n}"))?;
    let mut asm = Assembler::new();
    asm.blocks_from(method1_rows(n, k, false)?, &vec![m; b])?;
    let claim = OptimalityClaim::new(&[C::D], claim_n2(n), "M = (N−2)I + 2J; D-optimal and orthogonally blocked")
        .orthogonal(true);
    finish(p, asm, claim, vec![("m", json!(m))], vec![])
}

/// Method 3: Method 1 reblocked into b consecutive blocks of size m > 2.
pub(crate) fn method3(p: &MethodParams) -> Result<BlockedDesign> {
    let (n, k, b) = (p.req_n()?, p.req_k()?, p.req_b()?);
    let m = check_pairs_class(n, b, 8)?;
    require(m > 2, || format!("block size m > 2 required, got m={m}"))?;
    let mut asm = Assembler::new();
    asm.blocks_from(method1_rows(n, k, false)?, &vec![m; b])?;
    let mut eig = vec![r(n) - r(2); k - 1];
    eig.push(r(n + 2 * k) - r(2));
    let claim = OptimalityClaim::new(
        &[C::D],
        claim_n2(n),
        "M = (N−2)I + 2J with eigenvalues N−2 (K−1 times) and N+2K−2; D-optimal",
    )
    .eigen(eig)
    .orthogonal(true);
    finish(p, asm, claim, vec![("m", json!(m))], vec![])
}

/// Hadamard matrix of order `n1` used for the blocking-column split.
fn split_source(n1: usize) -> Result<SignMatrix> {
    match hadamard::plackett_burman(n1) {
        Ok(h) => Ok(h),
        Err(_) => hadamard_of(n1),
    }
}

/// Rows of H split by column 1 (+1 rows first), columns 2.. scaled by A.
fn split_rows(h: &SignMatrix, k: usize) -> Result<(Vec<Vec<i8>>, usize)> {
    let (sorted, n_plus) = hadamard::split_by_column(h, 1);
    let l = super::columns_from(&sorted, 2, k, &format!("H_{} without its first two columns", h.rows()))?;
    Ok((super::scaled_rows(&l), n_plus))
}

/// Method 2.
pub(crate) fn method2(p: &MethodParams) -> Result<BlockedDesign> {
    let (n, k, b) = (p.req_n()?, p.req_k()?, p.req_b()?);
    require(n % 4 == 2, || format!("N ≡ 2 (mod 4) required, got N={n}"))?;
    require(b % 2 == 1, || format!("b must be odd, got b={b}"))?;
    let m = block_size(n, b)?;
    require(m % 2 == 0 && m > 2, || format!("block size m=N/b must be even and > 2, got m={m}"))?;
    let score = |n1: usize| -> Option<usize> {
        let n2 = n.checked_sub(n1)?;
        (n1.is_multiple_of(4) && n2 >= 6 && hadamard::is_available(n1) && hadamard::is_available(n2 / 2 - 1))
            .then(|| (n1 - 2).min(n2 / 2 - 1))
    };
    let n1 = match p.n1 {
        Some(n1) => {
            require(score(n1).is_some(), || {
                format!("N₁={n1} must be a Hadamard order ≡ 0 (mod 4) with (N−N₁)/2−1 a Hadamard order")
            })?;
            n1
        }
        None => (4..n)
            .step_by(4)
            .filter_map(|n1| score(n1).map(|s| (s, n1)))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .map(|(_, n1)| n1)
            .ok_or_else(|| crate::error::Error::class(format!("no split N = N₁ + N₂ with both Hadamard orders available for N={n}")))?,
    };
    let n2 = n - n1;
    let mut rows = method1_rows(n2, k, true)?;
    rows.extend(split_rows(&split_source(n1)?, k)?.0);
    let mut asm = Assembler::new();
    asm.blocks_from(rows, &vec![m; b])?;
    let mut notes = Vec::new();
    if b != m / 2 + 2 {
        notes.push(format!(
            "b={b} differs from m/2+2={}; blocks may straddle the two parts and leak information",
            m / 2 + 2
        ));
    }
    let claim = OptimalityClaim::new(&[C::D], claim_n2(n), "M = (N−2)I + 2J; D-optimal and orthogonally blocked")
        .orthogonal(true);
    finish(p, asm, claim, vec![("m", json!(m)), ("n1", json!(n1)), ("n2", json!(n2))], notes)
}

/// Method 4.
pub(crate) fn method4(p: &MethodParams) -> Result<BlockedDesign> {
    let (n, k, b) = (p.req_n()?, p.req_k()?, p.req_b()?);
    let k1 = p.k1.ok_or_else(|| crate::error::Error::Parameter("method 4 requires --k1".into()))?;
    let m = check_pairs_class(n, b, 8)?;
    require(m > 2, || format!("block size m > 2 required, got m={m}"))?;
    require(b < n / 2, || format!("b < N/2 required, got b={b}"))?;
    require(k1 >= 1 && k1 <= k, || format!("1 ≤ K₁ ≤ K required, got K₁={k1}, K={k}"))?;
    require(k >= 2, || format!("K ≥ 2 required, got K={k}"))?;
    let order = (n - 2) / 2;
    let h = hadamard_of(order)?;
    let l = take_columns(&h, &column_order(order, k, true), &format!("H_{order}"))?;
    let mut rows = rows_of(&DifferenceMatrix::kron_av(&l));
    rows.push(const_row(k, 2));
    rows.push((0..k).map(|c| if c < k1 { 2 } else { -2 }).collect());
    let mut asm = Assembler::new();
    asm.blocks_from(rows, &vec![m; b])?;
    let (nn, kk, kk1, mm) = (r(n), r(k), r(k1), r(m));
    let two = r(2);
    let mut eig = vec![&nn - &two; k - 2];
    eig.push(&nn + &two * &kk1 - &two - r(4) * &kk1 / &mm);
    eig.push(&nn + &two * &kk - &two * &kk1 - &two);
    let claim = OptimalityClaim::new(
        &[C::D],
        ClaimForm::ij(&nn - &two, &two - r(4) / &mm),
        "M = (N−2)I + 2J − (4/m)J with eigenvalues N−2 (K−2 times), N+2K₁−2−4K₁/m, N+2K−2K₁−2; D-optimal",
    )
    .eigen(eig)
    .orthogonal(false);
    finish(p, asm, claim, vec![("m", json!(m))], vec![])
}

/// Method 5.
pub(crate) fn method5(p: &MethodParams) -> Result<BlockedDesign> {
    let (n, k, b) = (p.req_n()?, p.req_k()?, p.req_b()?);
    require(n % 4 == 0, || format!("N ≡ 0 (mod 4) required, got N={n}"))?;
    let m = block_size(n, b)?;
    require(m % 2 == 1, || format!("block size m=N/b must be odd, got m={m}"))?;
    let h = first_columns(&hadamard_of(b)?, k, &format!("H_{b}"))?;
    let mut asm = Assembler::new();
    asm.blocks_from(rows_of(&DifferenceMatrix::kron_vec(&h, &super::alternating(m))), &vec![m; b])?;
    let claim = OptimalityClaim::new(
        &[C::A, C::D],
        ClaimForm::ij(r(n) - rq(b, m), Rational::from_integer(0.into())),
        "M = (N − b/m)I; A- and D-optimal",
    );
    finish(p, asm, claim, vec![("m", json!(m))], vec![])
}

/// Smallest even m₁ with N divisible by 2m₁+2, or the given one.
fn two_size_m1(p: &MethodParams, n: usize) -> Result<(usize, usize)> {
    let ok = |m1: usize| m1 >= 2 && m1.is_multiple_of(2) && n.is_multiple_of(2 * m1 + 2);
    let m1 = match p.m1 {
        Some(m1) => {
            require(ok(m1), || format!("m₁={m1} must be even with 2m₁+2 dividing N={n}"))?;
            m1
        }
        None => (2..n)
            .step_by(2)
            .find(|&m1| ok(m1))
            .ok_or_else(|| crate::error::Error::class(format!("no even m₁ with 2m₁+2 dividing N={n}")))?,
    };
    Ok((m1, n / (2 * m1 + 2)))
}

fn two_size_layout(asm: &mut Assembler, rows: Vec<Vec<i8>>, m1: usize, b1: usize) -> Result<()> {
    let sizes: Vec<usize> = [vec![m1; b1], vec![m1 + 2; b1]].concat();
    asm.blocks_from(rows, &sizes)
}

/// Method 6.
pub(crate) fn method6(p: &MethodParams) -> Result<BlockedDesign> {
    let (n, k) = (p.req_n()?, p.req_k()?);
    require(n % 8 == 0, || format!("N ≡ 0 (mod 8) required, got N={n}"))?;
    let half = n / 2;
    let h = first_columns(&hadamard_of(half)?, k, &format!("H_{half}"))?;
    let (m1, b1) = two_size_m1(p, n)?;
    let mut asm = Assembler::new();
    two_size_layout(&mut asm, rows_of(&DifferenceMatrix::kron_av(&h)), m1, b1)?;
    let claim = OptimalityClaim::new(&[C::A, C::D], ClaimForm::QuarterGram, "M = ¼F⊤F; A- and D-optimal")
        .orthogonal(true);
    finish(p, asm, claim, vec![("m1", json!(m1)), ("b1", json!(b1))], vec![])
}

/// Method 7.
pub(crate) fn method7(p: &MethodParams) -> Result<BlockedDesign> {
    let (n, k) = (p.req_n()?, p.req_k()?);
    require(n % 8 == 4 && n >= 8, || format!("N ≡ 4 (mod 8) required, got N={n}"))?;
    require(k >= 2, || format!("K ≥ 2 required, got K={k}"))?;
    let order = (n - 4) / 2;
    let h = first_columns(&hadamard_of(order)?, k, &format!("H_{order}"))?;
    let k1 = k / 2;
    let mut rows = with_ones_row(&h).to_rows();
    rows.push((0..k).map(|c| if c < k1 { 1 } else { -1 }).collect());
    let l = SignMatrix::from_rows(&rows)?;
    let (m1, b1) = two_size_m1(p, n)?;
    let mut asm = Assembler::new();
    two_size_layout(&mut asm, pair_list(&l).into_iter().flatten().collect(), m1, b1)?;
    let (nn, kk, kk1) = (r(n), r(k), r(k1));
    let four = r(4);
    let mut eig = vec![&nn - &four; k - 2];
    if k % 2 == 1 {
        eig.push(&nn + &four * &kk1 - r(6));
        eig.push(&nn + &four * &kk - &four * &kk1 - &four);
    } else {
        eig.push(&nn + &four * &kk1 - &four);
        eig.push(&nn + &four * &kk1 - &four);
    }
    let claim = OptimalityClaim::new(
        &[C::A, C::D],
        ClaimForm::ij(&nn - &four, four.clone()),
        "M = (N−4)I + 4J with eigenvalues N−4 (K−2 times) and the two ⌊K/2⌋-dependent values; A- and D-optimal",
    )
    .eigen(eig)
    .orthogonal(true);
    finish(p, asm, claim, vec![("m1", json!(m1)), ("b1", json!(b1)), ("k1", json!(k1))], vec![])
}

/// Method 8.
pub(crate) fn method8(p: &MethodParams) -> Result<BlockedDesign> {
    let (n, k) = (p.req_n()?, p.req_k()?);
    let b = p.b.unwrap_or(3);
    require(b == 3, || format!("b = 3 required, got b={b}"))?;
    let m = block_size(n, 3)?;
    require(m % 8 == 1 && m > 1, || format!("m ≡ 1 (mod 8) required, got m={m}"))?;
    let order = (n - 3) / 2;
    let h = first_columns(&hadamard_of(order)?, k, &format!("H_{order}"))?;
    let pairs = pair_list(&h);
    let per = (m - 1) / 2;
    let mut asm = Assembler::new();
    for blk in pairs.chunks(per) {
        let mut rows: Vec<Vec<i8>> = blk.iter().flat_map(|pr| pr.iter().cloned()).collect();
        rows.push(const_row(k, 2));
        asm.block(rows);
    }
    let (nn, kk) = (r(n), r(k));
    let three = r(3);
    let frac = rq(3, m);
    let mut eig = vec![&nn - &three; k - 1];
    eig.push(&nn - &three + &three * &kk - &kk * &frac);
    let claim = OptimalityClaim::new(
        &[C::E],
        ClaimForm::ij(&nn - &three, &three - &frac),
        "M = (N−3)I + 3J − (b/m)J with eigenvalues N−3 (K−1 times) and (N−3)+3K−Kb/m; E-optimal",
    )
    .eigen(eig);
    finish(p, asm, claim, vec![("m", json!(m))], vec![])
}
