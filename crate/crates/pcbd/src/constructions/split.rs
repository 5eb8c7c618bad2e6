//! Methods 19–22: a Hadamard matrix split by its blocking column, completed by
//! complementary pairs.

use serde_json::json;

use super::{
    block_size, columns_from, const_row, finish, hadamard_of, pair_list, r, require, rq, scaled_rows,
    first_columns, with_ones_row, Assembler, ClaimCriterion as C, ClaimForm, MethodParams, OptimalityClaim,
};
use crate::design_core::BlockedDesign;
use crate::error::{Error, Result};
use crate::hadamard;

type Pair = [Vec<i8>; 2];

/// Rows with +1 and with −1 in the blocking column.
type Halves = (Vec<Vec<i8>>, Vec<Vec<i8>>);

/// H_order split by column 1: (+1 rows, −1 rows), columns 2..2+K scaled by A.
fn halves(order: usize, k: usize) -> Result<Halves> {
    let (sorted, n_plus) = hadamard::split_by_column(&hadamard_of(order)?, 1);
    let l = columns_from(&sorted, 2, k, &format!("H_{order} without its first two columns"))?;
    let mut rows = scaled_rows(&l);
    let minus = rows.split_off(n_plus);
    Ok((rows, minus))
}

/// Halves with the all-ones row (first +1 row) moved to the −1 half.
fn moved_halves(order: usize, k: usize) -> Result<Halves> {
    let (mut plus, mut minus) = halves(order, k)?;
    let ones = plus.remove(0);
    minus.push(ones);
    Ok((plus, minus))
}

/// Complementary pairs of [H_order; 1ᵀ] ⊗ A_v; the ones pair is last.
fn l3_pairs(order: usize, k: usize) -> Result<Vec<Pair>> {
    let h = first_columns(&hadamard_of(order)?, k, &format!("H_{order}"))?;
    Ok(pair_list(&with_ones_row(&h)))
}

fn flat(pairs: &[Pair]) -> Vec<Vec<i8>> {
    pairs.iter().flat_map(|p| p.iter().cloned()).collect()
}

fn claim_leaky(n: usize, b: usize, m: usize, k: usize) -> OptimalityClaim {
    let two = r(2);
    let frac = rq(b, m);
    let mut eig = vec![r(n) - &two; k - 1];
    eig.push(r(n) + &two * r(k - 1) - r(k) * &frac);
    OptimalityClaim::new(
        &[C::E],
        ClaimForm::ij(r(n) - &two, &two - &frac),
        "M = (N−2)I + 2J − (b/m)J with eigenvalues N−2 (K−1 times) and N+2(K−1)−Kb/m; E-optimal",
    )
    .eigen(eig)
}

/// Method 19.
pub(crate) fn method19(p: &MethodParams) -> Result<BlockedDesign> {
    let (n, k, b) = (p.req_n()?, p.req_k()?, p.req_b()?);
    require(n % 8 == 6, || format!("N ≡ 6 (mod 8) required, got N={n}"))?;
    require(b % 2 == 1 && b >= 3, || format!("b must be odd and ≥ 3, got b={b}"))?;
    let m = block_size(n, b)?;
    require(m % 2 == 0, || format!("block size m=N/b must be even, got m={m}"))?;
    let n2 = m * (b - 2);
    require(n2 % 8 == 2, || format!("N₂ = m(b−2) ≡ 2 (mod 8) required, got N₂={n2}"))?;
    let (plus, minus) = halves(2 * m, k)?;
    let mut asm = Assembler::new();
    asm.block(plus);
    asm.block(minus);
    asm.blocks_from(flat(&l3_pairs((n2 - 2) / 2, k)?), &vec![m; b - 2])?;
    let claim = OptimalityClaim::new(&[C::E], ClaimForm::ij(r(n - 2), r(2)), "M = (N−2)I + 2J; E-optimal and orthogonally blocked")
        .orthogonal(true);
    finish(p, asm, claim, vec![("m", json!(m)), ("n1", json!(2 * m)), ("n2", json!(n2))], vec![])
}

/// Method 20.
pub(crate) fn method20(p: &MethodParams) -> Result<BlockedDesign> {
    let (n, k, b) = (p.req_n()?, p.req_k()?, p.req_b()?);
    require(n % 8 == 2, || format!("N ≡ 2 (mod 8) required, got N={n}"))?;
    let m = block_size(n, b)?;
    require(m % 2 == 1 && m >= 5, || format!("block size m=N/b must be odd and ≥ 5, got m={m}"))?;
    require(b % 2 == 0 && b >= 2 && b <= 2 * m, || format!("b must be even with 2 ≤ b ≤ 2m, got b={b}"))?;
    let n2 = b - 2 + 2 * m;
    require(n2 % 8 == 2, || format!("N₂ = b−2+2m ≡ 2 (mod 8) required, got N₂={n2}"))?;
    let mut pairs = l3_pairs((n2 - 2) / 2, k)?.into_iter();
    let ones = pairs.next_back().ok_or_else(|| Error::class("empty pair list"))?;
    let mut asm = Assembler::new();
    if b > 2 {
        let (plus, minus) = moved_halves(2 * (m - 1), k)?;
        for _ in 0..(b - 2) / 2 {
            let a = asm.block(plus.clone());
            asm.extend(a, flat(&[pairs.next().ok_or_else(|| Error::class("pairs exhausted"))?]));
            asm.block(minus.clone());
        }
    }
    let [pos, neg] = ones;
    for extra in [pos, neg] {
        let mut rows = flat(&pairs.by_ref().take((m - 1) / 2).collect::<Vec<_>>());
        rows.push(extra);
        asm.block(rows);
    }
    finish(p, asm, claim_leaky(n, b, m, k), vec![("m", json!(m)), ("n2", json!(n2))], vec![])
}

/// Method 21.
pub(crate) fn method21(p: &MethodParams) -> Result<BlockedDesign> {
    let (n, k, b) = (p.req_n()?, p.req_k()?, p.req_b()?);
    require(n % 8 == 6, || format!("N ≡ 6 (mod 8) required, got N={n}"))?;
    let m = block_size(n, b)?;
    require(m % 2 == 1, || format!("block size m=N/b must be odd, got m={m}"))?;
    require(b % 2 == 0 && b <= 2 * m, || format!("b must be even with b ≤ 2m, got b={b}"))?;
    let score = |m1: usize| -> Option<usize> {
        if m1 < 2 || m1 % 2 == 1 || m1 >= m || (b * m1) % 8 != 4 {
            return None;
        }
        let n2 = b * (m - m1);
        (n2 % 8 == 2 && hadamard::is_available(2 * m1) && hadamard::is_available((n2 - 2) / 2))
            .then(|| (2 * (m1 - 1)).min((n2 - 2) / 2))
    };
    let m1 = match p.m1 {
        Some(m1) => {
            require(score(m1).is_some(), || {
                format!("m₁={m1} must be even < m with bm₁ ≡ 4 (mod 8), N₂ = b(m−m₁) ≡ 2 (mod 8) and both Hadamard orders available")
            })?;
            m1
        }
        None => (2..m)
            .filter_map(|m1| score(m1).map(|s| (s, m1)))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .map(|(_, m1)| m1)
            .ok_or_else(|| Error::class(format!("no m₁ with bm₁ ≡ 4 (mod 8) and N₂ ≡ 2 (mod 8) for N={n}, b={b}")))?,
    };
    let n2 = b * (m - m1);
    let (plus, minus) = moved_halves(2 * m1, k)?;
    let mut pairs = l3_pairs((n2 - 2) / 2, k)?.into_iter();
    let mut asm = Assembler::new();
    for _ in 0..b / 2 {
        for (base, count) in [(&plus, (m - m1).div_ceil(2)), (&minus, (m - m1 - 1) / 2)] {
            let id = asm.block(base.clone());
            asm.extend(id, flat(&pairs.by_ref().take(count).collect::<Vec<_>>()));
        }
    }
    finish(
        p,
        asm,
        claim_leaky(n, b, m, k),
        vec![("m", json!(m)), ("m1", json!(m1)), ("n1", json!(b * m1)), ("n2", json!(n2))],
        vec![],
    )
}

/// Search for (q₁, …, q_{(b−3)/2}) maximizing P = min(2qᵢ−2, M/2).
fn method22_search(n: usize, b: usize, m: usize) -> Result<(Vec<usize>, usize)> {
    let slots = (b - 3) / 2;
    let feasible = |qs: &[usize]| -> Option<usize> {
        let used = 2 * qs.iter().sum::<usize>();
        let big_m = (n - 1).checked_sub(used)?;
        if big_m == 0 || big_m % 8 != 0 || !hadamard::is_available(big_m / 2) {
            return None;
        }
        if !qs.iter().all(|&q| hadamard::is_available(2 * q)) {
            return None;
        }
        let cap = qs.iter().map(|&q| 2 * q - 2).min().unwrap_or(usize::MAX);
        Some(cap.min(big_m / 2))
    };
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut stack = vec![Vec::new()];
    let mut visited = 0usize;
    while let Some(qs) = stack.pop() {
        visited += 1;
        if visited > 1_000_000 {
            return Err(Error::class(format!("q search for b={b}, m={m} exceeds 10⁶ candidates")));
        }
        if qs.len() == slots {
            if let Some(score) = feasible(&qs) {
                let better = match &best {
                    None => true,
                    Some((s, q)) => score > *s || (score == *s && qs < *q),
                };
                if better {
                    best = Some((score, qs));
                }
            }
            continue;
        }
        let lo = qs.last().copied().unwrap_or(2);
        for q in (lo..m).step_by(2).rev() {
            let mut next = qs.clone();
            next.push(q);
            stack.push(next);
        }
    }
    best.map(|(s, q)| (q, s)).ok_or_else(|| {
        Error::class(format!(
            "no even qᵢ < m with M = (N−1) − 2Σqᵢ ≡ 0 (mod 8) and Hadamard orders 2qᵢ, M/2 available (N={n}, b={b}, m={m})"
        ))
    })
}

/// Method 22.
pub(crate) fn method22(p: &MethodParams) -> Result<BlockedDesign> {
    let (n, k, b) = (p.req_n()?, p.req_k()?, p.req_b()?);
    require(n % 4 == 1, || format!("N ≡ 1 (mod 4) required, got N={n}"))?;
    let m = block_size(n, b)?;
    require(b % 2 == 1 && m % 2 == 1, || format!("b and m must be odd, got b={b}, m={m}"))?;
    require(b >= 3 && b <= m, || format!("3 ≤ b ≤ m required, got b={b}, m={m}"))?;
    let (qs, cap) = method22_search(n, b, m)?;
    require(k <= cap, || format!("K={k} exceeds P={cap} for the chosen q = {qs:?}"))?;
    let big_m = n - 1 - 2 * qs.iter().sum::<usize>();
    let lc = first_columns(&hadamard_of(big_m / 2)?, k, &format!("H_{}", big_m / 2))?;
    let mut pairs = pair_list(&lc).into_iter();
    let [pos, neg] = pairs.next().ok_or_else(|| Error::class("empty pair list"))?;
    let mut take = |count: usize| flat(&pairs.by_ref().take(count).collect::<Vec<_>>());
    let mut asm = Assembler::new();
    for &q in &qs {
        let (plus, minus) = moved_halves(2 * q, k)?;
        let a = asm.block(plus);
        asm.extend(a, take((m - q).div_ceil(2)));
        let c = asm.block(minus);
        asm.extend(c, take((m - q - 1) / 2));
    }
    for extra in [pos, neg, const_row(k, 2)] {
        let mut rows = take((m - 1) / 2);
        rows.push(extra);
        asm.block(rows);
    }
    let frac = rq(b, m);
    let mut eig = vec![r(n - 1); k - 1];
    eig.push(r(n - 1) + r(k) * (r(1) - &frac));
    let claim = OptimalityClaim::new(
        &[C::E],
        ClaimForm::ij(r(n - 1), r(1) - &frac),
        "M = (N−1)I + J − (b/m)J with eigenvalues N−1 (K−1 times) and (N−1)+K(1−b/m); E-optimal",
    )
    .eigen(eig);
    finish(p, asm, claim, vec![("m", json!(m)), ("q", json!(qs)), ("big_m", json!(big_m)), ("p_cap", json!(cap))], vec![])
}
