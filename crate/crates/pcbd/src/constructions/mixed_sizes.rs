//! Methods 9–18: unequal block sizes, odd blocks and augmented blocks.

use serde_json::json;

use super::{
    alternating, const_row, first_columns, finish, hadamard_of, r, require, rows_of, rq, with_ones_row,
    Assembler, ClaimCriterion as C, ClaimForm, MethodParams, OptimalityClaim,
};
use crate::design_core::{BlockedDesign, DifferenceMatrix};
use crate::error::{Error, Result};
use crate::hadamard;
use crate::rational::{zero, Rational};

/// Method 9: stacked L_{bᵢ} ⊗ pᵢ groups.
pub(crate) fn method9(p: &MethodParams) -> Result<BlockedDesign> {
    let k = p.req_k()?;
    let groups = p
        .groups
        .clone()
        .filter(|g| !g.is_empty())
        .ok_or_else(|| Error::Parameter("method 9 requires --groups b1xm1,b2xm2,…".into()))?;
    let mut asm = Assembler::new();
    let mut alpha = zero();
    let mut n = 0;
    for &(b, m) in &groups {
        require(b >= 1 && m >= 1, || format!("group ({b},{m}) must have b, m ≥ 1"))?;
        let l = first_columns(&hadamard_of(b)?, k, &format!("H_{b}"))?;
        asm.blocks_from(rows_of(&DifferenceMatrix::kron_vec(&l, &alternating(m))), &vec![m; b])?;
        n += b * m;
        alpha += if m % 2 == 1 { r(b * m) - rq(b, m) } else { r(b * m) };
    }
    if let Some(given) = p.n {
        require(given == n, || format!("N={given} disagrees with Σ bᵢmᵢ = {n}"))?;
    }
    let claim = OptimalityClaim::new(
        &[C::TypeI],
        ClaimForm::ij(alpha, zero()),
        "M = (Σ_odd (Nᵢ − bᵢ/mᵢ) + Σ_even Nᵢ) I; optimal for every type-I criterion",
    );
    finish(p, asm, claim, vec![("n", json!(n))], vec![])
}

/// Method 10.
pub(crate) fn method10(p: &MethodParams) -> Result<BlockedDesign> {
    let k = p.req_k()?;
    let b1 = p.p.or(p.b).ok_or_else(|| Error::Parameter("method 10 requires --p (b₁)".into()))?;
    let m1 = p.m1.ok_or_else(|| Error::Parameter("method 10 requires --m1".into()))?;
    let i = p.i.ok_or_else(|| Error::Parameter("method 10 requires --i".into()))?;
    require((1..=3).contains(&i), || format!("i ∈ {{1,2,3}} required, got i={i}"))?;
    require(m1 >= 2 && m1 % 2 == 0, || format!("m₁ must be even, got m₁={m1}"))?;
    require(b1 >= 2 * i + i * m1, || format!("b₁ − 2i − im₁ ≥ 0 required, got b₁={b1}, m₁={m1}, i={i}"))?;
    let h = hadamard_of(b1)?;
    let cols = hadamard::columns_with_leading_ones(&h, i);
    require(cols.len() >= k, || {
        format!("only {} columns of H_{b1} start with {i} entries +1; K={k} requested", cols.len())
    })?;
    let l = hadamard::select_columns(&h, &cols[..k])?;
    let d1: Vec<Vec<Vec<i8>>> =
        rows_of(&DifferenceMatrix::kron_vec(&l, &alternating(m1))).chunks(m1).map(<[_]>::to_vec).collect();
    let moved: Vec<Vec<i8>> = d1[..i].iter().flatten().cloned().collect();
    let mut asm = Assembler::new();
    for (j, blk) in d1.into_iter().enumerate().skip(i) {
        let id = asm.block(blk);
        let j = j - i;
        if j < moved.len() {
            asm.extend(id, vec![moved[j].clone()]);
        } else if j < moved.len() + i {
            asm.extend(id, vec![const_row(k, 2)]);
        }
    }
    let claim = OptimalityClaim::new(
        &[C::TypeI],
        ClaimForm::ij(r(b1 * m1), zero()),
        "M = b₁m₁I; optimal for every type-I criterion and orthogonally blocked",
    )
    .orthogonal(true);
    finish(p, asm, claim, vec![("n", json!(b1 * m1 + i))], vec![])
}

fn even_sizes(p: &MethodParams, n: usize) -> Result<Vec<usize>> {
    let sizes = p.sizes_or_b(n)?;
    require(sizes.iter().all(|&m| m % 2 == 0 && m > 0), || format!("block sizes must be even, got {sizes:?}"))?;
    Ok(sizes)
}

/// Method 11.
pub(crate) fn method11(p: &MethodParams) -> Result<BlockedDesign> {
    let (n, k) = (p.req_n()?, p.req_k()?);
    require(n % 8 == 2 && n >= 10, || format!("N = 8q+2 (N ≡ 2 (mod 8), q ≥ 1) required, got N={n}"))?;
    ones_augmented(p, n, k, &[C::Type1Gen, C::E], "M = (N−2)I + 2J; optimal for every generalized type-1 criterion")
}

/// Method 13.
pub(crate) fn method13(p: &MethodParams) -> Result<BlockedDesign> {
    let (n, k) = (p.req_n()?, p.req_k()?);
    require(n % 4 == 2 && n >= 10, || format!("N ≡ 2 (mod 4) with N ≥ 10 required, got N={n}"))?;
    require(k >= 3, || format!("K ≥ 3 required, got K={k}"))?;
    ones_augmented(p, n, k, &[C::E], "M = (N−2)I + 2J; E-optimal")
}

fn ones_augmented(p: &MethodParams, n: usize, k: usize, crit: &[C], stmt: &str) -> Result<BlockedDesign> {
    let order = n / 2 - 1;
    let h = first_columns(&hadamard_of(order)?, k, &format!("H_{order}"))?;
    let sizes = even_sizes(p, n)?;
    let mut asm = Assembler::new();
    asm.blocks_from(rows_of(&DifferenceMatrix::kron_av(&with_ones_row(&h))), &sizes)?;
    let claim = OptimalityClaim::new(crit, ClaimForm::ij(r(n) - r(2), r(2)), stmt).orthogonal(true);
    finish(p, asm, claim, vec![], vec![])
}

/// Method 12.
pub(crate) fn method12(p: &MethodParams) -> Result<BlockedDesign> {
    let (n, k) = (p.req_n()?, p.req_k()?);
    require(n % 8 == 6 && n >= 14, || format!("N = 8q+6 (N ≡ 6 (mod 8), q ≥ 1) required, got N={n}"))?;
    let order = n / 2 + 1;
    let h = hadamard_of(order)?;
    let h = first_columns(&h.select_rows(&(1..order).collect::<Vec<_>>()), k, &format!("H_{order}"))?;
    let sizes = even_sizes(p, n)?;
    let mut asm = Assembler::new();
    asm.blocks_from(rows_of(&DifferenceMatrix::kron_av(&h)), &sizes)?;
    let claim = OptimalityClaim::new(
        &[C::Type2Gen],
        ClaimForm::ij(r(n + 2), -r(2)),
        "M = (N+2)I − 2J; optimal for every generalized type-2 criterion",
    )
    .orthogonal(true);
    finish(p, asm, claim, vec![], vec![])
}

/// Rows of the m=3 square design, with its block layout (3,3,3).
fn method14_rows(k: usize) -> Result<Vec<Vec<i8>>> {
    let h = first_columns(&hadamard_of(4)?, k, "H_4")?;
    let pairs = super::pair_list(&h);
    let [plus, minus] = pairs[0].clone();
    let mut rows = Vec::with_capacity(9);
    for (j, [a, b]) in pairs[1..].iter().cloned().enumerate() {
        rows.push(a);
        rows.push(b);
        rows.push(match j {
            0 => plus.clone(),
            1 => minus.clone(),
            _ => const_row(k, 2),
        });
    }
    Ok(rows)
}

fn method14_m(p: &MethodParams) -> Result<usize> {
    let m = match (p.m, p.n) {
        (Some(m), _) => m,
        (None, Some(n)) => (1..=n).find(|m| m * m >= n).filter(|m| m * m == n).ok_or_else(|| {
            Error::class(format!("N = m² required, got N={n}"))
        })?,
        (None, None) => return Err(Error::Parameter("method 14 requires --m or --n".into())),
    };
    require(m % 2 == 1, || format!("m must be odd, got m={m}"))?;
    require(m == 3, || format!("unsupported m={m}: only m = 3 is supported for the square class"))?;
    Ok(m)
}

/// Method 14.
pub(crate) fn method14(p: &MethodParams) -> Result<BlockedDesign> {
    let m = method14_m(p)?;
    let k = p.req_k()?;
    let mut asm = Assembler::new();
    asm.blocks_from(method14_rows(k)?, &[3, 3, 3])?;
    let n = m * m;
    let claim = OptimalityClaim::new(&[C::A, C::D], ClaimForm::ij(r(n - 1), zero()), "M = (N−1)I; A- and D-optimal")
        .eigen(vec![r(n - 1); k]);
    finish(p, asm, claim, vec![("n", json!(n)), ("b", json!(m))], vec![])
}

/// Method 15.
pub(crate) fn method15(p: &MethodParams) -> Result<BlockedDesign> {
    let k = p.req_k()?;
    let pp = p.p.ok_or_else(|| Error::Parameter("method 15 requires --p".into()))?;
    let q = p.q.ok_or_else(|| Error::Parameter("method 15 requires --q".into()))?;
    let m = method14_m(&MethodParams { m: Some(p.m.unwrap_or(3)), ..p.clone() })?;
    let n = pp * m * m;
    require(n % 4 == 2, || format!("N = pm² ≡ 2 (mod 4) required, got N={n}"))?;
    require(q >= 1 && q <= pp, || format!("1 ≤ q ≤ p required, got q={q}, p={pp}"))?;
    let l = first_columns(&hadamard_of(pp)?, q, &format!("H_{pp}"))?;
    let base = method14_rows(k)?;
    let mut asm = Assembler::new();
    let l = &l;
    for row in 0..pp {
        let rows: Vec<Vec<i8>> = base
            .iter()
            .map(|f| (0..q).flat_map(|c| f.iter().map(move |&v| v * l.get(row, c))).collect())
            .collect();
        asm.blocks_from(rows, &[3, 3, 3])?;
    }
    let claim = OptimalityClaim::new(
        &[C::A, C::D],
        ClaimForm::ij(r(pp * m * m - pp), zero()),
        "M = (pm² − p)I_{qK}; A- and D-optimal",
    );
    finish(p, asm, claim, vec![("n", json!(n)), ("k_total", json!(q * k))], vec![])
}

/// Method 16.
pub(crate) fn method16(p: &MethodParams) -> Result<BlockedDesign> {
    let (n, k) = (p.req_n()?, p.req_k()?);
    let i = n % 4;
    require(i != 0, || format!("N ≢ 0 (mod 4) required, got N={n}"))?;
    let pp = (n - i) / 2;
    let sizes = p.sizes.clone().ok_or_else(|| Error::Parameter("method 16 requires --sizes".into()))?;
    require(sizes.iter().sum::<usize>() == n, || format!("block sizes {sizes:?} must sum to N={n}"))?;
    require(sizes.len() >= i, || format!("at least i={i} blocks required"))?;
    require(sizes[..i].iter().all(|&s| s % 2 == 1 && s >= 3), || {
        format!("the first i={i} block sizes must be odd (mⱼ+1 with mⱼ even), got {sizes:?}")
    })?;
    require(sizes[i..].iter().all(|&s| s % 2 == 0), || format!("block sizes after the first i={i} must be even"))?;
    let h = first_columns(&hadamard_of(pp)?, k, &format!("H_{pp}"))?;
    let d2: Vec<usize> = sizes.iter().enumerate().map(|(j, &s)| if j < i { s - 1 } else { s }).collect();
    let mut asm = Assembler::new();
    asm.blocks_from(rows_of(&DifferenceMatrix::kron_av(&h)), &d2)?;
    let mut beta = r(i);
    for (j, &s) in sizes.iter().take(i).enumerate() {
        asm.push_late(j, const_row(k, 2));
        beta -= rq(1, s);
    }
    let claim = OptimalityClaim::new(
        &[C::E],
        ClaimForm::ij(r(n - i), beta),
        "M = (N−i)I + iJ − Σ_{j≤i} 1/(mⱼ+1) J; E-optimal with extreme eigenvalue 2p",
    )
    .min_eig(r(2 * pp));
    finish(p, asm, claim, vec![("p", json!(pp)), ("i", json!(i))], vec![])
}

/// Method 17.
pub(crate) fn method17(p: &MethodParams) -> Result<BlockedDesign> {
    let k = p.req_k()?;
    let pp = match (p.p, p.n) {
        (Some(pp), _) => pp,
        (None, Some(n)) if n >= 5 && n % 2 == 1 => (n - 3) / 2,
        _ => return Err(Error::Parameter("method 17 requires --p or an odd --n".into())),
    };
    let n = 2 * pp + 3;
    if let Some(given) = p.n {
        require(given == n, || format!("N = 2p+3 required, got N={given} with p={pp}"))?;
    }
    require(n % 4 == 3, || format!("N = 2p+3 ≡ 3 (mod 4) required, got N={n}"))?;
    let sizes = match &p.sizes {
        Some(s) => s.clone(),
        None => [vec![3], vec![2; pp]].concat(),
    };
    require(sizes.iter().sum::<usize>() == n, || format!("block sizes {sizes:?} must sum to N={n}"))?;
    require(sizes[0] % 2 == 1 && sizes[0] >= 3, || format!("first block size must be m₁+1 with m₁ even, got {}", sizes[0]))?;
    require(sizes[1..].iter().all(|&s| s % 2 == 0), || format!("block sizes after the first must be even, got {sizes:?}"))?;
    let h = first_columns(&hadamard_of(pp)?, k, &format!("H_{pp}"))?;
    let d1: Vec<usize> = [vec![sizes[0] - 1], sizes[1..].to_vec()].concat();
    let mut asm = Assembler::new();
    asm.blocks_from(rows_of(&DifferenceMatrix::kron_av(&with_ones_row(&h))), &d1)?;
    asm.push_late(0, const_row(k, 2));
    let claim = OptimalityClaim::new(
        &[C::E],
        ClaimForm::ij(r(2 * pp), r(3) - rq(1, sizes[0])),
        "M = 2pI + 3J − J/(m₁+1); E-optimal with extreme eigenvalue 2p",
    )
    .min_eig(r(2 * pp));
    finish(p, asm, claim, vec![("n", json!(n)), ("p", json!(pp))], vec![])
}

/// Method 18.
pub(crate) fn method18(p: &MethodParams) -> Result<BlockedDesign> {
    let k = p.req_k()?;
    let pp = p.p.ok_or_else(|| Error::Parameter("method 18 requires --p".into()))?;
    let m1 = p.m1.ok_or_else(|| Error::Parameter("method 18 requires --m1".into()))?;
    let i = p.i.ok_or_else(|| Error::Parameter("method 18 requires --i".into()))?;
    require(m1 >= 2 && m1 % 2 == 0, || format!("m₁ must be even, got m₁={m1}"))?;
    require(i >= 1, || "i ≥ 1 required".to_string())?;
    require(pp >= 1 + m1 + i, || format!("p − 1 − m₁ − i ≥ 0 required, got p={pp}, m₁={m1}, i={i}"))?;
    let n = pp * m1 + i;
    if let Some(given) = p.n {
        require(given == n, || format!("N = pm₁ + i = {n} required, got N={given}"))?;
    }
    let h = first_columns(&hadamard_of(pp)?, k, &format!("H_{pp}"))?;
    let d1: Vec<Vec<Vec<i8>>> =
        rows_of(&DifferenceMatrix::kron_vec(&h, &alternating(m1))).chunks(m1).map(<[_]>::to_vec).collect();
    let moved = d1[0].clone();
    let mut asm = Assembler::new();
    for (j, blk) in d1.into_iter().enumerate().skip(1) {
        let id = asm.block(blk);
        if j <= m1 {
            asm.extend(id, vec![moved[j - 1].clone()]);
        } else if j <= m1 + i {
            asm.extend(id, vec![const_row(k, 2)]);
        }
    }
    let beta: Rational = r(i) - rq(m1 + i, m1 + 1);
    let claim = OptimalityClaim::new(
        &[C::E],
        ClaimForm::ij(r(pp * m1), beta),
        "M = pm₁I + iJ − ((m₁+i)/(m₁+1))J; E-optimal with extreme eigenvalue pm₁",
    )
    .min_eig(r(pp * m1));
    finish(p, asm, claim, vec![("n", json!(n))], vec![])
}
