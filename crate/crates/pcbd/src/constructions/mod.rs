//! The 27 Hadamard-based construction methods, each a parameter-validated
//! generator returning a [`BlockedDesign`] with its optimality claim attached.
//!
//! Conventions shared by every method:
//! - Hadamard matrices come from [`hadamard::lookup`] and are normalized
//!   (first row and column all +1); "select K columns" takes the first K
//!   columns unless a method states otherwise.
//! - "H ⊗ A_v" turns each ±1 row h into the complementary pair (2h, −2h);
//!   "L·A" scales a ±1 matrix by 2.
//! - Blocks are formed from consecutive rows, in the order the steps produce them.

mod delta;
mod mixed_sizes;
mod orthogonal;
mod split;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::design_core::{BlockLayout, BlockedDesign, DifferenceMatrix, Provenance};
use crate::error::{Error, Result};
use crate::hadamard::{self, SignMatrix};
use crate::info_matrix::IJForm;
use crate::rational::{self, int, Rational};

/// Parameters for [`construct`]. Each method reads the fields it needs and
/// rejects missing ones with a parameter error.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodParams {
    /// Method id 1–27.
    pub method: u8,
    /// Number of pairs N.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Number of attributes K.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Number of blocks b (equal block sizes N/b).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    /// Explicit block sizes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<usize>>,
    /// K₁ (Methods 4, 23).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k1: Option<usize>,
    /// m₁ (Methods 6, 7, 10, 18, 21).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m1: Option<usize>,
    /// i (Methods 10, 18).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    /// Hadamard order p (Methods 15, 17, 18) or b₁ (Method 10).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    /// q (Method 15).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    /// Block size m (Methods 14, 15).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// t₁ (Methods 24–27).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t1: Option<usize>,
    /// N₁ of the two-part split (Method 2).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n1: Option<usize>,
    /// Groups (b_i, m_i) (Method 9).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<(usize, usize)>>,
}

impl MethodParams {
    /// Params for `method` with N and K set.
    pub fn new(method: u8) -> Self {
        Self { method, ..Self::default() }
    }

    /// Builder: N.
    pub fn n(mut self, v: usize) -> Self {
        self.n = Some(v);
        self
    }

    /// Builder: K.
    pub fn k(mut self, v: usize) -> Self {
        self.k = Some(v);
        self
    }

    /// Builder: b.
    pub fn b(mut self, v: usize) -> Self {
        self.b = Some(v);
        self
    }

    /// Builder: block sizes.
    pub fn sizes(mut self, v: &[usize]) -> Self {
        self.sizes = Some(v.to_vec());
        self
    }

    /// Builder: K₁.
    pub fn k1(mut self, v: usize) -> Self {
        self.k1 = Some(v);
        self
    }

    /// Builder: m₁.
    pub fn m1(mut self, v: usize) -> Self {
        self.m1 = Some(v);
        self
    }

    /// Builder: i.
    pub fn i(mut self, v: usize) -> Self {
        self.i = Some(v);
        self
    }

    /// Builder: p.
    pub fn p(mut self, v: usize) -> Self {
        self.p = Some(v);
        self
    }

    /// Builder: q.
    pub fn q(mut self, v: usize) -> Self {
        self.q = Some(v);
        self
    }

    /// Builder: m.
    pub fn m(mut self, v: usize) -> Self {
        self.m = Some(v);
        self
    }

    /// Builder: t₁.
    pub fn t1(mut self, v: usize) -> Self {
        self.t1 = Some(v);
        self
    }

    /// Builder: N₁.
    pub fn n1(mut self, v: usize) -> Self {
        self.n1 = Some(v);
        self
    }

    /// Builder: groups.
    pub fn groups(mut self, v: &[(usize, usize)]) -> Self {
        self.groups = Some(v.to_vec());
        self
    }

    fn req(&self, v: Option<usize>, flag: &str) -> Result<usize> {
        v.ok_or_else(|| Error::Parameter(format!("method {} requires --{flag}", self.method)))
    }

    pub(crate) fn req_n(&self) -> Result<usize> {
        self.req(self.n, "n")
    }

    pub(crate) fn req_k(&self) -> Result<usize> {
        let k = self.req(self.k, "k")?;
        if k == 0 {
            return Err(Error::class("K ≥ 1 required"));
        }
        Ok(k)
    }

    pub(crate) fn req_b(&self) -> Result<usize> {
        self.req(self.b, "b")
    }

    /// Block sizes from `sizes`, else `b` equal blocks of N/b.
    pub(crate) fn sizes_or_b(&self, n: usize) -> Result<Vec<usize>> {
        if let Some(s) = &self.sizes {
            if s.iter().sum::<usize>() != n {
                return Err(Error::Layout(format!("block sizes {s:?} must sum to N={n}")));
            }
            return Ok(s.clone());
        }
        let b = self.req(self.b, "b or --sizes")?;
        Ok(vec![block_size(n, b)?; b])
    }
}

/// Criteria named in a claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClaimCriterion {
    /// D-optimal.
    D,
    /// A-optimal.
    A,
    /// E-optimal.
    E,
    /// Type-I optimal (family).
    TypeI,
    /// Optimal for every generalized criterion of type 1.
    Type1Gen,
    /// Optimal for every generalized criterion of type 2.
    Type2Gen,
}

/// Closed form claimed for M.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClaimForm {
    /// M = αI + βJ.
    Ij {
        /// Identity coefficient.
        #[serde(with = "rational::as_str")]
        alpha: Rational,
        /// All-ones coefficient.
        #[serde(with = "rational::as_str")]
        beta: Rational,
    },
    /// M = ¼F⊤F, i.e. blocks cost no information.
    QuarterGram,
    /// M = αI + (c − δ)J with δ in an open interval (bounds optional).
    IjDelta {
        /// Identity coefficient.
        #[serde(with = "rational::as_str")]
        alpha: Rational,
        /// Constant c.
        #[serde(with = "rational::as_str")]
        base: Rational,
        /// Exclusive lower bound on δ.
        #[serde(default, with = "rational::opt_as_str", skip_serializing_if = "Option::is_none")]
        delta_min: Option<Rational>,
        /// Exclusive upper bound on δ.
        #[serde(default, with = "rational::opt_as_str", skip_serializing_if = "Option::is_none")]
        delta_max: Option<Rational>,
    },
}

impl ClaimForm {
    /// αI + βJ form.
    pub fn ij(alpha: Rational, beta: Rational) -> Self {
        ClaimForm::Ij { alpha, beta }
    }

    /// As an [`IJForm`] when the claim is a fixed αI + βJ.
    pub fn as_ij(&self) -> Option<IJForm> {
        match self {
            ClaimForm::Ij { alpha, beta } => Some(IJForm::new(alpha.clone(), beta.clone())),
            _ => None,
        }
    }
}

/// A method's optimality claim, attached to the design's provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimalityClaim {
    /// Criteria for which optimality is asserted.
    pub criteria: Vec<ClaimCriterion>,
    /// Claimed information matrix.
    pub form: ClaimForm,
    /// Claimed eigenvalues (ascending), when listed.
    #[serde(default, with = "rational::opt_vec_as_str", skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<Rational>>,
    /// Claimed extreme eigenvalue, checked as the smallest eigenvalue.
    #[serde(default, with = "rational::opt_as_str", skip_serializing_if = "Option::is_none")]
    pub min_eigenvalue: Option<Rational>,
    /// Whether F⊤Z = 0 is asserted (None: no assertion).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orthogonal: Option<bool>,
    /// Human-readable statement of the claim.
    pub statement: String,
}

impl OptimalityClaim {
    fn new(criteria: &[ClaimCriterion], form: ClaimForm, statement: impl Into<String>) -> Self {
        Self {
            criteria: criteria.to_vec(),
            form,
            eigenvalues: None,
            min_eigenvalue: None,
            orthogonal: None,
            statement: statement.into(),
        }
    }

    fn eigen(mut self, mut v: Vec<Rational>) -> Self {
        v.sort();
        self.eigenvalues = Some(v);
        self
    }

    fn min_eig(mut self, v: Rational) -> Self {
        self.min_eigenvalue = Some(v);
        self
    }

    fn orthogonal(mut self, v: bool) -> Self {
        self.orthogonal = Some(v);
        self
    }
}

/// Build the design for `p.method`.
///
/// # Errors
///
/// Parameter error for missing flags or an unknown method; class error naming
/// the violated condition; unsupported-order error for a missing Hadamard order.
pub fn construct(p: &MethodParams) -> Result<BlockedDesign> {
    match p.method {
        1 => orthogonal::method1(p),
        2 => orthogonal::method2(p),
        3 => orthogonal::method3(p),
        4 => orthogonal::method4(p),
        5 => orthogonal::method5(p),
        6 => orthogonal::method6(p),
        7 => orthogonal::method7(p),
        8 => orthogonal::method8(p),
        9 => mixed_sizes::method9(p),
        10 => mixed_sizes::method10(p),
        11 => mixed_sizes::method11(p),
        12 => mixed_sizes::method12(p),
        13 => mixed_sizes::method13(p),
        14 => mixed_sizes::method14(p),
        15 => mixed_sizes::method15(p),
        16 => mixed_sizes::method16(p),
        17 => mixed_sizes::method17(p),
        18 => mixed_sizes::method18(p),
        19 => split::method19(p),
        20 => split::method20(p),
        21 => split::method21(p),
        22 => split::method22(p),
        23 => delta::method23(p),
        24..=27 => delta::method24_27(p),
        m => Err(Error::Parameter(format!("unknown method {m}; expected 1–27"))),
    }
}

/// Catalog entry for one method.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodInfo {
    /// Method id.
    pub id: u8,
    /// Short description.
    pub title: &'static str,
    /// Class constraints.
    pub class: &'static str,
    /// Hadamard orders required.
    pub hadamard: &'static str,
    /// Smallest feasible parameter set shipped with the toolkit.
    pub example: MethodParams,
}

/// Every method with its class constraints, Hadamard requirements and smallest example.
pub fn catalog() -> Vec<MethodInfo> {
    let e = MethodParams::new;
    let info = |id, title, class, hadamard, example| MethodInfo { id, title, class, hadamard, example };
    vec![
        info(1, "augmented Hadamard, complementary pairs merged into blocks", "N≡2 (mod 4); m=N/b even; K ≤ N/2−1", "N/2−1", e(1).n(6).k(2).b(3)),
        info(2, "two-part stack: Hadamard split by a blocking column over a Method-1 part", "N≡2 (mod 4); b odd; m=N/b even > 2 (b=m/2+2 for exact blocks)", "N₁ and N₂/2−1 with N₁+N₂=N", e(2).n(30).k(6).b(5)),
        info(3, "Method 1 reblocked into larger consecutive blocks", "N≡2 (mod 8); m=N/b > 2 even", "N/2−1", e(3).n(18).k(6).b(3)),
        info(4, "non-orthogonal: pairs plus an all-2 and a K₁-split profile", "N≡2 (mod 8); m=N/b > 2 even; b < N/2; 0 < K₁ ≤ K", "(N−2)/2", e(4).n(18).k(8).k1(2).b(3)),
        info(5, "odd blocks: Hadamard columns ⊗ alternating vector", "N=bm≡0 (mod 4); m odd; K ≤ b", "b", e(5).n(12).k(4).b(4)),
        info(6, "two block sizes m₁, m₁+2 from complementary pairs", "N=2p≡0 (mod 8); b₁=b₂; m₂=m₁+2 even", "p=N/2", e(6).n(24).k(6)),
        info(7, "two block sizes with an all-ones and a ⌊K/2⌋ row appended", "N=2p+4≡4 (mod 8); b₁=b₂; m₂=m₁+2 even", "p=(N−4)/2", e(7).n(12).k(4)),
        info(8, "three blocks of size m≡1 (mod 8) with an all-2 profile each", "N=3m≡3 (mod 4); m≡1 (mod 8); b=3", "(N−3)/2", e(8).n(27).k(4).b(3)),
        info(9, "stacked groups L_bᵢ ⊗ pᵢ", "groups (bᵢ, mᵢ); K ≤ min bᵢ", "each bᵢ", e(9).k(3).groups(&[(4, 2)])),
        info(10, "all-2 profiles moved into following blocks plus i extra profiles", "N=b₁m₁+i; i∈{1,2,3}; m₁ even; b₁−2i−im₁ ≥ 0", "b₁ (given as --p)", e(10).p(8).m1(2).i(1).k(4)),
        info(11, "Hadamard plus ones row ⊗ A_v in even blocks", "N=8q+2; even sizes; K ≤ N/2−1", "N/2−1", e(11).n(10).k(4).sizes(&[4, 6])),
        info(12, "Hadamard without its ones row ⊗ A_v in even blocks", "N=8q+6; even sizes; K ≤ N/2+1", "N/2+1", e(12).n(14).k(4).sizes(&[4, 4, 6])),
        info(13, "Hadamard ⊗ A_v plus a complementary all-2 pair", "N≡2 (mod 4); even sizes; 3 ≤ K ≤ N/2−1", "N/2−1", e(13).n(10).k(3).sizes(&[4, 6])),
        info(14, "square class N=m², ones-row pair spread over blocks", "N=m²≡1 (mod 4); b=m; m=3 only", "(N−1)/2", e(14).m(3).k(4)),
        info(15, "Kronecker product of a p×q sign matrix with a Method-14 design", "N=pm²≡2 (mod 4); m=3; q ≤ p", "p and 4", e(15).p(2).q(2).k(2)),
        info(16, "pairs in even blocks plus an all-2 profile in each of the first i blocks", "N=2p+i≡i (mod 4); i∈{1,2,3}; first i sizes odd, rest even", "p=(N−i)/2", e(16).n(17).k(4).sizes(&[3, 4, 4, 6])),
        info(17, "Hadamard plus ones row ⊗ A_v with an all-2 profile in block 1", "N=2p+3≡3 (mod 4); sizes m₁+1, m₂, …", "p", e(17).p(4).k(4).sizes(&[3, 2, 2, 4])),
        info(18, "blocks of size m₁ with block-1 profiles redistributed and i extra profiles", "N=pm₁+i; m₁ even; p−1−m₁−i ≥ 0", "p", e(18).p(4).m1(2).i(1).k(4)),
        info(19, "blocking-column split of H_2m over a Method-1 part", "N=bm≡6 (mod 8); b odd ≥ 3; m even", "2m and (N₂−2)/2", e(19).n(30).k(6).b(5)),
        info(20, "split H_2(m−1) with the ones row moved, completed by pairs", "N=bm≡2 (mod 8); b even ≤ 2m; m odd ≥ 5", "2(m−1) and (N₂−2)/2", e(20).n(10).k(4).b(2)),
        info(21, "split H_2m₁ with the ones row moved, m₁ found by search", "N=bm≡6 (mod 8); b even ≤ 2m; m odd", "2m₁ and (N₂−2)/2", e(21).n(14).k(2).b(2)),
        info(22, "odd blocks with column sums ±2", "N=bm≡1 (mod 4); b, m odd; b ≤ m", "2qᵢ and M/2", e(22).n(9).k(4).b(3)),
        info(23, "Hadamard ⊗ A_v plus an all-2 and a K₁/K₂ profile", "N≡2 (mod 4); K=N/2−1=K₁+K₂; K₂ ≥ 1", "N/2−1", e(23).n(10).k(4).k1(3).b(5)),
        info(24, "mixed even/odd blocks, M=(N−2)I+(2−δ)J", "N≡2 (mod 4); ℓ+3y+z≡2 (mod 4); ℓ+z=y+2; K ≥ 3", "4t₁, 4t, mᵢ+1, mᵢ−1", e(24).k(3).sizes(&[6, 3, 3, 3, 3])),
        info(25, "Method 24 with a reformulated first block m₁=4t₁+ℓ₁", "N≡2 (mod 4); ℓ₁+ℓ₂+3y+z≡2 (mod 4); ℓ₁+ℓ₂+z=y+2; K ≥ 3", "4t₁, 4t, mᵢ+1, mᵢ−1", e(25).k(3).sizes(&[4, 6, 3, 3, 3, 3])),
        info(26, "mixed even/odd blocks, M=(N−1)I+(1−δ)J", "N≡1 (mod 4); ℓ+3y+z≡1 (mod 4); ℓ+z=y+1; K ≥ 3", "4t₁, 4t, mᵢ+1, mᵢ−1", e(26).k(3).sizes(&[2, 3])),
        info(27, "Method 26 with a reformulated first block m₁=4t₁+ℓ₁", "N≡1 (mod 4); ℓ₁+ℓ₂+3y+z≡1 (mod 4); ℓ₁+ℓ₂+z=y+1; K ≥ 3", "4t₁, 4t, mᵢ+1, mᵢ−1", e(27).k(3).sizes(&[4, 2, 3])),
    ]
}

// ---------------------------------------------------------------------------
// shared helpers

/// N/b, requiring exact division.
pub(crate) fn block_size(n: usize, b: usize) -> Result<usize> {
    if b == 0 || !n.is_multiple_of(b) {
        return Err(Error::class(format!("b={b} must divide N={n}")));
    }
    Ok(n / b)
}

/// Fail with a class error unless `cond`.
pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond { Ok(()) } else { Err(Error::Class(msg())) }
}

/// Normalized Hadamard matrix of `order`.
pub(crate) fn hadamard_of(order: usize) -> Result<SignMatrix> {
    hadamard::normalize(&hadamard::lookup(order)?)
}

/// Column indices 0..k, or Sylvester weight order when `weight_order` and the order is a power of two.
pub(crate) fn column_order(order: usize, k: usize, weight_order: bool) -> Vec<usize> {
    if weight_order && order.is_power_of_two() {
        hadamard::sylvester_weight_order(order).into_iter().take(k).collect()
    } else {
        (0..k).collect()
    }
}

/// The given columns of H, with a class error when K exceeds what is available.
pub(crate) fn take_columns(h: &SignMatrix, idx: &[usize], what: &str) -> Result<SignMatrix> {
    require(idx.iter().all(|&c| c < h.cols()), || {
        format!("K={} exceeds the {} columns available from {what}", idx.len(), h.cols())
    })?;
    hadamard::select_columns(h, idx)
}

/// First K columns of H.
pub(crate) fn first_columns(h: &SignMatrix, k: usize, what: &str) -> Result<SignMatrix> {
    take_columns(h, &(0..k).collect::<Vec<_>>(), what)
}

/// Columns `from..from+k` of H.
pub(crate) fn columns_from(h: &SignMatrix, from: usize, k: usize, what: &str) -> Result<SignMatrix> {
    require(from + k <= h.cols(), || {
        format!("K={k} exceeds the {} columns available from {what}", h.cols().saturating_sub(from))
    })?;
    hadamard::select_columns(h, &(from..from + k).collect::<Vec<_>>())
}

/// H with a row of all +1 appended.
pub(crate) fn with_ones_row(h: &SignMatrix) -> SignMatrix {
    let mut rows = h.to_rows();
    rows.push(vec![1; h.cols()]);
    SignMatrix::from_rows(&rows).unwrap_or_else(|_| unreachable!("rows share a length"))
}

/// Alternating ±2 vector of length m starting with +2 (⌈m/2⌉ positives).
pub(crate) fn alternating(m: usize) -> Vec<i8> {
    (0..m).map(|r| if r % 2 == 0 { 2 } else { -2 }).collect()
}

/// Rows of a difference matrix.
pub(crate) fn rows_of(f: &DifferenceMatrix) -> Vec<Vec<i8>> {
    f.to_rows()
}

/// ±1 rows scaled by A = 2.
pub(crate) fn scaled_rows(h: &SignMatrix) -> Vec<Vec<i8>> {
    rows_of(&DifferenceMatrix::scaled(h))
}

/// Complementary pairs (2h, −2h) of each row of H, as a list of pairs.
pub(crate) fn pair_list(h: &SignMatrix) -> Vec<[Vec<i8>; 2]> {
    (0..h.rows())
        .map(|r| {
            let plus: Vec<i8> = h.row(r).iter().map(|&v| 2 * v).collect();
            let minus = plus.iter().map(|v| -v).collect();
            [plus, minus]
        })
        .collect()
}

/// A row of K equal entries.
pub(crate) fn const_row(k: usize, v: i8) -> Vec<i8> {
    vec![v; k]
}

/// usize → Rational.
pub(crate) fn r(v: usize) -> Rational {
    int(i64::try_from(v).unwrap_or(i64::MAX))
}

/// a/b as a Rational.
pub(crate) fn rq(a: usize, b: usize) -> Rational {
    r(a) / r(b)
}

/// Rows grouped into blocks; rows flagged `late` were appended by a final
/// step and are listed after all other rows in level-pair renderings.
#[derive(Default)]
pub(crate) struct Assembler {
    blocks: Vec<Vec<(Vec<i8>, bool)>>,
}

impl Assembler {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    /// Start a new block from rows.
    pub(crate) fn block(&mut self, rows: Vec<Vec<i8>>) -> usize {
        self.blocks.push(rows.into_iter().map(|r| (r, false)).collect());
        self.blocks.len() - 1
    }

    /// Append rows to block `b`.
    pub(crate) fn extend(&mut self, b: usize, rows: Vec<Vec<i8>>) {
        self.blocks[b].extend(rows.into_iter().map(|r| (r, false)));
    }

    /// Append a late row to block `b`.
    pub(crate) fn push_late(&mut self, b: usize, row: Vec<i8>) {
        self.blocks[b].push((row, true));
    }

    /// Consecutive blocks of the given sizes from a row list.
    pub(crate) fn blocks_from(&mut self, rows: Vec<Vec<i8>>, sizes: &[usize]) -> Result<()> {
        if sizes.iter().sum::<usize>() != rows.len() {
            return Err(Error::Layout(format!(
                "block sizes {sizes:?} do not partition {} rows",
                rows.len()
            )));
        }
        let mut it = rows.into_iter();
        for &m in sizes {
            self.block(it.by_ref().take(m).collect());
        }
        Ok(())
    }

    fn finish(self) -> Result<(DifferenceMatrix, BlockLayout, Option<Vec<usize>>)> {
        let sizes: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        let mut rows = Vec::new();
        let mut early = Vec::new();
        let mut late = Vec::new();
        for (idx, (row, is_late)) in self.blocks.into_iter().flatten().enumerate() {
            rows.push(row);
            if is_late { late.push(idx) } else { early.push(idx) }
        }
        let order = if late.is_empty() { None } else { Some([early, late].concat()) };
        Ok((DifferenceMatrix::from_rows(&rows)?, BlockLayout::new(sizes)?, order))
    }
}

/// Assemble the final design with provenance.
pub(crate) fn finish(
    p: &MethodParams,
    asm: Assembler,
    claim: OptimalityClaim,
    derived: Vec<(&str, serde_json::Value)>,
    notes: Vec<String>,
) -> Result<BlockedDesign> {
    let (f, layout, order) = asm.finish()?;
    let mut params: BTreeMap<String, serde_json::Value> = match serde_json::to_value(p) {
        Ok(serde_json::Value::Object(m)) => m.into_iter().collect(),
        _ => BTreeMap::new(),
    };
    for (key, v) in derived {
        params.insert(key.to_string(), v);
    }
    let prov = Provenance { method: Some(p.method), params, claim: Some(claim), notes };
    let d = BlockedDesign::new(f, layout, prov)?;
    match order {
        Some(o) => d.with_step_order(o),
        None => Ok(d),
    }
}
