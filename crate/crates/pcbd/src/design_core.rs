//! Design data model: difference matrices, block layouts, effects coding and
//! the structural operators (Kronecker product, row concatenation, reblocking)
//! shared by every construction.
//!
//! A paired comparison shows two profiles over K two-level attributes. With
//! effects coding (level 1 ↦ +1, level 2 ↦ −1) the alternatives give ±1
//! matrices F₁ and F₂, and the design is described by the difference matrix
//! F = F₁ − F₂ with entries in {−2, 0, +2}. Rows are grouped into consecutive
//! blocks (respondents) by a [`BlockLayout`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::constructions::OptimalityClaim;
use crate::error::{Error, Result};
use crate::hadamard::SignMatrix;

/// Value of the optimal single-attribute comparison at two levels: (1,2) ↦ +2.
pub const A: i8 = 2;

/// Optimal complementary pair of single-attribute comparisons, (+2, −2)⊤; 1⊤A_v = 0.
pub const A_V: [i8; 2] = [2, -2];

/// The generator constants A and A_v as a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConstants {
    /// Scalar value A.
    pub a: i8,
    /// Complementary column A_v.
    pub a_v: [i8; 2],
}

impl Default for GeneratorConstants {
    fn default() -> Self {
        Self { a: A, a_v: A_V }
    }
}

/// Levels of one attribute in the two alternatives of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LevelPair {
    /// Level in the first alternative (1 or 2).
    pub first: u8,
    /// Level in the second alternative (1 or 2).
    pub second: u8,
}

impl LevelPair {
    /// The pair (first, second).
    pub fn new(first: u8, second: u8) -> Self {
        Self { first, second }
    }
}

impl std::fmt::Display for LevelPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

/// Dense row-major integer matrix used for structural operations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    /// Build from row-major data.
    ///
    /// # Errors
    ///
    /// Shape error when the data length is not rows·cols.
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "expected {} entries for {rows}×{cols}, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Build from equal-length rows.
    ///
    /// # Errors
    ///
    /// Shape error for ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::shape("ragged rows"));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    /// Column vector.
    pub fn column(v: &[i64]) -> Self {
        Self { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    /// r×c matrix of ones.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![1; rows * cols] }
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry (r, c).
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    /// Row-major entries.
    pub fn data(&self) -> &[i64] {
        &self.data
    }

    /// All rows as vectors.
    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect()
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c));
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    /// Matrix product.
    ///
    /// # Errors
    ///
    /// Shape error on inner-dimension mismatch.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = vec![0; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(Self { rows: self.rows, cols: other.cols, data })
    }

    /// Multiply every entry by `s`.
    pub fn scale(&self, s: i64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * s).collect() }
    }
}

impl From<&SignMatrix> for IntMatrix {
    fn from(h: &SignMatrix) -> Self {
        let data = (0..h.rows()).flat_map(|r| h.row(r).iter().map(|&v| i64::from(v))).collect();
        Self { rows: h.rows(), cols: h.cols(), data }
    }
}

/// Kronecker product A ⊗ B.
pub fn kron(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (rows, cols) = (a.rows * b.rows, a.cols * b.cols);
    let mut data = vec![0; rows * cols];
    for i in 0..a.rows {
        for j in 0..a.cols {
            let av = a.get(i, j);
            for k in 0..b.rows {
                for l in 0..b.cols {
                    data[(i * b.rows + k) * cols + j * b.cols + l] = av * b.get(k, l);
                }
            }
        }
    }
    IntMatrix { rows, cols, data }
}

/// N×K difference matrix with entries in {−2, 0, +2}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DifferenceMatrix {
    n: usize,
    k: usize,
    data: Vec<i8>,
}

impl DifferenceMatrix {
    /// Build from row-major entries.
    ///
    /// # Errors
    ///
    /// Shape error on length mismatch; coding error for entries outside {−2, 0, 2}.
    pub fn new(n: usize, k: usize, data: Vec<i8>) -> Result<Self> {
        if data.len() != n * k {
            return Err(Error::shape(format!("expected {} entries for {n}×{k}, got {}", n * k, data.len())));
        }
        if let Some(bad) = data.iter().find(|v| !matches!(v, -2 | 0 | 2)) {
            return Err(Error::Coding(format!("difference entry {bad} is not in {{-2, 0, 2}}")));
        }
        Ok(Self { n, k, data })
    }

    /// Build from equal-length rows.
    ///
    /// # Errors
    ///
    /// As [`DifferenceMatrix::new`].
    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let k = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::shape("ragged rows"));
        }
        Self::new(rows.len(), k, rows.concat())
    }

    /// Convert an integer matrix.
    ///
    /// # Errors
    ///
    /// Coding error for entries outside {−2, 0, 2}.
    pub fn from_int(m: &IntMatrix) -> Result<Self> {
        let data = m
            .data
            .iter()
            .map(|&v| i8::try_from(v).map_err(|_| Error::Coding(format!("entry {v} out of range"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(m.rows, m.cols, data)
    }

    /// "L·A": scale a ±1 matrix by A = 2.
    pub fn scaled(l: &SignMatrix) -> Self {
        let data = (0..l.rows()).flat_map(|r| l.row(r).iter().map(|&v| v * A)).collect();
        Self { n: l.rows(), k: l.cols(), data }
    }

    /// "H ⊗ A_v": each row h of a ±1 matrix becomes the complementary pair (2h, −2h).
    pub fn kron_av(h: &SignMatrix) -> Self {
        Self::kron_vec(h, &A_V)
    }

    /// "H ⊗ v" for a column vector v with entries in {−2, 2}; each row of H
    /// yields |v| consecutive rows.
    pub fn kron_vec(h: &SignMatrix, v: &[i8]) -> Self {
        let mut data = Vec::with_capacity(h.rows() * v.len() * h.cols());
        for r in 0..h.rows() {
            for &x in v {
                data.extend(h.row(r).iter().map(|&e| e * x));
            }
        }
        Self { n: h.rows() * v.len(), k: h.cols(), data }
    }

    /// A single row of K equal entries.
    pub fn constant_row(k: usize, value: i8) -> Self {
        Self { n: 1, k, data: vec![value; k] }
    }

    /// Number of pairs N.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of attributes K.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Entry (r, c).
    pub fn get(&self, r: usize, c: usize) -> i8 {
        self.data[r * self.k + c]
    }

    /// Row `r`.
    pub fn row(&self, r: usize) -> &[i8] {
        &self.data[r * self.k..(r + 1) * self.k]
    }

    /// Column `c`.
    pub fn col(&self, c: usize) -> Vec<i8> {
        (0..self.n).map(|r| self.get(r, c)).collect()
    }

    /// Row-major entries.
    pub fn data(&self) -> &[i8] {
        &self.data
    }

    /// All rows.
    pub fn to_rows(&self) -> Vec<Vec<i8>> {
        (0..self.n).map(|r| self.row(r).to_vec()).collect()
    }

    /// As an integer matrix.
    pub fn to_int(&self) -> IntMatrix {
        IntMatrix { rows: self.n, cols: self.k, data: self.data.iter().map(|&v| i64::from(v)).collect() }
    }

    /// Rows in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let data = idx.iter().flat_map(|&r| self.row(r).iter().copied()).collect();
        Self { n: idx.len(), k: self.k, data }
    }

    /// Columns in the given order.
    ///
    /// # Errors
    ///
    /// Index error for out-of-range or duplicate indices.
    pub fn select_columns(&self, idx: &[usize]) -> Result<Self> {
        for (pos, &c) in idx.iter().enumerate() {
            if c >= self.k || idx[..pos].contains(&c) {
                return Err(Error::Index(format!("invalid column selection {idx:?} for K={}", self.k)));
            }
        }
        let data = (0..self.n).flat_map(|r| idx.iter().map(move |&c| self.get(r, c))).collect();
        Ok(Self { n: self.n, k: idx.len(), data })
    }

    /// Negate one column.
    pub fn negate_column(&self, c: usize) -> Self {
        let mut out = self.clone();
        for r in 0..self.n {
            out.data[r * self.k + c] *= -1;
        }
        out
    }

    /// True when every entry is ±2.
    pub fn is_full_difference(&self) -> bool {
        self.data.iter().all(|&v| v != 0)
    }
}

/// Vertical stack of difference matrices.
///
/// # Errors
///
/// Shape error when the parts have different K or the list is empty.
pub fn concat_rows(parts: &[DifferenceMatrix]) -> Result<DifferenceMatrix> {
    let k = parts.first().ok_or_else(|| Error::shape("nothing to concatenate"))?.k;
    if let Some(p) = parts.iter().find(|p| p.k != k) {
        return Err(Error::shape(format!("cannot stack K={} under K={k}", p.k)));
    }
    let data = parts.iter().flat_map(|p| p.data.iter().copied()).collect();
    Ok(DifferenceMatrix { n: parts.iter().map(|p| p.n).sum(), k, data })
}

/// Effects-code a table of level pairs into (F₁, F₂, F = F₁ − F₂).
///
/// # Errors
///
/// Coding error for levels outside {1, 2}; shape error for ragged tables.
pub fn effects_code(pairs: &[Vec<LevelPair>]) -> Result<(IntMatrix, IntMatrix, DifferenceMatrix)> {
    let code = |l: u8| match l {
        1 => Ok(1i64),
        2 => Ok(-1),
        _ => Err(Error::Coding(format!("level {l} is not 1 or 2"))),
    };
    let mut f1 = Vec::with_capacity(pairs.len());
    let mut f2 = Vec::with_capacity(pairs.len());
    for row in pairs {
        f1.push(row.iter().map(|p| code(p.first)).collect::<Result<Vec<_>>>()?);
        f2.push(row.iter().map(|p| code(p.second)).collect::<Result<Vec<_>>>()?);
    }
    let (f1, f2) = (IntMatrix::from_rows(&f1)?, IntMatrix::from_rows(&f2)?);
    let diff: Vec<i64> = f1.data.iter().zip(&f2.data).map(|(a, b)| a - b).collect();
    let f = DifferenceMatrix::from_int(&IntMatrix::new(f1.rows, f1.cols, diff)?)?;
    Ok((f1, f2, f))
}

/// Canonical level pairs of a ±2 difference matrix: +2 ↦ (1,2), −2 ↦ (2,1).
///
/// # Errors
///
/// Ambiguity error for a zero entry.
pub fn decode(f: &DifferenceMatrix) -> Result<Vec<Vec<LevelPair>>> {
    (0..f.n)
        .map(|r| {
            f.row(r)
                .iter()
                .enumerate()
                .map(|(c, &v)| match v {
                    2 => Ok(LevelPair::new(1, 2)),
                    -2 => Ok(LevelPair::new(2, 1)),
                    _ => Err(Error::Ambiguity(format!("entry ({r},{c}) is 0; no canonical level pair"))),
                })
                .collect()
        })
        .collect()
}

/// Ordered block sizes (m₁, …, m_b) partitioning the rows into consecutive ranges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockLayout {
    sizes: Vec<usize>,
}

impl BlockLayout {
    /// Layout from positive sizes.
    ///
    /// # Errors
    ///
    /// Layout error for an empty list or a zero size.
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::Layout(format!("block sizes must be positive, got {sizes:?}")));
        }
        Ok(Self { sizes })
    }

    /// b blocks of size m.
    ///
    /// # Errors
    ///
    /// Layout error when b or m is zero.
    pub fn uniform(b: usize, m: usize) -> Result<Self> {
        Self::new(vec![m; b])
    }

    /// Block sizes.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Number of blocks b.
    pub fn blocks(&self) -> usize {
        self.sizes.len()
    }

    /// Total rows Σ m_i.
    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Row ranges of the blocks.
    pub fn ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.sizes
            .iter()
            .map(|&m| {
                let r = start..start + m;
                start += m;
                r
            })
            .collect()
    }

    /// Block index of every row.
    pub fn block_of_rows(&self) -> Vec<usize> {
        self.sizes.iter().enumerate().flat_map(|(b, &m)| std::iter::repeat_n(b, m)).collect()
    }

    /// Common block size when all blocks are equal.
    pub fn uniform_size(&self) -> Option<usize> {
        let m = self.sizes[0];
        self.sizes.iter().all(|&s| s == m).then_some(m)
    }
}

/// Block indicator Z (N×b): Z(r, j) = 1 iff row r lies in block j.
pub fn indicator(layout: &BlockLayout) -> IntMatrix {
    let (n, b) = (layout.total(), layout.blocks());
    let mut data = vec![0; n * b];
    for (r, blk) in layout.block_of_rows().into_iter().enumerate() {
        data[r * b + blk] = 1;
    }
    IntMatrix { rows: n, cols: b, data }
}

/// Class Ξ a design belongs to: N, K, block-size multiset and congruence tags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignClassDescriptor {
    /// Number of pairs.
    pub n: usize,
    /// Number of attributes.
    pub k: usize,
    /// Block sizes sorted ascending.
    pub block_sizes: Vec<usize>,
    /// Tags such as `N≡2(mod 4)`.
    pub tags: Vec<String>,
}

impl DesignClassDescriptor {
    /// Descriptor for N, K and a layout.
    pub fn new(n: usize, k: usize, layout: &BlockLayout) -> Self {
        let mut block_sizes = layout.sizes().to_vec();
        block_sizes.sort_unstable();
        let tags = vec![format!("N≡{}(mod 4)", n % 4), format!("N≡{}(mod 8)", n % 8)];
        Self { n, k, block_sizes, tags }
    }

    /// True when the descriptor agrees with N, K and the layout's multiset.
    pub fn consistent_with(&self, n: usize, k: usize, layout: &BlockLayout) -> bool {
        let mut s = layout.sizes().to_vec();
        s.sort_unstable();
        self.n == n && self.k == k && self.block_sizes == s
    }
}

/// Where a design came from.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Provenance {
    /// Construction method 1–27, if any.
    pub method: Option<u8>,
    /// Parameters as given and as derived by the construction.
    pub params: BTreeMap<String, serde_json::Value>,
    /// Optimality claim attached by the construction.
    pub claim: Option<OptimalityClaim>,
    /// Interpretation notes recorded by the construction.
    pub notes: Vec<String>,
}

/// A difference matrix partitioned into consecutive blocks, with class and provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockedDesign {
    f: DifferenceMatrix,
    layout: BlockLayout,
    class_desc: DesignClassDescriptor,
    provenance: Provenance,
    step_order: Option<Vec<usize>>,
}

impl BlockedDesign {
    /// Attach a layout to F.
    ///
    /// # Errors
    ///
    /// Layout error when the sizes do not sum to N.
    pub fn new(f: DifferenceMatrix, layout: BlockLayout, provenance: Provenance) -> Result<Self> {
        if layout.total() != f.n() {
            return Err(Error::Layout(format!(
                "block sizes {:?} sum to {}, design has {} rows",
                layout.sizes(),
                layout.total(),
                f.n()
            )));
        }
        let class_desc = DesignClassDescriptor::new(f.n(), f.k(), &layout);
        Ok(Self { f, layout, class_desc, provenance, step_order: None })
    }

    /// Same design without provenance.
    ///
    /// # Errors
    ///
    /// As [`BlockedDesign::new`].
    pub fn plain(f: DifferenceMatrix, layout: BlockLayout) -> Result<Self> {
        Self::new(f, layout, Provenance::default())
    }

    /// Record the order in which the construction steps generated the rows
    /// (a permutation of 0..N); level-pair rendering follows it.
    ///
    /// # Errors
    ///
    /// Layout error when `order` is not a permutation of the rows.
    pub fn with_step_order(mut self, order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; self.f.n()];
        for &r in &order {
            if r >= seen.len() || std::mem::replace(&mut seen[r], true) {
                return Err(Error::Layout("step order is not a permutation of the rows".into()));
            }
        }
        if order.len() != self.f.n() {
            return Err(Error::Layout("step order is not a permutation of the rows".into()));
        }
        self.step_order = Some(order);
        Ok(self)
    }

    /// Difference matrix F.
    pub fn f(&self) -> &DifferenceMatrix {
        &self.f
    }

    /// Block layout.
    pub fn layout(&self) -> &BlockLayout {
        &self.layout
    }

    /// Class descriptor.
    pub fn class_desc(&self) -> &DesignClassDescriptor {
        &self.class_desc
    }

    /// Provenance.
    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Mutable provenance.
    pub fn provenance_mut(&mut self) -> &mut Provenance {
        &mut self.provenance
    }

    /// Row order used for level-pair rendering (construction order).
    pub fn display_order(&self) -> Vec<usize> {
        self.step_order.clone().unwrap_or_else(|| (0..self.f.n()).collect())
    }

    /// Number of pairs N.
    pub fn n(&self) -> usize {
        self.f.n()
    }

    /// Number of attributes K.
    pub fn k(&self) -> usize {
        self.f.k()
    }

    /// Column sums of F within each block (b×K, in units of F's entries).
    pub fn block_sums(&self) -> Vec<Vec<i64>> {
        self.layout
            .ranges()
            .into_iter()
            .map(|rg| {
                (0..self.k())
                    .map(|c| rg.clone().map(|r| i64::from(self.f.get(r, c))).sum())
                    .collect()
            })
            .collect()
    }

    /// Level-pair text, one pair of the design per line, in construction order.
    ///
    /// # Errors
    ///
    /// Ambiguity error when F has a zero entry.
    pub fn to_pairs(&self) -> Result<String> {
        let pairs = decode(&self.f)?;
        let mut out = String::new();
        for r in self.display_order() {
            let line: Vec<String> = pairs[r].iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        Ok(out)
    }

    /// Level-pair text transposed: one attribute per line, pairs across.
    ///
    /// # Errors
    ///
    /// Ambiguity error when F has a zero entry.
    #[allow(clippy::needless_range_loop)]
    pub fn to_pairs_transposed(&self) -> Result<String> {
        let pairs = decode(&self.f)?;
        let order = self.display_order();
        let mut out = String::new();
        for c in 0..self.k() {
            let line: Vec<String> = order.iter().map(|&r| pairs[r][c].to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        Ok(out)
    }

    /// CSV with header `block,attr1..attrK`, one row per pair in block order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("block");
        for c in 1..=self.k() {
            let _ = write!(out, ",attr{c}");
        }
        out.push('\n');
        for (r, b) in self.layout.block_of_rows().into_iter().enumerate() {
            let _ = write!(out, "{}", b + 1);
            for &v in self.f.row(r) {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }

    /// Parse the CSV format written by [`BlockedDesign::to_csv`]. Block labels
    /// must be contiguous runs in order of first appearance.
    ///
    /// # Errors
    ///
    /// Format error for malformed input; coding/layout errors for invalid content.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let headers = rdr.headers().map_err(|e| Error::Format(e.to_string()))?.clone();
        if headers.get(0) != Some("block") || headers.len() < 2 {
            return Err(Error::Format("CSV header must be `block,attr1..attrK`".into()));
        }
        let mut rows = Vec::new();
        let mut labels: Vec<String> = Vec::new();
        let mut sizes: Vec<usize> = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::Format(e.to_string()))?;
            let label = rec.get(0).unwrap_or_default().to_string();
            match labels.last() {
                Some(last) if *last == label => *sizes.last_mut().unwrap_or(&mut 0) += 1,
                _ => {
                    if labels.contains(&label) {
                        return Err(Error::Layout(format!("block {label} is not contiguous")));
                    }
                    labels.push(label);
                    sizes.push(1);
                }
            }
            let row = rec
                .iter()
                .skip(1)
                .map(|s| s.parse::<i8>().map_err(|e| Error::Format(format!("{s:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::plain(DifferenceMatrix::from_rows(&rows)?, BlockLayout::new(sizes)?)
    }

    /// JSON with rows, layout, class descriptor and provenance.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DesignFile::from(self)).unwrap_or(serde_json::Value::Null)
    }

    /// Parse the JSON written by [`BlockedDesign::to_json`].
    ///
    /// # Errors
    ///
    /// Format error for malformed JSON; coding/layout errors for invalid content.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: DesignFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let f = DifferenceMatrix::from_rows(&file.rows)?;
        if f.k() != file.k || f.n() != file.n {
            return Err(Error::Format("declared N/K disagree with rows".into()));
        }
        let mut d = Self::new(f, BlockLayout::new(file.block_sizes)?, file.provenance)?;
        if let Some(order) = file.step_order {
            d = d.with_step_order(order)?;
        }
        Ok(d)
    }

    /// Parse CSV or JSON, choosing by the first non-blank character.
    ///
    /// # Errors
    ///
    /// As the underlying parser.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') { Self::from_json(text) } else { Self::from_csv(text) }
    }
}

#[derive(Serialize, Deserialize)]
struct DesignFile {
    n: usize,
    k: usize,
    block_sizes: Vec<usize>,
    rows: Vec<Vec<i8>>,
    class: DesignClassDescriptor,
    provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    step_order: Option<Vec<usize>>,
}

impl From<&BlockedDesign> for DesignFile {
    fn from(d: &BlockedDesign) -> Self {
        Self {
            n: d.n(),
            k: d.k(),
            block_sizes: d.layout.sizes().to_vec(),
            rows: d.f.to_rows(),
            class: d.class_desc.clone(),
            provenance: d.provenance.clone(),
            step_order: d.step_order.clone(),
        }
    }
}

/// Regroup consecutive blocks into larger ones; each new block must be a union
/// of whole consecutive old blocks.
///
/// # Errors
///
/// Layout error when a new boundary cuts an old block or the sizes do not sum to N.
pub fn reblock(d: &BlockedDesign, new_sizes: &BlockLayout) -> Result<BlockedDesign> {
    if new_sizes.total() != d.n() {
        return Err(Error::Layout(format!(
            "new sizes sum to {}, design has {} rows",
            new_sizes.total(),
            d.n()
        )));
    }
    let old: Vec<usize> = d.layout.ranges().iter().map(|r| r.end).collect();
    for r in new_sizes.ranges() {
        if !old.contains(&r.end) {
            return Err(Error::Layout(format!(
                "new boundary at row {} cuts an existing block",
                r.end
            )));
        }
    }
    let mut out = BlockedDesign::new(d.f.clone(), new_sizes.clone(), d.provenance.clone())?;
    out.step_order.clone_from(&d.step_order);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h2() -> SignMatrix {
        SignMatrix::from_rows(&[vec![1, 1], vec![1, -1]]).unwrap()
    }

    #[test]
    fn kron_h2_av() {
        let f = DifferenceMatrix::kron_av(&h2());
        assert_eq!(f.to_rows(), vec![vec![2, 2], vec![-2, -2], vec![2, -2], vec![-2, 2]]);
        let g = kron(&IntMatrix::from(&h2()), &IntMatrix::column(&[2, -2]));
        assert_eq!(g, f.to_int());
    }

    #[test]
    fn effects_code_rows() {
        let p12 = LevelPair::new(1, 2);
        let (f1, f2, f) = effects_code(&[vec![p12; 6]]).unwrap();
        assert!(f1.data().iter().all(|&v| v == 1));
        assert!(f2.data().iter().all(|&v| v == -1));
        assert!(f.data().iter().all(|&v| v == 2));
        let (_, _, f) = effects_code(&[vec![LevelPair::new(1, 1)]]).unwrap();
        assert_eq!(f.get(0, 0), 0);
        assert!(effects_code(&[vec![LevelPair::new(3, 1)]]).is_err());
    }

    #[test]
    fn decode_zero_is_ambiguous() {
        let f = DifferenceMatrix::from_rows(&[vec![2, 0]]).unwrap();
        assert!(matches!(decode(&f), Err(Error::Ambiguity(_))));
        let f = DifferenceMatrix::from_rows(&[vec![-2, 2]]).unwrap();
        assert_eq!(decode(&f).unwrap()[0], vec![LevelPair::new(2, 1), LevelPair::new(1, 2)]);
    }

    #[test]
    fn indicator_small() {
        let z = indicator(&BlockLayout::new(vec![2, 2]).unwrap());
        assert_eq!(z.to_rows(), vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]]);
    }

    #[test]
    fn concat_shape_error() {
        let a = DifferenceMatrix::constant_row(2, 2);
        let b = DifferenceMatrix::constant_row(3, 2);
        assert!(concat_rows(&[a, b]).is_err());
    }

    #[test]
    fn reblock_alignment() {
        let f = DifferenceMatrix::kron_av(&crate::hadamard::sylvester(3).unwrap());
        let d = BlockedDesign::plain(f.select_rows(&(0..16).collect::<Vec<_>>()), BlockLayout::uniform(8, 2).unwrap())
            .unwrap();
        assert!(reblock(&d, &BlockLayout::new(vec![4, 12]).unwrap()).is_ok());
        assert!(reblock(&d, &BlockLayout::new(vec![5, 11]).unwrap()).is_err());
    }
}
