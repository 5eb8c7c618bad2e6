//! Hadamard matrices: generation, normalization, verification and column slicing.
//!
//! A Hadamard matrix of order n is an n×n matrix with entries ±1 whose rows are
//! mutually orthogonal, i.e. H·H⊤ = n·I. Orders are 1, 2 or multiples of 4.
//!
//! Orders are served by precedence:
//! 1. Sylvester doubling in natural (Walsh) order when n is a power of two,
//! 2. Paley type I (n−1 a prime power ≡ 3 mod 4) or type II (n/2−1 a prime
//!    power ≡ 1 mod 4),
//! 3. Sylvester doubling of a smaller available order,
//! 4. extra CSV files in the directory named by `PCBD_HADAMARD_DIR`
//!    ([`lookup`] only).
//!
//! Every generated matrix is verified with exact integer arithmetic before it
//! is returned.

use std::path::Path;

use crate::error::{Error, Result};

/// Largest order served by the generators unless a caller asks otherwise.
pub const DEFAULT_MAX_ORDER: usize = 256;

/// Environment variable naming a directory of extra Hadamard matrices (CSV of ±1).
pub const HADAMARD_DIR_ENV: &str = "PCBD_HADAMARD_DIR";

/// A rectangular matrix with entries in {−1, +1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i8>,
}

impl SignMatrix {
    /// Build from row-major entries; every entry must be −1 or +1.
    pub fn new(rows: usize, cols: usize, data: Vec<i8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::shape("sign matrix needs at least one row and column"));
        }
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "expected {} entries for a {rows}×{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|&&v| v != 1 && v != -1) {
            return Err(Error::Coding(format!("sign matrix entry {bad} is not ±1")));
        }
        Ok(Self { rows, cols, data })
    }

    /// Build from a list of equal-length rows.
    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::shape("ragged rows"));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> i8) -> Self {
        let data = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Self { rows, cols, data }
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at (row, col).
    pub fn get(&self, r: usize, c: usize) -> i8 {
        self.data[r * self.cols + c]
    }

    /// Row `r` as a slice.
    pub fn row(&self, r: usize) -> &[i8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Column `c` as a vector.
    pub fn col(&self, c: usize) -> Vec<i8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// All rows as vectors.
    pub fn to_rows(&self) -> Vec<Vec<i8>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Rows taken in the given order (indices may repeat).
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    fn negate_row(&mut self, r: usize) {
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v = -*v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            self.data[r * self.cols + c] *= -1;
        }
    }

    /// Gram matrix of the rows, H·H⊤, in exact integers.
    pub fn row_gram(&self) -> Vec<i64> {
        let n = self.rows;
        let mut g = vec![0i64; n * n];
        for i in 0..n {
            for j in i..n {
                let s: i64 = self
                    .row(i)
                    .iter()
                    .zip(self.row(j))
                    .map(|(&a, &b)| i64::from(a * b))
                    .sum();
                g[i * n + j] = s;
                g[j * n + i] = s;
            }
        }
        g
    }

    /// True when the first row and first column are all +1.
    pub fn is_normalized(&self) -> bool {
        self.row(0).iter().all(|&v| v == 1) && (0..self.rows).all(|r| self.get(r, 0) == 1)
    }
}

/// Result of verifying a candidate Hadamard matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct HadamardCertificate {
    /// Order n.
    pub order: usize,
    /// First row and column all +1.
    pub normalized: bool,
}

/// True iff `h` is square and H·H⊤ = n·I exactly.
///
/// # Errors
///
/// Returns a shape error for non-square input.
pub fn verify(h: &SignMatrix) -> Result<bool> {
    if h.rows != h.cols {
        return Err(Error::shape(format!(
            "Hadamard verification needs a square matrix, got {}×{}",
            h.rows, h.cols
        )));
    }
    let n = h.rows;
    let g = h.row_gram();
    Ok((0..n).all(|i| (0..n).all(|j| g[i * n + j] == if i == j { n as i64 } else { 0 })))
}

/// Verify and describe a Hadamard matrix.
///
/// # Errors
///
/// Shape error for non-square input, verification error when H·H⊤ ≠ n·I.
pub fn certify(h: &SignMatrix) -> Result<HadamardCertificate> {
    if !verify(h)? {
        return Err(Error::NotHadamard(format!("H·H⊤ ≠ {}·I", h.rows)));
    }
    Ok(HadamardCertificate { order: h.rows, normalized: h.is_normalized() })
}

/// Sylvester matrix of order 2^k in natural order: entry (i, j) = (−1)^popcount(i ∧ j).
///
/// # Errors
///
/// Size error when 2^k exceeds [`DEFAULT_MAX_ORDER`].
pub fn sylvester(k: u32) -> Result<SignMatrix> {
    sylvester_with_max(k, DEFAULT_MAX_ORDER)
}

/// [`sylvester`] with an explicit order limit.
///
/// # Errors
///
/// Size error when 2^k exceeds `max_order`.
pub fn sylvester_with_max(k: u32, max_order: usize) -> Result<SignMatrix> {
    let n = 1usize
        .checked_shl(k)
        .filter(|&n| n <= max_order && k < usize::BITS)
        .ok_or_else(|| Error::Size(format!("Sylvester order 2^{k} exceeds limit {max_order}")))?;
    Ok(SignMatrix::from_fn(n, n, |i, j| if (i & j).count_ones() % 2 == 0 { 1 } else { -1 }))
}

/// Column indices of a Sylvester matrix of order n sorted by Hamming weight of
/// the index (then by index): the constant column, then the n/2-periodic
/// "main effect" columns, then their products.
pub fn sylvester_weight_order(n: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by_key(|&c| (c.count_ones(), c));
    idx
}

/// Decompose q as p^k with p prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Finite field GF(p^k) with elements encoded as base-p digit strings.
struct Gf {
    p: u64,
    k: u32,
    q: u64,
    /// Low coefficients of the monic modulus x^k + Σ c_i x^i.
    modulus: Vec<u64>,
}

impl Gf {
    fn new(p: u64, k: u32) -> Self {
        let q = p.pow(k);
        let modulus = if k == 1 { vec![0] } else { Self::find_irreducible(p, k) };
        Self { p, k, q, modulus }
    }

    fn digits(&self, a: u64) -> Vec<u64> {
        let mut d = vec![0; self.k as usize];
        let mut a = a;
        for slot in &mut d {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    fn encode(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (self.digits(a), self.digits(b));
        let d: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + self.p - y) % self.p).collect();
        self.encode(&d)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for deg in (k..prod.len()).rev() {
            let c = prod[deg];
            if c != 0 {
                prod[deg] = 0;
                for (i, &m) in self.modulus.iter().enumerate() {
                    let off = deg - k + i;
                    prod[off] = (prod[off] + self.p * self.p - c * m % self.p) % self.p;
                }
            }
        }
        self.encode(&prod[..k])
    }

    fn pow(&self, a: u64, mut e: u64) -> u64 {
        let (mut base, mut acc) = (a, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Quadratic character: 0 at 0, +1 on nonzero squares, −1 otherwise.
    fn chi(&self, a: u64) -> i8 {
        if a == 0 {
            0
        } else if self.pow(a, (self.q - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// Smallest monic irreducible polynomial of degree k over GF(p), by trial division.
    fn find_irreducible(p: u64, k: u32) -> Vec<u64> {
        let k = k as usize;
        let count = p.pow(k as u32);
        (0..count)
            .map(|code| {
                let mut low = Vec::with_capacity(k);
                let mut c = code;
                for _ in 0..k {
                    low.push(c % p);
                    c /= p;
                }
                low
            })
            .find(|low| {
                let mut f = low.clone();
                f.push(1);
                low[0] != 0 && (1..=k / 2).all(|d| !has_monic_factor_of_degree(&f, d, p))
            })
            .expect("an irreducible polynomial exists for every degree")
    }
}

fn has_monic_factor_of_degree(f: &[u64], d: usize, p: u64) -> bool {
    (0..p.pow(d as u32)).any(|code| {
        let mut g = Vec::with_capacity(d + 1);
        let mut c = code;
        for _ in 0..d {
            g.push(c % p);
            c /= p;
        }
        g.push(1);
        poly_rem_is_zero(f, &g, p)
    })
}

fn poly_rem_is_zero(f: &[u64], g: &[u64], p: u64) -> bool {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap_or(&0);
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gi) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * gi % p) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

/// Paley construction from an odd prime power q.
///
/// q ≡ 3 (mod 4) gives order q+1 (type I); q ≡ 1 (mod 4) gives order 2(q+1)
/// (type II). The type-I matrix has first row and column all +1 and core
/// −(Q + I) with Q(i, j) = χ(x_i − x_j); for q = 11 this is the familiar
/// order-12 matrix built from a Toeplitz core.
///
/// # Errors
///
/// Parameter error when q is even or not a prime power; size error when the
/// resulting order exceeds [`DEFAULT_MAX_ORDER`].
pub fn paley(q: u64) -> Result<SignMatrix> {
    let (p, k) = prime_power(q)
        .filter(|&(p, _)| p != 2)
        .ok_or_else(|| Error::Parameter(format!("Paley needs an odd prime power, got {q}")))?;
    let order = if q % 4 == 3 { q + 1 } else { 2 * (q + 1) };
    if order as usize > DEFAULT_MAX_ORDER {
        return Err(Error::Size(format!("Paley order {order} exceeds limit {DEFAULT_MAX_ORDER}")));
    }
    let gf = Gf::new(p, k);
    let h = if q % 4 == 3 { paley_one(&gf) } else { paley_two(&gf) };
    debug_assert!(verify(&h).unwrap_or(false));
    Ok(h)
}

fn paley_one(gf: &Gf) -> SignMatrix {
    let n = (gf.q + 1) as usize;
    SignMatrix::from_fn(n, n, |i, j| {
        if i == 0 || j == 0 {
            1
        } else {
            let (x, y) = ((i - 1) as u64, (j - 1) as u64);
            let delta = i8::from(i == j);
            -(gf.chi(gf.sub(x, y)) + delta)
        }
    })
}

fn paley_two(gf: &Gf) -> SignMatrix {
    let m = (gf.q + 1) as usize;
    let s = |i: usize, j: usize| -> i8 {
        match (i, j) {
            (0, 0) => 0,
            (0, _) | (_, 0) => 1,
            _ => gf.chi(gf.sub((i - 1) as u64, (j - 1) as u64)),
        }
    };
    let h = SignMatrix::from_fn(2 * m, 2 * m, |r, c| {
        let (i, a, j, b) = (r / 2, r % 2, c / 2, c % 2);
        let sv = s(i, j);
        if sv == 0 {
            // identity block [[1, −1], [−1, −1]]
            if a == 0 && b == 0 { 1 } else { -1 }
        } else {
            // S ⊗ [[1, 1], [1, −1]]
            if a == 1 && b == 1 { -sv } else { sv }
        }
    });
    normalize_unchecked(h)
}

/// Cyclic (Plackett–Burman) arrangement of a Paley type-I matrix of order n,
/// available when q = n−1 is a prime ≡ 3 (mod 4).
///
/// Row k (k < q) is `[1, g_k]` where g_k is the k-th cyclic shift of the
/// generator g(d) = χ(d) (with g(0) = +1); the last row is `[1, −1, …, −1]`.
/// For n = 12 the generator is `+ + − + + + − − − + −`.
///
/// # Errors
///
/// Unsupported-order error when n−1 is not a prime ≡ 3 (mod 4).
pub fn plackett_burman(n: usize) -> Result<SignMatrix> {
    let q = n.saturating_sub(1) as u64;
    let ok = matches!(prime_power(q), Some((_, 1))) && q % 4 == 3;
    if !ok {
        return Err(Error::UnsupportedOrder {
            order: n,
            available: "orders n with n−1 a prime ≡ 3 (mod 4)".into(),
        });
    }
    let gf = Gf::new(q, 1);
    let g = |d: u64| if d == 0 { 1 } else { gf.chi(d) };
    let qn = q as usize;
    let h = SignMatrix::from_fn(n, n, |i, j| {
        if j == 0 {
            1
        } else if i == qn {
            -1
        } else {
            g(((j - 1) as u64 + q - i as u64) % q)
        }
    });
    debug_assert!(verify(&h).unwrap_or(false));
    Ok(h)
}

/// Built-in Hadamard matrix of the given order (Sylvester, Paley, or doubling).
///
/// # Errors
///
/// Unsupported-order error listing the available orders up to
/// [`DEFAULT_MAX_ORDER`].
pub fn known(order: usize) -> Result<SignMatrix> {
    builtin(order).ok_or_else(|| Error::UnsupportedOrder {
        order,
        available: format_orders(&available_orders(DEFAULT_MAX_ORDER)),
    })
}

fn builtin(order: usize) -> Option<SignMatrix> {
    if order == 0 || order > DEFAULT_MAX_ORDER {
        return None;
    }
    if order.is_power_of_two() {
        return sylvester(order.trailing_zeros()).ok();
    }
    if !order.is_multiple_of(4) {
        return None;
    }
    let q1 = (order - 1) as u64;
    if q1 % 4 == 3 && prime_power(q1).is_some() {
        return paley(q1).ok();
    }
    let q2 = (order / 2 - 1) as u64;
    if q2 % 4 == 1 && prime_power(q2).is_some_and(|(p, _)| p != 2) {
        return paley(q2).ok();
    }
    let half = builtin(order / 2)?;
    Some(double(&half))
}

/// Sylvester doubling [[H, H], [H, −H]].
pub fn double(h: &SignMatrix) -> SignMatrix {
    let n = h.rows;
    SignMatrix::from_fn(2 * n, 2 * h.cols, |i, j| {
        let v = h.get(i % n, j % h.cols);
        if i >= n && j >= h.cols { -v } else { v }
    })
}

/// Orders up to `max` served by [`known`].
pub fn available_orders(max: usize) -> Vec<usize> {
    (1..=max.min(DEFAULT_MAX_ORDER))
        .filter(|&n| n == 1 || n == 2 || n % 4 == 0)
        .filter(|&n| builtin(n).is_some())
        .collect()
}

fn format_orders(orders: &[usize]) -> String {
    orders.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Whether [`lookup`] can serve the order.
pub fn is_available(order: usize) -> bool {
    builtin(order).is_some() || from_dir(order).is_some()
}

/// [`known`], falling back to square ±1 CSV files in `PCBD_HADAMARD_DIR`.
///
/// Files are scanned in name order; the first verified matrix of the right
/// order wins.
///
/// # Errors
///
/// Unsupported-order error when neither source has the order.
pub fn lookup(order: usize) -> Result<SignMatrix> {
    builtin(order).or_else(|| from_dir(order)).ok_or_else(|| Error::UnsupportedOrder {
        order,
        available: format_orders(&available_orders(DEFAULT_MAX_ORDER)),
    })
}

fn from_dir(order: usize) -> Option<SignMatrix> {
    let dir = std::env::var_os(HADAMARD_DIR_ENV)?;
    let mut paths: Vec<_> = std::fs::read_dir(Path::new(&dir))
        .ok()?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .collect();
    paths.sort();
    paths.into_iter().find_map(|p| {
        let h = read_csv(&p).ok()?;
        (h.rows == order && verify(&h).unwrap_or(false)).then_some(h)
    })
}

/// Parse a CSV of ±1 entries (no header).
///
/// # Errors
///
/// I/O or format errors, or entries other than ±1.
pub fn read_csv(path: &Path) -> Result<SignMatrix> {
    let text = std::fs::read_to_string(path)?;
    parse_csv(&text)
}

/// Parse CSV text of ±1 entries (no header).
///
/// # Errors
///
/// Format error for non-integer entries; coding error for entries other than ±1.
pub fn parse_csv(text: &str) -> Result<SignMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Format(e.to_string()))?;
        let row = rec
            .iter()
            .map(|s| s.parse::<i8>().map_err(|e| Error::Format(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    SignMatrix::from_rows(&rows)
}

/// Render as CSV of ±1 entries, one row per line.
pub fn to_csv(h: &SignMatrix) -> String {
    let mut out = String::new();
    for r in 0..h.rows {
        let line: Vec<String> = h.row(r).iter().map(ToString::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Negate rows so the first column is +1, then columns so the first row is +1.
///
/// # Errors
///
/// Verification error when `h` is not Hadamard.
pub fn normalize(h: &SignMatrix) -> Result<SignMatrix> {
    certify(h)?;
    Ok(normalize_unchecked(h.clone()))
}

fn normalize_unchecked(mut h: SignMatrix) -> SignMatrix {
    for r in 0..h.rows {
        if h.get(r, 0) == -1 {
            h.negate_row(r);
        }
    }
    for c in 0..h.cols {
        if h.get(0, c) == -1 {
            h.negate_col(c);
        }
    }
    h
}

/// Column submatrix in the given order.
///
/// # Errors
///
/// Index error for duplicate or out-of-range indices.
pub fn select_columns(h: &SignMatrix, idx: &[usize]) -> Result<SignMatrix> {
    if idx.is_empty() {
        return Err(Error::Index("no columns selected".into()));
    }
    for (pos, &c) in idx.iter().enumerate() {
        if c >= h.cols {
            return Err(Error::Index(format!("column {c} out of range 0..{}", h.cols)));
        }
        if idx[..pos].contains(&c) {
            return Err(Error::Index(format!("column {c} selected twice")));
        }
    }
    Ok(SignMatrix::from_fn(h.rows, idx.len(), |i, j| h.get(i, idx[j])))
}

/// Indices of columns whose first `i` entries are all +1.
pub fn columns_with_leading_ones(h: &SignMatrix, i: usize) -> Vec<usize> {
    (0..h.cols).filter(|&c| (0..i.min(h.rows)).all(|r| h.get(r, c) == 1)).collect()
}

/// Rows reordered so rows with +1 in `col` come first, then rows with −1,
/// each group in original order. Returns the reordered matrix and the size of
/// the +1 group.
pub fn split_by_column(h: &SignMatrix, col: usize) -> (SignMatrix, usize) {
    let plus: Vec<usize> = (0..h.rows).filter(|&r| h.get(r, col) == 1).collect();
    let minus = (0..h.rows).filter(|&r| h.get(r, col) == -1);
    let n_plus = plus.len();
    let order: Vec<usize> = plus.into_iter().chain(minus).collect();
    (h.select_rows(&order), n_plus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_sylvester() {
        assert_eq!(sylvester(0).unwrap().to_rows(), vec![vec![1]]);
        assert_eq!(sylvester(1).unwrap().to_rows(), vec![vec![1, 1], vec![1, -1]]);
    }

    #[test]
    fn sylvester_limit() {
        assert!(matches!(sylvester(9), Err(Error::Size(_))));
        assert!(sylvester_with_max(9, 512).is_ok());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(2), Some((2, 1)));
    }

    #[test]
    fn paley_parameter_errors() {
        assert!(matches!(paley(4), Err(Error::Parameter(_))));
        assert!(matches!(paley(15), Err(Error::Parameter(_))));
    }

    #[test]
    fn paley_prime_powers_verify() {
        for q in [3u64, 5, 7, 9, 11, 13, 19, 23, 25, 27] {
            let h = paley(q).unwrap();
            assert!(verify(&h).unwrap(), "q={q}");
            assert!(h.is_normalized(), "q={q}");
        }
    }

    #[test]
    fn plackett_burman_generator() {
        let h = plackett_burman(12).unwrap();
        let g: Vec<i8> = h.row(0)[1..].to_vec();
        assert_eq!(g, vec![1, 1, -1, 1, 1, 1, -1, -1, -1, 1, -1]);
        assert!(verify(&h).unwrap());
        assert!(plackett_burman(16).is_err());
    }

    #[test]
    fn normalize_examples() {
        let h = SignMatrix::from_rows(&[vec![-1, -1], vec![-1, 1]]).unwrap();
        assert_eq!(normalize(&h).unwrap().to_rows(), vec![vec![1, 1], vec![1, -1]]);
        let bad = SignMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(normalize(&bad).is_err());
    }

    #[test]
    fn non_square_verify_is_shape_error() {
        let h = SignMatrix::from_rows(&[vec![1, 1, 1], vec![1, -1, 1]]).unwrap();
        assert!(matches!(verify(&h), Err(Error::Shape(_))));
    }

    #[test]
    fn weight_order_of_eight() {
        assert_eq!(sylvester_weight_order(8), vec![0, 1, 2, 4, 3, 5, 6, 7]);
    }
}
