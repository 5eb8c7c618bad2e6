//! Blocked information matrix, orthogonal-blocking test and optimality
//! criteria, all in exact rational arithmetic.
//!
//! Scale convention: M = ¼·(F⊤F − F⊤Z(Z⊤Z)⁻¹Z⊤F). With F entries ±2 this
//! reproduces closed forms such as (N−2)I + 2J directly; the 1/(4N)-normalized
//! matrix is available through [`InfoMatrix::normalized`].

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::design_core::{indicator, BlockedDesign};
use crate::error::{Error, Result};
use crate::rational::{self, int, to_f64, Rational};

/// Default absolute tolerance for floating-point eigenvalue bounds.
pub const DEFAULT_EIGEN_TOLERANCE: f64 = 1e-10;

/// Symmetric K×K exact rational information matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfoMatrix {
    k: usize,
    entries: Vec<Rational>,
}

impl InfoMatrix {
    /// Build from row-major entries.
    ///
    /// # Errors
    ///
    /// Shape error on length mismatch or asymmetry.
    pub fn new(k: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != k * k {
            return Err(Error::shape(format!("expected {} entries for {k}×{k}", k * k)));
        }
        let m = Self { k, entries };
        for i in 0..k {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::shape("information matrix must be symmetric"));
                }
            }
        }
        Ok(m)
    }

    /// αI + βJ of order k.
    pub fn from_ij(form: &IJForm, k: usize) -> Self {
        let entries = (0..k * k)
            .map(|idx| if idx / k == idx % k { &form.alpha + &form.beta } else { form.beta.clone() })
            .collect();
        Self { k, entries }
    }

    /// Zero matrix of order k.
    pub fn zeros(k: usize) -> Self {
        Self { k, entries: vec![Rational::zero(); k * k] }
    }

    /// Order K.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Entry (i, j).
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.k + j]
    }

    /// Rows as rationals.
    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.k.max(1)).map(<[Rational]>::to_vec).collect()
    }

    /// Rows rendered as `p` or `p/q` strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries.chunks(self.k.max(1)).map(|r| r.iter().map(rational::fmt).collect()).collect()
    }

    /// Entrywise difference self − other.
    ///
    /// # Errors
    ///
    /// Shape error when orders differ.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::shape(format!("cannot compare K={} with K={}", self.k, other.k)));
        }
        Ok(Self { k: self.k, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() })
    }

    /// Every entry multiplied by `s`.
    pub fn scale(&self, s: &Rational) -> Self {
        Self { k: self.k, entries: self.entries.iter().map(|v| v * s).collect() }
    }

    /// The 1/(4N)-normalized matrix, i.e. M / N.
    pub fn normalized(&self, n: usize) -> Self {
        self.scale(&rational::rat(1, i64::try_from(n.max(1)).unwrap_or(i64::MAX)))
    }

    /// Trace.
    pub fn trace(&self) -> Rational {
        (0..self.k).map(|i| self.get(i, i).clone()).sum()
    }

    /// Exact determinant by rational Gaussian elimination.
    #[allow(clippy::needless_range_loop)]
    pub fn det(&self) -> Rational {
        let mut a = self.rows();
        let n = self.k;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let pivot = a[c][c].clone();
            det *= &pivot;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] / &pivot;
                for j in c..n {
                    let v = &f * &a[c][j];
                    a[r][j] -= v;
                }
            }
        }
        det
    }

    /// Exact inverse by Gauss–Jordan elimination.
    ///
    /// # Errors
    ///
    /// Singularity error when M is singular.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.k;
        let mut a = self.rows();
        let mut inv: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[r][c].is_zero())
                .ok_or_else(|| Error::Singular(format!("information matrix has rank < {n}")))?;
            a.swap(p, c);
            inv.swap(p, c);
            let pivot = a[c][c].clone();
            for j in 0..n {
                a[c][j] /= &pivot;
                inv[c][j] /= &pivot;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for j in 0..n {
                    let (x, y) = (&f * &a[c][j], &f * &inv[c][j]);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
        Ok(Self { k: n, entries: inv.concat() })
    }

    /// Floating-point copy.
    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.k, self.k, |i, j| to_f64(self.get(i, j)))
    }

    /// Read as αI + βJ when the matrix has that form.
    pub fn as_ij(&self) -> Option<IJForm> {
        if self.k == 0 {
            return None;
        }
        let diag = self.get(0, 0).clone();
        let off = if self.k > 1 { self.get(0, 1).clone() } else { Rational::zero() };
        for i in 0..self.k {
            for j in 0..self.k {
                let want = if i == j { &diag } else { &off };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(IJForm { alpha: &diag - &off, beta: off })
    }
}

impl Serialize for InfoMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for InfoMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let k = rows.len();
        let entries = rows
            .iter()
            .flatten()
            .map(|s| rational::parse(s).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(k, entries).map_err(serde::de::Error::custom)
    }
}

/// A matrix of the form αI_K + βJ_K.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IJForm {
    /// Identity coefficient.
    #[serde(with = "rational::as_str")]
    pub alpha: Rational,
    /// All-ones coefficient.
    #[serde(with = "rational::as_str")]
    pub beta: Rational,
}

impl IJForm {
    /// αI + βJ.
    pub fn new(alpha: Rational, beta: Rational) -> Self {
        Self { alpha, beta }
    }
}

impl std::fmt::Display for IJForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})I + ({})J", rational::fmt(&self.alpha), rational::fmt(&self.beta))
    }
}

/// Eigenvalues of αI_K + βJ_K: α with multiplicity K−1 and α + Kβ, sorted ascending.
pub fn ij_eigenvalues(m: &IJForm, k: usize) -> Vec<Rational> {
    if k == 0 {
        return Vec::new();
    }
    let mut v = vec![m.alpha.clone(); k - 1];
    v.push(&m.alpha + &m.beta * int(i64::try_from(k).unwrap_or(i64::MAX)));
    v.sort();
    v
}

/// M by block sums: ¼(F⊤F − Σ_b s_b s_b⊤ / m_b), s_b the column sums of block b.
pub fn compute_info(d: &BlockedDesign) -> InfoMatrix {
    let f = d.f();
    let k = f.k();
    let mut gram = vec![0i64; k * k];
    for r in 0..f.n() {
        let row = f.row(r);
        for i in 0..k {
            for j in 0..k {
                gram[i * k + j] += i64::from(row[i]) * i64::from(row[j]);
            }
        }
    }
    let mut entries: Vec<Rational> = gram.iter().map(|&g| int(g)).collect();
    for (s, &m) in d.block_sums().iter().zip(d.layout().sizes()) {
        let m = int(i64::try_from(m).unwrap_or(i64::MAX));
        for i in 0..k {
            for j in 0..k {
                if s[i] != 0 && s[j] != 0 {
                    entries[i * k + j] -= int(s[i] * s[j]) / &m;
                }
            }
        }
    }
    let quarter = rational::rat(1, 4);
    InfoMatrix { k, entries: entries.into_iter().map(|v| v * &quarter).collect() }
}

/// M by the explicit projector ¼F⊤(I − Z(Z⊤Z)⁻¹Z⊤)F, using Z⊤Z = mI when
/// all blocks have size m. Slower than [`compute_info`]; used to cross-check it.
#[allow(clippy::needless_range_loop)]
pub fn compute_info_projector(d: &BlockedDesign) -> InfoMatrix {
    let f = d.f().to_int();
    let z = indicator(d.layout());
    let (n, k, b) = (f.rows(), f.cols(), z.cols());
    let ztz_inv: Vec<Rational> = match d.layout().uniform_size() {
        Some(m) => vec![rational::rat(1, i64::try_from(m).unwrap_or(i64::MAX)); b],
        None => d.layout().sizes().iter().map(|&m| rational::rat(1, i64::try_from(m).unwrap_or(i64::MAX))).collect(),
    };
    // P = I − Z diag(1/m_j) Z⊤
    let block = d.layout().block_of_rows();
    let mut pf: Vec<Vec<Rational>> = vec![vec![Rational::zero(); k]; n];
    let ztf = z.transpose().matmul(&f).unwrap_or_else(|_| unreachable!("Z and F share N rows"));
    for r in 0..n {
        for c in 0..k {
            pf[r][c] = int(f.get(r, c)) - int(ztf.get(block[r], c)) * &ztz_inv[block[r]];
        }
    }
    let quarter = rational::rat(1, 4);
    let mut entries = vec![Rational::zero(); k * k];
    for i in 0..k {
        for j in 0..k {
            let s: Rational = (0..n).map(|r| int(f.get(r, i)) * &pf[r][j]).sum();
            entries[i * k + j] = s * &quarter;
        }
    }
    InfoMatrix { k, entries }
}

/// ¼F⊤F, the information matrix ignoring blocks.
pub fn unblocked_info(d: &BlockedDesign) -> InfoMatrix {
    let g = d.f().to_int();
    let gram = g.transpose().matmul(&g).unwrap_or_else(|_| unreachable!("F⊤ and F conform"));
    let quarter = rational::rat(1, 4);
    InfoMatrix { k: g.cols(), entries: gram.data().iter().map(|&v| int(v) * &quarter).collect() }
}

/// True iff every column of F sums to zero within every block (F⊤Z = 0).
pub fn is_orthogonally_blocked(d: &BlockedDesign) -> bool {
    d.block_sums().iter().all(|s| s.iter().all(|&v| v == 0))
}

/// Optimality criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Criterion {
    /// det M (maximize).
    D,
    /// trace M⁻¹ (minimize).
    A,
    /// λ_min(M) (maximize).
    E,
    /// trace M (maximize).
    Trace,
}

impl Criterion {
    /// All criteria.
    pub const ALL: [Criterion; 4] = [Criterion::D, Criterion::A, Criterion::E, Criterion::Trace];

    /// True when larger values are better.
    pub fn maximize(self) -> bool {
        !matches!(self, Criterion::A)
    }
}

impl std::str::FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "D" => Ok(Criterion::D),
            "A" => Ok(Criterion::A),
            "E" => Ok(Criterion::E),
            "TRACE" => Ok(Criterion::Trace),
            _ => Err(Error::Parameter(format!("unknown criterion {s:?}; expected D, A, E or trace"))),
        }
    }
}

impl std::fmt::Display for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Criterion::D => "D",
            Criterion::A => "A",
            Criterion::E => "E",
            Criterion::Trace => "TRACE",
        })
    }
}

/// A real number a − √r with rational a and r ≥ 0, compared exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    /// Rational part.
    pub a: Rational,
    /// Radicand (≥ 0).
    pub r: Rational,
}

impl Surd {
    /// Rational value a.
    pub fn rational(a: Rational) -> Self {
        Self { a, r: Rational::zero() }
    }

    /// The rational value when √r is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        rational_sqrt(&self.r).map(|s| &self.a - s)
    }

    /// Nearest f64.
    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) - to_f64(&self.r).sqrt()
    }
}

/// Sign of u·√r − t for rationals u, t and r ≥ 0.
fn cmp_scaled_sqrt(u: &Rational, r: &Rational, t: &Rational) -> Ordering {
    let lhs_sign = if u.is_zero() || r.is_zero() { Ordering::Equal } else if u.is_positive() { Ordering::Greater } else { Ordering::Less };
    let t_sign = t.cmp(&Rational::zero());
    match (lhs_sign, t_sign) {
        (Ordering::Equal, _) => t_sign.reverse(),
        (Ordering::Greater, Ordering::Less | Ordering::Equal) => Ordering::Greater,
        (Ordering::Less, Ordering::Greater | Ordering::Equal) => Ordering::Less,
        // same signs: compare squares, flipping when both are negative
        (s, _) => {
            let ord = (u * u * r).cmp(&(t * t));
            if s == Ordering::Greater { ord } else { ord.reverse() }
        }
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        // (a1 − √r1) − (a2 − √r2) = x − √r1, x = (a1 − a2) + √r2
        let d = &self.a - &other.a;
        // sign of x: x = d + √r2
        let x_sign = cmp_scaled_sqrt(&Rational::one(), &other.r, &-d.clone());
        if x_sign != Ordering::Greater {
            // x ≤ 0 ⇒ x − √r1 ≤ 0, equal only when both vanish
            return if x_sign == Ordering::Equal && self.r.is_zero() { Ordering::Equal } else { Ordering::Less };
        }
        // x > 0: compare x² = d² + 2d√r2 + r2 with r1
        let t = &self.r - &d * &d - &other.r;
        cmp_scaled_sqrt(&(int(2) * d), &other.r, &t)
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact square root of a non-negative rational, when rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let sq = |v: &BigInt| {
        let s = v.sqrt();
        (&s * &s == *v).then_some(s)
    };
    Some(Rational::new(sq(r.numer())?, sq(r.denom())?))
}

/// Value of a criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CriterionValue {
    /// Exact rational.
    Exact {
        /// Criterion evaluated.
        criterion: Criterion,
        /// Value.
        #[serde(with = "rational::as_str")]
        value: Rational,
    },
    /// Exact algebraic value a − √r.
    Surd {
        /// Criterion evaluated.
        criterion: Criterion,
        /// Rational part.
        #[serde(with = "rational::as_str")]
        a: Rational,
        /// Radicand.
        #[serde(with = "rational::as_str")]
        r: Rational,
        /// Decimal approximation.
        approx: f64,
    },
    /// Floating-point value with an absolute error bound.
    Approx {
        /// Criterion evaluated.
        criterion: Criterion,
        /// Estimate.
        value: f64,
        /// Certified absolute error bound.
        error_bound: f64,
    },
}

impl CriterionValue {
    /// Decimal approximation.
    pub fn to_f64(&self) -> f64 {
        match self {
            CriterionValue::Exact { value, .. } => to_f64(value),
            CriterionValue::Surd { approx, .. } | CriterionValue::Approx { value: approx, .. } => *approx,
        }
    }

    /// Exact value when rational.
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            CriterionValue::Exact { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Eigenvalues of M: exact when M is αI+βJ or K ≤ 2, otherwise from a
/// symmetric eigensolver with a residual-based error bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Eigenvalues {
    /// Exact rational eigenvalues, ascending.
    Exact {
        /// Values.
        #[serde(with = "rational::vec_as_str")]
        values: Vec<Rational>,
    },
    /// Floating-point eigenvalues, ascending, each within `error_bound` of a true eigenvalue.
    Approx {
        /// Values.
        values: Vec<f64>,
        /// Certified absolute bound.
        error_bound: f64,
    },
}

impl Eigenvalues {
    /// Decimal values, ascending.
    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Eigenvalues::Exact { values } => values.iter().map(to_f64).collect(),
            Eigenvalues::Approx { values, .. } => values.clone(),
        }
    }
}

/// Smallest eigenvalue as an exact surd for αI+βJ or K ≤ 2.
pub fn exact_min_eigenvalue(m: &InfoMatrix) -> Option<Surd> {
    if let Some(form) = m.as_ij() {
        return ij_eigenvalues(&form, m.k()).into_iter().next().map(Surd::rational);
    }
    match m.k() {
        1 => Some(Surd::rational(m.get(0, 0).clone())),
        2 => {
            let (a, b, c) = (m.get(0, 0), m.get(0, 1), m.get(1, 1));
            let half = rational::rat(1, 2);
            let mid = (a + c) * &half;
            let dh = (a - c) * &half;
            let r = &dh * &dh + b * b;
            Some(match rational_sqrt(&r) {
                Some(s) => Surd::rational(mid - s),
                None => Surd { a: mid, r },
            })
        }
        _ => None,
    }
}

/// Floating eigen-decomposition with a residual bound: for symmetric M each
/// computed λ̂ with unit vector v̂ lies within ‖Mv̂ − λ̂v̂‖ of an eigenvalue.
fn numeric_eigenvalues(m: &InfoMatrix) -> (Vec<f64>, f64) {
    let a = m.to_f64();
    let eig = a.clone().symmetric_eigen();
    let mut bound = 0.0f64;
    for (idx, &lam) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(idx);
        let res = (&a * v - v * lam).norm() / v.norm().max(f64::MIN_POSITIVE);
        bound = bound.max(res);
    }
    // rational→f64 rounding of the entries
    bound += f64::EPSILON * a.norm() * (m.k().max(1) as f64);
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    (vals, bound)
}

/// Eigenvalues of M.
pub fn eigenvalues(m: &InfoMatrix) -> Eigenvalues {
    if let Some(form) = m.as_ij() {
        return Eigenvalues::Exact { values: ij_eigenvalues(&form, m.k()) };
    }
    if m.k() == 2 {
        let lo = exact_min_eigenvalue(m).and_then(|s| s.as_rational());
        if let Some(lo) = lo {
            let hi = m.trace() - &lo;
            return Eigenvalues::Exact { values: vec![lo, hi] };
        }
    }
    let (values, error_bound) = numeric_eigenvalues(m);
    Eigenvalues::Approx { values, error_bound }
}

/// Evaluate a criterion.
///
/// # Errors
///
/// Singularity error for A on a singular M.
pub fn evaluate(m: &InfoMatrix, c: Criterion) -> Result<CriterionValue> {
    Ok(match c {
        Criterion::D => CriterionValue::Exact { criterion: c, value: m.det() },
        Criterion::Trace => CriterionValue::Exact { criterion: c, value: m.trace() },
        Criterion::A => CriterionValue::Exact { criterion: c, value: m.inverse()?.trace() },
        Criterion::E => match exact_min_eigenvalue(m) {
            Some(s) => match s.as_rational() {
                Some(v) => CriterionValue::Exact { criterion: c, value: v },
                None => CriterionValue::Surd { criterion: c, approx: s.to_f64(), a: s.a, r: s.r },
            },
            None => {
                let (vals, error_bound) = numeric_eigenvalues(m);
                CriterionValue::Approx { criterion: c, value: vals[0], error_bound }
            }
        },
    })
}

/// A closed form to compare against.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedForm {
    /// αI + βJ.
    IJ(IJForm),
    /// Explicit matrix.
    Explicit(InfoMatrix),
}

impl ClosedForm {
    /// As a matrix of order k.
    pub fn to_matrix(&self, k: usize) -> InfoMatrix {
        match self {
            ClosedForm::IJ(f) => InfoMatrix::from_ij(f, k),
            ClosedForm::Explicit(m) => m.clone(),
        }
    }
}

/// Outcome of comparing a computed M with a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MatchStatus {
    /// Identical matrices.
    ExactMatch,
    /// Some entry differs.
    Mismatch,
    /// Agreement only up to a certified floating-point error bound.
    WithinBound,
}

/// Comparison report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchReport {
    /// Match status.
    pub status: MatchStatus,
    /// Computed minus claimed, when they differ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<InfoMatrix>,
}

/// Compare M with a closed form exactly.
///
/// # Errors
///
/// Shape error when an explicit claim has a different order.
pub fn match_closed_form(m: &InfoMatrix, claim: &ClosedForm) -> Result<MatchReport> {
    let diff = m.sub(&claim.to_matrix(m.k()))?;
    Ok(if diff.entries.iter().all(Zero::is_zero) {
        MatchReport { status: MatchStatus::ExactMatch, difference: None }
    } else {
        MatchReport { status: MatchStatus::Mismatch, difference: Some(diff) }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design_core::{BlockLayout, DifferenceMatrix};
    use crate::rational::rat;

    #[test]
    fn single_balanced_column() {
        let f = DifferenceMatrix::from_rows(&[vec![2], vec![-2]]).unwrap();
        let d = BlockedDesign::plain(f, BlockLayout::new(vec![2]).unwrap()).unwrap();
        assert_eq!(compute_info(&d).get(0, 0), &int(2));
        assert!(is_orthogonally_blocked(&d));
    }

    #[test]
    fn ij_eigen() {
        let e = ij_eigenvalues(&IJForm::new(int(16), int(2)), 6);
        assert_eq!(e, [vec![int(16); 5], vec![int(28)]].concat());
        let e = ij_eigenvalues(&IJForm::new(int(8), int(1) - rat(4, 3)), 4);
        assert_eq!(e, vec![rat(20, 3), int(8), int(8), int(8)]);
    }

    #[test]
    fn criteria_on_ij() {
        let m = InfoMatrix::from_ij(&IJForm::new(int(16), int(2)), 6);
        let d = evaluate(&m, Criterion::D).unwrap();
        assert_eq!(d.exact().unwrap(), &int(16i64.pow(5) * 28));
        assert!(matches!(evaluate(&InfoMatrix::zeros(3), Criterion::A), Err(Error::Singular(_))));
        let m = InfoMatrix::from_ij(&IJForm::new(int(8), int(0)), 3);
        assert_eq!(evaluate(&m, Criterion::E).unwrap().exact().unwrap(), &int(8));
    }

    #[test]
    fn surd_order() {
        let s = |a: i64, r: i64| Surd { a: int(a), r: int(r) };
        assert!(s(3, 2) < s(2, 0)); // 1.586 < 2
        assert!(s(2, 0) < s(4, 2)); // 2 < 2.586
        assert!(s(4, 2) < s(4, 1)); // 2.586 < 3
        assert_eq!(s(3, 4).cmp(&s(1, 0)), Ordering::Equal);
        assert!(s(0, 3) < s(0, 2));
        assert!(s(5, 9) > s(1, 1)); // 2 > 0
    }

    #[test]
    fn inverse_roundtrip() {
        let m = InfoMatrix::new(2, vec![int(4), int(1), int(1), int(3)]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(inv.trace(), rat(7, 11));
        assert_eq!(m.det(), int(11));
    }
}
