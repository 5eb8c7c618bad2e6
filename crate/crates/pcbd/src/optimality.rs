//! Certification of optimality claims: exact closed-form matching at any size
//! and exhaustive brute-force search on small design classes.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{ClaimForm, OptimalityClaim};
use crate::design_core::{BlockLayout, BlockedDesign, DesignClassDescriptor, DifferenceMatrix, Provenance};
use crate::error::{Error, Result};
use crate::info_matrix::{
    self, compute_info, eigenvalues, evaluate, is_orthogonally_blocked, match_closed_form, unblocked_info,
    ClosedForm, Criterion, CriterionValue, Eigenvalues, IJForm, InfoMatrix, MatchStatus, Surd,
};
use crate::rational::{self, int, Rational};

/// Default number of candidates the oracle may evaluate.
pub const DEFAULT_BUDGET: u64 = 1 << 22;

/// Comparison of the closed form claimed for M with the direct M.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormCheck {
    /// Outcome.
    pub status: MatchStatus,
    /// Direct minus claimed, when they differ and the claim fixes a matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub difference: Option<InfoMatrix>,
    /// δ read off the direct M, for claims of the form αI + (c − δ)J.
    #[serde(default, with = "rational::opt_as_str", skip_serializing_if = "Option::is_none")]
    pub delta: Option<Rational>,
}

/// Comparison of claimed eigenvalues with the direct spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenCheck {
    /// Outcome.
    pub status: MatchStatus,
    /// Claimed values, ascending.
    #[serde(with = "rational::vec_as_str")]
    pub claimed: Vec<Rational>,
}

/// Certificate for one design; every field is computed from the design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    /// Provenance of the certified design.
    pub provenance: Provenance,
    /// Class of the design.
    pub class: DesignClassDescriptor,
    /// Direct M = ¼(F⊤F − Σ s_b s_b⊤/m_b).
    pub info: InfoMatrix,
    /// M/N, the normalized information matrix.
    pub info_normalized: InfoMatrix,
    /// αI + βJ decomposition of M, when it has that form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ij_form: Option<IJForm>,
    /// Overall claim status (closed form, eigenvalues and orthogonality combined).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<MatchStatus>,
    /// Claimed closed form vs direct M.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form_check: Option<FormCheck>,
    /// Claimed eigenvalue list vs direct spectrum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalue_check: Option<EigenCheck>,
    /// Claimed extreme eigenvalue vs direct smallest eigenvalue.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_eigenvalue_check: Option<EigenCheck>,
    /// Whether F⊤Z = 0.
    pub orthogonally_blocked: bool,
    /// Claimed orthogonality vs direct.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orthogonality_check: Option<MatchStatus>,
    /// Direct eigenvalues of M.
    pub eigenvalues: Eigenvalues,
    /// D, A, E and TRACE values of M (A omitted when M is singular).
    pub criteria: Vec<CriterionValue>,
    /// Oracle verdicts, present only when an exhaustive search completed.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub oracle: Vec<OracleVerdict>,
}

fn check_form(d: &BlockedDesign, m: &InfoMatrix, form: &ClaimForm) -> Result<FormCheck> {
    match form {
        ClaimForm::Ij { alpha, beta } => {
            let r = match_closed_form(m, &ClosedForm::IJ(IJForm::new(alpha.clone(), beta.clone())))?;
            Ok(FormCheck { status: r.status, difference: r.difference, delta: None })
        }
        ClaimForm::QuarterGram => {
            let r = match_closed_form(m, &ClosedForm::Explicit(unblocked_info(d)))?;
            Ok(FormCheck { status: r.status, difference: r.difference, delta: None })
        }
        ClaimForm::IjDelta { alpha, base, delta_min, delta_max } => {
            let Some(f) = m.as_ij() else {
                return Ok(FormCheck { status: MatchStatus::Mismatch, difference: None, delta: None });
            };
            let delta = base - &f.beta;
            let in_range = &f.alpha == alpha
                && delta_min.as_ref().is_none_or(|lo| &delta > lo)
                && delta_max.as_ref().is_none_or(|hi| &delta < hi);
            let status = if in_range { MatchStatus::ExactMatch } else { MatchStatus::Mismatch };
            let difference = (&f.alpha != alpha)
                .then(|| m.sub(&InfoMatrix::from_ij(&IJForm::new(alpha.clone(), f.beta.clone()), m.k())))
                .transpose()?;
            Ok(FormCheck { status, difference, delta: Some(delta) })
        }
    }
}

fn check_eigen(direct: &Eigenvalues, claimed: &[Rational]) -> MatchStatus {
    match direct {
        Eigenvalues::Exact { values } => {
            if values.as_slice() == claimed { MatchStatus::ExactMatch } else { MatchStatus::Mismatch }
        }
        Eigenvalues::Approx { values, error_bound } => {
            let close = values.len() == claimed.len()
                && values.iter().zip(claimed).all(|(v, c)| (v - rational::to_f64(c)).abs() <= *error_bound);
            if close { MatchStatus::WithinBound } else { MatchStatus::Mismatch }
        }
    }
}

fn check_min_eigen(m: &InfoMatrix, direct: &Eigenvalues, claimed: &Rational) -> MatchStatus {
    if let Some(s) = info_matrix::exact_min_eigenvalue(m) {
        return if s == Surd::rational(claimed.clone()) { MatchStatus::ExactMatch } else { MatchStatus::Mismatch };
    }
    match direct {
        Eigenvalues::Exact { values } => check_eigen(&Eigenvalues::Exact { values: values[..1].to_vec() }, std::slice::from_ref(claimed)),
        Eigenvalues::Approx { values, error_bound } => check_eigen(
            &Eigenvalues::Approx { values: values[..1].to_vec(), error_bound: *error_bound },
            std::slice::from_ref(claimed),
        ),
    }
}

/// Criterion values of M; A is omitted for singular M.
pub fn criterion_values(m: &InfoMatrix) -> Vec<CriterionValue> {
    Criterion::ALL.iter().filter_map(|&c| evaluate(m, c).ok()).collect()
}

/// Certify a design against the claim in its provenance.
pub fn certify(d: &BlockedDesign) -> Certificate {
    let m = compute_info(d);
    let eig = eigenvalues(&m);
    let orth = is_orthogonally_blocked(d);
    let claim: Option<OptimalityClaim> = d.provenance().claim.clone();
    let mut cert = Certificate {
        provenance: d.provenance().clone(),
        class: d.class_desc().clone(),
        info_normalized: m.normalized(d.n()),
        ij_form: m.as_ij(),
        status: None,
        form_check: None,
        eigenvalue_check: None,
        min_eigenvalue_check: None,
        orthogonally_blocked: orth,
        orthogonality_check: None,
        eigenvalues: eig.clone(),
        criteria: criterion_values(&m),
        oracle: Vec::new(),
        info: m.clone(),
    };
    let Some(claim) = claim else { return cert };
    let mut statuses = Vec::new();
    match check_form(d, &m, &claim.form) {
        Ok(f) => {
            statuses.push(f.status);
            cert.form_check = Some(f);
        }
        Err(_) => statuses.push(MatchStatus::Mismatch),
    }
    if let Some(list) = &claim.eigenvalues {
        let status = check_eigen(&eig, list);
        statuses.push(status);
        cert.eigenvalue_check = Some(EigenCheck { status, claimed: list.clone() });
    }
    if let Some(v) = &claim.min_eigenvalue {
        let status = check_min_eigen(&m, &eig, v);
        statuses.push(status);
        cert.min_eigenvalue_check = Some(EigenCheck { status, claimed: vec![v.clone()] });
    }
    if let Some(o) = claim.orthogonal {
        let status = if o == orth { MatchStatus::ExactMatch } else { MatchStatus::Mismatch };
        statuses.push(status);
        cert.orthogonality_check = Some(status);
    }
    cert.status = Some(if statuses.contains(&MatchStatus::Mismatch) {
        MatchStatus::Mismatch
    } else if statuses.contains(&MatchStatus::WithinBound) {
        MatchStatus::WithinBound
    } else {
        MatchStatus::ExactMatch
    });
    cert
}

/// Limits and options for the brute-force oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    /// Maximum number of candidates evaluated.
    pub max_candidates: u64,
    /// Reduce by column negation and permutation (lossless for D, A, E, TRACE).
    pub symmetry_reduction: bool,
    /// Allow 0 entries (attributes held equal within a pair).
    pub include_zero: bool,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self { max_candidates: DEFAULT_BUDGET, symmetry_reduction: true, include_zero: false }
    }
}

/// Exhaustive optimum over a class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    /// Class searched.
    pub class: DesignClassDescriptor,
    /// Criterion optimized.
    pub criterion: Criterion,
    /// Candidates evaluated.
    pub candidates: u64,
    /// Budget options used.
    pub budget: OracleBudget,
    /// Optimal value.
    pub optimum: CriterionValue,
    /// Lexicographically smallest candidate attaining the optimum.
    #[serde(skip)]
    pub witness: BlockedDesign,
}

/// Ordering key: larger is better.
#[derive(Debug, Clone)]
enum Key {
    Worst,
    Exact(Surd),
    Approx(f64),
}

impl Key {
    fn of(v: &CriterionValue) -> Key {
        let maximize = criterion_of(v).maximize();
        match v {
            CriterionValue::Exact { value, .. } => {
                Key::Exact(Surd::rational(if maximize { value.clone() } else { -value.clone() }))
            }
            CriterionValue::Surd { a, r, .. } => Key::Exact(Surd { a: a.clone(), r: r.clone() }),
            CriterionValue::Approx { value, .. } => Key::Approx(if maximize { *value } else { -*value }),
        }
    }

    fn f64(&self) -> f64 {
        match self {
            Key::Worst => f64::NEG_INFINITY,
            Key::Exact(s) => s.to_f64(),
            Key::Approx(v) => *v,
        }
    }

    fn cmp(&self, other: &Key) -> Ordering {
        match (self, other) {
            (Key::Worst, Key::Worst) => Ordering::Equal,
            (Key::Worst, _) => Ordering::Less,
            (_, Key::Worst) => Ordering::Greater,
            (Key::Exact(a), Key::Exact(b)) => a.cmp(b),
            _ => self.f64().total_cmp(&other.f64()),
        }
    }
}

fn criterion_of(v: &CriterionValue) -> Criterion {
    match v {
        CriterionValue::Exact { criterion, .. }
        | CriterionValue::Surd { criterion, .. }
        | CriterionValue::Approx { criterion, .. } => *criterion,
    }
}

/// Number of candidate columns and candidates, before enumeration.
fn candidate_count(n: usize, k: usize, budget: &OracleBudget) -> (BigUint, BigUint) {
    let base: u32 = if budget.include_zero { 3 } else { 2 };
    let all = num_traits::pow(BigUint::from(base), n);
    let cols = if budget.symmetry_reduction {
        // one representative per ± pair (first nonzero entry +1), plus the zero column
        if budget.include_zero { (&all - 1u32) / 2u32 + 1u32 } else { all / 2u32 }
    } else {
        all
    };
    let count = if budget.symmetry_reduction {
        // multisets of size k
        let mut num = BigUint::from(1u32);
        let mut den = BigUint::from(1u32);
        for i in 0..k {
            num *= &cols + i;
            den *= BigUint::from(i + 1);
        }
        num / den
    } else {
        num_traits::pow(cols.clone(), k)
    };
    (cols, count)
}

/// Candidate columns in enumeration order.
fn columns(n: usize, budget: &OracleBudget) -> Vec<Vec<i8>> {
    let levels: &[i8] = if budget.include_zero { &[1, -1, 0] } else { &[1, -1] };
    let base = levels.len();
    let total = base.pow(n as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut v = Vec::with_capacity(n);
        let mut x = idx;
        for _ in 0..n {
            v.push(levels[x % base]);
            x /= base;
        }
        v.reverse();
        if budget.symmetry_reduction {
            match v.iter().find(|&&e| e != 0) {
                Some(&first) if first < 0 => continue,
                _ => {}
            }
        }
        out.push(v);
    }
    out
}

struct Evaluator {
    k: usize,
    lcm: i64,
    gram: Vec<i64>,
    ncols: usize,
}

impl Evaluator {
    fn new(cols: &[Vec<i8>], layout: &BlockLayout, k: usize) -> Self {
        let lcm = layout.sizes().iter().fold(1i64, |acc, &m| acc.lcm(&(m as i64)));
        let ranges = layout.ranges();
        let sums: Vec<Vec<i64>> = cols
            .iter()
            .map(|c| ranges.iter().map(|r| c[r.clone()].iter().map(|&v| i64::from(v)).sum()).collect())
            .collect();
        let weights: Vec<i64> = layout.sizes().iter().map(|&m| lcm / m as i64).collect();
        let ncols = cols.len();
        let mut gram = vec![0i64; ncols * ncols];
        for a in 0..ncols {
            for b in a..ncols {
                let dot: i64 = cols[a].iter().zip(&cols[b]).map(|(&x, &y)| i64::from(x * y)).sum();
                let corr: i64 = (0..ranges.len()).map(|j| weights[j] * sums[a][j] * sums[b][j]).sum();
                let g = lcm * dot - corr;
                gram[a * ncols + b] = g;
                gram[b * ncols + a] = g;
            }
        }
        Self { k, lcm, gram, ncols }
    }

    /// M for a candidate: entries gram/L (F = 2u, so ¼F⊤F = u⊤u).
    fn info(&self, pick: &[usize]) -> InfoMatrix {
        let l = int(self.lcm);
        let mut entries = Vec::with_capacity(self.k * self.k);
        for &a in pick {
            for &b in pick {
                entries.push(int(self.gram[a * self.ncols + b]) / &l);
            }
        }
        InfoMatrix::new(self.k, entries).unwrap_or_else(|_| unreachable!("gram table is symmetric"))
    }

    fn score(&self, pick: &[usize], c: Criterion) -> (Key, Option<CriterionValue>) {
        match evaluate(&self.info(pick), c) {
            Ok(v) => (Key::of(&v), Some(v)),
            Err(_) => (Key::Worst, None),
        }
    }
}

type Best = Option<(Key, Vec<usize>)>;

fn better(a: Best, b: Best) -> Best {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => match a.0.cmp(&b.0) {
            Ordering::Greater => Some(a),
            Ordering::Less => Some(b),
            Ordering::Equal => Some(if a.1 <= b.1 { a } else { b }),
        },
    }
}

fn search(ev: &Evaluator, c: Criterion, first: usize, symmetric: bool) -> Best {
    let k = ev.k;
    let mut pick = vec![first; k];
    let mut best: Best = None;
    // odometer over positions 1..k
    loop {
        let (key, _) = ev.score(&pick, c);
        best = better(best, Some((key, pick.clone())));
        let mut pos = k;
        loop {
            if pos <= 1 {
                return best;
            }
            pos -= 1;
            if pick[pos] + 1 < ev.ncols {
                pick[pos] += 1;
                let v = pick[pos];
                for p in pick.iter_mut().skip(pos + 1) {
                    *p = if symmetric { v } else { 0 };
                }
                break;
            }
        }
    }
}

/// Exhaustive optimum of `criterion` over designs with the given class and layout.
///
/// # Errors
///
/// Budget error with the required count when the class is too large; class error for K = 0.
pub fn brute_force_best(
    class: &DesignClassDescriptor,
    layout: &BlockLayout,
    criterion: Criterion,
    budget: &OracleBudget,
) -> Result<OracleResult> {
    let (n, k) = (class.n, class.k);
    if k == 0 || n == 0 {
        return Err(Error::class("oracle needs N ≥ 1 and K ≥ 1"));
    }
    if layout.total() != n {
        return Err(Error::Layout(format!("block sizes {:?} do not sum to N={n}", layout.sizes())));
    }
    let (_, count) = candidate_count(n, k, budget);
    if count > BigUint::from(budget.max_candidates) {
        return Err(Error::Budget { required: count.to_string(), budget: budget.max_candidates });
    }
    let cols = columns(n, budget);
    let ev = Evaluator::new(&cols, layout, k);
    let symmetric = budget.symmetry_reduction;
    let best = (0..cols.len())
        .into_par_iter()
        .map(|f| search(&ev, criterion, f, symmetric))
        .reduce(|| None, better)
        .ok_or_else(|| Error::class("empty candidate set"))?;
    let pick = best.1;
    let (_, value) = ev.score(&pick, criterion);
    let optimum = value.ok_or_else(|| Error::Singular(format!("every candidate in the class has singular M for {criterion}")))?;
    let rows: Vec<Vec<i8>> = (0..n).map(|r| pick.iter().map(|&c| 2 * cols[c][r]).collect()).collect();
    let mut prov = Provenance::default();
    prov.notes.push(format!("oracle witness for {criterion}"));
    let witness = BlockedDesign::new(DifferenceMatrix::from_rows(&rows)?, layout.clone(), prov)?;
    Ok(OracleResult {
        class: class.clone(),
        criterion,
        candidates: count.to_u64().unwrap_or(u64::MAX),
        budget: *budget,
        optimum,
        witness,
    })
}

/// Verdict of comparing a design with the oracle optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Optimality {
    /// Design value equals (or beats) the optimum.
    Optimal,
    /// Design value is worse than the optimum.
    Suboptimal,
}

/// Oracle comparison for one criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleVerdict {
    /// Verdict.
    pub status: Optimality,
    /// Design value.
    pub design_value: CriterionValue,
    /// Oracle optimum.
    pub oracle_value: CriterionValue,
    /// Exact gap |optimum − design| when both values are rational.
    #[serde(default, with = "rational::opt_as_str", skip_serializing_if = "Option::is_none")]
    pub gap: Option<Rational>,
    /// Decimal gap.
    pub gap_approx: f64,
    /// Candidates evaluated.
    pub candidates: u64,
}

/// Compare `d` with the exhaustive optimum of its class.
///
/// # Errors
///
/// Propagated budget refusal; singularity error when the design's criterion is undefined.
pub fn compare_to_oracle(d: &BlockedDesign, criterion: Criterion, budget: &OracleBudget) -> Result<OracleVerdict> {
    let res = brute_force_best(d.class_desc(), d.layout(), criterion, budget)?;
    let design_value = evaluate(&compute_info(d), criterion)?;
    let (dk, ok) = (Key::of(&design_value), Key::of(&res.optimum));
    let status = if dk.cmp(&ok) == Ordering::Less { Optimality::Suboptimal } else { Optimality::Optimal };
    let gap = match (design_value.exact(), res.optimum.exact()) {
        (Some(a), Some(b)) => {
            let g = b - a;
            Some(if g < Rational::zero() { -g } else { g })
        }
        _ => None,
    };
    Ok(OracleVerdict {
        status,
        gap_approx: (ok.f64() - dk.f64()).abs(),
        design_value,
        oracle_value: res.optimum,
        gap,
        candidates: res.candidates,
    })
}

/// Certificate with oracle verdicts attached for each criterion.
///
/// # Errors
///
/// Propagated oracle errors.
pub fn certify_with_oracle(d: &BlockedDesign, criteria: &[Criterion], budget: &OracleBudget) -> Result<Certificate> {
    let mut cert = certify(d);
    for &c in criteria {
        cert.oracle.push(compare_to_oracle(d, c, budget)?);
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let b = OracleBudget::default();
        assert_eq!(candidate_count(6, 2, &b).1, BigUint::from(528u32));
        assert_eq!(candidate_count(8, 2, &b).1, BigUint::from(8256u32));
        assert_eq!(columns(6, &b).len(), 32);
        let z = OracleBudget { include_zero: true, ..b };
        assert_eq!(columns(3, &z).len(), 14);
        assert_eq!(candidate_count(3, 1, &z).1, BigUint::from(14u32));
    }

    #[test]
    fn single_attribute_e() {
        let layout = BlockLayout::new(vec![2, 2]).unwrap();
        let class = DesignClassDescriptor::new(4, 1, &layout);
        let r = brute_force_best(&class, &layout, Criterion::E, &OracleBudget::default()).unwrap();
        assert_eq!(r.optimum.exact().unwrap(), &int(4));
    }
}
