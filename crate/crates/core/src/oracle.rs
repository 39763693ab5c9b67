//! Exhaustive secrecy analysis at toy field sizes.
//!
//! Given some observed shares, the enumerators walk every assignment of
//! secrets and dealer randomness, keep the ones that reproduce the
//! observations, and report the resulting conditional distribution of the
//! secrets under a uniform prior. All probabilities are exact rationals.
//!
//! For Shamir sharing the free term stays exactly uniform given any `k - 1`
//! shares. The recursive scheme draws a single random element `a_1`, so
//! `k - 1` final shares leave only `p` of the `p^(k-1)` secret tuples
//! possible: the joint distribution is uniform on a line, not on the whole
//! space. The reports show this directly instead of assuming either answer.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use num_rational::Ratio;
use thiserror::Error;

use crate::field::{FieldElement, PrimeModulus};
use crate::poly::Polynomial;
use crate::recursive::{self, RecursiveParams, SecretVector};
use crate::shamir::{ShamirParams, Share, SharingError};

/// Largest modulus the Shamir enumerator accepts.
pub const SHAMIR_MAX_PRIME: u64 = 31;
/// Largest modulus and threshold the recursive enumerator accepts.
pub const RECURSIVE_MAX_PRIME: u64 = 13;
pub const RECURSIVE_MAX_K: usize = 4;
/// Cap on the size of any enumerated candidate space.
pub const MAX_CANDIDATES: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration too large: {0}")]
    Intractable(String),
    #[error("invalid observation: {0}")]
    BadObservation(String),
    #[error(transparent)]
    Sharing(#[from] SharingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Shamir,
    Recursive,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Shamir => "shamir",
            Scheme::Recursive => "recursive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Plain,
    Table,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalReport {
    pub scheme: Scheme,
    pub prime: u64,
    pub k: usize,
    pub n: usize,
    pub observed: Vec<Share>,
    /// Size of the full (secrets, randomness) space that was enumerated.
    pub total_candidates: u64,
    /// Candidates consistent with the observed shares.
    pub candidate_count: u64,
    /// Distribution of the full secret tuple.
    pub joint_distribution: BTreeMap<Vec<u64>, Ratio<u64>>,
    /// Distribution of each secret on its own, in order `s_1, s_2, ...`.
    pub per_secret_marginals: Vec<BTreeMap<u64, Ratio<u64>>>,
    /// Shannon entropy of the joint distribution. Display only.
    pub joint_entropy_bits: f64,
}

fn is_uniform_over_field(dist: &BTreeMap<u64, Ratio<u64>>, p: u64) -> bool {
    dist.len() as u64 == p && dist.values().all(|&q| q == Ratio::new(1, p))
}

impl ConditionalReport {
    fn from_counts(
        scheme: Scheme,
        prime: u64,
        k: usize,
        n: usize,
        observed: &[Share],
        total_candidates: u64,
        counts: BTreeMap<Vec<u64>, u64>,
    ) -> Self {
        let candidate_count: u64 = counts.values().sum();
        let width = counts.keys().next().map_or(0, Vec::len);
        let mut marginal_counts = vec![BTreeMap::<u64, u64>::new(); width];
        for (tuple, &c) in &counts {
            for (m, &v) in marginal_counts.iter_mut().zip(tuple) {
                *m.entry(v).or_insert(0) += c;
            }
        }
        let to_prob = |c: u64| Ratio::new(c, candidate_count);

        // H = log2(N) - sum(c log2 c) / N, exact whenever every c is 1
        let joint_entropy_bits = if candidate_count == 0 {
            0.0
        } else {
            let weighted: f64 = counts.values().map(|&c| c as f64 * (c as f64).log2()).sum();
            (candidate_count as f64).log2() - weighted / candidate_count as f64
        };

        ConditionalReport {
            scheme,
            prime,
            k,
            n,
            observed: observed.to_vec(),
            total_candidates,
            candidate_count,
            joint_distribution: counts.into_iter().map(|(t, c)| (t, to_prob(c))).collect(),
            per_secret_marginals: marginal_counts
                .into_iter()
                .map(|m| m.into_iter().map(|(v, c)| (v, to_prob(c))).collect())
                .collect(),
            joint_entropy_bits,
        }
    }

    /// Number of secret tuples with nonzero probability.
    pub fn support_size(&self) -> usize {
        self.joint_distribution.len()
    }

    /// `true` if every possible secret tuple is equally likely.
    pub fn joint_is_uniform(&self) -> bool {
        let width = self.per_secret_marginals.len() as u32;
        let space = self.prime.pow(width);
        self.support_size() as u64 == space
            && self
                .joint_distribution
                .values()
                .all(|&q| q == Ratio::new(1, space))
    }

    /// `true` if the distribution is uniform on whatever support it has.
    pub fn joint_is_flat(&self) -> bool {
        let s = self.support_size() as u64;
        s > 0
            && self
                .joint_distribution
                .values()
                .all(|&q| q == Ratio::new(1, s))
    }

    /// `true` if secret `i` (0-based) is uniform over `Z_p` on its own.
    pub fn marginal_is_uniform(&self, i: usize) -> bool {
        self.per_secret_marginals
            .get(i)
            .is_some_and(|m| is_uniform_over_field(m, self.prime))
    }

    pub fn probability_of(&self, secrets: &[u64]) -> Ratio<u64> {
        self.joint_distribution
            .get(secrets)
            .copied()
            .unwrap_or_else(|| Ratio::from_integer(0))
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Plain => self.render_plain(),
            ReportFormat::Table => self.render_table(),
        }
    }

    fn observed_list(&self) -> String {
        self.observed
            .iter()
            .map(|s| format!("({},{})", s.index, s.y.value()))
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn render_plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scheme={}", self.scheme.name());
        let _ = writeln!(out, "p={} k={} n={}", self.prime, self.k, self.n);
        let _ = writeln!(out, "observed={}", self.observed_list());
        let _ = writeln!(out, "total_candidates={}", self.total_candidates);
        let _ = writeln!(out, "candidate_count={}", self.candidate_count);
        let _ = writeln!(out, "support_size={}", self.support_size());
        let _ = writeln!(out, "joint_uniform={}", self.joint_is_uniform());
        let _ = writeln!(out, "joint_entropy_bits={:.6}", self.joint_entropy_bits);
        let _ = writeln!(
            out,
            "max_entropy_bits={:.6}",
            self.per_secret_marginals.len() as f64 * (self.prime as f64).log2()
        );
        for i in 0..self.per_secret_marginals.len() {
            let _ = writeln!(
                out,
                "marginal_uniform[s{}]={}",
                i + 1,
                self.marginal_is_uniform(i)
            );
        }
        out
    }

    fn render_table(&self) -> String {
        let mut out = self.render_plain();
        let width = self.per_secret_marginals.len();
        let header: Vec<String> = (1..=width).map(|i| format!("s{i}")).collect();
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<24} probability", header.join(","));
        let _ = writeln!(out, "{:-<24} -----------", "");
        for (tuple, q) in &self.joint_distribution {
            let t: Vec<String> = tuple.iter().map(u64::to_string).collect();
            let _ = writeln!(out, "{:<24} {}", t.join(","), q);
        }
        for (i, m) in self.per_secret_marginals.iter().enumerate() {
            let _ = writeln!(out);
            let _ = writeln!(out, "marginal s{}", i + 1);
            for (v, q) in m {
                let _ = writeln!(out, "  {v:>4}  {q}");
            }
        }
        out
    }
}

fn check_observed(observed: &[Share], n: usize, modulus: PrimeModulus) -> Result<(), OracleError> {
    let mut seen = HashSet::new();
    for s in observed {
        if s.index == 0 || s.index > n as u64 {
            return Err(OracleError::BadObservation(format!(
                "share index {} outside 1..={n}",
                s.index
            )));
        }
        if !seen.insert(s.index) {
            return Err(OracleError::BadObservation(format!(
                "duplicate index {}",
                s.index
            )));
        }
        if s.y.modulus() != modulus {
            return Err(OracleError::BadObservation(format!(
                "share modulus {} differs from p = {modulus}",
                s.y.modulus()
            )));
        }
    }
    Ok(())
}

fn space_size(p: u64, dims: usize) -> Result<u64, OracleError> {
    p.checked_pow(dims as u32)
        .filter(|&size| size <= MAX_CANDIDATES)
        .ok_or_else(|| {
            OracleError::Intractable(format!("p^{dims} with p = {p} exceeds {MAX_CANDIDATES}"))
        })
}

/// Mixed-radix counter over `Z_p^dims`.
fn for_each_tuple(p: u64, dims: usize, mut visit: impl FnMut(&[u64])) {
    let mut digits = vec![0u64; dims];
    loop {
        visit(&digits);
        let mut i = 0;
        loop {
            if i == dims {
                return;
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Precomputed evaluation table for every Shamir polynomial over `Z_p`.
///
/// Row `c` holds `(s, a_1..a_{k-1})` and the `n` share values it produces.
#[derive(Debug, Clone)]
pub struct ShamirEnumerator {
    params: ShamirParams,
    rows: Vec<(u64, Vec<u64>)>,
}

impl ShamirEnumerator {
    pub fn new(params: &ShamirParams) -> Result<Self, OracleError> {
        let m = params.modulus();
        let p = m.get();
        if p > SHAMIR_MAX_PRIME {
            return Err(OracleError::Intractable(format!(
                "p = {p} exceeds {SHAMIR_MAX_PRIME}"
            )));
        }
        let k = params.threshold();
        let n = params.share_count();
        let total = space_size(p, k)?;
        let mut rows = Vec::with_capacity(total as usize);
        for_each_tuple(p, k, |coeffs| {
            let poly = Polynomial::from_values(m, coeffs).expect("digits are residues");
            let ys = (1..=n as u64).map(|x| poly.eval(x).value()).collect();
            rows.push((coeffs[0], ys));
        });
        Ok(ShamirEnumerator {
            params: *params,
            rows,
        })
    }

    pub fn report(&self, observed: &[Share]) -> Result<ConditionalReport, OracleError> {
        let m = self.params.modulus();
        check_observed(observed, self.params.share_count(), m)?;
        let mut counts = BTreeMap::new();
        for (secret, ys) in &self.rows {
            if observed
                .iter()
                .all(|s| ys[s.index as usize - 1] == s.y.value())
            {
                *counts.entry(vec![*secret]).or_insert(0) += 1;
            }
        }
        Ok(ConditionalReport::from_counts(
            Scheme::Shamir,
            m.get(),
            self.params.threshold(),
            self.params.share_count(),
            observed,
            self.rows.len() as u64,
            counts,
        ))
    }
}

/// Conditional distribution of a Shamir secret given `observed` shares.
///
/// `secret` is the value that was actually dealt; it must lie in the
/// support of the result, which is checked. Observing `k` or more shares is
/// allowed and collapses the distribution to that secret.
pub fn enumerate_shamir(
    params: &ShamirParams,
    secret: FieldElement,
    observed: &[Share],
) -> Result<ConditionalReport, OracleError> {
    let report = ShamirEnumerator::new(params)?.report(observed)?;
    if report.probability_of(&[secret.value()]) == Ratio::from_integer(0) {
        return Err(OracleError::BadObservation(format!(
            "observed shares are inconsistent with secret {secret}"
        )));
    }
    Ok(report)
}

/// Precomputed final shares for every `(s_1..s_{k-1}, a_1)` over `Z_p`.
#[derive(Debug, Clone)]
pub struct RecursiveEnumerator {
    params: RecursiveParams,
    rows: Vec<(Vec<u64>, Vec<u64>)>,
}

impl RecursiveEnumerator {
    pub fn new(params: &RecursiveParams) -> Result<Self, OracleError> {
        let m = params.modulus();
        let p = m.get();
        let k = params.threshold();
        if p > RECURSIVE_MAX_PRIME || k > RECURSIVE_MAX_K {
            return Err(OracleError::Intractable(format!(
                "recursive enumeration is limited to p <= {RECURSIVE_MAX_PRIME}, k <= {RECURSIVE_MAX_K} (got p = {p}, k = {k})"
            )));
        }
        let total = space_size(p, k)?;
        let mut rows = Vec::with_capacity(total as usize);
        for_each_tuple(p, k, |digits| {
            let (secret_values, a1) = digits.split_at(k - 1);
            let secrets = SecretVector::from_values(m, secret_values).expect("digits are residues");
            let a1 = m.element(a1[0]).expect("digit is a residue");
            let transcript =
                recursive::deal_transcript(&secrets, params, a1).expect("valid dealing");
            let ys = transcript
                .final_shares()
                .iter()
                .map(|s| s.y.value())
                .collect();
            rows.push((secret_values.to_vec(), ys));
        });
        Ok(RecursiveEnumerator {
            params: *params,
            rows,
        })
    }

    pub fn report(&self, observed: &[Share]) -> Result<ConditionalReport, OracleError> {
        let m = self.params.modulus();
        check_observed(observed, self.params.share_count(), m)?;
        let mut counts = BTreeMap::new();
        for (secrets, ys) in &self.rows {
            if observed
                .iter()
                .all(|s| ys[s.index as usize - 1] == s.y.value())
            {
                *counts.entry(secrets.clone()).or_insert(0) += 1;
            }
        }
        Ok(ConditionalReport::from_counts(
            Scheme::Recursive,
            m.get(),
            self.params.threshold(),
            self.params.share_count(),
            observed,
            self.rows.len() as u64,
            counts,
        ))
    }
}

/// Conditional distribution of the recursive secrets given `observed` shares.
pub fn enumerate_recursive(
    params: &RecursiveParams,
    observed: &[Share],
) -> Result<ConditionalReport, OracleError> {
    RecursiveEnumerator::new(params)?.report(observed)
}

/// Which blow-up factor to compare a measurement against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowupScheme {
    /// One secret in `n` shares: `n`.
    Shamir,
    /// `k - 1` secrets in `n` shares: `n / (k - 1)`.
    Recursive,
    /// Lower bound for any threshold scheme: `n / k`.
    Optimal,
}

impl BlowupScheme {
    pub fn reference(self, k: u64, n: u64) -> Ratio<u64> {
        match self {
            BlowupScheme::Shamir => Ratio::from_integer(n),
            BlowupScheme::Recursive => Ratio::new(n, k - 1),
            BlowupScheme::Optimal => Ratio::new(n, k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlowupReport {
    pub scheme: BlowupScheme,
    /// Total share size over total secret size.
    pub measured: Ratio<u64>,
    pub reference: Ratio<u64>,
    pub optimal: Ratio<u64>,
}

impl BlowupReport {
    pub fn matches_reference(&self) -> bool {
        self.measured == self.reference
    }
}

/// Measured blow-up `total_share_bits / total_secret_bits` next to the
/// reference value for `scheme` and the optimum `n / k`.
///
/// Panics if `total_secret_bits` is zero or `k < 2`.
pub fn report_blowup(
    scheme: BlowupScheme,
    k: u64,
    n: u64,
    total_secret_bits: u64,
    total_share_bits: u64,
) -> BlowupReport {
    assert!(total_secret_bits > 0, "secret size must be positive");
    assert!(k >= 2, "threshold must be at least 2");
    BlowupReport {
        scheme,
        measured: Ratio::new(total_share_bits, total_secret_bits),
        reference: scheme.reference(k, n),
        optimal: BlowupScheme::Optimal.reference(k, n),
    }
}
