//! Classic `(k, n)` single-secret sharing.
//!
//! A secret `s` becomes the free term of a random polynomial of degree
//! `k - 1`; participant `i` receives the evaluation at `x = i` for
//! `i = 1..=n`. The abscissae are implicit, so a share only stores its index
//! and its ordinate.

use std::collections::HashSet;

use rand::RngCore;
use thiserror::Error;

use crate::field::{random_element, FieldElement, FieldError, PrimeModulus};
use crate::poly::{Interpolator, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SharingError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("insufficient shares: need {needed}, got {got}")]
    InsufficientShares { needed: usize, got: usize },
    #[error("duplicate share index {0}")]
    DuplicateIndex(u64),
    #[error("share index {index} outside 1..={n}")]
    IndexOutOfRange { index: u64, n: usize },
    #[error("expected {expected} secrets, got {got}")]
    WrongSecretCount { expected: usize, got: usize },
    #[error("expected {expected} random coefficients, got {got}")]
    WrongCoefficientCount { expected: usize, got: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub(crate) fn check_threshold(p: PrimeModulus, k: usize, n: usize) -> Result<(), SharingError> {
    if k < 2 {
        return Err(SharingError::InvalidParams(format!(
            "threshold k = {k} must be at least 2"
        )));
    }
    if k > n {
        return Err(SharingError::InvalidParams(format!(
            "threshold k = {k} exceeds share count n = {n}"
        )));
    }
    if n as u64 >= p.get() {
        return Err(SharingError::InvalidParams(format!(
            "share count n = {n} must be below the modulus p = {p}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShamirParams {
    modulus: PrimeModulus,
    k: usize,
    n: usize,
}

impl ShamirParams {
    /// Requires `2 <= k <= n < p`.
    pub fn new(modulus: PrimeModulus, k: usize, n: usize) -> Result<Self, SharingError> {
        check_threshold(modulus, k, n)?;
        Ok(ShamirParams { modulus, k, n })
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn threshold(&self) -> usize {
        self.k
    }

    pub fn share_count(&self) -> usize {
        self.n
    }
}

/// One participant's share: the evaluation `y` at the implicit point `x = index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Share {
    pub index: u64,
    pub y: FieldElement,
}

impl Share {
    pub fn new(index: u64, y: FieldElement) -> Self {
        Share { index, y }
    }
}

/// Samples `poly` at `x = 1..=count`.
pub(crate) fn sample(poly: &Polynomial, count: usize) -> Vec<Share> {
    (1..=count as u64)
        .map(|index| Share {
            index,
            y: poly.eval(index),
        })
        .collect()
}

/// Checks a share list against `(k, n)` and returns the `k` lowest-indexed
/// shares in ascending order.
pub(crate) fn select_lowest(
    shares: &[Share],
    k: usize,
    n: usize,
    modulus: PrimeModulus,
) -> Result<Vec<Share>, SharingError> {
    if shares.len() < k {
        return Err(SharingError::InsufficientShares {
            needed: k,
            got: shares.len(),
        });
    }
    let mut seen = HashSet::with_capacity(shares.len());
    for share in shares {
        if share.index == 0 || share.index > n as u64 {
            return Err(SharingError::IndexOutOfRange {
                index: share.index,
                n,
            });
        }
        if !seen.insert(share.index) {
            return Err(SharingError::DuplicateIndex(share.index));
        }
        if share.y.modulus() != modulus {
            return Err(FieldError::ModulusMismatch(modulus.get(), share.y.modulus().get()).into());
        }
    }
    let mut chosen = shares.to_vec();
    chosen.sort_by_key(|s| s.index);
    chosen.truncate(k);
    Ok(chosen)
}

/// Deals `secret` with caller-chosen coefficients `a_1..a_{k-1}`.
///
/// Deterministic; [`deal`] draws the coefficients uniformly and calls this.
pub fn deal_with_coefficients(
    secret: FieldElement,
    coefficients: &[FieldElement],
    params: &ShamirParams,
) -> Result<Vec<Share>, SharingError> {
    if secret.modulus() != params.modulus {
        return Err(
            FieldError::ModulusMismatch(params.modulus.get(), secret.modulus().get()).into(),
        );
    }
    if coefficients.len() != params.k - 1 {
        return Err(SharingError::WrongCoefficientCount {
            expected: params.k - 1,
            got: coefficients.len(),
        });
    }
    let mut all = Vec::with_capacity(params.k);
    all.push(secret);
    all.extend_from_slice(coefficients);
    let poly = Polynomial::new(all)?;
    if poly.modulus() != params.modulus {
        return Err(FieldError::ModulusMismatch(params.modulus.get(), poly.modulus().get()).into());
    }
    Ok(sample(&poly, params.n))
}

/// Splits `secret` into `n` shares, any `k` of which recover it.
///
/// The leading coefficient may come out as zero; it is not redrawn.
pub fn deal<R: RngCore + ?Sized>(
    secret: FieldElement,
    params: &ShamirParams,
    rng: &mut R,
) -> Result<Vec<Share>, SharingError> {
    let coefficients: Vec<FieldElement> = (1..params.k)
        .map(|_| random_element(params.modulus, rng))
        .collect();
    deal_with_coefficients(secret, &coefficients, params)
}

/// Recovers the sharing polynomial from the `k` lowest-indexed shares given.
pub fn reconstruct_polynomial(
    shares: &[Share],
    params: &ShamirParams,
) -> Result<Polynomial, SharingError> {
    let chosen = select_lowest(shares, params.k, params.n, params.modulus)?;
    let xs: Vec<u64> = chosen.iter().map(|s| s.index).collect();
    let ys: Vec<FieldElement> = chosen.iter().map(|s| s.y).collect();
    Ok(Interpolator::new(params.modulus, &xs)?.interpolate(&ys)?)
}

/// Recovers the secret from at least `k` shares with distinct indices.
///
/// When more than `k` shares are given, the `k` lowest indices are used.
pub fn reconstruct(shares: &[Share], params: &ShamirParams) -> Result<FieldElement, SharingError> {
    Ok(reconstruct_polynomial(shares, params)?.free_term())
}
