//! Recursive `k`-of-`n` multi-secret sharing: `k - 1` secrets in `n` shares.
//!
//! Dealing builds a chain of polynomials. Level 1 is an ordinary 2-of-2
//! sharing `p_1(x) = a_1 x + s_1` sampled at `x = 1, 2`. Level `i` takes the
//! `i` shares of level `i - 1` as the coefficients of `x^1..x^i` (share `j`
//! goes to `x^j`) and puts `s_i` in the free term. Intermediate levels are
//! sampled at `x = 1..=i+1`; the last level `p_{k-1}` is sampled at
//! `x = 1..=n` to give the final shares. The only randomness is `a_1`.
//!
//! Reconstruction runs the chain backwards. Any `k` final shares determine
//! `p_{k-1}` and hence `s_{k-1}`. The coefficient of `x^{m+1}` in `p_{i+1}`
//! is the level-`i` share at `x = m + 1`, so the `i + 1` non-free
//! coefficients of `p_{i+1}` interpolate `p_i`, and so on down to `p_1`.
//! Secrets come out last-in first-out and are returned as `s_1..s_{k-1}`.
//!
//! With `k = 2` the chain is just `p_1`, sampled directly at `n` points.

use num_rational::Ratio;
use rand::RngCore;

use crate::field::{random_element, FieldElement, FieldError, PrimeModulus};
use crate::poly::{Interpolator, Polynomial};
use crate::shamir::{check_threshold, sample, select_lowest, Share, SharingError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecursiveParams {
    modulus: PrimeModulus,
    k: usize,
    n: usize,
}

impl RecursiveParams {
    /// Requires `2 <= k <= n < p`.
    pub fn new(modulus: PrimeModulus, k: usize, n: usize) -> Result<Self, SharingError> {
        check_threshold(modulus, k, n)?;
        Ok(RecursiveParams { modulus, k, n })
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

    /// Number of secrets carried by one dealing, `k - 1`.
    pub fn secret_count(&self) -> usize {
        self.k - 1
    }

    /// Blow-up factor `n / (k - 1)`: total share size over total secret size.
    pub fn blowup_factor(&self) -> Ratio<u64> {
        blowup_factor(self)
    }
}

/// Ordered secrets `s_1..s_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecretVector(Vec<FieldElement>);

impl SecretVector {
    pub fn new(secrets: Vec<FieldElement>) -> Self {
        SecretVector(secrets)
    }

    /// Each value must already be a residue (`< p`).
    pub fn from_values(modulus: PrimeModulus, values: &[u64]) -> Result<Self, SharingError> {
        let secrets = values
            .iter()
            .map(|&v| modulus.element(v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SecretVector(secrets))
    }

    pub fn as_slice(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn values(&self) -> Vec<u64> {
        self.0.iter().map(|s| s.value()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<FieldElement> {
        self.0
    }
}

/// The `n` final shares of one dealing, indices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareSet {
    pub shares: Vec<Share>,
    pub params: RecursiveParams,
}

/// Every polynomial and every sample produced by one dealing.
///
/// `polynomials[i - 1]` is `p_i` and `samples[i - 1]` holds its evaluations.
/// Only intended for inspection and tests; a dealer discards everything but
/// the last row of `samples`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DealTranscript {
    pub polynomials: Vec<Polynomial>,
    pub samples: Vec<Vec<Share>>,
}

impl DealTranscript {
    pub fn final_shares(&self) -> &[Share] {
        self.samples
            .last()
            .expect("transcript has at least one level")
    }
}

fn check_secrets(secrets: &SecretVector, params: &RecursiveParams) -> Result<(), SharingError> {
    if secrets.len() != params.secret_count() {
        return Err(SharingError::WrongSecretCount {
            expected: params.secret_count(),
            got: secrets.len(),
        });
    }
    if let Some(bad) = secrets.0.iter().find(|s| s.modulus() != params.modulus) {
        return Err(FieldError::ModulusMismatch(params.modulus.get(), bad.modulus().get()).into());
    }
    Ok(())
}

/// Runs the dealing with a caller-supplied `a_1`, keeping every level.
pub fn deal_transcript(
    secrets: &SecretVector,
    params: &RecursiveParams,
    a1: FieldElement,
) -> Result<DealTranscript, SharingError> {
    check_secrets(secrets, params)?;
    if a1.modulus() != params.modulus {
        return Err(FieldError::ModulusMismatch(params.modulus.get(), a1.modulus().get()).into());
    }
    let s = secrets.as_slice();
    let last = params.k - 1;

    let mut polynomials = Vec::with_capacity(last);
    let mut samples = Vec::with_capacity(last);

    let p1 = Polynomial::new(vec![s[0], a1])?;
    let width = if last == 1 { params.n } else { 2 };
    samples.push(sample(&p1, width));
    polynomials.push(p1);

    for level in 2..=last {
        let previous = samples.last().expect("level 1 is always present");
        let mut coefficients = Vec::with_capacity(level + 1);
        coefficients.push(s[level - 1]);
        coefficients.extend(previous.iter().map(|share| share.y));
        let poly = Polynomial::new(coefficients)?;
        let width = if level == last { params.n } else { level + 1 };
        samples.push(sample(&poly, width));
        polynomials.push(poly);
    }

    Ok(DealTranscript {
        polynomials,
        samples,
    })
}

/// Deals `k - 1` secrets into `n` shares with a fresh uniform `a_1`.
pub fn deal<R: RngCore + ?Sized>(
    secrets: &SecretVector,
    params: &RecursiveParams,
    rng: &mut R,
) -> Result<ShareSet, SharingError> {
    check_secrets(secrets, params)?;
    let a1 = random_element(params.modulus, rng);
    let mut transcript = deal_transcript(secrets, params, a1)?;
    Ok(ShareSet {
        shares: transcript.samples.pop().expect("at least one level"),
        params: *params,
    })
}

/// Reconstruction for one fixed set of share indices.
///
/// All interpolation bases are computed up front, so repeated reconstruction
/// from the same participants costs only a few small matrix products.
#[derive(Debug, Clone)]
pub struct Reconstructor {
    params: RecursiveParams,
    top: Interpolator,
    // lower[i - 1] interpolates level i from points x = 1..=i+1
    lower: Vec<Interpolator>,
}

impl Reconstructor {
    /// `indices` must be `k` distinct values in `1..=n`.
    pub fn new(params: &RecursiveParams, indices: &[u64]) -> Result<Self, SharingError> {
        if indices.len() != params.k {
            return Err(SharingError::InsufficientShares {
                needed: params.k,
                got: indices.len(),
            });
        }
        let placeholder: Vec<Share> = indices
            .iter()
            .map(|&index| Share::new(index, params.modulus.zero()))
            .collect();
        // validates range and uniqueness
        select_lowest(&placeholder, params.k, params.n, params.modulus)?;

        let top = Interpolator::new(params.modulus, indices)?;
        let lower = (1..params.k - 1)
            .map(|level| {
                let xs: Vec<u64> = (1..=level as u64 + 1).collect();
                Interpolator::new(params.modulus, &xs)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Reconstructor {
            params: *params,
            top,
            lower,
        })
    }

    pub fn indices(&self) -> &[u64] {
        self.top.xs()
    }

    /// Recovers `p_1..p_{k-1}` from the share values, ordered like `indices()`.
    pub fn levels(&self, ys: &[FieldElement]) -> Result<Vec<Polynomial>, SharingError> {
        let mut levels = Vec::with_capacity(self.params.k - 1);
        let mut current = self.top.interpolate(ys)?;
        for interp in self.lower.iter().rev() {
            let below = interp.interpolate(&current.coefficients()[1..])?;
            levels.push(current);
            current = below;
        }
        levels.push(current);
        levels.reverse();
        Ok(levels)
    }

    /// Recovers `s_1..s_{k-1}` from the share values, ordered like `indices()`.
    pub fn secrets(&self, ys: &[FieldElement]) -> Result<SecretVector, SharingError> {
        let mut secrets = vec![self.params.modulus.zero(); self.params.k - 1];
        let mut current = self.top.interpolate(ys)?;
        for level in (1..self.params.k).rev() {
            secrets[level - 1] = current.free_term();
            if level > 1 {
                current = self.lower[level - 2].interpolate(&current.coefficients()[1..])?;
            }
        }
        Ok(SecretVector(secrets))
    }
}

fn reconstructor_for(
    shares: &[Share],
    params: &RecursiveParams,
) -> Result<(Reconstructor, Vec<FieldElement>), SharingError> {
    let chosen = select_lowest(shares, params.k, params.n, params.modulus)?;
    let indices: Vec<u64> = chosen.iter().map(|s| s.index).collect();
    let ys: Vec<FieldElement> = chosen.iter().map(|s| s.y).collect();
    Ok((Reconstructor::new(params, &indices)?, ys))
}

/// Recovers every level polynomial `p_1..p_{k-1}` from at least `k` shares.
pub fn reconstruct_levels(
    shares: &[Share],
    params: &RecursiveParams,
) -> Result<Vec<Polynomial>, SharingError> {
    let (rec, ys) = reconstructor_for(shares, params)?;
    rec.levels(&ys)
}

/// Recovers `s_1..s_{k-1}` from at least `k` shares with distinct indices.
///
/// When more than `k` shares are given, the `k` lowest indices are used.
pub fn reconstruct(
    shares: &[Share],
    params: &RecursiveParams,
) -> Result<SecretVector, SharingError> {
    let (rec, ys) = reconstructor_for(shares, params)?;
    rec.secrets(&ys)
}

/// `n / (k - 1)`. For `k = 2` this is `n`, the conventional factor.
pub fn blowup_factor(params: &RecursiveParams) -> Ratio<u64> {
    Ratio::new(params.n as u64, (params.k - 1) as u64)
}
