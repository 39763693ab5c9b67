//! Recursive multi-secret sharing over prime fields.
//!
//! A `(k, n)` threshold scheme normally spends `n` shares on a single
//! secret. The recursive construction in [`recursive`] stores `k - 1`
//! secrets in the same `n` shares by reusing the shares of each secret as
//! the random coefficients of the next one, for a blow-up of `n / (k - 1)`
//! instead of `n`.
//!
//! ```
//! use rsss::field::PrimeModulus;
//! use rsss::recursive::{self, RecursiveParams, SecretVector};
//!
//! let p = PrimeModulus::new(31)?;
//! let params = RecursiveParams::new(p, 5, 7)?;
//! let secrets = SecretVector::from_values(p, &[17, 28, 5, 12])?;
//!
//! let set = recursive::deal(&secrets, &params, &mut rand::thread_rng())?;
//! let any_five = [set.shares[0], set.shares[2], set.shares[3], set.shares[4], set.shares[6]];
//! assert_eq!(recursive::reconstruct(&any_five, &params)?, secrets);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! Modules:
//!
//! - [`field`]: arithmetic in `Z_p` for primes below `2^61`.
//! - [`poly`]: Horner evaluation and full-coefficient Lagrange interpolation.
//! - [`shamir`]: classic single-secret sharing.
//! - [`recursive`]: the `k - 1` secrets in `n` shares construction.
//! - [`xor_recursive`]: a 2-of-2 XOR variant for chains of doubling bit strings.
//! - [`codec`]: splits byte streams into `.rsss` share archives and back.
//! - [`oracle`]: exhaustive conditional-distribution analysis at toy sizes.
//! - [`cli`]: the `rsss` command line.

pub mod cli;
pub mod codec;
pub mod field;
pub mod oracle;
pub mod poly;
pub mod recursive;
pub mod shamir;
pub mod xor_recursive;

pub use codec::{decode_message, encode_message, ShareArchive};
pub use field::{FieldElement, PrimeModulus};
pub use poly::Polynomial;
pub use recursive::{RecursiveParams, SecretVector};
pub use shamir::{ShamirParams, Share, SharingError};
