//! Byte streams to share archives and back.
//!
//! A message is cut into limbs of `limb_bytes` bytes (little-endian inside a
//! limb, last limb zero-padded). Every `k - 1` consecutive limbs form one
//! block of secrets, the final block zero-padded, and each block is dealt
//! with the recursive scheme using fresh randomness. Participant `i` keeps
//! the `i`-th share of every block, in block order, in its own archive.
//!
//! Archive layout (all integers little-endian):
//!
//! ```text
//! offset  size  field
//!      0     4  magic "RSSS"
//!      4     1  version (1)
//!      5     8  prime p
//!     13     2  threshold k
//!     15     2  share count n
//!     17     2  share index (1..=n)
//!     19     8  original message length in bytes
//!     27     1  limb_bytes = floor((bitlen(p) - 1) / 8)
//!     28   8*m  m field elements, m = ceil(ceil(len / limb_bytes) / (k - 1))
//! ```
//!
//! The header is not secret: parameters, index and message length are
//! stored in the clear.

use std::collections::HashSet;

use num_rational::Ratio;
use rand::RngCore;
use thiserror::Error;

use crate::field::{FieldElement, FieldError, PrimeModulus};
use crate::recursive::{self, Reconstructor, RecursiveParams, SecretVector};
use crate::shamir::SharingError;

pub const MAGIC: [u8; 4] = *b"RSSS";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 28;
pub const ELEMENT_LEN: usize = 8;
pub const FILE_EXTENSION: &str = "rsss";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("truncated archive: need {needed} bytes, got {got}")]
    Truncated { needed: usize, got: usize },
    #[error("bad magic: expected \"RSSS\"")]
    BadMagic,
    #[error("unsupported archive version {0}")]
    UnsupportedVersion(u8),
    #[error("trailing data: {0} unexpected bytes after the last element")]
    TrailingData(usize),
    #[error("invalid header: {0}")]
    InvalidHeader(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("insufficient shares: need {needed}, got {got}")]
    InsufficientShares { needed: usize, got: usize },
    #[error("header mismatch: {0} differs between archives")]
    HeaderMismatch(&'static str),
    #[error("duplicate share index {0}")]
    DuplicateIndex(u16),
    #[error("corrupt share data: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Sharing(#[from] SharingError),
}

impl From<FieldError> for CodecError {
    fn from(e: FieldError) -> Self {
        CodecError::InvalidParams(e.to_string())
    }
}

/// Bytes per limb for modulus `p`: the largest width whose values are all `< p`.
pub fn limb_bytes_for(modulus: PrimeModulus) -> u8 {
    ((modulus.bit_length() - 1) / 8) as u8
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArchiveHeader {
    pub version: u8,
    pub prime: u64,
    pub k: u16,
    pub n: u16,
    pub share_index: u16,
    pub original_length: u64,
    pub limb_bytes: u8,
}

impl ArchiveHeader {
    /// Number of field elements an archive with this header carries.
    pub fn element_count(&self) -> u64 {
        element_count(self.original_length, self.limb_bytes, self.k)
    }

    pub fn params(&self) -> Result<RecursiveParams, CodecError> {
        let modulus = PrimeModulus::new(self.prime)?;
        Ok(RecursiveParams::new(
            modulus,
            self.k as usize,
            self.n as usize,
        )?)
    }

    fn validate(&self) -> Result<(), CodecError> {
        let modulus =
            PrimeModulus::new(self.prime).map_err(|e| CodecError::InvalidHeader(e.to_string()))?;
        let expected = limb_bytes_for(modulus);
        if expected == 0 || self.limb_bytes != expected {
            return Err(CodecError::InvalidHeader(format!(
                "limb_bytes {} does not match {} for p = {}",
                self.limb_bytes, expected, self.prime
            )));
        }
        if self.share_index == 0 || self.share_index > self.n {
            return Err(CodecError::InvalidHeader(format!(
                "share index {} outside 1..={}",
                self.share_index, self.n
            )));
        }
        RecursiveParams::new(modulus, self.k as usize, self.n as usize)
            .map_err(|e| CodecError::InvalidHeader(e.to_string()))?;
        Ok(())
    }

    fn write_to(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&MAGIC);
        out.push(self.version);
        out.extend_from_slice(&self.prime.to_le_bytes());
        out.extend_from_slice(&self.k.to_le_bytes());
        out.extend_from_slice(&self.n.to_le_bytes());
        out.extend_from_slice(&self.share_index.to_le_bytes());
        out.extend_from_slice(&self.original_length.to_le_bytes());
        out.push(self.limb_bytes);
    }

    /// Parses and validates the fixed 28-byte header.
    pub fn read(bytes: &[u8]) -> Result<Self, CodecError> {
        if bytes.len() < MAGIC.len() {
            return Err(CodecError::Truncated {
                needed: HEADER_LEN,
                got: bytes.len(),
            });
        }
        if bytes[..4] != MAGIC {
            return Err(CodecError::BadMagic);
        }
        if bytes.len() < 5 {
            return Err(CodecError::Truncated {
                needed: HEADER_LEN,
                got: bytes.len(),
            });
        }
        if bytes[4] != VERSION {
            return Err(CodecError::UnsupportedVersion(bytes[4]));
        }
        if bytes.len() < HEADER_LEN {
            return Err(CodecError::Truncated {
                needed: HEADER_LEN,
                got: bytes.len(),
            });
        }
        let u16_at = |i: usize| u16::from_le_bytes([bytes[i], bytes[i + 1]]);
        let u64_at = |i: usize| u64::from_le_bytes(bytes[i..i + 8].try_into().expect("8 bytes"));
        let header = ArchiveHeader {
            version: bytes[4],
            prime: u64_at(5),
            k: u16_at(13),
            n: u16_at(15),
            share_index: u16_at(17),
            original_length: u64_at(19),
            limb_bytes: bytes[27],
        };
        header.validate()?;
        Ok(header)
    }
}

fn element_count(original_length: u64, limb_bytes: u8, k: u16) -> u64 {
    let limbs = original_length.div_ceil(limb_bytes as u64);
    limbs.div_ceil(k.saturating_sub(1).max(1) as u64)
}

/// One participant's share of a byte stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareArchive {
    pub header: ArchiveHeader,
    pub elements: Vec<u64>,
}

impl ShareArchive {
    pub fn to_bytes(&self) -> Vec<u8> {
        write_archive(self)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CodecError> {
        read_archive(bytes)
    }

    /// Size of the element payload, headers excluded.
    pub fn payload_len(&self) -> usize {
        self.elements.len() * ELEMENT_LEN
    }
}

pub fn write_archive(archive: &ShareArchive) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + archive.payload_len());
    archive.header.write_to(&mut out);
    for e in &archive.elements {
        out.extend_from_slice(&e.to_le_bytes());
    }
    out
}

pub fn read_archive(bytes: &[u8]) -> Result<ShareArchive, CodecError> {
    let header = ArchiveHeader::read(bytes)?;
    let count = usize::try_from(header.element_count())
        .map_err(|_| CodecError::InvalidHeader("element count overflows".into()))?;
    let needed = count
        .checked_mul(ELEMENT_LEN)
        .and_then(|b| b.checked_add(HEADER_LEN))
        .ok_or_else(|| CodecError::InvalidHeader("archive size overflows".into()))?;
    if bytes.len() < needed {
        return Err(CodecError::Truncated {
            needed,
            got: bytes.len(),
        });
    }
    if bytes.len() > needed {
        return Err(CodecError::TrailingData(bytes.len() - needed));
    }
    let elements = bytes[HEADER_LEN..]
        .chunks_exact(ELEMENT_LEN)
        .map(|chunk| u64::from_le_bytes(chunk.try_into().expect("8 bytes")))
        .collect::<Vec<_>>();
    if let Some((pos, bad)) = elements
        .iter()
        .enumerate()
        .find(|(_, &e)| e >= header.prime)
    {
        return Err(CodecError::Corrupt(format!(
            "element {pos} = {bad} is not below p = {}",
            header.prime
        )));
    }
    Ok(ShareArchive { header, elements })
}

fn check_codec_params(params: &RecursiveParams) -> Result<u8, CodecError> {
    let limb_bytes = limb_bytes_for(params.modulus());
    if limb_bytes == 0 {
        return Err(CodecError::InvalidParams(format!(
            "p = {} is too small to hold a byte (need p > 256)",
            params.modulus()
        )));
    }
    if params.share_count() > u16::MAX as usize {
        return Err(CodecError::InvalidParams(format!(
            "share count {} exceeds {}",
            params.share_count(),
            u16::MAX
        )));
    }
    Ok(limb_bytes)
}

fn pack_limbs(bytes: &[u8], limb_bytes: usize) -> Vec<u64> {
    bytes
        .chunks(limb_bytes)
        .map(|chunk| {
            chunk
                .iter()
                .rev()
                .fold(0u64, |acc, &b| (acc << 8) | b as u64)
        })
        .collect()
}

/// Splits `message` into `n` archives, any `k` of which restore it.
pub fn encode_message<R: RngCore + ?Sized>(
    message: &[u8],
    params: &RecursiveParams,
    rng: &mut R,
) -> Result<Vec<ShareArchive>, CodecError> {
    let limb_bytes = check_codec_params(params)?;
    let modulus = params.modulus();
    let group = params.secret_count();
    let n = params.share_count();

    let limbs = pack_limbs(message, limb_bytes as usize);
    let blocks = limbs.len().div_ceil(group);
    let mut columns: Vec<Vec<u64>> = vec![Vec::with_capacity(blocks); n];

    for chunk in limbs.chunks(group) {
        let mut secrets: Vec<FieldElement> = chunk
            .iter()
            .map(|&limb| modulus.element(limb))
            .collect::<Result<_, _>>()?;
        secrets.resize(group, modulus.zero());
        let dealt = recursive::deal(&SecretVector::new(secrets), params, rng)?;
        for (column, share) in columns.iter_mut().zip(&dealt.shares) {
            column.push(share.y.value());
        }
    }

    Ok(columns
        .into_iter()
        .enumerate()
        .map(|(i, elements)| ShareArchive {
            header: ArchiveHeader {
                version: VERSION,
                prime: modulus.get(),
                k: params.threshold() as u16,
                n: n as u16,
                share_index: (i + 1) as u16,
                original_length: message.len() as u64,
                limb_bytes,
            },
            elements,
        })
        .collect())
}

/// Restores the message from at least `k` archives of one encoding.
///
/// Uses the `k` lowest share indices when more are given.
pub fn decode_message(archives: &[ShareArchive]) -> Result<Vec<u8>, CodecError> {
    let first = archives
        .first()
        .ok_or(CodecError::InsufficientShares { needed: 2, got: 0 })?;
    let h = first.header;
    let mut seen = HashSet::new();
    for a in archives {
        let other = a.header;
        let mismatch = if other.version != h.version {
            Some("version")
        } else if other.prime != h.prime {
            Some("prime")
        } else if other.k != h.k {
            Some("k")
        } else if other.n != h.n {
            Some("n")
        } else if other.original_length != h.original_length {
            Some("original_length")
        } else if other.limb_bytes != h.limb_bytes {
            Some("limb_bytes")
        } else {
            None
        };
        if let Some(field) = mismatch {
            return Err(CodecError::HeaderMismatch(field));
        }
        if !seen.insert(other.share_index) {
            return Err(CodecError::DuplicateIndex(other.share_index));
        }
    }
    h.validate()?;
    let params = h.params()?;
    let k = params.threshold();
    if archives.len() < k {
        return Err(CodecError::InsufficientShares {
            needed: k,
            got: archives.len(),
        });
    }
    let expected = h.element_count() as usize;
    if let Some(a) = archives.iter().find(|a| a.elements.len() != expected) {
        return Err(CodecError::Corrupt(format!(
            "archive {} holds {} elements, expected {}",
            a.header.share_index,
            a.elements.len(),
            expected
        )));
    }

    let mut chosen: Vec<&ShareArchive> = archives.iter().collect();
    chosen.sort_by_key(|a| a.header.share_index);
    chosen.truncate(k);
    let indices: Vec<u64> = chosen.iter().map(|a| a.header.share_index as u64).collect();
    let rec = Reconstructor::new(&params, &indices)?;

    let modulus = params.modulus();
    let limb_bytes = h.limb_bytes as usize;
    let limb_bound = 1u64 << (8 * limb_bytes);
    let mut out = Vec::with_capacity(expected * (k - 1) * limb_bytes);
    let mut ys = Vec::with_capacity(k);
    for block in 0..expected {
        ys.clear();
        for a in &chosen {
            ys.push(
                modulus
                    .element(a.elements[block])
                    .map_err(|e| CodecError::Corrupt(e.to_string()))?,
            );
        }
        for limb in rec.secrets(&ys)?.as_slice() {
            let v = limb.value();
            if v >= limb_bound {
                return Err(CodecError::Corrupt(format!(
                    "block {block} reconstructs to {v}, which does not fit in {limb_bytes} bytes"
                )));
            }
            out.extend_from_slice(&v.to_le_bytes()[..limb_bytes]);
        }
    }

    let len = h.original_length as usize;
    if out[len..].iter().any(|&b| b != 0) {
        return Err(CodecError::Corrupt(
            "nonzero padding after the message end".into(),
        ));
    }
    out.truncate(len);
    Ok(out)
}

/// Storage accounting for one complete encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StorageStats {
    /// Element payload summed over all `n` archives, headers excluded.
    pub payload_bytes: u64,
    /// Limbs after padding the message to whole blocks of `k - 1`.
    pub padded_limbs: u64,
    /// `padded_limbs * limb_bytes`.
    pub padded_message_bytes: u64,
}

impl StorageStats {
    pub fn of(archives: &[ShareArchive]) -> Option<Self> {
        let h = archives.first()?.header;
        let blocks = h.element_count();
        Some(StorageStats {
            payload_bytes: archives.iter().map(|a| a.payload_len() as u64).sum(),
            padded_limbs: blocks * (h.k as u64 - 1),
            padded_message_bytes: blocks * (h.k as u64 - 1) * h.limb_bytes as u64,
        })
    }

    /// Payload over the padded message with each limb counted at element
    /// width: `n / (k - 1)`. `None` for an empty message.
    pub fn blowup(&self) -> Option<Ratio<u64>> {
        (self.padded_limbs > 0)
            .then(|| Ratio::new(self.payload_bytes, self.padded_limbs * ELEMENT_LEN as u64))
    }

    /// Payload over the padded message in raw bytes. Exceeds [`blowup`]
    /// by `8 / limb_bytes` because elements are wider than limbs.
    ///
    /// [`blowup`]: StorageStats::blowup
    pub fn byte_ratio(&self) -> Option<Ratio<u64>> {
        (self.padded_message_bytes > 0)
            .then(|| Ratio::new(self.payload_bytes, self.padded_message_bytes))
    }
}

/// `<stem>.share<index>.rsss`
pub fn archive_file_name(stem: &str, index: u16) -> String {
    format!("{stem}.share{index}.{FILE_EXTENSION}")
}

/// Extracts the share index from a name produced by [`archive_file_name`].
pub fn index_from_file_name(name: &str) -> Option<u16> {
    let rest = name.strip_suffix(&format!(".{FILE_EXTENSION}"))?;
    let pos = rest.rfind(".share")?;
    rest[pos + ".share".len()..].parse().ok()
}
