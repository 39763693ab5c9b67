//! Checked-in archives produced by `rsss split -k 3 -n 4 --seed 7 message.txt`.

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use rsss::codec::{self, CodecError, HEADER_LEN};
use rsss::field::MERSENNE_61;
use rsss::recursive::RecursiveParams;
use rsss::PrimeModulus;

fn fixture(name: &str) -> Vec<u8> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn shares() -> Vec<Vec<u8>> {
    (1..=4)
        .map(|i| fixture(&format!("message.txt.share{i}.rsss")))
        .collect()
}

#[test]
fn header_bytes_follow_the_layout() {
    let bytes = &shares()[0];
    assert_eq!(bytes.len(), HEADER_LEN + 5 * 8);
    assert_eq!(&bytes[0..4], b"RSSS");
    assert_eq!(bytes[4], 1);
    assert_eq!(
        u64::from_le_bytes(bytes[5..13].try_into().unwrap()),
        MERSENNE_61
    );
    assert_eq!(u16::from_le_bytes([bytes[13], bytes[14]]), 3);
    assert_eq!(u16::from_le_bytes([bytes[15], bytes[16]]), 4);
    assert_eq!(u16::from_le_bytes([bytes[17], bytes[18]]), 1);
    assert_eq!(u64::from_le_bytes(bytes[19..27].try_into().unwrap()), 57);
    assert_eq!(bytes[27], 7);
}

#[test]
fn fixtures_round_trip_byte_identical() {
    for bytes in shares() {
        let archive = codec::read_archive(&bytes).unwrap();
        assert_eq!(codec::write_archive(&archive), bytes);
    }
}

#[test]
fn fixtures_decode_to_the_message() {
    let message = fixture("message.txt");
    let archives: Vec<_> = shares()
        .iter()
        .map(|b| codec::read_archive(b).unwrap())
        .collect();
    for skip in 0..4 {
        let subset: Vec<_> = archives
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, a)| a.clone())
            .collect();
        assert_eq!(codec::decode_message(&subset[..3]).unwrap(), message);
    }
    assert!(matches!(
        codec::decode_message(&archives[..2]),
        Err(CodecError::InsufficientShares { needed: 3, got: 2 })
    ));
}

#[test]
fn seeded_encoding_reproduces_fixtures() {
    let message = fixture("message.txt");
    let params = RecursiveParams::new(PrimeModulus::mersenne61(), 3, 4).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    let archives = codec::encode_message(&message, &params, &mut rng).unwrap();
    for (archive, expected) in archives.iter().zip(shares()) {
        assert_eq!(archive.to_bytes(), expected);
    }
}
