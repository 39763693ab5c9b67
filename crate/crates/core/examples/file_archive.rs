//! Splits a file into 5-of-7 `.rsss` archives in a temporary directory and
//! joins a 5-subset back.

use std::fs;

use rsss::codec::{self, StorageStats};
use rsss::field::PrimeModulus;
use rsss::RecursiveParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let message: Vec<u8> = b"attack at dawn, bring snacks\n".repeat(40);
    let params = RecursiveParams::new(PrimeModulus::mersenne61(), 5, 7)?;

    let archives = codec::encode_message(&message, &params, &mut rand::thread_rng())?;
    for archive in &archives {
        let name = codec::archive_file_name("plan.txt", archive.header.share_index);
        fs::write(dir.path().join(&name), codec::write_archive(archive))?;
        println!(
            "wrote {name} ({} bytes)",
            archive.payload_len() + codec::HEADER_LEN
        );
    }

    let mut picked = Vec::new();
    for i in [2u16, 3, 5, 6, 7] {
        let bytes = fs::read(dir.path().join(codec::archive_file_name("plan.txt", i)))?;
        picked.push(codec::read_archive(&bytes)?);
    }
    let restored = codec::decode_message(&picked)?;
    assert_eq!(restored, message);

    let stats = StorageStats::of(&archives).expect("non-empty");
    println!("restored {} bytes from shares 2,3,5,6,7", restored.len());
    println!("blow-up (element slots): {}", stats.blowup().unwrap());
    println!(
        "payload bytes / message bytes: {}",
        stats.byte_ratio().unwrap()
    );
    Ok(())
}
