//! Classic (3, 5) sharing of one secret: every 3-subset recovers it, and two
//! shares alone are refused.

use rsss::field::PrimeModulus;
use rsss::shamir::{self, ShamirParams};
use rsss::SharingError;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = PrimeModulus::mersenne61();
    let params = ShamirParams::new(p, 3, 5)?;
    let secret = p.element(1_234_567_890_123)?;
    let shares = shamir::deal(secret, &params, &mut rand::thread_rng())?;

    for s in &shares {
        println!("share {}: {}", s.index, s.y);
    }
    for (a, b, c) in [(0, 1, 2), (0, 2, 4), (1, 3, 4)] {
        let got = shamir::reconstruct(&[shares[a], shares[b], shares[c]], &params)?;
        println!("shares {},{},{} -> {got}", a + 1, b + 1, c + 1);
        assert_eq!(got, secret);
    }
    match shamir::reconstruct(&shares[..2], &params) {
        Err(e @ SharingError::InsufficientShares { .. }) => println!("two shares: {e}"),
        other => panic!("unexpected: {other:?}"),
    }
    Ok(())
}
