//! Measures share-to-secret size for a few (k, n) and compares it with one
//! Shamir sharing per secret and the n/k optimum.

use rsss::field::PrimeModulus;
use rsss::oracle::{report_blowup, BlowupScheme};
use rsss::recursive::{self, RecursiveParams, SecretVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = PrimeModulus::mersenne61();
    let bits = u64::from(p.bit_length());
    let mut rng = rand::thread_rng();
    println!(
        "{:>3} {:>3} {:>10} {:>10} {:>10}",
        "k", "n", "recursive", "shamir", "optimal"
    );
    for (k, n) in [(2, 3), (3, 4), (3, 5), (5, 7), (8, 10), (16, 20)] {
        let params = RecursiveParams::new(p, k, n)?;
        let secrets = SecretVector::new(
            (1..k)
                .map(|_| rsss::field::random_element(p, &mut rng))
                .collect(),
        );
        let set = recursive::deal(&secrets, &params, &mut rng)?;

        let secret_bits = secrets.len() as u64 * bits;
        let share_bits = set.shares.len() as u64 * bits;
        let r = report_blowup(
            BlowupScheme::Recursive,
            k as u64,
            n as u64,
            secret_bits,
            share_bits,
        );
        let s = BlowupScheme::Shamir.reference(k as u64, n as u64);
        assert!(r.matches_reference());
        println!(
            "{k:>3} {n:>3} {:>10} {:>10} {:>10}",
            r.measured.to_string(),
            s.to_string(),
            r.optimal.to_string()
        );
    }
    Ok(())
}
