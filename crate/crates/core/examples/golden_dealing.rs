//! Deals four secrets over Z_31 with k = 5, n = 7 and a fixed a_1, printing
//! every intermediate polynomial, then recovers them from shares 1, 3, 4, 5, 7.

use rsss::field::PrimeModulus;
use rsss::recursive::{self, RecursiveParams, SecretVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = PrimeModulus::new(31)?;
    let params = RecursiveParams::new(p, 5, 7)?;
    let secrets = SecretVector::from_values(p, &[17, 28, 5, 12])?;

    let transcript = recursive::deal_transcript(&secrets, &params, p.element(22)?)?;
    for (i, (poly, samples)) in transcript
        .polynomials
        .iter()
        .zip(&transcript.samples)
        .enumerate()
    {
        let ys: Vec<String> = samples
            .iter()
            .map(|s| format!("{}:{}", s.index, s.y))
            .collect();
        println!("p_{}(x) = {poly}", i + 1);
        println!("    samples {}", ys.join(" "));
    }

    let shares = transcript.final_shares();
    let chosen: Vec<_> = [1, 3, 4, 5, 7].iter().map(|&i| shares[i - 1]).collect();
    let recovered = recursive::reconstruct(&chosen, &params)?;
    println!("recovered from shares 1,3,4,5,7: {:?}", recovered.values());
    assert_eq!(recovered, secrets);
    Ok(())
}
