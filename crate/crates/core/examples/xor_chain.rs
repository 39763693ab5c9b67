//! 2-of-2 XOR sharing of a doubling chain of bit strings.

use rsss::xor_recursive::{self, BitSecretChain, BitString};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let chain = BitSecretChain::new(vec!["1".parse()?, "01".parse()?, "1011".parse()?])?;

    let fixed = xor_recursive::deal_with_mask(&chain, &BitString::zeros(1))?;
    println!("mask 0: A = {}, B = {}", fixed.share_a, fixed.share_b);

    let pair = xor_recursive::deal(&chain, &mut rand::thread_rng());
    println!("random: A = {}, B = {}", pair.share_a, pair.share_b);

    let back = xor_recursive::reconstruct(&pair, chain.depth())?;
    let shown: Vec<String> = back.secrets().iter().map(ToString::to_string).collect();
    println!("recovered: {}", shown.join(" "));
    println!(
        "{} secret bits in {} share bits",
        chain.secret_bits(),
        chain.share_bits()
    );
    assert_eq!(back, chain);
    Ok(())
}
