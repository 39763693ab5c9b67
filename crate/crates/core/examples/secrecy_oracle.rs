//! Exhaustively conditions on observed shares at toy sizes and prints the
//! resulting secret distributions.

use rsss::field::PrimeModulus;
use rsss::oracle::{self, ReportFormat};
use rsss::recursive::{self, RecursiveParams, SecretVector};
use rsss::shamir::{self, ShamirParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = PrimeModulus::new(11)?;
    let mut rng = rand::thread_rng();

    let sp = ShamirParams::new(p, 3, 4)?;
    let secret = p.element(7)?;
    let shares = shamir::deal(secret, &sp, &mut rng)?;
    let report = oracle::enumerate_shamir(&sp, secret, &shares[..2])?;
    println!("{}", report.render(ReportFormat::Plain));
    println!("marginal uniform: {}\n", report.marginal_is_uniform(0));

    let rp = RecursiveParams::new(p, 3, 4)?;
    let secrets = SecretVector::from_values(p, &[3, 9])?;
    let set = recursive::deal(&secrets, &rp, &mut rng)?;
    for observed in [&set.shares[..1], &set.shares[1..3]] {
        let report = oracle::enumerate_recursive(&rp, observed)?;
        println!("{}", report.render(ReportFormat::Plain));
        println!(
            "joint uniform: {}, s_1 uniform: {}, s_2 uniform: {}\n",
            report.joint_is_uniform(),
            report.marginal_is_uniform(0),
            report.marginal_is_uniform(1),
        );
    }
    Ok(())
}
