//! Acceptance suite. Run with `cargo test --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

#[macro_use]
mod common;

use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use common::{all_vectors, criterion, mod_inv, subsets, vandermonde_solve};
use rsss::codec::{self, StorageStats};
use rsss::field::{random_element, PrimeModulus, MERSENNE_61};
use rsss::oracle::{self, BlowupScheme, RecursiveEnumerator, ShamirEnumerator};
use rsss::poly::{self, Interpolator, SharePoint};
use rsss::recursive::{self, RecursiveParams, SecretVector};
use rsss::shamir::{self, ShamirParams, Share};
use rsss::xor_recursive::{self, BitSecretChain, BitString};

fn gf(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn ys(shares: &[Share]) -> Vec<u64> {
    shares.iter().map(|s| s.y.value()).collect()
}

#[test]
fn criterion_1_golden_dealing() {
    criterion(1, "worked example dealing, all intermediate values", || {
        let m = gf(31);
        let params = RecursiveParams::new(m, 5, 7).map_err(|e| e.to_string())?;
        let secrets = SecretVector::from_values(m, &[17, 28, 5, 12]).map_err(|e| e.to_string())?;
        let a1 = m.element(22).unwrap();

        // warm-up so the timed run measures the dealing, not page faults
        recursive::deal_transcript(&secrets, &params, a1).unwrap();
        let start = Instant::now();
        let t = recursive::deal_transcript(&secrets, &params, a1).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();

        let polys: Vec<Vec<u64>> = t
            .polynomials
            .iter()
            .map(|p| p.coefficient_values())
            .collect();
        ensure!(polys[0] == [17, 22], "p1 = {:?}", polys[0]);
        ensure!(polys[1] == [28, 8, 30], "p2 = {:?}", polys[1]);
        ensure!(polys[2] == [5, 4, 9, 12], "p3 = {:?}", polys[2]);
        ensure!(polys[3] == [12, 30, 21, 19, 3], "p4 = {:?}", polys[3]);
        ensure!(
            ys(&t.samples[0]) == [8, 30],
            "level-1 shares {:?}",
            ys(&t.samples[0])
        );
        ensure!(
            ys(&t.samples[1]) == [4, 9, 12],
            "level-2 shares {:?}",
            ys(&t.samples[1])
        );
        ensure!(
            ys(&t.samples[2]) == [30, 21, 19, 3],
            "level-3 shares {:?}",
            ys(&t.samples[2])
        );
        let fin: Vec<(u64, u64)> = t
            .final_shares()
            .iter()
            .map(|s| (s.index, s.y.value()))
            .collect();
        ensure!(
            fin == [(1, 23), (2, 15), (3, 24), (4, 3), (5, 8), (6, 12), (7, 29)],
            "final shares {fin:?}"
        );
        ensure!(
            elapsed < Duration::from_millis(1),
            "dealing took {elapsed:?}"
        );
        Ok(format!("dealing in {elapsed:?}"))
    });
}

#[test]
fn criterion_2_golden_reconstruction() {
    criterion(
        2,
        "worked example reconstruction from shares 1,3,4,5,7",
        || {
            let m = gf(31);
            let params = RecursiveParams::new(m, 5, 7).unwrap();
            let shares: Vec<Share> = [(1, 23), (3, 24), (4, 3), (5, 8), (7, 29)]
                .iter()
                .map(|&(i, y)| Share::new(i, m.element(y).unwrap()))
                .collect();
            let levels =
                recursive::reconstruct_levels(&shares, &params).map_err(|e| e.to_string())?;
            let top = levels[3].coefficient_values();
            ensure!(top == [12, 30, 21, 19, 3], "p4 = {top:?}");
            // the level-2 points are (1,4), (2,9), (3,12)
            let p3 = levels[2].coefficient_values();
            ensure!(
                p3[1..] == [4, 9, 12],
                "p3 non-free coefficients {:?}",
                &p3[1..]
            );
            let secrets = recursive::reconstruct(&shares, &params).map_err(|e| e.to_string())?;
            ensure!(
                secrets.values() == [17, 28, 5, 12],
                "secrets {:?}",
                secrets.values()
            );
            Ok("exact".into())
        },
    );
}

#[test]
fn criterion_3_round_trip_all_subsets() {
    criterion(
        3,
        "round trip over every k-subset, 1000 random instances",
        || {
            let mut rng = ChaCha20Rng::seed_from_u64(0xacce_0003);
            let start = Instant::now();
            let mut subsets_checked = 0usize;
            for trial in 0..1000 {
                let p = if trial % 2 == 0 { 31 } else { MERSENNE_61 };
                let m = gf(p);
                let k = rng.gen_range(2..=8);
                let n = rng.gen_range(k..=12);
                let params = RecursiveParams::new(m, k, n).map_err(|e| e.to_string())?;
                let secrets =
                    SecretVector::new((1..k).map(|_| random_element(m, &mut rng)).collect());
                let set =
                    recursive::deal(&secrets, &params, &mut rng).map_err(|e| e.to_string())?;
                for subset in subsets(&set.shares, k) {
                    let back =
                        recursive::reconstruct(&subset, &params).map_err(|e| e.to_string())?;
                    ensure!(
                        back == secrets,
                        "trial {trial} (p={p}, k={k}, n={n}) failed"
                    );
                    subsets_checked += 1;
                }
            }
            let elapsed = start.elapsed();
            ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
            Ok(format!("{subsets_checked} subsets"))
        },
    );
}

#[test]
fn criterion_4_shamir_perfect_secrecy() {
    criterion(
        4,
        "Shamir free term uniform given any k-1 shares, exhaustive",
        || {
            let start = Instant::now();
            let mut reports = 0usize;
            let n = 4;
            for p in [5u64, 7, 11, 13] {
                let m = gf(p);
                for k in [2usize, 3] {
                    let params = ShamirParams::new(m, k, n).map_err(|e| e.to_string())?;
                    let enumerator = ShamirEnumerator::new(&params).map_err(|e| e.to_string())?;
                    let index_sets = subsets(&(1..=n as u64).collect::<Vec<_>>(), k - 1);
                    for secret in m.elements() {
                        for coeffs in all_vectors(p, k - 1) {
                            let coeffs: Vec<_> =
                                coeffs.iter().map(|&c| m.element(c).unwrap()).collect();
                            let shares = shamir::deal_with_coefficients(secret, &coeffs, &params)
                                .map_err(|e| e.to_string())?;
                            for idx in &index_sets {
                                let observed: Vec<Share> =
                                    idx.iter().map(|&i| shares[i as usize - 1]).collect();
                                let r = enumerator.report(&observed).map_err(|e| e.to_string())?;
                                ensure!(
                                    r.per_secret_marginals[0].len() as u64 == p
                                        && r.per_secret_marginals[0]
                                            .values()
                                            .all(|&q| q == Ratio::new(1, p)),
                                    "p={p} k={k} secret={secret} observed={idx:?}: not uniform"
                                );
                                ensure!(
                                    r.candidate_count == p,
                                    "p={p} k={k}: {} candidates",
                                    r.candidate_count
                                );
                                reports += 1;
                            }
                        }
                    }
                }
            }
            let elapsed = start.elapsed();
            ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
            Ok(format!("{reports} conditional distributions"))
        },
    );
}

#[test]
fn criterion_5_recursive_dimension_count() {
    criterion(
        5,
        "recursive p=11 k=3 n=4: 11 candidates given any 2 shares",
        || {
            let m = gf(11);
            let params = RecursiveParams::new(m, 3, 4).unwrap();
            let enumerator = RecursiveEnumerator::new(&params).map_err(|e| e.to_string())?;
            let pairs = subsets(&[1u64, 2, 3, 4], 2);
            let mut checked = 0usize;
            let mut entropy = 0.0;
            for v in all_vectors(11, 3) {
                let secrets = SecretVector::from_values(m, &v[..2]).unwrap();
                let t = recursive::deal_transcript(&secrets, &params, m.element(v[2]).unwrap())
                    .map_err(|e| e.to_string())?;
                for pair in &pairs {
                    let observed: Vec<Share> = pair
                        .iter()
                        .map(|&i| t.final_shares()[i as usize - 1])
                        .collect();
                    let r = enumerator.report(&observed).map_err(|e| e.to_string())?;
                    ensure!(
                        r.candidate_count == 11,
                        "{:?} -> {} candidates",
                        observed,
                        r.candidate_count
                    );
                    ensure!(
                        r.probability_of(&v[..2]) == Ratio::new(1, 11),
                        "true secrets not in support"
                    );
                    ensure!(
                        r.joint_entropy_bits == (r.candidate_count as f64).log2(),
                        "entropy {} vs log2({})",
                        r.joint_entropy_bits,
                        r.candidate_count
                    );
                    ensure!(
                        r.joint_entropy_bits == 11f64.log2(),
                        "entropy {}",
                        r.joint_entropy_bits
                    );
                    entropy = r.joint_entropy_bits;
                    checked += 1;
                }
            }
            Ok(format!(
                "{checked} observations, joint entropy {entropy:.6} bits of a possible {:.6}",
                2.0 * 11f64.log2()
            ))
        },
    );
}

#[test]
fn criterion_6_blowup_factors() {
    criterion(6, "blow-up factors", || {
        let params = RecursiveParams::new(gf(31), 5, 7).unwrap();
        ensure!(
            params.blowup_factor() == Ratio::new(7, 4),
            "recursive {}",
            params.blowup_factor()
        );
        let r = oracle::report_blowup(BlowupScheme::Recursive, 5, 7, 4, 7);
        ensure!(
            r.matches_reference() && r.measured == Ratio::new(7, 4),
            "report {r:?}"
        );
        for n in 2..=12u64 {
            for k in 2..=n {
                ensure!(
                    BlowupScheme::Shamir.reference(k, n) == Ratio::from_integer(n),
                    "conventional ({k},{n})"
                );
                ensure!(
                    BlowupScheme::Optimal.reference(k, n) == Ratio::new(n, k),
                    "optimal ({k},{n})"
                );
                let rp = RecursiveParams::new(gf(31), k as usize, n as usize).unwrap();
                ensure!(
                    rp.blowup_factor() == Ratio::new(n, k - 1),
                    "recursive ({k},{n})"
                );
            }
        }
        let single = RecursiveParams::new(gf(31), 2, 5).unwrap();
        ensure!(single.blowup_factor() == Ratio::from_integer(5), "k=2 case");
        Ok("exact".into())
    });
}

#[test]
fn criterion_7_xor_scheme() {
    criterion(7, "XOR chain 1, 01, 1011 with r = 0", || {
        let chain = BitSecretChain::new(
            ["1", "01", "1011"]
                .iter()
                .map(|s| s.parse::<BitString>().unwrap())
                .collect(),
        )
        .map_err(|e| e.to_string())?;
        let pair = xor_recursive::deal_with_mask(&chain, &BitString::zeros(1))
            .map_err(|e| e.to_string())?;
        ensure!(
            pair.share_a.to_string() == "0010",
            "share A {}",
            pair.share_a
        );
        ensure!(
            pair.share_b.to_string() == "1001",
            "share B {}",
            pair.share_b
        );
        let back = xor_recursive::reconstruct(&pair, 3).map_err(|e| e.to_string())?;
        ensure!(back == chain, "reconstructed {:?}", back);
        ensure!(
            chain.share_bits() == 8 && chain.secret_bits() == 7,
            "bit counts"
        );
        let top = chain.secrets().last().unwrap().len();
        let first = chain.secrets()[0].len();
        ensure!(chain.share_bits() == 2 * top, "share bits identity");
        ensure!(
            chain.secret_bits() == 2 * top - first,
            "secret bits identity"
        );
        Ok("8 share bits carry 7 secret bits".into())
    });
}

#[test]
fn criterion_8_codec_round_trip() {
    criterion(8, "codec round trip on all 5-of-7 subsets", || {
        let params = RecursiveParams::new(PrimeModulus::mersenne61(), 5, 7).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(0xacce_0008);
        let all_subsets = subsets(&(0..7usize).collect::<Vec<_>>(), 5);
        ensure!(all_subsets.len() == 21, "C(7,5)");
        for size in [0usize, 1, 55, 56, 57, 1_000_000] {
            let mut msg = vec![0u8; size];
            rng.fill(&mut msg[..]);
            let archives =
                codec::encode_message(&msg, &params, &mut rng).map_err(|e| e.to_string())?;
            ensure!(archives.len() == 7, "archive count");
            // through the byte format as well
            let archives: Vec<_> = archives
                .iter()
                .map(|a| codec::read_archive(&codec::write_archive(a)))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            for subset in &all_subsets {
                let chosen: Vec<_> = subset.iter().map(|&i| archives[i].clone()).collect();
                let out = codec::decode_message(&chosen).map_err(|e| e.to_string())?;
                ensure!(out == msg, "size {size}, subset {subset:?} differs");
            }
            let stats = StorageStats::of(&archives).unwrap();
            if size == 0 {
                ensure!(stats.payload_bytes == 0, "empty message has payload");
            } else {
                ensure!(
                    stats.blowup() == Some(Ratio::new(7, 4)),
                    "size {size}: ratio {:?}",
                    stats.blowup()
                );
            }
        }
        Ok("sizes 0, 1, 55, 56, 57, 10^6".into())
    });
}

#[test]
fn criterion_9_interpolation_matches_vandermonde() {
    criterion(
        9,
        "interpolation equals Vandermonde solve, p <= 13, length <= 4",
        || {
            let mut instances = 0u64;
            for p in [2u64, 3, 5, 7, 11, 13] {
                let m = gf(p);
                let nonzero: Vec<u64> = (1..p).collect();
                for length in 1..=4usize.min(p as usize - 1) {
                    let value_vectors = all_vectors(p, length);
                    for xs in subsets(&nonzero, length) {
                        let interp = Interpolator::new(m, &xs).map_err(|e| e.to_string())?;
                        for ys in &value_vectors {
                            let expected =
                                vandermonde_solve(&xs, ys, p).ok_or("singular Vandermonde")?;
                            let y_el: Vec<_> = ys.iter().map(|&y| m.element(y).unwrap()).collect();
                            let got = interp.interpolate(&y_el).map_err(|e| e.to_string())?;
                            ensure!(
                                got.coefficient_values() == expected,
                                "p={p} xs={xs:?} ys={ys:?}: {:?} vs {expected:?}",
                                got.coefficient_values()
                            );
                            instances += 1;
                        }
                        // the one-shot entry point on the first and last value vectors
                        for ys in [
                            value_vectors.first().unwrap(),
                            value_vectors.last().unwrap(),
                        ] {
                            let points: Vec<SharePoint> = xs
                                .iter()
                                .zip(ys)
                                .map(|(&x, &y)| SharePoint::new(x, m.element(y).unwrap()).unwrap())
                                .collect();
                            let got =
                                poly::interpolate(&points, length).map_err(|e| e.to_string())?;
                            ensure!(
                                got.coefficient_values() == vandermonde_solve(&xs, ys, p).unwrap(),
                                "one-shot interpolate p={p} xs={xs:?}"
                            );
                        }
                    }
                }
            }
            // sanity: the oracle's own inverse
            ensure!(mod_inv(22, 31) == 24, "oracle inverse");
            Ok(format!("{instances} instances"))
        },
    );
}
