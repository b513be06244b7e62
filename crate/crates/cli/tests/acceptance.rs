//! Acceptance suite: one test per shipped guarantee, each printing a PASS
//! line with its wall-clock time (visible with `--nocapture`).
//!
//! Monte Carlo criteria pin both the seed and the shard count, so their
//! sampled values are identical on every machine.

use std::process::{Command, Output};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use wecken_core::census::{
    density_trend, exact_census, mc_census, xp_sequence, Category, DEFAULT_BUDGET,
};
use wecken_core::formulas::{
    count_ball, shell_prob_ratio, tail_equality_bound, tail_equality_bound_sum,
    tail_equality_case_probs, wecken_density_lower_bound,
};
use wecken_core::freegroup::{enumerate_ball, BallSpec, Letter, Rank, Word, WordSampler};
use wecken_core::wagner::{wagner_tails, Endomorphism};

const SHARDS: usize = 8;

fn rank(n: u32) -> Rank {
    Rank::new(n).unwrap()
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn finish(id: u32, name: &str, started: Instant, limit_secs: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    println!("ACCEPTANCE {id:02} {name}: PASS ({elapsed:.2}s, limit {limit_secs}s)");
    assert!(
        elapsed < limit_secs,
        "criterion {id} exceeded its time budget: {elapsed:.2}s >= {limit_secs}s"
    );
}

#[test]
fn criterion_01_closed_form_matches_enumeration() {
    let started = Instant::now();
    for n in 2..=4u32 {
        for p in 0..=5usize {
            let counted = enumerate_ball(BallSpec::new(rank(n), p)).count();
            let closed = count_ball(rank(n), p).unwrap();
            assert_eq!(num_bigint::BigUint::from(counted), closed, "n={n} p={p}");
        }
    }
    assert_eq!(enumerate_ball(BallSpec::new(rank(2), 5)).count(), 485);
    assert_eq!(enumerate_ball(BallSpec::new(rank(3), 3)).count(), 187);
    finish(1, "closed form vs enumeration", started, 10.0);
}

#[test]
fn criterion_02_tail_reconstruction() {
    let started = Instant::now();
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(0xACC2);
    let mut checked = 0u64;
    for n in 2..=5u32 {
        let r = rank(n);
        let sampler = WordSampler::new(BallSpec::new(r, 30));
        for _ in 0..2_500 {
            let images: Vec<Word> = (0..n).map(|_| sampler.sample(&mut rng)).collect();
            let phi = Endomorphism::new(r, images).unwrap();
            for tail in wagner_tails(&phi).iter().filter(|t| !t.is_trivial()) {
                let gen = Word::from_letters(vec![Letter::generator(tail.location)]);
                let rebuilt = tail.w.multiply(&gen).multiply(&tail.w_bar.invert());
                assert_eq!(&rebuilt, phi.image(tail.location), "failed on {phi:?}");
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 10_000);
    finish(2, "tail reconstruction on 10^4 random maps", started, 30.0);
}

#[test]
fn criterion_03_no_equality_fraction_monotone() {
    let started = Instant::now();
    let seq = xp_sequence(rank(2), 5, DEFAULT_BUDGET, SHARDS);
    assert!(seq.truncated.is_none());
    assert_eq!(seq.values.len(), 5);
    assert_eq!(seq.values[0], ratio(16, 25));
    for pair in seq.values.windows(2) {
        assert!(pair[0] >= pair[1], "sequence increased: {:?}", seq.values);
    }
    finish(3, "x_p monotone through radius 5", started, 60.0);
}

#[test]
fn criterion_04_case_probabilities_recombine_exactly() {
    let started = Instant::now();
    for n in 2..=10u32 {
        let r = rank(n);
        let full = tail_equality_bound_sum(r).unwrap();
        let mut partial = BigRational::new(BigInt::from(0), BigInt::from(1));
        for k in 1..=10usize {
            let cases = tail_equality_case_probs(r, k).unwrap();
            let bound = tail_equality_bound(r, k).unwrap();
            assert_eq!(cases.weighted_total, bound, "n={n} k={k}");
            partial += &bound;
            // Finite geometric tail: partial sum + residue is the full sum.
            let m = u64::from(n);
            let residue = BigRational::new(
                BigInt::from(3 * m - 2),
                BigInt::from(2 * m)
                    * BigInt::from(2 * m - 2)
                    * BigInt::from(2 * m - 1).pow(k as u32),
            );
            assert_eq!(&partial + residue, full, "n={n} k={k}");
        }
    }
    finish(4, "equality-bound internal consistency", started, 1.0);
}

#[test]
fn criterion_05_length1_equality_fraction_below_bound() {
    let started = Instant::now();
    let bound = ratio(1, 3);
    // Regression goldens established by the exact engine (itself verified
    // map-by-map against the independent oracle at small radii).
    let golden = [(4usize, 5_236u64, 25_921u64), (5, 55_992, 235_225)];
    for (p, a1, total) in golden {
        let census = exact_census(BallSpec::new(rank(2), p), DEFAULT_BUDGET, SHARDS).unwrap();
        assert_eq!(census.total, total, "p={p}");
        assert_eq!(census.counts.ak_count(1), a1, "p={p}");
        let fraction = census.ak_fraction(1);
        assert!(fraction <= bound, "p={p}: {fraction} > 1/3");
    }
    finish(5, "length-1 equality fraction vs bound", started, 120.0);
}

#[test]
fn criterion_06_certified_bound_thresholds() {
    let started = Instant::now();
    assert_eq!(
        wecken_density_lower_bound(rank(8)).unwrap(),
        ratio(101, 112)
    );
    assert!(wecken_density_lower_bound(rank(7)).unwrap() < ratio(9, 10));
    assert!(wecken_density_lower_bound(rank(8)).unwrap() > ratio(9, 10));
    assert!(wecken_density_lower_bound(rank(75)).unwrap() < ratio(99, 100));
    assert!(wecken_density_lower_bound(rank(76)).unwrap() > ratio(99, 100));
    finish(6, "0.9 and 0.99 threshold ranks", started, 1.0);
}

#[test]
fn criterion_07_sampling_agrees_with_exact_census() {
    let started = Instant::now();
    let spec = BallSpec::new(rank(2), 4);
    let exact = exact_census(spec, DEFAULT_BUDGET, SHARDS).unwrap();
    let samples = 100_000u64;
    let mc = mc_census(spec, samples, 2024, SHARDS);
    for category in [Category::VPrime, Category::A0, Category::Remnant] {
        let q = exact.fraction(category).to_f64().unwrap();
        let sigma = (q * (1.0 - q) / samples as f64).sqrt();
        let got = mc.estimate(category).fraction;
        assert!(
            (got - q).abs() <= 3.0 * sigma,
            "{}: sampled {got}, exact {q}, 3 sigma {}",
            category.as_str(),
            3.0 * sigma
        );
    }
    finish(7, "Monte Carlo within 3 sigma of exact", started, 60.0);
}

#[test]
fn criterion_08_certified_fraction_respects_bound() {
    let started = Instant::now();
    let samples = 100_000u64;
    let rows = density_trend(&[rank(5), rank(10)], |_| 50, samples, 31_337, SHARDS);
    for row in &rows {
        let bound = wecken_density_lower_bound(rank(row.rank))
            .unwrap()
            .to_f64()
            .unwrap();
        let sigma = (bound * (1.0 - bound) / samples as f64).sqrt();
        let got = row.census.estimate(Category::WeckenCertified).fraction;
        assert!(
            got >= bound - 3.0 * sigma,
            "n={}: certified fraction {got} under bound {bound} - 3 sigma",
            row.rank
        );
        println!(
            "ACCEPTANCE 08 detail: n={} certified={:.4} bound={:.4}",
            row.rank, got, bound
        );
    }
    finish(8, "certified fraction at the density bound", started, 300.0);
}

#[test]
fn criterion_09_no_equality_density_trends_toward_inv_e() {
    let started = Instant::now();
    let samples = 100_000u64;
    let rows = density_trend(&[rank(3), rank(20)], |_| 80, samples, 271_828, SHARDS);
    let vprime = |i: usize| rows[i].census.estimate(Category::VPrime).fraction;
    let near = (vprime(1) - wecken_core::census::INV_E).abs();
    let far = (vprime(0) - wecken_core::census::INV_E).abs();
    assert!(
        near < far,
        "rank 20 estimate {:.5} should sit closer to 1/e than rank 3 estimate {:.5}",
        vprime(1),
        vprime(0)
    );
    // Report-only: the boundary-equality and certified-B densities against
    // the two candidate constants; no assertion either way.
    for row in &rows {
        let a0 = row.census.estimate(Category::A0).fraction;
        let b = row.census.estimate(Category::B).fraction;
        println!(
            "ACCEPTANCE 09 detail: n={} a0={:.4} (vs 2/e {:+.4}, vs 1-1/e {:+.4}) \
             b={:.4} (vs 2/e {:+.4}, vs 1-1/e {:+.4})",
            row.rank,
            a0,
            row.a0_minus_two_over_e,
            row.a0_minus_one_minus_inv_e,
            b,
            row.b_minus_two_over_e,
            row.b_minus_one_minus_inv_e
        );
    }
    finish(9, "no-equality density trend toward 1/e", started, 600.0);
}

#[test]
fn criterion_10_shell_ratio_never_exceeds_one() {
    let started = Instant::now();
    let one = ratio(1, 1);
    for n in 2..=6u32 {
        for p in 1..=20usize {
            for k in 1..=p {
                let r = shell_prob_ratio(rank(n), k, p).unwrap();
                assert!(r <= one, "n={n} k={k} p={p}: {r}");
            }
        }
    }
    finish(10, "shell probability ratio sweep", started, 1.0);
}

// ---------------------------------------------------------------------------
// Criterion 11: byte-identical reproducibility of the command surface.
// ---------------------------------------------------------------------------

fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wecken"))
        .args(args)
        .env_remove("WECKEN_BUDGET")
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = run_cli(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn criterion_11_runs_reproduce_byte_identically() {
    let started = Instant::now();

    // Exact commands: identical across repeats and across shard counts.
    let census_base = run_ok(&[
        "census",
        "--rank",
        "2",
        "--max-p",
        "2",
        "--shards",
        "1",
        "--no-header",
    ]);
    for shards in ["2", "4", "7"] {
        let again = run_ok(&[
            "census",
            "--rank",
            "2",
            "--max-p",
            "2",
            "--shards",
            shards,
            "--no-header",
        ]);
        assert_eq!(census_base, again, "census differed at shards={shards}");
    }
    let xp_base = run_ok(&[
        "xp",
        "--rank",
        "2",
        "--max-p",
        "3",
        "--shards",
        "1",
        "--no-header",
    ]);
    let xp_again = run_ok(&[
        "xp",
        "--rank",
        "2",
        "--max-p",
        "3",
        "--shards",
        "5",
        "--no-header",
    ]);
    assert_eq!(xp_base, xp_again);
    let bounds_base = run_ok(&["bounds", "--n-range", "2..12", "--no-header"]);
    let bounds_again = run_ok(&["bounds", "--n-range", "2..12", "--no-header"]);
    assert_eq!(bounds_base, bounds_again);

    // Seeded commands: identical for a fixed (seed, shards) pair.
    let mc_args = [
        "mc",
        "--rank",
        "2",
        "--max-p",
        "5",
        "--samples",
        "20000",
        "--seed",
        "7",
        "--shards",
        "3",
        "--no-header",
    ];
    assert_eq!(run_ok(&mc_args), run_ok(&mc_args));
    let trend_args = [
        "trend",
        "--n-list",
        "2,3",
        "--max-p",
        "6",
        "--samples",
        "2000",
        "--seed",
        "5",
        "--shards",
        "2",
        "--no-header",
    ];
    assert_eq!(run_ok(&trend_args), run_ok(&trend_args));

    // The default header differs only in its timestamp comment line.
    let with_header = run_ok(&["census", "--rank", "2", "--max-p", "2", "--shards", "2"]);
    let data: Vec<&str> = with_header
        .lines()
        .filter(|l| !l.starts_with('#'))
        .collect();
    let base: Vec<&str> = census_base.lines().collect();
    assert_eq!(data, base);

    finish(11, "byte-identical reproducibility", started, 120.0);
}
