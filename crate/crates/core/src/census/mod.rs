//! Exhaustive censuses over tuple balls and seeded Monte Carlo density
//! estimation.
//!
//! Exact censuses iterate every n-tuple of ball words in canonical order
//! (odometer, last coordinate fastest) and classify each tuple; Monte Carlo
//! censuses draw image words uniformly from the ball. Both are data-parallel
//! over contiguous shards and produce identical tallies at any shard count.

mod parallel;
mod stats;

pub use stats::wilson_interval;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::classify::{classify, Classification};
use crate::formulas::{self, Exact};
use crate::freegroup::{ball_size, enumerate_ball, BallSpec, Rank, Word, WordSampler};
use crate::wagner::Endomorphism;

use parallel::{run_shards, shard_ranges, substream_seed};

/// Default cap on the number of classifications an exact census may cost.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// RNG discipline recorded in Monte Carlo outputs: one ChaCha12 stream per
/// shard, sub-seeded from the master seed via SplitMix64.
pub const RNG_ID: &str = "chacha12+splitmix64";

pub const INV_E: f64 = 0.36787944117144233;
pub const TWO_OVER_E: f64 = 0.7357588823428847;
pub const ONE_MINUS_INV_E: f64 = 0.6321205588285577;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("exact census needs {required} classifications, over the budget of {budget}")]
    BudgetExceeded { required: BigUint, budget: u64 },
}

/// Per-category tallies: complete counts in exact mode, sample tallies in
/// Monte Carlo mode.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusCounts {
    pub remnant: u64,
    pub vprime: u64,
    pub v: u64,
    pub a0: u64,
    pub b: u64,
    pub wecken_certified: u64,
    /// `k ->` number of remnant maps with a tail equality of length `k`.
    /// The sets overlap across `k`; only observed lengths appear.
    pub ak: BTreeMap<usize, u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Category {
    Remnant,
    VPrime,
    V,
    A0,
    B,
    WeckenCertified,
}

impl Category {
    pub const ALL: [Category; 6] = [
        Category::Remnant,
        Category::VPrime,
        Category::V,
        Category::A0,
        Category::B,
        Category::WeckenCertified,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Remnant => "remnant",
            Category::VPrime => "vprime",
            Category::V => "v",
            Category::A0 => "a0",
            Category::B => "b",
            Category::WeckenCertified => "wecken_certified",
        }
    }
}

impl CensusCounts {
    fn record(&mut self, c: &Classification) {
        if c.has_remnant {
            self.remnant += 1;
        }
        if c.in_vprime {
            self.vprime += 1;
        }
        if c.in_v {
            self.v += 1;
        }
        if c.in_a0 {
            self.a0 += 1;
            *self.ak.entry(0).or_insert(0) += 1;
        }
        for &k in &c.ak {
            *self.ak.entry(k).or_insert(0) += 1;
        }
        if c.in_b {
            self.b += 1;
        }
        if c.in_v || c.in_b {
            self.wecken_certified += 1;
        }
    }

    fn merge(&mut self, other: CensusCounts) {
        self.remnant += other.remnant;
        self.vprime += other.vprime;
        self.v += other.v;
        self.a0 += other.a0;
        self.b += other.b;
        self.wecken_certified += other.wecken_certified;
        for (k, c) in other.ak {
            *self.ak.entry(k).or_insert(0) += c;
        }
    }

    pub fn count(&self, category: Category) -> u64 {
        match category {
            Category::Remnant => self.remnant,
            Category::VPrime => self.vprime,
            Category::V => self.v,
            Category::A0 => self.a0,
            Category::B => self.b,
            Category::WeckenCertified => self.wecken_certified,
        }
    }

    pub fn ak_count(&self, k: usize) -> u64 {
        self.ak.get(&k).copied().unwrap_or(0)
    }
}

/// Result of a complete classification of `(G_p)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCensus {
    pub rank: u32,
    pub max_len: usize,
    /// `|G_p|^n`, the number of classifications performed.
    pub total: u64,
    pub counts: CensusCounts,
}

impl ExactCensus {
    pub fn fraction(&self, category: Category) -> Exact {
        Exact::new(
            BigInt::from(self.counts.count(category)),
            BigInt::from(self.total),
        )
    }

    /// The exact fraction of maps with no tail equalities at this radius.
    pub fn vprime_fraction(&self) -> Exact {
        self.fraction(Category::VPrime)
    }

    pub fn ak_fraction(&self, k: usize) -> Exact {
        Exact::new(
            BigInt::from(self.counts.ak_count(k)),
            BigInt::from(self.total),
        )
    }
}

/// Classifies every n-tuple over the ball. Errors out without doing any work
/// when `|G_p|^n` exceeds `budget`.
pub fn exact_census(
    spec: BallSpec,
    budget: u64,
    shards: usize,
) -> Result<ExactCensus, CensusError> {
    let n = spec.rank.get();
    let required = ball_size(spec).pow(n);
    if required > BigUint::from(budget) {
        return Err(CensusError::BudgetExceeded { required, budget });
    }
    let total = required.to_u64().expect("within budget, so total fits u64");
    let words: Vec<Word> = enumerate_ball(spec).collect();
    let ranges = shard_ranges(total, shards);
    let blocks = run_shards(ranges.len(), |i| {
        let (start, end) = ranges[i];
        census_block(&words, spec.rank, start, end)
    });
    let mut counts = CensusCounts::default();
    for block in blocks {
        counts.merge(block);
    }
    Ok(ExactCensus {
        rank: n,
        max_len: spec.max_len,
        total,
        counts,
    })
}

fn census_block(words: &[Word], rank: Rank, start: u64, end: u64) -> CensusCounts {
    let base = words.len() as u64;
    let n = rank.get() as usize;
    let mut digits = vec![0usize; n];
    let mut rem = start;
    for c in (0..n).rev() {
        digits[c] = (rem % base) as usize;
        rem /= base;
    }
    let mut counts = CensusCounts::default();
    let mut images: Vec<Word> = digits.iter().map(|&d| words[d].clone()).collect();
    for _ in start..end {
        let phi = Endomorphism::from_parts(rank, images.clone());
        counts.record(&classify(&phi));
        for c in (0..n).rev() {
            digits[c] += 1;
            if digits[c] < base as usize {
                images[c] = words[digits[c]].clone();
                break;
            }
            digits[c] = 0;
            images[c] = words[0].clone();
        }
    }
    counts
}

/// The exact no-equality fractions for radii `1..=max_radius`; stops early
/// with a truncation notice once a radius would blow the budget.
#[derive(Clone, Debug)]
pub struct XpSequence {
    pub rank: u32,
    /// `values[i]` is the fraction at radius `i + 1`.
    pub values: Vec<Exact>,
    pub truncated: Option<XpTruncation>,
}

#[derive(Clone, Debug)]
pub struct XpTruncation {
    pub at_radius: usize,
    pub required: BigUint,
}

pub fn xp_sequence(rank: Rank, max_radius: usize, budget: u64, shards: usize) -> XpSequence {
    let mut values = Vec::new();
    let mut truncated = None;
    for p in 1..=max_radius {
        match exact_census(BallSpec::new(rank, p), budget, shards) {
            Ok(census) => values.push(census.vprime_fraction()),
            Err(CensusError::BudgetExceeded { required, .. }) => {
                truncated = Some(XpTruncation {
                    at_radius: p,
                    required,
                });
                break;
            }
        }
    }
    XpSequence {
        rank: rank.get(),
        values,
        truncated,
    }
}

/// One sampled density with its Wilson 95% interval.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityEstimate {
    pub category: Category,
    pub fraction: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub samples: u64,
    pub seed: u64,
    pub rng_id: &'static str,
}

/// Result of a seeded Monte Carlo census. Deterministic for a fixed
/// `(seed, shards)` pair; different shard counts select different
/// substreams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McCensus {
    pub rank: u32,
    pub max_len: usize,
    pub samples: u64,
    pub seed: u64,
    pub shards: usize,
    pub counts: CensusCounts,
}

impl McCensus {
    pub fn estimate(&self, category: Category) -> DensityEstimate {
        let successes = self.counts.count(category);
        let fraction = successes as f64 / self.samples as f64;
        let (ci_low, ci_high) = wilson_interval(successes, self.samples);
        DensityEstimate {
            category,
            fraction,
            ci_low,
            ci_high,
            samples: self.samples,
            seed: self.seed,
            rng_id: RNG_ID,
        }
    }

    pub fn estimates(&self) -> Vec<DensityEstimate> {
        Category::ALL.iter().map(|&c| self.estimate(c)).collect()
    }
}

/// Draws `samples` endomorphisms (n independent uniform ball words each),
/// classifies them, and tallies the categories.
pub fn mc_census(spec: BallSpec, samples: u64, seed: u64, shards: usize) -> McCensus {
    let sampler = WordSampler::new(spec);
    let ranges = shard_ranges(samples, shards);
    let blocks = run_shards(ranges.len(), |i| {
        let (start, end) = ranges[i];
        mc_block(
            &sampler,
            spec.rank,
            end - start,
            substream_seed(seed, i as u64),
        )
    });
    let mut counts = CensusCounts::default();
    for block in blocks {
        counts.merge(block);
    }
    McCensus {
        rank: spec.rank.get(),
        max_len: spec.max_len,
        samples,
        seed,
        shards: shards.max(1),
        counts,
    }
}

fn mc_block(sampler: &WordSampler, rank: Rank, count: u64, stream_seed: u64) -> CensusCounts {
    let mut rng = ChaCha12Rng::seed_from_u64(stream_seed);
    let n = rank.get() as usize;
    let mut counts = CensusCounts::default();
    for _ in 0..count {
        let images: Vec<Word> = (0..n).map(|_| sampler.sample(&mut rng)).collect();
        let phi = Endomorphism::from_parts(rank, images);
        counts.record(&classify(&phi));
    }
    counts
}

/// One rank's worth of trend measurements, with the reference constants the
/// estimates are usually read against. The deltas report deviations; nothing
/// here asserts a limit claim.
#[derive(Clone, Debug)]
pub struct TrendRow {
    pub rank: u32,
    pub max_len: usize,
    pub master_seed: u64,
    pub census: McCensus,
    /// Certified-density lower bound for this rank, as a float.
    pub wecken_bound: f64,
    pub vprime_minus_inv_e: f64,
    pub a0_minus_two_over_e: f64,
    pub a0_minus_one_minus_inv_e: f64,
    pub b_minus_two_over_e: f64,
    pub b_minus_one_minus_inv_e: f64,
    pub wecken_certified_minus_bound: f64,
}

/// Default word-length cap for trend runs at rank `n`.
pub fn default_trend_radius(n: u32) -> usize {
    (4 * n as usize).max(50)
}

/// Runs one Monte Carlo census per rank and reports each category estimate
/// against the reference constants 1/e, 2/e, 1 - 1/e and the certified
/// lower bound. Each row draws from a substream keyed by its rank, so the
/// output is independent of row order.
pub fn density_trend(
    ranks: &[Rank],
    radius: impl Fn(u32) -> usize,
    samples: u64,
    seed: u64,
    shards: usize,
) -> Vec<TrendRow> {
    ranks
        .iter()
        .map(|&rank| {
            let n = rank.get();
            let p = radius(n);
            let row_seed = substream_seed(seed, u64::from(n));
            let census = mc_census(BallSpec::new(rank, p), samples, row_seed, shards);
            let wecken_bound = formulas::wecken_density_lower_bound(rank)
                .ok()
                .and_then(|b| b.to_f64())
                .unwrap_or(f64::NAN);
            let frac = |c: Category| census.estimate(c).fraction;
            TrendRow {
                rank: n,
                max_len: p,
                master_seed: seed,
                wecken_bound,
                vprime_minus_inv_e: frac(Category::VPrime) - INV_E,
                a0_minus_two_over_e: frac(Category::A0) - TWO_OVER_E,
                a0_minus_one_minus_inv_e: frac(Category::A0) - ONE_MINUS_INV_E,
                b_minus_two_over_e: frac(Category::B) - TWO_OVER_E,
                b_minus_one_minus_inv_e: frac(Category::B) - ONE_MINUS_INV_E,
                wecken_certified_minus_bound: frac(Category::WeckenCertified) - wecken_bound,
                census,
            }
        })
        .collect()
}
