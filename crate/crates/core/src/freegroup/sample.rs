//! Uniform sampling from the ball `G_p`.

use num_bigint::{BigUint, RandBigInt};
use rand::Rng;

use super::enumerate::cumulative_sizes;
use super::{BallSpec, Letter, Word};

/// Uniform sampler over `G_p` with the length distribution precomputed.
///
/// A draw picks the length `k` with probability `W(k)/|G_p|` (the empty word
/// has weight 1), then fills the word letter by letter: the first letter
/// uniform over all `2n` choices, each later letter uniform over the `2n-1`
/// non-cancelling choices. The result is uniform over the whole ball.
#[derive(Clone, Debug)]
pub struct WordSampler {
    spec: BallSpec,
    cum: Vec<BigUint>,
}

impl WordSampler {
    pub fn new(spec: BallSpec) -> Self {
        WordSampler {
            spec,
            cum: cumulative_sizes(spec),
        }
    }

    pub fn spec(&self) -> BallSpec {
        self.spec
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Word {
        let total = self.cum.last().unwrap();
        let x = rng.gen_biguint_below(total);
        let k = self.cum.partition_point(|c| *c <= x);
        self.sample_of_len(k, rng)
    }

    fn sample_of_len<R: Rng + ?Sized>(&self, k: usize, rng: &mut R) -> Word {
        let rank = self.spec.rank;
        let mut letters: Vec<Letter> = Vec::with_capacity(k);
        for _ in 0..k {
            let letter = match letters.last() {
                None => rank.letter_at(rng.gen_range(0..rank.alphabet_len())),
                Some(prev) => {
                    let skip = rank.letter_pos(prev.inverse());
                    let d = rng.gen_range(0..rank.alphabet_len() - 1);
                    rank.letter_at(if d < skip { d } else { d + 1 })
                }
            };
            letters.push(letter);
        }
        Word::from_reduced(letters)
    }
}

/// One-off uniform draw from `G_p`. Repeated draws should go through a
/// [`WordSampler`], which amortizes the cumulative-count table.
pub fn sample_word<R: Rng + ?Sized>(spec: BallSpec, rng: &mut R) -> Word {
    WordSampler::new(spec).sample(rng)
}
