//! Deterministic enumeration of the ball `G_p` in canonical shortlex order.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{BallSpec, Letter, Rank, Word};

/// Number of reduced words of length exactly `k`: `2n(2n-1)^(k-1)`, with the
/// empty word counted once at `k = 0`.
pub(crate) fn words_of_len(rank: Rank, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    let n = u64::from(rank.get());
    BigUint::from(2 * n) * BigUint::from(2 * n - 1).pow(k as u32 - 1)
}

/// `|G_k|` for `k = 0..=max_len`, computed by summation (valid for every
/// rank, including 1).
pub(crate) fn cumulative_sizes(spec: BallSpec) -> Vec<BigUint> {
    let mut cum = Vec::with_capacity(spec.max_len + 1);
    let mut acc = BigUint::zero();
    for k in 0..=spec.max_len {
        acc += words_of_len(spec.rank, k);
        cum.push(acc.clone());
    }
    cum
}

/// Exact number of words in the ball, `1 + sum of words_of_len`.
pub fn ball_size(spec: BallSpec) -> BigUint {
    cumulative_sizes(spec).pop().unwrap()
}

/// Iterates every word of `G_p` exactly once, in canonical order: by length,
/// then lexicographically under `a_1 < a_1^-1 < a_2 < ...`.
pub fn enumerate_ball(spec: BallSpec) -> BallIter {
    BallIter {
        spec,
        next: Some(Vec::new()),
    }
}

pub struct BallIter {
    spec: BallSpec,
    next: Option<Vec<Letter>>,
}

impl BallIter {
    /// Smallest allowed letter strictly after `pos`, excluding the inverse of
    /// `prev`.
    fn next_allowed(&self, prev: Option<Letter>, after: Option<Letter>) -> Option<Letter> {
        let rank = self.spec.rank;
        let forbidden = prev.map(|p| rank.letter_pos(p.inverse()));
        let start = after.map_or(0, |l| rank.letter_pos(l) + 1);
        (start..rank.alphabet_len())
            .find(|&pos| Some(pos) != forbidden)
            .map(|pos| rank.letter_at(pos))
    }

    fn advance(&mut self, mut current: Vec<Letter>) {
        // Increment the last position that has room, resetting the suffix to
        // the minimal allowed letters; otherwise grow the length.
        for j in (0..current.len()).rev() {
            let prev = if j > 0 { Some(current[j - 1]) } else { None };
            if let Some(next) = self.next_allowed(prev, Some(current[j])) {
                current[j] = next;
                for j2 in j + 1..current.len() {
                    let p = current[j2 - 1];
                    current[j2] = self.next_allowed(Some(p), None).unwrap();
                }
                self.next = Some(current);
                return;
            }
        }
        let k = current.len() + 1;
        if k > self.spec.max_len {
            self.next = None;
            return;
        }
        current.clear();
        current.push(self.spec.rank.letter_at(0));
        while current.len() < k {
            let p = *current.last().unwrap();
            current.push(self.next_allowed(Some(p), None).unwrap());
        }
        self.next = Some(current);
    }
}

impl Iterator for BallIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let word = Word::from_reduced(current.clone());
        self.advance(current);
        Some(word)
    }
}

/// Word at `index` in canonical order, or `None` past the end of the ball.
///
/// Index 0 is the empty word; within length `k` the first letter is a base-2n
/// digit and each later letter a base-(2n-1) digit over the allowed
/// (non-cancelling) letters in canonical order.
pub fn word_at(spec: BallSpec, index: &BigUint) -> Option<Word> {
    let rank = spec.rank;
    let mut cum = BigUint::zero();
    for k in 0..=spec.max_len {
        let count = words_of_len(rank, k);
        let upper = &cum + &count;
        if index < &upper {
            let offset = index - &cum;
            return Some(unrank_fixed_len(rank, k, &offset));
        }
        cum = upper;
    }
    None
}

fn unrank_fixed_len(rank: Rank, k: usize, offset: &BigUint) -> Word {
    if k == 0 {
        return Word::empty();
    }
    let base = BigUint::from(rank.alphabet_len() as u64 - 1);
    // offset = d_1 * (2n-1)^(k-1) + d_2 * (2n-1)^(k-2) + ... + d_k
    let mut power = base.pow(k as u32 - 1);
    let mut rem = offset.clone();
    let mut letters: Vec<Letter> = Vec::with_capacity(k);
    for j in 0..k {
        let digit = biguint_to_usize(&(&rem / &power));
        rem %= &power;
        let letter = match letters.last() {
            None => rank.letter_at(digit),
            Some(prev) => {
                let skip = rank.letter_pos(prev.inverse());
                let pos = if digit < skip { digit } else { digit + 1 };
                rank.letter_at(pos)
            }
        };
        letters.push(letter);
        if j + 1 < k {
            power /= &base;
        }
    }
    Word::from_reduced(letters)
}

fn biguint_to_usize(v: &BigUint) -> usize {
    let digits = v.to_u64_digits();
    debug_assert!(digits.len() <= 1);
    digits.first().copied().unwrap_or(0) as usize
}
