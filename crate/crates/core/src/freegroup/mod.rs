//! Reduced-word algebra over finitely generated free groups.
//!
//! Words are immutable value types: every operation returns a fresh reduced
//! word, so values can be shared freely across threads. The canonical letter
//! order is `a_1 < a_1^-1 < a_2 < a_2^-1 < ...`; word order is shortlex over
//! that letter order and fixes the enumeration and tuple-iteration order used
//! everywhere else in the crate.

use std::cmp::Ordering;
use std::fmt;
use std::num::NonZeroI32;

use thiserror::Error;

mod enumerate;
mod sample;
mod text;

pub use enumerate::{ball_size, enumerate_ball, word_at, BallIter};
pub use sample::{sample_word, WordSampler};
pub use text::{format_word, parse_word, ParsedWord, WordStyle};

/// Errors from word construction and the text codecs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("generator index 0 is not a valid letter")]
    ZeroIndex,
    #[error("generator index {index} exceeds rank {rank}")]
    IndexOutOfRange { index: u32, rank: u32 },
    #[error("malformed word token `{0}`")]
    MalformedToken(String),
    #[error("alpha style only covers generator indices up to 26")]
    AlphaOutOfRange,
    #[error("rank must be at least 1")]
    ZeroRank,
}

/// A signed generator letter: `a_i` or `a_i^-1`, stored as a nonzero signed
/// index (positive for the generator, negative for its inverse).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(NonZeroI32);

impl Letter {
    /// Builds a letter from its signed-integer form; `0` is rejected.
    pub fn from_signed(value: i32) -> Result<Self, WordError> {
        NonZeroI32::new(value)
            .map(Letter)
            .ok_or(WordError::ZeroIndex)
    }

    /// The positive letter `a_index`; `index` is 1-based.
    pub fn generator(index: u32) -> Self {
        assert!(
            index >= 1 && index <= i32::MAX as u32,
            "letter index out of range"
        );
        Letter(NonZeroI32::new(index as i32).unwrap())
    }

    /// 1-based generator index.
    pub fn index(self) -> u32 {
        self.0.get().unsigned_abs()
    }

    /// `+1` for `a_i`, `-1` for `a_i^-1`.
    pub fn sign(self) -> i32 {
        self.0.get().signum()
    }

    pub fn is_positive(self) -> bool {
        self.0.get() > 0
    }

    /// Signed-integer form: `index * sign`.
    pub fn signed(self) -> i32 {
        self.0.get()
    }

    pub fn inverse(self) -> Self {
        Letter(NonZeroI32::new(-self.0.get()).unwrap())
    }

    fn order_key(self) -> (u32, bool) {
        (self.index(), !self.is_positive())
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.get())
    }
}

/// Rank of the ambient free group.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rank(u32);

impl Rank {
    pub fn new(n: u32) -> Result<Self, WordError> {
        if n == 0 {
            return Err(WordError::ZeroRank);
        }
        Ok(Rank(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of signed letters, `2n`.
    pub fn alphabet_len(self) -> usize {
        2 * self.0 as usize
    }

    /// Signed letter at `pos` in canonical order (`0 -> a_1`, `1 -> a_1^-1`, ...).
    pub(crate) fn letter_at(self, pos: usize) -> Letter {
        debug_assert!(pos < self.alphabet_len());
        let index = (pos / 2 + 1) as u32;
        let l = Letter::generator(index);
        if pos.is_multiple_of(2) {
            l
        } else {
            l.inverse()
        }
    }

    /// Position of `letter` in canonical order.
    pub(crate) fn letter_pos(self, letter: Letter) -> usize {
        2 * (letter.index() as usize - 1) + usize::from(!letter.is_positive())
    }

    /// All signed letters in canonical order.
    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..self.alphabet_len()).map(move |pos| self.letter_at(pos))
    }
}

/// The ball `G_p`: all reduced words of length at most `max_len`, including
/// the empty word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BallSpec {
    pub rank: Rank,
    pub max_len: usize,
}

impl BallSpec {
    pub fn new(rank: Rank, max_len: usize) -> Self {
        BallSpec { rank, max_len }
    }
}

/// A freely reduced word. The empty word is the group identity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Reduces an arbitrary letter sequence to its unique reduced form.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let iter = letters.into_iter();
        let mut stack: Vec<Letter> = Vec::with_capacity(iter.size_hint().0);
        for l in iter {
            if stack.last().copied() == Some(l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word(stack)
    }

    /// Wraps a sequence already known to be reduced.
    pub(crate) fn from_reduced(letters: Vec<Letter>) -> Self {
        debug_assert!(Self::is_reduced(&letters));
        Word(letters)
    }

    /// True when no adjacent pair cancels.
    pub fn is_reduced(letters: &[Letter]) -> bool {
        letters.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Largest generator index used; 0 for the empty word.
    pub fn max_index(&self) -> u32 {
        self.0.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    /// Reduced product `self * rhs`.
    pub fn multiply(&self, rhs: &Word) -> Word {
        let t = self.cancel_len(rhs);
        let mut out = Vec::with_capacity(self.len() + rhs.len() - 2 * t);
        out.extend_from_slice(&self.0[..self.len() - t]);
        out.extend_from_slice(&rhs.0[t..]);
        Word::from_reduced(out)
    }

    /// Reversed sequence with flipped signs; an involution.
    pub fn invert(&self) -> Word {
        Word::from_reduced(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Largest `t` such that the length-`t` suffix of `self` is the inverse
    /// of the length-`t` prefix of `rhs`.
    pub fn cancel_len(&self, rhs: &Word) -> usize {
        let cap = self.len().min(rhs.len());
        let mut t = 0;
        while t < cap && self.0[self.len() - 1 - t] == rhs.0[t].inverse() {
            t += 1;
        }
        t
    }

    /// Signed-integer rendering; `e` for the empty word.
    pub fn to_signed_string(&self) -> String {
        text::format_signed(self)
    }
}

impl Ord for Word {
    /// Shortlex: by length, then lexicographic in canonical letter order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_signed_string())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.to_signed_string())
    }
}

/// Validates raw signed letters against `rank` and returns the reduced word.
pub fn reduce(raw: &[i32], rank: Rank) -> Result<Word, WordError> {
    let mut letters = Vec::with_capacity(raw.len());
    for &v in raw {
        let l = Letter::from_signed(v)?;
        if l.index() > rank.get() {
            return Err(WordError::IndexOutOfRange {
                index: l.index(),
                rank: rank.get(),
            });
        }
        letters.push(l);
    }
    Ok(Word::from_letters(letters))
}
