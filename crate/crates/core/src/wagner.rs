//! Wagner tails and the remnant condition for free-group endomorphisms.
//!
//! An endomorphism is an n-tuple of image words. Each occurrence of the
//! letter `a_i^e` inside the image of `a_i` contributes one tail pair
//! `(w, w_bar)`; together with the trivial pair at slot 0 these label the
//! fixed points of the standard geometric realization. Equalities among the
//! tail values drive the classification in [`crate::classify`].

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freegroup::{parse_word, Letter, Rank, Word, WordError, WordStyle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EndomorphismError {
    #[error("expected {expected} image words, got {got}")]
    ImageCount { expected: u32, got: usize },
    #[error("image of generator {generator}: {source}")]
    InvalidImage { generator: u32, source: WordError },
    #[error("invalid rank: {0}")]
    InvalidRank(WordError),
    #[error("invalid endomorphism JSON: {0}")]
    Json(String),
}

/// An endomorphism of the rank-n free group, given by the images of the
/// generators: `images[i]` is the image of `a_(i+1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Endomorphism {
    rank: Rank,
    images: Vec<Word>,
}

impl Endomorphism {
    pub fn new(rank: Rank, images: Vec<Word>) -> Result<Self, EndomorphismError> {
        if images.len() != rank.get() as usize {
            return Err(EndomorphismError::ImageCount {
                expected: rank.get(),
                got: images.len(),
            });
        }
        for (i, image) in images.iter().enumerate() {
            if image.max_index() > rank.get() {
                return Err(EndomorphismError::InvalidImage {
                    generator: i as u32 + 1,
                    source: WordError::IndexOutOfRange {
                        index: image.max_index(),
                        rank: rank.get(),
                    },
                });
            }
        }
        Ok(Endomorphism { rank, images })
    }

    /// For callers that construct images straight out of the ball of the
    /// right rank, where validation would only repeat an invariant.
    pub(crate) fn from_parts(rank: Rank, images: Vec<Word>) -> Self {
        debug_assert_eq!(images.len(), rank.get() as usize);
        Endomorphism { rank, images }
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of `a_i`; `i` is 1-based.
    pub fn image(&self, i: u32) -> &Word {
        &self.images[i as usize - 1]
    }

    pub fn to_json(&self) -> String {
        let dto = EndomorphismDto {
            rank: self.rank.get(),
            images: self.images.iter().map(Word::to_signed_string).collect(),
        };
        serde_json::to_string(&dto).expect("endomorphism serialization cannot fail")
    }

    /// Parses `{"rank": n, "images": ["1 2", ...]}`; image words use the
    /// signed-integer codec and are reduced on the way in.
    pub fn from_json(text: &str) -> Result<Self, EndomorphismError> {
        let dto: EndomorphismDto =
            serde_json::from_str(text).map_err(|e| EndomorphismError::Json(e.to_string()))?;
        let rank = Rank::new(dto.rank).map_err(EndomorphismError::InvalidRank)?;
        let mut images = Vec::with_capacity(dto.images.len());
        for (i, text) in dto.images.iter().enumerate() {
            let parsed = parse_word(text, rank, WordStyle::Signed).map_err(|source| {
                EndomorphismError::InvalidImage {
                    generator: i as u32 + 1,
                    source,
                }
            })?;
            images.push(parsed.word);
        }
        Endomorphism::new(rank, images)
    }
}

#[derive(Serialize, Deserialize)]
struct EndomorphismDto {
    rank: u32,
    images: Vec<String>,
}

/// One Wagner tail pair with its provenance. Slot 0 is the trivial pair
/// `(e, e)` present for every endomorphism; it carries location 0,
/// position 0, sign +1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TailPair {
    pub slot: usize,
    pub w: Word,
    pub w_bar: Word,
    /// Generator index the occurrence lives in; 0 for the trivial slot.
    pub location: u32,
    /// 1-based letter position of the occurrence; 0 for the trivial slot.
    pub position: usize,
    /// Sign of the occurrence; +1 for the trivial slot.
    pub sign: i32,
}

impl TailPair {
    fn trivial() -> Self {
        TailPair {
            slot: 0,
            w: Word::empty(),
            w_bar: Word::empty(),
            location: 0,
            position: 0,
            sign: 1,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.slot == 0
    }
}

/// Extracts the Wagner tails of `phi` in scan order: the trivial pair, then
/// for each generator `a_i` (ascending) each occurrence of `a_i^e` in the
/// image of `a_i` (left to right). Writing the image as the reduced product
/// `v a_i^e vbar`, the pair is `(v, vbar^-1)` for `e = +1` and
/// `(v a_i^-1, vbar^-1 a_i)` for `e = -1`.
pub fn wagner_tails(phi: &Endomorphism) -> Vec<TailPair> {
    let mut out = vec![TailPair::trivial()];
    for i in 1..=phi.rank().get() {
        let image = phi.image(i);
        let letters = image.letters();
        for (pos0, &letter) in letters.iter().enumerate() {
            if letter.index() != i {
                continue;
            }
            let prefix = &letters[..pos0];
            let suffix = &letters[pos0 + 1..];
            let (w, w_bar) = if letter.is_positive() {
                (Word::from_letters(prefix.to_vec()), invert_slice(suffix))
            } else {
                let mut wl = prefix.to_vec();
                wl.push(letter);
                let mut wbl: Vec<Letter> = suffix.iter().rev().map(|l| l.inverse()).collect();
                wbl.push(letter.inverse());
                (Word::from_letters(wl), Word::from_letters(wbl))
            };
            out.push(TailPair {
                slot: out.len(),
                w,
                w_bar,
                location: i,
                position: pos0 + 1,
                sign: letter.sign(),
            });
        }
    }
    out
}

fn invert_slice(letters: &[Letter]) -> Word {
    Word::from_letters(letters.iter().rev().map(|l| l.inverse()))
}

/// Per-generator cancellation damage and the overall remnant flag.
///
/// `left_damage` is the longest cancellation any signed image other than the
/// formal inverse can push into the front of the image; `right_damage` the
/// same from the back. The remnant condition asks for a nonempty uncancelled
/// middle in every image.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RemnantReport {
    pub per_generator: Vec<GeneratorRemnant>,
    pub has_remnant: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GeneratorRemnant {
    pub left_damage: usize,
    pub right_damage: usize,
    pub remnant_length: i64,
}

pub fn remnant(phi: &Endomorphism) -> RemnantReport {
    let n = phi.rank().get() as usize;
    // Signed images in (j, sign) order: slot 2j = image of a_(j+1), slot
    // 2j+1 = its inverse.
    let mut signed: Vec<Word> = Vec::with_capacity(2 * n);
    for image in phi.images() {
        signed.push(image.clone());
        signed.push(image.invert());
    }
    let mut per_generator = Vec::with_capacity(n);
    let mut has_remnant = true;
    for i in 0..n {
        let image = &phi.images()[i];
        let own_inverse = 2 * i + 1;
        let mut left = 0usize;
        let mut right = 0usize;
        for (s, other) in signed.iter().enumerate() {
            if s == own_inverse {
                continue;
            }
            left = left.max(other.cancel_len(image));
            right = right.max(image.cancel_len(other));
        }
        let remnant_length = image.len() as i64 - left as i64 - right as i64;
        if remnant_length <= 0 {
            has_remnant = false;
        }
        per_generator.push(GeneratorRemnant {
            left_damage: left,
            right_damage: right,
            remnant_length,
        });
    }
    RemnantReport {
        per_generator,
        has_remnant,
    }
}

/// Which word of a tail pair an occurrence refers to.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum TailSide {
    W,
    WBar,
}

impl fmt::Display for TailSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailSide::W => f.write_str("w"),
            TailSide::WBar => f.write_str("wbar"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TailRef {
    pub slot: usize,
    pub side: TailSide,
}

/// A pair of distinct tail occurrences holding the same word value.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TailEquality {
    pub a: TailRef,
    pub b: TailRef,
    pub len: usize,
}

fn occurrences(tails: &[TailPair]) -> impl Iterator<Item = (TailRef, &Word)> {
    tails.iter().flat_map(|t| {
        [
            (
                TailRef {
                    slot: t.slot,
                    side: TailSide::W,
                },
                &t.w,
            ),
            (
                TailRef {
                    slot: t.slot,
                    side: TailSide::WBar,
                },
                &t.w_bar,
            ),
        ]
    })
}

/// Every unordered pair of distinct tail occurrences with equal word value,
/// excluding the single built-in pair of trivial tails at slot 0. Equality
/// between the two sides of one slot counts.
pub fn tail_equalities(tails: &[TailPair]) -> Vec<TailEquality> {
    let occ: Vec<(TailRef, &Word)> = occurrences(tails).collect();
    let mut out = Vec::new();
    for x in 0..occ.len() {
        for y in x + 1..occ.len() {
            let (ra, wa) = occ[x];
            let (rb, wb) = occ[y];
            if ra.slot == 0 && rb.slot == 0 {
                continue;
            }
            if wa == wb {
                out.push(TailEquality {
                    a: ra,
                    b: rb,
                    len: wa.len(),
                });
            }
        }
    }
    out
}

/// Set of lengths `k` for which some tail equality of length `k` exists;
/// same exclusion rule as [`tail_equalities`] but computed by multiplicity,
/// which keeps the census hot path linear in the number of tails.
pub fn equality_lengths(tails: &[TailPair]) -> std::collections::BTreeSet<usize> {
    let mut counts: HashMap<&Word, usize> = HashMap::new();
    for (_, w) in occurrences(tails) {
        *counts.entry(w).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .filter(|&(w, c)| if w.is_empty() { c >= 3 } else { c >= 2 })
        .map(|(w, _)| w.len())
        .collect()
}
