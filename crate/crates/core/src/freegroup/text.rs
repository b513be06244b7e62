//! Word text codecs.
//!
//! Signed-integer style is the canonical interchange form: whitespace-
//! separated signed indices, `e` for the empty word. Alpha style maps
//! `a..z` to `a_1..a_26` and uppercase to inverses; the empty word is the
//! empty string there.

use super::{Letter, Rank, Word, WordError};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum WordStyle {
    #[default]
    Signed,
    Alpha,
}

/// Parse result; `reduction_applied` flags input that was not freely reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedWord {
    pub word: Word,
    pub reduction_applied: bool,
}

pub fn parse_word(text: &str, rank: Rank, style: WordStyle) -> Result<ParsedWord, WordError> {
    let letters = match style {
        WordStyle::Signed => parse_signed_letters(text, rank)?,
        WordStyle::Alpha => parse_alpha_letters(text, rank)?,
    };
    let raw_len = letters.len();
    let word = Word::from_letters(letters);
    Ok(ParsedWord {
        reduction_applied: word.len() != raw_len,
        word,
    })
}

fn parse_signed_letters(text: &str, rank: Rank) -> Result<Vec<Letter>, WordError> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "e" {
        return Ok(Vec::new());
    }
    let mut letters = Vec::new();
    for token in trimmed.split_whitespace() {
        let value: i32 = token
            .parse()
            .map_err(|_| WordError::MalformedToken(token.to_string()))?;
        let letter = Letter::from_signed(value)?;
        check_rank(letter, rank)?;
        letters.push(letter);
    }
    Ok(letters)
}

fn parse_alpha_letters(text: &str, rank: Rank) -> Result<Vec<Letter>, WordError> {
    let trimmed = text.trim();
    let mut letters = Vec::new();
    for c in trimmed.chars() {
        let letter = match c {
            'a'..='z' => Letter::generator(c as u32 - 'a' as u32 + 1),
            'A'..='Z' => Letter::generator(c as u32 - 'A' as u32 + 1).inverse(),
            _ => return Err(WordError::MalformedToken(c.to_string())),
        };
        check_rank(letter, rank)?;
        letters.push(letter);
    }
    Ok(letters)
}

fn check_rank(letter: Letter, rank: Rank) -> Result<(), WordError> {
    if letter.index() > rank.get() {
        return Err(WordError::IndexOutOfRange {
            index: letter.index(),
            rank: rank.get(),
        });
    }
    Ok(())
}

pub fn format_word(word: &Word, style: WordStyle) -> Result<String, WordError> {
    match style {
        WordStyle::Signed => Ok(format_signed(word)),
        WordStyle::Alpha => format_alpha(word),
    }
}

pub(crate) fn format_signed(word: &Word) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.letters()
        .iter()
        .map(|l| l.signed().to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn format_alpha(word: &Word) -> Result<String, WordError> {
    if word.max_index() > 26 {
        return Err(WordError::AlphaOutOfRange);
    }
    Ok(word
        .letters()
        .iter()
        .map(|l| {
            let base = if l.is_positive() { b'a' } else { b'A' };
            (base + (l.index() - 1) as u8) as char
        })
        .collect())
}
