//! Multi-indices `I = i₀ i₁ … i_{k−1}` over the alphabet `{0, …, p−1}`.
//!
//! `letters[0]` is the earliest applied creator: `A†_I = A†_{i_{k−1}} ⋯ A†_{i₀}`,
//! so the last letter is the outermost one.
//!
//! Text form: one character per letter, `0-9` then `a-z` (base 36). Letters
//! beyond 35 are written in parentheses, e.g. `0(41)2`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Prime;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u32>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn new(p: Prime, letters: Vec<u32>) -> Result<Self> {
        if let Some(&letter) = letters.iter().find(|&&l| l >= p.get()) {
            return Err(Error::InvalidLetter { letter, p: p.get() });
        }
        Ok(Word { letters })
    }

    /// The word whose letters are the base-`p` digits of `index`,
    /// least significant first, padded to `len`.
    pub fn from_coset_index(p: Prime, mut index: usize, len: usize) -> Self {
        let p = p.get() as usize;
        let mut letters = Vec::with_capacity(len);
        for _ in 0..len {
            letters.push((index % p) as u32);
            index /= p;
        }
        Word { letters }
    }

    pub fn parse(p: Prime, s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut chars = s.char_indices().peekable();
        while let Some((pos, c)) = chars.next() {
            let letter = if c == '(' {
                let mut num = String::new();
                loop {
                    match chars.next() {
                        Some((_, ')')) => break,
                        Some((_, d)) if d.is_ascii_digit() => num.push(d),
                        _ => {
                            return Err(Error::Parse {
                                pos,
                                msg: "unterminated or malformed '(n)' letter".into(),
                            })
                        }
                    }
                }
                num.parse::<u32>().map_err(|e| Error::Parse {
                    pos,
                    msg: e.to_string(),
                })?
            } else {
                c.to_digit(36).ok_or_else(|| Error::Parse {
                    pos,
                    msg: format!("unexpected character {c:?} in word"),
                })?
            };
            if letter >= p.get() {
                return Err(Error::InvalidDigit {
                    digit: letter,
                    p: p.get(),
                });
            }
            letters.push(letter);
        }
        Ok(Word { letters })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<u32> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.letters.last().copied()
    }

    /// `self` followed by `letter` (the newly applied outermost creator).
    pub fn pushed(&self, letter: u32) -> Self {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.extend_from_slice(&self.letters);
        letters.push(letter);
        Word { letters }
    }

    /// `letter` followed by `self` (a new innermost creator).
    pub fn prepended(&self, letter: u32) -> Self {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.letters);
        Word { letters }
    }

    pub fn without_last(&self) -> Self {
        Word {
            letters: self.letters[..self.len().saturating_sub(1)].to_vec(),
        }
    }

    pub fn without_first(&self) -> Self {
        Word {
            letters: self.letters.get(1..).unwrap_or_default().to_vec(),
        }
    }

    pub fn concat(&self, outer: &Word) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&outer.letters);
        Word { letters }
    }

    pub fn reversed(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.letters.starts_with(&self.letters)
    }

    /// All words of length exactly `k`, in lexicographic order.
    pub fn all_of_len(p: Prime, k: usize) -> impl Iterator<Item = Word> {
        let count = (p.get() as usize).pow(k as u32);
        (0..count).map(move |n| {
            // most significant digit first so the enumeration is lexicographic
            let mut w = Word::from_coset_index(p, n, k);
            w.letters.reverse();
            w
        })
    }

    /// All words of length `<= max_len`, grouped by length.
    pub fn all_up_to(p: Prime, max_len: usize) -> impl Iterator<Item = Word> {
        (0..=max_len).flat_map(move |k| Word::all_of_len(p, k))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            match char::from_digit(l, 36) {
                Some(c) => write!(f, "{c}")?,
                None => write!(f, "({l})")?,
            }
        }
        Ok(())
    }
}
