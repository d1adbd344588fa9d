//! Finite-word languages `L_n(Σ_P)`.
//!
//! The language of a spacing shift is exactly the set of admissible words, so
//! enumeration builds supports left to right and prunes as soon as a new `1`
//! sits at a forbidden distance from an earlier one.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spacing::SpacingSet;
use crate::word::Word;

pub const DEFAULT_GUARD: usize = 24;

/// Bitmask enumeration caps out one below the word size.
const HARD_LIMIT: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LanguageConfig {
    /// Largest word length that may be enumerated. Up to `2^guard` words
    /// can come back when `P` contains `[1, guard)`.
    pub guard: usize,
}

impl Default for LanguageConfig {
    fn default() -> Self {
        LanguageConfig { guard: DEFAULT_GUARD }
    }
}

impl LanguageConfig {
    fn check(&self, n: u64) -> Result<usize> {
        let limit = self.guard.min(HARD_LIMIT) as u64;
        if n > limit {
            return Err(Error::Infeasible {
                what: "word length",
                value: n.to_string(),
                limit: format!("{limit} (the language may hold up to 2^n words)"),
            });
        }
        Ok(n as usize)
    }
}

/// Pruning tables for words of length `n`: bit `i` of `forbid[j]` is set
/// when a `1` at `i` rules out a `1` at `j > i`.
struct Tables {
    n: usize,
    forbid: Vec<u64>,
}

impl Tables {
    fn new(set: &SpacingSet, n: usize) -> Self {
        let allowed: Vec<bool> = (0..n).map(|d| d > 0 && set.contains_u64(d as u64)).collect();
        let forbid = (0..n)
            .map(|j| (0..j).filter(|&i| !allowed[j - i]).fold(0u64, |m, i| m | (1 << i)))
            .collect();
        Tables { n, forbid }
    }

    fn fits(&self, chosen: u64, j: usize) -> bool {
        chosen & self.forbid[j] == 0
    }

    fn count_from(&self, chosen: u64, next: usize) -> u64 {
        let mut total = 1;
        for j in next..self.n {
            if self.fits(chosen, j) {
                total += self.count_from(chosen | (1 << j), j + 1);
            }
        }
        total
    }

    fn collect_from(&self, chosen: u64, next: usize, out: &mut Vec<u64>) {
        out.push(chosen);
        for j in next..self.n {
            if self.fits(chosen, j) {
                self.collect_from(chosen | (1 << j), j + 1, out);
            }
        }
    }

    fn word(&self, mask: u64) -> Word {
        let support: Vec<u64> = (0..self.n as u64).filter(|&i| mask & (1 << i) != 0).collect();
        Word::from_support(self.n as u64, &support).expect("mask bits lie below n")
    }
}

/// All admissible words of length `n`, ordered lexicographically by support.
pub fn enumerate_language(set: &SpacingSet, n: u64, config: &LanguageConfig) -> Result<Vec<Word>> {
    let n = config.check(n)?;
    let tables = Tables::new(set, n);
    let branches: Vec<Vec<u64>> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            tables.collect_from(1 << first, first + 1, &mut out);
            out
        })
        .collect();
    let mut words = Vec::with_capacity(1 + branches.iter().map(Vec::len).sum::<usize>());
    words.push(Word::zeros(n as u64));
    words.extend(branches.into_iter().flatten().map(|m| tables.word(m)));
    Ok(words)
}

/// `|L_n(Σ_P)|`, by the same pruned search without materializing words.
pub fn count_language(set: &SpacingSet, n: u64, config: &LanguageConfig) -> Result<BigUint> {
    let n = config.check(n)?;
    let tables = Tables::new(set, n);
    let below: u64 = (0..n).into_par_iter().map(|first| tables.count_from(1 << first, first + 1)).sum();
    Ok(BigUint::from(below + 1))
}

/// A word in exactly one of two languages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub word: Word,
    /// Whether the word belongs to the first language (and not the second).
    pub in_first: bool,
}

/// Compares `L_n(Σ_{P1})` and `L_n(Σ_{P2})`.
///
/// Two languages of length `n` agree iff the sets agree on `[1, n)`: a
/// distance `d < n` in one set but not the other is exhibited by the word
/// with `1`s at `0` and `d`. The smallest such `d` gives the separating word.
pub fn language_equal_up_to(p1: &SpacingSet, p2: &SpacingSet, n: u64) -> std::result::Result<(), Separation> {
    let differing = match (p1.as_finite(), p2.as_finite()) {
        (Some(a), Some(b)) => {
            let bound = BigUint::from(n);
            a.as_set()
                .symmetric_difference(b.as_set())
                .filter(|d| **d < bound)
                .min()
                .map(|d| u64::try_from(d).expect("below n"))
        }
        _ => (1..n).find(|&d| p1.contains_u64(d) != p2.contains_u64(d)),
    };
    match differing {
        None => Ok(()),
        Some(d) => Err(Separation {
            word: Word::from_support(n, &[0, d]).expect("d < n"),
            in_first: p1.contains_u64(d),
        }),
    }
}
