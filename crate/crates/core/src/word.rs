//! Finite binary words and sparse partial patterns.
//!
//! Words are stored as a length plus the sorted list of positions carrying a
//! `1`. Positions are arbitrary-precision so that words with astronomically
//! long runs of zeros (as produced by the extension lemma) stay cheap.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::json::{dec, dec_vec};
use crate::spacing::SpacingSet;

/// Words longer than this are never rendered as dense 0/1 strings.
const DENSE_DISPLAY_LIMIT: u64 = 256;

/// Patterns built from dense words refuse words longer than this.
pub const DENSE_PATTERN_LIMIT: u64 = 1 << 20;

/// A finite word over `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WordRepr", into = "WordRepr")]
pub struct Word {
    len: BigUint,
    support: Vec<BigUint>,
}

impl Word {
    /// Builds a word from its length and the positions of its `1`s.
    ///
    /// The support must be strictly increasing and bounded by `len`.
    pub fn new(len: BigUint, support: Vec<BigUint>) -> Result<Self, Error> {
        for pair in support.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::InvalidWord(format!(
                    "support not strictly increasing at {} -> {}",
                    pair[0], pair[1]
                )));
            }
        }
        if let Some(last) = support.last() {
            if *last >= len {
                return Err(Error::InvalidWord(format!(
                    "support position {last} outside word of length {len}"
                )));
            }
        }
        Ok(Word { len, support })
    }

    pub fn empty() -> Self {
        Word { len: BigUint::zero(), support: Vec::new() }
    }

    pub fn zeros(len: impl Into<BigUint>) -> Self {
        Word { len: len.into(), support: Vec::new() }
    }

    /// Convenience constructor for small words with `u64` positions.
    pub fn from_support(len: u64, support: &[u64]) -> Result<Self, Error> {
        Word::new(len.into(), support.iter().map(|&p| BigUint::from(p)).collect())
    }

    pub fn len(&self) -> &BigUint {
        &self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len.is_zero()
    }

    pub fn support(&self) -> &[BigUint] {
        &self.support
    }

    /// Pairwise distances between distinct `1`s.
    pub fn spacing_set(&self) -> BTreeSet<BigUint> {
        let mut out = BTreeSet::new();
        for (i, a) in self.support.iter().enumerate() {
            for b in &self.support[i + 1..] {
                out.insert(b - a);
            }
        }
        out
    }

    /// Whether every spacing of the word lies in `set`.
    pub fn is_admissible(&self, set: &SpacingSet) -> bool {
        self.support.iter().enumerate().all(|(i, a)| {
            self.support[i + 1..].iter().all(|b| set.contains(&(b - a)))
        })
    }

    /// `self · 0^gap · other`, kept sparse.
    pub fn concat_with_gap(&self, gap: &BigUint, other: &Word) -> Word {
        let offset = &self.len + gap;
        let mut support = self.support.clone();
        support.extend(other.support.iter().map(|q| &offset + q));
        Word { len: offset + &other.len, support }
    }

    /// Cylinder pattern: every position of the word is constrained.
    pub fn cylinder(&self) -> Result<PartialPattern, Error> {
        let len = self
            .len
            .to_u64()
            .filter(|&l| l <= DENSE_PATTERN_LIMIT)
            .ok_or_else(|| Error::TooLarge(format!("cylinder of a word of length {}", self.len)))?;
        let mut constraints = BTreeMap::new();
        for p in 0..len {
            constraints.insert(BigUint::from(p), false);
        }
        for p in &self.support {
            constraints.insert(p.clone(), true);
        }
        Ok(PartialPattern { constraints })
    }

    /// Pattern constraining only the `1`s of the word.
    pub fn ones_pattern(&self) -> PartialPattern {
        PartialPattern { constraints: self.support.iter().map(|p| (p.clone(), true)).collect() }
    }

    /// Dense 0/1 rendering, if the word is short enough.
    pub fn to_bits(&self) -> Option<String> {
        let len = self.len.to_u64().filter(|&l| l <= DENSE_DISPLAY_LIMIT)? as usize;
        let mut bits = vec!['0'; len];
        for p in &self.support {
            bits[p.to_usize()?] = '1';
        }
        Some(bits.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_bits() {
            Some(bits) if !bits.is_empty() => f.write_str(&bits),
            Some(_) => f.write_str("ε"),
            None => {
                write!(f, "{}:", self.len)?;
                for (i, p) in self.support.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses either a dense 0/1 string or the sparse form `len:p+q+...`.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some((len, support)) = s.split_once(':') {
            let len = parse_big(len)?;
            let support = if support.is_empty() {
                Vec::new()
            } else {
                support.split('+').map(parse_big).collect::<Result<_, _>>()?
            };
            return Word::new(len, support);
        }
        if s == "ε" || s.is_empty() {
            return Ok(Word::empty());
        }
        let mut support = Vec::new();
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => support.push(BigUint::from(i)),
                other => {
                    return Err(Error::InvalidWord(format!("unexpected symbol {other:?} in {s:?}")))
                }
            }
        }
        Ok(Word { len: BigUint::from(s.chars().count()), support })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WordRepr {
    #[serde(with = "dec")]
    len: BigUint,
    #[serde(with = "dec_vec")]
    support: Vec<BigUint>,
}

impl TryFrom<WordRepr> for Word {
    type Error = Error;

    fn try_from(r: WordRepr) -> Result<Self, Error> {
        Word::new(r.len, r.support)
    }
}

impl From<Word> for WordRepr {
    fn from(w: Word) -> Self {
        WordRepr { len: w.len, support: w.support }
    }
}

pub(crate) fn parse_big(s: &str) -> Result<BigUint, Error> {
    s.trim()
        .parse::<BigUint>()
        .map_err(|_| Error::Parse(format!("not a nonnegative integer: {s:?}")))
}

/// A position assigned both symbols when merging two patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub position: BigUint,
}

/// Sparse assignment of symbols to positions.
///
/// Stands for the open set of points agreeing with every constraint. The
/// empty map is the whole space.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PatternRepr", into = "PatternRepr")]
pub struct PartialPattern {
    constraints: BTreeMap<BigUint, bool>,
}

impl PartialPattern {
    pub fn new() -> Self {
        Self::default()
    }

    /// `[1]`: a single `1` at position 0.
    pub fn one() -> Self {
        Self::from_constraints([(BigUint::zero(), true)])
    }

    /// `[0]`: a single `0` at position 0.
    pub fn zero() -> Self {
        Self::from_constraints([(BigUint::zero(), false)])
    }

    /// Later entries win when a position repeats; use [`merge_patterns`] to
    /// detect clashes instead.
    pub fn from_constraints(items: impl IntoIterator<Item = (BigUint, bool)>) -> Self {
        PartialPattern { constraints: items.into_iter().collect() }
    }

    pub fn get(&self, position: &BigUint) -> Option<bool> {
        self.constraints.get(position).copied()
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BigUint, bool)> {
        self.constraints.iter().map(|(p, &s)| (p, s))
    }

    pub fn ones(&self) -> impl Iterator<Item = &BigUint> {
        self.constraints.iter().filter(|(_, &s)| s).map(|(p, _)| p)
    }

    pub fn zeros(&self) -> impl Iterator<Item = &BigUint> {
        self.constraints.iter().filter(|(_, &s)| !s).map(|(p, _)| p)
    }

    /// Preimage under `n` steps of the shift: every constraint moves right by `n`.
    pub fn shift(&self, n: &BigUint) -> PartialPattern {
        PartialPattern { constraints: self.constraints.iter().map(|(p, &s)| (p + n, s)).collect() }
    }

    /// Inverse of [`shift`](Self::shift); `None` if a constraint would fall below 0.
    pub fn unshift(&self, n: &BigUint) -> Option<PartialPattern> {
        let mut constraints = BTreeMap::new();
        for (p, &s) in &self.constraints {
            if p < n {
                return None;
            }
            constraints.insert(p - n, s);
        }
        Some(PartialPattern { constraints })
    }

    /// Whether every constraint of `self` also appears in `other`.
    pub fn is_subpattern_of(&self, other: &PartialPattern) -> bool {
        self.constraints.iter().all(|(p, s)| other.constraints.get(p) == Some(s))
    }

    /// Whether the open set is nonempty in the spacing shift over `set`.
    pub fn is_nonempty(&self, set: &SpacingSet) -> bool {
        pattern_nonempty(self, set)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PatternRepr {
    #[serde(with = "dec_vec")]
    ones: Vec<BigUint>,
    #[serde(with = "dec_vec")]
    zeros: Vec<BigUint>,
}

impl TryFrom<PatternRepr> for PartialPattern {
    type Error = Error;

    fn try_from(r: PatternRepr) -> Result<Self, Error> {
        let mut constraints = BTreeMap::new();
        let tagged = r.ones.into_iter().map(|p| (p, true)).chain(r.zeros.into_iter().map(|p| (p, false)));
        for (p, s) in tagged {
            if constraints.insert(p.clone(), s).is_some() {
                return Err(Error::Parse(format!("position {p} constrained twice")));
            }
        }
        Ok(PartialPattern { constraints })
    }
}

impl From<PartialPattern> for PatternRepr {
    fn from(p: PartialPattern) -> Self {
        PatternRepr { ones: p.ones().cloned().collect(), zeros: p.zeros().cloned().collect() }
    }
}

/// Union of two constraint maps, or the first position where they disagree.
pub fn merge_patterns(p: &PartialPattern, q: &PartialPattern) -> Result<PartialPattern, Conflict> {
    let (big, small) = if p.len() >= q.len() { (p, q) } else { (q, p) };
    let mut constraints = big.constraints.clone();
    for (pos, &s) in &small.constraints {
        match constraints.get(pos) {
            Some(&t) if t != s => return Err(Conflict { position: pos.clone() }),
            Some(_) => {}
            None => {
                constraints.insert(pos.clone(), s);
            }
        }
    }
    Ok(PartialPattern { constraints })
}

/// Free positions read as `0`, so only the distances between constrained
/// `1`s matter.
pub fn pattern_nonempty(p: &PartialPattern, set: &SpacingSet) -> bool {
    let ones: Vec<&BigUint> = p.ones().collect();
    ones.iter()
        .enumerate()
        .all(|(i, a)| ones[i + 1..].iter().all(|b| set.contains(&(*b - *a))))
}

/// Pairwise distances between the `1`s of `w`.
pub fn spacing_set_of(w: &Word) -> BTreeSet<BigUint> {
    w.spacing_set()
}

pub fn is_admissible(w: &Word, set: &SpacingSet) -> bool {
    w.is_admissible(set)
}

pub fn concat_with_gap(u: &Word, gap: &BigUint, v: &Word) -> Word {
    u.concat_with_gap(gap, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn set_of(xs: &[u64]) -> BTreeSet<BigUint> {
        xs.iter().map(|&x| big(x)).collect()
    }

    fn explicit(xs: &[u64]) -> SpacingSet {
        SpacingSet::explicit(xs.iter().map(|&x| big(x))).unwrap()
    }

    #[test]
    fn spacing_sets_of_small_words() {
        assert_eq!(spacing_set_of(&"1001".parse().unwrap()), set_of(&[3]));
        assert!(spacing_set_of(&"0000".parse().unwrap()).is_empty());
        let w = Word::from_support(14, &[0, 3, 10, 13]).unwrap();
        assert_eq!(spacing_set_of(&w), set_of(&[3, 7, 10, 13]));
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible(&"1001".parse().unwrap(), &explicit(&[3])));
        assert!(!is_admissible(&"11".parse().unwrap(), &explicit(&[3])));
        let w = Word::from_support(9, &[0, 8]).unwrap();
        assert!(is_admissible(&w, &SpacingSet::blocks(3).unwrap()));
    }

    #[test]
    fn concat_examples() {
        let u: Word = "1001".parse().unwrap();
        let w = concat_with_gap(&u, &big(6), &u);
        assert_eq!(w, Word::from_support(14, &[0, 3, 10, 13]).unwrap());

        let one: Word = "1".parse().unwrap();
        assert_eq!(concat_with_gap(&Word::empty(), &BigUint::zero(), &one), one);

        let gap = big(10) * (BigUint::one() << 630u32);
        let w = concat_with_gap(&one, &gap, &one);
        assert_eq!(w.support(), &[BigUint::zero(), &gap + 1u32]);
        assert_eq!(w.spacing_set(), [&gap + 1u32].into_iter().collect());
        assert_eq!(w.len(), &(&gap + 2u32));
    }

    #[test]
    fn merge_examples() {
        let a = PartialPattern::from_constraints([(big(0), true)]);
        let b = PartialPattern::from_constraints([(big(3), true)]);
        let ab = merge_patterns(&a, &b).unwrap();
        assert_eq!(ab, PartialPattern::from_constraints([(big(0), true), (big(3), true)]));

        let z = PartialPattern::from_constraints([(big(1), false)]);
        assert_eq!(merge_patterns(&z, &z).unwrap(), z);

        let o = PartialPattern::from_constraints([(big(1), true)]);
        assert_eq!(merge_patterns(&z, &o), Err(Conflict { position: big(1) }));
    }

    #[test]
    fn nonempty_examples() {
        let p3 = explicit(&[3]);
        let ok = PartialPattern::from_constraints([(big(0), true), (big(3), true)]);
        let bad = PartialPattern::from_constraints([(big(0), true), (big(1), true)]);
        assert!(pattern_nonempty(&ok, &p3));
        assert!(!pattern_nonempty(&bad, &p3));
        assert!(pattern_nonempty(&PartialPattern::new(), &p3));
        assert!(pattern_nonempty(&PartialPattern::new(), &explicit(&[])));
    }

    #[test]
    fn invalid_words_rejected() {
        assert!(Word::from_support(3, &[0, 3]).is_err());
        assert!(Word::from_support(5, &[2, 1]).is_err());
        assert!(Word::from_support(5, &[1, 1]).is_err());
        assert!(Word::new(BigUint::zero(), vec![]).is_ok());
        assert!("10x".parse::<Word>().is_err());
    }

    #[test]
    fn parse_and_display() {
        let w: Word = "9:0+8".parse().unwrap();
        assert_eq!(w.to_string(), "100000001");
        assert_eq!(Word::empty().to_string(), "ε");
        let huge = Word::new(big(10_000), vec![big(0), big(9_999)]).unwrap();
        assert_eq!(huge.to_string(), "10000:0+9999");
        assert_eq!(huge.to_string().parse::<Word>().unwrap(), huge);
    }

    #[test]
    fn cylinder_constrains_zeros() {
        let c = Word::from_support(3, &[1]).unwrap().cylinder().unwrap();
        assert_eq!(c.get(&big(0)), Some(false));
        assert_eq!(c.get(&big(1)), Some(true));
        assert_eq!(c.get(&big(2)), Some(false));
        assert!(Word::zeros(big(1) << 40u32).cylinder().is_err());
    }

    fn arb_word(max_len: u64) -> impl Strategy<Value = Word> {
        (0..=max_len).prop_flat_map(|len| {
            proptest::collection::btree_set(0..len.max(1), 0..=len as usize).prop_map(move |s| {
                let support: Vec<u64> = s.into_iter().filter(|&p| p < len).collect();
                Word::from_support(len, &support).unwrap()
            })
        })
    }

    fn arb_set() -> impl Strategy<Value = Vec<u64>> {
        proptest::collection::vec(1u64..30, 0..12)
    }

    proptest! {
        #[test]
        fn concat_spacing_decomposes(u in arb_word(12), v in arb_word(12), g in 0u64..20) {
            let w = concat_with_gap(&u, &big(g), &v);
            let mut expected = spacing_set_of(&u);
            expected.extend(spacing_set_of(&v));
            let offset = u.len() + big(g);
            for p in u.support() {
                for q in v.support() {
                    expected.insert(&offset + q - p);
                }
            }
            prop_assert_eq!(spacing_set_of(&w), expected);
        }

        #[test]
        fn admissibility_monotone(w in arb_word(14), p in arb_set(), extra in arb_set()) {
            let small = explicit(&p);
            let mut all = p.clone();
            all.extend(extra);
            let large = explicit(&all);
            if is_admissible(&w, &small) {
                prop_assert!(is_admissible(&w, &large));
            }
        }

        #[test]
        fn zero_padding_invariant(w in arb_word(14), p in arb_set()) {
            let set = explicit(&p);
            let zero = Word::zeros(1u32);
            let left = concat_with_gap(&zero, &BigUint::zero(), &w);
            let right = concat_with_gap(&w, &BigUint::zero(), &zero);
            prop_assert_eq!(is_admissible(&w, &set), is_admissible(&left, &set));
            prop_assert_eq!(is_admissible(&w, &set), is_admissible(&right, &set));
        }

        #[test]
        fn ones_pattern_matches_admissibility(w in arb_word(14), p in arb_set()) {
            let set = explicit(&p);
            prop_assert_eq!(pattern_nonempty(&w.ones_pattern(), &set), is_admissible(&w, &set));
        }
    }
}
