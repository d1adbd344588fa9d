//! The two explicit constructions: the dispersed extension lemma (and the
//! staged union built by iterating it), and the block family `P(m)`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::dec_vec;
use crate::language::{enumerate_language, language_equal_up_to, LanguageConfig};
use crate::spacing::{BlockFamily, ExplicitSet, SpacingSet, StagedUnion};
use crate::verdict::{Certificate, HorizonVerdict, StructuralReason};
use crate::word::Word;

pub const DEFAULT_MAX_SCENARIOS: u64 = 1_000_000;

/// Time scales grow like `(N+1)^{j^2/2}`, so their total size, not the
/// scenario count, is what runs out first.
pub const DEFAULT_MAX_SCALE_BITS: u64 = 1 << 27;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructionConfig {
    /// Refuse when `|L_k(Σ_A)|^{2N}` exceeds this.
    pub max_scenarios: u64,
    /// Refuse when the time scales `l_1..l_m` would need more bits than this in total.
    pub max_scale_bits: u64,
    pub language: LanguageConfig,
}

impl Default for ConstructionConfig {
    fn default() -> Self {
        ConstructionConfig {
            max_scenarios: DEFAULT_MAX_SCENARIOS,
            max_scale_bits: DEFAULT_MAX_SCALE_BITS,
            language: LanguageConfig::default(),
        }
    }
}

impl ConstructionConfig {
    fn check_size(&self, language_size: u64, pairs: u64, k: u64, dispersion: u64) -> Result<u64> {
        let count = BigUint::from(language_size).pow(2 * u32::try_from(pairs).unwrap_or(u32::MAX));
        if count > BigUint::from(self.max_scenarios) {
            return Err(Error::Infeasible {
                what: "scenario count |L_k|^(2N)",
                value: count.to_string(),
                limit: self.max_scenarios.to_string(),
            });
        }
        let m = count.to_u64().expect("bounded above");
        // bits(l_j) ~ bits(l_1) + (j(j-1)/2) log2(N+1)
        let base_bits = (64 - (2 * k + dispersion - 1).leading_zeros()) as f64;
        let growth_bits = ((pairs + 1) as f64).log2();
        let mf = m as f64;
        let total = mf * base_bits + growth_bits * (mf * mf * mf - mf) / 6.0;
        if total > self.max_scale_bits as f64 {
            return Err(Error::Infeasible {
                what: "total size of the time scales l_j in bits",
                value: format!("{total:.0}"),
                limit: self.max_scale_bits.to_string(),
            });
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordPair {
    pub u: Word,
    pub v: Word,
}

/// Transcript of one application of the extension lemma.
///
/// Given an `M`-dispersed `A` and `N >= 1`, every `N`-tuple of pairs of
/// length-`k` words (a *scenario*) gets its own time scale `l_j`, and the
/// word `u_i 0^{i l_j - k} v_i` joins `u_i` to `v_i` after `i l_j` steps.
/// `B` collects `A` and all spacings of those joining words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaOutput {
    pub a: ExplicitSet,
    /// Dispersion bound `M`.
    pub dispersion: u64,
    /// Number of pairs `N` per scenario.
    pub pairs: u64,
    /// `k = max A + 1`.
    pub k: u64,
    /// `|L_k(Σ_A)|`.
    pub language_size: u64,
    pub scenarios: Vec<Vec<WordPair>>,
    #[serde(with = "dec_vec")]
    pub l: Vec<BigUint>,
    /// `witness_words[j][i - 1]` is `w_i` for scenario `j`.
    pub witness_words: Vec<Vec<Word>>,
    pub b: ExplicitSet,
    /// Set when `N = 0`: no scenarios, `B = A`.
    pub degenerate: bool,
}

impl LemmaOutput {
    /// `[i l_j - k + 1, i l_j + k - 1]`, which holds every new spacing of `w_i^{(j)}`.
    pub fn window(&self, j: usize, i: u64) -> (BigUint, BigUint) {
        let centre = &self.l[j] * i;
        let k = BigUint::from(self.k);
        (&centre + 1u32 - &k, centre + &k - 1u32)
    }

    /// Re-derives every guarantee of the lemma from the raw words and sets.
    ///
    /// Scenario list and witness words are rebuilt from `A`, `N` and the
    /// recorded `l_j`; admissibility is checked from support lists against
    /// `B`, and `B` itself is recomputed as a union of spacing sets.
    pub fn check(&self, config: &ConstructionConfig) -> std::result::Result<(), String> {
        let m = self.dispersion;
        if m < 3 {
            return Err(format!("dispersion bound {m} is below 3"));
        }
        let a_max = self.a.max().ok_or("A is empty")?;
        if let Err(pair) = self.a.is_q_dispersed(&BigUint::from(m)) {
            return Err(format!("A is not {m}-dispersed: {} and {} too close", pair.a, pair.b));
        }
        if BigUint::from(self.k) != a_max + 1u32 {
            return Err(format!("k = {} but max A + 1 = {}", self.k, a_max + 1u32));
        }
        if self.degenerate != (self.pairs == 0) {
            return Err("degenerate flag disagrees with N".into());
        }
        let a_set = SpacingSet::Explicit(self.a.clone());
        let b_set = SpacingSet::Explicit(self.b.clone());
        let language = enumerate_language(&a_set, self.k, &config.language).map_err(|e| e.to_string())?;
        if language.len() as u64 != self.language_size {
            return Err(format!("|L_k(A)| is {} but transcript says {}", language.len(), self.language_size));
        }
        if self.pairs > 0 {
            config
                .check_size(self.language_size, self.pairs, self.k, m)
                .map_err(|e| e.to_string())?;
        }
        let expected = scenario_list(&language, self.pairs);
        if self.scenarios != expected {
            return Err("scenario list is not the ordered enumeration of L_k(A)^(2N)".into());
        }
        if self.l.len() != self.scenarios.len() || self.witness_words.len() != self.scenarios.len() {
            return Err("one time scale and one witness list per scenario required".into());
        }

        let k = BigUint::from(self.k);
        if let Some(l1) = self.l.first() {
            let min_l1 = BigUint::from(2 * self.k + m - 1);
            if *l1 < min_l1 {
                return Err(format!("l_1 = {l1} is below 2k + M - 1 = {min_l1}"));
            }
        }
        let growth = BigUint::from(self.pairs + 1);
        for (j, w) in self.l.windows(2).enumerate() {
            let needed = growth.pow(j as u32 + 1) * &w[0];
            if w[1] < needed {
                return Err(format!("l_{} = {} is below (N+1)^{} l_{}", j + 2, w[1], j + 1, j + 1));
            }
        }

        let mut union: BTreeSet<BigUint> = self.a.as_set().clone();
        for (j, (scenario, words)) in self.scenarios.iter().zip(&self.witness_words).enumerate() {
            if words.len() as u64 != self.pairs {
                return Err(format!("scenario {} has {} witness words", j + 1, words.len()));
            }
            for (idx, (pair, w)) in scenario.iter().zip(words).enumerate() {
                let i = idx as u64 + 1;
                let gap = &self.l[j] * i - &k;
                if *w != pair.u.concat_with_gap(&gap, &pair.v) {
                    return Err(format!("w_{i} of scenario {} is not u 0^(i l_j - k) v", j + 1));
                }
                if !w.is_admissible(&b_set) {
                    return Err(format!("w_{i} of scenario {} is not B-admissible", j + 1));
                }
                let (lo, hi) = self.window(j, i);
                for s in w.spacing_set() {
                    if !self.a.contains(&s) && (s < lo || s > hi) {
                        return Err(format!("spacing {s} of w_{i}, scenario {} lies outside [{lo}, {hi}]", j + 1));
                    }
                    union.insert(s);
                }
            }
        }
        if union != *self.b.as_set() {
            return Err("B differs from A united with the spacing sets of the witness words".into());
        }

        let mut windows: Vec<(BigUint, BigUint)> = (0..self.l.len())
            .flat_map(|j| (1..=self.pairs).map(move |i| (j, i)))
            .map(|(j, i)| self.window(j, i))
            .collect();
        windows.sort();
        if let Some(w) = windows.windows(2).find(|w| w[0].1 >= w[1].0) {
            return Err(format!("windows [{}, {}] and [{}, {}] overlap", w[0].0, w[0].1, w[1].0, w[1].1));
        }

        if let Err(pair) = self.b.is_q_dispersed(&BigUint::from(m)) {
            return Err(format!("B is not {m}-dispersed: {} and {} too close", pair.a, pair.b));
        }
        if !self.a.is_subset(&self.b) {
            return Err("A is not contained in B".into());
        }
        if let Some(l1) = self.l.first() {
            let floor = l1 + 1u32 - &k;
            if let Some(x) = self.b.iter().find(|x| !self.a.contains(x) && **x < floor) {
                return Err(format!("element {x} of B \\ A is below l_1 - k + 1 = {floor}"));
            }
        }
        if let Err(sep) = language_equal_up_to(&a_set, &b_set, self.k) {
            return Err(format!("L_k(B) differs from L_k(A) at {}", sep.word));
        }
        Ok(())
    }
}

/// All `N`-tuples of pairs from `language`, last coordinate varying fastest.
fn scenario_list(language: &[Word], pairs: u64) -> Vec<Vec<WordPair>> {
    if pairs == 0 {
        return Vec::new();
    }
    let slots = 2 * pairs as usize;
    let base = language.len();
    let total = base.pow(slots as u32);
    (0..total)
        .map(|mut index| {
            let mut digits = vec![0usize; slots];
            for d in digits.iter_mut().rev() {
                *d = index % base;
                index /= base;
            }
            digits
                .chunks(2)
                .map(|c| WordPair { u: language[c[0]].clone(), v: language[c[1]].clone() })
                .collect()
        })
        .collect()
}

/// Extends an `M`-dispersed set `A` to an `M`-dispersed `B ⊇ A` in which any
/// `N` pairs of length-`k` cylinders can be joined simultaneously, pair `i`
/// after `i n` steps for a common `n`.
///
/// Time scales are the smallest allowed: `l_1 = 2k + M - 1` and
/// `l_{j+1} = (N+1)^j l_j`.
pub fn lemma_extend(a: &ExplicitSet, pairs: u64, dispersion: u64, config: &ConstructionConfig) -> Result<LemmaOutput> {
    if dispersion < 3 {
        return Err(Error::InvalidParameter(format!("dispersion bound must be at least 3, got {dispersion}")));
    }
    let a_max = a.max().ok_or_else(|| Error::InvalidParameter("A must be nonempty".into()))?;
    if let Err(pair) = a.is_q_dispersed(&BigUint::from(dispersion)) {
        return Err(Error::InvalidParameter(format!(
            "A is not {dispersion}-dispersed: {} and {} are too close",
            pair.a, pair.b
        )));
    }
    let k_big = a_max + 1u32;
    let guard = config.language.guard as u64;
    let k = k_big.to_u64().filter(|&k| k <= guard).ok_or_else(|| Error::Infeasible {
        what: "k = max A + 1",
        value: k_big.to_string(),
        limit: guard.to_string(),
    })?;

    let a_set = SpacingSet::Explicit(a.clone());
    let language = enumerate_language(&a_set, k, &config.language)?;
    let language_size = language.len() as u64;

    if pairs == 0 {
        return Ok(LemmaOutput {
            a: a.clone(),
            dispersion,
            pairs,
            k,
            language_size,
            scenarios: Vec::new(),
            l: Vec::new(),
            witness_words: Vec::new(),
            b: a.clone(),
            degenerate: true,
        });
    }

    config.check_size(language_size, pairs, k, dispersion)?;
    let scenarios = scenario_list(&language, pairs);

    let growth = BigUint::from(pairs + 1);
    let mut l = Vec::with_capacity(scenarios.len());
    let mut current = BigUint::from(2 * k + dispersion - 1);
    let mut factor = BigUint::one();
    for _ in 0..scenarios.len() {
        l.push(current.clone());
        factor *= &growth;
        current = &factor * &current;
    }

    let k_big = BigUint::from(k);
    let witness_words: Vec<Vec<Word>> = scenarios
        .par_iter()
        .zip(l.par_iter())
        .map(|(scenario, lj)| {
            scenario
                .iter()
                .zip(1u64..)
                .map(|(pair, i)| pair.u.concat_with_gap(&(lj * i - &k_big), &pair.v))
                .collect()
        })
        .collect();

    let mut b: BTreeSet<BigUint> = a.as_set().clone();
    for w in witness_words.iter().flatten() {
        b.extend(w.spacing_set());
    }

    let output = LemmaOutput {
        a: a.clone(),
        dispersion,
        pairs,
        k,
        language_size,
        scenarios,
        l,
        witness_words,
        b: ExplicitSet::new(b)?,
        degenerate: false,
    };
    output.check(config).map_err(Error::Internal)?;
    Ok(output)
}

/// How many pairs the lemma is asked for when building stage `n + 1` from stage `n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StageConvention {
    /// `N(n) = max(n, 1)`: every stage strictly grows.
    #[default]
    AtLeastOne,
    /// `N(n) = n`: the first step is degenerate and `P_1 = P_0`.
    Literal,
}

impl StageConvention {
    pub fn pairs_for(self, n: usize) -> u64 {
        match self {
            StageConvention::AtLeastOne => n.max(1) as u64,
            StageConvention::Literal => n as u64,
        }
    }
}

/// Stages `P_0 = {M} ⊆ P_1 ⊆ ...` with the lemma transcript behind each step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StagedConstruction {
    pub dispersion: u64,
    pub convention: StageConvention,
    pub set: StagedUnion,
    /// `transcripts[n]` builds stage `n + 1` from stage `n`.
    pub transcripts: Vec<LemmaOutput>,
}

/// Iterates the extension lemma `stages` times starting from `{M}`.
///
/// The lemma needs the full language of words of length `max P_n + 1`, so
/// only the first few stages are ever computable; later ones are refused
/// with the quantity that blocks them.
pub fn staged_p(
    dispersion: u64,
    stages: usize,
    convention: StageConvention,
    config: &ConstructionConfig,
) -> Result<StagedConstruction> {
    if dispersion < 3 {
        return Err(Error::InvalidParameter(format!("dispersion bound must be at least 3, got {dispersion}")));
    }
    let mut sets = vec![ExplicitSet::from_u64s([dispersion])?];
    let mut transcripts = Vec::with_capacity(stages);
    for n in 0..stages {
        let out = lemma_extend(&sets[n], convention.pairs_for(n), dispersion, config)
            .map_err(|e| Error::StageInfeasible { stage: n + 1, source: Box::new(e) })?;
        sets.push(out.b.clone());
        transcripts.push(out);
    }
    Ok(StagedConstruction { dispersion, convention, set: StagedUnion::new(sets)?, transcripts })
}

impl StagedConstruction {
    pub fn check(&self, config: &ConstructionConfig) -> std::result::Result<(), String> {
        let stages = self.set.stages();
        if stages.len() != self.transcripts.len() + 1 {
            return Err("one transcript per stage step required".into());
        }
        if stages[0].as_set().iter().ne([BigUint::from(self.dispersion)].iter()) {
            return Err(format!("P_0 must be {{{}}}", self.dispersion));
        }
        for (n, t) in self.transcripts.iter().enumerate() {
            if t.a != stages[n] || t.b != stages[n + 1] {
                return Err(format!("transcript {n} does not connect stage {n} to stage {}", n + 1));
            }
            if t.dispersion != self.dispersion || t.pairs != self.convention.pairs_for(n) {
                return Err(format!("transcript {n} used the wrong parameters"));
            }
            t.check(config).map_err(|e| format!("stage {}: {e}", n + 1))?;
        }
        Ok(())
    }
}

pub fn block_family(m: u64) -> Result<SpacingSet> {
    BlockFamily::new(m).map(SpacingSet::Blocks)
}

/// Exhaustively checks `p ∈ P(m) ⟹ m p ∉ P(m)` for `p <= horizon`.
pub fn verify_not_mp(m: u64, horizon: u64) -> Result<HorizonVerdict> {
    let fam = BlockFamily::new(m)?;
    let violation = (1..=horizon).into_par_iter().find_first(|&p| {
        fam.contains_u64(p)
            && match p.checked_mul(m) {
                Some(mp) => fam.contains_u64(mp),
                None => fam.contains(&(BigUint::from(p) * m)),
            }
    });
    Ok(match violation {
        Some(p) => HorizonVerdict::refuted(Certificate::Violation { p }),
        None => HorizonVerdict::verified(
            horizon,
            Some(Certificate::Structural(StructuralReason::LogParity { m })),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn three() -> ExplicitSet {
        ExplicitSet::from_u64s([3]).unwrap()
    }

    #[test]
    fn lemma_on_three() {
        let out = lemma_extend(&three(), 1, 3, &ConstructionConfig::default()).unwrap();
        assert_eq!(out.k, 4);
        assert_eq!(out.language_size, 6);
        assert_eq!(out.scenarios.len(), 36);
        assert_eq!(out.l[0], big(10));
        // l_{j+1} = 2^j l_j, so l_36 = 10 * 2^(1 + ... + 35)
        assert_eq!(out.l[35], big(10) << 630u32);
        assert!(!out.degenerate);
        assert!(out.a.is_subset(&out.b));
        assert!(out.b.is_q_dispersed(&big(3)).is_ok());
        let floor = big(7);
        assert!(out.b.iter().filter(|x| **x != big(3)).all(|x| *x >= floor));
    }

    #[test]
    fn scenario_with_1001_pair() {
        let out = lemma_extend(&three(), 1, 3, &ConstructionConfig::default()).unwrap();
        let w1001: Word = "1001".parse().unwrap();
        let j = out
            .scenarios
            .iter()
            .position(|s| s[0].u == w1001 && s[0].v == w1001)
            .unwrap();
        // L_4 in order: ε-support, {0}, {0,3}, {1}, {2}, {3}; (1001, 1001) is index 2 * 6 + 2
        assert_eq!(j, 14);
        let lj = &out.l[j];
        let w = &out.witness_words[j][0];
        let expected: BTreeSet<BigUint> = [big(3), lj - 3u32, lj.clone(), lj + 3u32].into_iter().collect();
        assert_eq!(w.spacing_set(), expected);
        assert!(expected.iter().all(|s| out.b.contains(s)));
    }

    #[test]
    fn degenerate_lemma() {
        let out = lemma_extend(&three(), 0, 3, &ConstructionConfig::default()).unwrap();
        assert!(out.degenerate);
        assert_eq!(out.b, three());
        assert!(out.scenarios.is_empty());
        assert!(out.check(&ConstructionConfig::default()).is_ok());
    }

    #[test]
    fn lemma_rejects_bad_input() {
        let cfg = ConstructionConfig::default();
        assert!(matches!(
            lemma_extend(&ExplicitSet::from_u64s([3, 4]).unwrap(), 1, 3, &cfg),
            Err(Error::InvalidParameter(_))
        ));
        assert!(lemma_extend(&ExplicitSet::default(), 1, 3, &cfg).is_err());
        assert!(lemma_extend(&three(), 1, 2, &cfg).is_err());
        // 6^4 = 1296 scenarios for N = 2 exceeds a bound of 1000
        let tight = ConstructionConfig { max_scenarios: 1000, ..cfg };
        assert!(matches!(lemma_extend(&three(), 2, 3, &tight), Err(Error::Infeasible { .. })));
        let far = ExplicitSet::from_u64s([40]).unwrap();
        assert!(matches!(lemma_extend(&far, 1, 3, &cfg), Err(Error::Infeasible { what: "k = max A + 1", .. })));
    }

    #[test]
    fn two_pairs_over_three_is_too_big() {
        // 1296 scenarios fit the count bound but l_1296 alone has ~1.3M bits
        let cfg = ConstructionConfig::default();
        assert!(matches!(
            lemma_extend(&three(), 2, 3, &cfg),
            Err(Error::Infeasible { what: "total size of the time scales l_j in bits", .. })
        ));
    }

    #[test]
    fn lemma_with_larger_dispersion() {
        let cfg = ConstructionConfig::default();
        let a = ExplicitSet::from_u64s([5]).unwrap();
        let out = lemma_extend(&a, 1, 5, &cfg).unwrap();
        assert_eq!(out.k, 6);
        assert_eq!(out.l[0], big(16));
        assert!(out.b.is_q_dispersed(&big(5)).is_ok());
    }

    #[test]
    fn check_catches_tampering() {
        let cfg = ConstructionConfig::default();
        let out = lemma_extend(&three(), 1, 3, &cfg).unwrap();

        let mut bad = out.clone();
        let extra = bad.b.max().unwrap() + 1u32;
        bad.b = ExplicitSet::new(bad.b.iter().cloned().chain([extra])).unwrap();
        assert!(bad.check(&cfg).is_err());

        let mut bad = out.clone();
        bad.l[3] += 1u32;
        assert!(bad.check(&cfg).is_err());

        let mut bad = out.clone();
        bad.scenarios.swap(0, 1);
        assert!(bad.check(&cfg).is_err());

        let mut bad = out;
        bad.k = 5;
        assert!(bad.check(&cfg).is_err());
    }

    #[test]
    fn staged_default_convention() {
        let cfg = ConstructionConfig::default();
        let s0 = staged_p(3, 0, StageConvention::AtLeastOne, &cfg).unwrap();
        assert_eq!(s0.set.stages(), &[three()]);
        let s1 = staged_p(3, 1, StageConvention::AtLeastOne, &cfg).unwrap();
        assert!(s1.set.is_strictly_increasing());
        let p1 = s1.set.last();
        assert!(p1.len() <= 1 + 36 * 4);
        assert!(p1.is_q_dispersed(&big(3)).is_ok());
        assert!(s1.check(&cfg).is_ok());
        // stage 2 would enumerate words of length max P_1 + 1
        match staged_p(3, 2, StageConvention::AtLeastOne, &cfg) {
            Err(Error::StageInfeasible { stage: 2, source }) => {
                assert!(matches!(*source, Error::Infeasible { what: "k = max A + 1", .. }))
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn staged_literal_convention() {
        let cfg = ConstructionConfig::default();
        let s = staged_p(3, 2, StageConvention::Literal, &cfg).unwrap();
        let stages = s.set.stages();
        assert_eq!(stages[0], stages[1]);
        assert!(stages[1].len() < stages[2].len());
        assert!(s.transcripts[0].degenerate);
        assert!(stages[2].is_q_dispersed(&big(3)).is_ok());
        assert!(s.check(&cfg).is_ok());
        assert!(matches!(
            staged_p(3, 3, StageConvention::Literal, &cfg),
            Err(Error::StageInfeasible { stage: 3, .. })
        ));
    }

    #[test]
    fn block_family_shape() {
        let fam = BlockFamily::new(2).unwrap();
        let blocks: Vec<(BigUint, BigUint)> = (1..=4).map(|k| fam.block(k)).collect();
        assert_eq!(
            blocks,
            vec![(big(2), big(3)), (big(8), big(15)), (big(32), big(63)), (big(128), big(255))]
        );
        assert_eq!(BlockFamily::new(3).unwrap().block(1), (big(3), big(8)));
        let p2 = block_family(2).unwrap();
        assert!(!p2.contains_u64(1));
        // the gap between consecutive blocks stays outside P(m)
        for m in 2..=5u64 {
            let fam = BlockFamily::new(m).unwrap();
            for k in 1..=6u32 {
                let (_, hi) = fam.block(k);
                let (next_lo, _) = fam.block(k + 1);
                assert!(!fam.contains(&(&hi + 1u32)));
                assert!(!fam.contains(&(&next_lo - 1u32)));
                assert_eq!(&hi + 1u32, BigUint::from(m).pow(2 * k));
            }
        }
        assert!(block_family(1).is_err());
    }

    #[test]
    fn not_mp_small_horizons() {
        for m in 2..=5 {
            let v = verify_not_mp(m, 50_000).unwrap();
            assert_eq!(
                v,
                HorizonVerdict::verified(50_000, Some(Certificate::Structural(StructuralReason::LogParity { m })))
            );
        }
    }

    #[test]
    fn transcript_round_trip() {
        let cfg = ConstructionConfig::default();
        let out = lemma_extend(&three(), 1, 3, &cfg).unwrap();
        let text = crate::json::canonical(&out).unwrap();
        let back: LemmaOutput = serde_json::from_str(&text).unwrap();
        assert_eq!(back, out);
    }
}
