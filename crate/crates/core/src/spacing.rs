//! Spacing sets `P` and the integer-set predicates used on them:
//! dispersedness, thickness, syndeticity.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::dec_set;
use crate::verdict::{Certificate, HorizonVerdict, StructuralReason};

/// A finite set of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "StageElements", into = "StageElements")]
pub struct ExplicitSet(BTreeSet<BigUint>);

impl ExplicitSet {
    pub fn new(elements: impl IntoIterator<Item = BigUint>) -> Result<Self> {
        let set: BTreeSet<BigUint> = elements.into_iter().collect();
        if set.first().is_some_and(|x| x.is_zero()) {
            return Err(Error::InvalidSet("spacing sets hold positive integers only".into()));
        }
        Ok(ExplicitSet(set))
    }

    pub fn from_u64s(elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        Self::new(elements.into_iter().map(BigUint::from))
    }

    /// `{lo, lo + 1, ..., hi}`.
    pub fn range(lo: u64, hi: u64) -> Result<Self> {
        Self::from_u64s(lo..=hi)
    }

    pub fn contains(&self, n: &BigUint) -> bool {
        self.0.contains(n)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &BigUint> {
        self.0.iter()
    }

    pub fn as_set(&self) -> &BTreeSet<BigUint> {
        &self.0
    }

    pub fn into_set(self) -> BTreeSet<BigUint> {
        self.0
    }

    pub fn min(&self) -> Option<&BigUint> {
        self.0.first()
    }

    pub fn max(&self) -> Option<&BigUint> {
        self.0.last()
    }

    pub fn is_subset(&self, other: &ExplicitSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Smallest distance between consecutive members.
    pub fn min_gap(&self) -> Option<BigUint> {
        let items: Vec<&BigUint> = self.0.iter().collect();
        items.windows(2).map(|w| w[1] - w[0]).min()
    }

    /// Checks that all distinct elements of `S ∪ {0}` are at least `q` apart.
    ///
    /// On failure returns the lexicographically smallest offending pair,
    /// which is always a pair of neighbours in sorted order.
    pub fn is_q_dispersed(&self, q: &BigUint) -> std::result::Result<(), FailingPair> {
        let zero = BigUint::zero();
        let mut prev = &zero;
        for x in &self.0 {
            if &(x - prev) < q {
                return Err(FailingPair { a: prev.clone(), b: x.clone() });
            }
            prev = x;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailingPair {
    pub a: BigUint,
    pub b: BigUint,
}

/// `P(m) = ⋃_k {m^{2k-1}, ..., m^{2k} - 1}`: thick, yet `p ∈ P(m)` never
/// allows `m p ∈ P(m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockFamily {
    m: u64,
}

impl BlockFamily {
    pub fn new(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!("block family needs m >= 2, got {m}")));
        }
        Ok(BlockFamily { m })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Inclusive endpoints `(m^{2k-1}, m^{2k} - 1)` of block `k >= 1`.
    pub fn block(&self, k: u32) -> (BigUint, BigUint) {
        assert!(k >= 1, "blocks are numbered from 1");
        let m = BigUint::from(self.m);
        let lo = m.pow(2 * k - 1);
        let hi = &lo * &m - 1u32;
        (lo, hi)
    }

    pub fn contains(&self, p: &BigUint) -> bool {
        if p.is_zero() {
            return false;
        }
        match p.to_u64() {
            Some(p) => self.contains_u64(p),
            None => floor_log(self.m, p) % 2 == 1,
        }
    }

    pub fn contains_u64(&self, p: u64) -> bool {
        p != 0 && floor_log_u64(self.m, p) % 2 == 1
    }

    /// Maximal runs of members within `[1, horizon]`.
    fn intervals_up_to(&self, horizon: u64) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        let m = self.m as u128;
        let mut lo = m;
        while lo <= horizon as u128 {
            let hi = lo.saturating_mul(m).saturating_sub(1).min(horizon as u128);
            out.push((lo as u64, hi as u64));
            match lo.checked_mul(m).and_then(|x| x.checked_mul(m)) {
                Some(next) => lo = next,
                None => break,
            }
        }
        out
    }
}

/// `floor(log_m p)` for `p >= 1`, by exact integer arithmetic.
pub fn floor_log_u64(m: u64, p: u64) -> u32 {
    debug_assert!(m >= 2 && p >= 1);
    let (m, p) = (m as u128, p as u128);
    let mut e = 0;
    let mut pow = m;
    while pow <= p {
        e += 1;
        pow = match pow.checked_mul(m) {
            Some(x) => x,
            None => break,
        };
    }
    e
}

pub fn floor_log(m: u64, p: &BigUint) -> u64 {
    debug_assert!(m >= 2 && !p.is_zero());
    let m = BigUint::from(m);
    let mut e = 0;
    let mut pow = m.clone();
    while &pow <= p {
        e += 1;
        pow *= &m;
    }
    e
}

/// Nested finite stages `P_0 ⊆ P_1 ⊆ ...`; membership is decided by the last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<StageElements>", into = "Vec<StageElements>")]
pub struct StagedUnion {
    stages: Vec<ExplicitSet>,
}

impl StagedUnion {
    pub fn new(stages: Vec<ExplicitSet>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::InvalidSet("staged union needs at least one stage".into()));
        }
        for (i, w) in stages.windows(2).enumerate() {
            if !w[0].is_subset(&w[1]) {
                return Err(Error::InvalidSet(format!("stage {i} is not contained in stage {}", i + 1)));
            }
        }
        Ok(StagedUnion { stages })
    }

    pub fn stages(&self) -> &[ExplicitSet] {
        &self.stages
    }

    pub fn last(&self) -> &ExplicitSet {
        self.stages.last().expect("nonempty by construction")
    }

    /// Whether every inclusion between consecutive stages is proper.
    pub fn is_strictly_increasing(&self) -> bool {
        self.stages.windows(2).all(|w| w[0].len() < w[1].len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Descriptor", into = "Descriptor")]
pub enum SpacingSet {
    Explicit(ExplicitSet),
    Blocks(BlockFamily),
    Staged(StagedUnion),
}

impl SpacingSet {
    pub fn explicit(elements: impl IntoIterator<Item = BigUint>) -> Result<Self> {
        ExplicitSet::new(elements).map(SpacingSet::Explicit)
    }

    pub fn blocks(m: u64) -> Result<Self> {
        BlockFamily::new(m).map(SpacingSet::Blocks)
    }

    pub fn contains(&self, n: &BigUint) -> bool {
        match self {
            SpacingSet::Explicit(s) => s.contains(n),
            SpacingSet::Blocks(b) => b.contains(n),
            SpacingSet::Staged(s) => s.last().contains(n),
        }
    }

    pub fn contains_u64(&self, n: u64) -> bool {
        match self {
            SpacingSet::Blocks(b) => b.contains_u64(n),
            _ => self.contains(&BigUint::from(n)),
        }
    }

    /// The materialized finite set, if this variant is finite.
    pub fn as_finite(&self) -> Option<&ExplicitSet> {
        match self {
            SpacingSet::Explicit(s) => Some(s),
            SpacingSet::Blocks(_) => None,
            SpacingSet::Staged(s) => Some(s.last()),
        }
    }

    /// Maximal runs `(lo, hi)` of members inside `[1, horizon]`, ascending.
    pub fn intervals_up_to(&self, horizon: u64) -> Vec<(u64, u64)> {
        match self {
            SpacingSet::Blocks(b) => b.intervals_up_to(horizon),
            _ => {
                let finite = self.as_finite().expect("finite variant");
                let mut out: Vec<(u64, u64)> = Vec::new();
                for x in finite.iter() {
                    let Some(x) = x.to_u64().filter(|&x| x <= horizon) else { break };
                    match out.last_mut() {
                        Some((_, hi)) if *hi + 1 == x => *hi = x,
                        _ => out.push((x, x)),
                    }
                }
                out
            }
        }
    }

    /// Members inside `[1, horizon]`, ascending.
    pub fn members_up_to(&self, horizon: u64) -> Vec<u64> {
        self.intervals_up_to(horizon).into_iter().flat_map(|(lo, hi)| lo..=hi).collect()
    }
}

impl From<ExplicitSet> for SpacingSet {
    fn from(s: ExplicitSet) -> Self {
        SpacingSet::Explicit(s)
    }
}

impl From<BlockFamily> for SpacingSet {
    fn from(b: BlockFamily) -> Self {
        SpacingSet::Blocks(b)
    }
}

impl From<StagedUnion> for SpacingSet {
    fn from(s: StagedUnion) -> Self {
        SpacingSet::Staged(s)
    }
}

impl fmt::Display for SpacingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpacingSet::Blocks(b) => write!(f, "P({})", b.m),
            SpacingSet::Explicit(s) => write!(f, "explicit set of {} elements", s.len()),
            SpacingSet::Staged(s) => {
                write!(f, "staged union of {} stages ({} elements)", s.stages.len(), s.last().len())
            }
        }
    }
}

/// Wire form of a spacing set.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Descriptor {
    Explicit {
        #[serde(with = "dec_set")]
        elements: BTreeSet<BigUint>,
    },
    Blocks { m: u64 },
    Staged { stages: Vec<StageElements> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StageElements(#[serde(with = "dec_set")] pub BTreeSet<BigUint>);

impl TryFrom<StageElements> for ExplicitSet {
    type Error = Error;

    fn try_from(s: StageElements) -> Result<Self> {
        ExplicitSet::new(s.0)
    }
}

impl From<ExplicitSet> for StageElements {
    fn from(s: ExplicitSet) -> Self {
        StageElements(s.0)
    }
}

impl TryFrom<Vec<StageElements>> for StagedUnion {
    type Error = Error;

    fn try_from(stages: Vec<StageElements>) -> Result<Self> {
        StagedUnion::new(stages.into_iter().map(ExplicitSet::try_from).collect::<Result<_>>()?)
    }
}

impl From<StagedUnion> for Vec<StageElements> {
    fn from(s: StagedUnion) -> Self {
        s.stages.into_iter().map(StageElements::from).collect()
    }
}

impl TryFrom<Descriptor> for SpacingSet {
    type Error = Error;

    fn try_from(d: Descriptor) -> Result<Self> {
        match d {
            Descriptor::Explicit { elements } => SpacingSet::explicit(elements),
            Descriptor::Blocks { m } => SpacingSet::blocks(m),
            Descriptor::Staged { stages } => {
                let stages = stages
                    .into_iter()
                    .map(|s| ExplicitSet::new(s.0))
                    .collect::<Result<Vec<_>>>()?;
                StagedUnion::new(stages).map(SpacingSet::Staged)
            }
        }
    }
}

impl From<SpacingSet> for Descriptor {
    fn from(s: SpacingSet) -> Self {
        match s {
            SpacingSet::Explicit(e) => Descriptor::Explicit { elements: e.0 },
            SpacingSet::Blocks(b) => Descriptor::Blocks { m: b.m },
            SpacingSet::Staged(s) => Descriptor::Staged {
                stages: s.stages.into_iter().map(|e| StageElements(e.0)).collect(),
            },
        }
    }
}

fn check_scan_args(horizon: u64, run_target: u64) -> Result<()> {
    if run_target == 0 || horizon < run_target {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= run_target <= horizon, got run_target {run_target}, horizon {horizon}"
        )));
    }
    Ok(())
}

fn run_verdict(runs: impl Iterator<Item = (u64, u64)>, horizon: u64, run_target: u64) -> HorizonVerdict {
    let mut longest: Option<(u64, u64)> = None;
    for (lo, hi) in runs {
        let length = hi - lo + 1;
        if length >= run_target {
            return HorizonVerdict::verified(horizon, Some(Certificate::Run { start: lo, length }));
        }
        if longest.is_none_or(|(_, l)| length > l) {
            longest = Some((lo, length));
        }
    }
    let (start, length) = match longest {
        Some((s, l)) => (Some(s), l),
        None => (None, 0),
    };
    HorizonVerdict::refuted_up_to(horizon, Certificate::LongestRun { start, length })
}

/// Pure horizon scan: is there a run of `run_target` consecutive members in
/// `[1, horizon]`? Reports the first long-enough maximal run (clipped to the
/// horizon) or the longest run seen.
pub fn thickness_scan(set: &SpacingSet, horizon: u64, run_target: u64) -> Result<HorizonVerdict> {
    check_scan_args(horizon, run_target)?;
    Ok(run_verdict(set.intervals_up_to(horizon).into_iter(), horizon, run_target))
}

/// Thickness with structural shortcuts.
///
/// `P(m)` is proven thick outright. A finite set whose maximum lies below the
/// horizon is refuted as finite; a set with no two adjacent members cannot
/// contain a run of length 2. Otherwise falls back to [`thickness_scan`].
pub fn thickness_verdict(set: &SpacingSet, horizon: u64, run_target: u64) -> Result<HorizonVerdict> {
    check_scan_args(horizon, run_target)?;
    let finite = match set {
        SpacingSet::Blocks(b) => {
            return Ok(HorizonVerdict::proven(Certificate::Structural(
                StructuralReason::BlockLengthsUnbounded { m: b.m },
            )))
        }
        _ => set.as_finite().expect("finite variant"),
    };
    match finite.max() {
        None => return Ok(HorizonVerdict::refuted(Certificate::Finite { max: None })),
        Some(max) if *max < BigUint::from(horizon) => {
            return Ok(HorizonVerdict::refuted(Certificate::Finite { max: Some(max.clone()) }))
        }
        _ => {}
    }
    if let Some(min_gap) = finite.min_gap().filter(|g| *g >= BigUint::from(2u32)) {
        return Ok(HorizonVerdict::refuted(Certificate::Structural(
            StructuralReason::NoAdjacentMembers { min_gap },
        )));
    }
    thickness_scan(set, horizon, run_target)
}

/// Thickness of `ℕ \ P`, by horizon scan only.
pub fn complement_thickness_verdict(
    set: &SpacingSet,
    horizon: u64,
    run_target: u64,
) -> Result<HorizonVerdict> {
    check_scan_args(horizon, run_target)?;
    let members = set.intervals_up_to(horizon);
    let mut holes = Vec::with_capacity(members.len() + 1);
    let mut next = 1u64;
    for (lo, hi) in members {
        if lo > next {
            holes.push((next, lo - 1));
        }
        next = hi + 1;
    }
    if next <= horizon {
        holes.push((next, horizon));
    }
    Ok(run_verdict(holes.into_iter(), horizon, run_target))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndeticityReport {
    /// Largest gap between consecutive elements of `S ∪ {0}` within
    /// `[0, horizon]`, closing with the gap up to `horizon + 1`.
    pub max_gap: u64,
    /// Present only when a bound was queried.
    pub verdict: Option<HorizonVerdict>,
}

/// Gap analysis of a sorted set of positive integers.
///
/// With `bound = Some(l)`, checks that every window `[n, n + l]` with
/// `n >= 0` and `n + l <= horizon` meets the set. A missing window is an
/// outright refutation since it lies entirely inside the scanned range.
pub fn syndeticity_verdict(members: &[u64], horizon: u64, bound: Option<u64>) -> SyndeticityReport {
    let mut max_gap = 0;
    let mut prev = 0u64;
    // holes are maximal runs of non-members, as inclusive (lo, hi)
    let mut holes = Vec::new();
    let mut first = true;
    for &x in members.iter().take_while(|&&x| x <= horizon) {
        debug_assert!(x > prev || (first && x > 0), "members must be positive and increasing");
        max_gap = max_gap.max(x - prev);
        let lo = if first { 0 } else { prev + 1 };
        if x > lo {
            holes.push((lo, x - 1));
        }
        prev = x;
        first = false;
    }
    max_gap = max_gap.max(horizon + 1 - prev);
    let tail_lo = if first { 0 } else { prev + 1 };
    if tail_lo <= horizon {
        holes.push((tail_lo, horizon));
    }

    let verdict = bound.map(|l| {
        let missed = holes.iter().find(|(lo, hi)| hi - lo >= l);
        match missed {
            Some(&(start, _)) => HorizonVerdict::refuted(Certificate::EmptyWindow { start, bound: l }),
            None => HorizonVerdict::verified(horizon, None),
        }
    });
    SyndeticityReport { max_gap, verdict }
}

/// Convenience: [`syndeticity_verdict`] over the members of a spacing set.
pub fn set_syndeticity(set: &SpacingSet, horizon: u64, bound: Option<u64>) -> SyndeticityReport {
    syndeticity_verdict(&set.members_up_to(horizon), horizon, bound)
}

#[cfg(test)]
pub(crate) fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn explicit(xs: &[u64]) -> SpacingSet {
        SpacingSet::Explicit(ExplicitSet::from_u64s(xs.iter().copied()).unwrap())
    }

    /// Membership by listing the blocks directly.
    fn block_oracle(m: u64, limit: u64) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        let mut k = 1u32;
        loop {
            let lo = m.pow(2 * k - 1);
            if lo > limit {
                break;
            }
            let hi = (m.pow(2 * k) - 1).min(limit);
            out.extend(lo..=hi);
            k += 1;
        }
        out
    }

    #[test]
    fn block_membership_examples() {
        let p2 = SpacingSet::blocks(2).unwrap();
        assert!(p2.contains_u64(2));
        assert!(!p2.contains_u64(4));
        assert!(p2.contains_u64(10));
        assert!(!p2.contains_u64(1));
        let p3 = SpacingSet::blocks(3).unwrap();
        assert!(p3.contains_u64(8));
        assert!(!p3.contains_u64(9));
        assert!(explicit(&[3]).contains_u64(3));
        assert!(SpacingSet::blocks(1).is_err());
    }

    #[test]
    fn block_membership_matches_oracle() {
        for m in [2u64, 3, 4, 5, 7] {
            let oracle = block_oracle(m, 1_000_000);
            let fam = BlockFamily::new(m).unwrap();
            for p in 1..=1_000_000u64 {
                assert_eq!(fam.contains_u64(p), oracle.contains(&p), "m={m} p={p}");
            }
        }
    }

    #[test]
    fn bignum_membership_at_block_edges() {
        let fam = BlockFamily::new(3).unwrap();
        for k in [1u32, 5, 30, 100] {
            let (lo, hi) = fam.block(k);
            assert!(fam.contains(&lo));
            assert!(fam.contains(&hi));
            assert!(!fam.contains(&(&lo - 1u32)));
            assert!(!fam.contains(&(&hi + 1u32)));
        }
        // bignum path agrees with the u64 path where both apply
        for p in [1u64, 2, 3, 8, 9, 26, 27, 80, 81, u64::MAX] {
            assert_eq!(floor_log(3, &big(p)) as u32, floor_log_u64(3, p));
        }
    }

    #[test]
    fn not_mp_exhaustive_small() {
        for m in 2..=6u64 {
            let fam = BlockFamily::new(m).unwrap();
            for p in 1..=200_000u64 {
                if fam.contains_u64(p) {
                    assert!(!fam.contains_u64(m * p));
                }
            }
        }
    }

    #[test]
    fn dispersed_examples() {
        let s = ExplicitSet::from_u64s([3, 7, 10, 13]).unwrap();
        assert!(s.is_q_dispersed(&big(3)).is_ok());
        let s = ExplicitSet::from_u64s([3, 4]).unwrap();
        assert_eq!(s.is_q_dispersed(&big(3)), Err(FailingPair { a: big(3), b: big(4) }));
        let s = ExplicitSet::from_u64s([2]).unwrap();
        assert_eq!(s.is_q_dispersed(&big(3)), Err(FailingPair { a: big(0), b: big(2) }));
        assert!(ExplicitSet::default().is_q_dispersed(&big(3)).is_ok());
    }

    #[test]
    fn explicit_rejects_zero() {
        assert!(ExplicitSet::from_u64s([0, 3]).is_err());
    }

    #[test]
    fn thickness_examples() {
        let p2 = SpacingSet::blocks(2).unwrap();
        assert_eq!(
            thickness_scan(&p2, 100_000, 128).unwrap(),
            HorizonVerdict::verified(100_000, Some(Certificate::Run { start: 128, length: 128 }))
        );
        assert_eq!(
            thickness_scan(&p2, 255, 129).unwrap(),
            HorizonVerdict::refuted_up_to(255, Certificate::LongestRun { start: Some(128), length: 128 })
        );
        assert!(thickness_verdict(&p2, 100_000, 128).unwrap().is_proven());
        assert_eq!(
            thickness_verdict(&explicit(&[3]), 100, 2).unwrap(),
            HorizonVerdict::refuted(Certificate::Finite { max: Some(big(3)) })
        );
        assert_eq!(
            thickness_verdict(&explicit(&[5, 6, 7]), 100, 3).unwrap(),
            HorizonVerdict::refuted(Certificate::Finite { max: Some(big(7)) })
        );
        assert!(thickness_scan(&explicit(&[5, 6, 7]), 100, 3).unwrap().is_verified());
        assert!(thickness_verdict(&p2, 10, 11).is_err());
        assert!(thickness_verdict(&p2, 10, 0).is_err());
    }

    #[test]
    fn thickness_of_sparse_bignum_set() {
        let huge = big(1) << 700u32;
        let s = SpacingSet::explicit([big(3), big(7), huge.clone(), huge + 5u32]).unwrap();
        assert_eq!(
            thickness_verdict(&s, 1000, 2).unwrap(),
            HorizonVerdict::refuted(Certificate::Structural(StructuralReason::NoAdjacentMembers {
                min_gap: big(4)
            }))
        );
        // all of [1, horizon] present but reaching past it: scan decides
        let full = SpacingSet::Explicit(ExplicitSet::range(1, 50).unwrap());
        assert!(thickness_verdict(&full, 50, 10).unwrap().is_verified());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(
            complement_thickness_verdict(&explicit(&[3, 7]), 100, 10).unwrap(),
            HorizonVerdict::verified(100, Some(Certificate::Run { start: 8, length: 93 }))
        );
        // complement of P(2) is {1}, {4..7}, {16..31}, {64..127}, {256..511}, ...
        assert_eq!(
            complement_thickness_verdict(&SpacingSet::blocks(2).unwrap(), 100_000, 100).unwrap(),
            HorizonVerdict::verified(100_000, Some(Certificate::Run { start: 256, length: 256 }))
        );
        let full = SpacingSet::Explicit(ExplicitSet::range(1, 100).unwrap());
        assert_eq!(
            complement_thickness_verdict(&full, 100, 1).unwrap(),
            HorizonVerdict::refuted_up_to(100, Certificate::LongestRun { start: None, length: 0 })
        );
    }

    #[test]
    fn syndeticity_examples() {
        let fives: Vec<u64> = (1..=20).map(|i| 5 * i).collect();
        let r = syndeticity_verdict(&fives, 100, Some(4));
        assert_eq!(r.max_gap, 5);
        // [0, 4] misses every positive multiple of 5
        assert_eq!(r.verdict, Some(HorizonVerdict::refuted(Certificate::EmptyWindow { start: 0, bound: 4 })));
        assert_eq!(syndeticity_verdict(&fives, 100, Some(5)).verdict, Some(HorizonVerdict::verified(100, None)));

        assert_eq!(syndeticity_verdict(&[], 100, None).max_gap, 101);
        assert_eq!(syndeticity_verdict(&[], 100, None).verdict, None);

        // P(2) up to 10^4: largest gap is from 4095 to 8192
        let p2 = SpacingSet::blocks(2).unwrap();
        let r = set_syndeticity(&p2, 10_000, Some(1000));
        assert_eq!(r.max_gap, 8192 - 4095);
        assert_eq!(r.max_gap, 2u64.pow(13) - 2u64.pow(12) + 1);
        // first hole holding 1001 consecutive integers is [1024, 2047]
        assert_eq!(
            r.verdict,
            Some(HorizonVerdict::refuted(Certificate::EmptyWindow { start: 1024, bound: 1000 }))
        );
    }

    #[test]
    fn descriptor_round_trip() {
        let sets = [
            SpacingSet::blocks(2).unwrap(),
            explicit(&[3, 7, 10]),
            SpacingSet::Staged(
                StagedUnion::new(vec![
                    ExplicitSet::from_u64s([3]).unwrap(),
                    ExplicitSet::from_u64s([3, 10]).unwrap(),
                ])
                .unwrap(),
            ),
        ];
        for s in sets {
            let text = crate::json::canonical(&s).unwrap();
            let back: SpacingSet = serde_json::from_str(&text).unwrap();
            assert_eq!(back, s);
        }
        let text = crate::json::canonical(&SpacingSet::blocks(2).unwrap()).unwrap();
        assert_eq!(text, r#"{"kind":"blocks","m":2}"#);
        assert!(serde_json::from_str::<SpacingSet>(r#"{"kind":"explicit","elements":["7","3"]}"#).is_err());
        assert!(serde_json::from_str::<SpacingSet>(r#"{"kind":"explicit","elements":[3]}"#).is_err());
        assert!(serde_json::from_str::<SpacingSet>(
            r#"{"kind":"staged","stages":[["3","5"],["3"]]}"#
        )
        .is_err());
    }

    proptest! {
        #[test]
        fn dispersed_is_hereditary(xs in proptest::collection::btree_set(1u64..500, 0..20),
                                   keep in proptest::collection::vec(any::<bool>(), 20),
                                   q in 2u64..10) {
            let s = ExplicitSet::from_u64s(xs.iter().copied()).unwrap();
            if s.is_q_dispersed(&big(q)).is_ok() {
                let sub = ExplicitSet::from_u64s(
                    xs.iter().zip(keep.iter().cycle()).filter(|(_, &k)| k).map(|(&x, _)| x),
                ).unwrap();
                prop_assert!(sub.is_q_dispersed(&big(q)).is_ok());
            }
        }

        #[test]
        fn thickness_stable_as_horizon_grows(xs in proptest::collection::btree_set(1u64..200, 0..60),
                                             h in 1u64..400, extra in 0u64..400, r in 1u64..6) {
            prop_assume!(r <= h);
            let s = SpacingSet::Explicit(ExplicitSet::from_u64s(xs).unwrap());
            let a = thickness_verdict(&s, h, r).unwrap();
            let b = thickness_verdict(&s, h + extra, r).unwrap();
            // an outright refutation stays outright, though the certificate may change
            if let HorizonVerdict::Refuted { horizon: None, .. } = a {
                let outright = matches!(b, HorizonVerdict::Refuted { horizon: None, .. });
                prop_assert!(outright);
            }
            // a run found in [1, h] is still found in any larger window
            let sa = thickness_scan(&s, h, r).unwrap();
            let sb = thickness_scan(&s, h + extra, r).unwrap();
            if sa.is_verified() {
                prop_assert!(sb.is_verified());
            }
            // nothing in [1, h + extra] means nothing in [1, h]
            if sb.is_refuted() {
                prop_assert!(sa.is_refuted());
            }
        }

        #[test]
        fn proven_block_thickness_never_changes(m in 2u64..6, h in 1u64..100_000) {
            let s = SpacingSet::blocks(m).unwrap();
            prop_assert!(thickness_verdict(&s, h, 1).unwrap().is_proven());
        }
    }
}
