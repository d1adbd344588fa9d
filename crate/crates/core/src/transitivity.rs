//! Hitting times and witness searches for transitivity-type properties of
//! products `σ_P^{e_1} × ... × σ_P^{e_r}`.
//!
//! Open sets are [`PartialPattern`]s. The preimage `σ^{-n}(V)` is `V`
//! shifted right by `n`, so `σ^n(U) ∩ V ≠ ∅` becomes "U merged with V
//! shifted by n is consistent and nonempty". Every search is bounded by a
//! mandatory horizon; structural certificates are attached only where a
//! finite argument covers all `n`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spacing::{thickness_verdict, SpacingSet};
use crate::verdict::{Certificate, HorizonVerdict, StructuralReason};
use crate::word::{merge_patterns, pattern_nonempty, PartialPattern, Word};

fn check_horizon(horizon: u64) -> Result<()> {
    if horizon == 0 {
        return Err(Error::InvalidParameter("horizon must be at least 1".into()));
    }
    Ok(())
}

/// Incremental test for `σ^t(U) ∩ V ≠ ∅` at many `t`.
///
/// Distances inside `U` and inside `V` do not depend on `t`, so they are
/// checked once; each `t` only looks at clashes and cross distances.
struct PairScan<'a> {
    set: &'a SpacingSet,
    source: &'a PartialPattern,
    target: &'a PartialPattern,
    source_ones: Vec<&'a BigUint>,
    target_ones: Vec<&'a BigUint>,
    feasible: bool,
}

impl<'a> PairScan<'a> {
    fn new(source: &'a PartialPattern, target: &'a PartialPattern, set: &'a SpacingSet) -> Self {
        PairScan {
            set,
            source,
            target,
            source_ones: source.ones().collect(),
            target_ones: target.ones().collect(),
            feasible: pattern_nonempty(source, set) && pattern_nonempty(target, set),
        }
    }

    fn hits_at(&self, t: &BigUint) -> bool {
        if !self.feasible {
            return false;
        }
        for (q, s) in self.target.iter() {
            if self.source.get(&(q + t)).is_some_and(|r| r != s) {
                return false;
            }
        }
        for q in &self.target_ones {
            let pos = *q + t;
            for p in &self.source_ones {
                let d = if pos > **p { &pos - *p } else if pos < **p { *p - &pos } else { continue };
                if !self.set.contains(&d) {
                    return false;
                }
            }
        }
        true
    }
}

/// `N(U, V) ∩ [1, horizon]`: all `n` with `σ^n(U) ∩ V ≠ ∅`.
pub fn hitting_times(
    source: &PartialPattern,
    target: &PartialPattern,
    set: &SpacingSet,
    horizon: u64,
) -> Result<Vec<u64>> {
    check_horizon(horizon)?;
    let scan = PairScan::new(source, target, set);
    Ok((1..=horizon).into_par_iter().filter(|&n| scan.hits_at(&BigUint::from(n))).collect())
}

/// Simultaneous hitting for a product of powers of the shift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductQuery {
    pub set: SpacingSet,
    pub exponents: Vec<u64>,
    pub sources: Vec<PartialPattern>,
    pub targets: Vec<PartialPattern>,
    pub horizon: u64,
}

impl ProductQuery {
    pub fn new(
        set: SpacingSet,
        exponents: Vec<u64>,
        sources: Vec<PartialPattern>,
        targets: Vec<PartialPattern>,
        horizon: u64,
    ) -> Result<Self> {
        let q = ProductQuery { set, exponents, sources, targets, horizon };
        q.validate()?;
        Ok(q)
    }

    /// Same `U` and `V` in every coordinate.
    pub fn uniform(
        set: SpacingSet,
        exponents: Vec<u64>,
        source: PartialPattern,
        target: PartialPattern,
        horizon: u64,
    ) -> Result<Self> {
        let r = exponents.len();
        Self::new(set, exponents, vec![source; r], vec![target; r], horizon)
    }

    pub fn validate(&self) -> Result<()> {
        check_horizon(self.horizon)?;
        let r = self.exponents.len();
        if r == 0 {
            return Err(Error::InvalidParameter("product needs at least one coordinate".into()));
        }
        if self.sources.len() != r || self.targets.len() != r {
            return Err(Error::InvalidParameter(format!(
                "{r} exponents but {} sources and {} targets",
                self.sources.len(),
                self.targets.len()
            )));
        }
        if self.exponents.contains(&0) {
            return Err(Error::InvalidParameter("exponents must be positive".into()));
        }
        Ok(())
    }

    /// Per-coordinate merged patterns at time `n`, if they all exist and are nonempty.
    pub fn merged_at(&self, n: u64) -> Option<Vec<PartialPattern>> {
        self.exponents
            .iter()
            .zip(self.sources.iter().zip(&self.targets))
            .map(|(&e, (u, v))| {
                let t = BigUint::from(e) * n;
                merge_patterns(u, &v.shift(&t)).ok().filter(|m| pattern_nonempty(m, &self.set))
            })
            .collect()
    }

    fn hits_at(&self, n: u64) -> bool {
        self.merged_at(n).is_some()
    }

    /// Structural reason why no `n` can ever work, when `P = P(m)` and the
    /// query forces both `a n` and `m a n` into `P`.
    pub fn structural_obstruction(&self) -> Option<StructuralReason> {
        let SpacingSet::Blocks(fam) = &self.set else { return None };
        let forced: BTreeSet<u64> = self
            .exponents
            .iter()
            .zip(self.sources.iter().zip(&self.targets))
            .filter(|(_, (u, v))| u.ones().any(|p| v.get(p) == Some(true)))
            .map(|(&e, _)| e)
            .collect();
        not_mp_pair(&forced, fam.m())
    }
}

/// Some `a` with `a` and `m a` both in `forced`.
fn not_mp_pair(forced: &BTreeSet<u64>, m: u64) -> Option<StructuralReason> {
    forced
        .iter()
        .find(|&&a| a.checked_mul(m).is_some_and(|ma| forced.contains(&ma)))
        .map(|&a| StructuralReason::NotMp { m, a })
}

/// All `n <= horizon` at which every coordinate hits, by merging each
/// coordinate's patterns directly.
pub fn product_hitting(q: &ProductQuery) -> Result<Vec<u64>> {
    q.validate()?;
    Ok((1..=q.horizon).into_par_iter().filter(|&n| q.hits_at(n)).collect())
}

/// Same set as [`product_hitting`], computed as `⋂_i {n : e_i n ∈ N(U_i, V_i)}`
/// from separate per-coordinate hitting sets.
pub fn product_hitting_by_coordinates(q: &ProductQuery) -> Result<Vec<u64>> {
    q.validate()?;
    let mut survivors: Option<BTreeSet<u64>> = None;
    for (&e, (u, v)) in q.exponents.iter().zip(q.sources.iter().zip(&q.targets)) {
        let reach = e.checked_mul(q.horizon).ok_or_else(|| Error::TooLarge("exponent times horizon".into()))?;
        let times = hitting_times(u, v, &q.set, reach)?;
        let ns: BTreeSet<u64> = times.into_iter().filter(|t| t % e == 0).map(|t| t / e).collect();
        survivors = Some(match survivors {
            None => ns,
            Some(s) => s.intersection(&ns).copied().collect(),
        });
    }
    Ok(survivors.unwrap_or_default().into_iter().collect())
}

/// `U ∩ ⋂_i σ^{-i n}(V_i) ≠ ∅` as a single combined pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaQuery {
    pub set: SpacingSet,
    pub source: PartialPattern,
    /// `targets[i - 1]` is `V_i`, visited at time `i n`.
    pub targets: Vec<PartialPattern>,
    pub horizon: u64,
}

impl DeltaQuery {
    pub fn validate(&self) -> Result<()> {
        check_horizon(self.horizon)?;
        if self.targets.is_empty() {
            return Err(Error::InvalidParameter("need at least one target".into()));
        }
        Ok(())
    }

    pub fn combined_at(&self, n: u64) -> Option<PartialPattern> {
        let mut acc = self.source.clone();
        for (v, i) in self.targets.iter().zip(1u64..) {
            acc = merge_patterns(&acc, &v.shift(&(BigUint::from(i) * n))).ok()?;
        }
        pattern_nonempty(&acc, &self.set).then_some(acc)
    }

    /// For `P = P(m)`: two `1`s at the same offset in pieces visited at
    /// times `c_1 n` and `c_2 n` force `(c_2 - c_1) n ∈ P`.
    pub fn structural_obstruction(&self) -> Option<StructuralReason> {
        let SpacingSet::Blocks(fam) = &self.set else { return None };
        let mut at_offset: std::collections::BTreeMap<&BigUint, Vec<u64>> = Default::default();
        for p in self.source.ones() {
            at_offset.entry(p).or_default().push(0);
        }
        for (v, i) in self.targets.iter().zip(1u64..) {
            for p in v.ones() {
                at_offset.entry(p).or_default().push(i);
            }
        }
        let mut forced = BTreeSet::new();
        for coeffs in at_offset.values() {
            for (x, a) in coeffs.iter().enumerate() {
                for b in &coeffs[x + 1..] {
                    forced.insert(a.abs_diff(*b));
                }
            }
        }
        not_mp_pair(&forced, fam.m())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Query {
    Product(ProductQuery),
    Delta(DeltaQuery),
}

impl Query {
    pub fn horizon(&self) -> u64 {
        match self {
            Query::Product(q) => q.horizon,
            Query::Delta(q) => q.horizon,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Query::Product(q) => q.validate(),
            Query::Delta(q) => q.validate(),
        }
    }

    /// Witness patterns at time `n`: one per coordinate for products, a
    /// single combined pattern for the diagonal criterion.
    pub fn patterns_at(&self, n: u64) -> Option<Vec<PartialPattern>> {
        match self {
            Query::Product(q) => q.merged_at(n),
            Query::Delta(q) => q.combined_at(n).map(|p| vec![p]),
        }
    }

    pub fn structural_obstruction(&self) -> Option<StructuralReason> {
        match self {
            Query::Product(q) => q.structural_obstruction(),
            Query::Delta(q) => q.structural_obstruction(),
        }
    }

    /// Smallest witness in `[lo, horizon]`.
    fn first_hit(&self, lo: u64) -> Option<u64> {
        (lo..=self.horizon()).into_par_iter().find_first(|&n| self.patterns_at(n).is_some())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub query: Query,
    pub witness: Option<u64>,
    /// Patterns realizing the witness; each is independently checkable.
    pub merged: Vec<PartialPattern>,
    pub verdict: HorizonVerdict,
}

impl WitnessReport {
    /// Scans `[1, horizon]` for the smallest witness.
    pub fn search(query: Query) -> Result<Self> {
        query.validate()?;
        let witness = query.first_hit(1);
        Ok(Self::from_witness(query, witness))
    }

    fn from_witness(query: Query, witness: Option<u64>) -> Self {
        match witness {
            Some(n) => {
                let merged = query.patterns_at(n).expect("witness was just confirmed");
                WitnessReport {
                    query,
                    witness: Some(n),
                    merged,
                    verdict: HorizonVerdict::proven(Certificate::Witness { n }),
                }
            }
            None => {
                let structural = query.structural_obstruction();
                let horizon = query.horizon();
                WitnessReport {
                    query,
                    witness: None,
                    merged: Vec::new(),
                    verdict: HorizonVerdict::refuted_up_to(horizon, Certificate::NoWitness { structural }),
                }
            }
        }
    }
}

/// Smallest `n` making `σ × σ^2 × ... × σ^m` carry each `[u_i]` into `[v_i]`.
pub fn multi_transitivity_witness(set: &SpacingSet, pairs: &[(Word, Word)], horizon: u64) -> Result<WitnessReport> {
    let m = pairs.len() as u64;
    let mut sources = Vec::with_capacity(pairs.len());
    let mut targets = Vec::with_capacity(pairs.len());
    for (u, v) in pairs {
        sources.push(u.cylinder()?);
        targets.push(v.cylinder()?);
    }
    let q = ProductQuery::new(set.clone(), (1..=m).collect(), sources, targets, horizon)?;
    WitnessReport::search(Query::Product(q))
}

/// Smallest `n` with `U ∩ σ^{-n}(V_1) ∩ ... ∩ σ^{-mn}(V_m) ≠ ∅`.
pub fn delta_transitivity_witness(
    set: &SpacingSet,
    source: &PartialPattern,
    targets: &[PartialPattern],
    horizon: u64,
) -> Result<WitnessReport> {
    WitnessReport::search(Query::Delta(DeltaQuery {
        set: set.clone(),
        source: source.clone(),
        targets: targets.to_vec(),
        horizon,
    }))
}

/// Weak mixing of `σ_P` is thickness of `P`.
pub fn weak_mixing_verdict(set: &SpacingSet, horizon: u64, run_target: u64) -> Result<HorizonVerdict> {
    thickness_verdict(set, horizon, run_target)
}

/// Exhaustive hitting set of `σ_P^{e_1} × ... × σ_P^{e_r}` on `U = V = [1] × ... × [1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationReport {
    pub query: ProductQuery,
    pub hits: Vec<u64>,
    pub verdict: HorizonVerdict,
    /// Exhaustive scan of `p ∈ P(m) ⟹ m p ∉ P(m)`, present when a
    /// structural certificate is claimed.
    pub not_mp: Option<HorizonVerdict>,
}

/// Shows `σ_P × σ_P^m` is not transitive for `P = P(m)` (default exponents
/// `(1, m)`). Other exponent tuples are scanned without a structural claim
/// unless they happen to contain some `a` and `m a`.
pub fn refute_product_transitivity(set: &SpacingSet, exponents: Option<&[u64]>, horizon: u64) -> Result<RefutationReport> {
    let SpacingSet::Blocks(fam) = set else {
        return Err(Error::InvalidParameter("product refutation applies to block families".into()));
    };
    let exponents = exponents.map(<[u64]>::to_vec).unwrap_or_else(|| vec![1, fam.m()]);
    let q = ProductQuery::uniform(set.clone(), exponents, PartialPattern::one(), PartialPattern::one(), horizon)?;
    let hits = product_hitting(&q)?;
    let structural = q.structural_obstruction();
    let not_mp = match structural {
        Some(_) => Some(crate::construct::verify_not_mp(fam.m(), horizon)?),
        None => None,
    };
    let verdict = match hits.first() {
        Some(&n) => HorizonVerdict::proven(Certificate::Witness { n }),
        None => HorizonVerdict::refuted_up_to(horizon, Certificate::NoWitness { structural }),
    };
    Ok(RefutationReport { query: q, hits, verdict, not_mp })
}

/// Transcript of the nested refinement: times `k_0..k_d` and nonempty
/// `V_i^{(n)} ⊆ V_i` with `σ^{i k_j - j}(V_i^{(n)}) ⊆ V_i` for all `j <= n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementReport {
    pub set: SpacingSet,
    pub targets: Vec<PartialPattern>,
    pub depth: u64,
    pub horizon: u64,
    pub times: Vec<u64>,
    /// `refined[n][i - 1]` is `V_i^{(n)}`.
    pub refined: Vec<Vec<PartialPattern>>,
    /// Proven when all `depth + 1` steps succeeded; otherwise refuted up to
    /// the horizon at step `times.len()`.
    pub verdict: HorizonVerdict,
}

impl RefinementReport {
    pub fn completed(&self) -> bool {
        self.times.len() as u64 == self.depth + 1
    }

    /// Re-checks every claimed inclusion and nonemptiness from the patterns.
    pub fn check(&self) -> std::result::Result<(), String> {
        if self.refined.len() != self.times.len() {
            return Err("one refined family per time".into());
        }
        if self.times.len() as u64 > self.depth + 1 {
            return Err("more steps than the requested depth".into());
        }
        for (n, (&k, family)) in self.times.iter().zip(&self.refined).enumerate() {
            let n64 = n as u64;
            if k <= n64 || k > self.horizon {
                return Err(format!("k_{n} = {k} must lie in ({n}, {}]", self.horizon));
            }
            if family.len() != self.targets.len() {
                return Err(format!("step {n} refines {} sets, expected {}", family.len(), self.targets.len()));
            }
            for (i, (vn, v)) in (1u64..).zip(family.iter().zip(&self.targets)) {
                if !pattern_nonempty(vn, &self.set) {
                    return Err(format!("V_{i}^({n}) is empty"));
                }
                if !v.is_subpattern_of(vn) {
                    return Err(format!("V_{i}^({n}) is not inside V_{i}"));
                }
                if n > 0 && !self.refined[n - 1][i as usize - 1].is_subpattern_of(vn) {
                    return Err(format!("V_{i}^({n}) is not inside V_{i}^({})", n - 1));
                }
                for (j, &kj) in self.times[..=n].iter().enumerate() {
                    let t = BigUint::from(i * kj - j as u64);
                    if !v.shift(&t).is_subpattern_of(vn) {
                        return Err(format!("σ^(i k_{j} - {j}) maps V_{i}^({n}) outside V_{i} for i = {i}"));
                    }
                }
            }
        }
        let expected_ok = self.completed();
        if expected_ok != self.verdict.holds() {
            return Err("verdict disagrees with the number of completed steps".into());
        }
        Ok(())
    }
}

/// Builds the nested refinement step by step, taking the smallest admissible
/// `k_n` each time.
///
/// Step 0 finds `k_0 >= 1` with `σ^{-i k_0}(V_i) ∩ V_i ≠ ∅` for all `i`;
/// step `n` pulls `V_i^{(n-1)}` back by `n` and finds `k_n > n` with
/// `σ^{-i k_n}(V_i)` meeting it, then sets
/// `V_i^{(n)} = V_i^{(n-1)} ∩ σ^{-(i k_n - n)}(V_i)`.
pub fn nested_refinement(set: &SpacingSet, targets: &[PartialPattern], depth: u64, horizon: u64) -> Result<RefinementReport> {
    check_horizon(horizon)?;
    if targets.is_empty() {
        return Err(Error::InvalidParameter("need at least one target set".into()));
    }
    if let Some(i) = targets.iter().position(|v| !pattern_nonempty(v, set)) {
        return Err(Error::InvalidParameter(format!("V_{} is empty", i + 1)));
    }
    let m = targets.len() as u64;
    let exponents: Vec<u64> = (1..=m).collect();
    let mut times = Vec::new();
    let mut refined: Vec<Vec<PartialPattern>> = Vec::new();
    let mut verdict = None;

    for n in 0..=depth {
        let previous = refined.last().map(Vec::as_slice).unwrap_or(targets);
        let shift_n = BigUint::from(n);
        let sources: Vec<PartialPattern> = previous.iter().map(|p| p.shift(&shift_n)).collect();
        let q = ProductQuery::new(set.clone(), exponents.clone(), sources, targets.to_vec(), horizon)?;
        let query = Query::Product(q);
        match query.first_hit(n + 1) {
            Some(k) => {
                let family = previous
                    .iter()
                    .zip(targets)
                    .zip(1u64..)
                    .map(|((prev, v), i)| {
                        merge_patterns(prev, &v.shift(&BigUint::from(i * k - n)))
                            .map_err(|c| Error::Internal(format!("refinement clash at {}", c.position)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                times.push(k);
                refined.push(family);
            }
            None => {
                let structural = query.structural_obstruction();
                verdict = Some(HorizonVerdict::refuted_up_to(horizon, Certificate::NoWitness { structural }));
                break;
            }
        }
    }
    let verdict = verdict.unwrap_or_else(|| {
        HorizonVerdict::proven(Certificate::Witness { n: *times.last().expect("depth + 1 steps") })
    });
    let report = RefinementReport { set: set.clone(), targets: targets.to_vec(), depth, horizon, times, refined, verdict };
    report.check().map_err(Error::Internal)?;
    Ok(report)
}
