//! Spacing shifts and the combinatorics behind two counterexamples in
//! topological dynamics: a multi-transitive spacing shift that is not weakly
//! mixing, and a weakly mixing one that is not multi-transitive.
//!
//! A spacing shift `Σ_P` is the set of binary sequences in which any two `1`s
//! sit at a distance from `P`. Everything here reduces dynamical questions
//! about `Σ_P` to finite checks on words and patterns, and reports answers
//! as [`HorizonVerdict`]s: proven structurally, verified up to a horizon, or
//! refuted with a counterexample.

pub mod cert;
pub mod cli;
pub mod construct;
pub mod error;
pub mod json;
pub mod language;
pub mod spacing;
pub mod transitivity;
pub mod verdict;
pub mod word;

pub use construct::{block_family, lemma_extend, staged_p, verify_not_mp, LemmaOutput, StageConvention, StagedConstruction};
pub use error::{Error, Result};
pub use language::{count_language, enumerate_language, language_equal_up_to, LanguageConfig};
pub use spacing::{
    complement_thickness_verdict, syndeticity_verdict, thickness_scan, thickness_verdict, BlockFamily,
    ExplicitSet, SpacingSet, StagedUnion,
};
pub use transitivity::{
    delta_transitivity_witness, hitting_times, multi_transitivity_witness, nested_refinement,
    product_hitting, refute_product_transitivity, weak_mixing_verdict, ProductQuery, WitnessReport,
};
pub use verdict::{Certificate, HorizonVerdict, StructuralReason};
pub use word::{merge_patterns, pattern_nonempty, Conflict, PartialPattern, Word};
