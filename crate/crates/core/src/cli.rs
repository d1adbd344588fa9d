//! Command-line front end. [`execute`] does all the work and returns the
//! JSON text plus an exit code, so the binary stays a thin wrapper.
//!
//! Exit codes: `check` gives 0 when the verdict holds and 1 when refuted;
//! `witness` gives 0 when a witness is found and 1 otherwise; `verify`
//! gives 0 when accepted and 1 when rejected. Usage and input errors give 2.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::cert::{self, run_check, Body, Property, Verification};
use crate::construct::{lemma_extend, staged_p, ConstructionConfig, StageConvention};
use crate::error::{Error, Result};
use crate::json::canonical;
use crate::spacing::{BlockFamily, ExplicitSet, SpacingSet};
use crate::transitivity::{
    nested_refinement, refute_product_transitivity, DeltaQuery, ProductQuery, Query, WitnessReport,
};
use crate::word::{PartialPattern, Word};

pub const HORIZON_ENV: &str = "SPACING_LAB_HORIZON";

#[derive(Debug, Parser)]
#[command(name = "spacing-lab", version, about = "Spacing shifts: constructions, verdicts and certificates")]
pub struct Cli {
    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a spacing set or construction transcript.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Check a property of a spacing set.
    Check(CheckArgs),
    /// Search for transitivity witnesses.
    Witness(WitnessArgs),
    /// Re-validate a sealed certificate.
    Verify { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum BuildKind {
    /// The block family P(m).
    Blocks {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stages P_0 ⊆ P_1 ⊆ ... by repeated extension.
    Staged {
        #[arg(long = "M")]
        dispersion: u64,
        #[arg(long)]
        stages: usize,
        #[arg(long, value_enum, default_value_t = ConventionArg::AtLeastOne)]
        convention: ConventionArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One application of the extension lemma.
    Lemma {
        /// Comma-separated elements of A.
        #[arg(long = "A", value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long = "N")]
        pairs: u64,
        #[arg(long = "M")]
        dispersion: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConventionArg {
    AtLeastOne,
    Literal,
}

impl From<ConventionArg> for StageConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::AtLeastOne => StageConvention::AtLeastOne,
            ConventionArg::Literal => StageConvention::Literal,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CheckProperty {
    Thick,
    ThickScan,
    ComplementThick,
    Syndetic,
    Dispersed,
    NotMp,
    WeakMixing,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub property: CheckProperty,
    #[command(flatten)]
    pub set: SetArgs,
    #[arg(long, env = HORIZON_ENV)]
    pub horizon: Option<u64>,
    #[arg(long)]
    pub run_target: Option<u64>,
    #[arg(long)]
    pub m: Option<u64>,
    /// Window length for syndeticity.
    #[arg(long = "L")]
    pub window: Option<u64>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SetArgs {
    /// `blocks:M`, `explicit:1..50`, `explicit:3,10,20`, or a JSON file.
    #[arg(long)]
    pub set: Option<String>,
    /// Pick one stage of a staged set, as an explicit set.
    #[arg(long)]
    pub stage: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum WitnessKind {
    /// Hitting times of a single pair.
    Hitting,
    Product,
    Multi,
    Delta,
    /// Product refutation for P(m) on `[1] × [1]`.
    Refute,
    /// Nested refinement of target sets.
    Refine,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(value_enum)]
    pub kind: WitnessKind,
    #[command(flatten)]
    pub set: SetArgs,
    #[arg(long, env = HORIZON_ENV)]
    pub horizon: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub exponents: Vec<u64>,
    /// Source word (or words, comma-separated).
    #[arg(long, value_delimiter = ',')]
    pub u: Vec<String>,
    /// Target word (or words, comma-separated).
    #[arg(long, value_delimiter = ',')]
    pub v: Vec<String>,
    /// Pairs `u/v`, comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub pairs: Vec<String>,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub depth: u64,
    /// Query JSON file instead of flags.
    #[arg(long)]
    pub query: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    /// JSON for standard output; empty when there is none.
    pub stdout: String,
    /// Human-readable lines for the diagnostic stream.
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn json(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, diagnostics: Vec::new() }
    }

    fn error(e: &Error) -> Self {
        Outcome { code: 2, stdout: String::new(), diagnostics: vec![format!("error: {e}")] }
    }

    fn note(mut self, line: impl Into<String>) -> Self {
        self.diagnostics.push(line.into());
        self
    }
}

/// Parses arguments and runs, honouring `--jobs`.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { code, stdout: String::new(), diagnostics: vec![e.to_string()] };
        }
    };
    let run = || run(cli.command);
    match cli.jobs {
        None => run(),
        Some(0) => Outcome::error(&Error::InvalidParameter("--jobs must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Outcome::error(&Error::Internal(e.to_string())),
        },
    }
}

pub fn run(command: Command) -> Outcome {
    let result = match command {
        Command::Build { kind } => build(kind),
        Command::Check(args) => check(args),
        Command::Witness(args) => witness(args),
        Command::Verify { file } => verify_file(&file),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn emit(text: String, out: Option<&Path>) -> Result<String> {
    if let Some(path) = out {
        std::fs::write(path, format!("{text}\n"))?;
    }
    Ok(text)
}

fn build(kind: BuildKind) -> Result<Outcome> {
    let config = ConstructionConfig::default();
    match kind {
        BuildKind::Blocks { m, out } => {
            let set = SpacingSet::Blocks(BlockFamily::new(m)?);
            Ok(Outcome::json(0, emit(canonical(&set)?, out.as_deref())?))
        }
        BuildKind::Staged { dispersion, stages, convention, out } => {
            let built = staged_p(dispersion, stages, convention.into(), &config)?;
            let sizes: Vec<String> = built.set.stages().iter().map(|s| s.len().to_string()).collect();
            Ok(Outcome::json(0, emit(cert::seal(&Body::StagedConstruction(built))?, out.as_deref())?)
                .note(format!("stage sizes: {}", sizes.join(", "))))
        }
        BuildKind::Lemma { a, pairs, dispersion, out } => {
            let a = ExplicitSet::from_u64s(a)?;
            let built = lemma_extend(&a, pairs, dispersion, &config)?;
            let note = format!("k = {}, {} scenarios, |B| = {}", built.k, built.scenarios.len(), built.b.len());
            Ok(Outcome::json(0, emit(cert::seal(&Body::LemmaTranscript(built))?, out.as_deref())?).note(note))
        }
    }
}

/// Parses `blocks:M`, `explicit:...` or a file holding a descriptor or a
/// sealed construction.
pub fn parse_set(spec: &str) -> Result<SpacingSet> {
    if let Some(m) = spec.strip_prefix("blocks:") {
        let m = m.trim().parse().map_err(|_| Error::Parse(format!("bad block base {m:?}")))?;
        return SpacingSet::blocks(m);
    }
    if let Some(items) = spec.strip_prefix("explicit:") {
        let mut elements = Vec::new();
        for item in items.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item.split_once("..") {
                Some((lo, hi)) => {
                    let lo: u64 = lo.parse().map_err(|_| Error::Parse(format!("bad range start {lo:?}")))?;
                    let hi: u64 = hi.parse().map_err(|_| Error::Parse(format!("bad range end {hi:?}")))?;
                    elements.extend((lo..=hi).map(BigUint::from));
                }
                None => elements.push(crate::word::parse_big(item)?),
            }
        }
        return SpacingSet::explicit(elements);
    }
    let bytes = std::fs::read(spec)?;
    if let Ok(set) = serde_json::from_slice::<SpacingSet>(&bytes) {
        return Ok(set);
    }
    cert::open(&bytes)?
        .spacing_set()
        .ok_or_else(|| Error::Parse(format!("{spec} does not describe a spacing set")))
}

impl SetArgs {
    fn resolve(&self) -> Result<Option<SpacingSet>> {
        let Some(spec) = &self.set else {
            return match self.stage {
                Some(_) => Err(Error::InvalidParameter("--stage needs --set".into())),
                None => Ok(None),
            };
        };
        let set = parse_set(spec)?;
        match (self.stage, set) {
            (None, set) => Ok(Some(set)),
            (Some(n), SpacingSet::Staged(s)) => s
                .stages()
                .get(n)
                .map(|st| Some(SpacingSet::Explicit(st.clone())))
                .ok_or_else(|| Error::InvalidParameter(format!("no stage {n}; last is {}", s.stages().len() - 1))),
            (Some(_), _) => Err(Error::InvalidParameter("--stage applies to staged sets only".into())),
        }
    }

    fn require(&self) -> Result<SpacingSet> {
        self.resolve()?.ok_or_else(|| Error::InvalidParameter("--set is required".into()))
    }
}

fn horizon(h: Option<u64>) -> Result<u64> {
    h.ok_or_else(|| Error::InvalidParameter(format!("--horizon is required (or set {HORIZON_ENV})")))
}

fn check(args: CheckArgs) -> Result<Outcome> {
    let h = horizon(args.horizon)?;
    let run_target = || args.run_target.ok_or_else(|| Error::InvalidParameter("--run-target is required".into()));
    let property = match args.property {
        CheckProperty::Thick => Property::Thick { run_target: run_target()? },
        CheckProperty::ThickScan => Property::ThickScan { run_target: run_target()? },
        CheckProperty::ComplementThick => Property::ComplementThick { run_target: run_target()? },
        CheckProperty::WeakMixing => Property::WeakMixing { run_target: run_target()? },
        CheckProperty::Syndetic => Property::Syndetic { bound: args.window },
        CheckProperty::Dispersed => {
            let q = args.q.as_deref().ok_or_else(|| Error::InvalidParameter("--q is required".into()))?;
            Property::Dispersed { q: crate::word::parse_big(q)? }
        }
        CheckProperty::NotMp => {
            Property::NotMp { m: args.m.ok_or_else(|| Error::InvalidParameter("--m is required".into()))? }
        }
    };
    let set = args.set.resolve()?;
    let report = run_check(set.as_ref(), h, property)?;
    let code = if report.passed() { 0 } else { 1 };
    let status = report.verdict.as_ref().map_or("no verdict", |v| v.status_name());
    let text = emit(cert::seal(&Body::CheckReport(report))?, args.out.as_deref())?;
    Ok(Outcome::json(code, text).note(status))
}

fn pattern(word: &str) -> Result<PartialPattern> {
    word.parse::<Word>()?.cylinder()
}

fn patterns(words: &[String]) -> Result<Vec<PartialPattern>> {
    words.iter().map(|w| pattern(w)).collect()
}

/// Repeats a single entry `m` times; otherwise the count must already be `m`.
fn spread<T: Clone>(items: Vec<T>, m: Option<u64>, what: &str) -> Result<Vec<T>> {
    match (m, items.len()) {
        (_, 0) => Err(Error::InvalidParameter(format!("--{what} is required"))),
        (Some(m), 1) => Ok(vec![items[0].clone(); m as usize]),
        (Some(m), n) if n as u64 != m => Err(Error::InvalidParameter(format!("--m is {m} but {n} {what} given"))),
        _ => Ok(items),
    }
}

fn witness(args: WitnessArgs) -> Result<Outcome> {
    if let Some(path) = &args.query {
        let query: Query = serde_json::from_slice(&std::fs::read(path)?)?;
        return finish_witness(WitnessReport::search(query)?, args.out.as_deref());
    }
    let h = horizon(args.horizon)?;
    let set = args.set.require()?;
    match args.kind {
        WitnessKind::Hitting => {
            let q = ProductQuery::new(set, vec![1], patterns(&args.u)?, patterns(&args.v)?, h)?;
            finish_witness(WitnessReport::search(Query::Product(q))?, args.out.as_deref())
        }
        WitnessKind::Product => {
            let r = args.exponents.len() as u64;
            if r == 0 {
                return Err(Error::InvalidParameter("--exponents is required".into()));
            }
            let q = ProductQuery::new(
                set,
                args.exponents.clone(),
                spread(patterns(&args.u)?, Some(r), "u")?,
                spread(patterns(&args.v)?, Some(r), "v")?,
                h,
            )?;
            finish_witness(WitnessReport::search(Query::Product(q))?, args.out.as_deref())
        }
        WitnessKind::Multi => {
            let mut sources = Vec::new();
            let mut targets = Vec::new();
            for pair in &args.pairs {
                let (u, v) =
                    pair.split_once('/').ok_or_else(|| Error::Parse(format!("pair {pair:?} is not of the form u/v")))?;
                sources.push(pattern(u)?);
                targets.push(pattern(v)?);
            }
            let sources = spread(sources, args.m, "pairs")?;
            let targets = spread(targets, args.m, "pairs")?;
            let exps = (1..=sources.len() as u64).collect();
            let q = ProductQuery::new(set, exps, sources, targets, h)?;
            finish_witness(WitnessReport::search(Query::Product(q))?, args.out.as_deref())
        }
        WitnessKind::Delta => {
            let [u] = args.u.as_slice() else {
                return Err(Error::InvalidParameter("--u takes exactly one word".into()));
            };
            let q = DeltaQuery { set, source: pattern(u)?, targets: spread(patterns(&args.v)?, args.m, "v")?, horizon: h };
            finish_witness(WitnessReport::search(Query::Delta(q))?, args.out.as_deref())
        }
        WitnessKind::Refute => {
            let exps = (!args.exponents.is_empty()).then_some(args.exponents.as_slice());
            let report = refute_product_transitivity(&set, exps, h)?;
            let code = if report.verdict.holds() { 0 } else { 1 };
            let status = report.verdict.status_name();
            let text = emit(cert::seal(&Body::RefutationReport(report))?, args.out.as_deref())?;
            Ok(Outcome::json(code, text).note(status))
        }
        WitnessKind::Refine => {
            let targets = spread(patterns(&args.v)?, args.m, "v")?;
            let report = nested_refinement(&set, &targets, args.depth, h)?;
            let code = if report.verdict.holds() { 0 } else { 1 };
            let note = format!("k = {:?}", report.times);
            let text = emit(cert::seal(&Body::RefinementReport(report))?, args.out.as_deref())?;
            Ok(Outcome::json(code, text).note(note))
        }
    }
}

fn finish_witness(report: WitnessReport, out: Option<&Path>) -> Result<Outcome> {
    let (code, note) = match report.witness {
        Some(n) => (0, format!("witness n = {n}")),
        None => (1, format!("no witness up to {}", report.query.horizon())),
    };
    let text = emit(cert::seal(&Body::WitnessReport(report))?, out)?;
    Ok(Outcome::json(code, text).note(note))
}

fn verify_file(file: &Path) -> Result<Outcome> {
    let bytes = std::fs::read(file)?;
    Ok(match cert::verify(&bytes)? {
        Verification::Accepted { kind } => Outcome::json(0, String::new()).note(format!("accepted {kind}")),
        Verification::Rejected { reason } => Outcome::json(1, String::new()).note(format!("rejected: {reason}")),
    })
}
