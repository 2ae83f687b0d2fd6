//! Command-line front end: family files, analyses and JSON reports.

pub mod family_file;
pub mod parser;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{classify, Classification};
use crate::exactalg::rat::{parse_rat, Sampler};
use crate::exactalg::{fmt_rat, LinSubspace};
use crate::families::{fixture, union_dimension, FamilySpec, ParamPoint, FIXTURE_IDS};
use crate::focal::{characteristic_matrix, fixed_tangent_space, focal_divisor, tangent_envelope};
use crate::secondform::{patch, PATCH_IDS};
use crate::{Error, Result};

pub use family_file::{parse_family_file, serialize_family, FamilyFile};
pub use parser::{parse_poly, render_poly};
pub use verify::{run_suite, Suite, Target, Verdict};

pub const SEED_ENV: &str = "FOCALKIT_SEED";

/// Exit status of a run that completed but found a failing verdict.
pub const EXIT_VERIFICATION_FAILED: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Classify,
    Verify(Suite),
    Fixtures,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Classify => "classify",
            Command::Verify(_) => "verify",
            Command::Fixtures => "fixtures",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Fixture(String),
    Input(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub command: Command,
    pub source: Option<Source>,
    pub seed: u64,
    pub trials: usize,
    pub bases: Vec<ParamPoint>,
}

impl AnalysisRequest {
    pub fn new(command: Command) -> Self {
        AnalysisRequest {
            command,
            source: None,
            seed: 0,
            trials: 3,
            bases: Vec::new(),
        }
    }

    pub fn fixture(mut self, id: &str) -> Self {
        self.source = Some(Source::Fixture(id.into()));
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RequestEcho {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<Suite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub seed: u64,
    pub trials: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub base: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceReport {
    pub projective_dim: isize,
    pub basis: Vec<Vec<String>>,
}

impl SpaceReport {
    fn of(s: &LinSubspace) -> Self {
        SpaceReport {
            projective_dim: s.projective_dim(),
            basis: s.basis().iter().map(|v| v.iter().map(fmt_rat).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FocusEntry {
    pub point: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseReport {
    pub base: Vec<String>,
    pub focal_divisor: String,
    pub divisor_degree: usize,
    pub whole_fiber_focal: bool,
    /// The divisor was computed as a single determinant.
    pub via_determinant: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub foci: Vec<FocusEntry>,
    /// Factors without rational roots, rendered with their multiplicity.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub irrational_factors: Vec<FocusEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_tangent_space: Option<SpaceReport>,
    pub envelope: SpaceReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureEntry {
    pub id: &'static str,
    pub label: String,
    #[serde(rename = "N")]
    pub ambient: usize,
    pub k: usize,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorReport {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDoc {
    pub tool: &'static str,
    pub version: &'static str,
    pub request: RequestEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub union_dim: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bases: Vec<BaseReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_passed: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fixtures: Vec<FixtureEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub patches: Vec<FixtureEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
}

impl ReportDoc {
    fn new(req: &AnalysisRequest) -> Self {
        let (fixture, input) = match &req.source {
            Some(Source::Fixture(id)) => (Some(id.clone()), None),
            Some(Source::Input(p)) => (None, Some(p.display().to_string())),
            None => (None, None),
        };
        ReportDoc {
            tool: "focal-kit",
            version: env!("CARGO_PKG_VERSION"),
            request: RequestEcho {
                command: req.command.name(),
                suite: match req.command {
                    Command::Verify(s) => Some(s),
                    _ => None,
                },
                fixture,
                input,
                seed: req.seed,
                trials: req.trials,
                base: req.bases.iter().map(|t| t.values().iter().map(fmt_rat).collect()).collect(),
            },
            family: None,
            union_dim: None,
            bases: Vec::new(),
            classification: None,
            verdicts: Vec::new(),
            all_passed: None,
            fixtures: Vec::new(),
            patches: Vec::new(),
            notes: Vec::new(),
            error: None,
        }
    }

    /// Pretty JSON followed by a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// A finished run: the report and the process exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub doc: ReportDoc,
    pub exit_code: i32,
}

/// `0` success, `1` input error, `2` hypothesis not satisfied.
pub fn exit_code_of(e: &Error) -> i32 {
    match e {
        Error::Inapplicable(_) | Error::FocalFiber | Error::Indeterminate(_) => 2,
        Error::Shape { .. }
        | Error::MissingVariable(_)
        | Error::VariableMismatch
        | Error::Input(_)
        | Error::Syntax { .. }
        | Error::NonGeneric(_) => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Shape { .. } => "shape",
        Error::MissingVariable(_) => "missing-variable",
        Error::VariableMismatch => "variable-mismatch",
        Error::Input(_) => "input",
        Error::Syntax { .. } => "syntax",
        Error::NonGeneric(_) => "non-generic",
        Error::FocalFiber => "focal-fiber",
        Error::Inapplicable(_) => "inapplicable",
        Error::Indeterminate(_) => "indeterminate",
    }
}

fn load_family(source: &Source) -> Result<FamilySpec> {
    match source {
        Source::Fixture(id) => fixture(id),
        Source::Input(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
            parse_family_file(&text)
        }
    }
}

fn require_family(req: &AnalysisRequest) -> Result<FamilySpec> {
    match &req.source {
        Some(s) => load_family(s),
        None => Err(Error::input("a family is required: pass --fixture ID or --input PATH")),
    }
}

/// Explicit bases, checked against the family, or `trials` random ones.
fn bases_for(spec: &FamilySpec, req: &AnalysisRequest, sampler: &mut Sampler) -> Result<Vec<ParamPoint>> {
    if req.bases.is_empty() {
        return (0..req.trials).map(|_| spec.random_base(sampler)).collect();
    }
    for t in &req.bases {
        if t.values().len() != spec.n() {
            return Err(Error::Shape {
                expected: format!("{} parameter values", spec.n()),
                found: format!("{} in --base", t.values().len()),
            });
        }
        if !spec.is_independent_at(t) {
            return Err(Error::input(format!(
                "spanning points are dependent at {}",
                verify::base_string(t)
            )));
        }
    }
    Ok(req.bases.clone())
}

fn base_report(spec: &FamilySpec, t: &ParamPoint, sampler: &mut Sampler) -> Result<BaseReport> {
    let cm = characteristic_matrix(spec, t)?;
    let div = focal_divisor(&cm);
    let fixed = if spec.k() == 1 && !div.whole_fiber_focal {
        Some(SpaceReport::of(&fixed_tangent_space(&cm)?.subspace))
    } else {
        None
    };
    let env = tangent_envelope(spec, t, spec.n() + 2, sampler)?;
    Ok(BaseReport {
        base: t.values().iter().map(fmt_rat).collect(),
        focal_divisor: div.factored_string(),
        divisor_degree: div.degree,
        whole_fiber_focal: div.whole_fiber_focal,
        via_determinant: div.theorem_b,
        foci: div
            .roots
            .iter()
            .map(|(p, m)| FocusEntry {
                point: p.to_string(),
                multiplicity: *m,
            })
            .collect(),
        irrational_factors: div
            .residual
            .iter()
            .map(|(f, m)| FocusEntry {
                point: f.to_string(),
                multiplicity: *m,
            })
            .collect(),
        fixed_tangent_space: fixed,
        envelope: SpaceReport::of(&env.subspace),
    })
}

fn analyze(req: &AnalysisRequest, doc: &mut ReportDoc) -> Result<()> {
    let spec = require_family(req)?;
    doc.family = Some(FamilyFile::from_spec(&spec));
    let mut sampler = Sampler::new(req.seed);
    let bases = bases_for(&spec, req, &mut sampler)?;
    // each base gets its own stream so the fan-out stays deterministic
    doc.bases = bases
        .par_iter()
        .enumerate()
        .map(|(i, t)| base_report(&spec, t, &mut Sampler::substream(req.seed, i as u64 + 1)))
        .collect::<Result<Vec<_>>>()?;
    doc.union_dim = Some(union_dimension(&spec, req.trials.max(3), &mut sampler).dim);
    match classify(&spec, req.trials.max(3), &mut sampler) {
        Ok(c) => doc.classification = Some(c),
        Err(e) => doc.notes.push(format!("classification unavailable: {e}")),
    }
    Ok(())
}

fn classify_cmd(req: &AnalysisRequest, doc: &mut ReportDoc) -> Result<()> {
    let spec = require_family(req)?;
    doc.family = Some(FamilyFile::from_spec(&spec));
    let mut sampler = Sampler::new(req.seed);
    doc.classification = Some(classify(&spec, req.trials.max(3), &mut sampler)?);
    Ok(())
}

fn verify_targets(suite: Suite, req: &AnalysisRequest) -> Result<Vec<Target>> {
    match (&req.source, suite) {
        (Some(Source::Fixture(id)), _) if PATCH_IDS.contains(&id.as_str()) => Ok(vec![Target::Patch(patch(id)?)]),
        (Some(s), _) => Ok(vec![Target::Family(load_family(s)?)]),
        (None, Suite::Phi) => PATCH_IDS.iter().map(|id| patch(id).map(Target::Patch)).collect(),
        (None, Suite::Counterexample) => Ok(vec![Target::Family(fixture("F12")?)]),
        (None, _) => Err(Error::input(format!("suite {suite} needs --fixture ID or --input PATH"))),
    }
}

fn verify_cmd(suite: Suite, req: &AnalysisRequest, doc: &mut ReportDoc) -> Result<()> {
    let targets = verify_targets(suite, req)?;
    let mut sampler = Sampler::new(req.seed);
    for target in &targets {
        let bases = match target {
            Target::Family(spec) => {
                if targets.len() == 1 {
                    doc.family = Some(FamilyFile::from_spec(spec));
                }
                bases_for(spec, req, &mut sampler)?
            }
            Target::Patch(_) => Vec::new(),
        };
        doc.verdicts.extend(run_suite(suite, target, &bases, req.trials, &mut sampler)?);
    }
    doc.all_passed = Some(doc.verdicts.iter().all(|v| v.passed));
    Ok(())
}

fn fixtures_cmd(req: &AnalysisRequest, doc: &mut ReportDoc) -> Result<()> {
    for id in FIXTURE_IDS {
        let spec = fixture(id)?;
        doc.fixtures.push(FixtureEntry {
            id,
            label: spec.label().to_string(),
            ambient: spec.ambient(),
            k: spec.k(),
            n: spec.n(),
        });
    }
    for id in PATCH_IDS {
        let s = patch(id)?;
        doc.patches.push(FixtureEntry {
            id,
            label: s.label().to_string(),
            ambient: s.ambient(),
            k: 0,
            n: 2,
        });
    }
    if let Some(source) = &req.source {
        doc.family = Some(FamilyFile::from_spec(&load_family(source)?));
    }
    Ok(())
}

/// Executes a request. Errors are reported inside the document.
pub fn run(req: &AnalysisRequest) -> Outcome {
    let mut doc = ReportDoc::new(req);
    let result = if req.trials == 0 {
        Err(Error::input("--trials must be at least 1"))
    } else {
        match req.command {
            Command::Analyze => analyze(req, &mut doc),
            Command::Classify => classify_cmd(req, &mut doc),
            Command::Verify(suite) => verify_cmd(suite, req, &mut doc),
            Command::Fixtures => fixtures_cmd(req, &mut doc),
        }
    };
    let exit_code = match result {
        Ok(()) if doc.all_passed == Some(false) => EXIT_VERIFICATION_FAILED,
        Ok(()) => 0,
        Err(e) => {
            let code = exit_code_of(&e);
            doc.error = Some(ErrorReport {
                kind: error_kind(&e),
                message: e.to_string(),
            });
            code
        }
    };
    Outcome { doc, exit_code }
}

#[derive(Debug, Parser)]
#[command(name = "focal-kit", version, about = "Focal loci and Gauss-map degeneracy of families of linear spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
    /// Built-in family or surface patch.
    #[arg(long, global = true, conflicts_with = "input")]
    pub fixture: Option<String>,
    /// Family file in JSON.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Seed of the sampler; falls back to FOCALKIT_SEED, then 0.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, default_value_t = 3)]
    pub trials: usize,
    /// Explicit base point `t1,...,tn`; may be repeated.
    #[arg(long, global = true)]
    pub base: Vec<String>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Focal divisor and tangent envelope at base points.
    Analyze,
    /// Label a family by its focal behaviour.
    Classify,
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// List the built-in families and surface patches.
    Fixtures,
}

fn parse_base(text: &str) -> Result<ParamPoint> {
    text.split(',')
        .map(|v| parse_rat(v).ok_or_else(|| Error::input(format!("`{}` in --base is not a rational", v.trim()))))
        .collect::<Result<Vec<_>>>()
        .map(ParamPoint)
}

impl Cli {
    /// Builds a request, taking the seed from `env_seed` when `--seed` is absent.
    pub fn request(&self, env_seed: Option<&str>) -> Result<AnalysisRequest> {
        let seed = match (self.seed, env_seed) {
            (Some(s), _) => s,
            (None, Some(v)) => v
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("{SEED_ENV}={v:?} is not an unsigned 64-bit integer")))?,
            (None, None) => 0,
        };
        let source = match (&self.fixture, &self.input) {
            (Some(id), _) => Some(Source::Fixture(id.clone())),
            (None, Some(p)) => Some(Source::Input(p.clone())),
            (None, None) => None,
        };
        Ok(AnalysisRequest {
            command: match self.command {
                CliCommand::Analyze => Command::Analyze,
                CliCommand::Classify => Command::Classify,
                CliCommand::Verify { suite } => Command::Verify(suite),
                CliCommand::Fixtures => Command::Fixtures,
            },
            source,
            seed,
            trials: self.trials,
            bases: self.base.iter().map(|b| parse_base(b)).collect::<Result<_>>()?,
        })
    }
}

/// Entry point of the binary; returns the process exit status.
pub fn main_with<I, T>(args: I, env_seed: Option<&str>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let req = match cli.request(env_seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_of(&e);
        }
    };
    let outcome = run(&req);
    let json = outcome.doc.to_json();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => print!("{json}"),
    }
    if let Some(err) = &outcome.doc.error {
        eprintln!("error: {}", err.message);
    }
    outcome.exit_code
}
