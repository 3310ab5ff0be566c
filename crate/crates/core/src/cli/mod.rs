//! Job documents, dispatch, and exit-status classification for the `cdstrat`
//! binary.
//!
//! A job is a single JSON document whose `mode` field selects the pipeline:
//!
//! ```json
//! {"mode": "toric", "rank": 2, "rays": [[1,0],[0,1],[-1,-1]],
//!  "max_cones": [[0,1],[1,2],[0,2]], "lambda": [1,2]}
//! ```
//!
//! An optional `options` object carries `format`, `verbosity`, `seed`,
//! `trials` and `weyl_cap`; command-line flags override it.

mod builtins;
mod render;

use std::io;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bruhat::{self, BruhatError, FlagReport};
use crate::exactlin::{IntVector, Rational};
use crate::ratmap::{self, MultiPoly, RatMapError, RationalMapSpec, ZeroLocusBound};
use crate::rootsys::{CartanSpec, ParabolicSpec, RootError, DEFAULT_WEYL_CAP};
use crate::strat::{self, Bound, EqualityWitness, StratError, StratSpec, Verdict};
use crate::toric::{self, Fan, FanError, ToricError, ToricReport};

pub use builtins::{builtin, builtins, Builtin};
pub use render::render;

/// Process exit status for each failure class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Io,
    Schema,
    Precondition,
    SizeCap,
    Consistency,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Io => 1,
            ErrorKind::Schema => 2,
            ErrorKind::Precondition => 3,
            ErrorKind::SizeCap => 4,
            ErrorKind::Consistency => 5,
        }
    }
}

#[derive(Debug, Error)]
pub enum JobError {
    #[error("cannot read input: {0}")]
    Io(#[from] io::Error),
    #[error("invalid job document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid job document: {0}")]
    Schema(String),
    #[error("unknown builtin {0:?} (see --list-builtins)")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Flag(#[from] BruhatError),
    #[error(transparent)]
    Strat(#[from] StratError),
    #[error(transparent)]
    RatMap(#[from] RatMapError),
}

impl From<FanError> for JobError {
    fn from(e: FanError) -> Self {
        JobError::Toric(ToricError::Fan(e))
    }
}

impl From<RootError> for JobError {
    fn from(e: RootError) -> Self {
        JobError::Flag(BruhatError::Root(e))
    }
}

fn root_kind(e: &RootError) -> ErrorKind {
    match e {
        RootError::UnknownType(_)
        | RootError::BadRank { .. }
        | RootError::NotSquare { .. }
        | RootError::ParabolicIndex { .. }
        | RootError::PairingLength { .. } => ErrorKind::Schema,
        RootError::WeylCap { .. } => ErrorKind::SizeCap,
        RootError::Diagonal { .. }
        | RootError::OffDiagonal { .. }
        | RootError::ZeroPattern { .. }
        | RootError::NotFiniteType { .. }
        | RootError::ZeroCocharacter => ErrorKind::Precondition,
    }
}

impl JobError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            JobError::Io(_) => ErrorKind::Io,
            JobError::Parse(_) | JobError::Schema(_) | JobError::UnknownBuiltin(_) => ErrorKind::Schema,
            JobError::Toric(e) => match e {
                ToricError::Fan(FanError::ZeroRank | FanError::RayLength { .. } | FanError::RayIndex { .. })
                | ToricError::LambdaLength { .. } => ErrorKind::Schema,
                ToricError::Fan(_) | ToricError::ZeroLambda => ErrorKind::Precondition,
                ToricError::SinkSource { .. } | ToricError::Consistency { .. } | ToricError::LinAlg(_) => {
                    ErrorKind::Consistency
                }
            },
            JobError::Flag(e) => match e {
                BruhatError::Root(r) => root_kind(r),
                BruhatError::NotMinimal { .. } => ErrorKind::Precondition,
                BruhatError::Consistency { .. } => ErrorKind::Consistency,
            },
            JobError::Strat(e) => match e {
                StratError::Negative { .. } | StratError::MissingDim { .. } | StratError::WitnessLength { .. } => {
                    ErrorKind::Schema
                }
                _ => ErrorKind::Precondition,
            },
            JobError::RatMap(e) => match e {
                RatMapError::ComponentCount { .. }
                | RatMapError::VariableCount { .. }
                | RatMapError::ExponentLength { .. } => ErrorKind::Schema,
                _ => ErrorKind::Precondition,
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind().exit_code()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Human,
    Json,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verbosity: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl_cap: Option<usize>,
}

impl Options {
    /// Fields set in `overrides` win.
    pub fn merged(&self, overrides: &Options) -> Options {
        Options {
            format: overrides.format.or(self.format),
            verbosity: overrides.verbosity.or(self.verbosity),
            seed: overrides.seed.or(self.seed),
            trials: overrides.trials.or(self.trials),
            weyl_cap: overrides.weyl_cap.or(self.weyl_cap),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricDoc {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    pub lambda: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CartanDoc {
    Name(String),
    Matrix(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagDoc {
    pub cartan: CartanDoc,
    #[serde(default)]
    pub parabolic: Vec<usize>,
    pub lambda_pairings: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumDoc {
    pub codim: i64,
    pub cd_y: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_y: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_z: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratDoc {
    pub dim_x: i64,
    pub strata: Vec<StratumDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exponents: Vec<u32>,
    pub coefficient: Coefficient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatMapDoc {
    pub n: usize,
    pub m: usize,
    pub components: Vec<Vec<TermDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Payload {
    Toric(ToricDoc),
    Flag(FlagDoc),
    Strat(StratDoc),
    Ratmap(RatMapDoc),
}

/// One self-describing job.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    #[serde(flatten)]
    pub payload: Payload,
    #[serde(default, skip_serializing_if = "is_default")]
    pub options: Options,
}

fn is_default(o: &Options) -> bool {
    *o == Options::default()
}

impl JobSpec {
    pub fn from_json(text: &str) -> Result<Self, JobError> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToricJobReport {
    #[serde(flatten)]
    pub report: ToricReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratJobReport {
    pub dim_x: u64,
    pub bound: Bound,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality: Option<Verdict>,
    pub assumptions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Report {
    Toric(ToricJobReport),
    Flag(FlagReport),
    Strat(StratJobReport),
    Ratmap(ZeroLocusBound),
}

impl Report {
    /// The headline cohomological-dimension value (a bound for strat/ratmap).
    pub fn cd(&self) -> u64 {
        match self {
            Report::Toric(r) => r.report.cd_minus_sink as u64,
            Report::Flag(r) => r.cd_value as u64,
            Report::Strat(r) => r.bound.value,
            Report::Ratmap(r) => r.bound as u64,
        }
    }
}

/// Runs the job's pipeline with its options (already merged with any
/// command-line overrides).
pub fn run(job: &JobSpec) -> Result<Report, JobError> {
    let opts = &job.options;
    match &job.payload {
        Payload::Toric(doc) => run_toric(doc).map(Report::Toric),
        Payload::Flag(doc) => {
            let spec = match &doc.cartan {
                CartanDoc::Name(name) => name.parse::<CartanSpec>()?,
                CartanDoc::Matrix(m) => CartanSpec::Matrix(m.clone()),
            };
            let rank = spec.matrix()?.rank();
            let j = ParabolicSpec::from_one_based(&doc.parabolic, rank)?;
            let cap = opts.weyl_cap.unwrap_or(DEFAULT_WEYL_CAP);
            Ok(Report::Flag(bruhat::cd_flag_complement_of_sink(&spec, &j, &doc.lambda_pairings, cap)?))
        }
        Payload::Strat(doc) => run_strat(doc).map(Report::Strat),
        Payload::Ratmap(doc) => {
            let map = ratmap_spec(doc)?;
            let trials = opts.trials.or(doc.trials).unwrap_or(ratmap::DEFAULT_TRIALS);
            let seed = opts.seed.unwrap_or(0);
            Ok(Report::Ratmap(ratmap::cd_bound_zero_locus(&map, trials, seed)?))
        }
    }
}

fn run_toric(doc: &ToricDoc) -> Result<ToricJobReport, JobError> {
    let rays = doc.rays.iter().map(|r| IntVector::from_i64s(r)).collect();
    let (fan, normalized) = Fan::normalized(doc.rank, rays, doc.max_cones.clone())?;
    let warnings =
        normalized.iter().map(|(i, ray, gcd)| format!("ray {i} = {ray} was not primitive; divided by {gcd}")).collect();
    let report = toric::analyze(&fan, &IntVector::from_i64s(&doc.lambda))?;
    Ok(ToricJobReport { report, warnings })
}

fn run_strat(doc: &StratDoc) -> Result<StratJobReport, JobError> {
    let rows: Vec<_> = doc.strata.iter().map(|s| (s.codim, s.cd_y, s.dim_y, s.dim_z)).collect();
    let spec = StratSpec::from_signed(doc.dim_x, &rows)?;
    let bound = strat::bound_cd(&spec)?;
    let equality = match &doc.witness {
        None => None,
        Some(w) => {
            let dims = w
                .iter()
                .enumerate()
                .map(|(k, &v)| {
                    u64::try_from(v).map_err(|_| StratError::Negative { stratum: k + 2, field: "witness", value: v })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Some(strat::check_equality(&spec, &EqualityWitness(dims))?)
        }
    };
    Ok(StratJobReport {
        dim_x: spec.dim_x,
        bound,
        equality,
        assumptions: vec!["lci strata and affine morphisms to Y_j are asserted by the user".into()],
    })
}

fn ratmap_spec(doc: &RatMapDoc) -> Result<RationalMapSpec, JobError> {
    let nvars = doc.n + 1;
    let mut components = Vec::with_capacity(doc.components.len());
    for (ci, terms) in doc.components.iter().enumerate() {
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let c = match &t.coefficient {
                Coefficient::Int(v) => Rational::from_integer((*v).into()),
                Coefficient::Text(s) => ratmap::parse_rational(s)
                    .ok_or_else(|| JobError::Schema(format!("component {ci}: bad coefficient {s:?}")))?,
            };
            parsed.push((t.exponents.clone(), c));
        }
        components.push(MultiPoly::from_terms(nvars, parsed)?);
    }
    Ok(RationalMapSpec::new(doc.n, doc.m, components)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_mode() {
        let toric = r#"{"mode":"toric","rank":1,"rays":[[1],[-1]],"max_cones":[[0],[1]],"lambda":[1]}"#;
        assert!(matches!(JobSpec::from_json(toric).unwrap().payload, Payload::Toric(_)));
        let flag = r#"{"mode":"flag","cartan":[[2]],"lambda_pairings":[1],"options":{"weyl_cap":10}}"#;
        let job = JobSpec::from_json(flag).unwrap();
        assert_eq!(job.options.weyl_cap, Some(10));
        assert!(matches!(job.payload, Payload::Flag(FlagDoc { cartan: CartanDoc::Matrix(_), .. })));
        let strat = r#"{"mode":"strat","dim_x":2,"strata":[{"codim":2,"cd_y":0},{"codim":0,"cd_y":0}]}"#;
        assert_eq!(run(&JobSpec::from_json(strat).unwrap()).unwrap().cd(), 0);
    }

    #[test]
    fn error_kinds() {
        let bad = JobSpec::from_json(r#"{"mode":"nope"}"#).unwrap_err();
        assert_eq!(bad.kind(), ErrorKind::Schema);

        let zero = r#"{"mode":"toric","rank":1,"rays":[[1],[-1]],"max_cones":[[0],[1]],"lambda":[0]}"#;
        assert_eq!(run(&JobSpec::from_json(zero).unwrap()).unwrap_err().exit_code(), 3);

        let cap = r#"{"mode":"flag","cartan":"A3","lambda_pairings":[1,1,1],"options":{"weyl_cap":4}}"#;
        assert_eq!(run(&JobSpec::from_json(cap).unwrap()).unwrap_err().exit_code(), 4);

        let neg = r#"{"mode":"strat","dim_x":2,"strata":[{"codim":-1,"cd_y":0},{"codim":0,"cd_y":0}]}"#;
        assert_eq!(run(&JobSpec::from_json(neg).unwrap()).unwrap_err().kind(), ErrorKind::Schema);

        let coef = r#"{"mode":"ratmap","n":1,"m":1,"components":[[{"exponents":[1,0],"coefficient":"x"}],[{"exponents":[0,1],"coefficient":1}]]}"#;
        assert_eq!(run(&JobSpec::from_json(coef).unwrap()).unwrap_err().kind(), ErrorKind::Schema);

        assert_eq!(
            JobError::Toric(ToricError::Consistency { cone: toric::Cone::new(vec![0]), detail: String::new() })
                .exit_code(),
            5
        );
    }

    #[test]
    fn options_merge_prefers_overrides() {
        let doc = Options { seed: Some(1), trials: Some(2), ..Options::default() };
        let flags = Options { seed: Some(9), ..Options::default() };
        let merged = doc.merged(&flags);
        assert_eq!((merged.seed, merged.trials), (Some(9), Some(2)));
    }
}
