//! Upper bound for `cd(X ∖ Z_1)` from an affine-bundle stratification, and
//! the dimension criterion certifying that the bound is attained.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bruhat::FlagReport;
use crate::toric::ToricReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StratError {
    #[error("a stratification needs at least 2 strata, got {0}")]
    TooFewStrata(usize),
    #[error("stratum {stratum}: field {field} is negative ({value})")]
    Negative { stratum: usize, field: &'static str, value: i64 },
    #[error("stratum {stratum}: cd(Y) = {cd_y} exceeds dim(Y) = {dim_y}")]
    CdExceedsDim { stratum: usize, cd_y: u64, dim_y: u64 },
    #[error("stratum {stratum}: codimension {codim} exceeds dim X = {dim_x}")]
    CodimExceedsDim { stratum: usize, codim: u64, dim_x: u64 },
    #[error("stratum {stratum}: {field} is required for the equality check")]
    MissingDim { stratum: usize, field: &'static str },
    #[error("witness has {found} entries, expected one per stratum j >= 2 ({expected})")]
    WitnessLength { expected: usize, found: usize },
}

/// One stratum `Z_j ∖ Z_{j-1}` with its affine base `Y_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub codim: u64,
    pub cd_y: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_y: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_z: Option<u64>,
}

/// Strata in filtration order; stratum 1 is the removed closed set `Z_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratSpec {
    pub dim_x: u64,
    pub strata: Vec<Stratum>,
}

/// Dimensions of the closed subvarieties `Z'_j`, one per stratum `j >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EqualityWitness(pub Vec<u64>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: u64,
    /// 1-based index of the stratum attaining the maximum (first one on ties).
    pub argmax: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    EqualityCertified,
    BoundOnly { failing_strata: Vec<usize> },
}

impl StratSpec {
    /// Builds a spec from signed input, rejecting negative entries.
    pub fn from_signed(dim_x: i64, strata: &[(i64, i64, Option<i64>, Option<i64>)]) -> Result<Self, StratError> {
        let nonneg = |stratum: usize, field: &'static str, value: i64| {
            u64::try_from(value).map_err(|_| StratError::Negative { stratum, field, value })
        };
        let dim_x = nonneg(0, "dim_x", dim_x)?;
        let strata = strata
            .iter()
            .enumerate()
            .map(|(i, &(codim, cd_y, dim_y, dim_z))| {
                let j = i + 1;
                Ok(Stratum {
                    codim: nonneg(j, "codim", codim)?,
                    cd_y: nonneg(j, "cd_y", cd_y)?,
                    dim_y: dim_y.map(|v| nonneg(j, "dim_y", v)).transpose()?,
                    dim_z: dim_z.map(|v| nonneg(j, "dim_z", v)).transpose()?,
                })
            })
            .collect::<Result<_, StratError>>()?;
        Ok(StratSpec { dim_x, strata })
    }

    pub fn validate(&self) -> Result<(), StratError> {
        if self.strata.len() < 2 {
            return Err(StratError::TooFewStrata(self.strata.len()));
        }
        for (i, s) in self.strata.iter().enumerate() {
            if let Some(dim_y) = s.dim_y {
                if s.cd_y > dim_y {
                    return Err(StratError::CdExceedsDim { stratum: i + 1, cd_y: s.cd_y, dim_y });
                }
            }
            if s.codim > self.dim_x {
                return Err(StratError::CodimExceedsDim { stratum: i + 1, codim: s.codim, dim_x: self.dim_x });
            }
        }
        Ok(())
    }
}

/// `max_{j >= 2} (cd(Y_j) + codim_j)`.
pub fn bound_cd(spec: &StratSpec) -> Result<Bound, StratError> {
    spec.validate()?;
    let (argmax, value) = spec.strata[1..]
        .iter()
        .enumerate()
        .map(|(i, s)| (i + 2, s.cd_y + s.codim))
        .fold((0, 0), |best, cur| if cur.1 > best.1 || best.0 == 0 { cur } else { best });
    let mut warnings = Vec::new();
    if value >= spec.dim_x {
        warnings.push(format!(
            "bound {value} >= dim X = {}; the true cd of the complement of a nonempty closed set is < dim X",
            spec.dim_x
        ));
    }
    Ok(Bound { value, argmax, warnings })
}

/// Certifies equality when `dim Z'_j + dim Z_j = dim Y_j + dim X` for every
/// stratum `j >= 2`. Witness entry `k` belongs to stratum `k + 2`.
pub fn check_equality(spec: &StratSpec, witness: &EqualityWitness) -> Result<Verdict, StratError> {
    spec.validate()?;
    let r = spec.strata.len();
    if witness.0.len() != r - 1 {
        return Err(StratError::WitnessLength { expected: r - 1, found: witness.0.len() });
    }
    let mut failing = Vec::new();
    for (k, (s, &dim_zprime)) in spec.strata[1..].iter().zip(&witness.0).enumerate() {
        let stratum = k + 2;
        let dim_y = s.dim_y.ok_or(StratError::MissingDim { stratum, field: "dim_y" })?;
        let dim_z = s.dim_z.ok_or(StratError::MissingDim { stratum, field: "dim_z" })?;
        if dim_zprime + dim_z != dim_y + spec.dim_x {
            failing.push(stratum);
        }
    }
    Ok(if failing.is_empty() { Verdict::EqualityCertified } else { Verdict::BoundOnly { failing_strata: failing } })
}

/// Dimension data of one fixed component of a `G_m`-action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BbCell {
    pub dim_y: usize,
    pub dim_plus: usize,
    pub dim_minus: usize,
    pub is_sink: bool,
}

/// The plus-decomposition as a stratification: the sink first, then the
/// plus cells by increasing dimension. Each fixed component is projective,
/// so `cd(Y_s) = dim Y_s`. The witness is the closure of each minus cell.
pub fn transcribe_bb(dim_x: usize, cells: &[BbCell]) -> (StratSpec, EqualityWitness) {
    let mut order: Vec<&BbCell> = cells.iter().collect();
    order.sort_by_key(|c| (!c.is_sink, c.dim_plus));
    let strata = order
        .iter()
        .map(|c| Stratum {
            codim: (dim_x - c.dim_plus) as u64,
            cd_y: c.dim_y as u64,
            dim_y: Some(c.dim_y as u64),
            dim_z: Some(c.dim_plus as u64),
        })
        .collect();
    let witness = EqualityWitness(order[1..].iter().map(|c| c.dim_minus as u64).collect());
    (StratSpec { dim_x: dim_x as u64, strata }, witness)
}

pub fn transcribe_toric(report: &ToricReport) -> (StratSpec, EqualityWitness) {
    let cells: Vec<BbCell> = report
        .components
        .iter()
        .map(|c| BbCell { dim_y: c.dim_y, dim_plus: c.dim_plus, dim_minus: c.dim_minus, is_sink: c.is_sink })
        .collect();
    transcribe_bb(report.rank, &cells)
}

pub fn transcribe_flag(report: &FlagReport) -> (StratSpec, EqualityWitness) {
    let cells: Vec<BbCell> = report
        .cosets
        .iter()
        .map(|c| BbCell {
            dim_y: c.component_dim,
            dim_plus: c.cell_dim_plus,
            dim_minus: c.cell_dim_minus,
            is_sink: c.is_sink,
        })
        .collect();
    transcribe_bb(report.dim_gp, &cells)
}
