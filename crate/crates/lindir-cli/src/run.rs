//! Execute a validated [`RunConfig`] and render the results.
//!
//! [`run`] dispatches to the library, [`payload`] wraps the outcome together
//! with the tool version and the exact configuration (so any report can be
//! replayed), and the writer helpers produce the JSON payload plus optional
//! CSV tables. Nothing here reads clocks or process identity: the payload
//! bytes are a pure function of the configuration.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use lindir::criteria::{
    growth_profile, hayman_check, local_derivative_check, log_derivative_check, max_modulus_check,
    min_max_check, value_distribution_check, GrowthProfile,
};
use lindir::fixtures::{build_fixture, list_fixtures, FixtureSpec};
use lindir::index::{
    compare_directions, estimate_index, estimate_joint_index, DirectionComparison, IndexEstimate,
    JointIndexEstimate, PointIndex,
};
use lindir::pde::{
    residual_check, slice_ode_crosscheck, solution_index_report, DirectionalPde,
    OdeCrosscheckReport, PdeResidualReport,
};
use lindir::report::{CriterionReport, Trend, Verdict};
use lindir::weight::{build_weight, check_q_class, QClassReport, WeightFunction, WeightSpec};
use lindir::zeros::{counting_function, excluded_region, find_slice_zeros, ExcludedRegion, SliceZeroSet};
use lindir::{C64, Direction, EntireFunction, Error};
use serde::Serialize;

use crate::config::{CriterionKind, Operation, RunConfig, SCHEMA_VERSION};

/// Tool identity embedded in every payload.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

pub fn tool_info() -> ToolInfo {
    ToolInfo {
        name: "lindir",
        version: env!("CARGO_PKG_VERSION"),
    }
}

/// Successful run: the configuration that produced it plus the result.
#[derive(Debug, Serialize)]
pub struct RunPayload {
    pub schema_version: u32,
    pub tool: ToolInfo,
    /// Feeding this object back through `--config` reproduces the run.
    pub config: RunConfig,
    pub result: OperationResult,
}

/// Failed run: same envelope, but a structured error instead of a result.
#[derive(Debug, Serialize)]
pub struct ErrorPayload {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub config: RunConfig,
    pub error: StructuredError,
}

#[derive(Debug, Serialize)]
pub struct StructuredError {
    /// Stable machine-readable kind (`input`, `accuracy`, ...).
    pub kind: &'static str,
    pub message: String,
}

/// Stable kind tag for a library error.
pub fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::Input(_) => "input",
        Error::Fixture(_) => "fixture",
        Error::Accuracy { .. } => "accuracy",
        Error::Resolution { .. } => "resolution",
        Error::Precondition(_) => "precondition",
        _ => "other",
    }
}

pub fn payload(config: &RunConfig, result: OperationResult) -> RunPayload {
    RunPayload {
        schema_version: SCHEMA_VERSION,
        tool: tool_info(),
        config: config.clone(),
        result,
    }
}

pub fn error_payload(config: &RunConfig, err: &Error) -> ErrorPayload {
    ErrorPayload {
        schema_version: SCHEMA_VERSION,
        tool: tool_info(),
        config: config.clone(),
        error: StructuredError {
            kind: error_kind(err),
            message: err.to_string(),
        },
    }
}

/// Result of one operation, tagged like the configuration's operation.
#[derive(Debug, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum OperationResult {
    EstimateIndex {
        estimate: IndexEstimate,
    },
    EstimateJointIndex {
        estimate: JointIndexEstimate,
    },
    CompareDirections {
        comparison: DirectionComparison,
    },
    CheckQ {
        report: QClassReport,
    },
    Zeros {
        zeros: SliceZeroSet,
        #[serde(skip_serializing_if = "Option::is_none")]
        excluded: Option<ExcludedRegion>,
        #[serde(skip_serializing_if = "Option::is_none")]
        count: Option<CountResult>,
    },
    Verify {
        #[serde(flatten)]
        outcome: VerifyOutcome,
    },
    PdeCheck {
        residual: PdeResidualReport,
        crosscheck: CrosscheckOutcome,
        #[serde(skip_serializing_if = "Option::is_none")]
        index: Option<IndexEstimate>,
    },
    Growth {
        profile: GrowthProfile,
    },
    ListFixtures {
        fixtures: Vec<FixtureRow>,
    },
}

/// `verify` yields a bare criterion report, except for the growth criterion
/// which carries its radius ladder along.
#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum VerifyOutcome {
    Report { report: CriterionReport },
    Profile { profile: GrowthProfile },
}

#[derive(Debug, Serialize)]
pub struct CountResult {
    pub t0: C64,
    pub r: f64,
    pub count: usize,
}

/// Slice ODE cross-check either ran or was skipped with the reason (the
/// integrator needs coefficients constant along the slice).
#[derive(Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CrosscheckOutcome {
    Done { report: OdeCrosscheckReport },
    Skipped { reason: String },
}

/// One row of `list-fixtures` output; unlike the static built-in table this
/// owns its strings so a configured custom fixture can be appended.
#[derive(Debug, Serialize)]
pub struct FixtureRow {
    pub name: String,
    pub params: String,
    pub notes: String,
}

fn need_fixture(config: &RunConfig) -> lindir::Result<EntireFunction> {
    let spec = config
        .fixture
        .as_ref()
        .ok_or_else(|| Error::input("fixture: required by this operation"))?;
    build_fixture(spec)
}

fn need_direction(config: &RunConfig) -> lindir::Result<Direction> {
    let dir = config
        .direction
        .as_ref()
        .ok_or_else(|| Error::input("direction: required by this operation"))?;
    Direction::new(dir.clone())
}

fn need_weight_spec(config: &RunConfig) -> lindir::Result<&WeightSpec> {
    config
        .weight
        .as_ref()
        .ok_or_else(|| Error::input("weight: required by this operation"))
}

fn need_weight(config: &RunConfig, dim: usize) -> lindir::Result<WeightFunction> {
    build_weight(need_weight_spec(config)?, dim)
}

fn origin(dim: usize) -> Vec<C64> {
    vec![C64::new(0.0, 0.0); dim]
}

/// Execute the configured operation. The configuration is re-validated, so
/// callers going through this entry point get the same guarantees as the
/// command line (`Err(Error::Input)` on anything malformed).
pub fn run(config: &RunConfig) -> lindir::Result<OperationResult> {
    config.validate().map_err(Error::input)?;
    match &config.operation {
        Operation::EstimateIndex(op) => {
            let f = need_fixture(config)?;
            let l = need_weight(config, f.dim())?;
            let b = need_direction(config)?;
            let estimate = estimate_index(&f, &l, &b, &op.grid, op.m_cap, &op.point, &op.quad)?;
            Ok(OperationResult::EstimateIndex { estimate })
        }
        Operation::EstimateJointIndex(op) => {
            let f = need_fixture(config)?;
            let dim = f.dim();
            let specs: Vec<WeightSpec> = match &op.weights {
                Some(ws) => ws.clone(),
                None => vec![need_weight_spec(config)?.clone(); dim],
            };
            let weights: Vec<WeightFunction> = specs
                .iter()
                .map(|s| build_weight(s, dim))
                .collect::<lindir::Result<_>>()?;
            let estimate =
                estimate_joint_index(&f, &weights, &op.kmax, &op.grid, &op.point, &op.quad)?;
            Ok(OperationResult::EstimateJointIndex { estimate })
        }
        Operation::CompareDirections(op) => {
            let f = need_fixture(config)?;
            let l = need_weight(config, f.dim())?;
            let dirs: Vec<Direction> = op
                .directions
                .iter()
                .map(|d| Direction::new(d.clone()))
                .collect::<lindir::Result<_>>()?;
            let comparison =
                compare_directions(&f, &l, &dirs, &op.grid, op.m_cap, &op.point, &op.quad)?;
            Ok(OperationResult::CompareDirections { comparison })
        }
        Operation::CheckQ(op) => {
            let b = need_direction(config)?;
            let l = need_weight(config, b.dim())?;
            let report = check_q_class(&l, &b, &op.options)?;
            Ok(OperationResult::CheckQ { report })
        }
        Operation::Zeros(op) => {
            let f = need_fixture(config)?;
            let b = need_direction(config)?;
            let z0 = op.z0.clone().unwrap_or_else(|| origin(f.dim()));
            let zeros = find_slice_zeros(&f, &z0, &b, op.radius, &op.options)?;
            let excluded = match op.excluded_r {
                Some(r) => {
                    let l = need_weight(config, f.dim())?;
                    Some(excluded_region(&zeros, &l, r)?)
                }
                None => None,
            };
            let count = match &op.count {
                Some(q) => Some(CountResult {
                    t0: q.t0,
                    r: q.r,
                    count: counting_function(&zeros, q.t0, q.r)?,
                }),
                None => None,
            };
            Ok(OperationResult::Zeros { zeros, excluded, count })
        }
        Operation::Verify(op) => {
            let f = need_fixture(config)?;
            let b = need_direction(config)?;
            let p = &op.params;
            let outcome = match op.criterion {
                CriterionKind::LocalDeriv => VerifyOutcome::Report {
                    report: local_derivative_check(
                        &f,
                        &need_weight(config, f.dim())?,
                        &b,
                        p.n0,
                        p.r1,
                        p.r2,
                        &op.options,
                    )?,
                },
                CriterionKind::MaxMod => VerifyOutcome::Report {
                    report: max_modulus_check(
                        &f,
                        &need_weight(config, f.dim())?,
                        &b,
                        p.r1,
                        p.r2,
                        &op.options,
                    )?,
                },
                CriterionKind::Hayman => VerifyOutcome::Report {
                    report: hayman_check(
                        &f,
                        &need_weight(config, f.dim())?,
                        &b,
                        p.n_probe,
                        &op.options,
                    )?,
                },
                CriterionKind::MinMax => VerifyOutcome::Report {
                    report: min_max_check(
                        &f,
                        &need_weight(config, f.dim())?,
                        &b,
                        p.r1,
                        p.r2,
                        &op.options,
                    )?,
                },
                CriterionKind::LogDeriv => VerifyOutcome::Report {
                    report: log_derivative_check(
                        &f,
                        &need_weight(config, f.dim())?,
                        &b,
                        p.r,
                        &op.options,
                    )?,
                },
                CriterionKind::ValueDist => VerifyOutcome::Report {
                    report: value_distribution_check(
                        &f,
                        &need_weight(config, f.dim())?,
                        &b,
                        &p.values,
                        p.r,
                        &op.options,
                    )?,
                },
                CriterionKind::Growth => {
                    let z0 = p.z0.clone().unwrap_or_else(|| origin(f.dim()));
                    VerifyOutcome::Profile {
                        profile: growth_profile(&f, &b, &z0, p.rmax, p.samples, &op.options)?,
                    }
                }
            };
            Ok(OperationResult::Verify { outcome })
        }
        Operation::PdeCheck(op) => {
            let f = need_fixture(config)?;
            let b = need_direction(config)?;
            let dim = f.dim();
            let coefficients: Vec<EntireFunction> = op
                .coefficients
                .iter()
                .enumerate()
                .map(|(j, expr)| expr.clone().into_function(format!("a{j}"), dim))
                .collect::<lindir::Result<_>>()?;
            let rhs = op
                .rhs
                .clone()
                .map(|expr| expr.into_function("rhs", dim))
                .transpose()?;
            let pde = DirectionalPde::new(b, coefficients, rhs)?;
            let z0 = op.z0.clone().unwrap_or_else(|| origin(dim));
            let crosscheck =
                match slice_ode_crosscheck(&pde, &f, &z0, op.t_end, op.checkpoints, &op.options) {
                    Ok(report) => CrosscheckOutcome::Done { report },
                    Err(Error::Precondition(reason)) => CrosscheckOutcome::Skipped { reason },
                    Err(other) => return Err(other),
                };
            let (residual, index) = if op.with_index {
                let l = need_weight(config, dim)?;
                let solved = solution_index_report(
                    &pde,
                    &f,
                    &l,
                    &op.grid,
                    op.m_cap,
                    &op.options,
                    &op.point,
                    &op.options.quad,
                )?;
                (solved.residual, solved.index)
            } else {
                (residual_check(&pde, &f, &op.options)?, None)
            };
            Ok(OperationResult::PdeCheck { residual, crosscheck, index })
        }
        Operation::Growth(op) => {
            let f = need_fixture(config)?;
            let b = need_direction(config)?;
            let z0 = op.z0.clone().unwrap_or_else(|| origin(f.dim()));
            let profile = growth_profile(&f, &b, &z0, op.rmax, op.samples, &op.options)?;
            Ok(OperationResult::Growth { profile })
        }
        Operation::ListFixtures => {
            let mut fixtures: Vec<FixtureRow> = list_fixtures()
                .into_iter()
                .map(|info| FixtureRow {
                    name: info.name.to_string(),
                    params: info.params.to_string(),
                    notes: info.notes.to_string(),
                })
                .collect();
            if let Some(spec) = &config.fixture {
                fixtures.push(custom_fixture_row(spec));
            }
            Ok(OperationResult::ListFixtures { fixtures })
        }
    }
}

fn custom_fixture_row(spec: &FixtureSpec) -> FixtureRow {
    FixtureRow {
        name: spec.name().to_string(),
        params: serde_json::to_string(spec).expect("fixture specs are plain data"),
        notes: "declared by this run's configuration".to_string(),
    }
}

// --- output writers ----------------------------------------------------------

/// Pretty JSON with a trailing newline; byte-deterministic for a fixed value
/// (struct fields serialize in declaration order, maps are sorted).
pub fn to_json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("payload serialization");
    bytes.push(b'\n');
    bytes
}

/// Write the JSON payload to `path`, or to standard output when `None`.
pub fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> std::io::Result<()> {
    let bytes = to_json_bytes(value);
    match path {
        Some(p) => fs::write(p, bytes),
        None => std::io::stdout().write_all(&bytes),
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Indeterminate => "indeterminate",
    }
}

fn trend_str(t: Option<Trend>) -> &'static str {
    match t {
        Some(Trend::Stable) => "stable",
        Some(Trend::Growing) => "growing",
        None => "",
    }
}

fn opt_f64(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

struct Table {
    writer: csv::Writer<Vec<u8>>,
}

impl Table {
    fn new(header: &[&str]) -> Table {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header).expect("csv header");
        Table { writer }
    }

    fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields).expect("csv row");
    }

    fn save(self, dir: &Path, file: &str, written: &mut Vec<PathBuf>) -> std::io::Result<()> {
        let bytes = self.writer.into_inner().expect("csv flush");
        let path = dir.join(file);
        fs::write(&path, bytes)?;
        written.push(path);
        Ok(())
    }
}

fn point_index_cells(status: &PointIndex) -> (&'static str, String) {
    match status {
        PointIndex::Found { n } => ("found", n.to_string()),
        PointIndex::NotFound => ("not_found", String::new()),
        PointIndex::Indeterminate => ("indeterminate", String::new()),
    }
}

fn per_point_table(estimates: &[(Option<usize>, &IndexEstimate)]) -> Table {
    let mut table = Table::new(&["direction", "base_index", "t_re", "t_im", "status", "n"]);
    for (dir, est) in estimates {
        let dir_cell = dir.map(|d| d.to_string()).unwrap_or_default();
        for row in &est.per_point {
            let (status, n) = point_index_cells(&row.status);
            table.row([
                dir_cell.clone(),
                row.base_index.to_string(),
                row.t.re.to_string(),
                row.t.im.to_string(),
                status.to_string(),
                n,
            ]);
        }
    }
    table
}

fn constants_table(reports: &[&CriterionReport]) -> Table {
    let mut table = Table::new(&[
        "name",
        "verdict",
        "empirical_constant",
        "refined_constant",
        "trend",
        "sample_size",
        "skipped",
    ]);
    for r in reports {
        table.row([
            r.name.clone(),
            verdict_str(r.verdict).to_string(),
            r.empirical_constant.to_string(),
            opt_f64(r.refined_constant),
            trend_str(r.trend).to_string(),
            r.sample_size.to_string(),
            r.skipped.to_string(),
        ]);
    }
    table
}

fn profile_table(profile: &GrowthProfile) -> Table {
    let mut table = Table::new(&["r", "ln_max"]);
    for row in &profile.rows {
        table.row([row.r.to_string(), row.ln_max.to_string()]);
    }
    table
}

/// Write the per-operation CSV tables into `dir` (created if needed) and
/// return the paths written.
pub fn write_csv_tables(result: &OperationResult, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    match result {
        OperationResult::EstimateIndex { estimate } => {
            per_point_table(&[(None, estimate)]).save(dir, "per_point.csv", &mut written)?;
        }
        OperationResult::EstimateJointIndex { estimate } => {
            let mut table = Table::new(&["point", "status", "n"]);
            for (i, status) in estimate.per_point.iter().enumerate() {
                let (status, n) = point_index_cells(status);
                table.row([i.to_string(), status.to_string(), n]);
            }
            table.save(dir, "per_point.csv", &mut written)?;
        }
        OperationResult::CompareDirections { comparison } => {
            let rows: Vec<(Option<usize>, &IndexEstimate)> = comparison
                .estimates
                .iter()
                .enumerate()
                .map(|(i, est)| (Some(i), est))
                .collect();
            per_point_table(&rows).save(dir, "per_point.csv", &mut written)?;
        }
        OperationResult::CheckQ { report } => {
            let mut table = Table::new(&[
                "eta",
                "lambda1",
                "lambda2",
                "refined_lambda1",
                "refined_lambda2",
                "sample_size",
            ]);
            for row in &report.rows {
                table.row([
                    row.eta.to_string(),
                    row.lambda1.to_string(),
                    row.lambda2.to_string(),
                    row.refined_lambda1.to_string(),
                    row.refined_lambda2.to_string(),
                    row.sample_size.to_string(),
                ]);
            }
            table.save(dir, "lambda.csv", &mut written)?;
            constants_table(&[&report.report]).save(dir, "constants.csv", &mut written)?;
        }
        OperationResult::Zeros { zeros, .. } => {
            let mut table = Table::new(&["t_re", "t_im", "multiplicity", "residual"]);
            for z in &zeros.zeros {
                table.row([
                    z.t.re.to_string(),
                    z.t.im.to_string(),
                    z.multiplicity.to_string(),
                    z.residual.to_string(),
                ]);
            }
            table.save(dir, "zeros.csv", &mut written)?;
        }
        OperationResult::Verify { outcome } => match outcome {
            VerifyOutcome::Report { report } => {
                constants_table(&[report]).save(dir, "constants.csv", &mut written)?;
            }
            VerifyOutcome::Profile { profile } => {
                constants_table(&[&profile.report]).save(dir, "constants.csv", &mut written)?;
                profile_table(profile).save(dir, "profile.csv", &mut written)?;
            }
        },
        OperationResult::PdeCheck { residual, crosscheck, index } => {
            let mut reports = vec![&residual.report];
            if let CrosscheckOutcome::Done { report } = crosscheck {
                reports.push(&report.report);
                let mut table = Table::new(&[
                    "t",
                    "reference_re",
                    "reference_im",
                    "integrated_re",
                    "integrated_im",
                    "error",
                ]);
                for row in &report.checkpoints {
                    table.row([
                        row.t.to_string(),
                        row.reference.re.to_string(),
                        row.reference.im.to_string(),
                        row.integrated.re.to_string(),
                        row.integrated.im.to_string(),
                        row.error.to_string(),
                    ]);
                }
                table.save(dir, "checkpoints.csv", &mut written)?;
            }
            constants_table(&reports).save(dir, "constants.csv", &mut written)?;
            if let Some(estimate) = index {
                per_point_table(&[(None, estimate)]).save(dir, "per_point.csv", &mut written)?;
            }
        }
        OperationResult::Growth { profile } => {
            constants_table(&[&profile.report]).save(dir, "constants.csv", &mut written)?;
            profile_table(profile).save(dir, "profile.csv", &mut written)?;
        }
        OperationResult::ListFixtures { fixtures } => {
            let mut table = Table::new(&["name", "params", "notes"]);
            for row in fixtures {
                table.row([row.name.clone(), row.params.clone(), row.notes.clone()]);
            }
            table.save(dir, "fixtures.csv", &mut written)?;
        }
    }
    Ok(written)
}
