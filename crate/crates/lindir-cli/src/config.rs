//! Run configuration: JSON schema, compact value parsers, and validation.
//!
//! A run is fully described by a [`RunConfig`]. The same struct is embedded
//! verbatim in every report payload, so a report is always reproducible by
//! feeding its `config` object back through `--config`. Parsing is strict
//! (unknown fields are rejected) and validation reports the first problem
//! with a path-qualified message such as `operation.grid.reach: ...`.

use std::path::PathBuf;

use lindir::criteria::CriteriaOptions;
use lindir::deriv::QuadOptions;
use lindir::expr::Expr;
use lindir::fixtures::{build_fixture, FixtureSpec};
use lindir::grid::SliceGridSpec;
use lindir::index::{JointGridSpec, PointIndexOptions};
use lindir::pde::PdeOptions;
use lindir::weight::{build_weight, QClassOptions, WeightSpec};
use lindir::zeros::ZeroSearchOptions;
use lindir::C64;
use serde::{Deserialize, Serialize};

/// Version of the configuration and report schema this binary understands.
pub const SCHEMA_VERSION: u32 = 1;

fn default_schema_version() -> u32 {
    SCHEMA_VERSION
}

/// Complete description of one run.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    /// Function under test; required by every operation except
    /// `check-q` and `list-fixtures`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<FixtureSpec>,
    /// Weight `L`; accepts either the structured spec object or the compact
    /// string form (`"const:2"`, `"poly_abs:1,1,1"`, ...).
    #[serde(
        default,
        deserialize_with = "de_weight_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub weight: Option<WeightSpec>,
    /// Direction `b` as a list of `[re, im]` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec<C64>>,
    /// Worker threads; defaults to one per available core.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    #[serde(default, skip_serializing_if = "Output::is_empty")]
    pub output: Output,
    pub operation: Operation,
}

/// Where the report goes. Both destinations default to off: the JSON payload
/// is printed to standard output unless `json` names a file, and CSV tables
/// are only written when `csv_dir` is set.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Output {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv_dir: Option<PathBuf>,
}

impl Output {
    fn is_empty(&self) -> bool {
        self.json.is_none() && self.csv_dir.is_none()
    }
}

/// The requested computation, tagged by `name`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Operation {
    EstimateIndex(EstimateIndexOp),
    EstimateJointIndex(EstimateJointIndexOp),
    CompareDirections(CompareDirectionsOp),
    CheckQ(CheckQOp),
    Zeros(ZerosOp),
    Verify(VerifyOp),
    PdeCheck(PdeCheckOp),
    Growth(GrowthOp),
    ListFixtures,
}

impl Operation {
    /// Tag used in configs, report payloads and subcommand names.
    pub fn name(&self) -> &'static str {
        match self {
            Operation::EstimateIndex(_) => "estimate-index",
            Operation::EstimateJointIndex(_) => "estimate-joint-index",
            Operation::CompareDirections(_) => "compare-directions",
            Operation::CheckQ(_) => "check-q",
            Operation::Zeros(_) => "zeros",
            Operation::Verify(_) => "verify",
            Operation::PdeCheck(_) => "pde-check",
            Operation::Growth(_) => "growth",
            Operation::ListFixtures => "list-fixtures",
        }
    }
}

fn default_m_cap() -> usize {
    12
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EstimateIndexOp {
    /// Largest derivative order probed.
    pub m_cap: usize,
    pub grid: SliceGridSpec,
    pub point: PointIndexOptions,
    pub quad: QuadOptions,
}

impl Default for EstimateIndexOp {
    fn default() -> Self {
        EstimateIndexOp {
            m_cap: default_m_cap(),
            grid: SliceGridSpec::default(),
            point: PointIndexOptions::default(),
            quad: QuadOptions::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EstimateJointIndexOp {
    /// Per-axis probe caps, one entry per coordinate.
    pub kmax: Vec<usize>,
    /// Per-axis weights; when omitted the top-level `weight` is replicated
    /// across every axis.
    #[serde(deserialize_with = "de_weights_opt", skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<WeightSpec>>,
    pub grid: JointGridSpec,
    pub point: PointIndexOptions,
    pub quad: QuadOptions,
}

impl Default for EstimateJointIndexOp {
    fn default() -> Self {
        EstimateJointIndexOp {
            kmax: Vec::new(),
            weights: None,
            grid: JointGridSpec::default(),
            point: PointIndexOptions::default(),
            quad: QuadOptions::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CompareDirectionsOp {
    /// At least two directions, each a list of `[re, im]` pairs.
    pub directions: Vec<Vec<C64>>,
    pub m_cap: usize,
    pub grid: SliceGridSpec,
    pub point: PointIndexOptions,
    pub quad: QuadOptions,
}

impl Default for CompareDirectionsOp {
    fn default() -> Self {
        CompareDirectionsOp {
            directions: Vec::new(),
            m_cap: default_m_cap(),
            grid: SliceGridSpec::default(),
            point: PointIndexOptions::default(),
            quad: QuadOptions::default(),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CheckQOp {
    pub options: QClassOptions,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ZerosOp {
    /// Slice base point; the origin when omitted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z0: Option<Vec<C64>>,
    /// Search circle radius in the slice parameter.
    pub radius: f64,
    /// When set, also report the union of excluded disks of radius
    /// `excluded_r / L(z0 + t_k b)` around each zero (needs a weight).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excluded_r: Option<f64>,
    /// When set, also count zeros in the disk `|t - t0| <= r`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<CountQuery>,
    pub options: ZeroSearchOptions,
}

impl Default for ZerosOp {
    fn default() -> Self {
        ZerosOp {
            z0: None,
            radius: 10.0,
            excluded_r: None,
            count: None,
            options: ZeroSearchOptions::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountQuery {
    pub t0: C64,
    pub r: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyOp {
    pub criterion: CriterionKind,
    #[serde(default)]
    pub params: VerifyParams,
    #[serde(default)]
    pub options: CriteriaOptions,
}

/// Which characterization inequality `verify` should test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CriterionKind {
    /// Local two-radius bound on normalized derivatives above order `n0`.
    LocalDeriv,
    /// Maximum modulus ratio between circles of radii `r2/L` and `r1/L`.
    MaxMod,
    /// Derivative-of-order-`n_probe+1` versus lower orders (Hayman form).
    Hayman,
    /// Minimum versus maximum modulus on the same circle pair.
    MinMax,
    /// Logarithmic derivative bound away from excluded zero disks.
    LogDeriv,
    /// Zero counting of `F - w` in slice disks for each probe value `w`.
    ValueDist,
    /// Growth profile of `ln max |F|` along rays (empirical type).
    Growth,
}

impl CriterionKind {
    pub fn name(self) -> &'static str {
        match self {
            CriterionKind::LocalDeriv => "local-deriv",
            CriterionKind::MaxMod => "max-mod",
            CriterionKind::Hayman => "hayman",
            CriterionKind::MinMax => "min-max",
            CriterionKind::LogDeriv => "log-deriv",
            CriterionKind::ValueDist => "value-dist",
            CriterionKind::Growth => "growth",
        }
    }
}

/// Scalar knobs shared by the `verify` criteria; each criterion reads only
/// the fields it needs (documented per field).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyParams {
    /// `local-deriv`: base order.
    pub n0: usize,
    /// `local-deriv`, `max-mod`, `min-max`: inner radius factor.
    pub r1: f64,
    /// `local-deriv`, `max-mod`, `min-max`: outer radius factor.
    pub r2: f64,
    /// `hayman`: probe order (compares order `n_probe + 1` against lower).
    pub n_probe: usize,
    /// `log-deriv`, `value-dist`: disk radius factor.
    pub r: f64,
    /// `value-dist`: probed values `w`.
    pub values: Vec<C64>,
    /// `growth`: largest radius on the ray ladder.
    pub rmax: f64,
    /// `growth`: number of ladder rungs (at least 8).
    pub samples: usize,
    /// `growth`: ray base point; the origin when omitted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z0: Option<Vec<C64>>,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            n0: 0,
            r1: 1.0,
            r2: 2.0,
            n_probe: 1,
            r: 0.5,
            values: vec![C64::new(0.0, 0.0)],
            rmax: 50.0,
            samples: 32,
            z0: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PdeCheckOp {
    /// Coefficients `a_0 ... a_p` of `sum_j a_j(z) (d/db)^j F = rhs`, constant
    /// term first; at least two entries (order >= 1).
    pub coefficients: Vec<Expr>,
    /// Right-hand side; zero (homogeneous) when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Expr>,
    /// Slice ODE cross-check integrates from the base point to this `t`.
    #[serde(default = "default_t_end")]
    pub t_end: f64,
    #[serde(default = "default_checkpoints")]
    pub checkpoints: usize,
    /// Cross-check base point; the origin when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z0: Option<Vec<C64>>,
    /// Also estimate the solution's directional index (needs a weight).
    #[serde(default)]
    pub with_index: bool,
    #[serde(default = "default_m_cap")]
    pub m_cap: usize,
    #[serde(default)]
    pub grid: SliceGridSpec,
    #[serde(default)]
    pub point: PointIndexOptions,
    #[serde(default)]
    pub options: PdeOptions,
}

fn default_t_end() -> f64 {
    2.0
}

fn default_checkpoints() -> usize {
    8
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GrowthOp {
    /// Largest radius on the ray ladder.
    pub rmax: f64,
    /// Ladder rungs (at least 8).
    pub samples: usize,
    /// Ray base point; the origin when omitted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z0: Option<Vec<C64>>,
    pub options: CriteriaOptions,
}

impl Default for GrowthOp {
    fn default() -> Self {
        GrowthOp {
            rmax: 50.0,
            samples: 32,
            z0: None,
            options: CriteriaOptions::default(),
        }
    }
}

// --- compact value parsers -------------------------------------------------

/// Parse a complex number written compactly: `1`, `-2.5`, `3e-4`, `2i`,
/// `-i`, `1+2i`, `1.5e2-3e-1i`. Whitespace around the number is ignored.
pub fn parse_c64(input: &str) -> Result<C64, String> {
    let s = input.trim();
    if s.is_empty() {
        return Err(format!("empty complex number in {input:?}"));
    }
    let bad = |what: &str| format!("cannot parse {what:?} in complex number {input:?}");
    let real = |txt: &str| -> Result<f64, String> { txt.parse::<f64>().map_err(|_| bad(txt)) };
    // A signed coefficient, where a bare sign (or nothing) means +/-1.
    let imag = |txt: &str| -> Result<f64, String> {
        match txt {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            other => real(other),
        }
    };
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // Split at the last sign that starts the imaginary part, skipping
        // exponent signs (preceded by e/E) and a leading sign at position 0.
        let split = body
            .char_indices()
            .rev()
            .find(|&(pos, ch)| {
                (ch == '+' || ch == '-')
                    && pos > 0
                    && !matches!(body.as_bytes()[pos - 1], b'e' | b'E')
            })
            .map(|(pos, _)| pos);
        match split {
            Some(pos) => Ok(C64::new(real(&body[..pos])?, imag(&body[pos..])?)),
            None => Ok(C64::new(0.0, imag(body)?)),
        }
    } else {
        Ok(C64::new(real(s)?, 0.0))
    }
}

/// Parse a comma-separated list of compact complex numbers (a point of `C^n`
/// or a direction), e.g. `1,0` or `1+1i,2`.
pub fn parse_point(input: &str) -> Result<Vec<C64>, String> {
    let coords: Result<Vec<C64>, String> = input.split(',').map(parse_c64).collect();
    let coords = coords?;
    if coords.is_empty() {
        return Err("expected at least one coordinate".into());
    }
    Ok(coords)
}

/// Parse `;`-separated directions, each a comma-separated coordinate list,
/// e.g. `1,0;0,1`.
pub fn parse_directions(input: &str) -> Result<Vec<Vec<C64>>, String> {
    input.split(';').map(parse_point).collect()
}

/// Parse the compact weight grammar produced by
/// [`WeightSpec::canonical_name`]:
///
/// * `const:2` (a bare number like `2` is accepted as shorthand)
/// * `poly_abs:c0,c1,p`
/// * `slice_dependent:c0,c1,p@d1;d2;...` (direction components after `@`)
/// * `exp_abs:coeff,power`
pub fn parse_weight_spec(input: &str) -> Result<WeightSpec, String> {
    let s = input.trim();
    let (kind, rest) = match s.split_once(':') {
        Some(pair) => pair,
        None => {
            let value = s
                .parse::<f64>()
                .map_err(|_| format!("weight {input:?} is neither `kind:params` nor a constant"))?;
            return Ok(WeightSpec::Const { value });
        }
    };
    let floats = |txt: &str, n: usize| -> Result<Vec<f64>, String> {
        let vals: Result<Vec<f64>, String> = txt
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("cannot parse {p:?} as a number in weight {input:?}"))
            })
            .collect();
        let vals = vals?;
        if vals.len() != n {
            return Err(format!(
                "weight kind {kind:?} takes {n} parameters, got {} in {input:?}",
                vals.len()
            ));
        }
        Ok(vals)
    };
    match kind {
        "const" => {
            let v = floats(rest, 1)?;
            Ok(WeightSpec::Const { value: v[0] })
        }
        "poly_abs" => {
            let v = floats(rest, 3)?;
            Ok(WeightSpec::PolyAbs { c0: v[0], c1: v[1], p: v[2] })
        }
        "slice_dependent" => {
            let (params, dir) = rest
                .split_once('@')
                .ok_or_else(|| format!("slice_dependent weight needs `...@direction` in {input:?}"))?;
            let v = floats(params, 3)?;
            let direction: Result<Vec<C64>, String> = dir.split(';').map(parse_c64).collect();
            Ok(WeightSpec::SliceDependent {
                c0: v[0],
                c1: v[1],
                p: v[2],
                direction: direction?,
            })
        }
        "exp_abs" => {
            let v = floats(rest, 2)?;
            Ok(WeightSpec::ExpAbs { coeff: v[0], power: v[1] })
        }
        other => Err(format!(
            "unknown weight kind {other:?} (expected const, poly_abs, slice_dependent or exp_abs)"
        )),
    }
}

// Accept either the structured WeightSpec object or its compact string form.
#[derive(Deserialize)]
#[serde(untagged)]
enum WeightInput {
    Compact(String),
    Structured(WeightSpec),
}

impl WeightInput {
    fn resolve<E: serde::de::Error>(self) -> Result<WeightSpec, E> {
        match self {
            WeightInput::Structured(spec) => Ok(spec),
            WeightInput::Compact(text) => parse_weight_spec(&text).map_err(E::custom),
        }
    }
}

fn de_weight_opt<'de, D>(de: D) -> Result<Option<WeightSpec>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    Option::<WeightInput>::deserialize(de)?
        .map(WeightInput::resolve)
        .transpose()
}

fn de_weights_opt<'de, D>(de: D) -> Result<Option<Vec<WeightSpec>>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    Option::<Vec<WeightInput>>::deserialize(de)?
        .map(|v| v.into_iter().map(WeightInput::resolve).collect())
        .transpose()
}

// --- validation --------------------------------------------------------------

fn at<T>(path: &str, outcome: lindir::Result<T>) -> Result<T, String> {
    outcome.map_err(|e| format!("{path}: {e}"))
}

fn positive(path: &str, v: f64) -> Result<(), String> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(format!("{path}: must be positive and finite, got {v}"))
    }
}

fn finite_point(path: &str, p: &[C64]) -> Result<(), String> {
    if p.is_empty() {
        return Err(format!("{path}: needs at least one coordinate"));
    }
    if p.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(format!("{path}: coordinates must be finite"));
    }
    Ok(())
}

fn check_dim(path: &str, got: usize, expected: usize) -> Result<(), String> {
    if got == expected {
        Ok(())
    } else {
        Err(format!("{path}: expected {expected} coordinates, got {got}"))
    }
}

fn point_opts_ok(path: &str, opts: &PointIndexOptions) -> Result<(), String> {
    if !(opts.rel_slack >= 0.0 && opts.rel_slack.is_finite()) {
        return Err(format!("{path}.rel_slack: must be nonnegative and finite"));
    }
    positive(&format!("{path}.underflow"), opts.underflow)?;
    positive(&format!("{path}.significant"), opts.significant)
}

fn joint_grid_ok(path: &str, grid: &JointGridSpec) -> Result<(), String> {
    positive(&format!("{path}.radius"), grid.radius)?;
    if grid.points == 0 {
        return Err(format!("{path}.points: needs at least one point"));
    }
    Ok(())
}

impl RunConfig {
    /// Check the whole configuration; the first problem is reported with the
    /// JSON path that caused it. A passing configuration is guaranteed to
    /// reach the numerical code (which can still fail, but only for
    /// computational reasons, never for malformed input).
    pub fn validate(&self) -> Result<(), String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "schema_version: unsupported value {} (this build reads version {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        if self.jobs == Some(0) {
            return Err("jobs: must be at least 1".into());
        }
        // Build the fixture eagerly so bad parameters surface as
        // configuration errors, not mid-run failures.
        let fixture_dim = match &self.fixture {
            Some(spec) => Some(at("fixture", build_fixture(spec))?.dim()),
            None => None,
        };
        if let Some(dir) = &self.direction {
            finite_point("direction", dir)?;
            if dir.iter().all(|z| z.norm() == 0.0) {
                return Err("direction: must be nonzero".into());
            }
            if let Some(dim) = fixture_dim {
                check_dim("direction", dir.len(), dim)?;
            }
        }
        // The ambient dimension every per-operation object must agree with.
        let dim = fixture_dim.or_else(|| self.direction.as_ref().map(Vec::len));
        if let Some(dim) = dim {
            if let Some(spec) = &self.weight {
                at("weight", build_weight(spec, dim).map(|_| ()))?;
            }
        }

        let need_fixture = |op: &str| -> Result<usize, String> {
            fixture_dim.ok_or_else(|| format!("fixture: required by the {op} operation"))
        };
        let need_weight = |op: &str| -> Result<&WeightSpec, String> {
            self.weight
                .as_ref()
                .ok_or_else(|| format!("weight: required by the {op} operation"))
        };
        let need_direction = |op: &str| -> Result<&Vec<C64>, String> {
            self.direction
                .as_ref()
                .ok_or_else(|| format!("direction: required by the {op} operation"))
        };

        match &self.operation {
            Operation::EstimateIndex(op) => {
                need_fixture("estimate-index")?;
                need_weight("estimate-index")?;
                need_direction("estimate-index")?;
                if op.m_cap == 0 {
                    return Err("operation.m_cap: must be at least 1".into());
                }
                at("operation.grid", op.grid.validate())?;
                point_opts_ok("operation.point", &op.point)?;
                at("operation.quad", op.quad.validate())?;
            }
            Operation::EstimateJointIndex(op) => {
                let dim = need_fixture("estimate-joint-index")?;
                if op.kmax.is_empty() {
                    return Err("operation.kmax: required (one probe cap per coordinate)".into());
                }
                check_dim("operation.kmax", op.kmax.len(), dim)?;
                if op.kmax.iter().any(|&k| k == 0) {
                    return Err("operation.kmax: every component must be at least 1".into());
                }
                match &op.weights {
                    Some(ws) => {
                        check_dim("operation.weights", ws.len(), dim)?;
                        for (i, w) in ws.iter().enumerate() {
                            at(
                                &format!("operation.weights[{i}]"),
                                build_weight(w, dim).map(|_| ()),
                            )?;
                        }
                    }
                    None => {
                        need_weight("estimate-joint-index (without per-axis weights)")?;
                    }
                }
                joint_grid_ok("operation.grid", &op.grid)?;
                point_opts_ok("operation.point", &op.point)?;
                at("operation.quad", op.quad.validate())?;
            }
            Operation::CompareDirections(op) => {
                let dim = need_fixture("compare-directions")?;
                need_weight("compare-directions")?;
                if op.directions.len() < 2 {
                    return Err("operation.directions: needs at least two directions".into());
                }
                for (i, d) in op.directions.iter().enumerate() {
                    let path = format!("operation.directions[{i}]");
                    finite_point(&path, d)?;
                    check_dim(&path, d.len(), dim)?;
                    if d.iter().all(|z| z.norm() == 0.0) {
                        return Err(format!("{path}: must be nonzero"));
                    }
                }
                if op.m_cap == 0 {
                    return Err("operation.m_cap: must be at least 1".into());
                }
                at("operation.grid", op.grid.validate())?;
                point_opts_ok("operation.point", &op.point)?;
                at("operation.quad", op.quad.validate())?;
            }
            Operation::CheckQ(op) => {
                need_weight("check-q")?;
                let dir = need_direction("check-q")?;
                // check-q has no fixture; the direction fixes the dimension.
                at("weight", build_weight(need_weight("check-q")?, dir.len()).map(|_| ()))?;
                at("operation.options", op.options.validate())?;
            }
            Operation::Zeros(op) => {
                let dim = need_fixture("zeros")?;
                need_direction("zeros")?;
                if let Some(z0) = &op.z0 {
                    finite_point("operation.z0", z0)?;
                    check_dim("operation.z0", z0.len(), dim)?;
                }
                positive("operation.radius", op.radius)?;
                if let Some(r) = op.excluded_r {
                    if !(r >= 0.0 && r.is_finite()) {
                        return Err(
                            "operation.excluded_r: must be nonnegative and finite".into()
                        );
                    }
                    need_weight("zeros (with excluded_r)")?;
                }
                if let Some(c) = &op.count {
                    if !(c.t0.re.is_finite() && c.t0.im.is_finite()) {
                        return Err("operation.count.t0: must be finite".into());
                    }
                    if !(c.r >= 0.0 && c.r.is_finite()) {
                        return Err("operation.count.r: must be nonnegative and finite".into());
                    }
                }
                at("operation.options", op.options.validate())?;
            }
            Operation::Verify(op) => {
                need_fixture("verify")?;
                need_direction("verify")?;
                if op.criterion != CriterionKind::Growth {
                    need_weight("verify")?;
                }
                let p = &op.params;
                match op.criterion {
                    CriterionKind::LocalDeriv | CriterionKind::MaxMod | CriterionKind::MinMax => {
                        positive("operation.params.r1", p.r1)?;
                        positive("operation.params.r2", p.r2)?;
                        if p.r1 >= p.r2 {
                            return Err(format!(
                                "operation.params: r1 must be below r2, got r1={} r2={}",
                                p.r1, p.r2
                            ));
                        }
                    }
                    CriterionKind::LogDeriv => positive("operation.params.r", p.r)?,
                    CriterionKind::ValueDist => {
                        positive("operation.params.r", p.r)?;
                        if p.values.is_empty() {
                            return Err(
                                "operation.params.values: needs at least one probe value".into()
                            );
                        }
                        for (i, v) in p.values.iter().enumerate() {
                            if !(v.re.is_finite() && v.im.is_finite()) {
                                return Err(format!(
                                    "operation.params.values[{i}]: must be finite"
                                ));
                            }
                        }
                    }
                    CriterionKind::Hayman => {}
                    CriterionKind::Growth => {
                        positive("operation.params.rmax", p.rmax)?;
                        if p.samples < 8 {
                            return Err(
                                "operation.params.samples: needs at least 8 ladder rungs".into()
                            );
                        }
                        if let Some(z0) = &p.z0 {
                            finite_point("operation.params.z0", z0)?;
                            if let Some(dim) = fixture_dim {
                                check_dim("operation.params.z0", z0.len(), dim)?;
                            }
                        }
                    }
                }
                at("operation.options", op.options.validate())?;
            }
            Operation::PdeCheck(op) => {
                let dim = need_fixture("pde-check")?;
                need_direction("pde-check")?;
                if op.coefficients.len() < 2 {
                    return Err(
                        "operation.coefficients: needs at least two entries (order >= 1)".into(),
                    );
                }
                for (i, c) in op.coefficients.iter().enumerate() {
                    at(&format!("operation.coefficients[{i}]"), c.validate(dim))?;
                }
                if let Some(rhs) = &op.rhs {
                    at("operation.rhs", rhs.validate(dim))?;
                }
                positive("operation.t_end", op.t_end)?;
                if op.checkpoints == 0 {
                    return Err("operation.checkpoints: must be at least 1".into());
                }
                if let Some(z0) = &op.z0 {
                    finite_point("operation.z0", z0)?;
                    check_dim("operation.z0", z0.len(), dim)?;
                }
                if op.with_index {
                    need_weight("pde-check (with_index)")?;
                    if op.m_cap == 0 {
                        return Err("operation.m_cap: must be at least 1".into());
                    }
                    at("operation.grid", op.grid.validate())?;
                    point_opts_ok("operation.point", &op.point)?;
                }
                at("operation.options", op.options.validate())?;
            }
            Operation::Growth(op) => {
                let dim = need_fixture("growth")?;
                need_direction("growth")?;
                positive("operation.rmax", op.rmax)?;
                if op.samples < 8 {
                    return Err("operation.samples: needs at least 8 ladder rungs".into());
                }
                if let Some(z0) = &op.z0 {
                    finite_point("operation.z0", z0)?;
                    check_dim("operation.z0", z0.len(), dim)?;
                }
                at("operation.options", op.options.validate())?;
            }
            Operation::ListFixtures => {}
        }
        Ok(())
    }
}

/// Parse a configuration from JSON text. Schema violations come back with
/// the JSON path that failed, e.g. `operation.grid.reach: invalid type ...`.
pub fn parse_config(text: &str) -> Result<RunConfig, String> {
    let mut de = serde_json::Deserializer::from_str(text);
    let parsed: Result<RunConfig, _> = serde_path_to_error::deserialize(&mut de);
    match parsed {
        Ok(config) => Ok(config),
        Err(err) => {
            let path = err.path().to_string();
            let inner = err.into_inner();
            if path.is_empty() || path == "." {
                Err(inner.to_string())
            } else {
                Err(format!("{path}: {inner}"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sin_config(op: serde_json::Value) -> serde_json::Value {
        serde_json::json!({
            "fixture": {"name": "sin_linear", "params": {"c": [[1.0, 0.0]]}},
            "weight": "const:1",
            "direction": [[1.0, 0.0]],
            "operation": op,
        })
    }

    #[test]
    fn parses_compact_complex_forms() {
        let cases = [
            ("1", C64::new(1.0, 0.0)),
            ("-2.5", C64::new(-2.5, 0.0)),
            ("3e-4", C64::new(3e-4, 0.0)),
            ("2i", C64::new(0.0, 2.0)),
            ("i", C64::new(0.0, 1.0)),
            ("-i", C64::new(0.0, -1.0)),
            ("+i", C64::new(0.0, 1.0)),
            ("1+2i", C64::new(1.0, 2.0)),
            ("1-2i", C64::new(1.0, -2.0)),
            ("1+i", C64::new(1.0, 1.0)),
            ("1-i", C64::new(1.0, -1.0)),
            ("1.5e2-3e-1i", C64::new(150.0, -0.3)),
            ("-1e-2+2.5e+1i", C64::new(-0.01, 25.0)),
            (" 4 ", C64::new(4.0, 0.0)),
        ];
        for (text, want) in cases {
            let got = parse_c64(text).unwrap();
            assert_eq!(got, want, "parsing {text:?}");
        }
        for bad in ["", "1+2", "2j", "1++2i", "e5", "1,2"] {
            assert!(parse_c64(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn parses_points_and_direction_lists() {
        assert_eq!(
            parse_point("1+1i,2").unwrap(),
            vec![C64::new(1.0, 1.0), C64::new(2.0, 0.0)]
        );
        assert_eq!(
            parse_directions("1,0;0,1").unwrap(),
            vec![
                vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
                vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            ]
        );
        assert!(parse_point("").is_err());
    }

    #[test]
    fn weight_parser_round_trips_canonical_names() {
        let specs = [
            WeightSpec::Const { value: 2.0 },
            WeightSpec::PolyAbs { c0: 1.0, c1: 0.5, p: 2.0 },
            WeightSpec::SliceDependent {
                c0: 1.0,
                c1: 1.0,
                p: 1.0,
                direction: vec![C64::new(1.0, 0.0), C64::new(0.0, -2.0)],
            },
            WeightSpec::ExpAbs { coeff: 1.0, power: 2.0 },
        ];
        for spec in specs {
            let name = spec.canonical_name();
            let reparsed = parse_weight_spec(&name).unwrap();
            assert_eq!(
                reparsed.canonical_name(),
                name,
                "canonical name {name:?} should survive a parse round trip"
            );
        }
        assert_eq!(
            parse_weight_spec("3").unwrap().canonical_name(),
            "const:3"
        );
        assert!(parse_weight_spec("nope:1").is_err());
        assert!(parse_weight_spec("poly_abs:1,2").is_err());
        assert!(parse_weight_spec("slice_dependent:1,1,1").is_err());
    }

    #[test]
    fn config_round_trips_through_json() {
        let text = sin_config(serde_json::json!({
            "name": "estimate-index",
            "m_cap": 7,
            "grid": {"reach": 5.0, "bases": 6, "t_per_base": 4, "seed": 9},
        }))
        .to_string();
        let config = parse_config(&text).unwrap();
        config.validate().unwrap();
        match &config.operation {
            Operation::EstimateIndex(op) => {
                assert_eq!(op.m_cap, 7);
                assert_eq!(op.grid.seed, 9);
                // omitted blocks fall back to defaults
                assert_eq!(op.quad, QuadOptions::default());
            }
            other => panic!("wrong operation: {other:?}"),
        }
        let echoed = serde_json::to_string(&config).unwrap();
        let reparsed = parse_config(&echoed).unwrap();
        assert_eq!(
            serde_json::to_string(&reparsed).unwrap(),
            echoed,
            "serialized config must reparse to the same bytes"
        );
    }

    #[test]
    fn weight_accepts_structured_and_compact_forms() {
        let compact = parse_config(
            &sin_config(serde_json::json!({"name": "estimate-index"})).to_string(),
        )
        .unwrap();
        assert_eq!(
            compact.weight.as_ref().unwrap().canonical_name(),
            "const:1"
        );
        let mut structured = sin_config(serde_json::json!({"name": "estimate-index"}));
        structured["weight"] = serde_json::json!({"kind": "poly_abs", "c0": 1.0, "c1": 1.0, "p": 1.0});
        let parsed = parse_config(&structured.to_string()).unwrap();
        assert_eq!(
            parsed.weight.as_ref().unwrap().canonical_name(),
            "poly_abs:1,1,1"
        );
    }

    #[test]
    fn unknown_fields_are_rejected_with_paths() {
        // Top level.
        let mut top = sin_config(serde_json::json!({"name": "estimate-index"}));
        top["surprise"] = serde_json::json!(1);
        let err = parse_config(&top.to_string()).unwrap_err();
        assert!(err.contains("surprise"), "got: {err}");

        // Inside the tagged operation object.
        let op = sin_config(serde_json::json!({
            "name": "estimate-index",
            "m_xap": 12,
        }));
        let err = parse_config(&op.to_string()).unwrap_err();
        assert!(err.contains("m_xap"), "got: {err}");

        // Unknown operation tag.
        let tag = sin_config(serde_json::json!({"name": "frobnicate"}));
        let err = parse_config(&tag.to_string()).unwrap_err();
        assert!(err.contains("frobnicate"), "got: {err}");
    }

    #[test]
    fn type_errors_carry_json_paths() {
        // Inside the tagged operation object serde buffers the content, so
        // the path stops at `operation`; the message still carries the type
        // mismatch and the document position.
        let bad = sin_config(serde_json::json!({
            "name": "estimate-index",
            "grid": {"reach": "wide"},
        }));
        let err = parse_config(&bad.to_string()).unwrap_err();
        assert!(
            err.starts_with("operation") && err.contains("invalid type"),
            "error should be path-qualified, got: {err}"
        );

        // Outside the operation the path is exact.
        let bad_direction = serde_json::json!({
            "direction": [["east", 0.0]],
            "operation": {"name": "list-fixtures"},
        });
        let err = parse_config(&bad_direction.to_string()).unwrap_err();
        assert!(
            err.starts_with("direction[0]"),
            "error should name the element, got: {err}"
        );
    }

    #[test]
    fn validation_is_path_qualified_and_first_error_wins() {
        // Negative grid reach.
        let bad = sin_config(serde_json::json!({
            "name": "estimate-index",
            "grid": {"reach": -1.0},
        }));
        let config = parse_config(&bad.to_string()).unwrap();
        let err = config.validate().unwrap_err();
        assert!(err.starts_with("operation.grid:"), "got: {err}");

        // Missing weight.
        let mut missing = sin_config(serde_json::json!({"name": "estimate-index"}));
        missing.as_object_mut().unwrap().remove("weight");
        let config = parse_config(&missing.to_string()).unwrap();
        let err = config.validate().unwrap_err();
        assert!(err.starts_with("weight:"), "got: {err}");

        // Wrong schema version.
        let mut versioned = sin_config(serde_json::json!({"name": "estimate-index"}));
        versioned["schema_version"] = serde_json::json!(2);
        let config = parse_config(&versioned.to_string()).unwrap();
        let err = config.validate().unwrap_err();
        assert!(err.starts_with("schema_version:"), "got: {err}");

        // Dimension mismatch between fixture and direction.
        let mut dims = sin_config(serde_json::json!({"name": "estimate-index"}));
        dims["direction"] = serde_json::json!([[1.0, 0.0], [0.0, 1.0]]);
        let config = parse_config(&dims.to_string()).unwrap();
        let err = config.validate().unwrap_err();
        assert!(err.starts_with("direction:"), "got: {err}");
    }

    #[test]
    fn per_operation_requirements_are_enforced() {
        // compare-directions with one direction.
        let one = sin_config(serde_json::json!({
            "name": "compare-directions",
            "directions": [[[1.0, 0.0]]],
        }));
        let err = parse_config(&one.to_string()).unwrap().validate().unwrap_err();
        assert!(err.contains("at least two directions"), "got: {err}");

        // joint index without kmax.
        let nok = sin_config(serde_json::json!({"name": "estimate-joint-index"}));
        let err = parse_config(&nok.to_string()).unwrap().validate().unwrap_err();
        assert!(err.starts_with("operation.kmax:"), "got: {err}");

        // zeros with excluded_r but no weight.
        let mut zr = sin_config(serde_json::json!({
            "name": "zeros",
            "radius": 5.0,
            "excluded_r": 0.3,
        }));
        zr.as_object_mut().unwrap().remove("weight");
        let err = parse_config(&zr.to_string()).unwrap().validate().unwrap_err();
        assert!(err.starts_with("weight:"), "got: {err}");

        // verify growth needs no weight.
        let mut vg = sin_config(serde_json::json!({
            "name": "verify",
            "criterion": "growth",
        }));
        vg.as_object_mut().unwrap().remove("weight");
        parse_config(&vg.to_string()).unwrap().validate().unwrap();

        // pde-check with a single coefficient.
        let pde = sin_config(serde_json::json!({
            "name": "pde-check",
            "coefficients": [{"kind": "const", "value": [1.0, 0.0]}],
        }));
        let err = parse_config(&pde.to_string()).unwrap().validate().unwrap_err();
        assert!(err.starts_with("operation.coefficients:"), "got: {err}");

        // list-fixtures needs nothing.
        let lf = serde_json::json!({"operation": {"name": "list-fixtures"}});
        parse_config(&lf.to_string()).unwrap().validate().unwrap();
    }

    #[test]
    fn verify_params_guard_radius_order_and_probe_values() {
        let swapped = sin_config(serde_json::json!({
            "name": "verify",
            "criterion": "max-mod",
            "params": {"r1": 3.0, "r2": 1.0},
        }));
        let err = parse_config(&swapped.to_string())
            .unwrap()
            .validate()
            .unwrap_err();
        assert!(err.contains("r1 must be below r2"), "got: {err}");

        let empty = sin_config(serde_json::json!({
            "name": "verify",
            "criterion": "value-dist",
            "params": {"values": []},
        }));
        let err = parse_config(&empty.to_string())
            .unwrap()
            .validate()
            .unwrap_err();
        assert!(err.starts_with("operation.params.values:"), "got: {err}");
    }
}
