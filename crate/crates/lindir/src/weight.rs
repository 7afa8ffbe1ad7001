//! Positive weight functions `L` and their disk-ratio bounds.
//!
//! For a weight `L`, a direction `b` and a slice point `z0 + t0*b`, the local
//! bounds are the extremes of the ratio `L(z0 + t*b) / L(z0 + t0*b)` over the
//! disk `|t - t0| <= eta / L(z0 + t0*b)`. A weight is admissible for index
//! estimation along `b` when those extremes stay away from zero and infinity
//! uniformly in `(z0, t0)`. [`check_q_class`] probes that condition over a
//! sampled region and reports per-`eta` bounds with witnesses; it is a
//! falsification check, not a membership proof.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{DiskSampler, PolydiscSampler, RegionSpec};
use crate::point::{euclidean_norm, inner, translate, translate_into, Direction, C64};
use crate::report::{CriterionReport, Trend, Verdict, WitnessSample};

/// Continuous positive weight on `C^n`.
#[derive(Clone)]
pub struct WeightFunction {
    name: String,
    dim: usize,
    eval: Arc<dyn Fn(&[C64]) -> f64 + Send + Sync>,
}

impl WeightFunction {
    pub fn from_fn<F>(name: impl Into<String>, dim: usize, eval: F) -> Self
    where
        F: Fn(&[C64]) -> f64 + Send + Sync + 'static,
    {
        WeightFunction {
            name: name.into(),
            dim,
            eval: Arc::new(eval),
        }
    }

    /// The constant weight `L = value`.
    pub fn constant(dim: usize, value: f64) -> Result<Self> {
        build_weight(&WeightSpec::Const { value }, dim)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Evaluate the weight, enforcing the positivity contract.
    ///
    /// Overflow to infinity (possible for exponential weights far out) is
    /// reported as an error rather than propagated into ratios.
    pub fn evaluate(&self, z: &[C64]) -> Result<f64> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "weight evaluation",
                expected: self.dim,
                got: z.len(),
            });
        }
        let v = (self.eval)(z);
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Input(format!(
                "weight {} must be positive and finite, got {v:e}",
                self.name
            )));
        }
        Ok(v)
    }
}

impl fmt::Debug for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightFunction")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .finish()
    }
}

/// Built-in weight families, serializable for configs and reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightSpec {
    /// `L = value`.
    Const { value: f64 },
    /// `L(z) = c0 + c1 * |z|^p` with the Euclidean norm over all coordinates.
    PolyAbs { c0: f64, c1: f64, p: f64 },
    /// `L(z) = c0 + c1 * |<z, d>|^p`, sensitive only to the component of `z`
    /// along `d` (second pairing argument conjugated).
    SliceDependent {
        c0: f64,
        c1: f64,
        p: f64,
        direction: Vec<C64>,
    },
    /// `L(z) = exp(coeff * |z|^power)`. Overflows past moderate radii when
    /// `coeff > 0`; callers get an evaluation error rather than infinity.
    ExpAbs { coeff: f64, power: f64 },
}

impl WeightSpec {
    /// Canonical compact form, also accepted by the CLI weight parser.
    pub fn canonical_name(&self) -> String {
        fn c64(z: &C64) -> String {
            if z.im == 0.0 {
                format!("{}", z.re)
            } else if z.im < 0.0 {
                format!("{}{}i", z.re, z.im)
            } else {
                format!("{}+{}i", z.re, z.im)
            }
        }
        match self {
            WeightSpec::Const { value } => format!("const:{value}"),
            WeightSpec::PolyAbs { c0, c1, p } => format!("poly_abs:{c0},{c1},{p}"),
            WeightSpec::SliceDependent { c0, c1, p, direction } => {
                let dir: Vec<String> = direction.iter().map(c64).collect();
                format!("slice_dependent:{c0},{c1},{p}@{}", dir.join(";"))
            }
            WeightSpec::ExpAbs { coeff, power } => format!("exp_abs:{coeff},{power}"),
        }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        let positive = |v: f64, what: &str| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::input(format!("weight parameter {what} must be positive and finite, got {v}")))
            }
        };
        let nonnegative = |v: f64, what: &str| {
            if v >= 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::input(format!("weight parameter {what} must be nonnegative and finite, got {v}")))
            }
        };
        match self {
            WeightSpec::Const { value } => positive(*value, "const value"),
            WeightSpec::PolyAbs { c0, c1, p } => {
                positive(*c0, "c0")?;
                nonnegative(*c1, "c1")?;
                positive(*p, "p")
            }
            WeightSpec::SliceDependent { c0, c1, p, direction } => {
                positive(*c0, "c0")?;
                nonnegative(*c1, "c1")?;
                positive(*p, "p")?;
                if direction.len() != dim {
                    return Err(Error::DimensionMismatch {
                        context: "slice-dependent weight direction",
                        expected: dim,
                        got: direction.len(),
                    });
                }
                if euclidean_norm(direction) == 0.0 || direction.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                    return Err(Error::input("slice-dependent weight direction must be nonzero and finite"));
                }
                Ok(())
            }
            WeightSpec::ExpAbs { coeff, power } => {
                if !coeff.is_finite() {
                    return Err(Error::input(format!("weight parameter coeff must be finite, got {coeff}")));
                }
                positive(*power, "power")
            }
        }
    }
}

/// Build a weight evaluator from its family spec for dimension `dim`.
pub fn build_weight(spec: &WeightSpec, dim: usize) -> Result<WeightFunction> {
    if dim == 0 {
        return Err(Error::input("weight dimension must be at least 1"));
    }
    spec.validate(dim)?;
    let name = spec.canonical_name();
    let f: Arc<dyn Fn(&[C64]) -> f64 + Send + Sync> = match spec.clone() {
        WeightSpec::Const { value } => Arc::new(move |_z| value),
        WeightSpec::PolyAbs { c0, c1, p } => {
            Arc::new(move |z| c0 + c1 * euclidean_norm(z).powf(p))
        }
        WeightSpec::SliceDependent { c0, c1, p, direction } => {
            Arc::new(move |z| c0 + c1 * inner(z, &direction).norm().powf(p))
        }
        WeightSpec::ExpAbs { coeff, power } => {
            Arc::new(move |z| (coeff * euclidean_norm(z).powf(power)).exp())
        }
    };
    Ok(WeightFunction { name, dim, eval: f })
}

/// Polar sampling of a disk: `radii` concentric circles (boundary included)
/// with `angles` equispaced angles each, plus the center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarGridSpec {
    pub radii: usize,
    pub angles: usize,
}

impl Default for PolarGridSpec {
    fn default() -> Self {
        PolarGridSpec { radii: 64, angles: 128 }
    }
}

impl PolarGridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.radii == 0 || self.angles == 0 {
            return Err(Error::input("polar grid needs at least one radius and one angle"));
        }
        Ok(())
    }
}

/// Extreme ratio sample: the slice parameter where it occurred and the ratio.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaWitness {
    pub z0: Vec<C64>,
    pub t0: C64,
    pub t: C64,
    pub ratio: f64,
}

/// Empirical bounds for `L(z0+t*b)/L(z0+t0*b)` over `|t-t0| <= eta/L(z0+t0*b)`.
///
/// Sampling approximates the infimum from above and the supremum from below,
/// so `lambda1` is an upper bound for the true infimum and `lambda2` a lower
/// bound for the true supremum. The center `t = t0` is always sampled, hence
/// `lambda1 <= 1 <= lambda2`.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaBounds {
    pub eta: f64,
    pub disk_radius: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub sample_size: usize,
    pub min_witness: LambdaWitness,
    pub max_witness: LambdaWitness,
}

/// One extreme (ratio, parameter) pair; earliest sample wins ties.
#[derive(Clone, Copy, Debug)]
struct Extreme {
    ratio: f64,
    t: C64,
}

#[derive(Clone, Debug)]
struct ProfileRow {
    eta: f64,
    disk_radius: f64,
    min: Extreme,
    max: Extreme,
    samples: usize,
}

/// Ratio extremes for every `eta`, ascending, with nested accumulation: the
/// disk for a larger `eta` contains every smaller one, so each row folds in
/// all samples of the rows before it. This keeps the empirical profile
/// monotone in `eta` by construction.
fn profile_ratios(
    l: &WeightFunction,
    z0: &[C64],
    b: &[C64],
    t0: C64,
    etas_ascending: &[f64],
    grid: &PolarGridSpec,
) -> Result<Vec<ProfileRow>> {
    let mut buf = translate(z0, t0, b);
    let l0 = l.evaluate(&buf)?;
    let center = Extreme { ratio: 1.0, t: t0 };
    let mut min = center;
    let mut max = center;
    let mut samples = 1usize;
    let mut rows = Vec::with_capacity(etas_ascending.len());
    for &eta in etas_ascending {
        let disk_radius = eta / l0;
        if disk_radius > 0.0 {
            for i in 1..=grid.radii {
                let rho = disk_radius * i as f64 / grid.radii as f64;
                for j in 0..grid.angles {
                    let theta = std::f64::consts::TAU * j as f64 / grid.angles as f64;
                    let t = t0 + C64::from_polar(rho, theta);
                    translate_into(&mut buf, z0, t, b);
                    let ratio = l.evaluate(&buf)? / l0;
                    if ratio < min.ratio {
                        min = Extreme { ratio, t };
                    }
                    if ratio > max.ratio {
                        max = Extreme { ratio, t };
                    }
                    samples += 1;
                }
            }
        }
        rows.push(ProfileRow { eta, disk_radius, min, max, samples });
    }
    Ok(rows)
}

fn validate_etas(etas: &[f64]) -> Result<Vec<f64>> {
    if etas.is_empty() {
        return Err(Error::input("need at least one eta"));
    }
    for &eta in etas {
        if !(eta >= 0.0 && eta.is_finite()) {
            return Err(Error::input(format!("eta must be nonnegative and finite, got {eta}")));
        }
    }
    let mut sorted = etas.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("etas are finite"));
    sorted.dedup();
    Ok(sorted)
}

fn check_slice_dims(l: &WeightFunction, z0: &[C64], b: &Direction) -> Result<()> {
    if z0.len() != l.dim() {
        return Err(Error::DimensionMismatch {
            context: "lambda bounds base point",
            expected: l.dim(),
            got: z0.len(),
        });
    }
    if b.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            context: "lambda bounds direction",
            expected: l.dim(),
            got: b.dim(),
        });
    }
    Ok(())
}

/// Local lambda bounds at a single `(z0, t0)` for one `eta`.
pub fn lambda_bounds_local(
    l: &WeightFunction,
    z0: &[C64],
    b: &Direction,
    t0: C64,
    eta: f64,
    grid: &PolarGridSpec,
) -> Result<LambdaBounds> {
    let mut profile = lambda_profile(l, z0, b, t0, &[eta], grid)?;
    Ok(profile.remove(0))
}

/// Local lambda bounds for several `eta` values at once, returned in
/// ascending `eta` order on nested sample sets, so `lambda1` is
/// non-increasing and `lambda2` non-decreasing along the result.
pub fn lambda_profile(
    l: &WeightFunction,
    z0: &[C64],
    b: &Direction,
    t0: C64,
    etas: &[f64],
    grid: &PolarGridSpec,
) -> Result<Vec<LambdaBounds>> {
    check_slice_dims(l, z0, b)?;
    grid.validate()?;
    let etas = validate_etas(etas)?;
    let rows = profile_ratios(l, z0, b.components(), t0, &etas, grid)?;
    Ok(rows
        .into_iter()
        .map(|row| LambdaBounds {
            eta: row.eta,
            disk_radius: row.disk_radius,
            lambda1: row.min.ratio,
            lambda2: row.max.ratio,
            sample_size: row.samples,
            min_witness: LambdaWitness {
                z0: z0.to_vec(),
                t0,
                t: row.min.t,
                ratio: row.min.ratio,
            },
            max_witness: LambdaWitness {
                z0: z0.to_vec(),
                t0,
                t: row.max.t,
                ratio: row.max.ratio,
            },
        })
        .collect())
}

/// Options for [`check_q_class`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct QClassOptions {
    pub etas: Vec<f64>,
    /// Sampled `(z0, t0)` region: `z_count` polydisc bases times `t_count`
    /// slice parameters.
    pub region: RegionSpec,
    /// Per-pair disk sampling; coarser than the local default because it is
    /// multiplied by the region sample.
    pub local_grid: PolarGridSpec,
    pub floor: f64,
    pub ceiling: f64,
    /// A bound moving by more than this factor when the region doubles is
    /// classified as growing.
    pub trend_factor: f64,
}

impl Default for QClassOptions {
    fn default() -> Self {
        QClassOptions {
            etas: vec![0.1, 1.0, 2.0],
            region: RegionSpec {
                radius: 10.0,
                z_count: 500,
                t_count: 64,
                seed: 1,
            },
            local_grid: PolarGridSpec { radii: 8, angles: 16 },
            floor: 1e-6,
            ceiling: 1e6,
            trend_factor: 2.0,
        }
    }
}

impl QClassOptions {
    pub fn validate(&self) -> Result<()> {
        self.region.validate()?;
        self.local_grid.validate()?;
        validate_etas(&self.etas)?;
        if !(self.floor > 0.0 && self.floor.is_finite()) {
            return Err(Error::input("floor must be positive and finite"));
        }
        if !(self.ceiling > self.floor && self.ceiling.is_finite()) {
            return Err(Error::input("ceiling must be finite and above the floor"));
        }
        if !(self.trend_factor > 1.0 && self.trend_factor.is_finite()) {
            return Err(Error::input("trend factor must exceed 1"));
        }
        Ok(())
    }
}

/// Aggregated bounds for one `eta` over the sampled region, with the values
/// re-measured on the doubled region.
#[derive(Clone, Debug, Serialize)]
pub struct EtaRow {
    pub eta: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub refined_lambda1: f64,
    pub refined_lambda2: f64,
    pub min_witness: LambdaWitness,
    pub max_witness: LambdaWitness,
    pub sample_size: usize,
}

/// Result of the sampled weight-class membership check.
#[derive(Clone, Debug, Serialize)]
pub struct QClassReport {
    pub report: CriterionReport,
    pub rows: Vec<EtaRow>,
}

#[derive(Clone, Debug)]
struct EtaExtreme {
    min: f64,
    min_w: LambdaWitness,
    max: f64,
    max_w: LambdaWitness,
    samples: usize,
}

/// Ratio extremes per eta over the cartesian product `bases x t0s`.
fn scan_q(
    l: &WeightFunction,
    b: &Direction,
    bases: &[Vec<C64>],
    t0s: &[C64],
    etas: &[f64],
    grid: &PolarGridSpec,
) -> Result<Vec<EtaExtreme>> {
    let per_base: Vec<Vec<EtaExtreme>> = bases
        .par_iter()
        .map(|z0| -> Result<Vec<EtaExtreme>> {
            let mut acc: Vec<Option<EtaExtreme>> = vec![None; etas.len()];
            for &t0 in t0s {
                let rows = profile_ratios(l, z0, b.components(), t0, etas, grid)?;
                for (slot, row) in acc.iter_mut().zip(rows) {
                    let witness = |e: Extreme| LambdaWitness {
                        z0: z0.clone(),
                        t0,
                        t: e.t,
                        ratio: e.ratio,
                    };
                    match slot {
                        None => {
                            *slot = Some(EtaExtreme {
                                min: row.min.ratio,
                                min_w: witness(row.min),
                                max: row.max.ratio,
                                max_w: witness(row.max),
                                samples: row.samples,
                            });
                        }
                        Some(cur) => {
                            if row.min.ratio < cur.min {
                                cur.min = row.min.ratio;
                                cur.min_w = witness(row.min);
                            }
                            if row.max.ratio > cur.max {
                                cur.max = row.max.ratio;
                                cur.max_w = witness(row.max);
                            }
                            cur.samples += row.samples;
                        }
                    }
                }
            }
            Ok(acc.into_iter().map(|s| s.expect("t0 list is nonempty")).collect())
        })
        .collect::<Result<Vec<_>>>()?;

    let mut folded: Vec<Option<EtaExtreme>> = vec![None; etas.len()];
    for base_rows in per_base {
        for (slot, row) in folded.iter_mut().zip(base_rows) {
            match slot {
                None => *slot = Some(row),
                Some(cur) => {
                    if row.min < cur.min {
                        cur.min = row.min;
                        cur.min_w = row.min_w;
                    }
                    if row.max > cur.max {
                        cur.max = row.max;
                        cur.max_w = row.max_w;
                    }
                    cur.samples += row.samples;
                }
            }
        }
    }
    Ok(folded.into_iter().map(|s| s.expect("base list is nonempty")).collect())
}

/// Sampled membership check for the weight class of `b`-admissible weights.
///
/// For each `eta`, aggregates the local lambda bounds over the sampled
/// `(z0, t0)` set, then re-measures on a superset reaching twice the region
/// radius. Fails when a bound escapes `[floor, ceiling]` or moves by more
/// than `trend_factor` under the enlargement.
pub fn check_q_class(l: &WeightFunction, b: &Direction, opts: &QClassOptions) -> Result<QClassReport> {
    opts.validate()?;
    if b.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            context: "weight-class direction",
            expected: l.dim(),
            got: b.dim(),
        });
    }
    let etas = validate_etas(&opts.etas)?;
    let n = l.dim();
    let region = &opts.region;

    let zsampler = PolydiscSampler::new(n, region.radius, region.seed)?;
    let mut bases = zsampler.points(region.z_count);
    let tsampler = DiskSampler::new(region.radius, region.seed ^ 0xa5a5_5a5a)?;
    let mut t0s = if region.t_count == 0 {
        vec![C64::new(0.0, 0.0)]
    } else {
        tsampler.points(region.t_count)
    };

    let base_rows = scan_q(l, b, &bases, &t0s, &etas, &opts.local_grid)?;

    // Enlarged superset: everything above plus a tail of points reaching
    // twice the radius, in both the base and the parameter factors.
    bases.extend(zsampler.enlarged_tail(region.z_count, 2.0));
    if region.t_count > 0 {
        t0s.extend(
            (region.t_count as u64..2 * region.t_count as u64)
                .map(|i| tsampler.point(i) * C64::new(2.0, 0.0)),
        );
    }
    let refined_rows = scan_q(l, b, &bases, &t0s, &etas, &opts.local_grid)?;

    let mut report = CriterionReport::new("q_class");
    report.set_param("weight", l.name());
    report.set_param("etas", etas.clone());
    report.set_param("region_radius", region.radius);
    report.set_param("z_count", region.z_count);
    report.set_param("t_count", region.t_count);
    report.set_param("seed", region.seed);
    report.set_param("floor", opts.floor);
    report.set_param("ceiling", opts.ceiling);

    let mut rows = Vec::with_capacity(etas.len());
    let mut worst: Option<(f64, LambdaWitness)> = None;
    let mut within = true;
    let mut trend = Trend::Stable;
    for ((&eta, base), refined) in etas.iter().zip(base_rows).zip(refined_rows) {
        if base.min < opts.floor || base.max > opts.ceiling {
            within = false;
        }
        if Trend::classify(base.max, refined.max, opts.trend_factor) == Trend::Growing
            || Trend::classify(1.0 / base.min, 1.0 / refined.min, opts.trend_factor) == Trend::Growing
        {
            trend = Trend::Growing;
        }
        let spread = base.max.max(1.0 / base.min);
        if worst.as_ref().map_or(true, |(w, _)| spread > *w) {
            let w = if base.max >= 1.0 / base.min {
                base.max_w.clone()
            } else {
                base.min_w.clone()
            };
            worst = Some((spread, w));
        }
        report.sample_size += base.samples;
        rows.push(EtaRow {
            eta,
            lambda1: base.min,
            lambda2: base.max,
            refined_lambda1: refined.min,
            refined_lambda2: refined.max,
            min_witness: base.min_w,
            max_witness: base.max_w,
            sample_size: base.samples,
        });
    }

    report.trend = Some(trend);
    report.verdict = if within && trend == Trend::Stable {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    if let Some((spread, w)) = worst {
        report.empirical_constant = spread;
        report.refined_constant = Some(
            rows.iter()
                .map(|r| r.refined_lambda2.max(1.0 / r.refined_lambda1))
                .fold(f64::NEG_INFINITY, f64::max),
        );
        report.witness = Some(
            WitnessSample::new(w.z0.clone(), spread)
                .with_t0(w.t0)
                .with_t(w.t),
        );
    }
    if !within {
        report.notes.push("a lambda bound escaped [floor, ceiling]".to_string());
    }
    if trend == Trend::Growing {
        report
            .notes
            .push("lambda bounds moved with region enlargement".to_string());
    }
    Ok(QClassReport { report, rows })
}

/// Options for [`check_equivalent`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct EquivalenceOptions {
    pub region: RegionSpec,
    pub floor: f64,
    pub ceiling: f64,
}

impl Default for EquivalenceOptions {
    fn default() -> Self {
        EquivalenceOptions {
            region: RegionSpec {
                radius: 10.0,
                z_count: 2000,
                t_count: 0,
                seed: 1,
            },
            floor: 1e-6,
            ceiling: 1e6,
        }
    }
}

/// Result of the two-sided weight comparison `theta1 * L <= Lstar <= theta2 * L`.
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub report: CriterionReport,
    pub theta1: f64,
    pub theta2: f64,
    pub min_witness: WitnessSample,
    pub max_witness: WitnessSample,
}

/// Empirical equivalence constants `theta1 = min Lstar/L`, `theta2 = max
/// Lstar/L` over the sampled region; passes when both sit inside
/// `[floor, ceiling]`.
pub fn check_equivalent(
    l: &WeightFunction,
    lstar: &WeightFunction,
    opts: &EquivalenceOptions,
) -> Result<EquivalenceReport> {
    if l.dim() != lstar.dim() {
        return Err(Error::DimensionMismatch {
            context: "weight equivalence",
            expected: l.dim(),
            got: lstar.dim(),
        });
    }
    if !(opts.floor > 0.0 && opts.ceiling > opts.floor && opts.ceiling.is_finite()) {
        return Err(Error::input("equivalence thresholds must satisfy 0 < floor < ceiling < inf"));
    }
    let points = opts.region.bases(l.dim())?;
    let ratios: Vec<f64> = points
        .par_iter()
        .map(|z| Ok(lstar.evaluate(z)? / l.evaluate(z)?))
        .collect::<Result<Vec<_>>>()?;

    let mut min_at = 0usize;
    let mut max_at = 0usize;
    for (i, &r) in ratios.iter().enumerate() {
        if r < ratios[min_at] {
            min_at = i;
        }
        if r > ratios[max_at] {
            max_at = i;
        }
    }
    let theta1 = ratios[min_at];
    let theta2 = ratios[max_at];

    let mut report = CriterionReport::new("weight_equivalence");
    report.set_param("weight", l.name());
    report.set_param("weight_star", lstar.name());
    report.set_param("region_radius", opts.region.radius);
    report.set_param("z_count", opts.region.z_count);
    report.set_param("seed", opts.region.seed);
    report.set_param("floor", opts.floor);
    report.set_param("ceiling", opts.ceiling);
    report.sample_size = ratios.len();
    report.verdict = if theta1 >= opts.floor && theta2 <= opts.ceiling {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    report.empirical_constant = theta2;
    report.witness = Some(WitnessSample::new(points[max_at].clone(), theta2));
    report
        .notes
        .push(format!("theta1 = {theta1:.6e} attained at the min witness"));

    Ok(EquivalenceReport {
        report,
        theta1,
        theta2,
        min_witness: WitnessSample::new(points[min_at].clone(), theta1),
        max_witness: WitnessSample::new(points[max_at].clone(), theta2),
    })
}
