//! Verification that a function solves a linear differential equation in a
//! fixed direction, plus an independent integration crosscheck along slices.
//!
//! The equation is `sum_j a_j(z) d^j F / db^j = c(z)` with function-valued
//! coefficients. [`residual_check`] measures the relative residual over a
//! sample region using the contour-quadrature derivatives, so it is an
//! end-to-end test of both the claimed equation and the derivative engine.
//! [`slice_ode_crosscheck`] re-solves the equation restricted to one slice
//! with an adaptive Runge-Kutta integrator and compares against direct
//! evaluations of `F`, an oracle that shares nothing with the quadrature
//! path.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::deriv::{directional_derivative, ladder_scan, pick_radius_from, QuadOptions};
use crate::error::{Error, Result};
use crate::function::{eval_slice, EntireFunction};
use crate::grid::{RegionSpec, SliceGridSpec};
use crate::index::{estimate_index, IndexEstimate, PointIndexOptions};
use crate::point::{translate, Direction, C64};
use crate::report::{CriterionReport, Verdict, WitnessSample};
use crate::weight::WeightFunction;

/// Linear differential equation `sum_j a_j d^j F / db^j = c` along `b`.
pub struct DirectionalPde {
    direction: Direction,
    /// `coefficients[j]` multiplies the j-th directional derivative; the
    /// last entry is the leading coefficient.
    coefficients: Vec<EntireFunction>,
    rhs: Option<EntireFunction>,
}

impl DirectionalPde {
    pub fn new(
        direction: Direction,
        coefficients: Vec<EntireFunction>,
        rhs: Option<EntireFunction>,
    ) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(Error::input(
                "a directional equation needs order at least 1 (two coefficients)",
            ));
        }
        let dim = direction.dim();
        for (j, a) in coefficients.iter().enumerate() {
            if a.dim() != dim {
                return Err(Error::DimensionMismatch {
                    context: "equation coefficient",
                    expected: dim,
                    got: coefficients[j].dim(),
                });
            }
        }
        if let Some(c) = &rhs {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch {
                    context: "equation right-hand side",
                    expected: dim,
                    got: c.dim(),
                });
            }
        }
        Ok(DirectionalPde {
            direction,
            coefficients,
            rhs,
        })
    }

    /// Equation with constant coefficients and constant right-hand side.
    pub fn with_constant_coefficients(
        direction: Direction,
        coefficients: Vec<C64>,
        rhs: Option<C64>,
    ) -> Result<Self> {
        let dim = direction.dim();
        let coefficients = coefficients
            .into_iter()
            .map(|c| EntireFunction::from_fn("constant", dim, "constant coefficient", move |_| c))
            .collect();
        let rhs = rhs.map(|c| {
            EntireFunction::from_fn("constant", dim, "constant right-hand side", move |_| c)
        });
        DirectionalPde::new(direction, coefficients, rhs)
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.direction.dim()
    }

    pub fn direction(&self) -> &Direction {
        &self.direction
    }

    fn coeff_at(&self, j: usize, w: &[C64]) -> Result<C64> {
        self.coefficients[j].evaluate(w)
    }

    fn rhs_at(&self, w: &[C64]) -> Result<C64> {
        match &self.rhs {
            Some(c) => c.evaluate(w),
            None => Ok(C64::new(0.0, 0.0)),
        }
    }
}

/// Tuning for the equation checks.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct PdeOptions {
    pub region: RegionSpec,
    /// Relative residual bound for a pass.
    pub residual_tol: f64,
    /// Checkpoint deviation bound for the integration crosscheck.
    pub crosscheck_tol: f64,
    pub quad: QuadOptions,
}

impl Default for PdeOptions {
    fn default() -> Self {
        PdeOptions {
            region: RegionSpec {
                radius: 5.0,
                z_count: 40,
                t_count: 8,
                seed: 1,
            },
            residual_tol: 1e-9,
            crosscheck_tol: 1e-8,
            quad: QuadOptions::default(),
        }
    }
}

impl PdeOptions {
    pub fn validate(&self) -> Result<()> {
        self.region.validate()?;
        if !(self.residual_tol > 0.0 && self.residual_tol.is_finite()) {
            return Err(Error::input("residual tolerance must be positive and finite"));
        }
        if !(self.crosscheck_tol > 0.0 && self.crosscheck_tol.is_finite()) {
            return Err(Error::input("crosscheck tolerance must be positive and finite"));
        }
        self.quad.validate()
    }
}

/// Residual scan outcome.
#[derive(Clone, Debug, Serialize)]
pub struct PdeResidualReport {
    pub report: CriterionReport,
    /// `|sum_j a_j d^j F - c| / (1 + max_j |a_j d^j F|)`, maximized.
    pub max_relative: f64,
    /// Points that produced a residual (after skipping failures).
    pub points: usize,
}

/// Relative residual of the equation over the sample region.
pub fn residual_check(
    pde: &DirectionalPde,
    f: &EntireFunction,
    opts: &PdeOptions,
) -> Result<PdeResidualReport> {
    if f.dim() != pde.dim() {
        return Err(Error::DimensionMismatch {
            context: "equation solution",
            expected: pde.dim(),
            got: f.dim(),
        });
    }
    opts.region.validate()?;
    opts.quad.validate()?;
    let b = pde.direction();
    let bases = opts.region.bases(f.dim())?;
    let mut offsets = opts.region.offsets()?;
    if offsets.is_empty() {
        offsets.push(C64::new(0.0, 0.0));
    }
    let points: Vec<Vec<C64>> = bases
        .iter()
        .flat_map(|z| offsets.iter().map(|t| translate(z, *t, b.components())))
        .collect();
    let s = pde.order();

    // Per point: (relative residual, |leading coefficient|).
    let rows: Vec<Option<(f64, f64)>> = points
        .par_iter()
        .map(|w| {
            let out = (|| {
                let scan = ladder_scan(f, w, b.components())?;
                let mut sum = C64::new(0.0, 0.0);
                let mut max_term = 0.0f64;
                let mut lead = 0.0f64;
                for j in 0..=s {
                    let d = if j == 0 {
                        f.evaluate(w)?
                    } else {
                        let quad = opts.quad.with_radius(pick_radius_from(&scan, j));
                        directional_derivative(f, w, b.components(), j, &quad)?.value
                    };
                    let a = pde.coeff_at(j, w)?;
                    let term = a * d;
                    sum += term;
                    max_term = max_term.max(term.norm());
                    if j == s {
                        lead = a.norm();
                    }
                }
                let resid = sum - pde.rhs_at(w)?;
                Ok(Some((resid.norm() / (1.0 + max_term), lead)))
            })();
            match out {
                Err(Error::Accuracy { .. }) => Ok(None),
                other => other,
            }
        })
        .collect::<Result<_>>()?;

    let max_lead = rows
        .iter()
        .flatten()
        .map(|r| r.1)
        .fold(0.0f64, f64::max);
    if max_lead <= 1e-12 {
        return Err(Error::precondition(
            "leading coefficient vanishes on the whole sample region",
        ));
    }

    let mut max_relative = f64::NEG_INFINITY;
    let mut witness_at = None;
    let mut skipped = 0usize;
    for (w, row) in points.iter().zip(&rows) {
        match row {
            None => skipped += 1,
            Some((rel, _)) => {
                if *rel > max_relative {
                    max_relative = *rel;
                    witness_at = Some(w.clone());
                }
            }
        }
    }

    let mut report = CriterionReport::new("pde_residual");
    report.set_param("order", s as u64);
    report.set_param("tol", opts.residual_tol);
    report.set_param("region_radius", opts.region.radius);
    report.set_param("z_count", opts.region.z_count as u64);
    report.set_param("t_count", opts.region.t_count as u64);
    report.set_param("seed", opts.region.seed);
    report.set_param(
        "direction",
        serde_json::to_value(b.components()).expect("direction serializes"),
    );
    report.sample_size = points.len();
    report.skipped = skipped;
    match witness_at {
        None => {
            report.verdict = Verdict::Indeterminate;
            report.notes.push("every sample point was skipped".into());
            Ok(PdeResidualReport {
                report,
                max_relative: f64::NAN,
                points: 0,
            })
        }
        Some(w) => {
            report.empirical_constant = max_relative;
            report.witness = Some(WitnessSample::new(w, max_relative));
            report.verdict = if max_relative <= opts.residual_tol {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            if skipped > 0 {
                report
                    .notes
                    .push(format!("{skipped} points skipped on quadrature accuracy"));
            }
            Ok(PdeResidualReport {
                report,
                max_relative,
                points: points.len() - skipped,
            })
        }
    }
}

// Dormand-Prince 5(4) tableau.
const DP_C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 6] = [
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const DP_B: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const DP_E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Adaptive Runge-Kutta integration of `y' = rhs(t, y)` from `t0` to `t1`.
fn rk45<F>(rhs: F, t0: f64, y0: &[C64], t1: f64, rel_tol: f64, abs_tol: f64) -> Result<Vec<C64>>
where
    F: Fn(f64, &[C64], &mut [C64]),
{
    let dim = y0.len();
    let mut y = y0.to_vec();
    if t0 == t1 {
        return Ok(y);
    }
    let mut t = t0;
    let span = t1 - t0;
    let mut h = span * 0.01;
    let mut k = vec![vec![C64::new(0.0, 0.0); dim]; 7];
    let mut stage = vec![C64::new(0.0, 0.0); dim];
    let done = |t: f64| (t1 - t) * span.signum() <= 0.0;
    for _ in 0..200_000usize {
        if done(t) {
            return Ok(y);
        }
        if (t + h - t1) * span.signum() > 0.0 {
            h = t1 - t;
        }
        rhs(t, &y, &mut k[0]);
        for stage_idx in 1..7 {
            for i in 0..dim {
                let mut acc = C64::new(0.0, 0.0);
                for (j, kj) in k.iter().enumerate().take(stage_idx) {
                    let a = DP_A[stage_idx - 1][j];
                    if a != 0.0 {
                        acc += kj[i] * C64::new(a, 0.0);
                    }
                }
                stage[i] = y[i] + acc * C64::new(h, 0.0);
            }
            let (head, tail) = k.split_at_mut(stage_idx);
            let _ = head;
            rhs(t + DP_C[stage_idx] * h, &stage, &mut tail[0]);
        }
        let mut y_next = y.clone();
        let mut err = 0.0f64;
        for i in 0..dim {
            let mut acc = C64::new(0.0, 0.0);
            let mut eacc = C64::new(0.0, 0.0);
            for j in 0..7 {
                if DP_B[j] != 0.0 {
                    acc += k[j][i] * C64::new(DP_B[j], 0.0);
                }
                if DP_E[j] != 0.0 {
                    eacc += k[j][i] * C64::new(DP_E[j], 0.0);
                }
            }
            y_next[i] = y[i] + acc * C64::new(h, 0.0);
            let scale = abs_tol + rel_tol * y[i].norm().max(y_next[i].norm());
            err = err.max((eacc.norm() * h.abs()) / scale);
        }
        if err <= 1.0 {
            t += h;
            y = y_next;
        }
        let factor = if err > 0.0 {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= factor;
        if h.abs() < 1e-15 * t.abs().max(1.0) {
            return Err(Error::Resolution {
                center: C64::new(t, 0.0),
                half: h.abs(),
            });
        }
    }
    Err(Error::Resolution {
        center: C64::new(t, 0.0),
        half: h.abs(),
    })
}

/// One comparison point of the integration crosscheck.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CheckpointRow {
    pub t: f64,
    pub reference: C64,
    pub integrated: C64,
    /// `|integrated - reference| / (1 + |reference|)`.
    pub error: f64,
}

/// Crosscheck outcome along one slice.
#[derive(Clone, Debug, Serialize)]
pub struct OdeCrosscheckReport {
    pub report: CriterionReport,
    pub checkpoints: Vec<CheckpointRow>,
}

/// Integrate the equation restricted to the slice `t -> z0 + t*b` and
/// compare against direct evaluations of `F` at equispaced checkpoints.
///
/// Requires coefficients (and right-hand side) constant along the slice
/// segment; the integrator uses their values at `z0`, so variation would
/// silently change the equation being solved. Initial data comes from the
/// contour-quadrature derivatives at `z0`.
pub fn slice_ode_crosscheck(
    pde: &DirectionalPde,
    f: &EntireFunction,
    z0: &[C64],
    t_end: f64,
    checkpoints: usize,
    opts: &PdeOptions,
) -> Result<OdeCrosscheckReport> {
    if f.dim() != pde.dim() {
        return Err(Error::DimensionMismatch {
            context: "equation solution",
            expected: pde.dim(),
            got: f.dim(),
        });
    }
    if !(t_end.is_finite() && t_end != 0.0) {
        return Err(Error::input("crosscheck needs a finite nonzero endpoint"));
    }
    if checkpoints == 0 {
        return Err(Error::input("crosscheck needs at least one checkpoint"));
    }
    opts.quad.validate()?;
    let b = pde.direction();
    let s = pde.order();

    // Constancy precondition for every coefficient and the right-hand side.
    const CONSTANCY_SAMPLES: usize = 32;
    let mut consts = Vec::with_capacity(s + 2);
    for j in 0..=s {
        consts.push(pde.coeff_at(j, z0)?);
    }
    consts.push(pde.rhs_at(z0)?);
    for i in 0..CONSTANCY_SAMPLES {
        let tau = t_end * i as f64 / (CONSTANCY_SAMPLES - 1) as f64;
        let w = translate(z0, C64::new(tau, 0.0), b.components());
        for (j, c0) in consts.iter().enumerate() {
            let c = if j <= s {
                pde.coeff_at(j, &w)?
            } else {
                pde.rhs_at(&w)?
            };
            if (c - c0).norm() > 1e-10 * (1.0 + c0.norm()) {
                let what = if j <= s {
                    format!("coefficient {j}")
                } else {
                    "right-hand side".to_string()
                };
                return Err(Error::precondition(format!(
                    "{what} varies along the slice; the integration crosscheck needs slice-constant data"
                )));
            }
        }
    }
    let lead = consts[s];
    if lead.norm() <= 1e-12 {
        return Err(Error::precondition(
            "leading coefficient vanishes at the base point",
        ));
    }

    // Initial data g(0), ..., g^(s-1)(0) from the quadrature engine.
    let scan = ladder_scan(f, z0, b.components())?;
    let mut y = Vec::with_capacity(s);
    for j in 0..s {
        let v = if j == 0 {
            f.evaluate(z0)?
        } else {
            let quad = opts.quad.with_radius(pick_radius_from(&scan, j));
            directional_derivative(f, z0, b.components(), j, &quad)?.value
        };
        y.push(v);
    }

    let rhs_val = consts[s + 1];
    let coeffs = consts[..=s].to_vec();
    let rhs = move |_t: f64, y: &[C64], dy: &mut [C64]| {
        for j in 0..s - 1 {
            dy[j] = y[j + 1];
        }
        let mut acc = rhs_val;
        for j in 0..s {
            acc -= coeffs[j] * y[j];
        }
        dy[s - 1] = acc / lead;
    };

    let mut rows = Vec::with_capacity(checkpoints);
    let mut max_error = 0.0f64;
    let mut t_cur = 0.0f64;
    for kpt in 1..=checkpoints {
        let target = t_end * kpt as f64 / checkpoints as f64;
        y = rk45(&rhs, t_cur, &y, target, 1e-10, 1e-10)?;
        t_cur = target;
        let reference = eval_slice(f, z0, b.components(), C64::new(target, 0.0))?;
        let error = (y[0] - reference).norm() / (1.0 + reference.norm());
        max_error = max_error.max(error);
        rows.push(CheckpointRow {
            t: target,
            reference,
            integrated: y[0],
            error,
        });
    }

    let mut report = CriterionReport::new("slice_ode_crosscheck");
    report.set_param("order", s as u64);
    report.set_param("t_end", t_end);
    report.set_param("checkpoints", checkpoints as u64);
    report.set_param("tol", opts.crosscheck_tol);
    report.sample_size = checkpoints;
    report.empirical_constant = max_error;
    report.witness = Some(WitnessSample::new(z0.to_vec(), max_error));
    report.verdict = if max_error <= opts.crosscheck_tol {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(OdeCrosscheckReport {
        report,
        checkpoints: rows,
    })
}

/// Residual check followed by an index estimate of the verified solution.
#[derive(Clone, Debug, Serialize)]
pub struct SolutionIndexReport {
    pub residual: PdeResidualReport,
    /// Present only when the residual check passed.
    pub index: Option<IndexEstimate>,
}

/// Verify that `f` solves the equation, then estimate its directional index
/// along the equation's direction.
#[allow(clippy::too_many_arguments)]
pub fn solution_index_report(
    pde: &DirectionalPde,
    f: &EntireFunction,
    l: &WeightFunction,
    grid: &SliceGridSpec,
    m_cap: usize,
    pde_opts: &PdeOptions,
    point_opts: &PointIndexOptions,
    quad: &QuadOptions,
) -> Result<SolutionIndexReport> {
    let residual = residual_check(pde, f, pde_opts)?;
    let index = if residual.report.verdict == Verdict::Pass {
        Some(estimate_index(
            f,
            l,
            pde.direction(),
            grid,
            m_cap,
            point_opts,
            quad,
        )?)
    } else {
        None
    };
    Ok(SolutionIndexReport { residual, index })
}
