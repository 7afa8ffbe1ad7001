//! Normalized derivative tables and index estimation.
//!
//! The central quantity is `T_m(z) = |d^m F / db^m| / (m! L^m(z))`. A point
//! has index `N` when every `T_m` up to the probe cap is dominated by the
//! maximum of `T_0..T_N`; the estimate over a grid is the largest per-point
//! index, or "unbounded at scale" when some point admits no index below the
//! cap. All reported indices are at-scale certificates for the probed orders
//! and grid only.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::deriv::{
    directional_derivative, factorial_f64, joint_partial_derivative, ladder_scan, ln_factorial,
    pick_radius_from, DerivativeResult, QuadOptions,
};
use crate::error::{Error, Result};
use crate::function::EntireFunction;
use crate::grid::{PolydiscSampler, SliceGrid, SliceGridSpec};
use crate::point::{Direction, C64};
use crate::weight::WeightFunction;

/// One row of a [`TmTable`].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TmEntry {
    pub order: usize,
    /// `|d^m F / db^m| / (m! L^m)`.
    pub value: f64,
    /// Quadrature error estimate propagated through the normalization.
    pub abs_error: f64,
    pub derivative: C64,
}

/// Normalized directional derivatives `T_0..T_M` at one point.
#[derive(Clone, Debug, Serialize)]
pub struct TmTable {
    pub z: Vec<C64>,
    pub weight_value: f64,
    pub entries: Vec<TmEntry>,
}

/// `x / (m! * l^m)` with a log-space fallback when the direct denominator
/// over- or underflows (large orders, exponential weights).
fn normalize(x: f64, m: usize, l: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let denom = factorial_f64(m) * l.powi(m as i32);
    if denom.is_finite() && denom > 0.0 {
        let v = x / denom;
        if v.is_finite() {
            return v;
        }
    }
    (x.ln() - ln_factorial(m) - m as f64 * l.ln()).exp()
}

/// Build the normalized derivative table at `z` for orders `0..=m_cap`.
///
/// The ladder scan for the contour radius runs once per point and is reused
/// across orders; `quad.radius` overrides it.
pub fn tm_table(
    f: &EntireFunction,
    l: &WeightFunction,
    z: &[C64],
    b: &Direction,
    m_cap: usize,
    quad: &QuadOptions,
) -> Result<TmTable> {
    if l.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            context: "index weight",
            expected: f.dim(),
            got: l.dim(),
        });
    }
    let lz = l.evaluate(z)?;
    let value = f.evaluate(z)?;
    let mut entries = Vec::with_capacity(m_cap + 1);
    entries.push(TmEntry {
        order: 0,
        value: value.norm(),
        abs_error: 0.0,
        derivative: value,
    });
    if m_cap > 0 {
        let scan = if quad.radius.is_none() {
            Some(ladder_scan(f, z, b.components())?)
        } else {
            None
        };
        for m in 1..=m_cap {
            let radius = match (&scan, quad.radius) {
                (_, Some(r)) => r,
                (Some(s), None) => pick_radius_from(s, m),
                (None, None) => unreachable!("scan exists when no radius is fixed"),
            };
            let opts = quad.with_radius(radius);
            let d: DerivativeResult = directional_derivative(f, z, b.components(), m, &opts)?;
            entries.push(TmEntry {
                order: m,
                value: normalize(d.value.norm(), m, lz),
                abs_error: normalize(d.est_abs_error, m, lz),
                derivative: d.value,
            });
        }
    }
    Ok(TmTable {
        z: z.to_vec(),
        weight_value: lz,
        entries,
    })
}

/// Per-point outcome of the index search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PointIndex {
    Found { n: usize },
    /// No order below the probe cap dominates the table; at this scale the
    /// point certifies unboundedness.
    NotFound,
    /// The comparison scale degenerated (all low-order values underflowed
    /// while a high order stayed significant) or quadrature failed here.
    Indeterminate,
}

/// Noise handling for the domination inequality.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct PointIndexOptions {
    /// Relative slack on the right-hand side.
    pub rel_slack: f64,
    /// Below this the right-hand side counts as underflowed.
    pub underflow: f64,
    /// Above this a value is significant enough to flag indeterminacy.
    pub significant: f64,
}

impl Default for PointIndexOptions {
    fn default() -> Self {
        PointIndexOptions {
            rel_slack: 1e-9,
            underflow: 1e-300,
            significant: 1e-12,
        }
    }
}

/// Least `n` strictly below the probe cap such that `T_m <= max(T_0..T_n)`
/// for every probed `m`, with slack from the propagated quadrature errors.
///
/// The cap itself is not admitted as a candidate: `max(T_0..T_cap)` bounds
/// the whole table trivially, and admitting it would make `NotFound`
/// unreachable. A table whose maximum sits at the cap therefore reports
/// `NotFound`, which is exactly the signal used for unboundedness at scale.
pub fn point_index(table: &TmTable, opts: &PointIndexOptions) -> PointIndex {
    let m_cap = table.entries.len() - 1;
    if m_cap == 0 {
        return PointIndex::Found { n: 0 };
    }
    let mut rhs = f64::NEG_INFINITY;
    let mut rhs_err = 0.0f64;
    for n in 0..m_cap {
        rhs = rhs.max(table.entries[n].value);
        rhs_err = rhs_err.max(table.entries[n].abs_error);
        let ok = table.entries.iter().all(|e| {
            let slack = (opts.rel_slack * rhs).max(e.abs_error + rhs_err);
            e.value <= rhs + slack
        });
        if ok {
            if rhs < opts.underflow
                && table.entries.iter().any(|e| e.value > opts.significant)
            {
                return PointIndex::Indeterminate;
            }
            return PointIndex::Found { n };
        }
    }
    let low_max = table.entries[..m_cap]
        .iter()
        .fold(0.0f64, |acc, e| acc.max(e.value));
    let peak = table.entries.iter().fold(0.0f64, |acc, e| acc.max(e.value));
    if low_max < opts.underflow && peak > opts.significant {
        PointIndex::Indeterminate
    } else {
        PointIndex::NotFound
    }
}

/// Grid-level outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "n", rename_all = "snake_case")]
pub enum GlobalIndex {
    Bounded(usize),
    UnboundedAtScale,
    /// Every grid point was indeterminate; nothing can be certified.
    Indeterminate,
}

#[derive(Clone, Debug, Serialize)]
pub struct PerPointIndex {
    pub base_index: usize,
    pub t: C64,
    pub status: PointIndex,
}

/// The grid point backing the global verdict, with its full table.
#[derive(Clone, Debug, Serialize)]
pub struct IndexWitness {
    pub base_index: usize,
    pub t: C64,
    pub status: PointIndex,
    pub table: TmTable,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexEstimate {
    pub global: GlobalIndex,
    pub m_cap: usize,
    pub grid: SliceGridSpec,
    /// Largest per-point index found, also present when the global verdict
    /// is unbounded (it tracks how far domination still reaches).
    pub found_max: Option<usize>,
    pub not_found_count: usize,
    pub indeterminate_count: usize,
    /// Points where quadrature exhausted its budget (a subset of the
    /// indeterminate count).
    pub accuracy_failures: usize,
    pub per_point: Vec<PerPointIndex>,
    pub witness: Option<IndexWitness>,
}

/// Estimate the directional index of `f` with weight `l` over a slice grid.
///
/// Per-point quadrature failures are demoted to indeterminate points rather
/// than aborting the whole sweep; every other error propagates.
pub fn estimate_index(
    f: &EntireFunction,
    l: &WeightFunction,
    b: &Direction,
    grid_spec: &SliceGridSpec,
    m_cap: usize,
    point_opts: &PointIndexOptions,
    quad: &QuadOptions,
) -> Result<IndexEstimate> {
    if m_cap == 0 {
        return Err(Error::input("probe cap must be at least 1"));
    }
    let grid: SliceGrid = grid_spec.build(f.dim(), b.components())?;
    let evaluated: Vec<(PointIndex, Option<TmTable>)> = grid
        .points
        .par_iter()
        .map(|p| match tm_table(f, l, &p.z, b, m_cap, quad) {
            Ok(table) => {
                let status = point_index(&table, point_opts);
                Ok((status, Some(table)))
            }
            Err(Error::Accuracy { .. }) => Ok((PointIndex::Indeterminate, None)),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;

    let mut per_point = Vec::with_capacity(evaluated.len());
    let mut found_max: Option<(usize, usize)> = None; // (n, position)
    let mut first_not_found: Option<usize> = None;
    let mut not_found_count = 0;
    let mut indeterminate_count = 0;
    let mut accuracy_failures = 0;
    for (i, ((status, table), point)) in evaluated.iter().zip(&grid.points).enumerate() {
        per_point.push(PerPointIndex {
            base_index: point.base_index,
            t: point.t,
            status: *status,
        });
        match status {
            PointIndex::Found { n } => {
                if found_max.map_or(true, |(best, _)| *n > best) {
                    found_max = Some((*n, i));
                }
            }
            PointIndex::NotFound => {
                not_found_count += 1;
                if first_not_found.is_none() {
                    first_not_found = Some(i);
                }
            }
            PointIndex::Indeterminate => {
                indeterminate_count += 1;
                if table.is_none() {
                    accuracy_failures += 1;
                }
            }
        }
    }

    let witness_at = |i: usize| -> Option<IndexWitness> {
        let (status, table) = &evaluated[i];
        table.as_ref().map(|t| IndexWitness {
            base_index: grid.points[i].base_index,
            t: grid.points[i].t,
            status: *status,
            table: t.clone(),
        })
    };

    let (global, witness) = if let Some(i) = first_not_found {
        (GlobalIndex::UnboundedAtScale, witness_at(i))
    } else if let Some((n, i)) = found_max {
        (GlobalIndex::Bounded(n), witness_at(i))
    } else {
        (GlobalIndex::Indeterminate, None)
    };

    Ok(IndexEstimate {
        global,
        m_cap,
        grid: *grid_spec,
        found_max: found_max.map(|(n, _)| n),
        not_found_count,
        indeterminate_count,
        accuracy_failures,
        per_point,
        witness,
    })
}

/// Multi-indices of `n` slots with degree up to `max_degree`, graded
/// lexicographic: ascending total degree, lexicographic within a degree.
pub fn multi_indices(n: usize, max_degree: usize) -> Vec<Vec<usize>> {
    fn fill(out: &mut Vec<Vec<usize>>, prefix: &mut Vec<usize>, slots: usize, left: usize) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            fill(out, prefix, slots - 1, left - k);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..=max_degree {
        fill(&mut out, &mut Vec::new(), n, d);
    }
    out
}

/// One row of a joint table: multi-index, normalized value, error.
#[derive(Clone, Debug, Serialize)]
pub struct JointTmEntry {
    pub orders: Vec<usize>,
    pub value: f64,
    pub abs_error: f64,
}

/// Normalized joint partials at one point, graded lexicographic order.
#[derive(Clone, Debug, Serialize)]
pub struct JointTmTable {
    pub z: Vec<C64>,
    pub weight_values: Vec<f64>,
    pub entries: Vec<JointTmEntry>,
}

/// Sampling plan for joint index estimation: plain polydisc points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct JointGridSpec {
    pub radius: f64,
    pub points: usize,
    pub seed: u64,
}

impl Default for JointGridSpec {
    fn default() -> Self {
        JointGridSpec {
            radius: 2.0,
            points: 12,
            seed: 1,
        }
    }
}

/// Joint table at `z`: `T_K = |d^K F / dZ^K| / (K! * prod_j l_j^{k_j}(z))`
/// for all `K` with total degree at most `degree_cap`.
pub fn joint_tm_table(
    f: &EntireFunction,
    weights: &[WeightFunction],
    z: &[C64],
    degree_cap: usize,
    quad: &QuadOptions,
) -> Result<JointTmTable> {
    let n = f.dim();
    if weights.len() != n {
        return Err(Error::DimensionMismatch {
            context: "joint index weights",
            expected: n,
            got: weights.len(),
        });
    }
    let lvals = weights
        .iter()
        .map(|l| {
            if l.dim() != n {
                return Err(Error::DimensionMismatch {
                    context: "joint index weight dimension",
                    expected: n,
                    got: l.dim(),
                });
            }
            l.evaluate(z)
        })
        .collect::<Result<Vec<f64>>>()?;

    let mut entries = Vec::new();
    for orders in multi_indices(n, degree_cap) {
        let d = joint_partial_derivative(f, z, &orders, None, quad)?;
        // Normalization kept in log space: per-axis factorials and weight
        // powers can overflow jointly even when each factor is tame.
        let ln_denom: f64 = orders
            .iter()
            .zip(&lvals)
            .map(|(&k, &l)| ln_factorial(k) + k as f64 * l.ln())
            .sum();
        let scale = |x: f64| -> f64 {
            if x == 0.0 {
                0.0
            } else {
                (x.ln() - ln_denom).exp()
            }
        };
        entries.push(JointTmEntry {
            value: scale(d.value.norm()),
            abs_error: scale(d.est_abs_error),
            orders,
        });
    }
    Ok(JointTmTable {
        z: z.to_vec(),
        weight_values: lvals,
        entries,
    })
}

/// Least total degree `d` strictly below the cap such that every table entry
/// is dominated by the maximum over `|J| <= d`, with the same slack policy
/// as the directional search.
pub fn joint_point_index(table: &JointTmTable, degree_cap: usize, opts: &PointIndexOptions) -> PointIndex {
    if degree_cap == 0 {
        return PointIndex::Found { n: 0 };
    }
    let degree = |e: &JointTmEntry| e.orders.iter().sum::<usize>();
    for d in 0..degree_cap {
        let mut rhs = f64::NEG_INFINITY;
        let mut rhs_err = 0.0f64;
        for e in table.entries.iter().filter(|e| degree(e) <= d) {
            rhs = rhs.max(e.value);
            rhs_err = rhs_err.max(e.abs_error);
        }
        let ok = table.entries.iter().all(|e| {
            let slack = (opts.rel_slack * rhs).max(e.abs_error + rhs_err);
            e.value <= rhs + slack
        });
        if ok {
            if rhs < opts.underflow
                && table.entries.iter().any(|e| e.value > opts.significant)
            {
                return PointIndex::Indeterminate;
            }
            return PointIndex::Found { n: d };
        }
    }
    let low_max = table
        .entries
        .iter()
        .filter(|e| degree(e) < degree_cap)
        .fold(0.0f64, |acc, e| acc.max(e.value));
    let peak = table.entries.iter().fold(0.0f64, |acc, e| acc.max(e.value));
    if low_max < opts.underflow && peak > opts.significant {
        PointIndex::Indeterminate
    } else {
        PointIndex::NotFound
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JointWitness {
    pub z: Vec<C64>,
    pub status: PointIndex,
    pub table: JointTmTable,
}

#[derive(Clone, Debug, Serialize)]
pub struct JointIndexEstimate {
    pub global: GlobalIndex,
    /// Total-degree cap, the sum of the per-axis caps.
    pub degree_cap: usize,
    pub grid: JointGridSpec,
    pub found_max: Option<usize>,
    pub not_found_count: usize,
    pub indeterminate_count: usize,
    pub per_point: Vec<PointIndex>,
    pub witness: Option<JointWitness>,
}

/// Estimate the joint index over a polydisc sample.
///
/// `kmax` is the per-axis probe cap (each component at least 1); the degree
/// cap is its total.
pub fn estimate_joint_index(
    f: &EntireFunction,
    weights: &[WeightFunction],
    kmax: &[usize],
    grid: &JointGridSpec,
    point_opts: &PointIndexOptions,
    quad: &QuadOptions,
) -> Result<JointIndexEstimate> {
    if kmax.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            context: "joint probe cap",
            expected: f.dim(),
            got: kmax.len(),
        });
    }
    if kmax.iter().any(|&k| k == 0) {
        return Err(Error::input("every component of the probe cap must be at least 1"));
    }
    if !(grid.radius > 0.0 && grid.radius.is_finite()) || grid.points == 0 {
        return Err(Error::input("joint grid needs a positive radius and at least one point"));
    }
    let degree_cap: usize = kmax.iter().sum();
    let points = PolydiscSampler::new(f.dim(), grid.radius, grid.seed)?.points(grid.points);

    let evaluated: Vec<(PointIndex, Option<JointTmTable>)> = points
        .par_iter()
        .map(|z| match joint_tm_table(f, weights, z, degree_cap, quad) {
            Ok(table) => {
                let status = joint_point_index(&table, degree_cap, point_opts);
                Ok((status, Some(table)))
            }
            Err(Error::Accuracy { .. }) => Ok((PointIndex::Indeterminate, None)),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;

    let mut found_max: Option<(usize, usize)> = None;
    let mut first_not_found = None;
    let mut not_found_count = 0;
    let mut indeterminate_count = 0;
    let mut per_point = Vec::with_capacity(evaluated.len());
    for (i, (status, _)) in evaluated.iter().enumerate() {
        per_point.push(*status);
        match status {
            PointIndex::Found { n } => {
                if found_max.map_or(true, |(best, _)| *n > best) {
                    found_max = Some((*n, i));
                }
            }
            PointIndex::NotFound => {
                not_found_count += 1;
                if first_not_found.is_none() {
                    first_not_found = Some(i);
                }
            }
            PointIndex::Indeterminate => indeterminate_count += 1,
        }
    }
    let witness_at = |i: usize| -> Option<JointWitness> {
        let (status, table) = &evaluated[i];
        table.as_ref().map(|t| JointWitness {
            z: points[i].clone(),
            status: *status,
            table: t.clone(),
        })
    };
    let (global, witness) = if let Some(i) = first_not_found {
        (GlobalIndex::UnboundedAtScale, witness_at(i))
    } else if let Some((n, i)) = found_max {
        (GlobalIndex::Bounded(n), witness_at(i))
    } else {
        (GlobalIndex::Indeterminate, None)
    };

    Ok(JointIndexEstimate {
        global,
        degree_cap,
        grid: *grid,
        found_max: found_max.map(|(n, _)| n),
        not_found_count,
        indeterminate_count,
        per_point,
        witness,
    })
}

/// Side-by-side index estimates along several directions.
#[derive(Clone, Debug, Serialize)]
pub struct DirectionComparison {
    pub directions: Vec<Vec<C64>>,
    pub estimates: Vec<IndexEstimate>,
    /// True when some directions certify boundedness and others do not.
    pub boundedness_differs: bool,
}

pub fn compare_directions(
    f: &EntireFunction,
    l: &WeightFunction,
    directions: &[Direction],
    grid_spec: &SliceGridSpec,
    m_cap: usize,
    point_opts: &PointIndexOptions,
    quad: &QuadOptions,
) -> Result<DirectionComparison> {
    if directions.len() < 2 {
        return Err(Error::input("direction comparison needs at least two directions"));
    }
    let estimates = directions
        .iter()
        .map(|b| estimate_index(f, l, b, grid_spec, m_cap, point_opts, quad))
        .collect::<Result<Vec<_>>>()?;
    let mut any_bounded = false;
    let mut any_unbounded = false;
    for e in &estimates {
        match e.global {
            GlobalIndex::Bounded(_) => any_bounded = true,
            GlobalIndex::UnboundedAtScale => any_unbounded = true,
            GlobalIndex::Indeterminate => {}
        }
    }
    Ok(DirectionComparison {
        directions: directions.iter().map(|d| d.components().to_vec()).collect(),
        estimates,
        boundedness_differs: any_bounded && any_unbounded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{build_fixture, FixtureSpec};
    use approx::assert_relative_eq;

    fn diag() -> Direction {
        Direction::new(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]).unwrap()
    }

    fn exp_linear_11() -> EntireFunction {
        build_fixture(&FixtureSpec::ExpLinear {
            c: vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)],
        })
        .unwrap()
    }

    // T_m for exp(z1+z2) along (1,1) with L = 2 is exactly 1/m! at the
    // origin: the m-th slice derivative is 2^m.
    #[test]
    fn tm_table_matches_exponential_anchor() {
        let f = exp_linear_11();
        let l = WeightFunction::constant(2, 2.0).unwrap();
        let z = [C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
        let table = tm_table(&f, &l, &z, &diag(), 4, &QuadOptions::default()).unwrap();
        let expected = [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0];
        for (entry, want) in table.entries.iter().zip(expected) {
            assert_relative_eq!(entry.value, want, max_relative = 1e-9);
        }
    }

    #[test]
    fn sin_table_at_origin() {
        let f = build_fixture(&FixtureSpec::SinLinear {
            c: vec![C64::new(1.0, 0.0)],
        })
        .unwrap();
        let l = WeightFunction::constant(1, 1.0).unwrap();
        let b = Direction::one();
        let table = tm_table(&f, &l, &[C64::new(0.0, 0.0)], &b, 3, &QuadOptions::default()).unwrap();
        let expected = [0.0, 1.0, 0.0, 1.0 / 6.0];
        for (entry, want) in table.entries.iter().zip(expected) {
            if want == 0.0 {
                assert!(entry.value < 1e-12, "order {} = {}", entry.order, entry.value);
            } else {
                assert_relative_eq!(entry.value, want, max_relative = 1e-9);
            }
        }
        assert_eq!(point_index(&table, &PointIndexOptions::default()), PointIndex::Found { n: 1 });
    }

    #[test]
    fn decreasing_table_has_index_zero() {
        let f = exp_linear_11();
        let l = WeightFunction::constant(2, 2.0).unwrap();
        let z = [C64::new(0.3, 0.1), C64::new(-0.2, 0.4)];
        let table = tm_table(&f, &l, &z, &diag(), 8, &QuadOptions::default()).unwrap();
        assert_eq!(point_index(&table, &PointIndexOptions::default()), PointIndex::Found { n: 0 });
    }

    #[test]
    fn constant_function_has_index_zero() {
        let f = EntireFunction::from_fn("five", 1, "5", |_| C64::new(5.0, 0.0));
        let l = WeightFunction::constant(1, 1.0).unwrap();
        let table = tm_table(&f, &l, &[C64::new(1.0, 2.0)], &Direction::one(), 3, &QuadOptions::default()).unwrap();
        assert_relative_eq!(table.entries[0].value, 5.0);
        for e in &table.entries[1..] {
            assert!(e.value < 1e-10);
        }
        assert_eq!(point_index(&table, &PointIndexOptions::default()), PointIndex::Found { n: 0 });
    }

    #[test]
    fn rising_tail_reports_not_found() {
        // A table whose maximum sits at the cap: no admissible index below it.
        let table = TmTable {
            z: vec![C64::new(0.0, 0.0)],
            weight_value: 1.0,
            entries: (0..=4)
                .map(|m| TmEntry {
                    order: m,
                    value: m as f64,
                    abs_error: 0.0,
                    derivative: C64::new(0.0, 0.0),
                })
                .collect(),
        };
        assert_eq!(point_index(&table, &PointIndexOptions::default()), PointIndex::NotFound);
    }

    #[test]
    fn underflowed_comparison_is_indeterminate() {
        let mut entries: Vec<TmEntry> = (0..=3)
            .map(|m| TmEntry {
                order: m,
                value: 0.0,
                abs_error: 0.0,
                derivative: C64::new(0.0, 0.0),
            })
            .collect();
        entries[3].value = 1.0;
        let table = TmTable {
            z: vec![C64::new(0.0, 0.0)],
            weight_value: 1.0,
            entries,
        };
        assert_eq!(
            point_index(&table, &PointIndexOptions::default()),
            PointIndex::Indeterminate
        );
    }

    #[test]
    fn estimate_index_sin_is_one() {
        let f = build_fixture(&FixtureSpec::SinLinear {
            c: vec![C64::new(1.0, 0.0)],
        })
        .unwrap();
        let l = WeightFunction::constant(1, 1.0).unwrap();
        let spec = SliceGridSpec {
            reach: 10.0,
            bases: 12,
            t_per_base: 4,
            seed: 1,
        };
        let est = estimate_index(
            &f,
            &l,
            &Direction::one(),
            &spec,
            12,
            &PointIndexOptions::default(),
            &QuadOptions::default(),
        )
        .unwrap();
        assert_eq!(est.global, GlobalIndex::Bounded(1));
        assert_eq!(est.not_found_count, 0);
    }

    #[test]
    fn gauss_square_unbounded_at_scale() {
        let f = build_fixture(&FixtureSpec::GaussSquare { n: 1 }).unwrap();
        let l = WeightFunction::constant(1, 1.0).unwrap();
        let spec = SliceGridSpec {
            reach: 8.0,
            bases: 10,
            t_per_base: 3,
            seed: 1,
        };
        let est = estimate_index(
            &f,
            &l,
            &Direction::one(),
            &spec,
            12,
            &PointIndexOptions::default(),
            &QuadOptions::default(),
        )
        .unwrap();
        assert_eq!(est.global, GlobalIndex::UnboundedAtScale);
        assert!(est.witness.is_some());
        let w = est.witness.unwrap();
        assert_eq!(w.status, PointIndex::NotFound);
    }

    #[test]
    fn multi_index_enumeration_is_graded_lex() {
        let idx = multi_indices(2, 2);
        let expected: Vec<Vec<usize>> = vec![
            vec![0, 0],
            vec![0, 1],
            vec![1, 0],
            vec![0, 2],
            vec![1, 1],
            vec![2, 0],
        ];
        assert_eq!(idx, expected);
    }

    // F = z1*z2 at the origin: the only nonzero normalized entry is at
    // K = (1,1), so degree 2 must be admitted.
    #[test]
    fn joint_index_of_product_at_origin_is_two() {
        let f = build_fixture(&FixtureSpec::Polynomial {
            n: 2,
            terms: vec![crate::fixtures::PolyTerm {
                powers: vec![1, 1],
                coeff: C64::new(1.0, 0.0),
            }],
        })
        .unwrap();
        let w = WeightFunction::constant(2, 1.0).unwrap();
        let table = joint_tm_table(
            &f,
            &[w.clone(), w],
            &[C64::new(0.0, 0.0), C64::new(0.0, 0.0)],
            4,
            &QuadOptions::default(),
        )
        .unwrap();
        assert_eq!(
            joint_point_index(&table, 4, &PointIndexOptions::default()),
            PointIndex::Found { n: 2 }
        );
    }

    #[test]
    fn joint_index_of_separable_exponential_is_zero() {
        let f = exp_linear_11();
        let w = WeightFunction::constant(2, 2.0).unwrap();
        let est = estimate_joint_index(
            &f,
            &[w.clone(), w],
            &[2, 2],
            &JointGridSpec { radius: 1.5, points: 6, seed: 1 },
            &PointIndexOptions::default(),
            &QuadOptions::default(),
        )
        .unwrap();
        assert_eq!(est.global, GlobalIndex::Bounded(0));
    }

    #[test]
    fn compare_directions_flags_mixed_boundedness() {
        let f = build_fixture(&FixtureSpec::GaussSquare { n: 2 }).unwrap();
        let l = WeightFunction::constant(2, 1.0).unwrap();
        let along = Direction::new(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap();
        let across = Direction::new(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]).unwrap();
        let spec = SliceGridSpec {
            reach: 8.0,
            bases: 8,
            t_per_base: 2,
            seed: 1,
        };
        let cmp = compare_directions(
            &f,
            &l,
            &[along, across],
            &spec,
            12,
            &PointIndexOptions::default(),
            &QuadOptions::default(),
        )
        .unwrap();
        assert_eq!(cmp.estimates.len(), 2);
        assert_eq!(cmp.estimates[0].global, GlobalIndex::UnboundedAtScale);
        assert_eq!(cmp.estimates[1].global, GlobalIndex::Bounded(0));
        assert!(cmp.boundedness_differs);
    }

    #[test]
    fn probe_cap_zero_is_rejected() {
        let f = exp_linear_11();
        let l = WeightFunction::constant(2, 2.0).unwrap();
        let err = estimate_index(
            &f,
            &l,
            &diag(),
            &SliceGridSpec::default(),
            0,
            &PointIndexOptions::default(),
            &QuadOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }
}
