//! Slice zeros by the argument principle, excluded disks around them, and
//! the counting function of the zero sequence.
//!
//! The search tracks the phase of `g(t) = F(z0 + t*b)` around closed
//! contours. The total turn over a contour is `2 pi` times the enclosed zero
//! count, so squares are subdivided until each holds a single zero (Newton
//! refinement) or shrinks to cluster scale (multiplicity kept from the
//! winding count). Refined zeros that land within a cluster diameter of
//! each other are merged afterwards: at working precision they are one
//! multiple zero whose winding got split across grazing boxes. Phase steps
//! are accepted only below `pi/2`, with recursive bisection in between, so
//! no derivative evaluations are needed for the counts.

use std::f64::consts::{FRAC_PI_2, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{EntireFunction, Slice};
use crate::point::{translate, Direction, C64};
use crate::weight::WeightFunction;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct ZeroSearchOptions {
    /// Residual bound for accepted zeros.
    pub residual_tol: f64,
    /// How many subdivision rectangles may be processed.
    pub box_budget: usize,
    pub max_newton_iter: usize,
    /// `max |g|` on the search circle below this declares the slice
    /// identically zero (together with `g(0) = 0`).
    pub underflow_threshold: f64,
    /// Relative half-width (of `max(1, R)`) at which a multi-zero rectangle
    /// stops subdividing and is treated as one cluster. Near a zero of
    /// multiplicity `m` the function scales like `dist^m`, so halves much
    /// below 1e-7 push the samples under floating-point cancellation noise
    /// and windings become unreliable before the cluster stop triggers.
    pub cluster_scale: f64,
    /// Retries growing the search circle when a zero sits too close to it.
    pub nudge_attempts: usize,
    /// Initial samples on the search circle.
    pub circle_samples: usize,
    /// Initial samples per rectangle edge.
    pub edge_samples: usize,
    /// Bisection depth for phase tracking.
    pub track_depth: usize,
}

impl Default for ZeroSearchOptions {
    fn default() -> Self {
        ZeroSearchOptions {
            residual_tol: 1e-10,
            box_budget: 10_000,
            max_newton_iter: 48,
            underflow_threshold: 1e-280,
            cluster_scale: 1e-7,
            nudge_attempts: 16,
            circle_samples: 128,
            edge_samples: 8,
            track_depth: 42,
        }
    }
}

impl ZeroSearchOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.residual_tol > 0.0 && self.residual_tol.is_finite()) {
            return Err(Error::input("residual tolerance must be positive and finite"));
        }
        if self.box_budget == 0 || self.max_newton_iter == 0 || self.nudge_attempts == 0 {
            return Err(Error::input("zero search budgets must be positive"));
        }
        if self.circle_samples < 8 || self.edge_samples < 2 {
            return Err(Error::input("zero search needs at least 8 circle and 2 edge samples"));
        }
        Ok(())
    }
}

/// One located zero of the slice function.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SliceZero {
    pub t: C64,
    pub multiplicity: usize,
    /// `|g(t)|` at the accepted point.
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SliceStatus {
    /// No zeros inside the search circle.
    NonVanishing,
    /// `g` vanishes everywhere on the slice.
    IdenticallyZero,
    Listed,
}

/// Zeros of `g(t) = F(z0 + t*b)` inside `|t| <= search_radius`.
#[derive(Clone, Debug, Serialize)]
pub struct SliceZeroSet {
    pub base: Vec<C64>,
    pub direction: Vec<C64>,
    pub requested_radius: f64,
    /// Actual circle used; grows by 3% per nudge when a zero sits on the
    /// requested circle.
    pub search_radius: f64,
    pub status: SliceStatus,
    /// Sorted by `(|t|, arg t)`.
    pub zeros: Vec<SliceZero>,
    /// Winding count of the search circle; equals the multiplicity sum.
    pub contour_count: usize,
}

/// Accumulated phase of a closed scan.
struct ClosedScan {
    turns: f64,
    min_abs: f64,
    /// Minimum over each initial sample of `|g_k| / min(|g_(k-1)|, |g_(k+1)|)`,
    /// a dip detector for zeros near the contour. Relative to neighbors, not
    /// the global maximum, so zero-free contours with a large dynamic range
    /// (exponential slices) do not trip it.
    min_dip: f64,
}

/// Phase step between two samples, bisecting until each step is below
/// `pi/2`. Returns false on an exact zero sample or depth exhaustion.
///
/// A small computed step is not trusted on its own: a true phase change of
/// `2*pi + d` between two samples wraps to the same argument as `d`, so a
/// coarse scan over a fast-turning stretch would silently drop whole turns.
/// Each candidate step is therefore verified against its midpoint sample and
/// accepted only when both halves are below `pi/2` as well; a hidden turn
/// pushes at least one half past that bound (the halves must sum to the step
/// modulo a full turn) and forces bisection instead.
fn phase_step<F: FnMut(f64) -> C64>(
    path: &mut F,
    s0: f64,
    v0: C64,
    s1: f64,
    v1: C64,
    depth: usize,
    acc: &mut f64,
    min_abs: &mut f64,
) -> bool {
    if v0.norm() == 0.0 || v1.norm() == 0.0 {
        return false;
    }
    let d = (v1 * v0.conj()).arg();
    if depth == 0 {
        // No budget to verify or bisect; a leaf this deep is already
        // 2^-depth of an initial segment, where an unverified step is safe.
        if d.abs() < FRAC_PI_2 {
            *acc += d;
            return true;
        }
        return false;
    }
    let sm = 0.5 * (s0 + s1);
    let vm = path(sm);
    *min_abs = min_abs.min(vm.norm());
    if vm.norm() == 0.0 {
        return false;
    }
    if d.abs() < FRAC_PI_2 {
        let d0 = (vm * v0.conj()).arg();
        let d1 = (v1 * vm.conj()).arg();
        if d0.abs() < FRAC_PI_2 && d1.abs() < FRAC_PI_2 {
            // Both halves are small, so their sum cannot wrap and equals
            // the step exactly; record the verified step.
            *acc += d;
            return true;
        }
    }
    phase_step(path, s0, v0, sm, vm, depth - 1, acc, min_abs)
        && phase_step(path, sm, vm, s1, v1, depth - 1, acc, min_abs)
}

/// Track a closed path `s in [0,1) -> g` with `init` equispaced samples.
fn scan_closed<F: FnMut(f64) -> C64>(path: &mut F, init: usize, depth: usize) -> Option<ClosedScan> {
    let vals: Vec<C64> = (0..init).map(|k| path(k as f64 / init as f64)).collect();
    let mut min_abs = f64::INFINITY;
    for v in &vals {
        min_abs = min_abs.min(v.norm());
    }
    let mut min_dip = f64::INFINITY;
    for k in 0..init {
        let here = vals[k].norm();
        let before = vals[(k + init - 1) % init].norm();
        let after = vals[(k + 1) % init].norm();
        let neighbor = before.min(after);
        if neighbor > 0.0 {
            min_dip = min_dip.min(here / neighbor);
        } else {
            min_dip = 0.0;
        }
    }
    let mut turns = 0.0f64;
    for k in 0..init {
        let s0 = k as f64 / init as f64;
        let s1 = (k + 1) as f64 / init as f64;
        if !phase_step(path, s0, vals[k], s1, vals[(k + 1) % init], depth, &mut turns, &mut min_abs) {
            return None;
        }
    }
    Some(ClosedScan {
        turns,
        min_abs,
        min_dip,
    })
}

/// Winding number from accumulated turns; rejects non-integer totals.
fn winding_from_turns(turns: f64) -> Option<i64> {
    let w = (turns / TAU).round();
    if (turns / TAU - w).abs() > 0.25 {
        return None;
    }
    Some(w as i64)
}

fn scan_circle(
    slice: &mut Slice<'_>,
    center: C64,
    radius: f64,
    opts: &ZeroSearchOptions,
) -> Option<(i64, ClosedScan)> {
    let mut path = |s: f64| slice.eval(center + C64::from_polar(radius, TAU * s));
    let scan = scan_closed(&mut path, opts.circle_samples, opts.track_depth)?;
    let w = winding_from_turns(scan.turns)?;
    Some((w, scan))
}

/// Axis-aligned rectangle, half-open on the upper edges so adjacent
/// rectangles partition the plane and each zero is claimed exactly once.
#[derive(Clone, Copy, Debug)]
struct Rect {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Rect {
    fn center(&self) -> C64 {
        C64::new(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))
    }

    fn half(&self) -> f64 {
        0.5 * (self.x1 - self.x0).max(self.y1 - self.y0)
    }

    fn contains(&self, t: C64) -> bool {
        t.re >= self.x0 && t.re < self.x1 && t.im >= self.y0 && t.im < self.y1
    }

    /// Counterclockwise corners.
    fn corners(&self) -> [C64; 4] {
        [
            C64::new(self.x0, self.y0),
            C64::new(self.x1, self.y0),
            C64::new(self.x1, self.y1),
            C64::new(self.x0, self.y1),
        ]
    }
}

fn scan_rect(slice: &mut Slice<'_>, rect: &Rect, opts: &ZeroSearchOptions) -> Option<i64> {
    let corners = rect.corners();
    // Perimeter parameterization; corner positions land on sample points
    // because the edge count divides the sample count.
    let init = 4 * opts.edge_samples;
    let mut path = |s: f64| {
        let u = s * 4.0;
        let edge = (u.floor() as usize).min(3);
        let frac = u - edge as f64;
        let a = corners[edge];
        let b = corners[(edge + 1) % 4];
        slice.eval(a + (b - a) * C64::new(frac, 0.0))
    };
    let scan = scan_closed(&mut path, init, opts.track_depth)?;
    winding_from_turns(scan.turns)
}

/// First derivative of the slice at `t` by a fixed spectral ring; exact for
/// entire `g` up to rounding, independent of nearby zeros.
fn slice_derivative(slice: &mut Slice<'_>, t: C64) -> C64 {
    let n = 64usize;
    let radius = 0.3 + 0.05 * t.norm();
    let mut terms = Vec::with_capacity(n);
    for k in 0..n {
        let theta = TAU * k as f64 / n as f64;
        let v = slice.eval(t + C64::from_polar(radius, theta));
        terms.push(v * C64::from_polar(1.0, -theta));
    }
    crate::deriv::pairwise_sum(&terms) / C64::new(n as f64 * radius, 0.0)
}

/// Newton refinement with multiplicity `mult` from `start`; returns the
/// refined zero when the residual clears the tolerance.
fn refine_newton(
    slice: &mut Slice<'_>,
    start: C64,
    mult: usize,
    opts: &ZeroSearchOptions,
) -> Option<SliceZero> {
    let mu = C64::new(mult as f64, 0.0);
    let mut t = start;
    // Once the true value sinks below cancellation noise the computed step
    // degenerates into a random kick, so late iterations can wander away
    // from a zero already hit; keep the best iterate by residual.
    let mut best_t = t;
    let mut best_res = f64::INFINITY;
    let mut prev_res = f64::INFINITY;
    let mut small_steps = 0;
    for _ in 0..opts.max_newton_iter {
        let g = slice.eval(t);
        if g.norm() < best_res {
            best_res = g.norm();
            best_t = t;
        }
        if g.norm() <= opts.residual_tol && mult == 1 && g.norm() > 0.5 * prev_res {
            // A simple zero is done once the residual clears the tolerance
            // and further steps stop paying. Near a multiple zero the first
            // sub-tolerance iterate can still sit far from the zero itself
            // (the residual underestimates the distance there), but each
            // extra step keeps shrinking the residual by 4x or more, so the
            // improvement condition lets those iterations run on.
            break;
        }
        prev_res = g.norm();
        let dg = slice_derivative(slice, t);
        if dg.norm() == 0.0 {
            break;
        }
        let step = mu * g / dg;
        t -= step;
        if step.norm() <= 4.0 * f64::EPSILON * (1.0 + t.norm()) {
            small_steps += 1;
            if small_steps >= 2 {
                break;
            }
        } else {
            small_steps = 0;
        }
    }
    let last = slice.eval(t).norm();
    if last < best_res {
        best_res = last;
        best_t = t;
    }
    // What Newton can reach is limited by the derivative scale at the zero;
    // accept the floating-point-limited residual for steep slices.
    let dg = slice_derivative(slice, best_t).norm();
    let tol_eff = opts.residual_tol.max(dg * (1.0 + best_t.norm()) * 1e-12);
    if best_res <= tol_eff {
        Some(SliceZero {
            t: best_t,
            multiplicity: mult,
            residual: best_res,
        })
    } else {
        None
    }
}

/// Collapses zeros that sit within one cluster diameter of each other.
///
/// Refined zeros closer together than the cluster scale are
/// indistinguishable from a single multiple zero at the working tolerance:
/// a zero of multiplicity `m` flattens the function to `dist^m`, so a box
/// that grazes it can split the winding across neighbours, and each piece
/// then refines to its own nearby point. Summing the multiplicities of such
/// a group and re-polishing from its best member restores the one zero the
/// winding actually witnessed; groups farther apart stay separate.
fn merge_close_zeros(
    slice: &mut Slice<'_>,
    zeros: Vec<SliceZero>,
    cluster_half: f64,
    opts: &ZeroSearchOptions,
) -> Vec<SliceZero> {
    let bound = 2.0 * cluster_half;
    let mut pool = zeros;
    let mut out = Vec::with_capacity(pool.len());
    while let Some(first) = pool.pop() {
        let mut group = vec![first];
        // Transitive closure: pull in anything near any current member.
        let mut grew = true;
        while grew {
            grew = false;
            let mut i = 0;
            while i < pool.len() {
                if group.iter().any(|g| (g.t - pool[i].t).norm() <= bound) {
                    group.push(pool.swap_remove(i));
                    grew = true;
                } else {
                    i += 1;
                }
            }
        }
        if group.len() == 1 {
            out.extend(group);
            continue;
        }
        let total: usize = group.iter().map(|z| z.multiplicity).sum();
        let seed = group
            .iter()
            .min_by(|a, b| a.residual.total_cmp(&b.residual))
            .expect("group is nonempty");
        let fallback = SliceZero {
            t: seed.t,
            multiplicity: total,
            residual: seed.residual,
        };
        out.push(refine_newton(slice, seed.t, total, opts).unwrap_or(fallback));
    }
    out
}

/// Split offsets tried when a subdivision line lands on or next to a zero.
const SPLIT_FRACTIONS: [f64; 6] = [0.5, 0.53, 0.47, 0.59, 0.41, 0.64];

/// Search for all zeros of the slice `t -> F(z0 + t*b)` with `|t| <= radius`.
pub fn find_slice_zeros(
    f: &EntireFunction,
    z0: &[C64],
    b: &Direction,
    radius: f64,
    opts: &ZeroSearchOptions,
) -> Result<SliceZeroSet> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::input("zero search radius must be positive and finite"));
    }
    opts.validate()?;
    let mut slice = Slice::new(f, z0, b.components())?;
    let origin = C64::new(0.0, 0.0);

    // A nonzero entire function cannot vanish on a whole circle (its zeros
    // would accumulate), so raw samples all under the underflow threshold,
    // together with a vanishing center, identify an identically zero slice.
    // This must happen before phase tracking, which cannot run on such data.
    let ring_max = (0..opts.circle_samples)
        .map(|k| {
            let s = k as f64 / opts.circle_samples as f64;
            slice.eval(C64::from_polar(radius, TAU * s)).norm()
        })
        .fold(0.0f64, f64::max);
    if ring_max < opts.underflow_threshold && slice.eval(origin).norm() < 1e-300 {
        return Ok(SliceZeroSet {
            base: z0.to_vec(),
            direction: b.components().to_vec(),
            requested_radius: radius,
            search_radius: radius,
            status: SliceStatus::IdenticallyZero,
            zeros: vec![],
            contour_count: 0,
        });
    }

    // Circle count, nudging the radius outward while a zero sits on or
    // numerically too close to the contour.
    let mut search_radius = radius;
    let mut circle: Option<i64> = None;
    for _ in 0..opts.nudge_attempts {
        match scan_circle(&mut slice, origin, search_radius, opts) {
            Some((w, scan)) if scan.min_dip > 1e-8 && scan.min_abs > 0.0 => {
                circle = Some(w);
                break;
            }
            _ => search_radius *= 1.03,
        }
    }
    let winding = circle.ok_or(Error::Resolution {
        center: origin,
        half: search_radius,
    })?;

    if winding < 0 {
        return Err(Error::Resolution {
            center: origin,
            half: search_radius,
        });
    }
    if winding == 0 {
        return Ok(SliceZeroSet {
            base: z0.to_vec(),
            direction: b.components().to_vec(),
            requested_radius: radius,
            search_radius,
            status: SliceStatus::NonVanishing,
            zeros: vec![],
            contour_count: 0,
        });
    }

    // Root square strictly containing the circle; grown slightly if its own
    // boundary happens to touch a zero.
    let mut root_half = search_radius * 1.000_001;
    let mut root: Option<(Rect, i64)> = None;
    for _ in 0..opts.nudge_attempts {
        let rect = Rect {
            x0: -root_half,
            x1: root_half,
            y0: -root_half,
            y1: root_half,
        };
        match scan_rect(&mut slice, &rect, opts) {
            Some(w) if w >= winding => {
                root = Some((rect, w));
                break;
            }
            _ => root_half *= 1.0003,
        }
    }
    let (root_rect, root_w) = root.ok_or(Error::Resolution {
        center: origin,
        half: root_half,
    })?;

    let cluster_half = opts.cluster_scale * search_radius.max(1.0);
    let floor_half = 1e-13 * search_radius.max(1.0);
    let mut work: Vec<(Rect, i64)> = vec![(root_rect, root_w)];
    let mut found: Vec<SliceZero> = Vec::new();
    let mut budget = opts.box_budget;

    while let Some((rect, w)) = work.pop() {
        if budget == 0 {
            return Err(Error::Resolution {
                center: rect.center(),
                half: rect.half(),
            });
        }
        budget -= 1;

        if w == 1 {
            if let Some(zero) = refine_newton(&mut slice, rect.center(), 1, opts) {
                if rect.contains(zero.t) {
                    found.push(zero);
                    continue;
                }
            }
            // Newton missed or escaped: tighten the rectangle instead.
        } else if rect.half() <= cluster_half {
            // Cluster scale: accept the winding count as multiplicity.
            let zero = refine_newton(&mut slice, rect.center(), w as usize, opts).ok_or(
                Error::Resolution {
                    center: rect.center(),
                    half: rect.half(),
                },
            )?;
            found.push(zero);
            continue;
        }
        if rect.half() <= floor_half {
            return Err(Error::Resolution {
                center: rect.center(),
                half: rect.half(),
            });
        }

        let mut split_ok = false;
        for frac in SPLIT_FRACTIONS {
            let sx = rect.x0 + frac * (rect.x1 - rect.x0);
            let sy = rect.y0 + frac * (rect.y1 - rect.y0);
            let children = [
                Rect { x0: rect.x0, x1: sx, y0: rect.y0, y1: sy },
                Rect { x0: sx, x1: rect.x1, y0: rect.y0, y1: sy },
                Rect { x0: rect.x0, x1: sx, y0: sy, y1: rect.y1 },
                Rect { x0: sx, x1: rect.x1, y0: sy, y1: rect.y1 },
            ];
            let mut ws = [0i64; 4];
            let mut all_ok = true;
            for (wslot, child) in ws.iter_mut().zip(&children) {
                match scan_rect(&mut slice, child, opts) {
                    Some(cw) if cw >= 0 => *wslot = cw,
                    _ => {
                        all_ok = false;
                        break;
                    }
                }
            }
            // Winding is conserved under partition; a mismatch means a zero
            // sat on a split line, so try the next offset.
            if all_ok && ws.iter().sum::<i64>() == w {
                for (child, cw) in children.into_iter().zip(ws) {
                    if cw > 0 {
                        work.push((child, cw));
                    }
                }
                split_ok = true;
                break;
            }
        }
        if !split_ok {
            // No candidate split line conserves winding: the box's zeros sit
            // on (or within evaluation noise of) its boundary for every
            // offset tried. Typical culprit is a multiple zero grazing the
            // box, which flattens the function and scrambles windings at
            // this scale. Refine from the centre carrying the whole winding
            // and let the merge pass reunite the report with whatever the
            // neighbouring boxes saw; a refinement that strays farther than
            // a few box widths is rejected as unresolved instead.
            let zero = refine_newton(&mut slice, rect.center(), w as usize, opts)
                .filter(|z| (z.t - rect.center()).norm() <= 4.0 * rect.half())
                .ok_or(Error::Resolution {
                    center: rect.center(),
                    half: rect.half(),
                })?;
            found.push(zero);
        }
    }

    // The root square covers more than the circle; keep the disk only.
    found.retain(|z| z.t.norm() <= search_radius);
    let mut found = merge_close_zeros(&mut slice, found, cluster_half, opts);
    let total: usize = found.iter().map(|z| z.multiplicity).sum();
    if total as i64 != winding {
        return Err(Error::Resolution {
            center: origin,
            half: search_radius,
        });
    }
    found.sort_by(|a, b| {
        (a.t.norm(), a.t.arg())
            .partial_cmp(&(b.t.norm(), b.t.arg()))
            .expect("zero coordinates are finite")
    });

    Ok(SliceZeroSet {
        base: z0.to_vec(),
        direction: b.components().to_vec(),
        requested_radius: radius,
        search_radius,
        status: SliceStatus::Listed,
        zeros: found,
        contour_count: winding as usize,
    })
}

/// One excluded disk around a slice zero.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ExcludedDisk {
    pub center: C64,
    pub radius: f64,
    pub multiplicity: usize,
}

/// Union of disks `|t - a_k| <= r / L(z0 + a_k*b)` around the slice zeros.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExcludedRegion {
    /// Slice has no zeros: nothing is excluded.
    Empty,
    /// Slice identically zero: the whole line is excluded.
    WholeLine,
    Disks { r: f64, disks: Vec<ExcludedDisk> },
}

impl ExcludedRegion {
    pub fn contains(&self, t: C64) -> bool {
        match self {
            ExcludedRegion::Empty => false,
            ExcludedRegion::WholeLine => true,
            ExcludedRegion::Disks { disks, .. } => {
                disks.iter().any(|d| (t - d.center).norm() <= d.radius)
            }
        }
    }
}

/// Build the excluded region for parameter `r >= 0`.
pub fn excluded_region(zs: &SliceZeroSet, l: &WeightFunction, r: f64) -> Result<ExcludedRegion> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::input("exclusion parameter r must be nonnegative and finite"));
    }
    match zs.status {
        SliceStatus::IdenticallyZero => Ok(ExcludedRegion::WholeLine),
        SliceStatus::NonVanishing => Ok(ExcludedRegion::Empty),
        SliceStatus::Listed => {
            let disks = zs
                .zeros
                .iter()
                .map(|z| {
                    let at = translate(&zs.base, z.t, &zs.direction);
                    Ok(ExcludedDisk {
                        center: z.t,
                        radius: r / l.evaluate(&at)?,
                        multiplicity: z.multiplicity,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ExcludedRegion::Disks { r, disks })
        }
    }
}

/// Zeros (with multiplicity) in the closed disk `|t - t0| <= r`.
///
/// Requires the search to have covered the disk: `search_radius >= |t0| + r`.
pub fn counting_function(zs: &SliceZeroSet, t0: C64, r: f64) -> Result<usize> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::input("counting radius must be nonnegative and finite"));
    }
    if zs.status == SliceStatus::IdenticallyZero {
        return Err(Error::input(
            "counting function undefined on an identically zero slice",
        ));
    }
    if zs.search_radius < t0.norm() + r {
        return Err(Error::input(format!(
            "counting disk reaches {:.3}, beyond the searched radius {:.3}",
            t0.norm() + r,
            zs.search_radius
        )));
    }
    Ok(zs
        .zeros
        .iter()
        .filter(|z| (z.t - t0).norm() <= r)
        .map(|z| z.multiplicity)
        .sum())
}
