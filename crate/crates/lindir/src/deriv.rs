//! Directional and joint partial derivatives by contour quadrature.
//!
//! For a slice `g(t) = F(z0 + t*b)` the `m`-th derivative at `t = 0` is the
//! Cauchy integral over a circle of radius `rho`, discretized by the
//! trapezoidal rule on `N` equispaced nodes:
//!
//! ```text
//! g^(m)(0) ~= m! / (N rho^m) * sum_k g(rho e^{i th_k}) e^{-i m th_k}
//! ```
//!
//! For entire integrands the rule converges spectrally, so the change under
//! one node doubling is a reliable error estimate. Joint partials use the
//! same rule per axis over the skeleton of a polydisc.
//!
//! The absolute rounding floor of the rule is about
//! `eps * m! * max|g| / rho^m`, which is why the contour radius is chosen to
//! minimize `max|g| / rho^m` over a fixed geometric ladder.

use crate::error::{Error, Result};
use crate::function::{check_dims, EntireFunction, Slice};
use crate::point::C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Radius ladder: `0.5 * 2^k` for `k = 0..12`.
pub const LADDER_BASE: f64 = 0.5;
pub const LADDER_RUNGS: usize = 12;
const SCAN_ANGLES: usize = 32;
/// Evaluation cap for the product rule across all axes combined.
const JOINT_TOTAL_BUDGET: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadOptions {
    /// Contour radius; `None` selects one from the ladder scan.
    pub radius: Option<f64>,
    /// Starting node count (rounded up to a power of two, at least 16).
    pub min_nodes: usize,
    /// Node budget per contour (per axis for joint partials).
    pub max_nodes: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            radius: None,
            min_nodes: 16,
            max_nodes: 1 << 14,
            rel_tol: 1e-12,
            abs_tol: 1e-14,
        }
    }
}

impl QuadOptions {
    pub fn with_radius(mut self, radius: f64) -> Self {
        self.radius = Some(radius);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(r) = self.radius {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::input("quadrature radius must be positive and finite"));
            }
        }
        if !self.max_nodes.is_power_of_two() {
            return Err(Error::input("max_nodes must be a power of two"));
        }
        if !(self.rel_tol >= 0.0 && self.abs_tol >= 0.0) {
            return Err(Error::input("quadrature tolerances must be nonnegative"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DerivativeResult {
    pub value: C64,
    pub order: usize,
    /// Contour radius; 0 on the direct path for order 0.
    pub radius_used: f64,
    /// Change under the last node doubling.
    pub est_abs_error: f64,
    pub nodes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct JointDerivativeResult {
    pub value: C64,
    pub orders: Vec<usize>,
    pub radii: Vec<f64>,
    pub est_abs_error: f64,
    pub nodes_per_axis: Vec<usize>,
}

/// `max |g|` sampled on each ladder circle, stored as logs.
///
/// `f64::NAN` marks a rung where the samples overflowed; `-inf` marks a rung
/// where every sample was zero.
#[derive(Clone, Debug)]
pub struct LadderScan {
    pub rungs: Vec<f64>,
    pub log_max: Vec<f64>,
}

/// Sample the ladder circles once; reusable across derivative orders.
pub fn ladder_scan(f: &EntireFunction, z0: &[C64], b: &[C64]) -> Result<LadderScan> {
    check_dims(f, z0, b)?;
    let mut slice = Slice::new(f, z0, b)?;
    let mut rungs = Vec::with_capacity(LADDER_RUNGS);
    let mut log_max = Vec::with_capacity(LADDER_RUNGS);
    let mut rho = LADDER_BASE;
    for _ in 0..LADDER_RUNGS {
        let mut mx = 0.0f64;
        let mut finite = true;
        for k in 0..SCAN_ANGLES {
            let theta = TAU * k as f64 / SCAN_ANGLES as f64;
            let v = slice.eval(C64::new(rho * theta.cos(), rho * theta.sin()));
            let a = v.norm();
            if !a.is_finite() {
                finite = false;
                break;
            }
            mx = mx.max(a);
        }
        rungs.push(rho);
        log_max.push(if finite { mx.ln() } else { f64::NAN });
        rho *= 2.0;
    }
    Ok(LadderScan { rungs, log_max })
}

/// Rung minimizing `max|g| / rho^m`; ties and the all-overflow fallback go to
/// the smaller radius.
pub fn pick_radius_from(scan: &LadderScan, m: usize) -> f64 {
    let mut best: Option<(f64, f64)> = None;
    for (&rho, &lm) in scan.rungs.iter().zip(&scan.log_max) {
        if lm.is_nan() {
            continue;
        }
        let score = lm - m as f64 * rho.ln();
        match best {
            Some((s, _)) if s <= score => {}
            _ => best = Some((score, rho)),
        }
    }
    best.map(|(_, rho)| rho).unwrap_or(1.0)
}

/// Contour radius for the `m`-th directional derivative at `z0`.
pub fn pick_radius(f: &EntireFunction, z0: &[C64], b: &[C64], m: usize) -> Result<f64> {
    Ok(pick_radius_from(&ladder_scan(f, z0, b)?, m))
}

/// `d^m/dt^m F(z0 + t*b)` at `t = 0`.
pub fn directional_derivative(
    f: &EntireFunction,
    z0: &[C64],
    b: &[C64],
    m: usize,
    opts: &QuadOptions,
) -> Result<DerivativeResult> {
    check_dims(f, z0, b)?;
    opts.validate()?;
    if m == 0 {
        // Zero order bypasses quadrature: the value is exact.
        return Ok(DerivativeResult {
            value: f.eval_raw(z0),
            order: 0,
            radius_used: 0.0,
            est_abs_error: 0.0,
            nodes: 16,
        });
    }
    let radius = match opts.radius {
        Some(r) => r,
        None => pick_radius(f, z0, b, m)?,
    };
    let mut slice = Slice::new(f, z0, b)?;
    let start = start_nodes(m, opts);
    if start.saturating_mul(2) > opts.max_nodes {
        return Err(Error::input(format!(
            "node budget {} cannot fit order {m} with one doubling",
            opts.max_nodes
        )));
    }

    let mut values = eval_circle(&mut slice, radius, start)?;
    let mut prev = fourier_mode(&values, m, radius);
    loop {
        values = double_circle(&mut slice, radius, values)?;
        let cur = fourier_mode(&values, m, radius);
        let est = (cur - prev).norm();
        let result = DerivativeResult {
            value: cur,
            order: m,
            radius_used: radius,
            est_abs_error: est,
            nodes: values.len(),
        };
        if est <= opts.abs_tol.max(opts.rel_tol * cur.norm()) {
            return Ok(result);
        }
        if values.len() >= opts.max_nodes {
            return Err(Error::Accuracy { best: result });
        }
        prev = cur;
    }
}

/// Derivative of the slice through `z0` at parameter `t0` instead of 0: the
/// base point is moved to `z0 + t0*b` and the contour recentered there.
pub fn directional_derivative_at(
    f: &EntireFunction,
    z0: &[C64],
    b: &[C64],
    t0: C64,
    m: usize,
    opts: &QuadOptions,
) -> Result<DerivativeResult> {
    check_dims(f, z0, b)?;
    let rebased = crate::point::translate(z0, t0, b);
    directional_derivative(f, &rebased, b, m, opts)
}

/// Joint partial `d^{|K|} F / dz^K` over the skeleton of a polydisc.
///
/// `orders` is the multi-index `K`; `radii` gives per-axis circle radii, or
/// `None` to pick each from a ladder scan along that coordinate axis.
pub fn joint_partial_derivative(
    f: &EntireFunction,
    z0: &[C64],
    orders: &[usize],
    radii: Option<&[f64]>,
    opts: &QuadOptions,
) -> Result<JointDerivativeResult> {
    let n = f.dim();
    if z0.len() != n {
        return Err(Error::DimensionMismatch {
            context: "joint derivative base point",
            expected: n,
            got: z0.len(),
        });
    }
    if orders.len() != n {
        return Err(Error::DimensionMismatch {
            context: "joint derivative multi-index",
            expected: n,
            got: orders.len(),
        });
    }
    opts.validate()?;
    if orders.iter().all(|&k| k == 0) {
        return Ok(JointDerivativeResult {
            value: f.eval_raw(z0),
            orders: orders.to_vec(),
            radii: vec![0.0; n],
            est_abs_error: 0.0,
            nodes_per_axis: vec![16; n],
        });
    }

    let radii: Vec<f64> = match radii {
        Some(r) => {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    context: "joint derivative radii",
                    expected: n,
                    got: r.len(),
                });
            }
            if r.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
                return Err(Error::input("skeleton radii must be positive and finite"));
            }
            r.to_vec()
        }
        None => {
            let mut picked = Vec::with_capacity(n);
            for j in 0..n {
                let mut axis = vec![C64::new(0.0, 0.0); n];
                axis[j] = C64::new(1.0, 0.0);
                picked.push(pick_radius(f, z0, &axis, orders[j])?);
            }
            picked
        }
    };

    let mut nodes: Vec<usize> = orders.iter().map(|&k| start_nodes(k, opts)).collect();
    let mut prev = skeleton_mode(f, z0, orders, &radii, &nodes)?;
    loop {
        let doubled_total = nodes
            .iter()
            .try_fold(1usize, |acc, &nj| acc.checked_mul(nj * 2))
            .filter(|&t| t <= JOINT_TOTAL_BUDGET);
        if doubled_total.is_none() {
            return Err(Error::Accuracy {
                best: DerivativeResult {
                    value: prev,
                    order: orders.iter().sum(),
                    radius_used: radii.iter().cloned().fold(0.0, f64::max),
                    est_abs_error: f64::INFINITY,
                    nodes: nodes.iter().copied().max().unwrap_or(16),
                },
            });
        }
        for nj in nodes.iter_mut() {
            *nj *= 2;
        }
        let cur = skeleton_mode(f, z0, orders, &radii, &nodes)?;
        let est = (cur - prev).norm();
        let result = JointDerivativeResult {
            value: cur,
            orders: orders.to_vec(),
            radii: radii.clone(),
            est_abs_error: est,
            nodes_per_axis: nodes.clone(),
        };
        if est <= opts.abs_tol.max(opts.rel_tol * cur.norm()) {
            return Ok(result);
        }
        if nodes.iter().any(|&nj| nj >= opts.max_nodes) {
            return Err(Error::Accuracy {
                best: DerivativeResult {
                    value: cur,
                    order: orders.iter().sum(),
                    radius_used: radii.iter().cloned().fold(0.0, f64::max),
                    est_abs_error: est,
                    nodes: nodes.iter().copied().max().unwrap_or(16),
                },
            });
        }
        prev = cur;
    }
}

fn start_nodes(m: usize, opts: &QuadOptions) -> usize {
    let floor = (m + 1).next_power_of_two();
    let base = opts.min_nodes.max(16).next_power_of_two();
    base.max(floor)
}

fn eval_circle(slice: &mut Slice<'_>, rho: f64, n: usize) -> Result<Vec<C64>> {
    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        let theta = TAU * k as f64 / n as f64;
        let v = slice.eval(C64::new(rho * theta.cos(), rho * theta.sin()));
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::input(format!(
                "function is not finite on the contour of radius {rho}"
            )));
        }
        values.push(v);
    }
    Ok(values)
}

/// Refine to `2N` nodes reusing the existing `N` values at even slots.
fn double_circle(slice: &mut Slice<'_>, rho: f64, old: Vec<C64>) -> Result<Vec<C64>> {
    let n2 = old.len() * 2;
    let mut values = Vec::with_capacity(n2);
    for (k, v) in old.into_iter().enumerate() {
        values.push(v);
        let theta = TAU * (2 * k + 1) as f64 / n2 as f64;
        let w = slice.eval(C64::new(rho * theta.cos(), rho * theta.sin()));
        if !w.re.is_finite() || !w.im.is_finite() {
            return Err(Error::input(format!(
                "function is not finite on the contour of radius {rho}"
            )));
        }
        values.push(w);
    }
    Ok(values)
}

/// Trapezoidal Fourier mode: `m!/(N rho^m) * sum_k g_k e^{-2 pi i m k / N}`.
fn fourier_mode(values: &[C64], m: usize, rho: f64) -> C64 {
    let n = values.len();
    let table = phase_table(n);
    let mut terms: Vec<C64> = Vec::with_capacity(n);
    for (k, &g) in values.iter().enumerate() {
        let idx = (m as u64 * k as u64 % n as u64) as usize;
        terms.push(g * table[idx]);
    }
    pairwise_sum(&terms) * contour_scale(m, rho, n)
}

/// Product-rule value over the skeleton for the multi-index `orders`.
fn skeleton_mode(
    f: &EntireFunction,
    z0: &[C64],
    orders: &[usize],
    radii: &[f64],
    nodes: &[usize],
) -> Result<C64> {
    let n = z0.len();
    let coords: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            (0..nodes[j])
                .map(|k| {
                    let theta = TAU * k as f64 / nodes[j] as f64;
                    z0[j] + C64::new(radii[j] * theta.cos(), radii[j] * theta.sin())
                })
                .collect()
        })
        .collect();
    let phases: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            let table = phase_table(nodes[j]);
            (0..nodes[j])
                .map(|k| table[(orders[j] as u64 * k as u64 % nodes[j] as u64) as usize])
                .collect()
        })
        .collect();

    let total: usize = nodes.iter().product();
    let mut w = vec![C64::new(0.0, 0.0); n];
    let mut terms: Vec<C64> = Vec::with_capacity(total);
    for flat in 0..total {
        let mut rem = flat;
        let mut phase = C64::new(1.0, 0.0);
        for j in (0..n).rev() {
            let k = rem % nodes[j];
            rem /= nodes[j];
            w[j] = coords[j][k];
            phase *= phases[j][k];
        }
        let v = f.eval_raw(&w);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::input(
                "function is not finite on the polydisc skeleton".to_string(),
            ));
        }
        terms.push(v * phase);
    }
    let mut scale = 1.0f64;
    for j in 0..n {
        scale *= contour_scale(orders[j], radii[j], nodes[j]);
    }
    Ok(pairwise_sum(&terms) * scale)
}

fn phase_table(n: usize) -> Vec<C64> {
    (0..n)
        .map(|j| {
            let theta = -TAU * j as f64 / n as f64;
            C64::new(theta.cos(), theta.sin())
        })
        .collect()
}

/// Summation with a fixed pairwise reduction tree, independent of chunking.
pub fn pairwise_sum(terms: &[C64]) -> C64 {
    match terms.len() {
        0 => C64::new(0.0, 0.0),
        1 => terms[0],
        2 => terms[0] + terms[1],
        len => {
            let half = len / 2;
            pairwise_sum(&terms[..half]) + pairwise_sum(&terms[half..])
        }
    }
}

pub(crate) fn factorial_f64(m: usize) -> f64 {
    (1..=m).fold(1.0f64, |acc, k| acc * k as f64)
}

pub(crate) fn ln_factorial(m: usize) -> f64 {
    (1..=m).map(|k| (k as f64).ln()).sum()
}

/// `m! / (rho^m N)`, falling back to log space when the direct form
/// overflows.
fn contour_scale(m: usize, rho: f64, n: usize) -> f64 {
    let direct = factorial_f64(m) / (rho.powi(m as i32) * n as f64);
    if direct.is_finite() && direct != 0.0 {
        direct
    } else {
        (ln_factorial(m) - m as f64 * rho.ln() - (n as f64).ln()).exp()
    }
}
