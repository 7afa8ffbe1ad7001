//! Release acceptance suite: one test per numbered criterion, each printing
//! `[acceptance] criterion NN <name> ... PASS|FAIL` plus a line per clause.
//!
//! Every expected value below is derived independently in this file
//! (exponential rates, phase shifts, falling factorials, zero lattices of
//! sine), never by calling the code under test twice. A criterion whose
//! stated expectation disagrees with the mathematics is still asserted as
//! stated; its failure message explains the measured value.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::Command;
use std::time::{Duration, Instant};

use lindir::criteria::{
    growth_profile, hayman_check, log_derivative_check, max_modulus_check,
    value_distribution_check, CriteriaOptions,
};
use lindir::deriv::{directional_derivative, QuadOptions};
use lindir::fixtures::{build_fixture, FixtureSpec, PolyTerm};
use lindir::grid::{RegionSpec, SliceGridSpec};
use lindir::index::{estimate_index, GlobalIndex, IndexEstimate, PointIndexOptions};
use lindir::pde::{residual_check, slice_ode_crosscheck, DirectionalPde, PdeOptions};
use lindir::point::{inner, Direction};
use lindir::report::{CriterionReport, Trend, Verdict};
use lindir::weight::{build_weight, check_q_class, QClassOptions, WeightFunction, WeightSpec};
use lindir::zeros::{counting_function, find_slice_zeros, ZeroSearchOptions};
use lindir::{C64, EntireFunction};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Collects clause verdicts for one criterion and prints the summary line.
struct Criterion {
    header: String,
    clauses: Vec<(bool, String)>,
}

impl Criterion {
    fn new(number: usize, name: &str) -> Self {
        Criterion {
            header: format!("criterion {number:02} {name}"),
            clauses: Vec::new(),
        }
    }

    fn clause(&mut self, ok: bool, detail: String) {
        self.clauses.push((ok, detail));
    }

    fn finish(self) {
        for (ok, detail) in &self.clauses {
            println!(
                "[acceptance]   {} {detail}",
                if *ok { "ok  " } else { "FAIL" }
            );
        }
        let all_ok = self.clauses.iter().all(|(ok, _)| *ok);
        println!(
            "[acceptance] {} ... {}",
            self.header,
            if all_ok { "PASS" } else { "FAIL" }
        );
        if !all_ok {
            let failed: Vec<&str> = self
                .clauses
                .iter()
                .filter(|(ok, _)| !ok)
                .map(|(_, d)| d.as_str())
                .collect();
            panic!("{} failed:\n  {}", self.header, failed.join("\n  "));
        }
    }
}

/// Deterministic generator for the random-point sweeps.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn c64_in_disc(&mut self, radius: f64) -> C64 {
        let r = radius * self.unit().sqrt();
        let theta = std::f64::consts::TAU * self.unit();
        C64::from_polar(r, theta)
    }

    fn point_in_ball(&mut self, n: usize, radius: f64) -> Vec<C64> {
        loop {
            let p: Vec<C64> = (0..n).map(|_| self.c64_in_disc(radius)).collect();
            let norm_sq: f64 = p.iter().map(|c| c.norm_sqr()).sum();
            if norm_sq.sqrt() <= radius {
                return p;
            }
        }
    }
}

fn rel_err(got: C64, want: C64) -> f64 {
    (got - want).norm() / want.norm().max(f64::MIN_POSITIVE)
}

/// Relative change between the base constant and its enlarged-region rerun.
fn rel_change(rep: &CriterionReport) -> f64 {
    let base = rep.empirical_constant;
    match rep.refined_constant {
        Some(refined) if base != 0.0 => (refined - base).abs() / base.abs(),
        Some(refined) => refined.abs(),
        None => f64::INFINITY,
    }
}

fn sin_fixture() -> EntireFunction {
    build_fixture(&FixtureSpec::SinLinear { c: vec![ONE] }).unwrap()
}

fn exp_fixture() -> EntireFunction {
    build_fixture(&FixtureSpec::ExpLinear { c: vec![ONE, ONE] }).unwrap()
}

fn const_fixture() -> EntireFunction {
    build_fixture(&FixtureSpec::Polynomial {
        n: 1,
        terms: vec![PolyTerm { powers: vec![0], coeff: C64::new(3.0, 0.0) }],
    })
    .unwrap()
}

fn gauss_fixture() -> EntireFunction {
    build_fixture(&FixtureSpec::GaussSquare { n: 1 }).unwrap()
}

fn const_weight(value: f64, dim: usize) -> WeightFunction {
    build_weight(&WeightSpec::Const { value }, dim).unwrap()
}

fn grid(reach: f64) -> SliceGridSpec {
    SliceGridSpec { reach, bases: 24, t_per_base: 8, seed: 1 }
}

fn run_index(
    f: &EntireFunction,
    l: &WeightFunction,
    b: &Direction,
    reach: f64,
    m_cap: usize,
) -> IndexEstimate {
    estimate_index(
        f,
        l,
        b,
        &grid(reach),
        m_cap,
        &PointIndexOptions::default(),
        &QuadOptions::default(),
    )
    .expect("index estimation failed")
}

fn global_name(g: &GlobalIndex) -> String {
    match g {
        GlobalIndex::Bounded(n) => format!("bounded at {n}"),
        GlobalIndex::UnboundedAtScale => "unbounded at this scale".into(),
        GlobalIndex::Indeterminate => "indeterminate".into(),
    }
}

/// `d^m/dt^m` of `sum_k a_k t^k` at `t`, via falling factorials.
fn poly_derivative(coeffs: &[C64], m: usize, t: C64) -> C64 {
    let mut acc = ZERO;
    for (k, &a) in coeffs.iter().enumerate().skip(m) {
        let mut fall = 1.0f64;
        for j in 0..m {
            fall *= (k - j) as f64;
        }
        let mut pw = ONE;
        for _ in 0..(k - m) {
            pw *= t;
        }
        acc += a * fall * pw;
    }
    acc
}

#[test]
fn criterion_01_derivative_engine_matches_symbolic_oracles() {
    let mut c = Criterion::new(1, "derivative-oracle-equivalence");
    let start = Instant::now();
    let quad = QuadOptions::default();
    let mut rng = SplitMix64(0x0ddba11);

    let ce = vec![C64::new(0.8, 0.3), C64::new(-0.5, 1.1)];
    let exp2 = build_fixture(&FixtureSpec::ExpLinear { c: ce.clone() }).unwrap();
    let cs = vec![C64::new(1.2, -0.4)];
    let sin1 = build_fixture(&FixtureSpec::SinLinear { c: cs.clone() }).unwrap();
    let mut coeffs: Vec<C64> = (0..=20)
        .map(|_| rng.c64_in_disc(2.0) + C64::new(0.2, 0.1))
        .collect();
    coeffs[20] = C64::new(1.0, 0.5);
    let terms = coeffs
        .iter()
        .enumerate()
        .map(|(k, &a)| PolyTerm { powers: vec![k], coeff: a })
        .collect();
    let poly = build_fixture(&FixtureSpec::Polynomial { n: 1, terms }).unwrap();

    let mut worst = 0.0f64;
    let mut failures = 0usize;
    for trial in 0..100 {
        let m = 1 + trial % 20;

        let z0 = rng.point_in_ball(2, 5.0);
        let b = vec![rng.c64_in_disc(1.5) + C64::new(0.5, 0.0), rng.c64_in_disc(1.5)];
        let rate = inner(&b, &ce);
        let oracle = rate.powu(m as u32) * inner(&z0, &ce).exp();
        let got = directional_derivative(&exp2, &z0, &b, m, &quad).unwrap();
        worst = worst.max(rel_err(got.value, oracle));
        failures += usize::from(rel_err(got.value, oracle) > 1e-9);

        let z0 = rng.point_in_ball(1, 5.0);
        let b = vec![rng.c64_in_disc(1.0) + C64::new(0.0, 0.7)];
        let rate = inner(&b, &cs);
        let w = inner(&z0, &cs);
        let oracle = rate.powu(m as u32) * (w + C64::new(m as f64 * FRAC_PI_2, 0.0)).sin();
        let got = directional_derivative(&sin1, &z0, &b, m, &quad).unwrap();
        worst = worst.max(rel_err(got.value, oracle));
        failures += usize::from(rel_err(got.value, oracle) > 1e-9);

        let z0 = rng.point_in_ball(1, 5.0);
        let b = vec![rng.c64_in_disc(1.0) + C64::new(0.8, 0.2)];
        let oracle = b[0].powu(m as u32) * poly_derivative(&coeffs, m, z0[0]);
        let got = directional_derivative(&poly, &z0, &b[..], m, &quad).unwrap();
        worst = worst.max(rel_err(got.value, oracle));
        failures += usize::from(rel_err(got.value, oracle) > 1e-9);
    }
    let elapsed = start.elapsed();
    c.clause(
        failures == 0,
        format!(
            "exp/sin/poly oracles, 100 points |z| <= 5, orders <= 20: \
             {failures} points above 1e-9 (worst rel err {worst:.3e})"
        ),
    );
    c.clause(
        elapsed < Duration::from_secs(10),
        format!("runtime {elapsed:?} < 10 s"),
    );
    c.finish();
}

#[test]
fn criterion_02_index_anchors_are_stable() {
    let mut c = Criterion::new(2, "index-anchors");
    let b1 = Direction::one();
    let b11 = Direction::new(vec![ONE, ONE]).unwrap();

    let sinf = sin_fixture();
    let l1 = const_weight(1.0, 1);
    let expf = exp_fixture();
    let l2 = const_weight(2.0, 2);
    let constf = const_fixture();

    let anchors: [(&str, &EntireFunction, &WeightFunction, &Direction, usize); 3] = [
        ("sine with unit weight", &sinf, &l1, &b1, 1),
        ("plane exponential with weight 2", &expf, &l2, &b11, 0),
        ("constant function", &constf, &l1, &b1, 0),
    ];
    for (name, f, l, b, expected) in anchors {
        let base = run_index(f, l, b, 10.0, 12);
        let ok_base = matches!(base.global, GlobalIndex::Bounded(n) if n == expected);
        c.clause(
            ok_base,
            format!(
                "{name}: global index {} (expected bounded at {expected}) \
                 on the radius-10 grid with cap 12",
                global_name(&base.global)
            ),
        );
        let deeper = run_index(f, l, b, 10.0, 24);
        let wider = run_index(f, l, b, 20.0, 12);
        c.clause(
            matches!(deeper.global, GlobalIndex::Bounded(n) if n == expected)
                && matches!(wider.global, GlobalIndex::Bounded(n) if n == expected),
            format!(
                "{name}: stable under doubling the cap ({}) and the radius ({})",
                global_name(&deeper.global),
                global_name(&wider.global)
            ),
        );
    }
    c.finish();
}

#[test]
fn criterion_03_unbounded_growth_escapes_the_cap() {
    let mut c = Criterion::new(3, "unbounded-detection");
    let f = gauss_fixture();
    let l = const_weight(1.0, 1);
    let b = Direction::one();

    let r2 = run_index(&f, &l, &b, 2.0, 12);
    let r4 = run_index(&f, &l, &b, 4.0, 12);
    let r8 = run_index(&f, &l, &b, 8.0, 12);
    let m2 = r2.found_max.unwrap_or(0);
    let m4 = r4.found_max.unwrap_or(0);
    let m8 = r8.found_max.unwrap_or(0);

    c.clause(
        m2 < m4 && m4 < m8,
        format!("per-point index maxima strictly increase across radii 2 -> 4 -> 8: {m2} -> {m4} -> {m8}"),
    );
    c.clause(
        r8.not_found_count > 0,
        format!(
            "radius 8 with cap 12 has points past the cap: {} of {} not found",
            r8.not_found_count,
            r8.per_point.len()
        ),
    );
    c.clause(
        matches!(r8.global, GlobalIndex::UnboundedAtScale),
        format!("radius-8 verdict is {}", global_name(&r8.global)),
    );
    c.finish();
}

#[test]
fn criterion_04_sine_slice_zeros_and_counts() {
    let mut c = Criterion::new(4, "zero-finding");
    let f = sin_fixture();
    let zs = find_slice_zeros(&f, &[ZERO], &Direction::one(), 10.0, &ZeroSearchOptions::default())
        .expect("zero search failed");

    c.clause(
        zs.zeros.len() == 7,
        format!("exactly 7 zeros in |t| <= 10: found {}", zs.zeros.len()),
    );
    let mut ks: Vec<i64> = Vec::new();
    let mut worst = 0.0f64;
    for z in &zs.zeros {
        let k = (z.t.re / PI).round();
        let dist = (z.t - C64::new(k * PI, 0.0)).norm();
        worst = worst.max(dist);
        ks.push(k as i64);
    }
    ks.sort_unstable();
    c.clause(
        worst <= 1e-8 && ks == [-3, -2, -1, 0, 1, 2, 3],
        format!("zeros sit at k*pi for k = -3..=3 within 1e-8 (worst offset {worst:.3e})"),
    );
    c.clause(
        zs.contour_count == 7,
        format!("contour count {} (winding of the search circle)", zs.contour_count),
    );
    let n10 = counting_function(&zs, ZERO, 10.0).unwrap();
    let n1 = counting_function(&zs, ZERO, 1.0).unwrap();
    c.clause(
        n10 == 7 && n1 == 1,
        format!("counting function: n(10) = {n10} (expected 7), n(1) = {n1} (expected 1)"),
    );
    c.finish();
}

#[test]
fn criterion_05_log_derivative_constants() {
    let mut c = Criterion::new(5, "log-derivative-constant");
    let opts = CriteriaOptions::default();

    let sinf = sin_fixture();
    let l1 = const_weight(1.0, 1);
    let rep = log_derivative_check(&sinf, &l1, &Direction::one(), 0.5, &opts)
        .expect("log-derivative check failed");
    let p = rep.empirical_constant;
    c.clause(
        (1.80..=1.87).contains(&p),
        format!(
            "sine, unit weight, r = 0.5: sup |g'/g| outside the excluded disks \
             measured {p:.4}, expected within [1.80, 1.87]. The band anchors on the \
             real-axis maximum cot(0.5) = 1.8305, but the true supremum over the \
             excluded-disk boundary circles |t - k*pi| = 0.5 is attained at the \
             imaginary offsets k*pi +/- 0.5i, where |cos/sin| = coth(0.5) = 2.1640; \
             a boundary scan that covers the full circles therefore reports = 2.164, \
             and reproducing the band would require ignoring the off-axis boundary"
        ),
    );
    let change = rel_change(&rep);
    c.clause(
        change <= 0.03,
        format!("sine constant stable within 3% under region doubling: change {:.3}%", 100.0 * change),
    );

    let expf = exp_fixture();
    let l2 = const_weight(2.0, 2);
    let b11 = Direction::new(vec![ONE, ONE]).unwrap();
    let rep = log_derivative_check(&expf, &l2, &b11, 0.5, &opts)
        .expect("log-derivative check failed");
    let p = rep.empirical_constant;
    c.clause(
        (p - 1.0).abs() <= 1e-6,
        format!("plane exponential with weight 2: |g'/g|/L = {p} (expected 1 within 1e-6)"),
    );
    c.finish();
}

#[test]
fn criterion_06_growth_slopes_match_exponential_type() {
    let mut c = Criterion::new(6, "growth-type-anchor");
    let opts = CriteriaOptions::default();

    let sinf = sin_fixture();
    let profile = growth_profile(&sinf, &Direction::one(), &[ZERO], 50.0, 32, &opts)
        .expect("growth profile failed");
    let slope = profile.report.empirical_constant;
    c.clause(
        (slope - 1.0).abs() <= 0.05,
        format!("sine type: fitted ln-max slope {slope:.4} within 5% of 1"),
    );

    let expf = exp_fixture();
    let b11 = Direction::new(vec![ONE, ONE]).unwrap();
    let profile = growth_profile(&expf, &b11, &[ZERO, ZERO], 50.0, 32, &opts)
        .expect("growth profile failed");
    let slope = profile.report.empirical_constant;
    c.clause(
        (slope - 2.0).abs() <= 0.10,
        format!("plane exponential along (1,1): fitted slope {slope:.4} within 5% of 2"),
    );
    c.finish();
}

#[test]
fn criterion_07_characterization_checks_cohere() {
    let mut c = Criterion::new(7, "criteria-coherence");
    let opts = CriteriaOptions { trend_factor: 1.5, ..CriteriaOptions::default() };

    let sinf = sin_fixture();
    let expf = exp_fixture();
    let constf = const_fixture();
    let l1 = const_weight(1.0, 1);
    let l2 = const_weight(2.0, 2);
    let b1 = Direction::one();
    let b11 = Direction::new(vec![ONE, ONE]).unwrap();

    let bounded: [(&str, &EntireFunction, &WeightFunction, &Direction, usize, C64); 3] = [
        ("sine", &sinf, &l1, &b1, 1, ZERO),
        ("plane exponential", &expf, &l2, &b11, 0, ONE),
        ("constant", &constf, &l1, &b1, 0, ZERO),
    ];
    for (name, f, l, b, n_probe, value) in bounded {
        let hay = hayman_check(f, l, b, n_probe, &opts).expect("derivative-ratio check failed");
        let maxm = max_modulus_check(f, l, b, 1.0, 2.0, &opts).expect("modulus check failed");
        let vd = value_distribution_check(f, l, b, &[value], 0.5, &opts)
            .expect("value-distribution check failed");
        for (check, rep) in [("derivative ratio", &hay), ("max modulus", &maxm), ("value counts", &vd)] {
            let change = rel_change(rep);
            c.clause(
                rep.verdict == Verdict::Pass && change <= 0.10,
                format!(
                    "{name}: {check} verdict {:?}, constant {:.4} changing {:.2}% <= 10% under region doubling",
                    rep.verdict,
                    rep.empirical_constant,
                    100.0 * change
                ),
            );
        }
    }

    // Square-exponential growth: every constant keeps climbing with the
    // region, so all three checks must flag a growing trend. Its derivative
    // ratios roughly double when the region radius doubles, which is exactly
    // the default trend threshold; 1.5 keeps the flag decisive.
    let gauss = gauss_fixture();
    let gopts = CriteriaOptions {
        region: RegionSpec { radius: 2.0, z_count: 24, t_count: 6, seed: 1 },
        trend_factor: 1.5,
        ..CriteriaOptions::default()
    };
    let hay = hayman_check(&gauss, &l1, &b1, 1, &gopts).expect("derivative-ratio check failed");
    let maxm = max_modulus_check(&gauss, &l1, &b1, 1.0, 2.0, &gopts).expect("modulus check failed");
    let vd = value_distribution_check(&gauss, &l1, &b1, &[ONE], 0.5, &gopts)
        .expect("value-distribution check failed");
    for (check, rep) in [("derivative ratio", &hay), ("max modulus", &maxm), ("value counts", &vd)] {
        c.clause(
            rep.trend == Some(Trend::Growing),
            format!(
                "square exponential: {check} trend {:?} (constant {:.4} -> {:?})",
                rep.trend, rep.empirical_constant, rep.refined_constant
            ),
        );
    }
    c.finish();
}

#[test]
fn criterion_08_weight_class_membership() {
    let mut c = Criterion::new(8, "weight-class-checks");
    let opts = QClassOptions::default();

    let lc = const_weight(2.0, 1);
    let rep = check_q_class(&lc, &Direction::one(), &opts).expect("class check failed");
    c.clause(
        rep.report.verdict == Verdict::Pass,
        format!("constant weight: verdict {:?}", rep.report.verdict),
    );

    let poly = build_weight(&WeightSpec::PolyAbs { c0: 1.0, c1: 1.0, p: 1.0 }, 2).unwrap();
    let b = Direction::new(vec![ONE, ZERO]).unwrap();
    let rep = check_q_class(&poly, &b, &opts).expect("class check failed");
    c.clause(
        rep.report.verdict == Verdict::Pass,
        format!("1 + |z| weight: verdict {:?}", rep.report.verdict),
    );
    let row = rep
        .rows
        .iter()
        .find(|r| r.eta == 1.0)
        .expect("default eta ladder includes 1.0");
    c.clause(
        row.lambda2 <= 2.0,
        format!("1 + |z| upper ratio bound at eta = 1: lambda2 = {:.4} <= 2", row.lambda2),
    );

    let expw = build_weight(&WeightSpec::ExpAbs { coeff: 1.0, power: 2.0 }, 1).unwrap();
    let rep = check_q_class(&expw, &Direction::one(), &opts).expect("class check failed");
    let lambda2: Vec<f64> = rep.rows.iter().map(|r| r.lambda2).collect();
    c.clause(
        rep.report.verdict == Verdict::Fail && rep.report.trend == Some(Trend::Growing),
        format!(
            "exp(|z|^2) weight: verdict {:?}, trend {:?}, lambda2 per eta {:?} — \
             expected a growth-trend failure, but membership genuinely holds: on the \
             test disk |t - t0| <= eta/L(z + t0 b) the ratio L(z+tb)/L(z+t0b) equals \
             exp(|u+d|^2 - |u|^2) with |d| <= eta*exp(-|u|^2), and the exponent \
             2|u||d| + |d|^2 <= 2*eta*sup(x*exp(-x^2)) + eta^2 = eta*sqrt(2/e) + eta^2 \
             stays uniformly bounded (about exp(1.23) = 3.4 at eta = 1, attained near \
             |u| = 1/sqrt(2)): the disks shrink faster than the weight grows, so the \
             ratio cannot trend upward and the check rightly passes",
            rep.report.verdict, rep.report.trend, lambda2
        ),
    );
    c.finish();
}

#[test]
fn criterion_09_pde_residual_and_slice_ode_crosscheck() {
    let mut c = Criterion::new(9, "pde-verification");
    let f = exp_fixture();
    let b = Direction::new(vec![ONE, ONE]).unwrap();
    // a0*F + a1*dF/db + a2*d2F/db2 = 0 with a = (-4, 0, 1).
    let pde = DirectionalPde::with_constant_coefficients(
        b,
        vec![C64::new(-4.0, 0.0), ZERO, ONE],
        None,
    )
    .unwrap();
    let opts = PdeOptions::default();

    let res = residual_check(&pde, &f, &opts).expect("residual check failed");
    c.clause(
        res.report.verdict == Verdict::Pass && res.max_relative <= 1e-9,
        format!(
            "second directional derivative equals 4F: max relative residual {:.3e} <= 1e-9 over {} points",
            res.max_relative, res.points
        ),
    );

    let cross = slice_ode_crosscheck(&pde, &f, &[ZERO, ZERO], 2.0, 8, &opts)
        .expect("slice integration failed");
    let worst = cross
        .checkpoints
        .iter()
        .map(|row| row.error)
        .fold(0.0f64, f64::max);
    c.clause(
        cross.report.verdict == Verdict::Pass && worst <= 1e-8,
        format!(
            "slice initial-value integration matches direct evaluation on t in [0, 2]: \
             worst checkpoint deviation {worst:.3e} <= 1e-8 across {} checkpoints",
            cross.checkpoints.len()
        ),
    );
    c.finish();
}

#[test]
fn criterion_10_reports_are_byte_reproducible() {
    let mut c = Criterion::new(10, "determinism");
    let dir = tempfile::tempdir().unwrap();

    let configs = [
        (
            "index estimation",
            serde_json::json!({
                "fixture": {"name": "sin_linear", "params": {"c": [[1.0, 0.0]]}},
                "weight": "const:1",
                "direction": [[1.0, 0.0]],
                "operation": {
                    "name": "estimate-index",
                    "m_cap": 8,
                    "grid": {"reach": 6.0, "bases": 6, "t_per_base": 3, "seed": 11}
                }
            }),
        ),
        (
            "weight-class check",
            serde_json::json!({
                "weight": "poly_abs:1,1,1",
                "direction": [[1.0, 0.0]],
                "operation": {
                    "name": "check-q",
                    "options": {
                        "etas": [0.5, 1.0],
                        "region": {"radius": 5.0, "z_count": 40, "t_count": 8, "seed": 3}
                    }
                }
            }),
        ),
    ];
    for (i, (name, body)) in configs.iter().enumerate() {
        let path = dir.path().join(format!("run{i}.json"));
        std::fs::write(&path, serde_json::to_vec_pretty(body).unwrap()).unwrap();
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_lindir"))
                .arg("--config")
                .arg(&path)
                .output()
                .unwrap()
        };
        let first = run();
        let second = run();
        assert!(
            first.status.success(),
            "{name}: {}",
            String::from_utf8_lossy(&first.stderr)
        );
        c.clause(
            first.stdout == second.stdout && !first.stdout.is_empty(),
            format!(
                "{name}: two runs of the same seeded configuration emit identical payloads ({} bytes)",
                first.stdout.len()
            ),
        );
    }
    c.finish();
}
