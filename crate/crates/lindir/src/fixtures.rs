//! Built-in entire function fixtures, addressable by name and parameters.
//!
//! Fixtures with a closed-form directional derivative (`exp_linear`,
//! `sin_linear`, `polynomial`) carry it as an oracle; everything downstream
//! can cross-check quadrature against it. The linear forms below use the
//! Hermitian pairing, so `exp_linear` with `c` is `exp(sum_j z_j conj(c_j))`
//! and stays holomorphic in `z`.

use crate::error::{Error, Result};
use crate::function::EntireFunction;
use crate::point::{inner, C64};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One-variable building block for product and composition fixtures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OneVarSpec {
    /// `e^{rate * t}`
    Exp { rate: C64 },
    /// `sin(rate * t)`
    Sin { rate: C64 },
    /// `cos(rate * t)`
    Cos { rate: C64 },
    /// `sum_k coeffs[k] * t^k`
    Poly { coeffs: Vec<C64> },
}

impl OneVarSpec {
    fn eval(&self, t: C64) -> C64 {
        match self {
            OneVarSpec::Exp { rate } => (rate * t).exp(),
            OneVarSpec::Sin { rate } => (rate * t).sin(),
            OneVarSpec::Cos { rate } => (rate * t).cos(),
            OneVarSpec::Poly { coeffs } => {
                let mut acc = C64::new(0.0, 0.0);
                for &c in coeffs.iter().rev() {
                    acc = acc * t + c;
                }
                acc
            }
        }
    }

    fn validate(&self) -> Result<()> {
        if let OneVarSpec::Poly { coeffs } = self {
            if coeffs.is_empty() {
                return Err(Error::fixture("factor polynomial needs coefficients"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub powers: Vec<usize>,
    pub coeff: C64,
}

fn default_factor_count() -> usize {
    200
}

fn default_dim() -> usize {
    1
}

/// Fixture descriptor as it appears in JSON configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params", rename_all = "snake_case")]
pub enum FixtureSpec {
    /// `exp(<z, c>)`
    ExpLinear { c: Vec<C64> },
    /// `sin(<z, c>)`
    SinLinear { c: Vec<C64> },
    /// `f_1(z_1) * ... * f_n(z_n)`
    SeparableProduct { factors: Vec<OneVarSpec> },
    /// `f(z_1 + ... + z_n)`
    CompositeSum {
        #[serde(default = "default_dim")]
        n: usize,
        inner: OneVarSpec,
    },
    /// `sum_K coeff_K * z^K` from an explicit coefficient map
    Polynomial {
        #[serde(default = "default_dim")]
        n: usize,
        terms: Vec<PolyTerm>,
    },
    /// Genus-`genus` product over zeros `a_k = scale * k^power` of the
    /// linear form `w = <z, form>`; truncated at `count` factors.
    CanonicalProduct {
        genus: usize,
        scale: f64,
        power: f64,
        #[serde(default = "default_factor_count")]
        count: usize,
        form: Vec<C64>,
    },
    /// `exp(z_1^2)`, the stock example whose index grows with `|z|`.
    GaussSquare {
        #[serde(default = "default_dim")]
        n: usize,
    },
}

impl FixtureSpec {
    pub fn name(&self) -> &'static str {
        match self {
            FixtureSpec::ExpLinear { .. } => "exp_linear",
            FixtureSpec::SinLinear { .. } => "sin_linear",
            FixtureSpec::SeparableProduct { .. } => "separable_product",
            FixtureSpec::CompositeSum { .. } => "composite_sum",
            FixtureSpec::Polynomial { .. } => "polynomial",
            FixtureSpec::CanonicalProduct { .. } => "canonical_product",
            FixtureSpec::GaussSquare { .. } => "gauss_square",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            FixtureSpec::ExpLinear { c } | FixtureSpec::SinLinear { c } => c.len(),
            FixtureSpec::SeparableProduct { factors } => factors.len(),
            FixtureSpec::CompositeSum { n, .. } => *n,
            FixtureSpec::Polynomial { n, .. } => *n,
            FixtureSpec::CanonicalProduct { form, .. } => form.len(),
            FixtureSpec::GaussSquare { n } => *n,
        }
    }
}

/// Construct the entire function described by `spec`.
pub fn build_fixture(spec: &FixtureSpec) -> Result<EntireFunction> {
    match spec {
        FixtureSpec::ExpLinear { c } => build_exp_linear(c),
        FixtureSpec::SinLinear { c } => build_sin_linear(c),
        FixtureSpec::SeparableProduct { factors } => build_separable(factors),
        FixtureSpec::CompositeSum { n, inner } => build_composite(*n, inner),
        FixtureSpec::Polynomial { n, terms } => build_polynomial(*n, terms),
        FixtureSpec::CanonicalProduct {
            genus,
            scale,
            power,
            count,
            form,
        } => build_canonical(*genus, *scale, *power, *count, form),
        FixtureSpec::GaussSquare { n } => build_gauss_square(*n),
    }
}

fn check_linear_coeffs(c: &[C64]) -> Result<()> {
    if c.is_empty() {
        return Err(Error::fixture("linear form needs at least one coefficient"));
    }
    if c.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
        return Err(Error::fixture("linear form coefficients must be finite"));
    }
    Ok(())
}

fn build_exp_linear(c: &[C64]) -> Result<EntireFunction> {
    check_linear_coeffs(c)?;
    let cv = c.to_vec();
    let co = cv.clone();
    Ok(EntireFunction::from_fn(
        "exp_linear",
        c.len(),
        "exp(<z, c>)",
        move |z| inner(z, &cv).exp(),
    )
    .with_exact_derivative(move |z, b, m| {
        let lambda = inner(b, &co);
        lambda.powu(m as u32) * inner(z, &co).exp()
    }))
}

fn build_sin_linear(c: &[C64]) -> Result<EntireFunction> {
    check_linear_coeffs(c)?;
    let cv = c.to_vec();
    let co = cv.clone();
    Ok(EntireFunction::from_fn(
        "sin_linear",
        c.len(),
        "sin(<z, c>)",
        move |z| inner(z, &cv).sin(),
    )
    .with_exact_derivative(move |z, b, m| {
        let lambda = inner(b, &co);
        let w = inner(z, &co);
        let cycle = match m % 4 {
            0 => w.sin(),
            1 => w.cos(),
            2 => -w.sin(),
            _ => -w.cos(),
        };
        lambda.powu(m as u32) * cycle
    }))
}

fn build_separable(factors: &[OneVarSpec]) -> Result<EntireFunction> {
    if factors.is_empty() {
        return Err(Error::fixture("separable product needs at least one factor"));
    }
    for f in factors {
        f.validate()?;
    }
    let fs = factors.to_vec();
    Ok(EntireFunction::from_fn(
        "separable_product",
        factors.len(),
        "f_1(z_1) * ... * f_n(z_n)",
        move |z| {
            fs.iter()
                .zip(z)
                .fold(C64::new(1.0, 0.0), |acc, (f, &zj)| acc * f.eval(zj))
        },
    ))
}

fn build_composite(n: usize, inner_fn: &OneVarSpec) -> Result<EntireFunction> {
    if n == 0 {
        return Err(Error::fixture("composite sum dimension must be at least 1"));
    }
    inner_fn.validate()?;
    let f = inner_fn.clone();
    Ok(EntireFunction::from_fn(
        "composite_sum",
        n,
        "f(z_1 + ... + z_n)",
        move |z| f.eval(z.iter().sum()),
    ))
}

type TermMap = BTreeMap<Vec<usize>, C64>;

fn poly_eval(terms: &TermMap, z: &[C64]) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for (powers, &coeff) in terms {
        let mut term = coeff;
        for (&k, &zj) in powers.iter().zip(z) {
            term *= zj.powu(k as u32);
        }
        acc += term;
    }
    acc
}

/// One application of the directional derivative to a coefficient map:
/// `c z^K -> sum_j c k_j b_j z^{K - e_j}`.
fn poly_differentiate(terms: &TermMap, b: &[C64]) -> TermMap {
    let mut out = TermMap::new();
    for (powers, &coeff) in terms {
        for (j, &bj) in b.iter().enumerate() {
            if powers[j] == 0 {
                continue;
            }
            let mut reduced = powers.clone();
            reduced[j] -= 1;
            let add = coeff * powers[j] as f64 * bj;
            *out.entry(reduced).or_insert(C64::new(0.0, 0.0)) += add;
        }
    }
    out
}

fn build_polynomial(n: usize, terms: &[PolyTerm]) -> Result<EntireFunction> {
    if n == 0 {
        return Err(Error::fixture("polynomial dimension must be at least 1"));
    }
    let mut map = TermMap::new();
    for t in terms {
        if t.powers.len() != n {
            return Err(Error::fixture(format!(
                "term exponent tuple has length {}, expected {n}",
                t.powers.len()
            )));
        }
        *map.entry(t.powers.clone()).or_insert(C64::new(0.0, 0.0)) += t.coeff;
    }
    let eval_map = map.clone();
    let oracle_map = map;
    Ok(EntireFunction::from_fn(
        "polynomial",
        n,
        "polynomial from an explicit coefficient map",
        move |z| poly_eval(&eval_map, z),
    )
    .with_exact_derivative(move |z, b, m| {
        let mut cur = oracle_map.clone();
        for _ in 0..m {
            if cur.is_empty() {
                break;
            }
            cur = poly_differentiate(&cur, b);
        }
        poly_eval(&cur, z)
    }))
}

/// Weierstrass primary factor `E_p(u) = (1 - u) exp(u + u^2/2 + ... + u^p/p)`.
fn primary_factor(u: C64, genus: usize) -> C64 {
    let mut tail = C64::new(0.0, 0.0);
    let mut upow = C64::new(1.0, 0.0);
    for i in 1..=genus {
        upow *= u;
        tail += upow / i as f64;
    }
    (C64::new(1.0, 0.0) - u) * tail.exp()
}

fn build_canonical(
    genus: usize,
    scale: f64,
    power: f64,
    count: usize,
    form: &[C64],
) -> Result<EntireFunction> {
    check_linear_coeffs(form)?;
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::fixture("zero sequence scale must be positive"));
    }
    if !(power.is_finite() && power > 0.0) {
        return Err(Error::fixture("zero sequence power must be positive"));
    }
    if count == 0 {
        return Err(Error::fixture("canonical product needs at least one factor"));
    }
    // convergence of the truncation target: sum_k |a_k|^-(genus+1) with
    // a_k = scale * k^power converges only when (genus + 1) * power > 1
    if (genus as f64 + 1.0) * power <= 1.0 {
        return Err(Error::fixture(format!(
            "exponent sum diverges: genus {genus} with zero growth k^{power}"
        )));
    }
    let zeros: Vec<C64> = (1..=count)
        .map(|k| C64::new(scale * (k as f64).powf(power), 0.0))
        .collect();
    let fv = form.to_vec();
    Ok(EntireFunction::from_fn(
        "canonical_product",
        form.len(),
        "genus-p product over zeros of a linear form",
        move |z| {
            let w = inner(z, &fv);
            zeros
                .iter()
                .fold(C64::new(1.0, 0.0), |acc, &a| acc * primary_factor(w / a, genus))
        },
    ))
}

fn build_gauss_square(n: usize) -> Result<EntireFunction> {
    if n == 0 {
        return Err(Error::fixture("gauss_square dimension must be at least 1"));
    }
    Ok(EntireFunction::from_fn(
        "gauss_square",
        n,
        "exp(z_1^2)",
        |z| (z[0] * z[0]).exp(),
    ))
}

/// Registry row for discovery and help output.
#[derive(Clone, Debug, Serialize)]
pub struct FixtureInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub notes: &'static str,
}

/// Built-in fixtures with parameter shapes and the analytic facts used by
/// the test suite.
pub fn list_fixtures() -> Vec<FixtureInfo> {
    vec![
        FixtureInfo {
            name: "exp_linear",
            params: "{\"c\": [complex; n]}",
            notes: "exp(<z,c>); d^m/db^m = <b,c>^m F; index 0 for L >= |<b,c>|; type |<b,c>| along b",
        },
        FixtureInfo {
            name: "sin_linear",
            params: "{\"c\": [complex; n]}",
            notes: "sin(<z,c>); derivative cycle sin/cos; index 1 for L = 1, c = b = 1",
        },
        FixtureInfo {
            name: "separable_product",
            params: "{\"factors\": [one-var spec; n]}",
            notes: "f_1(z_1)*...*f_n(z_n); no derivative oracle",
        },
        FixtureInfo {
            name: "composite_sum",
            params: "{\"n\": dim, \"inner\": one-var spec}",
            notes: "f(z_1+...+z_n); no derivative oracle",
        },
        FixtureInfo {
            name: "polynomial",
            params: "{\"n\": dim, \"terms\": [{\"powers\": [int; n], \"coeff\": complex}]}",
            notes: "exact derivative oracle by symbolic differentiation; slice zeros match companion roots",
        },
        FixtureInfo {
            name: "canonical_product",
            params: "{\"genus\": p, \"scale\": s, \"power\": q, \"count\": 200, \"form\": [complex; n]}",
            notes: "zeros a_k = s*k^q of <z,form>; requires (p+1)q > 1",
        },
        FixtureInfo {
            name: "gauss_square",
            params: "{\"n\": dim}",
            notes: "exp(z_1^2); index grows with |z|, unbounded at scale",
        },
    ]
}
