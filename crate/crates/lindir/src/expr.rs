//! Serializable expression trees for user-supplied entire functions, used
//! by configuration files for custom equation coefficients and inputs.
//!
//! Every construct preserves entirety (no division, no conjugation), so a
//! validated expression always yields a legitimate [`EntireFunction`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::EntireFunction;
use crate::point::C64;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expr {
    Const { value: C64 },
    /// The coordinate `z_index`.
    Coord { index: usize },
    /// `sum_j coefficients[j] * z_j + offset`.
    Linear { coefficients: Vec<C64>, offset: C64 },
    Exp { arg: Box<Expr> },
    Sin { arg: Box<Expr> },
    Cos { arg: Box<Expr> },
    Pow { base: Box<Expr>, exponent: u32 },
    Sum { terms: Vec<Expr> },
    Product { factors: Vec<Expr> },
}

fn finite(c: &C64) -> bool {
    c.re.is_finite() && c.im.is_finite()
}

impl Expr {
    /// Check coordinate bounds and coefficient shapes against a dimension.
    pub fn validate(&self, dim: usize) -> Result<()> {
        match self {
            Expr::Const { value } => {
                if !finite(value) {
                    return Err(Error::input("expression constants must be finite"));
                }
            }
            Expr::Coord { index } => {
                if *index >= dim {
                    return Err(Error::input(format!(
                        "coordinate index {index} out of range for dimension {dim}"
                    )));
                }
            }
            Expr::Linear {
                coefficients,
                offset,
            } => {
                if coefficients.len() != dim {
                    return Err(Error::DimensionMismatch {
                        context: "linear expression coefficients",
                        expected: dim,
                        got: coefficients.len(),
                    });
                }
                if !coefficients.iter().all(finite) || !finite(offset) {
                    return Err(Error::input("linear expression data must be finite"));
                }
            }
            Expr::Exp { arg } | Expr::Sin { arg } | Expr::Cos { arg } => arg.validate(dim)?,
            Expr::Pow { base, .. } => base.validate(dim)?,
            Expr::Sum { terms } => {
                if terms.is_empty() {
                    return Err(Error::input("sum expression needs at least one term"));
                }
                for t in terms {
                    t.validate(dim)?;
                }
            }
            Expr::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::input("product expression needs at least one factor"));
                }
                for f in factors {
                    f.validate(dim)?;
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, z: &[C64]) -> C64 {
        match self {
            Expr::Const { value } => *value,
            Expr::Coord { index } => z[*index],
            Expr::Linear {
                coefficients,
                offset,
            } => {
                coefficients
                    .iter()
                    .zip(z)
                    .map(|(c, zj)| c * zj)
                    .fold(*offset, |acc, term| acc + term)
            }
            Expr::Exp { arg } => arg.eval(z).exp(),
            Expr::Sin { arg } => arg.eval(z).sin(),
            Expr::Cos { arg } => arg.eval(z).cos(),
            Expr::Pow { base, exponent } => base.eval(z).powu(*exponent),
            Expr::Sum { terms } => terms
                .iter()
                .map(|t| t.eval(z))
                .fold(C64::new(0.0, 0.0), |a, v| a + v),
            Expr::Product { factors } => factors
                .iter()
                .map(|f| f.eval(z))
                .fold(C64::new(1.0, 0.0), |a, v| a * v),
        }
    }

    /// Validate against `dim` and wrap as an evaluator.
    pub fn into_function(self, name: impl Into<String>, dim: usize) -> Result<EntireFunction> {
        if dim == 0 {
            return Err(Error::input("expression dimension must be at least 1"));
        }
        self.validate(dim)?;
        Ok(EntireFunction::from_fn(
            name,
            dim,
            "expression-defined function",
            move |z: &[C64]| self.eval(z),
        ))
    }
}
