//! Entire functions and their restrictions to complex lines.

use crate::error::{Error, Result};
use crate::point::{translate_into, C64};
use std::fmt;
use std::sync::Arc;

type EvalFn = dyn Fn(&[C64]) -> C64 + Send + Sync;
type ExactDerivFn = dyn Fn(&[C64], &[C64], usize) -> C64 + Send + Sync;

/// An entire function `F: C^n -> C` given by an evaluator closure, plus an
/// optional closed-form directional derivative used as a test oracle.
#[derive(Clone)]
pub struct EntireFunction {
    name: String,
    dim: usize,
    description: String,
    eval: Arc<EvalFn>,
    exact_deriv: Option<Arc<ExactDerivFn>>,
}

impl EntireFunction {
    pub fn from_fn<F>(name: impl Into<String>, dim: usize, description: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&[C64]) -> C64 + Send + Sync + 'static,
    {
        assert!(dim >= 1, "dimension must be at least 1");
        EntireFunction {
            name: name.into(),
            dim,
            description: description.into(),
            eval: Arc::new(eval),
            exact_deriv: None,
        }
    }

    /// Attach a closed-form `(z, b, m) -> d^m F / d b^m (z)`.
    pub fn with_exact_derivative<F>(mut self, exact: F) -> Self
    where
        F: Fn(&[C64], &[C64], usize) -> C64 + Send + Sync + 'static,
    {
        self.exact_deriv = Some(Arc::new(exact));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn has_exact_derivative(&self) -> bool {
        self.exact_deriv.is_some()
    }

    pub fn evaluate(&self, z: &[C64]) -> Result<C64> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "EntireFunction::evaluate",
                expected: self.dim,
                got: z.len(),
            });
        }
        Ok((self.eval)(z))
    }

    /// Unchecked evaluation for hot paths; dimension is validated by callers.
    pub(crate) fn eval_raw(&self, z: &[C64]) -> C64 {
        debug_assert_eq!(z.len(), self.dim);
        (self.eval)(z)
    }

    /// Closed-form directional derivative, when the fixture provides one.
    pub fn exact_directional_derivative(&self, z: &[C64], b: &[C64], order: usize) -> Option<C64> {
        self.exact_deriv.as_ref().map(|f| f(z, b, order))
    }

    /// `F - w`, sharing the evaluator; derivatives of positive order pass
    /// through to the original oracle since the shift is constant.
    pub fn shifted(&self, w: C64) -> EntireFunction {
        let base = self.eval.clone();
        let mut out = EntireFunction {
            name: format!("{}-shift", self.name),
            dim: self.dim,
            description: format!("{} minus a constant value", self.description),
            eval: Arc::new(move |z: &[C64]| base(z) - w),
            exact_deriv: None,
        };
        if let Some(orig) = self.exact_deriv.clone() {
            let base = self.eval.clone();
            out.exact_deriv = Some(Arc::new(move |z: &[C64], b: &[C64], m: usize| {
                if m == 0 {
                    base(z) - w
                } else {
                    orig(z, b, m)
                }
            }));
        }
        out
    }
}

impl fmt::Debug for EntireFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EntireFunction")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("exact_deriv", &self.exact_deriv.is_some())
            .finish()
    }
}

/// Restriction `t -> F(z0 + t*b)` with a reusable coordinate buffer.
///
/// Evaluation goes through the same translate-then-evaluate path as
/// [`eval_slice`], so the two agree bitwise.
pub struct Slice<'a> {
    f: &'a EntireFunction,
    base: Vec<C64>,
    dir: Vec<C64>,
    buf: Vec<C64>,
}

impl<'a> Slice<'a> {
    pub fn new(f: &'a EntireFunction, z0: &[C64], b: &[C64]) -> Result<Self> {
        check_dims(f, z0, b)?;
        Ok(Slice {
            f,
            base: z0.to_vec(),
            dir: b.to_vec(),
            buf: vec![C64::new(0.0, 0.0); z0.len()],
        })
    }

    pub fn base(&self) -> &[C64] {
        &self.base
    }

    pub fn direction(&self) -> &[C64] {
        &self.dir
    }

    pub fn eval(&mut self, t: C64) -> C64 {
        translate_into(&mut self.buf, &self.base, t, &self.dir);
        self.f.eval_raw(&self.buf)
    }

    /// Coordinates of the current parameter value (after the last `eval`).
    pub fn point_at(&mut self, t: C64) -> &[C64] {
        translate_into(&mut self.buf, &self.base, t, &self.dir);
        &self.buf
    }
}

/// `F(z0 + t*b)` with dimension checks.
pub fn eval_slice(f: &EntireFunction, z0: &[C64], b: &[C64], t: C64) -> Result<C64> {
    check_dims(f, z0, b)?;
    let mut buf = vec![C64::new(0.0, 0.0); z0.len()];
    translate_into(&mut buf, z0, t, b);
    Ok(f.eval_raw(&buf))
}

pub(crate) fn check_dims(f: &EntireFunction, z0: &[C64], b: &[C64]) -> Result<()> {
    if z0.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            context: "slice base point",
            expected: f.dim(),
            got: z0.len(),
        });
    }
    if b.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            context: "slice direction",
            expected: f.dim(),
            got: b.len(),
        });
    }
    Ok(())
}
