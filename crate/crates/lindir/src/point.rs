//! Points of C^n, directions, and the Hermitian pairing.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub type C64 = num_complex::Complex64;

/// Hermitian pairing `<a, b> = sum_j a_j * conj(b_j)`.
///
/// The second argument is conjugated, so `inner(z, c)` is holomorphic in `z`
/// for fixed `c` and `inner(b, b).re` is `|b|^2`.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

pub fn euclidean_norm(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Coordinates of `z0 + t*b`.
///
/// `t == 0` returns the base coordinates bitwise, so a slice evaluated at the
/// origin of its parameter is exactly the function evaluated at the base.
pub fn translate(z0: &[C64], t: C64, b: &[C64]) -> Vec<C64> {
    let mut out = z0.to_vec();
    translate_into(&mut out, z0, t, b);
    out
}

pub(crate) fn translate_into(out: &mut [C64], z0: &[C64], t: C64, b: &[C64]) {
    debug_assert_eq!(z0.len(), b.len());
    debug_assert_eq!(out.len(), z0.len());
    if t == C64::new(0.0, 0.0) {
        out.copy_from_slice(z0);
        return;
    }
    for ((o, z), d) in out.iter_mut().zip(z0).zip(b) {
        *o = z + t * d;
    }
}

/// A validated point of C^n: at least one coordinate, all finite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplexPoint {
    coords: Vec<C64>,
}

impl ComplexPoint {
    pub fn new(coords: Vec<C64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::input("a point needs at least one coordinate"));
        }
        if coords.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::input("point coordinates must be finite"));
        }
        Ok(ComplexPoint { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }
}

impl std::ops::Deref for ComplexPoint {
    type Target = [C64];

    fn deref(&self) -> &[C64] {
        &self.coords
    }
}

/// A nonzero direction in C^n with its Euclidean norm cached.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Direction {
    components: Vec<C64>,
    norm: f64,
}

impl Direction {
    pub fn new(components: Vec<C64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::input("a direction needs at least one component"));
        }
        if components
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::input("direction components must be finite"));
        }
        let norm = euclidean_norm(&components);
        if norm <= 0.0 {
            return Err(Error::input("direction must be nonzero"));
        }
        Ok(Direction { components, norm })
    }

    /// Real axis direction in one variable.
    pub fn one() -> Self {
        Direction::new(vec![C64::new(1.0, 0.0)]).expect("unit direction")
    }

    pub fn components(&self) -> &[C64] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn scaled(&self, s: C64) -> Result<Self> {
        Direction::new(self.components.iter().map(|c| c * s).collect())
    }
}

impl std::ops::Deref for Direction {
    type Target = [C64];

    fn deref(&self) -> &[C64] {
        &self.components
    }
}

impl<'de> Deserialize<'de> for Direction {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let components = Vec::<C64>::deserialize(deserializer)?;
        Direction::new(components).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_conjugates_second_argument() {
        let a = [C64::new(0.0, 1.0)];
        let b = [C64::new(0.0, 1.0)];
        assert_eq!(inner(&a, &b), C64::new(1.0, 0.0));
    }

    #[test]
    fn direction_norm_matches_euclidean() {
        let d = Direction::new(vec![C64::new(3.0, 0.0), C64::new(0.0, 4.0)]).unwrap();
        assert!((d.norm() - 5.0).abs() <= 1e-12 * 5.0);
    }

    #[test]
    fn zero_direction_rejected() {
        assert!(Direction::new(vec![C64::new(0.0, 0.0)]).is_err());
    }

    #[test]
    fn empty_point_rejected() {
        assert!(ComplexPoint::new(vec![]).is_err());
    }

    #[test]
    fn translate_at_zero_is_bitwise_base() {
        let z0 = [C64::new(-0.0, 2.5), C64::new(1.0, -3.0)];
        let b = [C64::new(2.0, 1.0), C64::new(0.5, 0.0)];
        let moved = translate(&z0, C64::new(0.0, 0.0), &b);
        for (m, z) in moved.iter().zip(&z0) {
            assert_eq!(m.re.to_bits(), z.re.to_bits());
            assert_eq!(m.im.to_bits(), z.im.to_bits());
        }
    }
}
