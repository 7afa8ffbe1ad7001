//! Deterministic low-discrepancy sampling.
//!
//! All grids come from a Halton sequence with a seed-derived Cranley
//! Patterson rotation. Two properties matter downstream:
//!
//! * prefix nesting: the first `k` points of a sampler do not depend on how
//!   many points are requested, so enlarging a sample only adds points;
//! * determinism: a `(seed, dims)` pair fully determines the stream.

use crate::error::{Error, Result};
use crate::point::C64;
use serde::{Deserialize, Serialize};

const PRIMES: [u64; 24] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
];

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut inv = 0.0;
    let mut denom = 1.0;
    while i > 0 {
        denom *= base as f64;
        inv += (i % base) as f64 / denom;
        i /= base;
    }
    inv
}

/// Rotated Halton stream over `[0,1)^dims`.
#[derive(Clone, Debug)]
pub struct LowDiscrepancy {
    dims: usize,
    offsets: Vec<f64>,
}

impl LowDiscrepancy {
    pub fn new(dims: usize, seed: u64) -> Self {
        assert!(dims >= 1 && dims <= PRIMES.len(), "unsupported sample dimension {dims}");
        let mut state = seed ^ 0x51e0_3c96_a7f0_d4b1;
        let offsets = (0..dims)
            .map(|_| (splitmix64(&mut state) >> 11) as f64 / (1u64 << 53) as f64)
            .collect();
        LowDiscrepancy { dims, offsets }
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    /// Point `index` of the stream; index 0 is a pure rotation offset.
    pub fn sample(&self, index: u64, out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.dims);
        for (d, slot) in out.iter_mut().enumerate() {
            let u = radical_inverse(index, PRIMES[d]) + self.offsets[d];
            *slot = u - u.floor();
        }
    }
}

/// Area-uniform map from the unit square to the disk of radius `r`.
pub fn unit_to_disk(u: f64, v: f64, r: f64) -> C64 {
    let rho = r * u.sqrt();
    let theta = std::f64::consts::TAU * v;
    C64::new(rho * theta.cos(), rho * theta.sin())
}

/// Quasi-random points of the closed polydisc `{ |z_j| <= radius }`.
#[derive(Clone, Debug)]
pub struct PolydiscSampler {
    n: usize,
    radius: f64,
    seq: LowDiscrepancy,
}

impl PolydiscSampler {
    pub fn new(n: usize, radius: f64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("polydisc dimension must be at least 1"));
        }
        if !(radius >= 0.0 && radius.is_finite()) {
            return Err(Error::input("polydisc radius must be finite and nonnegative"));
        }
        if 2 * n > PRIMES.len() {
            return Err(Error::input(format!(
                "polydisc sampling supports dimension up to {}, got {n}",
                PRIMES.len() / 2
            )));
        }
        Ok(PolydiscSampler {
            n,
            radius,
            seq: LowDiscrepancy::new(2 * n, seed),
        })
    }

    pub fn point(&self, index: u64) -> Vec<C64> {
        let mut u = vec![0.0; 2 * self.n];
        self.seq.sample(index, &mut u);
        (0..self.n)
            .map(|j| unit_to_disk(u[2 * j], u[2 * j + 1], self.radius))
            .collect()
    }

    pub fn points(&self, count: usize) -> Vec<Vec<C64>> {
        (0..count as u64).map(|i| self.point(i)).collect()
    }

    /// Points `count..2*count` rescaled to `factor * radius`. Together with
    /// `points(count)` this forms a nested enlargement of the sample.
    pub fn enlarged_tail(&self, count: usize, factor: f64) -> Vec<Vec<C64>> {
        let scale = C64::new(factor, 0.0);
        (count as u64..2 * count as u64)
            .map(|i| self.point(i).into_iter().map(|z| z * scale).collect())
            .collect()
    }
}

/// Quasi-random points of the disk `{ |t| <= radius }` in one complex slot.
#[derive(Clone, Debug)]
pub struct DiskSampler {
    radius: f64,
    seq: LowDiscrepancy,
}

impl DiskSampler {
    pub fn new(radius: f64, seed: u64) -> Result<Self> {
        if !(radius >= 0.0 && radius.is_finite()) {
            return Err(Error::input("disk radius must be finite and nonnegative"));
        }
        Ok(DiskSampler {
            radius,
            seq: LowDiscrepancy::new(2, seed),
        })
    }

    pub fn point(&self, index: u64) -> C64 {
        let mut u = [0.0; 2];
        self.seq.sample(index, &mut u);
        unit_to_disk(u[0], u[1], self.radius)
    }

    pub fn points(&self, count: usize) -> Vec<C64> {
        (0..count as u64).map(|i| self.point(i)).collect()
    }
}

/// Sampling plan for a region of C^n paired with slice offsets: `z_count`
/// base points in the polydisc of `radius`, and `t_count` parameters in the
/// disk `|t| <= radius` for each base.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub radius: f64,
    pub z_count: usize,
    pub t_count: usize,
    pub seed: u64,
}

impl RegionSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::input("region radius must be positive and finite"));
        }
        if self.z_count == 0 {
            return Err(Error::input("region needs at least one base point"));
        }
        Ok(())
    }

    pub fn with_radius(mut self, radius: f64) -> Self {
        self.radius = radius;
        self
    }

    /// Base points of the region.
    pub fn bases(&self, n: usize) -> Result<Vec<Vec<C64>>> {
        self.validate()?;
        Ok(PolydiscSampler::new(n, self.radius, self.seed)?.points(self.z_count))
    }

    /// Slice parameters shared by every base point.
    pub fn offsets(&self) -> Result<Vec<C64>> {
        self.validate()?;
        if self.t_count == 0 {
            return Ok(vec![]);
        }
        Ok(DiskSampler::new(self.radius, self.seed ^ 0xa5a5_5a5a)?.points(self.t_count))
    }
}

/// Sampling plan for index estimation: quasi-random slice bases plus
/// parameters along each slice, arranged so that every sampled point stays
/// inside the polydisc of radius `reach` per coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SliceGridSpec {
    pub reach: f64,
    pub bases: usize,
    pub t_per_base: usize,
    pub seed: u64,
}

impl Default for SliceGridSpec {
    fn default() -> Self {
        SliceGridSpec {
            reach: 10.0,
            bases: 24,
            t_per_base: 8,
            seed: 1,
        }
    }
}

/// One sampled point `z = base + t*b`.
#[derive(Clone, Debug, Serialize)]
pub struct SlicePoint {
    pub base_index: usize,
    pub t: C64,
    pub z: Vec<C64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceGrid {
    pub spec: SliceGridSpec,
    pub points: Vec<SlicePoint>,
}

impl SliceGridSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.reach > 0.0 && self.reach.is_finite()) {
            return Err(Error::input("grid reach must be positive and finite"));
        }
        if self.bases == 0 {
            return Err(Error::input("grid needs at least one base point"));
        }
        Ok(())
    }

    /// Build the grid for dimension `n` and direction `b`.
    ///
    /// Bases sit in the polydisc of radius `reach/2`; parameters satisfy
    /// `|t| <= reach / (2 |b|)`, so every coordinate of `base + t*b` is at
    /// most `reach` in modulus. `t = 0` is always included, so the bases
    /// themselves are grid points.
    pub fn build(&self, n: usize, b: &[C64]) -> Result<SliceGrid> {
        self.validate()?;
        let bnorm = crate::point::euclidean_norm(b);
        if bnorm <= 0.0 {
            return Err(Error::input("grid direction must be nonzero"));
        }
        let bases = PolydiscSampler::new(n, self.reach / 2.0, self.seed)?.points(self.bases);
        let t_radius = self.reach / (2.0 * bnorm);
        let offsets = DiskSampler::new(t_radius, self.seed ^ 0xc3c3_3c3c)?.points(self.t_per_base);
        let mut points = Vec::with_capacity(self.bases * (1 + self.t_per_base));
        for (i, base) in bases.iter().enumerate() {
            points.push(SlicePoint {
                base_index: i,
                t: C64::new(0.0, 0.0),
                z: base.clone(),
            });
            for &t in &offsets {
                points.push(SlicePoint {
                    base_index: i,
                    t,
                    z: crate::point::translate(base, t, b),
                });
            }
        }
        Ok(SliceGrid {
            spec: *self,
            points,
        })
    }
}
