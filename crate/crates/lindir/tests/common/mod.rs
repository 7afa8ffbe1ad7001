//! Shared helpers for the integration tests: a tiny deterministic RNG so
//! random sampling in tests is reproducible without pulling the library's
//! own samplers into the oracle side.

use lindir::C64;

/// SplitMix64: deterministic, seedable, good enough statistics for sampling
/// test points.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform on the disc `|z| <= r` (area-uniform).
    pub fn c64_in_disc(&mut self, r: f64) -> C64 {
        let rho = r * self.unit().sqrt();
        let theta = self.range(0.0, std::f64::consts::TAU);
        C64::from_polar(rho, theta)
    }

    /// Point of `C^n` with Euclidean norm at most `r`.
    pub fn point_in_ball(&mut self, n: usize, r: f64) -> Vec<C64> {
        loop {
            let p: Vec<C64> = (0..n).map(|_| self.c64_in_disc(r)).collect();
            if p.iter().map(|z| z.norm_sqr()).sum::<f64>() <= r * r {
                return p;
            }
        }
    }
}
