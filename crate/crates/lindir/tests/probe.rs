//! Temporary diagnostic probe.

use lindir::fixtures::{build_fixture, FixtureSpec};
use lindir::point::Direction;
use lindir::zeros::{find_slice_zeros, ZeroSearchOptions};
use lindir::C64;

#[test]
fn probe_sin_slices_at_complex_bases() {
    let f = build_fixture(&FixtureSpec::SinLinear { c: vec![C64::new(1.0, 0.0)] }).unwrap();
    let b = Direction::one();
    let opts = ZeroSearchOptions::default();
    for (re, im) in [(0.0, 0.0), (3.0, 7.0), (-5.0, 2.0), (8.0, -9.0), (14.0, 11.0)] {
        let z0 = vec![C64::new(re, im)];
        for radius in [10.5, 20.5, 40.0] {
            match find_slice_zeros(&f, &z0, &b, radius, &opts) {
                Ok(zs) => eprintln!(
                    "z0 = {re}+{im}i radius {radius}: {:?}, {} zeros, winding {}",
                    zs.status,
                    zs.zeros.len(),
                    zs.contour_count
                ),
                Err(e) => eprintln!("z0 = {re}+{im}i radius {radius}: ERR {e}"),
            }
        }
    }
}
