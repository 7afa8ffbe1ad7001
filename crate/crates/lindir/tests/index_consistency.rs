//! Cross-checks between the index estimators and their scaling/consistency
//! invariants.

use lindir::deriv::QuadOptions;
use lindir::expr::Expr;
use lindir::fixtures::{build_fixture, FixtureSpec};
use lindir::grid::SliceGridSpec;
use lindir::index::{
    compare_directions, estimate_index, estimate_joint_index, GlobalIndex, JointGridSpec,
    PointIndexOptions,
};
use lindir::weight::{build_weight, WeightSpec};
use lindir::{C64, Direction};

fn sin1() -> lindir::EntireFunction {
    build_fixture(&FixtureSpec::SinLinear { c: vec![C64::new(1.0, 0.0)] }).unwrap()
}

fn const_weight(value: f64, dim: usize) -> lindir::weight::WeightFunction {
    build_weight(&WeightSpec::Const { value }, dim).unwrap()
}

#[test]
fn rescaling_the_weight_divides_table_entries_by_powers() {
    // One grid point (single base, t = 0 only, no extra offsets): the
    // witness is that point, so the two runs expose normalized tables at the
    // same location. With L -> 3L the entry of order m must shrink by 3^m.
    let f = sin1();
    let b = Direction::one();
    let grid = SliceGridSpec { reach: 2.0, bases: 1, t_per_base: 0, seed: 5 };
    let quad = QuadOptions::default();
    let popts = PointIndexOptions::default();

    let est1 = estimate_index(&f, &const_weight(1.0, 1), &b, &grid, 8, &popts, &quad).unwrap();
    let est3 = estimate_index(&f, &const_weight(3.0, 1), &b, &grid, 8, &popts, &quad).unwrap();
    let t1 = &est1.witness.as_ref().expect("witness").table;
    let t3 = &est3.witness.as_ref().expect("witness").table;
    assert_eq!(t1.z, t3.z, "same grid, same witness point");
    assert_eq!(t1.entries.len(), t3.entries.len());
    for (e1, e3) in t1.entries.iter().zip(&t3.entries) {
        assert_eq!(e1.order, e3.order);
        // Identical quadrature values, only the normalization changes.
        assert!(
            (e1.derivative - e3.derivative).norm() <= 1e-12 * e1.derivative.norm().max(1e-300),
            "order {}: derivative changed with the weight",
            e1.order
        );
        let want = e1.value / 3f64.powi(e1.order as i32);
        let got = e3.value;
        assert!(
            (got - want).abs() <= 1e-12 * want.abs().max(1e-300),
            "order {}: expected {want:.6e}, got {got:.6e}",
            e1.order
        );
    }
}

#[test]
fn one_variable_directional_and_joint_indices_agree() {
    let quad = QuadOptions::default();
    let popts = PointIndexOptions::default();
    let cases = [
        (FixtureSpec::SinLinear { c: vec![C64::new(1.0, 0.0)] }, 1usize),
        (FixtureSpec::ExpLinear { c: vec![C64::new(1.0, 0.0)] }, 0usize),
    ];
    for (spec, want) in cases {
        let f = build_fixture(&spec).unwrap();
        let l = const_weight(1.0, 1);

        let grid = SliceGridSpec { reach: 10.0, bases: 12, t_per_base: 6, seed: 1 };
        let directional =
            estimate_index(&f, &l, &Direction::one(), &grid, 12, &popts, &quad).unwrap();
        assert_eq!(
            directional.global,
            GlobalIndex::Bounded(want),
            "directional index of {}",
            spec.name()
        );

        let jgrid = JointGridSpec { radius: 5.0, points: 24, seed: 1 };
        let joint =
            estimate_joint_index(&f, &[const_weight(1.0, 1)], &[12], &jgrid, &popts, &quad)
                .unwrap();
        assert_eq!(
            joint.global,
            GlobalIndex::Bounded(want),
            "joint index of {}",
            spec.name()
        );
    }
}

#[test]
fn identical_runs_serialize_identically() {
    let f = sin1();
    let l = const_weight(1.0, 1);
    let b = Direction::one();
    let grid = SliceGridSpec { reach: 10.0, bases: 10, t_per_base: 4, seed: 42 };
    let run = || {
        let est = estimate_index(
            &f,
            &l,
            &b,
            &grid,
            12,
            &PointIndexOptions::default(),
            &QuadOptions::default(),
        )
        .unwrap();
        serde_json::to_string(&est).unwrap()
    };
    assert_eq!(run(), run(), "re-running the same estimate must be bitwise stable");
}

#[test]
fn direction_comparison_detects_diverging_boundedness() {
    // F(z1, z2) = exp(z1^2): along e2 every slice is constant (index 0);
    // along e1 the slices are Gaussian and domination escapes any fixed cap
    // once the grid reaches far enough.
    let f: lindir::EntireFunction = serde_json::from_value::<Expr>(serde_json::json!({
        "kind": "exp",
        "arg": {"kind": "pow", "base": {"kind": "coord", "index": 0}, "exponent": 2},
    }))
    .unwrap()
    .into_function("gauss-in-z1", 2)
    .unwrap();
    let l = const_weight(1.0, 2);
    let e1 = Direction::new(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap();
    let e2 = Direction::new(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]).unwrap();
    let grid = SliceGridSpec { reach: 16.0, bases: 10, t_per_base: 6, seed: 3 };
    let cmp = compare_directions(
        &f,
        &l,
        &[e1, e2],
        &grid,
        12,
        &PointIndexOptions::default(),
        &QuadOptions::default(),
    )
    .unwrap();
    assert!(cmp.boundedness_differs, "e1 blows up, e2 is flat");
    assert_eq!(cmp.estimates[0].global, GlobalIndex::UnboundedAtScale);
    assert_eq!(cmp.estimates[1].global, GlobalIndex::Bounded(0));
}
