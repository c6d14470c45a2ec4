//! Checks against independent brute-force computations.

use std::f64::consts::PI;

use leja_core::disk::{DiskLejaSequence, RhoChoice};
use leja_core::interp1d::lebesgue_constant;
use leja_core::intertwine::IntertwinedGrid;
use leja_core::rleja::{build_by_phi, chebyshev_lobatto, equispaced, modified_chebyshev, project_dedup};
use leja_core::{DyadicAngle, NodeSet1D, RLejaSequence};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `Σ_j |Π_{i≠j} (x - x_i)/(x_j - x_i)|`, straight from the definition.
fn lebesgue_fn_direct(nodes: &[f64], x: f64) -> f64 {
    (0..nodes.len())
        .map(|j| {
            nodes
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &xi)| (x - xi) / (nodes[j] - xi))
                .product::<f64>()
                .abs()
        })
        .sum()
}

fn dense_max(nodes: &[f64], samples: usize) -> f64 {
    (0..=samples).map(|i| lebesgue_fn_direct(nodes, -1.0 + 2.0 * i as f64 / samples as f64)).fold(0.0, f64::max)
}

#[test]
fn disk_points_maximize_distance_product() {
    let seq = DiskLejaSequence::canonical(32).unwrap();
    let pts = seq.points();
    assert_eq!(pts[0], (1.0, 0.0));
    for k in 1..pts.len() {
        let prod = |(x, y): (f64, f64)| {
            pts[..k].iter().map(|&(a, b)| ((x - a).powi(2) + (y - b).powi(2)).sqrt()).product::<f64>()
        };
        let chosen = prod(pts[k]);
        let best =
            (0..4096).map(|i| 2.0 * PI * i as f64 / 4096.0).map(|t| prod((t.cos(), t.sin()))).fold(0.0, f64::max);
        assert!(chosen >= best * (1.0 - 1e-9), "step {k}: {chosen} < {best}");
    }
}

#[test]
fn lebesgue_matches_dense_scan() {
    let sets = [
        chebyshev_lobatto(6).unwrap(),
        chebyshev_lobatto(8).unwrap(),
        equispaced(7).unwrap(),
        modified_chebyshev(8, DyadicAngle::new(3, 7).unwrap()).unwrap(),
        RLejaSequence::canonical(13).unwrap().prefix(13).unwrap(),
    ];
    for set in &sets {
        let est = lebesgue_constant(set, 64).unwrap();
        let dense = dense_max(set.nodes(), 200_000);
        assert!(est.value >= dense * (1.0 - 1e-9), "{} vs {dense}", est.value);
        assert!(est.value <= dense * (1.0 + 1e-6), "{} vs {dense}", est.value);
    }
}

#[test]
fn three_point_lebesgue_constant() {
    let set = NodeSet1D::new(vec![1.0, 0.0, -1.0]).unwrap();
    let est = lebesgue_constant(&set, 64).unwrap();
    assert!((est.value - 1.25).abs() < 1e-12);
    assert!((est.argmax.abs() - 0.5).abs() < 1e-6);
}

#[test]
fn modified_chebyshev_nodes_are_level_set_roots() {
    for (d, num, q) in [(4usize, 1u64, 5u32), (8, 5, 9), (16, 3, 8)] {
        let beta = DyadicAngle::new(num, q).unwrap();
        let level = (2.0 * PI * d as f64 * beta.turns()).cos();
        let set = modified_chebyshev(d, beta).unwrap();
        assert_eq!(set.len(), d);
        for &x in set.nodes() {
            let t = (d as f64 * x.clamp(-1.0, 1.0).acos()).cos();
            assert!((t - level).abs() < 1e-9, "d={d} x={x}");
        }
    }
}

#[test]
fn lobatto_lebesgue_grows_like_log() {
    // Δ(L_d) <= 2/π ln(d) + 1 for Chebyshev extrema.
    for d in [4usize, 16, 64, 256] {
        let v = lebesgue_constant(&chebyshev_lobatto(d).unwrap(), 64).unwrap().value;
        assert!(v <= 2.0 / PI * (d as f64).ln() + 1.0, "d={d}: {v}");
        assert!(v >= 2.0 / PI * (d as f64).ln() + 0.5, "d={d}: {v}");
    }
}

#[test]
fn tensor_degree_one_grid_by_hand() {
    let grid = IntertwinedGrid::from_axis_values(vec![vec![1.0, -1.0], vec![1.0, -1.0]], 1).unwrap();
    // Interpolant of f on {(1,1), (-1,1), (1,-1)} is an affine function.
    let f = |p: &[f64]| 2.0 + 3.0 * p[0] - p[1];
    let values: Vec<f64> = grid.points().iter().map(|p| f(p)).collect();
    for p in [[0.3, -0.2], [-1.0, -1.0], [0.0, 1.0]] {
        assert!((grid.interpolate(&values, &p).unwrap() - f(&p)).abs() < 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn phi_route_matches_dedup(seed in any::<u64>(), count in 1usize..300) {
        let rho = RhoChoice::random(&mut ChaCha8Rng::seed_from_u64(seed), 12).unwrap();
        let src = DiskLejaSequence::with_rho(rho, 4).unwrap();
        let a = build_by_phi(&src, count).unwrap();
        let b = project_dedup(&src, count).unwrap();
        prop_assert_eq!(a.values(), b.values());
    }

    #[test]
    fn rleja_values_are_distinct_and_in_interval(count in 1usize..200) {
        let x = RLejaSequence::canonical(count).unwrap();
        let mut v = x.values().to_vec();
        prop_assert!(v.iter().all(|t| (-1.0..=1.0).contains(t)));
        v.sort_by(f64::total_cmp);
        v.dedup();
        prop_assert_eq!(v.len(), count);
    }
}
