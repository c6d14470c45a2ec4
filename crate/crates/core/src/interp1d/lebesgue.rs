use alloc::vec::Vec;

use super::NodeSet1D;
use crate::error::{Error, Result};
use crate::exec::map_indices;
use crate::math::golden_max;

pub const DEFAULT_SAMPLES_PER_GAP: usize = 64;

/// Gaps whose best sample is within this factor of the overall best get a
/// golden-section refinement.
const REFINE_FRACTION: f64 = 0.9;
const REFINE_TOL: f64 = 1e-9;

/// Estimate of `Δ(A) = max_{[-1,1]} Σ_a |ℓ(A, a; ·)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LebesgueEstimate {
    pub value: f64,
    pub argmax: f64,
    pub samples_per_gap: usize,
    /// Whether golden-section refinement improved on the best sample.
    pub refined: bool,
    /// Maximum over the sample grid alone; always a valid lower bound.
    pub certified_lower: f64,
}

fn better(a: (f64, f64), b: (f64, f64)) -> bool {
    // (x, value): larger value wins, ties go to the smaller x.
    a.1 > b.1 || (a.1 == b.1 && a.0 < b.0)
}

/// Samples the Lebesgue function at `samples_per_gap + 1` equispaced points
/// in each gap between consecutive sorted nodes (and between the extreme
/// nodes and `±1`), then refines the most promising gaps.
///
/// Sample grids for `S` and `2S` nest, so the certified lower bound does not
/// decrease when the sampling is doubled.
pub fn lebesgue_constant(set: &NodeSet1D, samples_per_gap: usize) -> Result<LebesgueEstimate> {
    if set.is_empty() {
        return Err(Error::EmptyNodeSet);
    }
    if samples_per_gap < 8 {
        return Err(Error::InvalidParameter("samples_per_gap must be at least 8"));
    }
    let mut breaks = set.nodes().to_vec();
    breaks.sort_by(f64::total_cmp);
    if breaks[0] > -1.0 {
        breaks.insert(0, -1.0);
    }
    if *breaks.last().unwrap() < 1.0 {
        breaks.push(1.0);
    }
    let gaps = breaks.len() - 1;
    let s = samples_per_gap;
    let sample_x = |g: usize, i: usize| -> f64 {
        let (l, r) = (breaks[g], breaks[g + 1]);
        if i == s {
            r
        } else {
            l + (r - l) * (i as f64 / s as f64)
        }
    };
    let values = map_indices(gaps * (s + 1), |idx| {
        let x = sample_x(idx / (s + 1), idx % (s + 1));
        set.lebesgue_function(x)
    });

    let mut gap_best = Vec::with_capacity(gaps);
    let mut best = (f64::INFINITY, f64::NEG_INFINITY);
    for g in 0..gaps {
        let mut gb = (0usize, f64::NEG_INFINITY);
        for i in 0..=s {
            let v = values[g * (s + 1) + i];
            if v > gb.1 {
                gb = (i, v);
            }
        }
        let cand = (sample_x(g, gb.0), gb.1);
        if better(cand, best) {
            best = cand;
        }
        gap_best.push(gb);
    }
    let certified_lower = best.1;

    let candidates: Vec<usize> = (0..gaps).filter(|&g| gap_best[g].1 >= REFINE_FRACTION * certified_lower).collect();
    let refined = map_indices(candidates.len(), |c| {
        let g = candidates[c];
        let i = gap_best[g].0;
        let lo = sample_x(g, i.saturating_sub(1));
        let hi = sample_x(g, (i + 1).min(s));
        golden_max(|x| set.lebesgue_function(x), lo, hi, REFINE_TOL)
    });
    let mut improved = false;
    for r in refined {
        if better(r, best) {
            improved |= r.1 > certified_lower;
            best = r;
        }
    }
    Ok(LebesgueEstimate { value: best.1, argmax: best.0, samples_per_gap, refined: improved, certified_lower })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rleja::chebyshev_lobatto;

    #[test]
    fn three_point_set() {
        let a = NodeSet1D::new(vec![1.0, 0.0, -1.0]).unwrap();
        let e = lebesgue_constant(&a, 64).unwrap();
        assert!((e.value - 1.25).abs() < 1e-9, "{e:?}");
        assert!((e.argmax.abs() - 0.5).abs() < 1e-4);
        assert!(e.certified_lower <= e.value);
    }

    /// Closed form on {1, 0, -1}: on [0, 1], λ(x) = 1 + x(1 - x), whose
    /// maximum 5/4 sits at x = 1/2.
    #[test]
    fn three_point_closed_form() {
        let a = NodeSet1D::new(vec![1.0, 0.0, -1.0]).unwrap();
        for i in 0..=100 {
            let x = i as f64 / 100.0;
            assert!((a.lebesgue_function(x) - (1.0 + x * (1.0 - x))).abs() < 1e-14);
        }
    }

    #[test]
    fn single_node() {
        let a = NodeSet1D::new(vec![0.3]).unwrap();
        let e = lebesgue_constant(&a, 8).unwrap();
        assert_eq!(e.value, 1.0);
    }

    #[test]
    fn rejects_coarse_sampling() {
        let a = NodeSet1D::new(vec![0.3]).unwrap();
        assert!(lebesgue_constant(&a, 7).is_err());
    }

    #[test]
    fn two_symmetric_nodes() {
        // λ = max(1, |x| / a) for nodes ±a.
        let a = core::f64::consts::FRAC_1_SQRT_2;
        let set = NodeSet1D::new(vec![a, -a]).unwrap();
        let e = lebesgue_constant(&set, 16).unwrap();
        assert!((e.value - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(e.argmax, -1.0);
    }

    #[test]
    fn doubling_samples_is_monotone_and_stable() {
        let set = chebyshev_lobatto(16).unwrap();
        let irregular =
            NodeSet1D::new((0..12).map(|i| -0.9 + 0.15 * i as f64 + 0.01 * (i * i) as f64 / 12.0).collect()).unwrap();
        for set in [set, irregular] {
            let mut last = lebesgue_constant(&set, 8).unwrap();
            for s in [16, 32, 64, 128] {
                let e = lebesgue_constant(&set, s).unwrap();
                assert!(e.certified_lower >= last.certified_lower);
                if s >= 64 {
                    assert!(((e.value - last.value) / e.value).abs() < 1e-6);
                }
                last = e;
            }
        }
    }

    /// Coarse-grid oracle: a plain 200 000-point scan can only under-estimate.
    #[test]
    fn lobatto_against_dense_scan() {
        for d in [4usize, 8, 32] {
            let set = chebyshev_lobatto(d).unwrap();
            let e = lebesgue_constant(&set, 64).unwrap();
            let scan =
                (0..=200_000).map(|i| set.lebesgue_function(-1.0 + 2.0 * i as f64 / 200_000.0)).fold(0.0, f64::max);
            assert!(e.value >= scan - 1e-12);
            assert!(e.value - scan < 1e-6, "d={d} {} vs {}", e.value, scan);
        }
    }
}
