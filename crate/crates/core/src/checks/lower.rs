use alloc::vec::Vec;

use super::{BoundCheckReport, Verdict};
use crate::error::{Error, Result};
use crate::exec::map_indices;
use crate::interp1d::{lebesgue_constant, NodeSet1D};
use crate::math;
use crate::rleja::{chebyshev_lobatto, RLejaSequence};

/// Absolute slack on the `d - 2` lower bounds.
const LOWER_SLACK: f64 = 1e-6;
const UNIT_FLIP_TOL: f64 = 1e-9;

/// `Δ(X(0 : 2^n - 1)) >= 2^n - 2` for `n = 3..=n_max`, and for each `d` in
/// `lobatto_degrees`, `Δ(L_d ∖ {a_j}) >= d - 2` for every interior `j`, with
/// `|ℓ(A_j, a_i; a_j)| = 1` at the missing node.
pub fn check_lower_bound(n_max: u32, lobatto_degrees: &[usize], samples_per_gap: usize) -> Result<BoundCheckReport> {
    if !(3..=10).contains(&n_max) {
        return Err(Error::InvalidParameter("n_max must lie in 3..=10"));
    }
    if lobatto_degrees.iter().any(|&d| d < 2) {
        return Err(Error::InvalidParameter("Lobatto degrees must be at least 2"));
    }
    let x = RLejaSequence::canonical(1 << n_max)?;
    let ns: Vec<u32> = (3..=n_max).collect();
    let prefix = map_indices(ns.len(), |i| {
        let k = 1usize << ns[i];
        x.prefix(k).and_then(|set| lebesgue_constant(&set, samples_per_gap)).map(|e| e.value)
    });
    let mut report = BoundCheckReport::new("lower-bound", Verdict::Bound { tolerance: 0.0 })
        .param("n", alloc::format!("3..={n_max}"))
        .param("samples_per_gap", samples_per_gap)
        .param("slack", LOWER_SLACK);
    for (&n, delta) in ns.iter().zip(prefix) {
        let delta = delta?;
        let bound = (1u64 << n) as f64 - 2.0;
        report.observe(bound / (delta + LOWER_SLACK), &[("n", n as f64), ("delta", delta)]);
        report.metric(&alloc::format!("delta_prefix_2^{n}"), delta);
    }

    let mut removal = BoundCheckReport::new("lower-bound/missing-node", Verdict::Bound { tolerance: 0.0 })
        .param("d", alloc::format!("{lobatto_degrees:?}"));
    let mut unit = BoundCheckReport::new("lower-bound/unit-flips", Verdict::Bound { tolerance: UNIT_FLIP_TOL })
        .param("d", alloc::format!("{lobatto_degrees:?}"));
    for &d in lobatto_degrees {
        let lobatto = chebyshev_lobatto(d)?;
        let full: Vec<f64> = lobatto.nodes().to_vec();
        let cases = map_indices(d - 1, |i| -> Result<(f64, f64)> {
            let j = i + 1;
            let a_j = full[j];
            let rest: Vec<f64> = full.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, v)| *v).collect();
            let set = NodeSet1D::new(rest)?;
            // Interior nodes of `L_d` other than `a_j`: indices 1..d-1 shifted past j.
            let mut worst_dev: f64 = 0.0;
            for local in 1..d - 1 {
                let v = set.flip_eval(local, a_j);
                worst_dev = worst_dev.max(math::abs(math::abs(v) - 1.0));
            }
            let est = lebesgue_constant(&set, samples_per_gap)?;
            Ok((est.value.max(set.lebesgue_function(a_j)), worst_dev))
        });
        for (i, c) in cases.into_iter().enumerate() {
            let (delta, dev) = c?;
            let j = (i + 1) as f64;
            removal.observe((d as f64 - 2.0) / (delta + LOWER_SLACK), &[("d", d as f64), ("j", j), ("delta", delta)]);
            unit.observe(1.0 + dev, &[("d", d as f64), ("j", j)]);
        }
    }
    report.sub_claims.push(removal.finish());
    report.sub_claims.push(unit.finish());
    Ok(report.finish())
}
