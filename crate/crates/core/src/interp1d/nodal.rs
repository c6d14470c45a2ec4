use super::nodal_product;
use crate::error::{Error, Result};
use crate::math::{self, golden_max};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct NodalRatio {
    /// `max_{x ∈ [-1,1], p ∈ probes} |w(x)| / |w(p)|`.
    pub ratio: f64,
    pub argmax: f64,
    /// The probe where `|w|` is smallest.
    pub worst_probe: f64,
}

/// Largest ratio `|w_nodes(x)| / |w_nodes(p)|` over `x ∈ [-1, 1]` and probe
/// points `p`.
///
/// `ln |w_nodes|` is concave between consecutive zeros, so one golden-section
/// search per gap finds the maximum of `|w_nodes|` on `[-1, 1]`.
pub fn nodal_ratio_bound(nodes: &[f64], probes: &[f64]) -> Result<NodalRatio> {
    if probes.is_empty() {
        return Err(Error::InvalidParameter("probe set is empty"));
    }
    let mut worst = (f64::INFINITY, 0.0);
    for &p in probes {
        let w = nodal_product(nodes, p);
        if w.is_zero() {
            return Err(Error::ProbeOnNode(p));
        }
        let l = w.ln_abs();
        if l < worst.0 {
            worst = (l, p);
        }
    }
    let mut breaks: alloc::vec::Vec<f64> = nodes.iter().copied().filter(|x| math::abs(*x) < 1.0).collect();
    breaks.push(-1.0);
    breaks.push(1.0);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let ln_w = |x: f64| nodal_product(nodes, x).ln_abs();
    let mut best = (0.0, f64::NEG_INFINITY);
    for gap in breaks.windows(2) {
        let cand = golden_max(ln_w, gap[0], gap[1], 1e-13);
        if cand.1 > best.1 {
            best = cand;
        }
    }
    Ok(NodalRatio { ratio: math::exp(best.1 - worst.0), argmax: best.0, worst_probe: worst.1 })
}
