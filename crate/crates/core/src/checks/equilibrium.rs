use alloc::vec::Vec;

use super::{BoundCheckReport, Verdict};
use crate::error::{Error, Result};
use crate::math;
use crate::rleja::RLejaSequence;

/// `1/2 + arcsin(x)/π`, the distribution function of the equilibrium measure
/// of `[-1, 1]`.
pub fn arcsine_cdf(x: f64) -> f64 {
    0.5 + math::asin(x.clamp(-1.0, 1.0)) / math::PI
}

/// Kolmogorov-Smirnov distance between the empirical distribution of
/// `points` and the arcsine law.
pub fn ks_distance_arcsine(points: &[f64]) -> f64 {
    let mut sorted = points.to_vec();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = arcsine_cdf(x);
            ((i + 1) as f64 / m - f).max(f - i as f64 / m)
        })
        .fold(0.0, f64::max)
}

/// KS distance of `{x_0, ..., x_d}`, `d = 2^n`, for `n = 2..=n_max`. Passes
/// when the distances strictly decrease; `C = max_n d · D_n` is reported as
/// the worst ratio.
pub fn check_equilibrium_measure(n_max: u32) -> Result<BoundCheckReport> {
    if !(3..=20).contains(&n_max) {
        return Err(Error::InvalidParameter("n_max must lie in 3..=20"));
    }
    let x = RLejaSequence::canonical((1 << n_max) + 1)?;
    let distances: Vec<f64> = (2..=n_max).map(|n| ks_distance_arcsine(&x.values()[..=1 << n])).collect();
    let mut report = BoundCheckReport::new("equilibrium", Verdict::Decreasing { series: distances.clone() })
        .param("n", alloc::format!("2..={n_max}"));
    for (n, &dist) in (2..=n_max).zip(&distances) {
        let d = (1u64 << n) as f64;
        report.observe(d * dist, &[("n", n as f64), ("ks", dist)]);
        report.metric(&alloc::format!("ks_2^{n}"), dist);
    }
    report.metric("c", report.worst_ratio);
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_values() {
        assert_eq!(arcsine_cdf(0.0), 0.5);
        assert_eq!(arcsine_cdf(1.0), 1.0);
        assert_eq!(arcsine_cdf(-1.0), 0.0);
    }

    /// Three points at the quantiles 0, 1/2, 1: the largest step gap is 1/3.
    #[test]
    fn three_point_distance() {
        assert!((ks_distance_arcsine(&[1.0, -1.0, 0.0]) - 1.0 / 3.0).abs() < 1e-15);
    }

    /// On a full Lobatto set the nodes sit at the arcsine quantiles `j/d`,
    /// so the distance is `1/(d + 1)`.
    #[test]
    fn lobatto_distance_closed_form() {
        for n in 1..=10 {
            let d = 1usize << n;
            let set = crate::rleja::chebyshev_lobatto(d).unwrap();
            let got = ks_distance_arcsine(set.nodes());
            assert!((got - 1.0 / (d as f64 + 1.0)).abs() < 1e-12, "{n}");
        }
    }

    #[test]
    fn sweep_decreases() {
        let r = check_equilibrium_measure(10).unwrap();
        assert!(r.passed && r.is_consistent());
        assert!(r.metrics["ks_2^10"] < r.metrics["ks_2^5"]);
        assert!(check_equilibrium_measure(2).is_err());
    }
}
