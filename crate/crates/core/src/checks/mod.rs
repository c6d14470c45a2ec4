//! Numeric verdicts for the quantitative claims about ℜ-Leja sequences.
//!
//! Every check returns a [`BoundCheckReport`]. Hard inequalities store
//! `empirical / bound` ratios; growth claims that cannot be falsified at
//! finite scale are judged by whether the windowed running sup stabilizes.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

mod equilibrium;
mod growth;
mod lower;
mod trig;

pub use equilibrium::{arcsine_cdf, check_equilibrium_measure, ks_distance_arcsine};
pub use growth::{check_master_bound, check_modcheb_lebesgue, lebesgue_growth, MasterBoundSettings};
pub use lower::check_lower_bound;
pub use trig::{check_sin_halving, check_trig_lemma, sin_halving_sides, TrigConfig};

pub const DEFAULT_SEED: u64 = 1729;

/// How a report turns its ratios into a pass flag.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Verdict {
    /// Pass iff `worst_ratio <= 1 + tolerance`.
    Bound { tolerance: f64 },
    /// Pass iff the sup over the last window is at most `factor` times the
    /// sup over all earlier windows.
    BoundedConstant { factor: f64, window_sups: Vec<f64> },
    /// Pass iff `lo <= worst_ratio <= hi`.
    Range { lo: f64, hi: f64 },
    /// Pass iff the series is strictly decreasing.
    Decreasing { series: Vec<f64> },
}

impl Verdict {
    pub fn holds(&self, worst_ratio: f64) -> bool {
        match self {
            Verdict::Bound { tolerance } => worst_ratio <= 1.0 + tolerance,
            Verdict::BoundedConstant { factor, window_sups } => match window_sups.split_last() {
                Some((last, earlier)) if !earlier.is_empty() => {
                    let sup = earlier.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    last.is_finite() && sup.is_finite() && *last <= factor * sup
                }
                _ => false,
            },
            Verdict::Range { lo, hi } => *lo <= worst_ratio && worst_ratio <= *hi,
            Verdict::Decreasing { series } => series.len() >= 2 && series.windows(2).all(|w| w[1] < w[0]),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Witness {
    pub params: BTreeMap<String, f64>,
    pub ratio: f64,
}

impl Witness {
    pub fn new(params: &[(&str, f64)], ratio: f64) -> Self {
        Self { params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(), ratio }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundCheckReport {
    pub claim: String,
    pub seed: Option<u64>,
    /// Swept parameter ranges, as display strings.
    pub parameters: BTreeMap<String, String>,
    pub verdict: Verdict,
    pub worst_ratio: f64,
    pub passed: bool,
    /// Parameters attaining the worst ratio.
    pub witnesses: Vec<Witness>,
    pub metrics: BTreeMap<String, f64>,
    pub sub_claims: Vec<BoundCheckReport>,
}

impl BoundCheckReport {
    pub fn new(claim: &str, verdict: Verdict) -> Self {
        Self {
            claim: claim.to_string(),
            seed: None,
            parameters: BTreeMap::new(),
            verdict,
            worst_ratio: f64::NEG_INFINITY,
            passed: false,
            witnesses: Vec::new(),
            metrics: BTreeMap::new(),
            sub_claims: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn metric(&mut self, key: &str, value: f64) {
        self.metrics.insert(key.to_string(), value);
    }

    /// Records an observation, keeping the worst ones as witnesses.
    /// NaN ratios count as worst so that they fail the check.
    pub fn observe(&mut self, ratio: f64, params: &[(&str, f64)]) {
        let ratio = if ratio.is_nan() { f64::INFINITY } else { ratio };
        if ratio > self.worst_ratio {
            self.worst_ratio = ratio;
            self.witnesses.clear();
        }
        if ratio == self.worst_ratio && self.witnesses.len() < 4 {
            self.witnesses.push(Witness::new(params, ratio));
        }
    }

    /// Sets `passed` from the verdict rule and the sub-claims.
    pub fn finish(mut self) -> Self {
        self.passed = self.rule_holds() && self.sub_claims.iter().all(|s| s.passed);
        self
    }

    fn rule_holds(&self) -> bool {
        self.verdict.holds(self.worst_ratio)
    }

    /// Whether the stored pass flag agrees with the stored ratios, recursively.
    pub fn is_consistent(&self) -> bool {
        let expected = self.rule_holds() && self.sub_claims.iter().all(|s| s.passed);
        self.passed == expected && self.sub_claims.iter().all(Self::is_consistent)
    }

    /// Flattened `(claim, passed)` pairs, depth first.
    pub fn outcomes(&self) -> Vec<(String, bool)> {
        let mut out = alloc::vec![(self.claim.clone(), self.passed)];
        for s in &self.sub_claims {
            out.extend(s.outcomes());
        }
        out
    }
}

/// Sups of `(param, ratio)` pairs over the dyadic windows `(2^(m-1), 2^m]`,
/// in increasing `m`. Parameters must be positive.
pub fn dyadic_window_sups(series: &[(usize, f64)]) -> Vec<f64> {
    let mut windows: BTreeMap<u32, f64> = BTreeMap::new();
    for &(p, r) in series {
        let m = usize::BITS - (p.max(1) - 1).leading_zeros();
        let e = windows.entry(m).or_insert(f64::NEG_INFINITY);
        if r > *e || r.is_nan() {
            *e = if r.is_nan() { f64::INFINITY } else { r };
        }
    }
    windows.into_values().collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (crate::math::ln(x), crate::math::ln(y));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
