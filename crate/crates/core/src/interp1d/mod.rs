//! Univariate Lagrange interpolation on `[-1, 1]` in barycentric form.

use alloc::vec::Vec;

use crate::dyadic::DyadicAngle;
use crate::error::{Error, Result};
use crate::math::{self, ScaledReal};

mod lebesgue;
mod nodal;

pub use lebesgue::{lebesgue_constant, LebesgueEstimate, DEFAULT_SAMPLES_PER_GAP};
pub use nodal::{nodal_ratio_bound, NodalRatio};

/// A finite ordered set of distinct nodes in `[-1, 1]` with barycentric
/// weights.
///
/// The true weight of node `j` is `bary_weights[j] * 2^scale_exponent`, i.e.
/// `1 / Π_{i≠j} (x_j - x_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet1D {
    nodes: Vec<f64>,
    bary_weights: Vec<f64>,
    scale_exponent: i32,
    angles: Option<Vec<DyadicAngle>>,
}

impl NodeSet1D {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        if nodes.iter().any(|x| !x.is_finite() || math::abs(*x) > 1.0) {
            return Err(Error::InvalidNodes);
        }
        let mut sorted = nodes.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidNodes);
        }
        let (bary_weights, scale_exponent) = barycentric_weights(&nodes);
        Ok(Self { nodes, bary_weights, scale_exponent, angles: None })
    }

    /// Nodes `cos(2π a)` for exact angles `a`. Angles whose cosines coincide
    /// are rejected.
    pub fn from_angles(angles: Vec<DyadicAngle>) -> Result<Self> {
        let nodes = angles.iter().map(|a| a.cos_value()).collect();
        let mut set = Self::new(nodes)?;
        set.angles = Some(angles);
        Ok(set)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Exact angles of the nodes, when the set was built from them.
    pub fn angles(&self) -> Option<&[DyadicAngle]> {
        self.angles.as_deref()
    }

    pub fn bary_weights(&self) -> &[f64] {
        &self.bary_weights
    }

    pub fn scale_exponent(&self) -> i32 {
        self.scale_exponent
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Keys identifying the node set exactly, when angles are available.
    pub fn angle_keys(&self) -> Option<Vec<DyadicAngle>> {
        let mut keys: Vec<_> = self.angles.as_ref()?.iter().map(|a| a.real_part_key()).collect();
        keys.sort();
        Some(keys)
    }

    fn hit(&self, x: f64) -> Option<usize> {
        self.nodes.iter().position(|&a| a == x)
    }

    /// `ℓ(A, a_j; x)`, the fundamental Lagrange polynomial of node `j`.
    pub fn flip_eval(&self, j: usize, x: f64) -> f64 {
        if let Some(h) = self.hit(x) {
            return if h == j { 1.0 } else { 0.0 };
        }
        let mut den = 0.0;
        let mut num = 0.0;
        for (i, (&a, &w)) in self.nodes.iter().zip(&self.bary_weights).enumerate() {
            let t = w / (x - a);
            den += t;
            if i == j {
                num = t;
            }
        }
        num / den
    }

    /// `L[A; f](x)` by the second barycentric formula.
    pub fn interpolate(&self, f_values: &[f64], x: f64) -> Result<f64> {
        if f_values.len() != self.len() {
            return Err(Error::SizeMismatch { expected: self.len(), got: f_values.len() });
        }
        if let Some(h) = self.hit(x) {
            return Ok(f_values[h]);
        }
        let mut num = 0.0;
        let mut den = 0.0;
        for ((&a, &w), &f) in self.nodes.iter().zip(&self.bary_weights).zip(f_values) {
            let t = w / (x - a);
            num += t * f;
            den += t;
        }
        Ok(num / den)
    }

    /// Lebesgue function `Σ_j |ℓ(A, a_j; x)|`.
    pub fn lebesgue_function(&self, x: f64) -> f64 {
        if self.hit(x).is_some() {
            return 1.0;
        }
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        for (&a, &w) in self.nodes.iter().zip(&self.bary_weights) {
            let t = w / (x - a);
            sum += t;
            abs_sum += math::abs(t);
        }
        abs_sum / math::abs(sum)
    }

    /// `w_A(x) = Π (x - a)` without underflow.
    pub fn nodal_poly_eval(&self, x: f64) -> ScaledReal {
        nodal_product(&self.nodes, x)
    }
}

/// `Π (x - a)` over `nodes` as a scaled real.
pub fn nodal_product(nodes: &[f64], x: f64) -> ScaledReal {
    // Fold the running float into the scaled product well before it can
    // leave the normal range.
    const FOLD_ABOVE: f64 = (1u128 << 100) as f64 * (1u128 << 100) as f64;
    const FOLD_BELOW: f64 = 1.0 / FOLD_ABOVE;
    let mut acc = ScaledReal::ONE;
    let mut run = 1.0;
    for &a in nodes {
        let f = x - a;
        if !(FOLD_BELOW..=FOLD_ABOVE).contains(&math::abs(f)) {
            acc = acc.mul_f64(f);
            continue;
        }
        run *= f;
        if !(FOLD_BELOW..=FOLD_ABOVE).contains(&math::abs(run)) {
            acc = acc.mul_f64(run);
            run = 1.0;
        }
    }
    acc.mul_f64(run)
}

/// Weights with a shared power-of-two scale: each factor is doubled while
/// accumulating, since on `[-1, 1]` the doubled differences are of order one.
fn barycentric_weights(nodes: &[f64]) -> (Vec<f64>, i32) {
    let n = nodes.len();
    let recips: Vec<ScaledReal> = nodes
        .iter()
        .enumerate()
        .map(|(j, &xj)| {
            nodes
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .fold(ScaledReal::ONE, |p, (_, &xi)| p.mul_f64(2.0 * (xj - xi)))
                .recip()
        })
        .collect();
    let top = recips.iter().map(|r| r.exponent).max().unwrap_or(0);
    let shift = n as i32 - 1;
    let weights = recips.iter().map(|r| r.mantissa * math::exp2i(r.exponent - top)).collect();
    (weights, top + shift)
}

/// `ℓ(N, a; x)` computed through a cell `N_i ∋ a` of a partition of `N`:
/// `w_{N∖N_i}(x) / w_{N∖N_i}(a) · ℓ(N_i, a; x)`.
pub fn flip_via_partition(cell: &NodeSet1D, rest: &[f64], j: usize, x: f64) -> f64 {
    let a = cell.nodes()[j];
    nodal_product(rest, x).ratio_to_f64(nodal_product(rest, a)) * cell.flip_eval(j, x)
}
