//! Intertwined interpolation grids `P_k = { x_α : |α| <= k }` in `[-1, 1]^N`.
//!
//! The tensor Newton basis `N_α(x) = Π_j Π_{i<α_j} (x_j - x^(j)_i)` vanishes
//! at `x_β` unless `α <= β` componentwise, so in graded order the collocation
//! matrix is lower triangular and interpolation is a forward substitution.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exec::map_indices;
use crate::math::{self, golden_max};
use crate::rleja::RLejaSequence;

/// Diagonal entries below this magnitude are treated as degenerate.
const DIAGONAL_FLOOR: f64 = 1e-300;
const SAMPLE_BUDGET: u64 = 10_000_000;
const REFINE_SEEDS: usize = 8;
const REFINE_ROUNDS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

/// All multi-indices of total degree `<= k` in `dim` variables: by degree,
/// then lexicographically with larger leading components first.
pub fn graded_indices(dim: usize, k: usize) -> Vec<MultiIndex> {
    fn compositions(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if parts == 1 {
            prefix.push(total);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            compositions(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        return out;
    }
    for deg in 0..=k {
        compositions(deg, dim, &mut Vec::with_capacity(dim), &mut out);
    }
    out
}

/// `C(k + n, n)`.
pub fn binomial_count(dim: usize, k: usize) -> u64 {
    (1..=dim as u64).fold(1u64, |acc, i| acc * (k as u64 + i) / i)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntertwinedGrid {
    axes: Vec<Vec<f64>>,
    k: usize,
    indices: Vec<MultiIndex>,
    points: Vec<Vec<f64>>,
    /// Row-major `m × m`, row = point, column = basis function.
    newton_factor: Vec<f64>,
    /// Inverse of `newton_factor`, also lower triangular.
    inverse: Vec<f64>,
}

impl IntertwinedGrid {
    /// The grid built from the first `k + 1` points of each axis sequence.
    pub fn build(axes: &[RLejaSequence], k: usize) -> Result<Self> {
        let values = axes.iter().map(|x| x.values().to_vec()).collect();
        Self::from_axis_values(values, k)
    }

    /// Same, from plain axis values (each must hold at least `k + 1`
    /// distinct points).
    pub fn from_axis_values(axes: Vec<Vec<f64>>, k: usize) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::NoAxes);
        }
        let mut axes = axes;
        for (j, axis) in axes.iter_mut().enumerate() {
            if axis.len() < k + 1 {
                return Err(Error::AxisTooShort { axis: j, len: axis.len(), needed: k + 1 });
            }
            axis.truncate(k + 1);
            let mut sorted = axis.clone();
            sorted.sort_by(f64::total_cmp);
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidNodes);
            }
        }
        let dim = axes.len();
        let indices = graded_indices(dim, k);
        let m = indices.len();
        let points: Vec<Vec<f64>> =
            indices.iter().map(|a| a.0.iter().enumerate().map(|(j, &i)| axes[j][i]).collect()).collect();

        // newton_1d[j][b][a] = Π_{i<a} (x_b - x_i) on axis j.
        let newton_1d: Vec<Vec<Vec<f64>>> = axes.iter().map(|axis| newton_table(axis)).collect();

        let mut newton_factor = vec![0.0; m * m];
        for (row, beta) in indices.iter().enumerate() {
            for (col, alpha) in indices.iter().enumerate().take(row + 1) {
                if !alpha.le(beta) {
                    continue;
                }
                newton_factor[row * m + col] = (0..dim).map(|j| newton_1d[j][beta.0[j]][alpha.0[j]]).product();
            }
            if math::abs(newton_factor[row * m + row]) < DIAGONAL_FLOOR {
                return Err(Error::Degenerate(row));
            }
        }
        let inverse = lower_inverse(&newton_factor, m);
        Ok(Self { axes, k, indices, points, newton_factor, inverse })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Entry `(row, col)` of the lower-triangular Newton collocation matrix.
    pub fn newton_entry(&self, row: usize, col: usize) -> f64 {
        self.newton_factor[row * self.len() + col]
    }

    pub fn inverse_entry(&self, row: usize, col: usize) -> f64 {
        self.inverse[row * self.len() + col]
    }

    /// `N_α(x)` for every basis index, in grid order.
    pub fn newton_basis(&self, x: &[f64]) -> Vec<f64> {
        let per_axis: Vec<Vec<f64>> = self
            .axes
            .iter()
            .zip(x)
            .map(|(axis, &t)| {
                let mut v = Vec::with_capacity(self.k + 1);
                let mut p = 1.0;
                v.push(p);
                for &xi in &axis[..self.k] {
                    p *= t - xi;
                    v.push(p);
                }
                v
            })
            .collect();
        self.indices.iter().map(|a| a.0.iter().enumerate().map(|(j, &i)| per_axis[j][i]).product()).collect()
    }

    /// Newton coefficients of the interpolant of `f_values` (forward substitution).
    pub fn coefficients(&self, f_values: &[f64]) -> Result<Vec<f64>> {
        let m = self.len();
        if f_values.len() != m {
            return Err(Error::SizeMismatch { expected: m, got: f_values.len() });
        }
        let mut c = vec![0.0; m];
        for row in 0..m {
            let mut s = f_values[row];
            for (col, &cv) in c[..row].iter().enumerate() {
                s -= self.newton_factor[row * m + col] * cv;
            }
            c[row] = s / self.newton_factor[row * m + row];
        }
        Ok(c)
    }

    pub fn interpolate(&self, f_values: &[f64], x: &[f64]) -> Result<f64> {
        let c = self.coefficients(f_values)?;
        Ok(self.newton_basis(x).iter().zip(&c).map(|(n, c)| n * c).sum())
    }

    /// All fundamental Lagrange polynomials at `x`, in grid order.
    pub fn flips(&self, x: &[f64]) -> Vec<f64> {
        let m = self.len();
        let basis = self.newton_basis(x);
        let mut out = vec![0.0; m];
        for (alpha, &n) in basis.iter().enumerate() {
            if n == 0.0 {
                continue;
            }
            let row = &self.inverse[alpha * m..alpha * m + alpha + 1];
            for (beta, &v) in row.iter().enumerate() {
                out[beta] += v * n;
            }
        }
        out
    }

    /// `ℓ_β(x)`.
    pub fn flip_eval(&self, beta: usize, x: &[f64]) -> f64 {
        let m = self.len();
        let basis = self.newton_basis(x);
        (beta..m).map(|alpha| self.inverse[alpha * m + beta] * basis[alpha]).sum()
    }

    pub fn lebesgue_function(&self, x: &[f64]) -> f64 {
        self.flips(x).iter().map(|v| math::abs(*v)).sum()
    }
}

fn newton_table(axis: &[f64]) -> Vec<Vec<f64>> {
    axis.iter()
        .map(|&t| {
            let mut row = Vec::with_capacity(axis.len());
            let mut p = 1.0;
            row.push(p);
            for &xi in &axis[..axis.len() - 1] {
                p *= t - xi;
                row.push(p);
            }
            row
        })
        .collect()
}

fn lower_inverse(l: &[f64], m: usize) -> Vec<f64> {
    let mut inv = vec![0.0; m * m];
    for col in 0..m {
        inv[col * m + col] = 1.0 / l[col * m + col];
        for row in col + 1..m {
            let mut s = 0.0;
            for t in col..row {
                s += l[row * m + t] * inv[t * m + col];
            }
            inv[row * m + col] = -s / l[row * m + row];
        }
    }
    inv
}

/// Estimate of `Δ(P_k)` over `[-1, 1]^N`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LebesgueEstimateNd {
    pub value: f64,
    pub argmax: Vec<f64>,
    pub per_axis_samples: usize,
    pub refined: bool,
    pub certified_lower: f64,
}

/// `cos(iπ / (s - 1))`, `i = 0..s`, with exact endpoints. Grids for `s` and
/// `2s - 1` nest.
pub fn chebyshev_samples(s: usize) -> Vec<f64> {
    (0..s)
        .map(|i| {
            let frac = i as f64 / (s - 1) as f64;
            math::sin(math::PI * (0.5 - frac))
        })
        .collect()
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return x < y;
        }
    }
    false
}

/// Scans a tensor Chebyshev sample grid, then runs coordinate-wise
/// golden-section ascent from the best samples.
pub fn lebesgue_constant_nd(grid: &IntertwinedGrid, per_axis_samples: usize) -> Result<LebesgueEstimateNd> {
    let s = per_axis_samples;
    if s < 16 {
        return Err(Error::InvalidParameter("per_axis_samples must be at least 16"));
    }
    let dim = grid.dim();
    let total = (s as u64).checked_pow(dim as u32).unwrap_or(u64::MAX);
    if total > SAMPLE_BUDGET {
        return Err(Error::SampleBudget(total));
    }
    let total = total as usize;
    let coords = chebyshev_samples(s);
    let point_of = |mut idx: usize| -> (Vec<usize>, Vec<f64>) {
        let mut ii = vec![0; dim];
        for j in (0..dim).rev() {
            ii[j] = idx % s;
            idx /= s;
        }
        let x = ii.iter().map(|&i| coords[i]).collect();
        (ii, x)
    };
    let values = map_indices(total, |idx| grid.lebesgue_function(&point_of(idx).1));

    let mut order: Vec<usize> = (0..total).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    let mut best = (point_of(order[0]).1, values[order[0]]);
    for &idx in &order[1..] {
        if values[idx] < best.1 {
            break;
        }
        let x = point_of(idx).1;
        if lex_less(&x, &best.0) {
            best.0 = x;
        }
    }
    let certified_lower = best.1;

    let seeds: Vec<usize> = order.iter().copied().take(REFINE_SEEDS).collect();
    let refined = map_indices(seeds.len(), |c| {
        let (ii, mut x) = point_of(seeds[c]);
        let mut v = values[seeds[c]];
        // Samples run from 1 down to -1, so neighbours bracket each coordinate.
        let lo: Vec<f64> = ii.iter().map(|&i| coords[(i + 1).min(s - 1)]).collect();
        let hi: Vec<f64> = ii.iter().map(|&i| coords[i.saturating_sub(1)]).collect();
        for _ in 0..REFINE_ROUNDS {
            let before = v;
            for j in 0..dim {
                let (t, fv) = golden_max(
                    |t| {
                        let mut y = x.clone();
                        y[j] = t;
                        grid.lebesgue_function(&y)
                    },
                    lo[j],
                    hi[j],
                    1e-10,
                );
                if fv > v {
                    v = fv;
                    x[j] = t;
                }
            }
            if v <= before * (1.0 + 1e-13) {
                break;
            }
        }
        (x, v)
    });
    let mut improved = false;
    for (x, v) in refined {
        if v > best.1 || (v == best.1 && lex_less(&x, &best.0)) {
            improved |= v > certified_lower;
            best = (x, v);
        }
    }
    Ok(LebesgueEstimateNd { value: best.1, argmax: best.0, per_axis_samples, refined: improved, certified_lower })
}
