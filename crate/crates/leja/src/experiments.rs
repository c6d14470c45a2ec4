//! Growth of Lebesgue constants and a convergence demonstration.

use anyhow::{ensure, Result};
use leja_core::checks::lebesgue_growth;
use leja_core::intertwine::{binomial_count, lebesgue_constant_nd};
use leja_core::rleja::{chebyshev_lobatto, equispaced};
use leja_core::NodeSet1D;
use serde::{Deserialize, Serialize};

use crate::commands::{grid, rleja_sequence};
use crate::config::{Output, Params};
use crate::report::{Cell, Table};
use crate::svg::loglog_plot;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthParams {
    pub max_k: usize,
    /// 1 for `Δ(X_k)`, more for the intertwined grids `Δ(P_k)`.
    #[serde(default = "one")]
    pub dim: usize,
    /// Samples per gap in 1D, per axis otherwise.
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub random_rho: bool,
}

fn one() -> usize {
    1
}

impl Params for GrowthParams {
    fn validate(&self) -> Result<()> {
        ensure!(self.max_k >= 1, "empty range: max_k must be at least 1");
        ensure!((1..=4).contains(&self.dim), "dim must lie in 1..=4");
        if self.dim == 1 {
            ensure!(self.max_k <= 4096, "max_k must be at most 4096");
            ensure!(self.samples.is_none_or(|s| s >= 8), "samples must be at least 8");
        } else {
            ensure!(binomial_count(self.dim, self.max_k) <= 2000, "grid would exceed 2000 points");
            ensure!(self.samples.is_none_or(|s| s >= 16), "samples must be at least 16");
            ensure!(!self.random_rho, "random_rho only applies in one dimension");
        }
        Ok(())
    }
}

/// Least-squares `(slope, intercept)` of `ln y` against `ln x`.
pub fn loglog_fit(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    let pts: Vec<(f64, f64)> =
        points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

/// `k³ ln k`, undefined below `k = 2`.
fn k3logk(k: usize) -> Option<f64> {
    let kf = k as f64;
    (k >= 2).then(|| kf * kf * kf * kf.ln())
}

/// `k, points, delta, delta_over_k3logk` for `k = 1..=max_k`, plus a log-log
/// plot fitted over `k >= 8` (or all `k` when the range is shorter).
pub fn run_growth_experiment(p: &GrowthParams, seed: u64) -> Result<Output> {
    let samples = p.samples.unwrap_or(if p.dim == 1 { 64 } else { 65 });
    let ks: Vec<usize> = (1..=p.max_k).collect();
    let (points, deltas): (Vec<u64>, Vec<f64>) = if p.dim == 1 {
        let x = rleja_sequence(p.max_k, p.random_rho, seed)?;
        (ks.iter().map(|&k| k as u64).collect(), lebesgue_growth(&x, &ks, samples)?)
    } else {
        let mut pts = Vec::new();
        let mut ds = Vec::new();
        for &k in &ks {
            let g = grid(p.dim, k)?;
            pts.push(g.len() as u64);
            ds.push(lebesgue_constant_nd(&g, samples)?.value);
        }
        (pts, ds)
    };
    let mut t = Table::new(&["k", "points", "delta", "delta_over_k3logk"]);
    for ((&k, &n), &d) in ks.iter().zip(&points).zip(&deltas) {
        let ratio = k3logk(k).map_or(Cell::Missing, |den| Cell::Float(d / den));
        t.push(vec![k.into(), n.into(), d.into(), ratio]);
    }
    let series: Vec<(f64, f64)> = ks.iter().zip(&deltas).map(|(&k, &d)| (k as f64, d)).collect();
    let tail: Vec<(f64, f64)> = series.iter().copied().filter(|(k, _)| *k >= 8.0).collect();
    let fit = loglog_fit(if tail.len() >= 2 { &tail } else { &series });
    let title = if p.dim == 1 {
        "Lebesgue constants of X_k".to_string()
    } else {
        format!("Lebesgue constants of P_k, N = {}", p.dim)
    };
    let svg = loglog_plot(&title, "k", "delta", &series, fit);
    Ok(Output { table: t, extra: None, svg: Some(svg), passed: None })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TestFunction {
    /// `1 / (1 + 25 x²)`
    Runge,
    /// `|x|⁵`
    Abs5,
    /// `exp(cos 3x)`
    Cinf,
    /// The constant `1`.
    Const,
}

impl TestFunction {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            TestFunction::Runge => 1.0 / (1.0 + 25.0 * x * x),
            TestFunction::Abs5 => x.abs().powi(5),
            TestFunction::Cinf => (3.0 * x).cos().exp(),
            TestFunction::Const => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ConvergeFamily {
    Rleja,
    Equispaced,
    Lobatto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergeParams {
    pub function: TestFunction,
    #[serde(default = "default_family")]
    pub family: ConvergeFamily,
    #[serde(default = "default_ks")]
    pub ks: Vec<usize>,
    #[serde(default = "default_grid")]
    pub grid: usize,
}

fn default_family() -> ConvergeFamily {
    ConvergeFamily::Rleja
}

pub fn default_ks() -> Vec<usize> {
    vec![16, 32, 64, 128, 256]
}

fn default_grid() -> usize {
    10_000
}

impl Params for ConvergeParams {
    fn validate(&self) -> Result<()> {
        ensure!(!self.ks.is_empty(), "empty range: no k values");
        ensure!(self.ks.iter().all(|&k| (1..=4096).contains(&k)), "every k must lie in 1..=4096");
        ensure!(self.grid >= 2, "grid must have at least 2 points");
        Ok(())
    }
}

fn family_nodes(family: ConvergeFamily, k: usize) -> Result<NodeSet1D> {
    Ok(match family {
        ConvergeFamily::Rleja => rleja_sequence(k, false, 0)?.prefix(k)?,
        ConvergeFamily::Equispaced => equispaced(k)?,
        ConvergeFamily::Lobatto if k == 1 => NodeSet1D::new(vec![0.0])?,
        ConvergeFamily::Lobatto => chebyshev_lobatto(k - 1)?,
    })
}

/// Sup-norm error of interpolation at `k` nodes, over `grid` equispaced points.
pub fn sup_error(f: TestFunction, nodes: &NodeSet1D, grid: usize) -> Result<f64> {
    let values: Vec<f64> = nodes.nodes().iter().map(|&x| f.eval(x)).collect();
    let mut worst: f64 = 0.0;
    for i in 0..grid {
        let x = -1.0 + 2.0 * i as f64 / (grid - 1) as f64;
        worst = worst.max((nodes.interpolate(&values, x)? - f.eval(x)).abs());
    }
    Ok(worst)
}

pub fn run_convergence_demo(p: &ConvergeParams) -> Result<Output> {
    let mut t = Table::new(&["k", "sup_error"]);
    for &k in &p.ks {
        let nodes = family_nodes(p.family, k)?;
        t.push(vec![k.into(), sup_error(p.function, &nodes, p.grid)?.into()]);
    }
    Ok(Output::table(t))
}
