//! Sequence, node, grid, Lebesgue-constant, and check commands.

use anyhow::{bail, ensure, Context, Result};
use leja_core::checks::{self, BoundCheckReport, MasterBoundSettings};
use leja_core::interp1d::lebesgue_constant;
use leja_core::intertwine::{binomial_count, lebesgue_constant_nd};
use leja_core::rleja::{build_by_phi, chebyshev_lobatto, equispaced, modified_chebyshev, phi};
use leja_core::{DiskLejaSequence, DyadicAngle, IntertwinedGrid, NodeSet1D, RLejaSequence, RhoChoice};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::{Output, Params};
use crate::report::{Cell, Table};

const MAX_COUNT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenSequence {
    pub count: usize,
    /// Draw the rotations from the seed instead of the canonical ones.
    #[serde(default)]
    pub random_rho: bool,
}

impl Params for GenSequence {
    fn validate(&self) -> Result<()> {
        ensure!((1..=MAX_COUNT).contains(&self.count), "count must lie in 1..={MAX_COUNT}");
        Ok(())
    }
}

/// A disk Leja sequence of at least `len` points.
pub fn disk_source(len: usize, random_rho: bool, seed: u64) -> Result<DiskLejaSequence> {
    if !random_rho {
        return Ok(DiskLejaSequence::canonical(len)?);
    }
    let levels = (usize::BITS - len.max(1).leading_zeros()) as usize;
    let rho = RhoChoice::random(&mut ChaCha8Rng::seed_from_u64(seed), levels)?;
    Ok(DiskLejaSequence::with_rho(rho, len)?)
}

pub fn rleja_sequence(count: usize, random_rho: bool, seed: u64) -> Result<RLejaSequence> {
    let len = if count == 0 { 1 } else { phi(count - 1) + 1 };
    Ok(build_by_phi(&disk_source(len, random_rho, seed)?, count)?)
}

pub fn gen_leja(p: &GenSequence, seed: u64) -> Result<Output> {
    let seq = disk_source(p.count, p.random_rho, seed)?;
    let mut t = Table::new(&["index", "num", "log2den", "turns", "re", "im"]);
    for (i, (a, (re, im))) in seq.angles().iter().zip(seq.points()).enumerate() {
        t.push(vec![
            i.into(),
            a.numerator().into(),
            a.log2_denominator().into(),
            a.turns().into(),
            re.into(),
            im.into(),
        ]);
    }
    Ok(Output::table(t))
}

pub fn gen_rleja(p: &GenSequence, seed: u64) -> Result<Output> {
    let x = rleja_sequence(p.count, p.random_rho, seed)?;
    let mut t = Table::new(&["index", "phi", "num", "log2den", "x"]);
    for (i, (a, v)) in x.angles().iter().zip(x.values()).enumerate() {
        t.push(vec![i.into(), phi(i).into(), a.numerator().into(), a.log2_denominator().into(), (*v).into()]);
    }
    Ok(Output::table(t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `L_d`: `d + 1` Chebyshev-Lobatto points.
    Lobatto,
    /// `T_d^(β)`: `d` modified Chebyshev points (needs `beta`).
    Modcheb,
    /// `d + 1` equispaced points.
    Equispaced,
    /// `X_(d+1)`: the first `d + 1` points of the canonical ℜ-Leja sequence.
    Rleja,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeFamilyParams {
    pub family: Family,
    pub degree: usize,
    /// Shift in turns, e.g. `1/2^5`, for the modified Chebyshev family.
    #[serde(default)]
    pub beta: Option<String>,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_samples() -> usize {
    leja_core::interp1d::DEFAULT_SAMPLES_PER_GAP
}

impl NodeFamilyParams {
    fn beta(&self) -> Result<Option<DyadicAngle>> {
        self.beta
            .as_deref()
            .map(|s| s.parse::<DyadicAngle>().map_err(|e| anyhow::anyhow!("invalid beta `{s}`: {e}")))
            .transpose()
    }

    pub fn build(&self) -> Result<NodeSet1D> {
        let d = self.degree;
        Ok(match self.family {
            Family::Lobatto => chebyshev_lobatto(d)?,
            Family::Modcheb => modified_chebyshev(d, self.beta()?.context("modcheb needs beta")?)?,
            Family::Equispaced => equispaced(d + 1)?,
            Family::Rleja => rleja_sequence(d + 1, false, 0)?.prefix(d + 1)?,
        })
    }
}

impl Params for NodeFamilyParams {
    fn validate(&self) -> Result<()> {
        ensure!((1..=1 << 16).contains(&self.degree), "degree must lie in 1..=65536");
        ensure!(self.samples >= 8, "samples must be at least 8");
        let beta = self.beta()?;
        match (self.family, beta) {
            (Family::Modcheb, None) => bail!("modcheb needs beta"),
            (Family::Modcheb, Some(b)) if b.mul_int(2 * self.degree as u64).is_zero() => {
                bail!("beta makes cos(beta) an extremal point of T_{}", self.degree)
            }
            (Family::Modcheb, _) => {}
            (_, Some(_)) => bail!("beta only applies to the modcheb family"),
            _ => {}
        }
        Ok(())
    }
}

pub fn gen_nodes(p: &NodeFamilyParams) -> Result<Output> {
    let set = p.build()?;
    let mut t = Table::new(&["index", "x", "angle"]);
    for (i, x) in set.nodes().iter().enumerate() {
        let angle = set.angles().map_or(Cell::Missing, |a| Cell::Text(a[i].to_string()));
        t.push(vec![i.into(), (*x).into(), angle]);
    }
    Ok(Output::table(t))
}

pub fn lebesgue1d(p: &NodeFamilyParams) -> Result<Output> {
    let set = p.build()?;
    let e = lebesgue_constant(&set, p.samples)?;
    let mut t = Table::new(&["family", "degree", "nodes", "delta", "argmax", "certified_lower", "refined"]);
    let family = serde_json::to_value(p.family)?.as_str().unwrap_or_default().to_string();
    t.push(vec![
        family.into(),
        p.degree.into(),
        set.len().into(),
        e.value.into(),
        e.argmax.into(),
        e.certified_lower.into(),
        e.refined.into(),
    ]);
    Ok(Output::table(t))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridParams {
    pub dim: usize,
    pub degree: usize,
    /// Samples per axis for the Lebesgue scan.
    #[serde(default = "default_axis_samples")]
    pub samples: usize,
}

fn default_axis_samples() -> usize {
    65
}

impl Params for GridParams {
    fn validate(&self) -> Result<()> {
        ensure!((1..=6).contains(&self.dim), "dim must lie in 1..=6");
        ensure!(binomial_count(self.dim, self.degree) <= 5000, "grid would exceed 5000 points");
        ensure!(self.samples >= 16, "samples must be at least 16");
        Ok(())
    }
}

pub fn grid(dim: usize, k: usize) -> Result<IntertwinedGrid> {
    let x = RLejaSequence::canonical(k + 1)?;
    Ok(IntertwinedGrid::build(&vec![x; dim], k)?)
}

pub fn gen_grid(p: &GridParams) -> Result<Output> {
    let g = grid(p.dim, p.degree)?;
    let mut t = Table::new(&["index", "alpha", "point"]);
    for (i, (a, x)) in g.indices().iter().zip(g.points()).enumerate() {
        t.push(vec![i.into(), Cell::Ints(a.0.iter().map(|&v| v as i64).collect()), Cell::Floats(x.clone())]);
    }
    Ok(Output::table(t))
}

pub fn lebesgue_nd(p: &GridParams) -> Result<Output> {
    let g = grid(p.dim, p.degree)?;
    let e = lebesgue_constant_nd(&g, p.samples)?;
    let mut t = Table::new(&["dim", "k", "points", "delta", "argmax", "certified_lower", "refined"]);
    t.push(vec![
        p.dim.into(),
        p.degree.into(),
        g.len().into(),
        e.value.into(),
        Cell::Floats(e.argmax),
        e.certified_lower.into(),
        e.refined.into(),
    ]);
    Ok(Output::table(t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    SinHalving,
    TrigLemma,
    Modcheb,
    LowerBound,
    Master,
    Equilibrium,
}

/// Sweep sizes; unset fields take the claim's default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckParams {
    pub claim: Claim,
    #[serde(default)]
    pub trials: Option<usize>,
    #[serde(default)]
    pub grid: Option<usize>,
    #[serde(default)]
    pub d_max: Option<usize>,
    #[serde(default)]
    pub betas: Option<usize>,
    #[serde(default)]
    pub n_max: Option<u32>,
    #[serde(default)]
    pub k_max: Option<usize>,
    #[serde(default)]
    pub samples: Option<usize>,
}

impl CheckParams {
    pub fn new(claim: Claim) -> Self {
        Self { claim, trials: None, grid: None, d_max: None, betas: None, n_max: None, k_max: None, samples: None }
    }
}

impl Params for CheckParams {
    fn validate(&self) -> Result<()> {
        if let Some(s) = self.samples {
            ensure!(s >= 8, "samples must be at least 8");
        }
        if let Some(d) = self.d_max {
            ensure!((4..=4096).contains(&d), "d_max must lie in 4..=4096");
        }
        if let Some(k) = self.k_max {
            ensure!((16..=2048).contains(&k), "k_max must lie in 16..=2048");
        }
        if let Some(n) = self.n_max {
            let hi = if self.claim == Claim::LowerBound { 10 } else { 20 };
            ensure!((3..=hi).contains(&n), "n_max must lie in 3..={hi}");
        }
        ensure!(
            self.trials != Some(0) && self.grid != Some(0) && self.betas != Some(0),
            "sweep sizes must be positive"
        );
        Ok(())
    }
}

/// Runs one claim with its default sweep sizes filled in.
pub fn run_check(p: &CheckParams, seed: u64) -> Result<BoundCheckReport> {
    let samples = p.samples.unwrap_or_else(default_samples);
    Ok(match p.claim {
        Claim::SinHalving => checks::check_sin_halving(p.trials.unwrap_or(1_000_000), seed),
        Claim::TrigLemma => checks::check_trig_lemma(p.trials.unwrap_or(10_000), p.grid.unwrap_or(10_000), seed)?,
        Claim::Modcheb => checks::check_modcheb_lebesgue(p.d_max.unwrap_or(256), p.betas.unwrap_or(50), seed, samples)?,
        Claim::LowerBound => checks::check_lower_bound(p.n_max.unwrap_or(8), &[4, 8, 16, 32], samples)?,
        Claim::Master => {
            checks::check_master_bound(MasterBoundSettings { k_max: p.k_max.unwrap_or(512), samples_per_gap: samples })?
        }
        Claim::Equilibrium => checks::check_equilibrium_measure(p.n_max.unwrap_or(10))?,
    })
}

fn flatten(report: &BoundCheckReport, t: &mut Table) {
    t.push(vec![report.claim.clone().into(), report.passed.into(), report.worst_ratio.into()]);
    for s in &report.sub_claims {
        flatten(s, t);
    }
}

pub fn check(p: &CheckParams, seed: u64) -> Result<Output> {
    let report = run_check(p, seed)?;
    let mut t = Table::new(&["claim", "passed", "worst_ratio"]);
    flatten(&report, &mut t);
    Ok(Output {
        table: t,
        extra: Some(("report".into(), serde_json::to_value(&report)?)),
        svg: None,
        passed: Some(report.passed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rleja_rows_follow_phi() {
        let out = gen_rleja(&GenSequence { count: 5, random_rho: false }, 0).unwrap();
        let x = out.table.column_f64("x").unwrap();
        let want = [1.0, -1.0, 0.0, std::f64::consts::FRAC_1_SQRT_2, -std::f64::consts::FRAC_1_SQRT_2];
        for (a, b) in x.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(out.table.column_f64("phi").unwrap(), vec![0.0, 1.0, 2.0, 4.0, 5.0]);
    }

    #[test]
    fn random_sources_depend_on_seed_only() {
        let a = gen_leja(&GenSequence { count: 16, random_rho: true }, 3).unwrap();
        let b = gen_leja(&GenSequence { count: 16, random_rho: true }, 3).unwrap();
        let c = gen_leja(&GenSequence { count: 16, random_rho: true }, 4).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn family_validation() {
        let p = |family, beta: Option<&str>| NodeFamilyParams {
            family,
            degree: 4,
            beta: beta.map(str::to_string),
            samples: 64,
        };
        assert!(p(Family::Modcheb, None).validate().is_err());
        assert!(p(Family::Modcheb, Some("1/8")).validate().is_err());
        assert!(p(Family::Modcheb, Some("1/2^5")).validate().is_ok());
        assert!(p(Family::Lobatto, Some("1/2^5")).validate().is_err());
        assert_eq!(p(Family::Lobatto, None).build().unwrap().len(), 5);
        assert_eq!(p(Family::Modcheb, Some("1/2^5")).build().unwrap().len(), 4);
    }

    #[test]
    fn three_point_lebesgue_row() {
        let p = NodeFamilyParams { family: Family::Rleja, degree: 2, beta: None, samples: 64 };
        let out = lebesgue1d(&p).unwrap();
        assert!((out.table.column_f64("delta").unwrap()[0] - 1.25).abs() < 1e-9);
    }

    #[test]
    fn grid_rows() {
        let out = gen_grid(&GridParams { dim: 2, degree: 8, samples: 65 }).unwrap();
        assert_eq!(out.table.rows.len(), 45);
    }

    #[test]
    fn check_output_carries_report() {
        let mut p = CheckParams::new(Claim::SinHalving);
        p.trials = Some(1000);
        let out = check(&p, 9).unwrap();
        assert_eq!(out.passed, Some(true));
        let (k, v) = out.extra.unwrap();
        assert_eq!(k, "report");
        assert_eq!(v["seed"], 9);
    }
}
