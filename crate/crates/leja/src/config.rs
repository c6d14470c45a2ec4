use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::commands;
use crate::experiments;
use crate::report::Table;

/// A command name, a seed, and the command's parameters. Parameters are
/// deserialized into the command's typed parameter struct, which rejects
/// unknown keys, and validated before anything runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: String,
    pub seed: u64,
    #[serde(default = "empty_object")]
    pub params: Value,
}

fn empty_object() -> Value {
    json!({})
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub table: Table,
    /// Extra top-level JSON entry, e.g. a full check report.
    pub extra: Option<(String, Value)>,
    pub svg: Option<String>,
    /// `Some(false)` when a requested check failed.
    pub passed: Option<bool>,
}

impl Output {
    pub fn table(table: Table) -> Self {
        Self { table, extra: None, svg: None, passed: None }
    }
}

pub const COMMANDS: &[&str] =
    &["gen-leja", "gen-rleja", "gen-nodes", "gen-grid", "lebesgue1d", "lebesgue-nd", "check", "growth", "converge"];

/// Parameters of one command: deserializable without unknown keys and
/// checkable before any computation.
pub trait Params: Serialize + for<'de> Deserialize<'de> {
    fn validate(&self) -> Result<()>;
}

impl ExperimentConfig {
    pub fn new<P: Params>(command: &str, seed: u64, params: &P) -> Result<Self> {
        Ok(Self { command: command.to_string(), seed, params: serde_json::to_value(params)? })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    fn typed<P: Params>(&self) -> Result<P> {
        let p: P = serde_json::from_value(self.params.clone())
            .with_context(|| format!("invalid parameters for `{}`", self.command))?;
        p.validate()?;
        Ok(p)
    }

    /// Checks the command name and parameters without running anything.
    pub fn validate(&self) -> Result<()> {
        match self.command.as_str() {
            "gen-leja" | "gen-rleja" => self.typed::<commands::GenSequence>().map(drop),
            "gen-nodes" | "lebesgue1d" => self.typed::<commands::NodeFamilyParams>().map(drop),
            "gen-grid" | "lebesgue-nd" => self.typed::<commands::GridParams>().map(drop),
            "check" => self.typed::<commands::CheckParams>().map(drop),
            "growth" => self.typed::<experiments::GrowthParams>().map(drop),
            "converge" => self.typed::<experiments::ConvergeParams>().map(drop),
            other => bail!("unknown command `{other}` (expected one of {})", COMMANDS.join(", ")),
        }
    }

    pub fn run(&self) -> Result<Output> {
        self.validate()?;
        let seed = self.seed;
        match self.command.as_str() {
            "gen-leja" => commands::gen_leja(&self.typed()?, seed),
            "gen-rleja" => commands::gen_rleja(&self.typed()?, seed),
            "gen-nodes" => commands::gen_nodes(&self.typed()?),
            "lebesgue1d" => commands::lebesgue1d(&self.typed()?),
            "gen-grid" => commands::gen_grid(&self.typed()?),
            "lebesgue-nd" => commands::lebesgue_nd(&self.typed()?),
            "check" => commands::check(&self.typed()?, seed),
            "growth" => experiments::run_growth_experiment(&self.typed()?, seed),
            "converge" => experiments::run_convergence_demo(&self.typed()?),
            _ => unreachable!("validated"),
        }
    }

    pub fn meta(&self) -> Value {
        json!({
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "seed": self.seed,
            "config": self.params,
        })
    }
}
