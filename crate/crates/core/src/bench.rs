//! Wall-clock scaling measurements for single rules.

use std::time::Instant;

use thiserror::Error;

use crate::circuit::{gen_rule_instance, GenerateError};
use crate::rules::{RewriteError, RuleId};
use crate::scheduler::{run_to_fixpoint, DEFAULT_MAX_PASSES};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub rule: RuleId,
    /// Instance sizes, strictly increasing.
    pub sizes: Vec<usize>,
    /// Repetitions per size, at least one.
    pub reps: usize,
    pub seed: u64,
    pub max_passes: usize,
}

impl BenchConfig {
    pub fn new(rule: RuleId, sizes: Vec<usize>, reps: usize, seed: u64) -> Result<Self, BenchError> {
        if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BenchError::Sizes(sizes));
        }
        if reps == 0 {
            return Err(BenchError::ZeroReps);
        }
        Ok(BenchConfig {
            rule,
            sizes,
            reps,
            seed,
            max_passes: DEFAULT_MAX_PASSES,
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BenchError {
    #[error("sizes must be nonempty and strictly increasing, got {0:?}")]
    Sizes(Vec<usize>),
    #[error("reps must be at least 1")]
    ZeroReps,
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// One CSV row: the mean and population standard deviation of the time to
/// run `rule` to its fixpoint on instances of one size.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub rule: RuleId,
    pub size: usize,
    /// Node count of the instances, averaged over repetitions.
    pub nodes: usize,
    /// Rewrites applied, averaged over repetitions.
    pub applied: usize,
    pub mean_s: f64,
    pub stddev_s: f64,
    pub budget_exhausted: bool,
}

impl BenchRow {
    pub const CSV_HEADER: &'static str = "rule,size,nodes,applied,mean_s,stddev_s";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.9},{:.9}",
            self.rule, self.size, self.nodes, self.applied, self.mean_s, self.stddev_s
        )
    }
}

/// Repetition `r` at every size uses seed `seed + r`. Only the rewriting is
/// timed, not instance generation.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    let mut rows = Vec::with_capacity(cfg.sizes.len());
    for &size in &cfg.sizes {
        let mut times = Vec::with_capacity(cfg.reps);
        let (mut nodes, mut applied, mut exhausted) = (0, 0, false);
        for r in 0..cfg.reps {
            let mut d = gen_rule_instance(cfg.rule, size, cfg.seed.wrapping_add(r as u64))?;
            nodes += d.num_nodes();
            let start = Instant::now();
            let reports = run_to_fixpoint(&mut d, cfg.rule, cfg.max_passes)?;
            times.push(start.elapsed().as_secs_f64());
            applied += reports.iter().map(|p| p.applied).sum::<usize>();
            exhausted |= reports.iter().any(|p| p.budget_exhausted);
        }
        let n = cfg.reps as f64;
        let mean = times.iter().sum::<f64>() / n;
        let var = times.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / n;
        rows.push(BenchRow {
            rule: cfg.rule,
            size,
            nodes: nodes / cfg.reps,
            applied: applied / cfg.reps,
            mean_s: mean,
            stddev_s: var.sqrt(),
            budget_exhausted: exhausted,
        });
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(BenchRow::CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}
