//! Parallel drivers for the embarrassingly parallel loops. Results are
//! identical to the sequential core routines.

use edcs_core::combin::binomial;
use edcs_core::edcs::Edcs;
use edcs_core::fault::{
    adversary_exact_range, finish_report, Adversary, AdversaryPartial, FaultConfig, FaultEvaluator, FaultReport,
    FaultSubgraph,
};
use edcs_core::stochastic::{aggregate, run_trial, MonteCarloReport, StochasticConfig};
use edcs_core::{Error, Graph};
use rayon::prelude::*;

const CHUNK: u128 = 4096;

/// Exhaustive adversary with the subset ranks split into chunks.
pub fn adversary_exact(g: &Graph, sub: &FaultSubgraph<'_>, cfg: &FaultConfig) -> edcs_core::Result<FaultReport> {
    cfg.validate()?;
    if cfg.f > g.m() {
        return Err(Error::OutOfRange {
            name: "f",
            value: cfg.f as f64,
            range: "[0, m]",
        });
    }
    let total = binomial(g.m(), cfg.f);
    if total > cfg.budget {
        return Err(Error::BudgetExceeded {
            m: g.m(),
            f: cfg.f,
            subsets: total,
            budget: cfg.budget,
        });
    }
    let ev = FaultEvaluator::for_edcs(g, &sub.edcs, cfg.epsilon);
    let chunks = total.div_ceil(CHUNK) as u64;
    let partial = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c as u128 * CHUNK;
            adversary_exact_range(&ev, cfg.f, start..(start + CHUNK).min(total))
        })
        .reduce(AdversaryPartial::empty, AdversaryPartial::merge);
    Ok(finish_report(sub, cfg.f, cfg.epsilon, Adversary::Exact, partial))
}

/// Monte Carlo estimate with trials evaluated in parallel.
pub fn estimate_ratio(g: &Graph, h: &Edcs<'_>, cfg: &StochasticConfig) -> MonteCarloReport {
    let outcomes: Vec<_> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(g, h, cfg, t))
        .collect();
    aggregate(h, cfg, &outcomes)
}
