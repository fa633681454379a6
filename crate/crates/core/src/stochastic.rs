//! Stochastic matching.
//!
//! Every edge of `G` is realized independently with probability `p`. The
//! sparsifier is an EDCS `H` of `G` with
//! `beta = ceil(C ln(1/(eps p)) / (eps^2 p))` and `beta_minus = beta - 1`;
//! the realization of `H` is `H_p = H ∩ G_p`. The quantity of interest is
//! `E[mu(G_p)] / E[mu(H_p)]`, estimated here by Monte Carlo.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::edcs::{build_edcs, Edcs, EdcsParams};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::matching_number;
use crate::params::{check_open, stochastic_beta, DEFAULT_C};
use crate::seed::{rng, trial_seed};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StochasticConfig {
    pub p: f64,
    pub epsilon: f64,
    pub c: f64,
    pub trials: usize,
    pub master_seed: u64,
}

impl StochasticConfig {
    pub fn new(p: f64, epsilon: f64, trials: usize, master_seed: u64) -> Result<Self> {
        let cfg = StochasticConfig {
            p,
            epsilon,
            c: DEFAULT_C,
            trials,
            master_seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_c(mut self, c: f64) -> Result<Self> {
        self.c = c;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        check_open("epsilon", self.epsilon, 0.0, 0.25, "(0, 1/4)")?;
        if self.trials == 0 {
            return Err(Error::OutOfRange {
                name: "trials",
                value: 0.0,
                range: "[1, inf)",
            });
        }
        stochastic_beta(self.c, self.epsilon, self.p).map(|_| ())
    }

    pub fn beta(&self) -> Result<u64> {
        stochastic_beta(self.c, self.epsilon, self.p)
    }
}

/// The bounded-degree sparsifier `H`.
pub fn stochastic_sparsifier<'g>(g: &'g Graph, cfg: &StochasticConfig) -> Result<Edcs<'g>> {
    cfg.validate()?;
    let (h, _) = build_edcs(g, EdcsParams::tight(cfg.beta()?)?);
    Ok(h)
}

/// Keeps each edge independently with probability `p`, drawing one uniform
/// variate per edge in lexicographic edge order. `p` is clamped to `[0, 1]`.
pub fn realize(g: &Graph, p: f64, seed: u64) -> Graph {
    let p = p.clamp(0.0, 1.0);
    let mut rng = rng(seed);
    let keep: Vec<bool> = g.edges().iter().map(|_| rng.gen::<f64>() < p).collect();
    g.edge_subgraph(&keep)
}

/// `V+` / `V-` of one realization.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DeviantVertices {
    /// `deg_{H_p}(v) > p deg_H(v) + eps p beta / 2`.
    pub v_plus: Vec<usize>,
    /// `deg_{H_p}(v) < p deg_H(v) - eps p beta / 2`, or an `H`-neighbour of
    /// some vertex of `V+`.
    pub v_minus: Vec<usize>,
}

impl DeviantVertices {
    pub fn count(&self) -> usize {
        self.v_plus.len() + self.v_minus.len()
    }
}

/// Classifies the vertices whose realized `H`-degree strays from its mean.
/// `h_p` must be a subgraph of `H`.
pub fn classify_deviant_vertices(h: &Edcs<'_>, h_p: &Graph, cfg: &StochasticConfig) -> DeviantVertices {
    let n = h.host().n();
    let slack = cfg.epsilon * cfg.p * h.params().beta() as f64 / 2.0;
    let mut plus = vec![false; n];
    let mut minus = vec![false; n];
    for v in 0..n {
        let expected = cfg.p * h.degree(v) as f64;
        let realized = h_p.degree(v) as f64;
        plus[v] = realized > expected + slack;
        minus[v] = realized < expected - slack;
    }
    for e in h.edges() {
        if plus[e.0] {
            minus[e.1] = true;
        }
        if plus[e.1] {
            minus[e.0] = true;
        }
    }
    DeviantVertices {
        v_plus: (0..n).filter(|&v| plus[v]).collect(),
        v_minus: (0..n).filter(|&v| minus[v]).collect(),
    }
}

/// Result of one Monte Carlo trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    pub trial: u64,
    pub mu_g: usize,
    pub mu_h: usize,
    pub v_plus: usize,
    pub v_minus: usize,
}

/// Runs trial `t`: realize `G` from the trial seed, intersect with `H`, and
/// match both exactly.
pub fn run_trial(g: &Graph, h: &Edcs<'_>, cfg: &StochasticConfig, t: u64) -> TrialOutcome {
    let g_p = realize(g, cfg.p, trial_seed(cfg.master_seed, t));
    let mu_g = matching_number(&g_p);
    let (mu_h, devs) = if h.is_whole_graph() {
        (mu_g, classify_deviant_vertices(h, &g_p, cfg))
    } else {
        let h_p = h.to_graph().intersection(&g_p).expect("same vertex set");
        (matching_number(&h_p), classify_deviant_vertices(h, &h_p, cfg))
    };
    TrialOutcome {
        trial: t,
        mu_g,
        mu_h,
        v_plus: devs.v_plus.len(),
        v_minus: devs.v_minus.len(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloReport {
    pub beta_used: u64,
    pub max_degree_h: u64,
    pub sum_mu_g: u64,
    pub sum_mu_h: u64,
    pub mean_mu_g: f64,
    pub mean_mu_h: f64,
    /// `mean_mu_g / mean_mu_h`; 1 when both are zero, infinite when only the
    /// denominator is.
    pub ratio: f64,
    /// 95% half-width on the ratio (delta method).
    pub ci_halfwidth: f64,
    pub trials: usize,
    pub seed: u64,
    /// Mean of `|V+| + |V-|` over the trials.
    pub mean_deviant: f64,
    pub deviant_ci_halfwidth: f64,
}

impl MonteCarloReport {
    /// `ratio <= 3/2 + eps + ci_halfwidth`.
    pub fn within_guarantee(&self, epsilon: f64) -> bool {
        self.ratio <= 1.5 + epsilon + self.ci_halfwidth
    }
}

/// Combines trial outcomes. Sums are exact integers, so the result does not
/// depend on the order of `outcomes`.
pub fn aggregate(h: &Edcs<'_>, cfg: &StochasticConfig, outcomes: &[TrialOutcome]) -> MonteCarloReport {
    let t = outcomes.len();
    let sum_mu_g: u64 = outcomes.iter().map(|o| o.mu_g as u64).sum();
    let sum_mu_h: u64 = outcomes.iter().map(|o| o.mu_h as u64).sum();
    let tf = t.max(1) as f64;
    let mean_mu_g = sum_mu_g as f64 / tf;
    let mean_mu_h = sum_mu_h as f64 / tf;
    let ratio = match (sum_mu_g, sum_mu_h) {
        (0, 0) => 1.0,
        (_, 0) => f64::INFINITY,
        (a, b) => a as f64 / b as f64,
    };
    let ci_halfwidth = if t > 1 && sum_mu_h > 0 {
        let ss: f64 = outcomes
            .iter()
            .map(|o| {
                let d = o.mu_g as f64 - ratio * o.mu_h as f64;
                d * d
            })
            .sum();
        Z95 * libm::sqrt(ss / (t - 1) as f64) / (mean_mu_h * libm::sqrt(tf))
    } else {
        0.0
    };
    let deviant: Vec<f64> = outcomes.iter().map(|o| (o.v_plus + o.v_minus) as f64).collect();
    let mean_deviant = deviant.iter().sum::<f64>() / tf;
    let deviant_ci_halfwidth = if t > 1 {
        let ss: f64 = deviant.iter().map(|d| (d - mean_deviant) * (d - mean_deviant)).sum();
        Z95 * libm::sqrt(ss / (t - 1) as f64) / libm::sqrt(tf)
    } else {
        0.0
    };
    MonteCarloReport {
        beta_used: h.params().beta(),
        max_degree_h: h.max_degree(),
        sum_mu_g,
        sum_mu_h,
        mean_mu_g,
        mean_mu_h,
        ratio,
        ci_halfwidth,
        trials: t,
        seed: cfg.master_seed,
        mean_deviant,
        deviant_ci_halfwidth,
    }
}

/// Sequential Monte Carlo estimate over `cfg.trials` realizations.
pub fn estimate_ratio(g: &Graph, h: &Edcs<'_>, cfg: &StochasticConfig) -> MonteCarloReport {
    let outcomes: Vec<TrialOutcome> = (0..cfg.trials as u64).map(|t| run_trial(g, h, cfg, t)).collect();
    aggregate(h, cfg, &outcomes)
}
