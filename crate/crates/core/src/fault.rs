//! Fault-tolerant matching subgraphs.
//!
//! An `f`-tolerant subgraph `H` of `G` should keep, for every set `F` of `f`
//! deleted edges, `mu(G \ F) <= (3/2 + O(eps)) mu(H \ F)`. The construction is
//! an EDCS with `beta_minus = beta - 1` and
//!
//! ```text
//! beta = C f / (eps^2 mu_min) + C ln(1/eps) / eps^2,   mu_min = min_{|F| = f} mu(G \ F)
//! ```
//!
//! ([`FaultMode::ExactMuMin`]), or, without knowing `mu_min`, the smallest
//! `beta` whose EDCS reaches `2 C f / eps^2 + n C ln(1/eps) / eps^2` edges
//! ([`FaultMode::BetaSearch`]).
//!
//! This module also carries the exhaustive and heuristic adversaries used to
//! evaluate a subgraph, and the two baselines (iterated maximum matchings and
//! maximum b-matchings) that only reach a factor of 2.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::combin::{binomial, Combinations};
use crate::edcs::{build_edcs, Edcs, EdcsParams};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Matching};
use crate::matching::{blossom_mates, matching_number, maximum_matching, verify_matching};
use crate::params::{check_open, fault_beta, fault_edge_threshold, whole_graph_beta, DEFAULT_C};
use crate::ratio::Ratio;
use crate::seed::{rng, trial_seed};

/// Default cap on `C(m, f)` for the exhaustive routines.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaultMode {
    ExactMuMin,
    BetaSearch,
}

impl FaultMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            FaultMode::ExactMuMin => "exact",
            FaultMode::BetaSearch => "search",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaultConfig {
    pub f: usize,
    pub epsilon: f64,
    pub c: f64,
    pub mode: FaultMode,
    /// Largest `C(m, f)` the exhaustive routines accept.
    pub budget: u128,
}

impl FaultConfig {
    pub fn new(f: usize, epsilon: f64, mode: FaultMode) -> Result<Self> {
        let cfg = FaultConfig {
            f,
            epsilon,
            c: DEFAULT_C,
            mode,
            budget: DEFAULT_BUDGET,
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
        check_open("epsilon", self.epsilon, 0.0, 0.5, "(0, 1/2)")?;
        check_open("c", self.c, 0.0, f64::INFINITY, "(0, inf)")
    }

    fn check_graph(&self, g: &Graph) -> Result<()> {
        self.validate()?;
        if self.f > g.m() {
            return Err(Error::OutOfRange {
                name: "f",
                value: self.f as f64,
                range: "[0, m]",
            });
        }
        Ok(())
    }
}

fn check_budget(m: usize, f: usize, budget: u128) -> Result<()> {
    let subsets = binomial(m, f);
    if subsets > budget {
        return Err(Error::BudgetExceeded {
            m,
            f,
            subsets,
            budget,
        });
    }
    Ok(())
}

/// `min_{|F| = f} mu(G \ F)`.
///
/// Refuses instances with `C(m, f) > budget`. The minimum itself is found by
/// branching: unless `F` hits every maximum matching of the current graph it
/// cannot lower `mu`, so it suffices to branch on the edges of one maximum
/// matching, pruning with `mu(G \ F) >= mu(G) - |F|`.
pub fn mu_min_exact(g: &Graph, f: usize, budget: u128) -> Result<usize> {
    if f > g.m() {
        return Err(Error::OutOfRange {
            name: "f",
            value: f as f64,
            range: "[0, m]",
        });
    }
    check_budget(g.m(), f, budget)?;
    let mut best = usize::MAX;
    let mut seen = BTreeSet::new();
    let mut deleted = vec![false; g.m()];
    mu_min_branch(g, &mut deleted, f, &mut best, &mut seen);
    Ok(best)
}

fn mu_min_branch(
    g: &Graph,
    deleted: &mut [bool],
    budget: usize,
    best: &mut usize,
    seen: &mut BTreeSet<Vec<bool>>,
) {
    if !seen.insert(deleted.to_vec()) {
        return;
    }
    let keep: Vec<bool> = deleted.iter().map(|&d| !d).collect();
    let current = g.edge_subgraph(&keep);
    let m = maximum_matching(&current);
    *best = (*best).min(m.size());
    if budget == 0 || m.size().saturating_sub(budget) >= *best {
        return;
    }
    for e in m.pairs() {
        let i = g.edge_index(e.0, e.1).expect("matching edge of a subgraph");
        deleted[i] = true;
        mu_min_branch(g, deleted, budget - 1, best, seen);
        deleted[i] = false;
    }
}

/// Outcome of the polynomial-time beta search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaChoice {
    pub beta: u64,
    /// No beta in range reached the threshold below the whole-graph cap.
    pub capped: bool,
    pub threshold: f64,
}

/// Smallest `beta` in `1..=2n` whose EDCS `(beta, beta - 1)` has at least
/// `2 C f / eps^2 + n C ln(1/eps) / eps^2` edges, by binary search. When the
/// threshold exceeds `m` no subgraph can reach it and the whole-graph value
/// `2(n - 1)` is returned instead.
pub fn beta_search(g: &Graph, cfg: &FaultConfig) -> Result<BetaChoice> {
    cfg.validate()?;
    let threshold = fault_edge_threshold(cfg.c, cfg.epsilon, cfg.f, g.n())?;
    let cap = whole_graph_beta(g.n());
    if threshold > g.m() as f64 {
        return Ok(BetaChoice {
            beta: cap,
            capped: true,
            threshold,
        });
    }
    let reaches = |beta: u64| -> Result<bool> {
        let (h, _) = build_edcs(g, EdcsParams::tight(beta)?);
        Ok(h.size() as f64 >= threshold)
    };
    let (mut lo, mut hi) = (1u64, 2 * g.n().max(1) as u64);
    // At beta >= 2(n - 1) the EDCS is all of G, which reaches the threshold.
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if reaches(mid)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(BetaChoice {
        beta: lo,
        capped: lo >= cap,
        threshold,
    })
}

/// The fault-tolerant EDCS plus how its `beta` was chosen.
#[derive(Debug, Clone)]
pub struct FaultSubgraph<'g> {
    pub edcs: Edcs<'g>,
    pub beta_used: u64,
    pub mode: FaultMode,
    pub mu_min: Option<usize>,
    pub capped: bool,
}

impl FaultSubgraph<'_> {
    /// `|E_H| <= 2 mu_min beta + f`, when `mu_min` is known.
    pub fn size_bound_holds(&self, f: usize) -> Option<bool> {
        self.mu_min.map(|mu| {
            (self.edcs.size() as u128) <= 2 * mu as u128 * self.beta_used as u128 + f as u128
        })
    }
}

pub fn build_ft_subgraph<'g>(g: &'g Graph, cfg: &FaultConfig) -> Result<FaultSubgraph<'g>> {
    cfg.check_graph(g)?;
    let (beta, mu_min, capped) = match cfg.mode {
        FaultMode::ExactMuMin => {
            let mu_min = mu_min_exact(g, cfg.f, cfg.budget)?;
            match fault_beta(cfg.c, cfg.epsilon, cfg.f, mu_min)? {
                Some(beta) => (beta, Some(mu_min), false),
                // mu_min = 0 < f: the formula is unbounded, take all of G.
                None => (whole_graph_beta(g.n()), Some(mu_min), true),
            }
        }
        FaultMode::BetaSearch => {
            let choice = beta_search(g, cfg)?;
            (choice.beta, None, choice.capped)
        }
    };
    let (edcs, _) = build_edcs(g, EdcsParams::tight(beta)?);
    Ok(FaultSubgraph {
        edcs,
        beta_used: beta,
        mode: cfg.mode,
        mu_min,
        capped,
    })
}

/// Which adversary produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adversary {
    Exact,
    Random,
    GreedyMatchingHit,
    DegreeConcentrate,
}

impl Adversary {
    pub fn as_str(&self) -> &'static str {
        match self {
            Adversary::Exact => "exact",
            Adversary::Random => "random",
            Adversary::GreedyMatchingHit => "greedy",
            Adversary::DegreeConcentrate => "concentrate",
        }
    }
}

/// Everything needed to score fault sets against one subgraph.
#[derive(Debug, Clone)]
pub struct FaultEvaluator<'a> {
    g: &'a Graph,
    h: Graph,
    h_degree: Vec<u64>,
    same: bool,
    /// `eps * beta`; a vertex is bad when it loses more than this many
    /// `H`-edges.
    bad_threshold: f64,
}

/// Score of a single fault set.
#[derive(Debug, Clone, PartialEq)]
pub struct FaultOutcome {
    pub mu_g: usize,
    pub mu_h: usize,
    pub ratio: Ratio,
    /// `|B_F|`: vertices with `deg_{H \ F}(v) < deg_H(v) - eps beta`.
    pub bad_vertices: usize,
}

impl<'a> FaultEvaluator<'a> {
    /// `h` must be a subgraph of `g`; `beta` and `epsilon` define bad vertices.
    pub fn new(g: &'a Graph, h: Graph, epsilon: f64, beta: u64) -> Result<Self> {
        if !h.is_subgraph_of(g) {
            let e = h.edges().iter().find(|e| !g.has_edge(e.0, e.1)).copied();
            let Edge(u, v) = e.unwrap_or(Edge(0, 0));
            return Err(Error::NotSubgraph(u, v));
        }
        let h_degree = (0..h.n()).map(|v| h.degree(v) as u64).collect();
        Ok(FaultEvaluator {
            same: h.m() == g.m(),
            g,
            h,
            h_degree,
            bad_threshold: epsilon * beta as f64,
        })
    }

    pub fn for_edcs(g: &'a Graph, h: &Edcs<'_>, epsilon: f64) -> Self {
        Self::new(g, h.to_graph(), epsilon, h.params().beta()).expect("EDCS lives inside its host")
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    pub fn subgraph(&self) -> &Graph {
        &self.h
    }

    pub fn evaluate(&self, faults: &[Edge]) -> FaultOutcome {
        let mu_g = matching_number(&self.g.without_edges(faults));
        let mu_h = if self.same {
            mu_g
        } else {
            matching_number(&self.h.without_edges(faults))
        };
        let mut lost = vec![0u64; self.g.n()];
        for e in faults {
            if self.h.has_edge(e.0, e.1) {
                lost[e.0] += 1;
                lost[e.1] += 1;
            }
        }
        let bad_vertices = (0..self.g.n())
            .filter(|&v| {
                ((self.h_degree[v] - lost[v]) as f64) < self.h_degree[v] as f64 - self.bad_threshold
            })
            .count();
        FaultOutcome {
            mu_g,
            mu_h,
            ratio: Ratio::new(mu_g, mu_h),
            bad_vertices,
        }
    }
}

/// Adversary result.
#[derive(Debug, Clone, PartialEq)]
pub struct FaultReport {
    pub beta_used: u64,
    pub subgraph_edges: usize,
    pub mu_min: Option<usize>,
    pub f: usize,
    pub worst_f: Vec<Edge>,
    pub worst_ratio: Ratio,
    pub adversary: Adversary,
    /// `|B_F|` for `worst_f`.
    pub bad_vertex_count: usize,
    /// Largest `|B_F|` over every tested `F`.
    pub max_bad_vertices: usize,
    /// `2 f / (eps beta)`.
    pub bad_bound: f64,
    pub sets_tested: u64,
}

impl FaultReport {
    /// `max |B_F| <= 2 f / (eps beta)` over the tested sets.
    pub fn bad_bound_holds(&self) -> bool {
        self.max_bad_vertices as f64 <= self.bad_bound
    }

    /// `worst_ratio <= 3/2 + slack`; infinite ratios always fail.
    pub fn within(&self, slack: f64) -> bool {
        !self.worst_ratio.is_infinite() && self.worst_ratio.value() <= 1.5 + slack
    }
}

/// Partial result of the exhaustive adversary over a rank range; ranges can
/// be evaluated independently and merged.
#[derive(Debug, Clone, PartialEq)]
pub struct AdversaryPartial {
    pub worst_rank: u128,
    pub worst: Option<(Vec<Edge>, FaultOutcome)>,
    pub max_bad_vertices: usize,
    pub tested: u64,
}

impl AdversaryPartial {
    pub fn empty() -> Self {
        AdversaryPartial {
            worst_rank: u128::MAX,
            worst: None,
            max_bad_vertices: 0,
            tested: 0,
        }
    }

    fn offer(&mut self, rank: u128, faults: Vec<Edge>, outcome: FaultOutcome) {
        self.tested += 1;
        self.max_bad_vertices = self.max_bad_vertices.max(outcome.bad_vertices);
        let better = match &self.worst {
            None => true,
            Some((_, w)) => outcome.ratio > w.ratio || (outcome.ratio == w.ratio && rank < self.worst_rank),
        };
        if better {
            self.worst_rank = rank;
            self.worst = Some((faults, outcome));
        }
    }

    /// Max ratio, ties going to the lexicographically smaller fault set.
    pub fn merge(mut self, other: AdversaryPartial) -> AdversaryPartial {
        let tested = self.tested + other.tested;
        let max_bad = self.max_bad_vertices.max(other.max_bad_vertices);
        if let Some((faults, outcome)) = other.worst {
            self.offer(other.worst_rank, faults, outcome);
        }
        self.tested = tested;
        self.max_bad_vertices = max_bad;
        self
    }
}

/// Scores every `f`-subset of `E(G)` whose lexicographic rank lies in `ranks`.
pub fn adversary_exact_range(ev: &FaultEvaluator<'_>, f: usize, ranks: Range<u128>) -> AdversaryPartial {
    let edges = ev.graph().edges();
    let mut partial = AdversaryPartial::empty();
    let count = ranks.end.saturating_sub(ranks.start);
    let combos = Combinations::from_rank(edges.len(), f, ranks.start).take(count.min(usize::MAX as u128) as usize);
    for (offset, combo) in combos.enumerate() {
        let faults: Vec<Edge> = combo.iter().map(|&i| edges[i]).collect();
        let outcome = ev.evaluate(&faults);
        partial.offer(ranks.start + offset as u128, faults, outcome);
    }
    partial
}

/// Turns a merged partial into a report.
pub fn finish_report(
    sub: &FaultSubgraph<'_>,
    f: usize,
    epsilon: f64,
    adversary: Adversary,
    partial: AdversaryPartial,
) -> FaultReport {
    let (worst_f, outcome) = partial.worst.unwrap_or_else(|| {
        (
            Vec::new(),
            FaultOutcome {
                mu_g: 0,
                mu_h: 0,
                ratio: Ratio::ONE,
                bad_vertices: 0,
            },
        )
    });
    FaultReport {
        beta_used: sub.beta_used,
        subgraph_edges: sub.edcs.size(),
        mu_min: sub.mu_min,
        f,
        worst_f,
        worst_ratio: outcome.ratio,
        adversary,
        bad_vertex_count: outcome.bad_vertices,
        max_bad_vertices: partial.max_bad_vertices,
        bad_bound: 2.0 * f as f64 / (epsilon * sub.beta_used as f64),
        sets_tested: partial.tested,
    }
}

/// Exhaustive adversary over all `f`-subsets of `E(G)`, sequentially.
pub fn adversary_exact(g: &Graph, sub: &FaultSubgraph<'_>, cfg: &FaultConfig) -> Result<FaultReport> {
    cfg.check_graph(g)?;
    check_budget(g.m(), cfg.f, cfg.budget)?;
    let ev = FaultEvaluator::for_edcs(g, &sub.edcs, cfg.epsilon);
    let total = binomial(g.m(), cfg.f);
    let partial = adversary_exact_range(&ev, cfg.f, 0..total);
    Ok(finish_report(sub, cfg.f, cfg.epsilon, Adversary::Exact, partial))
}

/// Heuristic adversary: `trials` fault sets from one strategy, seeded.
/// Every candidate is padded to exactly `f` edges, so its ratio never
/// exceeds the exhaustive one.
pub fn adversary_heuristic(
    g: &Graph,
    sub: &FaultSubgraph<'_>,
    cfg: &FaultConfig,
    strategy: Adversary,
    trials: usize,
    seed: u64,
) -> Result<FaultReport> {
    cfg.check_graph(g)?;
    let ev = FaultEvaluator::for_edcs(g, &sub.edcs, cfg.epsilon);
    let mut partial = AdversaryPartial::empty();
    for t in 0..trials.max(1) as u64 {
        let mut r = rng(trial_seed(seed, t));
        let faults = match strategy {
            Adversary::Random | Adversary::Exact => random_faults(g, cfg.f, &mut r),
            Adversary::GreedyMatchingHit => greedy_faults(&ev, cfg.f, t, &mut r),
            Adversary::DegreeConcentrate => concentrate_faults(&ev, cfg.f, t, &mut r),
        };
        let faults = pad_faults(&ev, faults, cfg.f);
        let outcome = ev.evaluate(&faults);
        partial.offer(t as u128, faults, outcome);
    }
    Ok(finish_report(sub, cfg.f, cfg.epsilon, strategy, partial))
}

fn random_faults(g: &Graph, f: usize, r: &mut impl Rng) -> Vec<Edge> {
    let mut idx: Vec<usize> = (0..g.m()).collect();
    let (chosen, _) = idx.partial_shuffle(r, f);
    let mut out: Vec<Edge> = chosen.iter().map(|&i| g.edges()[i]).collect();
    out.sort_unstable();
    out
}

/// Repeatedly deletes the edge of a current maximum matching of `H \ F` that
/// hurts the ratio most. Trial 0 breaks ties by lowest edge; later trials
/// shuffle the candidates first.
fn greedy_faults(ev: &FaultEvaluator<'_>, f: usize, trial: u64, r: &mut impl Rng) -> Vec<Edge> {
    let mut faults: Vec<Edge> = Vec::new();
    for _ in 0..f {
        let h_now = ev.subgraph().without_edges(&faults);
        let mut candidates: Vec<Edge> = maximum_matching(&h_now).pairs().to_vec();
        if candidates.is_empty() {
            break;
        }
        if trial > 0 {
            candidates.shuffle(r);
        }
        let mut best: Option<(Ratio, Edge)> = None;
        for e in candidates {
            faults.push(e);
            let ratio = ev.evaluate(&faults).ratio;
            faults.pop();
            if best.is_none_or(|(b, _)| ratio > b) {
                best = Some((ratio, e));
            }
        }
        faults.push(best.unwrap().1);
    }
    faults.sort_unstable();
    faults
}

/// Deletes `H`-edges around the currently highest-degree vertex of `H \ F`
/// first, moving on to the next vertex once one is stripped.
fn concentrate_faults(ev: &FaultEvaluator<'_>, f: usize, trial: u64, r: &mut impl Rng) -> Vec<Edge> {
    let mut faults: BTreeSet<Edge> = BTreeSet::new();
    let h = ev.subgraph();
    while faults.len() < f {
        let alive = |v: usize, w: usize| !faults.contains(&Edge::new(v, w));
        let degree = |v: usize| h.neighbors(v).iter().filter(|&&w| alive(v, w)).count();
        let mut order: Vec<usize> = (0..h.n()).collect();
        if trial > 0 {
            order.shuffle(r);
        }
        // Stable sort keeps id order (trial 0) or the shuffle among equal degrees.
        order.sort_by_key(|&v| core::cmp::Reverse(degree(v)));
        let Some(&top) = order.first().filter(|&&v| degree(v) > 0) else {
            break;
        };
        let mut around: Vec<usize> = h.neighbors(top).iter().copied().filter(|&w| alive(top, w)).collect();
        if trial > 0 {
            around.shuffle(r);
        }
        for w in around {
            if faults.len() == f {
                break;
            }
            faults.insert(Edge::new(top, w));
        }
    }
    faults.into_iter().collect()
}

/// Tops a fault set up to exactly `f` edges: unused `H`-edges first, then
/// the rest of `G`, in lexicographic order.
fn pad_faults(ev: &FaultEvaluator<'_>, mut faults: Vec<Edge>, f: usize) -> Vec<Edge> {
    let mut used: BTreeSet<Edge> = faults.iter().copied().collect();
    let h_edges = ev.subgraph().edges().iter();
    let g_edges = ev.graph().edges().iter();
    for &e in h_edges.chain(g_edges) {
        if faults.len() >= f {
            break;
        }
        if used.insert(e) {
            faults.push(e);
        }
    }
    faults.sort_unstable();
    faults
}

/// `mu(G \ F) / mu(H \ F)` for an arbitrary subgraph `h` of `g`.
pub fn fault_ratio(g: &Graph, h: &Graph, faults: &[Edge]) -> Ratio {
    Ratio::new(
        matching_number(&g.without_edges(faults)),
        matching_number(&h.without_edges(faults)),
    )
}

/// Iterated-matching baseline with the default lowest-id matchings.
pub fn baseline_iterated_matching(g: &Graph, edge_budget: usize) -> Graph {
    baseline_iterated_matching_with(g, edge_budget, |rest, _| maximum_matching(rest))
        .expect("default oracle returns maximum matchings")
}

/// Iterated-matching baseline: while `H` has fewer than `edge_budget` edges
/// and edges remain, take a maximum matching of what is left, move it into
/// `H`. `oracle(rest, round)` picks the matching; it must return a maximum
/// matching of `rest`, which lets a caller script adversarial tie-breaks.
pub fn baseline_iterated_matching_with<F>(g: &Graph, edge_budget: usize, mut oracle: F) -> Result<Graph>
where
    F: FnMut(&Graph, usize) -> Matching,
{
    let mut rest = g.clone();
    let mut taken: Vec<Edge> = Vec::new();
    let mut round = 0;
    while taken.len() < edge_budget && rest.m() > 0 {
        let m = oracle(&rest, round);
        if !verify_matching(&rest, &m) {
            return Err(Error::ScriptRejected(format!(
                "round {round}: not a matching of the remaining graph"
            )));
        }
        let best = matching_number(&rest);
        if m.size() != best {
            return Err(Error::ScriptRejected(format!(
                "round {round}: matching of size {} but the maximum is {best}",
                m.size()
            )));
        }
        taken.extend_from_slice(m.pairs());
        rest = rest.without_edges(m.pairs());
        round += 1;
    }
    taken.sort_unstable();
    let h = Graph::from_sorted(g.n(), taken);
    Ok(match g.bipartition() {
        Some(left) => h.with_bipartition(left.to_vec())?,
        None => h,
    })
}

/// Maximum b-matching (every vertex of degree at most `b`, as many edges as
/// possible), through the standard gadget reduction to ordinary matching:
/// vertex `v` becomes `min(b, deg v)` copies, edge `i = (u, v)` becomes a
/// pair `a_i - c_i` with `a_i` joined to all copies of `u` and `c_i` to all
/// copies of `v`. A maximum matching of the gadget has `m + |b-matching|`
/// edges, and edge `i` is selected iff neither `a_i` nor `c_i` is matched to
/// the other.
pub fn baseline_b_matching(g: &Graph, b: usize) -> Result<Graph> {
    if b == 0 {
        return Err(Error::OutOfRange {
            name: "b",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    let n = g.n();
    let mut first_copy = Vec::with_capacity(n + 1);
    let mut total = 0;
    for v in 0..n {
        first_copy.push(total);
        total += b.min(g.degree(v));
    }
    first_copy.push(total);
    let copies = |v: usize| first_copy[v]..first_copy[v + 1];
    let mut gadget_edges = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        let a = total + 2 * i;
        let c = a + 1;
        gadget_edges.push((a, c));
        gadget_edges.extend(copies(e.0).map(|x| (x, a)));
        gadget_edges.extend(copies(e.1).map(|x| (x, c)));
    }
    let gadget = Graph::new(total + 2 * g.m(), gadget_edges)?;
    let mate = blossom_mates(&gadget);
    let chosen: Vec<Edge> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            let a = total + 2 * i;
            mate[a] != usize::MAX && mate[a] != a + 1 && mate[a + 1] != usize::MAX
        })
        .map(|(_, &e)| e)
        .collect();
    let h = Graph::from_sorted(n, chosen);
    Ok(match g.bipartition() {
        Some(left) => h.with_bipartition(left.to_vec())?,
        None => h,
    })
}

/// True when `h` is a subgraph of `g` with maximum degree at most `b` and as
/// many edges as a maximum b-matching.
pub fn is_maximum_b_matching(g: &Graph, b: usize, h: &Graph) -> Result<bool> {
    let optimum = baseline_b_matching(g, b)?.m();
    Ok(h.is_subgraph_of(g) && h.max_degree() <= b && h.m() == optimum)
}

/// Accepts a caller-chosen maximum b-matching (the tie-break override for
/// the b-matching baseline) after checking that it is one.
pub fn baseline_b_matching_scripted(g: &Graph, b: usize, candidate: &[Edge]) -> Result<Graph> {
    let h = Graph::new(g.n(), candidate.iter().map(|e| (e.0, e.1)))?;
    if !is_maximum_b_matching(g, b, &h)? {
        return Err(Error::ScriptRejected(format!(
            "{} edges do not form a maximum {b}-matching",
            h.m()
        )));
    }
    Ok(h)
}
