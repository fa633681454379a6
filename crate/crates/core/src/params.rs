//! Parameter formulas for the EDCS applications.
//!
//! Logarithms are natural logarithms. Every formula is rounded up to the next
//! integer after shaving a relative 1e-9, so that values which are integers in
//! exact arithmetic do not get bumped by floating-point noise.

use crate::error::{Error, Result};

/// Default for the "large enough constant" in the stochastic and
/// fault-tolerant formulas.
pub const DEFAULT_C: f64 = 4.0;

pub(crate) fn ceil_int(x: f64) -> u64 {
    let shaved = x - 1e-9 * libm::fabs(x).max(1.0);
    let c = libm::ceil(shaved);
    if c < 1.0 {
        1
    } else if c >= u64::MAX as f64 {
        u64::MAX
    } else {
        c as u64
    }
}

pub(crate) fn check_open(name: &'static str, value: f64, lo: f64, hi: f64, range: &'static str) -> Result<()> {
    if value.is_finite() && value > lo && value < hi {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value, range })
    }
}

/// Smallest `beta` for which every EDCS of a graph on `n` vertices is the
/// whole graph: `2(n - 1)`, at least 1.
pub fn whole_graph_beta(n: usize) -> u64 {
    (2 * n.saturating_sub(1)).max(1) as u64
}

/// `ceil(32 * eps^-2 * ln(1/eps))` for the one-way protocol, `0 < eps < 1/2`.
pub fn protocol_beta(epsilon: f64) -> Result<u64> {
    check_open("epsilon", epsilon, 0.0, 0.5, "(0, 1/2)")?;
    Ok(ceil_int(32.0 * libm::log(1.0 / epsilon) / (epsilon * epsilon)))
}

/// `ceil(C * ln(1/(eps p)) / (eps^2 p))` for the stochastic sparsifier.
pub fn stochastic_beta(c: f64, epsilon: f64, p: f64) -> Result<u64> {
    check_open("epsilon", epsilon, 0.0, 0.25, "(0, 1/4)")?;
    check_positive("c", c)?;
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
            range: "(0, 1]",
        });
    }
    Ok(ceil_int(
        c * libm::log(1.0 / (epsilon * p)) / (epsilon * epsilon * p),
    ))
}

/// `ceil(C f / (eps^2 mu_min) + C ln(1/eps) / eps^2)` for the fault-tolerant
/// subgraph. `None` when `mu_min = 0 < f`, where the first term is unbounded.
pub fn fault_beta(c: f64, epsilon: f64, f: usize, mu_min: usize) -> Result<Option<u64>> {
    check_open("epsilon", epsilon, 0.0, 0.5, "(0, 1/2)")?;
    check_positive("c", c)?;
    let eps2 = epsilon * epsilon;
    let fault_term = match (f, mu_min) {
        (0, _) => 0.0,
        (_, 0) => return Ok(None),
        (f, mu) => c * f as f64 / (eps2 * mu as f64),
    };
    Ok(Some(ceil_int(fault_term + c * libm::log(1.0 / epsilon) / eps2)))
}

/// Edge-count target of the polynomial-time beta search:
/// `2 C f / eps^2 + n C ln(1/eps) / eps^2`.
pub fn fault_edge_threshold(c: f64, epsilon: f64, f: usize, n: usize) -> Result<f64> {
    check_open("epsilon", epsilon, 0.0, 0.5, "(0, 1/2)")?;
    check_positive("c", c)?;
    let eps2 = epsilon * epsilon;
    Ok(2.0 * c * f as f64 / eps2 + n as f64 * c * libm::log(1.0 / epsilon) / eps2)
}

/// Threshold `ceil(8 lambda^-2 ln(1/lambda))` under which an EDCS of a
/// general graph is known to keep a `(3/2 + 32 lambda)`-approximate matching.
pub fn general_graph_beta(lambda: f64) -> Result<u64> {
    check_open("lambda", lambda, 0.0, 1.0, "(0, 1)")?;
    Ok(ceil_int(8.0 * libm::log(1.0 / lambda) / (lambda * lambda)))
}

/// Threshold `ceil(2 / lambda)` for bipartite graphs, where the guarantee is
/// `3/2 + 4 lambda`.
pub fn bipartite_graph_beta(lambda: f64) -> Result<u64> {
    check_open("lambda", lambda, 0.0, 1.0, "(0, 1)")?;
    Ok(ceil_int(2.0 / lambda))
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            range: "(0, inf)",
        })
    }
}
