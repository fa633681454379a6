use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid EDCS parameters: beta={beta}, beta_minus={beta_minus} (need beta > beta_minus >= 0, beta >= 1)")]
    InvalidParams { beta: u64, beta_minus: u64 },
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("edge ({0}, {1}) is not an edge of the host graph")]
    NotSubgraph(usize, usize),
    #[error("vertex counts differ: {0} vs {1}")]
    VertexCountMismatch(usize, usize),
    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("vertex set is empty after dropping zero-degree members")]
    EmptyVertexSet,
    #[error("enumerating C({m}, {f}) = {subsets} fault sets exceeds the budget of {budget}; use beta_search mode")]
    BudgetExceeded {
        m: usize,
        f: usize,
        subsets: u128,
        budget: u128,
    },
    #[error("scripted matching rejected: {0}")]
    ScriptRejected(String),
    #[error("invalid generator parameters: {0}")]
    InvalidGenSpec(String),
}
