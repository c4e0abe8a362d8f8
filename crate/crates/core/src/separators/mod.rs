//! Balanced separators: checking, exhaustive small-core search, the
//! induced-path separator, the `1/2^i` power separators, and separators
//! taken from optimal tree decompositions.

mod balance;
mod mincore;
mod path;
mod power;
pub mod treewidth;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{rational_serde, CapExceeded, Graph, Rational, VertexSet, WeightFn};

pub use balance::{check_balanced, BalanceReport, ComponentWeight};
pub use mincore::{min_core_separator, min_core_separator_capped};
pub(crate) use mincore::next_combination;
pub use path::path_separator;
pub use power::{power_separator, power_separator_traced, PowerStep};
pub use treewidth::{balanced_bag, exact_treewidth, min_fill_order, treewidth_separator, treewidth_td};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeparatorError {
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error("graph must be connected")]
    NotConnected,
    #[error("oracle found no separator with core below {k} on vertices {vertices}")]
    OracleFailed { k: usize, vertices: VertexSet },
    #[error("oracle breached its contract on vertices {vertices}: {detail}")]
    OracleBreach { detail: String, vertices: VertexSet },
    #[error("no valid separator found: {0}")]
    Exhausted(String),
    #[error("bound violated: {0}")]
    BoundViolated(String),
}

/// A separator together with the evidence that it is balanced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparatorCert {
    pub core: VertexSet,
    /// `N[core]` when `core_based`, otherwise the separator set itself.
    pub separator: VertexSet,
    #[serde(with = "rational_serde")]
    pub c: Rational,
    pub components: Vec<ComponentWeight>,
    pub core_based: bool,
}

impl SeparatorCert {
    /// Certificate for `N[core]`.
    pub fn from_core(g: &Graph, w: &WeightFn, core: VertexSet, c: Rational) -> SeparatorCert {
        let separator = crate::graph::closed_nbhd(g, &core);
        let report = check_balanced(g, w, &separator, &c);
        SeparatorCert { core, separator, c, components: report.components, core_based: true }
    }

    /// Certificate for a plain separator set.
    pub fn from_set(g: &Graph, w: &WeightFn, set: VertexSet, c: Rational) -> SeparatorCert {
        let report = check_balanced(g, w, &set, &c);
        SeparatorCert { core: set.clone(), separator: set, c, components: report.components, core_based: false }
    }

    /// Recompute everything from scratch and compare.
    pub fn validate(&self, g: &Graph, w: &WeightFn) -> bool {
        if self.core_based && self.separator != crate::graph::closed_nbhd(g, &self.core) {
            return false;
        }
        let report = check_balanced(g, w, &self.separator, &self.c);
        report.ok && report.components == self.components
    }
}

/// `1/2^i`.
pub fn half_power(i: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << i)
}

/// A realisation of `k`-breakability: given a graph and a weight function it
/// returns a `(w, 1/2)`-balanced separator `N[X]` with `|X| < k`.
pub trait BreakOracle {
    fn k(&self) -> usize;
    fn break_graph(&self, g: &Graph, w: &WeightFn) -> Result<SeparatorCert, SeparatorError>;
}

/// Exhaustive oracle: the smallest core, searched in size order.
#[derive(Clone, Debug)]
pub struct MinCoreOracle {
    pub k: usize,
}

impl BreakOracle for MinCoreOracle {
    fn k(&self) -> usize {
        self.k
    }

    fn break_graph(&self, g: &Graph, w: &WeightFn) -> Result<SeparatorCert, SeparatorError> {
        min_core_separator(g, w, self.k, &half_power(1))?
            .ok_or_else(|| SeparatorError::OracleFailed { k: self.k, vertices: g.all() })
    }
}

/// Check an oracle answer against the contract, naming the offending graph.
pub(crate) fn check_oracle_answer(
    g: &Graph,
    w: &WeightFn,
    cert: &SeparatorCert,
    k: usize,
    c: &Rational,
    host_ids: impl Fn(&VertexSet) -> VertexSet,
) -> Result<(), SeparatorError> {
    let breach = |detail: String| SeparatorError::OracleBreach { detail, vertices: host_ids(&g.all()) };
    if cert.core.iter().any(|&v| v >= g.n()) {
        return Err(breach("core outside the graph".into()));
    }
    if cert.core.len() >= k {
        return Err(breach(format!("core of size {} not below {k}", cert.core.len())));
    }
    let sep = crate::graph::closed_nbhd(g, &cert.core);
    let report = check_balanced(g, w, &sep, c);
    if !report.ok {
        return Err(breach(format!("N[core] leaves {} heavy components", report.offending.len())));
    }
    Ok(())
}
