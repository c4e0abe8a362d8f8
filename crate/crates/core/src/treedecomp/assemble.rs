//! Tree decompositions with bounded bag independence number, assembled from
//! an oracle for balanced separators of bounded independence number.
//!
//! Each node works on a pair `(W, S)` with `W` connected and `S = N(W)`, and
//! keeps `α(S) ≤ K` where `K = 2d/(1-c)`.
//!
//! * If `α(S) ≤ K - 1`, the bag is `S ∪ {u}` for the least `u ∈ W`, and the
//!   children are the components of `W - u`.
//! * Otherwise let `I` be a maximum stable set of `S`, put uniform weight on
//!   `I`, and ask the oracle for a `(w, c)`-balanced `X` in `G[W ∪ S]` with
//!   `α(X) ≤ d`. The bag is `S ∪ (X ∩ W)` and the children are the
//!   components `C` of `W - X`.
//!
//! In the second case a stable set of `N(C)` has at most `c|I| + d` vertices
//! in `S - X` (swap them against `I` outside the component of `C`) and at
//! most `d` in `X`, so the invariant survives. Since `|I| > d/(1-c)`, the
//! oracle cannot answer with `X ⊆ S`, so `W` shrinks. Bags have
//! `α ≤ K + d = (3-c)/(1-c) · d`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    alpha_exact, components_within, max_stable_set, open_nbhd, rational_serde, CapExceeded, Graph, Rational,
    VertexSet, WeightFn,
};
use crate::separators::{check_balanced, BreakOracle};

use super::TreeDecomposition;

/// A source of `(w, c)`-balanced separators; `w` is always a normal weight
/// function on the graph handed over.
pub trait SeparatorOracle {
    fn separate(&self, g: &Graph, w: &WeightFn, c: &Rational) -> Result<VertexSet, String>;
}

impl<F> SeparatorOracle for F
where
    F: Fn(&Graph, &WeightFn, &Rational) -> Result<VertexSet, String>,
{
    fn separate(&self, g: &Graph, w: &WeightFn, c: &Rational) -> Result<VertexSet, String> {
        self(g, w, c)
    }
}

/// A bag of an optimal tree decomposition, so `α ≤ tw + 1`. Balanced for
/// `c ≥ 1/2`.
#[derive(Clone, Copy, Debug, Default)]
pub struct TreewidthBagOracle;

impl SeparatorOracle for TreewidthBagOracle {
    fn separate(&self, g: &Graph, w: &WeightFn, _c: &Rational) -> Result<VertexSet, String> {
        crate::separators::treewidth_separator(g, w).map_err(|e| e.to_string())
    }
}

/// `N[X]` from a breakability oracle, used as a plain separator.
pub struct CoreOracle<'a>(pub &'a dyn BreakOracle);

impl SeparatorOracle for CoreOracle<'_> {
    fn separate(&self, g: &Graph, w: &WeightFn, _c: &Rational) -> Result<VertexSet, String> {
        let cert = self.0.break_graph(g, w).map_err(|e| e.to_string())?;
        Ok(cert.separator)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AssembleError {
    #[error("c must lie in [1/2, 1), got {0}")]
    BadFraction(String),
    #[error("d must be at least 1")]
    BadD,
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error("oracle failed on vertices {vertices}: {detail}")]
    OracleFailed { vertices: VertexSet, detail: String },
    #[error("oracle breached its contract on vertices {vertices}: {detail}")]
    OracleBreach { vertices: VertexSet, detail: String },
    #[error("assembled decomposition is invalid: {0}")]
    Invalid(String),
    #[error("bag independence number {found} exceeds (3-c)/(1-c)·d = {bound}")]
    BoundViolated { found: usize, bound: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssembleReport {
    pub oracle_calls: usize,
    pub width: isize,
    pub independence_number: usize,
    /// Largest `α` among oracle answers.
    pub max_oracle_alpha: usize,
    /// `(3-c)/(1-c) · d`.
    #[serde(with = "rational_serde")]
    pub bound: Rational,
}

struct Builder<'a> {
    g: &'a Graph,
    oracle: &'a dyn SeparatorOracle,
    c: Rational,
    d: usize,
    k_bound: Rational,
    bags: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
    calls: usize,
    max_alpha: usize,
}

/// Build a decomposition whose bags have `α ≤ (3-c)/(1-c)·d`, given an
/// oracle whose answers have `α ≤ d`. Every oracle answer is checked, and
/// the result is validated before it is returned.
pub fn assemble_td(
    g: &Graph,
    oracle: &dyn SeparatorOracle,
    c: &Rational,
    d: usize,
) -> Result<(TreeDecomposition, AssembleReport), AssembleError> {
    let half = crate::separators::half_power(1);
    let one = Rational::from_integer(1.into());
    if *c < half || *c >= one {
        return Err(AssembleError::BadFraction(crate::graph::format_rational(c)));
    }
    if d == 0 {
        return Err(AssembleError::BadD);
    }
    let dq = Rational::from_integer(d.into());
    let k_bound = &dq * Rational::from_integer(2.into()) / (&one - c);
    let bound = (Rational::from_integer(3.into()) - c) / (&one - c) * &dq;
    let mut b = Builder {
        g,
        oracle,
        c: c.clone(),
        d,
        k_bound,
        bags: Vec::new(),
        edges: Vec::new(),
        calls: 0,
        max_alpha: 0,
    };
    let mut roots = Vec::new();
    for comp in components_within(g, &g.all()) {
        roots.push(b.node(comp, VertexSet::new())?);
    }
    if roots.is_empty() {
        b.bags.push(VertexSet::new());
    }
    for pair in roots.windows(2) {
        b.edges.push((pair[0], pair[1]));
    }
    let tree = Graph::from_edges(b.bags.len(), b.edges.clone()).map_err(|e| AssembleError::Invalid(e.to_string()))?;
    let td = TreeDecomposition::new(tree, b.bags);
    let verdict = td.validate(g);
    if !verdict.ok {
        return Err(AssembleError::Invalid(format!("{:?}", verdict.violations)));
    }
    let stats = td.stats(g)?;
    if Rational::from_integer(stats.independence_number.into()) > bound {
        return Err(AssembleError::BoundViolated {
            found: stats.independence_number,
            bound: crate::graph::format_rational(&bound),
        });
    }
    let report = AssembleReport {
        oracle_calls: b.calls,
        width: stats.width,
        independence_number: stats.independence_number,
        max_oracle_alpha: b.max_alpha,
        bound,
    };
    Ok((td, report))
}

impl Builder<'_> {
    /// Emit the node for `(w_set, s)` and its subtree; returns its index.
    fn node(&mut self, w_set: VertexSet, s: VertexSet) -> Result<usize, AssembleError> {
        let alpha_s = alpha_exact(self.g, &s)?;
        let one = Rational::from_integer(1.into());
        let (bag, removed) = if Rational::from_integer(alpha_s.into()) + &one <= self.k_bound {
            let u = w_set.least().expect("W is nonempty");
            let mut bag = s.clone();
            bag.insert(u);
            (bag, VertexSet::singleton(u))
        } else {
            let x = self.ask_oracle(&w_set, &s)?;
            let inner = x.intersection(&w_set);
            if inner.is_empty() {
                return Err(AssembleError::OracleBreach {
                    vertices: w_set.union(&s),
                    detail: "separator avoids the active set, so no progress is possible".into(),
                });
            }
            (s.union(&inner), inner)
        };
        let me = self.bags.len();
        self.bags.push(bag);
        for child in components_within(self.g, &w_set.difference(&removed)) {
            let boundary = open_nbhd(self.g, &child);
            let idx = self.node(child, boundary)?;
            self.edges.push((me, idx));
        }
        Ok(me)
    }

    fn ask_oracle(&mut self, w_set: &VertexSet, s: &VertexSet) -> Result<VertexSet, AssembleError> {
        let region = w_set.union(s);
        let sub = self.g.induced(&region);
        let stable = max_stable_set(self.g, s)?;
        let w = WeightFn::uniform_on(sub.graph.n(), &sub.restrict(&stable));
        self.calls += 1;
        let local = self
            .oracle
            .separate(&sub.graph, &w, &self.c)
            .map_err(|detail| AssembleError::OracleFailed { vertices: region.clone(), detail })?;
        if local.iter().any(|&v| v >= sub.graph.n()) {
            return Err(AssembleError::OracleBreach { vertices: region, detail: "answer outside the graph".into() });
        }
        if !check_balanced(&sub.graph, &w, &local, &self.c).ok {
            return Err(AssembleError::OracleBreach { vertices: region, detail: "answer is not balanced".into() });
        }
        let x = sub.lift(&local);
        let a = alpha_exact(self.g, &x)?;
        if a > self.d {
            return Err(AssembleError::OracleBreach {
                vertices: region,
                detail: format!("answer has independence number {a} > d = {}", self.d),
            });
        }
        self.max_alpha = self.max_alpha.max(a);
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;
    use crate::separators::{half_power, MinCoreOracle};
    use crate::treedecomp::CliqueSeparatorOracle;

    #[test]
    fn chordal_with_clique_oracle() {
        for seed in 0..10 {
            let g = generate::random_chordal(14, seed).unwrap();
            let (td, rep) = assemble_td(&g, &CliqueSeparatorOracle, &half_power(1), 1).unwrap();
            assert!(td.validate(&g).ok);
            assert!(rep.independence_number <= 5);
        }
    }

    #[test]
    fn path_with_closed_neighbourhoods() {
        let g = generate::path(20).unwrap();
        let oracle = MinCoreOracle { k: 2 };
        let (td, rep) = assemble_td(&g, &CoreOracle(&oracle), &half_power(1), 2).unwrap();
        assert!(td.validate(&g).ok);
        assert!(rep.independence_number <= 10);
    }

    #[test]
    fn single_vertex_and_empty() {
        let (td, _) = assemble_td(&Graph::empty(1), &CliqueSeparatorOracle, &half_power(1), 1).unwrap();
        assert_eq!(td.bags, vec![VertexSet::from([0])]);
        let (td, _) = assemble_td(&Graph::empty(0), &CliqueSeparatorOracle, &half_power(1), 1).unwrap();
        assert_eq!(td.nodes(), 1);
    }

    #[test]
    fn rejects_bad_oracle() {
        // Growing through a grid row by row builds boundaries with α above K = 4.
        let g = generate::grid(6, 6).unwrap();
        let lazy = |_: &Graph, _: &WeightFn, _: &Rational| Ok(VertexSet::new());
        assert!(matches!(
            assemble_td(&g, &lazy, &half_power(1), 1),
            Err(AssembleError::OracleBreach { .. })
        ));
    }
}
