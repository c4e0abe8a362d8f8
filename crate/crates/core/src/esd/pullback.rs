//! Pulling a balanced separator of the pattern back to the host. The pattern
//! `H` is enlarged to `H'`: every edge is subdivided by a vertex `v_e`, every
//! vertex `v` gets a pendant `v_v`, every triangle `T` gets a vertex `v_T`
//! adjacent to its corners, and every component `D'` outside the decomposed
//! component gets an isolated vertex `v_D'`. Weights are projected onto `H'`,
//! a balanced separator of `H'` is read off a tree decomposition,
//! and each of its vertices is replaced by an atom boundary.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::caps::Caps;
use crate::graph::{closed_nbhd, components, components_within, format_rational, Graph, Rational, VertexSet, WeightFn};
use crate::separators::treewidth::decomposition_from_order;
use crate::separators::{balanced_bag, check_balanced, half_power, min_fill_order, next_combination, treewidth_td, BalanceReport};

use super::atoms::{boundary, core_of, require_valid_faithful};
use super::{atoms, fmt_edge, fmt_triangle, AtomSource, Esd, EsdError};

pub struct Pullback {
    /// The lifted separator, in host ids of `g`.
    pub x: VertexSet,
    /// `X ⊆ N[Y]` and `|Y| ≤ 3|X'|`.
    pub y: VertexSet,
    pub x_prime: VertexSet,
    pub h_prime: Graph,
    /// Role of each vertex of `H'`.
    pub labels: Vec<String>,
    pub w_prime: WeightFn,
    /// `w'(H') - w(G)`: a vertex lying in both ends of one edge is counted
    /// at both pattern vertices.
    pub overcount: Rational,
    /// The decomposition of `H'` was optimal; above the treewidth cap a
    /// min-fill decomposition is used instead.
    pub exact_decomposition: bool,
    /// The decomposition of `H'` had no balanced bag, so a smallest
    /// balanced set was searched for exhaustively.
    pub exhaustive_fallback: bool,
    pub balance_x: BalanceReport,
    pub balance_ny: BalanceReport,
}

impl Pullback {
    pub fn to_json(&self) -> Value {
        json!({
            "x": self.x,
            "y": self.y,
            "x_prime": self.x_prime.iter().map(|&v| &self.labels[v]).collect::<Vec<_>>(),
            "h_prime": self.h_prime,
            "labels": self.labels,
            "w_prime": self.w_prime.to_json(),
            "overcount": format_rational(&self.overcount),
            "exact_decomposition": self.exact_decomposition,
            "exhaustive_fallback": self.exhaustive_fallback,
            "balance_x": self.balance_x,
            "balance_ny": self.balance_ny,
        })
    }
}

/// `esd` decomposes the component `D` of `g` left after removing
/// `outside_components`; its host must be `g[D]` with vertices renumbered in
/// increasing order. `w` is a weight function on `g` of total at most one
/// and every atom must weigh at most `1/2`.
pub fn pullback_separator(
    g: &Graph,
    w: &WeightFn,
    esd: &Esd,
    outside_components: &[VertexSet],
) -> Result<Pullback, EsdError> {
    if w.len() != g.n() {
        return Err(EsdError::Precondition(format!("{} weights for {} vertices", w.len(), g.n())));
    }
    if w.exceeds(&w.total(), &Rational::one()) {
        return Err(EsdError::Precondition("weights sum to more than one".into()));
    }
    let mut outside_all = VertexSet::new();
    for c in outside_components {
        outside_all.extend_from(c);
    }
    let d = g.all().difference(&outside_all);
    let mut want: Vec<VertexSet> = components(g, &d);
    let mut got: Vec<VertexSet> = outside_components.to_vec();
    want.sort();
    got.sort();
    if want != got {
        return Err(EsdError::Precondition("outside components are not the components of g - D".into()));
    }
    if components_within(g, &d).len() > 1 {
        return Err(EsdError::Precondition("the decomposed part is not connected".into()));
    }
    let sub = g.induced(&d);
    if esd.host != sub.graph {
        return Err(EsdError::Precondition("decomposition host differs from g[D]".into()));
    }
    require_valid_faithful(esd)?;
    let wd = w.restrict(&sub);
    let half = half_power(1);
    for atom in atoms(esd) {
        let aw = wd.of(&atom.vertices);
        if w.exceeds(&aw, &half) {
            return Err(EsdError::HeavyAtom { atom: atom.source.to_string(), weight: format_rational(&aw) });
        }
    }

    // H' and w'.
    let pattern = esd.pattern.base();
    let h = pattern.n();
    let pedges = esd.pattern.edges();
    let m = pedges.len();
    let tris = esd.pattern.triangles();
    let ve = |i: usize| h + i;
    let vv = |v: usize| h + m + v;
    let vt = |j: usize| h + m + h + j;
    let vd = |k: usize| h + m + h + tris.len() + k;
    let total = vd(outside_components.len());
    let mut edges = Vec::new();
    let mut labels: Vec<String> = (0..h).map(|v| v.to_string()).collect();
    let mut wp = vec![Rational::zero(); total];
    for v in 0..h {
        wp[v] = wd.of(&esd.ends_at(v));
    }
    for (i, &e) in pedges.iter().enumerate() {
        edges.push((e.0, ve(i)));
        edges.push((ve(i), e.1));
        labels.push(format!("e:{}", fmt_edge(e)));
        wp[ve(i)] = wd.of(&esd.edge_interior(e));
    }
    for v in 0..h {
        edges.push((v, vv(v)));
        labels.push(format!("v:{v}"));
        wp[vv(v)] = wd.of(esd.vertex_zone(v));
    }
    for (j, t) in tris.iter().enumerate() {
        for &c in t {
            edges.push((c, vt(j)));
        }
        labels.push(format!("T:{}", fmt_triangle(*t)));
        wp[vt(j)] = wd.of(esd.triangle_zone(*t));
    }
    for (k, c) in outside_components.iter().enumerate() {
        labels.push(format!("D:{k}"));
        wp[vd(k)] = w.of(c);
    }
    let h_prime = Graph::from_edges(total, edges).map_err(|e| EsdError::Internal(e.to_string()))?;
    let w_prime = WeightFn::unchecked(wp, w.mode());
    let overcount = w_prime.total() - w.total();

    // A balanced separator of H' avoiding the isolated outside vertices.
    let outside_ids: VertexSet = (0..outside_components.len()).map(vd).collect();
    let mut exhaustive_fallback = false;
    let exact_decomposition = h_prime.n() <= Caps::global().treewidth.min(24);
    let td = if exact_decomposition {
        treewidth_td(&h_prime)?.1
    } else {
        decomposition_from_order(&h_prime, &min_fill_order(&h_prime))
    };
    let bag = balanced_bag(&h_prime, &w_prime, &td).map(|b| b.difference(&outside_ids));
    let x_prime = match bag.filter(|b| check_balanced(&h_prime, &w_prime, b, &half).ok) {
        Some(b) => b,
        None => {
            exhaustive_fallback = true;
            smallest_balanced(&h_prime, &w_prime, &outside_ids)?
        }
    };

    // Lift to D, with a core for every vertex of X'.
    let mut x_local = VertexSet::new();
    let mut y_local = VertexSet::new();
    for &p in x_prime.iter() {
        let source = if p < h {
            AtomSource::Vertex(p)
        } else if p < h + m {
            AtomSource::EdgeInterior(pedges[p - h])
        } else if p < h + m + h {
            AtomSource::Vertex(p - h - m)
        } else {
            AtomSource::Triangle(tris[p - h - m - h])
        };
        // For a pattern vertex the lifted set is the ends at it, which is
        // the boundary of its vertex atom.
        x_local.extend_from(&boundary(esd, source));
        let atom = atoms(esd).into_iter().find(|a| a.source == source).expect("every source has an atom");
        y_local.extend_from(&core_of(esd, atom)?.core);
    }
    let x = sub.lift(&x_local);
    let y = sub.lift(&y_local);
    let ny = closed_nbhd(g, &y);
    let trace = || format!("X' = {x_prime}, X = {x}, Y = {y}, w' = {:?}", w_prime.values().iter().map(format_rational).collect::<Vec<_>>());
    if y.len() > 3 * x_prime.len() {
        return Err(EsdError::Internal(format!("|Y| > 3|X'|: {}", trace())));
    }
    if !x.is_subset(&ny) {
        return Err(EsdError::Internal(format!("X is not inside N[Y]: {}", trace())));
    }
    let balance_x = check_balanced(g, w, &x, &half);
    let balance_ny = check_balanced(g, w, &ny, &half);
    if !balance_x.ok || !balance_ny.ok {
        return Err(EsdError::Internal(format!("lifted separator is not balanced: {}", trace())));
    }
    Ok(Pullback {
        x,
        y,
        x_prime,
        h_prime,
        labels,
        w_prime,
        overcount,
        exact_decomposition,
        exhaustive_fallback,
        balance_x,
        balance_ny,
    })
}

/// Smallest `(w, 1/2)`-balanced set avoiding `banned`, by size then
/// lexicographically.
fn smallest_balanced(g: &Graph, w: &WeightFn, banned: &VertexSet) -> Result<VertexSet, EsdError> {
    let half = half_power(1);
    let pool: Vec<usize> = g.vertices().filter(|v| !banned.contains(v)).collect();
    let cap = Caps::global().mincore_subsets;
    let mut tried: u64 = 0;
    for size in 0..=pool.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            tried += 1;
            if tried > cap {
                return Err(crate::graph::CapExceeded { what: "pattern separator search", size: tried, cap }.into());
            }
            let set: VertexSet = idx.iter().map(|&i| pool[i]).collect();
            if check_balanced(g, w, &set, &half).ok {
                return Ok(set);
            }
            if !next_combination(&mut idx, pool.len()) {
                break;
            }
        }
    }
    Err(EsdError::Internal("no balanced set in the pattern graph".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::esd::fixtures;

    #[test]
    fn single_strip_pattern_has_five_vertices() {
        let esd = fixtures::single_strip();
        let g = esd.host.clone();
        let pb = pullback_separator(&g, &WeightFn::uniform(3), &esd, &[]).unwrap();
        assert_eq!(pb.h_prime.n(), 5);
        assert!(pb.balance_x.ok);
        assert!(pb.y.len() <= 3 * pb.x_prime.len());
    }

    #[test]
    fn weight_on_one_vertex_atom() {
        let esd = fixtures::two_strip_path();
        let g = esd.host.clone();
        let mut values = vec![Rational::zero(); g.n()];
        values[fixtures::TWO_STRIP_HUB] = half_power(1);
        let w = WeightFn::unchecked(values, crate::graph::WeightMode::Exact);
        let pb = pullback_separator(&g, &w, &esd, &[]).unwrap();
        assert!(pb.balance_x.ok);
        assert!(pb.y.len() <= 3);
    }

    #[test]
    fn outside_components_never_chosen() {
        let f = fixtures::with_outside_components();
        let w = WeightFn::uniform(f.graph.n());
        let pb = pullback_separator(&f.graph, &w, &f.esd, &f.outside).unwrap();
        for (k, _) in f.outside.iter().enumerate() {
            let id = pb.labels.iter().position(|l| *l == format!("D:{k}")).unwrap();
            assert!(!pb.x_prime.contains(&id));
            assert_eq!(pb.h_prime.degree(id), 0);
        }
        assert!(pb.balance_ny.ok);
    }

    #[test]
    fn heavy_atom_is_refused() {
        let esd = fixtures::two_strip_path();
        let g = esd.host.clone();
        let mut values = vec![Rational::zero(); g.n()];
        values[fixtures::TWO_STRIP_HUB] = Rational::one();
        let w = WeightFn::unchecked(values, crate::graph::WeightMode::Exact);
        assert!(matches!(pullback_separator(&g, &w, &esd, &[]), Err(EsdError::HeavyAtom { .. })));
    }
}
