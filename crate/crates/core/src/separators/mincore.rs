use crate::caps::Caps;
use crate::graph::{closed_nbhd, CapExceeded, Graph, Rational, VertexSet, WeightFn};

use super::{check_balanced, SeparatorCert, SeparatorError};

/// Smallest `X` with `|X| < k` such that `N[X]` is `(w, c)`-balanced.
/// Candidates are tried by size, then lexicographically, so the first hit
/// is the lexicographically least among the smallest.
pub fn min_core_separator(
    g: &Graph,
    w: &WeightFn,
    k: usize,
    c: &Rational,
) -> Result<Option<SeparatorCert>, SeparatorError> {
    min_core_separator_capped(g, w, k, c, Caps::global().mincore_subsets)
}

pub fn min_core_separator_capped(
    g: &Graph,
    w: &WeightFn,
    k: usize,
    c: &Rational,
    cap: u64,
) -> Result<Option<SeparatorCert>, SeparatorError> {
    let n = g.n();
    let mut total: u64 = 0;
    let mut binom: u64 = 1;
    for i in 0..k.min(n + 1) {
        total = total.saturating_add(binom);
        binom = binom.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    if total > cap {
        return Err(CapExceeded { what: "small-core search", size: total, cap }.into());
    }
    for size in 0..k.min(n + 1) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let core: VertexSet = idx.iter().copied().collect();
            if check_balanced(g, w, &closed_nbhd(g, &core), c).ok {
                return Ok(Some(SeparatorCert::from_core(g, w, core, c.clone())));
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advance to the next `idx.len()`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let r = idx.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if idx[i] < n - r + i {
            idx[i] += 1;
            for j in i + 1..r {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, parse_rational};

    fn half() -> Rational {
        parse_rational("1/2").unwrap()
    }

    #[test]
    fn examples() {
        let p5 = generate::path(5).unwrap();
        let cert = min_core_separator(&p5, &WeightFn::uniform(5), 2, &half()).unwrap().unwrap();
        assert_eq!(cert.core, VertexSet::from([1]));
        assert!(cert.validate(&p5, &WeightFn::uniform(5)));

        let star = generate::complete_bipartite(1, 6).unwrap();
        assert_eq!(min_core_separator(&star, &WeightFn::uniform(7), 1, &half()).unwrap(), None);

        let single = Graph::empty(1);
        assert_eq!(min_core_separator(&single, &WeightFn::uniform(1), 1, &half()).unwrap(), None);
        let light = WeightFn::from_values(vec![half()]).unwrap();
        let cert = min_core_separator(&single, &light, 1, &half()).unwrap().unwrap();
        assert!(cert.core.is_empty());
    }

    #[test]
    fn larger_k_never_grows_core() {
        for seed in 0..20 {
            let g = generate::connected_gnp(10, 0.3, seed).unwrap();
            let w = WeightFn::uniform(10);
            let a = min_core_separator(&g, &w, 2, &half()).unwrap();
            let b = min_core_separator(&g, &w, 4, &half()).unwrap().unwrap();
            if let Some(a) = a {
                assert!(b.core.len() <= a.core.len());
            }
        }
    }

    #[test]
    fn refuses_over_cap() {
        let g = Graph::empty(30);
        let err = min_core_separator_capped(&g, &WeightFn::uniform(30), 4, &half(), 1000).unwrap_err();
        assert!(matches!(err, SeparatorError::Cap(_)));
    }

    #[test]
    fn combinations_enumerate_all() {
        let mut idx = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut idx, 5) {
            count += 1;
        }
        assert_eq!(count, 10);
    }
}
