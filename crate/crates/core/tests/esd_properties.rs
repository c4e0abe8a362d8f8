use treealpha_core::esd::{
    atoms_and_boundaries, fixtures, is_constricted, is_faithful, pullback_separator, three_paths_check, tree_through,
    validate_esd, Esd,
};
use treealpha_core::graph::{closed_nbhd, generate, Rational, VertexSet, WeightFn, WeightMode};
use treealpha_core::separators::check_balanced;

use num_traits::Zero;
use rand::Rng;

fn all_fixtures() -> Vec<Esd> {
    let mut v: Vec<Esd> = fixtures::hand_built().into_iter().map(|(_, e)| e).collect();
    v.extend((0..30).map(|s| fixtures::random_strip_esd(3 + (s as usize % 6), s).unwrap()));
    v
}

#[test]
fn cores_dominate_boundaries() {
    for esd in all_fixtures() {
        for ac in atoms_and_boundaries(&esd).unwrap() {
            assert!(ac.core.len() <= 3);
            assert!(ac.boundary.is_subset(&closed_nbhd(&esd.host, &ac.core)));
        }
    }
}

#[test]
fn three_paths_check_on_seeded_instances() {
    for seed in 0..50 {
        let t = fixtures::three_paths_instance(seed);
        let [a, b, c] = &t.paths;
        let v = three_paths_check(&t.esd.host, &t.esd.z, &t.esd, [a, b, c]).unwrap();
        assert!(v.ok, "seed {seed}: {:?}", v.atoms);
    }
}

#[test]
fn faithful_fixtures_have_constricted_terminals() {
    for esd in all_fixtures() {
        if esd.z.len() >= 2 && esd.host.n() <= 14 && esd.host.is_connected() {
            assert!(is_faithful(&esd).faithful);
            assert!(is_constricted(&esd.host, &esd.z).unwrap(), "tree {:?}", tree_through(&esd.host, &esd.z));
        }
    }
}

#[test]
fn claw_with_three_terminal_leaves_is_not_constricted() {
    // Cross-check: an induced claw with three terminal leaves is itself a tree.
    for seed in 0..30 {
        let g = generate::gnp(9, 0.35, seed).unwrap();
        for c in g.vertices() {
            let nb: Vec<usize> = g.neighbors(c).iter().copied().collect();
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    for k in j + 1..nb.len() {
                        let (x, y, z) = (nb[i], nb[j], nb[k]);
                        if !g.has_edge(x, y) && !g.has_edge(x, z) && !g.has_edge(y, z) {
                            assert!(!is_constricted(&g, &VertexSet::from([x, y, z])).unwrap());
                        }
                    }
                }
            }
        }
    }
}

fn random_weights(n: usize, seed: u64) -> WeightFn {
    let mut r = generate::rng(seed);
    let raw: Vec<u64> = (0..n).map(|_| r.gen_range(0..=10)).collect();
    let total: u64 = raw.iter().sum::<u64>().max(1);
    let values = raw.iter().map(|&x| Rational::new(x.into(), total.into())).collect();
    WeightFn::unchecked(values, WeightMode::Exact)
}

#[test]
fn pullback_is_balanced_with_small_core() {
    let mut ran = 0;
    for (i, esd) in all_fixtures().into_iter().enumerate() {
        for s in 0..4u64 {
            let w = random_weights(esd.host.n(), s * 100 + i as u64);
            match pullback_separator(&esd.host, &w, &esd, &[]) {
                Ok(pb) => {
                    ran += 1;
                    assert!(check_balanced(&esd.host, &w, &pb.x, &treealpha_core::separators::half_power(1)).ok);
                    assert!(pb.y.len() <= 3 * pb.x_prime.len());
                }
                Err(treealpha_core::esd::EsdError::HeavyAtom { .. }) => {}
                Err(e) => panic!("fixture {i} seed {s}: {e}"),
            }
        }
    }
    assert!(ran > 50);
}

#[test]
fn pullback_with_outside_components() {
    let f = fixtures::with_outside_components();
    let mut values = vec![Rational::zero(); f.graph.n()];
    for v in 0..7 {
        values[v] = Rational::new(1.into(), 10.into());
    }
    for v in 7..11 {
        values[v] = Rational::new(3.into(), 40.into());
    }
    let w = WeightFn::unchecked(values, WeightMode::Exact);
    let pb = pullback_separator(&f.graph, &w, &f.esd, &f.outside).unwrap();
    assert!(pb.balance_ny.ok);
    assert!(validate_esd(&f.esd).ok);
}
