//! The acceptance suites. Each case records the seed it was built from so a
//! failure can be replayed alone.

use std::time::Instant;

use num_bigint::BigInt;
use rand::Rng;
use serde::Serialize;

use treealpha_core::boosting::{BoostParams, BoostingOracle};
use treealpha_core::esd::{atoms_and_boundaries, fixtures, is_faithful, pullback_separator, three_paths_check, validate_esd, EsdError};
use treealpha_core::graph::{closed_nbhd, generate, Graph, Rational, WeightFn, WeightMode};
use treealpha_core::layered::{
    bounds, disjoint_separators, layered_run, sample_witnesses, spaced_cycle_instance, spaced_path_separators,
    BoundsInputs, DisjointOutcome, LayeredOverrides, LayeredParams, Magnitude,
};
use treealpha_core::patterns::{contains_induced, find_pattern, PatternSpec};
use treealpha_core::separators::{check_balanced, half_power, power_separator, MinCoreOracle};
use treealpha_core::treedecomp::{
    assemble_td, is_chordal, mwis_brute, mwis_td, tree_alpha_exact, CliqueSeparatorOracle, MwisInstance,
    SeparatorOracle, TreeDecomposition, TreewidthBagOracle,
};
use treealpha_oracles as oracle;

/// Runtime limits, in milliseconds.
pub const MWIS_BUDGET_MS: u128 = 60_000;
pub const SAMPLING_BUDGET_MS: u128 = 30_000;
/// Mean separated fraction required by the sampling suite: `1/2 - 0.1`.
pub const SAMPLING_FLOOR: f64 = 0.4;

pub const SUITES: [&str; 12] = [
    "mwis-oracle",
    "tree-alpha",
    "assemble-bound",
    "power-separator",
    "layered-invariants",
    "esd-mutations",
    "esd-cores",
    "pullback",
    "patterns",
    "bounds-table",
    "disjoint-bundle",
    "sampling",
];

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub seed: Option<u64>,
    pub ok: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    /// Suite-level figure such as a mean, when the suite has one.
    pub metric: Option<f64>,
    /// Conditions on the whole suite (runtime, mean) beyond the cases.
    pub suite_checks: Vec<CaseResult>,
    pub ok: bool,
    pub elapsed_ms: u128,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn summary(&self) -> String {
        let extra = self.metric.map(|m| format!(", metric {m:.4}")).unwrap_or_default();
        format!("{}: {}/{} pass{extra}", self.suite, self.passed, self.passed + self.failed)
    }

    /// The report without timings, for byte-stable output.
    pub fn stable(&self) -> SuiteReport {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        for check in r.suite_checks.iter_mut().filter(|c| c.id == "runtime") {
            check.detail.clear();
        }
        r
    }
}

struct Collector {
    cases: Vec<CaseResult>,
    suite_checks: Vec<CaseResult>,
    metric: Option<f64>,
}

impl Collector {
    fn new() -> Self {
        Collector { cases: Vec::new(), suite_checks: Vec::new(), metric: None }
    }

    fn case(&mut self, id: impl Into<String>, seed: Option<u64>, result: Result<(), String>) {
        let (ok, detail) = match result {
            Ok(()) => (true, String::new()),
            Err(e) => (false, e),
        };
        self.cases.push(CaseResult { id: id.into(), seed, ok, detail });
    }

    fn check(&mut self, id: &str, ok: bool, detail: String) {
        self.suite_checks.push(CaseResult { id: id.into(), seed: None, ok, detail });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

/// Runs a suite by name; `None` for an unknown name.
pub fn run_suite(name: &str, seed: u64) -> Option<SuiteReport> {
    let start = Instant::now();
    let mut c = Collector::new();
    match name {
        "mwis-oracle" => mwis_oracle(&mut c, seed),
        "tree-alpha" => tree_alpha(&mut c),
        "assemble-bound" => assemble_bound(&mut c, seed),
        "power-separator" => power(&mut c, seed),
        "layered-invariants" => layered(&mut c, seed),
        "esd-mutations" => esd_mutations(&mut c),
        "esd-cores" => esd_cores(&mut c, seed),
        "pullback" => pullback(&mut c, seed),
        "patterns" => patterns(&mut c, seed),
        "bounds-table" => bounds_table(&mut c),
        "disjoint-bundle" => disjoint(&mut c, seed),
        "sampling" => sampling(&mut c, seed),
        _ => return None,
    }
    let elapsed_ms = start.elapsed().as_millis();
    match name {
        "mwis-oracle" => c.check("runtime", elapsed_ms < MWIS_BUDGET_MS, format!("{elapsed_ms} ms, limit {MWIS_BUDGET_MS}")),
        "sampling" => c.check("runtime", elapsed_ms < SAMPLING_BUDGET_MS, format!("{elapsed_ms} ms, limit {SAMPLING_BUDGET_MS}")),
        _ => {}
    }
    let passed = c.cases.iter().filter(|r| r.ok).count();
    let failed = c.cases.len() - passed;
    let ok = failed == 0 && !c.cases.is_empty() && c.suite_checks.iter().all(|r| r.ok);
    Some(SuiteReport {
        suite: name.to_string(),
        seed,
        passed,
        failed,
        metric: c.metric,
        suite_checks: c.suite_checks,
        ok,
        elapsed_ms,
        cases: c.cases,
    })
}

fn mwis_oracle(c: &mut Collector, seed: u64) {
    for i in 0..300u64 {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(i);
        let mut rng = generate::rng(s);
        let n = rng.gen_range(4..=14);
        let p = [0.2, 0.4, 0.6][i as usize % 3];
        let result = (|| {
            let g = generate::gnp(n, p, s).map_err(|e| e.to_string())?;
            let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0..=100) as f64).collect();
            let inst = MwisInstance::new(g.clone(), weights).map_err(|e| e.to_string())?;
            // Alternate between an assembled decomposition and a single bag.
            let td = if i % 2 == 0 {
                assemble_td(&g, &TreewidthBagOracle, &half_power(1), n.max(1)).map_err(|e| e.to_string())?.0
            } else {
                TreeDecomposition::single(g.all())
            };
            let a = mwis_td(&inst, &td).map_err(|e| e.to_string())?;
            let b = mwis_brute(&inst).map_err(|e| e.to_string())?;
            ensure(a.value == b.value, || format!("td {} vs brute {}", a.value, b.value))
        })();
        c.case(format!("mwis n={n} p={p}"), Some(s), result);
    }
}

fn tree_alpha(c: &mut Collector) {
    for n in 1..=7 {
        for (idx, g) in oracle::connected_chordal_graphs(n).iter().enumerate() {
            let result = (|| {
                let ours = tree_alpha_exact(g).map_err(|e| e.to_string())?;
                let reference = oracle::tree_alpha_by_orderings(g);
                ensure(ours == 1 && reference == 1 && is_chordal(g), || format!("got {ours}, reference {reference}"))
            })();
            c.case(format!("chordal n={n} #{idx}"), None, result);
        }
    }
    for k in 4..=9 {
        let g = generate::cycle(k).expect("k ≥ 3");
        let result = (|| {
            let ours = tree_alpha_exact(&g).map_err(|e| e.to_string())?;
            let reference = oracle::tree_alpha_by_orderings(&g);
            ensure(ours == 2 && reference == 2, || format!("got {ours}, reference {reference}"))
        })();
        c.case(format!("C{k}"), None, result);
    }
}

fn assemble_bound(c: &mut Collector, seed: u64) {
    for i in 0..100u64 {
        let s = seed.wrapping_mul(7919).wrapping_add(i);
        let result = (|| {
            let (g, oracle, d): (Graph, &dyn SeparatorOracle, usize) = if i % 2 == 0 {
                (generate::random_chordal(8 + (i as usize % 10), s).map_err(|e| e.to_string())?, &CliqueSeparatorOracle, 1)
            } else {
                let g = generate::connected_gnp(8 + (i as usize % 7), 0.3, s).map_err(|e| e.to_string())?;
                let (tw, _) = treealpha_core::separators::exact_treewidth(&g).map_err(|e| e.to_string())?;
                (g, &TreewidthBagOracle, tw + 1)
            };
            let (td, rep) = assemble_td(&g, oracle, &half_power(1), d).map_err(|e| e.to_string())?;
            ensure(td.validate(&g).ok, || "decomposition does not validate".into())?;
            let stats = td.stats(&g).map_err(|e| e.to_string())?;
            ensure(stats.independence_number <= 5 * d && rep.max_oracle_alpha <= d, || {
                format!("independence {} with d = {d}", stats.independence_number)
            })
        })();
        c.case(format!("assemble #{i}"), Some(s), result);
    }
}

/// Trees are 2-breakable; cycles and trees with one extra edge are
/// 3-breakable. The exhaustive small-core search plays the oracle.
fn breakable_graph(i: u64, k: usize, s: u64) -> Graph {
    let n = 8 + (i as usize % 9);
    let tree = generate::random_tree(n, s).expect("n ≥ 1");
    if k == 2 {
        return tree;
    }
    match i % 3 {
        0 => tree,
        1 => generate::cycle(n).expect("n ≥ 3"),
        _ => {
            let mut rng = generate::rng(s ^ 0x5eed);
            let mut edges: Vec<(usize, usize)> = tree.edges().collect();
            loop {
                let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if u != v && !tree.has_edge(u, v) {
                    edges.push((u, v));
                    break;
                }
            }
            Graph::from_edges(n, edges).expect("simple")
        }
    }
}

fn power(c: &mut Collector, seed: u64) {
    for i in 0..100u64 {
        let s = seed.wrapping_mul(104_729).wrapping_add(i);
        let k = 2 + (i as usize / 3) % 2;
        let level = 1 + (i % 3) as u32;
        let g = breakable_graph(i, k, s);
        let w = random_weights(g.n(), s);
        let result = (|| {
            let cert = power_separator(&g, &w, level, &MinCoreOracle { k }).map_err(|e| e.to_string())?;
            let bound = (1usize << (level + 1)) * (k - 1);
            ensure(cert.core.len() < bound, || format!("core {} not below {bound}", cert.core.len()))?;
            ensure(cert.separator == closed_nbhd(&g, &cert.core), || "separator is not N[core]".into())?;
            ensure(check_balanced(&g, &w, &cert.separator, &half_power(level)).ok, || "not balanced".into())
        })();
        c.case(format!("power i={level} k={k} n={}", g.n()), Some(s), result);
    }
}

fn random_weights(n: usize, seed: u64) -> WeightFn {
    let mut rng = generate::rng(seed ^ 0xabcd);
    let raw: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=10)).collect();
    let total: u64 = raw.iter().sum();
    WeightFn::unchecked(raw.iter().map(|&x| q(x as i64, total as i64)).collect(), WeightMode::Exact)
}

/// Toy constants chosen so the invariant's hypotheses hold:
/// `d = k·2^{λk}` and `T = d`, with `k = 2`, `λ = 1`.
pub fn layered_toy_overrides() -> LayeredOverrides {
    LayeredOverrides { d_alg: Some(8), t_alg: Some(8), m: None, f: None }
}

fn layered(c: &mut Collector, seed: u64) {
    for i in 0..50u64 {
        let s = seed.wrapping_mul(15_485_863).wrapping_add(i);
        let n = 24 + (i as usize % 13);
        let g = generate::random_tree(n, s).expect("n ≥ 1");
        let w = if i % 2 == 0 { WeightFn::uniform(n) } else { random_weights(n, s) };
        let inner = MinCoreOracle { k: 2 };
        let oracle = BoostingOracle { inner: &inner, params: BoostParams { t: 2, ..BoostParams::default() } };
        let params = LayeredParams { eps: q(1, 4), lambda: 1, gamma: 3, t: 2, overrides: layered_toy_overrides() };
        let result = (|| {
            let out = layered_run(&g, &w, &oracle, &params).map_err(|e| e.to_string())?;
            let p = &out.properties;
            ensure(p.boosted.len() == out.m && out.iterations.len() == out.m, || "missing reports".into())?;
            ensure(p.layer_bound_ok, || {
                let bad: Vec<String> = out
                    .iterations
                    .iter()
                    .flat_map(|it| it.layers.iter().filter(|l| !l.within_bound).map(move |l| format!("j={} i={}", it.j, l.i)))
                    .collect();
                format!("layer bound fails at {}", bad.join(", "))
            })?;
            ensure(p.boosted.iter().all(|&b| b), || "a separator is not boosted".into())
        })();
        c.case(format!("layered n={n}"), Some(s), result);
    }
}

fn esd_mutations(c: &mut Collector) {
    for (name, esd) in fixtures::hand_built() {
        c.case(format!("{name}: valid"), None, ensure(validate_esd(&esd).ok, || "fixture does not validate".into()));
        let ms = fixtures::mutations(&esd);
        c.case(format!("{name}: mutation count"), None, ensure(ms.len() >= 7, || format!("{} mutations", ms.len())));
        for m in ms {
            let v = validate_esd(&m.esd);
            let got = v.conditions();
            c.case(
                format!("{name}: {}", m.name),
                None,
                ensure(!v.ok && got == vec![m.target], || format!("expected {}, got {:?}", m.target, got)),
            );
        }
    }
}

fn esd_cores(c: &mut Collector, seed: u64) {
    let mut all: Vec<(String, treealpha_core::esd::Esd)> =
        fixtures::hand_built().into_iter().map(|(n, e)| (n.to_string(), e)).collect();
    for i in 0..30u64 {
        let s = seed.wrapping_add(i);
        if let Ok(e) = fixtures::random_strip_esd(3 + (i as usize % 6), s) {
            all.push((format!("random strip seed {s}"), e));
        }
    }
    for (name, esd) in all {
        if !(validate_esd(&esd).ok && is_faithful(&esd).faithful) {
            continue;
        }
        let result = (|| {
            for ac in atoms_and_boundaries(&esd).map_err(|e| e.to_string())? {
                ensure(ac.core.len() <= 3, || format!("core of size {}", ac.core.len()))?;
                ensure(ac.boundary.is_subset(&closed_nbhd(&esd.host, &ac.core)), || "boundary outside N[core]".into())?;
            }
            Ok(())
        })();
        c.case(format!("cores: {name}"), None, result);
    }
    for i in 0..50u64 {
        let s = seed.wrapping_add(i);
        let t = fixtures::three_paths_instance(s);
        let [a, b, p] = &t.paths;
        let result = three_paths_check(&t.esd.host, &t.esd.z, &t.esd, [a, b, p])
            .map_err(|e| e.to_string())
            .and_then(|v| ensure(v.ok, || "every atom meets all three paths".into()));
        c.case("three paths", Some(s), result);
    }
}

fn pullback(c: &mut Collector, seed: u64) {
    let mut all: Vec<treealpha_core::esd::Esd> = fixtures::hand_built().into_iter().map(|(_, e)| e).collect();
    all.extend((0..30u64).filter_map(|i| fixtures::random_strip_esd(3 + (i as usize % 6), seed.wrapping_add(i)).ok()));
    for (i, esd) in all.iter().enumerate() {
        for r in 0..4u64 {
            let s = seed.wrapping_mul(31).wrapping_add(r * 100 + i as u64);
            let w = random_weights(esd.host.n(), s);
            match pullback_separator(&esd.host, &w, esd, &[]) {
                // Only fixtures whose atoms all weigh at most 1/2 qualify.
                Err(EsdError::HeavyAtom { .. }) => {}
                Err(e) => c.case(format!("pullback fixture {i}"), Some(s), Err(e.to_string())),
                Ok(pb) => {
                    let result = ensure(check_balanced(&esd.host, &w, &pb.x, &half_power(1)).ok, || "X not balanced".into())
                        .and_then(|_| {
                            ensure(pb.y.len() <= 3 * pb.x_prime.len(), || {
                                format!("|Y| = {} above 3|X'| = {}", pb.y.len(), 3 * pb.x_prime.len())
                            })
                        });
                    c.case(format!("pullback fixture {i}"), Some(s), result);
                }
            }
        }
    }
    let f = fixtures::with_outside_components();
    let mut values = vec![q(1, 10); 7];
    values.extend(vec![q(3, 40); 4]);
    let w = WeightFn::unchecked(values, WeightMode::Exact);
    let result = pullback_separator(&f.graph, &w, &f.esd, &f.outside)
        .map_err(|e| e.to_string())
        .and_then(|pb| ensure(pb.balance_x.ok && pb.y.len() <= 3 * pb.x_prime.len(), || "outside fixture fails".into()));
    c.case("pullback with outside components", None, result);
}

fn patterns(c: &mut Collector, seed: u64) {
    let specs: Vec<PatternSpec> = (1..=3).flat_map(|t| [PatternSpec::Sttt { t }, PatternSpec::Ktt { t }]).collect();
    for i in 0..500u64 {
        let s = seed.wrapping_mul(2_147_483_647).wrapping_add(i);
        let n = 6 + (i as usize % 7);
        let p = [0.2, 0.35, 0.5][i as usize % 3];
        let result = (|| {
            let g = generate::gnp(n, p, s).map_err(|e| e.to_string())?;
            for spec in &specs {
                let h = spec.graph();
                if h.n() > n {
                    continue;
                }
                let fast = find_pattern(&g, spec).is_some();
                let generic = contains_induced(&g, &h).map_err(|e| e.to_string())?.is_some();
                ensure(fast == generic, || format!("{spec:?}: specialised {fast}, generic {generic}"))?;
            }
            Ok(())
        })();
        c.case(format!("patterns n={n} p={p}"), Some(s), result);
    }
}

fn bounds_table(c: &mut Collector) {
    // Examples printed with the constants.
    let base = BoundsInputs { t: 1, k: 2, gamma: 2, lambda: 1, c: 2, s: 3, ..Default::default() };
    let result = bounds(&base).map_err(|e| e.to_string()).and_then(|b| {
        ensure(*b.c_i(b.inputs.s as usize) == Magnitude::from_u64(2), || "c_s is not C".into())?;
        ensure(*b.f(0) == Magnitude::from_u64(1), || "f(0) is not t".into())?;
        ensure(b.neighbourhood_bound == Magnitude::from_u64(1_099_511_627_776), || format!("T = {}", b.neighbourhood_bound))
    });
    c.case("printed values", None, result);
    for k in 1..=4u64 {
        for lambda in 1..=4u64 {
            let inputs = BoundsInputs { k, lambda, ..base.clone() };
            let result = bounds(&inputs).map_err(|e| e.to_string()).and_then(|b| {
                let want = Magnitude::from_u64(k << (lambda * k));
                ensure(b.d_alg == want, || format!("d_alg = {}", b.d_alg))
            });
            c.case(format!("d_alg k={k} λ={lambda}"), None, result);
        }
    }
    for gamma in 2..=5u64 {
        for cc in 2..=5u64 {
            for s in 1..=4u64 {
                let inputs = BoundsInputs { gamma, c: cc, s, ..base.clone() };
                let result = bounds(&inputs).map_err(|e| e.to_string()).and_then(|b| {
                    ensure(*b.c_i(s as usize) == Magnitude::from_u64(cc), || "c_s is not C".into())?;
                    for i in 2..=s as usize {
                        // c_{i-1}/4 ≥ (8c_i)^{γ-1}, i.e. c_{i-1} ≥ 4·(8c_i)^{γ-1}.
                        let lhs = b.c_i(i - 1).clone();
                        let rhs = Magnitude::from_u64(4).mul(&Magnitude::from_u64(8).mul(b.c_i(i)).pow(&Magnitude::from_u64(gamma - 1)));
                        let (Magnitude::Exact(l), Magnitude::Exact(r)) = (&lhs, &rhs) else {
                            return Err(format!("c_{} is not exact", i - 1));
                        };
                        ensure(l >= r, || format!("c_{} = {l} below {r}", i - 1))?;
                    }
                    Ok(())
                });
                c.case(format!("c-sequence γ={gamma} C={cc} s={s}"), None, result);
            }
        }
    }
}

fn disjoint(c: &mut Collector, seed: u64) {
    for i in 0..20u64 {
        let s = seed.wrapping_mul(6_700_417).wrapping_add(i);
        let inst = spaced_cycle_instance(s);
        let result = disjoint_separators(&inst.graph, &inst.weights, &inst.params, &inst.oracle())
            .map_err(|e| e.to_string())
            .and_then(|rep| match rep.outcome {
                DisjointOutcome::Bundle(b) => {
                    let t = inst.params.t;
                    ensure(b.pairwise_anticomplete, || "not pairwise anticomplete".into())?;
                    ensure(b.small_cores, || "a core is not below d".into())?;
                    ensure(b.balanced.iter().all(|&x| x), || "a neighbourhood is not balanced in D".into())?;
                    ensure(b.max_membership as u64 <= t, || format!("a vertex of D lies in {} sets", b.max_membership))
                }
                DisjointOutcome::Balanced { .. } => Err("the bundle alternative did not trigger".into()),
            });
        c.case(format!("spaced cycle n={}", inst.graph.n()), Some(s), result);
    }
}

/// Path length, spacing and number of separators for the sampling suite.
pub const SAMPLING_PATH: (usize, usize, usize) = (400, 25, 8);
pub const SAMPLING_MU: usize = 3;

fn sampling(c: &mut Collector, seed: u64) {
    let (n, spacing, count) = SAMPLING_PATH;
    let (g, seps) = spaced_path_separators(n, spacing, count);
    let w = WeightFn::uniform(n);
    let mut sum = 0.0;
    let mut runs = 0;
    for i in 0..100u64 {
        let s = seed.wrapping_mul(1_000_000_007).wrapping_add(i);
        let result = sample_witnesses(&g, &g.all(), &w, SAMPLING_MU, s, &seps).map(|r| {
            sum += r.fraction;
            runs += 1;
        });
        c.case("sample", Some(s), result.map_err(|e| e.to_string()));
    }
    let mean = if runs == 0 { 0.0 } else { sum / runs as f64 };
    c.metric = Some(mean);
    c.check("mean separated fraction", mean >= SAMPLING_FLOOR, format!("{mean:.4} against {SAMPLING_FLOOR}"));
}
