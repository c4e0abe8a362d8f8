use std::io::Read as _;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};
use thiserror::Error;

use treealpha_core::boosting::{boosted_separator, check_boosted, BoostParams, BoostingOracle, PowerBoostedOracle};
use treealpha_core::caps::Caps;
use treealpha_core::esd::{is_faithful, validate_esd, Esd};
use treealpha_core::graph::generate::{self, GraphKind};
use treealpha_core::graph::io::{emit_graph, parse_graph, Format};
use treealpha_core::graph::{
    alpha_exact, closed_nbhd, format_rational, is_induced_path, is_stable, Graph, Rational, VertexSet, WeightFn,
};
use treealpha_core::layered::{
    disjoint_separators, layered_run, spaced_cycle_instance, ConstantsMode, DisjointOutcome, DisjointParams,
    LayeredOverrides, LayeredParams,
};
use treealpha_core::patterns::{find_pattern, verify_embedding, PatternSpec};
use treealpha_core::separators::{
    check_balanced, exact_treewidth, half_power, min_core_separator, path_separator, power_separator,
    treewidth_separator, treewidth_td, BreakOracle, MinCoreOracle,
};
use treealpha_core::treedecomp::{
    assemble_td, mwis, CliqueSeparatorOracle, CoreOracle, MwisInstance, MwisMethod, SeparatorOracle,
    TreeDecomposition, TreewidthBagOracle,
};

use crate::args::*;
use crate::bench;
use crate::report::{Assertion, Inputs, RunReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Input(String),
}

/// What a command produced: the report, plus the plain-text payload for
/// commands whose natural output is not a report (graph encodings).
pub struct Outcome {
    pub report: RunReport,
    pub text: Option<String>,
}

struct Ctx {
    inputs: Inputs,
    mode: ConstantsMode,
    assertions: Vec<Assertion>,
}

impl Ctx {
    fn new() -> Self {
        Ctx { inputs: Inputs::default(), mode: ConstantsMode::PaperDefault, assertions: Vec::new() }
    }

    fn assert(&mut self, anchor: &str, ok: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion::new(anchor, ok, detail));
    }

    fn read(&mut self, label: &str, path: &Path) -> Result<String, CliError> {
        let io = |source| CliError::Io { path: path.display().to_string(), source };
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(io)?;
            s
        } else {
            std::fs::read_to_string(path).map_err(io)?
        };
        self.inputs.add(label, text.as_bytes());
        Ok(text)
    }

    fn graph(&mut self, input: &GraphIn) -> Result<Graph, CliError> {
        self.graph_at(&input.graph, input.graph_format)
    }

    fn graph_at(&mut self, path: &Path, format: Option<FormatArg>) -> Result<Graph, CliError> {
        let text = self.read("graph", path)?;
        let format = format.map(to_format).unwrap_or_else(|| Format::from_path(&path.to_string_lossy()));
        parse_graph(&text, format).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    fn weights(&mut self, path: Option<&Path>, n: usize) -> Result<WeightFn, CliError> {
        match path {
            None => Ok(WeightFn::uniform(n)),
            Some(p) => {
                let text = self.read("weights", p)?;
                WeightFn::from_json(&text, n).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
            }
        }
    }

    fn weighted(&mut self, input: &WeightedIn) -> Result<(Graph, WeightFn), CliError> {
        let g = self.graph(&input.graph)?;
        let w = self.weights(input.weights.as_deref(), g.n())?;
        Ok((g, w))
    }

    fn param(&mut self, text: String) {
        self.inputs.add("params", text.as_bytes());
    }
}

fn to_format(f: FormatArg) -> Format {
    match f {
        FormatArg::Graph6 => Format::Graph6,
        FormatArg::Edgelist => Format::Edgelist,
    }
}

fn q(s: &Rational) -> String {
    format_rational(s)
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report values serialize")
}

/// Push the overrides into the form the layered run takes.
fn layered_overrides(o: &OverrideArgs) -> LayeredOverrides {
    LayeredOverrides { d_alg: o.d_alg, t_alg: o.t_alg, m: o.m, f: o.f }
}

/// Failures of the algorithms themselves (caps, oracle failures, broken
/// invariants) become a failed report rather than a usage error.
type Computed = Result<(String, Value, Option<String>), String>;

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let mut ctx = Ctx::new();
    let (name, computed) = match &cli.command {
        Command::Gen(a) => ("gen", gen(&mut ctx, a, cli.seed)?),
        Command::Convert(a) => ("convert", convert(&mut ctx, a)?),
        Command::Check(c) => check(&mut ctx, c)?,
        Command::Separate(c) => separate(&mut ctx, c)?,
        Command::Boost(a) => ("boost", boost(&mut ctx, a)?),
        Command::Layered(a) => ("layered", layered(&mut ctx, a)?),
        Command::Disjoint(a) => ("disjoint", disjoint(&mut ctx, a, cli.seed)?),
        Command::Decompose(a) => ("decompose", decompose(&mut ctx, a)?),
        Command::Mwis(a) => ("mwis", mwis_cmd(&mut ctx, a)?),
        Command::Bench(a) => ("bench", bench_cmd(&mut ctx, a, cli.seed)?),
    };
    let (outputs, text) = match computed {
        Ok((_, outputs, text)) => (outputs, text),
        Err(e) => {
            ctx.assert("computation-completed", false, e.clone());
            (json!({ "error": e }), None)
        }
    };
    let failed = ctx.assertions.iter().filter(|a| !a.ok).count();
    let passed = ctx.assertions.len() - failed;
    let report = RunReport {
        command: name.to_string(),
        inputs_digest: ctx.inputs.digest(),
        seed: cli.seed,
        mode: ctx.mode,
        caps: Caps::global().clone(),
        outputs,
        assertions: ctx.assertions,
        passed,
        failed,
        ok: failed == 0,
        wall_clock_ms: start.elapsed().as_millis(),
    };
    Ok(Outcome { report, text })
}

fn ok(name: &str, outputs: Value) -> Computed {
    Ok((name.to_string(), outputs, None))
}

fn gen(ctx: &mut Ctx, a: &GenArgs, seed: u64) -> Result<Computed, CliError> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("--kind {:?} needs --{flag}", a.kind)));
    let kind = match a.kind {
        Kind::Path => GraphKind::Path { k: need(a.k, "k")? },
        Kind::Cycle => GraphKind::Cycle { k: need(a.k, "k")? },
        Kind::Complete => GraphKind::Complete { k: need(a.k, "k")? },
        Kind::CompleteBipartite => GraphKind::CompleteBipartite { a: need(a.a, "a")?, b: need(a.b, "b")? },
        Kind::STtt => GraphKind::Sttt { t: need(a.t, "t")? },
        Kind::KGamma2 => GraphKind::KGamma2 { gamma: need(a.gamma, "gamma")? },
        Kind::Wall => GraphKind::Wall { t: need(a.t, "t")? },
        Kind::Gnp | Kind::ConnectedGnp => {
            let n = need(a.n, "n")?;
            let p = a.p.ok_or_else(|| CliError::Usage("random graphs need --p".into()))?;
            if a.kind == Kind::Gnp {
                GraphKind::Gnp { n, p }
            } else {
                GraphKind::ConnectedGnp { n, p }
            }
        }
        Kind::Grid => GraphKind::Grid { rows: need(a.rows, "rows")?, cols: need(a.cols, "cols")? },
        Kind::Petersen => GraphKind::Petersen,
        Kind::RandomTree => GraphKind::RandomTree { n: need(a.n, "n")? },
        Kind::RandomChordal => GraphKind::RandomChordal { n: need(a.n, "n")? },
        Kind::RandomCograph => GraphKind::RandomCograph { n: need(a.n, "n")?, connected: a.connected },
    };
    let spec = serde_json::to_string(&kind).expect("kind serializes");
    ctx.param(format!("{spec} seed={seed}"));
    let g = generate::generate(&kind, seed).map_err(|e| CliError::Usage(e.to_string()))?;
    let encoded = with_newline(emit_graph(&g, to_format(a.format)));
    let outputs = json!({ "kind": kind, "n": g.n(), "m": g.edge_count(), "encoding": encoded.trim_end() });
    Ok(Ok(("gen".into(), outputs, Some(encoded))))
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn convert(ctx: &mut Ctx, a: &ConvertArgs) -> Result<Computed, CliError> {
    let g = ctx.graph(&a.input)?;
    let encoded = with_newline(emit_graph(&g, to_format(a.to)));
    let outputs = json!({ "n": g.n(), "m": g.edge_count(), "encoding": encoded.trim_end() });
    Ok(Ok(("convert".into(), outputs, Some(encoded))))
}

fn check(ctx: &mut Ctx, c: &CheckCommand) -> Result<(&'static str, Computed), CliError> {
    match c {
        CheckCommand::Balanced { input, core, set, c } => {
            let (g, w) = ctx.weighted(input)?;
            let x = match (core, set) {
                (Some(core), _) => closed_nbhd(&g, core),
                (None, Some(set)) => set.clone(),
                (None, None) => return Err(CliError::Usage("check balanced needs --core or --set".into())),
            };
            in_range(&g, &x)?;
            ctx.param(format!("x={x} c={}", q(c)));
            let rep = check_balanced(&g, &w, &x, c);
            ctx.assert("balanced-separator", rep.ok, format!("{} heavy components at c = {}", rep.offending.len(), q(c)));
            Ok(("check balanced", ok("check balanced", json!({ "separator": x, "report": rep }))))
        }
        CheckCommand::Boosted { input, s, boost_set, eps } => {
            let (g, w) = ctx.weighted(input)?;
            in_range(&g, s)?;
            in_range(&g, boost_set)?;
            ctx.param(format!("s={s} c={boost_set} eps={}", q(eps)));
            let v = check_boosted(&g, &w, s, boost_set, eps);
            ctx.assert("boosted-separator", v.ok, String::new());
            Ok(("check boosted", ok("check boosted", to_value(&v))))
        }
        CheckCommand::Td { input, td } => {
            let g = ctx.graph(input)?;
            let text = ctx.read("td", td)?;
            let td: TreeDecomposition =
                serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", td.display())))?;
            let verdict = td.validate(&g);
            ctx.assert("tree-decomposition-valid", verdict.ok, format!("{} violations", verdict.violations.len()));
            let stats = td.stats(&g);
            let stats = match &stats {
                Ok(s) => to_value(s),
                Err(e) => json!({ "error": e.to_string() }),
            };
            Ok(("check td", ok("check td", json!({ "verdict": verdict, "stats": stats }))))
        }
        CheckCommand::Esd { esd } => {
            let text = ctx.read("esd", esd)?;
            let esd = Esd::from_json(&text).map_err(|e| CliError::Input(e.to_string()))?;
            let verdict = validate_esd(&esd);
            let ids: Vec<&str> = verdict.conditions().iter().map(|c| c.id()).collect();
            ctx.assert("esd-conditions", verdict.ok, ids.join(","));
            let faithful = verdict.ok.then(|| is_faithful(&esd));
            Ok(("check esd", ok("check esd", json!({ "verdict": verdict, "faithfulness": faithful }))))
        }
        CheckCommand::Pattern { input, pattern, t, expect } => {
            let g = ctx.graph(input)?;
            let spec = match pattern {
                PatternArg::STtt => PatternSpec::Sttt { t: *t },
                PatternArg::Ktt => PatternSpec::Ktt { t: *t },
                PatternArg::KGamma2 => PatternSpec::KGamma2 { gamma: *t },
            };
            ctx.param(serde_json::to_string(&spec).expect("spec serializes"));
            let found = find_pattern(&g, &spec);
            if let Some(emb) = &found {
                ctx.assert("embedding-verified", verify_embedding(&g, &spec.graph(), emb), String::new());
            }
            if let Some(expect) = expect {
                let want = *expect == Expect::Present;
                ctx.assert("pattern-expectation", found.is_some() == want, format!("expected {expect:?}"));
            }
            Ok(("check pattern", ok("check pattern", json!({ "pattern": spec, "found": found.is_some(), "embedding": found }))))
        }
    }
}

fn in_range(g: &Graph, x: &VertexSet) -> Result<(), CliError> {
    match x.iter().find(|&&v| v >= g.n()) {
        Some(v) => Err(CliError::Input(format!("vertex {v} out of range for {} vertices", g.n()))),
        None => Ok(()),
    }
}

fn separate(ctx: &mut Ctx, c: &SeparateCommand) -> Result<(&'static str, Computed), CliError> {
    let half = half_power(1);
    match c {
        SeparateCommand::Path { input } => {
            let (g, w) = ctx.weighted(input)?;
            let computed = path_separator(&g, &w).map_err(|e| e.to_string()).map(|path| {
                let sep = closed_nbhd(&g, &path.iter().copied().collect());
                let rep = check_balanced(&g, &w, &sep, &half);
                ctx.assert("induced-path", is_induced_path(&g, &path), String::new());
                ctx.assert("balanced-separator", rep.ok, "c = 1/2");
                ("separate path".to_string(), json!({ "path": path, "separator": sep, "report": rep }), None)
            });
            Ok(("separate path", computed))
        }
        SeparateCommand::Mincore { input, k, c } => {
            let (g, w) = ctx.weighted(input)?;
            ctx.param(format!("k={k} c={}", q(c)));
            let computed = min_core_separator(&g, &w, *k, c).map_err(|e| e.to_string()).map(|cert| {
                ctx.assert("core-found", cert.is_some(), format!("no core below {k}"));
                if let Some(cert) = &cert {
                    ctx.assert("balanced-separator", cert.validate(&g, &w), format!("c = {}", q(c)));
                }
                ("separate mincore".to_string(), json!({ "certificate": cert }), None)
            });
            Ok(("separate mincore", computed))
        }
        SeparateCommand::Power { input, k, level } => {
            let (g, w) = ctx.weighted(input)?;
            ctx.param(format!("k={k} level={level}"));
            let oracle = MinCoreOracle { k: *k };
            let computed = power_separator(&g, &w, *level, &oracle).map_err(|e| e.to_string()).map(|cert| {
                let bound = (1usize << (level + 1)) * k.saturating_sub(1);
                ctx.assert("balanced-separator", check_balanced(&g, &w, &cert.separator, &half_power(*level)).ok, format!("c = 1/2^{level}"));
                ctx.assert("power-core-bound", cert.core.len() < bound, format!("|core| = {} < {bound}", cert.core.len()));
                ("separate power".to_string(), json!({ "certificate": cert, "core_bound": bound }), None)
            });
            Ok(("separate power", computed))
        }
        SeparateCommand::Treewidth { input } => {
            let (g, w) = ctx.weighted(input)?;
            let computed = treewidth_separator(&g, &w).map_err(|e| e.to_string()).map(|sep| {
                let rep = check_balanced(&g, &w, &sep, &half);
                ctx.assert("balanced-separator", rep.ok, "c = 1/2");
                let alpha = alpha_exact(&g, &sep).ok();
                ("separate treewidth".to_string(), json!({ "separator": sep, "alpha": alpha, "report": rep }), None)
            });
            Ok(("separate treewidth", computed))
        }
    }
}

fn boost(ctx: &mut Ctx, a: &BoostArgs) -> Result<Computed, CliError> {
    let (g, w) = ctx.weighted(&a.input)?;
    ctx.param(format!("eps={} k={} t={} {:?}", q(&a.eps), a.k, a.t, a.overrides));
    if a.overrides.any() {
        ctx.mode = ConstantsMode::Override;
    }
    let params = BoostParams { t: a.t, beta_threshold: a.overrides.beta_threshold.clone(), layered: layered_overrides(&a.overrides) };
    let oracle = MinCoreOracle { k: a.k };
    Ok(boosted_separator(&g, &w, &a.eps, &oracle, &params).map_err(|e| e.to_string()).map(|run| {
        ctx.assert("boosted-separator", run.verdict.ok, String::new());
        ("boost".to_string(), to_value(&run), None)
    }))
}

fn layered(ctx: &mut Ctx, a: &LayeredArgs) -> Result<Computed, CliError> {
    let (g, w) = ctx.weighted(&a.input)?;
    ctx.param(format!(
        "eps={} k={} lambda={} gamma={} t={} oracle={:?} level={} {:?}",
        q(&a.eps),
        a.k,
        a.lambda,
        a.gamma,
        a.t,
        a.oracle,
        a.level,
        a.overrides
    ));
    let inner = MinCoreOracle { k: a.k };
    let params = LayeredParams {
        eps: a.eps.clone(),
        lambda: a.lambda,
        gamma: a.gamma,
        t: a.t,
        overrides: layered_overrides(&a.overrides),
    };
    let result = match a.oracle {
        LayeredOracle::Boosting => {
            let boost = BoostParams { t: a.t, beta_threshold: a.overrides.beta_threshold.clone(), layered: LayeredOverrides::default() };
            layered_run(&g, &w, &BoostingOracle { inner: &inner, params: boost }, &params)
        }
        LayeredOracle::Power => layered_run(&g, &w, &PowerBoostedOracle { inner: &inner, level: a.level }, &params),
    };
    if a.overrides.any() {
        ctx.mode = ConstantsMode::Override;
    }
    Ok(result.map_err(|e| e.to_string()).map(|out| {
        ctx.mode = out.mode;
        let p = &out.properties;
        ctx.assert("boosted-in-whole-graph", p.boosted.iter().all(|&b| b), format!("{} rounds", p.boosted.len()));
        ctx.assert("layer-stability-bound", p.layer_bound_ok, String::new());
        ctx.assert(
            "heavy-component-membership",
            p.heavy_membership_ok,
            format!("{} against {:.4}", p.heavy_membership, p.membership_bound),
        );
        ctx.assert("core-membership", p.core_membership_ok, String::new());
        ("layered".to_string(), out.to_json(), None)
    }))
}

fn disjoint(ctx: &mut Ctx, a: &DisjointArgs, seed: u64) -> Result<Computed, CliError> {
    let scheduled;
    let small_core;
    let (g, w, params, oracle): (Graph, WeightFn, DisjointParams, &dyn BreakOracle) = if a.spaced_cycle {
        ctx.param(format!("spaced-cycle seed={seed}"));
        let inst = spaced_cycle_instance(seed);
        scheduled = inst.oracle();
        (inst.graph, inst.weights, inst.params, &scheduled)
    } else {
        let path = a.graph.as_deref().ok_or_else(|| CliError::Usage("disjoint needs --graph or --spaced-cycle".into()))?;
        let g = ctx.graph_at(path, a.graph_format)?;
        let w = ctx.weights(a.weights.as_deref(), g.n())?;
        ctx.param(format!("eps={} k={} t={} n_sets={:?} lambda={:?} {:?}", q(&a.eps), a.k, a.t, a.n_sets, a.lambda, a.overrides));
        let params = DisjointParams {
            t: a.t,
            eps: a.eps.clone(),
            n_sets: a.n_sets,
            lambda: a.lambda,
            boost: BoostParams { t: a.t, beta_threshold: a.overrides.beta_threshold.clone(), layered: LayeredOverrides::default() },
            layered: layered_overrides(&a.overrides),
        };
        small_core = MinCoreOracle { k: a.k };
        (g, w, params, &small_core)
    };
    if !params.layered.is_empty() || params.boost.beta_threshold.is_some() {
        ctx.mode = ConstantsMode::Override;
    }
    Ok(disjoint_separators(&g, &w, &params, oracle).map_err(|e| e.to_string()).map(|rep| {
        match &rep.outcome {
            DisjointOutcome::Balanced { x, .. } => {
                ctx.assert("balanced-separator", check_balanced(&g, &w, x, &half_power(1)).ok, "c = 1/2");
            }
            DisjointOutcome::Bundle(b) => {
                ctx.assert("cores-pairwise-anticomplete", b.pairwise_anticomplete, String::new());
                ctx.assert("cores-below-d", b.small_cores, format!("d = {}", rep.d));
                ctx.assert("neighbourhoods-balanced-in-d", b.balanced.iter().all(|&x| x), format!("eps = {}", q(&params.eps)));
                ctx.assert("membership-at-most-t", b.max_membership as u64 <= params.t, format!("{} against t = {}", b.max_membership, params.t));
            }
        }
        let mut v = to_value(&rep);
        v["graph"] = json!({ "n": g.n(), "m": g.edge_count() });
        ("disjoint".to_string(), v, None)
    }))
}

fn decompose(ctx: &mut Ctx, a: &DecomposeArgs) -> Result<Computed, CliError> {
    let g = ctx.graph(&a.input)?;
    ctx.param(format!("oracle={:?} c={} d={:?} k={}", a.oracle, q(&a.c), a.d, a.k));
    let mincore = MinCoreOracle { k: a.k };
    let core_oracle = CoreOracle(&mincore);
    let (oracle, d): (&dyn SeparatorOracle, Result<usize, String>) = match a.oracle {
        DecomposeOracle::Treewidth => (
            &TreewidthBagOracle,
            match a.d {
                Some(d) => Ok(d),
                None => exact_treewidth(&g).map(|(tw, _)| tw + 1).map_err(|e| e.to_string()),
            },
        ),
        DecomposeOracle::Clique => (&CliqueSeparatorOracle, Ok(a.d.unwrap_or(1))),
        DecomposeOracle::Mincore => {
            (&core_oracle, a.d.ok_or_else(|| "the mincore oracle needs --d".to_string()))
        }
    };
    let d = match d {
        Ok(d) => d.max(1),
        Err(e) if a.oracle == DecomposeOracle::Mincore => return Err(CliError::Usage(e)),
        Err(e) => return Ok(Err(e)),
    };
    Ok(assemble_td(&g, oracle, &a.c, d).map_err(|e| e.to_string()).map(|(td, rep)| {
        let verdict = td.validate(&g);
        ctx.assert("tree-decomposition-valid", verdict.ok, String::new());
        let within = Rational::from_integer(rep.independence_number.into()) <= rep.bound;
        ctx.assert(
            "bag-independence-bound",
            within,
            format!("{} against {}", rep.independence_number, q(&rep.bound)),
        );
        ("decompose".to_string(), json!({ "d": d, "report": rep, "td": td }), None)
    }))
}

fn mwis_weights(text: &str, n: usize) -> Result<Vec<f64>, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let num = |v: &Value| v.as_f64().ok_or_else(|| format!("weight {v} is not a number"));
    match value {
        Value::Array(items) => items.iter().map(num).collect(),
        Value::Object(map) => {
            let mut out = vec![0.0; n];
            for (k, v) in &map {
                let i: usize = k.trim().parse().map_err(|_| format!("bad vertex key {k:?}"))?;
                if i >= n {
                    return Err(format!("vertex {i} out of range for {n} vertices"));
                }
                out[i] = num(v)?;
            }
            Ok(out)
        }
        _ => Err("expected a JSON array or object".into()),
    }
}

fn mwis_cmd(ctx: &mut Ctx, a: &MwisArgs) -> Result<Computed, CliError> {
    let g = ctx.graph(&a.input)?;
    let weights = match &a.weights {
        None => vec![1.0; g.n()],
        Some(p) => {
            let text = ctx.read("weights", p)?;
            mwis_weights(&text, g.n()).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?
        }
    };
    let inst = MwisInstance::new(g.clone(), weights).map_err(|e| CliError::Input(e.to_string()))?;
    let method = match a.method {
        MwisMethodArg::Brute => MwisMethod::Brute,
        MwisMethodArg::Td => match &a.td {
            Some(p) => {
                let text = ctx.read("td", p)?;
                MwisMethod::Td(serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?)
            }
            None => match treewidth_td(&g) {
                Ok((_, td)) => MwisMethod::Td(td),
                Err(e) => return Ok(Err(e.to_string())),
            },
        },
    };
    ctx.param(format!("method={:?}", a.method));
    Ok(mwis(&inst, &method).map_err(|e| e.to_string()).map(|res| {
        let total: f64 = res.set.iter().map(|&v| inst.weights[v]).sum();
        ctx.assert("stable-set", is_stable(&g, &res.set), String::new());
        ctx.assert("value-matches-set", (total - res.value).abs() <= 1e-9 * total.abs().max(1.0), format!("{total} against {}", res.value));
        ("mwis".to_string(), json!({ "value": res.value, "set": res.set }), None)
    }))
}

fn bench_cmd(ctx: &mut Ctx, a: &BenchArgs, seed: u64) -> Result<Computed, CliError> {
    let names: Vec<&str> = if a.suite == "all" {
        bench::SUITES.to_vec()
    } else if bench::SUITES.contains(&a.suite.as_str()) {
        vec![a.suite.as_str()]
    } else {
        return Err(CliError::Usage(format!("unknown suite {:?}; known: all, {}", a.suite, bench::SUITES.join(", "))));
    };
    ctx.param(format!("suite={} seed={seed}", a.suite));
    let mut reports = Vec::new();
    let mut text = String::new();
    for name in names {
        let rep = bench::run_suite(name, seed).expect("suite name checked");
        ctx.assert(name, rep.ok, rep.summary());
        text += &rep.summary();
        text.push('\n');
        for case in rep.cases.iter().chain(&rep.suite_checks).filter(|c| !c.ok) {
            text += &format!("  failed {} (seed {:?}): {}\n", case.id, case.seed, case.detail);
        }
        reports.push(rep.stable());
    }
    Ok(Ok(("bench".into(), to_value(&reports), Some(text))))
}
