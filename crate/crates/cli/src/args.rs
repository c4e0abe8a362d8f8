use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use treealpha_core::graph::{parse_rational, Rational, VertexSet};

#[derive(Parser, Debug)]
#[command(name = "treealpha", version, about = "Tree independence number toolkit: separators, layered sets, decompositions")]
pub struct Cli {
    /// Print the full JSON report instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every random choice; recorded in the report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub caps: CapArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Size caps of the exhaustive routines. They are merged into
/// `TREEALPHA_CAP_OVERRIDE` before anything runs.
#[derive(Args, Debug, Default, Clone)]
pub struct CapArgs {
    #[arg(long = "cap-alpha", global = true, value_name = "N")]
    pub alpha: Option<u64>,
    #[arg(long = "cap-induced", global = true, value_name = "N")]
    pub induced: Option<u64>,
    #[arg(long = "cap-mincore", global = true, value_name = "N")]
    pub mincore: Option<u64>,
    #[arg(long = "cap-treewidth", global = true, value_name = "N")]
    pub treewidth: Option<u64>,
    #[arg(long = "cap-constricted", global = true, value_name = "N")]
    pub constricted: Option<u64>,
    #[arg(long = "cap-tree-alpha", global = true, value_name = "N")]
    pub tree_alpha: Option<u64>,
    #[arg(long = "cap-mwis", global = true, value_name = "N")]
    pub mwis: Option<u64>,
    #[arg(long = "cap-mwis-states", global = true, value_name = "N")]
    pub mwis_states: Option<u64>,
    #[arg(long = "cap-path-enum", global = true, value_name = "N")]
    pub path_enum: Option<u64>,
}

impl CapArgs {
    /// The override string, `name=value` pairs, empty when no flag is set.
    pub fn spec(&self) -> String {
        let pairs = [
            ("alpha", self.alpha),
            ("induced", self.induced),
            ("mincore", self.mincore),
            ("treewidth", self.treewidth),
            ("constricted", self.constricted),
            ("tree_alpha", self.tree_alpha),
            ("mwis", self.mwis),
            ("mwis_states", self.mwis_states),
            ("path_enum", self.path_enum),
        ];
        pairs.iter().filter_map(|(k, v)| v.map(|v| format!("{k}={v}"))).collect::<Vec<_>>().join(",")
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph from a named family.
    Gen(GenArgs),
    /// Re-encode a graph.
    Convert(ConvertArgs),
    /// Check a claimed object.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Construct a balanced separator.
    #[command(subcommand)]
    Separate(SeparateCommand),
    /// Boosted separator from a small-core oracle.
    Boost(BoostArgs),
    /// Run the layered sets algorithm.
    Layered(LayeredArgs),
    /// Many boosted separators with pairwise anticomplete cores.
    Disjoint(DisjointArgs),
    /// Assemble a tree decomposition from a separator oracle.
    Decompose(DecomposeArgs),
    /// Maximum weight independent set.
    Mwis(MwisArgs),
    /// Run the acceptance suites.
    Bench(BenchArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormatArg {
    Graph6,
    Edgelist,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Path,
    Cycle,
    Complete,
    CompleteBipartite,
    STtt,
    KGamma2,
    Wall,
    Gnp,
    ConnectedGnp,
    Grid,
    Petersen,
    RandomTree,
    RandomChordal,
    RandomCograph,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub gamma: Option<usize>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub connected: bool,
    #[arg(long, value_enum, default_value = "graph6")]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct GraphIn {
    /// Graph file (`.g6`/`.graph6` is graph6, anything else an edge list);
    /// `-` reads stdin.
    #[arg(long)]
    pub graph: PathBuf,
    /// Force the input format.
    #[arg(long = "graph-format", value_enum)]
    pub graph_format: Option<FormatArg>,
}

#[derive(Args, Debug)]
pub struct WeightedIn {
    #[command(flatten)]
    pub graph: GraphIn,
    /// JSON weight map `{"v": "p/q"}`; uniform when absent.
    #[arg(long)]
    pub weights: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    #[command(flatten)]
    pub input: GraphIn,
    #[arg(long, value_enum)]
    pub to: FormatArg,
}

pub fn parse_q(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("expected p/q or an integer, got {s:?}"))
}

pub fn parse_set(s: &str) -> Result<VertexSet, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|_| format!("bad vertex {p:?}")))
        .collect()
}

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    /// Is `X` (or `N[core]`) a `(w, c)`-balanced separator?
    Balanced {
        #[command(flatten)]
        input: WeightedIn,
        /// Check `N[core]`.
        #[arg(long, value_parser = parse_set, conflicts_with = "set")]
        core: Option<VertexSet>,
        /// Check this set itself.
        #[arg(long, value_parser = parse_set)]
        set: Option<VertexSet>,
        #[arg(long, value_parser = parse_q, default_value = "1/2")]
        c: Rational,
    },
    /// Is `(S, C)` a `(w, ε)`-boosted separator?
    Boosted {
        #[command(flatten)]
        input: WeightedIn,
        #[arg(long, value_parser = parse_set)]
        s: VertexSet,
        #[arg(long = "boost-set", value_parser = parse_set, default_value = "")]
        boost_set: VertexSet,
        #[arg(long, value_parser = parse_q)]
        eps: Rational,
    },
    /// Validate a tree decomposition given as `{nodes, edges, bags}`.
    Td {
        #[command(flatten)]
        input: GraphIn,
        #[arg(long)]
        td: PathBuf,
    },
    /// Validate an extended strip decomposition.
    Esd {
        #[arg(long)]
        esd: PathBuf,
    },
    /// Search for an induced forbidden pattern.
    Pattern {
        #[command(flatten)]
        input: GraphIn,
        #[arg(long, value_enum)]
        pattern: PatternArg,
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Assert the outcome.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternArg {
    STtt,
    Ktt,
    KGamma2,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Present,
    Absent,
}

#[derive(Subcommand, Debug)]
pub enum SeparateCommand {
    /// `N[P]` for an induced path `P`.
    Path {
        #[command(flatten)]
        input: WeightedIn,
    },
    /// Smallest core `X`, `|X| < k`, with `N[X]` balanced.
    Mincore {
        #[command(flatten)]
        input: WeightedIn,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, value_parser = parse_q, default_value = "1/2")]
        c: Rational,
    },
    /// `(w, 1/2^level)`-balanced `N[X]` built from repeated oracle calls.
    Power {
        #[command(flatten)]
        input: WeightedIn,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// A balanced bag of an optimal tree decomposition.
    Treewidth {
        #[command(flatten)]
        input: WeightedIn,
    },
}

/// Surrogates for the algorithm's constants; any one switches the run to
/// override mode.
#[derive(Args, Debug, Default, Clone)]
pub struct OverrideArgs {
    #[arg(long = "override-d-alg")]
    pub d_alg: Option<u64>,
    #[arg(long = "override-t-alg")]
    pub t_alg: Option<u64>,
    /// Number of rounds.
    #[arg(long = "override-m")]
    pub m: Option<usize>,
    /// Bound enforced on the boosting sets' stability number.
    #[arg(long = "override-f")]
    pub f: Option<u64>,
    /// Threshold on `β` inside the boosting construction.
    #[arg(long = "override-beta-threshold", value_parser = parse_q)]
    pub beta_threshold: Option<Rational>,
}

impl OverrideArgs {
    pub fn any(&self) -> bool {
        self.d_alg.is_some() || self.t_alg.is_some() || self.m.is_some() || self.f.is_some() || self.beta_threshold.is_some()
    }
}

#[derive(Args, Debug)]
pub struct BoostArgs {
    #[command(flatten)]
    pub input: WeightedIn,
    #[arg(long, value_parser = parse_q)]
    pub eps: Rational,
    /// Core bound of the small-core oracle.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub t: u64,
    #[command(flatten)]
    pub overrides: OverrideArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayeredOracle {
    /// The boosting construction over the small-core oracle.
    Boosting,
    /// Power separators over the small-core oracle, with an empty boosting set.
    Power,
}

#[derive(Args, Debug)]
pub struct LayeredArgs {
    #[command(flatten)]
    pub input: WeightedIn,
    #[arg(long, value_parser = parse_q)]
    pub eps: Rational,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub lambda: u64,
    #[arg(long, default_value_t = 2)]
    pub gamma: u64,
    #[arg(long, default_value_t = 1)]
    pub t: u64,
    #[arg(long, value_enum, default_value = "boosting")]
    pub oracle: LayeredOracle,
    /// Level of the power oracle.
    #[arg(long, default_value_t = 2)]
    pub level: u32,
    #[command(flatten)]
    pub overrides: OverrideArgs,
}

#[derive(Args, Debug)]
pub struct DisjointArgs {
    /// Run on the engineered spaced-cycle instance for `--seed` instead of a
    /// graph file.
    #[arg(long, conflicts_with_all = ["graph", "weights"])]
    pub spaced_cycle: bool,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long = "graph-format", value_enum)]
    pub graph_format: Option<FormatArg>,
    #[arg(long)]
    pub weights: Option<PathBuf>,
    #[arg(long, value_parser = parse_q, default_value = "1/4")]
    pub eps: Rational,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub t: u64,
    /// Number of anticomplete cores wanted.
    #[arg(long)]
    pub n_sets: Option<usize>,
    #[arg(long)]
    pub lambda: Option<u64>,
    #[command(flatten)]
    pub overrides: OverrideArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecomposeOracle {
    /// Bags of an optimal tree decomposition; `d` defaults to `tw + 1`.
    Treewidth,
    /// Clique separators of a chordal graph; `d = 1`.
    Clique,
    /// `N[X]` from the small-core oracle; `--d` is required.
    Mincore,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub input: GraphIn,
    #[arg(long, value_enum, default_value = "treewidth")]
    pub oracle: DecomposeOracle,
    #[arg(long, value_parser = parse_q, default_value = "1/2")]
    pub c: Rational,
    /// Bound on the oracle answers' stability number.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MwisMethodArg {
    Brute,
    /// Dynamic programming over `--td`, or over an optimal decomposition.
    Td,
}

#[derive(Args, Debug)]
pub struct MwisArgs {
    #[command(flatten)]
    pub input: GraphIn,
    /// JSON map `{"v": w}` or array of nonnegative numbers; all ones when
    /// absent.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "brute")]
    pub method: MwisMethodArg,
    #[arg(long)]
    pub td: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
}
