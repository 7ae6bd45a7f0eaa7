use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;

use clusternet::algebra::BasisCache;
use clusternet::analysis;
use clusternet::cluster::{build_cluster_graph, GraphCaps, ReconstructionMode};
use clusternet::dot::graph_to_dot;
use clusternet::error::Error;
use clusternet::grading::{check_homogeneous, find_positive_grading};
use clusternet::model::{parse_matrix_text, GraphFile, Model, ModelFile, TransitionLists};
use clusternet::oracle;
use clusternet::parse::render_state;
use clusternet::reactions::{elementary_reactions, partition_transitions};
use clusternet::testgen::{random_system, SystemConfig};
use clusternet::{GroebnerBasis, State};

#[derive(Parser)]
#[command(
    name = "clusternet",
    version,
    about = "Cluster graphs of integer transition systems",
    after_help = "Exit codes: 0 success (connected/equal/homogeneous where applicable),\n\
                  1 negative answer or verification mismatch, 2 usage or processing error.\n\
                  The default thread count honors RAYON_NUM_THREADS."
)]
struct Cli {
    /// Worker threads for basis precomputation and per-node probes.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for randomized self-tests (`verify --random`).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output style for query results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate elementary reactions from a balance matrix.
    #[command(subcommand)]
    Reactions(ReactionsCmd),
    /// Find or check positive gradings.
    #[command(subcommand)]
    Grading(GradingCmd),
    /// Same-cluster queries on states.
    #[command(subcommand)]
    Cluster(ClusterCmd),
    /// Build cluster graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Is the target cluster reachable from the source cluster?
    Connect(ConnectArgs),
    /// List all simple pathways between two clusters.
    Paths(PathsArgs),
    /// Arcs that every pathway between two clusters must use.
    Essential(EssentialArgs),
    /// Standard-monomial bound on reachable clusters of a state's degree.
    Bound(BoundArgs),
    /// Cross-check reconstruction against brute-force exploration.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum ReactionsCmd {
    /// Solve all reactant-multiset systems and write a model file.
    Gen(ReactionsGenArgs),
}

#[derive(Args)]
struct ReactionsGenArgs {
    /// Balance matrix: header line of species names, one row per line.
    #[arg(long)]
    matrix: PathBuf,
    /// Largest reactant multiset size.
    #[arg(long, default_value_t = 2)]
    max_reactants: u32,
    /// Output model file (JSON).
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Subcommand)]
enum GradingCmd {
    /// Report whether the model's transitions are homogeneous.
    Check {
        #[arg(long)]
        model: PathBuf,
    },
    /// Derive a positive grading from the model's balance matrix.
    Find {
        #[arg(long)]
        model: PathBuf,
    },
}

#[derive(Subcommand)]
enum ClusterCmd {
    /// Do two states sit in the same cluster? Exit 0 yes, 1 no.
    Eq {
        #[arg(long)]
        model: PathBuf,
        /// State expression; give exactly two.
        #[arg(long = "state", num_args = 1, action = clap::ArgAction::Append)]
        states: Vec<String>,
    },
    /// Canonical representative of a state's cluster.
    Repr {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        state: String,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Reconstruct the cluster graph reachable from initial states.
    Build(GraphBuildArgs),
}

#[derive(Args)]
struct GraphBuildArgs {
    #[arg(long)]
    model: PathBuf,
    /// Initial state expression; repeat for several.
    #[arg(long = "initial", num_args = 1, action = clap::ArgAction::Append, required = true)]
    initial: Vec<String>,
    /// Probe every cluster member instead of one witness per move.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long)]
    node_cap: Option<usize>,
    #[arg(long)]
    arc_cap: Option<usize>,
    /// Output graph file (JSON).
    #[arg(short, long)]
    output: PathBuf,
    /// Also write a DOT rendering here.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct ConnectArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
}

#[derive(Args)]
struct PathsArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
    /// Stop after this many paths (0 = unlimited); truncation is flagged.
    #[arg(long, default_value_t = 1000)]
    max_paths: usize,
}

#[derive(Args)]
struct EssentialArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    state: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "random")]
    model: Option<PathBuf>,
    #[arg(long, required_unless_present = "random")]
    initial: Option<String>,
    #[arg(long)]
    state_cap: Option<usize>,
    /// Verify this many seeded random systems instead of a model file.
    #[arg(long)]
    random: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            eprintln!(
                "{}",
                serde_json::json!({"kind": "usage", "error": e.to_string().lines().next().unwrap_or("usage error")})
            );
            return ExitCode::from(2);
        }
    };
    if let Some(n) = cli.threads {
        // ignore pool rebuild errors in tests re-entering main
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::json!({"kind": error_kind(&e), "error": e.to_string()})
            );
            ExitCode::from(2)
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "dimension",
        Error::Overflow => "overflow",
        Error::NonPositiveWeight => "order",
        Error::IndexOutOfRange { .. } => "index",
        Error::InvalidGrading(_) => "grading",
        Error::NoPositiveGrading => "no-positive-grading",
        Error::CapExceeded { .. } => "cap",
        Error::ZeroTransition => "zero-transition",
        Error::UnknownSpecies { .. } => "unknown-species",
        Error::Syntax { .. } => "syntax",
        Error::StateNotInGraph(_) => "state-not-in-graph",
        Error::NotConnected => "not-connected",
        Error::Contract(_) => "contract",
        Error::InvalidModel(_) => "model",
        Error::InvalidGraph(_) => "graph",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Reactions(ReactionsCmd::Gen(args)) => reactions_gen(args, cli.format),
        Command::Grading(cmd) => grading_cmd(cmd, cli.format),
        Command::Cluster(cmd) => cluster_cmd(cmd, cli.format),
        Command::Graph(GraphCmd::Build(args)) => graph_build(args, cli.format),
        Command::Connect(args) => connect(args, cli.format),
        Command::Paths(args) => paths(args, cli.format),
        Command::Essential(args) => essential(args, cli.format),
        Command::Bound(args) => bound(args, cli.format),
        Command::Verify(args) => verify(args, cli.seed),
    }
}

fn reactions_gen(args: &ReactionsGenArgs, format: Format) -> Result<u8, Error> {
    let text = std::fs::read_to_string(&args.matrix)?;
    let (species, balance) = parse_matrix_text(&text)?;
    let grading = find_positive_grading(&balance.rows)?;
    let caps = clusternet::model::Caps::default();
    let enumeration =
        elementary_reactions(&balance.rows, &grading, args.max_reactants, caps.fiber)?;
    let distinct = enumeration.distinct();
    let (reversible, irreversible) = partition_transitions(&distinct)?;

    let file = ModelFile {
        species,
        balance: Some(balance),
        transitions: Some(TransitionLists {
            reversible: reversible.clone(),
            irreversible: irreversible.clone(),
        }),
        grading: Some(grading.rows().to_vec()),
        caps: None,
    };
    file.save(&args.output)?;

    let systems = enumeration.system_count();
    let instances = enumeration.instance_count();
    match format {
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "systems": systems,
                "solution_instances": instances,
                "distinct_reactions": distinct.len(),
                "reversible": reversible.len(),
                "irreversible": irreversible.len(),
                "default_convention": "distinct",
            })
        ),
        Format::Csv => {
            println!("key,value");
            println!("systems,{systems}");
            println!("solution_instances,{instances}");
            println!("distinct_reactions,{}", distinct.len());
            println!("reversible,{}", reversible.len());
            println!("irreversible,{}", irreversible.len());
        }
        _ => {
            println!("systems: {systems}");
            println!("solution instances (per-system convention): {instances}");
            println!("distinct reactions (default convention): {}", distinct.len());
            println!("reversible: {}", reversible.len());
            println!("irreversible: {}", irreversible.len());
        }
    }
    Ok(0)
}

fn grading_cmd(cmd: &GradingCmd, format: Format) -> Result<u8, Error> {
    match cmd {
        GradingCmd::Check { model } => {
            let file = ModelFile::load(model)?;
            let grading = match &file.grading {
                Some(rows) => clusternet::Grading::new(rows.clone())?,
                None => match &file.balance {
                    Some(b) => find_positive_grading(&b.rows)?,
                    None => {
                        return Err(Error::InvalidModel(
                            "nothing to derive a grading from".into(),
                        ))
                    }
                },
            };
            let mut moves: Vec<Vec<i64>> = Vec::new();
            if let Some(t) = &file.transitions {
                moves.extend(t.reversible.iter().cloned());
                moves.extend(t.irreversible.iter().cloned());
            }
            let ok = check_homogeneous(&moves, &grading);
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({"homogeneous": ok, "moves": moves.len()})
                ),
                _ => println!("homogeneous: {ok} ({} moves)", moves.len()),
            }
            Ok(if ok { 0 } else { 1 })
        }
        GradingCmd::Find { model } => {
            let file = ModelFile::load(model)?;
            let balance = file.balance.as_ref().ok_or_else(|| {
                Error::InvalidModel("grading find needs a balance matrix".into())
            })?;
            let grading = find_positive_grading(&balance.rows)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({"grading": grading.positive_row()})
                ),
                _ => println!(
                    "{}",
                    grading
                        .positive_row()
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                ),
            }
            Ok(0)
        }
    }
}

fn cluster_cmd(cmd: &ClusterCmd, format: Format) -> Result<u8, Error> {
    match cmd {
        ClusterCmd::Eq { model, states } => {
            if states.len() != 2 {
                return Err(Error::InvalidModel(
                    "cluster eq needs exactly two --state expressions".into(),
                ));
            }
            let model = Model::load(model)?;
            let basis = model.base_basis()?;
            let a = model.parse_state(&states[0])?;
            let b = model.parse_state(&states[1])?;
            let eq = basis.is_connected(&a, &b)?;
            match format {
                Format::Json => println!("{}", serde_json::json!({"equal": eq})),
                _ => println!("same cluster: {eq}"),
            }
            Ok(if eq { 0 } else { 1 })
        }
        ClusterCmd::Repr { model, state } => {
            let model = Model::load(model)?;
            let basis = model.base_basis()?;
            let s = model.parse_state(state)?;
            let rep = basis.normal_form(&s)?;
            let expr = render_state(&rep, &model.species);
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({"representative": rep.entries(), "expression": expr})
                ),
                _ => println!("{expr}"),
            }
            Ok(0)
        }
    }
}

fn graph_build(args: &GraphBuildArgs, format: Format) -> Result<u8, Error> {
    let model = Model::load(&args.model)?;
    let mut caps = model.caps.graph_caps();
    if let Some(n) = args.node_cap {
        caps.nodes = n;
    }
    if let Some(a) = args.arc_cap {
        caps.arcs = a;
    }
    let initial: Vec<State> = args
        .initial
        .iter()
        .map(|e| model.parse_state(e))
        .collect::<Result<_, _>>()?;
    let cache = model.basis_cache()?;
    let mode = if args.exhaustive {
        ReconstructionMode::Exhaustive
    } else {
        ReconstructionMode::Direct
    };
    let graph = build_cluster_graph(&cache, &model.irreversible, &initial, mode, caps)?;
    let file = GraphFile::assemble(&model.species, &model.grading, cache.base(), &graph);
    file.save(&args.output)?;
    if let Some(dot_path) = &args.dot {
        std::fs::write(dot_path, graph_to_dot(&file))?;
    }
    match format {
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "nodes": graph.nodes().len(),
                "arcs": graph.arcs().len(),
                "basis_elements": cache.base().len(),
                "bases_computed": cache.basis_count(),
            })
        ),
        Format::Dot => print!("{}", graph_to_dot(&file)),
        _ => {
            println!("nodes: {}", graph.nodes().len());
            println!("arcs: {}", graph.arcs().len());
            println!("basis elements: {}", cache.base().len());
            println!("bases computed: {}", cache.basis_count());
        }
    }
    Ok(0)
}

struct LoadedGraph {
    file: GraphFile,
    graph: clusternet::ClusterGraph,
    basis: GroebnerBasis,
}

fn load_graph(path: &Path) -> Result<LoadedGraph, Error> {
    let file = GraphFile::load(path)?;
    let graph = file.cluster_graph()?;
    let basis = file.groebner()?;
    Ok(LoadedGraph { file, graph, basis })
}

fn connect(args: &ConnectArgs, format: Format) -> Result<u8, Error> {
    let LoadedGraph { file, graph, basis } = load_graph(&args.graph)?;
    let from = file.parse_state(&args.from)?;
    let to = file.parse_state(&args.to)?;
    let conn = analysis::connected(&graph, &from, &to, &basis)?;
    let steps: Vec<String> = conn
        .shortest_path
        .iter()
        .flatten()
        .map(|&i| file.arcs[i].reaction.clone())
        .collect();
    match format {
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "connected": conn.connected,
                "path_length": conn.shortest_path.as_ref().map(|p| p.len()),
                "reactions": steps,
            })
        ),
        Format::Csv => {
            println!("connected,path_length");
            println!(
                "{},{}",
                conn.connected,
                conn.shortest_path.as_ref().map(|p| p.len()).unwrap_or(0)
            );
        }
        _ => {
            println!("connected: {}", conn.connected);
            if let Some(p) = &conn.shortest_path {
                println!("shortest path: {} step(s)", p.len());
                for r in &steps {
                    println!("  {r}");
                }
            }
        }
    }
    Ok(if conn.connected { 0 } else { 1 })
}

fn paths(args: &PathsArgs, format: Format) -> Result<u8, Error> {
    let LoadedGraph { file, graph, basis } = load_graph(&args.graph)?;
    let from = file.parse_state(&args.from)?;
    let to = file.parse_state(&args.to)?;
    let result = analysis::enumerate_paths(&graph, &from, &to, &basis, args.max_paths)?;
    match format {
        Format::Json => {
            let paths: Vec<Vec<serde_json::Value>> = result
                .paths
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|&i| {
                            let a = &file.arcs[i];
                            serde_json::json!({
                                "from": file.nodes[a.from].expression,
                                "to": file.nodes[a.to].expression,
                                "reaction": a.reaction,
                                "label": a.label,
                            })
                        })
                        .collect()
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({
                    "connected": result.connected,
                    "count": result.paths.len(),
                    "truncated": result.truncated,
                    "paths": paths,
                })
            );
        }
        Format::Csv => {
            println!("path,step,from,to,reaction");
            for (pi, p) in result.paths.iter().enumerate() {
                for (si, &i) in p.iter().enumerate() {
                    let a = &file.arcs[i];
                    println!(
                        "{pi},{si},{},{},{}",
                        file.nodes[a.from].expression, file.nodes[a.to].expression, a.reaction
                    );
                }
            }
        }
        _ => {
            println!(
                "paths: {} (truncated: {})",
                result.paths.len(),
                result.truncated
            );
            for (pi, p) in result.paths.iter().enumerate() {
                if p.is_empty() {
                    println!("  {pi}: (already in the target cluster)");
                    continue;
                }
                let mut line = file.nodes[file.arcs[p[0]].from].expression.clone();
                for &i in p {
                    let a = &file.arcs[i];
                    line.push_str(&format!(" --[{}]--> {}", a.reaction, file.nodes[a.to].expression));
                }
                println!("  {pi}: {line}");
            }
        }
    }
    Ok(0)
}

fn essential(args: &EssentialArgs, format: Format) -> Result<u8, Error> {
    let LoadedGraph { file, graph, basis } = load_graph(&args.graph)?;
    let from = file.parse_state(&args.from)?;
    let to = file.parse_state(&args.to)?;
    let ess = analysis::essential_arcs(&graph, &from, &to, &basis)?;
    match format {
        Format::Json => {
            let list: Vec<serde_json::Value> = ess
                .iter()
                .map(|&(i, unique)| {
                    let a = &file.arcs[i];
                    serde_json::json!({
                        "from": file.nodes[a.from].expression,
                        "to": file.nodes[a.to].expression,
                        "reaction": a.reaction,
                        "label": a.label,
                        "unique_label": unique,
                    })
                })
                .collect();
            println!("{}", serde_json::json!({"essential": list}));
        }
        Format::Csv => {
            println!("from,to,reaction,unique_label");
            for &(i, unique) in &ess {
                let a = &file.arcs[i];
                println!(
                    "{},{},{},{unique}",
                    file.nodes[a.from].expression, file.nodes[a.to].expression, a.reaction
                );
            }
        }
        _ => {
            println!("essential arcs: {}", ess.len());
            for &(i, unique) in &ess {
                let a = &file.arcs[i];
                println!(
                    "  {} --[{}]--> {} (unique label: {unique})",
                    file.nodes[a.from].expression, a.reaction, file.nodes[a.to].expression
                );
            }
        }
    }
    Ok(0)
}

fn bound(args: &BoundArgs, format: Format) -> Result<u8, Error> {
    let model = Model::load(&args.model)?;
    let basis = model.base_basis()?;
    let s = model.parse_state(&args.state)?;
    let bound = analysis::cluster_count_bound(&basis, &model.grading, &s, model.caps.fiber)?;
    match format {
        Format::Json => println!("{}", serde_json::json!({"bound": bound})),
        _ => println!("cluster bound: {bound}"),
    }
    Ok(0)
}

fn verify(args: &VerifyArgs, seed: u64) -> Result<u8, Error> {
    if let Some(count) = args.random {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let cfg = SystemConfig::default();
        let mut failures = 0usize;
        for i in 0..count {
            let sys = random_system(&mut rng, &cfg)?;
            let ok = verify_system(
                &sys.reversible,
                &sys.directed,
                &sys.grading,
                &sys.initial,
                args.state_cap.unwrap_or(50_000),
                false,
            )?;
            if !ok {
                failures += 1;
                println!("system {i}: MISMATCH");
            }
        }
        println!("verified {count} random systems, {failures} mismatch(es)");
        return Ok(if failures == 0 { 0 } else { 1 });
    }

    let model = Model::load(args.model.as_ref().expect("clap guarantees --model"))?;
    let s = model.parse_state(args.initial.as_ref().expect("clap guarantees --initial"))?;
    let cap = args.state_cap.unwrap_or(model.caps.states);
    let ok = verify_system(&model.reversible, &model.irreversible, &model.grading, &s, cap, true)?;
    println!("verify: {}", if ok { "ok" } else { "MISMATCH" });
    Ok(if ok { 0 } else { 1 })
}

/// Explore explicitly, then require: normal-form grouping equals the
/// oracle cluster partition, and both reconstruction modes reproduce the
/// oracle cluster graph exactly.
fn verify_system(
    reversible: &[Vec<i64>],
    directed: &[Vec<i64>],
    grading: &clusternet::Grading,
    initial: &State,
    state_cap: usize,
    verbose: bool,
) -> Result<bool, Error> {
    let mut moves: Vec<oracle::OracleMove> = Vec::new();
    for u in reversible {
        moves.push(oracle::OracleMove::reversible_from(u)?);
    }
    for d in directed {
        moves.push(oracle::OracleMove::directed_from(d)?);
    }
    let explored = oracle::explore(&moves, std::slice::from_ref(initial), state_cap)?;
    if verbose {
        println!("explored states: {}", explored.states().len());
    }
    let cache = BasisCache::build(reversible, grading, directed)?;
    let basis = cache.base();

    // cluster partition vs normal forms
    let comps = oracle::clusters(&explored, &moves);
    let mut ok = true;
    let mut seen_reps: std::collections::BTreeSet<State> = std::collections::BTreeSet::new();
    for comp in &comps {
        let rep = basis.normal_form(&explored.states()[comp[0]])?;
        if !seen_reps.insert(rep.clone()) {
            println!("two oracle clusters share representative {rep}");
            ok = false;
        }
        for &m in comp {
            if basis.normal_form(&explored.states()[m])? != rep {
                println!("state {} disagrees with its cluster", explored.states()[m]);
                ok = false;
            }
        }
    }

    let oracle_graph = oracle::cluster_graph(&explored, &moves, basis)?;
    let caps = GraphCaps {
        nodes: state_cap,
        arcs: state_cap,
        fiber: state_cap,
    };
    let direct = build_cluster_graph(
        &cache,
        directed,
        std::slice::from_ref(initial),
        ReconstructionMode::Direct,
        caps,
    )?;
    match build_cluster_graph(
        &cache,
        directed,
        std::slice::from_ref(initial),
        ReconstructionMode::Exhaustive,
        caps,
    ) {
        Ok(exhaustive) => {
            if !exhaustive.same_shape(&oracle_graph) {
                println!("exhaustive reconstruction differs from the oracle graph");
                ok = false;
            }
        }
        Err(Error::CapExceeded { what: "fiber", .. }) => {
            if verbose {
                println!("fiber exceeds the state cap; exhaustive-mode check skipped");
            }
        }
        Err(e) => return Err(e),
    }
    if !direct.same_shape(&oracle_graph) {
        println!("default reconstruction differs from the oracle graph (single-witness caveat)");
        println!(
            "counterexample: {}",
            serde_json::json!({
                "grading": grading.rows(),
                "reversible": reversible,
                "directed": directed,
                "initial": initial.entries(),
                "direct": {"nodes": direct.nodes().len(), "arcs": direct.arcs().len()},
                "oracle": {"nodes": oracle_graph.nodes().len(), "arcs": oracle_graph.arcs().len()},
            })
        );
        ok = false;
    }
    Ok(ok)
}
