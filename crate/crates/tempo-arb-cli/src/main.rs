//! Batch front end for the tempo-arb toolkit.
//!
//! Exit codes are the machine contract:
//!
//! - 0: success / "yes"
//! - 1: a valid negative answer (not time-respecting, infeasible,
//!   unreachable, nothing found)
//! - 2: input error (unreadable file, parse failure, invalid instance)
//! - 3: enumeration budget exceeded
//!
//! Plain output is stable line-oriented text; `--json` switches every
//! command to a single JSON envelope on stdout. `TEMPO_ARB_BUDGET`
//! overrides the exhaustive-search budget, `--budget` overrides both.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tempo_arb::digraph::{Arborescence, TemporalDigraph, ValidationError};
use tempo_arb::free_root;
use tempo_arb::hardness::{self, ArcRole, HardnessInstance, LabelVariant, VertexCoverInstance};
use tempo_arb::io;
use tempo_arb::minimal::minimal_arborescence;
use tempo_arb::oracle::{self, OracleError};
use tempo_arb::{corpus, ReconfSequence, ReconfStep};

const EXIT_YES: i32 = 0;
const EXIT_NO: i32 = 1;
const EXIT_INPUT: i32 = 2;
const EXIT_BUDGET: i32 = 3;

#[derive(Parser)]
#[command(
    name = "tempo-arb",
    version,
    about = "Time-respecting arborescences: validation, construction, reconfiguration, hard instances"
)]
struct Cli {
    /// Emit a JSON envelope instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file describes a time-respecting arborescence of a digraph.
    Validate { digraph: PathBuf, arborescence: PathBuf },
    /// Compute a minimal time-respecting arborescence for a root.
    Minimal {
        digraph: PathBuf,
        #[arg(long)]
        root: usize,
    },
    /// Build a swap sequence between two arborescences (shortest when the
    /// roots agree), or just decide reachability with --verify-only.
    Reconfigure {
        digraph: PathBuf,
        from: PathBuf,
        to: PathBuf,
        /// Decide reachability only; print no sequence.
        #[arg(long)]
        verify_only: bool,
        /// Include every intermediate arborescence (implies JSON output).
        #[arg(long)]
        verbose: bool,
    },
    /// Exact shortest sequence by exhaustive search (small instances only).
    ShortestExact {
        digraph: PathBuf,
        from: PathBuf,
        to: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Generate a hard shortest-reconfiguration instance from an
    /// undirected graph and a cover bound.
    GenHard {
        graph: PathBuf,
        k: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
        variant: VariantArg,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// List every time-respecting arborescence and the components of the
    /// swap graph; optionally in DOT form.
    Enumerate {
        digraph: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Search for a digraph with two arborescences that cannot be
    /// reconfigured into each other.
    SearchNoInstance {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 20000)]
        attempts: usize,
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        /// Write digraph.txt, t1.arb, t2.arb of the found instance here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Standard,
    ThreeLabel,
    Perturbed,
}

impl From<VariantArg> for LabelVariant {
    fn from(v: VariantArg) -> LabelVariant {
        match v {
            VariantArg::Standard => LabelVariant::Standard,
            VariantArg::ThreeLabel => LabelVariant::ThreeLabel,
            VariantArg::Perturbed => LabelVariant::Perturbed,
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn main() {
    let cli = Cli::parse();
    let json = cli.json;
    let code = match run(cli.command, json) {
        Ok(code) => code,
        Err(failure) => {
            let status = if failure.code == EXIT_BUDGET { "budget-exceeded" } else { "error" };
            if json {
                println!("{}", json!({ "status": status, "message": failure.message }));
            } else {
                eprintln!("{}: {}", status, failure.message);
            }
            failure.code
        }
    };
    std::process::exit(code);
}

fn run(command: Command, json: bool) -> Result<i32, Failure> {
    match command {
        Command::Validate { digraph, arborescence } => cmd_validate(&digraph, &arborescence, json),
        Command::Minimal { digraph, root } => cmd_minimal(&digraph, root, json),
        Command::Reconfigure { digraph, from, to, verify_only, verbose } => {
            cmd_reconfigure(&digraph, &from, &to, verify_only, verbose, json)
        }
        Command::ShortestExact { digraph, from, to, budget } => {
            cmd_shortest_exact(&digraph, &from, &to, resolve_budget(budget), json)
        }
        Command::GenHard { graph, k, variant, out_dir } => {
            cmd_gen_hard(&graph, k, variant.into(), &out_dir, json)
        }
        Command::Enumerate { digraph, dot, budget } => {
            cmd_enumerate(&digraph, dot, resolve_budget(budget), json)
        }
        Command::SearchNoInstance { seed, attempts, max_vertices, out_dir } => {
            cmd_search_no_instance(seed, attempts, max_vertices, out_dir.as_deref(), json)
        }
    }
}

fn resolve_budget(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var("TEMPO_ARB_BUDGET").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(oracle::DEFAULT_BUDGET)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| fail(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))
}

fn load_digraph(path: &Path) -> Result<TemporalDigraph, Failure> {
    io::parse_digraph(&read_file(path)?)
        .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load_arb_file(path: &Path) -> Result<io::ArbFile, Failure> {
    io::parse_arborescence(&read_file(path)?)
        .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

/// Binds an arborescence file to the digraph, treating every defect as an
/// input error. Used by the commands whose contract assumes valid inputs.
fn load_valid_arborescence(
    d: &TemporalDigraph,
    path: &Path,
) -> Result<Arborescence, Failure> {
    let file = load_arb_file(path)?;
    let t = io::assemble_arborescence(d, &file)
        .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    d.check_time_respecting(&t)
        .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    Ok(t)
}

fn sequence_json(seq: &ReconfSequence) -> Value {
    Value::Array(
        seq.steps
            .iter()
            .map(|s| json!({ "remove": s.remove, "add": s.add }))
            .collect(),
    )
}

fn arborescence_json(t: &Arborescence) -> Value {
    json!({ "root": t.root(), "arcs": t.sorted_arc_ids() })
}

fn print_sequence(steps: &[ReconfStep], claim: &str) {
    print!("{}", io::write_sequence(steps, Some(claim)));
}

fn cmd_validate(digraph: &Path, arborescence: &Path, json: bool) -> Result<i32, Failure> {
    let d = load_digraph(digraph)?;
    let file = load_arb_file(arborescence)?;

    let assembled = match io::assemble_arborescence(&d, &file) {
        Ok(t) => Ok(t),
        // ids that refer to nothing are input errors, not negative answers
        Err(e @ (ValidationError::ArcOutOfRange(_) | ValidationError::VertexOutOfRange(_))) => {
            return Err(fail(EXIT_INPUT, format!("{}: {e}", arborescence.display())))
        }
        Err(e) => Err(e),
    };

    let (arb_detail, tr_detail) = match &assembled {
        Ok(t) => (None, d.check_time_respecting(t).err().map(|e| e.to_string())),
        Err(e) => (Some(e.to_string()), None),
    };
    let ok = arb_detail.is_none() && tr_detail.is_none();

    if json {
        let check = |detail: &Option<String>, ran: bool| -> Value {
            if !ran {
                Value::Null
            } else {
                json!({ "ok": detail.is_none(), "detail": detail })
            }
        };
        println!(
            "{}",
            json!({
                "command": "validate",
                "status": if ok { "ok" } else { "no" },
                "arborescence": check(&arb_detail, true),
                "time_respecting": check(&tr_detail, assembled.is_ok()),
            })
        );
    } else {
        match &arb_detail {
            None => println!("arborescence ok"),
            Some(detail) => println!("arborescence no: {detail}"),
        }
        if assembled.is_ok() {
            match &tr_detail {
                None => println!("time-respecting ok"),
                Some(detail) => println!("time-respecting no: {detail}"),
            }
        }
    }
    Ok(if ok { EXIT_YES } else { EXIT_NO })
}

fn cmd_minimal(digraph: &Path, root: usize, json: bool) -> Result<i32, Failure> {
    let d = load_digraph(digraph)?;
    if root >= d.vertex_count() {
        return Err(fail(EXIT_INPUT, format!("root {root} out of range")));
    }
    match minimal_arborescence(&d, root) {
        Some(result) => {
            if json {
                let arrivals: Vec<Value> = result
                    .d_prime
                    .iter()
                    .map(|(v, label)| json!([v, label.to_string()]))
                    .collect();
                println!(
                    "{}",
                    json!({
                        "command": "minimal",
                        "status": "ok",
                        "tree": arborescence_json(&result.tree),
                        "arrivals": arrivals,
                        "selection_order": result.selection_order,
                    })
                );
            } else {
                print!("{}", io::write_arborescence(&result.tree));
                for (v, label) in &result.d_prime {
                    println!("# d {v} {label}");
                }
            }
            Ok(EXIT_YES)
        }
        None => {
            if json {
                println!("{}", json!({ "command": "minimal", "status": "no", "reason": "infeasible" }));
            } else {
                println!("infeasible");
            }
            Ok(EXIT_NO)
        }
    }
}

fn cmd_reconfigure(
    digraph: &Path,
    from: &Path,
    to: &Path,
    verify_only: bool,
    verbose: bool,
    json: bool,
) -> Result<i32, Failure> {
    let d = load_digraph(digraph)?;
    let t1 = load_valid_arborescence(&d, from)?;
    let t2 = load_valid_arborescence(&d, to)?;

    if verify_only {
        let yes = free_root::reachable(&d, &t1, &t2)
            .expect("inputs were validated on load");
        if json {
            println!(
                "{}",
                json!({
                    "command": "reconfigure",
                    "status": if yes { "ok" } else { "no" },
                    "reachable": yes,
                })
            );
        } else {
            println!("{}", if yes { "reachable" } else { "unreachable" });
        }
        return Ok(if yes { EXIT_YES } else { EXIT_NO });
    }

    let same_root = t1.root() == t2.root();
    let sequence = free_root::construct_sequence(&d, &t1, &t2)
        .expect("inputs were validated on load");
    match sequence {
        Some(seq) => {
            // same-root sequences are shortest; across roots only validity
            // is promised
            let claim = if same_root { "optimal" } else { "valid" };
            if json || verbose {
                let mut envelope = json!({
                    "command": "reconfigure",
                    "status": "ok",
                    "claim": claim,
                    "length": seq.len(),
                    "steps": sequence_json(&seq),
                });
                if verbose {
                    let states: Vec<Value> = seq
                        .intermediates(&d)
                        .expect("constructed sequences replay")
                        .iter()
                        .map(arborescence_json)
                        .collect();
                    envelope["intermediates"] = Value::Array(states);
                }
                println!("{envelope}");
            } else {
                print_sequence(&seq.steps, claim);
            }
            Ok(EXIT_YES)
        }
        None => {
            if json {
                println!("{}", json!({ "command": "reconfigure", "status": "no", "reason": "unreachable" }));
            } else {
                println!("unreachable");
            }
            Ok(EXIT_NO)
        }
    }
}

fn cmd_shortest_exact(
    digraph: &Path,
    from: &Path,
    to: &Path,
    budget: u64,
    json: bool,
) -> Result<i32, Failure> {
    let d = load_digraph(digraph)?;
    let t1 = load_valid_arborescence(&d, from)?;
    let t2 = load_valid_arborescence(&d, to)?;
    match oracle::bfs_shortest(&d, &t1, &t2, budget) {
        Ok(Some(seq)) => {
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "shortest-exact",
                        "status": "ok",
                        "length": seq.len(),
                        "steps": sequence_json(&seq),
                    })
                );
            } else {
                print_sequence(&seq.steps, "optimal");
            }
            Ok(EXIT_YES)
        }
        Ok(None) => {
            if json {
                println!("{}", json!({ "command": "shortest-exact", "status": "no", "reason": "unreachable" }));
            } else {
                println!("unreachable");
            }
            Ok(EXIT_NO)
        }
        Err(e @ OracleError::BudgetExceeded { .. }) => Err(fail(EXIT_BUDGET, e.to_string())),
        Err(e) => Err(fail(EXIT_INPUT, e.to_string())),
    }
}

fn role_json(inst: &HardnessInstance, id: usize) -> Value {
    let label = inst.digraph.arc(id).label.to_string();
    match inst.roles.arc_role[id] {
        ArcRole::RootToEdge { root, edge } => {
            json!({ "id": id, "role": "root-to-edge", "root": root, "edge": edge, "label": label })
        }
        ArcRole::RootLink { from, to } => {
            json!({ "id": id, "role": "root-link", "from": from, "to": to, "label": label })
        }
        ArcRole::VertexLow { vertex } => {
            json!({ "id": id, "role": "vertex-low", "vertex": vertex, "label": label })
        }
        ArcRole::VertexToEdge { vertex, edge } => {
            json!({ "id": id, "role": "vertex-to-edge", "vertex": vertex, "edge": edge, "label": label })
        }
        ArcRole::VertexHigh { vertex } => {
            json!({ "id": id, "role": "vertex-high", "vertex": vertex, "label": label })
        }
    }
}

fn cmd_gen_hard(
    graph: &Path,
    k: usize,
    variant: LabelVariant,
    out_dir: &Path,
    json: bool,
) -> Result<i32, Failure> {
    let file = io::parse_undirected_graph(&read_file(graph)?)
        .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", graph.display())))?;
    let vc = VertexCoverInstance::new(file.n, file.edges, k)
        .map_err(|e| fail(EXIT_INPUT, e.to_string()))?;
    let inst = hardness::reduce_vertex_cover(&vc, variant);

    fs::create_dir_all(out_dir)
        .map_err(|e| fail(EXIT_INPUT, format!("cannot create {}: {e}", out_dir.display())))?;
    let write = |name: &str, contents: String| -> Result<PathBuf, Failure> {
        let path = out_dir.join(name);
        fs::write(&path, contents)
            .map_err(|e| fail(EXIT_INPUT, format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    };

    let sidecar = json!({
        "ell": inst.ell,
        "k": vc.k,
        "variant": match variant {
            LabelVariant::Standard => "standard",
            LabelVariant::ThreeLabel => "three-label",
            LabelVariant::Perturbed => "perturbed",
        },
        "vertices": inst.digraph.vertex_count(),
        "arcs": inst.digraph.arc_count(),
        "r1": inst.roles.r1,
        "r2": inst.roles.r2,
        "vertex_node": inst.roles.vertex_node,
        "edge_node": inst.roles.edge_node,
        "arc_roles": (0..inst.digraph.arc_count()).map(|id| role_json(&inst, id)).collect::<Vec<_>>(),
    });
    let files = vec![
        write("digraph.txt", io::write_digraph(&inst.digraph))?,
        write("t1.arb", io::write_arborescence(&inst.t1))?,
        write("t2.arb", io::write_arborescence(&inst.t2))?,
        write("instance.json", format!("{sidecar:#}\n"))?,
    ];

    if json {
        println!(
            "{}",
            json!({
                "command": "gen-hard",
                "status": "ok",
                "ell": inst.ell,
                "vertices": inst.digraph.vertex_count(),
                "arcs": inst.digraph.arc_count(),
                "files": files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            })
        );
    } else {
        println!("vertices {}", inst.digraph.vertex_count());
        println!("arcs {}", inst.digraph.arc_count());
        println!("ell {}", inst.ell);
        for path in &files {
            println!("wrote {}", path.display());
        }
    }
    Ok(EXIT_YES)
}

fn cmd_enumerate(digraph: &Path, dot: bool, budget: u64, json: bool) -> Result<i32, Failure> {
    let d = load_digraph(digraph)?;
    let graph = match oracle::build_reconfiguration_graph(&d, budget) {
        Ok(g) => g,
        Err(e @ OracleError::BudgetExceeded { .. }) => return Err(fail(EXIT_BUDGET, e.to_string())),
        Err(e) => return Err(fail(EXIT_INPUT, e.to_string())),
    };
    let components = graph.components();
    let component_count = components.iter().copied().max().map_or(0, |c| c + 1);

    if dot {
        print!("{}", graph.to_dot());
        return Ok(EXIT_YES);
    }
    if json {
        println!(
            "{}",
            json!({
                "command": "enumerate",
                "status": "ok",
                "count": graph.node_count(),
                "edges": graph.edge_count(),
                "arborescences": graph.nodes().iter().map(arborescence_json).collect::<Vec<_>>(),
                "components": components,
            })
        );
    } else {
        println!("count {}", graph.node_count());
        for (i, t) in graph.nodes().iter().enumerate() {
            let ids: Vec<String> = t.sorted_arc_ids().iter().map(|a| a.to_string()).collect();
            println!("arb {i} root {} arcs {}", t.root(), ids.join(" "));
        }
        println!("components {component_count}");
        for c in 0..component_count {
            let members: Vec<String> = components
                .iter()
                .enumerate()
                .filter(|(_, &x)| x == c)
                .map(|(i, _)| i.to_string())
                .collect();
            println!("component {c} size {} members {}", members.len(), members.join(" "));
        }
    }
    Ok(EXIT_YES)
}

fn cmd_search_no_instance(
    seed: u64,
    attempts: usize,
    max_vertices: usize,
    out_dir: Option<&Path>,
    json: bool,
) -> Result<i32, Failure> {
    match corpus::search_no_instance(seed, attempts, max_vertices) {
        Some(found) => {
            let mut files = Vec::new();
            if let Some(dir) = out_dir {
                fs::create_dir_all(dir).map_err(|e| {
                    fail(EXIT_INPUT, format!("cannot create {}: {e}", dir.display()))
                })?;
                for (name, contents) in [
                    ("digraph.txt", io::write_digraph(&found.digraph)),
                    ("t1.arb", io::write_arborescence(&found.t1)),
                    ("t2.arb", io::write_arborescence(&found.t2)),
                ] {
                    let path = dir.join(name);
                    fs::write(&path, contents).map_err(|e| {
                        fail(EXIT_INPUT, format!("cannot write {}: {e}", path.display()))
                    })?;
                    files.push(path);
                }
            }
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "search-no-instance",
                        "status": "ok",
                        "attempt": found.attempt,
                        "vertices": found.digraph.vertex_count(),
                        "arcs": found.digraph.arc_count(),
                        "t1": arborescence_json(&found.t1),
                        "t2": arborescence_json(&found.t2),
                        "files": files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
                    })
                );
            } else {
                println!("found at attempt {}", found.attempt);
                println!(
                    "vertices {} arcs {} roots {} {}",
                    found.digraph.vertex_count(),
                    found.digraph.arc_count(),
                    found.t1.root(),
                    found.t2.root()
                );
                for path in &files {
                    println!("wrote {}", path.display());
                }
            }
            Ok(EXIT_YES)
        }
        None => {
            if json {
                println!(
                    "{}",
                    json!({ "command": "search-no-instance", "status": "no", "attempts": attempts })
                );
            } else {
                println!("not found after {attempts} attempts");
            }
            Ok(EXIT_NO)
        }
    }
}
