use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gaut_core::automaton::GraphAutomaton;
use gaut_core::color::{make_color_automaton, recognize, standard_generators};
use gaut_core::encoder::{encode_graph, parse_graph_input, GraphFormat};
use gaut_core::hypergraph::eval_graph;
use gaut_core::relation::{check_axioms, tsrel_dset, StateSet};
use gaut_core::term::parse_term;

#[derive(Parser)]
#[command(name = "gaut", version, about = "Graph automata: recognition, encoding and evaluation")]
struct Cli {
    /// Print nothing on stdout; report only through the exit code.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Semantics {
    Graph,
    Relation,
}

#[derive(Subcommand)]
enum Command {
    /// Decide k-colorability of a graph.
    Recognize {
        /// Graph file, or `-` for stdin.
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// Input format; guessed from the file extension when omitted.
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Include a coloring when the graph is accepted.
        #[arg(long)]
        witness: bool,
    },
    /// Print a term whose evaluation is the given graph.
    Encode {
        graph: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Evaluate a term as a hypergraph or as a state relation.
    Eval {
        term: PathBuf,
        #[arg(long, value_enum, default_value = "graph")]
        semantics: Semantics,
        /// Number of states for the coloring automaton.
        #[arg(long)]
        states: Option<usize>,
        /// Automaton JSON supplying states and transition relations.
        #[arg(long)]
        delta_file: Option<PathBuf>,
    },
    /// Check the graph equations in TSRel({1..N}).
    Axioms {
        #[arg(long)]
        states: usize,
    },
}

enum Outcome {
    Pass(String),
    Fail(String),
}

type CliResult = Result<Outcome, String>;

fn read_input(path: &Path) -> Result<String, String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn graph_format(path: &Path, format: Option<Format>) -> GraphFormat {
    let format = format.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some("json") => Format::Json,
        Some("dot" | "gv") => Format::Dot,
        _ => Format::Edgelist,
    });
    match format {
        Format::Edgelist => GraphFormat::EdgeList,
        Format::Json => GraphFormat::HypergraphJson,
        Format::Dot => GraphFormat::Dot,
    }
}

#[derive(Serialize)]
struct Envelope<'a, P> {
    status: &'a str,
    payload: P,
}

fn envelope(status: &str, payload: impl Serialize) -> String {
    serde_json::to_string(&Envelope { status, payload }).expect("serializable")
}

#[derive(Serialize)]
struct Verdict {
    colorable: bool,
    k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    coloring: Option<std::collections::BTreeMap<String, u32>>,
}

fn cmd_recognize(path: &Path, k: usize, format: Option<Format>, witness: bool) -> CliResult {
    let text = read_input(path)?;
    let g = parse_graph_input(&text, graph_format(path, format)).map_err(|e| format!("{}: {e}", path.display()))?;
    let (accepted, coloring) = recognize(&g, k).map_err(|e| e.to_string())?;
    let coloring = coloring
        .filter(|_| witness)
        .map(|c| c.colors.iter().map(|(v, col)| (v.to_string(), *col)).collect());
    let payload = Verdict {
        colorable: accepted,
        k,
        coloring,
    };
    if accepted {
        Ok(Outcome::Pass(envelope("accepted", payload)))
    } else {
        Ok(Outcome::Fail(envelope("rejected", payload)))
    }
}

fn cmd_encode(path: &Path, format: Option<Format>) -> CliResult {
    let text = read_input(path)?;
    let g = parse_graph_input(&text, graph_format(path, format)).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Outcome::Pass(encode_graph(&g).to_string()))
}

fn cmd_eval(path: &Path, semantics: Semantics, states: Option<usize>, delta_file: Option<&Path>) -> CliResult {
    let text = read_input(path)?;
    let t = parse_term(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    match semantics {
        Semantics::Graph => {
            let g = eval_graph(&t).map_err(|e| e.to_string())?;
            Ok(Outcome::Pass(g.to_json()))
        }
        Semantics::Relation => {
            let automaton = match delta_file {
                Some(file) => {
                    let a = GraphAutomaton::from_json(&read_input(file)?).map_err(|e| format!("{}: {e}", file.display()))?;
                    if let Some(n) = states {
                        if a.states().len() != n {
                            return Err(format!("--states {n} disagrees with {} states in {}", a.states().len(), file.display()));
                        }
                    }
                    a
                }
                None => {
                    let n = states.ok_or("relation semantics needs --states or --delta-file")?;
                    make_color_automaton(n).map_err(|e| e.to_string())?
                }
            };
            let r = automaton.extend_delta(&t).map_err(|e| e.to_string())?;
            let q = automaton.states();
            let pairs: Vec<[String; 2]> = r.pairs().iter().map(|(u, v)| [q.format_word(u), q.format_word(v)]).collect();
            Ok(Outcome::Pass(serde_json::to_string(&pairs).expect("serializable")))
        }
    }
}

fn cmd_axioms(n: usize) -> CliResult {
    if n == 0 {
        return Err("--states must be at least 1".into());
    }
    let q = StateSet::range(n).map_err(|e| e.to_string())?;
    let generators = standard_generators(n).map_err(|e| e.to_string())?;
    let report = check_axioms(&q, &tsrel_dset(&q), &generators).map_err(|e| e.to_string())?;
    let status = if report.holds { "pass" } else { "fail" };
    let out = envelope(status, &report);
    Ok(if report.holds { Outcome::Pass(out) } else { Outcome::Fail(out) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Recognize {
            graph,
            k,
            format,
            witness,
        } => cmd_recognize(graph, *k, *format, *witness),
        Command::Encode { graph, format } => cmd_encode(graph, *format),
        Command::Eval {
            term,
            semantics,
            states,
            delta_file,
        } => cmd_eval(term, *semantics, *states, delta_file.as_deref()),
        Command::Axioms { states } => cmd_axioms(*states),
    };
    let emit = |out: &str| {
        if !cli.quiet {
            let _ = writeln!(io::stdout(), "{out}");
        }
    };
    match result {
        Ok(Outcome::Pass(out)) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Fail(out)) => {
            emit(&out);
            ExitCode::from(1)
        }
        Err(msg) => {
            eprintln!("gaut: {msg}");
            ExitCode::from(2)
        }
    }
}
