use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ramsey_lab::arrow::{arrows_mr, constrained_ramsey_number, ArrowOptions, Outcome};
use ramsey_lab::constructions::{
    avoid_colouring, component_mono_colouring, constellation_arrow_tree, star_arrow_tree, AvoidMode, RootedTree, DEFAULT_VERTEX_BUDGET,
};
use ramsey_lab::density::{classify, max_2_density, max_density};
use ramsey_lab::fh::{appendix_tree, descendant_colouring, f_of, DEFAULT_F_EDGE_BUDGET};
use ramsey_lab::gnp::{arrow_sweep, containment_sweep, to_csv, PValue};
use ramsey_lab::graph::{parse_edge_list, parse_graph, Graph};
use ramsey_lab::mf::{mf_report, MfOptions};
use ramsey_lab::threshold::threshold;

#[derive(Parser)]
#[command(name = "ramsey-lab", version, about = "Monochromatic-or-rainbow Ramsey properties of small graphs and forests")]
struct Cli {
    /// Worker threads for parallel searches.
    #[arg(long, global = true, env = "RAMSEY_LAB_JOBS", default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Budgets {
    /// Largest host edge count for exhaustive colouring search.
    #[arg(long, default_value_t = ramsey_lab::arrow::DEFAULT_EDGE_BUDGET)]
    edge_budget: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum density and maximum 2-density.
    Density {
        graph: String,
        #[arg(long)]
        m: bool,
        #[arg(long)]
        m2: bool,
    },
    /// Structural classes used by the threshold dispatch.
    Classify { graph: String },
    /// Decide whether every colouring of G has a monochromatic H1 or a rainbow H2.
    Arrow {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Least n such that K_n arrows (H1, H2).
    RamseyNumber {
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Threshold exponent q with threshold n^q.
    Threshold {
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
        #[command(flatten)]
        mf: MfArgs,
    },
    /// Bounds on the least density of an arrowing forest.
    Mf {
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
        #[command(flatten)]
        mf: MfArgs,
    },
    /// Minimum over roots and labelings of the largest root-to-leaf label product.
    FOfH {
        graph: String,
        #[arg(long, default_value_t = DEFAULT_F_EDGE_BUDGET)]
        edge_budget: usize,
    },
    /// Print one of the explicit colourings of a forest.
    Colour {
        #[arg(long)]
        g: String,
        #[arg(long, value_enum)]
        mode: ColourMode,
    },
    /// Build one of the explicit trees.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Monte Carlo sweeps over G(n, p), as CSV.
    Sweep {
        #[command(subcommand)]
        what: Sweep,
    },
}

#[derive(Args)]
struct MfArgs {
    #[arg(long, default_value_t = 6)]
    max_component: usize,
    #[arg(long, default_value_t = 3)]
    copies_cap: usize,
    #[arg(long, default_value_t = 12)]
    vertex_budget: usize,
    #[arg(long, default_value_t = ramsey_lab::arrow::DEFAULT_EDGE_BUDGET)]
    edge_budget: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColourMode {
    HighDegree,
    LongPath,
    Component,
    Descendant,
}

#[derive(Subcommand)]
enum Construct {
    /// Complete d-ary tree of height h.
    Tree {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        edges: bool,
    },
    /// Complete tree arrowing (K1,s, H2).
    Star {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        h2: String,
        #[arg(long)]
        edges: bool,
    },
    /// Height-three tree for constellations against short forests (lazy).
    Constellation {
        #[arg(long)]
        s: usize,
    },
    /// Tree whose depth-i vertices have 2^(i+3) children (lazy).
    Appendix {
        #[arg(long)]
        h: usize,
    },
}

#[derive(Subcommand)]
enum Sweep {
    /// Probability that H is a subgraph of G(n, p).
    Containment {
        #[arg(long)]
        h: String,
        #[arg(long)]
        n: usize,
        /// Comma-separated grid: decimals or c*n^q.
        #[arg(long, value_delimiter = ',')]
        p: Vec<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Probability that G(n, p) arrows (H1, H2), decided exactly.
    Arrow {
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        p: Vec<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        edge_cap: usize,
    },
}

enum Failure {
    /// Domain refusal: budgets, open cases, out-of-scope inputs.
    Refusal(String),
    Parse(String),
}

type CmdResult = Result<String, Failure>;

fn refuse(e: impl ToString) -> Failure {
    Failure::Refusal(e.to_string())
}

fn graph(input: &str) -> Result<Graph, Failure> {
    if let Some(path) = input.strip_prefix('@') {
        let text = fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{path}: {e}")))?;
        return parse_edge_list(&text).map_err(|e| Failure::Parse(e.to_string()));
    }
    parse_graph(input).map_err(|e| Failure::Parse(e.to_string()))
}

fn p_grid(inputs: &[String]) -> Result<Vec<PValue>, Failure> {
    inputs
        .iter()
        .map(|s| PValue::parse(s).ok_or_else(|| Failure::Parse(format!("bad probability `{s}`"))))
        .collect()
}

fn mf_options(a: &MfArgs, jobs: usize) -> MfOptions {
    MfOptions {
        max_component: a.max_component,
        copies_cap: a.copies_cap,
        vertex_budget: a.vertex_budget,
        arrow: ArrowOptions {
            edge_budget: a.edge_budget,
            jobs,
        },
        ..MfOptions::default()
    }
}

fn run(cli: Cli) -> CmdResult {
    let jobs = cli.jobs.max(1);
    match cli.command {
        Command::Density { graph: g, m, m2 } => {
            let g = graph(&g)?;
            let (m, m2) = if m || m2 { (m, m2) } else { (true, true) };
            let mut lines = Vec::new();
            if m {
                lines.push(format!("m = {}", max_density(&g).map_err(refuse)?));
            }
            if m2 {
                lines.push(format!("m2 = {}", max_2_density(&g).map_err(refuse)?));
            }
            Ok(lines.join("\n"))
        }
        Command::Classify { graph: g } => {
            let c = classify(&graph(&g)?);
            Ok([
                format!("forest: {}", c.is_forest),
                format!("star: {}", c.is_star),
                format!("matching: {}", c.is_matching),
                format!("star_forest: {}", c.is_star_forest),
                format!("constellation: {}", c.is_constellation),
                format!("short_forest: {}", c.is_short_forest),
                format!("cherry: {}", c.is_cherry),
                format!("k_nonisolated: {}", c.k_nonisolated),
            ]
            .join("\n"))
        }
        Command::Arrow { g, h1, h2, budgets } => {
            let (g, h1, h2) = (graph(&g)?, graph(&h1)?, graph(&h2)?);
            let v = arrows_mr(
                &g,
                &h1,
                &h2,
                &ArrowOptions {
                    edge_budget: budgets.edge_budget,
                    jobs,
                },
            )
            .map_err(refuse)?;
            Ok(match v.outcome {
                Outcome::Arrows => format!("Arrows ({} colourings examined)", v.colourings_examined),
                Outcome::NotArrows => format!(
                    "NotArrows ({} colourings examined)\ncounterexample: {}",
                    v.colourings_examined,
                    v.counterexample.expect("counterexample with NotArrows")
                ),
            })
        }
        Command::RamseyNumber { h1, h2, n_max, budgets } => {
            let (h1, h2) = (graph(&h1)?, graph(&h2)?);
            let opts = ArrowOptions {
                edge_budget: budgets.edge_budget,
                jobs,
            };
            match constrained_ramsey_number(&h1, &h2, n_max, &opts).map_err(refuse)? {
                Some(n) => Ok(format!("r_c = {n}")),
                None => Err(refuse(format!("no K_n with n <= {n_max} arrows the pair"))),
            }
        }
        Command::Threshold { h1, h2, mf } => {
            let t = threshold(&graph(&h1)?, &graph(&h2)?, &mf_options(&mf, jobs)).map_err(refuse)?;
            Ok(t.to_string())
        }
        Command::Mf { h1, h2, mf } => Ok(mf_report(&graph(&h1)?, &graph(&h2)?, &mf_options(&mf, jobs)).map_err(refuse)?.to_string()),
        Command::FOfH { graph: g, edge_budget } => {
            let f = f_of(&graph(&g)?, edge_budget).map_err(refuse)?;
            let labels: Vec<String> = f.labels.iter().map(usize::to_string).collect();
            Ok(format!("f = {}\nroot: {}\nlabels: ({})", f.value, f.root, labels.join(",")))
        }
        Command::Colour { g, mode } => {
            let g = graph(&g)?;
            let chi = match mode {
                ColourMode::HighDegree => avoid_colouring(&g, AvoidMode::HighDegree),
                ColourMode::LongPath => avoid_colouring(&g, AvoidMode::LongPath),
                ColourMode::Component => component_mono_colouring(&g),
                ColourMode::Descendant => RootedTree::new(g.clone(), 0).map(|t| descendant_colouring(&t)),
            }
            .map_err(refuse)?;
            Ok(format!("colouring: {chi}"))
        }
        Command::Construct { what } => construct(what),
        Command::Sweep { what } => match what {
            Sweep::Containment { h, n, p, trials, seed } => {
                let rows = containment_sweep(&graph(&h)?, n, &p_grid(&p)?, trials, seed, jobs);
                Ok(to_csv(&rows).trim_end().to_string())
            }
            Sweep::Arrow {
                h1,
                h2,
                n,
                p,
                trials,
                seed,
                edge_cap,
            } => {
                let rows = arrow_sweep(n, &p_grid(&p)?, &graph(&h1)?, &graph(&h2)?, trials, seed, edge_cap, jobs);
                Ok(to_csv(&rows).trim_end().to_string())
            }
        },
    }
}

fn tree_summary(t: &RootedTree, edges: bool) -> String {
    let mut s = format!("vertices: {}\nheight: {}", t.n(), t.height());
    if edges {
        s.push('\n');
        s.push_str(t.graph().to_edge_list().trim_end());
    }
    s
}

fn construct(what: Construct) -> CmdResult {
    match what {
        Construct::Tree { d, h, edges } => Ok(tree_summary(&RootedTree::complete(d, h, DEFAULT_VERTEX_BUDGET).map_err(refuse)?, edges)),
        Construct::Star { s, h2, edges } => {
            let c = star_arrow_tree(s, &graph(&h2)?, DEFAULT_VERTEX_BUDGET).map_err(refuse)?;
            Ok(format!(
                "tree: T({},{})\ncompletion: {}\n{}",
                c.arity,
                c.height,
                c.completion.graph(),
                tree_summary(&c.tree, edges)
            ))
        }
        Construct::Constellation { s } => {
            let t = constellation_arrow_tree(s).map_err(refuse)?;
            Ok(format!("tree: T({},3)\nvertices: {}", t.arity_at(0), t.n()))
        }
        Construct::Appendix { h } => {
            let t = appendix_tree(h).map_err(refuse)?;
            Ok(format!("vertices: {}\nleaves: {}", t.n(), t.leaf_count()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Refusal(reason)) => {
            eprintln!("refused: {reason}");
            ExitCode::from(1)
        }
        Err(Failure::Parse(reason)) => {
            eprintln!("error: {reason}");
            ExitCode::from(2)
        }
    }
}
