use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use otis_layout::arith::gcd;
use otis_layout::canon::isomorphic;
use otis_layout::debruijn::{build_debruijn, DeBruijnParams};
use otis_layout::format::{parse_graph, to_dot, to_edge_list, to_json};
use otis_layout::heuchenne::is_nth_line_digraph;
use otis_layout::layout::{
    build_g, check_conjecture, enumerate_debruijn_layouts, enumerate_layouts, gcd_layout_test,
    LayoutReport,
};
use otis_layout::otis::{build_h, OtisParams};
use otis_layout::{MultiDigraph, SizeBound};

/// OTIS digraphs, De Bruijn digraphs and their layouts.
#[derive(Parser)]
#[command(name = "otis", version)]
struct Cli {
    /// Largest vertex count materialized for construction and isomorphism testing.
    #[arg(long, global = true, env = "OTIS_SIZE_BOUND", default_value_t = SizeBound::DEFAULT.0 as u64)]
    size_bound: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write H(p, q, d).
    Construct {
        #[command(flatten)]
        otis: OtisArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write the De Bruijn digraph B(d, n).
    Debruijn {
        #[arg(short)]
        d: u64,
        #[arg(short)]
        n: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List the orbits of the layout permutation g for (p', q').
    Orbits {
        #[arg(long = "p-prime")]
        p_prime: u64,
        #[arg(long = "q-prime")]
        q_prime: u64,
    },
    /// Decide whether H(d^p', d^(n+1-p'), d) is a layout of B(d, n).
    LayoutTest {
        #[arg(long = "p-prime")]
        p_prime: u64,
        #[arg(short)]
        n: u64,
    },
    /// Decide whether a digraph is an n-th iterated line digraph.
    LineCheck {
        #[arg(short, required_unless_present = "graph", conflicts_with = "graph")]
        p: Option<u64>,
        #[arg(short, required_unless_present = "graph", conflicts_with = "graph")]
        q: Option<u64>,
        #[arg(short, required_unless_present = "graph", conflicts_with = "graph")]
        d: Option<u64>,
        /// Edge-list or JSON graph file.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(short, default_value_t = 1)]
        n: usize,
    },
    /// Enumerate the OTIS layouts of B(d, n), or of a d-regular graph file.
    Layouts {
        #[arg(short)]
        d: u64,
        #[arg(short, required_unless_present = "graph")]
        n: Option<u64>,
        #[arg(long, conflicts_with = "n")]
        graph: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check that every layout of B(d, n) uses powers of d.
    Conjecture {
        #[arg(short)]
        d: u64,
        #[arg(short)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two graph files are isomorphic.
    Isomorphic { file_a: PathBuf, file_b: PathBuf },
}

#[derive(Args)]
struct OtisArgs {
    #[arg(short)]
    p: u64,
    #[arg(short)]
    q: u64,
    #[arg(short)]
    d: u64,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Edgelist)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Dot,
    Json,
}

/// What a successful run prints, and whether the tested property holds.
struct Outcome {
    text: String,
    holds: bool,
}

impl Outcome {
    fn done(text: String) -> Self {
        Outcome { text, holds: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if outcome.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let bound = SizeBound(usize::try_from(cli.size_bound).unwrap_or(usize::MAX));
    match cli.command {
        Command::Construct { otis, output } => {
            let params = otis_params(&otis, bound)?;
            write_graph(&build_h(&params), &output)
        }
        Command::Debruijn { d, n, output } => {
            let g = build_debruijn(&DeBruijnParams::new(d, n)?, bound)?;
            write_graph(&g, &output)
        }
        Command::Orbits { p_prime, q_prime } => {
            bound.check(u128::from(p_prime) + u128::from(q_prime))?;
            let g = build_g(p_prime, q_prime)?;
            let orbits: Vec<String> = g
                .orbits()
                .iter()
                .map(|orbit| {
                    let items: Vec<String> = orbit.iter().map(usize::to_string).collect();
                    format!("{{{}}}", items.join(","))
                })
                .collect();
            let cyclic = if g.is_cyclic() { "yes" } else { "no" };
            Ok(Outcome::done(format!(
                "lambda={}; orbits: {}; cyclic: {cyclic}\n",
                g.lambda(),
                orbits.join(" ")
            )))
        }
        Command::LayoutTest { p_prime, n } => {
            let holds = gcd_layout_test(p_prime, n)?;
            let answer = if holds { "yes" } else { "no" };
            let text = format!(
                "{answer} (gcd({p_prime},{})={})\n",
                n + 1,
                gcd(p_prime, n + 1)
            );
            Ok(Outcome { text, holds })
        }
        Command::LineCheck { p, q, d, graph, n } => {
            let g = match graph {
                Some(path) => read_graph(&path, bound)?,
                None => {
                    let otis = OtisArgs {
                        p: p.expect("required by clap"),
                        q: q.expect("required by clap"),
                        d: d.expect("required by clap"),
                    };
                    build_h(&otis_params(&otis, bound)?)
                }
            };
            let verdict = is_nth_line_digraph(&g, n)?;
            let text = match &verdict.failure {
                None => format!("yes: line digraph of order {n}\n"),
                Some(witness) => format!("no: {witness}\n"),
            };
            Ok(Outcome {
                text,
                holds: verdict.is_nth_line,
            })
        }
        Command::Layouts { d, n, graph, json } => {
            let report = match (graph, n) {
                (Some(path), _) => enumerate_layouts(&read_graph(&path, bound)?, d, bound)?,
                (None, Some(n)) => enumerate_debruijn_layouts(d, n, bound)?,
                (None, None) => bail!("either -n or --graph is required"),
            };
            let text = if json {
                format!("{}\n", report.to_json())
            } else {
                render_report(&report)
            };
            Ok(Outcome {
                text,
                holds: report.layout_count > 0,
            })
        }
        Command::Conjecture { d, n, json } => {
            let report = check_conjecture(d, n, bound)?;
            let holds = report.holds && report.cross_check_failures.is_empty();
            let text = if json {
                format!("{}\n", report.to_json())
            } else {
                let mut text = render_report(&report.report);
                let verdict = if report.holds { "holds" } else { "fails" };
                let _ = writeln!(text, "conjecture at (d={d}, n={n}): {verdict}");
                for (p, q) in &report.counterexamples {
                    let _ = writeln!(text, "counterexample: ({p},{q})");
                }
                for (p, q) in &report.cross_check_failures {
                    let _ = writeln!(text, "criterion disagrees with canonical form at ({p},{q})");
                }
                text
            };
            Ok(Outcome { text, holds })
        }
        Command::Isomorphic { file_a, file_b } => {
            let a = read_graph(&file_a, bound)?;
            let b = read_graph(&file_b, bound)?;
            let holds = isomorphic(&a, &b, bound)?;
            let text = if holds { "yes\n" } else { "no\n" };
            Ok(Outcome {
                text: text.into(),
                holds,
            })
        }
    }
}

/// H(p, q, d) has pq/d vertices of degree d; both are held to the size bound.
fn otis_params(args: &OtisArgs, bound: SizeBound) -> Result<OtisParams> {
    let params = OtisParams::new(args.p, args.q, args.d)?;
    bound.check(params.group_count() as u128)?;
    bound
        .check(params.d() as u128)
        .context("degree d exceeds the size bound")?;
    Ok(params)
}

fn read_graph(path: &Path, bound: SizeBound) -> Result<MultiDigraph> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let g = parse_graph(&text).with_context(|| format!("{}", path.display()))?;
    bound.check(g.vertex_count() as u128)?;
    Ok(g)
}

fn write_graph(g: &MultiDigraph, output: &OutputArgs) -> Result<Outcome> {
    let text = match output.format {
        Format::Edgelist => to_edge_list(g),
        Format::Dot => to_dot(g),
        Format::Json => format!("{}\n", to_json(g)),
    };
    match &output.output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
            Ok(Outcome::done(String::new()))
        }
        None => Ok(Outcome::done(text)),
    }
}

fn render_report(report: &LayoutReport) -> String {
    let mut text = format!("d={} vertices={}\n", report.d, report.vertices);
    for c in &report.candidates {
        let answer = if c.isomorphic { "yes" } else { "no" };
        let evidence = serde_json::to_value(c.evidence).expect("evidence serializes");
        let evidence = evidence.as_str().unwrap_or_default().to_owned();
        let _ = writeln!(text, "({},{}) {answer} {evidence}", c.p, c.q);
    }
    let _ = writeln!(text, "layout_count={}", report.layout_count);
    match report.min_p_plus_q {
        Some((p, q)) => {
            let _ = writeln!(text, "min_p_plus_q=({p},{q})");
        }
        None => text.push_str("min_p_plus_q=none\n"),
    }
    text
}
