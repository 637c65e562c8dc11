//! The `lpa` command line. [`run`] returns the exit code and both output
//! streams so it can be driven from tests without a subprocess.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::{Algebra, Element, Strategy};
use crate::closures::{self, VertexSet, DEFAULT_VERTEX_CAP};
use crate::fixtures;
use crate::graph::{load_graph, Graph};
use crate::ideals::{self, DEFAULT_BOUND};
use crate::scalar::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "lpa", version, about = "Normal forms, closures and ideals of Leavitt path algebras")]
struct Cli {
    /// Fixture name (g1, g3, g4, g6, g7, g8, line:N, clock:N) or a JSON graph file.
    #[arg(long, global = true)]
    graph: Option<String>,
    /// Coefficient field: `q` or `gf:P`.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Sandwich length bound for membership searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    bound: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SetArg {
    /// Comma-separated vertex names.
    #[arg(long)]
    set: String,
}

#[derive(Debug, Args)]
struct CapArg {
    /// Largest vertex count to enumerate.
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    cap: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hereditary saturated closure of a vertex set, level by level.
    Closure(SetArg),
    /// All hereditary saturated subsets.
    Lattice(CapArg),
    /// Ascending chain condition on hereditary saturated subsets.
    Noetherian(CapArg),
    /// Normal form of an expression.
    Nf {
        #[arg(long)]
        expr: String,
        /// `fast`, `leftmost`, `rightmost` or `random:SEED`.
        #[arg(long, default_value = "fast")]
        strategy: String,
    },
    /// Compares two expressions after normalization.
    Eq {
        #[arg(long, num_args = 1, required = true)]
        expr: Vec<String>,
    },
    /// Closed simple paths at a vertex.
    Csp {
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Simple cycles, one per base vertex.
    Cycles,
    /// Splits a closed path into closed simple paths.
    Factorize {
        #[arg(long)]
        path: String,
    },
    /// Canonical generators of the ideal generated by `--gens`.
    IdealCanon {
        /// Semicolon-separated expressions.
        #[arg(long)]
        gens: String,
    },
    /// Bounded membership search with a certificate.
    IdealMember {
        #[arg(long)]
        gens: String,
        #[arg(long)]
        target: String,
    },
    /// Closure certificates for a set and the vertex trace of its closure.
    GradedTrace(SetArg),
    /// The graph (or its lattice) in Graphviz syntax.
    ExportDot {
        #[arg(long)]
        lattice: bool,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Outcome {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Failures after argument parsing: usage (exit 2) or domain (exit 1).
enum Failure {
    Usage(String),
    Domain(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::Domain(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::fail(2, text),
            };
        }
    };
    match execute(&cli) {
        Ok(out) => Outcome::ok(out),
        Err(Failure::Usage(m)) => Outcome::fail(2, format!("error: {m}\n")),
        Err(Failure::Domain(m)) => Outcome::fail(1, format!("error: {m}\n")),
    }
}

fn resolve_graph(name: &str) -> Result<Graph, Failure> {
    if let Some(g) = fixtures::by_name(name) {
        return Ok(g);
    }
    let text = std::fs::read_to_string(name)
        .map_err(|e| Failure::Usage(format!("`{name}` is neither a fixture nor a readable file: {e}")))?;
    Ok(load_graph(&text)?)
}

fn parse_strategy(s: &str) -> Result<Option<Strategy>, Failure> {
    match s {
        "fast" => Ok(None),
        "leftmost" => Ok(Some(Strategy::Leftmost)),
        "rightmost" => Ok(Some(Strategy::Rightmost)),
        _ => s
            .strip_prefix("random:")
            .and_then(|n| n.parse().ok())
            .map(|seed| Some(Strategy::Random(seed)))
            .ok_or_else(|| Failure::Usage(format!("unknown strategy `{s}`"))),
    }
}

fn parse_gens(alg: &Algebra<'_>, text: &str) -> Result<Vec<Element>, Failure> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| alg.parse(s).map_err(Failure::from))
        .collect()
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let name = cli
        .graph
        .as_deref()
        .ok_or_else(|| Failure::Usage("--graph is required".into()))?;
    let field: Field = cli.field.parse().map_err(|e: crate::scalar::FieldError| Failure::Usage(e.to_string()))?;
    let graph = resolve_graph(name)?;
    let g = &graph;
    let alg = Algebra::new(g, field);
    let bound = cli.bound as usize;
    let json = match cli.format {
        Format::Text => false,
        Format::Json => true,
        Format::Dot if matches!(cli.command, Command::ExportDot { .. }) => false,
        Format::Dot => return Err(Failure::Usage("--format dot is only valid for export-dot".into())),
    };

    let out = match &cli.command {
        Command::Closure(SetArg { set }) => {
            let x = VertexSet::parse(g, set)?;
            let trace = closures::closure(g, &x);
            if json {
                pretty(&trace.to_json(g))
            } else {
                trace.report(g)
            }
        }
        Command::Lattice(CapArg { cap }) => {
            let lattice = closures::hs_lattice(g, *cap)?;
            if json {
                pretty(&json!({
                    "size": lattice.len(),
                    "members": lattice.members.iter().map(|m| m.names(g)).collect::<Vec<_>>(),
                }))
            } else {
                let mut s = format!("lattice size {}\n", lattice.len());
                for m in &lattice.members {
                    let _ = writeln!(s, "{}", m.label(g));
                }
                s
            }
        }
        Command::Noetherian(CapArg { cap }) => {
            let r = closures::noetherian_report(g, *cap)?;
            if json {
                pretty(&r.to_json(g))
            } else {
                r.report(g)
            }
        }
        Command::Nf { expr, strategy } => {
            let raw = alg.parse_raw(expr)?;
            let x = match parse_strategy(strategy)? {
                None => alg.normal_form(&raw),
                Some(s) => alg.normal_form_with(&raw, s),
            };
            if json {
                pretty(&json!({ "input": expr, "normal_form": alg.render(&x) }))
            } else {
                format!("{}\n", alg.render(&x))
            }
        }
        Command::Eq { expr } => {
            let [a, b] = expr.as_slice() else {
                return Err(Failure::Usage("eq takes exactly two --expr values".into()));
            };
            let (x, y) = (alg.parse(a)?, alg.parse(b)?);
            let equal = x == y;
            if json {
                pretty(&json!({
                    "equal": equal,
                    "left": alg.render(&x),
                    "right": alg.render(&y),
                }))
            } else if equal {
                format!("equal\n{}\n", alg.render(&x))
            } else {
                format!("not equal\n{}\n{}\n", alg.render(&x), alg.render(&y))
            }
        }
        Command::Csp { vertex, max_len } => {
            let v = g.vertex(vertex)?;
            let max_len = max_len.unwrap_or_else(|| g.csp_search_bound());
            let csps = g.csp_enumerate(v, max_len)?;
            let labels: Vec<String> = csps.iter().map(|p| g.path_label(p)).collect();
            if json {
                pretty(&json!({ "vertex": vertex, "max_len": max_len, "csps": labels }))
            } else {
                labels.iter().map(|l| format!("{l}\n")).collect()
            }
        }
        Command::Cycles => {
            let labels: Vec<String> = g.enumerate_cycles().iter().map(|c| g.path_label(c.path())).collect();
            if json {
                pretty(&json!({ "cycles": labels }))
            } else {
                labels.iter().map(|l| format!("{l}\n")).collect()
            }
        }
        Command::Factorize { path } => {
            let p = g.parse_path(path)?;
            let labels: Vec<String> = g.cp_factorize(&p)?.iter().map(|f| g.path_label(f)).collect();
            if json {
                pretty(&json!({ "path": path, "factors": labels }))
            } else {
                format!("{}\n", labels.iter().map(|l| format!("({l})")).collect::<Vec<_>>().join(" "))
            }
        }
        Command::IdealCanon { gens } => {
            let inputs = parse_gens(&alg, gens)?;
            let r = ideals::canonical_generators(&alg, &inputs, bound)?;
            let outputs = r.output_elements(&alg);
            if json {
                pretty(&json!({
                    "generators": r.generators.iter().zip(&outputs).map(|(c, x)| json!({
                        "element": alg.render(x),
                        "description": c.describe(g),
                    })).collect::<Vec<_>>(),
                    "dropped": r.dropped.iter().map(|(c, d)| json!({
                        "element": alg.render(&c.eval(&alg)),
                        "connector": g.path_label(&d.connector),
                    })).collect::<Vec<_>>(),
                    "outputs_in_input": r.outputs_in_input.iter().map(|m| m.to_json(&alg)).collect::<Vec<_>>(),
                    "inputs_in_output": r.inputs_in_output.iter().map(|m| m.to_json(&alg)).collect::<Vec<_>>(),
                }))
            } else {
                let mut s = String::new();
                for (c, x) in r.generators.iter().zip(&outputs) {
                    let _ = writeln!(s, "{}    [{}]", alg.render(x), c.describe(g));
                }
                for (c, d) in &r.dropped {
                    let _ = writeln!(
                        s,
                        "dropped {} (conjugate by {})",
                        alg.render(&c.eval(&alg)),
                        g.path_label(&d.connector)
                    );
                }
                let _ = writeln!(s, "outputs in input ideal:");
                for m in &r.outputs_in_input {
                    let _ = writeln!(s, "  {}", m.render(&alg, &inputs).replace('\n', "\n  "));
                }
                let _ = writeln!(s, "inputs in output ideal:");
                for m in &r.inputs_in_output {
                    let _ = writeln!(s, "  {}", m.render(&alg, &outputs).replace('\n', "\n  "));
                }
                s
            }
        }
        Command::IdealMember { gens, target } => {
            let inputs = parse_gens(&alg, gens)?;
            let t = alg.parse(target)?;
            let m = ideals::membership_bounded(&alg, &inputs, &t, bound);
            if json {
                pretty(&m.to_json(&alg))
            } else {
                format!("{}\n", m.render(&alg, &inputs))
            }
        }
        Command::GradedTrace(SetArg { set }) => {
            let x = VertexSet::parse(g, set)?;
            let seeds: Vec<Element> = x.iter().map(|v| alg.vertex(v)).collect();
            let certs = ideals::closure_certificates(&alg, &x);
            let h = closures::closure(g, &x).closure().clone();
            let trace = ideals::graded_vertex_trace(&alg, &h, bound)?;
            if json {
                pretty(&json!({
                    "closure_certificates": certs.iter().map(|c| json!({
                        "vertex": g.vertex_name(c.vertex),
                        "level": c.level,
                        "certificate": c.certificate.to_record(&alg),
                    })).collect::<Vec<_>>(),
                    "trace": trace.to_json(&alg),
                }))
            } else {
                let mut s = format!("certificates over <{}>:\n", x.label(g));
                for c in &certs {
                    let _ = writeln!(s, "  [Lambda_{}] {}", c.level, c.certificate.render(&alg, &seeds));
                }
                s.push_str(&trace.report(&alg));
                s
            }
        }
        Command::ExportDot { lattice, cap } => {
            if json {
                return Err(Failure::Usage("export-dot writes Graphviz only".into()));
            }
            if *lattice {
                closures::hs_lattice(g, *cap)?.to_dot(g)
            } else {
                g.to_dot()
            }
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lpa(args: &[&str]) -> Outcome {
        run(std::iter::once("lpa").chain(args.iter().copied()))
    }

    #[test]
    fn closure_lines() {
        let o = lpa(&["closure", "--graph", "g1", "--set", "v"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout, "Lambda_0 = {v, w}\nLambda_1 = {v, w}\nclosure = {v, w}\n");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(lpa(&["closure", "--graph", "g1"]).code, 2);
        assert_eq!(lpa(&["closure", "--set", "v"]).code, 2);
        assert_eq!(lpa(&["nf", "--graph", "g1", "--expr", "v", "--bound", "0"]).code, 2);
        assert_eq!(lpa(&["nf", "--graph", "g1", "--expr", "v", "--field", "gf:4"]).code, 2);
        assert_eq!(lpa(&["cycles", "--graph", "g1", "--format", "dot"]).code, 2);
        assert_eq!(lpa(&["--help"]).code, 0);
    }

    #[test]
    fn domain_errors_exit_one() {
        let o = lpa(&["closure", "--graph", "g1", "--set", "x"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains('x'));
        assert_eq!(lpa(&["factorize", "--graph", "g1", "--path", "e1 e2"]).code, 1);
        assert_eq!(lpa(&["nf", "--graph", "g1", "--expr", "e1 +"]).code, 1);
    }
}
