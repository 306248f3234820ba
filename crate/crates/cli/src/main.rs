//! `hat`: build, analyse and verify tetravalent graphs with half-arc-transitive
//! group actions.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;
use thiserror::Error;

use hat_core::autsearch::{automorphism_group, AutError};
use hat_core::families::{self, FamilyError, Labeled, RoseWindowParams, XivParams, XoParams};
use hat_core::graphcore::{read_graph, write_dot, write_graph, Graph, GraphError};
use hat_core::hatcore::{induced_orientation, transitivity, HatError};
use hat_core::perm::{read_perms, write_perms, PermError, PermGroup, Permutation};
use hat_core::psl2::{coset_graph_bounded, Psl2Error, DEFAULT_PRIME_BOUND};
use hat_core::report::{analyze, ReportError};
use hat_core::verify::{self, VerifyError, VerifyReport};

#[derive(Parser)]
#[command(name = "hat", version, about = "Half-arc-transitive actions on tetravalent graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a graph from a named family.
    Build {
        #[command(subcommand)]
        family: Family,
    },
    /// Run the full analysis of a graph under a group and print a hatreport/1 JSON.
    Analyze {
        graph: PathBuf,
        perms: PathBuf,
        /// Seed arc of the induced orientation, as `u,v`.
        #[arg(long, value_parser = parse_arc)]
        orientation_seed: Option<(usize, usize)>,
        /// Add wall-clock timing to the output.
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the full automorphism group.
    Aut {
        graph: PathBuf,
        /// Write the generators here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a canonical-form certificate (hex SHA-256).
    Canon { graph: PathBuf },
    /// Bounded verification of classification statements.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Write a graph, or the orientation induced by a group, as DOT.
    ExportDot {
        graph: PathBuf,
        /// Orient the edges by the action of this group.
        #[arg(long)]
        perms: Option<PathBuf>,
        #[arg(long, value_parser = parse_arc)]
        orientation_seed: Option<(usize, usize)>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Output {
    /// Output prefix: writes PREFIX.graph, PREFIX.json and, when available, PREFIX.perms.
    /// Without it the graph is printed to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Family {
    /// X_o(m, r; q).
    Xo {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        q: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Rose window R_n(a, r).
    Rw {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        r: i64,
        #[command(flatten)]
        output: Output,
    },
    /// R_12(5, 2) with one of its groups.
    R12 {
        /// aut, g1 or g2.
        #[arg(long, default_value = "g1")]
        group: String,
        #[command(flatten)]
        output: Output,
    },
    /// Double coset graph of PSL(2, p).
    Psl2 {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
        max_p: u64,
        #[command(flatten)]
        output: Output,
    },
    /// X_IV(m, n; r, t; p, a; q, b).
    Xiv {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        t: i64,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        b: i64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Exhaustive search for tightly-attached parameters.
    Ta {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The two graphs with undirected 5-cycles.
    Undirected {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A constructible table row.
    Table {
        #[arg(long)]
        row: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The PSL(2, p) coset graph bundle.
    Psl2 {
        #[arg(long, default_value_t = 11)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep X_IV(5, n; r, t; 1, a; 2, b) for girth-5 half-arc-transitive members.
    Xiv {
        #[arg(long, default_value_t = 40)]
        nbound: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    GraphFile { path: String, source: GraphError },
    #[error("{path}: {source}")]
    PermsFile { path: String, source: PermError },
    #[error("unknown group `{0}`; expected aut, g1 or g2")]
    UnknownGroup(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Psl2(#[from] Psl2Error),
    #[error(transparent)]
    Hat(#[from] HatError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "E_IO",
            CliError::GraphFile { .. } | CliError::PermsFile { .. } => "E_PARSE",
            CliError::UnknownGroup(_) | CliError::Family(_) | CliError::Psl2(_) => "E_PARAM",
            CliError::Perm(_) => "E_GROUP",
            CliError::Hat(_) => "E_ACTION",
            CliError::Aut(_) => "E_AUT",
            CliError::Report(ReportError::NotTetravalent) => "E_NOT_TETRAVALENT",
            CliError::Report(ReportError::NotAnAction) => "E_ACTION",
            CliError::Report(ReportError::NotHalfArcTransitive(_)) => "E_NOT_HAT",
            CliError::Report(_) => "E_ASSERT",
            CliError::Verify(VerifyError::UnknownRow(_)) => "E_PARAM",
            CliError::Verify(_) => "E_VERIFY",
        }
    }
}

fn parse_arc(s: &str) -> Result<(usize, usize), String> {
    let (u, v) = s.split_once(',').ok_or_else(|| format!("expected `u,v`, got `{s}`"))?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    Ok((parse(u)?, parse(v)?))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    read_graph(&read(path)?).map_err(|source| CliError::GraphFile { path: path.display().to_string(), source })
}

fn load_group(path: &Path) -> Result<PermGroup, CliError> {
    let (degree, perms) =
        read_perms(&read(path)?).map_err(|source| CliError::PermsFile { path: path.display().to_string(), source })?;
    Ok(PermGroup::with_degree(degree, perms)?)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn emit_build(lab: &Labeled, perms: Option<&[Permutation]>, output: &Output) -> Result<(), CliError> {
    let graph_text = write_graph(&lab.graph);
    match &output.out {
        None => print!("{graph_text}"),
        Some(prefix) => {
            let with = |ext: &str| PathBuf::from(format!("{}.{ext}", prefix.display()));
            write(&with("graph"), &graph_text)?;
            let sidecar = serde_json::to_value(lab).expect("sidecar serializes");
            write(&with("json"), &json_text(&sidecar))?;
            if let Some(perms) = perms {
                write(&with("perms"), &write_perms(lab.graph.vertex_count(), perms))?;
            }
        }
    }
    Ok(())
}

fn build(family: Family) -> Result<(), CliError> {
    match family {
        Family::Xo { m, r, q, output } => {
            let p = XoParams::new(m, r, q)?;
            let lab = families::xo(p)?;
            emit_build(&lab, Some(&p.half_arc_group_generators()?), &output)
        }
        Family::Rw { n, a, r, output } => {
            let lab = families::rose_window(RoseWindowParams::new(n, a, r)?)?;
            emit_build(&lab, None, &output)
        }
        Family::R12 { group, output } => {
            let pkg = families::r12_special_package();
            let gens = match group.as_str() {
                "aut" => pkg.aut_generators(),
                "g1" => pkg.g1_generators(),
                "g2" => pkg.g2_generators(),
                other => return Err(CliError::UnknownGroup(other.into())),
            };
            emit_build(&pkg.graph, Some(&gens), &output)
        }
        Family::Psl2 { p, max_p, output } => {
            let cg = coset_graph_bounded(p, max_p)?;
            let n = cg.vertex_count();
            let lab = Labeled {
                graph: cg.graph.clone(),
                family: "psl2".into(),
                params: serde_json::json!({"p": p, "xi": cg.params.xi.value()}),
                labels: (0..n).map(|v| format!("H{:?}", cg.representative(v).matrix().entries())).collect(),
            };
            emit_build(&lab, Some(cg.group.generators()), &output)
        }
        Family::Xiv { m, n, r, t, p, a, q, b, output } => {
            let x = families::xiv(XivParams::new(m, n, r, t, p, a, q, b)?)?;
            emit_build(&x.labeled, None, &output)
        }
    }
}

fn finish_verify(rep: VerifyReport, out: Option<&Path>) -> Result<bool, CliError> {
    emit(&json_text(&rep.to_json()), out)?;
    Ok(rep.passed)
}

/// Returns `Ok(false)` when a verification ran but did not pass.
fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Build { family } => build(family).map(|_| true),
        Command::Analyze { graph, perms, orientation_seed, timing, out } => {
            let start = Instant::now();
            let g = load_graph(&graph)?;
            let grp = load_group(&perms)?;
            let a = analyze(&g, &grp, orientation_seed)?;
            let mut j = a.to_json();
            if timing {
                j["timing_ms"] = Value::from(start.elapsed().as_millis() as u64);
            }
            emit(&json_text(&j), out.as_deref())?;
            Ok(true)
        }
        Command::Aut { graph, out } => {
            let g = load_graph(&graph)?;
            let aut = automorphism_group(&g)?;
            let t = transitivity(&aut.group, &g)?;
            let kind = if t.arc_transitive {
                "arc-transitive"
            } else if t.half_arc_transitive {
                "half-arc-transitive"
            } else if t.vertex_transitive {
                "vertex-transitive"
            } else {
                "not vertex-transitive"
            };
            println!("order {}, {kind}", aut.order);
            let text = write_perms(g.vertex_count(), &aut.generators);
            emit(&text, out.as_deref())?;
            Ok(true)
        }
        Command::Canon { graph } => {
            let g = load_graph(&graph)?;
            println!("{}", automorphism_group(&g)?.certificate());
            Ok(true)
        }
        Command::ExportDot { graph, perms, orientation_seed, out } => {
            let g = load_graph(&graph)?;
            let text = match perms {
                None => write_dot(&g, None),
                Some(p) => {
                    let grp = load_group(&p)?;
                    let o = induced_orientation(&grp, &g, orientation_seed)?;
                    write_dot(&g, Some(&o.arc_list()))
                }
            };
            emit(&text, out.as_deref())?;
            Ok(true)
        }
        Command::Verify { what } => match what {
            VerifyCmd::Ta { m, bound, out } => finish_verify(verify::verify_ta(m, bound)?, out.as_deref()),
            VerifyCmd::Undirected { out } => finish_verify(verify::verify_undirected_classification()?, out.as_deref()),
            VerifyCmd::Table { row, out } => {
                finish_verify(verify::verify_table_row(&verify::table_row(&row)?)?, out.as_deref())
            }
            VerifyCmd::Psl2 { p, out } => finish_verify(verify::verify_psl2(p)?, out.as_deref()),
            VerifyCmd::Xiv { nbound, out } => finish_verify(verify::verify_xiv_nonexistence(nbound)?, out.as_deref()),
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(2)
        }
    }
}
