//! `ferrers`: command-line front end for the ferrers library.
//!
//! Exit codes: 0 success, 2 domain error, 3 resource guard, 4 a computed
//! value disagrees with a reference table, 64 malformed arguments.

mod tables;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ferrers::codes::{gabidulin_mrd, gn_construction, is_mfd_with, min_rank_distance_with, punct_inclusion_search_with, SearchOutcome};
use ferrers::exec::{self, RunOptions};
use ferrers::irreducibility::{enumerate_irreducible_with, is_irreducible_local, is_n_irreducible_local, IrreducibilityVerdict};
use ferrers::polytope::{self, build_pd_ab, psi_diagram};
use ferrers::young_digraph::build_with;
use ferrers::{DiagramPair, FerrersDiagram};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "ferrers", version, about = "Ferrers diagrams, irreducible pairs, their polytopes and rank-metric codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; each subcommand supports a subset.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Lift every resource guard.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// nu_j profile and nu_min of a diagram.
    Nu {
        #[arg(long, allow_hyphen_values = true)]
        diagram: String,
        #[arg(long)]
        d: usize,
    },
    /// Irreducibility verdict for one pair, or all irreducibles up to order n.
    Irreducible {
        /// Column heights; "" or "-" is the empty diagram.
        #[arg(long, allow_hyphen_values = true)]
        diagram: Option<String>,
        #[arg(long)]
        d: usize,
        /// Test inside [n] x [n]; without --diagram, enumerate up to order n.
        #[arg(long)]
        n: Option<usize>,
    },
    /// The d-Young digraph on diagrams inside [n] x [n].
    Digraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Keep only diagrams containing the triangle T_d.
        #[arg(long)]
        restricted: bool,
    },
    /// The classifying polytope P_d, or its slice P_d^(a,b).
    Polytope {
        #[arg(long)]
        d: usize,
        #[arg(long, requires = "b")]
        a: Option<usize>,
        #[arg(long, requires = "a")]
        b: Option<usize>,
        /// Include the integer points.
        #[arg(long)]
        emit_points: bool,
        /// With --emit-points, also list the irreducible diagrams psi(d, mu, point).
        #[arg(long)]
        mu: Option<usize>,
    },
    /// Build a code and verify its distance by enumeration.
    Codes {
        #[arg(long, value_enum, default_value_t = Construction::Gabidulin)]
        construction: Construction,
        /// Matrix size n (n x n, or a x b with --a/--b).
        #[arg(long)]
        n: usize,
        /// Minimum distance (Gabidulin only; G_n uses 3).
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
    },
    /// Search for an MRD code whose row puncturing extends to an MRD code.
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Reference tables as CSV, checked against stored values.
    Tables {
        #[arg(long, value_enum)]
        which: tables::Which,
        /// A single row; without it, every stored row.
        #[arg(long)]
        d: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Construction {
    Gabidulin,
    Gn,
}

/// Arguments that parse but do not fit together.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// A computed value differs from its reference.
#[derive(Debug)]
pub struct Mismatch(pub String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "reference mismatch: {}", self.0)
    }
}

impl std::error::Error for Mismatch {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = format.unwrap_or(default);
    if !allowed.contains(&f) {
        return Err(usage(format!("--format {f:?} is not available here; use one of {allowed:?}").to_lowercase()));
    }
    Ok(f)
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string(v)? + "\n")
}

fn parse_diagram(s: &str) -> Result<FerrersDiagram> {
    Ok(s.parse::<FerrersDiagram>()?)
}

#[derive(Serialize)]
struct NuOut {
    nu: Vec<usize>,
    nu_min: usize,
}

#[derive(Serialize)]
struct VerdictOut {
    diagram: FerrersDiagram,
    d: usize,
    #[serde(flatten)]
    verdict: IrreducibilityVerdict,
}

#[derive(Serialize)]
struct EnumerationOut {
    d: usize,
    max_order: usize,
    irreducible: Vec<FerrersDiagram>,
}

#[derive(Serialize)]
struct SliceOut {
    d: usize,
    a: usize,
    b: usize,
    /// H-representations; more than one when the slice is a union.
    members: Vec<Vec<String>>,
    n_integer_points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    integer_points: Option<Vec<Vec<i64>>>,
}

#[derive(Serialize)]
struct CodeOut {
    construction: Construction,
    support: FerrersDiagram,
    q: u32,
    d: usize,
    k: usize,
    nu_min: usize,
    distance: Option<usize>,
    is_mfd: bool,
    seconds: f64,
}

fn csv_rows<I, R>(rows: I) -> Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn point_text(p: &[i64]) -> String {
    p.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn run(cli: &Cli, opts: RunOptions) -> Result<String> {
    use Format::*;
    match &cli.command {
        Command::Nu { diagram, d } => {
            let pair = DiagramPair::new(parse_diagram(diagram)?, *d)?;
            let out = NuOut { nu: pair.nu_profile(), nu_min: pair.nu_min().value };
            match pick(cli.format, Json, &[Json, Text])? {
                Text => Ok(format!("nu = ({}), nu_min = {}\n", point_text(&to_i64(&out.nu)), out.nu_min)),
                _ => json(&out),
            }
        }
        Command::Irreducible { diagram: Some(diagram), d, n } => {
            let pair = DiagramPair::new(parse_diagram(diagram)?, *d)?;
            let verdict = match n {
                Some(n) => is_n_irreducible_local(&pair, *n)?,
                None => is_irreducible_local(&pair),
            };
            let out = VerdictOut { diagram: pair.diagram, d: *d, verdict };
            match pick(cli.format, Json, &[Json, Text])? {
                Text => Ok(format!(
                    "({}, {}) is {}\n",
                    out.diagram,
                    out.d,
                    if out.verdict.irreducible { "irreducible" } else { "reducible" }
                )),
                _ => json(&out),
            }
        }
        Command::Irreducible { diagram: None, d, n } => {
            let Some(n) = n else {
                return Err(usage("irreducible needs --diagram or --n"));
            };
            let list = enumerate_irreducible_with(*d, *n, opts)?;
            match pick(cli.format, Json, &[Json, Csv, Text])? {
                Json => json(&EnumerationOut { d: *d, max_order: *n, irreducible: list }),
                Csv => csv_rows(std::iter::once("diagram".to_string()).chain(list.iter().map(|dg| dg.to_string())).map(|c| [c])),
                _ => Ok(list.iter().map(|dg| format!("{dg}\n")).collect()),
            }
        }
        Command::Digraph { n, d, restricted } => {
            let g = build_with(*n, *d, *restricted, opts)?;
            match pick(cli.format, Json, &[Json, Dot, Csv])? {
                Dot => Ok(g.to_dot()),
                Csv => csv_rows(
                    std::iter::once(["from".to_string(), "to".to_string()])
                        .chain(g.edges().into_iter().map(|(a, b)| [g.vertex(a).to_string(), g.vertex(b).to_string()])),
                ),
                _ => json(&g.report()),
            }
        }
        Command::Polytope { d, a: Some(a), b: Some(b), emit_points, mu: _ } => {
            let set = build_pd_ab(*d, *a, *b)?;
            let points = set.integer_points()?;
            let out = SliceOut {
                d: *d,
                a: *a,
                b: *b,
                members: set.members().iter().map(|p| p.hrep_strings()).collect(),
                n_integer_points: points.len(),
                integer_points: emit_points.then_some(points),
            };
            match pick(cli.format, Json, &[Json, Csv])? {
                Csv => csv_rows(out.integer_points.unwrap_or_default().iter().map(|p| p.iter().map(i64::to_string).collect::<Vec<_>>())),
                _ => json(&out),
            }
        }
        Command::Polytope { d, emit_points, mu, .. } => {
            let rep = polytope::report(*d, *emit_points || mu.is_some(), opts)?;
            match pick(cli.format, Json, &[Json, Csv])? {
                Csv => {
                    let pts = rep.integer_points.clone().unwrap_or_default();
                    let mut rows = Vec::new();
                    for p in &pts {
                        let mut row: Vec<String> = p.iter().map(i64::to_string).collect();
                        if let Some(mu) = mu {
                            row.push(psi_diagram(*d, *mu, p)?.to_string());
                        }
                        rows.push(row);
                    }
                    csv_rows(rows)
                }
                _ => match mu {
                    Some(mu) => {
                        let diagrams = rep
                            .integer_points
                            .iter()
                            .flatten()
                            .map(|p| psi_diagram(*d, *mu, p))
                            .collect::<ferrers::Result<Vec<_>>>()?;
                        let mut v = serde_json::to_value(&rep)?;
                        v["mu"] = (*mu).into();
                        v["diagrams"] = serde_json::to_value(diagrams)?;
                        if !emit_points {
                            v.as_object_mut().expect("report is an object").remove("integer_points");
                        }
                        json(&v)
                    }
                    None => json(&rep),
                },
            }
        }
        Command::Codes { construction, n, d, q, a, b } => {
            let t = Instant::now();
            let (code, d) = match construction {
                Construction::Gabidulin => (gabidulin_mrd(a.unwrap_or(*n), b.unwrap_or(*n), *d, *q)?, *d),
                Construction::Gn => (gn_construction(*n, *q)?, 3),
            };
            let distance = min_rank_distance_with(&code, opts)?;
            let is_mfd = is_mfd_with(&code, d, opts)?;
            let out = CodeOut {
                construction: *construction,
                support: code.support().clone(),
                q: *q,
                d,
                k: code.dim(),
                nu_min: code.support().nu_min_value(d),
                distance,
                is_mfd,
                seconds: t.elapsed().as_secs_f64(),
            };
            match pick(cli.format, Json, &[Json, Text])? {
                Text => Ok(format!(
                    "{:?} on ({}) over GF({}): k={} nu_min={} distance={} mfd={}\n",
                    out.construction,
                    out.support,
                    out.q,
                    out.k,
                    out.nu_min,
                    out.distance.map_or("inf".to_string(), |v| v.to_string()),
                    out.is_mfd
                )),
                _ => json(&out),
            }
        }
        Command::Conjecture { n, d, q } => {
            let rep = punct_inclusion_search_with(*n, *d, *q, opts)?;
            if let SearchOutcome::Found(w) = &rep.outcome {
                if !(w.mfd_verified && w.recovered_mrd && w.recovered_extension) {
                    bail!(Mismatch("the witness does not cross-validate".into()));
                }
            }
            match pick(cli.format, Json, &[Json, Text])? {
                Text => Ok(match &rep.outcome {
                    SearchOutcome::Found(w) => format!(
                        "found: puncturing along normal {:?} extends; E code verified MFD ({} bases, {} checks)\n",
                        w.normal, rep.bases_tried, rep.candidates_checked
                    ),
                    SearchOutcome::Exhausted => format!(
                        "exhausted: no extension over {} bases ({} checks)\n",
                        rep.bases_tried, rep.candidates_checked
                    ),
                }),
                _ => json(&rep),
            }
        }
        Command::Tables { which, d } => {
            pick(cli.format, Csv, &[Csv])?;
            tables::render(*which, *d, opts)
        }
    }
}

fn to_i64(v: &[usize]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<Usage>() {
        return 64;
    }
    if e.is::<Mismatch>() {
        return 4;
    }
    match e.downcast_ref::<ferrers::Error>() {
        Some(ferrers::Error::Resource(_)) => 3,
        Some(ferrers::Error::Invariant(_)) => 4,
        _ => 2,
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            let mut f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            f.write_all(text.as_bytes())?;
        }
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    if let Err(e) = exec::init_from_env() {
        eprintln!("error: {e}");
        return ExitCode::from(64);
    }
    let mut opts = RunOptions::default();
    if cli.force {
        eprintln!("warning: --force lifts every resource guard; this run may exhaust time or memory");
        opts = opts.forced();
    }
    match run(&cli, opts).and_then(|text| emit(cli.out.as_ref(), &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
