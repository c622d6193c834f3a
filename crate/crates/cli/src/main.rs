//! Command-line interface for exact spectral computations with matrix
//! convolution operators on lattices over fields of positive characteristic.
//!
//! Exit codes: 0 — a report was produced; 2 — the query has an empty answer
//! (`solve`/`descend` with zero kernel); 1 — any error.  Output is
//! deterministic byte-for-byte for fixed inputs; `--json` replaces the text
//! report with a single JSON document on stdout.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use latspec::algebra::PeriodicFunction;
use latspec::descent::{descend_kernel, gf_q_kernel_basis, DescentRequest};
use latspec::field::{parse_element, FieldElement};
use latspec::files::{
    parse_operator_file, parse_sublattice, render_element, render_operator_file,
    render_voltage_file, ParsedFile,
};
use latspec::fragment::{
    fragment_operator, max_abelian_cover, voltage_operator, FragmentationMap,
};
use latspec::matrix::{
    multipliers as operator_multipliers, count_multipliers, jordan_basis, periodic_solutions,
    spectral_decomposition, symbol_matrix, MatrixOperator,
};
use latspec::oracle::{build_quotient_matrix, generalized_nullity};
use latspec::{Sublattice, TorusPoint};

#[derive(Parser)]
#[command(
    name = "latspec",
    version,
    about = "Exact harmonic analysis of convolution operators on lattices in characteristic p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputOpts {
    /// Operator, voltage-graph, or fragmentation file
    file: PathBuf,
    /// Period sublattice: generators as rows `a,b;c,d`, or a diagonal `4,6`
    #[arg(long)]
    period: String,
    /// Use the Laplace form of a voltage graph (adjacency minus degree)
    #[arg(long)]
    laplace: bool,
    /// Emit a single JSON document instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Basis of elementary periodic solutions of A*f = 0
    Solve(InputOpts),
    /// Full spectral decomposition: every eigenvalue with its dimension
    Spectrum(InputOpts),
    /// Jordan block structure of every symbol
    Jordan(InputOpts),
    /// Characters of the period lattice where the symbol is singular
    Multipliers(InputOpts),
    /// Number of multipliers
    Count(InputOpts),
    /// Solutions with values in the rational subfield GF(q), by Frobenius traces
    Descend {
        #[command(flatten)]
        input: InputOpts,
        /// Target subfield order q (a power of the characteristic)
        #[arg(long = "target-q")]
        target_q: u128,
    },
    /// Fragment a scalar kernel along a sublattice into a matrix operator
    Fragment {
        /// Fragmentation file, or a 1×1 operator file combined with --sub
        file: PathBuf,
        /// Fragmentation sublattice (required for operator files)
        #[arg(long)]
        sub: Option<String>,
        /// Emit a single JSON document instead of text
        #[arg(long)]
        json: bool,
    },
    /// Maximal abelian cover of a finite graph, as a voltage graph
    Cover {
        /// Voltage-graph file of rank 0: one edge record per undirected edge
        file: PathBuf,
        /// Emit a single JSON document instead of text
        #[arg(long)]
        json: bool,
    },
    /// Compare the character method against the brute-force quotient matrix
    OracleCheck {
        #[command(flatten)]
        input: InputOpts,
        /// Also compare the generalized eigenspace dimension at this level
        #[arg(long)]
        level: Option<String>,
    },
}

enum Outcome {
    Report,
    Empty,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(Outcome::Report) => ExitCode::SUCCESS,
        Ok(Outcome::Empty) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load_file(path: &PathBuf) -> anyhow::Result<ParsedFile> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    Ok(parse_operator_file(&text, &name)?)
}

/// Loads any file kind as a matrix operator.
fn load_operator(path: &PathBuf, laplace: bool) -> anyhow::Result<MatrixOperator> {
    match load_file(path)? {
        ParsedFile::Operator(op) => {
            if laplace {
                bail!("--laplace applies only to voltage-graph files");
            }
            Ok(op)
        }
        ParsedFile::Voltage(vg) => Ok(voltage_operator(&vg, laplace)?),
        ParsedFile::Fragmentation(spec) => {
            if laplace {
                bail!("--laplace applies only to voltage-graph files");
            }
            let map = FragmentationMap::new(spec.sub);
            Ok(fragment_operator(&spec.scalar, &map)?)
        }
    }
}

/// Errors from parsing command-line literals carry no useful file
/// position; keep only the message.
fn flag_err(e: latspec::Error) -> anyhow::Error {
    match e {
        latspec::Error::Parse { msg, .. } => anyhow::anyhow!(msg),
        other => other.into(),
    }
}

fn parse_period(op: &MatrixOperator, text: &str) -> anyhow::Result<Sublattice> {
    parse_sublattice(text, op.rank()).map_err(flag_err)
}

fn render_vector(v: &[FieldElement]) -> String {
    v.iter().map(render_element).collect::<Vec<_>>().join(",")
}

fn render_point(z: &TorusPoint) -> String {
    format!("({})", render_vector(z.coords()))
}

fn json_vector(v: &[FieldElement]) -> serde_json::Value {
    json!(v.iter().map(render_element).collect::<Vec<_>>())
}

fn json_point(z: &TorusPoint) -> serde_json::Value {
    json!({
        "coords": json_vector(z.coords()),
        "order": z.order().to_string(),
    })
}

fn render_group_point(g: &[u64]) -> String {
    format!(
        "({})",
        g.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    )
}

fn function_lines(f: &PeriodicFunction) -> Vec<String> {
    f.iter()
        .map(|(g, vals)| format!("  {} -> ({})", render_group_point(g), render_vector(vals)))
        .collect()
}

fn json_function(f: &PeriodicFunction) -> serde_json::Value {
    json!(f
        .iter()
        .map(|(g, vals)| json!({
            "point": g,
            "value": json_vector(vals),
        }))
        .collect::<Vec<_>>())
}

fn run(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Solve(input) => {
            let op = load_operator(&input.file, input.laplace)?;
            let sub = parse_period(&op, &input.period)?;
            let sols = periodic_solutions(&op, &sub)?;
            if input.json {
                let doc = json!({
                    "command": "solve",
                    "kernel_dimension": sols.len(),
                    "solutions": sols.iter().map(|s| json!({
                        "character": json_point(&s.z),
                        "vector": json_vector(&s.u),
                    })).collect::<Vec<_>>(),
                });
                println!("{doc}");
            } else if sols.is_empty() {
                println!("kernel is zero");
            } else {
                println!("kernel dimension {}", sols.len());
                for (k, s) in sols.iter().enumerate() {
                    println!(
                        "solution {}: character {} of order {}, vector ({})",
                        k + 1,
                        render_point(&s.z),
                        s.z.order(),
                        render_vector(&s.u)
                    );
                }
            }
            if sols.is_empty() {
                Ok(Outcome::Empty)
            } else {
                Ok(Outcome::Report)
            }
        }
        Command::Spectrum(input) => {
            let op = load_operator(&input.file, input.laplace)?;
            let sub = parse_period(&op, &input.period)?;
            let decomp = spectral_decomposition(&op, &sub)?;
            let p = decomp.ambient.characteristic();
            let m = decomp.ambient.degree();
            if input.json {
                let doc = json!({
                    "command": "spectrum",
                    "ambient_field": {"p": p, "degree": m},
                    "total_dimension": decomp.total_dimension,
                    "levels": decomp.levels.iter().map(|(mu, data)| json!({
                        "level": render_element(mu),
                        "dimension": data.dimension,
                    })).collect::<Vec<_>>(),
                });
                println!("{doc}");
            } else {
                println!("ambient field GF({p}^{m})");
                println!("total dimension {}", decomp.total_dimension);
                for (mu, data) in &decomp.levels {
                    println!("level {}: dimension {}", render_element(mu), data.dimension);
                }
            }
            Ok(Outcome::Report)
        }
        Command::Jordan(input) => {
            let op = load_operator(&input.file, input.laplace)?;
            let sub = parse_period(&op, &input.period)?;
            let report = jordan_basis(&op, &sub)?;
            let p = report.ambient.characteristic();
            let m = report.ambient.degree();
            if input.json {
                let doc = json!({
                    "command": "jordan",
                    "ambient_field": {"p": p, "degree": m},
                    "points": report.points.iter().map(|pt| json!({
                        "character": json_point(&pt.z),
                        "blocks": pt.block_sizes().iter().map(|(mu, size)| json!({
                            "level": render_element(mu),
                            "size": size,
                        })).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                    "block_multiset": report.block_multiset().iter().map(|((mu, size), count)| json!({
                        "level": render_element(mu),
                        "size": size,
                        "count": count,
                    })).collect::<Vec<_>>(),
                });
                println!("{doc}");
            } else {
                println!("ambient field GF({p}^{m})");
                for pt in &report.points {
                    let blocks = pt
                        .block_sizes()
                        .iter()
                        .map(|(mu, size)| format!("(level {}, size {size})", render_element(mu)))
                        .collect::<Vec<_>>()
                        .join(" ");
                    println!("character {}: {}", render_point(&pt.z), blocks);
                }
                for ((mu, size), count) in report.block_multiset() {
                    println!(
                        "blocks of level {} and size {size}: {count}",
                        render_element(&mu)
                    );
                }
            }
            Ok(Outcome::Report)
        }
        Command::Multipliers(input) => {
            let op = load_operator(&input.file, input.laplace)?;
            let sub = parse_period(&op, &input.period)?;
            let points = operator_multipliers(&op, &sub)?;
            if input.json {
                let doc = json!({
                    "command": "multipliers",
                    "count": points.len(),
                    "multipliers": points.iter().map(json_point).collect::<Vec<_>>(),
                });
                println!("{doc}");
            } else if points.is_empty() {
                println!("no multipliers");
            } else {
                println!("{} multipliers", points.len());
                for z in &points {
                    println!("{} of order {}", render_point(z), z.order());
                }
            }
            Ok(Outcome::Report)
        }
        Command::Count(input) => {
            let op = load_operator(&input.file, input.laplace)?;
            let sub = parse_period(&op, &input.period)?;
            let count = count_multipliers(&op, &sub)?;
            if input.json {
                println!("{}", json!({"command": "count", "count": count}));
            } else {
                println!("{count}");
            }
            Ok(Outcome::Report)
        }
        Command::Descend { input, target_q } => {
            let op = load_operator(&input.file, input.laplace)?;
            let sub = parse_period(&op, &input.period)?;
            let req = DescentRequest::new(op, target_q, sub)?;
            let descended = descend_kernel(&req)?;
            let basis = gf_q_kernel_basis(&req)?;
            if input.json {
                let doc = json!({
                    "command": "descend",
                    "target_q": target_q.to_string(),
                    "kernel_dimension": basis.len(),
                    "descended_solution": descended.as_ref().map(json_function),
                    "basis": basis.iter().map(json_function).collect::<Vec<_>>(),
                });
                println!("{doc}");
            } else if let Some(f) = &descended {
                println!("descended solution with values in GF({target_q}):");
                for line in function_lines(f) {
                    println!("{line}");
                }
                println!("GF({target_q})-kernel dimension {}", basis.len());
            } else {
                println!("kernel is zero");
            }
            if descended.is_none() {
                Ok(Outcome::Empty)
            } else {
                Ok(Outcome::Report)
            }
        }
        Command::Fragment { file, sub, json } => {
            let (scalar, lattice) = match load_file(&file)? {
                ParsedFile::Fragmentation(spec) => {
                    if sub.is_some() {
                        bail!("--sub conflicts with a fragmentation file's own sublattice");
                    }
                    (spec.scalar, spec.sub)
                }
                ParsedFile::Operator(op) => {
                    if op.size() != 1 {
                        bail!("fragment needs a scalar (1×1) operator");
                    }
                    let spec = sub.ok_or_else(|| anyhow!("--sub is required for operator files"))?;
                    let lattice = parse_sublattice(&spec, op.rank())?;
                    (op.entry(0, 0).clone(), lattice)
                }
                ParsedFile::Voltage(_) => bail!("fragment does not apply to voltage graphs"),
            };
            let map = FragmentationMap::new(lattice);
            let fragmented = fragment_operator(&scalar, &map)?;
            let text = render_operator_file(&fragmented);
            if json {
                let doc = json!({
                    "command": "fragment",
                    "components": map.components(),
                    "operator_file": text,
                });
                println!("{doc}");
            } else {
                print!("{text}");
            }
            Ok(Outcome::Report)
        }
        Command::Cover { file, json } => {
            let ParsedFile::Voltage(vg) = load_file(&file)? else {
                bail!("cover needs a voltage-graph file of rank 0");
            };
            if vg.rank() != 0 {
                bail!("cover needs rank 0 input (a plain finite graph)");
            }
            let edges: Vec<(usize, usize)> =
                vg.arcs().iter().map(|a| (a.tail, a.head)).collect();
            let cover = max_abelian_cover(vg.vertices(), &edges, vg.field())?;
            let text = render_voltage_file(&cover);
            if json {
                let doc = json!({
                    "command": "cover",
                    "rank": cover.rank(),
                    "voltage_file": text,
                });
                println!("{doc}");
            } else {
                print!("{text}");
            }
            Ok(Outcome::Report)
        }
        Command::OracleCheck { input, level } => {
            let op = load_operator(&input.file, input.laplace)?;
            let sub = parse_period(&op, &input.period)?;
            let qm = build_quotient_matrix(&op, &sub)?;
            let sols = periodic_solutions(&op, &sub)?;
            if qm.nullity() != sols.len() {
                bail!(
                    "character method found kernel dimension {} but the oracle found {}",
                    sols.len(),
                    qm.nullity()
                );
            }
            let mut level_report = None;
            if let Some(lit) = &level {
                let decomp = spectral_decomposition(&op, &sub)?;
                // The literal is read in the ambient splitting field — the
                // same field `spectrum` and `jordan` print levels in — so a
                // reported level pastes back in verbatim.
                let mu = parse_element(&decomp.ambient, lit).map_err(flag_err)?;
                // Replay the spectral path's embeddings hop by hop: operator
                // field into the shared symbol field, then into the ambient
                // splitting field.  Embeddings between towers need not be
                // transitive, so the oracle matrix must take the same route.
                let chars = latspec::lattice::dual_subgroup(&sub, op.field().characteristic())?;
                let symbol_field = symbol_matrix(&op, &chars[0])?.field().clone();
                let matrix = qm
                    .matrix()
                    .embed_into(&symbol_field)?
                    .embed_into(&decomp.ambient)?;
                let oracle_dim = generalized_nullity(&matrix, &mu)?;
                let spectral_dim = decomp.dimension(&mu)?;
                if oracle_dim as u64 != spectral_dim {
                    bail!(
                        "at level {lit}: character method dimension {spectral_dim}, oracle {oracle_dim}"
                    );
                }
                level_report = Some((lit.clone(), oracle_dim));
            }
            if input.json {
                let doc = json!({
                    "command": "oracle-check",
                    "agree": true,
                    "kernel_dimension": sols.len(),
                    "level": level_report.as_ref().map(|(lit, dim)| json!({
                        "level": lit,
                        "dimension": dim,
                    })),
                });
                println!("{doc}");
            } else {
                println!("character method and oracle agree: dim {}", sols.len());
                if let Some((lit, dim)) = &level_report {
                    println!("generalized eigenspace at level {lit} agrees: dim {dim}");
                }
            }
            Ok(Outcome::Report)
        }
    }
}
