use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use annigraph::graph::vertex_cap_from_env;
use annigraph::harness::write_csv;
use annigraph::metdim::EXACT_VERTEX_CAP;
use annigraph::{
    dim_bounds, dim_report, distance_branch, is_resolving, parse_spec, spec_from_modulus, spec_grid, sweep, AgGraph,
    Case, ExportFormat, IdealVector, Oracle, ReportOptions, RingSpec, Verdict,
};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(name = "annigraph", version, about = "Annihilating-ideal graphs and their metric dimension")]
struct Cli {
    /// Maximum number of graph vertices (default: $ANNIGRAPH_VERTEX_CAP or 100000).
    #[arg(long, global = true)]
    vertex_cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct RingArg {
    /// Nilpotency orders, e.g. `2,1,3`.
    #[arg(long)]
    spec: Option<String>,
    /// Use Z/N.
    #[arg(long)]
    zn: Option<u64>,
}

impl RingArg {
    fn resolve(&self) -> Result<RingSpec> {
        Ok(match (&self.spec, self.zn) {
            (Some(s), _) => parse_spec(s)?,
            (None, Some(n)) => spec_from_modulus(n)?,
            (None, None) => unreachable!("clap requires one of --spec, --zn"),
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Orders, field count, case, vertex count and dimension bounds.
    Info {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        json: bool,
    },
    /// Exact metric dimension, constructed resolving set, certificates.
    Dim {
        #[command(flatten)]
        ring: RingArg,
        /// Run the exact solver.
        #[arg(long)]
        exact: bool,
        /// Build and certify the explicit resolving set.
        #[arg(long)]
        construct: bool,
        /// Print the representation table of the basis (implies --exact).
        #[arg(long)]
        certificate: bool,
        /// Distance source for the solver and certificates.
        #[arg(long, default_value = "closed", value_parser = ["closed", "bfs"])]
        oracle: String,
        /// Largest graph the exact solver will accept.
        #[arg(long, default_value_t = EXACT_VERTEX_CAP)]
        exact_cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check distances, constructions and dimension values over a grid of rings.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_factors: usize,
        #[arg(long, default_value_t = 3)]
        max_order: u32,
        #[arg(long, default_value_t = EXACT_VERTEX_CAP as u128)]
        max_vertices: u128,
        /// Keep every ordering of the orders instead of one per multiset.
        #[arg(long)]
        ordered: bool,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, default_value = "closed", value_parser = ["closed", "bfs"])]
        oracle: String,
        /// Fill the ms_build / ms_solve columns.
        #[arg(long)]
        timings: bool,
        /// CSV destination (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the graph.
    Graph {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, default_value = "dot", value_parser = ["dot", "csv", "json"])]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distance between two ideals, with the rule that decided it.
    Distance {
        #[command(flatten)]
        ring: RingArg,
        /// Exponent tuple of the first ideal, e.g. `0,1`.
        #[arg(long)]
        m: String,
        /// Exponent tuple of the second ideal.
        #[arg(long)]
        l: String,
        /// Also run BFS and report both values.
        #[arg(long)]
        bfs: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn bounds_text(spec: &RingSpec) -> String {
    let b = dim_bounds(spec);
    match b.exact {
        Some(e) => format!("exact dim {e}"),
        None => format!("bounds [{}, {}] (epsilon {})", b.lower, b.upper, b.epsilon),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let vertex_cap = match cli.vertex_cap {
        Some(c) => c,
        None => vertex_cap_from_env()?,
    };
    match cli.command {
        Command::Info { ring, json } => {
            let spec = ring.resolve()?;
            let b = dim_bounds(&spec);
            if json {
                let doc = json!({
                    "spec": spec,
                    "beta": b.beta,
                    "case": b.case,
                    "vertices": spec.vertex_count().to_string(),
                    "bounds": b,
                });
                println!("{doc}");
            } else {
                println!("orders:   {spec}");
                println!("beta:     {}", b.beta);
                println!("case:     {}", b.case);
                println!("|V|:      {}", spec.vertex_count());
                println!("dim:      {}", bounds_text(&spec));
            }
        }
        Command::Dim { ring, exact, construct, certificate, oracle, exact_cap, json } => {
            let spec = ring.resolve()?;
            let (exact, construct) = if !exact && !construct && !certificate { (true, true) } else { (exact || certificate, construct) };
            let opts = ReportOptions {
                exact,
                construct,
                check_distances: false,
                oracle: oracle.parse::<Oracle>()?,
                vertex_cap,
                exact_cap,
            };
            let (report, constructed_cert) = dim_report(&spec, &opts)?;
            let basis_cert = if certificate {
                let graph = AgGraph::build_with_cap(&spec, vertex_cap)?;
                Some(is_resolving(&graph, report.basis.as_deref().unwrap_or_default())?)
            } else {
                None
            };
            if json {
                let mut doc = serde_json::to_value(&report)?;
                doc["verdict"] = json!(report.verdict.to_string());
                if let Some(c) = &basis_cert {
                    doc["certificate"] = serde_json::to_value(c)?;
                }
                if certificate {
                    if let Some(c) = &constructed_cert {
                        doc["constructed_certificate"] = serde_json::to_value(c)?;
                    }
                }
                println!("{doc}");
            } else {
                let b = &report.bounds;
                println!("spec {}  case {}  |V|={}  |E|={}", spec, b.case, report.vertex_count, report.edge_count);
                println!("formula: {}", bounds_text(&spec));
                if let (Some(d), Some(basis)) = (report.exact_solver, &report.basis) {
                    println!("exact: {d}  basis {}", list(basis));
                }
                if let Some(r) = report.constructed_resolves {
                    println!("constructed: size {}, resolves {r}", report.constructed_size);
                }
                if let Some(c) = &basis_cert {
                    println!("certificate: resolves {}", c.resolves);
                    for (v, r) in &c.table {
                        println!("  {v}: {r}");
                    }
                }
                match b.case {
                    Case::General if report.verdict == Verdict::WithinBounds => {
                        println!("verdict: {} [{}, {}]", report.verdict, b.lower, b.upper)
                    }
                    _ => println!("verdict: {}", report.verdict),
                }
            }
            if report.verdict == Verdict::Mismatch {
                for p in report.problems() {
                    eprintln!("mismatch: {p}");
                }
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Verify { max_factors, max_order, max_vertices, ordered, threads, oracle, timings, out } => {
            if max_factors == 0 || max_order == 0 {
                bail!("--max-factors and --max-order must be at least 1");
            }
            let specs = spec_grid(max_factors, max_order, Some(max_vertices), ordered);
            let opts = ReportOptions {
                oracle: oracle.parse::<Oracle>()?,
                vertex_cap,
                exact_cap: usize::try_from(max_vertices).unwrap_or(usize::MAX),
                ..ReportOptions::default()
            };
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(t) = threads {
                pool = pool.num_threads(t);
            }
            let reports = pool.build()?.install(|| sweep(&specs, &opts))?;
            let mut w = output(out.as_ref())?;
            write_csv(&reports, timings, &mut w)?;
            w.flush()?;
            let bad: Vec<_> = reports.iter().filter(|r| r.verdict == Verdict::Mismatch).collect();
            eprintln!("{} specs checked, {} mismatches", reports.len(), bad.len());
            if !bad.is_empty() {
                for r in bad {
                    eprintln!("MISMATCH {}: {}", r.spec, r.problems().join("; "));
                }
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Graph { ring, format, out } => {
            let spec = ring.resolve()?;
            let graph = AgGraph::build_with_cap(&spec, vertex_cap)?;
            let mut w = output(out.as_ref())?;
            graph.export(format.parse::<ExportFormat>()?, &mut w)?;
            w.flush()?;
        }
        Command::Distance { ring, m, l, bfs } => {
            let spec = ring.resolve()?;
            let m: IdealVector = m.parse()?;
            let l: IdealVector = l.parse()?;
            let branch = distance_branch(&spec, &m, &l)?;
            println!("d({m}, {l}) = {}  branch {branch}", branch.distance());
            if bfs {
                let graph = AgGraph::build_with_cap(&spec, vertex_cap)?;
                println!("bfs: {}", graph.distance_bfs(&m, &l)?);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn list(vs: &[IdealVector]) -> String {
    let parts: Vec<String> = vs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}
