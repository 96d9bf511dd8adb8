use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hochgraph::io::{parse_digraph, parse_weighted, write_weighted};
use hochgraph::persistence::curves_svg;
use hochgraph::*;

#[derive(Parser)]
#[command(
    name = "hochgraph",
    version,
    about = "Persistent Hochschild homology of digraphs"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "HOCHGRAPH_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Er,
    Necklace,
    Cycle,
    Linear,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Npath,
    Qdigraph,
    Qgraph,
}

#[derive(Subcommand)]
enum Command {
    /// Write a weighted edge list for a generated digraph.
    Generate {
        model: Model,
        #[arg(long)]
        n: usize,
        /// Edge probability (er only).
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// HH_0, HH_1, path sum and characteristic of an acyclic digraph.
    Hh {
        input: PathBuf,
        #[arg(long, default_value = "per_component", value_parser = parse_mode)]
        mode: HhMode,
    },
    /// Build a connectivity digraph.
    Connectivity {
        input: PathBuf,
        #[arg(long)]
        kind: Kind,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 2)]
        j: usize,
        /// Flag complex dimension cap (default q + 2).
        #[arg(long)]
        max_dim: Option<usize>,
        /// n-path digraph with i <= j instead of i < j.
        #[arg(long)]
        relaxed: bool,
        /// Print the directed flag complex instead.
        #[arg(long)]
        dump_complex: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Characteristic curves over the edge-weight filtration.
    Pipeline {
        input: PathBuf,
        /// identity, npath:N, npath:N:relaxed or qdigraph:q:i:j:max_dim.
        #[arg(long = "conn", default_value = "identity", value_parser = parse_spec)]
        conns: Vec<ConnectivitySpec>,
        #[arg(long, default_value = "per_component", value_parser = parse_mode)]
        mode: HhMode,
        /// Count simple cycles of each connectivity digraph, failing above this many.
        #[arg(long)]
        cycles_cap: Option<u64>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Persistence diagram of the filtered connectivity digraph.
    Diagram {
        input: PathBuf,
        #[arg(long = "conn", default_value = "identity", value_parser = parse_spec)]
        conn: ConnectivitySpec,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
        degree: u8,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Bottleneck distance between two diagram CSV files.
    Bottleneck { first: PathBuf, second: PathBuf },
    /// F2 Betti numbers of the order complex of the condensed q-digraph.
    Qhomotopy {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 2)]
        j: usize,
        #[arg(long)]
        max_dim: Option<usize>,
    },
}

fn parse_mode(s: &str) -> std::result::Result<HhMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_spec(s: &str) -> std::result::Result<ConnectivitySpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `curves.csv` with spec `npath:1` becomes `curves.npath_1.csv`.
fn per_spec_path(base: &Path, spec: &ConnectivitySpec) -> PathBuf {
    let stem = base
        .file_stem()
        .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    let tag = spec.to_string().replace(':', "_");
    let name = match base.extension() {
        Some(ext) => format!("{stem}.{tag}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{tag}"),
    };
    base.with_file_name(name)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Generate {
            model,
            n,
            p,
            seed,
            out,
        } => {
            let w = match model {
                Model::Er => erdos_renyi_weighted(n, p, Seed(seed))?,
                Model::Necklace => necklace_weighted(n, Seed(seed))?,
                Model::Cycle => WeightedDigraph::constant(&cycle_digraph(n)?, 1.0)?,
                Model::Linear => WeightedDigraph::constant(&linear_digraph(n), 1.0)?,
            };
            emit(out.as_deref(), &write_weighted(&w))
        }
        Command::Hh { input, mode } => {
            let g = parse_digraph(&read(&input)?)?;
            let hh = hh_dimensions(&g, mode)?;
            println!("{}", hh.record());
            Ok(())
        }
        Command::Connectivity {
            input,
            kind,
            n,
            q,
            i,
            j,
            max_dim,
            relaxed,
            dump_complex,
            out,
        } => {
            let g = parse_digraph(&read(&input)?)?;
            let max_dim = max_dim.unwrap_or(q + 2);
            if dump_complex {
                let top = match kind {
                    Kind::Npath => n,
                    _ => max_dim,
                };
                return emit(out.as_deref(), &directed_flag_complex(&g, top)?.dump());
            }
            let c = match kind {
                Kind::Npath => n_path_digraph(&g, n, relaxed)?,
                Kind::Qdigraph => q_digraph(&g, q, i, j, max_dim)?,
                Kind::Qgraph => q_graph(&g, q, max_dim)?,
            };
            emit(out.as_deref(), &c.to_text())
        }
        Command::Pipeline {
            input,
            conns,
            mode,
            cycles_cap,
            csv,
            svg,
        } => {
            let w = parse_weighted(&read(&input)?)?;
            let curves = conns
                .iter()
                .map(|&spec| characteristic_pipeline(&w, spec, mode, cycles_cap))
                .collect::<Result<Vec<_>>>()?;
            match (&csv, curves.as_slice()) {
                (Some(path), [only]) => emit(Some(path), &only.to_csv())?,
                (Some(path), many) => {
                    for c in many {
                        emit(Some(&per_spec_path(path, &c.spec)), &c.to_csv())?;
                    }
                }
                (None, [only]) => emit(None, &only.to_csv())?,
                (None, many) => {
                    for c in many {
                        emit(None, &format!("# {}\n{}", c.spec, c.to_csv()))?;
                    }
                }
            }
            if let Some(path) = svg {
                emit(Some(&path), &curves_svg(&curves))?;
            }
            Ok(())
        }
        Command::Diagram {
            input,
            conn,
            degree,
            csv,
        } => {
            let w = parse_weighted(&read(&input)?)?;
            let degree = Degree::try_from(degree)?;
            let table = persistent_betti(&w, conn, degree)?;
            let d = persistence_diagram(&table)?;
            emit(csv.as_deref(), &d.to_csv())
        }
        Command::Bottleneck { first, second } => {
            let a = PersistenceDiagram::from_csv(&read(&first)?)?;
            let b = PersistenceDiagram::from_csv(&read(&second)?)?;
            println!("{}", bottleneck_distance(&a, &b));
            Ok(())
        }
        Command::Qhomotopy {
            input,
            q,
            i,
            j,
            max_dim,
        } => {
            let g = parse_digraph(&read(&input)?)?;
            let (betti, _) = q_homotopy_betti(&g, q, i, j, max_dim.unwrap_or(q + 2))?;
            let b = |k: usize| betti.get(k).copied().unwrap_or(0);
            println!("beta0={} beta1={}", b(0), b(1));
            Ok(())
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotAcyclic { .. } | Error::NotAcyclicAtStage { .. } => 3,
        Error::CycleCapExceeded(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("hochgraph: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("hochgraph: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Library(e)) => {
            eprintln!("hochgraph: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
