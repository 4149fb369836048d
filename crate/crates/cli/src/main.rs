use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use netprofiler::degreedist::{analyze_degrees, ccdf_table};
use netprofiler::ingest::{normalize, read_network, write_pajek, Normalized};
use netprofiler::pipeline::{emit_reports, network_seed, run_corpus, RunConfig};
use netprofiler::smallworld::omega_with;
use netprofiler::{giant_component, is_connected, synth, Graph, LatticeMetric, TransitivityMode};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "netprofiler", version, about = "Small-world and degree-distribution profiling of networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse every network file in a corpus directory and write the reports.
    Analyze {
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        opts: Options,
    },
    /// Degree-distribution analysis of one network file; JSON on stdout.
    Fit {
        file: PathBuf,
        /// Also include the empirical and fitted CCDF.
        #[arg(long)]
        ccdf: bool,
        #[command(flatten)]
        opts: Options,
    },
    /// ω analysis of one network file; JSON on stdout.
    Omega {
        file: PathBuf,
        #[command(flatten)]
        opts: Options,
    },
    /// Generate a synthetic graph as Pajek text.
    Synth {
        #[command(subcommand)]
        model: Model,
        /// Output file; stdout when omitted.
        #[arg(long, short, global = true)]
        out: Option<PathBuf>,
        #[arg(long, global = true, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Model {
    /// Erdős–Rényi G(n, p); give either --p or --mean-degree.
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "mean_degree")]
        p: Option<f64>,
        #[arg(long)]
        mean_degree: Option<f64>,
    },
    /// Watts–Strogatz rewired ring.
    Ws {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        beta: f64,
    },
    /// Barabási–Albert preferential attachment from a seed clique.
    Ba {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m0: usize,
        #[arg(long)]
        m: usize,
    },
    /// Ring lattice, each node joined to its k nearest neighbours.
    Ring {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Rectangular grid.
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
}

/// Flags mirror the JSON config file; any flag given overrides the file.
#[derive(Args, Default)]
struct Options {
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (0 = one per core).
    #[arg(long)]
    workers: Option<usize>,
    /// Swap attempts per edge for both random and lattice references.
    #[arg(long)]
    swaps_per_edge: Option<u32>,
    #[arg(long)]
    realizations: Option<usize>,
    #[arg(long)]
    bootstrap: Option<usize>,
    #[arg(long)]
    gof_threshold: Option<f64>,
    #[arg(long)]
    significance: Option<f64>,
    #[arg(long)]
    omega_band: Option<f64>,
    #[arg(long)]
    degenerate_threshold: Option<f64>,
    #[arg(long)]
    size_cap_nodes: Option<usize>,
    #[arg(long)]
    size_cap_edges: Option<usize>,
    /// global | mean-local
    #[arg(long)]
    transitivity_mode: Option<TransitivityMode>,
    /// linear | circular
    #[arg(long)]
    lattice_metric: Option<LatticeMetric>,
    /// Use the raw lattice-reference transitivity even when it falls below the network's own.
    #[arg(long)]
    no_lattice_clamp: bool,
    /// Allow swaps that disconnect the graph.
    #[arg(long)]
    no_connectivity_guard: bool,
}

impl Options {
    fn resolve(&self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => RunConfig::from_json_file(p)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($field:ident),*) => {$( if let Some(v) = self.$field { c.$field = v; } )*};
        }
        set!(
            seed,
            workers,
            realizations,
            bootstrap,
            gof_threshold,
            significance,
            omega_band,
            degenerate_threshold,
            size_cap_nodes,
            size_cap_edges,
            transitivity_mode,
            lattice_metric
        );
        if self.swaps_per_edge.is_some() {
            c.swaps_per_edge = self.swaps_per_edge;
        }
        if self.no_lattice_clamp {
            c.clamp_lattice = false;
        }
        if self.no_connectivity_guard {
            c.connectivity_guard = false;
        }
        c.validate()?;
        Ok(c)
    }
}

fn load(file: &Path) -> Result<(Normalized, Graph, String)> {
    let raw = read_network(file).with_context(|| format!("reading {}", file.display()))?;
    let net = normalize(&raw)?;
    let g = if is_connected(&net.graph) {
        net.graph.clone()
    } else {
        giant_component(&net.graph).0
    };
    let id = file.file_stem().unwrap_or_default().to_string_lossy().into_owned();
    Ok((net, g, id))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze { corpus, out, opts } => {
            let mut config = opts.resolve()?;
            if let Some(c) = corpus {
                config.corpus = c;
            }
            if let Some(o) = out {
                config.out = o;
            }
            let report = run_corpus(&config)?;
            emit_reports(&report, &config.out)?;
            let done = report.completed();
            for r in report.records.iter().filter(|r| !r.skip_reasons.is_empty()) {
                for s in &r.skip_reasons {
                    eprintln!("{}: {} skipped: {}", r.id, s.stage, s.reason);
                }
            }
            eprintln!(
                "{done} of {} networks completed; reports in {}",
                report.records.len(),
                config.out.display()
            );
            Ok(if done > 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Fit { file, ccdf, opts } => {
            let config = opts.resolve()?;
            let (net, g, id) = load(&file)?;
            let degrees: Vec<u64> = g.degree_sequence().as_slice().to_vec();
            let report = analyze_degrees(&degrees, &config.degree_config(network_seed(config.seed, &id)))?;
            let mut value = serde_json::json!({
                "id": id,
                "n": g.n(),
                "m": g.m(),
                "preprocess": net.log.summary(),
                "degrees": report,
            });
            if ccdf {
                value["ccdf"] = serde_json::to_value(ccdf_table(&degrees, &report.fit))?;
            }
            println!("{}", serde_json::to_string_pretty(&value)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Omega { file, opts } => {
            let config = opts.resolve()?;
            let (net, g, id) = load(&file)?;
            let report = omega_with(&g, &config.omega_config(network_seed(config.seed, &id)))?;
            let value = serde_json::json!({
                "id": id,
                "preprocess": net.log.summary(),
                "giant_component": g.n() != net.graph.n(),
                "small_world": report,
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Synth { model, out, seed } => {
            let g = match model {
                Model::Er { n, p, mean_degree } => match (p, mean_degree) {
                    (Some(p), _) => synth::erdos_renyi(n, p, seed)?,
                    (None, Some(k)) => synth::erdos_renyi_mean_degree(n, k, seed)?,
                    (None, None) => bail!("er needs --p or --mean-degree"),
                },
                Model::Ws { n, k, beta } => synth::watts_strogatz(n, k, beta, seed)?,
                Model::Ba { n, m0, m } => synth::barabasi_albert(n, m0, m, seed)?,
                Model::Ring { n, k } => synth::ring_lattice(n, k)?,
                Model::Grid { rows, cols } => synth::grid_2d(rows, cols)?,
            };
            let text = write_pajek(&g, None);
            match out {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
