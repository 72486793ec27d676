use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use qiss::circuits::{grover_circuit, OracleOptions};
use qiss::gas::{
    convergence, fraction_at_or_below, optimal_rotations, run_many, write_convergence_csv, write_trace_csv,
    AnalyticBackend, GasParams, MeasurementBackend, StatevectorBackend,
};
use qiss::model::{brute_force, simulated_annealing, SaParams};
use qiss::report::{
    brute_force_summary, histogram_rows, lower_bound_report, sample_counts, truth_table_rows, write_anneal_csv,
    write_histogram_csv, write_truth_table_csv,
};
use qiss::resources::resource_report;
use qiss::ModelConfig;

#[derive(Debug, Parser)]
#[command(name = "qiss", version, about = "Grover adaptive search experiments for two-shop shift scheduling")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Model instance as flat JSON; defaults to the reference instance.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1000)]
    shots: u64,
    /// Grover rotations (grover, export-circuit) or the rotation budget (gas).
    #[arg(long, global = true)]
    rotations: Option<u64>,
    #[arg(long, global = true, default_value_t = 1)]
    runs: usize,
    /// Days of the reference instance (1, or 365 for anneal, when omitted).
    #[arg(long, global = true)]
    days: Option<usize>,
    /// Leave out the cost register and cost check.
    #[arg(long, global = true)]
    no_cost: bool,
    /// Statevector for grover, analytic for gas when omitted.
    #[arg(long, global = true, value_enum)]
    backend: Option<Backend>,
    #[arg(long, global = true, value_enum, default_value_t = Switch::On)]
    fuse_adders: Switch,
    /// Annealing iterations.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    iterations: u64,
    /// Output format of brute-force.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Truth table of all one-day schedules.
    Table4,
    /// Measurement histogram after a fixed number of rotations.
    Grover,
    /// Repeated adaptive searches: per-step trace and convergence summary.
    Gas,
    /// Exhaustive enumeration of the feasible set.
    BruteForce,
    /// Qubit and gate counts.
    Resources,
    /// Feasible schedules found by simulated annealing.
    Anneal,
    /// Volume window and cost lower bound.
    LowerBound,
    /// Full Grover circuit in the line-oriented text format.
    ExportCircuit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Statevector,
    Analytic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl Cli {
    fn model(&self, default_days: usize) -> Result<ModelConfig> {
        match &self.config {
            Some(path) => {
                let config = ModelConfig::load(path).with_context(|| format!("loading {}", path.display()))?;
                if let Some(days) = self.days {
                    ensure!(
                        days == config.n_days,
                        "--days {days} conflicts with n_days {} in the config",
                        config.n_days
                    );
                }
                Ok(config)
            }
            None => Ok(ModelConfig::reference(self.days.unwrap_or(default_days))),
        }
    }

    /// Cost register only when a cap is configured and not switched off.
    fn oracle_options(&self, config: &ModelConfig) -> OracleOptions {
        OracleOptions {
            with_cost: !self.no_cost && config.c_max.is_some(),
            fuse_adders: self.fuse_adders == Switch::On,
            ..Default::default()
        }
    }

    fn output(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => {
                Box::new(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
            }
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Table4 => table4(&cli),
        Command::Grover => grover(&cli),
        Command::Gas => gas(&cli),
        Command::BruteForce => brute(&cli),
        Command::Resources => resources(&cli),
        Command::Anneal => anneal(&cli),
        Command::LowerBound => lower_bound(&cli),
        Command::ExportCircuit => export_circuit(&cli),
    }
}

fn write_json<T: serde::Serialize>(cli: &Cli, value: &T) -> Result<()> {
    let mut out = cli.output()?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn table4(cli: &Cli) -> Result<()> {
    let rows = truth_table_rows(&cli.model(1)?)?;
    let mut out = cli.output()?;
    write_truth_table_csv(&rows, &mut out)?;
    out.flush()?;
    Ok(())
}

fn grover(cli: &Cli) -> Result<()> {
    let config = cli.model(1)?;
    let options = cli.oracle_options(&config);
    let threshold = if options.with_cost { config.c_max.expect("cost register needs a cap") } else { i64::MAX };
    let valid = brute_force(&config.clone().with_c_max(options.with_cost.then_some(threshold)))?;
    let n = valid.total_space_size;
    let j = match cli.rotations {
        Some(j) => j,
        None if valid.is_empty() || valid.len() as u64 == n => 0,
        None => optimal_rotations(valid.len() as u64, n)?,
    };

    let dist = match cli.backend.unwrap_or(Backend::Statevector) {
        Backend::Statevector => StatevectorBackend::new(&config)?.with_options(options).distribution(threshold, j)?,
        Backend::Analytic => {
            AnalyticBackend::new(&brute_force(&config.clone().with_c_max(None))?)?.distribution(threshold, j)?
        }
    };
    let counts = sample_counts(&dist, cli.shots, cli.seed)?;
    let rows = histogram_rows(&counts, &valid, config.n_days);
    let total: u64 = rows.iter().map(|r| r.count).sum();
    ensure!(total == cli.shots, "histogram holds {total} shots, expected {}", cli.shots);

    let valid_mass: f64 = valid.entries.iter().map(|(s, _)| dist[s.index() as usize]).sum();
    let valid_shots: u64 = rows.iter().filter(|r| r.is_valid).map(|r| r.count).sum();
    eprintln!(
        "rotations {j}: {} valid of {n}, valid probability {valid_mass:.6}, {valid_shots}/{} shots valid",
        valid.len(),
        cli.shots
    );
    let mut out = cli.output()?;
    write_histogram_csv(&rows, &mut out)?;
    out.flush()?;
    Ok(())
}

fn trace_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("gas");
    out.with_file_name(format!("{stem}_trace.csv"))
}

fn gas(cli: &Cli) -> Result<()> {
    if cli.no_cost {
        bail!("adaptive search needs the cost register; drop --no-cost");
    }
    ensure!(cli.runs > 0, "--runs must be positive");
    let config = cli.model(1)?.with_c_max(None);
    let mut params = GasParams::for_config(&config);
    params.seed = cli.seed;
    if let Some(r) = cli.rotations {
        params.stop_total_rotations = r;
    }
    let mut backend: Box<dyn MeasurementBackend> = match cli.backend.unwrap_or(Backend::Analytic) {
        Backend::Analytic => Box::new(AnalyticBackend::new(&brute_force(&config)?)?),
        Backend::Statevector => Box::new(StatevectorBackend::new(&config)?.with_options(OracleOptions {
            with_cost: true,
            fuse_adders: cli.fuse_adders == Switch::On,
            ..Default::default()
        })),
    };
    let records = run_many(&config, &params, cli.runs, backend.as_mut())?;
    let horizon = records.iter().map(|r| r.total_rotations()).max().unwrap_or(0);
    let points = convergence(&records, horizon);

    let min_cost = brute_force(&config)?.min_cost;
    if let Some(c) = min_cost {
        let at_budget = fraction_at_or_below(&records, params.stop_total_rotations, c);
        eprintln!(
            "{} runs: fraction at minimum cost {c} by rotation {}: {at_budget:.4}",
            cli.runs, params.stop_total_rotations
        );
    }

    let mut out = cli.output()?;
    write_convergence_csv(&points, &mut out)?;
    out.flush()?;
    if let Some(path) = &cli.out {
        let trace = trace_path(path);
        let file = File::create(&trace).with_context(|| format!("creating {}", trace.display()))?;
        let mut w = BufWriter::new(file);
        write_trace_csv(&records, &mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn brute(cli: &Cli) -> Result<()> {
    let config = cli.model(1)?;
    let set = brute_force(&config)?;
    match cli.format {
        Format::Json => write_json(cli, &brute_force_summary(&set, config.n_days)),
        Format::Csv => {
            let mut out = cli.output()?;
            set.write_csv(&mut out)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn resources(cli: &Cli) -> Result<()> {
    let config = cli.model(1)?;
    write_json(cli, &resource_report(&config, !cli.no_cost, cli.fuse_adders == Switch::On)?)
}

fn anneal(cli: &Cli) -> Result<()> {
    let config = cli.model(365)?;
    let params = SaParams { iterations: cli.iterations, seed: cli.seed, ..SaParams::default() };
    let found = simulated_annealing(&config, &params)?;
    eprintln!("{} feasible schedules", found.len());
    let mut out = cli.output()?;
    write_anneal_csv(&found, &mut out)?;
    out.flush()?;
    Ok(())
}

fn lower_bound(cli: &Cli) -> Result<()> {
    write_json(cli, &lower_bound_report(&cli.model(1)?))
}

fn export_circuit(cli: &Cli) -> Result<()> {
    let config = cli.model(1)?;
    let rotations = cli.rotations.unwrap_or(1) as usize;
    let g = grover_circuit(&config, rotations, &cli.oracle_options(&config))?;
    let mut out = cli.output()?;
    out.write_all(g.circuit.to_text().as_bytes())?;
    out.flush()?;
    Ok(())
}
