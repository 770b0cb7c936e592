use chroma_mst::config::{ExperimentConfig, LunarModeName, PolicyName, Sampler, TopologyName};
use chroma_mst::formats::{read_points, write_cells, write_diagrams, write_events, write_points, FormatError};
use chroma_mst::sampling::{coloring_from, poisson_from, rng, uniform_from};
use chroma_mst::sweep::{run_sweep, write_outputs, SweepError};
use chroma_mst::trial::{evaluate, filtered};
use chroma_mst::analytic;
use chroma_mst_core::lunar::{lunar_emst, relative1_norm};
use chroma_mst_core::persistence::{emst, h0_diagram, h1_diagram};
use chroma_mst_core::Point2;
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "chroma-mst", version, about = "Chromatic persistence 1-norms and lunar spanning trees of random point sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a colored sample and write it as CSV.
    Sample(Instance),
    /// Degree-0 and degree-1 persistence of one point set.
    Persist(Instance),
    /// Lunar spanning tree of a 2-colored point set.
    Lunar(Instance),
    /// All eleven norms of one colored sample.
    Sixpack(Instance),
    /// Monte Carlo sweep with √n fits.
    Estimate(Estimate),
    /// Analytic constants and bounds as JSON.
    Analytic,
}

#[derive(Args)]
struct Instance {
    /// Number of points (intensity with the poisson sampler).
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value = "square")]
    topology: TopologyName,
    #[arg(long, value_enum, default_value = "uniform")]
    sampler: Sampler,
    #[arg(long, value_enum, default_value = "pruned")]
    lunar_mode: LunarModeName,
    #[arg(long, default_value_t = 0.5)]
    color_probability: f64,
    /// Points CSV (`x,y[,color]`) to use instead of a sample.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Directory for the CSV outputs.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Estimate {
    /// Sizes, comma separated or repeated.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Restrict to one topology; both by default.
    #[arg(long, value_enum)]
    topology: Option<TopologyName>,
    #[arg(long, value_enum)]
    sampler: Option<Sampler>,
    #[arg(long, value_enum)]
    lunar_mode: Option<LunarModeName>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON experiment config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// n in {500, 1000, 2000}, 20 trials, pruned lunar mode.
    #[arg(long)]
    fast: bool,
    /// Record wall-clock time per trial (outputs then differ between runs).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    no_plots: bool,
    /// Fail on a negative derived norm instead of warning.
    #[arg(long)]
    strict: bool,
}

#[derive(Debug)]
enum AppError {
    Usage(String),
    Numeric(String),
    Io(String),
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            AppError::Usage(_) => 1,
            AppError::Numeric(_) => 2,
            AppError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Usage(m) | AppError::Numeric(m) | AppError::Io(m) => m,
        }
    }
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> AppError {
    AppError::Io(format!("{}: {e}", path.display()))
}

fn numeric(e: impl std::fmt::Display) -> AppError {
    AppError::Numeric(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<(), AppError> {
    match command {
        Command::Sample(a) => sample(&a),
        Command::Persist(a) => persist(&a),
        Command::Lunar(a) => lunar(&a),
        Command::Sixpack(a) => sixpack(&a),
        Command::Estimate(a) => estimate(&a),
        Command::Analytic => {
            let table = analytic::table().map_err(numeric)?;
            print_json(&table)
        }
    }
}

fn print_json(v: &serde_json::Value) -> Result<(), AppError> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)
        .map_err(|e| AppError::Io(e.to_string()))
        .and_then(|_| writeln!(out).map_err(|e| AppError::Io(e.to_string())))
}

/// The colored sample an instance command works on.
fn points_of(a: &Instance) -> Result<(Vec<Point2>, Vec<Point2>), AppError> {
    if let Some(path) = &a.input {
        let file = File::open(path).map_err(|e| io_error(path, e))?;
        return read_points(file).map_err(|e| io_error(path, e));
    }
    let p = a.color_probability;
    if !(p > 0.0 && p < 1.0) {
        return Err(AppError::Usage(format!("color probability {p} must lie strictly between 0 and 1")));
    }
    if a.sampler == Sampler::Poisson && a.n == 0 {
        return Err(AppError::Usage("the poisson intensity must be positive".into()));
    }
    let mut r = rng(a.seed);
    let pts = match a.sampler {
        Sampler::Uniform => uniform_from(&mut r, a.n),
        Sampler::Poisson => poisson_from(&mut r, a.n as f64),
    };
    Ok(coloring_from(&mut r, &pts, p))
}

fn out_file(dir: &Path, name: &str) -> Result<BufWriter<File>, AppError> {
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    let path = dir.join(name);
    File::create(&path).map(BufWriter::new).map_err(|e| io_error(&path, e))
}

fn format_error(path: &Path, e: FormatError) -> AppError {
    io_error(path, e)
}

fn sample(a: &Instance) -> Result<(), AppError> {
    let (a0, a1) = points_of(a)?;
    match &a.out {
        Some(dir) => {
            let w = out_file(dir, "points.csv")?;
            write_points(w, &a0, &a1).map_err(|e| format_error(&dir.join("points.csv"), e))
        }
        None => write_points(io::stdout().lock(), &a0, &a1).map_err(|e| AppError::Io(e.to_string())),
    }
}

fn persist(a: &Instance) -> Result<(), AppError> {
    let (a0, a1) = points_of(a)?;
    let all: Vec<Point2> = a0.into_iter().chain(a1).collect();
    let fm = filtered(&all, a.topology.topology(), "the point set").map_err(numeric)?;
    let h0 = h0_diagram(&fm);
    let h1 = h1_diagram(&fm);
    if let Some(dir) = &a.out {
        write_diagrams(out_file(dir, "diagram.csv")?, &fm).map_err(|e| format_error(&dir.join("diagram.csv"), e))?;
        write_cells(out_file(dir, "cells.csv")?, &fm).map_err(|e| format_error(&dir.join("cells.csv"), e))?;
    }
    print_json(&json!({
        "points": all.len(),
        "topology": a.topology.as_str(),
        "emst_length": emst(&fm).total_length,
        "h0_norm": h0.one_norm(),
        "h1_norm": h1.one_norm(),
        "h0_pairs": h0.pairs.len(),
        "h1_pairs": h1.pairs.len(),
        "h0_essential": h0.essential,
        "h1_essential": h1.essential,
        "critical_edge_fraction": fm.critical_edge_fraction(),
        "critical_triangle_fraction": fm.critical_triangle_fraction(),
    }))
}

fn lunar(a: &Instance) -> Result<(), AppError> {
    let (a0, a1) = points_of(a)?;
    let tree = lunar_emst(&a0, &a1, a.topology.topology(), a.lunar_mode.mode()).map_err(numeric)?;
    if let Some(dir) = &a.out {
        write_events(out_file(dir, "events.csv")?, &tree).map_err(|e| format_error(&dir.join("events.csv"), e))?;
    }
    print_json(&json!({
        "points0": a0.len(),
        "points1": a1.len(),
        "topology": a.topology.as_str(),
        "cost": tree.cost,
        "rel1": relative1_norm(&tree),
        "components_born": tree.component_births.len(),
        "merges": tree.merges.len(),
    }))
}

fn sixpack(a: &Instance) -> Result<(), AppError> {
    let (a0, a1) = points_of(a)?;
    let all: Vec<Point2> = a0.iter().chain(&a1).copied().collect();
    let config = ExperimentConfig {
        lunar_mode: a.lunar_mode,
        ..ExperimentConfig::default()
    };
    let mut record = evaluate(&config, a.topology, &all, &a0, &a1).map_err(numeric)?;
    record.n = all.len();
    record.seed = a.seed;
    for (name, v) in &record.negatives {
        eprintln!("warning: derived norm {name} = {v} is negative");
    }
    let v = serde_json::to_value(&record).map_err(|e| AppError::Io(e.to_string()))?;
    print_json(&v)
}

fn estimate_config(a: &Estimate) -> Result<ExperimentConfig, AppError> {
    let mut c = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
            ExperimentConfig::from_json(&text).map_err(|e| AppError::Usage(format!("{}: {e}", path.display())))?
        }
        None => ExperimentConfig::default(),
    };
    if a.fast {
        let f = ExperimentConfig::fast();
        c.n_values = f.n_values;
        c.trials = f.trials;
        c.lunar_mode = f.lunar_mode;
    }
    if !a.n.is_empty() {
        c.n_values = a.n.clone();
    }
    if let Some(t) = a.trials {
        c.trials = t;
    }
    if let Some(s) = a.seed {
        c.seed = s;
    }
    if let Some(t) = a.topology {
        c.topologies = vec![t];
    }
    if let Some(s) = a.sampler {
        c.sampler = s;
    }
    if let Some(m) = a.lunar_mode {
        c.lunar_mode = m;
    }
    if let Some(o) = &a.out {
        c.out_dir = o.clone();
    }
    if a.timing {
        c.timing = true;
    }
    if a.no_plots {
        c.plots = false;
    }
    if a.strict {
        c.negative_policy = PolicyName::Fail;
    }
    c.validate().map_err(|e| AppError::Usage(e.to_string()))?;
    Ok(c)
}

fn estimate(a: &Estimate) -> Result<(), AppError> {
    let config = estimate_config(a)?;
    let out = run_sweep(&config).map_err(numeric)?;
    let warned = out.records.iter().filter(|r| !r.negatives.is_empty()).count();
    if warned > 0 {
        eprintln!("warning: {warned} trials have a negative derived norm");
    }
    let files = write_outputs(&config, &out).map_err(|e| match e {
        SweepError::Write { path, source } => io_error(&path, source),
        SweepError::Trial(t) => numeric(t),
    })?;
    for f in files {
        println!("wrote {}", f.display());
    }
    for (topo, fits) in &out.summary {
        let a1 = |q: &str| fits[q].a1.map_or("n/a".to_string(), |v| format!("{v:.5}"));
        println!("{topo}: a1(emst_length) = {}, a1(lunar_cost) = {}", a1("emst_length"), a1("lunar_cost"));
    }
    Ok(())
}
