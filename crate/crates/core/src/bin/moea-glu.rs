use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use moea_glu::harness::{
    emit_point_cloud, export_results, load_config, load_grid, run_experiment_detailed,
    score_population, summaries_to_csv, Divisions, ExperimentConfig, ExportFormat, Metric,
    StatsSummary,
};
use moea_glu::weights::{generate_simplex_weights, generate_two_layer};
use moea_glu::{CriterionKind, Error, ProblemId, Result, Variant};

#[derive(Parser)]
#[command(name = "moea-glu", version, about = "Decomposition-based many-objective optimization with a global loop update")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and print best/median/worst per metric.
    Run(RunArgs),
    /// Run every experiment listed in a grid file.
    Grid(GridArgs),
    /// Print or write a weight-vector lattice.
    Weights(WeightArgs),
    /// Score an objective-vector file with IGD and/or hypervolume.
    Score(ScoreArgs),
}

#[derive(Args)]
struct ExperimentArgs {
    /// Base config file (.toml or .json); flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<ProblemId>,
    #[arg(long)]
    objectives: Option<usize>,
    #[arg(long)]
    variant: Option<Variant>,
    #[arg(long)]
    criterion: Option<CriterionKind>,
    /// `D` for one layer or `D1,D2` for two layers.
    #[arg(long)]
    divisions: Option<Divisions>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    generations: Option<usize>,
}

impl ExperimentArgs {
    fn build(&self) -> Result<ExperimentConfig> {
        let mut c = match &self.config {
            Some(path) => load_config(path)?,
            None => {
                let (Some(p), Some(m)) = (self.problem, self.objectives) else {
                    return Err(Error::Config(
                        "give --config or both --problem and --objectives".into(),
                    ));
                };
                ExperimentConfig::new(p.name(), m)
            }
        };
        if let Some(p) = self.problem {
            c.problem = p;
        }
        if let Some(m) = self.objectives {
            c.objectives = m;
        }
        if let Some(v) = self.variant {
            c.variant = v;
        }
        if let Some(k) = self.criterion {
            c.criterion = k;
        }
        if self.divisions.is_some() {
            c.divisions = self.divisions;
        }
        if let Some(r) = self.runs {
            c.runs = r;
        }
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if self.generations.is_some() {
            c.generations = self.generations;
        }
        Ok(c)
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    experiment: ExperimentArgs,
    /// Directory for exported results.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "both")]
    format: ExportFormat,
    /// Write the first run's final population (three objectives only).
    #[arg(long)]
    point_cloud: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    /// Grid file: `[[experiment]]` tables in TOML or a JSON array.
    grid: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "both")]
    format: ExportFormat,
}

#[derive(Args)]
struct WeightArgs {
    #[arg(long)]
    objectives: usize,
    /// Defaults to the standard divisions for the objective count.
    #[arg(long)]
    divisions: Option<Divisions>,
    #[arg(long, default_value_t = 0.5)]
    shrinkage: f64,
    /// File to write; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScoreArgs {
    #[command(flatten)]
    experiment: ExperimentArgs,
    /// Whitespace-separated objective vectors, one per line.
    #[arg(long)]
    input: PathBuf,
    /// Metric to compute (repeatable); defaults depend on the problem.
    #[arg(long = "metric")]
    metrics: Vec<Metric>,
}

fn print_summary(s: &StatsSummary) {
    let c = &s.config;
    println!(
        "{} M={} variant={} criterion={} N={} G={} runs={}",
        c.problem,
        c.objectives,
        c.variant,
        c.criterion.name(),
        c.population_size,
        c.generations,
        c.runs
    );
    for m in &s.metrics {
        println!(
            "  {:<3} best={:.6e} median={:.6e} worst={:.6e}",
            m.metric.name(),
            m.best,
            m.median,
            m.worst
        );
    }
}

fn cmd_run(args: &RunArgs) -> Result<()> {
    let config = args.experiment.build()?.resolve()?;
    let outcome = run_experiment_detailed(&config)?;
    print_summary(&outcome.summary);
    let out = args.out.clone().or_else(|| config.source.output.clone());
    if let Some(dir) = out {
        for p in export_results(&outcome.summary, &dir, args.format)? {
            eprintln!("wrote {}", p.display());
        }
    }
    if let Some(path) = &args.point_cloud {
        emit_point_cloud(&outcome.runs[0], path)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_grid(args: &GridArgs) -> Result<()> {
    let grid = load_grid(&args.grid)?;
    let mut summaries = Vec::with_capacity(grid.len());
    for (i, c) in grid.iter().enumerate() {
        eprintln!("[{}/{}] {} M={}", i + 1, grid.len(), c.problem, c.objectives);
        let outcome = run_experiment_detailed(&c.resolve()?)?;
        print_summary(&outcome.summary);
        export_results(&outcome.summary, &args.out, args.format)?;
        summaries.push(outcome.summary);
    }
    let combined = args.out.join("grid.csv");
    std::fs::write(&combined, summaries_to_csv(&summaries)?).map_err(|e| Error::Io {
        path: combined.clone(),
        source: e,
    })?;
    eprintln!("wrote {}", combined.display());
    Ok(())
}

fn cmd_weights(args: &WeightArgs) -> Result<()> {
    let divisions = match args.divisions {
        Some(d) => d,
        None => Divisions::default_for(args.objectives).ok_or_else(|| {
            Error::Config(format!("no default divisions for {} objectives", args.objectives))
        })?,
    };
    let set = match divisions {
        Divisions::Single(d) => generate_simplex_weights(d, args.objectives)?,
        Divisions::TwoLayer([a, b]) => generate_two_layer(a, b, args.objectives, args.shrinkage)?,
    };
    match &args.out {
        Some(path) => {
            set.write_text(path)?;
            eprintln!("wrote {} vectors to {}", set.len(), path.display());
        }
        None => print!("{}", set.to_text()),
    }
    Ok(())
}

fn read_objectives(path: &Path, m: usize) -> Result<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: path.to_path_buf(),
            message: format!("line {}: {message}", n + 1),
        };
        let row = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<f64>().map_err(|e| parse_err(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<f64>>>()?;
        if row.len() != m {
            return Err(parse_err(format!("expected {m} values, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            message: "no objective vectors".into(),
        });
    }
    Ok(rows)
}

fn cmd_score(args: &ScoreArgs) -> Result<()> {
    let mut c = args.experiment.build()?;
    if !args.metrics.is_empty() {
        c.metrics = Some(args.metrics.clone());
    }
    let resolved = c.resolve()?;
    let points = read_objectives(&args.input, resolved.problem.objectives())?;
    let scores = score_population(&resolved, &points, resolved.source.seed)?;
    for (m, v) in resolved.metrics.iter().zip(scores) {
        println!("{} {:.6e}", m.name(), v);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Grid(a) => cmd_grid(a),
        Command::Weights(a) => cmd_weights(a),
        Command::Score(a) => cmd_score(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
