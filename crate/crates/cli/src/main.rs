use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lattice_average::Budget;
use lattice_average_cli::{cmd_average, cmd_count, cmd_figures, cmd_surfaces, CliError, CliResult, Format, RunConfig};

/// Lattice point counts, Weyl remainder averages and surface identities.
///
/// The LATTICE_POINT_BUDGET environment variable overrides the enumeration
/// budgets.
#[derive(Parser)]
#[command(name = "lattice-average", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// N(t) and D(t) on the grid.
    Count(Common),
    /// A(R) along every path, with the radius average and rescaling gap.
    Average(Common),
    /// The plotted quantity of one figure.
    Figures {
        /// Figure number, 1 to 12.
        #[arg(long)]
        figure: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Klein bottle and projective plane counts against torus counts.
    Surfaces(Common),
}

#[derive(Args)]
struct Common {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    a1: Option<f64>,
    #[arg(long)]
    a2: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    /// Absolute tolerance of series evaluations.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    tmin: Option<f64>,
    #[arg(long)]
    tmax: Option<f64>,
    /// Number of grid points, both ends included.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn resolve(&self) -> CliResult<RunConfig> {
        let mut config = match &self.config {
            Some(path) => {
                let raw = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str(&raw)
                    .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))?
            }
            None => RunConfig::default(),
        };
        let set = |slot: &mut f64, value: Option<f64>| {
            if let Some(v) = value {
                *slot = v;
            }
        };
        set(&mut config.form.a1, self.a1);
        set(&mut config.form.a2, self.a2);
        set(&mut config.form.theta, self.theta);
        set(&mut config.tol, self.tol);
        set(&mut config.t_min, self.tmin);
        set(&mut config.t_max, self.tmax);
        if let Some(steps) = self.steps {
            config.steps = steps;
        }
        if let Some(format) = self.format {
            config.format = format;
        }
        if self.out.is_some() {
            config.output = self.out.clone();
        }
        config.validate()?;
        Ok(config)
    }
}

fn run(cli: Cli) -> CliResult<()> {
    Budget::from_env().map_err(|e| CliError::Usage(e.to_string()))?;
    let (config, table) = match &cli.command {
        Command::Count(common) => {
            let config = common.resolve()?;
            let table = cmd_count(&config)?;
            (config, table)
        }
        Command::Average(common) => {
            let config = common.resolve()?;
            let table = cmd_average(&config)?;
            (config, table)
        }
        Command::Figures { figure, common } => {
            let config = common.resolve()?;
            let table = cmd_figures(*figure, &config)?;
            (config, table)
        }
        Command::Surfaces(common) => {
            let config = common.resolve()?;
            let table = cmd_surfaces(&config)?;
            (config, table)
        }
    };
    let text = table.render(config.format);
    match &config.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
