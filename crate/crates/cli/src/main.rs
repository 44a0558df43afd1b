use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod run;

use commands::{Common, MetricSource, SearchArgs};
use run::RunReport;

/// Exact checks for left-symmetric algebroids, bialgebroids and their doubles.
#[derive(Parser, Debug)]
#[command(name = "lsa", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Random samples per sampled check.
    #[arg(long, global = true, default_value_t = 25)]
    trials: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Reject input scalars above this total degree.
    #[arg(long, global = true, default_value_t = 64)]
    max_degree: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Left-symmetry (or the Lie axioms) and the identity suite.
    CheckLsa { file: PathBuf },
    /// Compatibility of a structure on A and one on A*.
    CheckBialgebroid { a: PathBuf, astar: PathBuf },
    /// Build the pre-symplectic double of a bialgebroid.
    Double {
        a: PathBuf,
        astar: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Whether a subbundle of a pre-symplectic algebroid is Dirac.
    Dirac { file: PathBuf, subbundle: PathBuf },
    /// Whether two subbundles form a Manin triple.
    Manin {
        file: PathBuf,
        first: PathBuf,
        second: PathBuf,
    },
    /// Maurer-Cartan equation for H against the Dirac property of its graph.
    Mc {
        a: PathBuf,
        astar: PathBuf,
        h: PathBuf,
    },
    /// Pseudo-Hessian checks and the induced bialgebroid and double.
    Hessian {
        #[arg(long, required_unless_present = "metric", conflicts_with = "metric")]
        potential: Option<String>,
        /// Metric file, instead of a potential.
        #[arg(long)]
        metric: Option<PathBuf>,
        /// Comma-separated coordinates, e.g. `x1,x2`.
        #[arg(long)]
        vars: String,
        /// Christoffel symbols of a flat torsion-free connection.
        #[arg(long)]
        christoffel: Option<PathBuf>,
    },
    /// The calculus identity suite.
    Identities { file: PathBuf },
    /// Seeded search for constant left-symmetric structures.
    Search {
        #[arg(long)]
        dim: usize,
        /// Probability that a structure constant is nonzero.
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Also require H with ⟦H,H⟧ = 0.
        #[arg(long)]
        mc: bool,
        /// Attempts per requested instance.
        #[arg(long, default_value_t = 2000)]
        patience: usize,
        /// Catalog file; embedded in the report when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckLsa { .. } => "check-lsa",
            Command::CheckBialgebroid { .. } => "check-bialgebroid",
            Command::Double { .. } => "double",
            Command::Dirac { .. } => "dirac",
            Command::Manin { .. } => "manin",
            Command::Mc { .. } => "mc",
            Command::Hessian { .. } => "hessian",
            Command::Identities { .. } => "identities",
            Command::Search { .. } => "search",
        }
    }
}

fn dispatch(cmd: &Command, c: &Common, run: &mut RunReport) -> anyhow::Result<()> {
    match cmd {
        Command::CheckLsa { file } => commands::check_lsa(file, c, run),
        Command::CheckBialgebroid { a, astar } => commands::check_bialgebroid_cmd(a, astar, c, run),
        Command::Double { a, astar, output } => commands::double_cmd(a, astar, output, c, run),
        Command::Dirac { file, subbundle } => commands::dirac(file, subbundle, c, run),
        Command::Manin {
            file,
            first,
            second,
        } => commands::manin(file, first, second, c, run),
        Command::Mc { a, astar, h } => commands::mc(a, astar, h, c, run),
        Command::Hessian {
            potential,
            metric,
            vars,
            christoffel,
        } => {
            let source = match (potential, metric) {
                (Some(p), _) => MetricSource::Potential(p),
                (None, Some(m)) => MetricSource::File(m),
                (None, None) => anyhow::bail!("give --potential or --metric"),
            };
            commands::hessian(source, vars, christoffel.as_deref(), c, run)
        }
        Command::Identities { file } => commands::identities(file, c, run),
        Command::Search {
            dim,
            density,
            count,
            mc,
            patience,
            output,
        } => {
            let args = SearchArgs {
                dim: *dim,
                density: *density,
                count: *count,
                mc: *mc,
                patience: *patience,
            };
            commands::search_cmd(&args, output.as_deref(), c, run)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let common = Common {
        trials: g.trials,
        seed: g.seed,
        max_degree: g.max_degree,
    };
    let mut run = RunReport::new(cli.command.name(), g.seed, g.trials);
    if let Err(e) = dispatch(&cli.command, &common, &mut run) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    let mut out = std::io::stdout().lock();
    let written = if g.json {
        run.write_json(&mut out)
    } else {
        run.write_text(&mut out)
    };
    if let Err(e) = written.and_then(|_| out.flush()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(run.exit_code() as u8)
}
