use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polarmax::cli::{self, CommandSpec, ConfigSource, OutputFormat, RunSpec, Verdict};
use polarmax::polarization::SearchOptions;
use polarmax::Error;

/// Sharp spherical configurations: design verification, dominance
/// certificates, polarization searches, and optimality trials.
#[derive(Parser)]
#[command(name = "polarmax", version, about)]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Text => OutputFormat::Text,
        }
    }
}

#[derive(Args)]
struct SelectorArgs {
    /// Catalog selector: polygon:N, simplex:D, cross-polytope:D,
    /// icosahedron, schlafli27, e8, or an alias such as square
    #[arg(long, value_name = "NAME")]
    config: Option<String>,
    /// JSON configuration file {"name", "dim", "points"}
    #[arg(long, value_name = "PATH", conflicts_with = "config")]
    file: Option<PathBuf>,
}

impl SelectorArgs {
    fn required(self) -> Result<ConfigSource, Error> {
        self.optional()
            .ok_or_else(|| Error::Usage("pass --config NAME or --file PATH".into()))
    }

    fn optional(self) -> Option<ConfigSource> {
        match (self.config, self.file) {
            (Some(name), _) => Some(ConfigSource::Name(name)),
            (None, Some(path)) => Some(ConfigSource::File(path)),
            (None, None) => None,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Args)]
struct BudgetArgs {
    /// Multistart count for spheres of dimension >= 2
    #[arg(long)]
    starts: Option<usize>,
    /// Angular grid size on S^1
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative gradient-norm stopping tolerance
    #[arg(long)]
    tol: Option<f64>,
}

impl BudgetArgs {
    fn to_options(&self, default_starts: usize) -> SearchOptions {
        let mut opts = SearchOptions {
            starts: default_starts,
            ..SearchOptions::default()
        };
        if let Some(s) = self.starts {
            opts.starts = s;
        }
        if let Some(g) = self.grid {
            opts.grid_size = g;
        }
        if let Some(t) = self.tol {
            opts.tol = t;
        }
        opts.seed = self.seed;
        opts
    }
}

#[derive(Subcommand)]
enum Command {
    /// List catalog members, or dump one configuration as JSON
    Catalog {
        #[command(flatten)]
        selector: SelectorArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Design strength, dot-product spectrum, and sharpness flags
    Verify {
        #[command(flatten)]
        selector: SelectorArgs,
        /// Largest design strength tested
        #[arg(long, default_value_t = 12)]
        cap: usize,
        /// Tolerance on the normalized kernel sums
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build and verify a dominance certificate for the potential maximum
    Certify {
        #[command(flatten)]
        selector: SelectorArgs,
        /// Potential spec: gaussian:SIGMA, negpower:ALPHA, shifted:S:C
        #[arg(long, value_name = "SPEC")]
        potential: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Global extremum search (grid on S^1, multistart ascent elsewhere)
    Search {
        #[command(flatten)]
        selector: SelectorArgs,
        #[arg(long, value_name = "SPEC")]
        potential: String,
        /// Search for the minimum instead of the maximum
        #[arg(long)]
        minimize: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Seeded random-competitor trials of the min-max inequality
    Compare {
        #[command(flatten)]
        selector: SelectorArgs,
        #[arg(long, value_name = "SPEC")]
        potential: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Ordered-pair energy and the mean-value identity check
    Energy {
        #[command(flatten)]
        selector: SelectorArgs,
        #[arg(long, value_name = "SPEC")]
        potential: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn build_spec(cmd: Command) -> Result<RunSpec, Error> {
    Ok(match cmd {
        Command::Catalog { selector, output } => RunSpec {
            command: CommandSpec::Catalog {
                member: selector.optional(),
            },
            out: output.out,
            format: output.format.into(),
        },
        Command::Verify {
            selector,
            cap,
            tol,
            output,
        } => RunSpec {
            command: CommandSpec::Verify {
                source: selector.required()?,
                cap,
                tol,
            },
            out: output.out,
            format: output.format.into(),
        },
        Command::Certify {
            selector,
            potential,
            output,
        } => RunSpec {
            command: CommandSpec::Certify {
                source: selector.required()?,
                potential,
            },
            out: output.out,
            format: output.format.into(),
        },
        Command::Search {
            selector,
            potential,
            minimize,
            budget,
            output,
        } => RunSpec {
            command: CommandSpec::Search {
                source: selector.required()?,
                potential,
                minimize,
                opts: budget.to_options(500),
            },
            out: output.out,
            format: output.format.into(),
        },
        Command::Compare {
            selector,
            potential,
            trials,
            budget,
            output,
        } => {
            let seed = budget.seed;
            // per-trial searches are seeded at the competitor's own points,
            // so a light multistart budget suffices by default
            let opts = budget.to_options(8);
            RunSpec {
                command: CommandSpec::Compare {
                    source: selector.required()?,
                    potential,
                    trials,
                    seed,
                    opts,
                },
                out: output.out,
                format: output.format.into(),
            }
        }
        Command::Energy {
            selector,
            potential,
            output,
        } => RunSpec {
            command: CommandSpec::Energy {
                source: selector.required()?,
                potential,
            },
            out: output.out,
            format: output.format.into(),
        },
    })
}

fn main() -> ExitCode {
    let args = CliArgs::parse();
    match build_spec(args.command).and_then(|spec| cli::run(&spec)) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
