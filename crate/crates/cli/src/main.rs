use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use vtsearch::checks::{first_failure, run_checks, CheckConfig};
use vtsearch::generate::{generate, GeneratorSpec, TimeProfile};
use vtsearch::model::parse_instance;
use vtsearch::output::{adversary_row, simulate_row, sweep_rows, write_csv, SweepPoint};
use vtsearch::ProblemInstanceF64;

#[derive(Parser)]
#[command(name = "vts", version, about = "Variable-time search simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the full algorithm on one instance.
    Simulate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
        /// Also draw this many Monte Carlo runs.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Evaluate a grid of generated instances.
    Sweep {
        /// Generators to use (default: all three).
        #[arg(long = "gen", value_delimiter = ',')]
        profiles: Vec<TimeProfile>,
        #[arg(long, value_delimiter = ',', required = true)]
        grid_n: Vec<usize>,
        /// Counts of marked items: integers, `n`, `n/9` or `sqrt`.
        #[arg(long, value_delimiter = ',', required = true)]
        grid_m: Vec<MarkCount>,
        #[arg(long, value_delimiter = ',', default_value = "1,4")]
        slack: Vec<f64>,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Weight tables of the lower-bound family.
    Adversary {
        #[arg(long, value_delimiter = ',', default_value = "4,8,12")]
        k: Vec<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Run every invariant suite.
    Check {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = CheckConfig::default().corpus_size)]
        corpus_size: usize,
        #[arg(long, default_value_t = CheckConfig::default().mc_trials)]
        trials: usize,
        #[arg(long, hide = true)]
        inject_corrupt_stages: bool,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["instance", "profile"])))]
struct Source {
    #[arg(long)]
    instance: Option<PathBuf>,
    #[arg(long = "gen", requires = "n")]
    profile: Option<TimeProfile>,
    #[arg(long, requires = "profile")]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 1.0)]
    slack: f64,
}

#[derive(Clone, Copy, Debug)]
enum MarkCount {
    Fixed(usize),
    All,
    Ninth,
    Sqrt,
}

impl std::str::FromStr for MarkCount {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "n" => Ok(Self::All),
            "n/9" => Ok(Self::Ninth),
            "sqrt" => Ok(Self::Sqrt),
            _ => s
                .parse()
                .map(Self::Fixed)
                .map_err(|_| format!("bad mark count {s:?}")),
        }
    }
}

impl MarkCount {
    fn resolve(self, n: usize) -> usize {
        match self {
            Self::Fixed(m) => m,
            Self::All => n,
            Self::Ninth => (n / 9).max(1),
            Self::Sqrt => (n as f64).sqrt().round() as usize,
        }
    }
}

enum Failure {
    Validation(String),
    Io(String),
}

impl From<vtsearch::Error> for Failure {
    fn from(e: vtsearch::Error) -> Self {
        match e {
            vtsearch::Error::Parse { .. } => Failure::Io(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn load(source: &Source, seed: u64) -> Result<(String, String, f64, ProblemInstanceF64), Failure> {
    if let Some(path) = &source.instance {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        let inst = parse_instance(&text)?;
        let slack = inst.budget() / inst.squared_time_sum();
        return Ok((path.display().to_string(), "file".into(), slack, inst));
    }
    let profile = source.profile.expect("clap enforces the source group");
    let spec = GeneratorSpec {
        profile,
        n: source.n.expect("clap enforces --n with --gen"),
        m: source.m,
        slack: source.slack,
    };
    let inst = generate(&spec, seed)?;
    Ok((
        format!("{profile}-{}-{}", spec.n, spec.m),
        profile.name().into(),
        spec.slack,
        inst,
    ))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Simulate {
            source,
            common,
            trials,
        } => {
            let (id, profile, slack, inst) = load(&source, common.seed)?;
            let row = simulate_row(
                &id,
                &profile,
                slack,
                &inst,
                trials.map(|t| (common.seed, t)),
            )?;
            write_csv(open_out(&common.out)?, common.seed, &[row])?;
        }
        Command::Sweep {
            profiles,
            grid_n,
            grid_m,
            slack,
            common,
            trials,
        } => {
            let profiles = if profiles.is_empty() {
                TimeProfile::ALL.to_vec()
            } else {
                profiles
            };
            let mut points = Vec::new();
            for &profile in &profiles {
                for &n in &grid_n {
                    for m in &grid_m {
                        let m = m.resolve(n);
                        if m > n {
                            eprintln!("skipping m = {m} > n = {n}");
                            continue;
                        }
                        for &s in &slack {
                            points.push(SweepPoint {
                                profile,
                                n,
                                m,
                                slack: s,
                            });
                        }
                    }
                }
            }
            let rows = sweep_rows(&points, common.seed, trials)?;
            write_csv(open_out(&common.out)?, common.seed, &rows)?;
        }
        Command::Adversary { k, common } => {
            let rows = k
                .iter()
                .map(|&k| adversary_row(k, common.seed))
                .collect::<Result<Vec<_>, _>>()?;
            write_csv(open_out(&common.out)?, common.seed, &rows)?;
        }
        Command::Check {
            seed,
            corpus_size,
            trials,
            inject_corrupt_stages,
        } => {
            let cfg = CheckConfig {
                seed,
                corpus_size,
                mc_trials: trials,
                inject_corrupt_stages,
                ..CheckConfig::default()
            };
            let results = run_checks(&cfg);
            for r in &results {
                println!(
                    "{:<20} {}  {}",
                    r.name,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.detail
                );
            }
            first_failure(&results).map_err(Failure::Validation)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
