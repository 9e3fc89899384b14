//! Command-line front end. Every subcommand runs one suite and emits one
//! line-delimited JSON record per check (or CSV with `--csv`).
//!
//! Exit status: 0 when every gating check passed, 1 on a failed contract,
//! 2 on usage errors, 3 on I/O errors.

use crate::battery::{self, Ctx, Outcome, CRITERIA};
use crate::calib;
use crate::coeffs::{bundled_dataset_path, load_dataset, SpectralDataset};
use crate::report::Record;
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "spmoments", version, about = "Verification suites for GL(3)xGL(2) moment machinery")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = calib::VERIFY_SEED)]
    pub seed: u64,
    /// Write records here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Render CSV instead of JSON lines.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Tighten numerical tolerances by this factor (must lie in (0, 1]).
    #[arg(long, global = true, default_value_t = 1.0)]
    pub tol_scale: f64,
    /// Hecke-Maass dataset (JSON lines).
    #[arg(long, global = true)]
    pub dataset: Option<PathBuf>,
    /// Also cross-check against the independent oracles.
    #[arg(long, global = true)]
    pub with_oracles: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exponential sums.
    #[command(subcommand)]
    Sums(Sums),
    /// Large sieve inequalities.
    #[command(subcommand)]
    Sieve(Sieve),
    /// The weight W_{A,B} and its transform.
    #[command(subcommand)]
    Weights(Weights),
    /// Approximate functional equation.
    #[command(subcommand)]
    Afe(Afe),
    /// Coefficient data and models.
    #[command(subcommand)]
    Coeffs(Coeffs),
    /// Spectral moments.
    #[command(subcommand)]
    Moment(Moment),
    /// Voronoi-side negligibility.
    #[command(subcommand)]
    Voronoi(Voronoi),
    /// The full acceptance battery.
    All,
}

#[derive(Subcommand, Debug)]
pub enum Sums {
    Kloosterman {
        #[arg(long, default_value_t = 30)]
        cmax: u64,
    },
    Ramanujan {
        #[arg(long, default_value_t = 500)]
        rmax: u64,
    },
    Vsum {
        #[arg(long, default_value_t = 60)]
        rmax: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    Poisson {
        #[arg(long, default_value_t = 30)]
        rmax: u64,
    },
    Weil {
        #[arg(long, default_value_t = 300)]
        cmax: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    Sigma {
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        n: u64,
        #[arg(long, default_value_t = 100_000)]
        rmax: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Sieve {
    Classical {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
    Oscillatory {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
    Spectral {
        /// Random sequences per `(T, N, X)` configuration.
        #[arg(long, default_value_t = 8)]
        per_config: usize,
    },
    /// Flag form of the three sweeps.
    #[command(hide = true)]
    Verify {
        #[arg(long)]
        classical: bool,
        #[arg(long)]
        oscillatory: bool,
        #[arg(long)]
        spectral: bool,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Weights {
    Eval,
    Transform,
    Invert,
    Decay,
}

#[derive(Subcommand, Debug)]
pub enum Afe {
    Weight,
    Stirling {
        #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
        t: Vec<f64>,
    },
    Value {
        #[arg(long, default_value_t = 3)]
        forms: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Coeffs {
    Load,
    Hecke {
        #[arg(long, default_value_t = 50)]
        mmax: u64,
    },
    Cube {
        #[arg(long, default_value_t = 3)]
        forms: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Moment {
    Second {
        #[arg(long, default_value_t = 30.0)]
        t: f64,
    },
    /// Exploratory: the exponent threshold only warns.
    Sixth {
        #[arg(long, value_delimiter = ',', default_value = "10,15,20,25,30")]
        grid: Vec<f64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Voronoi {
    Negligible {
        #[arg(long, default_value_t = 200.0)]
        t: f64,
        #[arg(long, default_value_t = 2000)]
        n: u64,
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        l: Vec<u64>,
    },
    Phase {
        #[arg(long, default_value_t = 200.0)]
        t: f64,
        #[arg(long, default_value_t = 15000)]
        n: u64,
    },
}

/// What a run produced: records, and whether failures count against the status.
pub struct RunOutput {
    pub records: Vec<Record>,
    pub gating_failures: usize,
    pub warnings: usize,
}

impl RunOutput {
    fn gating(records: Vec<Record>) -> Self {
        let f = records.iter().filter(|r| !r.pass).count();
        Self { records, gating_failures: f, warnings: 0 }
    }

    fn advisory(records: Vec<Record>) -> Self {
        let f = records.iter().filter(|r| !r.pass).count();
        Self { records, gating_failures: 0, warnings: f }
    }
}

fn dataset(g: &Global) -> Result<SpectralDataset> {
    load_dataset(g.dataset.clone().unwrap_or_else(bundled_dataset_path))
}

/// One summary record per criterion, after its own records.
pub fn outcome_records(o: &Outcome) -> Vec<Record> {
    let mut v = o.records.clone();
    v.push(Record::new(
        "criterion",
        format!("C{:02}", o.id),
        json!({ "title": o.title, "gating": o.gating }),
        json!({ "checks": o.records.len(), "failures": o.failures() }),
        json!(0),
        o.pass(),
    ));
    v
}

/// Run a parsed command.
pub fn run(cli: &Cli) -> Result<RunOutput> {
    let g = &cli.global;
    let ctx = Ctx::new(g.seed, g.tol_scale, g.with_oracles)?;
    let out = match &cli.command {
        Command::Sums(s) => RunOutput::gating(match *s {
            Sums::Kloosterman { cmax } => battery::sums_kloosterman(&ctx, cmax)?,
            Sums::Ramanujan { rmax } => battery::sums_ramanujan(&ctx, rmax)?,
            Sums::Vsum { rmax, trials } => battery::sums_vsum(&ctx, rmax, trials)?,
            Sums::Poisson { rmax } => battery::sums_poisson(&ctx, rmax)?,
            Sums::Weil { cmax, trials } => battery::sums_weil(&ctx, cmax, trials)?,
            Sums::Sigma { m, n, rmax } => battery::sums_sigma(&ctx, m, n, rmax)?,
        }),
        Command::Sieve(s) => RunOutput::gating(match *s {
            Sieve::Classical { trials } => battery::sieve_classical(&ctx, trials)?,
            Sieve::Oscillatory { trials } => battery::sieve_oscillatory(&ctx, trials)?,
            Sieve::Spectral { per_config } => battery::sieve_spectral(&ctx, &dataset(g)?, per_config)?,
            Sieve::Verify { classical, oscillatory, spectral, trials } => {
                if !(classical || oscillatory || spectral) {
                    return Err(Error::InvalidArgument("verify needs --classical, --oscillatory or --spectral".into()));
                }
                let mut v = Vec::new();
                if classical {
                    v.extend(battery::sieve_classical(&ctx, trials)?);
                }
                if oscillatory {
                    v.extend(battery::sieve_oscillatory(&ctx, trials)?);
                }
                if spectral {
                    v.extend(battery::sieve_spectral(&ctx, &dataset(g)?, 8)?);
                }
                v
            }
        }),
        Command::Weights(w) => RunOutput::gating(match w {
            Weights::Eval => battery::weights_eval(&ctx)?,
            Weights::Transform => battery::weights_transform(&ctx)?,
            Weights::Invert => battery::weights_invert(&ctx)?,
            Weights::Decay => battery::weights_decay(&ctx)?,
        }),
        Command::Afe(a) => RunOutput::gating(match a {
            Afe::Weight => battery::afe_weight(&ctx)?,
            Afe::Stirling { t } => battery::afe_stirling(&ctx, t)?,
            Afe::Value { forms } => battery::afe_value(&ctx, &dataset(g)?, *forms)?,
        }),
        Command::Coeffs(c) => RunOutput::gating(match *c {
            Coeffs::Load => battery::coeffs_load(&ctx, &dataset(g)?)?,
            Coeffs::Hecke { mmax } => battery::coeffs_hecke(&ctx, mmax)?,
            Coeffs::Cube { forms } => battery::coeffs_cube(&ctx, &dataset(g)?, forms)?,
        }),
        Command::Moment(Moment::Second { t }) => RunOutput::gating(battery::moment_second(&ctx, &dataset(g)?, *t)?),
        Command::Moment(Moment::Sixth { grid }) => RunOutput::advisory(battery::moment_sixth(&ctx, &dataset(g)?, grid)?),
        Command::Voronoi(v) => RunOutput::gating(match v {
            Voronoi::Negligible { t, n, l } => battery::voronoi_negligible(&ctx, &dataset(g)?, *t, *n, l)?,
            Voronoi::Phase { t, n } => battery::voronoi_phase(&ctx, *t, *n)?,
        }),
        Command::All => {
            let ds = dataset(g)?;
            let mut out = RunOutput { records: Vec::new(), gating_failures: 0, warnings: 0 };
            for (id, _, _) in CRITERIA {
                let o = battery::criterion(id, &ctx, &ds)?;
                if !o.pass() {
                    if o.gating {
                        out.gating_failures += 1;
                    } else {
                        out.warnings += 1;
                    }
                }
                out.records.extend(outcome_records(&o));
            }
            out
        }
    };
    Ok(out)
}

/// Render records as JSON lines or CSV.
pub fn render(records: &[Record], csv: bool) -> String {
    let mut s = String::new();
    if csv {
        s.push_str(Record::csv_header());
        s.push('\n');
    }
    for r in records {
        s.push_str(&if csv { r.csv() } else { r.json() });
        s.push('\n');
    }
    s
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) => 2,
        Error::Io(_) | Error::Dataset(_) => 3,
        _ => 1,
    }
}

fn emit(g: &Global, text: &str) -> std::io::Result<()> {
    match &g.out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Parse `args` and run; returns the process exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    if let Err(e) = emit(&cli.global, &render(&out.records, cli.global.csv)) {
        eprintln!("error: {e}");
        return 3;
    }
    if out.warnings > 0 {
        eprintln!("warning: {} advisory check(s) outside their threshold", out.warnings);
    }
    if out.gating_failures > 0 {
        eprintln!("{} check(s) failed", out.gating_failures);
        1
    } else {
        0
    }
}

pub fn main() -> i32 {
    main_with(std::env::args_os())
}
