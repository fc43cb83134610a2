//! Command-line surface: session configuration, the `taftyd` subcommands,
//! verification suites and sweep reports.
//!
//! Exit codes: 0 for a finite verdict or a passing run, 1 for an infinite
//! verdict or a failing check, 2 for usage and input errors.

mod suites;
mod sweep;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::braiding::{classify_nichols, graded_nichols_dims};
use crate::error::{Error, Result};
use crate::hopf::TaftParams;
use crate::report::CheckReport;
use crate::yd::{
    build_finite_module, build_infinite_truncation, parse_lambda, socle, standard_basis_check, verify_yd_module,
    x_power_check,
};

pub use suites::{run_suite, Suite};
pub use sweep::{run_sweep, write_sweep, SweepEntry, SweepReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

/// Parameters shared by every command.
#[derive(Clone, Debug, Serialize)]
pub struct SessionConfig {
    pub n: u32,
    pub t: u32,
    pub probe_bound: usize,
    pub symmetrizer_budget: u64,
    pub truncation_k: u32,
    pub output: OutputFormat,
    pub seed: u64,
}

impl SessionConfig {
    pub fn new(n: u32, t: u32) -> Self {
        SessionConfig {
            n,
            t,
            probe_bound: 8,
            symmetrizer_budget: crate::braiding::DEFAULT_BUDGET,
            truncation_k: 12,
            output: OutputFormat::Text,
            seed: 0,
        }
    }

    /// Checks 2 ≤ n, t < n and positive bounds, and returns H(n,t).
    pub fn params(&self) -> Result<TaftParams> {
        if self.symmetrizer_budget == 0 || self.truncation_k == 0 {
            return Err(Error::InvalidArgument("budget and truncation must be positive".into()));
        }
        TaftParams::new(self.n, self.t)
    }
}

#[derive(Parser, Debug)]
#[command(name = "taftyd", version, about = "Yetter-Drinfeld modules over infinite Taft algebras and their Nichols algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    output: OutputFormat,
    /// Seed for randomized spot-checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest dim(V)^m a symmetrizer computation may touch.
    #[arg(long, global = true, default_value_t = crate::braiding::DEFAULT_BUDGET)]
    budget: u64,
    /// Highest degree probed by graded Nichols dimensions.
    #[arg(long = "probe-bound", global = true, default_value_t = 8)]
    probe_bound: usize,
    /// Window size K for infinite modules V(i,j).
    #[arg(long, global = true, default_value_t = 12)]
    truncation: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct HArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    t: u32,
}

#[derive(Args, Debug)]
struct ModuleArgs {
    #[arg(long, allow_hyphen_values = true)]
    i: i64,
    #[arg(long, allow_hyphen_values = true)]
    j: i64,
    /// 0, 1 or zeta^e.
    #[arg(long, default_value = "0")]
    lambda: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Finite,
    Infinite,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Finite-dimensionality verdict for 𝓑(V(ti,j,λ)).
    Classify {
        #[command(flatten)]
        h: HArgs,
        #[command(flatten)]
        m: ModuleArgs,
        /// Attach graded dimensions up to the probe bound.
        #[arg(long)]
        probe: bool,
    },
    /// Build a module, verify it and print its structure.
    Module {
        #[command(flatten)]
        h: HArgs,
        #[arg(long, value_enum, default_value = "finite")]
        kind: Kind,
        #[command(flatten)]
        m: ModuleArgs,
        /// Window size for --kind infinite (defaults to --truncation).
        #[arg(long = "k")]
        k: Option<u32>,
    },
    /// Enumerate a fundamental domain, deduplicate and classify.
    Sweep {
        #[command(flatten)]
        h: HArgs,
        /// Comma-separated λ values.
        #[arg(long, default_value = "0")]
        lambdas: String,
        /// Also list windows of the infinite modules V(i,j), i ∈ 𝒥.
        #[arg(long)]
        include_infinite: bool,
        /// Attach graded probes to entries with a finite verdict.
        #[arg(long)]
        probe: bool,
        /// Destination of the JSON report.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a property suite.
    Verify {
        #[command(flatten)]
        h: HArgs,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Corrupt one input per suite; the run must then fail.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Graded Nichols dimensions dim 𝓑ᵐ for m ≤ max-degree.
    Nichols {
        #[command(flatten)]
        h: HArgs,
        #[command(flatten)]
        m: ModuleArgs,
        #[arg(long = "max-degree")]
        max_degree: usize,
    },
}

fn config(cli: &Cli, h: &HArgs) -> SessionConfig {
    SessionConfig {
        n: h.n,
        t: h.t,
        probe_bound: cli.probe_bound,
        symmetrizer_budget: cli.budget,
        truncation_k: cli.truncation,
        output: cli.output,
        seed: cli.seed,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let target: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit<T: Serialize>(cfg: &SessionConfig, out: &mut dyn Write, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    match cfg.output {
        OutputFormat::Json => {
            let s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(out, "{s}")?;
        }
        OutputFormat::Text => writeln!(out, "{}", text())?,
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Classify { h, m, probe } => {
            let cfg = config(cli, h);
            let p = cfg.params()?;
            let lambda = parse_lambda(&m.lambda, p.n())?;
            let mut v = classify_nichols(p, m.i, m.j, &lambda);
            if *probe {
                let module = build_finite_module(p, m.i, m.j, lambda)?;
                v.probe = Some(sweep::probe_within_budget(&module, cfg.probe_bound, cfg.symmetrizer_budget)?);
            }
            emit(&cfg, out, &v, || v.render())?;
            Ok(if v.finite { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Module { h, kind, m, k } => {
            let cfg = config(cli, h);
            let p = cfg.params()?;
            let module = match kind {
                Kind::Finite => build_finite_module(p, m.i, m.j, parse_lambda(&m.lambda, p.n())?)?,
                Kind::Infinite => build_infinite_truncation(p, m.i, m.j, k.unwrap_or(cfg.truncation_k))?,
            };
            let mut reports = vec![verify_yd_module(&module), standard_basis_check(&module, 0)];
            if !module.truncated {
                reports.push(x_power_check(&module));
            }
            let soc = socle(&module);
            let passed = reports.iter().all(|r| r.passed);
            #[derive(Serialize)]
            struct ModuleDump<'a> {
                module: &'a crate::yd::YdModule,
                socle_types: Vec<[String; 2]>,
                reports: &'a [CheckReport],
                passed: bool,
            }
            let dump = ModuleDump {
                module: &module,
                socle_types: soc.types().iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
                reports: &reports,
                passed,
            };
            emit(&cfg, out, &dump, || {
                let mut s = format!(
                    "{}: dim {}{}\n",
                    module.spec.describe(),
                    module.dim,
                    if module.truncated { " (window)" } else { "" }
                );
                s.push_str(&format!("g-weights {:?}\n", module.g_weights));
                for (k, row) in module.coaction.iter().enumerate() {
                    let terms: Vec<String> = row.iter().map(|(c, l)| format!("({})⊗v_{l}", c.render())).collect();
                    s.push_str(&format!("δ(v_{k}) = {}\n", terms.join(" + ")));
                }
                let types: Vec<String> = soc.types().iter().map(|(a, b)| format!("({a},{b})")).collect();
                s.push_str(&format!("socle types {}\n", types.join(" ")));
                let lines: Vec<String> = reports.iter().map(CheckReport::summary).collect();
                s.push_str(&lines.join("\n"));
                s
            })?;
            Ok(if passed { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Sweep {
            h,
            lambdas,
            include_infinite,
            probe,
            out: path,
        } => {
            let cfg = config(cli, h);
            let p = cfg.params()?;
            let lams = lambdas
                .split(',')
                .map(|s| parse_lambda(s.trim(), p.n()))
                .collect::<Result<Vec<_>>>()?;
            let report = run_sweep(&cfg, &lams, *include_infinite, *probe)?;
            write_sweep(&report, path)?;
            emit(&cfg, out, &report.summary_json(path), || {
                format!(
                    "{} entries, {} iso classes written to {}",
                    report.entries.len(),
                    report.iso_classes.len(),
                    path.display()
                )
            })?;
            Ok(EXIT_OK)
        }
        Command::Verify { h, suite, inject_fault } => {
            let cfg = config(cli, h);
            cfg.params()?;
            let reports = run_suite(&cfg, *suite, *inject_fault)?;
            let passed = reports.iter().all(|r| r.passed);
            emit(&cfg, out, &reports, || {
                let mut lines: Vec<String> = reports.iter().map(CheckReport::summary).collect();
                lines.push(if passed { "PASS".into() } else { "FAIL".into() });
                lines.join("\n")
            })?;
            Ok(if passed { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Nichols { h, m, max_degree } => {
            let cfg = config(cli, h);
            let p = cfg.params()?;
            let module = build_finite_module(p, m.i, m.j, parse_lambda(&m.lambda, p.n())?)?;
            let dims = graded_nichols_dims(&module, *max_degree, cfg.symmetrizer_budget)?;
            let pairs: Vec<[String; 2]> = dims
                .iter()
                .enumerate()
                .map(|(m, d)| [m.to_string(), d.to_string()])
                .collect();
            emit(&cfg, out, &pairs, || {
                let parts: Vec<String> = dims.iter().enumerate().map(|(m, d)| format!("{m}:{d}")).collect();
                format!("{} dim B^m: {}", module.spec.describe(), parts.join(" "))
            })?;
            Ok(EXIT_OK)
        }
    }
}
