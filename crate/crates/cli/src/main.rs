use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pencil_persist::corpus::{corpus_list, corpus_run, hunt};
use pencil_persist::persistence::{
    analyze_with, cyclicity_check, AnalyzeOptions, PerturbationFamily,
};
use pencil_persist::{bs_reduce, count_in_unit_interval, PersistenceReport, ToleranceConfig};
use pencil_persist_cli::error::exit;
use pencil_persist_cli::json::{
    BsJson, CorpusRunJson, CyclicityJson, ExceptionalJson, HuntJson, ReportJson,
};
use pencil_persist_cli::{CliError, MatrixFile};
use serde::Serialize;

/// Exceptional couplings of self-adjoint families H0 + tV.
#[derive(Debug, Parser)]
#[command(name = "pencil-persist", version)]
struct Cli {
    /// Emit JSON instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(flatten)]
    tol: TolArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct TolArgs {
    #[arg(long, global = true, env = "PENCIL_PERSIST_TOL_RANK", value_name = "X")]
    tol_rank: Option<f64>,
    #[arg(long, global = true, env = "PENCIL_PERSIST_TOL_EIG", value_name = "X")]
    tol_eig: Option<f64>,
    #[arg(long, global = true, env = "PENCIL_PERSIST_TOL_HERM", value_name = "X")]
    tol_herm: Option<f64>,
    #[arg(
        long,
        global = true,
        env = "PENCIL_PERSIST_TOL_ZERO_POLY",
        value_name = "X"
    )]
    tol_zero_poly: Option<f64>,
    #[arg(long, global = true, env = "PENCIL_PERSIST_TOL_REAL", value_name = "X")]
    tol_real: Option<f64>,
    #[arg(
        long,
        global = true,
        env = "PENCIL_PERSIST_TOL_CLUSTER",
        value_name = "X"
    )]
    tol_cluster: Option<f64>,
}

impl TolArgs {
    fn config(&self) -> Result<ToleranceConfig, CliError> {
        let mut cfg = ToleranceConfig::default();
        let overrides = [
            ("tol_rank", self.tol_rank),
            ("tol_eig", self.tol_eig),
            ("tol_herm", self.tol_herm),
            ("tol_zero_poly", self.tol_zero_poly),
            ("tol_real", self.tol_real),
            ("tol_cluster", self.tol_cluster),
        ];
        for (name, value) in overrides {
            if let Some(v) = value {
                cfg.set(name, v);
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// Unperturbed operator as a matrix file (`-` for stdin).
    #[arg(long)]
    h0: PathBuf,
    /// Perturbation as a matrix file.
    #[arg(long)]
    v: PathBuf,
}

impl FamilyArgs {
    fn load(&self, cfg: &ToleranceConfig) -> Result<PerturbationFamily, CliError> {
        if self.h0.as_os_str() == "-" && self.v.as_os_str() == "-" {
            return Err(CliError::Core(pencil_persist::Error::InvalidArgument(
                "only one matrix can come from stdin".into(),
            )));
        }
        let h0 = MatrixFile::load(&self.h0)?;
        let v = MatrixFile::load(&self.v)?;
        Ok(PerturbationFamily::new(h0, v, cfg)?)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full persistence report at a target eigenvalue.
    Analyze {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda0: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Window of the measure estimate.
        #[arg(long, default_value_t = 1e-6)]
        measure_epsilon: f64,
        #[arg(long, default_value_t = 1000)]
        measure_samples: usize,
    },
    /// Birman–Schwinger couplings for an energy outside the spectrum of H0.
    Bs {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        e0: f64,
    },
    /// Whether ran V generates the whole space under H0.
    Cyclicity {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Built-in fixtures.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Search for cyclic, indefinite families with a persistent eigenvalue.
    Hunt {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum CorpusAction {
    /// List instance ids.
    List,
    /// Run one instance against its expected outcome.
    Run { id: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::INVALID_INPUT as u8
            } else {
                exit::SUCCESS as u8
            });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit<T: Serialize>(value: &T) {
    let mut out = io::stdout().lock();
    let written = serde_json::to_writer_pretty(&mut out, value)
        .map_err(io::Error::from)
        .and_then(|()| writeln!(out));
    match written {
        Ok(()) => {}
        // A closed pipe (`| head`) is not an error worth reporting.
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => std::process::exit(exit::SUCCESS),
        Err(e) => panic!("writing to stdout: {e}"),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = cli.tol.config()?;
    match &cli.command {
        Command::Analyze {
            family,
            lambda0,
            seed,
            measure_epsilon,
            measure_samples,
        } => {
            let fam = family.load(&cfg)?;
            let opts = AnalyzeOptions {
                seed: *seed,
                measure_epsilon: *measure_epsilon,
                measure_samples: *measure_samples,
            };
            let report = analyze_with(&fam, *lambda0, &cfg, &opts)?;
            if cli.json {
                emit(&ReportJson::from(&report));
            } else {
                print!("{}", render_report(&report));
            }
        }
        Command::Bs { family, e0 } => {
            let fam = family.load(&cfg)?;
            let r = bs_reduce(fam.h0(), fam.v(), *e0, &cfg)?;
            let count = count_in_unit_interval(&r, &cfg);
            if cli.json {
                emit(&BsJson::new(&r, count));
            } else {
                println!("E0 = {}", r.e0);
                println!("couplings ({}):", r.exceptional_t.len());
                for t in &r.exceptional_t {
                    println!("  {}", fmt_complex(t.re, t.im));
                }
                println!("in [0, 1]: {count}");
            }
        }
        Command::Cyclicity { family } => {
            let fam = family.load(&cfg)?;
            let verdict = cyclicity_check(&fam, &cfg);
            if cli.json {
                emit(&CyclicityJson::new(fam.n(), &verdict));
            } else {
                println!(
                    "cyclic: {} (Krylov rank {} of {}, {} generators)",
                    verdict.cyclic,
                    verdict.krylov_rank,
                    fam.n(),
                    verdict.generator_count
                );
            }
        }
        Command::Corpus {
            action: CorpusAction::List,
        } => {
            let list = corpus_list();
            if cli.json {
                let rows: Vec<_> = list
                    .iter()
                    .map(|c| serde_json::json!({ "id": c.id, "source": c.source, "description": c.description }))
                    .collect();
                emit(&rows);
            } else {
                for c in &list {
                    println!("{:<28} {}", c.id, c.source);
                }
            }
        }
        Command::Corpus {
            action: CorpusAction::Run { id },
        } => {
            let outcome = corpus_run(id, &cfg)?;
            let view = CorpusRunJson::from(&outcome);
            if cli.json {
                emit(&view);
            } else {
                println!("{}: {}", view.id, if view.passed { "PASS" } else { "FAIL" });
                for c in &view.checks {
                    println!(
                        "  [{}] {}: {}",
                        if c.passed { "ok" } else { "!!" },
                        c.name,
                        c.detail
                    );
                }
                if let Some(ex) = &view.exceptional {
                    print!("{}", render_exceptional(ex));
                }
                if let pencil_persist::corpus::CorpusResult::Family { report, .. } = &outcome.result
                {
                    print!("{}", render_report(report));
                }
            }
            if !view.passed {
                return Err(CliError::CorpusMismatch {
                    id: view.id,
                    failed: view
                        .checks
                        .iter()
                        .filter(|c| !c.passed)
                        .map(|c| c.name.to_string())
                        .collect(),
                });
            }
        }
        Command::Hunt { dim, trials, seed } => {
            let summary = hunt(*dim, *trials, *seed, &cfg)?;
            if cli.json {
                emit(&HuntJson::from(&summary));
            } else {
                println!(
                    "{} of {} trials produced a verified family ({:.0}%)",
                    summary.families.len(),
                    summary.trials,
                    100.0 * summary.success_rate()
                );
                for f in &summary.families {
                    println!(
                        "  trial {:>3}  seed {:<20}  witness residual {:.2e}",
                        f.trial,
                        f.seed,
                        f.witness.max_residual()
                    );
                }
            }
        }
    }
    Ok(())
}

fn fmt_real(x: f64) -> String {
    if x == 0.0 || (1e-4..1e6).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:.6e}")
    }
}

fn fmt_complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        fmt_real(re)
    } else if im < 0.0 {
        format!("{} - {}i", fmt_real(re), fmt_real(-im))
    } else {
        format!("{} + {}i", fmt_real(re), fmt_real(im))
    }
}

fn render_exceptional(ex: &ExceptionalJson) -> String {
    let mut s = format!("exceptional set: {}\n", ex.kind);
    for r in &ex.roots {
        s += &format!(
            "  t = {}  (multiplicity {})\n",
            fmt_complex(r.re, r.im),
            r.multiplicity
        );
    }
    if !ex.roots.is_empty() {
        s += &format!(
            "  real roots in [0, 1]: {}\n",
            ex.real_roots_unit_interval.len()
        );
    }
    s
}

fn render_report(report: &PersistenceReport) -> String {
    let r = ReportJson::from(report);
    let mut s = format!(
        "λ0 = {}{}\n",
        r.lambda0,
        if r.lambda0_in_spectrum {
            " (in σ(H0))"
        } else {
            ""
        }
    );
    s += &render_exceptional(&r.exceptional);
    s += &format!("cyclic: {} (Krylov rank {})\n", r.cyclic, r.krylov_rank);
    let vc = &r.v_class;
    let sign = if vc.indefinite {
        "indefinite"
    } else if vc.psd {
        "positive semidefinite"
    } else {
        "negative semidefinite"
    };
    s += &format!(
        "V: {sign}, rank₊ {}, rank₋ {}, kernel dimension {}\n",
        vc.rank_plus, vc.rank_minus, vc.kernel_dim
    );
    s += &format!("generic kernel dimension: {}\n", r.generic_kernel_dimension);
    s += "checks:\n";
    for c in &r.theorem_checks {
        if c.applicable {
            s += &format!(
                "  {:<28} {}  predicted: {}; observed: {}\n",
                c.name,
                if c.consistent { "ok" } else { "INCONSISTENT" },
                c.predicted,
                c.observed
            );
        } else {
            s += &format!("  {:<28} {}\n", c.name, c.predicted);
        }
    }
    for w in &r.witnesses {
        s += &format!(
            "kernel witness at t = {}: residual {:.2e}\n",
            fmt_complex(w.t.re, w.t.im),
            w.residual
        );
    }
    s += &format!("measure estimate: {}\n", r.measure_estimate);
    for n in &r.notes {
        s += &format!("note: {n}\n");
    }
    s
}
