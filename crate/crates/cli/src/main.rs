use std::io::IsTerminal;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use jordan_moments::albert::{albert_audit, albert_mixed_moment, albert_moment, albert_perturb_coefficient};
use jordan_moments::octonion::MultiplicationTable;
use jordan_moments::spin::{
    barbell_orbit_sum, connected_series, spin_mixed_moment, spin_moment_closed, spin_moment_enum, spin_moment_gf,
    spin_perturb_coefficient,
};
use jordan_moments::verify::{
    verify_albert_mixed, verify_albert_moment, verify_default, verify_spin_mixed, verify_spin_moment, VerifyReport,
};
use jordan_moments::{with_workers, Error, MomentPolynomial, MultiplicityVector, RunOptions};

mod render;

use render::Format;

#[derive(Parser, Debug)]
#[command(name = "jmoments", version, about = "Exact Gaussian trace moments for the Albert algebra and spin factors")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "JMOMENTS_WORKERS")]
    workers: Option<usize>,

    /// Run enumerations beyond the default budget.
    #[arg(long, global = true)]
    allow_long: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Moments of the octonionic Hermitian model.
    Albert {
        #[command(subcommand)]
        command: AlbertCommand,
    },
    /// Moments of the spin factor.
    Spin {
        #[command(subcommand)]
        command: SpinCommand,
    },
    /// Compare diagram counts against the Wick oracle.
    Verify(VerifyArgs),
    /// Emit a full table of moment polynomials.
    Table(TableArgs),
    /// Print the octonion unit multiplication table.
    DumpOctonionTable {
        #[arg(long, value_enum, default_value_t = TableChoice::Canonical)]
        table: TableChoice,
    },
}

#[derive(Subcommand, Debug)]
enum AlbertCommand {
    /// `⟨Tr X^k⟩`.
    Moment {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: Option<i64>,
    },
    /// `⟨Π (Tr X^k)^{m_k}⟩`.
    Mixed {
        /// Multiplicities, e.g. `3:2,4:1`.
        #[arg(long)]
        m: MultiplicityVector,
        #[arg(long)]
        n: Option<i64>,
        /// Divide by the symmetry factor.
        #[arg(long)]
        perturb: bool,
        /// Emit the per-gluing audit trace instead.
        #[arg(long)]
        audit: bool,
    },
}

#[derive(Subcommand, Debug)]
enum SpinCommand {
    /// `⟨Tr x^k⟩`.
    Moment {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long, value_enum, default_value_t = Method::Gf)]
        method: Method,
    },
    /// The connected series `log B(x)` through `x^order`.
    Connected {
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Perturbation coefficient for a multiplicity vector.
    Perturb {
        #[arg(long)]
        m: MultiplicityVector,
        #[arg(long)]
        n: Option<i64>,
        /// Print the unnormalized mixed moment.
        #[arg(long)]
        mixed: bool,
    },
    /// Orbits of the barbell group on barbell graphs.
    Orbit {
        /// Number of barbells.
        #[arg(long)]
        m: usize,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    algebra: Option<Algebra>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// A mixed moment: algebra then multiplicities, e.g. `--mixed spin 3:2`.
    #[arg(long, num_args = 2, value_names = ["ALGEBRA", "M"])]
    mixed: Option<Vec<String>>,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Which table: 1 (octonionic) or 2 (spin factor).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    paper: u8,
    /// Largest k; defaults to 6 for table 1 and 20 for table 2.
    #[arg(long)]
    max_k: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Enum,
    Gf,
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algebra {
    Albert,
    Spin,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableChoice {
    Canonical,
    Alternate,
}

/// Table 1 rows past this k are gated behind `--allow-long`.
const TABLE_ONE_FAST_K: usize = 6;

fn progress_options(allow_long: bool) -> RunOptions {
    let mut opts = RunOptions {
        allow_long,
        progress: None,
    };
    if std::io::stderr().is_terminal() || allow_long {
        let last = Arc::new(AtomicUsize::new(usize::MAX));
        opts.progress = Some(Arc::new(move |done: usize, total: usize| {
            let pct = done * 100 / total.max(1);
            if last.swap(pct, Ordering::Relaxed) != pct {
                eprint!("\r{done}/{total} ({pct}%)");
                if done == total {
                    eprintln!();
                }
            }
        }));
    }
    opts
}

fn albert_n(n: usize) -> Vec<usize> {
    vec![n]
}

fn run(cli: Cli) -> Result<ExitCode> {
    let format = if cli.json { Format::Json } else { cli.format };
    let opts = progress_options(cli.allow_long);
    let workers = cli.workers;
    let out = with_workers(workers, || dispatch(cli.command, format, &opts))??;
    print!("{}", out.text);
    Ok(out.code)
}

struct Output {
    text: String,
    code: ExitCode,
}

impl Output {
    fn ok(text: String) -> Self {
        Self {
            text,
            code: ExitCode::SUCCESS,
        }
    }
}

fn poly_output(format: Format, key: &str, k: Value, poly: &MomentPolynomial, n: Option<i64>) -> Output {
    Output::ok(render::polynomial(format, key, k, poly, n))
}

fn dispatch(command: Command, format: Format, opts: &RunOptions) -> Result<Output> {
    Ok(match command {
        Command::Albert { command } => match command {
            AlbertCommand::Moment { k, n } => poly_output(format, "k", json!(k), &albert_moment(k, opts)?, n),
            AlbertCommand::Mixed { m, n, perturb, audit } => {
                if audit {
                    let dump = albert_audit(m.sizes(), opts)?;
                    return Ok(Output::ok(render::json_value(&serde_json::to_value(dump)?)));
                }
                let poly = if perturb {
                    albert_perturb_coefficient(&m, opts)?
                } else {
                    albert_mixed_moment(&m, opts)?
                };
                poly_output(format, "m", json!(m.to_string()), &poly, n)
            }
        },
        Command::Spin { command } => match command {
            SpinCommand::Moment { k, n, method } => {
                let poly = match method {
                    Method::Enum => spin_moment_enum(k, opts)?.moment,
                    Method::Gf => spin_moment_gf(k)?.swap_remove(k),
                    Method::Closed => spin_moment_closed(k),
                };
                poly_output(format, "k", json!(k), &poly, n)
            }
            SpinCommand::Connected { order } => {
                let series = connected_series(order / 2)?;
                if !series.agree() {
                    bail!("log B(x) disagrees with the closed form through x^{order}");
                }
                Output::ok(render::series(format, &series.from_log, order))
            }
            SpinCommand::Perturb { m, n, mixed } => {
                let poly = if mixed {
                    spin_mixed_moment(&m, opts)?
                } else {
                    spin_perturb_coefficient(&m, opts)?
                };
                poly_output(format, "m", json!(m.to_string()), &poly, n)
            }
            SpinCommand::Orbit { m } => Output::ok(render::orbits(format, &barbell_orbit_sum(m, opts)?)),
        },
        Command::Verify(args) => {
            let reports = verify(args, opts)?;
            let failed = reports.iter().any(VerifyReport::is_failure);
            Output {
                text: render::reports(format, &reports),
                code: if failed { ExitCode::from(1) } else { ExitCode::SUCCESS },
            }
        }
        Command::Table(args) => {
            let rows = table(args, opts)?;
            Output::ok(render::table(format, &rows))
        }
        Command::DumpOctonionTable { table } => {
            let t = match table {
                TableChoice::Canonical => MultiplicationTable::canonical(),
                TableChoice::Alternate => MultiplicationTable::alternate(),
            };
            Output::ok(render::octonion_table(format, &t.dump()))
        }
    })
}

fn verify(args: VerifyArgs, opts: &RunOptions) -> Result<Vec<VerifyReport>> {
    if let Some(mixed) = args.mixed {
        let algebra = Algebra::from_str(&mixed[0], true).map_err(Error::InvalidInput)?;
        let m: MultiplicityVector = mixed[1].parse()?;
        return Ok(match algebra {
            Algebra::Albert => verify_albert_mixed(&m, &args.n.map_or(vec![1, 2, 3], albert_n), opts)?,
            Algebra::Spin => verify_spin_mixed(&m, opts)?,
        });
    }
    Ok(match (args.algebra, args.k) {
        (None, None) => verify_default(opts)?,
        (Some(Algebra::Albert), Some(k)) => {
            verify_albert_moment(k, &args.n.map_or(vec![1, 2, 3], albert_n), opts)?
        }
        (Some(Algebra::Spin), Some(k)) => verify_spin_moment(k, args.n, opts)?,
        _ => return Err(Error::InvalidInput("verify needs both --algebra and --k, or --mixed".into()).into()),
    })
}

fn table(args: TableArgs, opts: &RunOptions) -> Result<Vec<(usize, MomentPolynomial)>> {
    match args.paper {
        1 => {
            let max_k = args.max_k.unwrap_or(TABLE_ONE_FAST_K);
            if max_k > TABLE_ONE_FAST_K && !opts.allow_long {
                return Err(Error::BudgetExceeded {
                    what: format!("table 1 through k = {max_k}"),
                    limit: TABLE_ONE_FAST_K,
                    hint: "pass --allow-long to run it anyway".into(),
                }
                .into());
            }
            (2..=max_k)
                .step_by(2)
                .map(|k| Ok((k, albert_moment(k, opts)?)))
                .collect()
        }
        _ => {
            let max_k = args.max_k.unwrap_or(20);
            let gf = spin_moment_gf(max_k)?;
            Ok(gf.into_iter().enumerate().step_by(2).collect())
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. }) => 3,
        Some(Error::InvalidInput(_) | Error::Parse(_)) => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli).context("jmoments failed") {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(exit_code_for(&e))
        }
    }
}
