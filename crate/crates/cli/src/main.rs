//! Thin command-line driver over the primematrix library.
//!
//! Exit codes: 0 when every claim verified or the query was served, 1 on a
//! counterexample or a witness not found below its limit, 2 on usage errors.
//! Identical argv produces byte-identical data streams; timing appears only
//! in the `elapsed_ms` field of JSON reports.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use primematrix::harness;
use primematrix::shifted_sets;
use primematrix::{
    diff_matrix::{self, DiffMatrixView},
    sum_matrix::{self, SumMatrixView},
};
use primematrix::{ClaimReport, Family, PrimalityTable, StatSeries};

#[derive(Parser)]
#[command(
    name = "primematrix",
    version,
    about = "Prime-indexed matrix families, characteristic sequences, and claim verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build primality tables
    Sieve {
        #[command(subcommand)]
        action: SieveAction,
    },
    /// Inspect one matrix of either family
    Matrix {
        #[command(subcommand)]
        which: MatrixCommand,
    },
    /// Characteristic sequence of one matrix
    Charseq {
        #[arg(long)]
        family: FamilyArg,
        /// Matrix order
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Zero/small-value statistics series sampled across orders
    Stats {
        #[arg(long)]
        family: FamilyArg,
        /// Largest order to reach
        #[arg(long)]
        n_max: usize,
        /// Sampling stride
        #[arg(long)]
        step: usize,
    },
    /// Even numbers as sums of two odd primes
    Goldbach {
        #[command(subcommand)]
        action: GoldbachAction,
    },
    /// Prime pairs at a fixed even gap
    Polignac {
        #[command(subcommand)]
        action: PolignacAction,
    },
    /// Shifted prime sets S_a = {k : 2k+a prime}
    Sets {
        #[command(subcommand)]
        action: SetsAction,
    },
    /// Batch verification suites; exit 0 only when everything verifies
    Verify {
        suite: SuiteArg,
        /// Sieve bound; each suite derives its own range from it (see help)
        #[arg(long)]
        limit: u64,
        /// Worker threads (default: all cores); results do not depend on it
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Subcommand)]
enum SieveAction {
    /// Sieve up to --limit and report the prime count
    Build {
        #[arg(long)]
        limit: u64,
        /// Also persist the table to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MatrixCommand {
    /// Sum-gated family: entry (i,j) is 2(i+j+1) or 0
    Sum(MatrixArgs),
    /// Difference-gated family: entry (i,j) is 2|i-j| or 0
    Diff(MatrixArgs),
}

#[derive(Args)]
struct MatrixArgs {
    /// Matrix order
    #[arg(long)]
    n: usize,
    /// Print the full grid (capped order) instead of the summary
    #[arg(long)]
    render: bool,
}

#[derive(Subcommand)]
enum GoldbachAction {
    /// Check every even number in 6..=--max
    Verify {
        #[arg(long)]
        max: u64,
    },
    /// Smallest-p two-odd-prime split of one even number
    Witness {
        #[arg(long)]
        even: u64,
    },
}

#[derive(Subcommand)]
enum PolignacAction {
    /// Count prime pairs (p, p+gap) with p+gap <= --limit
    Count {
        #[arg(long)]
        gap: u64,
        #[arg(long)]
        limit: u64,
    },
    /// List those pairs as CSV
    List {
        #[arg(long)]
        gap: u64,
        #[arg(long)]
        limit: u64,
    },
}

#[derive(Subcommand)]
enum SetsAction {
    /// Members k <= --limit of S_a
    List {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        limit: u64,
    },
    /// Intersection of S_a and S_b up to --limit on k
    Intersect {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        /// Report only the first member above this threshold
        #[arg(long)]
        above: Option<u64>,
        #[arg(long)]
        limit: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Sum,
    Diff,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Sum => Family::Sum,
            FamilyArg::Diff => Family::Diff,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Goldbach,
    Diffpairs,
    Prop2,
    Recurrence,
}

enum Outcome {
    Served,
    ClaimFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match run(cli.command, &mut stdout.lock()) {
        Ok(Outcome::Served) => ExitCode::SUCCESS,
        Ok(Outcome::ClaimFailed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn build_table(limit: u64) -> primematrix::Result<PrimalityTable> {
    PrimalityTable::build(limit.max(3))
}

fn require(cond: bool, msg: &str) -> primematrix::Result<()> {
    if cond {
        Ok(())
    } else {
        Err(primematrix::Error::Usage(msg.into()))
    }
}

/// Fast-fail range checks so no sieve is built for argv that can only be
/// rejected. The library revalidates everything behind these.
fn validate(command: &Command) -> primematrix::Result<()> {
    match command {
        Command::Sieve {
            action: SieveAction::Build { limit, .. },
        } => require(*limit >= 2, "sieve limit must be at least 2"),
        Command::Matrix { which } => {
            let args = match which {
                MatrixCommand::Sum(args) | MatrixCommand::Diff(args) => args,
            };
            require(args.n >= 1, "order must be at least 1")
        }
        Command::Charseq { n, .. } => require(*n >= 1, "order must be at least 1"),
        Command::Stats { n_max, step, .. } => {
            require(*n_max >= 1, "n-max must be at least 1")?;
            require(*step >= 1, "step must be at least 1")
        }
        Command::Goldbach { action } => {
            let even = match action {
                GoldbachAction::Verify { max } => max,
                GoldbachAction::Witness { even } => even,
            };
            require(
                even % 2 == 0 && *even >= 6,
                "target must be an even number >= 6",
            )
        }
        Command::Polignac { action } => {
            let gap = match action {
                PolignacAction::Count { gap, .. } | PolignacAction::List { gap, .. } => gap,
            };
            require(*gap > 0 && gap % 2 == 0, "gap must be a positive even number")
        }
        Command::Sets { action } => match action {
            SetsAction::List { a, .. } => require(a % 2 == 1, "offset must be odd"),
            SetsAction::Intersect { a, b, .. } => {
                require(a % 2 == 1 && b % 2 == 1, "offsets must be odd")
            }
        },
        Command::Verify { suite, limit, .. } => match suite {
            SuiteArg::All => require(*limit >= 100, "verify-all needs --limit >= 100"),
            SuiteArg::Goldbach => require(*limit >= 6, "goldbach needs --limit >= 6"),
            SuiteArg::Diffpairs => require(*limit >= 9, "diffpairs needs --limit >= 9"),
            SuiteArg::Prop2 => require(*limit >= 2, "prop2 needs --limit >= 2"),
            SuiteArg::Recurrence => require(*limit >= 2, "recurrence needs --limit >= 2"),
        },
    }
}

fn run(command: Command, out: &mut impl Write) -> primematrix::Result<Outcome> {
    validate(&command)?;
    match command {
        Command::Sieve {
            action: SieveAction::Build { limit, out: path },
        } => {
            let table = PrimalityTable::build(limit)?;
            if let Some(path) = path {
                table.save(&path)?;
            }
            writeln!(out, "limit,primes")?;
            writeln!(out, "{},{}", table.limit(), table.prime_count())?;
            Ok(Outcome::Served)
        }

        Command::Matrix { which } => {
            let (family, args) = match which {
                MatrixCommand::Sum(args) => (Family::Sum, args),
                MatrixCommand::Diff(args) => (Family::Diff, args),
            };
            let table = build_table(2 * args.n as u64 + 1)?;
            let (grid, primes) = match family {
                Family::Sum => {
                    let view = SumMatrixView::from_table(&table, args.n)?;
                    let primes = view.indicator().count_ones();
                    (args.render.then(|| view.render()).transpose()?, primes)
                }
                Family::Diff => {
                    let view = DiffMatrixView::from_table(&table, args.n)?;
                    let primes = view.indicator().count_ones();
                    (args.render.then(|| view.render()).transpose()?, primes)
                }
            };
            match grid {
                Some(grid) => {
                    for row in grid {
                        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
                        writeln!(out, "{}", cells.join(" "))?;
                    }
                }
                None => {
                    let nonzero = match family {
                        Family::Sum => primes * primes,
                        Family::Diff => primes * primes - primes,
                    };
                    writeln!(out, "family,n,primes,nonzero")?;
                    writeln!(out, "{family},{},{primes},{nonzero}", args.n)?;
                }
            }
            Ok(Outcome::Served)
        }

        Command::Charseq { family, n, format } => {
            let table = build_table(2 * n as u64 + 1)?;
            match Family::from(family) {
                Family::Sum => {
                    let seq = sum_matrix::char_sequence_fast(&table.odd_indicator(n)?);
                    emit_sequence(out, format, "sum", "even", n, seq.values(), |k| {
                        2 * (k as u64 + 2)
                    })?;
                }
                Family::Diff => {
                    let seq = diff_matrix::master_sequence_fast(&table.odd_indicator(n)?);
                    emit_sequence(out, format, "diff", "gap", n, seq.values(), |k| {
                        2 * (k as u64 - 1)
                    })?;
                }
            }
            Ok(Outcome::Served)
        }

        Command::Stats {
            family,
            n_max,
            step,
        } => {
            let table = build_table(2 * n_max as u64 + 1)?;
            let series = harness::mu_nu_series(&table, family.into(), n_max, step)?;
            emit_series(out, &series)?;
            Ok(Outcome::Served)
        }

        Command::Goldbach { action } => match action {
            GoldbachAction::Verify { max } => {
                let table = build_table(max)?;
                let report = harness::verify_goldbach(&table, max)?;
                emit_reports(out, std::slice::from_ref(&report))
            }
            GoldbachAction::Witness { even } => {
                let table = build_table(even)?;
                match harness::goldbach_witness(&table, even)? {
                    Some((p, q)) => {
                        writeln!(out, "even,p,q")?;
                        writeln!(out, "{even},{p},{q}")?;
                        Ok(Outcome::Served)
                    }
                    None => {
                        let report = ClaimReport {
                            claim: "goldbach-witness".into(),
                            range: format!("even {even}"),
                            status: primematrix::ClaimStatus::Counterexample,
                            witnesses: vec![],
                            counterexample: Some(serde_json::json!({ "even": even })),
                            elapsed_ms: 0,
                        };
                        writeln!(out, "{}", report.to_json())?;
                        Ok(Outcome::ClaimFailed)
                    }
                }
            }
        },

        Command::Polignac { action } => match action {
            PolignacAction::Count { gap, limit } => {
                let table = build_table(limit)?;
                let census = harness::polignac_census(&table, gap, limit, false)?;
                writeln!(out, "{}", census.count)?;
                Ok(Outcome::Served)
            }
            PolignacAction::List { gap, limit } => {
                let table = build_table(limit)?;
                let census = harness::polignac_census(&table, gap, limit, true)?;
                writeln!(out, "p,q")?;
                for (p, q) in census.pairs.expect("requested") {
                    writeln!(out, "{p},{q}")?;
                }
                Ok(Outcome::Served)
            }
        },

        Command::Sets { action } => match action {
            SetsAction::List { a, limit } => {
                let table = build_table(2 * limit + a)?;
                let set = shifted_sets::members(&table, a, limit)?;
                writeln!(out, "k,two_k_plus_a")?;
                for &k in set.members() {
                    writeln!(out, "{k},{}", 2 * k + a)?;
                }
                Ok(Outcome::Served)
            }
            SetsAction::Intersect { a, b, above, limit } => {
                let table = build_table(2 * limit + a.max(b))?;
                writeln!(out, "k,two_k_plus_a,two_k_plus_b")?;
                match above {
                    Some(threshold) => {
                        match shifted_sets::first_witness_above(&table, a, b, threshold, limit)? {
                            Some(k) => {
                                writeln!(out, "{k},{},{}", 2 * k + a, 2 * k + b)?;
                                Ok(Outcome::Served)
                            }
                            None => Ok(Outcome::ClaimFailed),
                        }
                    }
                    None => {
                        for k in shifted_sets::intersect(&table, a, b, limit)? {
                            writeln!(out, "{k},{},{}", 2 * k + a, 2 * k + b)?;
                        }
                        Ok(Outcome::Served)
                    }
                }
            }
        },

        Command::Verify {
            suite,
            limit,
            threads,
        } => {
            let mut builder = rayon::ThreadPoolBuilder::new();
            if let Some(k) = threads {
                builder = builder.num_threads(k);
            }
            let pool = builder
                .build()
                .map_err(|e| primematrix::Error::Usage(format!("thread pool: {e}")))?;
            let reports = pool.install(|| run_suite(suite, limit))?;
            emit_reports(out, &reports)
        }
    }
}

/// Map one suite name and a sieve bound onto the suite's natural range:
/// evens to the bound itself, gap half-widths to (limit-1)/8, window primes
/// to limit/2, recurrence orders to the bound directly.
fn run_suite(suite: SuiteArg, limit: u64) -> primematrix::Result<Vec<ClaimReport>> {
    match suite {
        SuiteArg::All => {
            let table = PrimalityTable::build(limit.max(3))?;
            harness::verify_all(&table, limit)
        }
        SuiteArg::Goldbach => {
            let table = PrimalityTable::build(limit.max(3))?;
            Ok(vec![harness::verify_goldbach(&table, limit & !1)?])
        }
        SuiteArg::Diffpairs => {
            let table = PrimalityTable::build(limit.max(3))?;
            Ok(vec![harness::verify_diff_pairs(&table, (limit - 1) / 8)?])
        }
        SuiteArg::Prop2 => {
            let table = PrimalityTable::build(limit.max(3))?;
            Ok(vec![harness::verify_twins_between_p_and_2p(
                &table,
                limit / 2,
            )?])
        }
        SuiteArg::Recurrence => {
            let table = PrimalityTable::build(2 * limit + 1)?;
            Ok(vec![
                harness::recurrence_consistency(&table, Family::Sum, limit as usize)?,
                harness::recurrence_consistency(&table, Family::Diff, limit as usize)?,
            ])
        }
    }
}

fn emit_reports(out: &mut impl Write, reports: &[ClaimReport]) -> primematrix::Result<Outcome> {
    let mut all_passed = true;
    for report in reports {
        writeln!(out, "{}", report.to_json())?;
        all_passed &= report.passed();
    }
    Ok(if all_passed {
        Outcome::Served
    } else {
        Outcome::ClaimFailed
    })
}

fn emit_sequence(
    out: &mut impl Write,
    format: OutputFormat,
    family: &str,
    even_col: &str,
    n: usize,
    values: &[u64],
    even_of: impl Fn(usize) -> u64,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "k,{even_col},{}", value_col(family))?;
            for (idx, &v) in values.iter().enumerate() {
                writeln!(out, "{},{},{v}", idx + 1, even_of(idx + 1))?;
            }
        }
        OutputFormat::Json => {
            write!(out, "{{\"family\":\"{family}\",\"n\":{n},\"rows\":[")?;
            for (idx, &v) in values.iter().enumerate() {
                if idx > 0 {
                    write!(out, ",")?;
                }
                write!(
                    out,
                    "{{\"k\":{},\"{even_col}\":{},\"{}\":{v}}}",
                    idx + 1,
                    even_of(idx + 1),
                    value_col(family)
                )?;
            }
            writeln!(out, "]}}")?;
        }
    }
    Ok(())
}

fn value_col(family: &str) -> &'static str {
    if family == "sum" {
        "L"
    } else {
        "f"
    }
}

fn emit_series(out: &mut impl Write, series: &StatSeries) -> std::io::Result<()> {
    let (count_col, first_col) = match series.family {
        Family::Sum => ("m0", "k0"),
        Family::Diff => ("alpha", "t"),
    };
    writeln!(out, "n,{count_col},{first_col},mu,nu")?;
    for row in &series.rows {
        let first = row.first.map(|v| v.to_string()).unwrap_or_default();
        let nu = row.nu.map(|v| v.to_string()).unwrap_or_default();
        writeln!(out, "{},{},{first},{},{nu}", row.n, row.count, row.mu)?;
    }
    Ok(())
}

