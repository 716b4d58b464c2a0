use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use polyprism::closed_forms::{gutman_closed, kfstar_closed, kfstar_gutman_ratio, tau_closed};
use polyprism::exact::{to_decimal_string, DECIMAL_DIGITS};
use polyprism::invariants::PATTERN_BOUNDARY_WARNING;
use polyprism::verify::{run_verification, CheckId, VerificationReport};
use polyprism::{Error, Family, InvariantReport};

const VERIFY_ABOUT: &str = "\
Check the closed forms for B_n ⊠ K_2 against independent routes, one row per (n, check).

Checks:
  decomposition   eigenvalues of the normalized Laplacian = symmetric ∪ antisymmetric block
                  spectra, and the reduced M/N matrices reproduce the symmetric block
  ls-spectrum     antisymmetric block spectrum is 6/5 x4 and 8/7 x(2n-2)
  minors          leading minors of M and N: exact determinant = closed form
  coeffs          characteristic-polynomial coefficients of M and N, det N routes
  kfstar          Kf* closed form = reduced-spectra form (exact) = resistance and spectral routes
  tau             spanning-tree closed form = Matrix-Tree determinant (exact)
  gutman          Gutman closed form = distance sum (exact)
  ratio           |Kf*/Gut - 1/8| < 1/n (exact)
  degree-product  prod(d_i) * prod(lambda_k) / 2m = spanning-tree count (float probe;
                  `lemma22` is accepted as an alias)

Tolerances (fixed):
  spectral routes to Kf*      1e-9 relative
  eigenvalue multisets        1e-8 absolute
  degree-product probe        1e-6 relative

Rows with n = 1 are informational (pattern_regime = false) and never fail the run.
Exit status: 0 if every n >= 2 row passes, 1 otherwise, 2 on usage errors.";

#[derive(Parser)]
#[command(
    name = "polyprism",
    version,
    about = "Strong prisms of linear polyomino chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph as DOT or JSON.
    Gen {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        /// Output file; the graph goes to standard output when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compute W, Gut, Kf, Kf* and tau of a graph by every available route.
    Invariants {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Add the closed-form values (prism-polyomino only).
        #[arg(long)]
        exact: bool,
        /// Omit the `generated_at` field so output is byte-for-byte reproducible.
        #[arg(long)]
        no_timestamp: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    #[command(about = "Verify the closed forms against independent routes", long_about = VERIFY_ABOUT)]
    Verify {
        #[arg(long, default_value_t = 2)]
        min_n: usize,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        /// Comma-separated check ids, or `all`.
        #[arg(long, default_value = "all", value_parser = parse_checks)]
        checks: CheckList,
        /// Worker threads; 0 uses one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Table)]
        format: TableFormat,
    },
    /// Tabulate the closed forms for n = 2..=max-n as CSV.
    Sweep {
        #[arg(long)]
        max_n: usize,
        /// Output file; CSV goes to standard output when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Table,
    Json,
    Csv,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Clone)]
struct CheckList(Vec<CheckId>);

fn parse_checks(s: &str) -> Result<CheckList, String> {
    CheckId::parse_list(s)
        .map(CheckList)
        .map_err(|e| e.to_string())
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter(_) | Error::InvalidGraph(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure {
        code: 1,
        message: format!("cannot write {}: {e}", path.display()),
    }
}

fn emit(output: Option<&Path>, content: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, content).map_err(|e| io_failure(path, e)),
        None => io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| io_failure(Path::new("<stdout>"), e)),
    }
}

fn csv_string(header: &[&str], records: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in records {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn cmd_gen(
    family: Family,
    n: usize,
    format: GraphFormat,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let g = family.build(n)?;
    let content = match format {
        GraphFormat::Dot => g.to_dot(&format!("{}_{n}", family.as_str().replace('-', "_"))),
        GraphFormat::Json => {
            let mut s = serde_json::to_string_pretty(&g.to_json_value()).expect("graph serializes");
            s.push('\n');
            s
        }
    };
    emit(output, &content)?;
    let counts = format!("{family} n={n}: {} vertices, {} edges", g.order(), g.size());
    if output.is_some() {
        println!("{counts}");
    } else {
        eprintln!("{counts}");
    }
    Ok(())
}

fn cmd_invariants(
    family: Family,
    n: usize,
    exact: bool,
    no_timestamp: bool,
    format: ReportFormat,
) -> Result<(), Failure> {
    let g = family.build(n)?;
    let mut report = InvariantReport::compute(&g, Some(family.as_str()), Some(n))?;
    if family == Family::PrismPolyomino {
        if exact {
            report.attach_prism_closed_forms(n)?;
        } else if n == 1 {
            report.warnings.push(PATTERN_BOUNDARY_WARNING.into());
        }
    }
    if !no_timestamp {
        report.generated_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
    }
    let content = match format {
        ReportFormat::Json => report.to_json_pretty() + "\n",
        ReportFormat::Csv => csv_string(&InvariantReport::CSV_HEADER, [report.csv_record()]),
    };
    emit(None, &content)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn cmd_verify(
    min_n: usize,
    max_n: usize,
    checks: &[CheckId],
    jobs: usize,
    format: TableFormat,
) -> Result<(), Failure> {
    let report = run_verification(min_n, max_n, checks, jobs)?;
    let content = match format {
        TableFormat::Table => report.to_table(),
        TableFormat::Json => {
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
        TableFormat::Csv => csv_string(&VerificationReport::CSV_HEADER, report.csv_records()),
    };
    emit(None, &content)?;
    let failures: Vec<String> = report
        .failures()
        .map(|r| {
            let values = r
                .values
                .iter()
                .map(|v| format!("{}={}", v.route, v.exact.as_ref().unwrap_or(&v.decimal)))
                .collect::<Vec<_>>()
                .join(", ");
            format!(
                "FAIL {} n={}: {values}{}",
                r.check,
                r.n,
                r.note
                    .as_ref()
                    .map(|n| format!(" ({n})"))
                    .unwrap_or_default()
            )
        })
        .collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: failures.join("\n"),
        })
    }
}

const SWEEP_HEADER: [&str; 6] = [
    "n",
    "kf_star_exact",
    "tau_exact",
    "gutman_exact",
    "ratio_decimal",
    "pattern_regime",
];

fn cmd_sweep(max_n: usize, output: Option<&Path>) -> Result<(), Failure> {
    if max_n < 2 {
        return Err(
            Error::InvalidParameter(format!("sweep needs --max-n >= 2, got {max_n}")).into(),
        );
    }
    let rows = (2..=max_n)
        .map(|n| {
            Ok(vec![
                n.to_string(),
                kfstar_closed(n)?.value.to_string(),
                tau_closed(n)?.value.to_string(),
                gutman_closed(n)?.value.to_string(),
                to_decimal_string(&kfstar_gutman_ratio(n)?, DECIMAL_DIGITS),
                (n >= 2).to_string(),
            ])
        })
        .collect::<Result<Vec<_>, Error>>()?;
    emit(output, &csv_string(&SWEEP_HEADER, rows))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen {
            family,
            n,
            format,
            output,
        } => cmd_gen(family, n, format, output.as_deref()),
        Command::Invariants {
            family,
            n,
            exact,
            no_timestamp,
            format,
        } => cmd_invariants(family, n, exact, no_timestamp, format),
        Command::Verify {
            min_n,
            max_n,
            checks,
            jobs,
            format,
        } => cmd_verify(min_n, max_n, &checks.0, jobs, format),
        Command::Sweep { max_n, output } => cmd_sweep(max_n, output.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
