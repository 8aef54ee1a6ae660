use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use turan_stability::edgelist::{read_edge_list_file, write_edge_list};
use turan_stability::generators::GenSpec;
use turan_stability::partitioner::theorem1_certificate_with;
use turan_stability::stability::StabilityCertificate;
use turan_stability::sweep::{
    certify, csv_lines, render_report, run_sweep, SweepConfig, ORACLE_COLUMNS, SCHEMA,
    SCHEMA_WITH_ORACLE,
};
use turan_stability::{Error, Guards};

/// Exit status when a certificate verdict fails.
const VERDICT_FAILED: u8 = 4;

/// Degree-majorization partitions and edit-distance certificates for K_{p+1}-free graphs.
///
/// Exit status: 0 all verdicts hold, 1 input error, 2 the graph contains K_{p+1},
/// 3 an exhaustive search exceeded its size guard, 4 a verdict failed.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the graph described by a generator spec `kind:n:p:param:seed` as an edge list.
    Gen {
        spec: String,
        /// Replace the spec's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output file (standard output if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the majorization trace and the partition certificate.
    Partition {
        input: PathBuf,
        #[arg(long)]
        p: usize,
    },
    /// Print one stability-certificate CSV row; a readable report goes to standard error.
    Verify {
        input: PathBuf,
        #[arg(long)]
        p: usize,
        /// Compare against the exhaustive oracle (small graphs only).
        #[arg(long)]
        with_oracle: bool,
        /// Print the schema line and CSV header before the row.
        #[arg(long)]
        header: bool,
    },
    /// Certify every instance of a TOML sweep configuration and write CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Output file; overrides `out` in the configuration (standard output if neither).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            if let Error::CliquePresent { witness } = &err {
                println!("witness {}", join(witness));
            }
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn join(vs: &[usize]) -> String {
    vs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Error> {
    let guards = Guards::from_env()?;
    match cli.command {
        Command::Gen { spec, seed, out } => {
            let mut spec: GenSpec = spec.parse()?;
            if let Some(seed) = seed {
                spec = spec.with_seed(seed);
            }
            let g = spec.generate_with(&guards)?;
            write_output(out.as_ref(), &write_edge_list(&g))?;
            Ok(0)
        }
        Command::Partition { input, p } => {
            let g = read_edge_list_file(&input)?;
            let outcome = theorem1_certificate_with(&g, p, &guards)?;
            let c = outcome.certificate;
            print!("{}", outcome.trace.to_text());
            println!("n={} p={} t={} s={}", c.n, c.p, c.t, c.s);
            println!("internal_total={}", c.internal_total);
            println!("h0_edges={}", c.h0_edges);
            println!("bound_ok={}", c.bound_ok);
            Ok(if c.bound_ok { 0 } else { VERDICT_FAILED })
        }
        Command::Verify {
            input,
            p,
            with_oracle,
            header,
        } => {
            let g = read_edge_list_file(&input)?;
            let row = certify(&g, p, with_oracle, None, &guards)?;
            if header {
                println!(
                    "# schema={}",
                    if with_oracle {
                        SCHEMA_WITH_ORACLE
                    } else {
                        SCHEMA
                    }
                );
                let mut columns: Vec<String> = StabilityCertificate::CSV_HEADER
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
                if with_oracle {
                    columns.extend(ORACLE_COLUMNS.map(String::from));
                }
                print!("{}", csv_lines([columns]));
            }
            print!("{}", csv_lines([row.csv_record()]));
            eprint!("{}", render_report(&row));
            Ok(if row.all_verdicts_hold() {
                0
            } else {
                VERDICT_FAILED
            })
        }
        Command::Sweep { config, out } => {
            let text = std::fs::read_to_string(&config)?;
            let config = SweepConfig::from_toml(&text)?;
            let result = run_sweep(&config, &guards)?;
            write_output(out.as_ref().or(config.out.as_ref()), &result.to_csv())?;
            eprintln!(
                "rows={} failures={} balance_failures={}",
                result.rows.len(),
                result.failures(),
                result.balance_failures()
            );
            Ok(if result.failures() == 0 {
                0
            } else {
                VERDICT_FAILED
            })
        }
    }
}
