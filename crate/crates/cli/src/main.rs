use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use umbraldob_cli::commands::{self, Identity, TableKind};
use umbraldob_cli::output::Format;
use umbraldob_cli::seqspec::{parse_rational_arg, parse_seq};
use umbraldob_cli::{sum_config, CliError, SUM_CAP_VAR};

/// Exact umbral, Dobinski and q-analogue tables and identity checks.
#[derive(Parser)]
#[command(name = "umbraldob", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a Stirling or Bell table up to n.
    Table {
        #[arg(long, value_enum)]
        kind: TableKind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Check an identity for every case up to n-max.
    Verify {
        #[arg(long, value_enum)]
        identity: Identity,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        seq: String,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Certified bounds on the psi-Poisson probabilities p_0..p_k-max.
    Dist {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        k_max: usize,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Compare independent routes to the Bell numbers up to n.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let config = sum_config(std::env::var(SUM_CAP_VAR).ok().as_deref())?;
    let (report, format) = match cli.command {
        Command::Table { kind, n, format } => (commands::table(kind, n)?, format),
        Command::Verify { identity, n_max, seq, format } => {
            let seq = parse_seq(&seq)?;
            (commands::verify(identity, n_max, &seq, &config)?, format)
        }
        Command::Dist { seq, lambda, k_max, format } => {
            let seq = parse_seq(&seq)?;
            let lambda = parse_rational_arg("lambda", &lambda)?;
            (commands::dist(&seq, &lambda, k_max, &config)?, format)
        }
        Command::Oracle { n, format } => (commands::oracle(n, &config)?, format),
    };
    Ok((report.render(format)?, report.failed))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok((text, failed)) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            let _ = out.flush();
            ExitCode::from(if failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("umbraldob: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
