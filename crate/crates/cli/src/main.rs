use std::process::ExitCode;

use apery_cli::commands::{self, Context, Family, Object};
use apery_cli::verify::{self, Suite};
use apery_cli::CliError;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "apery", version, about = "Exact expansions, mirror maps and instanton numbers for the Apery families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Family::Beukers)]
    family: Family,
    /// Highest power kept in the output
    #[arg(long, default_value_t = 10)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Neither read nor write the basis cache
    #[arg(long)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the expansion of a named object
    Expand {
        #[arg(value_enum)]
        object: Object,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite; exit status 1 if any check fails
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Truncation order (defaults depend on the suite)
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        no_cache: bool,
    },
    /// Instanton numbers of the Yukawa coupling
    Instantons {
        #[command(flatten)]
        common: Common,
        /// Search for a period in N_k
        #[arg(long)]
        check_period: bool,
    },
    /// Apery's sequences A_n, B_n and the zeta(3) convergent
    Apery {
        #[arg(long, default_value_t = 20)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn emit(format: Format, json: impl FnOnce() -> String, csv: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", json()),
        Format::Csv => print!("{}", csv()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Expand { object, common } => {
            let ctx = Context::new(!common.no_cache);
            let doc = commands::expand(&ctx, object, common.family, common.order)?;
            emit(common.format, || doc.to_json(), || doc.to_csv());
        }
        Command::Verify { suite, order, no_cache } => {
            if order == Some(0) {
                return Err(CliError::Usage("--order must be at least 1".into()));
            }
            let ctx = Context::new(!no_cache);
            let checks = verify::run(&ctx, suite, order.unwrap_or(0));
            let failed = checks.iter().filter(|c| c.failed()).count();
            println!("{} checks, {failed} failed", checks.len());
            if failed > 0 {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Instantons { common, check_period } => {
            let ctx = Context::new(!common.no_cache);
            let doc = commands::instantons(&ctx, common.family, common.order, check_period)?;
            emit(common.format, || doc.to_json(), || doc.to_csv());
        }
        Command::Apery { order, format } => {
            let doc = commands::apery(order)?;
            emit(format, || doc.to_json(), || doc.to_csv());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
