mod commands;
mod report;

use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use hypercert::nadel::DEFAULT_H0_CAP;
use hypercert::{Error, Exec};

use commands::{Bundle, CliError, CliResult};

const EXIT_USAGE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

/// Exact certification reports for jet differentials on surfaces in P^3.
#[derive(Parser, Debug)]
#[command(name = "hypercert", version)]
struct Cli {
    /// Run every data-parallel loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Out {
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Nine intersection numbers on X_2, numeric for a P^3 surface or symbolic.
    #[command(group(ArgGroup::new("surface").required(true).args(["d", "symbolic"])))]
    RingTable {
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        symbolic: bool,
    },
    /// Euler characteristic of S^m T* or E_2,m T*, twisted by t K.
    Chi {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, value_enum, default_value = "sym")]
        bundle: Bundle,
        /// Multiple of K_X as `p` or `p/q`.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        twist: String,
        /// Also report the leading coefficient in m.
        #[arg(long)]
        asymptotic: bool,
    },
    /// Threshold verdicts for every degree in [dmin, dmax].
    Sweep {
        #[arg(long, default_value_t = 5)]
        dmin: i64,
        #[arg(long)]
        dmax: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Largest admissible dmax.
        #[arg(long, default_value_t = 200)]
        max_degree: i64,
    },
    /// Connection, pole divisor and smoothness data for a deformed Fermat surface.
    Connection {
        #[arg(long)]
        d: u32,
        /// Exponents k0,k1,k2,k3 summing to d.
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u32>,
        /// Value of the deformation parameter as `p` or `p/q`; symbolic if omitted.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        out: Out,
    },
    /// dim H^0(P^3, S^m T* (k)).
    H0p3 {
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        /// Largest linear system, in unknowns, the count may set up.
        #[arg(long, default_value_t = DEFAULT_H0_CAP)]
        cap: u64,
    },
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("HYPERCERT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| {
        CliError::Usage(format!(
            "HYPERCERT_THREADS must be a positive integer, got `{raw}`"
        ))
    })?;
    if n == 0 {
        return Err(CliError::Usage("HYPERCERT_THREADS must be positive".into()));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Lib(Error::Invariant(format!("thread pool: {e}"))))?;
    Ok(())
}

fn run(cli: Cli) -> CliResult<String> {
    configure_threads()?;
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let report = match cli.command {
        Command::RingTable { d, symbolic } => commands::ring_table(d, symbolic)?,
        Command::Chi {
            d,
            m,
            bundle,
            twist,
            asymptotic,
        } => commands::chi(d, m, bundle, &twist, asymptotic)?,
        Command::Sweep {
            dmin,
            dmax,
            format,
            max_degree,
        } => {
            let s = commands::sweep(dmin, dmax, max_degree, exec)?;
            match format {
                Format::Csv => return Ok(commands::sweep_csv(&s)),
                Format::Json => commands::sweep_report(dmin, dmax, &s),
            }
        }
        Command::Connection {
            d,
            k,
            a,
            out: Out::Json,
        } => commands::connection(d, &k, a.as_deref(), exec)?,
        Command::H0p3 { m, k, cap } => commands::h0p3(m, k, cap, exec)?,
    };
    Ok(report.to_json() + "\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Lib(e @ Error::Capacity { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CAPACITY)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
