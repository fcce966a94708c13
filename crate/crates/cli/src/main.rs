//! `groupdeg`: subgroup-degree functions from the command line.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 enumeration cap or other
//! resource limit, 3 formula/oracle mismatch in `verify`.

mod commands;
mod output;
mod params;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use groupdeg::{DegreeFunction, DEFAULT_ENUMERATION_CAP, DEFAULT_PRIME_BOUND, MAX_GROUP_ORDER};

use commands::{Ctx, Out, Source, Status};
use output::{Format, Sink};

#[derive(Parser)]
#[command(
    name = "groupdeg",
    version,
    about = "Exact subgroup-degree functions of finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    /// Shorthand for `--format json` (one JSON document per line).
    #[arg(long, global = true)]
    json: bool,

    /// Largest group order the oracle will enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP as u64,
          value_parser = clap::value_parser!(u64).range(1..=MAX_GROUP_ORDER as u64))]
    cap: u64,

    /// Significant digits in rendered decimals.
    #[arg(long, global = true, default_value_t = 12,
          value_parser = clap::value_parser!(u64).range(1..=200))]
    digits: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Closed forms and oracle values side by side.
    Degrees(SourceArgs),
    /// Full subgroup census: counts by kind and by order.
    Census(SourceArgs),
    /// Compare closed forms with the oracle over a parameter sweep.
    ///
    /// FAMILY is a family name (`Q`, `SD`, `Dic`, ...) swept over the
    /// parameter flags, or a single spec such as `Q(16)`.
    Verify {
        family: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Reproduce the C_p^n : C_4 / C_p^n : Q_8 table or the family summary table.
    Table {
        #[arg(value_enum)]
        which: TableKind,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// A stored limit and how fast the family approaches it.
    Limits {
        family: String,
        /// Degree function; repeat for several. Default: all stored.
        #[arg(long = "function", value_enum)]
        functions: Vec<FunctionArg>,
        /// Parameter that grows. Default: the first stored for the family.
        #[arg(long)]
        vary: Option<String>,
        /// Values of the growing parameter to probe.
        #[arg(long, default_value = "1..20")]
        probe: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Approximate a target in (0, 1] by a product of (p+1)/(p+2) over odd primes.
    Density(DensityArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Family spec, e.g. `SD(32)` or `Q(8)xC(3)`.
    spec: Option<String>,
    /// JSON Cayley-table file instead of a spec.
    #[arg(long)]
    table: Option<PathBuf>,
}

/// Parameter values: `7`, `3..6` (inclusive) or comma lists; flags repeat.
#[derive(Args)]
struct ParamArgs {
    #[arg(long, value_name = "RANGE")]
    n: Vec<String>,
    #[arg(long, value_name = "RANGE")]
    p: Vec<String>,
    #[arg(long, value_name = "RANGE")]
    q: Vec<String>,
    #[arg(long, value_name = "RANGE")]
    m: Vec<String>,
    #[arg(long, value_name = "RANGE")]
    s: Vec<String>,
    #[arg(long, value_name = "RANGE")]
    k: Vec<String>,
    #[arg(long, value_name = "RANGE")]
    r: Vec<String>,
}

impl ParamArgs {
    fn values(&self) -> Result<commands::ParamValues, CliError> {
        commands::parse_params(&[
            ("n", &self.n),
            ("p", &self.p),
            ("q", &self.q),
            ("m", &self.m),
            ("s", &self.s),
            ("k", &self.k),
            ("r", &self.r),
        ])
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Ex54,
    Appendix,
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctionArg {
    Alpha,
    Beta,
    Cdeg,
    Ndeg,
    Jdeg,
}

impl From<FunctionArg> for DegreeFunction {
    fn from(f: FunctionArg) -> Self {
        match f {
            FunctionArg::Alpha => DegreeFunction::Alpha,
            FunctionArg::Beta => DegreeFunction::Beta,
            FunctionArg::Cdeg => DegreeFunction::Cdeg,
            FunctionArg::Ndeg => DegreeFunction::Ndeg,
            FunctionArg::Jdeg => DegreeFunction::Jdeg,
        }
    }
}

#[derive(Args)]
struct DensityArgs {
    /// Target in (0, 1]: a fraction like `4/5` or a decimal like `0.8`.
    #[arg(
        required_unless_present = "log_divergence",
        conflicts_with = "log_divergence"
    )]
    target: Option<String>,
    /// Print the first COUNT partial sums of ln((p+2)/(p+1)) instead.
    #[arg(long, value_name = "COUNT")]
    log_divergence: Option<usize>,
    #[command(flatten)]
    options: DensityOptions,
}

#[derive(Args)]
struct DensityOptions {
    /// Tolerance above the target.
    #[arg(long, default_value = "1/1000")]
    eps: String,
    /// Only odd primes up to this bound are used.
    #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
    prime_bound: u64,
}

pub enum CliError {
    Usage(String),
    Resource(String),
    Core(groupdeg::Error),
    Io(io::Error),
}

impl From<groupdeg::Error> for CliError {
    fn from(e: groupdeg::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Resource(_) => 2,
            CliError::Core(e) if e.is_resource() => 2,
            _ => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Resource(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
            CliError::Io(e) => e.to_string(),
        }
    }
}

fn run(cli: Cli, out: &mut Out) -> Result<Status, CliError> {
    let ctx = Ctx {
        cap: cli.cap as usize,
        digits: cli.digits as usize,
    };
    match cli.command {
        Command::Degrees(src) | Command::Census(src)
            if src.spec.is_none() && src.table.is_none() =>
        {
            Err(CliError::Usage("give a spec or --table".into()))
        }
        Command::Degrees(src) => commands::degrees(source(&src), &ctx, out),
        Command::Census(src) => commands::census(source(&src), &ctx, out),
        Command::Verify { family, params } => {
            commands::verify_cmd(&family, &params.values()?, &ctx, out)
        }
        Command::Table {
            which: TableKind::Ex54,
            params,
        } => commands::table_ex54(&params.values()?, &ctx, out),
        Command::Table {
            which: TableKind::Appendix,
            params,
        } => commands::table_appendix(&params.values()?, out),
        Command::Limits {
            family,
            functions,
            vary,
            probe,
            params,
        } => {
            let probe = params::parse_values(&probe)
                .map_err(|e| CliError::Usage(format!("--probe: {e}")))?;
            let functions: Vec<DegreeFunction> = functions.into_iter().map(Into::into).collect();
            commands::limits(
                &family,
                &functions,
                vary.as_deref(),
                &params.values()?,
                &probe,
                &ctx,
                out,
            )
        }
        Command::Density(args) => match (args.target, args.log_divergence) {
            (_, Some(count)) => commands::log_divergence(count, &ctx, out),
            (Some(t), None) => {
                commands::density(&t, &args.options.eps, args.options.prime_bound, &ctx, out)
            }
            (None, None) => Err(CliError::Usage("give a target or --log-divergence".into())),
        },
    }
}

fn source(src: &SourceArgs) -> Source<'_> {
    match (&src.spec, &src.table) {
        (_, Some(path)) => Source::Table(path),
        (Some(spec), None) => Source::Spec(spec),
        (None, None) => unreachable!("checked by the caller"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let format = if cli.json { Format::Json } else { cli.format };
    let stdout: Box<dyn Write> = Box::new(io::BufWriter::new(io::stdout().lock()));
    let mut out: Out = Sink::new(format, stdout);
    let result = run(cli, &mut out);
    // Partial output (e.g. the best product of an exhausted density search) is still written.
    if let Err(e) = out.finish() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Skipped) => ExitCode::from(2),
        Ok(Status::Mismatch) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
