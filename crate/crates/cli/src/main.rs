//! `qss`: analyse stabilizer codes as quantum secret sharing schemes.
//!
//! Exit status: 0 success, 1 a check failed (or shares were refused),
//! 2 bad input, 3 a resource cap was hit.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qss_core::classical::{shamir_share, ClassicalShareSet};
use qss_core::code::{catalog, load, CodeFile, DEFAULT_DISTANCE_CAP};
use qss_core::dense::DEFAULT_AMPLITUDE_CAP;
use qss_core::infogroup::{classify, DEFAULT_CLASSIFY_MAX_N};
use qss_core::report::{
    from_structured, to_structured, ClassifyReport, PlanReport, ReconstructReport, ValidateReport,
};
use qss_core::simulate::{simulate, CheckSelection, SimulateOptions, DEFAULT_RANDOM_SECRETS};
use qss_core::twirl::twirl_plan;
use qss_core::{key_transport, Error, Prime, StabilizerCode, Subset};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "qss", version, about = "Quantum secret sharing with stabilizer codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a code satisfies the stabilizer axioms.
    Validate(CodeArgs),
    /// Split all carrier subsets into authorized, forbidden and intermediate.
    Classify(CodeArgs),
    /// Twirl and classical key scheme needed to hide the intermediate sets.
    TwirlPlan(CodeArgs),
    /// Verify the scheme numerically with dense state vectors.
    Simulate(SimulateArgs),
    /// Share a classical key, either explicit or sampled from a twirl plan.
    ShareKey(ShareKeyArgs),
    /// Recover a key from the shares of some players.
    Reconstruct(ReconstructArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args)]
struct CodeArgs {
    /// `catalog:<name>` or the path of a code file.
    input: String,
    /// Carrier count for size-parameterized catalog codes.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value = "all", value_parser = parse_check)]
    check: CheckSelection,
    /// Restrict to one subset, e.g. `1,3,4`.
    #[arg(long)]
    subset: Option<String>,
    /// Maximum number of amplitudes in any dense object.
    #[arg(long, default_value_t = DEFAULT_AMPLITUDE_CAP)]
    cap: usize,
    /// Trace distances below this count as zero.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Random secrets tried per subset.
    #[arg(long, default_value_t = DEFAULT_RANDOM_SECRETS)]
    secrets: usize,
}

#[derive(Args)]
struct ShareKeyArgs {
    /// Sample the key from this code's twirl plan.
    #[arg(long, value_name = "INPUT", conflicts_with_all = ["q", "p", "key"])]
    from_plan: Option<String>,
    /// Threshold for explicit Shamir sharing.
    #[arg(long, requires_all = ["p", "key"])]
    q: Option<usize>,
    /// Number of players, or the catalog size parameter with `--from-plan`.
    #[arg(long)]
    n: Option<usize>,
    /// Prime field for explicit Shamir sharing.
    #[arg(long = "P", id = "p")]
    p: Option<u64>,
    /// Key digits, e.g. `1,0,1`.
    #[arg(long)]
    key: Option<String>,
    #[arg(long)]
    seed: u64,
    /// Write the share bundle here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ReconstructArgs {
    /// Share bundle written by `share-key`.
    bundle: PathBuf,
    /// Players pooling their shares, e.g. `1,2,4`.
    #[arg(long)]
    subset: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn parse_check(s: &str) -> Result<CheckSelection, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure of a command: an error, or a report that was printed but failed.
enum Failure {
    Error(Error),
    CheckFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type CmdResult = Result<(), Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource { .. } => EXIT_RESOURCE,
        Error::InsufficientShares { .. } | Error::Invariant(_) => EXIT_CHECK_FAILED,
        Error::Input(_)
        | Error::NotPrime(_)
        | Error::ModulusMismatch { .. }
        | Error::Parse { .. }
        | Error::Validation(_) => EXIT_INPUT,
    }
}

fn load_code(input: &str, n: Option<usize>) -> Result<StabilizerCode, Error> {
    match input.strip_prefix("catalog:") {
        Some(name) => catalog(name, n),
        None => {
            if n.is_some() {
                return Err(Error::Input("--n only applies to catalog codes".into()));
            }
            load(input)
        }
    }
}

fn emit(format: Format, text: String, structured: String) {
    match format {
        Format::Text => print!("{text}"),
        Format::Structured => print!("{structured}"),
    }
}

fn cmd_validate(args: &CodeArgs) -> CmdResult {
    let code = match args.input.strip_prefix("catalog:") {
        Some(_) => load_code(&args.input, args.n)?,
        None => {
            let text = fs::read_to_string(&args.input)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", args.input)))?;
            CodeFile::parse_unchecked(&text)?.code
        }
    };
    let report = ValidateReport::new(&code, DEFAULT_DISTANCE_CAP);
    emit(args.format, report.to_text(), to_structured(&report));
    if report.valid {
        Ok(())
    } else {
        Err(Failure::CheckFailed)
    }
}

fn cmd_classify(args: &CodeArgs) -> CmdResult {
    let code = load_code(&args.input, args.n)?;
    let triplet = classify(&code, DEFAULT_CLASSIFY_MAX_N)?;
    let report = ClassifyReport::new(&code, &triplet);
    emit(args.format, report.to_text(), to_structured(&report));
    Ok(())
}

fn cmd_twirl_plan(args: &CodeArgs) -> CmdResult {
    let code = load_code(&args.input, args.n)?;
    let triplet = classify(&code, DEFAULT_CLASSIFY_MAX_N)?;
    let plan = twirl_plan(&code, &triplet)?;
    let report = PlanReport::new(&code, &triplet, &plan);
    emit(args.format, report.to_text(), to_structured(&report));
    Ok(())
}

fn cmd_simulate(args: &SimulateArgs) -> CmdResult {
    let code = load_code(&args.code.input, args.code.n)?;
    let mut options = SimulateOptions::new(args.seed, args.check, args.cap);
    options.random_secrets = args.secrets;
    if let Some(t) = args.tolerance {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Input(format!("tolerance must be positive, got {t}")).into());
        }
        options.tolerance = t;
    }
    if let Some(s) = &args.subset {
        options.subset = Some(Subset::parse(s, code.num_carriers())?);
    }
    let report = simulate(&code, &options)?;
    emit(args.code.format, report.to_text(), to_structured(&report));
    if report.passed {
        Ok(())
    } else {
        Err(Failure::CheckFailed)
    }
}

fn parse_digits(s: &str) -> Result<Vec<u32>, Error> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|_| Error::Input(format!("bad key digit {t:?}"))))
        .collect()
}

fn bundle_text(bundle: &ClassicalShareSet) -> String {
    let mut out = format!(
        "{} over Z_{}, key length {}\n",
        bundle.kind,
        bundle.modulus.get(),
        bundle.key_length
    );
    for (player, digits) in &bundle.shares {
        let ds: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
        out.push_str(&format!("player {player}: {}\n", ds.join(",")));
    }
    out
}

fn cmd_share_key(args: &ShareKeyArgs) -> CmdResult {
    let (bundle, sampled) = match &args.from_plan {
        Some(input) => {
            let code = load_code(input, args.n)?;
            let triplet = classify(&code, DEFAULT_CLASSIFY_MAX_N)?;
            let plan = twirl_plan(&code, &triplet)?;
            let transport = key_transport(&plan, &triplet, args.seed)?;
            (transport.shares, Some(transport.key))
        }
        None => {
            let (Some(q), Some(n), Some(p), Some(key)) = (args.q, args.n, args.p, &args.key) else {
                return Err(Error::Input("give either --from-plan or all of --q, --n, --P and --key".into()).into());
            };
            let p = Prime::new(p)?;
            (shamir_share(&parse_digits(key)?, q, n, p, args.seed)?, None)
        }
    };
    let structured = to_structured(&bundle);
    if let Some(path) = &args.out {
        fs::write(path, &structured).map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut text = bundle_text(&bundle);
    if let Some(key) = sampled {
        let ds: Vec<String> = key.iter().map(|d| d.to_string()).collect();
        text.push_str(&format!("sampled key: {}\n", ds.join(",")));
    }
    emit(args.format, text, structured);
    Ok(())
}

fn cmd_reconstruct(args: &ReconstructArgs) -> CmdResult {
    let text = fs::read_to_string(&args.bundle)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", args.bundle.display())))?;
    let bundle: ClassicalShareSet = from_structured(&text)?;
    let players = Subset::parse(&args.subset, bundle.num_players())?;
    let report = ReconstructReport { players, key: bundle.reconstruct(players)? };
    emit(args.format, report.to_text(), to_structured(&report));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(a) => cmd_validate(a),
        Command::Classify(a) => cmd_classify(a),
        Command::TwirlPlan(a) => cmd_twirl_plan(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::ShareKey(a) => cmd_share_key(a),
        Command::Reconstruct(a) => cmd_reconstruct(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::CheckFailed) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
