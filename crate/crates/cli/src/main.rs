//! `valise` — counting, enumeration, construction, verification, and export
//! for GR(d,N) garden algebra generators and valise Adinkras.
//!
//! Output is deterministic JSON on stdout. Exit codes: 0 success/match,
//! 1 verification failure or count mismatch, 2 usage or schema error,
//! 3 resource guard or unsupported parameters, 4 out-of-range selection.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::BigInt;
use serde::Serialize;

use valise_core::adinkra::{count_dashings, enumerate_dashings, ValiseAdinkra};
use valise_core::census::{self, dashing_multiplier, factorial};
use valise_core::chromotopology::Chromotopology;
use valise_core::codes::{enumerate_doubly_even, gaborit_count, CodeJson, DoublyEvenCode};
use valise_core::garden::{GeneratorList, MatrixListJson};
use valise_core::oracle::{brute_class_count, brute_code_count, brute_dashing_count};
use valise_core::Error;

const EXIT_VERIFICATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_GUARD: u8 = 3;
const EXIT_RANGE: u8 = 4;

#[derive(Parser)]
#[command(name = "valise", version, about = "Exact enumeration of GR(d,N) generator sets and valise Adinkras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed-form census for (N, d) as JSON
    Count(CountArgs),
    /// List doubly-even (N, k) codes, or just count them
    Codes(CodesArgs),
    /// Build a valise Adinkra from a code and write it as JSON (and DOT)
    Build(BuildArgs),
    /// Check the defining relations of a matrix-list file
    Verify(VerifyArgs),
    /// Compare a brute-force count against the matching formula
    Oracle(OracleArgs),
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: u64,
    /// Accepted for symmetry with `oracle`; both class counts are always printed
    #[arg(long)]
    signed: bool,
    /// Report ordered lists instead of sets (multiplies both counts by N!)
    #[arg(long)]
    lists: bool,
}

#[derive(Args)]
struct CodesArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long = "count-only")]
    count_only: bool,
}

#[derive(Args)]
struct BuildArgs {
    /// Code file (JSON); alternative to --n/--k/--index
    #[arg(long, conflicts_with_all = ["n", "k", "index"])]
    code: Option<PathBuf>,
    #[arg(long, requires = "k", requires = "index")]
    n: Option<u32>,
    #[arg(long, requires = "n")]
    k: Option<u32>,
    /// Position of the code in the deterministic enumeration order
    #[arg(long, requires = "n")]
    index: Option<u64>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Dashing selection: "first" or "index:J"
    #[arg(long, default_value = "first")]
    dash: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    matrices: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    /// Compare C(N,k): brute enumeration vs closed form
    #[arg(long, conflicts_with = "dashings")]
    codes: bool,
    /// Compare dashing counts on the coset graph of --code
    #[arg(long)]
    dashings: bool,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    signed: bool,
    #[arg(long)]
    code: Option<PathBuf>,
}

/// A failure that carries its exit code; the message goes to stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceGuard(_) | Error::Unsupported(_) => EXIT_GUARD,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count(args) => run_count(args),
        Command::Codes(args) => run_codes(args),
        Command::Build(args) => run_build(args),
        Command::Verify(args) => run_verify(args),
        Command::Oracle(args) => run_oracle(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn number(v: &BigInt) -> serde_json::Number {
    serde_json::Number::from_string_unchecked(v.to_string())
}

#[derive(Serialize)]
struct CountOut {
    n: u32,
    d: u64,
    k: Option<u32>,
    codes: serde_json::Number,
    unsigned_classes: serde_json::Number,
    signed_classes: serde_json::Number,
}

fn run_count(args: CountArgs) -> Result<u8, Failure> {
    let result = census::census(args.n, args.d).map_err(|e| match e {
        Error::Unsupported(msg) => Failure::new(
            EXIT_GUARD,
            format!("{msg}; enumeration fallback covers N <= 12 only"),
        ),
        other => other.into(),
    })?;
    let scale = if args.lists {
        factorial(args.n as u64)
    } else {
        BigInt::from(1)
    };
    let out = CountOut {
        n: result.n,
        d: result.d,
        k: result.k,
        codes: number(&result.code_count),
        unsigned_classes: number(&(&result.unsigned_classes * &scale)),
        signed_classes: number(&(&result.signed_classes * &scale)),
    };
    println!("{}", serde_json::to_string(&out).expect("serializable"));
    Ok(0)
}

#[derive(Serialize)]
struct CountOnlyOut {
    count: serde_json::Number,
}

fn run_codes(args: CodesArgs) -> Result<u8, Failure> {
    if args.count_only {
        let (count, _) = census::code_count(args.n, args.k).map_err(Failure::from)?;
        let out = CountOnlyOut {
            count: number(&count),
        };
        println!("{}", serde_json::to_string(&out).expect("serializable"));
        return Ok(0);
    }
    let codes: Vec<CodeJson> = enumerate_doubly_even(args.n, args.k)
        .map_err(Failure::from)?
        .map(|c| c.to_json())
        .collect();
    println!("{}", serde_json::to_string(&codes).expect("serializable"));
    Ok(0)
}

fn load_code(path: &Path) -> Result<DoublyEvenCode, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn parse_dash_selector(s: &str) -> Result<u64, Failure> {
    if s == "first" {
        return Ok(0);
    }
    if let Some(rest) = s.strip_prefix("index:") {
        return rest
            .parse::<u64>()
            .map_err(|e| Failure::new(EXIT_USAGE, format!("bad dashing index {rest:?}: {e}")));
    }
    Err(Failure::new(
        EXIT_USAGE,
        format!("--dash expects \"first\" or \"index:J\", got {s:?}"),
    ))
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents)
        .and_then(|_| fs::rename(&tmp, path))
        .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot write {}: {e}", path.display())))
}

fn run_build(args: BuildArgs) -> Result<u8, Failure> {
    let code = match (&args.code, args.n, args.k, args.index) {
        (Some(path), None, None, None) => load_code(path)?,
        (None, Some(n), Some(k), Some(index)) => {
            let mut stream = enumerate_doubly_even(n, k).map_err(Failure::from)?;
            stream.nth(index as usize).ok_or_else(|| {
                Failure::new(
                    EXIT_RANGE,
                    format!("no code with index {index} exists for ({n},{k})"),
                )
            })?
        }
        _ => {
            return Err(Failure::new(
                EXIT_USAGE,
                "provide either --code FILE or all of --n/--k/--index",
            ))
        }
    };

    let graph = Chromotopology::build_from_code(&code).map_err(Failure::from)?;
    let ranking = graph.bipartition();
    let wanted = parse_dash_selector(&args.dash)?;
    let total = count_dashings(&graph).map_err(Failure::from)?;
    if BigInt::from(wanted) >= total {
        return Err(Failure::new(
            EXIT_RANGE,
            format!("dashing index {wanted} out of range: only {total} dashings exist"),
        ));
    }
    let dashing = enumerate_dashings(&graph)
        .map_err(Failure::from)?
        .nth(wanted as usize)
        .expect("index checked against the count");
    let adinkra = ValiseAdinkra::new(graph, ranking, dashing).map_err(Failure::from)?;

    let json = serde_json::to_string(&adinkra).expect("serializable");
    write_atomic(&args.out, &json)?;
    if let Some(dot_path) = &args.dot {
        write_atomic(dot_path, &adinkra.to_dot())?;
    }
    Ok(0)
}

fn run_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let text = fs::read_to_string(&args.matrices).map_err(|e| {
        Failure::new(
            EXIT_USAGE,
            format!("cannot read {}: {e}", args.matrices.display()),
        )
    })?;
    let json: MatrixListJson = serde_json::from_str(&text)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", args.matrices.display())))?;
    let list = GeneratorList::from_json(&json).map_err(Failure::from)?;
    let report = list.check_relations();
    println!("{}", serde_json::to_string(&report).expect("serializable"));
    Ok(if report.is_valid() { 0 } else { EXIT_VERIFICATION })
}

#[derive(Serialize)]
struct OracleOut {
    brute: serde_json::Number,
    formula: serde_json::Number,
    r#match: bool,
}

fn run_oracle(args: OracleArgs) -> Result<u8, Failure> {
    let (brute, formula) = if args.codes {
        let (n, k) = match (args.n, args.k) {
            (Some(n), Some(k)) => (n, k),
            _ => {
                return Err(Failure::new(
                    EXIT_USAGE,
                    "--codes requires --n and --k",
                ))
            }
        };
        let brute = brute_code_count(n, k).map_err(Failure::from)?;
        let formula = gaborit_count(n, k).map_err(Failure::from)?;
        (BigInt::from(brute), formula)
    } else if args.dashings {
        let Some(path) = &args.code else {
            return Err(Failure::new(EXIT_USAGE, "--dashings requires --code FILE"));
        };
        let code = load_code(path)?;
        let graph = Chromotopology::build_from_code(&code).map_err(Failure::from)?;
        let brute = brute_dashing_count(&graph).map_err(Failure::from)?;
        let formula = dashing_multiplier(code.n(), code.k());
        (BigInt::from(brute), formula)
    } else {
        let (n, d) = match (args.n, args.d) {
            (Some(n), Some(d)) => (n, d),
            _ => {
                return Err(Failure::new(
                    EXIT_USAGE,
                    "class-count mode requires --n and --d",
                ))
            }
        };
        let brute = brute_class_count(n, d, args.signed).map_err(Failure::from)?;
        let formula = if args.signed {
            census::signed_class_count(n, d).map_err(Failure::from)?
        } else {
            census::unsigned_class_count(n, d).map_err(Failure::from)?
        };
        (BigInt::from(brute), formula)
    };
    let matches = brute == formula;
    let out = OracleOut {
        brute: number(&brute),
        formula: number(&formula),
        r#match: matches,
    };
    println!("{}", serde_json::to_string(&out).expect("serializable"));
    Ok(if matches { 0 } else { EXIT_VERIFICATION })
}
