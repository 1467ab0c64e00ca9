use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use sincprod::coefficients::parse_coefficient_list;
use sincprod::eval::EvalConfig;
use sincprod::quadrature::QuadratureConfig;
use sincprod::rational::{format_rational, parse_rational, to_scientific};
use sincprod::record::{exact_record, numeric_record, Cache, Family, ResultRecord};
use sincprod::reproduce::{self, ReproduceConfig};
use sincprod::sums::{first_violation_detailed, OddReciprocals, DEFAULT_ITERATION_CAP};
use sincprod::{Error, Rational};

#[derive(Parser)]
#[command(name = "sincprod", version, about = "Exact and numeric integrals of sinc products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// First n with 1 + 1/3 + … + 1/(2n+1) > BUDGET.
    Threshold {
        #[arg(value_parser = rational)]
        budget: Rational,
        #[arg(long, default_value_t = DEFAULT_ITERATION_CAP)]
        max_terms: u64,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Evaluate one integral exactly, numerically, or both.
    Eval(EvalArgs),
    /// Check every reference value and exit nonzero on any failure.
    Reproduce {
        #[arg(long, default_value_t = EvalConfig::default().spline_cap)]
        spline_cap: usize,
        #[arg(long, default_value_t = EvalConfig::default().signsum_cap)]
        signsum_cap: usize,
        /// Digits for the I_7(2) quadrature line.
        #[arg(long, default_value_t = 22)]
        digits: u32,
        /// Skip the n = 3091 closed-form line.
        #[arg(long)]
        skip_large: bool,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

#[derive(clap::Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    /// Parameter of the I family.
    #[arg(long, value_parser = rational)]
    b: Option<Rational>,
    #[arg(long)]
    n: Option<u64>,
    /// File with one rational per line.
    #[arg(long)]
    coeffs: Option<PathBuf>,
    /// Treat the coefficient file as cosine form.
    #[arg(long)]
    cosine: bool,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    #[arg(long, default_value_t = 20)]
    digits: u32,
    #[arg(long, default_value_t = EvalConfig::default().spline_cap)]
    spline_cap: usize,
    #[arg(long, default_value_t = EvalConfig::default().signsum_cap)]
    signsum_cap: usize,
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    #[value(name = "J")]
    J,
    #[value(name = "K")]
    K,
    #[value(name = "I")]
    I,
    Tau,
    Eps,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Numeric,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Records,
}

fn rational(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

/// Failures that are the caller's fault exit with 2, the rest with 1.
enum Failure {
    Usage(String),
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::InvalidParameter(_) | Error::EmptyCoefficients | Error::NonPositiveCoefficient(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Run(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Threshold {
            budget,
            max_terms,
            format,
        } => threshold(&budget, max_terms, format),
        Command::Eval(args) => eval(&args),
        Command::Reproduce {
            spline_cap,
            signsum_cap,
            digits,
            skip_large,
            cache,
            format,
        } => {
            let config = ReproduceConfig {
                eval: EvalConfig {
                    spline_cap,
                    signsum_cap,
                },
                i7_digits: digits,
                large_n: !skip_large,
                ..ReproduceConfig::default()
            };
            run_reproduce(&config, cache, format)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Run(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn threshold(budget: &Rational, max_terms: u64, format: Format) -> Result<ExitCode, Failure> {
    if *budget < 1 {
        return Err(Failure::Usage(format!("budget must be at least 1, got {}", format_rational(budget))));
    }
    let v = first_violation_detailed(budget, OddReciprocals::from(0), max_terms)?;
    match format {
        Format::Human => {
            println!("budget {}: first violation at n = {}", format_rational(budget), v.index);
            println!("  sum to n-1 = {} ≤ budget", format_rational(&v.below));
            println!("  sum to n   = {} > budget", format_rational(&v.above));
        }
        Format::Records => {
            let value = serde_json::json!({
                "budget": format_rational(budget),
                "n": v.index,
                "below": format_rational(&v.below),
                "above": format_rational(&v.above),
            });
            println!("{value}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn family(args: &EvalArgs) -> Result<Family, Failure> {
    let need_n = || args.n.ok_or_else(|| Failure::Usage("--n is required for this family".into()));
    let from_file = |cosine: bool| -> Result<Family, Failure> {
        let path = args
            .coeffs
            .as_ref()
            .ok_or_else(|| Failure::Usage("--coeffs is required for explicit coefficient lists".into()))?;
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let values = parse_coefficient_list(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        Ok(if cosine { Family::Eps(values) } else { Family::Tau(values) })
    };
    match args.family {
        Some(FamilyName::J) => Ok(Family::J(need_n()?)),
        Some(FamilyName::K) => Ok(Family::K(need_n()?)),
        Some(FamilyName::I) => {
            let b = args.b.clone().ok_or_else(|| Failure::Usage("--b is required for family I".into()))?;
            Ok(Family::I { b, n: need_n()? })
        }
        Some(FamilyName::Tau) => from_file(args.cosine),
        Some(FamilyName::Eps) => from_file(true),
        None if args.coeffs.is_some() => from_file(args.cosine),
        None => Err(Failure::Usage("give --family or --coeffs".into())),
    }
}

fn emit(record: &ResultRecord, format: Format) {
    match format {
        Format::Human => println!("{record}"),
        Format::Records => println!("{}", record.to_line()),
    }
}

fn eval(args: &EvalArgs) -> Result<ExitCode, Failure> {
    let family = family(args)?;
    family.coefficients()?;
    let mut cache = match &args.cache {
        Some(path) => Cache::open(path)?,
        None => Cache::in_memory(),
    };
    let config = EvalConfig {
        spline_cap: args.spline_cap,
        signsum_cap: args.signsum_cap,
    };

    let exact = if args.mode != Mode::Numeric {
        match exact_record(&family, &config, args.digits, &mut cache) {
            Ok(r) => Some(r),
            Err(e @ Error::ExactInfeasible { .. }) => {
                return Err(Failure::Run(format!("{e}; rerun with --mode numeric")));
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let numeric = if args.mode != Mode::Exact {
        let start = Instant::now();
        let record = numeric_record(&family, &QuadratureConfig::new(args.digits), &mut cache).map_err(|e| match e {
            Error::DidNotConverge(r) => Failure::Run(format!(
                "quadrature did not reach {} digits (error bound {}, {} ms)",
                args.digits,
                to_scientific(&r.error_bound.to_rational(), 3),
                start.elapsed().as_millis()
            )),
            other => other.into(),
        })?;
        Some(record)
    } else {
        None
    };

    for record in exact.iter().chain(numeric.iter()) {
        emit(record, args.format);
    }
    if let (Some(e), Some(n)) = (&exact, &numeric) {
        let exact_value = e.exact_value()?.expect("exact record").coefficient;
        let numeric_value = parse_rational(&decimal_to_fraction(&n.decimal)).map_err(Failure::from)?;
        let gap = Rational::from(exact_value - numeric_value).abs();
        let gap = if gap == 0 { "0".to_string() } else { to_scientific(&gap, 3) };
        match args.format {
            Format::Human => println!("|exact - numeric| = {gap}·π"),
            Format::Records => println!("{}", serde_json::json!({ "discrepancy": gap })),
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// `"0.125"` → `"125/1000"`.
fn decimal_to_fraction(decimal: &str) -> String {
    match decimal.split_once('.') {
        Some((whole, frac)) => {
            let sign = if whole.starts_with('-') { "-" } else { "" };
            let digits = format!("{}{frac}", whole.trim_start_matches('-'));
            format!("{sign}{digits}/1{}", "0".repeat(frac.len()))
        }
        None => decimal.to_string(),
    }
}

fn run_reproduce(config: &ReproduceConfig, cache: Option<PathBuf>, format: Format) -> Result<ExitCode, Failure> {
    let mut cache = match cache {
        Some(path) => Cache::open(path)?,
        None => Cache::in_memory(),
    };
    let lines = reproduce::run(config, &mut cache);
    let mut all = true;
    for line in &lines {
        all &= line.passed;
        match format {
            Format::Human => println!("{line}"),
            Format::Records => println!("{}", serde_json::to_string(line).expect("serializable")),
        }
    }
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
