use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};
use sharp_core::expr::{evaluate, Algebra, Term, Value};
use sharp_core::verify::{self, Outcome};
use sharp_core::LinComb;

/// Exact arithmetic for the # product on combinatorial Hopf algebras.
#[derive(Parser)]
#[command(name = "sharp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression such as "G[1,3,2] # G[2,3,1]".
    Eval {
        expression: String,
        /// Read every atom in this algebra instead of inferring it.
        #[arg(long, value_parser = parse_algebra)]
        algebra: Option<Algebra>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the words of an element's realization over {1..N}.
    Expand {
        label: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        alphabet: u32,
        #[arg(long, value_parser = parse_algebra)]
        algebra: Option<Algebra>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count generators and check the generating-series identities.
    Count {
        #[arg(value_enum)]
        what: Count,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=9))]
        max_n: u64,
    },
    /// Run an exhaustive verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, value_parser = parse_algebra)]
        algebra: Algebra,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=8))]
        max_deg: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Count {
    NonsecablePerms,
    NonsecablePacked,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Interval,
    Oracle,
}

fn parse_algebra(s: &str) -> Result<Algebra, String> {
    s.parse().map_err(|e: sharp_core::Error| e.to_string())
}

const USAGE: u8 = 2;
const COUNTEREXAMPLE: u8 = 1;

fn coefficient(c: &num_bigint::BigInt) -> Json {
    i64::try_from(c).map_or_else(|_| Json::String(c.to_string()), Json::from)
}

fn terms_json(terms: &[Term]) -> Json {
    Json::Array(terms.iter().map(|t| json!({ "label": t.label, "coefficient": coefficient(&t.coefficient) })).collect())
}

fn usage(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(USAGE)
}

fn eval(expression: &str, algebra: Option<Algebra>, format: Format) -> ExitCode {
    let value = match evaluate(expression, algebra) {
        Ok(v) => v,
        Err(e) => return usage(e),
    };
    match format {
        Format::Text => println!("{value}"),
        Format::Json => println!("{}", terms_json(&value.terms())),
    }
    ExitCode::SUCCESS
}

fn expand(label: &str, alphabet: u32, algebra: Option<Algebra>, format: Format) -> ExitCode {
    let element = match evaluate(label, algebra) {
        Ok(Value::Element(e)) => e,
        Ok(Value::Scalar(_)) => return usage("expand needs a basis element, not a number"),
        Err(e) => return usage(e),
    };
    let expansion = match element.expand(alphabet) {
        Ok(x) => x,
        Err(e) => return usage(e),
    };
    let words: &LinComb<_> = &expansion.terms;
    match format {
        Format::Text => {
            for (word, c) in words.iter() {
                if *c == 1.into() {
                    println!("{word}");
                } else {
                    println!("{c}·{word}");
                }
            }
        }
        Format::Json => {
            let terms: Vec<Json> =
                words.iter().map(|(w, c)| json!({ "label": w.to_string(), "coefficient": coefficient(c) })).collect();
            println!("{}", Json::Array(terms));
        }
    }
    ExitCode::SUCCESS
}

fn report(outcome: Outcome) -> ExitCode {
    match outcome {
        Ok(report) => {
            println!("{report}");
            ExitCode::SUCCESS
        }
        Err(counterexample) => {
            println!("{counterexample}");
            ExitCode::from(COUNTEREXAMPLE)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { expression, algebra, format } => eval(&expression, algebra, format),
        Command::Expand { label, alphabet, algebra, format } => expand(&label, alphabet, algebra, format),
        Command::Count { what, max_n } => report(match what {
            Count::NonsecablePerms => verify::count_nonsecable_perms(max_n as usize),
            Count::NonsecablePacked => verify::count_nonsecable_packed(max_n as usize),
        }),
        Command::Verify { suite, algebra, max_deg } => {
            let max_deg = max_deg as usize;
            match (suite, algebra) {
                (Suite::Interval, Algebra::FQSym) => report(verify::interval_fqsym(max_deg)),
                (Suite::Interval, Algebra::WQSym) => report(verify::interval_wqsym(max_deg)),
                (Suite::Interval, other) => usage(format!("no interval theorem for {other}; use fqsym or wqsym")),
                (Suite::Oracle, algebra) => report(verify::oracle(algebra, max_deg)),
            }
        }
    }
}
