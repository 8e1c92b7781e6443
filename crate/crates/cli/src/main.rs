use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use padic_cuntz::coherent::{pairing_series, phi_map, state_closed_form};
use padic_cuntz::json::{scalar_to_json, step_function_from_str, StepFunctionJson};
use padic_cuntz::padic::{make_indicator, word_to_center};
use padic_cuntz::rep::{apply_operator_word, gns_state};
use padic_cuntz::{CenterConvention, CoherentState, Error, OperatorWord, Prime, Scalar, StepFunction, Word};
use padic_cuntz_cli::{run_suite, Suite, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "padic-cuntz",
    version,
    about = "Exact checks for Cuntz-algebra representations on p-adic step functions"
)]
struct Cli {
    /// Machine-readable JSON output (the default for verify and apply).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Human-readable output: indented JSON, or plain text for scalar results.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Cuntz,
    Gns,
    Pairing,
    Trep,
    Af,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Lsd,
    Msd,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print its report.
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Maximum step-function depth and word length.
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Fock-space truncation length.
        #[arg(long, default_value_t = 6)]
        trunc: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random inputs per randomized check.
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
    /// Vacuum state value on A†_I A_J.
    State {
        #[arg(long)]
        p: u64,
        #[arg(long = "I", default_value = "")]
        creators: String,
        #[arg(long = "J", default_value = "")]
        annihilators: String,
    },
    /// Renormalized pairing of the coherent states X_I and X_J.
    Pair {
        #[arg(long)]
        p: u64,
        #[arg(long = "I", default_value = "")]
        left: String,
        #[arg(long = "J", default_value = "")]
        right: String,
    },
    /// Gram matrix of X_I for |I| <= maxlen, by stabilization and by L².
    Gram {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        maxlen: usize,
    },
    /// Apply an operator word such as "a1* a0* a1" to a step function.
    Apply {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ops: String,
        /// A StepFunction JSON file, `-` for stdin, or `one`.
        #[arg(long, conflicts_with = "disk")]
        input: Option<String>,
        /// Use the indicator of the disk addressed by these digits.
        #[arg(long)]
        disk: Option<String>,
        #[arg(long, value_enum, default_value = "lsd")]
        center_convention: ConventionArg,
    },
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn prime(p: u64) -> Result<Prime, Failure> {
    Ok(Prime::new(p)?)
}

fn emit<T: Serialize>(value: &T, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    println!("{}", text.expect("serializable"));
}

fn scalar_json(x: &Scalar) -> serde_json::Value {
    json!({ "exact": scalar_to_json(x), "display": x.display_with_decimal() })
}

fn read_input(p: Prime, input: &str) -> Result<StepFunction, Failure> {
    let f = match input {
        "one" => StepFunction::one(p),
        "-" => step_function_from_str(
            &std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::Usage(e.to_string()))?,
        )?,
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            step_function_from_str(&text)?
        }
    };
    if f.prime() != p {
        return Err(Error::PrimeMismatch {
            left: p.get(),
            right: f.prime().get(),
        }
        .into());
    }
    Ok(f)
}

fn run(cli: Cli) -> Result<(), Failure> {
    // Scalar-valued commands print plain text unless JSON is requested.
    let text = !cli.json;
    match cli.command {
        Command::Verify {
            p,
            suite,
            depth,
            trunc,
            seed,
            cases,
        } => {
            let suite = match suite {
                SuiteArg::Cuntz => Suite::Cuntz,
                SuiteArg::Gns => Suite::Gns,
                SuiteArg::Pairing => Suite::Pairing,
                SuiteArg::Trep => Suite::Trep,
                SuiteArg::Af => Suite::Af,
                SuiteArg::All => Suite::All,
            };
            let cfg = SuiteConfig {
                p: prime(p)?,
                depth,
                trunc,
                seed,
                cases,
            };
            let report = run_suite(suite, &cfg)?;
            emit(&report, cli.pretty);
            if !report.passed() {
                return Err(Failure::Checks);
            }
        }
        Command::State {
            p,
            creators,
            annihilators,
        } => {
            let p = prime(p)?;
            let (i, j) = (Word::parse(p, &creators)?, Word::parse(p, &annihilators)?);
            let value = gns_state(p, &i, &j)?;
            debug_assert_eq!(value, state_closed_form(p, &i, &j));
            if text {
                println!("{}", value.display_with_decimal());
            } else {
                emit(
                    &json!({ "p": p.get(), "I": creators, "J": annihilators, "value": scalar_json(&value) }),
                    false,
                );
            }
        }
        Command::Pair { p, left, right } => {
            let p = prime(p)?;
            let a = CoherentState::indicator_state(p, &Word::parse(p, &left)?)?;
            let b = CoherentState::indicator_state(p, &Word::parse(p, &right)?)?;
            let series = pairing_series(&a, &b)?;
            if text {
                println!("{}", series.value.display_with_decimal());
            } else {
                emit(
                    &json!({
                        "p": p.get(),
                        "I": left,
                        "J": right,
                        "value": scalar_json(&series.value),
                        "series": padic_cuntz::json::PairingSeriesJson::from(&series),
                    }),
                    false,
                );
            }
        }
        Command::Gram { p, maxlen } => {
            let p = prime(p)?;
            p.pow(maxlen)?;
            let words: Vec<Word> = Word::all_up_to(p, maxlen).collect();
            let states = words
                .iter()
                .map(|w| CoherentState::indicator_state(p, w))
                .collect::<Result<Vec<_>, _>>()?;
            let mut renormalized = Vec::new();
            let mut l2 = Vec::new();
            let mut stabilized_at = 0;
            for a in &states {
                let (mut row_r, mut row_l) = (Vec::new(), Vec::new());
                for b in &states {
                    let series = pairing_series(a, b)?;
                    stabilized_at = stabilized_at.max(series.stabilized_at);
                    row_r.push(series.value);
                    row_l.push(phi_map(a).l2_inner(&phi_map(b))?);
                }
                renormalized.push(row_r);
                l2.push(row_l);
            }
            let equal = renormalized == l2;
            if text {
                let labels: Vec<String> = words.iter().map(|w| format!("X_{w}")).collect();
                println!("basis: {}", labels.join(" "));
                for row in &renormalized {
                    let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    println!("[{}]", cells.join(", "));
                }
                println!("stabilized_at: {stabilized_at}");
                println!("equal to L2 Gram matrix: {equal}");
            } else {
                let matrix = |m: &Vec<Vec<Scalar>>| -> Vec<Vec<_>> {
                    m.iter().map(|row| row.iter().map(scalar_to_json).collect()).collect()
                };
                emit(
                    &json!({
                        "p": p.get(),
                        "maxlen": maxlen,
                        "basis": words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                        "renormalized": matrix(&renormalized),
                        "l2": matrix(&l2),
                        "stabilized_at": stabilized_at,
                        "equal": equal,
                    }),
                    false,
                );
            }
            if !equal {
                return Err(Failure::Checks);
            }
        }
        Command::Apply {
            p,
            ops,
            input,
            disk,
            center_convention,
        } => {
            let p = prime(p)?;
            let ops = OperatorWord::parse(p, &ops)?;
            let f = match disk {
                Some(digits) => {
                    let conv = match center_convention {
                        ConventionArg::Lsd => CenterConvention::LsdFirst,
                        ConventionArg::Msd => CenterConvention::MsdFirst,
                    };
                    make_indicator(&word_to_center(p, &Word::parse(p, &digits)?, conv))?
                }
                None => read_input(p, input.as_deref().unwrap_or("one"))?,
            };
            let out = apply_operator_word(&ops, &f)?;
            emit(&StepFunctionJson::from(&out), cli.pretty);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
