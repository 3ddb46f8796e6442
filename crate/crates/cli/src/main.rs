//! `sylvester`: restricted partition counts from their closed form.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a mismatch, 2 on usage
//! or domain errors.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde_json::json;
use sylvester_core::{assemble, dp_count, Quasipolynomial, Rational, SummandSet};

#[derive(Parser, Debug)]
#[command(name = "sylvester", version, about = "Restricted partition functions via Sylvester waves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print W(s) for one s.
    Count {
        #[command(flatten)]
        common: Common,
        #[arg(long = "s", value_parser = parse_nonneg)]
        s: BigInt,
    },
    /// Print every wave W_j, one polynomial per residue class.
    Waves {
        #[command(flatten)]
        common: Common,
    },
    /// Print the assembled quasipolynomial W.
    Quasi {
        #[command(flatten)]
        common: Common,
    },
    /// Check the closed form against direct counting for 0..=max-s.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long = "max-s", value_parser = parse_usize)]
        max_s: usize,
        /// Add one to the constant term of this residue class before checking.
        #[arg(long, hide = true)]
        corrupt_coefficient: Option<u64>,
    },
    /// Time closed-form evaluation against direct counting.
    Bench {
        #[command(flatten)]
        common: Common,
        #[arg(long = "s", value_parser = parse_nonneg)]
        s: BigInt,
        #[arg(long, default_value_t = 10)]
        repeat: u32,
        /// Largest s for which direct counting is attempted.
        #[arg(long, default_value_t = 200_000, value_parser = parse_usize)]
        dp_budget: usize,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Comma-separated positive integers; repeats allowed.
    #[arg(long, value_parser = parse_summands)]
    summands: SummandSet,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_summands(raw: &str) -> Result<SummandSet, String> {
    let values = raw
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("bad summand `{t}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    SummandSet::from_signed(&values).map_err(|e| e.to_string())
}

fn parse_nonneg(raw: &str) -> Result<BigInt, String> {
    let v: BigInt = raw.trim().parse().map_err(|_| format!("not an integer: `{raw}`"))?;
    if v < BigInt::zero() {
        return Err(format!("must be nonnegative: {v}"));
    }
    Ok(v)
}

fn parse_usize(raw: &str) -> Result<usize, String> {
    raw.trim().parse().map_err(|_| format!("not a nonnegative integer: `{raw}`"))
}

fn summand_list(d: &SummandSet) -> String {
    d.elements().iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn class_table(q: &Quasipolynomial) -> String {
    let width = q.period().to_string().len().max(7);
    let mut out = format!("{:>width$}  polynomial in s\n", "residue");
    for (r, p) in q.classes().iter().enumerate() {
        out.push_str(&format!("{r:>width$}  {p}\n"));
    }
    out
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Count { common, s } => {
            let w = assemble(&common.summands).map_err(|e| e.to_string())?;
            let value = w.evaluate_integer(&s).map_err(|e| e.to_string())?;
            match common.format {
                Format::Text => println!("{value}"),
                Format::Json => println!(
                    "{}",
                    json!({
                        "summands": common.summands.elements(),
                        "s": s.to_string(),
                        "count": value.to_string(),
                    })
                ),
            }
        }
        Command::Waves { common } => {
            let waves = sylvester_core::waves::waves(&common.summands).map_err(|e| e.to_string())?;
            match common.format {
                Format::Text => {
                    for (j, w) in &waves {
                        let k = common.summands.weight(*j);
                        println!("W_{j}  (weight {k}, period {})", w.period());
                        print!("{}", class_table(w));
                    }
                }
                Format::Json => {
                    let items: Vec<_> = waves.iter().map(|(_, w)| w.to_json()).collect();
                    println!("{}", serde_json::to_string(&items).map_err(|e| e.to_string())?);
                }
            }
        }
        Command::Quasi { common } => {
            let w = assemble(&common.summands).map_err(|e| e.to_string())?;
            match common.format {
                Format::Text => {
                    println!("W(s; {}), period {}", summand_list(&common.summands), w.period());
                    print!("{}", class_table(&w));
                }
                Format::Json => {
                    println!("{}", serde_json::to_string(&w.to_json()).map_err(|e| e.to_string())?)
                }
            }
        }
        Command::Verify {
            common,
            max_s,
            corrupt_coefficient,
        } => return verify(&common, max_s, corrupt_coefficient),
        Command::Bench {
            common,
            s,
            repeat,
            dp_budget,
        } => bench(&common, &s, repeat.max(1), dp_budget)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(common: &Common, max_s: usize, corrupt: Option<u64>) -> Result<ExitCode, String> {
    let mut w = assemble(&common.summands).map_err(|e| e.to_string())?;
    if let Some(residue) = corrupt {
        w = w.with_corrupted_coefficient(residue, &Rational::one());
    }
    let table = dp_count(&common.summands, max_s);
    let mismatch = table.counts().iter().enumerate().find_map(|(s, expected)| {
        let got = w.evaluate(&BigInt::from(s)).expect("s is nonnegative");
        (got != Rational::from_integer(BigInt::from(expected.clone()))).then_some((s, got, expected))
    });
    let list = summand_list(&common.summands);
    match (common.format, &mismatch) {
        (Format::Text, None) => println!("pass: W(s; {list}) matches direct count for 0 <= s <= {max_s}"),
        (Format::Text, Some((s, got, expected))) => {
            println!("mismatch at s={s}: closed form {got}, direct count {expected}")
        }
        (Format::Json, None) => println!(
            "{}",
            json!({ "summands": common.summands.elements(), "max_s": max_s.to_string(), "status": "pass" })
        ),
        (Format::Json, Some((s, got, expected))) => println!(
            "{}",
            json!({
                "summands": common.summands.elements(),
                "max_s": max_s.to_string(),
                "status": "mismatch",
                "s": s.to_string(),
                "closed_form": got.to_string(),
                "direct": expected.to_string(),
            })
        ),
    }
    Ok(if mismatch.is_some() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn mean(total: Duration, n: u32) -> Duration {
    total / n
}

fn time_eval(w: &Quasipolynomial, s: &BigInt, repeat: u32) -> (BigInt, Duration) {
    let start = Instant::now();
    let mut value = BigInt::zero();
    for _ in 0..repeat {
        value = w.evaluate_integer(s).expect("assembled W is integral");
    }
    (value, mean(start.elapsed(), repeat))
}

fn time_dp(d: &SummandSet, s: usize, repeat: u32) -> (BigUint, Duration) {
    let start = Instant::now();
    let mut value = BigUint::zero();
    for _ in 0..repeat {
        value = dp_count(d, s).counts()[s].clone();
    }
    (value, mean(start.elapsed(), repeat))
}

fn bench(common: &Common, s: &BigInt, repeat: u32, dp_budget: usize) -> Result<(), String> {
    let d = &common.summands;
    let start = Instant::now();
    let w = assemble(d).map_err(|e| e.to_string())?;
    let assembly = start.elapsed();
    let (value, eval_time) = time_eval(&w, s, repeat);

    let dp = match usize::try_from(s.clone()) {
        Ok(n) if n <= dp_budget => {
            let (v, t) = time_dp(d, n, repeat);
            if BigInt::from(v) != value {
                return Err(format!("closed form and direct count disagree at s={s}"));
            }
            Some(t)
        }
        _ => None,
    };

    // Smallest power of two where one closed-form query beats a DP table.
    let mut crossover = None;
    let mut probe = 1usize;
    while probe <= dp_budget {
        let (_, ct) = time_eval(&w, &BigInt::from(probe), repeat);
        let (_, dt) = time_dp(d, probe, repeat);
        if ct < dt {
            crossover = Some(probe);
            break;
        }
        probe *= 2;
    }

    match common.format {
        Format::Text => {
            println!("summands        {}", summand_list(d));
            println!("s               {s}");
            println!("W(s)            {value}");
            println!("assembly        {assembly:?}");
            println!("closed form     {eval_time:?} per query ({repeat} repeats)");
            match dp {
                Some(t) => println!("direct count    {t:?} per query"),
                None => println!("direct count    skipped (s exceeds budget {dp_budget})"),
            }
            match crossover {
                Some(c) => println!("crossover       closed form faster from s ~ {c}"),
                None => println!("crossover       not reached within budget {dp_budget}"),
            }
        }
        Format::Json => println!(
            "{}",
            json!({
                "summands": d.elements(),
                "s": s.to_string(),
                "count": value.to_string(),
                "assembly_seconds": assembly.as_secs_f64().to_string(),
                "closed_form_seconds": eval_time.as_secs_f64().to_string(),
                "direct_seconds": dp.map(|t| t.as_secs_f64().to_string()),
                "crossover_s": crossover.map(|c| c.to_string()),
            })
        ),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
