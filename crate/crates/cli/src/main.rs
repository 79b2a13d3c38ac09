//! Command line front end.
//!
//! Exit status is 0 for success or a true answer, 1 for a false answer or an
//! ill-formed term, and 2 for bad usage (including terms that do not parse).

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lamalpha::context::Context;
use lamalpha::debruijn::{equiv_alpha, equiv_gamma_explain, print_db, translate_term, Flavor, Notation};
use lamalpha::harness::{run_suite, GenConfig, Suite, SuiteConfig};
use lamalpha::normalforms::{is_sigma_nf, to_pure};
use lamalpha::rewrite::{normalize, step, RuleSet, Strategy, Trace};
use lamalpha::{derive, fv, is_good, well_formed, Term};

#[derive(Parser)]
#[command(name = "lamalpha", version, about = "Named explicit substitutions with an alpha rule")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the derivation of a term, in its free variables by default.
    Check {
        term: Term,
        #[arg(long)]
        context: Option<Context>,
    },
    /// Free variables as a context.
    Fv { term: Term },
    /// Whether the term is derivable with an empty local part.
    Good { term: Term },
    /// Take a bounded number of rewrite steps and print the trace.
    Reduce {
        term: Term,
        #[arg(long)]
        context: Option<Context>,
        #[arg(long, default_value = "full")]
        rules: RuleSet,
        #[arg(long, default_value = "lo")]
        strategy: Strategy,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long, value_enum, default_value = "text")]
        trace: TraceFormat,
    },
    /// Rewrite leftmost-outermost to a normal form.
    Normalize {
        term: Term,
        #[arg(long, default_value = "full")]
        rules: RuleSet,
        #[arg(long, default_value_t = 10_000)]
        fuel: usize,
    },
    /// Translate to a de Bruijn term.
    Translate {
        term: Term,
        #[arg(long)]
        context: Context,
        #[arg(long, default_value = "upsilon")]
        calculus: Flavor,
        #[arg(long, default_value = "bracket")]
        notation: Notation,
    },
    /// Equality of translations, in a context or in the union of free
    /// variables of two good terms (the default).
    Equiv {
        a: Term,
        b: Term,
        #[arg(long, conflicts_with = "alpha")]
        context: Option<Context>,
        #[arg(long)]
        alpha: bool,
    },
    /// Classify a term as a normal form of propagation and read it as a
    /// classical term when possible.
    Nf { term: Term },
    /// Run a property suite.
    Test {
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 40)]
        size: usize,
        #[arg(long, default_value_t = 10_000)]
        fuel: usize,
        #[arg(long)]
        json: bool,
    },
}

fn answer(yes: bool) -> ExitCode {
    if yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ill_formed(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::FAILURE
}

fn print_trace(trace: &Trace, format: TraceFormat) {
    match format {
        TraceFormat::Text => print!("{}", trace.to_text()),
        TraceFormat::Json => println!("{}", serde_json::to_string_pretty(&trace.to_json()).expect("json")),
    }
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Check { term, context } => {
            let ctx = match context {
                Some(c) => c,
                None => match well_formed(&term) {
                    Ok(c) => c,
                    Err(e) => return ill_formed(e),
                },
            };
            match derive(&ctx, &term) {
                Ok(d) => {
                    print!("{}", d.render());
                    ExitCode::SUCCESS
                }
                Err(e) => ill_formed(e),
            }
        }
        Command::Fv { term } => match fv(&term) {
            Some(c) => {
                println!("{c}");
                ExitCode::SUCCESS
            }
            None => {
                println!("undefined");
                ExitCode::FAILURE
            }
        },
        Command::Good { term } => {
            let good = is_good(&term);
            println!("{}", if good { "yes" } else { "no" });
            answer(good)
        }
        Command::Reduce {
            term,
            context,
            rules,
            strategy,
            steps,
            trace: format,
        } => {
            if let Some(ctx) = &context {
                if let Err(e) = derive(ctx, &term) {
                    return ill_formed(e);
                }
            }
            let mut trace = Trace::new(term);
            for _ in 0..steps {
                match step(trace.result(), rules, strategy) {
                    Some(s) => trace.steps.push(s),
                    None => break,
                }
            }
            print_trace(&trace, format);
            ExitCode::SUCCESS
        }
        Command::Normalize { term, rules, fuel } => {
            let (nf, trace, exhausted) = normalize(&term, rules, Strategy::LeftmostOutermost, fuel);
            println!("{nf}");
            if exhausted {
                eprintln!("stopped after {} steps without reaching a normal form", trace.steps.len());
            }
            answer(!exhausted)
        }
        Command::Translate {
            term,
            context,
            calculus,
            notation,
        } => match translate_term(&context, &term, calculus) {
            Ok(a) => {
                println!("{}", print_db(&a, notation));
                ExitCode::SUCCESS
            }
            Err(e) => ill_formed(e),
        },
        Command::Equiv { a, b, context, .. } => {
            let result = match &context {
                Some(ctx) => equiv_gamma_explain(&a, &b, ctx),
                None => equiv_alpha(&a, &b),
            };
            match result {
                Ok(eq) => {
                    println!("{eq}");
                    answer(eq)
                }
                Err(e) => {
                    println!("false");
                    ill_formed(e)
                }
            }
        }
        Command::Nf { term } => {
            if let Err(e) = well_formed(&term) {
                return ill_formed(e);
            }
            let sigma = is_sigma_nf(&term);
            println!("sigma-nf: {}", if sigma { "yes" } else { "no" });
            match to_pure(&term) {
                Ok(p) => println!("pure: {p}"),
                Err(e) => println!("pure: no ({e})"),
            }
            answer(sigma)
        }
        Command::Test {
            suite,
            seed,
            count,
            size,
            fuel,
            json,
        } => {
            let cfg = SuiteConfig {
                gen: GenConfig {
                    seed,
                    max_size: size,
                    ..GenConfig::default()
                },
                trials: count,
                fuel,
                ..SuiteConfig::default()
            };
            if let Err(e) = cfg.gen.validate() {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            let report = run_suite(suite, &cfg);
            if json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("json"));
            } else {
                print!("{}", report.to_text());
            }
            answer(report.ok())
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
