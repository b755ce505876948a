use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use treemaps::hopf::{antipode, coproduct, ForestSumDisplay, TensorSumDisplay};
use treemaps::laws::{run_suite, Sweep};
use treemaps::mlv::{check_kernel, evaluate_l, EvalOptions, TailStrategy};
use treemaps::parse::{parse_forest, parse_index, parse_poly};
use treemaps::products::{diamond, harmonic};
use treemaps::rtm::{apply_rtm, apply_tau_conjugate, f_poly, g_poly, generate_relations, Variant};
use treemaps::{shared, Error, ForestSum, Mutation, NCPoly, RootIndex};

/// Rooted tree maps, harmonic and diamond products, and multiple L-value relations.
#[derive(Parser)]
#[command(name = "treemaps", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Modulus r: twists are exponents j of exp(2πij/r).
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Print machine-readable JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
struct Numeric {
    /// Truncation point N of every series.
    #[arg(long, default_value_t = 100_000)]
    max_terms: usize,
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    /// Treatment of conditionally convergent (k1 = 1) heads.
    #[arg(long, value_enum, default_value_t = Strategy::PeriodAverage)]
    strategy: Strategy,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Plain,
    PeriodAverage,
}

impl Numeric {
    fn options(&self) -> EvalOptions {
        let tail_strategy = match self.strategy {
            Strategy::Plain => TailStrategy::Plain,
            Strategy::PeriodAverage => TailStrategy::PeriodAverage,
        };
        EvalOptions { max_terms: self.max_terms, tail_strategy, tolerance: self.tol }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Direct,
    Tau,
}

#[derive(Subcommand)]
enum Command {
    /// Coproduct of a forest sum.
    Coproduct {
        #[arg(long)]
        forest: String,
        #[command(flatten)]
        common: Common,
    },
    /// Antipode of a forest sum.
    Antipode {
        #[arg(long)]
        forest: String,
        #[command(flatten)]
        common: Common,
    },
    /// Apply the tree map of a forest sum to a polynomial.
    RtmApply {
        #[arg(long)]
        forest: String,
        #[arg(long, alias = "poly")]
        word: String,
        /// Apply the τ-conjugate τ f̃ τ instead.
        #[arg(long)]
        tau: bool,
        #[command(flatten)]
        common: Common,
    },
    /// The polynomial F_f.
    Fpoly {
        #[arg(long)]
        forest: String,
        #[command(flatten)]
        common: Common,
    },
    /// The polynomial G_f.
    Gpoly {
        #[arg(long)]
        forest: String,
        #[command(flatten)]
        common: Common,
    },
    /// Harmonic product of two polynomials.
    Harmonic {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[command(flatten)]
        common: Common,
    },
    /// Diamond product v ⋄_s w with v over {x, y0} and w at modulus r.
    Diamond {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Exponent j of s = exp(2πij/r).
        #[arg(long, default_value_t = 0)]
        s: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Relations f̃(w) (or τ f̃ τ(w)) for all forests of one degree and admissible words of one weight.
    Relations {
        #[arg(long, default_value_t = 1)]
        degree: u32,
        #[arg(long, default_value_t = 2)]
        weight: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Direct)]
        variant: VariantArg,
        /// Also check every relation numerically.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        numeric: Numeric,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate one multiple L-value, index given as `k1,..,kl;j1,..,jl`.
    Eval {
        #[arg(long)]
        index: String,
        #[command(flatten)]
        numeric: Numeric,
        #[command(flatten)]
        common: Common,
    },
    /// Check numerically that a polynomial evaluates to zero.
    Check {
        #[arg(long, alias = "word")]
        poly: String,
        #[command(flatten)]
        numeric: Numeric,
        #[command(flatten)]
        common: Common,
    },
    /// Run identity suites.
    Verify {
        /// Comma-separated suite names, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// A single value sweeps r = 1..=value; a comma list is used as given.
        #[arg(long, default_value = "2")]
        r: String,
        #[arg(long, default_value_t = 2)]
        max_forest: u32,
        #[arg(long, default_value_t = 2)]
        max_word: usize,
        #[arg(long, default_value_t = 5)]
        max_hopf: u32,
        /// Random cases per suite and modulus one degree above the caps.
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long, default_value_t = 0x7265_6573)]
        seed: u64,
        /// Inject a deliberate fault to test the harness.
        #[arg(long)]
        mutate: Option<String>,
        #[arg(long)]
        json: bool,
        /// List the registered suites and exit.
        #[arg(long)]
        list: bool,
    },
}

enum Failed {
    Usage(Error),
    Check,
}

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        Failed::Usage(e)
    }
}

fn forest(text: &str) -> Result<ForestSum, Failed> {
    Ok(parse_forest(text)?)
}

fn emit(json: bool, value: serde_json::Value, text: impl std::fmt::Display) {
    if json {
        println!("{value}");
    } else {
        println!("{text}");
    }
}

fn emit_poly(common: &Common, p: &NCPoly) {
    emit(common.json, json!({ "r": p.modulus(), "result": p.to_string() }), p);
}

fn parse_r_values(text: &str) -> Result<Vec<u32>, Failed> {
    let bad = || Failed::Usage(Error::InvalidArgument(format!("bad --r value {text}")));
    if text.contains(',') {
        text.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
    } else {
        let top: u32 = text.trim().parse().map_err(|_| bad())?;
        Ok((1..=top).collect())
    }
}

fn run(cmd: Command) -> Result<(), Failed> {
    match cmd {
        Command::Coproduct { forest: f, common } => {
            let t = coproduct(&forest(&f)?);
            let shown = TensorSumDisplay(&t).to_string();
            emit(common.json, json!({ "result": shown }), &shown);
        }
        Command::Antipode { forest: f, common } => {
            let s = antipode(&forest(&f)?);
            let shown = ForestSumDisplay(&s).to_string();
            emit(common.json, json!({ "result": shown }), &shown);
        }
        Command::RtmApply { forest: f, word, tau, common } => {
            let ctx = shared(common.r, None)?;
            let f = forest(&f)?;
            let p = parse_poly(&word, common.r)?;
            let out = if tau { apply_tau_conjugate(&ctx, &f, &p)? } else { apply_rtm(&ctx, &f, &p)? };
            emit_poly(&common, &out);
        }
        Command::Fpoly { forest: f, common } => {
            let ctx = shared(common.r, None)?;
            emit_poly(&common, &f_poly(&ctx, &forest(&f)?)?);
        }
        Command::Gpoly { forest: f, common } => {
            let ctx = shared(common.r, None)?;
            emit_poly(&common, &g_poly(&ctx, &forest(&f)?)?);
        }
        Command::Harmonic { left, right, common } => {
            let ctx = shared(common.r, None)?;
            let out = harmonic(&ctx, &parse_poly(&left, common.r)?, &parse_poly(&right, common.r)?)?;
            emit_poly(&common, &out);
        }
        Command::Diamond { left, right, s, common } => {
            let ctx = shared(common.r, None)?;
            if s >= common.r {
                return Err(Error::TwistOutOfRange { j: s, r: common.r }.into());
            }
            let s = RootIndex::new(s, common.r);
            let out = diamond(&ctx, s, &parse_poly(&left, 1)?, &parse_poly(&right, common.r)?)?;
            emit_poly(&common, &out);
        }
        Command::Relations { degree, weight, variant, check, numeric, common } => {
            let ctx = shared(common.r, None)?;
            let variant = match variant {
                VariantArg::Direct => Variant::Direct,
                VariantArg::Tau => Variant::TauConjugate,
            };
            let rels = generate_relations(&ctx, degree, weight, variant)?;
            let opts = numeric.options();
            let mut all_pass = true;
            let mut out = Vec::new();
            for rel in &rels {
                let report = if check { Some(check_kernel(&rel.poly, &opts)?) } else { None };
                all_pass &= report.is_none_or(|r| r.pass);
                if common.json {
                    let mut v = serde_json::to_value(rel.to_json()).expect("serializable");
                    if let Some(rep) = report {
                        v["check"] = serde_json::to_value(rep.to_json()).expect("serializable");
                    }
                    out.push(v);
                } else {
                    match report {
                        Some(rep) => println!("{rel} | {} |sum|={:.3e}", if rep.pass { "pass" } else { "FAIL" }, rep.sum.norm()),
                        None => println!("{rel}"),
                    }
                }
            }
            if common.json {
                println!("{}", serde_json::Value::Array(out));
            }
            if !all_pass {
                return Err(Failed::Check);
            }
        }
        Command::Eval { index, numeric, common } => {
            let ix = parse_index(&index, common.r)?;
            let res = evaluate_l(&ix, &numeric.options())?;
            emit(
                common.json,
                json!({ "re": res.value.re, "im": res.value.im, "error": res.error_estimate, "N": numeric.max_terms }),
                format!("{:.12} {:+.12}i ± {:.3e}", res.value.re, res.value.im, res.error_estimate),
            );
        }
        Command::Check { poly, numeric, common } => {
            let p = parse_poly(&poly, common.r)?;
            let rep = check_kernel(&p, &numeric.options())?;
            emit(
                common.json,
                serde_json::to_value(rep.to_json()).expect("serializable"),
                format!(
                    "{} |sum| = {:.3e} (sum = {:.3e} {:+.3e}i, bound {:.3e}, N = {})",
                    if rep.pass { "pass" } else { "FAIL" },
                    rep.sum.norm(),
                    rep.sum.re,
                    rep.sum.im,
                    rep.bound,
                    rep.n
                ),
            );
            if !rep.pass {
                return Err(Failed::Check);
            }
        }
        Command::Verify { suite, r, max_forest, max_word, max_hopf, samples, seed, mutate, json, list } => {
            if list {
                for law in treemaps::laws::registry() {
                    println!("{:<24} {}", law.name, law.statement);
                }
                return Ok(());
            }
            let mutation = mutate.as_deref().map(str::parse::<Mutation>).transpose()?;
            let sweep = Sweep {
                r_values: parse_r_values(&r)?,
                max_forest_degree: max_forest,
                max_word_degree: max_word,
                max_hopf_degree: max_hopf,
                sample_budget: samples,
                seed,
            };
            let names: Vec<&str> = suite.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let reports = run_suite(&names, &sweep, mutation)?;
            if json {
                println!("{}", serde_json::to_string(&reports).expect("serializable"));
            } else {
                for rep in &reports {
                    let status = if rep.passed() { "PASS" } else { "FAIL" };
                    println!("{status} {:<24} cases={:<7} failures={:<5} ms={}", rep.law, rep.cases, rep.failures.len(), rep.ms);
                    for f in rep.failures.iter().take(3) {
                        println!("    case: {}\n    lhs:  {}\n    rhs:  {}", f.case, f.lhs, f.rhs);
                    }
                }
            }
            if reports.iter().any(|r| !r.passed()) {
                return Err(Failed::Check);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failed::Check) => ExitCode::from(1),
        Err(Failed::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
