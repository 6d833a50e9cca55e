//! Command-line surface: compute the polynomials, isolate and certify
//! their roots, evaluate the numeric layer, and run the certification
//! suite. Exit codes: 0 success, 1 verification failure, 2 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mockhecke::analytic::{
    a_delta, a_delta_exact_zero, beta_delta, check_f_bound, factorial_11, Real, SeriesSum,
};
use mockhecke::error::Error;
use mockhecke::faber::{divisor_polynomial, faber_psi};
use mockhecke::heckepoly::{hecke_poly_f, FACTORIAL_11};
use mockhecke::qseries::{eisenstein, rat_from_decimal_str, rat_to_str, PrecisionContext};
use mockhecke::roots::{equidistribution, interior_quotient, roots_of_hecke_poly};
use mockhecke::verify::{run as run_suite, VerifyLevel};

#[derive(Parser)]
#[command(
    name = "mockhecke",
    version,
    about = "Hecke polynomials of the weight -10 mock modular form: exact construction, zero certification, Kloosterman-Bessel numerics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// q-series truncation order N (coefficients known below q^N)
    #[arg(long, global = true)]
    series_order: Option<i64>,

    /// Kloosterman-Bessel cutoff for c-sums
    #[arg(long, global = true)]
    cmax: Option<u32>,

    /// Working precision in decimal digits (>= 30)
    #[arg(long, global = true)]
    precision: Option<u32>,

    /// Bisection tolerance, e.g. 1e-30
    #[arg(long, global = true)]
    tol: Option<String>,

    /// Machine-readable JSON output
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// CSV output (tabular commands)
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Faber polynomial psi_m of the j-function
    Psi { m: u32 },
    /// Print the Hecke polynomial F_m
    Fpoly {
        m: i64,
        /// Show the guaranteed factors x and (x - 1728) divided out
        #[arg(long)]
        split_endpoints: bool,
    },
    /// Isolate, refine, and tabulate the roots of F_m with arc angles
    Roots { m: i64 },
    /// Mock coefficient a(n); n = -1 and n = 0 are exact
    Coeff { n: i64 },
    /// The Poincare series constant beta
    Beta,
    /// Budget reports for the damped-cosine approximation on the arc
    BoundCheck {
        m: i64,
        #[arg(long, default_value_t = 50)]
        grid: usize,
    },
    /// Root equidistribution statistics in the g-normalized coordinate
    Equidist { m: i64 },
    /// Divisor polynomial of the Eisenstein series E_k
    DivisorPoly { k: u32 },
    /// Run the certification suite
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Quick,
    Full,
}

#[derive(Clone, Copy, PartialEq)]
enum Format {
    Text,
    Json,
    Csv,
}

fn context(cli: &Cli) -> Result<PrecisionContext, Error> {
    let defaults = PrecisionContext::default();
    let series_order = cli.series_order.unwrap_or(defaults.series_order);
    let c_max = cli.cmax.unwrap_or(defaults.c_max);
    let precision = cli.precision.unwrap_or(defaults.work_precision);
    let tol = match &cli.tol {
        Some(t) => rat_from_decimal_str(t)?,
        None => defaults.root_tol.clone(),
    };
    PrecisionContext::new(series_order, c_max, precision, tol)
}

fn real_value(v: &Real, digits: u32, tail: Option<&Real>) -> Value {
    let mut obj = json!({
        "value": v.to_decimal(digits as usize),
        "digits": digits,
    });
    if let Some(t) = tail {
        obj["tail_estimate"] = Value::String(t.to_decimal(6));
    }
    obj
}

fn series_value(s: &SeriesSum, digits: u32) -> Value {
    let mut obj = real_value(&s.value, digits, Some(&s.tail_estimate));
    obj["c_max"] = json!(s.c_max);
    obj
}

fn int_coeffs(p: &mockhecke::poly::IntPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

fn required_order(ctx: &PrecisionContext, needed: i64) -> PrecisionContext {
    if ctx.series_order < needed {
        ctx.clone().with_series_order(needed)
    } else {
        ctx.clone()
    }
}

fn run(cli: &Cli) -> Result<i32, Error> {
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let ctx = context(cli)?;
    let digits = ctx.work_precision.min(40);
    match &cli.command {
        Command::Psi { m } => {
            let local = required_order(&ctx, *m as i64 + 3);
            let p = faber_psi(*m, &local)?;
            match format {
                Format::Json => {
                    println!("{}", json!({"m": m.to_string(), "coefficients": int_coeffs(&p)}))
                }
                _ => println!("{}", p.display()),
            }
        }
        Command::Fpoly { m, split_endpoints } => {
            let local = required_order(&ctx, *m + 2);
            let f = hecke_poly_f(*m, &local)?;
            if *split_endpoints {
                let q = interior_quotient(&f)?;
                match format {
                    Format::Json => println!(
                        "{}",
                        json!({
                            "m": m.to_string(),
                            "coefficients": int_coeffs(&f),
                            "interior_factor": int_coeffs(&q),
                            "factorization": format!("x * ({}) * (x - 1728)", q.display()),
                        })
                    ),
                    _ => println!("x * ({}) * (x - 1728)", q.display()),
                }
            } else {
                match format {
                    Format::Json => {
                        println!("{}", json!({"m": m.to_string(), "coefficients": int_coeffs(&f)}))
                    }
                    _ => println!("{}", f.display()),
                }
            }
        }
        Command::Roots { m } => {
            let local = required_order(&ctx, *m + 2);
            let records = roots_of_hecke_poly(*m, &local)?;
            match format {
                Format::Json => {
                    let rows: Vec<Value> = records
                        .iter()
                        .map(|r| {
                            json!({
                                "m": m.to_string(),
                                "ell": r.ell.map(|l| l.to_string()),
                                "x": r.x_real.to_decimal(40),
                                "theta": r.theta.to_decimal(40),
                                "u": r.u.to_decimal(40),
                            })
                        })
                        .collect();
                    println!("{}", Value::Array(rows));
                }
                Format::Csv => {
                    println!("m,ell,x,theta,u");
                    for r in &records {
                        println!(
                            "{},{},{},{},{}",
                            m,
                            r.ell.map(|l| l.to_string()).unwrap_or_default(),
                            r.x_real.to_decimal(40),
                            r.theta.to_decimal(40),
                            r.u.to_decimal(40)
                        );
                    }
                }
                Format::Text => {
                    for r in &records {
                        println!(
                            "x = {:<46} theta = {:<44} u = {}",
                            r.x_real.to_decimal(40),
                            r.theta.to_decimal(40),
                            r.u.to_decimal(40)
                        );
                    }
                }
            }
        }
        Command::Coeff { n } => match n {
            -1 => match format {
                Format::Json => {
                    println!("{}", json!({"n": "-1", "exact": FACTORIAL_11.to_string()}))
                }
                _ => println!("{FACTORIAL_11}"),
            },
            0 => {
                let exact = a_delta_exact_zero();
                match format {
                    Format::Json => println!("{}", json!({"n": "0", "exact": rat_to_str(&exact)})),
                    _ => println!("{}", rat_to_str(&exact)),
                }
            }
            _ => {
                let sum = a_delta(*n, &ctx)?;
                match format {
                    Format::Json => {
                        println!("{}", json!({"n": n.to_string(), "a": series_value(&sum, digits)}))
                    }
                    _ => println!(
                        "a({n}) = {}   (tail estimate {}, c_max {})",
                        sum.value.to_decimal(digits as usize),
                        sum.tail_estimate.to_decimal(4),
                        sum.c_max
                    ),
                }
            }
        },
        Command::Beta => {
            let sum = beta_delta(&ctx)?;
            match format {
                Format::Json => println!("{}", json!({"beta": series_value(&sum, digits)})),
                _ => println!(
                    "beta = {}   (tail estimate {}, c_max {})",
                    sum.value.to_decimal(digits as usize),
                    sum.tail_estimate.to_decimal(4),
                    sum.c_max
                ),
            }
        }
        Command::BoundCheck { m, grid } => {
            let reports = check_f_bound(*m, *grid, &ctx)?;
            let all_pass = reports.iter().all(|r| r.pass);
            match format {
                Format::Json => {
                    let rows: Vec<Value> = reports
                        .iter()
                        .map(|r| {
                            json!({
                                "m": r.m.to_string(),
                                "theta": r.theta.to_decimal(30),
                                "lhs": real_value(&r.lhs, 20, Some(&r.truncation_error)),
                                "budget": r.budget.to_decimal(10),
                                "pass": r.pass,
                            })
                        })
                        .collect();
                    println!("{}", Value::Array(rows));
                }
                Format::Csv => {
                    println!("m,theta,lhs,truncation_error,budget,pass");
                    for r in &reports {
                        println!(
                            "{},{},{},{},{},{}",
                            r.m,
                            r.theta.to_decimal(30),
                            r.lhs.to_decimal(20),
                            r.truncation_error.to_decimal(6),
                            r.budget.to_decimal(10),
                            r.pass
                        );
                    }
                }
                Format::Text => {
                    for r in &reports {
                        println!(
                            "theta = {:<34} lhs = {:<26} (+ err {})  {}",
                            r.theta.to_decimal(30),
                            r.lhs.to_decimal(20),
                            r.truncation_error.to_decimal(4),
                            if r.pass { "pass" } else { "FAIL" }
                        );
                    }
                    println!("budget 11! = {}", factorial_11(64).to_decimal(9));
                }
            }
            if !all_pass {
                return Ok(1);
            }
        }
        Command::Equidist { m } => {
            let local = required_order(&ctx, *m + 4);
            let report = equidistribution(*m, &local)?;
            match format {
                Format::Json => {
                    println!(
                        "{}",
                        json!({
                            "m": m.to_string(),
                            "star_discrepancy": report.star_discrepancy.to_decimal(20),
                            "positions": report
                                .normalized_positions
                                .iter()
                                .map(|u| Value::String(u.to_decimal(30)))
                                .collect::<Vec<_>>(),
                        })
                    );
                }
                Format::Csv => {
                    println!("m,u");
                    for u in &report.normalized_positions {
                        println!("{},{}", m, u.to_decimal(30));
                    }
                    println!("# star_discrepancy,{}", report.star_discrepancy.to_decimal(20));
                }
                Format::Text => {
                    for u in &report.normalized_positions {
                        println!("u = {}", u.to_decimal(30));
                    }
                    println!("D* = {}", report.star_discrepancy.to_decimal(20));
                }
            }
        }
        Command::DivisorPoly { k } => {
            let e = eisenstein(*k, &ctx)?;
            let f = divisor_polynomial(&e, *k, &ctx)?;
            match format {
                Format::Json => {
                    let coeffs: Vec<Value> =
                        f.coeffs().iter().map(|c| Value::String(rat_to_str(c))).collect();
                    println!("{}", json!({"k": k.to_string(), "coefficients": coeffs}));
                }
                _ => println!("{}", f.display()),
            }
        }
        Command::Verify { level } => {
            let level = match level {
                Level::Quick => VerifyLevel::Quick,
                Level::Full => VerifyLevel::Full,
            };
            let reports = run_suite(level);
            let mut failures = 0;
            for r in &reports {
                let status = if r.pass { "PASS" } else { "FAIL" };
                println!("criterion {:>2} {status}  {} — {}", r.id, r.name, r.detail);
                if !r.pass {
                    failures += 1;
                }
            }
            println!("{} of {} criteria passed", reports.len() - failures, reports.len());
            if failures > 0 {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}
