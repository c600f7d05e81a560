//! `subfield-codes`: build the two code families, print weight
//! distributions, dual reports and construction claims, and verify closed
//! forms against brute-force enumeration.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 argument error,
//! 3 enumeration budget exceeded.

mod output;

use clap::{Args, Parser, Subcommand};

use output::{render_claims, render_dual, render_pairs, render_verify, render_wd, Check, Format, VerifyReport};
use subfield_codes_core::charsum::{approx_eq, gauss_sum_closed, gauss_sum_numeric};
use subfield_codes_core::dual::DualDistance;
use subfield_codes_core::{
    build_c1, build_c2, classify, closed_form_wd_c1, closed_form_wd_c2, dual_report,
    expected_claims, low_weight_dual_count, pless_dual_a123, weight_distribution_threaded, Basis,
    Error, Family, FiniteField, GeneratorMatrix,
};

const DEFAULT_BUDGET: u64 = 1 << 26;

#[derive(Parser)]
#[command(
    name = "subfield-codes",
    about = "Subfield codes of two linear-code families: construction, weight distributions, dual analysis and verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed-form weight distribution of a family instance.
    Wd(CodeArgs),
    /// Verify closed forms and claimed parameters against enumeration.
    Verify(CodeArgs),
    /// Print the dual report (power-moment counts, dual distance, flags).
    Dual(CodeArgs),
    /// Print the guaranteed parameters and distribution of an instance.
    Claims(CodeArgs),
    /// Compare the closed-form and numeric quadratic Gauss sums.
    Gauss(FieldArgs),
    /// Print the chosen modulus and generator of GF(p^m).
    FieldInfo(FieldArgs),
}

#[derive(Args)]
struct CodeArgs {
    /// Code family: c1 (squares construction) or c2 (norm construction).
    #[arg(long)]
    family: Family,
    /// Characteristic of the defining field.
    #[arg(long)]
    p: u64,
    /// Extension degree (defaults to 1 for c1, fixed at 2 for c2).
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Cap on enumerated codewords for brute-force checks.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads for enumeration; the output does not depend on it.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

fn main() {
    std::process::exit(run(Cli::parse()));
}

fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Wd(args) => cmd_wd(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Dual(args) => cmd_dual(&args),
        Command::Claims(args) => cmd_claims(&args),
        Command::Gauss(args) => cmd_gauss(&args),
        Command::FieldInfo(args) => cmd_field_info(&args),
    };
    match result {
        Ok(code) => code,
        Err(Error::BudgetExceeded { required, budget }) => {
            eprintln!("error: enumeration requires {required} steps, budget is {budget}");
            3
        }
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

/// Resolves and validates (family, p, m); error messages name the flag the
/// user has to fix.
fn resolve_params(args: &CodeArgs) -> Result<(u64, u32), String> {
    let m = match (args.family, args.m) {
        (Family::C1, m) => m.unwrap_or(1),
        (Family::C2, None) => 2,
        (Family::C2, Some(2)) => 2,
        (Family::C2, Some(other)) => {
            return Err(format!("family c2 requires m = 2, got {other}"));
        }
    };
    if args.family == Family::C1 && args.p == 2 {
        return Err("family c1 requires odd p".to_string());
    }
    if args.threads == 0 {
        return Err("--threads must be at least 1".to_string());
    }
    Ok((args.p, m))
}

fn closed_form(family: Family, p: u64, m: u32) -> Result<subfield_codes_core::WeightDistribution, Error> {
    match family {
        Family::C1 => closed_form_wd_c1(p, m),
        Family::C2 => closed_form_wd_c2(p),
    }
}

fn build(family: Family, p: u64, m: u32) -> Result<GeneratorMatrix, Error> {
    match family {
        Family::C1 => build_c1(p, m),
        Family::C2 => build_c2(p),
    }
}

fn usage_error(msg: String) -> i32 {
    eprintln!("error: {msg}");
    2
}

fn cmd_wd(args: &CodeArgs) -> Result<i32, Error> {
    let (p, m) = match resolve_params(args) {
        Ok(pm) => pm,
        Err(msg) => return Ok(usage_error(msg)),
    };
    let wd = closed_form(args.family, p, m)?;
    print!("{}", render_wd(args.family.name(), p, m, &wd, args.format));
    if args.format == Format::Json {
        println!();
    }
    Ok(0)
}

fn cmd_claims(args: &CodeArgs) -> Result<i32, Error> {
    let (p, m) = match resolve_params(args) {
        Ok(pm) => pm,
        Err(msg) => return Ok(usage_error(msg)),
    };
    let claims = expected_claims(args.family, p, m)?;
    print!("{}", render_claims(&claims, args.format));
    if args.format == Format::Json {
        println!();
    }
    Ok(0)
}

fn cmd_dual(args: &CodeArgs) -> Result<i32, Error> {
    let (p, m) = match resolve_params(args) {
        Ok(pm) => pm,
        Err(msg) => return Ok(usage_error(msg)),
    };
    let wd = closed_form(args.family, p, m)?;
    let report = dual_report(&wd)?;
    print!("{}", render_dual(&report, args.format));
    if args.format == Format::Json {
        println!();
    }
    Ok(0)
}

fn cmd_verify(args: &CodeArgs) -> Result<i32, Error> {
    let (p, m) = match resolve_params(args) {
        Ok(pm) => pm,
        Err(msg) => return Ok(usage_error(msg)),
    };
    let claims = expected_claims(args.family, p, m)?;
    let g = build(args.family, p, m)?;
    let expanded = g.subfield_expand(&Basis::polynomial(g.field()))?;
    let brute = weight_distribution_threaded(&expanded, args.budget, args.threads)?;
    let cf = closed_form(args.family, p, m)?;

    let mut checks = Vec::new();
    checks.push(Check::eq("length n", claims.primal.n, g.cols() as u64));
    checks.push(Check::eq("dimension k", claims.primal.k, brute.k() as u64));
    checks.push(Check::eq(
        "codeword total p^k",
        num_bigint::BigUint::from(p).pow(claims.primal.k as u32),
        brute.total(),
    ));
    checks.push(Check::eq(
        "min distance d",
        claims.primal.d.to_string(),
        brute.min_distance().map_or("undefined".to_string(), |d| d.to_string()),
    ));
    checks.push(Check::new(
        "weight distribution closed form == enumeration",
        "equal",
        if cf == brute { "equal" } else { "differs" },
        cf == brute,
    ));

    let (a1, a2, a3) = pless_dual_a123(&brute)?;
    for (w, moment_count) in [(1u8, &a1), (2, &a2), (3, &a3)] {
        let search = low_weight_dual_count(&expanded, w, args.budget)?;
        checks.push(Check::eq(
            &format!("dual A{w}: power moments == column search"),
            moment_count.clone(),
            search,
        ));
    }
    let report = dual_report(&brute)?;
    checks.push(Check::eq("dual dimension", claims.dual.k, report.k_dual as u64));
    checks.push(Check::eq(
        "dual distance",
        claims.dual.d.to_string(),
        match report.d_perp {
            DualDistance::Exact(d) => d.to_string(),
            DualDistance::AtLeastFour => "ge4".to_string(),
        },
    ));
    let computed_flags = match report.d_perp {
        DualDistance::Exact(d) => classify(claims.dual.n, claims.dual.k, d, p),
        DualDistance::AtLeastFour => Default::default(),
    };
    for flag in claims.dual_flags.names() {
        checks.push(Check::new(
            &format!("dual flag {flag}"),
            "set",
            if computed_flags.names().contains(&flag) { "set" } else { "unset" },
            computed_flags.names().contains(&flag),
        ));
    }

    let report = VerifyReport { checks };
    print!("{}", render_verify(&report, args.format));
    if args.format == Format::Json {
        println!();
    }
    Ok(if report.overall_pass() { 0 } else { 1 })
}

fn cmd_gauss(args: &FieldArgs) -> Result<i32, Error> {
    let field = FiniteField::new(args.p, args.m)?;
    let closed = gauss_sum_closed(&field)?;
    let numeric = gauss_sum_numeric(&field)?;
    let tol = 1e-9 * (field.order() as f64).sqrt();
    let pass = approx_eq(closed, numeric, tol);
    let rows = vec![
        ("p".to_string(), args.p.to_string()),
        ("m".to_string(), args.m.to_string()),
        ("q".to_string(), field.order().to_string()),
        ("closed".to_string(), format!("{} + {}i", closed.re, closed.im)),
        ("numeric".to_string(), format!("{} + {}i", numeric.re, numeric.im)),
        ("delta".to_string(), format!("{:.3e}", (closed - numeric).norm())),
        ("tolerance".to_string(), format!("{tol:.3e}")),
        ("status".to_string(), if pass { "pass".to_string() } else { "fail".to_string() }),
    ];
    print!("{}", render_pairs(&rows, args.format));
    if args.format == Format::Json {
        println!();
    }
    Ok(if pass { 0 } else { 1 })
}

fn cmd_field_info(args: &FieldArgs) -> Result<i32, Error> {
    let field = FiniteField::new(args.p, args.m)?;
    let modulus_list =
        format!("[{}]", field.modulus().iter().map(u64::to_string).collect::<Vec<_>>().join(", "));
    let rows = vec![
        ("p".to_string(), args.p.to_string()),
        ("m".to_string(), args.m.to_string()),
        ("q".to_string(), field.order().to_string()),
        ("modulus".to_string(), field.format_modulus()),
        ("modulus_coefficients".to_string(), modulus_list),
        ("generator".to_string(), field.format_element(field.generator())),
        ("generator_order".to_string(), (field.order() - 1).to_string()),
    ];
    print!("{}", render_pairs(&rows, args.format));
    if args.format == Format::Json {
        println!();
    }
    Ok(0)
}
