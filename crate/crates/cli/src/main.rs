//! Command-line front end for the valuation library.
//!
//! Exit codes: 0 on success, 1 on a mathematical error (division by a
//! zero-indistinguishable element, missing ramification certificate,
//! non-integral residue, insufficient precision, ...), 2 on a parse or
//! flag error.

use adic_cli::{eval, expr};

use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use adic_core::extension::{Certificate, CompleteBase, ExtElem, ExtField, LaurentCtx};
use adic_core::{
    Error, Field, LaurentSeries, PAdicCtx, PAdicValuation, PrimeField, RatFunc, RatFuncField,
    Rationals, ValuedField, XAdicValuation,
};

use eval::EvalError;
use expr::Expr;

#[derive(Parser)]
#[command(name = "adic", version, about = "Exact arithmetic in discretely valued fields")]
struct Cli {
    /// Emit one flat JSON object instead of human-readable text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Valuation of an exact rational or rational-function expression
    Val {
        /// Prime of the p-adic valuation on Q
        #[arg(long)]
        p: Option<u64>,
        /// Coefficient field of the X-adic valuation: F<p> or Q
        #[arg(long)]
        field: Option<String>,
        expr: String,
    },
    /// Evaluate an expression in the p-adic numbers
    Padic {
        #[arg(long)]
        p: u64,
        /// Significant digits for embedded rationals
        #[arg(long, default_value_t = 20)]
        prec: i64,
        expr: String,
    },
    /// Expand a rational-function expression as a Laurent series
    Laurent {
        /// Coefficient field: F<p> or Q
        #[arg(long)]
        field: String,
        /// Coefficients are computed below this exponent
        #[arg(long, default_value_t = 20)]
        prec: i64,
        expr: String,
    },
    /// Work in a finite extension K[x]/(f) of Q_p or F_p((X))
    Ext {
        /// Base Q_p
        #[arg(long)]
        p: Option<u64>,
        /// Base F_p((X)), given as F<p>
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value_t = 20)]
        prec: i64,
        /// Monic modulus polynomial in x
        #[arg(long)]
        poly: String,
        #[command(subcommand)]
        action: ExtAction,
    },
    /// Factor an element as a uniformizer power times a unit
    Factor {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        field: Option<String>,
        expr: String,
    },
}

#[derive(Subcommand)]
enum ExtAction {
    /// Certificate, ramification and residue data of the extension
    Info,
    /// Extended and normalized valuation of an element
    Val { expr: String },
    /// Field norm of an element
    Norm { expr: String },
    /// Ring-of-integers membership of an element
    Integral { expr: String },
    /// Image of an integral element in the residue field
    Residue { expr: String },
}

enum CliError {
    Parse(expr::ParseError),
    Flag(String),
    Math(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Flag(_) => 2,
            CliError::Math(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Flag(s) => write!(f, "{s}"),
            CliError::Math(s) => write!(f, "{s}"),
        }
    }
}

impl From<expr::ParseError> for CliError {
    fn from(e: expr::ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Math(e.to_string())
    }
}

#[derive(Clone, Copy)]
enum FieldSpec {
    Prime(u64),
    Rational,
}

fn parse_field_spec(s: &str) -> Result<FieldSpec, CliError> {
    if s == "Q" {
        return Ok(FieldSpec::Rational);
    }
    if let Some(digits) = s.strip_prefix('F') {
        if let Ok(p) = digits.parse::<u64>() {
            if adic_core::field::is_prime_u64(p) {
                return Ok(FieldSpec::Prime(p));
            }
            return Err(CliError::Flag(format!("{p} is not prime")));
        }
    }
    Err(CliError::Flag(format!(
        "unknown field {s:?}: expected F<prime> or Q"
    )))
}

fn exactly_one_descriptor(
    p: &Option<u64>,
    field: &Option<String>,
) -> Result<(), CliError> {
    match (p, field) {
        (Some(_), None) | (None, Some(_)) => Ok(()),
        _ => Err(CliError::Flag(
            "exactly one of --p and --field is required".into(),
        )),
    }
}

fn check_prec(prec: i64) -> Result<(), CliError> {
    if !(1..=100_000).contains(&prec) {
        return Err(CliError::Flag("--prec must be between 1 and 100000".into()));
    }
    Ok(())
}

fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output serializes")
}

#[derive(Serialize)]
struct ValOut {
    result: String,
    additive: String,
}

#[derive(Serialize)]
struct SeriesOut {
    result: String,
    valuation: String,
    precision: Option<i64>,
}

#[derive(Serialize)]
struct ExtInfoOut {
    certificate: String,
    n: u64,
    e: u64,
    f: u64,
    residue_order: u128,
    uniformizer: String,
}

#[derive(Serialize)]
struct ExtValOut {
    w: String,
    normalized: String,
}

#[derive(Serialize)]
struct BoolOut {
    result: bool,
}

#[derive(Serialize)]
struct StrOut {
    result: String,
}

#[derive(Serialize)]
struct FactorOut {
    result: String,
    exponent: u64,
    unit: String,
}

fn val_output(m: adic_core::MultZ0, json: bool) -> String {
    let additive = m.to_addval().to_string();
    if json {
        json_line(&ValOut { result: m.to_string(), additive })
    } else {
        format!("{m}  (additive: {additive})")
    }
}

fn run_val(p: &Option<u64>, field: &Option<String>, text: &str, json: bool) -> Result<String, CliError> {
    exactly_one_descriptor(p, field)?;
    let ast = expr::parse(text)?;
    let m = if let Some(p) = p {
        let v = PAdicValuation::new(*p).map_err(|e| CliError::Flag(e.to_string()))?;
        v.val(&eval::eval_rational(&ast)?)
    } else {
        match parse_field_spec(field.as_deref().unwrap())? {
            FieldSpec::Prime(q) => {
                let f = PrimeField::new(q).expect("validated prime");
                XAdicValuation::new(f).val(&eval::eval_ratfunc(&ast, &f)?)
            }
            FieldSpec::Rational => {
                XAdicValuation::new(Rationals).val(&eval::eval_ratfunc(&ast, &Rationals)?)
            }
        }
    };
    Ok(val_output(m, json))
}

fn run_padic(p: u64, prec: i64, text: &str, json: bool) -> Result<String, CliError> {
    check_prec(prec)?;
    let ctx = PAdicCtx::new(p, prec as u32).map_err(|e| CliError::Flag(e.to_string()))?;
    let ast = expr::parse(text)?;
    let x = eval::eval_padic(&ast, &ctx)?;
    if json {
        Ok(json_line(&SeriesOut {
            result: x.to_string(),
            valuation: x.valuation().to_string(),
            precision: x.abs_prec(),
        }))
    } else {
        Ok(x.to_string())
    }
}

fn series_out<F: Field>(s: &LaurentSeries<F>) -> (String, String, Option<i64>) {
    (s.to_string(), s.valuation().to_string(), s.abs_prec())
}

fn run_laurent(field: &str, prec: i64, text: &str, json: bool) -> Result<String, CliError> {
    check_prec(prec)?;
    let ast = expr::parse(text)?;
    let (result, valuation, precision) = match parse_field_spec(field)? {
        FieldSpec::Prime(q) => {
            let f = PrimeField::new(q).expect("validated prime");
            let rf = eval::eval_ratfunc(&ast, &f)?;
            series_out(&LaurentSeries::from_ratfunc(&rf, prec))
        }
        FieldSpec::Rational => {
            let rf = eval::eval_ratfunc(&ast, &Rationals)?;
            series_out(&LaurentSeries::from_ratfunc(&rf, prec))
        }
    };
    if json {
        Ok(json_line(&SeriesOut { result, valuation, precision }))
    } else {
        Ok(result)
    }
}

fn unit_string(s: String) -> String {
    if s.contains(" + ") || s.contains(" - ") {
        format!("({s})")
    } else {
        s
    }
}

fn run_factor(p: &Option<u64>, field: &Option<String>, text: &str, json: bool) -> Result<String, CliError> {
    exactly_one_descriptor(p, field)?;
    let ast = expr::parse(text)?;
    let (pi_name, n, unit) = if let Some(p) = p {
        let v = PAdicValuation::new(*p).map_err(|e| CliError::Flag(e.to_string()))?;
        let x = eval::eval_rational(&ast)?;
        let (n, u) = v.pow_uniformizer(&x, &v.canonical_uniformizer())?;
        (p.to_string(), n, u.to_string())
    } else {
        match parse_field_spec(field.as_deref().unwrap())? {
            FieldSpec::Prime(q) => {
                let f = PrimeField::new(q).expect("validated prime");
                let v = XAdicValuation::new(f);
                let x = eval::eval_ratfunc(&ast, &f)?;
                let (n, u) = v.pow_uniformizer(&x, &v.canonical_uniformizer())?;
                ("X".to_string(), n, u.format("X"))
            }
            FieldSpec::Rational => {
                let v = XAdicValuation::new(Rationals);
                let x = eval::eval_ratfunc(&ast, &Rationals)?;
                let (n, u) = v.pow_uniformizer(&x, &v.canonical_uniformizer())?;
                ("X".to_string(), n, u.format("X"))
            }
        }
    };
    let unit = unit_string(unit);
    let result = format!("{pi_name}^{n} * {unit}");
    if json {
        Ok(json_line(&FactorOut { result, exponent: n, unit }))
    } else {
        Ok(result)
    }
}

/// Builds the extension over Q_p from an exact rational modulus.
fn build_ext_padic(ctx: PAdicCtx, ast: &Expr) -> Result<ExtField<PAdicCtx>, CliError> {
    let poly = eval::eval_poly(ast, &Rationals, None)?;
    let n = match poly.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(CliError::Math("modulus must have degree at least 1".into())),
    };
    if !Rationals.is_one(&poly.coeff(n)) {
        return Err(Error::NonMonicModulus.into());
    }
    let low: Vec<_> = (0..n)
        .map(|i| CompleteBase::from_rat(&ctx, &poly.coeff(i)))
        .collect::<Result<_, _>>()?;
    Ok(ExtField::new(ctx, low)?)
}

/// Builds the extension over F_p((X)) from a modulus whose coefficients are
/// rational functions in X.
fn build_ext_laurent(ctx: LaurentCtx, ast: &Expr) -> Result<ExtField<LaurentCtx>, CliError> {
    let fp = ctx.coef_field();
    let scalars = RatFuncField::new(fp);
    let x = RatFunc::x(fp);
    let poly = eval::eval_poly(ast, &scalars, Some(&x))?;
    let n = match poly.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(CliError::Math("modulus must have degree at least 1".into())),
    };
    if !scalars.is_one(&poly.coeff(n)) {
        return Err(Error::NonMonicModulus.into());
    }
    let low: Vec<_> = (0..n).map(|i| ctx.expand(&poly.coeff(i))).collect();
    Ok(ExtField::new(ctx, low)?)
}

fn run_ext_action<B: CompleteBase>(
    ext: &ExtField<B>,
    action: &ExtAction,
    series_x: Option<&ExtElem<B>>,
    json: bool,
) -> Result<String, CliError> {
    match action {
        ExtAction::Info => {
            let data = ext.local_field_data()?;
            let uniformizer = match ext.certificate() {
                Certificate::Eisenstein => "a".to_string(),
                _ => ext.base().uniformizer_name(),
            };
            let out = ExtInfoOut {
                certificate: ext.certificate().name().to_string(),
                n: data.n,
                e: data.e,
                f: data.f,
                residue_order: data.residue_field_order,
                uniformizer,
            };
            if json {
                Ok(json_line(&out))
            } else {
                Ok(format!(
                    "certificate: {}\nn: {}\ne: {}\nf: {}\nresidue_order: {}\nuniformizer: {}",
                    out.certificate, out.n, out.e, out.f, out.residue_order, out.uniformizer
                ))
            }
        }
        ExtAction::Val { expr: text } => {
            let ast = expr::parse(text)?;
            let x = eval::eval_ext(&ast, ext, series_x)?;
            let w = ext.add_val_ext(&x)?;
            let normalized = ext.normalized_val(&x)?;
            if json {
                Ok(json_line(&ExtValOut {
                    w: w.to_string(),
                    normalized: normalized.to_string(),
                }))
            } else {
                Ok(format!("w = {w}  (normalized: {normalized})"))
            }
        }
        ExtAction::Norm { expr: text } => {
            let ast = expr::parse(text)?;
            let x = eval::eval_ext(&ast, ext, series_x)?;
            let n = ext.norm(&x)?;
            let result = ext.base().format(&n);
            if json {
                Ok(json_line(&StrOut { result }))
            } else {
                Ok(result)
            }
        }
        ExtAction::Integral { expr: text } => {
            let ast = expr::parse(text)?;
            let x = eval::eval_ext(&ast, ext, series_x)?;
            let result = ext.is_integral(&x)?;
            if json {
                Ok(json_line(&BoolOut { result }))
            } else {
                Ok(result.to_string())
            }
        }
        ExtAction::Residue { expr: text } => {
            let ast = expr::parse(text)?;
            let x = eval::eval_ext(&ast, ext, series_x)?;
            let result = ext.residue_map(&x)?.format();
            if json {
                Ok(json_line(&StrOut { result }))
            } else {
                Ok(result)
            }
        }
    }
}

fn run_ext(
    p: &Option<u64>,
    field: &Option<String>,
    prec: i64,
    poly: &str,
    action: &ExtAction,
    json: bool,
) -> Result<String, CliError> {
    exactly_one_descriptor(p, field)?;
    check_prec(prec)?;
    let ast = expr::parse(poly)?;
    if let Some(p) = p {
        let ctx = PAdicCtx::new(*p, prec as u32).map_err(|e| CliError::Flag(e.to_string()))?;
        let ext = build_ext_padic(ctx, &ast)?;
        run_ext_action(&ext, action, None, json)
    } else {
        let q = match parse_field_spec(field.as_deref().unwrap())? {
            FieldSpec::Prime(q) => q,
            FieldSpec::Rational => {
                return Err(CliError::Flag(
                    "extensions require a finite coefficient field F<p>".into(),
                ))
            }
        };
        let ctx = LaurentCtx::new(q, prec).map_err(|e| CliError::Flag(e.to_string()))?;
        let ext = build_ext_laurent(ctx, &ast)?;
        let x_elem = ext.embed_base(CompleteBase::uniformizer(ext.base()));
        run_ext_action(&ext, action, Some(&x_elem), json)
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.cmd {
        Cmd::Val { p, field, expr } => run_val(p, field, expr, cli.json),
        Cmd::Padic { p, prec, expr } => run_padic(*p, *prec, expr, cli.json),
        Cmd::Laurent { field, prec, expr } => run_laurent(field, *prec, expr, cli.json),
        Cmd::Ext { p, field, prec, poly, action } => {
            run_ext(p, field, *prec, poly, action, cli.json)
        }
        Cmd::Factor { p, field, expr } => run_factor(p, field, expr, cli.json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            // tolerate a closed pipe downstream
            use std::io::Write;
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
