//! Batch front end: compute family members, emit tables, run verification
//! suites. Exit codes: 0 success, 1 failed verification checks, 2 invalid
//! parameters or argument combinations, 3 construction failure.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mvop_core::diffop::{
    darboux_transform, hypergeometric_eigenvalue, hypergeometric_operator, shift_operator,
    shift_symmetric_operator, AlgebraBasis,
};
use mvop_core::family::{
    build_hypergeometric, build_recurrence, build_rodrigues, christoffel_darboux_monic,
    norm_matrix, recurrence_coefficients,
};
use mvop_core::verify::{run_suite, SuiteConfig, VerificationReport, SUITE_NAMES};
use mvop_core::{CMat2, Error, MatrixPolynomial, Parameters, PearsonData, WeightMatrix};

#[derive(Parser)]
#[command(
    name = "mvop",
    about = "Matrix-valued orthogonal polynomials for the 2x2 Jacobi-type weight family",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute one monic family member and optionally its norm and
    /// recurrence row
    Compute(ComputeArgs),
    /// Run a named verification suite and emit a JSON report
    Verify(VerifyArgs),
    /// Emit CSV tables (recurrence, norms, eigenvalues, kernel)
    Table(TableArgs),
    /// Emit the level-k weight matrix (exponents + polynomial part) and
    /// optionally the Pearson pair as JSON
    Weight(WeightArgs),
    /// Emit a named differential operator's coefficient list as JSON
    Operator(OperatorArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// Exponent of t in the scalar weight factor
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    /// Exponent of (1-t) in the scalar weight factor
    #[arg(long, allow_hyphen_values = true)]
    beta: f64,
    /// Off-diagonal coupling parameter; |alpha-beta| < |v| < alpha+beta+2
    #[arg(long, allow_hyphen_values = true)]
    v: f64,
}

#[derive(Copy, Clone, ValueEnum)]
enum Method {
    /// Rodrigues-Jacobi assembly with exact division
    Rodrigues,
    /// Terminating matrix hypergeometric series
    Hyper,
    /// Three-term recurrence with closed-form coefficients
    Recurrence,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Shift level of the family (0 = base weight)
    #[arg(long, default_value_t = 0)]
    k: u32,
    /// Degree of the requested family member
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Method::Recurrence)]
    method: Method,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also emit the closed-form squared norm
    #[arg(long)]
    with_norm: bool,
    /// Also emit the recurrence row (A_n, B_n)
    #[arg(long)]
    with_recurrence: bool,
    /// Write to this path instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Suite name or "all"
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 10)]
    nmax: u32,
    #[arg(long, default_value_t = 2)]
    kmax: u32,
    /// Overrides the default tolerances (quadrature identities and
    /// cross-method agreement); MVOP_DEFAULT_TOL is consulted when unset
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum TableKind {
    Recurrence,
    Norms,
    Eigenvalues,
    Kernel,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum)]
    what: TableKind,
    /// Shift level for eigenvalue/recurrence/norm tables
    #[arg(long, default_value_t = 0)]
    k: u32,
    /// Largest degree row
    #[arg(long, default_value_t = 10)]
    nmax: u32,
    /// Kernel truncation degree
    #[arg(long, default_value_t = 5)]
    n: u32,
    /// Comma-separated x evaluation points (kernel only)
    #[arg(long, value_delimiter = ',')]
    x: Vec<f64>,
    /// Comma-separated y evaluation points (kernel only)
    #[arg(long, value_delimiter = ',')]
    y: Vec<f64>,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct WeightArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = 0)]
    k: u32,
    /// Include the Pearson pair (Phi, Psi) linking level k to level k+1
    #[arg(long)]
    pearson: bool,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum OperatorKind {
    /// The level-k hypergeometric operator
    Hypergeometric,
    /// The first-order raising operator between levels k+1 and k
    Raising,
    /// The shift-built symmetric second-order operator at level k
    ShiftSymmetric,
    /// Its Darboux transform (symmetric at level k+1)
    Darboux,
    /// Symmetric algebra generators of the base weight
    D1,
    D2,
    D3,
    D4,
}

#[derive(Args)]
struct OperatorArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum)]
    which: OperatorKind,
    #[arg(long, default_value_t = 0)]
    k: u32,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_) | Error::DegenerateInput(_) => 2,
        _ => 3,
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code_for(&e))
}

fn emit(text: &str, out: &Option<std::path::PathBuf>) -> std::io::Result<()> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    match out {
        Some(path) => std::fs::write(path, format!("{body}\n")),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn csv_matrix_row(row: &mut String, m: &CMat2) {
    for i in 0..2 {
        for j in 0..2 {
            let z = m.m[i][j];
            write!(row, ",{},{}", z.re, z.im).unwrap();
        }
    }
}

fn compute_cmd(args: &ComputeArgs) -> Result<String, Error> {
    let params =
        Parameters::new_at_level(args.params.alpha, args.params.beta, args.params.v, args.k)?;
    let degree = args.n;
    let poly: MatrixPolynomial = match args.method {
        Method::Rodrigues => build_rodrigues(&params.shifted(args.k)?, degree)?,
        Method::Hyper => build_hypergeometric(&params, args.k, degree + args.k)?,
        Method::Recurrence => {
            let fam = build_recurrence(&params, args.k, degree)?;
            fam.polynomial(degree as usize).clone()
        }
    };
    let shifted = params.shifted(args.k)?;
    let norm = if args.with_norm {
        Some(norm_matrix(&shifted, degree)?)
    } else {
        None
    };
    let recurrence = if args.with_recurrence {
        Some(recurrence_coefficients(&shifted, degree))
    } else {
        None
    };
    match args.format {
        Format::Json => {
            let mut doc = serde_json::json!({
                "alpha": params.alpha,
                "beta": params.beta,
                "v": params.v,
                "k": args.k,
                "n": degree,
                "coefficients": poly,
            });
            if let Some(nm) = norm {
                doc["norm_squared"] = serde_json::to_value(nm).unwrap();
            }
            if let Some((a, b)) = recurrence {
                doc["recurrence"] = serde_json::json!({ "a": a, "b": b });
            }
            Ok(serde_json::to_string_pretty(&doc).unwrap())
        }
        Format::Csv => {
            let mut text =
                String::from("power,m00_re,m00_im,m01_re,m01_im,m10_re,m10_im,m11_re,m11_im\n");
            for (i, c) in poly.coeffs().iter().enumerate() {
                let mut row = i.to_string();
                csv_matrix_row(&mut row, c);
                text.push_str(&row);
                text.push('\n');
            }
            Ok(text)
        }
    }
}

fn verify_cmd(args: &VerifyArgs) -> Result<(String, bool), Error> {
    let params = Parameters::new(args.params.alpha, args.params.beta, args.params.v)?;
    let default_tol = std::env::var("MVOP_DEFAULT_TOL")
        .ok()
        .and_then(|s| s.parse::<f64>().ok());
    let mut cfg = SuiteConfig {
        nmax: args.nmax,
        kmax: args.kmax,
        ..Default::default()
    };
    if let Some(t) = args.tol.or(default_tol) {
        cfg.tol_quad = t;
        cfg.tol_cross = t.max(cfg.tol_cross);
    }
    let reports: Vec<VerificationReport> = if args.suite == "all" {
        SUITE_NAMES
            .iter()
            .map(|name| run_suite(name, &params, &cfg))
            .collect::<Result<_, _>>()?
    } else {
        vec![run_suite(&args.suite, &params, &cfg)?]
    };
    let pass = reports.iter().all(|r| r.pass);
    let text = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0]).unwrap()
    } else {
        serde_json::to_string_pretty(&reports).unwrap()
    };
    Ok((text, pass))
}

fn table_cmd(args: &TableArgs) -> Result<String, Error> {
    let params =
        Parameters::new_at_level(args.params.alpha, args.params.beta, args.params.v, args.k)?;
    let shifted = params.shifted(args.k)?;
    let mut text = String::new();
    match args.what {
        TableKind::Eigenvalues => {
            // lambda/mu of the level-k operator on the degree-n member
            text.push_str("n,lambda,mu\n");
            let unsign_zero = |x: f64| if x == 0.0 { 0.0 } else { x };
            for n in 0..=args.nmax {
                let e = hypergeometric_eigenvalue(&params, args.k, n + args.k);
                writeln!(
                    text,
                    "{n},{},{}",
                    unsign_zero(e.m[0][0].re),
                    unsign_zero(e.m[1][1].re)
                )
                .unwrap();
            }
        }
        TableKind::Norms => {
            text.push_str("n,norm11,norm22\n");
            for n in 0..=args.nmax {
                let m = norm_matrix(&shifted, n)?;
                writeln!(text, "{n},{},{}", m.m[0][0].re, m.m[1][1].re).unwrap();
            }
        }
        TableKind::Recurrence => {
            text.push_str(
                "n,a00_re,a00_im,a01_re,a01_im,a10_re,a10_im,a11_re,a11_im,\
                 b00_re,b00_im,b01_re,b01_im,b10_re,b10_im,b11_re,b11_im\n",
            );
            for n in 0..=args.nmax {
                let (a, b) = recurrence_coefficients(&shifted, n);
                let mut row = n.to_string();
                csv_matrix_row(&mut row, &a);
                csv_matrix_row(&mut row, &b);
                text.push_str(&row);
                text.push('\n');
            }
        }
        TableKind::Kernel => {
            if args.x.is_empty() || args.y.is_empty() {
                return Err(Error::InvalidParameter(
                    "kernel tables need --x and --y point lists".into(),
                ));
            }
            text.push_str("x,y,k00_re,k00_im,k01_re,k01_im,k10_re,k10_im,k11_re,k11_im\n");
            for &x in &args.x {
                for &y in &args.y {
                    let (kernel, _) = christoffel_darboux_monic(&params, args.n, x, y)?;
                    let mut row = format!("{x},{y}");
                    csv_matrix_row(&mut row, &kernel);
                    text.push_str(&row);
                    text.push('\n');
                }
            }
        }
    }
    Ok(text)
}

fn weight_cmd(args: &WeightArgs) -> Result<String, Error> {
    let params =
        Parameters::new_at_level(args.params.alpha, args.params.beta, args.params.v, args.k)?;
    let w = WeightMatrix::new(&params, args.k)?;
    let mut doc = serde_json::to_value(&w).unwrap();
    if args.pearson {
        let data = PearsonData::new(&params, args.k)?;
        doc["pearson"] = serde_json::to_value(&data).unwrap();
    }
    Ok(serde_json::to_string_pretty(&doc).unwrap())
}

fn operator_cmd(args: &OperatorArgs) -> Result<String, Error> {
    let params =
        Parameters::new_at_level(args.params.alpha, args.params.beta, args.params.v, args.k)?;
    let op = match args.which {
        OperatorKind::Hypergeometric => hypergeometric_operator(&params, args.k)?,
        OperatorKind::Raising => shift_operator(&params, args.k)?,
        OperatorKind::ShiftSymmetric => shift_symmetric_operator(&params, args.k)?,
        OperatorKind::Darboux => darboux_transform(&params, args.k)?,
        kind => {
            let basis = AlgebraBasis::new(&params)?;
            let elem = match kind {
                OperatorKind::D1 => basis.d1,
                OperatorKind::D2 => basis.d2,
                OperatorKind::D3 => basis.d3,
                _ => basis.d4,
            };
            elem.operator(&params)?
        }
    };
    let doc = serde_json::json!({
        "alpha": params.alpha,
        "beta": params.beta,
        "v": params.v,
        "k": args.k,
        "order": op.order(),
        "coefficients": op.coefficients(),
    });
    Ok(serde_json::to_string_pretty(&doc).unwrap())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.cmd {
        Cmd::Compute(args) => match compute_cmd(args) {
            Ok(text) => {
                if emit(&text, &args.out).is_err() {
                    return ExitCode::from(3);
                }
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Cmd::Verify(args) => match verify_cmd(args) {
            Ok((text, pass)) => {
                if emit(&text, &args.out).is_err() {
                    return ExitCode::from(3);
                }
                if pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => fail(e),
        },
        Cmd::Table(args) => match table_cmd(args) {
            Ok(text) => {
                if emit(&text, &args.out).is_err() {
                    return ExitCode::from(3);
                }
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Cmd::Weight(args) => match weight_cmd(args) {
            Ok(text) => {
                if emit(&text, &args.out).is_err() {
                    return ExitCode::from(3);
                }
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Cmd::Operator(args) => match operator_cmd(args) {
            Ok(text) => {
                if emit(&text, &args.out).is_err() {
                    return ExitCode::from(3);
                }
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
    }
}
