//! defcalc: exact-arithmetic calculator and verification harness for
//! rational, trigonometric and rational-trigonometric deformations.
//!
//! Every invocation prints one JSON document (schema `defcalc/1`) to
//! stdout; diagnostics go to stderr. Exit code 0 means no check failed,
//! 1 means some check failed, 2 means a usage error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use defcalc::suite::{run_suite, SuiteConfig};
use defcalc::{exit_code, report_envelope, SCHEMA};
use defcalc_core::calculus::{apply_difference_operator, check_leibniz, ShiftMap, UniPoly};
use defcalc_core::duality::{check_duality, check_rt_linearity, DualityParams, PolynomialModel};
use defcalc_core::error::Error;
use defcalc_core::glrep::{
    cartan_automorphism_check, check_casimir_central, check_omega_casimir_formula,
    check_omega_decomposition, check_omega_flip, RepSpace, SiteActions, TensorContext,
};
use defcalc_core::kzdd::{
    build_dd, build_kz, check_identity, CheckMode, Construction, IdentityCheck, KzContext,
    OperatorKind,
};
use defcalc_core::numbers::{deformed_number, DeformationParams, DeformedKind};
use defcalc_core::plane::{normal_order, solve_functional_equation, PlaneWord};
use defcalc_core::rational::Rational;
use defcalc_core::ratfunc::RatFunc;
use defcalc_core::report::CheckReport;
use defcalc_core::series::{exp_series, hypergeometric_series, SeriesSpec};

#[derive(Parser)]
#[command(
    name = "defcalc",
    version,
    about = "Exact verification calculator for rational/trigonometric deformations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a deformed number (z)_kind
    Num(NumArgs),
    /// Deformed exponential and hypergeometric series coefficients
    Series {
        #[command(subcommand)]
        which: SeriesCommand,
    },
    /// Apply the deformed difference operator to a polynomial
    Diffop(DiffopArgs),
    /// Quantum-plane normal ordering and the functional equation
    Plane {
        #[command(subcommand)]
        which: PlaneCommand,
    },
    /// gl_M structure checks
    Gl {
        #[command(subcommand)]
        which: GlCommand,
    },
    /// KZ and dynamical operators
    Kz {
        #[command(subcommand)]
        which: KzCommand,
    },
    /// (gl_M, gl_N) duality on the polynomial model
    Duality(DualityArgs),
    /// Run the full verification suite
    Suite(SuiteArgs),
}

#[derive(Args)]
struct NumArgs {
    /// classical | q | eta | qeta
    #[arg(long)]
    kind: String,
    #[arg(long, allow_hyphen_values = true)]
    z: i64,
    /// rational like 2/3, or the symbol name q
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// rational like -1/2, or the symbol name eta
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
}

#[derive(Subcommand)]
enum SeriesCommand {
    /// Deformed exponential: coefficient of x^n is 1/(n)_kind!
    Exp(SeriesArgs),
    /// Deformed hypergeometric series
    Hyp(SeriesArgs),
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long)]
    kind: String,
    /// truncation order K (at most 16)
    #[arg(long)]
    order: u32,
    /// upper parameters, comma-separated integers
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// lower parameters, comma-separated integers
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
}

#[derive(Args)]
struct DiffopArgs {
    /// comma-separated coefficients, constant term first ("0,0,1" is x^2)
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// the q of x' = q x + eta: rational or symbol
    #[arg(long, allow_hyphen_values = true)]
    scale: String,
    /// the eta of x' = q x + eta: rational or symbol
    #[arg(long, allow_hyphen_values = true)]
    shift: String,
}

#[derive(Subcommand)]
enum PlaneCommand {
    /// Rewrite a word in x, y to the y^a x^b basis
    NormalOrder {
        #[arg(long)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
    },
    /// Solve f1(x+y) = f2(y) f3(x) degree by degree
    Funceq {
        #[arg(long)]
        degree: u32,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
    },
}

#[derive(Subcommand)]
enum GlCommand {
    /// Relations, centrality, omega decomposition, Cartan automorphism
    Check(GlArgs),
}

#[derive(Args)]
struct GlArgs {
    #[arg(long = "M")]
    m: usize,
    #[arg(long = "N")]
    n: usize,
    /// vector | sym:k
    #[arg(long, default_value = "vector")]
    module: String,
}

#[derive(Subcommand)]
enum KzCommand {
    /// Build one operator and dump it as derivative monomial -> matrix
    Build(KzBuildArgs),
    /// Verify an operator identity
    Check(KzCheckArgs),
}

#[derive(Args)]
struct KzBuildArgs {
    /// r | t | rt
    #[arg(long)]
    kind: String,
    /// KZ site index (1-based); mutually exclusive with --index
    #[arg(long, conflicts_with = "index")]
    site: Option<usize>,
    /// DD dynamical index (1-based)
    #[arg(long)]
    index: Option<usize>,
    #[arg(long = "M")]
    m: usize,
    #[arg(long = "N")]
    n: usize,
    #[arg(long, default_value = "vector")]
    module: String,
    /// substitution | direct (how the rt operator is formed)
    #[arg(long, default_value = "substitution")]
    construction: String,
    /// evaluate coefficients, e.g. "z=0,1;lambda=0,0"
    #[arg(long, allow_hyphen_values = true)]
    eval: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    hbar: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
}

#[derive(Args)]
struct KzCheckArgs {
    /// eq30 | eq35 | flatness | compat
    #[arg(long)]
    which: String,
    /// r | t | rt (used by flatness and compat)
    #[arg(long, default_value = "r")]
    kind: String,
    #[arg(long = "M")]
    m: usize,
    #[arg(long = "N")]
    n: usize,
    #[arg(long, default_value = "vector")]
    module: String,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    trials: u32,
    /// force exact symbolic expansion (automatic for M, N <= 2)
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct DualityArgs {
    /// r | t | rt
    #[arg(long)]
    kind: String,
    #[arg(long = "M")]
    m: usize,
    #[arg(long = "N")]
    n: usize,
    #[arg(long)]
    degree: u32,
    /// judge residual strata symbolically instead of by random evaluation
    #[arg(long)]
    exact: bool,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    trials: u32,
}

#[derive(Args)]
struct SuiteArgs {
    /// run every check (default when --select is absent)
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// comma-separated name substrings to select checks
    #[arg(long)]
    select: Option<String>,
    /// series truncation order (at most 16)
    #[arg(long, default_value_t = 12)]
    order: u32,
    /// duality model degree (at most 4)
    #[arg(long, default_value_t = 3)]
    degree: u32,
    #[arg(long, default_value_t = 5)]
    trials: u32,
}

struct Outcome {
    doc: Value,
    code: i32,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

/// Parameter-degeneracy errors become `degenerate` reports (exit 0);
/// contract violations are usage errors (exit 2).
fn is_degeneracy(e: &Error) -> bool {
    matches!(
        e,
        Error::DenominatorVanishes(_)
            | Error::PoleAtPoint(_)
            | Error::DivisionByZero
            | Error::DegenerateSample { .. }
            | Error::ZeroLowerPochhammer { .. }
    )
}

fn degenerate_doc(command: &str, input: Value, e: &Error) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "input": input,
        "status": "degenerate",
        "error": e.to_string(),
    })
}

fn parse_params(q: &Option<String>, eta: &Option<String>) -> Result<DeformationParams, Error> {
    let q = match q {
        Some(s) => RatFunc::parse_value(s)?,
        None => RatFunc::symbol("q"),
    };
    let eta = match eta {
        Some(s) => RatFunc::parse_value(s)?,
        None => RatFunc::symbol("eta"),
    };
    Ok(DeformationParams::new(q, eta))
}

fn parse_int_list(s: &Option<String>) -> Result<Vec<i64>, Error> {
    let Some(s) = s else {
        return Ok(Vec::new());
    };
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer `{p}`")))
        })
        .collect()
}

fn parse_module(spec: &str, m: usize, n: usize) -> Result<TensorContext, Error> {
    if !(1..=4).contains(&m) || !(1..=4).contains(&n) {
        return Err(Error::Parse("desk-scale bounds: 1 <= M, N <= 4".to_string()));
    }
    let factor = if spec == "vector" {
        RepSpace::vector(m)?
    } else if let Some(k) = spec.strip_prefix("sym:") {
        let k: u32 = k
            .parse()
            .map_err(|_| Error::Parse(format!("bad symmetric power `{spec}`")))?;
        if !(1..=4).contains(&k) {
            return Err(Error::Parse("symmetric power must be in 1..=4".to_string()));
        }
        RepSpace::symmetric_power(m, k)?
    } else {
        return Err(Error::Parse(format!(
            "unknown module `{spec}` (expected vector or sym:k)"
        )));
    };
    TensorContext::new(vec![factor; n])
}

fn scalar_params(
    kappa: &Option<String>,
    hbar: &Option<String>,
    eta: &Option<String>,
) -> Result<(RatFunc, RatFunc, RatFunc), Error> {
    let parse = |v: &Option<String>, default: &str| -> Result<RatFunc, Error> {
        match v {
            Some(s) => RatFunc::parse_value(s),
            None => Ok(RatFunc::symbol(default)),
        }
    };
    Ok((
        parse(kappa, "kappa")?,
        parse(hbar, "hbar")?,
        parse(eta, "eta")?,
    ))
}

fn cmd_num(args: &NumArgs) -> Result<Outcome, Error> {
    let kind: DeformedKind = args.kind.parse()?;
    let params = parse_params(&args.q, &args.eta)?;
    let input = json!({
        "kind": kind.to_string(),
        "z": args.z,
        "q": params.q.to_string(),
        "eta": params.eta.to_string(),
    });
    match deformed_number(args.z, kind, &params) {
        Ok(v) => Ok(Outcome {
            doc: json!({
                "schema": SCHEMA,
                "command": "num",
                "input": input,
                "value": v.to_string(),
            }),
            code: 0,
        }),
        Err(e) if is_degeneracy(&e) => Ok(Outcome {
            doc: degenerate_doc("num", input, &e),
            code: 0,
        }),
        Err(e) => Err(e),
    }
}

fn cmd_series(which: &SeriesCommand) -> Result<Outcome, Error> {
    let (args, is_exp) = match which {
        SeriesCommand::Exp(a) => (a, true),
        SeriesCommand::Hyp(a) => (a, false),
    };
    if args.order > 16 {
        return Err(Error::Parse("series order capped at 16".to_string()));
    }
    let kind: DeformedKind = args.kind.parse()?;
    let params = parse_params(&args.q, &args.eta)?;
    let upper = parse_int_list(&args.a)?;
    let lower = parse_int_list(&args.b)?;
    let input = json!({
        "series": if is_exp { "exp" } else { "hyp" },
        "kind": kind.to_string(),
        "order": args.order,
        "a": upper,
        "b": lower,
        "q": params.q.to_string(),
        "eta": params.eta.to_string(),
    });
    let result = if is_exp {
        exp_series(kind, &params, args.order)
    } else {
        hypergeometric_series(
            &SeriesSpec {
                upper,
                lower,
                kind,
                order: args.order,
            },
            &params,
        )
    };
    match result {
        Ok(coeffs) => Ok(Outcome {
            doc: json!({
                "schema": SCHEMA,
                "command": "series",
                "input": input,
                "coefficients": coeffs.to_strings(),
            }),
            code: 0,
        }),
        Err(e) if is_degeneracy(&e) => Ok(Outcome {
            doc: degenerate_doc("series", input, &e),
            code: 0,
        }),
        Err(e) => Err(e),
    }
}

fn cmd_diffop(args: &DiffopArgs) -> Result<Outcome, Error> {
    let coeffs: Result<Vec<RatFunc>, Error> = args
        .poly
        .split(',')
        .map(|p| RatFunc::parse_value(p.trim()))
        .collect();
    let f = UniPoly::from_coeffs(coeffs?);
    let scale = RatFunc::parse_value(&args.scale)?;
    let shift = RatFunc::parse_value(&args.shift)?;
    let s = ShiftMap::new(scale, shift)?;
    let derived = apply_difference_operator(&f, &s)?;
    let spot = check_leibniz(&f, &f, &s);
    Ok(Outcome {
        doc: json!({
            "schema": SCHEMA,
            "command": "diffop",
            "input": {
                "poly": f.to_coeff_strings(),
                "scale": s.scale().to_string(),
                "shift": s.shift().to_string(),
            },
            "output": derived.to_coeff_strings(),
            "leibniz_spot_check": spot.passed(),
        }),
        code: i32::from(!spot.passed()),
    })
}

fn cmd_plane(which: &PlaneCommand) -> Result<Outcome, Error> {
    match which {
        PlaneCommand::NormalOrder { word, q, eta } => {
            let w = PlaneWord::parse(word)?;
            let params = parse_params(q, eta)?;
            let p = normal_order(&w, &params);
            Ok(Outcome {
                doc: json!({
                    "schema": SCHEMA,
                    "command": "plane-normal-order",
                    "input": {
                        "word": w.to_string(),
                        "q": params.q.to_string(),
                        "eta": params.eta.to_string(),
                    },
                    "normal_form": p.to_json(),
                }),
                code: 0,
            })
        }
        PlaneCommand::Funceq { degree, q, eta } => {
            if !(1..=8).contains(degree) {
                return Err(Error::Parse("funceq degree must be in 1..=8".to_string()));
            }
            let params = parse_params(q, eta)?;
            let input = json!({
                "degree": degree,
                "q": params.q.to_string(),
                "eta": params.eta.to_string(),
            });
            match solve_functional_equation(&params, *degree) {
                Ok(report) => Ok(Outcome {
                    code: i32::from(!report.passed()),
                    doc: json!({
                        "schema": SCHEMA,
                        "command": "plane-funceq",
                        "input": input,
                        "report": report.to_json(),
                    }),
                }),
                Err(e) if is_degeneracy(&e) => Ok(Outcome {
                    doc: degenerate_doc("plane-funceq", input, &e),
                    code: 0,
                }),
                Err(e) => Err(e),
            }
        }
    }
}

fn cmd_gl(args: &GlArgs) -> Result<Outcome, Error> {
    let tensor = parse_module(&args.module, args.m, args.n)?;
    let actions = SiteActions::from_tensor(&tensor);
    let mut checks = vec![
        CheckReport::pass("glrep/relations")
            .with_param("M", args.m as u64)
            .with_param("N", args.n as u64)
            .with_param("module", args.module.clone()),
        check_casimir_central(&actions),
    ];
    if args.n >= 2 {
        checks.push(check_omega_decomposition(&actions));
        checks.push(check_omega_casimir_formula(&actions));
    }
    if args.module == "vector" && args.m >= 2 {
        checks.push(check_omega_flip(args.m)?);
    }
    checks.push(cartan_automorphism_check(&tensor));
    checks.sort_by(|a, b| a.check_name.cmp(&b.check_name));
    let doc = report_envelope(
        "gl-check",
        json!({ "M": args.m, "N": args.n, "module": args.module }),
        &checks,
    );
    Ok(Outcome {
        code: exit_code(&checks),
        doc,
    })
}

fn parse_eval(spec: &str) -> Result<Vec<(String, Vec<Rational>)>, Error> {
    let mut out = Vec::new();
    for group in spec.split(';') {
        let (name, values) = group
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad eval group `{group}`")))?;
        let values: Result<Vec<Rational>, Error> = values
            .split(',')
            .map(|v| Rational::parse(v.trim()))
            .collect();
        out.push((name.trim().to_string(), values?));
    }
    Ok(out)
}

fn cmd_kz_build(args: &KzBuildArgs) -> Result<Outcome, Error> {
    let kind: OperatorKind = args.kind.parse()?;
    let tensor = parse_module(&args.module, args.m, args.n)?;
    let (kappa, hbar, eta) = scalar_params(&args.kappa, &args.hbar, &args.eta)?;
    let ctx = KzContext::new(SiteActions::from_tensor(&tensor), kappa, hbar, eta)?;
    let construction = match args.construction.as_str() {
        "substitution" => Construction::Substitution,
        "direct" => Construction::Direct,
        other => {
            return Err(Error::Parse(format!(
                "unknown construction `{other}` (substitution|direct)"
            )))
        }
    };
    let (op, role, index) = match (args.site, args.index) {
        (Some(site), None) => (build_kz(&ctx, kind, site, construction)?, "kz", site),
        (None, Some(index)) => (build_dd(&ctx, kind, index, construction)?, "dd", index),
        _ => {
            return Err(Error::Parse(
                "exactly one of --site (KZ) or --index (DD) is required".to_string(),
            ))
        }
    };
    let input = json!({
        "operator": role,
        "kind": kind.to_string(),
        "index": index,
        "M": args.m,
        "N": args.n,
        "module": args.module,
        "construction": args.construction,
    });
    let op = match &args.eval {
        None => op,
        Some(spec) => {
            let mut substituted = op;
            for (name, values) in parse_eval(spec)? {
                let names: Vec<String> = match name.as_str() {
                    "z" => ctx.positions().to_vec(),
                    "lambda" => ctx.dynamicals().to_vec(),
                    other => {
                        return Err(Error::Parse(format!(
                            "eval groups are z=... or lambda=..., got `{other}`"
                        )))
                    }
                };
                if values.len() != names.len() {
                    return Err(Error::Parse(format!(
                        "{name} needs {} values, got {}",
                        names.len(),
                        values.len()
                    )));
                }
                for (var, value) in names.iter().zip(&values) {
                    match substituted.try_map_coeffs(|c| c.substitute_rational(var, value)) {
                        Ok(next) => substituted = next,
                        Err(e) if is_degeneracy(&e) => {
                            return Ok(Outcome {
                                doc: degenerate_doc("kz-build", input, &e),
                                code: 0,
                            })
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            substituted
        }
    };
    Ok(Outcome {
        doc: json!({
            "schema": SCHEMA,
            "command": "kz-build",
            "input": input,
            "dim": op.dim(),
            "operator": op.to_json(),
        }),
        code: 0,
    })
}

fn cmd_kz_check(args: &KzCheckArgs) -> Result<Outcome, Error> {
    let tensor = parse_module(&args.module, args.m, args.n)?;
    let ctx = KzContext::symbolic(SiteActions::from_tensor(&tensor))?;
    let kind: OperatorKind = args.kind.parse()?;
    let which = match args.which.as_str() {
        "eq30" => IdentityCheck::Eq30,
        "eq35" => IdentityCheck::Eq35,
        "flatness" => IdentityCheck::Flatness(kind),
        "compat" => IdentityCheck::KzDdCompat(kind),
        other => {
            return Err(Error::Parse(format!(
                "unknown identity `{other}` (eq30|eq35|flatness|compat)"
            )))
        }
    };
    // exact expansion is mandatory at (M, N) <= (2, 2); above that, seeded
    // evaluation is the default unless --exact forces the expansion
    let mode = if (args.m <= 2 && args.n <= 2) || args.exact {
        CheckMode::Exact
    } else {
        CheckMode::Probabilistic {
            seed: args.seed,
            trials: args.trials,
        }
    };
    let checks = vec![check_identity(&ctx, which, mode)];
    let doc = report_envelope(
        "kz-check",
        json!({ "M": args.m, "N": args.n, "module": args.module, "seed": args.seed }),
        &checks,
    );
    Ok(Outcome {
        code: exit_code(&checks),
        doc,
    })
}

fn cmd_duality(args: &DualityArgs) -> Result<Outcome, Error> {
    if !(1..=4).contains(&args.degree) {
        return Err(Error::Parse("model degree must be in 1..=4".to_string()));
    }
    if !(1..=4).contains(&args.m) || !(1..=4).contains(&args.n) {
        return Err(Error::Parse("desk-scale bounds: 1 <= M, N <= 4".to_string()));
    }
    let kind: OperatorKind = args.kind.parse()?;
    let model = PolynomialModel::build(args.n, args.m, args.degree)?;
    let params = DualityParams::symbolic();
    let mode = if args.exact {
        CheckMode::Exact
    } else {
        CheckMode::Probabilistic {
            seed: args.seed,
            trials: args.trials,
        }
    };
    let report = check_duality(kind, &model, &params, mode)?;
    let mut checks = vec![report.to_check_report(kind == OperatorKind::Rational)];
    if kind == OperatorKind::RationalTrigonometric {
        checks.push(check_rt_linearity(&model, &params)?);
    }
    let doc = report_envelope(
        "duality",
        json!({
            "kind": kind.to_string(),
            "M": args.m,
            "N": args.n,
            "degree": args.degree,
            "mode": if args.exact { "exact" } else { "probabilistic" },
            "seed": args.seed,
            "report": report.to_json(),
        }),
        &checks,
    );
    Ok(Outcome {
        code: exit_code(&checks),
        doc,
    })
}

fn cmd_suite(args: &SuiteArgs) -> Result<Outcome, Error> {
    let select = match &args.select {
        None => Vec::new(),
        Some(s) => s
            .split(',')
            .map(|p| p.trim().to_string())
            .filter(|p| !p.is_empty())
            .collect(),
    };
    let config = SuiteConfig {
        seed: args.seed,
        series_order: args.order,
        model_degree: args.degree,
        trials: args.trials,
        select,
    };
    config.validate().map_err(Error::Parse)?;
    let checks = run_suite(&config);
    let doc = report_envelope(
        "suite",
        json!({
            "suite": {
                "seed": config.seed,
                "series_order": config.series_order,
                "model_degree": config.model_degree,
                "trials": config.trials,
                "selected": if config.select.is_empty() {
                    json!("all")
                } else {
                    json!(config.select)
                },
            }
        }),
        &checks,
    );
    Ok(Outcome {
        code: exit_code(&checks),
        doc,
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Num(args) => cmd_num(args),
        Command::Series { which } => cmd_series(which),
        Command::Diffop(args) => cmd_diffop(args),
        Command::Plane { which } => cmd_plane(which),
        Command::Gl {
            which: GlCommand::Check(args),
        } => cmd_gl(args),
        Command::Kz { which } => match which {
            KzCommand::Build(args) => cmd_kz_build(args),
            KzCommand::Check(args) => cmd_kz_check(args),
        },
        Command::Duality(args) => cmd_duality(args),
        Command::Suite(args) => cmd_suite(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(outcome) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&outcome.doc).expect("report serializes")
            );
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => usage_error(&e.to_string()),
    }
}
