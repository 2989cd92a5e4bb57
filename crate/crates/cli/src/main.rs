//! Command-line surface of the exact supersymmetry workbench: build the
//! supported algebras, classify square-zero supercharges, scan the named
//! families, compute twisted cohomology, verify the superspace realization,
//! run the twistor-space computations, and run the full check suite.
//!
//! Every command emits a JSON envelope (tool version, echoed inputs,
//! command-specific result, list of verification checks). All arithmetic is
//! exact, every collection is ordered, and no report contains clocks or
//! machine state, so identical inputs produce byte-identical output at any
//! thread count. Exit codes: 0 success, 2 usage error, 3 mathematical
//! precondition violation, 4 internal check failure.

mod selftest;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use twistlab_core::superlie::{
    build_susy_10d, build_susy_2d, build_susy_4d, Block, RSymmetry, SuperLieAlgebra,
};
use twistlab_core::twist::{
    bracket_square, catalogued_verdict, classify, family_warnings, format_combination,
    hol_kernel_comparison, named_family, q_cohomology, Family, Supercharge, TwistReport,
};
use twistlab_core::twistor;
use twistlab_core::{par, Error, Scalar};

const SUPERCHARGE_GRAMMAR: &str = "SUPERCHARGE GRAMMAR:\n  \
    expression := [sign] term (' + ' | ' - ') term ...   (spaces around + and -)\n  \
    term       := LABEL | COEF*LABEL | (COEF)*LABEL      (parentheses when COEF has + or -)\n  \
    COEF       := Gaussian rational: 2, -3/2, i, 3/2*i, (1/2+3/4*i)\n  \
    LABEL      := supercharge basis label of the W = C^4 algebra: α1⊗e1 … α2∨⊗f4*\n  \
    example    := \"α1⊗e1 + 1/2*α2⊗e2 - i*α1∨⊗f1*\"";

#[derive(Parser)]
#[command(
    name = "twistlab",
    version,
    about = "Exact-arithmetic workbench for twists of supersymmetry algebras",
    after_help = SUPERCHARGE_GRAMMAR
)]
struct Cli {
    /// Output format for the report
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write the report to this path
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Build a supersymmetry algebra and verify it exhaustively
    Algebra(AlgebraArgs),
    /// Classify one square-zero supercharge of the 4d N=4 algebra
    Classify(SuperchargeArgs),
    /// Classify a named family over a grid of rational parameters
    Scan(ScanArgs),
    /// Cohomology of the algebra with respect to [Q, −]
    Cohomology(SuperchargeArgs),
    /// Verify the vector-field realization on C^{2|3}
    Superspace(SuperspaceArgs),
    /// Line bundles on P¹, field content, and the Penrose fibration
    Twistor(TwistorArgs),
    /// Run every suite-level check; exit 0 iff all pass
    Selftest,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Spacetime dimension: 2, 4, or 10
    #[arg(long)]
    dim: u32,
    /// W dimension for --dim 4 (1..=4, default 4)
    #[arg(long)]
    n: Option<usize>,
    /// Left supercharge count for --dim 2
    #[arg(long)]
    n1: Option<usize>,
    /// Right supercharge count for --dim 2
    #[arg(long)]
    n2: Option<usize>,
    /// R-symmetry for --dim 4
    #[arg(long, value_enum)]
    rsym: Option<RSymArg>,
    /// Spinor model for --dim 10
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RSymArg {
    Gl,
    Sl,
    None,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Split,
    Octonionic,
}

#[derive(Args)]
struct SuperchargeArgs {
    /// Named family: hol, kw, a, b, ht, ht_prime
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// μ for --family kw
    #[arg(long)]
    mu: Option<String>,
    /// ν for --family kw
    #[arg(long)]
    nu: Option<String>,
    /// λ for --family ht / ht_prime
    #[arg(long)]
    lambda: Option<String>,
    /// Explicit supercharge expression (see the grammar in --help)
    #[arg(long)]
    coeffs: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Hol,
    Kw,
    A,
    B,
    Ht,
    #[value(name = "ht_prime")]
    HtPrime,
}

#[derive(Args)]
struct ScanArgs {
    /// Family to scan: kw, ht, or ht_prime
    #[arg(long, value_enum)]
    family: ScanFamilyArg,
    /// Comma-separated CP¹ points "μ:ν" for --family kw
    #[arg(long)]
    points: Option<String>,
    /// Comma-separated λ values for ht / ht_prime
    #[arg(long)]
    lambdas: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanFamilyArg {
    Kw,
    Ht,
    #[value(name = "ht_prime")]
    HtPrime,
}

#[derive(Args)]
struct SuperspaceArgs {
    /// Also realize this named family as a super vector field
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long)]
    mu: Option<String>,
    #[arg(long)]
    nu: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
}

#[derive(Args)]
struct TwistorArgs {
    /// Field-content table of the three line-bundle groups
    #[arg(long)]
    content: bool,
    /// Koszul exactness sweep up to this graded degree (≥ 2)
    #[arg(long)]
    koszul: Option<usize>,
    /// Second-page differential at this Laurent truncation (≥ 4)
    #[arg(long)]
    laplacian: Option<usize>,
    /// Signature of the twistor norm
    #[arg(long)]
    signature: bool,
    /// Berezinian degree of CP^{n|m}, written "n,m"
    #[arg(long)]
    berezinian: Option<String>,
    /// Weighted tangent-complex table
    #[arg(long)]
    table: bool,
    /// Dirac symbol against Clifford multiplication
    #[arg(long)]
    dirac: bool,
}

/// One verification row of a report envelope.
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, details: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            pass,
            details: details.into(),
        }
    }
}

enum Failure {
    /// Invalid parameters: message to stderr, exit 2.
    Usage(String),
    /// Mathematical precondition violated: report + message, exit 3.
    Precondition { message: String, envelope: Value },
}

struct Rendered {
    envelope: Value,
    table: String,
    all_pass: bool,
}

fn envelope(command: &str, inputs: Value, result: Value, checks: &[Check]) -> Value {
    json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "inputs": inputs,
        "result": result,
        "checks": checks
            .iter()
            .map(|c| json!({"name": c.name, "pass": c.pass, "details": c.details}))
            .collect::<Vec<_>>(),
    })
}

fn main() {
    par::configure_threads_from_env();
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let outcome = match &cli.command {
        Command::Algebra(a) => cmd_algebra(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Cohomology(a) => cmd_cohomology(a),
        Command::Superspace(a) => cmd_superspace(a),
        Command::Twistor(a) => cmd_twistor(a),
        Command::Selftest => cmd_selftest(),
    };
    match outcome {
        Ok(r) => {
            let text = match cli.format {
                Format::Json => pretty(&r.envelope),
                Format::Table => r.table,
            };
            if emit(&cli.out, &text).is_err() {
                return 2;
            }
            if r.all_pass {
                0
            } else {
                4
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `twistlab --help` for usage");
            2
        }
        Err(Failure::Precondition { message, envelope }) => {
            let _ = emit(&cli.out, &pretty(&envelope));
            eprintln!("error: {message}");
            3
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

fn emit(out: &Option<std::path::PathBuf>, text: &str) -> Result<(), ()> {
    print!("{text}");
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return Err(());
        }
    }
    Ok(())
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_scalar(s: &str, what: &str) -> Result<Scalar, Failure> {
    s.parse()
        .map_err(|e: Error| usage(format!("invalid {what} `{s}`: {e}")))
}

fn the_algebra() -> SuperLieAlgebra {
    build_susy_4d(4, RSymmetry::SlW).expect("the W = C^4 algebra builds")
}

// ---------------------------------------------------------------------------
// algebra
// ---------------------------------------------------------------------------

fn cmd_algebra(a: &AlgebraArgs) -> Result<Rendered, Failure> {
    let reject = |cond: bool, msg: &str| -> Result<(), Failure> {
        if cond {
            Err(usage(msg.to_string()))
        } else {
            Ok(())
        }
    };
    let (alg, inputs) = match a.dim {
        4 => {
            reject(a.n1.is_some() || a.n2.is_some(), "--n1/--n2 apply to --dim 2 only")?;
            reject(a.model.is_some(), "--model applies to --dim 10 only")?;
            let n = a.n.unwrap_or(4);
            let (rsym, rname) = match a.rsym.unwrap_or(RSymArg::Sl) {
                RSymArg::Gl => (RSymmetry::GlW, "gl"),
                RSymArg::Sl => (RSymmetry::SlW, "sl"),
                RSymArg::None => (RSymmetry::Trivial, "none"),
            };
            let alg = build_susy_4d(n, rsym).map_err(|e| usage(e.to_string()))?;
            (alg, json!({"dim": 4, "n": n, "rsym": rname}))
        }
        2 => {
            reject(a.n.is_some(), "--n applies to --dim 4 only")?;
            reject(a.rsym.is_some(), "--rsym applies to --dim 4 only")?;
            reject(a.model.is_some(), "--model applies to --dim 10 only")?;
            let n1 = a.n1.ok_or_else(|| usage("--dim 2 needs --n1 and --n2"))?;
            let n2 = a.n2.ok_or_else(|| usage("--dim 2 needs --n1 and --n2"))?;
            let alg = build_susy_2d(n1, n2).map_err(|e| usage(e.to_string()))?;
            (alg, json!({"dim": 2, "n1": n1, "n2": n2}))
        }
        10 => {
            reject(a.n.is_some(), "--n applies to --dim 4 only")?;
            reject(a.n1.is_some() || a.n2.is_some(), "--n1/--n2 apply to --dim 2 only")?;
            reject(a.rsym.is_some(), "--rsym applies to --dim 4 only")?;
            let (model, mname) = match a.model.unwrap_or(ModelArg::Split) {
                ModelArg::Split => (
                    twistlab_core::clifford::build_gamma(10).map_err(|e| usage(e.to_string()))?,
                    "split",
                ),
                ModelArg::Octonionic => {
                    (twistlab_core::clifford::build_octonionic_cl10(), "octonionic")
                }
            };
            let alg = build_susy_10d(&model).map_err(|e| usage(e.to_string()))?;
            (alg, json!({"dim": 10, "model": mname}))
        }
        other => return Err(usage(format!("unsupported dimension {other}; use 2, 4, or 10"))),
    };

    let structure = alg.validate();
    let jacobi = alg.jacobi_check();
    let gamma_ok = alg.gamma_nondegenerate();
    let labels = |b: Block| -> Vec<String> {
        alg.block_indices(b)
            .iter()
            .map(|&i| alg.basis[i].name.clone())
            .collect()
    };
    let blocks = json!({
        "rotation": labels(Block::Rotation),
        "r_symmetry": labels(Block::RSymmetry),
        "translation": labels(Block::Translation),
        "supercharge": labels(Block::Supercharge),
    });
    let result = json!({
        "even_dim": alg.even_dim(),
        "odd_dim": alg.odd_dim(),
        "blocks": blocks,
        "jacobi": {
            "triples_checked": jacobi.triples_checked,
            "failures": jacobi.failures.len(),
            "pass": jacobi.pass(),
        },
        "gamma_nondegenerate": gamma_ok,
    });
    let checks = vec![
        Check::new(
            "structure",
            structure.is_ok(),
            match &structure {
                Ok(()) => "brackets close, parities and antisymmetry verified".to_string(),
                Err(e) => e.to_string(),
            },
        ),
        Check::new(
            "jacobi",
            jacobi.pass(),
            format!(
                "{} triples checked, {} failures",
                jacobi.triples_checked,
                jacobi.failures.len()
            ),
        ),
        Check::new(
            "gamma_nondegenerate",
            gamma_ok,
            "odd-odd bracket pairing has full rank",
        ),
    ];
    let all_pass = checks.iter().all(|c| c.pass);
    let mut table = format!(
        "algebra {}\n  even {} / odd {}\n",
        inputs, // compact echo
        alg.even_dim(),
        alg.odd_dim()
    );
    for c in &checks {
        table.push_str(&format!(
            "  {} {}: {}\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.details
        ));
    }
    Ok(Rendered {
        envelope: envelope("algebra", inputs, result, &checks),
        table,
        all_pass,
    })
}

// ---------------------------------------------------------------------------
// supercharge selection shared by classify / cohomology / superspace
// ---------------------------------------------------------------------------

struct Selected {
    family: Option<Family>,
    q: Supercharge,
    inputs: Value,
    display: String,
}

fn select_supercharge(alg: &SuperLieAlgebra, a: &SuperchargeArgs) -> Result<Selected, Failure> {
    match (&a.family, &a.coeffs) {
        (Some(_), Some(_)) => Err(usage("--family and --coeffs are mutually exclusive")),
        (None, None) => Err(usage("pick a supercharge with --family or --coeffs")),
        (None, Some(expr)) => {
            let q = Supercharge::parse(alg, expr).map_err(|e| usage(e.to_string()))?;
            let display = q.display(alg);
            Ok(Selected {
                family: None,
                q,
                inputs: json!({"coeffs": display}),
                display,
            })
        }
        (Some(f), None) => {
            let family = family_from_args(*f, a)?;
            let q = named_family(alg, &family).map_err(|e| match e {
                Error::Structure(msg) => Failure::Precondition {
                    message: msg.clone(),
                    envelope: envelope(
                        "classify",
                        json!({"family": family.to_string()}),
                        json!({"error": msg}),
                        &[],
                    ),
                },
                other => usage(other.to_string()),
            })?;
            let display = q.display(alg);
            let inputs = family_inputs(&family);
            Ok(Selected {
                family: Some(family),
                q,
                inputs,
                display,
            })
        }
    }
}

fn family_from_args(f: FamilyArg, a: &SuperchargeArgs) -> Result<Family, Failure> {
    let no = |flag: &Option<String>, name: &str, ctx: &str| -> Result<(), Failure> {
        if flag.is_some() {
            Err(usage(format!("--{name} does not apply to --family {ctx}")))
        } else {
            Ok(())
        }
    };
    match f {
        FamilyArg::Hol | FamilyArg::A | FamilyArg::B => {
            let ctx = match f {
                FamilyArg::Hol => "hol",
                FamilyArg::A => "a",
                _ => "b",
            };
            no(&a.mu, "mu", ctx)?;
            no(&a.nu, "nu", ctx)?;
            no(&a.lambda, "lambda", ctx)?;
            Ok(match f {
                FamilyArg::Hol => Family::Hol,
                FamilyArg::A => Family::A,
                _ => Family::B,
            })
        }
        FamilyArg::Kw => {
            no(&a.lambda, "lambda", "kw")?;
            let mu = parse_scalar(
                a.mu.as_deref().ok_or_else(|| usage("--family kw needs --mu and --nu"))?,
                "μ",
            )?;
            let nu = parse_scalar(
                a.nu.as_deref().ok_or_else(|| usage("--family kw needs --mu and --nu"))?,
                "ν",
            )?;
            Ok(Family::Kw { mu, nu })
        }
        FamilyArg::Ht | FamilyArg::HtPrime => {
            let ctx = if f == FamilyArg::Ht { "ht" } else { "ht_prime" };
            no(&a.mu, "mu", ctx)?;
            no(&a.nu, "nu", ctx)?;
            let lambda = parse_scalar(
                a.lambda
                    .as_deref()
                    .ok_or_else(|| usage(format!("--family {ctx} needs --lambda")))?,
                "λ",
            )?;
            Ok(if f == FamilyArg::Ht {
                Family::Ht { lambda }
            } else {
                Family::HtPrime { lambda }
            })
        }
    }
}

fn family_inputs(family: &Family) -> Value {
    match family {
        Family::Hol => json!({"family": "hol"}),
        Family::A => json!({"family": "a"}),
        Family::B => json!({"family": "b"}),
        Family::Kw { mu, nu } => {
            json!({"family": "kw", "mu": mu.to_string(), "nu": nu.to_string()})
        }
        Family::Ht { lambda } => json!({"family": "ht", "lambda": lambda.to_string()}),
        Family::HtPrime { lambda } => {
            json!({"family": "ht_prime", "lambda": lambda.to_string()})
        }
    }
}

/// Envelope + exit-3 failure for a non-square-zero supercharge, with the
/// obstruction vector in the report and the message.
fn square_zero_or_fail(
    command: &str,
    alg: &SuperLieAlgebra,
    sel: &Selected,
) -> Result<(), Failure> {
    let sq = bracket_square(alg, &sel.q);
    if sq.iter().all(|c| c.is_zero()) {
        return Ok(());
    }
    let obstruction = format_combination(alg, &sq);
    let env = envelope(
        command,
        sel.inputs.clone(),
        json!({
            "supercharge": sel.display,
            "square_zero": false,
            "obstruction": obstruction,
        }),
        &[Check::new("square_zero", false, format!("[Q,Q] = {obstruction}"))],
    );
    Err(Failure::Precondition {
        message: format!("supercharge does not square to zero: [Q,Q] = {obstruction}"),
        envelope: env,
    })
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

fn classify_result(alg: &SuperLieAlgebra, sel: &Selected, report: &TwistReport) -> (Value, Vec<String>) {
    let mut result = report.to_json(alg);
    let map = result.as_object_mut().expect("object report");
    map.insert("supercharge".into(), json!(sel.display));
    let mut warnings = Vec::new();
    if let Some(family) = &sel.family {
        map.insert("family".into(), json!(family.to_string()));
        map.insert(
            "catalogued_verdict".into(),
            json!(catalogued_verdict(family).to_string()),
        );
        warnings = family_warnings(family, report);
        map.insert("warnings".into(), json!(warnings));
    }
    (result, warnings)
}

fn cmd_classify(a: &SuperchargeArgs) -> Result<Rendered, Failure> {
    let alg = the_algebra();
    let sel = select_supercharge(&alg, a)?;
    square_zero_or_fail("classify", &alg, &sel)?;
    let report = classify(&alg, &sel.q).map_err(|e| usage(e.to_string()))?;
    let (result, warnings) = classify_result(&alg, &sel, &report);
    let checks = vec![
        Check::new("square_zero", true, "[Q,Q] = 0 verified exactly"),
        Check::new(
            "image_rank",
            report.image_dim == report.image.dim(),
            format!("bracket image has rank {}", report.image_dim),
        ),
    ];
    let mut table = format!(
        "classify {}\n  verdict: {}\n  image dim {}: {}\n",
        sel.display,
        report.verdict,
        report.image_dim,
        result["image_basis"]
            .as_array()
            .expect("basis array")
            .iter()
            .map(|v| v.as_str().unwrap_or_default().to_string())
            .collect::<Vec<_>>()
            .join(", "),
    );
    for w in &warnings {
        table.push_str(&format!("  WARNING: {w}\n"));
    }
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(Rendered {
        envelope: envelope("classify", sel.inputs, result, &checks),
        table,
        all_pass,
    })
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

fn cmd_scan(a: &ScanArgs) -> Result<Rendered, Failure> {
    let alg = the_algebra();
    let split_list = |s: &str| -> Vec<String> {
        s.split(',')
            .map(|t| t.trim().to_string())
            .filter(|t| !t.is_empty())
            .collect()
    };
    // Build the parameter grid as (display, family) pairs.
    let (grid, inputs): (Vec<(String, Family)>, Value) = match a.family {
        ScanFamilyArg::Kw => {
            if a.lambdas.is_some() {
                return Err(usage("--lambdas applies to ht / ht_prime scans"));
            }
            let spec = a
                .points
                .as_deref()
                .ok_or_else(|| usage("--family kw needs --points \"μ:ν,…\""))?;
            let mut grid = Vec::new();
            for tok in split_list(spec) {
                let (m, n) = tok
                    .split_once(':')
                    .ok_or_else(|| usage(format!("point `{tok}` is not of the form μ:ν")))?;
                let mu = parse_scalar(m, "μ")?;
                let nu = parse_scalar(n, "ν")?;
                grid.push((format!("({mu}:{nu})"), Family::Kw { mu, nu }));
            }
            if grid.is_empty() {
                return Err(usage("empty grid: --points lists no CP¹ points"));
            }
            let echo: Vec<String> = grid.iter().map(|(d, _)| d.clone()).collect();
            let inputs = json!({"family": "kw", "points": echo});
            (grid, inputs)
        }
        ScanFamilyArg::Ht | ScanFamilyArg::HtPrime => {
            if a.points.is_some() {
                return Err(usage("--points applies to kw scans"));
            }
            let name = if a.family == ScanFamilyArg::Ht { "ht" } else { "ht_prime" };
            let spec = a
                .lambdas
                .as_deref()
                .ok_or_else(|| usage(format!("--family {name} needs --lambdas \"λ,…\"")))?;
            let mut grid = Vec::new();
            for tok in split_list(spec) {
                let lambda = parse_scalar(&tok, "λ")?;
                let display = lambda.to_string();
                let family = if a.family == ScanFamilyArg::Ht {
                    Family::Ht { lambda }
                } else {
                    Family::HtPrime { lambda }
                };
                grid.push((display, family));
            }
            if grid.is_empty() {
                return Err(usage("empty grid: --lambdas lists no values"));
            }
            let echo: Vec<String> = grid.iter().map(|(d, _)| d.clone()).collect();
            let inputs = json!({"family": name, "lambdas": echo});
            (grid, inputs)
        }
    };

    // Classify every grid point; results come back in input order.
    let outcomes = par::map_collect(grid, |(display, family)| {
        let q = named_family(&alg, family)?;
        let sq = bracket_square(&alg, &q);
        if !sq.iter().all(|c| c.is_zero()) {
            return Err(Error::NotSquareZero);
        }
        let report = classify(&alg, &q)?;
        Ok((display.clone(), family.clone(), report))
    });

    let mut rows = Vec::new();
    let mut strata: std::collections::BTreeMap<String, usize> = std::collections::BTreeMap::new();
    let all_square_zero = true;
    for outcome in outcomes {
        match outcome {
            Err(e) => {
                let env = envelope(
                    "scan",
                    inputs.clone(),
                    json!({"error": e.to_string()}),
                    &[Check::new("square_zero_everywhere", false, e.to_string())],
                );
                return Err(Failure::Precondition {
                    message: format!("scan aborted: {e}"),
                    envelope: env,
                });
            }
            Ok((display, family, report)) => {
                let warnings = family_warnings(&family, &report);
                *strata.entry(report.verdict.to_string()).or_default() += 1;
                rows.push(json!({
                    "parameter": display,
                    "image_dim": report.image_dim,
                    "verdict": report.verdict.to_string(),
                    "warnings": warnings,
                }));
            }
        }
    }
    let strata_json: Vec<Value> = strata
        .iter()
        .map(|(v, n)| json!({"verdict": v, "count": n}))
        .collect();
    let result = json!({"rows": rows, "strata": strata_json});
    let checks = vec![Check::new(
        "square_zero_everywhere",
        all_square_zero,
        format!("{} grid points verified", result["rows"].as_array().unwrap().len()),
    )];
    let mut table = String::from("scan\n  parameter  image_dim  verdict\n");
    for row in result["rows"].as_array().unwrap() {
        table.push_str(&format!(
            "  {}  {}  {}{}\n",
            row["parameter"].as_str().unwrap(),
            row["image_dim"],
            row["verdict"].as_str().unwrap(),
            if row["warnings"].as_array().unwrap().is_empty() {
                String::new()
            } else {
                format!("  [{} warning(s)]", row["warnings"].as_array().unwrap().len())
            }
        ));
    }
    table.push_str("  strata: ");
    table.push_str(
        &strata
            .iter()
            .map(|(v, n)| format!("{v} ×{n}"))
            .collect::<Vec<_>>()
            .join(", "),
    );
    table.push('\n');
    Ok(Rendered {
        envelope: envelope("scan", inputs, result, &checks),
        table,
        all_pass: all_square_zero,
    })
}

// ---------------------------------------------------------------------------
// cohomology
// ---------------------------------------------------------------------------

fn cmd_cohomology(a: &SuperchargeArgs) -> Result<Rendered, Failure> {
    let alg = the_algebra();
    let sel = select_supercharge(&alg, a)?;
    square_zero_or_fail("cohomology", &alg, &sel)?;
    let report = q_cohomology(&alg, &sel.q).map_err(|e| usage(e.to_string()))?;
    let mut result = json!({
        "supercharge": sel.display,
        "cohomology": report.to_json(&alg),
    });
    let map = result.as_object_mut().expect("object");
    if let Some(f) = &sel.family {
        map.insert("family".into(), json!(f.to_string()));
    }
    let bosonic_total = alg.block_indices(Block::Rotation).len()
        + alg.block_indices(Block::RSymmetry).len();
    let rank_nullity = report.dims.0 == bosonic_total - report.odd_exact_dim;
    let mut checks = vec![
        Check::new("square_zero", true, "[Q,Q] = 0 verified exactly"),
        Check::new(
            "rank_nullity",
            rank_nullity,
            format!(
                "bosonic kernel {} = {} − {} (rank oracle)",
                report.dims.0, bosonic_total, report.odd_exact_dim
            ),
        ),
        Check::new(
            "euler_consistent",
            report.euler_consistent,
            format!("Euler characteristic {}", report.euler_characteristic),
        ),
    ];
    if matches!(sel.family, Some(Family::Hol)) {
        let cmp = hol_kernel_comparison(&alg, &report).map_err(|e| usage(e.to_string()))?;
        checks.push(Check::new(
            "kernel_reference",
            cmp.reference_contained,
            format!(
                "sl(2)− ⊕ Ann(e1) reference ({}-dim) inside the {}-dim kernel, surplus {}",
                cmp.reference_dim, cmp.kernel_dim, cmp.surplus_dim
            ),
        ));
        map.insert(
            "kernel_comparison".into(),
            serde_json::to_value(&cmp).expect("serializable"),
        );
    }
    let all_pass = checks.iter().all(|c| c.pass);
    let table = format!(
        "cohomology of {}\n  dims: bosonic {} / odd {} / translation {}\n  odd exact dim {}\n  translation classes: {}\n",
        sel.display,
        report.dims.0,
        report.dims.1,
        report.dims.2,
        report.odd_exact_dim,
        result["cohomology"]["translation_classes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap_or_default().to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(Rendered {
        envelope: envelope("cohomology", sel.inputs, result, &checks),
        table,
        all_pass,
    })
}

// ---------------------------------------------------------------------------
// superspace
// ---------------------------------------------------------------------------

fn cmd_superspace(a: &SuperspaceArgs) -> Result<Rendered, Failure> {
    use twistlab_core::superspace::{check_representation, family_vector_field, vf_bracket};
    let alg = the_algebra();
    let report = check_representation(&alg).map_err(|e| usage(e.to_string()))?;
    let mut inputs = json!({});
    let mut result = json!({
        "checked_pairs": report.checked,
        "pass": report.pass,
        "pairs": report
            .pairs
            .iter()
            .map(|p| json!({"x": p.x, "y": p.y, "pass": p.pass}))
            .collect::<Vec<_>>(),
    });
    let mut checks = vec![Check::new(
        "representation",
        report.pass,
        format!("{} generator pairs verified", report.checked),
    )];
    if let Some(f) = a.family {
        let sargs = SuperchargeArgs {
            family: Some(f),
            mu: a.mu.clone(),
            nu: a.nu.clone(),
            lambda: a.lambda.clone(),
            coeffs: None,
        };
        let family = family_from_args(f, &sargs)?;
        inputs = family_inputs(&family);
        let field = family_vector_field(&family).map_err(|e| match e {
            Error::Structure(msg) => usage(msg),
            other => usage(other.to_string()),
        })?;
        let sq = vf_bracket(&field, &field).map_err(|e| usage(e.to_string()))?;
        let map = result.as_object_mut().expect("object");
        map.insert("family".into(), json!(family.to_string()));
        map.insert("vector_field".into(), field.to_json());
        map.insert("field_squares_to_zero".into(), json!(sq.is_zero()));
        checks.push(Check::new(
            "field_square_zero",
            sq.is_zero(),
            "[F, F] = 0 for the realized family field",
        ));
    }
    let all_pass = checks.iter().all(|c| c.pass);
    let mut table = format!(
        "superspace representation: {} pairs, {}\n",
        report.checked,
        if report.pass { "PASS" } else { "FAIL" }
    );
    if let Some(field) = result.get("vector_field") {
        table.push_str(&format!("  family field: {field}\n"));
    }
    Ok(Rendered {
        envelope: envelope("superspace", inputs, result, &checks),
        table,
        all_pass,
    })
}

// ---------------------------------------------------------------------------
// twistor
// ---------------------------------------------------------------------------

fn cmd_twistor(a: &TwistorArgs) -> Result<Rendered, Failure> {
    let run_all = !a.content
        && a.koszul.is_none()
        && a.laplacian.is_none()
        && !a.signature
        && a.berezinian.is_none()
        && !a.table
        && !a.dirac;
    let content = a.content || run_all;
    let koszul = a.koszul.or(if run_all { Some(8) } else { None });
    let laplacian = a.laplacian.or(if run_all { Some(6) } else { None });
    let signature = a.signature || run_all;
    let berezinian = a
        .berezinian
        .clone()
        .or(if run_all { Some("3,4".to_string()) } else { None });
    let table_op = a.table || run_all;
    let dirac = a.dirac || run_all;

    let mut inputs = serde_json::Map::new();
    let mut result = serde_json::Map::new();
    let mut checks = Vec::new();
    let mut table = String::from("twistor\n");

    if let Some(spec) = &berezinian {
        let (n, m) = spec
            .split_once(',')
            .ok_or_else(|| usage("--berezinian expects \"n,m\""))?;
        let n: usize = n.trim().parse().map_err(|_| usage("--berezinian expects integers"))?;
        let m: usize = m.trim().parse().map_err(|_| usage("--berezinian expects integers"))?;
        if n == 0 {
            return Err(usage("--berezinian needs n ≥ 1"));
        }
        let degree = twistor::berezinian_cpnm(n, m);
        let scy = twistor::is_super_calabi_yau(n, m);
        inputs.insert("berezinian".into(), json!(format!("{n},{m}")));
        result.insert(
            "berezinian".into(),
            json!({"n": n, "m": m, "degree": degree, "super_calabi_yau": scy}),
        );
        checks.push(Check::new(
            "berezinian_consistent",
            scy == (m == n + 1),
            format!("CP^{{{n}|{m}}} Berezinian degree {degree}"),
        ));
        table.push_str(&format!(
            "  Ber(CP^{{{n}|{m}}}) = O({degree}){}\n",
            if scy { " — super Calabi–Yau" } else { "" }
        ));
    }

    if signature {
        let sig = twistor::signature_check();
        inputs.insert("signature".into(), json!(true));
        result.insert("signature".into(), json!([sig.0, sig.1]));
        checks.push(Check::new(
            "signature",
            sig == (2, 2),
            format!("twistor norm has signature ({}, {})", sig.0, sig.1),
        ));
        table.push_str(&format!("  signature ({}, {})\n", sig.0, sig.1));
    }

    if dirac {
        let scalar = twistor::dirac_symbol_scalar().map_err(|e| usage(e.to_string()))?;
        inputs.insert("dirac".into(), json!(true));
        result.insert(
            "dirac".into(),
            json!({"scalar": scalar.to_string(), "matches_clifford": true}),
        );
        checks.push(Check::new(
            "dirac_symbol",
            !scalar.is_zero(),
            format!("composite = ({scalar})·ρ(x) on every direction"),
        ));
        table.push_str(&format!("  Dirac symbol scalar {scalar}\n"));
    }

    if content {
        inputs.insert("content".into(), json!(true));
        let mut tables = Vec::new();
        let mut dims = Vec::new();
        for k in [0i64, -1, -2] {
            let t = twistor::pushforward_content(k).map_err(|e| usage(e.to_string()))?;
            dims.push(t.total_dimension());
            table.push_str(&indent_lines(&t.to_text(), "  "));
            tables.push(t.to_json());
        }
        result.insert("content".into(), Value::Array(tables));
        checks.push(Check::new(
            "content_dimensions",
            dims == vec![16, 32, 12],
            format!("group dimensions {dims:?}"),
        ));
    }

    if let Some(bound) = koszul {
        if bound < 2 {
            return Err(usage("--koszul needs a degree bound ≥ 2"));
        }
        let report = twistor::koszul_exactness_check(bound);
        inputs.insert("koszul".into(), json!(bound));
        checks.push(Check::new(
            "koszul_exactness",
            report.pass,
            format!(
                "degrees 0..={bound} over {} sections; cokernel only in degree 0",
                report.sections_checked
            ),
        ));
        table.push_str(&format!(
            "  Koszul exact to degree {bound}: {}\n",
            if report.pass { "PASS" } else { "FAIL" }
        ));
        result.insert(
            "koszul".into(),
            serde_json::to_value(&report).expect("serializable"),
        );
    }

    if let Some(trunc) = laplacian {
        if trunc < 4 {
            return Err(usage("--laplacian needs a truncation ≥ 4"));
        }
        let matrix = twistor::e2_laplacian_matrix(trunc).map_err(|e| usage(e.to_string()))?;
        let ok = twistor::e2_laplacian_check(trunc).map_err(|e| usage(e.to_string()))?;
        inputs.insert("laplacian".into(), json!(trunc));
        let rows: Vec<Vec<String>> = (0..matrix.rows)
            .map(|i| (0..matrix.cols).map(|j| matrix.get(i, j).to_string()).collect())
            .collect();
        result.insert(
            "laplacian".into(),
            json!({
                "truncation": trunc,
                "matrix": rows,
                "proportional_to_identity": ok,
                "scalar": matrix.get(0, 0).to_string(),
            }),
        );
        checks.push(Check::new(
            "e2_laplacian",
            ok,
            format!("second-page differential = ({})·δ^ij", matrix.get(0, 0)),
        ));
        table.push_str(&format!(
            "  e² differential = ({})·I₄ at truncation {trunc}\n",
            matrix.get(0, 0)
        ));
    }

    if table_op {
        let rows = twistor::twisted_tangent_table();
        inputs.insert("table".into(), json!(true));
        checks.push(Check::new(
            "tangent_table",
            rows.len() == 16,
            "16 weighted summands across cohomological degrees −1..1",
        ));
        table.push_str("  subscripts  O(k)  coh  parity\n");
        for r in &rows {
            table.push_str(&format!(
                "  {:<10}  O({})  {:+}  {:?}\n",
                r.subscripts, r.degree, r.cohomological_degree, r.parity
            ));
        }
        result.insert(
            "tangent_table".into(),
            serde_json::to_value(&rows).expect("serializable"),
        );
    }

    let all_pass = checks.iter().all(|c| c.pass);
    Ok(Rendered {
        envelope: envelope("twistor", Value::Object(inputs), Value::Object(result), &checks),
        table,
        all_pass,
    })
}

fn indent_lines(text: &str, prefix: &str) -> String {
    let mut out = String::new();
    for line in text.lines() {
        out.push_str(prefix);
        out.push_str(line);
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

fn cmd_selftest() -> Result<Rendered, Failure> {
    let checks = selftest::run_all();
    let passed = checks.iter().filter(|c| c.pass).count();
    let result = json!({
        "criteria_total": checks.len(),
        "criteria_passed": passed,
    });
    let mut table = String::from("selftest\n");
    for c in &checks {
        table.push_str(&format!(
            "  {} {}: {}\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.details
        ));
    }
    let all_pass = passed == checks.len();
    Ok(Rendered {
        envelope: envelope("selftest", json!({}), result, &checks),
        table,
        all_pass,
    })
}
