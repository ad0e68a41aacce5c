use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qgda_core::basealg::AlgebraFile;
use qgda_core::calculus::{adjudicate_phi_recurrence, poly_p, poly_phi, poly_q, poly_q_inverse};
use qgda_core::expr::{EvalError, Session};
use qgda_core::instance::Instance;
use qgda_core::verify::{self, Suite};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_ALGEBRA: u8 = 3;

#[derive(Parser)]
#[command(name = "qgda", version, about = "Exact graded q-differential calculus on semi-commutative Galois extensions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// `quantum-plane:N`, `quaternion`, or a path to an algebra file
    #[arg(short = 'a', long = "algebra", global = true, default_value = "quantum-plane:3")]
    algebra: String,
    /// Coordinate x ∈ A as an expression (default: the canonical generator)
    #[arg(short = 'x', long = "coordinate", global = true)]
    coordinate: Option<String>,
    #[arg(short = 'f', long = "format", global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate expressions
    Eval {
        exprs: Vec<String>,
        /// Read one expression per line; blank lines and lines starting with '#' are skipped
        #[arg(long)]
        batch: Option<String>,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
    },
    /// Print P_k, Q_k, Q_k⁻¹ and Φ_k for the session coordinate
    Poly {
        /// Largest index (default N)
        #[arg(short = 'k')]
        k: Option<usize>,
    },
    /// Inspect the algebra
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
}

#[derive(Subcommand)]
enum AlgebraAction {
    /// Print the algebra in file format
    Show,
    /// Check the axioms; exits 3 on failure
    Validate,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// A failure that ends the run with a given exit code.
struct Exit(u8, String);

type Outcome = Result<u8, Exit>;

fn load_instance(descriptor: &str) -> Result<Instance, Exit> {
    if let Some(built) = Instance::builtin(descriptor) {
        return built.map_err(|e| Exit(EXIT_USAGE, format!("--algebra {descriptor}: {e}")));
    }
    let text = fs::read_to_string(descriptor).map_err(|e| Exit(EXIT_USAGE, format!("cannot read {descriptor}: {e}")))?;
    Instance::from_file_text(descriptor, &text).map_err(|e| Exit(EXIT_ALGEBRA, format!("{descriptor}: {e}")))
}

fn require_valid(instance: &Instance) -> Result<(), Exit> {
    match instance.validation().failures.first() {
        None => Ok(()),
        Some(f) => Err(Exit(
            EXIT_ALGEBRA,
            format!("{instance} fails the algebra axioms ({}: basis {:?}, {}); run `qgda algebra validate`", f.law, f.witness, f.detail),
        )),
    }
}

fn session(g: &Global, instance: Instance) -> Result<Session, Exit> {
    match &g.coordinate {
        None => Ok(Session::new(instance)),
        Some(src) => Session::with_coordinate(instance, src).map_err(|e| Exit(EXIT_USAGE, format!("--coordinate {src}: {e}"))),
    }
}

fn error_json(src: &str, e: &EvalError) -> serde_json::Value {
    match e {
        EvalError::Parse(p) => json!({
            "input": src,
            "error": { "kind": "parse", "pos": p.pos, "expected": p.expected, "message": e.to_string() },
        }),
        _ => json!({ "input": src, "error": { "kind": "eval", "message": e.to_string() } }),
    }
}

fn eval(g: &Global, exprs: &[String], batch: Option<&str>) -> Outcome {
    let instance = load_instance(&g.algebra)?;
    require_valid(&instance)?;
    let s = session(g, instance)?;
    let mut lines: Vec<String> = exprs.to_vec();
    if let Some(path) = batch {
        let bytes = fs::read(path).map_err(|e| Exit(EXIT_USAGE, format!("cannot read {path}: {e}")))?;
        let text = String::from_utf8_lossy(&bytes);
        lines.extend(text.lines().filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#')).map(String::from));
    }
    if lines.is_empty() {
        return Err(Exit(EXIT_USAGE, "nothing to evaluate: pass expressions or --batch FILE".into()));
    }
    let mut out = io::stdout().lock();
    let mut failed = false;
    for src in &lines {
        let result = s.eval_str(src);
        match (g.format, &result) {
            (Format::Text, Ok(v)) => writeln!(out, "{v}"),
            (Format::Text, Err(e)) => {
                failed = true;
                eprintln!("error: {src}: {e}");
                Ok(())
            }
            (Format::Json, Ok(v)) => writeln!(out, "{}", json!({ "input": src, "result": v.to_json() })),
            (Format::Json, Err(e)) => {
                failed = true;
                writeln!(out, "{}", error_json(src, e))
            }
        }
        .map_err(|e| Exit(EXIT_USAGE, e.to_string()))?;
    }
    Ok(if failed { EXIT_USAGE } else { 0 })
}

fn run_verify(g: &Global, suite: Suite) -> Outcome {
    let instance = load_instance(&g.algebra)?;
    let coordinate = match &g.coordinate {
        None => None,
        Some(src) => Some(
            Session::new(instance.clone())
                .eval_base(src)
                .map_err(|e| Exit(EXIT_USAGE, format!("--coordinate {src}: {e}")))?,
        ),
    };
    let report = verify::run(suite, &instance, coordinate, g.seed);
    match g.format {
        Format::Text => println!("{report}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
    }
    Ok(if report.passed() { 0 } else { EXIT_VERIFY })
}

fn poly(g: &Global, k: Option<usize>) -> Outcome {
    let instance = load_instance(&g.algebra)?;
    require_valid(&instance)?;
    let s = session(g, instance)?;
    let c = s.coordinate().map_err(|e| Exit(EXIT_USAGE, e.to_string()))?;
    let n = c.ext().n();
    let top = k.unwrap_or(n);
    if top == 0 || top > n {
        return Err(Exit(EXIT_USAGE, format!("-k must lie in 1..={n}")));
    }
    let mut rows = Vec::new();
    for k in 1..=top {
        let phi = (k < n).then(|| poly_phi(k, c)).transpose().map_err(|e| Exit(EXIT_USAGE, e.to_string()))?;
        let get = |r: qgda_core::Result<_>| r.map_err(|e: qgda_core::AlgebraError| Exit(EXIT_USAGE, e.to_string()));
        rows.push((k, get(poly_p(k, c))?, get(poly_q(k, c))?, get(poly_q_inverse(k, c))?, phi));
    }
    let verdicts = if n >= 3 { adjudicate_phi_recurrence(c).map_err(|e| Exit(EXIT_USAGE, e.to_string()))? } else { Vec::new() };
    match g.format {
        Format::Text => {
            println!("coordinate x = {}", c.x());
            for (k, p, q, qi, phi) in &rows {
                println!("P_{k} = {p}");
                println!("Q_{k} = {q}");
                println!("Q_{k}^-1 = {qi}");
                if let Some(phi) = phi {
                    println!("Phi_{k} = {phi}");
                }
            }
            for v in &verdicts {
                let tag = if v.all_match() { "matches" } else { "does not match" };
                println!("{} {tag} the defining property", v.reading);
            }
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(k, p, q, qi, phi)| {
                    json!({ "k": k, "P": p.to_json(), "Q": q.to_json(), "Q_inv": qi.to_json(), "Phi": phi.as_ref().map(|x| x.to_json()) })
                })
                .collect();
            let verdicts: Vec<_> = verdicts
                .iter()
                .map(|v| json!({ "reading": v.reading.to_string(), "matches": v.all_match(), "per_k": v.matches }))
                .collect();
            let doc = json!({ "coordinate": c.x().to_json(), "polynomials": rows, "phi_recurrence": verdicts });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
        }
    }
    Ok(0)
}

fn algebra(g: &Global, action: &AlgebraAction) -> Outcome {
    let instance = load_instance(&g.algebra)?;
    let ext = instance.ext();
    match action {
        AlgebraAction::Show => {
            let file = AlgebraFile::describe(ext.base(), ext.sign());
            match g.format {
                Format::Json => println!("{}", file.to_json_pretty()),
                Format::Text => {
                    println!("{instance}: N = {}, τ^N = {}, dim A = {}", ext.n(), ext.sign().as_i64(), ext.base().dim());
                    println!("basis: {}", ext.base().basis_names().join(", "));
                    println!("{}", file.to_json_pretty());
                }
            }
            Ok(0)
        }
        AlgebraAction::Validate => {
            let report = instance.validation();
            match g.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(report).expect("serializes")),
                Format::Text => {
                    if report.is_ok() {
                        println!("{instance}: all axioms hold");
                    }
                    for f in &report.failures {
                        println!("FAIL {}: basis {:?}: {}", f.law, f.witness, f.detail);
                    }
                }
            }
            Ok(if report.is_ok() { 0 } else { EXIT_ALGEBRA })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let g = &cli.global;
    let outcome = match &cli.command {
        Command::Eval { exprs, batch } => eval(g, exprs, batch.as_deref()),
        Command::Verify { suite } => run_verify(g, *suite),
        Command::Poly { k } => poly(g, *k),
        Command::Algebra { action } => algebra(g, action),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
