//! `hopfg`: verify Hopf G-algebras and evaluate 4-manifold invariants.
//!
//! Exit status is 0 on success, 1 when a verification or equality check
//! fails and 2 when the input cannot be used.

mod input;
mod render;

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hopfg_core::algebra::json::algebra_to_json;
use hopfg_core::algebra::{drinfeld_element, solve_integrals, verify_axioms};
use hopfg_core::invariant::{evaluate, evaluate_summed};
use hopfg_core::kirby::apply_move;
use hopfg_core::{Error, HopfGAlgebra, IntegralData, InvariantValue};

use input::{load_algebra, load_diagram, load_script, select_homs, Connection};
use render::{decimal, exact, hom_names, scalar_json, vector_json};

#[derive(Parser)]
#[command(
    name = "hopfg",
    version,
    about = "Exact Hopf G-algebra invariants of flat connections on 4-manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Builtin (`cyclic:k=2,l=3,d=1`, `kac-paljutkin`) or a JSON file
    #[arg(long)]
    algebra: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    common: AlgebraArgs,
    /// Builtin (`cp2`, `s1xs1xs2`, `connected-sum:cp2,s4`, ...) or a JSON file
    #[arg(long)]
    diagram: String,
    /// `trivial`, `all`, or comma-separated images of the dotted generators
    #[arg(long, default_value = "trivial")]
    connection: String,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every axiom, solve the integrals and certify the ribbon element
    Check(AlgebraArgs),
    /// Print the normalized integrals
    Integrals(AlgebraArgs),
    /// Evaluate the invariant on one or all connections
    Invariant(EvalArgs),
    /// Sum the invariant over every connection
    Sum {
        #[command(flatten)]
        common: AlgebraArgs,
        /// Builtin (`cp2`, `s1xs1xs2`, `connected-sum:cp2,s4`, ...) or a JSON file
        #[arg(long)]
        diagram: String,
    },
    /// Apply a JSON move script and compare values after every step
    Moves {
        #[command(flatten)]
        eval: EvalArgs,
        /// JSON array of moves such as `{"move": "I-2-remove", "first": 0, "second": 1}`
        #[arg(long)]
        script: String,
    },
    /// Write an algebra or a diagram as JSON
    Export {
        /// Algebra to write, as a builtin name or a JSON file
        #[arg(long, required_unless_present = "diagram", conflicts_with = "diagram")]
        algebra: Option<String>,
        /// Diagram to write, as a builtin name or a JSON file
        #[arg(long)]
        diagram: Option<String>,
        /// Output file; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// What a command produced: both renderings and whether its checks held.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

enum Failure {
    Input(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Arithmetic(_) | Error::Grading(_) | Error::Integral(_) | Error::Ribbon(_) | Error::Evaluation(_) => {
                Failure::Verification(e.to_string())
            }
            other => Failure::Input(other),
        }
    }
}

/// Load an algebra and refuse to evaluate with it unless every axiom holds.
fn prepare(name: &str) -> Result<(HopfGAlgebra, IntegralData), Failure> {
    let h = load_algebra(name)?;
    let report = verify_axioms(&h);
    if !report.all_passed() {
        return Err(Failure::Verification(format!("axioms fail for {name}:\n{report}")));
    }
    let ints = solve_integrals(&h)?;
    Ok((h, ints))
}

fn cmd_check(args: &AlgebraArgs) -> Result<Report, Failure> {
    let h = load_algebra(&args.algebra)?;
    let g = h.group();
    let report = verify_axioms(&h);
    let mut text = format!(
        "algebra {}: group of order {}, dims {:?}, conductor {}\n{report}",
        args.algebra,
        g.order(),
        h.dims(),
        h.conductor()
    );
    let (integrals, ribbon) = if report.all_passed() {
        let i = solve_integrals(&h).map(|_| ()).map_err(|e| e.to_string());
        let r = drinfeld_element(&h).map(|_| ()).map_err(|e| e.to_string());
        (Some(i), Some(r))
    } else {
        (None, None)
    };
    let status = |r: &Option<Result<(), String>>| match r {
        None => ("skipped".to_string(), Value::Null),
        Some(Ok(())) => ("ok".to_string(), json!({"passed": true})),
        Some(Err(e)) => (format!("FAIL {e}"), json!({"passed": false, "error": e})),
    };
    let (it, ij) = status(&integrals);
    let (rt, rj) = status(&ribbon);
    let ok = report.all_passed() && matches!(integrals, Some(Ok(()))) && matches!(ribbon, Some(Ok(())));
    let _ = writeln!(
        text,
        "integrals: {it}\nribbon element: {rt}\nresult: {}",
        if ok { "PASS" } else { "FAIL" }
    );
    let json = json!({
        "algebra": args.algebra,
        "axioms": report.checks,
        "integrals": ij,
        "ribbon": rj,
        "passed": ok,
    });
    Ok(Report { text, json, ok })
}

fn cmd_integrals(args: &AlgebraArgs) -> Result<Report, Failure> {
    let (h, ints) = prepare(&args.algebra)?;
    let g = h.group();
    let mut text = String::new();
    let mut lambdas = Vec::new();
    for a in g.elements() {
        let v = ints.big_lambda(a);
        let _ = writeln!(text, "Lambda[{}] = {v}", g.name(a));
        lambdas.push(vector_json(g, v));
    }
    let coeffs: Vec<String> = ints.lambda_coeffs().iter().map(|c| c.to_string()).collect();
    let _ = writeln!(text, "lambda = [{}] on the basis of H_1", coeffs.join(", "));
    let json = json!({"algebra": args.algebra, "big_lambda": lambdas, "lambda": coeffs});
    Ok(Report { text, json, ok: true })
}

fn value_text(v: &InvariantValue) -> String {
    format!(
        "  value    {}\n  decimal  {}  (approximate, non-authoritative)\n  bracket  {}\n  dim(H_1) exponent {}\n",
        exact(&v.value),
        decimal(&v.value),
        v.bracket,
        v.exponent
    )
}

fn value_json(v: &InvariantValue) -> Value {
    json!({"value": scalar_json(&v.value), "bracket": scalar_json(&v.bracket), "exponent": v.exponent})
}

fn cmd_invariant(args: &EvalArgs) -> Result<Report, Failure> {
    let (h, ints) = prepare(&args.common.algebra)?;
    let g = h.group();
    let d = load_diagram(&args.diagram)?;
    let conn = Connection::parse(&args.connection);
    let (values, total) = if conn == Connection::All {
        let s = evaluate_summed(&h, &ints, &d)?;
        (s.per_connection, Some(s.total))
    } else {
        let mut out = Vec::new();
        for hom in select_homs(&d, g, &conn)? {
            let v = evaluate(&h, &ints, &d.color(g, &hom)?)?;
            out.push((hom, v));
        }
        (out, None)
    };
    let mut text = format!("algebra {}, diagram {}\n", args.common.algebra, args.diagram);
    let mut rows = Vec::new();
    for (hom, v) in &values {
        let names = hom_names(g, hom);
        let label = if names.is_empty() {
            "no dotted components".to_string()
        } else {
            names.join(", ")
        };
        let _ = write!(text, "connection ({label})\n{}", value_text(v));
        rows.push(json!({"images": names, "invariant": value_json(v)}));
    }
    if let Some(t) = &total {
        let _ = write!(
            text,
            "sum over {} connections\n  value    {}\n  decimal  {}  (approximate, non-authoritative)\n",
            values.len(),
            exact(t),
            decimal(t)
        );
    }
    let json = json!({
        "algebra": args.common.algebra,
        "diagram": args.diagram,
        "connections": rows,
        "sum": total.as_ref().map(scalar_json),
    });
    Ok(Report { text, json, ok: true })
}

fn cmd_moves(args: &EvalArgs, script: &str) -> Result<Report, Failure> {
    let (h, ints) = prepare(&args.common.algebra)?;
    let g = h.group();
    let d = load_diagram(&args.diagram)?;
    let conn = Connection::parse(&args.connection);
    if conn == Connection::All {
        return Err(Failure::Input(Error::Parameter(
            "a move script needs a single connection".into(),
        )));
    }
    let hom = select_homs(&d, g, &conn)?.remove(0);
    let steps = load_script(script)?;
    let mut cd = d.color(g, &hom)?;
    let start = evaluate(&h, &ints, &cd)?;
    let mut text = format!("start: {}\n", exact(&start.value));
    let mut rows = Vec::new();
    let mut ok = true;
    for (i, m) in steps.iter().enumerate() {
        let m_json = serde_json::to_value(m).expect("moves serialize");
        cd = apply_move(&cd, m).map_err(|e| Error::MoveNotApplicable(format!("step {i} {m_json}: {e}")))?;
        let v = evaluate(&h, &ints, &cd)?;
        let equal = v.value == start.value;
        ok &= equal;
        let _ = writeln!(
            text,
            "step {i} {m_json}: {}  {}",
            exact(&v.value),
            if equal { "equal" } else { "DIFFERENT" }
        );
        rows.push(json!({"step": i, "move": m_json, "value": scalar_json(&v.value), "equal": equal}));
    }
    let _ = writeln!(text, "result: {}", if ok { "all values equal" } else { "MISMATCH" });
    let json = json!({
        "algebra": args.common.algebra,
        "diagram": args.diagram,
        "start": scalar_json(&start.value),
        "steps": rows,
        "passed": ok,
    });
    Ok(Report { text, json, ok })
}

fn cmd_export(algebra: Option<&str>, diagram: Option<&str>, out: Option<&PathBuf>) -> Result<ExitCode, Failure> {
    let text = match (algebra, diagram) {
        (Some(a), _) => algebra_to_json(&load_algebra(a)?),
        (None, Some(d)) => load_diagram(d)?.to_json(),
        (None, None) => unreachable!("clap requires one of --algebra, --diagram"),
    };
    match out {
        Some(path) => fs::write(path, text + "\n").map_err(Error::from)?,
        None => write_stdout(&(text + "\n")),
    }
    Ok(ExitCode::SUCCESS)
}

/// Writes to stdout, stopping quietly when the reader has gone away.
fn write_stdout(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(report: Result<Report, Failure>, format: Format) -> Result<ExitCode, Failure> {
    let r = report?;
    match format {
        Format::Text => write_stdout(&r.text),
        Format::Json => write_stdout(&(serde_json::to_string_pretty(&r.json).expect("report serializes") + "\n")),
    }
    Ok(if r.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::Check(a) => emit(cmd_check(a), a.format),
        Command::Integrals(a) => emit(cmd_integrals(a), a.format),
        Command::Invariant(e) => emit(cmd_invariant(e), e.common.format),
        Command::Sum { common, diagram } => {
            let e = EvalArgs {
                common: AlgebraArgs {
                    algebra: common.algebra.clone(),
                    format: common.format,
                },
                diagram: diagram.clone(),
                connection: "all".into(),
            };
            emit(cmd_invariant(&e), common.format)
        }
        Command::Moves { eval, script } => emit(cmd_moves(eval, script), eval.common.format),
        Command::Export { algebra, diagram, out } => cmd_export(algebra.as_deref(), diagram.as_deref(), out.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
