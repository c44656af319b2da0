mod corpus;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use idemfact::curve::Curve;
use idemfact::elemfact::{factor_ge2_euclid, tform_recover_int};
use idemfact::idfactor::factor_id2;
use idemfact::intz::IntZPoly;
use idemfact::json;
use idemfact::obstruct::{decide_ge2_dor, Verdict};
use idemfact::{Error, Mat2, RingElem, RingId};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "idemfact", version, about = "Exact 2x2 matrix factorization over commutative rings")]
struct Cli {
    /// Write the output document to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Factor a singular matrix over Z or Q[X] into idempotents.
    FactorId2(MatrixArgs),
    /// Factor an invertible matrix over Z or Q[X] into elementary matrices.
    FactorGe2(MatrixArgs),
    /// Normal form diag(a, b) T(r1) ... T(rk) of an invertible matrix over Z or IntZ.
    Tform(DepthArgs),
    /// Search for the normal form and emit a checkable trace.
    Obstruct(DepthArgs),
    /// Convert between polynomial syntax and binomial coordinates in IntZ.
    IntzConvert(IntzArgs),
    /// Independence report for the coordinate ring of a plane curve.
    CurveReport(CurveArgs),
    /// Curve commands (`curve report` is the same as `curve-report`).
    Curve {
        #[command(subcommand)]
        cmd: CurveCmd,
    },
    /// Re-check a certificate, trace or report; exits 0 if valid, 1 if not.
    Verify {
        file: PathBuf,
    },
    /// Run the bundled golden cases and print a pass/fail table.
    Corpus,
}

#[derive(Subcommand)]
enum CurveCmd {
    Report(CurveArgs),
}

#[derive(Args)]
struct MatrixArgs {
    /// Ring tag: Z, Q, Q[X] or IntZ. Optional when the matrix names its ring.
    #[arg(long)]
    ring: Option<String>,
    /// Matrix as a JSON file path or inline JSON, e.g. '[[2,3],[0,0]]'.
    #[arg(long)]
    matrix: String,
}

#[derive(Args)]
struct DepthArgs {
    #[command(flatten)]
    m: MatrixArgs,
    /// Search depth; defaults to IDEMFACT_DEPTH or 8.
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Args)]
struct IntzArgs {
    /// Rational polynomial in X, e.g. "X^2".
    #[arg(long, conflicts_with = "binom", required_unless_present = "binom")]
    poly: Option<String>,
    /// Binomial coordinates, e.g. "binom[0, 1, 2]".
    #[arg(long)]
    binom: Option<String>,
}

#[derive(Args)]
struct CurveArgs {
    /// Curve equation F(X, Y).
    #[arg(long = "F", value_name = "F")]
    f: String,
    /// Seed for the random spot checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Domain(Error),
    Parse(String),
    Invalid(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => Failure::Parse(msg),
            other => Failure::Domain(other),
        }
    }
}

fn read_json(src: &str) -> Result<Value, Failure> {
    let path = Path::new(src);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{src}: {e}")))?
    } else {
        src.to_string()
    };
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("invalid JSON: {e}")))
}

fn load_matrix(args: &MatrixArgs) -> Result<Mat2, Failure> {
    let ring = args.ring.as_deref().map(json::ring_from_tag).transpose()?;
    Ok(json::mat_from_json(&read_json(&args.matrix)?, ring.as_ref())?)
}

fn depth(d: Option<usize>) -> usize {
    d.filter(|&d| d > 0).unwrap_or_else(idemfact::depth_from_env)
}

fn curve_report(args: &CurveArgs) -> Result<Value, Failure> {
    let curve = Curve::parse(&args.f)?;
    Ok(json::curve_report_doc(&curve, args.seed)?)
}

fn run(cmd: &Cmd) -> Result<Value, Failure> {
    match cmd {
        Cmd::FactorId2(m) => Ok(json::idem_cert_to_json(&factor_id2(&load_matrix(m)?)?)),
        Cmd::FactorGe2(m) => Ok(json::elem_cert_to_json(&factor_ge2_euclid(&load_matrix(m)?)?)),
        Cmd::Tform(a) => {
            let m = load_matrix(&a.m)?;
            let t = match m.ring() {
                RingId::Integer => tform_recover_int(&m)?,
                _ => match decide_ge2_dor(&m, depth(a.depth))?.verdict {
                    Verdict::Factored(t) => t,
                    Verdict::NotFactorable => {
                        return Err(Failure::Domain(Error::PreconditionViolated(
                            "matrix has no T-form; run obstruct for a certificate".into(),
                        )))
                    }
                    Verdict::Unknown(why) => {
                        return Err(Failure::Domain(Error::PreconditionViolated(format!(
                            "no T-form found within the depth limit ({why})"
                        ))))
                    }
                },
            };
            Ok(json::tform_doc(&m, &t))
        }
        Cmd::Obstruct(a) => Ok(json::trace_to_json(&decide_ge2_dor(&load_matrix(&a.m)?, depth(a.depth))?)),
        Cmd::IntzConvert(a) => match (&a.poly, &a.binom) {
            (Some(p), _) => match RingId::IntZ.parse_elem(p)? {
                x @ RingElem::IntZ(_) => Ok(json::elem_to_json(&x)),
                _ => unreachable!("IntZ elements"),
            },
            (None, Some(b)) => {
                let p = IntZPoly::parse(b)?;
                Ok(json!({"poly": p.to_rational_poly().to_string()}))
            }
            (None, None) => Err(Failure::Parse("one of --poly or --binom is required".into())),
        },
        Cmd::CurveReport(a) | Cmd::Curve { cmd: CurveCmd::Report(a) } => curve_report(a),
        Cmd::Verify { file } => {
            let doc = read_json(&file.to_string_lossy())?;
            let (valid, reasons) = match json::verify_document(&doc) {
                Ok(v) => (v.valid, v.reasons),
                Err(Error::Parse(msg)) => return Err(Failure::Parse(msg)),
                Err(e) => (false, vec![e.to_string()]),
            };
            let out = json!({"kind": "verification", "valid": valid, "reasons": reasons});
            if valid {
                Ok(out)
            } else {
                Err(Failure::Invalid(out))
            }
        }
        Cmd::Corpus => unreachable!("handled separately"),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), String> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let doc = json!({"error": {"kind": "Parse", "message": e.to_string().trim_end()}});
            print!("{}", pretty(&doc));
            return ExitCode::from(3);
        }
    };
    let output = cli.output.as_deref();
    if let Cmd::Corpus = cli.cmd {
        let results = corpus::run_all();
        let ok = results.iter().all(|r| r.pass);
        if let Err(e) = emit(&corpus::table(&results), output) {
            eprintln!("{e}");
            return ExitCode::from(3);
        }
        return if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE };
    }
    let (doc, code) = match run(&cli.cmd) {
        Ok(doc) => (doc, 0),
        Err(Failure::Invalid(doc)) => (doc, 1),
        Err(Failure::Domain(e)) => (json::error_doc(&e), 2),
        Err(Failure::Parse(msg)) => (json::error_doc(&Error::Parse(msg)), 3),
    };
    // Error documents always go to standard output.
    let target = if code == 0 || code == 1 { output } else { None };
    if let Err(e) = emit(&pretty(&doc), target) {
        eprintln!("{e}");
        return ExitCode::from(3);
    }
    ExitCode::from(code)
}
