//! Command-line surface: stability checks, certificate synthesis and
//! re-verification, batch harnessing, and geometry inspection.
//!
//! Exit-code discipline, everywhere: `0` certified/stable, `2` principled
//! refusal (unstable input, precondition not met), `1` usage or internal
//! error, `3` certificate rejected by re-verification. No other codes.

pub mod documents;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{conic_region, sample_ellipse, tangency_points};
use crate::poly::routh::routh_hurwitz;
use crate::poly::sturm::PositivityVerdict;
use crate::poly::Polynomial;
use crate::rat::{rat_i, rat_to_decimal_string, rat_to_string, Rat};
use crate::spr::{real_part_at, SprReport};
use crate::stability::{random_stable_segment, segment_stable, SegmentProblem};
use crate::synthesis::{synthesize, SynthesisOutcome};
use documents::{parse_coefficients, CertificateDocument, ProblemDocument, SCHEMA_VERSION};

const EXIT_OK: i32 = 0;
const EXIT_ERROR: i32 = 1;
const EXIT_REFUSED: i32 = 2;
const EXIT_REJECTED: i32 = 3;

/// Robust strictly-positive-real synthesis for sixth-order segments.
#[derive(Parser)]
#[command(name = "sprforge", version, about)]
struct Cli {
    /// Arithmetic mode: `rational` certifies exactly; `float` runs fast
    /// heuristics and refuses to emit certificates.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Rational)]
    mode: Mode,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    Rational,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Decide endpoint and whole-segment Hurwitz stability.
    Check(CheckArgs),
    /// Construct and certify a common numerator for a stable segment.
    Synthesize(SynthesizeArgs),
    /// Re-verify a certificate from its serialized values alone.
    Verify(VerifyArgs),
    /// Generate, synthesize, and summarize N seeded random instances.
    Batch(BatchArgs),
    /// Emit an endpoint's conic slice geometry (tangency points, samples).
    Geometry(GeometryArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Problem document (JSON with fields `a`, `b`).
    path: Option<PathBuf>,
    /// Inline endpoint `a`: seven descending coefficients, comma-separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "path")]
    a: Option<Vec<String>>,
    /// Inline endpoint `b`: seven descending coefficients, comma-separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "path")]
    b: Option<Vec<String>>,
}

#[derive(Args)]
struct SynthesizeArgs {
    /// Problem document (JSON with fields `a`, `b`, optional `d`).
    path: PathBuf,
    /// Lift direction: seven descending coefficients, comma-separated
    /// (overrides the document's `d`; defaults to (s+1)^6).
    #[arg(long, value_delimiter = ',')]
    d: Option<Vec<String>>,
    /// Write plot-ready real-part curves (omega, re_a, re_b) as CSV.
    #[arg(long, value_name = "CSVPATH")]
    emit_curve: Option<PathBuf>,
    /// Write the certificate document here instead of standard output.
    #[arg(long, value_name = "JSONPATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Certificate document to re-verify.
    cert_path: PathBuf,
}

#[derive(Args)]
struct BatchArgs {
    /// Number of instances (at least 1).
    #[arg(long)]
    count: usize,
    /// Base seed; instance i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for per-instance certificates and summary.json.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

#[derive(Args)]
struct GeometryArgs {
    /// Problem document; the geometry of endpoint `a` is emitted.
    path: PathBuf,
    /// Slice index: 1, 2, or 3.
    #[arg(long)]
    index: u8,
    /// Number of interior ellipse samples to emit.
    #[arg(long, default_value_t = 16)]
    samples: usize,
    /// Write the CSV here instead of standard output.
    #[arg(long, value_name = "CSVPATH")]
    out: Option<PathBuf>,
}

/// Parses command-line arguments, runs the selected command, and returns
/// the process exit code.
pub fn run() -> i32 {
    let _ = env_logger::Builder::from_env(
        env_logger::Env::new().filter_or("SPRFORGE_LOG", "error"),
    )
    .format_timestamp(None)
    .try_init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Check(args) => cmd_check(args, cli.mode),
        Command::Synthesize(args) => cmd_synthesize(args, cli.mode),
        Command::Verify(args) => cmd_verify(args, cli.mode),
        Command::Batch(args) => cmd_batch(args, cli.mode),
        Command::Geometry(args) => cmd_geometry(args, cli.mode),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn load_check_document(args: &CheckArgs) -> Result<ProblemDocument> {
    match (&args.path, &args.a, &args.b) {
        (Some(path), None, None) => ProblemDocument::load(path),
        (None, Some(a), Some(b)) => Ok(ProblemDocument {
            a: a.clone(),
            b: b.clone(),
            d: None,
            seed: None,
        }),
        _ => Err(Error::Parse(
            "provide either a problem document path or both --a and --b".into(),
        )),
    }
}

fn cmd_check(args: CheckArgs, mode: Mode) -> Result<i32> {
    let doc = load_check_document(&args)?;
    let (prob, _) = doc.to_problem()?;
    match mode {
        Mode::Rational => {
            println!("mode: exact rational certification");
            let verdict = segment_stable(&prob);
            let a_ok = verdict.endpoint_reports.0.is_hurwitz();
            let b_ok = verdict.endpoint_reports.1.is_hurwitz();
            println!("endpoint a: {}", if a_ok { "Hurwitz" } else { "NOT Hurwitz" });
            println!("endpoint b: {}", if b_ok { "Hurwitz" } else { "NOT Hurwitz" });
            if let Some(w) = &verdict.crossing_witness {
                println!(
                    "segment: UNSTABLE - boundary crossing near lambda = {} \
                     (omega = {})",
                    rat_to_decimal_string(&w.lambda.mid()),
                    rat_to_decimal_string(&w.omega.mid()),
                );
                println!(
                    "  lambda enclosure: [{}, {}]",
                    rat_to_string(&w.lambda.lo),
                    rat_to_string(&w.lambda.hi)
                );
                println!(
                    "  omega enclosure:  [{}, {}]",
                    rat_to_string(&w.omega.lo),
                    rat_to_string(&w.omega.hi)
                );
            } else if verdict.stable {
                println!("segment: stable for every convex combination");
            } else {
                println!("segment: unstable (an endpoint already fails)");
            }
            Ok(if verdict.stable { EXIT_OK } else { EXIT_REFUSED })
        }
        Mode::Float => {
            println!("mode: floating screening (heuristic, not a certificate)");
            let fa = prob.a().to_float();
            let fb = prob.b().to_float();
            let a_ok = float_hurwitz(&fa);
            let b_ok = float_hurwitz(&fb);
            println!("endpoint a: {}", if a_ok { "Hurwitz" } else { "NOT Hurwitz" });
            println!("endpoint b: {}", if b_ok { "Hurwitz" } else { "NOT Hurwitz" });
            if !(a_ok && b_ok) {
                println!("segment: unstable (an endpoint already fails)");
                return Ok(EXIT_REFUSED);
            }
            let grid = 257usize;
            let failing = (0..=grid).find(|&k| {
                let lam = k as f64 / grid as f64;
                !float_hurwitz(&float_combination(&fa, &fb, lam))
            });
            match failing {
                Some(k) => {
                    println!(
                        "segment: UNSTABLE - combination fails near lambda = {:.6}",
                        k as f64 / grid as f64
                    );
                    Ok(EXIT_REFUSED)
                }
                None => {
                    println!("segment: no instability found on a {}-point grid", grid + 1);
                    Ok(EXIT_OK)
                }
            }
        }
    }
}

fn float_hurwitz(p: &Polynomial<f64>) -> bool {
    routh_hurwitz(p).map(|t| t.is_hurwitz()).unwrap_or(false)
}

fn float_combination(a: &Polynomial<f64>, b: &Polynomial<f64>, lam: f64) -> Polynomial<f64> {
    let coeffs = (0..=6)
        .map(|k| (1.0 - lam) * a.coeff(k) + lam * b.coeff(k))
        .collect();
    Polynomial::from_coeffs(coeffs)
}

fn cmd_synthesize(args: SynthesizeArgs, mode: Mode) -> Result<i32> {
    if mode == Mode::Float {
        eprintln!("float mode cannot emit certificates; rerun with --mode rational");
        return Ok(EXIT_ERROR);
    }
    let doc = ProblemDocument::load(&args.path)?;
    let (prob, doc_d) = doc.to_problem()?;
    let d = match &args.d {
        Some(list) => Some(parse_coefficients(list, "d", true)?),
        None => doc_d,
    };
    let started = Instant::now();
    let outcome = match synthesize(&prob, d) {
        Ok(outcome) => outcome,
        Err(e) => {
            let doc = CertificateDocument::from_error(&prob, doc.seed, &e);
            write_or_stdout(&args.out, &doc.to_json()?)?;
            eprintln!("error: {e}");
            return Ok(EXIT_ERROR);
        }
    };
    let timing_ms = Some(started.elapsed().as_millis() as u64);
    let cert_doc = CertificateDocument::from_outcome(&prob, &outcome, doc.seed, timing_ms);
    write_or_stdout(&args.out, &cert_doc.to_json()?)?;
    if let Some(path) = &args.out {
        println!(
            "verdict: {} (certificate written to {})",
            cert_doc.verdict,
            path.display()
        );
    }
    match &outcome {
        SynthesisOutcome::Certified(cert) => {
            if let Some(csv_path) = &args.emit_curve {
                write_curve_csv(csv_path, &cert.c_tilde, &prob)?;
                println!("real-part curves written to {}", csv_path.display());
            }
            Ok(EXIT_OK)
        }
        _ => {
            if args.emit_curve.is_some() {
                eprintln!("no numerator was synthesized; curve CSV not written");
            }
            Ok(EXIT_REFUSED)
        }
    }
}

/// 1000 log-spaced frequencies in `[1e-4, 1e4]` with both real parts;
/// all rows are strictly positive exactly when the certificate is valid.
fn write_curve_csv(
    path: &std::path::Path,
    c_tilde: &Polynomial<Rat>,
    prob: &SegmentProblem,
) -> Result<()> {
    let c = c_tilde.to_float();
    let fa = prob.a().to_float();
    let fb = prob.b().to_float();
    let mut out = String::from("omega,re_a,re_b\n");
    let steps = 999;
    for k in 0..=steps {
        let omega = 1e-4 * 1e8f64.powf(k as f64 / steps as f64);
        let re_a = real_part_at(&c, &fa, omega);
        let re_b = real_part_at(&c, &fb, omega);
        out.push_str(&format!("{omega:.16e},{re_a:.16e},{re_b:.16e}\n"));
    }
    std::fs::write(path, out)?;
    Ok(())
}

fn cmd_verify(args: VerifyArgs, mode: Mode) -> Result<i32> {
    if mode == Mode::Float {
        eprintln!("float mode cannot verify certificates; rerun with --mode rational");
        return Ok(EXIT_ERROR);
    }
    let doc = CertificateDocument::load(&args.cert_path)?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "unsupported schema_version {:?} (expected {SCHEMA_VERSION:?})",
            doc.schema_version
        )));
    }
    if doc.verdict != "certified" {
        return Err(Error::Parse(format!(
            "verify expects a certificate with verdict \"certified\", got {:?}",
            doc.verdict
        )));
    }
    let (prob, _) = doc.problem.to_problem()?;
    let c_list = doc
        .c_tilde
        .as_ref()
        .ok_or_else(|| Error::Parse("certified document is missing c_tilde".into()))?;
    let c_tilde = parse_coefficients(c_list, "c_tilde", false)?;

    // Everything below recomputes from the parsed values alone; the trace
    // and the intermediate fields are never consulted.
    let report_a = crate::spr::verify_spr(&c_tilde, prob.a());
    let report_b = crate::spr::verify_spr(&c_tilde, prob.b());
    println!("{}", describe_report("a", &report_a));
    println!("{}", describe_report("b", &report_b));
    if report_a.is_spr() && report_b.is_spr() {
        println!("certificate verified");
        Ok(EXIT_OK)
    } else {
        println!("certificate rejected");
        Ok(EXIT_REJECTED)
    }
}

fn describe_report(side: &str, report: &SprReport) -> String {
    if report.is_spr() {
        return format!(
            "side {side}: strictly positive real (float margin {:.3e})",
            report.margin
        );
    }
    let reason = if !report.degree_ok {
        "numerator and denominator degrees differ".to_string()
    } else if !report.denominator_hurwitz {
        "denominator is not Hurwitz".to_string()
    } else {
        match &report.numerator_positive {
            PositivityVerdict::ZeroAt(iv) => format!(
                "real part touches zero at t = omega^2 in [{}, {}]",
                rat_to_string(&iv.lo),
                rat_to_string(&iv.hi)
            ),
            PositivityVerdict::NegativeAt(iv) => format!(
                "real part is negative at t = omega^2 in [{}, {}]",
                rat_to_string(&iv.lo),
                rat_to_string(&iv.hi)
            ),
            PositivityVerdict::Positive => "inconsistent report".to_string(),
        }
    };
    format!("side {side}: REJECTED - {reason}")
}

#[derive(Serialize)]
struct RationalStats {
    min: String,
    median: String,
    max: String,
}

#[derive(Serialize)]
struct FloatStats {
    min: f64,
    median: f64,
    max: f64,
}

#[derive(Serialize)]
struct BatchSummary {
    schema_version: String,
    count: usize,
    certified: usize,
    refused: usize,
    errors: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<RationalStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<RationalStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    margin: Option<FloatStats>,
}

fn rational_stats(values: &mut [Rat]) -> Option<RationalStats> {
    if values.is_empty() {
        return None;
    }
    values.sort();
    let n = values.len();
    let median = if n % 2 == 1 {
        values[n / 2].clone()
    } else {
        (&values[n / 2 - 1] + &values[n / 2]) / rat_i(2)
    };
    Some(RationalStats {
        min: rat_to_string(&values[0]),
        median: rat_to_string(&median),
        max: rat_to_string(&values[n - 1]),
    })
}

fn float_stats(values: &mut [f64]) -> Option<FloatStats> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(|x, y| x.total_cmp(y));
    let n = values.len();
    let median = if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    };
    Some(FloatStats {
        min: values[0],
        median,
        max: values[n - 1],
    })
}

fn cmd_batch(args: BatchArgs, mode: Mode) -> Result<i32> {
    if mode == Mode::Float {
        eprintln!("float mode cannot emit certificates; rerun with --mode rational");
        return Ok(EXIT_ERROR);
    }
    if args.count == 0 {
        return Err(Error::Range("--count must be at least 1".into()));
    }
    std::fs::create_dir_all(&args.out)?;

    let mut certified = 0usize;
    let mut refused = 0usize;
    let mut errors = 0usize;
    let mut failures: Vec<String> = Vec::new();
    let mut epsilons: Vec<Rat> = Vec::new();
    let mut deltas: Vec<Rat> = Vec::new();
    let mut margins: Vec<f64> = Vec::new();
    let mut runtimes: Vec<u64> = Vec::new();

    for i in 0..args.count {
        let seed = args.seed.wrapping_add(i as u64);
        let started = Instant::now();
        let prob = match random_stable_segment(seed, 200) {
            Ok(prob) => prob,
            Err(e) => {
                errors += 1;
                failures.push(format!("instance {i}: generator failed: {e}"));
                continue;
            }
        };
        // timing stays out of batch documents so reruns are byte-identical
        let doc = match synthesize(&prob, None) {
            Ok(outcome) => {
                match &outcome {
                    SynthesisOutcome::Certified(cert) => {
                        certified += 1;
                        epsilons.push(cert.epsilon.clone());
                        deltas.push(cert.delta.clone());
                        margins.push(cert.point.margins.0.min(cert.point.margins.1));
                    }
                    _ => {
                        refused += 1;
                        failures.push(format!("instance {i}: refused"));
                    }
                }
                CertificateDocument::from_outcome(&prob, &outcome, Some(seed), None)
            }
            Err(e) => {
                errors += 1;
                failures.push(format!("instance {i}: {e}"));
                CertificateDocument::from_error(&prob, Some(seed), &e)
            }
        };
        runtimes.push(started.elapsed().as_millis() as u64);
        let path = args.out.join(format!("cert_{i:04}.json"));
        std::fs::write(&path, doc.to_json()?)?;
    }

    runtimes.sort_unstable();
    if let Some(mid) = runtimes.get(runtimes.len() / 2) {
        info!("median instance runtime {mid} ms");
    }

    let summary = BatchSummary {
        schema_version: SCHEMA_VERSION.into(),
        count: args.count,
        certified,
        refused,
        errors,
        failures,
        epsilon: rational_stats(&mut epsilons),
        delta: rational_stats(&mut deltas),
        margin: float_stats(&mut margins),
    };
    let mut summary_json = serde_json::to_string_pretty(&summary)?;
    summary_json.push('\n');
    std::fs::write(args.out.join("summary.json"), &summary_json)?;

    println!("instances  {}", summary.count);
    println!("certified  {}", summary.certified);
    println!("refused    {}", summary.refused);
    println!("errors     {}", summary.errors);
    if let Some(s) = &summary.epsilon {
        println!("epsilon    min {}  median {}  max {}", s.min, s.median, s.max);
    }
    if let Some(s) = &summary.delta {
        println!("delta      min {}  median {}  max {}", s.min, s.median, s.max);
    }
    if let Some(s) = &summary.margin {
        println!(
            "margin     min {:.6e}  median {:.6e}  max {:.6e}",
            s.min, s.median, s.max
        );
    }
    println!(
        "certificates and summary.json written to {}",
        args.out.display()
    );

    Ok(if errors > 0 {
        EXIT_ERROR
    } else if refused > 0 {
        EXIT_REFUSED
    } else {
        EXIT_OK
    })
}

fn cmd_geometry(args: GeometryArgs, mode: Mode) -> Result<i32> {
    if mode == Mode::Float {
        eprintln!("geometry emits exact closed forms; rerun with --mode rational");
        return Ok(EXIT_ERROR);
    }
    if !(1..=3).contains(&args.index) {
        return Err(Error::Range(format!(
            "--index must be 1, 2, or 3, got {}",
            args.index
        )));
    }
    let doc = ProblemDocument::load(&args.path)?;
    let (prob, _) = doc.to_problem()?;
    let a = prob.a();

    let pair = match tangency_points(a, args.index) {
        Ok(pair) => pair,
        Err(Error::NotHurwitz(detail)) => {
            eprintln!("endpoint a must be Hurwitz for geometry inspection: {detail}");
            return Ok(EXIT_REFUSED);
        }
        Err(e) => return Err(e),
    };
    let region = conic_region(a, args.index)?;
    let samples = sample_ellipse(&region, args.samples);

    let mut csv = String::from("kind,x,y,z,p,x_float,y_float,z_float,p_float\n");
    let mut emit = |kind: &str, coords: [Rat; 4]| -> Result<()> {
        if coords.iter().any(|c| !num_traits::Signed::is_positive(c)) {
            return Err(Error::Range(format!(
                "geometry emitted a row outside the open first quadrant ({kind})"
            )));
        }
        let exact: Vec<String> = coords.iter().map(rat_to_string).collect();
        let floats: Vec<String> = coords.iter().map(rat_to_decimal_string).collect();
        csv.push_str(&format!(
            "{kind},{},{}\n",
            exact.join(","),
            floats.join(",")
        ));
        Ok(())
    };
    emit("tangency_first", pair.first.coords())?;
    emit("tangency_second", pair.second.coords())?;
    for pt in &samples {
        emit("sample", pt.coords())?;
    }

    match &args.out {
        Some(path) => {
            std::fs::write(path, csv)?;
            println!(
                "{} rows written to {}",
                2 + samples.len(),
                path.display()
            );
        }
        None => print!("{csv}"),
    }
    Ok(EXIT_OK)
}

fn write_or_stdout(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, content)?;
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
