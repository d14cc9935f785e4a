//! Wire formats: the problem and certificate documents exchanged on disk.
//!
//! Coefficients travel as exact strings (`"38/3"`; decimals are accepted on
//! input and converted exactly), descending powers, leading `"1"` for the
//! two monic endpoints. Certificates embed everything re-verification
//! needs — the problem, the lift direction actually used, and the final
//! numerator — so a parsed document stands on its own.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rat::{parse_rat, rat_to_string, Rat};
use crate::stability::SegmentProblem;
use crate::synthesis::SynthesisOutcome;
use num_traits::One;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

/// A segment problem as it appears on disk or inline on the command line.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemDocument {
    /// Endpoint `a`: seven descending coefficients, leading `"1"`.
    pub a: Vec<String>,
    /// Endpoint `b`: seven descending coefficients, leading `"1"`.
    pub b: Vec<String>,
    /// Optional lift direction (seven descending coefficients, leading `"1"`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<String>>,
    /// Optional provenance seed (recorded by the batch generator).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Witness payload for refusal verdicts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessDocument {
    /// `"endpoint"` or `"crossing"`.
    pub kind: String,
    /// For endpoint refusals: which endpoint (`"a"` or `"b"`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoint: Option<String>,
    /// For crossing refusals: exact enclosure `[lo, hi]` of the combination
    /// parameter at which stability is lost.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<[String; 2]>,
    /// For crossing refusals: exact enclosure `[lo, hi]` of the boundary
    /// frequency of the unstable combination.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<[String; 2]>,
}

/// A synthesis result as it appears on disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema_version: String,
    /// `"certified"`, `"segment_unstable"`, `"endpoint_unstable"`, or `"error"`.
    pub verdict: String,
    /// The problem solved; for certified runs `d` records the lift
    /// direction actually used.
    pub problem: ProblemDocument,
    /// Certified candidate point `(x, y, z, p)`, exact.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<[String; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    /// The common numerator, seven descending coefficients (leading = δ).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_tilde: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDocument>,
    /// For verdict `"error"`: what the search reported.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Human-readable decision trail (informational; never trusted by the
    /// verifier).
    pub trace: Vec<String>,
    /// Wall-clock milliseconds for single runs; omitted in batch mode so
    /// outputs stay byte-deterministic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// Parses one coefficient with field context for error messages.
pub fn parse_coefficient(text: &str, field: &str, index: usize) -> Result<Rat> {
    parse_rat(text).map_err(|e| match e {
        Error::Parse(detail) => Error::Parse(format!("{field}[{index}]: {detail}")),
        other => other,
    })
}

/// Parses a seven-entry descending coefficient list into a polynomial.
/// When `require_monic` is set, the leading entry must parse to exactly 1.
pub fn parse_coefficients(
    list: &[String],
    field: &str,
    require_monic: bool,
) -> Result<Polynomial<Rat>> {
    if list.len() != 7 {
        return Err(Error::Parse(format!(
            "{field}: expected 7 coefficients (descending powers), got {}",
            list.len()
        )));
    }
    let mut coeffs = Vec::with_capacity(7);
    for (i, entry) in list.iter().enumerate() {
        coeffs.push(parse_coefficient(entry, field, i)?);
    }
    if require_monic && !coeffs[0].is_one() {
        return Err(Error::Parse(format!(
            "{field}[0]: leading coefficient must parse to 1, got {:?}",
            list[0]
        )));
    }
    Ok(Polynomial::from_descending(coeffs))
}

/// Renders a degree-≤6 polynomial as seven descending exact strings.
pub fn poly_to_strings(p: &Polynomial<Rat>) -> Vec<String> {
    (0..7).rev().map(|k| rat_to_string(&p.coeff(k))).collect()
}

impl ProblemDocument {
    pub fn from_problem(prob: &SegmentProblem, seed: Option<u64>) -> Self {
        ProblemDocument {
            a: poly_to_strings(prob.a()),
            b: poly_to_strings(prob.b()),
            d: None,
            seed,
        }
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let doc: ProblemDocument = serde_json::from_str(&text)?;
        Ok(doc)
    }

    /// Validates and converts into a segment problem plus the optional
    /// parsed lift direction.
    pub fn to_problem(&self) -> Result<(SegmentProblem, Option<Polynomial<Rat>>)> {
        let a = parse_coefficients(&self.a, "a", true)?;
        let b = parse_coefficients(&self.b, "b", true)?;
        let d = match &self.d {
            Some(list) => Some(parse_coefficients(list, "d", true)?),
            None => None,
        };
        Ok((SegmentProblem::new(a, b)?, d))
    }
}

impl CertificateDocument {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let doc: CertificateDocument = serde_json::from_str(&text)?;
        Ok(doc)
    }

    /// Builds the document for a completed synthesis run.
    pub fn from_outcome(
        prob: &SegmentProblem,
        outcome: &SynthesisOutcome,
        seed: Option<u64>,
        timing_ms: Option<u64>,
    ) -> Self {
        let mut problem = ProblemDocument::from_problem(prob, seed);
        match outcome {
            SynthesisOutcome::Certified(cert) => {
                problem.d = Some(poly_to_strings(&cert.lift_direction));
                CertificateDocument {
                    schema_version: SCHEMA_VERSION.into(),
                    verdict: "certified".into(),
                    problem,
                    point: Some(cert.point.point.coords().map(|r| rat_to_string(&r))),
                    epsilon: Some(rat_to_string(&cert.epsilon)),
                    delta: Some(rat_to_string(&cert.delta)),
                    c_tilde: Some(poly_to_strings(&cert.c_tilde)),
                    witness: None,
                    error: None,
                    trace: cert.trace.iter().map(|s| s.to_string()).collect(),
                    timing_ms,
                }
            }
            SynthesisOutcome::EndpointUnstable { which, trace } => CertificateDocument {
                schema_version: SCHEMA_VERSION.into(),
                verdict: "endpoint_unstable".into(),
                problem,
                point: None,
                epsilon: None,
                delta: None,
                c_tilde: None,
                witness: Some(WitnessDocument {
                    kind: "endpoint".into(),
                    endpoint: Some(which.to_string()),
                    lambda: None,
                    omega: None,
                }),
                error: None,
                trace: trace.iter().map(|s| s.to_string()).collect(),
                timing_ms,
            },
            SynthesisOutcome::SegmentUnstable { witness, trace } => CertificateDocument {
                schema_version: SCHEMA_VERSION.into(),
                verdict: "segment_unstable".into(),
                problem,
                point: None,
                epsilon: None,
                delta: None,
                c_tilde: None,
                witness: Some(WitnessDocument {
                    kind: "crossing".into(),
                    endpoint: None,
                    lambda: Some([
                        rat_to_string(&witness.lambda.lo),
                        rat_to_string(&witness.lambda.hi),
                    ]),
                    omega: Some([
                        rat_to_string(&witness.omega.lo),
                        rat_to_string(&witness.omega.hi),
                    ]),
                }),
                error: None,
                trace: trace.iter().map(|s| s.to_string()).collect(),
                timing_ms,
            },
        }
    }

    /// Builds the document for a run that failed with an internal error.
    pub fn from_error(prob: &SegmentProblem, seed: Option<u64>, error: &Error) -> Self {
        CertificateDocument {
            schema_version: SCHEMA_VERSION.into(),
            verdict: "error".into(),
            problem: ProblemDocument::from_problem(prob, seed),
            point: None,
            epsilon: None,
            delta: None,
            c_tilde: None,
            witness: None,
            error: Some(error.to_string()),
            trace: Vec::new(),
            timing_ms: None,
        }
    }

    /// Serializes with a trailing newline (the canonical byte form).
    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    fn strings(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn coefficient_lists_round_trip() {
        let list = strings(&["1", "6", "15", "20", "15", "6", "1"]);
        let p = parse_coefficients(&list, "a", true).unwrap();
        assert_eq!(p.degree(), Some(6));
        assert_eq!(poly_to_strings(&p), list);

        let mixed = strings(&["1", "4.5", "38/3", "20", "15", "6", "0.25"]);
        let p = parse_coefficients(&mixed, "a", true).unwrap();
        assert_eq!(p.coeff(5), rat(9, 2));
        assert_eq!(p.coeff(4), rat(38, 3));
        assert_eq!(p.coeff(0), rat(1, 4));
        assert_eq!(
            poly_to_strings(&p),
            strings(&["1", "9/2", "38/3", "20", "15", "6", "1/4"])
        );
    }

    #[test]
    fn malformed_lists_are_rejected_with_field_context() {
        let six = strings(&["1", "6", "15", "20", "15", "6"]);
        let err = parse_coefficients(&six, "b", true).unwrap_err();
        assert!(err.to_string().contains("b: expected 7"));

        let bad = strings(&["1", "6", "15", "2x", "15", "6", "1"]);
        let err = parse_coefficients(&bad, "a", true).unwrap_err();
        assert!(err.to_string().contains("a[3]"));

        let not_monic = strings(&["2", "6", "15", "20", "15", "6", "1"]);
        let err = parse_coefficients(&not_monic, "a", true).unwrap_err();
        assert!(err.to_string().contains("leading coefficient"));

        // decimals that parse to exactly 1 satisfy the monic requirement
        let decimal_one = strings(&["1.0", "6", "15", "20", "15", "6", "1"]);
        assert!(parse_coefficients(&decimal_one, "a", true).is_ok());
    }

    #[test]
    fn problem_document_validates_and_converts() {
        let doc = ProblemDocument {
            a: strings(&["1", "6", "15", "20", "15", "6", "1"]),
            b: strings(&["1", "12", "60", "160", "240", "192", "64"]),
            d: None,
            seed: Some(9),
        };
        let (prob, d) = doc.to_problem().unwrap();
        assert!(d.is_none());
        assert_eq!(prob.a().coeff(0), rat_i(1));
        assert_eq!(prob.b().coeff(0), rat_i(64));

        let json = serde_json::to_string(&doc).unwrap();
        assert!(!json.contains("\"d\""));
        let back: ProblemDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back.seed, Some(9));
    }
}
