//! Certificate round-trip: serialize, parse, and re-verify from the
//! serialized values alone.
//!
//! A certificate document embeds everything a skeptical reader needs — the
//! problem and the final numerator as exact rational strings. This example
//! synthesizes one, round-trips it through JSON, re-verifies it without
//! consulting the trace, then perturbs one coefficient and watches the
//! verifier reject it with an exact witness.
//!
//! Run with: `cargo run --example verify_certificate`

use sprforge::cli::documents::{parse_coefficients, CertificateDocument};
use sprforge::poly::poly_desc_i64;
use sprforge::spr::verify_spr;
use sprforge::stability::SegmentProblem;
use sprforge::synthesis::synthesize;

fn main() -> sprforge::Result<()> {
    let a = poly_desc_i64(&[1, 6, 15, 20, 15, 6, 1]);
    let b = poly_desc_i64(&[1, 9, 33, 63, 66, 36, 8]); // (s+1)^3 (s+2)^3
    let prob = SegmentProblem::new(a, b)?;

    let outcome = synthesize(&prob, None)?;
    let doc = CertificateDocument::from_outcome(&prob, &outcome, None, None);
    let json = doc.to_json()?;
    println!("serialized certificate: {} bytes of JSON", json.len());

    // Parse back and re-verify from the parsed values alone.
    let parsed: CertificateDocument = serde_json::from_str(&json).expect("round trip");
    assert_eq!(parsed.verdict, "certified");
    let (prob2, _) = parsed.problem.to_problem()?;
    let c_list = parsed.c_tilde.as_ref().expect("certified docs carry c~");
    let c_tilde = parse_coefficients(c_list, "c_tilde", false)?;

    let ra = verify_spr(&c_tilde, prob2.a());
    let rb = verify_spr(&c_tilde, prob2.b());
    println!("re-verified c~/a: {}", ra.is_spr());
    println!("re-verified c~/b: {}\n", rb.is_spr());
    assert!(ra.is_spr() && rb.is_spr());

    // Tamper with one coefficient — flip the sign of the constant term —
    // and re-verify: the real part at zero frequency turns negative, and
    // the report pins an exact band in t = omega^2 where it fails.
    let mut tampered = c_list.clone();
    let flipped = -sprforge::rat::parse_rat(&c_list[6])?;
    tampered[6] = sprforge::rat::rat_to_string(&flipped);

    let c_bad = parse_coefficients(&tampered, "c_tilde", false)?;
    let ra_bad = verify_spr(&c_bad, prob2.a());
    println!("tampered c~/a still SPR: {}", ra_bad.is_spr());
    if let sprforge::poly::sturm::PositivityVerdict::NegativeAt(iv) = &ra_bad.numerator_positive {
        println!(
            "rejection detail: real part is negative at t = omega^2 in [{}, {}]",
            sprforge::rat::rat_to_string(&iv.lo),
            sprforge::rat::rat_to_string(&iv.hi)
        );
    }
    assert!(!ra_bad.is_spr());
    Ok(())
}
