//! Anatomy of a strict positive-realness verdict.
//!
//! A ratio c(s)/q(s) is strictly positive real when the degrees match, q is
//! Hurwitz, and Re[c(jω)/q(jω)] > 0 for every ω. The real part's sign is
//! the sign of a polynomial N(t) in t = ω², so the whole-axis claim reduces
//! to exact univariate positivity — decided by Sturm counts, with a
//! rational witness interval whenever it fails.
//!
//! Run with: `cargo run --example spr_report`

use sprforge::poly::poly_desc_i64;
use sprforge::poly::sturm::PositivityVerdict;
use sprforge::rat::{rat_to_f64, rat_to_string};
use sprforge::spr::{real_part_at, real_part_numerator, verify_spr};

fn main() -> sprforge::Result<()> {
    let q = poly_desc_i64(&[1, 6, 15, 20, 15, 6, 1]); // (s+1)^6

    // c = q: the ratio is identically 1, trivially SPR.
    let report = verify_spr(&q, &q);
    println!("c = q:");
    println!("  degrees match: {}", report.degree_ok);
    println!("  denominator Hurwitz: {}", report.denominator_hurwitz);
    println!("  real-part numerator verdict: {:?}", report.numerator_positive);
    println!("  float margin: {:.3e}", report.margin);
    println!("  numerator class: {:?}\n", report.numerator_hurwitz_class);
    assert!(report.is_spr());

    // c = (s+1)^5 (s+2): the ratio collapses to (s+2)/(s+1), whose phase
    // stays strictly inside (−90°, 90°], so this pair is SPR. The exact
    // N(t) confirms it at a glance — every coefficient is positive.
    let c = poly_desc_i64(&[1, 7, 20, 30, 25, 11, 2]);
    let report = verify_spr(&c, &q);
    println!("c = (s+1)^5 (s+2) against q = (s+1)^6:");
    println!("  SPR: {}", report.is_spr());
    assert!(report.is_spr());
    let n = real_part_numerator(&c, &q)?;
    let coeffs: Vec<String> = n.coeffs().iter().rev().map(rat_to_string).collect();
    println!("  N(t) descending coefficients: [{}]\n", coeffs.join(", "));

    // Sixth powers are less forgiving: c = (s+2)^6 makes the ratio
    // ((s+2)/(s+1))^6, which accumulates six copies of that phase lag and
    // swings past −90°. The verdict fails with an exact witness interval
    // in t = ω², which maps to a concrete frequency band.
    let c_bad = poly_desc_i64(&[1, 12, 60, 160, 240, 192, 64]);
    let report = verify_spr(&c_bad, &q);
    println!("c = (s+2)^6 against q = (s+1)^6:");
    println!("  SPR: {}", report.is_spr());
    assert!(!report.is_spr());

    // Cross-check the exact witness on the floating-point side.
    if let PositivityVerdict::NegativeAt(iv) = &report.numerator_positive {
        println!(
            "  real part is negative at t = omega^2 in [{}, {}]",
            rat_to_string(&iv.lo),
            rat_to_string(&iv.hi)
        );
        let omega = rat_to_f64(&iv.mid()).sqrt();
        let re = real_part_at(&c_bad.to_float(), &q.to_float(), omega);
        println!("  float real part at omega = {omega:.4}: {re:.4} (negative, as certified)");
        assert!(re < 0.0);
    } else {
        panic!("expected a negativity witness");
    }
    Ok(())
}
