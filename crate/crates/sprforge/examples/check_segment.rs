//! Deciding robust Hurwitz stability of a polynomial segment.
//!
//! A segment is the convex combination (1−λ)a(s) + λb(s), λ ∈ [0, 1], of
//! two monic sixth-order polynomials. `segment_stable` decides — exactly,
//! in rational arithmetic — whether every member is Hurwitz, and returns a
//! rational enclosure of a boundary crossing when one exists.
//!
//! Run with: `cargo run --example check_segment`

use sprforge::poly::poly_desc_i64;
use sprforge::rat::{rat_to_f64, rat_to_string};
use sprforge::stability::{
    combination_boundary_residual, random_unstable_segment, segment_stable, SegmentProblem,
};

fn main() -> sprforge::Result<()> {
    // A stable pair: (s+1)^6 and (s+2)^6. Both endpoints are Hurwitz and,
    // as the verdict shows, so is everything between them.
    let a = poly_desc_i64(&[1, 6, 15, 20, 15, 6, 1]);
    let b = poly_desc_i64(&[1, 12, 60, 160, 240, 192, 64]);
    println!("a(s) = {a}");
    println!("b(s) = {b}");

    let prob = SegmentProblem::new(a, b)?;
    let verdict = segment_stable(&prob);
    println!(
        "endpoints Hurwitz: a = {}, b = {}",
        verdict.endpoint_reports.0.is_hurwitz(),
        verdict.endpoint_reports.1.is_hurwitz()
    );
    println!("segment stable: {}\n", verdict.stable);

    // An unstable segment: both endpoints Hurwitz, yet some interior
    // combination touches the imaginary axis. The verdict returns exact
    // enclosures for the crossing parameter λ* and frequency ω*.
    let prob = random_unstable_segment(7, 60)?;
    println!("a(s) = {}", prob.a());
    println!("b(s) = {}", prob.b());
    let verdict = segment_stable(&prob);
    println!(
        "endpoints Hurwitz: a = {}, b = {}",
        verdict.endpoint_reports.0.is_hurwitz(),
        verdict.endpoint_reports.1.is_hurwitz()
    );
    println!("segment stable: {}", verdict.stable);

    let witness = verdict
        .crossing_witness
        .expect("an unstable segment with stable endpoints has a crossing");
    println!(
        "crossing enclosure: lambda in [{}, {}], omega in [{}, {}]",
        rat_to_string(&witness.lambda.lo),
        rat_to_string(&witness.lambda.hi),
        rat_to_string(&witness.omega.lo),
        rat_to_string(&witness.omega.hi),
    );

    // Sanity-check the witness numerically: at the enclosure midpoints the
    // combination nearly vanishes at s = jω (the residual is the squared
    // modulus of the boundary evaluation).
    let residual =
        combination_boundary_residual(&prob, &witness.lambda.mid(), &witness.omega.mid());
    println!(
        "boundary residual at the midpoint: {residual:.3e} (lambda ~ {:.6}, omega ~ {:.6})",
        rat_to_f64(&witness.lambda.mid()),
        rat_to_f64(&witness.omega.mid()),
    );
    Ok(())
}
