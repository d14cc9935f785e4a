//! Acceptance sweep: nine end-to-end properties of the synthesis pipeline,
//! one test per property, each printing a single pass line (run with
//! `cargo test --test acceptance -- --nocapture` to see them).
//!
//! Library properties run in exact rational arithmetic with zero tolerance;
//! floating point appears only where an independent numeric oracle is the
//! point of the check.

use std::process::Command;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sprforge::geometry::{conic_region, tangency_points};
use sprforge::poly::sturm::{Bound, SturmChain};
use sprforge::poly::{poly_desc_i64, Polynomial};
use sprforge::rat::{rat, rat_i, rat_to_f64, Rat};
use sprforge::spr::{
    epsilon_tail, g_coefficients, real_part_numerator, verify_spr, CandidatePoint,
};
use sprforge::stability::{
    combination_boundary_residual, random_stable_segment, random_stable_sextic,
    random_unstable_segment, segment_grid_check, segment_stable, SegmentProblem,
};
use sprforge::synthesis::{synthesize, tangent_plane_residual, SynthesisOutcome};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sprforge"))
}

/// Collects `n` generated problems, skipping seeds the generator exhausts.
fn collect_problems(
    n: usize,
    mut seed: u64,
    generate: impl Fn(u64) -> sprforge::Result<SegmentProblem>,
) -> Vec<SegmentProblem> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        if let Ok(prob) = generate(seed) {
            out.push(prob);
        }
        seed += 1;
    }
    out
}

fn certify(prob: &SegmentProblem) -> sprforge::synthesis::SprCertificate {
    match synthesize(prob, None).expect("search must not give up on a stable segment") {
        SynthesisOutcome::Certified(cert) => *cert,
        other => panic!("expected a certificate, got a refusal: {other:?}"),
    }
}

fn random_positive_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(1..=64), rng.gen_range(1..=16))
}

fn random_signed_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-64..=64), rng.gen_range(1..=16))
}

/// 1. Five hundred seeded instances batch-certify through the binary and
///    every emitted document independently re-verifies in exact mode.
#[test]
fn batch_of_five_hundred_certifies_and_reverifies() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("batch");
    let started = std::time::Instant::now();
    let out = bin()
        .args([
            "batch",
            "--count",
            "500",
            "--seed",
            "42",
            "--out",
            out_dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    let batch_secs = started.elapsed().as_secs_f64();
    assert_eq!(
        out.status.code(),
        Some(0),
        "batch run failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );

    let mut reverified = 0usize;
    for i in 0..500 {
        let path = out_dir.join(format!("cert_{i:04}.json"));
        let doc: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(doc["verdict"], "certified", "instance {i} not certified");
        let verify = bin().args(["verify", path.to_str().unwrap()]).output().unwrap();
        assert_eq!(
            verify.status.code(),
            Some(0),
            "instance {i} failed independent re-verification",
        );
        reverified += 1;
    }
    println!(
        "acceptance 1/9: PASS — batch of 500 (seed 42) fully certified in {batch_secs:.1}s; \
         {reverified}/500 documents re-verified independently with exit 0"
    );
}

/// 2. Fifty stable-endpoint segments with interior instability are refused,
///    each with a crossing witness that floating evaluation confirms.
#[test]
fn unstable_segments_are_refused_with_confirmed_witnesses() {
    let problems = collect_problems(50, 0, |seed| random_unstable_segment(seed, 40));
    for (i, prob) in problems.iter().enumerate() {
        let outcome = synthesize(prob, None).unwrap();
        let witness = match outcome {
            SynthesisOutcome::SegmentUnstable { witness, .. } => witness,
            other => panic!("instance {i}: expected a segment refusal, got {other:?}"),
        };
        let residual =
            combination_boundary_residual(prob, &witness.lambda.mid(), &witness.omega.mid());
        assert!(
            residual < 1e-6,
            "instance {i}: witness residual {residual:e} is not small"
        );
    }
    println!(
        "acceptance 2/9: PASS — 50 stable-endpoint/unstable-segment instances refused with \
         crossing witnesses, every |a_λ(jω)|² below 1e-6; zero certificates emitted"
    );
}

/// 3. Two hundred random stable sextics, three slices each: every slice is
///    an ellipse, every tangency point satisfies its planes and quadric
///    exactly, sits in the open first quadrant, and is a double root of the
///    conic restricted to its tangent line.
#[test]
fn elliptic_slices_and_tangencies_are_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0003);
    for sample in 0..200 {
        let a = random_stable_sextic(rng.gen(), &rat_i(1));
        for index in 1..=3u8 {
            let region = conic_region(&a, index).unwrap();
            assert!(
                region.conic.discriminant().is_negative(),
                "sample {sample} slice {index}: discriminant not strictly negative"
            );
            let pair = tangency_points(&a, index).unwrap();
            for (li, pt) in [(0usize, &pair.first), (1, &pair.second)] {
                assert!(
                    pt.all_positive(),
                    "sample {sample} slice {index}: tangency left the first quadrant"
                );
                for plane in &region.plane {
                    assert!(plane.eval(pt).is_zero(), "plane residual nonzero");
                }
                assert!(region.quadric.eval(pt).is_zero(), "quadric residual nonzero");

                // Restrict the plane conic to the tangent line through the
                // chart: the restriction must be a genuine quadratic with a
                // double root exactly at the tangency point.
                let line_form = &pair.tangent_lines[li][2];
                let at = |u: &Rat, v: &Rat| line_form.eval(&region.chart.point_at(u, v));
                let c0 = at(&Rat::zero(), &Rat::zero());
                let cu = at(&Rat::one(), &Rat::zero()) - &c0;
                let cv = at(&Rat::zero(), &Rat::one()) - &c0;
                assert!(!(cu.is_zero() && cv.is_zero()), "line form is constant on the slice");
                let (u0, v0) = region.chart.coords_of(pt);
                let phi = |tau: i64| {
                    let t = rat_i(tau);
                    region.conic.eval(&(&u0 + &t * &cv), &(&v0 - &t * &cu))
                };
                let gamma = phi(0);
                let alpha = (phi(1) + phi(-1)) / rat_i(2) - &gamma;
                let beta = (phi(1) - phi(-1)) / rat_i(2);
                assert!(gamma.is_zero(), "tangency point is off its conic");
                assert!(!alpha.is_zero(), "tangent line restriction is not quadratic");
                assert!(
                    (&beta * &beta - rat_i(4) * &alpha * &gamma).is_zero(),
                    "sample {sample} slice {index}: restricted discriminant is nonzero"
                );
            }
        }
    }
    println!(
        "acceptance 3/9: PASS — 200 sextics × 3 slices: every conic elliptic, every tangency \
         exact on planes and quadric, double root on its line, coordinates strictly positive"
    );
}

/// 4. The quintic candidate's real-part numerator obeys N(t) = t·g(t) + ε·h(t)
///    coefficient-for-coefficient, and differencing in ε recovers h exactly.
#[test]
fn numerator_identity_and_epsilon_derivative_hold_exactly() {
    fn quintic(pt: &CandidatePoint, eps: &Rat) -> Polynomial<Rat> {
        Polynomial::from_descending(vec![
            Rat::one(),
            &pt.x - eps,
            pt.y.clone(),
            pt.z.clone(),
            pt.p.clone(),
            eps.clone(),
        ])
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0004);
    for case in 0..100 {
        let a = random_stable_sextic(rng.gen(), &rat_i(1));
        let pt = CandidatePoint::new(
            random_positive_rat(&mut rng),
            random_positive_rat(&mut rng),
            random_positive_rat(&mut rng),
            random_positive_rat(&mut rng),
        );
        let eps = &pt.x * rat(rng.gen_range(1..=15), 16);
        let g = g_coefficients(&a, &pt).to_polynomial();
        let h = epsilon_tail(&a);

        let n = real_part_numerator(&quintic(&pt, &eps), &a).unwrap();
        let expected = &g.shift_up(1) + &h.scale(&eps);
        assert_eq!(n, expected, "case {case}: numerator identity broke");

        // h is the ε-derivative: N(ε₁) − N(ε₂) = (ε₁ − ε₂)·h, symbolically.
        let eps2 = &eps / rat_i(3);
        let n2 = real_part_numerator(&quintic(&pt, &eps2), &a).unwrap();
        let diff = &eps - &eps2;
        assert_eq!(n, &n2 + &h.scale(&diff), "case {case}: differencing missed h");
    }
    println!(
        "acceptance 4/9: PASS — numerator identity N = t·g + ε·h exact on 100 random triples, \
         and the ε-difference quotient reproduces h coefficient-for-coefficient"
    );
}

/// 5. Halving the lift size keeps certificates valid: for 50 fresh
///    certificates, the degree-6 numerator passes on both endpoints with a
///    strictly positive numerator at zero, and the δ/2 lift passes too.
#[test]
fn half_delta_lifts_still_verify() {
    let problems = collect_problems(50, 5_000, |seed| random_stable_segment(seed, 100));
    for (i, prob) in problems.iter().enumerate() {
        let cert = certify(prob);
        assert_eq!(cert.c_tilde.degree(), Some(6), "instance {i}: wrong degree");
        assert!(
            cert.reports.0.is_spr() && cert.reports.1.is_spr(),
            "instance {i}: shipped reports must both pass"
        );
        for q in [prob.a(), prob.b()] {
            let n = real_part_numerator(&cert.c_tilde, q).unwrap();
            assert!(
                n.coeff(0).is_positive(),
                "instance {i}: N(0) must be strictly positive"
            );
        }
        let half = &cert.delta / rat_i(2);
        let c_half = &cert.quintic + &cert.lift_direction.scale(&half);
        assert!(
            verify_spr(&c_half, prob.a()).is_spr() && verify_spr(&c_half, prob.b()).is_spr(),
            "instance {i}: δ/2 lift failed"
        );
    }
    println!(
        "acceptance 5/9: PASS — 50 certificates: degree-6 numerators, strict N(0) > 0 on both \
         endpoints, and every δ/2 lift verifies as well"
    );
}

/// 6. One numerator serves the whole segment: for 100 certificates, the
///    shipped c̃ is strictly positive real against every combination λ = k/16.
#[test]
fn certificates_cover_the_whole_segment() {
    let problems = collect_problems(100, 6_000, |seed| random_stable_segment(seed, 100));
    for (i, prob) in problems.iter().enumerate() {
        let cert = certify(prob);
        for k in 0..=16i64 {
            let member = prob.combination(&rat(k, 16)).unwrap();
            assert!(
                verify_spr(&cert.c_tilde, &member).is_spr(),
                "instance {i}: not positive real at λ = {k}/16"
            );
        }
    }
    println!(
        "acceptance 6/9: PASS — 100 certificates verified against all 17 combinations λ = k/16 \
         of their segment, exact arithmetic throughout"
    );
}

/// 7. Two independent oracles: the exact segment decision against a
///    1001-point sweep (the sweep may only miss instability, never overrule
///    stability, and every miss is explained by a crossing between adjacent
///    sweep points), and Sturm root counts against companion-matrix
///    eigenvalues.
#[test]
fn grid_and_eigenvalue_oracles_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0007);
    let mut grid_misses = 0usize;
    let mut unstable = 0usize;
    for i in 0..500 {
        let a = random_stable_sextic(rng.gen(), &rat_i(1));
        let b = random_stable_sextic(rng.gen(), &rat_i(rng.gen_range(1..=5)));
        let prob = SegmentProblem::new(a, b).unwrap();
        let verdict = segment_stable(&prob);
        let sweep_ok = segment_grid_check(&prob, 1000);
        if verdict.stable {
            assert!(
                sweep_ok,
                "instance {i}: sweep found an unstable member of a certified-stable segment"
            );
        } else {
            unstable += 1;
            if sweep_ok {
                // The sweep stepped over the unstable stretch; the exact
                // decision must pin it between two adjacent sweep points.
                grid_misses += 1;
                let w = verdict
                    .crossing_witness
                    .as_ref()
                    .expect("an interior crossing explains the miss");
                assert!(
                    rat_to_f64(&w.lambda.width()) < 1e-3,
                    "instance {i}: witness enclosure wider than the sweep spacing"
                );
                let residual =
                    combination_boundary_residual(&prob, &w.lambda.mid(), &w.omega.mid());
                assert!(residual < 1e-6, "instance {i}: witness residual {residual:e}");
            }
        }
    }

    let mut checked = 0usize;
    while checked < 500 {
        let deg = rng.gen_range(1..=8usize);
        let coeffs: Vec<Rat> = (0..=deg).map(|_| rat_i(rng.gen_range(-9..=9))).collect();
        let p = Polynomial::from_coeffs(coeffs);
        if p.degree() != Some(deg) {
            continue;
        }
        let chain = SturmChain::new(&p).unwrap();
        if chain.squarefree().degree() != Some(deg) {
            continue; // repeated roots would make the multiplicity conventions differ
        }
        let sturm = chain.count_roots(&Bound::NegInf, &Bound::PosInf);
        let eigen = real_eigenvalue_count(&p);
        assert_eq!(sturm, eigen, "root-count mismatch for {p}");
        checked += 1;
    }
    println!(
        "acceptance 7/9: PASS — 500 segment verdicts consistent with the 1001-point sweep \
         ({unstable} unstable, {grid_misses} crossings the sweep stepped over, each pinned by an \
         exact witness); 500 Sturm root counts match companion-matrix eigenvalues"
    );
}

/// Number of real roots of `p` according to a floating companion-matrix
/// eigenvalue solver (reality tolerance 1e-8, scaled).
fn real_eigenvalue_count(p: &Polynomial<Rat>) -> usize {
    let float = p.to_float();
    let coeffs = float.coeffs();
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let mat = nalgebra::DMatrix::<f64>::from_fn(deg, deg, |r, c| {
        if c == deg - 1 {
            -coeffs[r] / lead
        } else if r == c + 1 {
            1.0
        } else {
            0.0
        }
    });
    mat.complex_eigenvalues()
        .iter()
        .filter(|ev| ev.im.abs() <= 1e-8 * (1.0 + ev.re.abs()))
        .count()
}

/// 8. The boundary-residual functional is affine along segments: the blend's
///    residual equals the λ-mix of the endpoint residuals, exactly.
#[test]
fn boundary_residual_is_affine_along_segments() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0008);
    for case in 0..100 {
        let tail = |rng: &mut ChaCha8Rng| {
            let mut coeffs = vec![Rat::one()];
            coeffs.extend((0..6).map(|_| random_signed_rat(rng)));
            Polynomial::from_descending(coeffs)
        };
        let a = tail(&mut rng);
        let b = tail(&mut rng);
        let u = random_signed_rat(&mut rng);
        let v = random_signed_rat(&mut rng);
        let lambda = rat(rng.gen_range(0..=32), 32);
        let blend = &a.scale(&(Rat::one() - &lambda)) + &b.scale(&lambda);
        let lhs = tangent_plane_residual(&blend, &u, &v);
        let rhs = (Rat::one() - &lambda) * tangent_plane_residual(&a, &u, &v)
            + &lambda * tangent_plane_residual(&b, &u, &v);
        assert_eq!(lhs, rhs, "case {case}: residual is not affine in λ");
    }
    println!(
        "acceptance 8/9: PASS — 100 exact identities: the blend's boundary residual is the \
         λ-affine mix of the endpoint residuals"
    );
}

/// 9. Pinned clean instance: the first slice of (s+1)^6 touches its tangent
///    line exactly at (6, 38/3, 6, 1), both in-library and through the
///    command-line surface.
#[test]
fn golden_tangency_of_the_shifted_binomial() {
    let a = poly_desc_i64(&[1, 6, 15, 20, 15, 6, 1]);
    let pair = tangency_points(&a, 1).unwrap();
    assert_eq!(
        pair.first.coords(),
        [rat_i(6), rat(38, 3), rat_i(6), rat_i(1)],
        "closed-form tangency moved"
    );

    let dir = tempfile::tempdir().unwrap();
    let prob = SegmentProblem::new(a.clone(), a).unwrap();
    let doc = sprforge::cli::documents::ProblemDocument::from_problem(&prob, None);
    let path = dir.path().join("problem.json");
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    let out = bin()
        .args(["geometry", path.to_str().unwrap(), "--index", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    let first_row = text.lines().nth(1).expect("a data row");
    assert!(
        first_row.starts_with("tangency_first,6,38/3,6,1,"),
        "golden CSV row changed: {first_row}"
    );
    println!(
        "acceptance 9/9: PASS — slice 1 of (s+1)^6 touches its line exactly at (6, 38/3, 6, 1), \
         in-library and through the command line"
    );
}
