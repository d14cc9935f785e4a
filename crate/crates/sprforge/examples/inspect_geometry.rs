//! The conic geometry behind the feasible-point search.
//!
//! For a stable sextic, the set where the positivity quartic degenerates
//! slices into three conics, each an ellipse in the open first quadrant of
//! its coordinate plane. The two points where each ellipse touches its
//! axis-parallel tangent lines have exact closed forms; everything strictly
//! inside the ellipse makes the quartic positive away from the origin.
//!
//! Run with: `cargo run --example inspect_geometry`

use sprforge::geometry::{conic_region, sample_ellipse, tangency_points};
use sprforge::poly::poly_desc_i64;
use sprforge::poly::sturm::positive_on_open_pos;
use sprforge::spr::g_coefficients;

fn main() -> sprforge::Result<()> {
    let a = poly_desc_i64(&[1, 6, 15, 20, 15, 6, 1]); // (s+1)^6
    println!("a(s) = {a}\n");

    for index in 1..=3u8 {
        let pair = tangency_points(&a, index)?;
        println!("slice {index}:");
        println!("  tangency points {} and {}", pair.first, pair.second);

        let region = conic_region(&a, index)?;
        println!(
            "  conic discriminant negative (ellipse): {}",
            region.is_ellipse()
        );

        // Interior samples: each one certifies as a positive quartic.
        let samples = sample_ellipse(&region, 3);
        for pt in &samples {
            let g = g_coefficients(&a, pt).to_polynomial();
            let positive = positive_on_open_pos(&g).is_positive();
            println!("  sample {pt}: quartic positive on (0, inf) = {positive}");
            assert!(positive, "interior samples always certify");
        }
        println!();
    }

    // The midpoint of a tangency pair is strictly inside its ellipse, so it
    // certifies too: these midpoints seed the synthesis search.
    let pair = tangency_points(&a, 1)?;
    let mid = pair.first.lerp(&pair.second, &sprforge::rat::rat(1, 2));
    let g = g_coefficients(&a, &mid).to_polynomial();
    println!("slice-1 midpoint {mid}");
    println!(
        "midpoint quartic positive: {}",
        positive_on_open_pos(&g).is_positive()
    );
    Ok(())
}
