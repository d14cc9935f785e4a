//! Seeded batch synthesis: generate random robustly stable segments and
//! certify every one of them.
//!
//! The generator pairs a random stable sextic with a shrinking perturbation
//! of itself and keeps only verified-stable segments, so the sufficiency
//! direction of the pipeline should certify each instance. The loop below
//! is the library-level core of the `batch` subcommand.
//!
//! Run with: `cargo run --example batch_run`

use sprforge::rat::{rat_to_f64, rat_to_string};
use sprforge::stability::random_stable_segment;
use sprforge::synthesis::{synthesize, SynthesisOutcome};

fn main() -> sprforge::Result<()> {
    let base_seed = 2024u64;
    let count = 4;
    let mut certified = 0;

    println!("seed  epsilon      delta    worst margin");
    for i in 0..count {
        let prob = random_stable_segment(base_seed + i, 200)?;
        match synthesize(&prob, None)? {
            SynthesisOutcome::Certified(cert) => {
                certified += 1;
                println!(
                    "{:<5} {:<12} {:<8} {:.3e}",
                    base_seed + i,
                    rat_to_string(&cert.epsilon),
                    rat_to_string(&cert.delta),
                    cert.point.margins.0.min(cert.point.margins.1),
                );
                // Every certificate re-verifies on both endpoints.
                assert!(cert.reports.0.is_spr() && cert.reports.1.is_spr());
                // The chosen epsilon is a compact power of two.
                assert!(rat_to_f64(&cert.epsilon) > 0.0);
            }
            other => println!("{:<5} refused: {other:?}", base_seed + i),
        }
    }
    println!("\ncertified {certified} of {count} generated segments");
    Ok(())
}
