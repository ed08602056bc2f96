//! Round trip: synthesize a camera-deformed, noisy trajectory for a known
//! pattern, then recover a ranked guess list from it.
//!
//!     cargo run --release --example synth_and_guess

use pattern_oracle::synth::SynthConfig;
use pattern_oracle::{guess, synthesize_trajectory, GuessConfig, Pattern};

fn main() {
    let pattern: Pattern = "1-6-8-3".parse().expect("valid pattern literal");
    let cfg = SynthConfig {
        camera_tilt_deg: (18.0, -6.0, 10.0),
        noise_sigma_px: 2.4,
        head_tail_len_px: 80.0,
        rng_seed: 7,
        ..SynthConfig::new(pattern.clone())
    };
    let t = synthesize_trajectory(&cfg);
    println!(
        "synthesized {} sampled points for {pattern} (tilt {:?}, sigma {} px)",
        t.points.len(),
        cfg.camera_tilt_deg,
        cfg.noise_sigma_px
    );

    let list = guess(std::slice::from_ref(&t), &GuessConfig::default())
        .expect("the synthetic track passes the validity check");
    println!("\ntop 10 of {} candidates:", list.entries.len());
    print!("{}", list.truncated(10).to_text());
    match list.rank_of(&pattern) {
        Some(r) => println!("\nground truth ranked #{r}"),
        None => println!("\nground truth missing from the list"),
    }
}
