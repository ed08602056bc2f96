//! Monte-Carlo evaluation: generate a labeled corpus of deformed noisy
//! trajectories and measure the attack success rate by attempt budget.
//!
//!     cargo run --release --example success_curve

use pattern_oracle::{generate_corpus, success_curve, CorpusSpec, GuessConfig};

fn main() {
    let spec = CorpusSpec {
        n_samples: 60,
        max_tilt_deg: 25.0,
        noise_sigma_px: 2.4,
        head_tail_len_px: 80.0,
        seed: 1,
        ..CorpusSpec::default()
    };
    println!("generating {} samples...", spec.n_samples);
    let samples = generate_corpus(&spec);

    let report = success_curve(&samples, 20, &GuessConfig::default());
    println!(
        "evaluated in {:.2}s ({:.0} ms/sample mean)",
        report.timing.total_secs,
        report.timing.mean_secs_per_sample * 1000.0
    );
    println!("\nattempts,success_rate");
    for (i, rate) in report.success_curve.iter().enumerate() {
        if i == 0 || (i + 1) % 5 == 0 {
            println!("{},{rate:.3}", i + 1);
        }
    }

    let misses = report
        .per_pattern
        .iter()
        .filter(|r| r.rank.map_or(true, |rk| rk > 20))
        .count();
    println!("\nsamples not cracked within 20 attempts: {misses}");
}
