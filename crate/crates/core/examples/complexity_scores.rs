//! Score pattern complexity C = S * log2(L + I + O) for a few hand-picked
//! patterns, then histogram the whole space.
//!
//!     cargo run --release --example complexity_scores

use pattern_oracle::{complexity_score, enumerate_valid_patterns, score_histogram, Pattern};

fn main() {
    for text in ["1-2-3-6", "1-6-8-3", "2-1-3-6", "5-2-6-1-8-3-9-4-7"] {
        let pattern: Pattern = text.parse().expect("valid pattern literal");
        let c = complexity_score(&pattern);
        println!(
            "{text:<20} S={} L={:.3} I={} O={}  ->  C={:.4}",
            c.connected_dots, c.total_length, c.intersections, c.overlaps, c.score
        );
    }

    let scores: Vec<f64> = enumerate_valid_patterns()
        .map(|p| complexity_score(&p).score)
        .collect();
    let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    println!("\nmax score over all {} patterns: {max:.4}", scores.len());

    println!("\nscore histogram (bucket width 6):");
    for (label, count) in score_histogram(scores.into_iter()) {
        println!("  {label:>5}: {count:>6}");
    }
}
