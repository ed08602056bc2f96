//! The inference pipeline, stage by stage: simplify to turning points, cut
//! into units, grow candidates middle-out, filter by crossing structure,
//! rank.
//!
//!     cargo run --release --example pipeline_stages

use pattern_oracle::engine::{consistency_filter, generate_candidates, rank, EngineConfig};
use pattern_oracle::rdp::prune_shallow_vertices;
use pattern_oracle::synth::SynthConfig;
use pattern_oracle::unit::extract_units;
use pattern_oracle::{default_epsilon, rdp_simplify, synthesize_trajectory, Pattern};

fn main() {
    let pattern: Pattern = "3-5-9-4-1-2-7-8-6".parse().expect("valid pattern literal");
    let t = synthesize_trajectory(&SynthConfig {
        camera_tilt_deg: (-15.0, 2.0, 15.0),
        noise_sigma_px: 2.4,
        head_tail_len_px: 80.0,
        rng_seed: 3,
        ..SynthConfig::new(pattern.clone())
    });
    println!("input: {} sampled points", t.points.len());

    let epsilon = default_epsilon(&t);
    let poly = prune_shallow_vertices(&rdp_simplify(&t, epsilon), &t.points, epsilon);
    println!(
        "simplified: {} turning points (epsilon {epsilon:.1} px)",
        poly.len()
    );

    let units = extract_units(&poly).expect("enough turning points");
    println!("units: {}", units.len());

    let cfg = EngineConfig::default();
    let candidates = generate_candidates(&units, &cfg).expect("some cipher matches");
    println!("candidates grown: {}", candidates.len());

    let survivors = consistency_filter(candidates, &poly.segments(), 0.75 * epsilon, &cfg);
    println!("after crossing-structure filter: {}", survivors.len());

    let list = rank(survivors);
    println!("\ntop 5:");
    print!("{}", list.truncated(5).to_text());
    println!(
        "\nground truth {} at rank {:?}",
        pattern,
        list.rank_of(&pattern)
    );
}
