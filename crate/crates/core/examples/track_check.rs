//! The trajectory validity check: a static tail and a final-frame jump
//! each invalidate a track before any pattern inference runs.
//!
//!     cargo run --release --example track_check

use pattern_oracle::{check_track, CheckConfig, Trajectory};

fn stroke(n: usize, step: f64) -> Vec<(f64, f64)> {
    (0..n).map(|i| (i as f64 * step, 0.0)).collect()
}

fn main() {
    let cfg = CheckConfig::default();

    let clean = Trajectory::from_points(stroke(100, 4.0));
    println!("steady stroke:      {:?}", check_track(&clean, cfg));

    // hand parked at the end: 130 frames moving < 1 px
    let mut parked = stroke(100, 4.0);
    let last = *parked.last().expect("non-empty");
    parked.extend((0..130).map(|i| (last.0 + 0.01 * i as f64, last.1)));
    let parked = Trajectory::from_points(parked);
    println!("static tail:        {:?}", check_track(&parked, cfg));

    // keypoint snaps away on the final frame
    let mut jumpy = stroke(100, 4.0);
    jumpy.push((jumpy.last().expect("non-empty").0 + 40.0, 0.0));
    let jumpy = Trajectory::from_points(jumpy);
    println!("final-frame jump:   {:?}", check_track(&jumpy, cfg));
}
