//! Reconstruction of Android 3x3 unlock patterns from 2D hand-keypoint
//! trajectories.
//!
//! The pipeline: a tracked keypoint trajectory is validity-checked,
//! simplified to its turning points, cut into three-point units, matched
//! against the 504 standard ciphers, grown middle-out into candidate
//! patterns, filtered by crossing-structure consistency, and ranked by
//! accumulated similarity. Companion modules enumerate the 389,112-pattern
//! space, score pattern complexity, synthesize labeled camera-deformed
//! trajectories, and evaluate success curves and feature correlations.
//!
//! See the `examples/` directory for one runnable walkthrough per
//! capability.

pub mod check;
pub mod cipher;
pub mod complexity;
pub mod config;
pub mod engine;
pub mod eval;
pub mod geom;
pub mod grid;
pub mod pattern;
pub mod rdp;
pub mod stats;
pub mod synth;
pub mod trajectory;
pub mod unit;

pub use check::{check_track, CheckConfig, CheckResult, Invalidity, TrackChecker};
pub use cipher::{build_cipher_dictionary, standard_sets, Cipher};
pub use complexity::{complexity_score, score_histogram, ComplexityScore};
pub use engine::{
    consistency_filter, fuse, generate_candidates, guess, guess_detailed, rank, CandidateEntry,
    EngineConfig, EngineError, GuessConfig, GuessEntry, GuessList,
};
pub use eval::{
    feature_correlation_experiment, generate_corpus, load_corpus, success_curve, write_corpus,
    CorpusSpec, EvalReport, FeatureCorrelationReport, Manifest, ManifestEntry, Sample,
};
pub use geom::{parse_intersections, pattern_to_segments, IntersectionDict, Segment, SegmentList};
pub use pattern::{enumerate_valid_patterns, validate_pattern, Pattern, PatternError};
pub use rdp::{default_epsilon, prune_shallow_vertices, rdp_simplify, rdp_simplify_points, Polyline};
pub use stats::{gaussian_kde, gaussian_kde_grid, kendall_tau, silverman_bandwidth, spearman_rho};
pub use synth::{synthesize_trajectory, SynthConfig};
pub use trajectory::{load_trajectory, save_trajectory, Trajectory, TrajectoryError};
pub use unit::{extract_units, unit_similarity, SimilarityParams, Unit};
