//! Corpus generation and evaluation: success curves over labeled synthetic
//! corpora, and the length/angle feature-correlation experiment.

use std::fs::File;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{guess, GuessConfig};
use crate::geom::pattern_to_segments;
use crate::pattern::{enumerate_valid_patterns, Pattern};
use crate::rdp::{default_epsilon, rdp_simplify};
use crate::stats::{
    gaussian_kde_grid, kendall_tau_tie_tolerant, silverman_bandwidth, spearman_rho,
};
use crate::synth::{synthesize_trajectory, SynthConfig};
use crate::trajectory::{load_trajectory, save_trajectory, Trajectory, TrajectoryError};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("{path}: {message}")]
    BadManifest { path: PathBuf, message: String },
    #[error(transparent)]
    Trajectory(#[from] TrajectoryError),
}

/// One corpus file and how it was made.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub pattern: String,
    pub grid_spacing_px: f64,
    pub samples_per_segment: usize,
    pub camera_tilt_deg: (f64, f64, f64),
    pub noise_sigma_px: f64,
    pub head_tail_len_px: f64,
    pub rng_seed: u64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

impl ManifestEntry {
    pub fn synth_config(&self) -> Result<SynthConfig, EvalError> {
        let pattern: Pattern = self.pattern.parse().map_err(|e| EvalError::BadManifest {
            path: PathBuf::from(&self.file),
            message: format!("bad pattern {:?}: {e}", self.pattern),
        })?;
        Ok(SynthConfig {
            pattern,
            grid_spacing_px: self.grid_spacing_px,
            samples_per_segment: self.samples_per_segment,
            camera_tilt_deg: self.camera_tilt_deg,
            noise_sigma_px: self.noise_sigma_px,
            head_tail_len_px: self.head_tail_len_px,
            rng_seed: self.rng_seed,
        })
    }

    fn from_config(file: String, cfg: &SynthConfig) -> ManifestEntry {
        ManifestEntry {
            file,
            pattern: cfg.pattern.to_string(),
            grid_spacing_px: cfg.grid_spacing_px,
            samples_per_segment: cfg.samples_per_segment,
            camera_tilt_deg: cfg.camera_tilt_deg,
            noise_sigma_px: cfg.noise_sigma_px,
            head_tail_len_px: cfg.head_tail_len_px,
            rng_seed: cfg.rng_seed,
        }
    }
}

fn all_patterns() -> &'static [Pattern] {
    static ALL: OnceLock<Vec<Pattern>> = OnceLock::new();
    ALL.get_or_init(|| enumerate_valid_patterns().collect())
}

/// Uniform random valid pattern.
pub fn random_valid_pattern(rng: &mut ChaCha8Rng) -> Pattern {
    all_patterns().choose(rng).expect("space is non-empty").clone()
}

/// Recipe for a random labeled corpus. Tilt angles are drawn uniformly in
/// [-max_tilt_deg, max_tilt_deg] per axis.
#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub n_samples: usize,
    pub max_tilt_deg: f64,
    pub noise_sigma_px: f64,
    pub head_tail_len_px: f64,
    pub grid_spacing_px: f64,
    pub samples_per_segment: usize,
    pub seed: u64,
}

impl Default for CorpusSpec {
    fn default() -> CorpusSpec {
        CorpusSpec {
            n_samples: 100,
            max_tilt_deg: 0.0,
            noise_sigma_px: 0.0,
            head_tail_len_px: 0.0,
            grid_spacing_px: 120.0,
            samples_per_segment: 30,
            seed: 0,
        }
    }
}

/// One labeled sample, in memory.
#[derive(Debug, Clone)]
pub struct Sample {
    pub config: SynthConfig,
    pub trajectory: Trajectory,
}

/// Draw `n_samples` random patterns and render each once. Deterministic in
/// the corpus seed.
pub fn generate_corpus(spec: &CorpusSpec) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.n_samples)
        .map(|i| {
            let pattern = random_valid_pattern(&mut rng);
            let tilt = if spec.max_tilt_deg > 0.0 {
                (
                    rng.gen_range(-spec.max_tilt_deg..=spec.max_tilt_deg),
                    rng.gen_range(-spec.max_tilt_deg..=spec.max_tilt_deg),
                    rng.gen_range(-spec.max_tilt_deg..=spec.max_tilt_deg),
                )
            } else {
                (0.0, 0.0, 0.0)
            };
            let config = SynthConfig {
                pattern,
                grid_spacing_px: spec.grid_spacing_px,
                samples_per_segment: spec.samples_per_segment,
                camera_tilt_deg: tilt,
                noise_sigma_px: spec.noise_sigma_px,
                head_tail_len_px: spec.head_tail_len_px,
                rng_seed: spec.seed.wrapping_mul(1_000_003).wrapping_add(i as u64),
            };
            let trajectory = synthesize_trajectory(&config);
            Sample { config, trajectory }
        })
        .collect()
}

/// Write a corpus as trajectory CSVs plus `manifest.json`.
pub fn write_corpus(samples: &[Sample], dir: impl AsRef<Path>) -> Result<(), EvalError> {
    let dir = dir.as_ref();
    let mut manifest = Manifest::default();
    for (i, s) in samples.iter().enumerate() {
        let name = format!("sample_{i:05}.csv");
        save_trajectory(&s.trajectory, dir.join(&name))?;
        manifest.entries.push(ManifestEntry::from_config(name, &s.config));
    }
    let path = dir.join("manifest.json");
    let f = File::create(&path).map_err(|e| EvalError::BadManifest {
        path: path.clone(),
        message: e.to_string(),
    })?;
    serde_json::to_writer_pretty(f, &manifest).map_err(|e| EvalError::BadManifest {
        path,
        message: e.to_string(),
    })?;
    Ok(())
}

/// Load a corpus directory written by `write_corpus`.
pub fn load_corpus(dir: impl AsRef<Path>) -> Result<Vec<Sample>, EvalError> {
    let dir = dir.as_ref();
    let path = dir.join("manifest.json");
    let f = File::open(&path).map_err(|e| EvalError::BadManifest {
        path: path.clone(),
        message: e.to_string(),
    })?;
    let manifest: Manifest = serde_json::from_reader(f).map_err(|e| EvalError::BadManifest {
        path,
        message: e.to_string(),
    })?;
    manifest
        .entries
        .iter()
        .map(|e| {
            Ok(Sample {
                config: e.synth_config()?,
                trajectory: load_trajectory(dir.join(&e.file))?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct PerPatternResult {
    pub pattern: String,
    /// Rank of the truth in the guess list; `None` when it never appeared
    /// or the trajectory was rejected.
    pub rank: Option<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TimingStats {
    pub total_secs: f64,
    pub mean_secs_per_sample: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    /// success_curve[a-1] = fraction of samples whose truth ranked <= a.
    pub success_curve: Vec<f64>,
    pub per_pattern: Vec<PerPatternResult>,
    pub timing: TimingStats,
}

impl EvalReport {
    pub fn curve_csv(&self) -> String {
        let mut out = String::from("attempts,success_rate\n");
        for (i, v) in self.success_curve.iter().enumerate() {
            out.push_str(&format!("{},{v}\n", i + 1));
        }
        out
    }
}

/// Rank the truth of every sample and fold the ranks into a success curve.
/// Samples are evaluated in parallel; the curve does not depend on corpus
/// order.
pub fn success_curve(samples: &[Sample], max_attempts: usize, cfg: &GuessConfig) -> EvalReport {
    let start = Instant::now();
    let per_pattern: Vec<PerPatternResult> = samples
        .par_iter()
        .map(|s| {
            let rank = guess(std::slice::from_ref(&s.trajectory), cfg)
                .ok()
                .and_then(|list| list.rank_of(&s.config.pattern));
            PerPatternResult {
                pattern: s.config.pattern.to_string(),
                rank,
            }
        })
        .collect();
    let n = samples.len().max(1) as f64;
    let success_curve = (1..=max_attempts)
        .map(|a| {
            per_pattern
                .iter()
                .filter(|r| r.rank.map_or(false, |rk| rk as usize <= a))
                .count() as f64
                / n
        })
        .collect();
    let total = start.elapsed().as_secs_f64();
    EvalReport {
        success_curve,
        per_pattern,
        timing: TimingStats {
            total_secs: total,
            mean_secs_per_sample: total / n,
        },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KdeCurve {
    pub standard_value: f64,
    pub grid: Vec<f64>,
    pub density: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FeatureCorrelationReport {
    pub length_kendall: f64,
    pub length_spearman: f64,
    pub angle_kendall: f64,
    pub angle_spearman: f64,
    /// Correlation of the paired (segment length, preceding turn angle)
    /// measurements; the interesting finding is that this one is near zero.
    pub cross_kendall: f64,
    pub cross_spearman: f64,
    pub length_kde: Vec<KdeCurve>,
    pub angle_kde: Vec<KdeCurve>,
    pub samples_used: usize,
    pub samples_skipped: usize,
}

fn interior_angle(prev: (f64, f64), v: (f64, f64), next: (f64, f64)) -> f64 {
    let r1 = (prev.0 - v.0, prev.1 - v.1);
    let r2 = (next.0 - v.0, next.1 - v.1);
    let dot = r1.0 * r2.0 + r1.1 * r2.1;
    let den = r1.0.hypot(r1.1) * r2.0.hypot(r2.1);
    (dot / den).clamp(-1.0, 1.0).acos().to_degrees()
}

fn kde_curves(pairs: &[(f64, f64)], grid_max: f64) -> Vec<KdeCurve> {
    let mut standards: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    standards.sort_by(f64::total_cmp);
    standards.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    let grid: Vec<f64> = (0..=320).map(|i| grid_max * i as f64 / 320.0).collect();
    standards
        .into_iter()
        .map(|sv| {
            let group: Vec<f64> = pairs
                .iter()
                .filter(|p| (p.1 - sv).abs() < 1e-9)
                .map(|p| p.0)
                .collect();
            let sigma = silverman_bandwidth(&group).unwrap_or(1e-3);
            let density = gaussian_kde_grid(&group, sigma, &grid).unwrap_or_default();
            KdeCurve {
                standard_value: sv,
                grid: grid.clone(),
                density,
            }
        })
        .collect()
}

/// Pair measured normalized segment lengths and turn angles against the
/// ground truth's standard values.
///
/// Lengths are normalized by the measured length of the segment whose
/// standard length is the pattern's shortest, so the truth provides the
/// scale, not the camera. Samples whose simplification does not produce
/// one vertex per merged pattern vertex are skipped (they cannot be
/// aligned edge-for-edge).
pub fn feature_correlation_experiment(samples: &[Sample]) -> FeatureCorrelationReport {
    let mut length_pairs: Vec<(f64, f64)> = Vec::new();
    let mut angle_pairs: Vec<(f64, f64)> = Vec::new();
    let mut cross_pairs: Vec<(f64, f64)> = Vec::new();
    let mut used = 0usize;
    let mut skipped = 0usize;

    for s in samples {
        let merged = pattern_to_segments(&s.config.pattern);
        let std_lengths: Vec<f64> = merged.segments.iter().map(|g| g.length()).collect();
        let eps = default_epsilon(&s.trajectory);
        let poly = rdp_simplify(&s.trajectory, eps);
        if poly.len() != merged.segments.len() + 1 {
            skipped += 1;
            continue;
        }
        used += 1;
        let tp = &poly.turning_points;
        let measured: Vec<f64> = tp
            .windows(2)
            .map(|w| (w[1].0 - w[0].0).hypot(w[1].1 - w[0].1))
            .collect();
        // scale from the segment with the smallest standard length
        let min_i = std_lengths
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap();
        let scale = measured[min_i] / std_lengths[min_i];
        // Snap a measurement onto its standard when the gap is below float
        // noise, so ulp-level libm differences between geometrically equal
        // configurations cannot break ties on noiseless data.
        let snap = |m: f64, st: f64| if (m - st).abs() < 1e-9 { st } else { m };
        for (m, st) in measured.iter().zip(&std_lengths) {
            length_pairs.push((snap(m / scale, *st), *st));
        }
        for j in 1..tp.len() - 1 {
            let meas_angle = interior_angle(tp[j - 1], tp[j], tp[j + 1]);
            let std_angle = interior_angle(
                (
                    merged.segments[j - 1].a.0 as f64,
                    merged.segments[j - 1].a.1 as f64,
                ),
                (
                    merged.segments[j - 1].b.0 as f64,
                    merged.segments[j - 1].b.1 as f64,
                ),
                (merged.segments[j].b.0 as f64, merged.segments[j].b.1 as f64),
            );
            let meas_angle = snap(meas_angle, std_angle);
            angle_pairs.push((meas_angle, std_angle));
            // following segment's length paired with this turn's angle
            cross_pairs.push((snap(measured[j] / scale, std_lengths[j]), meas_angle));
        }
    }

    let corr = |pairs: &[(f64, f64)]| -> (f64, f64) {
        let a: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let b: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        (
            kendall_tau_tie_tolerant(&a, &b).unwrap_or(f64::NAN),
            spearman_rho(&a, &b).unwrap_or(f64::NAN),
        )
    };
    let (lk, ls) = corr(&length_pairs);
    let (ak, asp) = corr(&angle_pairs);
    let (ck, cs) = corr(&cross_pairs);

    FeatureCorrelationReport {
        length_kendall: lk,
        length_spearman: ls,
        angle_kendall: ak,
        angle_spearman: asp,
        cross_kendall: ck,
        cross_spearman: cs,
        length_kde: kde_curves(&length_pairs, 3.2),
        angle_kde: kde_curves(&angle_pairs, 180.0),
        samples_used: used,
        samples_skipped: skipped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_round_trip() {
        let spec = CorpusSpec {
            n_samples: 4,
            seed: 7,
            ..CorpusSpec::default()
        };
        let samples = generate_corpus(&spec);
        let dir = tempfile::tempdir().unwrap();
        write_corpus(&samples, dir.path()).unwrap();
        let loaded = load_corpus(dir.path()).unwrap();
        assert_eq!(loaded.len(), 4);
        for (a, b) in samples.iter().zip(&loaded) {
            assert_eq!(a.config.pattern, b.config.pattern);
            assert_eq!(a.trajectory.points, b.trajectory.points);
        }
    }

    #[test]
    fn corpus_generation_is_deterministic() {
        let spec = CorpusSpec {
            n_samples: 3,
            max_tilt_deg: 10.0,
            noise_sigma_px: 2.0,
            seed: 11,
            ..CorpusSpec::default()
        };
        let a = generate_corpus(&spec);
        let b = generate_corpus(&spec);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.trajectory.points, y.trajectory.points);
        }
    }

    #[test]
    fn noiseless_curve_hits_one_at_rank_one() {
        let spec = CorpusSpec {
            n_samples: 10,
            seed: 3,
            ..CorpusSpec::default()
        };
        let samples = generate_corpus(&spec);
        let report = success_curve(&samples, 20, &GuessConfig::default());
        assert_eq!(report.success_curve[0], 1.0);
        for w in report.success_curve.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn noiseless_feature_correlations_are_exact() {
        let spec = CorpusSpec {
            n_samples: 15,
            seed: 5,
            ..CorpusSpec::default()
        };
        let samples = generate_corpus(&spec);
        let report = feature_correlation_experiment(&samples);
        assert_eq!(report.length_kendall, 1.0);
        assert_eq!(report.angle_kendall, 1.0);
        assert_eq!(report.samples_skipped, 0);
    }
}
