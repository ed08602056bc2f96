//! Synthetic trajectory generation: render a pattern drawing as a pixel
//! track the way a camera watching the hand would record it.
//!
//! The drawing is the merged segment path of the pattern, sampled at a
//! roughly uniform arc-length step, optionally preceded/followed by
//! redundant head and tail strokes, viewed through a tilted pinhole camera
//! and jittered with Gaussian noise. Everything is driven by one seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::geom::pattern_to_segments;
use crate::pattern::Pattern;
use crate::trajectory::{Trajectory, TrajectoryMeta};

#[derive(Debug, Clone)]
pub struct SynthConfig {
    pub pattern: Pattern,
    /// Distance between adjacent grid dots, px.
    pub grid_spacing_px: f64,
    /// Samples per grid-spacing of stroke length; keeps the step length
    /// uniform across short and long segments.
    pub samples_per_segment: usize,
    /// Camera rotation about the grid center, degrees (x, y, z).
    pub camera_tilt_deg: (f64, f64, f64),
    /// Per-coordinate Gaussian noise, px.
    pub noise_sigma_px: f64,
    /// Length of the redundant strokes before/after the pattern, px.
    /// Zero disables them.
    pub head_tail_len_px: f64,
    pub rng_seed: u64,
}

impl SynthConfig {
    pub fn new(pattern: Pattern) -> SynthConfig {
        SynthConfig {
            pattern,
            grid_spacing_px: 120.0,
            samples_per_segment: 30,
            camera_tilt_deg: (0.0, 0.0, 0.0),
            noise_sigma_px: 0.0,
            head_tail_len_px: 0.0,
            rng_seed: 0,
        }
    }
}

/// Head/tail strokes must not be collinear-ish with the pattern edge they
/// attach to, or simplification would merge them into it. Keep at least
/// this many degrees away from the edge direction and its reverse.
const CONE_DEG: f64 = 25.0;

fn angle_of(v: (f64, f64)) -> f64 {
    v.1.atan2(v.0)
}

fn angular_gap(a: f64, b: f64) -> f64 {
    let mut d = (a - b).rem_euclid(std::f64::consts::TAU);
    if d > std::f64::consts::PI {
        d = std::f64::consts::TAU - d;
    }
    d
}

fn pick_direction(rng: &mut ChaCha8Rng, avoid: (f64, f64)) -> (f64, f64) {
    let fwd = angle_of(avoid);
    let rev = angle_of((-avoid.0, -avoid.1));
    let cone = CONE_DEG.to_radians();
    loop {
        let phi = rng.gen_range(0.0..std::f64::consts::TAU);
        if angular_gap(phi, fwd) > cone && angular_gap(phi, rev) > cone {
            return (phi.cos(), phi.sin());
        }
    }
}

fn rotation_matrix(deg: (f64, f64, f64)) -> [[f64; 3]; 3] {
    let (rx, ry, rz) = (deg.0.to_radians(), deg.1.to_radians(), deg.2.to_radians());
    let (sx, cx) = rx.sin_cos();
    let (sy, cy) = ry.sin_cos();
    let (sz, cz) = rz.sin_cos();
    // R = Rz * Ry * Rx
    [
        [cz * cy, cz * sy * sx - sz * cx, cz * sy * cx + sz * sx],
        [sz * cy, sz * sy * sx + cz * cx, sz * sy * cx - cz * sx],
        [-sy, cy * sx, cy * cx],
    ]
}

/// Pinhole projection of grid-plane points. The camera sits on the axis
/// through the grid center at distance `d`, focal length `d`, so with no
/// tilt the projection is the identity.
struct Camera {
    center: (f64, f64),
    r: [[f64; 3]; 3],
    d: f64,
}

impl Camera {
    fn project(&self, p: (f64, f64)) -> (f64, f64) {
        let v = [p.0 - self.center.0, p.1 - self.center.1, 0.0];
        let q = [
            self.r[0][0] * v[0] + self.r[0][1] * v[1] + self.r[0][2] * v[2],
            self.r[1][0] * v[0] + self.r[1][1] * v[1] + self.r[1][2] * v[2],
            self.r[2][0] * v[0] + self.r[2][1] * v[1] + self.r[2][2] * v[2],
        ];
        let denom = self.d - q[2];
        (
            self.center.0 + self.d * q[0] / denom,
            self.center.1 + self.d * q[1] / denom,
        )
    }
}

/// Render the configured drawing. Deterministic for a fixed config.
pub fn synthesize_trajectory(cfg: &SynthConfig) -> Trajectory {
    let s = cfg.grid_spacing_px;
    let merged = pattern_to_segments(&cfg.pattern);
    let mut vertices: Vec<(f64, f64)> = Vec::with_capacity(merged.segments.len() + 3);
    vertices.push((
        merged.segments[0].a.0 as f64 * s,
        merged.segments[0].a.1 as f64 * s,
    ));
    for seg in &merged.segments {
        vertices.push((seg.b.0 as f64 * s, seg.b.1 as f64 * s));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    if cfg.head_tail_len_px > 0.0 {
        let first_edge = (vertices[1].0 - vertices[0].0, vertices[1].1 - vertices[0].1);
        let dir = pick_direction(&mut rng, first_edge);
        let head = (
            vertices[0].0 - dir.0 * cfg.head_tail_len_px,
            vertices[0].1 - dir.1 * cfg.head_tail_len_px,
        );
        vertices.insert(0, head);
        let n = vertices.len();
        let last_edge = (
            vertices[n - 1].0 - vertices[n - 2].0,
            vertices[n - 1].1 - vertices[n - 2].1,
        );
        let dir = pick_direction(&mut rng, last_edge);
        let tail = (
            vertices[n - 1].0 + dir.0 * cfg.head_tail_len_px,
            vertices[n - 1].1 + dir.1 * cfg.head_tail_len_px,
        );
        vertices.push(tail);
    }

    // Uniform-step sampling, always emitting the exact vertices.
    let step = s / cfg.samples_per_segment.max(1) as f64;
    let mut path: Vec<(f64, f64)> = vec![vertices[0]];
    for w in vertices.windows(2) {
        let (a, b) = (w[0], w[1]);
        let len = (b.0 - a.0).hypot(b.1 - a.1);
        let n = ((len / step).round() as usize).max(1);
        for i in 1..=n {
            let t = i as f64 / n as f64;
            path.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
        }
    }

    let cam = Camera {
        center: (s, s),
        r: rotation_matrix(cfg.camera_tilt_deg),
        d: 10.0 * 2.0 * s,
    };
    let mut points: Vec<(f64, f64)> = path.iter().map(|&p| cam.project(p)).collect();

    if cfg.noise_sigma_px > 0.0 {
        let normal = Normal::new(0.0, cfg.noise_sigma_px).expect("sigma is positive");
        for p in &mut points {
            p.0 += normal.sample(&mut rng);
            p.1 += normal.sample(&mut rng);
        }
    }

    Trajectory {
        points,
        displacements: None,
        markers: None,
        meta: TrajectoryMeta {
            keypoint_id: Some("synthetic".into()),
            fps: None,
            scenario: Some(cfg.pattern.to_string()),
        },
        frame_stride: 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::validate_pattern;

    fn cfg(keys: &[i64]) -> SynthConfig {
        SynthConfig::new(validate_pattern(keys).unwrap())
    }

    #[test]
    fn no_tilt_no_noise_lands_on_grid_positions() {
        let c = cfg(&[1, 6, 8, 3]);
        let t = synthesize_trajectory(&c);
        let s = c.grid_spacing_px;
        // first point at dot 1, last at dot 3
        assert!((t.points[0].0 - 0.0).abs() < 1e-9 && (t.points[0].1 - 0.0).abs() < 1e-9);
        let last = *t.points.last().unwrap();
        assert!((last.0 - 2.0 * s).abs() < 1e-9 && (last.1 - 0.0).abs() < 1e-9);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let mut c = cfg(&[2, 5, 8, 9]);
        c.noise_sigma_px = 2.0;
        c.head_tail_len_px = 60.0;
        c.rng_seed = 42;
        let a = synthesize_trajectory(&c);
        let b = synthesize_trajectory(&c);
        assert_eq!(a.points, b.points);
        c.rng_seed = 43;
        assert_ne!(synthesize_trajectory(&c).points, a.points);
    }

    #[test]
    fn step_lengths_are_near_uniform() {
        let c = cfg(&[1, 5, 9, 6, 3]);
        let t = synthesize_trajectory(&c);
        let steps: Vec<f64> = t
            .points
            .windows(2)
            .map(|w| (w[1].0 - w[0].0).hypot(w[1].1 - w[0].1))
            .collect();
        let avg = steps.iter().sum::<f64>() / steps.len() as f64;
        for s in steps {
            assert!(s < 1.9 * avg, "step {s} vs avg {avg}");
        }
    }

    #[test]
    fn tilt_moves_points_but_keeps_center() {
        let mut c = cfg(&[1, 6, 8, 3]);
        let flat = synthesize_trajectory(&c);
        c.camera_tilt_deg = (15.0, -10.0, 5.0);
        let tilted = synthesize_trajectory(&c);
        assert_eq!(flat.points.len(), tilted.points.len());
        assert_ne!(flat.points, tilted.points);
        // the grid center projects to itself under any rotation
        let s = c.grid_spacing_px;
        let cam = Camera {
            center: (s, s),
            r: rotation_matrix(c.camera_tilt_deg),
            d: 20.0 * s,
        };
        let p = cam.project((s, s));
        assert!((p.0 - s).abs() < 1e-9 && (p.1 - s).abs() < 1e-9);
    }

    #[test]
    fn head_tail_strokes_avoid_edge_cone() {
        for seed in 0..20 {
            let mut c = cfg(&[1, 2, 3, 6]);
            c.head_tail_len_px = 80.0;
            c.rng_seed = seed;
            let t = synthesize_trajectory(&c);
            // head stroke: first point to dot 1 at (0,0)
            let h = (0.0 - t.points[0].0, 0.0 - t.points[0].1);
            let gap = angular_gap(angle_of(h), angle_of((1.0, 0.0)));
            let gap_rev = angular_gap(angle_of(h), angle_of((-1.0, 0.0)));
            assert!(gap.to_degrees() > CONE_DEG && gap_rev.to_degrees() > CONE_DEG);
        }
    }
}
