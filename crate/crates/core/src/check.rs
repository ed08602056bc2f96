//! Validity check for tracked trajectories.
//!
//! Two failure modes: the keypoint sat still for too long (the hand never
//! drew anything), or the track jumped (the tracker latched onto something
//! else). The checker works incrementally so a tracking harness can feed it
//! frame by frame.

use crate::trajectory::Trajectory;

#[derive(Debug, Clone, Copy)]
pub struct CheckConfig {
    /// Window length in frames for the static test (CR).
    pub window: usize,
    /// Max net displacement (px) for a window to count as static.
    pub static_radius: f64,
    /// Number of consecutive static windows that invalidates the track.
    pub static_limit: usize,
    /// The final step is a jump when it exceeds this multiple of the
    /// average step length.
    pub jump_factor: f64,
}

impl Default for CheckConfig {
    fn default() -> CheckConfig {
        CheckConfig {
            window: 5,
            static_radius: 5.0,
            static_limit: 20,
            jump_factor: 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckResult {
    Valid,
    Invalid(Invalidity),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invalidity {
    Static,
    Jump,
}

impl CheckResult {
    pub fn is_valid(&self) -> bool {
        matches!(self, CheckResult::Valid)
    }
}

/// Streaming checker. Push points as they arrive; `ever_static` latches
/// once a run of static windows has been seen, `jump_now` tests the most
/// recent step against the running average.
#[derive(Debug, Clone)]
pub struct TrackChecker {
    cfg: CheckConfig,
    points: Vec<(f64, f64)>,
    count_static: usize,
    ever_static: bool,
    step_total: f64,
}

impl TrackChecker {
    pub fn new(cfg: CheckConfig) -> TrackChecker {
        TrackChecker {
            cfg,
            points: Vec::new(),
            count_static: 0,
            ever_static: false,
            step_total: 0.0,
        }
    }

    pub fn push(&mut self, p: (f64, f64)) {
        if let Some(&(x, y)) = self.points.last() {
            self.step_total += (p.0 - x).hypot(p.1 - y);
        }
        self.points.push(p);
        let n = self.points.len();
        if n >= self.cfg.window {
            // net displacement across the last `window` points
            let (x0, y0) = self.points[n - self.cfg.window];
            let (x1, y1) = self.points[n - 1];
            if (x1 - x0).hypot(y1 - y0) <= self.cfg.static_radius {
                self.count_static += 1;
                if self.count_static >= self.cfg.static_limit {
                    self.ever_static = true;
                }
            } else {
                self.count_static = 0;
            }
        }
    }

    pub fn ever_static(&self) -> bool {
        self.ever_static
    }

    /// Is the most recent step a jump relative to the average step so far?
    pub fn jump_now(&self) -> bool {
        let n = self.points.len();
        if n < 2 {
            return false;
        }
        let avg = self.step_total / (n - 1) as f64;
        let (x0, y0) = self.points[n - 2];
        let (x1, y1) = self.points[n - 1];
        (x1 - x0).hypot(y1 - y0) >= self.cfg.jump_factor * avg
    }
}

/// Whole-trajectory check: static runs anywhere invalidate the track, the
/// jump test applies to the final step.
pub fn check_track(t: &Trajectory, cfg: CheckConfig) -> CheckResult {
    let mut checker = TrackChecker::new(cfg);
    for &p in &t.points {
        checker.push(p);
    }
    if checker.ever_static() {
        CheckResult::Invalid(Invalidity::Static)
    } else if checker.jump_now() {
        CheckResult::Invalid(Invalidity::Jump)
    } else {
        CheckResult::Valid
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn traj(points: Vec<(f64, f64)>) -> Trajectory {
        Trajectory::from_points(points)
    }

    #[test]
    fn static_tail_invalidates() {
        // 30 good steps, then enough jitter-in-place for 25 static windows.
        let mut pts: Vec<(f64, f64)> = (0..30).map(|i| (4.0 * i as f64, 0.0)).collect();
        let anchor = *pts.last().unwrap();
        for i in 0..29 {
            pts.push((anchor.0 + if i % 2 == 0 { 1.0 } else { 0.0 }, anchor.1));
        }
        assert_eq!(
            check_track(&traj(pts), CheckConfig::default()),
            CheckResult::Invalid(Invalidity::Static)
        );
    }

    #[test]
    fn final_jump_invalidates() {
        let mut pts: Vec<(f64, f64)> = (0..50).map(|i| (3.0 * i as f64, 0.0)).collect();
        let last = *pts.last().unwrap();
        pts.push((last.0 + 10.0, 0.0));
        assert_eq!(
            check_track(&traj(pts), CheckConfig::default()),
            CheckResult::Invalid(Invalidity::Jump)
        );
    }

    #[test]
    fn uniform_stroke_is_valid() {
        let pts: Vec<(f64, f64)> = (0..60).map(|i| (4.0 * i as f64, 0.0)).collect();
        assert_eq!(check_track(&traj(pts), CheckConfig::default()), CheckResult::Valid);
    }

    #[test]
    fn static_prefix_stays_invalid_under_small_motion() {
        let mut checker = TrackChecker::new(CheckConfig::default());
        for _ in 0..40 {
            checker.push((0.0, 0.0));
        }
        assert!(checker.ever_static());
        for i in 0..10 {
            checker.push((0.5 * i as f64, 0.0));
        }
        assert!(checker.ever_static());
    }

    #[test]
    fn motion_resets_static_counter() {
        let mut checker = TrackChecker::new(CheckConfig::default());
        // 15 static windows, then movement, then 15 more: never 20 in a row.
        for phase in 0..2 {
            let base = phase as f64 * 100.0;
            for _ in 0..19 {
                checker.push((base, 0.0));
            }
            for i in 0..5 {
                checker.push((base + 20.0 * (i + 1) as f64, 0.0));
            }
        }
        assert!(!checker.ever_static());
    }
}
