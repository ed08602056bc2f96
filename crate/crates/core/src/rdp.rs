//! Turning-point extraction via Ramer-Douglas-Peucker.
//!
//! Endpoints are always kept, which is what lets deliberate head/tail
//! redundancy resolve start/end overlap: a stroke that doubles back over
//! the first pattern edge still produces a turning point because the
//! redundant approach stroke provides the chord.

use crate::trajectory::Trajectory;

/// The simplified trajectory: a subsequence of the original points.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub turning_points: Vec<(f64, f64)>,
    pub source_indexes: Vec<usize>,
}

impl Polyline {
    pub fn len(&self) -> usize {
        self.turning_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.turning_points.is_empty()
    }

    pub fn segments(&self) -> Vec<((f64, f64), (f64, f64))> {
        self.turning_points
            .windows(2)
            .map(|w| (w[0], w[1]))
            .collect()
    }
}

/// Distance from `p` to the chord a..b: perpendicular distance when the
/// projection of `p` falls inside the chord, distance to the nearest
/// endpoint otherwise. The endpoint case is what detects reversals on
/// collinear strokes.
pub fn point_chord_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return (p.0 - a.0).hypot(p.1 - a.1);
    }
    let t = ((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2;
    if t < 0.0 {
        (p.0 - a.0).hypot(p.1 - a.1)
    } else if t > 1.0 {
        (p.0 - b.0).hypot(p.1 - b.1)
    } else {
        let (px, py) = (a.0 + t * dx, a.1 + t * dy);
        (p.0 - px).hypot(p.1 - py)
    }
}

/// Distances closer than this relative slack are treated as tied, and the
/// lowest index wins. Symmetric chains produce exact argmax ties that
/// rounding would otherwise break differently after a uniform scale, which
/// must not change which point is promoted.
const TIE_SLACK: f64 = 1e-9;

fn rdp_recurse(points: &[(f64, f64)], lo: usize, hi: usize, epsilon: f64, keep: &mut Vec<usize>) {
    if hi <= lo + 1 {
        return;
    }
    let (a, b) = (points[lo], points[hi]);
    let mut max_dist = 0.0f64;
    for i in lo + 1..hi {
        max_dist = max_dist.max(point_chord_distance(points[i], a, b));
    }
    if max_dist >= epsilon {
        let cutoff = max_dist * (1.0 - TIE_SLACK);
        let best = (lo + 1..hi)
            .find(|&i| point_chord_distance(points[i], a, b) >= cutoff)
            .expect("the maximum itself passes the cutoff");
        rdp_recurse(points, lo, best, epsilon, keep);
        keep.push(best);
        rdp_recurse(points, best, hi, epsilon, keep);
    }
}

pub fn rdp_simplify_points(points: &[(f64, f64)], epsilon: f64) -> Polyline {
    assert!(epsilon > 0.0, "epsilon must be positive");
    assert!(points.len() >= 2, "need at least two points");
    let mut keep = vec![0usize];
    rdp_recurse(points, 0, points.len() - 1, epsilon, &mut keep);
    keep.push(points.len() - 1);
    Polyline {
        turning_points: keep.iter().map(|&i| points[i]).collect(),
        source_indexes: keep,
    }
}

pub fn rdp_simplify(t: &Trajectory, epsilon: f64) -> Polyline {
    rdp_simplify_points(&t.points, epsilon)
}

/// Drop split points that survive simplification without marking a real
/// turn. Under noise, the farthest point of a wide recursion span can be a
/// mid-edge sample that shadows the true corner; once the corner itself is
/// kept, that sample sits nearly on the line between its final neighbors
/// but is never re-examined against it. A vertex is removed only when every
/// original point in the merged span stays within `epsilon` of the merged
/// chord, so the max-deviation guarantee of the simplification is
/// preserved. Run after [`rdp_simplify`] with the same source points and
/// threshold.
pub fn prune_shallow_vertices(poly: &Polyline, points: &[(f64, f64)], epsilon: f64) -> Polyline {
    let mut keep = poly.source_indexes.clone();
    loop {
        let mut removed = false;
        let mut i = 1;
        while i + 1 < keep.len() {
            let (lo, hi) = (keep[i - 1], keep[i + 1]);
            let (a, b) = (points[lo], points[hi]);
            let straight =
                (lo + 1..hi).all(|j| point_chord_distance(points[j], a, b) < epsilon);
            if straight {
                keep.remove(i);
                removed = true;
            } else {
                i += 1;
            }
        }
        if !removed {
            break;
        }
    }
    Polyline {
        turning_points: keep.iter().map(|&i| points[i]).collect(),
        source_indexes: keep,
    }
}

/// Default simplification threshold: 5% of the bounding-box diagonal, with
/// a 1 px floor for degenerate tracks.
pub fn default_epsilon(t: &Trajectory) -> f64 {
    default_epsilon_points(&t.points)
}

pub fn default_epsilon_points(points: &[(f64, f64)]) -> f64 {
    let mut min = (f64::INFINITY, f64::INFINITY);
    let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        min.0 = min.0.min(x);
        min.1 = min.1.min(y);
        max.0 = max.0.max(x);
        max.1 = max.1.max(y);
    }
    let diag = (max.0 - min.0).hypot(max.1 - min.1);
    (0.05 * diag).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collinear_points_collapse_to_endpoints() {
        let pts: Vec<(f64, f64)> = (0..50).map(|i| (i as f64, 0.0)).collect();
        let poly = rdp_simplify_points(&pts, 1.0);
        assert_eq!(poly.turning_points, vec![(0.0, 0.0), (49.0, 0.0)]);
    }

    #[test]
    fn corner_is_kept() {
        let mut pts: Vec<(f64, f64)> = (0..=20).map(|i| (5.0 * i as f64, 0.0)).collect();
        pts.extend((1..=20).map(|i| (100.0, 5.0 * i as f64)));
        let poly = rdp_simplify_points(&pts, 5.0);
        assert_eq!(
            poly.turning_points,
            vec![(0.0, 0.0), (100.0, 0.0), (100.0, 100.0)]
        );
    }

    #[test]
    fn reversal_on_a_line_is_kept() {
        // draw right then double back: all points collinear.
        let mut pts: Vec<(f64, f64)> = (0..=20).map(|i| (i as f64, 0.0)).collect();
        pts.extend((1..=30).map(|i| (20.0 - i as f64, 0.0)));
        let poly = rdp_simplify_points(&pts, 2.0);
        assert_eq!(
            poly.turning_points,
            vec![(0.0, 0.0), (20.0, 0.0), (-10.0, 0.0)]
        );
    }

    #[test]
    fn idempotent() {
        let mut pts: Vec<(f64, f64)> = (0..=20).map(|i| (5.0 * i as f64, (i % 3) as f64)).collect();
        pts.extend((1..=20).map(|i| (100.0 + i as f64, 5.0 * i as f64)));
        let poly = rdp_simplify_points(&pts, 4.0);
        let again = rdp_simplify_points(&poly.turning_points, 4.0);
        assert_eq!(again.turning_points, poly.turning_points);
    }

    #[test]
    fn default_epsilon_rules() {
        let t = Trajectory::from_points(vec![(0.0, 0.0), (300.0, 0.0), (300.0, 400.0)]);
        assert!((default_epsilon(&t) - 25.0).abs() < 1e-12);
        let flat = Trajectory::from_points(vec![(7.0, 7.0); 5]);
        assert_eq!(default_epsilon(&flat), 1.0);
    }
}
