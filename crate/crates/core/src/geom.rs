//! Segment geometry shared by pattern analysis and trajectory matching.
//!
//! Pattern segments live on integer grid coordinates, so crossing tests use
//! exact integer arithmetic. Trajectory segments are pixel floats and use an
//! epsilon of 1e-9.

use std::collections::BTreeMap;

use crate::grid::key_position;
use crate::pattern::Pattern;

pub const TRAJ_EPS: f64 = 1e-9;

/// A directed segment on grid coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub a: (i64, i64),
    pub b: (i64, i64),
}

impl Segment {
    pub fn length(&self) -> f64 {
        let dx = (self.b.0 - self.a.0) as f64;
        let dy = (self.b.1 - self.a.1) as f64;
        dx.hypot(dy)
    }
}

/// The edges of a pattern with collinear same-direction runs merged: a key
/// the stroke passes through without turning does not produce a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentList {
    pub segments: Vec<Segment>,
}

/// For each index gap d in 2..7, a T/F string recording which segment pairs
/// (i, i+d) properly cross. Gaps with no pair are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntersectionDict {
    pub entries: BTreeMap<u8, String>,
}

/// Build the merged segment list of a pattern.
pub fn pattern_to_segments(pattern: &Pattern) -> SegmentList {
    segments_from_points(&pattern.keys().iter().map(|&k| key_position(k)).collect::<Vec<_>>())
}

/// Merge a vertex chain into segments, collapsing collinear same-direction
/// runs. Reversals (opposite direction on the same line) are kept.
pub fn segments_from_points(points: &[(i64, i64)]) -> SegmentList {
    let mut segments: Vec<Segment> = Vec::new();
    for pair in points.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a == b {
            continue;
        }
        if let Some(last) = segments.last_mut() {
            let pd = (last.b.0 - last.a.0, last.b.1 - last.a.1);
            let d = (b.0 - a.0, b.1 - a.1);
            let collinear = pd.0 * d.1 == pd.1 * d.0;
            let same_dir = pd.0 * d.0 + pd.1 * d.1 > 0;
            if collinear && same_dir && last.b == a {
                last.b = b;
                continue;
            }
        }
        segments.push(Segment { a, b });
    }
    SegmentList { segments }
}

fn cross(o: (i64, i64), p: (i64, i64), q: (i64, i64)) -> i64 {
    (p.0 - o.0) * (q.1 - o.1) - (p.1 - o.1) * (q.0 - o.0)
}

/// Interior-interior crossing. Shared endpoints, touches and collinear
/// overlap do not count.
pub fn proper_crossing(s1: Segment, s2: Segment) -> bool {
    let d1 = cross(s1.a, s1.b, s2.a);
    let d2 = cross(s1.a, s1.b, s2.b);
    let d3 = cross(s2.a, s2.b, s1.a);
    let d4 = cross(s2.a, s2.b, s1.b);
    d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0 && (d1 > 0) != (d2 > 0) && (d3 > 0) != (d4 > 0)
}

fn on_segment(s: Segment, p: (i64, i64)) -> bool {
    // p is assumed collinear with s
    p.0 >= s.a.0.min(s.b.0)
        && p.0 <= s.a.0.max(s.b.0)
        && p.1 >= s.a.1.min(s.b.1)
        && p.1 <= s.a.1.max(s.b.1)
}

/// Do the two segments share at least one point (crossing, touch, endpoint
/// contact or overlap)?
pub fn segments_touch(s1: Segment, s2: Segment) -> bool {
    let d1 = cross(s1.a, s1.b, s2.a);
    let d2 = cross(s1.a, s1.b, s2.b);
    let d3 = cross(s2.a, s2.b, s1.a);
    let d4 = cross(s2.a, s2.b, s1.b);
    if d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0 {
        return (d1 > 0) != (d2 > 0) && (d3 > 0) != (d4 > 0);
    }
    (d1 == 0 && on_segment(s1, s2.a))
        || (d2 == 0 && on_segment(s1, s2.b))
        || (d3 == 0 && on_segment(s2, s1.a))
        || (d4 == 0 && on_segment(s2, s1.b))
}

/// Collinear pair whose interiors overlap over a positive length.
pub fn collinear_overlap(s1: Segment, s2: Segment) -> bool {
    let d = (s1.b.0 - s1.a.0, s1.b.1 - s1.a.1);
    let e = (s2.b.0 - s2.a.0, s2.b.1 - s2.a.1);
    if d.0 * e.1 != d.1 * e.0 || cross(s1.a, s1.b, s2.a) != 0 {
        return false;
    }
    let par = |p: (i64, i64)| (p.0 - s1.a.0) * d.0 + (p.1 - s1.a.1) * d.1;
    let (t0, t1) = (par(s1.a).min(par(s1.b)), par(s1.a).max(par(s1.b)));
    let (u0, u1) = (par(s2.a).min(par(s2.b)), par(s2.a).max(par(s2.b)));
    t1.min(u1) > t0.max(u0)
}

/// Per-gap proper-crossing record of a pattern segment list.
pub fn parse_intersections(list: &SegmentList) -> IntersectionDict {
    let n = list.segments.len();
    let mut dict = IntersectionDict::default();
    for d in 2..=7usize {
        if n <= d {
            continue;
        }
        let s: String = (0..n - d)
            .map(|i| {
                if proper_crossing(list.segments[i], list.segments[i + d]) {
                    'T'
                } else {
                    'F'
                }
            })
            .collect();
        dict.entries.insert(d as u8, s);
    }
    dict
}

/// Float proper-crossing test for trajectory segments.
pub fn proper_crossing_f64(s1: ((f64, f64), (f64, f64)), s2: ((f64, f64), (f64, f64))) -> bool {
    let cross = |o: (f64, f64), p: (f64, f64), q: (f64, f64)| {
        (p.0 - o.0) * (q.1 - o.1) - (p.1 - o.1) * (q.0 - o.0)
    };
    // Scale the tolerance with the segment extents so the test is robust
    // across pixel magnitudes.
    let scale = |s: ((f64, f64), (f64, f64))| {
        (s.0 .0.abs() + s.0 .1.abs() + s.1 .0.abs() + s.1 .1.abs()).max(1.0)
    };
    let eps = TRAJ_EPS * scale(s1) * scale(s2);
    let d1 = cross(s1.0, s1.1, s2.0);
    let d2 = cross(s1.0, s1.1, s2.1);
    let d3 = cross(s2.0, s2.1, s1.0);
    let d4 = cross(s2.0, s2.1, s1.1);
    d1.abs() > eps
        && d2.abs() > eps
        && d3.abs() > eps
        && d4.abs() > eps
        && (d1 > 0.0) != (d2 > 0.0)
        && (d3 > 0.0) != (d4 > 0.0)
}

/// Per-gap proper-crossing record over float segments, restricted to pair
/// indices (i, i+d) with both indices inside `window` (inclusive bounds).
pub fn parse_intersections_f64_window(
    segments: &[((f64, f64), (f64, f64))],
    window: (usize, usize),
) -> IntersectionDict {
    let (lo, hi) = window;
    let mut dict = IntersectionDict::default();
    if hi < lo || hi >= segments.len() {
        return dict;
    }
    for d in 2..=7usize {
        if hi - lo < d {
            continue;
        }
        let s: String = (lo..=hi - d)
            .map(|i| {
                if proper_crossing_f64(segments[i], segments[i + d]) {
                    'T'
                } else {
                    'F'
                }
            })
            .collect();
        dict.entries.insert(d as u8, s);
    }
    dict
}
