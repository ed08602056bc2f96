//! Pattern complexity scoring: C = S * log2(L + I + O).
//!
//! S counts connected dots, L is the total stroke length in grid units, I
//! counts non-adjacent merged segment pairs that meet in at least one point
//! (crossings and touches), and O counts collinear segment pairs whose
//! interiors overlap.

use serde::Serialize;

use crate::geom::{collinear_overlap, pattern_to_segments, segments_touch};
use crate::pattern::Pattern;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexityScore {
    pub connected_dots: u32,
    pub total_length: f64,
    pub intersections: u32,
    pub overlaps: u32,
    pub score: f64,
}

pub fn complexity_score(pattern: &Pattern) -> ComplexityScore {
    let segs = pattern_to_segments(pattern).segments;
    let total_length: f64 = segs.iter().map(|s| s.length()).sum();
    let mut intersections = 0u32;
    let mut overlaps = 0u32;
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if j > i + 1 && segments_touch(segs[i], segs[j]) {
                intersections += 1;
            }
            if collinear_overlap(segs[i], segs[j]) {
                overlaps += 1;
            }
        }
    }
    let connected_dots = pattern.len() as u32;
    let score = connected_dots as f64
        * (total_length + intersections as f64 + overlaps as f64).log2();
    ComplexityScore {
        connected_dots,
        total_length,
        intersections,
        overlaps,
        score,
    }
}

/// Histogram over buckets of width 6 (1-6, 7-12, ... 43-48), matching the
/// usual presentation of the score distribution.
pub fn score_histogram(scores: impl Iterator<Item = f64>) -> Vec<(String, usize)> {
    let mut bins = vec![0usize; 8];
    for s in scores {
        let idx = (((s - 1e-9) / 6.0).floor().max(0.0) as usize).min(7);
        bins[idx] += 1;
    }
    bins.into_iter()
        .enumerate()
        .map(|(i, n)| (format!("{}-{}", 6 * i + 1, 6 * (i + 1)), n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::validate_pattern;

    fn pat(keys: &[i64]) -> Pattern {
        validate_pattern(keys).unwrap()
    }

    #[test]
    fn straight_hook_score() {
        let c = complexity_score(&pat(&[1, 2, 3, 6]));
        assert_eq!(c.connected_dots, 4);
        assert!((c.total_length - 3.0).abs() < 1e-12);
        assert_eq!(c.intersections, 0);
        assert_eq!(c.overlaps, 0);
        assert!((c.score - 4.0 * 3.0f64.log2()).abs() < 1e-9);
        assert!((c.score - 6.3399).abs() < 1e-3);
    }

    #[test]
    fn crossing_pattern_score() {
        let c = complexity_score(&pat(&[1, 6, 8, 3]));
        let expect_l = 2.0 * 5.0f64.sqrt() + 2.0f64.sqrt();
        assert!((c.total_length - expect_l).abs() < 1e-12);
        assert_eq!(c.intersections, 1);
        assert_eq!(c.overlaps, 0);
        assert!((c.score - 4.0 * (expect_l + 1.0).log2()).abs() < 1e-9);
    }

    #[test]
    fn back_track_counts_overlap() {
        // 2->1 then 1->3 retraces the 1..2 stretch.
        let c = complexity_score(&pat(&[2, 1, 3, 6]));
        assert_eq!(c.overlaps, 1);
    }

    #[test]
    fn histogram_buckets() {
        let h = score_histogram([6.0, 6.34, 12.1, 46.8].into_iter());
        assert_eq!(h[0], ("1-6".to_string(), 1));
        assert_eq!(h[1].1, 1);
        assert_eq!(h[2].1, 1);
        assert_eq!(h[7], ("43-48".to_string(), 1));
    }
}
