//! Units: three-turning-point windows of a polyline, and their similarity
//! to standard ciphers.

use thiserror::Error;

use crate::cipher::Cipher;
use crate::rdp::Polyline;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UnitError {
    #[error("need at least 3 turning points to form a unit, got {0}")]
    TooFewTurningPoints(usize),
}

/// A pair of consecutive polyline edges encoded as two vectors plus their
/// length pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unit {
    pub a: (f64, f64),
    pub b: (f64, f64),
    pub c: (f64, f64),
    /// Indexes of the two polyline segments this unit spans.
    pub source_segments: (usize, usize),
    pub weight: f64,
}

/// Slide a three-point window over the turning points: unit i is built
/// from turning points (i, i+1, i+2).
pub fn extract_units(poly: &Polyline) -> Result<Vec<Unit>, UnitError> {
    let pts = &poly.turning_points;
    if pts.len() < 3 {
        return Err(UnitError::TooFewTurningPoints(pts.len()));
    }
    Ok(pts
        .windows(3)
        .enumerate()
        .map(|(i, w)| {
            let a = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            let b = (w[2].0 - w[1].0, w[2].1 - w[1].1);
            Unit {
                a,
                b,
                c: (a.0.hypot(a.1), b.0.hypot(b.1)),
                source_segments: (i, i + 1),
                weight: 1.0,
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy)]
pub struct SimilarityParams {
    pub theta: f64,
}

impl Default for SimilarityParams {
    fn default() -> SimilarityParams {
        SimilarityParams { theta: 0.9 }
    }
}

fn cosine(p: (f64, f64), q: (f64, f64)) -> f64 {
    (p.0 * q.0 + p.1 * q.1) / (p.0.hypot(p.1) * q.0.hypot(q.1))
}

/// Similarity of a trajectory unit to a standard cipher, or `None` when
/// any of the three cosine terms is negative and the cipher is abandoned.
///
/// The length-pair cosine is non-negative for any real unit, but the sign
/// check covers it anyway to match the dropping rule as stated.
pub fn unit_similarity(unit: &Unit, cipher: &Cipher, params: &SimilarityParams) -> Option<f64> {
    let cu = cosine((cipher.u.0 as f64, cipher.u.1 as f64), unit.a);
    let cv = cosine((cipher.v.0 as f64, cipher.v.1 as f64), unit.b);
    let cw = cosine(cipher.w, unit.c);
    // Slack below zero so an exactly-orthogonal pair, whose cosine lands at
    // +/-1e-16 depending on how the coordinates were produced, is accepted
    // or rejected consistently across translated or rescaled inputs.
    const REJECT_EPS: f64 = 1e-9;
    if cu < -REJECT_EPS || cv < -REJECT_EPS || cw < -REJECT_EPS {
        return None;
    }
    Some(0.5 * (cu + cv) * params.theta + cw * (1.0 - params.theta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cipher::build_cipher_dictionary;
    use crate::rdp::Polyline;

    fn poly(points: Vec<(f64, f64)>) -> Polyline {
        let n = points.len();
        Polyline {
            turning_points: points,
            source_indexes: (0..n).collect(),
        }
    }

    fn unit_from(a: (f64, f64), b: (f64, f64)) -> Unit {
        Unit {
            a,
            b,
            c: (a.0.hypot(a.1), b.0.hypot(b.1)),
            source_segments: (0, 1),
            weight: 1.0,
        }
    }

    fn cipher(dots: (u8, u8, u8)) -> &'static Cipher {
        build_cipher_dictionary()
            .iter()
            .find(|c| c.dots == dots)
            .unwrap()
    }

    #[test]
    fn unit_counts() {
        let p7 = poly((0..7).map(|i| (i as f64, (i % 2) as f64 * 10.0)).collect());
        assert_eq!(extract_units(&p7).unwrap().len(), 5);
        let p3 = poly(vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]);
        assert_eq!(extract_units(&p3).unwrap().len(), 1);
        let p2 = poly(vec![(0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(extract_units(&p2), Err(UnitError::TooFewTurningPoints(2)));
    }

    #[test]
    fn identity_and_scale_score_one() {
        let params = SimilarityParams::default();
        let c = cipher((1, 3, 9));
        for k in [1.0, 0.25, 7.0] {
            let u = unit_from((2.0 * k, 0.0), (0.0, 2.0 * k));
            let s = unit_similarity(&u, c, &params).unwrap();
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn opposite_direction_is_rejected() {
        let u = unit_from((-2.0, 0.0), (0.0, 2.0));
        assert_eq!(unit_similarity(&u, cipher((1, 3, 9)), &SimilarityParams::default()), None);
    }

    #[test]
    fn axis_conventions_end_to_end() {
        // y grows downward: 4->5 is +x, 5->8 is +y.
        let u = unit_from((1.0, 0.0), (0.0, 1.0));
        let s = unit_similarity(&u, cipher((4, 5, 8)), &SimilarityParams::default()).unwrap();
        assert!((s - 1.0).abs() < 1e-12);
        // 5->2 heads up the screen, so the same unit must be rejected.
        assert_eq!(unit_similarity(&u, cipher((4, 5, 2)), &SimilarityParams::default()), None);
    }

    #[test]
    fn rejection_ignores_theta() {
        let u = unit_from((-1.0, 0.1), (0.0, 2.0));
        for theta in [0.0, 0.5, 0.9, 1.0] {
            assert_eq!(
                unit_similarity(&u, cipher((1, 3, 9)), &SimilarityParams { theta }),
                None
            );
        }
    }
}
