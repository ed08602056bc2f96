//! The standard cipher dictionary: every ordered triple of distinct
//! turning dots, with its standard vector pair and full key expansion.
//!
//! 9 * 8 * 7 = 504 ciphers. The expansion inserts the midpoint key of any
//! edge that passes over a grid dot, so a cipher may cover up to 5 keys.
//! Whether those inserted keys are legal in context is the candidate
//! engine's business, not the dictionary's.

use std::sync::OnceLock;

use serde::Serialize;

use crate::grid::{key_position, midpoint_key};

#[derive(Debug, Clone, Serialize)]
pub struct Cipher {
    /// The three turning dots (d1, d2, d3), all distinct.
    pub dots: (u8, u8, u8),
    /// Full ordered key list including forced pass-through dots.
    pub key_expansion: Vec<u8>,
    /// First standard vector: pos(d2) - pos(d1), grid units.
    pub u: (i64, i64),
    /// Second standard vector: pos(d3) - pos(d2), grid units.
    pub v: (i64, i64),
    /// Length pair (|u|, |v|).
    pub w: (f64, f64),
}

impl Cipher {
    fn new(d1: u8, d2: u8, d3: u8) -> Cipher {
        let p1 = key_position(d1);
        let p2 = key_position(d2);
        let p3 = key_position(d3);
        let u = (p2.0 - p1.0, p2.1 - p1.1);
        let v = (p3.0 - p2.0, p3.1 - p2.1);
        let mut key_expansion = vec![d1];
        if let Some(m) = midpoint_key(d1, d2) {
            key_expansion.push(m);
        }
        key_expansion.push(d2);
        if let Some(m) = midpoint_key(d2, d3) {
            key_expansion.push(m);
        }
        key_expansion.push(d3);
        let norm = |p: (i64, i64)| ((p.0 * p.0 + p.1 * p.1) as f64).sqrt();
        Cipher {
            dots: (d1, d2, d3),
            key_expansion,
            u,
            v,
            w: (norm(u), norm(v)),
        }
    }

    /// Angle between the rays d2->d1 and d2->d3, in degrees. Straight
    /// pass-throughs give 180, immediate reversals give 0.
    pub fn interior_angle_deg(&self) -> f64 {
        let r1 = (-self.u.0 as f64, -self.u.1 as f64);
        let r2 = (self.v.0 as f64, self.v.1 as f64);
        let dot = r1.0 * r2.0 + r1.1 * r2.1;
        let cos = dot / (r1.0.hypot(r1.1) * r2.0.hypot(r2.1));
        cos.clamp(-1.0, 1.0).acos().to_degrees()
    }
}

/// The five standard edge lengths and ten standard angles on the grid.
pub struct StandardSets {
    pub distances: [f64; 5],
    pub angles_deg: [f64; 10],
}

pub fn standard_sets() -> StandardSets {
    StandardSets {
        distances: [
            1.0,
            2.0f64.sqrt(),
            2.0,
            5.0f64.sqrt(),
            2.0 * 2.0f64.sqrt(),
        ],
        angles_deg: [18.0, 27.0, 37.0, 45.0, 53.0, 63.0, 72.0, 90.0, 117.0, 135.0],
    }
}

/// All 504 ciphers in lexicographic (d1, d2, d3) order. Built once and
/// shared.
pub fn build_cipher_dictionary() -> &'static [Cipher] {
    static DICT: OnceLock<Vec<Cipher>> = OnceLock::new();
    DICT.get_or_init(|| {
        let mut out = Vec::with_capacity(504);
        for d1 in 1..=9u8 {
            for d2 in 1..=9u8 {
                if d2 == d1 {
                    continue;
                }
                for d3 in 1..=9u8 {
                    if d3 == d1 || d3 == d2 {
                        continue;
                    }
                    out.push(Cipher::new(d1, d2, d3));
                }
            }
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dictionary_has_504_ciphers() {
        assert_eq!(build_cipher_dictionary().len(), 504);
    }

    #[test]
    fn expansion_inserts_pass_through_keys() {
        let dict = build_cipher_dictionary();
        let c139 = dict.iter().find(|c| c.dots == (1, 3, 9)).unwrap();
        assert_eq!(c139.key_expansion, vec![1, 2, 3, 6, 9]);
        assert_eq!(c139.u, (2, 0));
        assert_eq!(c139.v, (0, 2));
        let c159 = dict.iter().find(|c| c.dots == (1, 5, 9)).unwrap();
        assert_eq!(c159.key_expansion, vec![1, 5, 9]);
    }

    #[test]
    fn expansion_reversal_symmetry() {
        let dict = build_cipher_dictionary();
        for c in dict {
            let rev = dict
                .iter()
                .find(|r| r.dots == (c.dots.2, c.dots.1, c.dots.0))
                .unwrap();
            let mut fwd = c.key_expansion.clone();
            fwd.reverse();
            assert_eq!(fwd, rev.key_expansion);
        }
    }

    #[test]
    fn lengths_and_angles_are_standard() {
        let sets = standard_sets();
        for c in build_cipher_dictionary() {
            for len in [c.w.0, c.w.1] {
                assert!(
                    sets.distances.iter().any(|d| (d - len).abs() < 1e-9),
                    "length {len} of {:?} not standard",
                    c.dots
                );
            }
            let angle = c.interior_angle_deg();
            let standard = sets.angles_deg.iter().any(|a| (a - angle).abs() < 0.5)
                || angle < 0.5
                || angle > 179.5;
            assert!(standard, "angle {angle} of {:?} not standard", c.dots);
        }
    }

    #[test]
    fn expansion_length_five_count_matches_brute_force() {
        // Independent count: triples where both edges have a midpoint key.
        let mut expect = 0;
        for d1 in 1..=9u8 {
            for d2 in 1..=9u8 {
                for d3 in 1..=9u8 {
                    if d1 == d2 || d2 == d3 || d1 == d3 {
                        continue;
                    }
                    if midpoint_key(d1, d2).is_some() && midpoint_key(d2, d3).is_some() {
                        expect += 1;
                    }
                }
            }
        }
        let got = build_cipher_dictionary()
            .iter()
            .filter(|c| c.key_expansion.len() == 5)
            .count();
        assert_eq!(got, expect);
        assert!(got > 0);
    }
}
