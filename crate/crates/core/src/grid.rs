//! The 3x3 pattern-lock grid.
//!
//! Keys are numbered 1..9 row by row, top-left first. Coordinates are in
//! grid units with y increasing downward (screen convention), so key 1 sits
//! at (0, 0) and key 9 at (2, 2). Adjacent horizontal/vertical keys are
//! exactly one grid unit apart.

/// A grid key paired with its position in grid units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridPoint {
    pub key: u8,
    pub position: (i64, i64),
}

impl GridPoint {
    pub fn new(key: u8) -> GridPoint {
        assert!((1..=9).contains(&key), "grid key out of range: {key}");
        GridPoint {
            key,
            position: key_position(key),
        }
    }
}

/// Position of a key in grid units: ((k-1) mod 3, (k-1) div 3).
pub fn key_position(key: u8) -> (i64, i64) {
    debug_assert!((1..=9).contains(&key));
    let k = (key - 1) as i64;
    (k % 3, k / 3)
}

/// Key at a grid position, if the position lies on the grid.
pub fn key_at(x: i64, y: i64) -> Option<u8> {
    if (0..3).contains(&x) && (0..3).contains(&y) {
        Some((y * 3 + x + 1) as u8)
    } else {
        None
    }
}

/// The key sitting exactly halfway between `a` and `b`, when the segment
/// a-b passes over a third grid dot. There are exactly 8 such pairs on the
/// 3x3 grid (rows, columns, and the two diagonals through the center).
pub fn midpoint_key(a: u8, b: u8) -> Option<u8> {
    let (ax, ay) = key_position(a);
    let (bx, by) = key_position(b);
    let sx = ax + bx;
    let sy = ay + by;
    if sx % 2 != 0 || sy % 2 != 0 {
        return None;
    }
    let m = key_at(sx / 2, sy / 2)?;
    if m == a || m == b {
        None
    } else {
        Some(m)
    }
}

/// The 8 symmetries of the square grid (rotations and reflections), as
/// key permutations. Index 0 is the identity.
pub fn d4_symmetries() -> [[u8; 9]; 8] {
    let mut out = [[0u8; 9]; 8];
    // (x, y) maps for: id, rot90, rot180, rot270, flip-x, flip-y, and the
    // two diagonal flips. y-down does not matter here, only bijectivity.
    let maps: [fn(i64, i64) -> (i64, i64); 8] = [
        |x, y| (x, y),
        |x, y| (2 - y, x),
        |x, y| (2 - x, 2 - y),
        |x, y| (y, 2 - x),
        |x, y| (2 - x, y),
        |x, y| (x, 2 - y),
        |x, y| (y, x),
        |x, y| (2 - y, 2 - x),
    ];
    for (i, f) in maps.iter().enumerate() {
        for k in 1..=9u8 {
            let (x, y) = key_position(k);
            let (nx, ny) = f(x, y);
            out[i][(k - 1) as usize] = key_at(nx, ny).unwrap();
        }
    }
    out
}
