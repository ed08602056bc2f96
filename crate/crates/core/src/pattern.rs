//! Pattern validity and exhaustive enumeration.
//!
//! A valid pattern connects 4..9 distinct keys, and a stroke may never pass
//! over a grid dot that has not been selected yet (the stroke between 1 and
//! 3 passes 2, so 2 must already be in the pattern).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::grid::midpoint_key;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern must connect at least 4 keys, got {0}")]
    TooShort(usize),
    #[error("key {0} used more than once")]
    DuplicateKey(u8),
    #[error("key {0} is outside 1..9")]
    KeyOutOfRange(i64),
    #[error("stroke {from}->{to} skips unselected key {midpoint}")]
    SkippedUnvisitedPoint { from: u8, to: u8, midpoint: u8 },
}

/// A validated unlock pattern: an ordered sequence of distinct grid keys.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    keys: Vec<u8>,
}

impl Pattern {
    pub fn keys(&self) -> &[u8] {
        &self.keys
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Apply a key permutation (e.g. one of the D4 grid symmetries).
    pub fn permuted(&self, map: &[u8; 9]) -> Result<Pattern, PatternError> {
        validate_pattern(
            &self
                .keys
                .iter()
                .map(|&k| map[(k - 1) as usize] as i64)
                .collect::<Vec<_>>(),
        )
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in &self.keys {
            if !first {
                write!(f, "-")?;
            }
            write!(f, "{k}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Pattern, PatternError> {
        let keys: Vec<i64> = s
            .split('-')
            .map(|part| part.trim().parse::<i64>().map_err(|_| PatternError::KeyOutOfRange(-1)))
            .collect::<Result<_, _>>()?;
        validate_pattern(&keys)
    }
}

/// Check the four pattern-lock rules and return the validated pattern.
///
/// The skip rule repairs nothing: a sequence whose stroke passes an
/// unselected dot is rejected, not auto-expanded.
pub fn validate_pattern(keys: &[i64]) -> Result<Pattern, PatternError> {
    for &k in keys {
        if !(1..=9).contains(&k) {
            return Err(PatternError::KeyOutOfRange(k));
        }
    }
    let keys: Vec<u8> = keys.iter().map(|&k| k as u8).collect();
    let mut seen = [false; 9];
    for &k in &keys {
        if seen[(k - 1) as usize] {
            return Err(PatternError::DuplicateKey(k));
        }
        seen[(k - 1) as usize] = true;
    }
    if keys.len() < 4 {
        return Err(PatternError::TooShort(keys.len()));
    }
    let mut visited = [false; 9];
    visited[(keys[0] - 1) as usize] = true;
    for pair in keys.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if let Some(m) = midpoint_key(a, b) {
            if !visited[(m - 1) as usize] {
                return Err(PatternError::SkippedUnvisitedPoint {
                    from: a,
                    to: b,
                    midpoint: m,
                });
            }
        }
        visited[(b - 1) as usize] = true;
    }
    Ok(Pattern { keys })
}

/// Can `next` legally extend the prefix `keys` (distinctness + skip rule)?
pub(crate) fn can_extend(keys: &[u8], visited: u16, next: u8) -> bool {
    if visited & (1 << next) != 0 {
        return false;
    }
    match midpoint_key(*keys.last().expect("non-empty prefix"), next) {
        Some(m) => visited & (1 << m) != 0,
        None => true,
    }
}

/// Stream every valid pattern exactly once, in lexicographic order of the
/// key sequence (a prefix sorts before its extensions).
pub fn enumerate_valid_patterns() -> impl Iterator<Item = Pattern> {
    (1..=9u8).flat_map(patterns_starting_at)
}

/// The lexicographic pattern stream restricted to one start key. The nine
/// per-key streams are independent, so they can run on parallel workers.
pub fn patterns_starting_at(start: u8) -> PatternIter {
    assert!((1..=9).contains(&start));
    PatternIter {
        seq: vec![start],
        next_try: vec![1],
        visited: 1 << start,
        done: false,
    }
}

/// Depth-first pattern enumerator with an explicit stack.
pub struct PatternIter {
    seq: Vec<u8>,
    next_try: Vec<u8>,
    visited: u16,
    done: bool,
}

impl Iterator for PatternIter {
    type Item = Pattern;

    fn next(&mut self) -> Option<Pattern> {
        while !self.done {
            let depth = self.seq.len();
            let try_from = *self.next_try.last().unwrap();
            let mut advanced = false;
            if depth < 9 {
                for k in try_from..=9 {
                    if can_extend(&self.seq, self.visited, k) {
                        *self.next_try.last_mut().unwrap() = k + 1;
                        self.seq.push(k);
                        self.next_try.push(1);
                        self.visited |= 1 << k;
                        advanced = true;
                        break;
                    }
                }
            }
            if advanced {
                if self.seq.len() >= 4 {
                    return Some(Pattern {
                        keys: self.seq.clone(),
                    });
                }
                continue;
            }
            // Exhausted extensions at this depth; backtrack.
            let popped = self.seq.pop().unwrap();
            self.next_try.pop();
            self.visited &= !(1 << popped);
            if self.seq.is_empty() {
                self.done = true;
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_simple_pattern() {
        assert!(validate_pattern(&[1, 2, 3, 6]).is_ok());
    }

    #[test]
    fn rejects_skipped_unvisited_midpoint() {
        assert_eq!(
            validate_pattern(&[1, 3, 2, 5]),
            Err(PatternError::SkippedUnvisitedPoint {
                from: 1,
                to: 3,
                midpoint: 2
            })
        );
    }

    #[test]
    fn allows_pass_through_of_visited_key() {
        assert!(validate_pattern(&[2, 1, 3, 6]).is_ok());
    }

    #[test]
    fn rejects_short_pattern() {
        assert_eq!(validate_pattern(&[1, 2, 3]), Err(PatternError::TooShort(3)));
    }

    #[test]
    fn rejects_duplicates_and_range() {
        assert_eq!(
            validate_pattern(&[1, 1, 2, 3]),
            Err(PatternError::DuplicateKey(1))
        );
        assert_eq!(
            validate_pattern(&[0, 1, 2, 3]),
            Err(PatternError::KeyOutOfRange(0))
        );
    }

    #[test]
    fn text_round_trip() {
        let p: Pattern = "1-6-8-3".parse().unwrap();
        assert_eq!(p.keys(), &[1, 6, 8, 3]);
        assert_eq!(p.to_string(), "1-6-8-3");
        assert!("1-3-2-5".parse::<Pattern>().is_err());
    }

    #[test]
    fn enumeration_is_lexicographic_and_unique() {
        let mut prev: Option<Vec<u8>> = None;
        let mut n = 0usize;
        for p in patterns_starting_at(1) {
            let keys = p.keys().to_vec();
            if let Some(prev) = &prev {
                assert!(*prev < keys);
            }
            prev = Some(keys);
            n += 1;
        }
        assert!(n > 0);
    }

    #[test]
    fn full_count_known_value() {
        assert_eq!(enumerate_valid_patterns().count(), 389_112);
    }

    #[test]
    fn corner_start_counts_equal_by_symmetry() {
        let counts: Vec<usize> = [1u8, 3, 7, 9]
            .iter()
            .map(|&k| patterns_starting_at(k).count())
            .collect();
        assert!(counts.windows(2).all(|w| w[0] == w[1]));
    }
}
