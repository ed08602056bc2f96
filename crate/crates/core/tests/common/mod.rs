//! Independent test-side oracles. Everything here is written from first
//! principles, deliberately not sharing code with the library, so the two
//! can check each other.

#![allow(dead_code)]

use num_rational::Rational64;

/// Position of key k (1..9) on the grid, y growing downward.
fn pos(k: usize) -> (i64, i64) {
    (((k - 1) % 3) as i64, ((k - 1) / 3) as i64)
}

/// The dot strictly between a and b, if the straight stroke a->b passes
/// over one. Derived from coordinates: the midpoint is a grid dot exactly
/// when both coordinate sums are even.
fn between(a: usize, b: usize) -> Option<usize> {
    let (ax, ay) = pos(a);
    let (bx, by) = pos(b);
    if (ax + bx) % 2 == 0 && (ay + by) % 2 == 0 {
        let (mx, my) = ((ax + bx) / 2, (ay + by) / 2);
        let m = (my * 3 + mx + 1) as usize;
        if m != a && m != b {
            return Some(m);
        }
    }
    None
}

fn dfs(current: usize, visited: &mut [bool; 10], len: usize, counts: &mut [u64; 10]) {
    counts[len] += 1;
    if len == 9 {
        return;
    }
    for next in 1..=9 {
        if visited[next] {
            continue;
        }
        if let Some(m) = between(current, next) {
            if !visited[m] {
                continue;
            }
        }
        visited[next] = true;
        dfs(next, visited, len + 1, counts);
        visited[next] = false;
    }
}

/// Number of valid patterns per length (index 4..=9). Independent DFS.
pub fn dfs_pattern_counts() -> [u64; 10] {
    let mut counts = [0u64; 10];
    for start in 1..=9 {
        let mut visited = [false; 10];
        visited[start] = true;
        dfs(start, &mut visited, 1, &mut counts);
    }
    // lengths below 4 are not valid patterns
    for c in counts.iter_mut().take(4) {
        *c = 0;
    }
    counts
}

/// Exact rational test: do the open interiors of segments p and q share a
/// point that lies strictly inside both? Solves the 2x2 linear system with
/// num-rational arithmetic; parallel segments never properly cross.
pub fn rational_proper_crossing(p: ((i64, i64), (i64, i64)), q: ((i64, i64), (i64, i64))) -> bool {
    let r = (p.1 .0 - p.0 .0, p.1 .1 - p.0 .1);
    let s = (q.1 .0 - q.0 .0, q.1 .1 - q.0 .1);
    let denom = r.0 * s.1 - r.1 * s.0;
    if denom == 0 {
        return false;
    }
    let d = (q.0 .0 - p.0 .0, q.0 .1 - p.0 .1);
    let t = Rational64::new(d.0 * s.1 - d.1 * s.0, denom);
    let u = Rational64::new(d.0 * r.1 - d.1 * r.0, denom);
    let zero = Rational64::from_integer(0);
    let one = Rational64::from_integer(1);
    t > zero && t < one && u > zero && u < one
}

/// Kendall tau straight from the textbook formula 4P/(n(n-1)) - 1 with P the
/// concordant pair count. Panics on ties; callers supply tie-free data.
pub fn kendall_brute(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len();
    let mut p = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            assert!(a[i] != a[j] && b[i] != b[j], "oracle got tied values");
            if (a[i] < a[j]) == (b[i] < b[j]) {
                p += 1;
            }
        }
    }
    4.0 * p as f64 / (n as f64 * (n as f64 - 1.0)) - 1.0
}

fn ranks_dense(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut out = vec![0.0; values.len()];
    for (r, &i) in idx.iter().enumerate() {
        out[i] = (r + 1) as f64;
    }
    out
}

/// Spearman via rank-then-Pearson on tie-free data.
pub fn spearman_rank_pearson(a: &[f64], b: &[f64]) -> f64 {
    let ra = ranks_dense(a);
    let rb = ranks_dense(b);
    let n = ra.len() as f64;
    let ma = ra.iter().sum::<f64>() / n;
    let mb = rb.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for i in 0..ra.len() {
        cov += (ra[i] - ma) * (rb[i] - mb);
        va += (ra[i] - ma) * (ra[i] - ma);
        vb += (rb[i] - mb) * (rb[i] - mb);
    }
    cov / (va.sqrt() * vb.sqrt())
}

/// Trapezoid integral of f sampled on a uniform grid.
pub fn trapezoid(values: &[f64], step: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let ends = 0.5 * (values[0] + values[values.len() - 1]);
    let middle: f64 = values[1..values.len() - 1].iter().sum();
    (ends + middle) * step
}

/// Max distance from any dropped input point to the simplified chain,
/// measured against the chord that replaced it (brute force, no recursion
/// sharing with the library).
pub fn max_deviation(original: &[(f64, f64)], kept_indexes: &[usize]) -> f64 {
    let mut worst = 0.0f64;
    for w in kept_indexes.windows(2) {
        let (a, b) = (original[w[0]], original[w[1]]);
        for &p in &original[w[0] + 1..w[1]] {
            let d = point_to_chord(p, a, b);
            worst = worst.max(d);
        }
    }
    worst
}

fn point_to_chord(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return (p.0 - a.0).hypot(p.1 - a.1);
    }
    let t = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0);
    (p.0 - (a.0 + t * dx)).hypot(p.1 - (a.1 + t * dy))
}
