//! Small statistics toolbox: Gaussian KDE and rank correlations.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("need samples to estimate a density")]
    EmptySamples,
    #[error("bandwidth must be positive, got {0}")]
    NonPositiveSigma(f64),
    #[error("need at least 2 pairs, got {0}")]
    TooFewPairs(usize),
    #[error("tied values make the coefficient undefined")]
    TiedValues,
}

/// Gaussian kernel density estimate evaluated at `x`:
/// (1 / (n sigma sqrt(2 pi))) * sum exp(-(x - x_i)^2 / (2 sigma^2)).
pub fn gaussian_kde(samples: &[f64], sigma: f64, x: f64) -> Result<f64, StatsError> {
    if samples.is_empty() {
        return Err(StatsError::EmptySamples);
    }
    if sigma <= 0.0 {
        return Err(StatsError::NonPositiveSigma(sigma));
    }
    let norm = 1.0 / (samples.len() as f64 * sigma * (2.0 * std::f64::consts::PI).sqrt());
    let sum: f64 = samples
        .iter()
        .map(|&xi| (-(x - xi) * (x - xi) / (2.0 * sigma * sigma)).exp())
        .sum();
    Ok(norm * sum)
}

/// KDE evaluated over a whole grid.
pub fn gaussian_kde_grid(
    samples: &[f64],
    sigma: f64,
    grid: &[f64],
) -> Result<Vec<f64>, StatsError> {
    grid.iter()
        .map(|&x| gaussian_kde(samples, sigma, x))
        .collect()
}

/// Silverman's rule-of-thumb bandwidth: 1.06 * std * n^(-1/5), with a tiny
/// floor so identical samples still yield a usable (spiky) density.
pub fn silverman_bandwidth(samples: &[f64]) -> Result<f64, StatsError> {
    if samples.is_empty() {
        return Err(StatsError::EmptySamples);
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|&x| (x - mean) * (x - mean)).sum::<f64>() / n;
    Ok((1.06 * var.sqrt() * n.powf(-0.2)).max(1e-9))
}

/// Kendall's tau over paired observations. Any tie in either coordinate is
/// an error: the plain tau-a count does not define a value for ties.
pub fn kendall_tau(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    assert_eq!(a.len(), b.len(), "paired samples must have equal length");
    let n = a.len();
    if n < 2 {
        return Err(StatsError::TooFewPairs(n));
    }
    let mut concordant = 0i64;
    let mut discordant = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            let da = a[i] - a[j];
            let db = b[i] - b[j];
            if da == 0.0 || db == 0.0 {
                return Err(StatsError::TiedValues);
            }
            if (da > 0.0) == (db > 0.0) {
                concordant += 1;
            } else {
                discordant += 1;
            }
        }
    }
    let total = (n * (n - 1) / 2) as f64;
    Ok((concordant - discordant) as f64 / total)
}

/// Tie-tolerant concordance used by the feature-correlation experiment:
/// pairs where both deltas are zero count as concordant, pairs where only
/// one is zero count as discordant. Noiseless measurements of a repeated
/// standard value then still self-correlate at exactly 1.
pub(crate) fn kendall_tau_tie_tolerant(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    if n < 2 {
        return Err(StatsError::TooFewPairs(n));
    }
    let mut concordant = 0i64;
    let mut discordant = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            let da = a[i] - a[j];
            let db = b[i] - b[j];
            let both_zero = da == 0.0 && db == 0.0;
            if both_zero || da * db > 0.0 {
                concordant += 1;
            } else {
                discordant += 1;
            }
        }
    }
    let total = (n * (n - 1) / 2) as f64;
    Ok((concordant - discordant) as f64 / total)
}

fn average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman's rho: 1 - 6 sum d_i^2 / (n (n^2 - 1)), with average ranks for
/// ties.
pub fn spearman_rho(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    assert_eq!(a.len(), b.len(), "paired samples must have equal length");
    let n = a.len();
    if n < 2 {
        return Err(StatsError::TooFewPairs(n));
    }
    let ra = average_ranks(a);
    let rb = average_ranks(b);
    let d2: f64 = ra
        .iter()
        .zip(&rb)
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    let nf = n as f64;
    Ok(1.0 - 6.0 * d2 / (nf * (nf * nf - 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kde_matches_hand_computation() {
        let samples = [0.0, 2.0];
        let sigma = 1.0;
        let expect = (1.0 / (2.0 * (2.0 * std::f64::consts::PI).sqrt()))
            * ((-0.5f64).exp() + (-0.5f64).exp());
        let got = gaussian_kde(&samples, sigma, 1.0).unwrap();
        assert!((got - expect).abs() < 1e-15);
    }

    #[test]
    fn kde_rejects_bad_input() {
        assert_eq!(gaussian_kde(&[], 1.0, 0.0), Err(StatsError::EmptySamples));
        assert_eq!(
            gaussian_kde(&[1.0], 0.0, 0.0),
            Err(StatsError::NonPositiveSigma(0.0))
        );
    }

    #[test]
    fn kendall_perfect_orders() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let up = [10.0, 20.0, 30.0, 40.0];
        let down = [4.0, 3.0, 2.0, 1.0];
        assert_eq!(kendall_tau(&a, &up), Ok(1.0));
        assert_eq!(kendall_tau(&a, &down), Ok(-1.0));
    }

    #[test]
    fn kendall_rejects_ties() {
        assert_eq!(
            kendall_tau(&[1.0, 1.0, 2.0], &[1.0, 2.0, 3.0]),
            Err(StatsError::TiedValues)
        );
    }

    #[test]
    fn tie_tolerant_kendall_self_correlates() {
        let a = [1.0, 1.0, 2.0, 2.0, 3.0];
        assert_eq!(kendall_tau_tie_tolerant(&a, &a), Ok(1.0));
    }

    #[test]
    fn spearman_handles_ties_with_average_ranks() {
        // hand-checked: a ranks 1, 2.5, 2.5, 4; b ranks 1..4
        let a = [1.0, 2.0, 2.0, 3.0];
        let b = [1.0, 2.0, 3.0, 4.0];
        let d2 = 0.0 + 0.25 + 0.25 + 0.0;
        let expect = 1.0 - 6.0 * d2 / (4.0 * 15.0);
        assert!((spearman_rho(&a, &b).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn too_few_pairs() {
        assert_eq!(kendall_tau(&[1.0], &[1.0]), Err(StatsError::TooFewPairs(1)));
        assert_eq!(spearman_rho(&[], &[]), Err(StatsError::TooFewPairs(0)));
    }
}
