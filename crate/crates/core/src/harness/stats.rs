use crate::{Error, Result};

/// Cross-run statistics of final best fitness.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub runs: usize,
    pub best: f64,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator, 0 for a single run).
    pub std_dev: f64,
    /// Fraction of runs whose final best is strictly below the acceptance
    /// threshold.
    pub solved_fraction: f64,
}

/// Summarizes final fitness values.
///
/// Values are sorted before accumulation, so the result does not depend on
/// the order runs finished in.
pub fn summarize(finals: &[f64], acceptance: f64) -> Result<Summary> {
    if finals.is_empty() {
        return Err(Error::InvalidParameter(
            "cannot summarize an empty set of runs".into(),
        ));
    }
    let mut sorted = finals.to_vec();
    sorted.sort_by(f64::total_cmp);

    // Welford's running mean / sum of squared deviations.
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (k, &x) in sorted.iter().enumerate() {
        let delta = x - mean;
        mean += delta / (k + 1) as f64;
        m2 += delta * (x - mean);
    }
    let n = sorted.len();
    let std_dev = if n > 1 {
        (m2 / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    let solved = sorted.iter().filter(|&&x| x < acceptance).count();
    Ok(Summary {
        runs: n,
        best: sorted[0],
        mean,
        std_dev,
        solved_fraction: solved as f64 / n as f64,
    })
}

/// Middle value (mean of the two middle values for even counts).
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    })
}
