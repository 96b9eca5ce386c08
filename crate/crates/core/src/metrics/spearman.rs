use std::cmp::Ordering;

use crate::error::{Error, Result};

/// 1-based ranks; tied values share the mean of the ranks they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]].total_cmp(&values[order[start]]) == Ordering::Equal {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let mean = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = mean;
        }
        start = end;
    }
    ranks
}

fn has_ties(ranks: &[f64]) -> bool {
    ranks.iter().any(|r| r.fract() != 0.0) || {
        let mut seen = ranks.to_vec();
        seen.sort_by(f64::total_cmp);
        seen.windows(2).any(|w| w[0] == w[1])
    }
}

/// Spearman rank correlation with average ranks for ties.
///
/// Without ties the closed form `1 - 6 Σd² / (n(n² - 1))` is evaluated in
/// exact integer arithmetic and converted once; with ties the Pearson
/// coefficient of the average ranks is returned.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Domain(format!(
            "spearman: length mismatch ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::Domain(format!("spearman: need at least 2 observations, got {n}")));
    }
    if x.iter().chain(y).any(|v| v.is_nan()) {
        return Err(Error::Domain("spearman: NaN input".into()));
    }
    let constant = |v: &[f64]| v.iter().all(|&a| a == v[0]);
    if constant(x) || constant(y) {
        return Err(Error::Domain("spearman: constant input".into()));
    }

    let rx = average_ranks(x);
    let ry = average_ranks(y);
    if !has_ties(&rx) && !has_ties(&ry) {
        let sum_d2: i128 = rx
            .iter()
            .zip(&ry)
            .map(|(a, b)| {
                let d = *a as i128 - *b as i128;
                d * d
            })
            .sum();
        let n = n as i128;
        let den = n * (n * n - 1);
        let num = den - 6 * sum_d2;
        return Ok(num as f64 / den as f64);
    }

    let mean = (n as f64 + 1.0) / 2.0;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        let (da, db) = (a - mean, b - mean);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}
