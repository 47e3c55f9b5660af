//! Two-sided Wilcoxon signed-rank test.
//!
//! Zero differences are dropped and tied absolute differences share their
//! average rank. Up to [`EXACT_MAX_N`] nonzero differences the null
//! distribution of `W+` is computed exactly by counting subset sums of the
//! (doubled) ranks; above that a normal approximation with tie and
//! continuity corrections is used.

use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::ranking::scores_tie;

pub const EXACT_MAX_N: usize = 25;

/// Differences smaller than this in magnitude count as zero.
pub const ZERO_DIFFERENCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WilcoxonMethod {
    Exact,
    Normal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WilcoxonResult {
    /// Number of nonzero differences.
    pub n: usize,
    pub w_plus: f64,
    pub w_minus: f64,
    pub p_value: f64,
    pub method: WilcoxonMethod,
}

/// Average ranks (1-based) of `values`, equal values sharing a rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && scores_tie(values[order[start]], values[order[end]]) {
            end += 1;
        }
        let shared = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = shared;
        }
        start = end;
    }
    ranks
}

pub fn signed_rank(differences: &[f64]) -> WilcoxonResult {
    let d: Vec<f64> = differences.iter().copied().filter(|x| x.abs() >= ZERO_DIFFERENCE).collect();
    let n = d.len();
    if n == 0 {
        return WilcoxonResult {
            n,
            w_plus: 0.0,
            w_minus: 0.0,
            p_value: 1.0,
            method: WilcoxonMethod::Exact,
        };
    }
    let abs: Vec<f64> = d.iter().map(|x| x.abs()).collect();
    let ranks = average_ranks(&abs);
    let w_plus: f64 = d.iter().zip(&ranks).filter(|(x, _)| **x > 0.0).map(|(_, r)| r).sum();
    let total = (n * (n + 1)) as f64 / 2.0;
    let w_minus = total - w_plus;
    let (p_value, method) = if n <= EXACT_MAX_N {
        (exact_p(&ranks, w_plus), WilcoxonMethod::Exact)
    } else {
        (normal_p(&ranks, w_plus), WilcoxonMethod::Normal)
    };
    WilcoxonResult {
        n,
        w_plus,
        w_minus,
        p_value,
        method,
    }
}

fn exact_p(ranks: &[f64], w_plus: f64) -> f64 {
    // Average ranks are multiples of 1/2, so doubled ranks are integers.
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let max_sum: usize = doubled.iter().sum();
    let mut counts = vec![0.0f64; max_sum + 1];
    counts[0] = 1.0;
    for &r in &doubled {
        for s in (r..=max_sum).rev() {
            counts[s] += counts[s - r];
        }
    }
    let total: f64 = counts.iter().sum();
    let w = (2.0 * w_plus).round() as usize;
    let lower: f64 = counts[..=w].iter().sum::<f64>() / total;
    let upper: f64 = counts[w..].iter().sum::<f64>() / total;
    (2.0 * lower.min(upper)).min(1.0)
}

fn normal_p(ranks: &[f64], w_plus: f64) -> f64 {
    let n = ranks.len() as f64;
    let mean = n * (n + 1.0) / 4.0;
    let mut sorted = ranks.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|r| **r == sorted[i]).count();
        let t = j as f64;
        tie_term += t * t * t - t;
        i += j;
    }
    let variance = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    if variance <= 0.0 {
        return 1.0;
    }
    let z = (((w_plus - mean).abs() - 0.5).max(0.0)) / variance.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    (2.0 * (1.0 - normal.cdf(z))).min(1.0)
}
