//! Random instances and independent reference computations shared by the
//! integration tests. Oracles here are written from the method definitions
//! and do not call the library's scoring code.
#![allow(dead_code)]

use dss_core::ranking::scores_tie;
use dss_core::{Criterion, DecisionMatrix, ImportanceDegree, OperatorProfile, Ranking, WeightVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ids(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("s{i}")).collect()
}

/// Criteria `c0..` with a random mix of directions (all minimized when
/// `all_minimize`).
pub fn criteria(rng: &mut ChaCha8Rng, n: usize, all_minimize: bool) -> Vec<Criterion> {
    (0..n)
        .map(|j| {
            if all_minimize || rng.random_bool(0.5) {
                Criterion::minimize(&format!("c{j}"))
            } else {
                Criterion::maximize(&format!("c{j}"))
            }
        })
        .collect()
}

/// Strictly positive values in `[1, 100)`.
pub fn matrix(rng: &mut ChaCha8Rng, n_alt: usize, criteria: Vec<Criterion>) -> DecisionMatrix {
    let rows = (0..n_alt)
        .map(|_| (0..criteria.len()).map(|_| rng.random_range(1.0..100.0)).collect())
        .collect();
    DecisionMatrix::new(criteria, ids(n_alt), rows).unwrap()
}

pub fn weights(rng: &mut ChaCha8Rng, criteria: &[Criterion]) -> WeightVector {
    WeightVector::normalized(criteria.iter().map(|c| (c.id.clone(), rng.random_range(0.05..1.0)))).unwrap()
}

pub fn profile(rng: &mut ChaCha8Rng, criteria: &[Criterion], allow_very_low: bool) -> OperatorProfile {
    let lo = if allow_very_low { 0 } else { 1 };
    OperatorProfile::new(
        "random",
        criteria
            .iter()
            .map(|c| (c.id.clone(), ImportanceDegree::ALL[rng.random_range(lo..5)])),
    )
}

/// True when no two scores are within `gap` (relative to the larger one).
pub fn well_separated(scores: &[f64], gap: f64) -> bool {
    for i in 0..scores.len() {
        for j in (i + 1)..scores.len() {
            let scale = scores[i].abs().max(scores[j].abs()).max(1e-300);
            if (scores[i] - scores[j]).abs() <= gap * scale {
                return false;
            }
        }
    }
    true
}

pub fn ids_of(r: &Ranking) -> Vec<String> {
    r.ids().into_iter().map(str::to_string).collect()
}

/// Best-first order of `scores` (stable for ties).
pub fn argsort(scores: &[f64], higher_is_better: bool) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| {
        if higher_is_better {
            scores[b].total_cmp(&scores[a])
        } else {
            scores[a].total_cmp(&scores[b])
        }
    });
    idx
}

pub fn ranks_tie_aware(scores: &[f64], higher_is_better: bool) -> Vec<usize> {
    (0..scores.len())
        .map(|i| {
            1 + (0..scores.len())
                .filter(|&j| {
                    !scores_tie(scores[i], scores[j])
                        && if higher_is_better { scores[j] > scores[i] } else { scores[j] < scores[i] }
                })
                .count()
        })
        .collect()
}

/// Direction-aware linear normalization: `v / max` for maximized criteria,
/// `min / v` for minimized ones.
pub fn linear_normalized(m: &DecisionMatrix) -> Vec<Vec<f64>> {
    let n = m.n_alternatives();
    let mut out = vec![vec![0.0; m.n_criteria()]; n];
    for (j, c) in m.criteria().iter().enumerate() {
        let col: Vec<f64> = (0..n).map(|i| m.value(i, j)).collect();
        let max = col.iter().cloned().fold(f64::MIN, f64::max);
        let min = col.iter().cloned().fold(f64::MAX, f64::min);
        for i in 0..n {
            out[i][j] = if c.is_benefit() { col[i] / max } else { min / col[i] };
        }
    }
    out
}

/// Weighted sum over linear-normalized values.
pub fn wsm_oracle(m: &DecisionMatrix, w: &[f64]) -> Vec<f64> {
    linear_normalized(m)
        .iter()
        .map(|row| row.iter().zip(w).map(|(x, w)| x * w).sum())
        .collect()
}

/// Weighted product over linear-normalized values.
pub fn wpm_oracle(m: &DecisionMatrix, w: &[f64]) -> Vec<f64> {
    linear_normalized(m)
        .iter()
        .map(|row| row.iter().zip(w).map(|(x, w)| x.powf(*w)).product())
        .collect()
}

/// Counts-based dominance over three rank vectors, checked by brute force
/// over all pairs; returns the best-first order produced by sorting on
/// (dominated count desc, rank sum asc, first-system rank asc, index).
pub fn dominance_order(ranks: [&[usize]; 3]) -> Vec<usize> {
    let n = ranks[0].len();
    let mut count = vec![0usize; n];
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let mut no_worse = true;
            let mut better = false;
            for r in ranks {
                if r[a] > r[b] {
                    no_worse = false;
                }
                if r[a] < r[b] {
                    better = true;
                }
            }
            if no_worse && better {
                count[a] += 1;
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by_key(|&a| (std::cmp::Reverse(count[a]), ranks[0][a] + ranks[1][a] + ranks[2][a], ranks[0][a], a));
    idx
}
