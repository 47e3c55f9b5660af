//! MULTIMOORA: ratio system, reference point and full multiplicative form,
//! combined by dominance.

use serde_json::json;

use crate::crisp::normalize;
use crate::error::Result;
use crate::model::{DecisionMatrix, WeightVector};
use crate::ranking::{Ranking, ScoreOrder};

pub const METHOD: &str = "multimoora";

/// Combines three sub-rankings by dominance.
///
/// `a` dominates `b` when it is ranked no worse in all three systems and
/// strictly better in at least one. Alternatives are ordered by how many
/// others they dominate (more first), then by the sum of their three ranks,
/// then by their ratio-system rank, then by matrix order. Alternatives equal
/// on all three keys tie.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceAggregation {
    pub dominated_counts: Vec<usize>,
    pub rank_sums: Vec<usize>,
}

impl DominanceAggregation {
    pub fn new(ratio: &[usize], reference: &[usize], multiplicative: &[usize]) -> Self {
        let n = ratio.len();
        let systems = [ratio, reference, multiplicative];
        let dominates = |a: usize, b: usize| {
            systems.iter().all(|r| r[a] <= r[b]) && systems.iter().any(|r| r[a] < r[b])
        };
        let dominated_counts = (0..n)
            .map(|a| (0..n).filter(|&b| b != a && dominates(a, b)).count())
            .collect();
        let rank_sums = (0..n).map(|a| ratio[a] + reference[a] + multiplicative[a]).collect();
        DominanceAggregation {
            dominated_counts,
            rank_sums,
        }
    }

    pub fn ranking(&self, method: &str, ids: &[String], ratio: &[usize]) -> Ranking {
        let keys: Vec<(std::cmp::Reverse<usize>, usize, usize)> = (0..ids.len())
            .map(|a| (std::cmp::Reverse(self.dominated_counts[a]), self.rank_sums[a], ratio[a]))
            .collect();
        let mut r = Ranking::from_keys(method, ids, &keys, |x, y| x.cmp(y));
        for e in &mut r.entries {
            e.score = Some(self.dominated_counts[e.index] as f64);
        }
        r.with_meta("score", "number of alternatives dominated")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultimooraSystems {
    pub ratio: Vec<f64>,
    pub reference: Vec<f64>,
    pub multiplicative: Vec<f64>,
}

impl MultimooraSystems {
    pub fn sub_rankings(&self, ids: &[String]) -> [Ranking; 3] {
        [
            Ranking::from_scores("ratio_system", ids, &self.ratio, ScoreOrder::HigherIsBetter),
            Ranking::from_scores("reference_point", ids, &self.reference, ScoreOrder::LowerIsBetter),
            Ranking::from_scores("full_multiplicative", ids, &self.multiplicative, ScoreOrder::HigherIsBetter),
        ]
    }

    /// Aggregates the three systems by dominance and records them as metadata.
    pub fn aggregate(&self, method: &str, ids: &[String]) -> Ranking {
        let [ratio, reference, multiplicative] = self.sub_rankings(ids);
        let (rr, pr, mr) = (
            ratio.ranks_by_index(),
            reference.ranks_by_index(),
            multiplicative.ranks_by_index(),
        );
        DominanceAggregation::new(&rr, &pr, &mr)
            .ranking(method, ids, &rr)
            .with_meta("ratio_system", json!({"scores": self.ratio, "ranks": rr}))
            .with_meta("reference_point", json!({"scores": self.reference, "ranks": pr}))
            .with_meta("full_multiplicative", json!({"scores": self.multiplicative, "ranks": mr}))
    }
}

pub fn systems(m: &DecisionMatrix, w: &WeightVector) -> Result<MultimooraSystems> {
    normalize::require_positive(m)?;
    let weights = w.aligned(m.criteria())?;
    let r = normalize::vector(m)?;
    let benefit: Vec<bool> = m.criteria().iter().map(|c| c.is_benefit()).collect();

    let ratio = r
        .iter()
        .map(|row| {
            row.iter()
                .zip(&weights)
                .zip(&benefit)
                .map(|((x, w), &b)| if b { w * x } else { -(w * x) })
                .sum()
        })
        .collect();

    let reference_point: Vec<f64> = (0..m.n_criteria())
        .map(|j| {
            let col = r.iter().map(|row| row[j]);
            if benefit[j] {
                col.fold(f64::NEG_INFINITY, f64::max)
            } else {
                col.fold(f64::INFINITY, f64::min)
            }
        })
        .collect();
    let reference = r
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, x)| (weights[j] * reference_point[j] - weights[j] * x).abs())
                .fold(0.0, f64::max)
        })
        .collect();

    let multiplicative = m
        .rows()
        .iter()
        .map(|row| {
            let (mut gains, mut costs) = (1.0, 1.0);
            for (v, &b) in row.iter().zip(&benefit) {
                if b {
                    gains *= v;
                } else {
                    costs *= v;
                }
            }
            gains / costs
        })
        .collect();

    Ok(MultimooraSystems {
        ratio,
        reference,
        multiplicative,
    })
}

pub fn multimoora(m: &DecisionMatrix, w: &WeightVector) -> Result<Ranking> {
    Ok(systems(m, w)?.aggregate(METHOD, m.alternatives()))
}
