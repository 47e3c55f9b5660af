use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::crisp::normalize;
use crate::error::Result;
use crate::model::{DecisionMatrix, WeightVector};
use crate::ranking::{Ranking, ScoreOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    Vector,
    Linear,
}

impl Normalization {
    pub fn name(self) -> &'static str {
        match self {
            Normalization::Vector => "vector",
            Normalization::Linear => "linear",
        }
    }
}

pub fn method_name(norm: Normalization) -> &'static str {
    match norm {
        Normalization::Vector => "topsis_vector",
        Normalization::Linear => "topsis_linear",
    }
}

/// Weighted normalized matrix and, per criterion, whether larger entries are
/// better. Linear normalization turns every criterion into a benefit one.
pub fn weighted_normalized(
    m: &DecisionMatrix,
    w: &WeightVector,
    norm: Normalization,
) -> Result<(Vec<Vec<f64>>, Vec<bool>)> {
    let weights = w.aligned(m.criteria())?;
    let (r, benefit) = match norm {
        Normalization::Vector => (
            normalize::vector(m)?,
            m.criteria().iter().map(|c| c.is_benefit()).collect(),
        ),
        Normalization::Linear => (normalize::linear(m)?, vec![true; m.n_criteria()]),
    };
    let t = r
        .into_iter()
        .map(|row| row.into_iter().zip(&weights).map(|(x, w)| x * w).collect())
        .collect();
    Ok((t, benefit))
}

/// Closeness `d- / (d+ + d-)` to the ideal point; 0.5 when both distances vanish.
pub fn closeness(m: &DecisionMatrix, w: &WeightVector, norm: Normalization) -> Result<Vec<f64>> {
    let (t, benefit) = weighted_normalized(m, w, norm)?;
    let n_crit = m.n_criteria();
    let mut ideal = vec![0.0; n_crit];
    let mut anti = vec![0.0; n_crit];
    for j in 0..n_crit {
        let (lo, hi) = t
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), row| (lo.min(row[j]), hi.max(row[j])));
        (ideal[j], anti[j]) = if benefit[j] { (hi, lo) } else { (lo, hi) };
    }
    Ok(t.iter()
        .map(|row| {
            let d_plus = euclid(row, &ideal);
            let d_minus = euclid(row, &anti);
            let total = d_plus + d_minus;
            if total == 0.0 {
                0.5
            } else {
                d_minus / total
            }
        })
        .collect())
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn topsis(m: &DecisionMatrix, w: &WeightVector, norm: Normalization) -> Result<Ranking> {
    let c = closeness(m, w, norm)?;
    Ok(
        Ranking::from_scores(method_name(norm), m.alternatives(), &c, ScoreOrder::HigherIsBetter)
            .with_meta("normalization", norm.name())
            .with_meta("closeness", json!(c)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Criterion;

    fn matrix(rows: Vec<Vec<f64>>) -> DecisionMatrix {
        let criteria = vec![Criterion::maximize("g"), Criterion::minimize("c")];
        let ids = (1..=rows.len()).map(|i| format!("s{i}")).collect();
        DecisionMatrix::new(criteria, ids, rows).unwrap()
    }

    #[test]
    fn ideal_and_anti_ideal_alternatives() {
        for norm in [Normalization::Vector, Normalization::Linear] {
            let m = matrix(vec![vec![5.0, 1.0], vec![3.0, 2.0], vec![1.0, 4.0]]);
            let c = closeness(&m, &WeightVector::uniform(m.criteria()), norm).unwrap();
            assert_eq!(c[0], 1.0);
            assert_eq!(c[2], 0.0);
            let r = topsis(&m, &WeightVector::uniform(m.criteria()), norm).unwrap();
            assert_eq!(r.ids(), vec!["s1", "s2", "s3"]);
        }
    }

    #[test]
    fn single_distinct_point_is_half() {
        let m = matrix(vec![vec![2.0, 2.0], vec![2.0, 2.0]]);
        let c = closeness(&m, &WeightVector::uniform(m.criteria()), Normalization::Vector).unwrap();
        assert_eq!(c, vec![0.5, 0.5]);
    }
}
