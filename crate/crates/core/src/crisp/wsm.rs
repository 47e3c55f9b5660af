use crate::crisp::normalize;
use crate::error::Result;
use crate::model::{DecisionMatrix, WeightVector};
use crate::ranking::{Ranking, ScoreOrder};

pub const METHOD: &str = "wsm";

/// Weighted sum of linear-normalized scores.
pub fn scores(m: &DecisionMatrix, w: &WeightVector) -> Result<Vec<f64>> {
    let weights = w.aligned(m.criteria())?;
    let r = normalize::linear(m)?;
    Ok(r.iter()
        .map(|row| row.iter().zip(&weights).map(|(x, w)| w * x).sum())
        .collect())
}

pub fn wsm(m: &DecisionMatrix, w: &WeightVector) -> Result<Ranking> {
    let s = scores(m, w)?;
    Ok(Ranking::from_scores(METHOD, m.alternatives(), &s, ScoreOrder::HigherIsBetter)
        .with_meta("normalization", "linear"))
}
