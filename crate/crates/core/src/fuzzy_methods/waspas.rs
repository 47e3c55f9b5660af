//! Fuzzy WASPAS: fuzzy linear normalization, a fuzzy weighted sum and a
//! fuzzy weighted product, both defuzzified by centroid and blended by
//! `lambda`. Higher is better.

use serde_json::json;

use crate::error::{DssError, Result};
use crate::fuzzy::Tfn;
use crate::fuzzy_methods::{lifted, linear_normalized, sum};
use crate::model::{DecisionMatrix, FuzzyWeightVector};
use crate::ranking::{Ranking, ScoreOrder};

pub const METHOD: &str = "fuzzy_waspas";

pub fn scores(m: &DecisionMatrix, w: &FuzzyWeightVector, lambda: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(DssError::InvalidParameter(format!("lambda must lie in [0, 1], got {lambda}")));
    }
    let weights = w.aligned(m.criteria())?;
    let r = linear_normalized(m, &lifted(m))?;
    r.iter()
        .map(|row| {
            let additive = sum(row.iter().zip(&weights).map(|(x, w)| x.mul(*w)).collect::<Result<Vec<_>>>()?)
                .defuzz_centroid();
            if lambda == 1.0 {
                return Ok(additive);
            }
            let multiplicative = row
                .iter()
                .zip(&weights)
                .try_fold(Tfn::ONE, |acc, (x, w)| acc.mul(x.pow(*w)?))?
                .defuzz_centroid();
            Ok(lambda * additive + (1.0 - lambda) * multiplicative)
        })
        .collect()
}

pub fn fuzzy_waspas(m: &DecisionMatrix, w: &FuzzyWeightVector, lambda: f64) -> Result<Ranking> {
    let q = scores(m, w, lambda)?;
    Ok(Ranking::from_scores(METHOD, m.alternatives(), &q, ScoreOrder::HigherIsBetter)
        .with_meta("lambda", lambda)
        .with_meta("defuzzification", "centroid")
        .with_meta("Q", json!(q)))
}
