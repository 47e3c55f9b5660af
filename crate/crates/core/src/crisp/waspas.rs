use crate::crisp::normalize;
use crate::error::{DssError, Result};
use crate::model::{DecisionMatrix, WeightVector};
use crate::ranking::{Ranking, ScoreOrder};

pub const METHOD: &str = "waspas";

/// `Q = lambda * WSM + (1 - lambda) * WPM` over linear-normalized scores.
pub fn scores(m: &DecisionMatrix, w: &WeightVector, lambda: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(DssError::InvalidParameter(format!("lambda must lie in [0, 1], got {lambda}")));
    }
    let weights = w.aligned(m.criteria())?;
    let r = normalize::linear(m)?;
    if lambda < 1.0 {
        for (i, row) in r.iter().enumerate() {
            if let Some(j) = row.iter().position(|&x| x <= 0.0) {
                return Err(DssError::ValueDomain {
                    alternative: m.alternatives()[i].clone(),
                    criterion: m.criteria()[j].id.clone(),
                    reason: "normalized value must be positive for the multiplicative part".into(),
                });
            }
        }
    }
    Ok(r.iter()
        .map(|row| {
            let additive: f64 = row.iter().zip(&weights).map(|(x, w)| w * x).sum();
            let multiplicative: f64 = row.iter().zip(&weights).map(|(x, w)| x.powf(*w)).product();
            lambda * additive + (1.0 - lambda) * multiplicative
        })
        .collect())
}

pub fn waspas(m: &DecisionMatrix, w: &WeightVector, lambda: f64) -> Result<Ranking> {
    let s = scores(m, w, lambda)?;
    Ok(Ranking::from_scores(METHOD, m.alternatives(), &s, ScoreOrder::HigherIsBetter)
        .with_meta("lambda", lambda)
        .with_meta("normalization", "linear"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crisp::{wpm, wsm};
    use crate::model::Criterion;

    fn instance() -> (DecisionMatrix, WeightVector) {
        let m = DecisionMatrix::new(
            vec![Criterion::minimize("a"), Criterion::maximize("b")],
            vec!["s1".into(), "s2".into(), "s3".into()],
            vec![vec![2.0, 3.0], vec![4.0, 9.0], vec![3.0, 5.0]],
        )
        .unwrap();
        let w = WeightVector::normalized([("a".to_string(), 0.6), ("b".to_string(), 0.4)]).unwrap();
        (m, w)
    }

    #[test]
    fn extremes_reduce_to_wsm_and_wpm() {
        let (m, w) = instance();
        assert_eq!(waspas(&m, &w, 1.0).unwrap().ids(), wsm::wsm(&m, &w).unwrap().ids());
        assert_eq!(waspas(&m, &w, 0.0).unwrap().ids(), wpm::wpm(&m, &w).unwrap().ids());
    }

    #[test]
    fn half_is_mean_of_wsm_and_wpm() {
        let (m, w) = instance();
        // Hand values: r = [[1, 1/3], [0.5, 1], [2/3, 5/9]].
        let r: [[f64; 2]; 3] = [[1.0, 1.0 / 3.0], [0.5, 1.0], [2.0 / 3.0, 5.0 / 9.0]];
        let q = scores(&m, &w, 0.5).unwrap();
        for (i, row) in r.iter().enumerate() {
            let additive = 0.6 * row[0] + 0.4 * row[1];
            let multiplicative = row[0].powf(0.6) * row[1].powf(0.4);
            assert!((q[i] - 0.5 * (additive + multiplicative)).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_zero_normalized_value() {
        let m = DecisionMatrix::new(
            vec![Criterion::maximize("b")],
            vec!["s1".into(), "s2".into()],
            vec![vec![0.0], vec![1.0]],
        )
        .unwrap();
        let w = WeightVector::uniform(m.criteria());
        assert!(waspas(&m, &w, 0.5).is_err());
        assert!(waspas(&m, &w, 1.0).is_ok());
    }
}
