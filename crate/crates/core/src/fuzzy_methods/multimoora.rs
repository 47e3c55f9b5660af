//! Fuzzy MULTIMOORA.
//!
//! Each criterion is scaled by the square root of the summed squared vertex
//! distances of its values from zero. The ratio system and the full
//! multiplicative form are defuzzified by best nonfuzzy performance; the
//! reference point uses the largest vertex distance to the componentwise
//! best weighted value. The three systems are combined by the same dominance
//! rule as the crisp method.

use crate::crisp::multimoora::MultimooraSystems;
use crate::crisp::normalize;
use crate::error::{DssError, Result};
use crate::fuzzy::Tfn;
use crate::fuzzy_methods::lifted;
use crate::model::{DecisionMatrix, FuzzyWeightVector};
use crate::ranking::Ranking;

pub const METHOD: &str = "fuzzy_multimoora";

pub fn systems(m: &DecisionMatrix, w: &FuzzyWeightVector) -> Result<MultimooraSystems> {
    normalize::require_positive(m)?;
    let weights = w.aligned(m.criteria())?;
    let x = lifted(m);
    let benefit: Vec<bool> = m.criteria().iter().map(|c| c.is_benefit()).collect();
    let n_crit = m.n_criteria();

    let mut weighted = x.clone();
    for j in 0..n_crit {
        let norm = x.iter().map(|row| row[j].distance(Tfn::ZERO).powi(2)).sum::<f64>().sqrt();
        if norm <= 0.0 {
            return Err(DssError::NormalizationDomain {
                criterion: m.criteria()[j].id.clone(),
                reason: "column norm is zero".into(),
            });
        }
        for (i, row) in weighted.iter_mut().enumerate() {
            row[j] = weights[j].mul(x[i][j].scale(1.0 / norm)?)?;
        }
    }

    let ratio = weighted
        .iter()
        .map(|row| {
            let (mut gains, mut costs) = (Tfn::ZERO, Tfn::ZERO);
            for (t, &b) in row.iter().zip(&benefit) {
                if b {
                    gains = gains.add(*t);
                } else {
                    costs = costs.add(*t);
                }
            }
            gains.sub(costs).defuzz_bnp()
        })
        .collect();

    let reference_point: Vec<Tfn> = (0..n_crit)
        .map(|j| {
            let first = weighted[0][j];
            weighted.iter().map(|row| row[j]).fold(first, |acc, t| {
                if benefit[j] {
                    acc.max(t)
                } else {
                    acc.min(t)
                }
            })
        })
        .collect();
    let reference = weighted
        .iter()
        .map(|row| {
            row.iter()
                .zip(&reference_point)
                .map(|(t, r)| t.distance(*r))
                .fold(0.0, f64::max)
        })
        .collect();

    let multiplicative = x
        .iter()
        .map(|row| {
            let (mut gains, mut costs) = (Tfn::ONE, Tfn::ONE);
            for (t, &b) in row.iter().zip(&benefit) {
                if b {
                    gains = gains.mul(*t)?;
                } else {
                    costs = costs.mul(*t)?;
                }
            }
            Ok(gains.div(costs)?.defuzz_bnp())
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(MultimooraSystems {
        ratio,
        reference,
        multiplicative,
    })
}

pub fn fuzzy_multimoora(m: &DecisionMatrix, w: &FuzzyWeightVector) -> Result<Ranking> {
    Ok(systems(m, w)?
        .aggregate(METHOD, m.alternatives())
        .with_meta("defuzzification", "bnp"))
}
