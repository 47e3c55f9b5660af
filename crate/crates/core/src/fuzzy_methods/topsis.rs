//! Fuzzy TOPSIS with vector or linear normalization.
//!
//! Distances are vertex distances summed over criteria, against the fixed
//! ideal `(1, 1, 1)` and anti-ideal `(0, 0, 0)`. Under vector normalization a
//! minimized criterion keeps its orientation, so its ideal and anti-ideal
//! swap.

use serde_json::json;

use crate::crisp::topsis::Normalization;
use crate::error::{DssError, Result};
use crate::fuzzy::Tfn;
use crate::fuzzy_methods::{lifted, linear_normalized};
use crate::model::{DecisionMatrix, FuzzyWeightVector};
use crate::ranking::{Ranking, ScoreOrder};

pub fn method_name(norm: Normalization) -> &'static str {
    match norm {
        Normalization::Vector => "fuzzy_topsis_vector",
        Normalization::Linear => "fuzzy_topsis_linear",
    }
}

/// Fuzzy vector normalization: each component divided by the Euclidean norm
/// of the same component across alternatives, through fuzzy division.
fn vector_normalized(m: &DecisionMatrix, x: &[Vec<Tfn>]) -> Result<Vec<Vec<Tfn>>> {
    let mut out = x.to_vec();
    for (j, c) in m.criteria().iter().enumerate() {
        let norm = |k: usize| x.iter().map(|row| row[j].components()[k].powi(2)).sum::<f64>().sqrt();
        let divisor = Tfn {
            a1: norm(0),
            a2: norm(1),
            a3: norm(2),
        };
        if divisor.a1 <= 0.0 {
            return Err(DssError::NormalizationDomain {
                criterion: c.id.clone(),
                reason: "column norm is zero".into(),
            });
        }
        for (i, row) in out.iter_mut().enumerate() {
            row[j] = x[i][j].div(divisor)?;
        }
    }
    Ok(out)
}

/// Weighted normalized matrix and, per criterion, whether larger is better.
pub fn weighted_normalized(
    m: &DecisionMatrix,
    w: &FuzzyWeightVector,
    norm: Normalization,
) -> Result<(Vec<Vec<Tfn>>, Vec<bool>)> {
    let weights = w.aligned(m.criteria())?;
    let x = lifted(m);
    let (r, benefit) = match norm {
        Normalization::Vector => (
            vector_normalized(m, &x)?,
            m.criteria().iter().map(|c| c.is_benefit()).collect(),
        ),
        Normalization::Linear => (linear_normalized(m, &x)?, vec![true; m.n_criteria()]),
    };
    let t = r
        .into_iter()
        .map(|row| row.into_iter().zip(&weights).map(|(x, w)| x.mul(*w)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    Ok((t, benefit))
}

pub fn closeness(m: &DecisionMatrix, w: &FuzzyWeightVector, norm: Normalization) -> Result<Vec<f64>> {
    let (t, benefit) = weighted_normalized(m, w, norm)?;
    Ok(t.iter()
        .map(|row| {
            let (mut d_plus, mut d_minus) = (0.0, 0.0);
            for (x, &b) in row.iter().zip(&benefit) {
                let (ideal, anti) = if b { (Tfn::ONE, Tfn::ZERO) } else { (Tfn::ZERO, Tfn::ONE) };
                d_plus += x.distance(ideal);
                d_minus += x.distance(anti);
            }
            let total = d_plus + d_minus;
            if total == 0.0 {
                0.5
            } else {
                d_minus / total
            }
        })
        .collect())
}

pub fn fuzzy_topsis(m: &DecisionMatrix, w: &FuzzyWeightVector, norm: Normalization) -> Result<Ranking> {
    let c = closeness(m, w, norm)?;
    Ok(
        Ranking::from_scores(method_name(norm), m.alternatives(), &c, ScoreOrder::HigherIsBetter)
            .with_meta("normalization", norm.name())
            .with_meta("closeness", json!(c)),
    )
}
