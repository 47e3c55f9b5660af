use crate::error::{DssError, Result};
use crate::model::{DecisionMatrix, Direction};

/// Linear transformation of maximum: `v / max` for benefit criteria and
/// `min / v` for cost criteria. Every output is a benefit score.
pub fn linear(m: &DecisionMatrix) -> Result<Vec<Vec<f64>>> {
    let mut out = vec![vec![0.0; m.n_criteria()]; m.n_alternatives()];
    for (j, c) in m.criteria().iter().enumerate() {
        let (lo, hi) = m.column_min_max(j);
        match c.direction {
            Direction::Maximize => {
                if hi <= 0.0 {
                    return Err(DssError::NormalizationDomain {
                        criterion: c.id.clone(),
                        reason: format!("maximum {hi} must be strictly positive"),
                    });
                }
                for (i, row) in out.iter_mut().enumerate() {
                    row[j] = m.value(i, j) / hi;
                }
            }
            Direction::Minimize => {
                if lo <= 0.0 {
                    return Err(DssError::NormalizationDomain {
                        criterion: c.id.clone(),
                        reason: format!("minimized criterion needs strictly positive values, found {lo}"),
                    });
                }
                for (i, row) in out.iter_mut().enumerate() {
                    row[j] = lo / m.value(i, j);
                }
            }
        }
    }
    Ok(out)
}

/// Vector normalization `v / sqrt(sum of v^2)` per column. Direction is
/// preserved: a cost criterion stays a cost criterion.
pub fn vector(m: &DecisionMatrix) -> Result<Vec<Vec<f64>>> {
    let mut out = vec![vec![0.0; m.n_criteria()]; m.n_alternatives()];
    for (j, c) in m.criteria().iter().enumerate() {
        let norm = m.rows().iter().map(|r| r[j] * r[j]).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(DssError::NormalizationDomain {
                criterion: c.id.clone(),
                reason: "column is all zeros".into(),
            });
        }
        for (i, row) in out.iter_mut().enumerate() {
            row[j] = m.value(i, j) / norm;
        }
    }
    Ok(out)
}

pub(crate) fn require_positive(m: &DecisionMatrix) -> Result<()> {
    for (i, row) in m.rows().iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v <= 0.0 {
                return Err(DssError::ValueDomain {
                    alternative: m.alternatives()[i].clone(),
                    criterion: m.criteria()[j].id.clone(),
                    reason: format!("value {v} must be strictly positive"),
                });
            }
        }
    }
    Ok(())
}
