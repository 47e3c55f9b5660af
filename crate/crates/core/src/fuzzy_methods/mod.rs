//! Fuzzy counterparts of AHP, VIKOR, TOPSIS, MULTIMOORA and WASPAS.
//!
//! Performance values are crisp and enter as degenerate fuzzy numbers; the
//! fuzziness comes from the weights and, for AHP, the pairwise comparisons.

pub mod ahp;
pub mod multimoora;
pub mod topsis;
pub mod vikor;
pub mod waspas;

pub use ahp::{fuzzy_ahp, fuzzy_ahp_with, Fuzziness};
pub use multimoora::fuzzy_multimoora;
pub use topsis::fuzzy_topsis;
pub use vikor::fuzzy_vikor;
pub use waspas::fuzzy_waspas;

use crate::error::{DssError, Result};
use crate::fuzzy::Tfn;
use crate::model::DecisionMatrix;

/// The decision matrix as degenerate fuzzy numbers.
pub(crate) fn lifted(m: &DecisionMatrix) -> Vec<Vec<Tfn>> {
    m.rows()
        .iter()
        .map(|row| row.iter().map(|&v| Tfn::crisp(v)).collect())
        .collect()
}

/// Fuzzy linear transformation of maximum: benefit criteria divide by the
/// largest upper bound, cost criteria divide the smallest lower bound by the
/// value. Every output is a benefit score.
pub(crate) fn linear_normalized(m: &DecisionMatrix, x: &[Vec<Tfn>]) -> Result<Vec<Vec<Tfn>>> {
    let mut out = x.to_vec();
    for (j, c) in m.criteria().iter().enumerate() {
        if c.is_benefit() {
            let max3 = x.iter().map(|row| row[j].a3).fold(f64::NEG_INFINITY, f64::max);
            if max3 <= 0.0 {
                return Err(DssError::NormalizationDomain {
                    criterion: c.id.clone(),
                    reason: format!("maximum {max3} must be strictly positive"),
                });
            }
            for (i, row) in out.iter_mut().enumerate() {
                row[j] = x[i][j].scale(1.0 / max3)?;
            }
        } else {
            let min1 = x.iter().map(|row| row[j].a1).fold(f64::INFINITY, f64::min);
            if min1 <= 0.0 {
                return Err(DssError::NormalizationDomain {
                    criterion: c.id.clone(),
                    reason: format!("minimized criterion needs strictly positive values, found {min1}"),
                });
            }
            for (i, row) in out.iter_mut().enumerate() {
                row[j] = Tfn::crisp(min1).div(x[i][j])?;
            }
        }
    }
    Ok(out)
}

pub(crate) fn sum(xs: impl IntoIterator<Item = Tfn>) -> Tfn {
    xs.into_iter().fold(Tfn::ZERO, Tfn::add)
}
