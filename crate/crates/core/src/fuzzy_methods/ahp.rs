//! Fuzzy AHP with geometric-mean priorities.
//!
//! Criteria comparisons divide the importance-degree numbers of the two
//! criteria; alternative comparisons widen the crisp 1-9 scale value `n` to
//! `(n-1, n, n+1)` clipped to `[1, 9]`. Priorities come from row geometric
//! means and the global priorities are ordered by Chen's maximizing and
//! minimizing set.

use serde_json::json;

use crate::crisp::ahp::oriented_scale;
use crate::error::{DssError, Result};
use crate::fuzzy::{chen_utilities, Tfn};
use crate::model::{DecisionMatrix, OperatorProfile};
use crate::ranking::{Ranking, ScoreOrder};

pub const METHOD: &str = "fuzzy_ahp";

/// How pairwise judgements are expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fuzziness {
    /// Linguistic fuzzy numbers (the normal mode).
    #[default]
    Linguistic,
    /// Crisp judgements lifted to degenerate fuzzy numbers.
    Degenerate,
}

pub fn criteria_comparisons(
    profile: &OperatorProfile,
    m: &DecisionMatrix,
    fuzziness: Fuzziness,
) -> Result<Vec<Vec<Tfn>>> {
    let degrees = profile.aligned_degrees(m.criteria())?;
    let mut a = vec![vec![Tfn::ONE; degrees.len()]; degrees.len()];
    for (i, di) in degrees.iter().enumerate() {
        for (j, dj) in degrees.iter().enumerate() {
            if i == j || di == dj {
                continue;
            }
            a[i][j] = match fuzziness {
                Fuzziness::Linguistic => di.tfn().div(dj.tfn()).map_err(|e| DssError::FuzzyDomain {
                    op: "div",
                    reason: format!(
                        "cannot compare `{}` against `{}` ({} importance has a zero lower bound): {e}",
                        m.criteria()[i].id,
                        m.criteria()[j].id,
                        dj.name()
                    ),
                })?,
                Fuzziness::Degenerate => Tfn::crisp(di.value() as f64 / dj.value() as f64),
            };
        }
    }
    Ok(a)
}

fn widened(n: u32) -> Tfn {
    if n <= 1 {
        return Tfn::ONE;
    }
    let n = n as f64;
    Tfn {
        a1: (n - 1.0).max(1.0),
        a2: n,
        a3: (n + 1.0).min(9.0),
    }
}

pub fn alternative_comparisons(m: &DecisionMatrix, j: usize, fuzziness: Fuzziness) -> Result<Vec<Vec<Tfn>>> {
    let n = m.n_alternatives();
    let mut a = vec![vec![Tfn::ONE; n]; n];
    for s in 0..n {
        for t in (s + 1)..n {
            let (value, s_better) = oriented_scale(m, j, s, t);
            let judgement = match fuzziness {
                Fuzziness::Linguistic => widened(value),
                Fuzziness::Degenerate => Tfn::crisp(value as f64),
            };
            let reciprocal = match fuzziness {
                Fuzziness::Linguistic => Tfn::ONE.div(judgement)?,
                Fuzziness::Degenerate => Tfn::crisp(1.0 / value as f64),
            };
            if s_better {
                (a[s][t], a[t][s]) = (judgement, reciprocal);
            } else {
                (a[s][t], a[t][s]) = (reciprocal, judgement);
            }
        }
    }
    Ok(a)
}

/// Fuzzy priorities from row geometric means: the lower bound divides by the
/// sum of upper geometric means and vice versa.
pub fn geometric_mean_weights(a: &[Vec<Tfn>]) -> Result<Vec<Tfn>> {
    let n = a.len();
    if n == 0 || a.iter().any(|row| row.len() != n) {
        return Err(DssError::InvalidParameter("comparison matrix must be square and non-empty".into()));
    }
    let exponent = 1.0 / n as f64;
    let gm: Vec<[f64; 3]> = a
        .iter()
        .map(|row| {
            let mut g = [1.0; 3];
            for x in row {
                g[0] *= x.a1;
                g[1] *= x.a2;
                g[2] *= x.a3;
            }
            g.map(|p| p.powf(exponent))
        })
        .collect();
    let totals = (0..3).map(|k| gm.iter().map(|g| g[k]).sum::<f64>()).collect::<Vec<_>>();
    if totals[0] <= 0.0 {
        return Err(DssError::FuzzyDomain {
            op: "div",
            reason: "geometric means must be strictly positive".into(),
        });
    }
    Ok(gm
        .iter()
        .map(|g| Tfn {
            a1: g[0] / totals[2],
            a2: g[1] / totals[1],
            a3: g[2] / totals[0],
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyAhpPriorities {
    pub criteria: Vec<Tfn>,
    /// `local[f][s]`.
    pub local: Vec<Vec<Tfn>>,
}

impl FuzzyAhpPriorities {
    pub fn global(&self) -> Result<Vec<Tfn>> {
        let n = self.local.first().map_or(0, Vec::len);
        (0..n)
            .map(|s| {
                self.criteria
                    .iter()
                    .zip(&self.local)
                    .try_fold(Tfn::ZERO, |acc, (w, p)| Ok(acc.add(w.mul(p[s])?)))
            })
            .collect()
    }
}

pub fn priorities(m: &DecisionMatrix, profile: &OperatorProfile, fuzziness: Fuzziness) -> Result<FuzzyAhpPriorities> {
    if m.n_alternatives() < 2 {
        return Err(DssError::InvalidMatrix("AHP needs at least two alternatives".into()));
    }
    let criteria = geometric_mean_weights(&criteria_comparisons(profile, m, fuzziness)?)?;
    let local = (0..m.n_criteria())
        .map(|j| geometric_mean_weights(&alternative_comparisons(m, j, fuzziness)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(FuzzyAhpPriorities { criteria, local })
}

pub fn fuzzy_ahp_with(m: &DecisionMatrix, profile: &OperatorProfile, fuzziness: Fuzziness) -> Result<Ranking> {
    let p = priorities(m, profile, fuzziness)?;
    let global = p.global()?;
    let utilities = chen_utilities(&global);
    Ok(
        Ranking::from_scores(METHOD, m.alternatives(), &utilities, ScoreOrder::HigherIsBetter)
            .with_meta("global_priorities", json!(global))
            .with_meta("criteria_priorities", json!(p.criteria))
            .with_meta("comparison", "chen_max_min_set")
            .with_meta("optimism", "symmetric"),
    )
}

pub fn fuzzy_ahp(m: &DecisionMatrix, profile: &OperatorProfile) -> Result<Ranking> {
    fuzzy_ahp_with(m, profile, Fuzziness::Linguistic)
}
