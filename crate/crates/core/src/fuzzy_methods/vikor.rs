//! Fuzzy VIKOR.
//!
//! Distances to the fuzzy ideal are divided by the crisp spread between the
//! outer bounds of the ideal and anti-ideal values, so every intermediate
//! quantity stays a triangular number. `Q` is defuzzified by the weighted
//! mean `(a1 + 2 a2 + a3) / 4` and lower is better.

use serde_json::json;

use crate::error::{DssError, Result};
use crate::fuzzy::Tfn;
use crate::fuzzy_methods::lifted;
use crate::model::{DecisionMatrix, FuzzyWeightVector};
use crate::ranking::{Ranking, ScoreOrder};

pub const METHOD: &str = "fuzzy_vikor";

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyVikorScores {
    pub s: Vec<Tfn>,
    pub r: Vec<Tfn>,
    pub q: Vec<Tfn>,
    pub q_crisp: Vec<f64>,
    /// Criteria, and the `S`/`R` terms, whose spread vanished.
    pub degenerate: Vec<String>,
}

fn bounds(xs: impl Iterator<Item = Tfn> + Clone) -> (Tfn, Tfn) {
    let first = xs.clone().next().unwrap_or(Tfn::ZERO);
    xs.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

pub fn scores(m: &DecisionMatrix, w: &FuzzyWeightVector, v: f64) -> Result<FuzzyVikorScores> {
    if !(0.0..=1.0).contains(&v) {
        return Err(DssError::InvalidParameter(format!("v must lie in [0, 1], got {v}")));
    }
    let weights = w.aligned(m.criteria())?;
    let x = lifted(m);
    let n = m.n_alternatives();
    let mut s = vec![Tfn::ZERO; n];
    let mut r = vec![Tfn::ZERO; n];
    let mut degenerate = Vec::new();
    for (j, c) in m.criteria().iter().enumerate() {
        let (lo, hi) = bounds(x.iter().map(|row| row[j]));
        let (best, worst) = if c.is_benefit() { (hi, lo) } else { (lo, hi) };
        let spread = if c.is_benefit() { best.a3 - worst.a1 } else { worst.a3 - best.a1 };
        if spread <= 0.0 {
            degenerate.push(c.id.clone());
            continue;
        }
        for i in 0..n {
            let gap = if c.is_benefit() { best.sub(x[i][j]) } else { x[i][j].sub(best) };
            let term = weights[j].mul(gap.scale(1.0 / spread)?)?;
            s[i] = s[i].add(term);
            r[i] = r[i].max(term);
        }
    }

    let (s_best, s_worst) = bounds(s.iter().copied());
    let (r_best, r_worst) = bounds(r.iter().copied());
    let s_spread = s_worst.a3 - s_best.a1;
    let r_spread = r_worst.a3 - r_best.a1;
    if s_spread <= 0.0 {
        degenerate.push("S".into());
    }
    if r_spread <= 0.0 {
        degenerate.push("R".into());
    }
    let q = s
        .iter()
        .zip(&r)
        .map(|(si, ri)| {
            let group = if s_spread > 0.0 { si.sub(s_best).scale(v / s_spread)? } else { Tfn::ZERO };
            let regret = if r_spread > 0.0 { ri.sub(r_best).scale((1.0 - v) / r_spread)? } else { Tfn::ZERO };
            Ok(group.add(regret))
        })
        .collect::<Result<Vec<_>>>()?;
    let q_crisp = q.iter().map(Tfn::defuzz_weighted_mean2).collect();
    Ok(FuzzyVikorScores {
        s,
        r,
        q,
        q_crisp,
        degenerate,
    })
}

pub fn fuzzy_vikor(m: &DecisionMatrix, w: &FuzzyWeightVector, v: f64) -> Result<Ranking> {
    let sc = scores(m, w, v)?;
    Ok(
        Ranking::from_scores(METHOD, m.alternatives(), &sc.q_crisp, ScoreOrder::LowerIsBetter)
            .with_meta("v", v)
            .with_meta("S", json!(sc.s))
            .with_meta("R", json!(sc.r))
            .with_meta("Q", json!(sc.q))
            .with_meta("defuzzification", "weighted_mean")
            .with_meta("degenerate", json!(sc.degenerate)),
    )
}
