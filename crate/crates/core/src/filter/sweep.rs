use std::collections::HashMap;

use serde::Serialize;

use crate::error::{DssError, Result};
use crate::filter::hypervolume::{hypervolume, normalize_objectives};
use crate::filter::plan::{distance_matrix, filter_indices, FilterWeights, MissionPlan};
use crate::model::Criterion;

pub const DEFAULT_THRESHOLD: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub threshold: f64,
    pub kept: usize,
    pub hypervolume: f64,
}

/// Parses `start:stop:step` (inclusive of `stop`) or a comma-separated list.
/// Grid values are rounded to 1e-9 so `0:5:0.1` yields exactly 51 clean
/// thresholds.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = |why: &str| DssError::InvalidParameter(format!("invalid grid `{spec}`: {why}"));
    let round = |x: f64| (x * 1e9).round() / 1e9;
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad(&format!("`{s}` is not a number")));
    let parts: Vec<&str> = spec.split(':').collect();
    let grid = match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if !(step > 0.0) || stop < start {
                return Err(bad("need start <= stop and a positive step"));
            }
            let n = ((stop - start) / step + 1e-9).floor() as usize;
            (0..=n).map(|i| round(start + i as f64 * step)).collect::<Vec<_>>()
        }
        [list] => list.split(',').map(num).collect::<Result<Vec<_>>>()?,
        _ => return Err(bad("expected start:stop:step or a comma-separated list")),
    };
    if grid.is_empty() {
        return Err(bad("grid is empty"));
    }
    if let Some(t) = grid.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return Err(bad(&format!("threshold {t} is negative")));
    }
    Ok(grid)
}

/// Kept-plan count and normalized hypervolume of the filtered set for each
/// threshold. Objectives are normalized over the whole ranked set and the
/// reference point is `reference` on every objective.
pub fn threshold_sweep(
    ranked: &[&MissionPlan],
    criteria: &[Criterion],
    w: &FilterWeights,
    thresholds: &[f64],
    reference: f64,
) -> Result<Vec<SweepRow>> {
    w.validate()?;
    if thresholds.is_empty() {
        return Err(DssError::InvalidParameter("threshold grid is empty".into()));
    }
    if ranked.is_empty() {
        return Err(DssError::InvalidParameter("no plans to sweep".into()));
    }
    let rows = ranked
        .iter()
        .map(|p| {
            criteria
                .iter()
                .map(|c| {
                    p.criteria
                        .get(&c.id)
                        .copied()
                        .ok_or_else(|| DssError::MissingCriterion(format!("{} (plan `{}`)", c.id, p.id)))
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let objectives = normalize_objectives(&rows, criteria);
    let reference = vec![reference; criteria.len()];
    let distances = distance_matrix(ranked, w);
    let mut cache: HashMap<Vec<usize>, f64> = HashMap::new();
    thresholds
        .iter()
        .map(|&t| {
            if !(t.is_finite() && t >= 0.0) {
                return Err(DssError::InvalidParameter(format!("threshold must be nonnegative, got {t}")));
            }
            let kept = filter_indices(&distances, t);
            let hv = match cache.get(&kept) {
                Some(&hv) => hv,
                None => {
                    let pts: Vec<Vec<f64>> = kept.iter().map(|&i| objectives[i].clone()).collect();
                    let hv = hypervolume(&pts, &reference)?;
                    cache.insert(kept.clone(), hv);
                    hv
                }
            };
            Ok(SweepRow {
                threshold: t,
                kept: kept.len(),
                hypervolume: hv,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_grid_has_51_points() {
        let g = parse_grid("0:5:0.1").unwrap();
        assert_eq!(g.len(), 51);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[10], 1.0);
        assert_eq!(g[50], 5.0);
        assert_eq!(parse_grid("0.5, 1").unwrap(), vec![0.5, 1.0]);
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("-1").is_err());
    }
}
