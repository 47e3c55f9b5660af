//! Exact hypervolume of a minimization point set by recursive exclusive
//! contributions over limit sets (the WFG scheme), with a sweep for two
//! dimensions.

use crate::error::{DssError, Result};
use crate::model::Criterion;

/// Reference coordinate used on every normalized objective. Slightly beyond
/// the worst normalized value so plans that are worst on one criterion still
/// contribute volume.
pub const DEFAULT_REFERENCE: f64 = 1.1;

pub fn hypervolume(points: &[Vec<f64>], reference: &[f64]) -> Result<f64> {
    let dims = reference.len();
    if dims == 0 {
        return Err(DssError::HypervolumeDomain("reference point has no coordinates".into()));
    }
    if reference.iter().any(|r| !r.is_finite()) {
        return Err(DssError::HypervolumeDomain("reference point must be finite".into()));
    }
    for (i, p) in points.iter().enumerate() {
        if p.len() != dims {
            return Err(DssError::HypervolumeDomain(format!(
                "point {i} has {} coordinates, reference has {dims}",
                p.len()
            )));
        }
        if let Some(k) = (0..dims).find(|&k| !(p[k].is_finite() && p[k] <= reference[k])) {
            return Err(DssError::HypervolumeDomain(format!(
                "point {i} does not dominate the reference point on objective {k} ({} > {})",
                p[k], reference[k]
            )));
        }
    }
    Ok(wfg(nondominated(points.to_vec()), reference))
}

fn dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Nondominated subset; of several equal points only the first is kept.
fn nondominated(mut pts: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(pts.len());
    for p in pts {
        // Lexicographic order puts every dominator of p before p.
        if !out.iter().any(|q| dominates(q, &p)) {
            out.push(p);
        }
    }
    out
}

fn box_volume(p: &[f64], reference: &[f64]) -> f64 {
    p.iter().zip(reference).map(|(x, r)| r - x).product()
}

fn wfg(mut pts: Vec<Vec<f64>>, reference: &[f64]) -> f64 {
    match pts.len() {
        0 => return 0.0,
        1 => return box_volume(&pts[0], reference),
        _ => {}
    }
    let dims = reference.len();
    if dims == 1 {
        return reference[0] - pts.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
    }
    if dims == 2 {
        pts.sort_by(|a, b| a[0].total_cmp(&b[0]));
        let mut total = 0.0;
        for (i, p) in pts.iter().enumerate() {
            let next_x = pts.get(i + 1).map_or(reference[0], |q| q[0]);
            total += (next_x - p[0]) * (reference[1] - p[1]);
        }
        return total;
    }
    // Worst on the last objective first keeps limit sets small.
    pts.sort_by(|a, b| b[dims - 1].total_cmp(&a[dims - 1]));
    let mut total = 0.0;
    for i in 0..pts.len() {
        let p = &pts[i];
        let limited: Vec<Vec<f64>> = pts[i + 1..]
            .iter()
            .map(|q| q.iter().zip(p).map(|(a, b)| a.max(*b)).collect())
            .collect();
        total += box_volume(p, reference) - wfg(nondominated(limited), reference);
    }
    total
}

/// Scales each objective to `[0, 1]` over the given rows, best value at 0.
/// A criterion whose values are all equal maps to 0.
pub fn normalize_objectives(rows: &[Vec<f64>], criteria: &[Criterion]) -> Vec<Vec<f64>> {
    let mut out = rows.to_vec();
    for (j, c) in criteria.iter().enumerate() {
        let (lo, hi) = rows
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r[j]), hi.max(r[j])));
        for row in &mut out {
            row[j] = if hi > lo {
                if c.is_benefit() {
                    (hi - row[j]) / (hi - lo)
                } else {
                    (row[j] - lo) / (hi - lo)
                }
            } else {
                0.0
            };
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_cases() {
        assert_eq!(hypervolume(&[vec![0.5, 0.5]], &[1.0, 1.0]).unwrap(), 0.25);
        let hv = hypervolume(&[vec![0.2, 0.8], vec![0.8, 0.2]], &[1.0, 1.0]).unwrap();
        assert!((hv - 0.28).abs() < 1e-12);
    }

    #[test]
    fn three_dimensional_inclusion_exclusion() {
        let pts = vec![vec![0.0, 0.5, 0.5], vec![0.5, 0.0, 0.5], vec![0.5, 0.5, 0.0]];
        // Three 0.25-volume boxes, pairwise and triple overlaps 0.125.
        let hv = hypervolume(&pts, &[1.0; 3]).unwrap();
        assert!((hv - (0.75 - 0.375 + 0.125)).abs() < 1e-12);
    }

    #[test]
    fn dominated_and_duplicate_points_ignored() {
        let a = hypervolume(&[vec![0.2, 0.2, 0.2]], &[1.0; 3]).unwrap();
        let b = hypervolume(&[vec![0.2, 0.2, 0.2], vec![0.2, 0.2, 0.2], vec![0.5, 0.3, 0.9]], &[1.0; 3]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn point_beyond_reference_rejected() {
        assert!(hypervolume(&[vec![1.2, 0.0]], &[1.0, 1.0]).is_err());
        assert_eq!(hypervolume(&[], &[1.0]).unwrap(), 0.0);
    }
}
