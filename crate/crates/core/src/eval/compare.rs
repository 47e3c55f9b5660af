use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{DssError, Result};
use crate::eval::score::ScoreRecord;
use crate::eval::wilcoxon::{signed_rank, WilcoxonResult};

/// Significance level for flagging method differences.
pub const SIGNIFICANCE: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodComparison {
    pub a: String,
    pub b: String,
    pub pairs: usize,
    /// Mean of `score_a - score_b` over pairs.
    pub mean_diff: f64,
    pub wilcoxon: WilcoxonResult,
}

impl MethodComparison {
    pub fn p_value(&self) -> f64 {
        self.wilcoxon.p_value
    }

    pub fn significant(&self) -> bool {
        self.wilcoxon.p_value < SIGNIFICANCE
    }
}

type PairKey<'a> = (&'a str, &'a str, &'a str);

fn scores_of<'a>(records: &'a [ScoreRecord], method: &str) -> BTreeMap<PairKey<'a>, f64> {
    records
        .iter()
        .filter(|r| r.method == method)
        .map(|r| ((r.operator.as_str(), r.mission.as_str(), r.profile.as_str()), r.score))
        .collect()
}

/// Pairs the records of two methods on (operator, mission, profile) and
/// tests their differences.
pub fn compare_methods(records: &[ScoreRecord], a: &str, b: &str) -> Result<MethodComparison> {
    let (sa, sb) = (scores_of(records, a), scores_of(records, b));
    let diffs: Vec<f64> = sa
        .iter()
        .filter_map(|(k, x)| sb.get(k).map(|y| x - y))
        .collect();
    if diffs.is_empty() {
        return Err(DssError::Evaluation(format!(
            "no (operator, mission, profile) triple is scored by both `{a}` and `{b}`"
        )));
    }
    Ok(MethodComparison {
        a: a.to_string(),
        b: b.to_string(),
        pairs: diffs.len(),
        mean_diff: diffs.iter().sum::<f64>() / diffs.len() as f64,
        wilcoxon: signed_rank(&diffs),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonCell {
    /// Mean score of the column method minus that of the row method.
    pub diff: f64,
    pub p_value: f64,
    pub significant: bool,
    pub pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonMatrix {
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub cells: Vec<Vec<ComparisonCell>>,
}

impl ComparisonMatrix {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method");
        for c in &self.columns {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for (r, row) in self.rows.iter().zip(&self.cells) {
            out.push_str(r);
            for cell in row {
                out.push_str(&format!(",{:.6}{}", cell.diff, if cell.significant { "*" } else { "" }));
            }
            out.push('\n');
        }
        out
    }
}

/// Rows are crisp methods, columns fuzzy methods; each cell compares the
/// column method against the row method.
pub fn comparison_matrix(records: &[ScoreRecord], fuzzy: &[&str], crisp: &[&str]) -> Result<ComparisonMatrix> {
    let cells = crisp
        .iter()
        .map(|row| {
            fuzzy
                .iter()
                .map(|col| {
                    let c = compare_methods(records, col, row)?;
                    Ok(ComparisonCell {
                        diff: c.mean_diff,
                        p_value: c.p_value(),
                        significant: c.significant(),
                        pairs: c.pairs,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonMatrix {
        rows: crisp.iter().map(|s| s.to_string()).collect(),
        columns: fuzzy.iter().map(|s| s.to_string()).collect(),
        cells,
    })
}
