//! Criteria, decision matrices, linguistic importance degrees, operator
//! profiles and the weights derived from them.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{DssError, Result};
use crate::fuzzy::Tfn;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Criterion {
    pub id: String,
    pub label: String,
    pub direction: Direction,
    pub unit: String,
}

impl Criterion {
    pub fn new(id: &str, label: &str, direction: Direction, unit: &str) -> Self {
        Criterion {
            id: id.to_string(),
            label: label.to_string(),
            direction,
            unit: unit.to_string(),
        }
    }

    pub fn minimize(id: &str) -> Self {
        Self::new(id, id, Direction::Minimize, "")
    }

    pub fn maximize(id: &str) -> Self {
        Self::new(id, id, Direction::Maximize, "")
    }

    pub fn is_benefit(&self) -> bool {
        self.direction == Direction::Maximize
    }
}

/// Identifiers of the eleven mission criteria, in canonical order.
pub mod criteria_ids {
    pub const MAKESPAN: &str = "makespan";
    pub const COST: &str = "cost";
    pub const FUEL: &str = "fuel";
    pub const DISTANCE: &str = "distance";
    pub const FLIGHT_TIME: &str = "flight_time";
    pub const RISK_FUEL_USAGE: &str = "risk_fuel_usage";
    pub const RISK_DISTANCE_GROUND: &str = "risk_distance_ground";
    pub const RISK_DISTANCE_UAVS: &str = "risk_distance_uavs";
    pub const RISK_OUT_OF_COVERAGE: &str = "risk_out_of_coverage";
    pub const NUM_UAVS: &str = "num_uavs";
    pub const NUM_GCSS: &str = "num_gcss";

    pub const ALL: [&str; 11] = [
        MAKESPAN,
        COST,
        FUEL,
        DISTANCE,
        FLIGHT_TIME,
        RISK_FUEL_USAGE,
        RISK_DISTANCE_GROUND,
        RISK_DISTANCE_UAVS,
        RISK_OUT_OF_COVERAGE,
        NUM_UAVS,
        NUM_GCSS,
    ];
}

/// The eleven mission criteria. All of them are minimized.
pub fn mission_criteria() -> Vec<Criterion> {
    use criteria_ids::*;
    let min = Direction::Minimize;
    vec![
        Criterion::new(MAKESPAN, "Makespan", min, "h"),
        Criterion::new(COST, "Cost", min, "cost units"),
        Criterion::new(FUEL, "Fuel", min, "kg"),
        Criterion::new(DISTANCE, "Distance", min, "km"),
        Criterion::new(FLIGHT_TIME, "Flight time", min, "h"),
        Criterion::new(RISK_FUEL_USAGE, "Risk fuel usage", min, "%"),
        Criterion::new(RISK_DISTANCE_GROUND, "Risk distance ground", min, "%"),
        Criterion::new(RISK_DISTANCE_UAVS, "Risk distance UAVs", min, "%"),
        Criterion::new(RISK_OUT_OF_COVERAGE, "Risk out of coverage", min, "%"),
        Criterion::new(NUM_UAVS, "Num UAVs", min, "count"),
        Criterion::new(NUM_GCSS, "Num GCSs", min, "count"),
    ]
}

/// Alternatives-by-criteria performance table.
///
/// Row order is the canonical iteration order and breaks every tie downstream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionMatrix {
    criteria: Vec<Criterion>,
    alternatives: Vec<String>,
    values: Vec<Vec<f64>>,
}

impl DecisionMatrix {
    pub fn new(
        criteria: Vec<Criterion>,
        alternatives: Vec<String>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if criteria.is_empty() {
            return Err(DssError::InvalidMatrix("at least one criterion is required".into()));
        }
        if alternatives.is_empty() {
            return Err(DssError::InvalidMatrix("at least one alternative is required".into()));
        }
        let mut seen = HashSet::new();
        for c in &criteria {
            if !seen.insert(c.id.as_str()) {
                return Err(DssError::InvalidMatrix(format!("duplicate criterion id `{}`", c.id)));
            }
        }
        let mut seen = HashSet::new();
        for a in &alternatives {
            if !seen.insert(a.as_str()) {
                return Err(DssError::InvalidMatrix(format!("duplicate alternative id `{a}`")));
            }
        }
        if values.len() != alternatives.len() {
            return Err(DssError::InvalidMatrix(format!(
                "{} rows for {} alternatives",
                values.len(),
                alternatives.len()
            )));
        }
        for (row, alt) in values.iter().zip(&alternatives) {
            if row.len() != criteria.len() {
                return Err(DssError::InvalidMatrix(format!(
                    "alternative `{alt}` has {} values for {} criteria",
                    row.len(),
                    criteria.len()
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(DssError::InvalidMatrix(format!(
                    "non-finite value for alternative `{alt}`, criterion `{}`",
                    criteria[j].id
                )));
            }
        }
        Ok(DecisionMatrix {
            criteria,
            alternatives,
            values,
        })
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.criteria
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn n_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn n_criteria(&self) -> usize {
        self.criteria.len()
    }

    #[inline]
    pub fn value(&self, alternative: usize, criterion: usize) -> f64 {
        self.values[alternative][criterion]
    }

    pub fn column(&self, criterion: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[criterion]).collect()
    }

    pub fn column_min_max(&self, criterion: usize) -> (f64, f64) {
        self.values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), row| {
            (lo.min(row[criterion]), hi.max(row[criterion]))
        })
    }

    pub fn criterion_index(&self, id: &str) -> Option<usize> {
        self.criteria.iter().position(|c| c.id == id)
    }

    pub fn alternative_index(&self, id: &str) -> Option<usize> {
        self.alternatives.iter().position(|a| a == id)
    }

    /// Copy of the matrix without one alternative.
    pub fn without_alternative(&self, index: usize) -> Result<Self> {
        let mut alternatives = self.alternatives.clone();
        let mut values = self.values.clone();
        alternatives.remove(index);
        values.remove(index);
        DecisionMatrix::new(self.criteria.clone(), alternatives, values)
    }

    /// Copy with one criterion column multiplied by `factor`.
    pub fn with_scaled_column(&self, criterion: usize, factor: f64) -> Result<Self> {
        let values = self
            .values
            .iter()
            .map(|row| {
                let mut row = row.clone();
                row[criterion] *= factor;
                row
            })
            .collect();
        DecisionMatrix::new(self.criteria.clone(), self.alternatives.clone(), values)
    }
}

/// Linguistic importance of a criterion, `Very low (1)` to `Very high (5)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ImportanceDegree {
    VeryLow = 1,
    Low = 2,
    Medium = 3,
    High = 4,
    VeryHigh = 5,
}

impl ImportanceDegree {
    pub const ALL: [ImportanceDegree; 5] = [
        ImportanceDegree::VeryLow,
        ImportanceDegree::Low,
        ImportanceDegree::Medium,
        ImportanceDegree::High,
        ImportanceDegree::VeryHigh,
    ];

    pub fn value(self) -> u8 {
        self as u8
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            1 => Some(Self::VeryLow),
            2 => Some(Self::Low),
            3 => Some(Self::Medium),
            4 => Some(Self::High),
            5 => Some(Self::VeryHigh),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::VeryLow => "very_low",
            Self::Low => "low",
            Self::Medium => "medium",
            Self::High => "high",
            Self::VeryHigh => "very_high",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        match key.as_str() {
            "verylow" | "vl" | "1" => Some(Self::VeryLow),
            "low" | "l" | "2" => Some(Self::Low),
            "medium" | "m" | "3" => Some(Self::Medium),
            "high" | "h" | "4" => Some(Self::High),
            "veryhigh" | "vh" | "5" => Some(Self::VeryHigh),
            _ => None,
        }
    }

    /// Triangular membership of the linguistic term.
    pub fn tfn(self) -> Tfn {
        let (a1, a2, a3) = match self {
            Self::VeryLow => (0.00, 0.10, 0.25),
            Self::Low => (0.15, 0.30, 0.45),
            Self::Medium => (0.35, 0.50, 0.65),
            Self::High => (0.55, 0.70, 0.85),
            Self::VeryHigh => (0.75, 0.90, 1.00),
        };
        Tfn { a1, a2, a3 }
    }
}

impl fmt::Display for ImportanceDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for ImportanceDegree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for ImportanceDegree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(v) => ImportanceDegree::from_value(v).ok_or_else(|| {
                serde::de::Error::custom(format!("importance degree must be 1..=5, got {v}"))
            }),
            Raw::Str(s) => ImportanceDegree::parse(&s).ok_or_else(|| {
                serde::de::Error::custom(format!("unknown importance degree `{s}`"))
            }),
        }
    }
}

/// Named assignment of importance degrees to criteria.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorProfile {
    pub name: String,
    pub degrees: BTreeMap<String, ImportanceDegree>,
}

impl OperatorProfile {
    pub fn new(name: &str, degrees: impl IntoIterator<Item = (String, ImportanceDegree)>) -> Self {
        OperatorProfile {
            name: name.to_string(),
            degrees: degrees.into_iter().collect(),
        }
    }

    /// Every criterion at the same degree.
    pub fn uniform(name: &str, criteria: &[Criterion], degree: ImportanceDegree) -> Self {
        Self::new(name, criteria.iter().map(|c| (c.id.clone(), degree)))
    }

    /// Degrees aligned with `criteria`. Fails on a missing criterion or on a
    /// degree for a criterion outside the set.
    pub fn aligned_degrees(&self, criteria: &[Criterion]) -> Result<Vec<ImportanceDegree>> {
        for key in self.degrees.keys() {
            if !criteria.iter().any(|c| &c.id == key) {
                return Err(DssError::UnknownCriterion(key.clone()));
            }
        }
        criteria
            .iter()
            .map(|c| {
                self.degrees
                    .get(&c.id)
                    .copied()
                    .ok_or_else(|| DssError::MissingCriterion(c.id.clone()))
            })
            .collect()
    }
}

/// The six operator profiles used in the mission plan selection experiments.
pub fn mission_profiles() -> Vec<OperatorProfile> {
    use criteria_ids::*;
    use ImportanceDegree::{High as H, Low as L, Medium as M, VeryHigh as VH};
    // Columns: Balanced, Cost, Time, Risk, Resources, RiskCost.
    let table: [(&str, [ImportanceDegree; 6]); 11] = [
        (COST, [M, VH, M, L, H, VH]),
        (DISTANCE, [M, M, M, L, M, M]),
        (FLIGHT_TIME, [M, L, H, M, L, L]),
        (FUEL, [M, H, M, M, H, H]),
        (MAKESPAN, [M, L, VH, M, L, L]),
        (NUM_GCSS, [M, M, M, H, VH, M]),
        (NUM_UAVS, [M, H, M, H, VH, H]),
        (RISK_DISTANCE_GROUND, [M, M, L, VH, M, VH]),
        (RISK_DISTANCE_UAVS, [M, M, L, VH, M, VH]),
        (RISK_FUEL_USAGE, [M, M, L, VH, M, VH]),
        (RISK_OUT_OF_COVERAGE, [M, L, L, VH, M, VH]),
    ];
    ["Balanced", "Cost", "Time", "Risk", "Resources", "RiskCost"]
        .iter()
        .enumerate()
        .map(|(col, name)| {
            OperatorProfile::new(
                name,
                table.iter().map(|(id, row)| (id.to_string(), row[col])),
            )
        })
        .collect()
}

/// Crisp criterion weights. Positive, summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    weights: BTreeMap<String, f64>,
}

impl WeightVector {
    /// Accepts finite nonnegative weights that sum to one within `1e-9`.
    pub fn new(weights: BTreeMap<String, f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(DssError::InvalidParameter("weight vector is empty".into()));
        }
        if let Some((k, w)) = weights.iter().find(|(_, w)| !(w.is_finite() && **w >= 0.0)) {
            return Err(DssError::InvalidParameter(format!("weight for `{k}` is invalid: {w}")));
        }
        let total: f64 = weights.values().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(DssError::InvalidParameter(format!("weights sum to {total}, expected 1")));
        }
        Ok(WeightVector { weights })
    }

    /// Normalizes arbitrary nonnegative importances into weights.
    pub fn normalized(raw: impl IntoIterator<Item = (String, f64)>) -> Result<Self> {
        let raw: BTreeMap<String, f64> = raw.into_iter().collect();
        let total: f64 = raw.values().sum();
        if !(total > 0.0 && total.is_finite()) {
            return Err(DssError::InvalidParameter(format!(
                "importances must have a positive finite sum, got {total}"
            )));
        }
        Self::new(raw.into_iter().map(|(k, v)| (k, v / total)).collect())
    }

    pub fn uniform(criteria: &[Criterion]) -> Self {
        let w = 1.0 / criteria.len() as f64;
        WeightVector {
            weights: criteria.iter().map(|c| (c.id.clone(), w)).collect(),
        }
    }

    pub fn get(&self, id: &str) -> Option<f64> {
        self.weights.get(id).copied()
    }

    pub fn as_map(&self) -> &BTreeMap<String, f64> {
        &self.weights
    }

    /// Weights in the criterion order of `criteria`.
    pub fn aligned(&self, criteria: &[Criterion]) -> Result<Vec<f64>> {
        if self.weights.len() != criteria.len() {
            if let Some(extra) = self.weights.keys().find(|k| !criteria.iter().any(|c| &c.id == *k)) {
                return Err(DssError::UnknownCriterion(extra.clone()));
            }
        }
        criteria
            .iter()
            .map(|c| self.get(&c.id).ok_or_else(|| DssError::MissingCriterion(c.id.clone())))
            .collect()
    }
}

/// `w(f) = D(f) / sum of D(f')` over the criteria set.
pub fn crisp_weights(profile: &OperatorProfile, criteria: &[Criterion]) -> Result<WeightVector> {
    let degrees = profile.aligned_degrees(criteria)?;
    let total: u32 = degrees.iter().map(|d| d.value() as u32).sum();
    let weights = criteria
        .iter()
        .zip(&degrees)
        .map(|(c, d)| (c.id.clone(), d.value() as f64 / total as f64))
        .collect();
    Ok(WeightVector { weights })
}

/// Fuzzy criterion weights, each within `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzyWeightVector {
    weights: BTreeMap<String, Tfn>,
}

impl FuzzyWeightVector {
    pub fn new(weights: BTreeMap<String, Tfn>) -> Result<Self> {
        for (k, w) in &weights {
            let inside = w.components().iter().all(|c| (0.0..=1.0).contains(c));
            if !w.is_ordered() || !inside {
                return Err(DssError::InvalidParameter(format!(
                    "fuzzy weight for `{k}` must be an ordered triple within [0, 1], got {w}"
                )));
            }
        }
        Ok(FuzzyWeightVector { weights })
    }

    /// Lifts crisp weights to degenerate fuzzy numbers.
    pub fn from_crisp(weights: &WeightVector) -> Self {
        FuzzyWeightVector {
            weights: weights
                .as_map()
                .iter()
                .map(|(k, &w)| (k.clone(), Tfn::crisp(w)))
                .collect(),
        }
    }

    pub fn get(&self, id: &str) -> Option<Tfn> {
        self.weights.get(id).copied()
    }

    pub fn as_map(&self) -> &BTreeMap<String, Tfn> {
        &self.weights
    }

    pub fn aligned(&self, criteria: &[Criterion]) -> Result<Vec<Tfn>> {
        if let Some(extra) = self.weights.keys().find(|k| !criteria.iter().any(|c| &c.id == *k)) {
            return Err(DssError::UnknownCriterion(extra.clone()));
        }
        criteria
            .iter()
            .map(|c| self.get(&c.id).ok_or_else(|| DssError::MissingCriterion(c.id.clone())))
            .collect()
    }
}

/// Maps each degree of the profile to its triangular membership.
pub fn fuzzy_weights(profile: &OperatorProfile, criteria: &[Criterion]) -> Result<FuzzyWeightVector> {
    let degrees = profile.aligned_degrees(criteria)?;
    Ok(FuzzyWeightVector {
        weights: criteria
            .iter()
            .zip(degrees)
            .map(|(c, d)| (c.id.clone(), d.tfn()))
            .collect(),
    })
}
