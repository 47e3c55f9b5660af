//! Rank, filter, sweep and score over mission datasets.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use dss_core::eval::{latest_decisions, score, Decision, ScoreRecord};
use dss_core::filter::{
    filter_plans, parse_grid, threshold_sweep, FilterWeights, MissionPlan, SweepRow, DEFAULT_REFERENCE,
    DEFAULT_THRESHOLD,
};
use dss_core::model::{mission_criteria, mission_profiles};
use dss_core::{Method, MethodParams, OperatorProfile, Ranking};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::dataset::MissionDataset;
use crate::error::{json_pointer, Result, ServiceError};

pub const DEFAULT_METHOD: Method = Method::FuzzyVikor;
pub const DEFAULT_PROFILE: &str = "Balanced";

fn default_ranking() -> MethodParams {
    MethodParams::new(DEFAULT_METHOD)
}

fn default_profile() -> String {
    DEFAULT_PROFILE.to_string()
}

fn default_threshold() -> f64 {
    DEFAULT_THRESHOLD
}

fn default_reference() -> f64 {
    DEFAULT_REFERENCE
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    #[serde(default = "default_ranking")]
    pub ranking: MethodParams,
    #[serde(default = "default_profile")]
    pub profile: String,
    #[serde(default)]
    pub weights: FilterWeights,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
    /// Hypervolume reference coordinate for threshold sweeps.
    #[serde(default = "default_reference")]
    pub reference: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            ranking: default_ranking(),
            profile: default_profile(),
            weights: FilterWeights::default(),
            threshold: DEFAULT_THRESHOLD,
            reference: DEFAULT_REFERENCE,
            output: None,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        self.ranking
            .validate()
            .map_err(|e| ServiceError::core(format!("method {}", self.ranking.method), e))?;
        self.weights
            .validate()
            .map_err(|e| ServiceError::core("filter weights", e))?;
        if !(self.threshold.is_finite() && self.threshold >= 0.0) {
            return Err(ServiceError::Invalid(format!(
                "threshold must be nonnegative, got {}",
                self.threshold
            )));
        }
        if !(self.reference.is_finite() && self.reference >= 1.0) {
            return Err(ServiceError::Invalid(format!(
                "hypervolume reference must be at least 1, got {}",
                self.reference
            )));
        }
        Ok(())
    }
}

/// Looks a profile up by name, ignoring ASCII case.
pub fn find_profile<'a>(profiles: &'a [OperatorProfile], name: &str) -> Result<&'a OperatorProfile> {
    profiles
        .iter()
        .find(|p| p.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| ServiceError::NotFound {
            kind: "profile",
            id: name.to_string(),
        })
}

pub fn rank(ds: &MissionDataset, params: &MethodParams, profile: &OperatorProfile) -> Result<Ranking> {
    let m = ds.matrix()?;
    params.rank(&m, profile).map_err(|e| {
        ServiceError::core(
            format!("ranking mission `{}` with {} under profile {}", ds.id, params.method, profile.name),
            e,
        )
    })
}

/// Plans in ranking order.
pub fn ranked_plans<'a>(ds: &'a MissionDataset, ranking: &Ranking) -> Vec<&'a MissionPlan> {
    ranking.entries.iter().map(|e| &ds.plans[e.index]).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineOutput {
    pub mission: String,
    pub profile: String,
    pub threshold: f64,
    pub ranking: Ranking,
    /// Ids of the plans surviving the filter, best first.
    pub filtered: Vec<String>,
}

impl PipelineOutput {
    /// The ranking restricted to the filtered plans. Ranks and scores are
    /// those of the full ranking.
    pub fn filtered_ranking(&self) -> Ranking {
        let mut r = self.ranking.clone();
        r.entries.retain(|e| self.filtered.contains(&e.id));
        r
    }

    /// Writes `<mission>.ranking.csv`, `<mission>.filtered.csv` and
    /// `<mission>.pipeline.json` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir).map_err(|e| ServiceError::io(dir, e))?;
        let files = [
            (format!("{}.ranking.csv", self.mission), ranking_csv(&self.ranking)?),
            (format!("{}.filtered.csv", self.mission), ranking_csv(&self.filtered_ranking())?),
            (
                format!("{}.pipeline.json", self.mission),
                serde_json::to_string_pretty(self).expect("pipeline output serializes") + "\n",
            ),
        ];
        files
            .into_iter()
            .map(|(name, body)| {
                let path = dir.join(name);
                fs::write(&path, body).map_err(|e| ServiceError::io(&path, e))?;
                Ok(path)
            })
            .collect()
    }
}

/// Ranks a mission and filters near-duplicates in ranking order.
pub fn run_pipeline(ds: &MissionDataset, cfg: &PipelineConfig, profiles: &[OperatorProfile]) -> Result<PipelineOutput> {
    cfg.validate()?;
    let profile = find_profile(profiles, &cfg.profile)?;
    let ranking = rank(ds, &cfg.ranking, profile)?;
    let kept = filter_plans_for(&ds.id, &ranked_plans(ds, &ranking), &cfg.weights, cfg.threshold)?;
    Ok(PipelineOutput {
        mission: ds.id.clone(),
        profile: profile.name.clone(),
        threshold: cfg.threshold,
        ranking,
        filtered: kept.iter().map(|p| p.id.clone()).collect(),
    })
}

pub fn filter_plans_for<'a>(
    mission: &str,
    ranked: &[&'a MissionPlan],
    w: &FilterWeights,
    threshold: f64,
) -> Result<Vec<&'a MissionPlan>> {
    filter_plans(ranked, w, threshold).map_err(|e| ServiceError::core(format!("filtering mission `{mission}`"), e))
}

#[derive(Debug, Serialize)]
struct RankingRow<'a> {
    rank: usize,
    plan_id: &'a str,
    score: Option<f64>,
    method: &'a str,
}

pub fn ranking_csv(r: &Ranking) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for e in &r.entries {
        w.serialize(RankingRow {
            rank: e.rank,
            plan_id: &e.id,
            score: e.score,
            method: &r.method,
        })?;
    }
    if r.entries.is_empty() {
        w.write_record(["rank", "plan_id", "score", "method"])?;
    }
    csv_string(w)
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| ServiceError::Invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Threshold sweep of a mission's ranked plans.
pub fn sweep(
    ds: &MissionDataset,
    cfg: &PipelineConfig,
    profiles: &[OperatorProfile],
    grid: &str,
) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let thresholds = parse_grid(grid).map_err(|e| ServiceError::core("threshold grid", e))?;
    let profile = find_profile(profiles, &cfg.profile)?;
    let ranking = rank(ds, &cfg.ranking, profile)?;
    threshold_sweep(
        &ranked_plans(ds, &ranking),
        &mission_criteria(),
        &cfg.weights,
        &thresholds,
        cfg.reference,
    )
    .map_err(|e| ServiceError::core(format!("sweeping mission `{}`", ds.id), e))
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    csv_string(w)
}

/// Column-oriented sweep series for plotting.
pub fn sweep_plot(mission: &str, cfg: &PipelineConfig, rows: &[SweepRow]) -> serde_json::Value {
    json!({
        "mission": mission,
        "method": cfg.ranking.method,
        "profile": cfg.profile,
        "reference": cfg.reference,
        "threshold": rows.iter().map(|r| r.threshold).collect::<Vec<_>>(),
        "kept": rows.iter().map(|r| r.kept).collect::<Vec<_>>(),
        "hypervolume": rows.iter().map(|r| r.hypervolume).collect::<Vec<_>>(),
    })
}

/// Parses a JSON-lines decision log. Blank lines are skipped.
pub fn parse_decisions(text: &str, source_name: &str) -> Result<Vec<Decision>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let de = &mut serde_json::Deserializer::from_str(line);
            serde_path_to_error::deserialize(de).map_err(|e| ServiceError::Schema {
                source_name: format!("{source_name}:{}", i + 1),
                pointer: json_pointer(e.path()),
                message: e.inner().to_string(),
            })
        })
        .collect()
}

pub fn load_decisions(path: &Path) -> Result<Vec<Decision>> {
    match fs::read_to_string(path) {
        Ok(text) => parse_decisions(&text, &path.display().to_string()),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Vec::new()),
        Err(e) => Err(ServiceError::io(path, e)),
    }
}

/// Appends one decision as a single write, so a line is logged whole or not
/// at all.
pub fn append_decision(path: &Path, d: &Decision) -> Result<()> {
    let mut line = serde_json::to_string(d).expect("decision serializes");
    line.push('\n');
    let mut f = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| ServiceError::io(path, e))?;
    f.write_all(line.as_bytes()).map_err(|e| ServiceError::io(path, e))?;
    f.sync_data().map_err(|e| ServiceError::io(path, e))
}

pub fn decisions_jsonl(decisions: &[Decision]) -> String {
    decisions
        .iter()
        .map(|d| serde_json::to_string(d).expect("decision serializes") + "\n")
        .collect()
}

/// Checks that a decision names a known mission, profile and plan. Returns
/// the decision with the canonical profile name.
pub fn check_decision(
    missions: &[MissionDataset],
    profiles: &[OperatorProfile],
    d: &Decision,
) -> Result<Decision> {
    if d.operator.trim().is_empty() {
        return Err(ServiceError::Invalid("decision has an empty operator".into()));
    }
    let ds = missions.iter().find(|m| m.id == d.mission).ok_or_else(|| ServiceError::NotFound {
        kind: "mission",
        id: d.mission.clone(),
    })?;
    let profile = find_profile(profiles, &d.profile)?;
    if ds.plan(&d.plan).is_none() {
        return Err(ServiceError::Invalid(format!(
            "mission `{}` has no plan `{}`",
            d.mission, d.plan
        )));
    }
    Ok(Decision {
        profile: profile.name.clone(),
        ..d.clone()
    })
}

/// Scores every method on the latest decision of each (operator, profile,
/// mission). Rankings are computed once per (mission, profile, method).
pub fn score_decisions(
    missions: &[MissionDataset],
    decisions: &[Decision],
    methods: &[MethodParams],
    profiles: &[OperatorProfile],
) -> Result<Vec<ScoreRecord>> {
    let mut cache: HashMap<(String, String, usize), Ranking> = HashMap::new();
    let mut out = Vec::new();
    for d in latest_decisions(decisions) {
        let d = check_decision(missions, profiles, &d)?;
        let ds = missions.iter().find(|m| m.id == d.mission).expect("checked");
        let profile = find_profile(profiles, &d.profile)?;
        for (k, params) in methods.iter().enumerate() {
            let key = (ds.id.clone(), profile.name.clone(), k);
            if !cache.contains_key(&key) {
                cache.insert(key.clone(), rank(ds, params, profile)?);
            }
            let r = score(&cache[&key], &d, ds.plans.len())
                .map_err(|e| ServiceError::core(format!("scoring mission `{}`", ds.id), e))?;
            out.push(r);
        }
    }
    Ok(out)
}

pub fn all_methods() -> Vec<MethodParams> {
    Method::ALL.into_iter().map(MethodParams::new).collect()
}

pub fn builtin_profiles() -> Vec<OperatorProfile> {
    mission_profiles()
}

#[derive(Debug, Serialize)]
struct ScoreRow<'a> {
    operator: &'a str,
    mission: &'a str,
    profile: &'a str,
    method: &'a str,
    score: f64,
    degenerate: bool,
}

pub fn scores_csv(records: &[ScoreRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(ScoreRow {
            operator: &r.operator,
            mission: &r.mission,
            profile: &r.profile,
            method: &r.method,
            score: r.score,
            degenerate: r.degenerate,
        })?;
    }
    csv_string(w)
}
