//! HTTP/JSON API under `/api/v1`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use dss_core::eval::{aggregate_scores, comparison_matrix, Decision, GroupBy, ScoreRecord};
use dss_core::filter::MissionPlan;
use dss_core::model::{crisp_weights, mission_criteria};
use dss_core::{Criterion, Method, MethodParams, OperatorProfile};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tokio::sync::Mutex;

use crate::dataset::MissionDataset;
use crate::error::ServiceError;
use crate::pipeline::{
    all_methods, append_decision, check_decision, filter_plans_for, find_profile, rank, score_decisions,
    PipelineConfig,
};

/// Structured error body: `{code, message, detail}`.
#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
    detail: Value,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code,
            message: message.into(),
            detail: Value::Null,
        }
    }

    fn with_detail(mut self, detail: Value) -> Self {
        self.detail = detail;
        self
    }
}

impl From<ServiceError> for ApiError {
    fn from(e: ServiceError) -> Self {
        let message = e.to_string();
        match e {
            ServiceError::NotFound { kind, id } => ApiError::new(StatusCode::NOT_FOUND, "not_found", message)
                .with_detail(json!({"kind": kind, "id": id})),
            ServiceError::Schema { pointer, .. } => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid_input", message)
                    .with_detail(json!({"pointer": pointer}))
            }
            ServiceError::Invalid(_) => ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid_input", message),
            ServiceError::Core { context, source } => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "computation_failed", message)
                    .with_detail(json!({"context": context, "cause": source.to_string()}))
            }
            ServiceError::Io { .. } | ServiceError::Csv(_) => {
                ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "storage_error", message)
            }
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid_body", e.body_text())
    }
}

impl From<QueryRejection> for ApiError {
    fn from(e: QueryRejection) -> Self {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid_query", e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({"code": self.code, "message": self.message, "detail": self.detail});
        (self.status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

/// Decisions received so far, mirrored to an optional JSON-lines file.
#[derive(Debug, Default)]
pub struct DecisionLog {
    pub path: Option<PathBuf>,
    pub entries: Vec<Decision>,
}

pub struct AppState {
    pub missions: Vec<MissionDataset>,
    pub profiles: Vec<OperatorProfile>,
    pub pipeline: PipelineConfig,
    /// Single writer: submissions are serialized through this lock.
    pub log: Mutex<DecisionLog>,
}

impl AppState {
    pub fn new(
        missions: Vec<MissionDataset>,
        profiles: Vec<OperatorProfile>,
        pipeline: PipelineConfig,
        log: DecisionLog,
    ) -> Self {
        AppState {
            missions,
            profiles,
            pipeline,
            log: Mutex::new(log),
        }
    }

    fn mission(&self, id: &str) -> Result<&MissionDataset, ServiceError> {
        self.missions.iter().find(|m| m.id == id).ok_or_else(|| ServiceError::NotFound {
            kind: "mission",
            id: id.to_string(),
        })
    }

    async fn records(&self) -> Result<Vec<ScoreRecord>, ServiceError> {
        let decisions = self.log.lock().await.entries.clone();
        score_decisions(&self.missions, &decisions, &all_methods(), &self.profiles)
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    let api = Router::new()
        .route("/profiles", get(profiles))
        .route("/criteria", get(criteria))
        .route("/methods", get(methods))
        .route("/missions", get(missions))
        .route("/missions/{id}/solutions", get(solutions))
        .route("/decisions", get(list_decisions).post(post_decision))
        .route("/scores", get(scores))
        .route("/comparison", get(comparison));
    Router::new().nest("/api/v1", api).with_state(state)
}

#[derive(Serialize)]
struct ProfileView<'a> {
    name: &'a str,
    degrees: &'a BTreeMap<String, dss_core::ImportanceDegree>,
    weights: BTreeMap<String, f64>,
}

async fn profiles(State(s): State<Arc<AppState>>) -> ApiResult<Json<Value>> {
    let criteria = mission_criteria();
    let views = s
        .profiles
        .iter()
        .map(|p| {
            let w = crisp_weights(p, &criteria).map_err(|e| ServiceError::core(format!("profile {}", p.name), e))?;
            Ok(ProfileView {
                name: &p.name,
                degrees: &p.degrees,
                weights: w.as_map().clone(),
            })
        })
        .collect::<Result<Vec<_>, ServiceError>>()?;
    Ok(Json(json!(views)))
}

async fn criteria() -> Json<Vec<Criterion>> {
    Json(mission_criteria())
}

async fn methods(State(s): State<Arc<AppState>>) -> Json<Value> {
    let names: Vec<Value> = Method::ALL
        .iter()
        .map(|m| json!({"name": m.name(), "fuzzy": m.is_fuzzy()}))
        .collect();
    Json(json!({"default": s.pipeline.ranking.method, "methods": names}))
}

async fn missions(State(s): State<Arc<AppState>>) -> Json<Value> {
    Json(json!(s
        .missions
        .iter()
        .map(|m| json!({"id": m.id, "meta": m.meta, "plans": m.plans.len()}))
        .collect::<Vec<_>>()))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionsQuery {
    profile: Option<String>,
    method: Option<String>,
    #[serde(default)]
    filtered: bool,
    threshold: Option<f64>,
}

/// Per criterion, 1 for the best plan of the set and 0 for the worst, linear
/// in between and aware of the criterion direction. A criterion on which all
/// plans agree gives 1 everywhere.
pub fn relative_quality(plans: &[&MissionPlan], criteria: &[Criterion]) -> Vec<BTreeMap<String, f64>> {
    let ranges: Vec<(f64, f64)> = criteria
        .iter()
        .map(|c| {
            plans
                .iter()
                .map(|p| p.criteria[&c.id])
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
        })
        .collect();
    plans
        .iter()
        .map(|p| {
            criteria
                .iter()
                .zip(&ranges)
                .map(|(c, &(lo, hi))| {
                    let v = p.criteria[&c.id];
                    let f = if hi > lo {
                        if c.is_benefit() {
                            (v - lo) / (hi - lo)
                        } else {
                            (hi - v) / (hi - lo)
                        }
                    } else {
                        1.0
                    };
                    (c.id.clone(), f.clamp(0.0, 1.0))
                })
                .collect()
        })
        .collect()
}

#[derive(Serialize)]
struct SolutionView<'a> {
    id: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    score: Option<f64>,
    values: &'a BTreeMap<String, f64>,
    fractions: BTreeMap<String, f64>,
    tasks: &'a [dss_core::filter::Assignment],
    gcs: &'a BTreeMap<String, String>,
    returns: &'a BTreeMap<String, String>,
}

async fn solutions(
    State(s): State<Arc<AppState>>,
    Path(id): Path<String>,
    query: Result<Query<SolutionsQuery>, QueryRejection>,
) -> ApiResult<Json<Value>> {
    let Query(q) = query?;
    let ds = s.mission(&id)?;
    let profile = find_profile(&s.profiles, q.profile.as_deref().unwrap_or(&s.pipeline.profile))?;
    let threshold = q.threshold.unwrap_or(s.pipeline.threshold);
    let params = match q.method.as_deref() {
        Some(name) => Some(
            name.parse::<Method>()
                .map(|m| MethodParams { method: m, ..s.pipeline.ranking.clone() })
                .map_err(|e| ApiError::new(StatusCode::NOT_FOUND, "not_found", e.to_string())
                    .with_detail(json!({"kind": "method", "id": name})))?,
        ),
        // Filtering needs an order; fall back to the default method.
        None if q.filtered => Some(s.pipeline.ranking.clone()),
        None => None,
    };
    let ranking = params.as_ref().map(|p| rank(ds, p, profile)).transpose()?;
    let mut plans: Vec<&MissionPlan> = match &ranking {
        Some(r) => r.entries.iter().map(|e| &ds.plans[e.index]).collect(),
        None => ds.plans.iter().collect(),
    };
    if q.filtered {
        plans = filter_plans_for(&ds.id, &plans, &s.pipeline.weights, threshold)?;
    }
    let criteria = mission_criteria();
    let fractions = relative_quality(&plans, &criteria);
    let rows: Vec<SolutionView> = plans
        .iter()
        .zip(fractions)
        .map(|(p, fractions)| {
            let entry = ranking.as_ref().and_then(|r| r.entries.iter().find(|e| e.id == p.id));
            SolutionView {
                id: &p.id,
                rank: entry.map(|e| e.rank),
                score: entry.and_then(|e| e.score),
                values: &p.criteria,
                fractions,
                tasks: &p.tasks,
                gcs: &p.gcs,
                returns: &p.returns,
            }
        })
        .collect();
    Ok(Json(json!({
        "mission": ds.id,
        "profile": profile.name,
        "method": ranking.as_ref().map(|r| r.method.clone()),
        "filtered": q.filtered,
        "threshold": if q.filtered { Some(threshold) } else { None },
        "total": ds.plans.len(),
        "criteria": criteria,
        "solutions": rows,
    })))
}

async fn list_decisions(State(s): State<Arc<AppState>>) -> Json<Vec<Decision>> {
    Json(s.log.lock().await.entries.clone())
}

async fn post_decision(
    State(s): State<Arc<AppState>>,
    body: Result<Json<Decision>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<Decision>)> {
    let Json(d) = body?;
    let mut d = check_decision(&s.missions, &s.profiles, &d)?;
    if d.ts.is_none() {
        d.ts = Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    }
    let mut log = s.log.lock().await;
    if let Some(path) = &log.path {
        append_decision(path, &d)?;
    }
    log.entries.push(d.clone());
    Ok((StatusCode::CREATED, Json(d)))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScoresQuery {
    group_by: Option<String>,
}

async fn scores(
    State(s): State<Arc<AppState>>,
    query: Result<Query<ScoresQuery>, QueryRejection>,
) -> ApiResult<Json<Value>> {
    let Query(q) = query?;
    let group_by = match q.group_by.as_deref() {
        None => vec![GroupBy::Method],
        Some(spec) => GroupBy::parse_list(spec)
            .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid_query", e.to_string()))?,
    };
    let records = s.records().await?;
    let groups = if records.is_empty() {
        Vec::new()
    } else {
        aggregate_scores(&records, &group_by).map_err(|e| ServiceError::core("aggregating scores", e))?
    };
    Ok(Json(json!({
        "group_by": group_by.iter().map(|g| g.name()).collect::<Vec<_>>(),
        "records": records.len(),
        "groups": groups,
    })))
}

async fn comparison(State(s): State<Arc<AppState>>) -> ApiResult<Json<Value>> {
    let records = s.records().await?;
    if records.is_empty() {
        return Err(ApiError::new(
            StatusCode::CONFLICT,
            "no_decisions",
            "no decisions recorded yet; nothing to compare",
        ));
    }
    let fuzzy: Vec<&str> = Method::fuzzy().map(|m| m.name()).collect();
    let crisp: Vec<&str> = Method::crisp().map(|m| m.name()).collect();
    let m = comparison_matrix(&records, &fuzzy, &crisp).map_err(|e| ServiceError::core("comparing methods", e))?;
    Ok(Json(json!({"significance": dss_core::eval::SIGNIFICANCE, "matrix": m})))
}
