//! Method names, the JSON parameter block and dispatch.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::crisp::{self, ElectreThresholds, Normalization, RimParams};
use crate::error::{DssError, Result};
use crate::fuzzy_methods;
use crate::model::{crisp_weights, fuzzy_weights, DecisionMatrix, OperatorProfile};
use crate::ranking::Ranking;

pub const DEFAULT_V: f64 = 0.5;
pub const DEFAULT_LAMBDA: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Wsm,
    Wpm,
    Ahp,
    Vikor,
    TopsisVector,
    TopsisLinear,
    Electre3,
    Multimoora,
    Rim,
    Waspas,
    FuzzyAhp,
    FuzzyVikor,
    FuzzyTopsisVector,
    FuzzyTopsisLinear,
    FuzzyMultimoora,
    FuzzyWaspas,
}

impl Method {
    pub const ALL: [Method; 16] = [
        Method::Wsm,
        Method::Wpm,
        Method::Ahp,
        Method::Vikor,
        Method::TopsisVector,
        Method::TopsisLinear,
        Method::Electre3,
        Method::Multimoora,
        Method::Rim,
        Method::Waspas,
        Method::FuzzyAhp,
        Method::FuzzyVikor,
        Method::FuzzyTopsisVector,
        Method::FuzzyTopsisLinear,
        Method::FuzzyMultimoora,
        Method::FuzzyWaspas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Wsm => "wsm",
            Method::Wpm => "wpm",
            Method::Ahp => "ahp",
            Method::Vikor => "vikor",
            Method::TopsisVector => "topsis_vector",
            Method::TopsisLinear => "topsis_linear",
            Method::Electre3 => "electre3",
            Method::Multimoora => "multimoora",
            Method::Rim => "rim",
            Method::Waspas => "waspas",
            Method::FuzzyAhp => "fuzzy_ahp",
            Method::FuzzyVikor => "fuzzy_vikor",
            Method::FuzzyTopsisVector => "fuzzy_topsis_vector",
            Method::FuzzyTopsisLinear => "fuzzy_topsis_linear",
            Method::FuzzyMultimoora => "fuzzy_multimoora",
            Method::FuzzyWaspas => "fuzzy_waspas",
        }
    }

    pub fn is_fuzzy(self) -> bool {
        self.crisp_counterpart() != self
    }

    /// The classical method a fuzzy method reduces to; classical methods map
    /// to themselves.
    pub fn crisp_counterpart(self) -> Method {
        match self {
            Method::FuzzyAhp => Method::Ahp,
            Method::FuzzyVikor => Method::Vikor,
            Method::FuzzyTopsisVector => Method::TopsisVector,
            Method::FuzzyTopsisLinear => Method::TopsisLinear,
            Method::FuzzyMultimoora => Method::Multimoora,
            Method::FuzzyWaspas => Method::Waspas,
            m => m,
        }
    }

    /// The fuzzy variant of a classical method, if there is one.
    pub fn fuzzy_counterpart(self) -> Option<Method> {
        Method::ALL
            .into_iter()
            .find(|f| f.is_fuzzy() && f.crisp_counterpart() == self)
    }

    pub fn crisp() -> impl Iterator<Item = Method> {
        Method::ALL.into_iter().filter(|m| !m.is_fuzzy())
    }

    pub fn fuzzy() -> impl Iterator<Item = Method> {
        Method::ALL.into_iter().filter(|m| m.is_fuzzy())
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = DssError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace(['-', ' '], "_");
        Method::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .ok_or_else(|| {
                let known: Vec<&str> = Method::ALL.iter().map(|m| m.name()).collect();
                DssError::InvalidParameter(format!("unknown method `{s}`; expected one of {}", known.join(", ")))
            })
    }
}

impl Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Method {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Raw parameter block as written by users. `method` may be a full name or a
/// base name (`topsis`) completed by `norm` and `fuzzy`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    method: String,
    v: Option<f64>,
    lambda: Option<f64>,
    norm: Option<Normalization>,
    thresholds: Option<ElectreThresholds>,
    rim: Option<RimParams>,
    fuzzy: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct MethodParams {
    pub method: Method,
    pub v: f64,
    pub lambda: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<ElectreThresholds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rim: Option<RimParams>,
}

impl MethodParams {
    pub fn new(method: Method) -> Self {
        MethodParams {
            method,
            v: DEFAULT_V,
            lambda: DEFAULT_LAMBDA,
            thresholds: None,
            rim: None,
        }
    }

    pub fn with_v(mut self, v: f64) -> Self {
        self.v = v;
        self
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.v) {
            return Err(DssError::InvalidParameter(format!("v must lie in [0, 1], got {}", self.v)));
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(DssError::InvalidParameter(format!(
                "lambda must lie in [0, 1], got {}",
                self.lambda
            )));
        }
        Ok(())
    }

    /// Ranks the matrix under the profile's weights.
    pub fn rank(&self, m: &DecisionMatrix, profile: &OperatorProfile) -> Result<Ranking> {
        self.validate()?;
        let criteria = m.criteria();
        let crisp_w = || crisp_weights(profile, criteria);
        let fuzzy_w = || fuzzy_weights(profile, criteria);
        let thresholds = || self.thresholds.clone().unwrap_or_else(ElectreThresholds::mission_defaults);
        let ranking = match self.method {
            Method::Wsm => crisp::wsm(m, &crisp_w()?)?,
            Method::Wpm => crisp::wpm(m, &crisp_w()?)?,
            Method::Ahp => crisp::ahp(m, profile)?,
            Method::Vikor => crisp::vikor(m, &crisp_w()?, self.v)?,
            Method::TopsisVector => crisp::topsis(m, &crisp_w()?, Normalization::Vector)?,
            Method::TopsisLinear => crisp::topsis(m, &crisp_w()?, Normalization::Linear)?,
            Method::Electre3 => crisp::electre3(m, &crisp_w()?, &thresholds())?,
            Method::Multimoora => crisp::multimoora(m, &crisp_w()?)?,
            Method::Rim => {
                let params = match &self.rim {
                    Some(p) => p.clone(),
                    None => RimParams::from_matrix(m, Some(&thresholds()))?,
                };
                crisp::rim(m, &crisp_w()?, &params)?
            }
            Method::Waspas => crisp::waspas(m, &crisp_w()?, self.lambda)?,
            Method::FuzzyAhp => fuzzy_methods::fuzzy_ahp(m, profile)?,
            Method::FuzzyVikor => fuzzy_methods::fuzzy_vikor(m, &fuzzy_w()?, self.v)?,
            Method::FuzzyTopsisVector => fuzzy_methods::fuzzy_topsis(m, &fuzzy_w()?, Normalization::Vector)?,
            Method::FuzzyTopsisLinear => fuzzy_methods::fuzzy_topsis(m, &fuzzy_w()?, Normalization::Linear)?,
            Method::FuzzyMultimoora => fuzzy_methods::fuzzy_multimoora(m, &fuzzy_w()?)?,
            Method::FuzzyWaspas => fuzzy_methods::fuzzy_waspas(m, &fuzzy_w()?, self.lambda)?,
        };
        Ok(ranking.with_meta("profile", profile.name.as_str()))
    }
}

impl TryFrom<RawParams> for MethodParams {
    type Error = DssError;

    fn try_from(raw: RawParams) -> Result<Self> {
        let base = raw.method.trim().to_ascii_lowercase();
        let fuzzy = raw.fuzzy.unwrap_or(false) || base.starts_with("fuzzy_");
        let stem = base.trim_start_matches("fuzzy_");
        let stem = match (stem, raw.norm) {
            ("topsis", Some(n)) => format!("topsis_{}", n.name()),
            ("topsis", None) => "topsis_vector".to_string(),
            (s, Some(n)) if s.starts_with("topsis_") && s != format!("topsis_{}", n.name()) => {
                return Err(DssError::InvalidParameter(format!(
                    "method `{}` conflicts with norm `{}`",
                    raw.method,
                    n.name()
                )))
            }
            (s, _) => s.to_string(),
        };
        let crisp: Method = stem.parse()?;
        let method = if fuzzy {
            crisp.fuzzy_counterpart().ok_or_else(|| {
                DssError::InvalidParameter(format!("method `{stem}` has no fuzzy variant"))
            })?
        } else {
            crisp
        };
        let params = MethodParams {
            method,
            v: raw.v.unwrap_or(DEFAULT_V),
            lambda: raw.lambda.unwrap_or(DEFAULT_LAMBDA),
            thresholds: raw.thresholds,
            rim: raw.rim,
        };
        params.validate()?;
        Ok(params)
    }
}

pub fn rank(m: &DecisionMatrix, profile: &OperatorProfile, method: Method) -> Result<Ranking> {
    MethodParams::new(method).rank(m, profile)
}
