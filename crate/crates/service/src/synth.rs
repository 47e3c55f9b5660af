//! Seeded synthetic missions and operator decisions.
//!
//! The generated datasets follow the shapes of twelve realistic mission
//! scenarios (task, UAV and GCS counts, number of candidate plans). Plan
//! contents are random: a few base plans are drawn and the rest are small
//! mutations of them, so near-duplicate plans exist for the filter to remove.

use std::collections::{BTreeMap, BTreeSet};

use dss_core::eval::Decision;
use dss_core::filter::{Assignment, MissionPlan};
use dss_core::model::criteria_ids::*;
use dss_core::model::{crisp_weights, mission_criteria, mission_profiles};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::{DatasetMeta, MissionDataset};

/// Mission shape: tasks, multi-UAV tasks, UAVs, GCSs, candidate plans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub tasks: u32,
    pub multi_uav_tasks: u32,
    pub uavs: u32,
    pub gcss: u32,
    pub solutions: usize,
}

const fn shape(tasks: u32, multi_uav_tasks: u32, uavs: u32, gcss: u32, solutions: usize) -> Shape {
    Shape {
        tasks,
        multi_uav_tasks,
        uavs,
        gcss,
        solutions,
    }
}

pub const MISSION_SHAPES: [Shape; 12] = [
    shape(6, 1, 3, 1, 17),
    shape(6, 1, 4, 2, 5),
    shape(8, 2, 5, 2, 38),
    shape(9, 2, 5, 2, 9),
    shape(9, 2, 6, 2, 5),
    shape(10, 2, 6, 2, 18),
    shape(11, 3, 6, 2, 3),
    shape(12, 3, 7, 3, 11),
    shape(12, 3, 8, 3, 5),
    shape(13, 4, 7, 3, 4),
    shape(14, 4, 8, 3, 5),
    shape(16, 5, 10, 3, 8),
];

pub const DEFAULT_SEED: u64 = 7;
pub const OPERATORS: [&str; 4] = ["op1", "op2", "op3", "op4"];

const PROFILES: [&str; 2] = ["min", "max"];
const SENSORS: [&str; 4] = ["mR", "sR", "iR", "eiS"];

pub fn mission_id(index: usize) -> String {
    format!("mission{:02}", index + 1)
}

/// Per-mission fixed data: task workloads and the sensors usable per task.
struct Scenario {
    shape: Shape,
    duration: Vec<f64>,
    sensors: Vec<Vec<&'static str>>,
}

impl Scenario {
    fn new(shape: Shape, rng: &mut ChaCha8Rng) -> Self {
        let duration = (0..shape.tasks).map(|_| rng.random_range(0.5..2.5)).collect();
        let sensors = (0..shape.tasks)
            .map(|_| {
                let k = rng.random_range(1..=2);
                SENSORS.choose_multiple(rng, k).copied().collect()
            })
            .collect();
        Scenario {
            shape,
            duration,
            sensors,
        }
    }
}

/// Assignment structure of a plan before criteria are attached.
#[derive(Clone)]
struct Layout {
    /// UAVs performing each task.
    uavs: Vec<Vec<u32>>,
    /// Flight profile of the path to each task.
    paths: Vec<&'static str>,
    sensors: Vec<&'static str>,
    /// GCS of each UAV (index by UAV).
    gcs: Vec<u32>,
    returns: Vec<&'static str>,
    /// Task rank inside each UAV's sequence.
    priority: Vec<u32>,
}

impl Layout {
    fn random(sc: &Scenario, rng: &mut ChaCha8Rng) -> Self {
        let s = sc.shape;
        let all: Vec<u32> = (0..s.uavs).collect();
        let uavs = (0..s.tasks)
            .map(|t| {
                let k = if t < s.multi_uav_tasks { 2 } else { 1 };
                let mut u: Vec<u32> = all.choose_multiple(rng, k).copied().collect();
                u.sort_unstable();
                u
            })
            .collect();
        let mut priority: Vec<u32> = (0..s.tasks).collect();
        priority.shuffle(rng);
        Layout {
            uavs,
            paths: (0..s.tasks).map(|_| *PROFILES.choose(rng).unwrap()).collect(),
            sensors: sc.sensors.iter().map(|opts| *opts.choose(rng).unwrap()).collect(),
            gcs: (0..s.uavs).map(|_| rng.random_range(0..s.gcss)).collect(),
            returns: (0..s.uavs).map(|_| *PROFILES.choose(rng).unwrap()).collect(),
            priority,
        }
    }

    /// Changes one or two assignment variables.
    fn mutate(&mut self, sc: &Scenario, rng: &mut ChaCha8Rng) {
        let s = sc.shape;
        for _ in 0..rng.random_range(1..=2) {
            let t = rng.random_range(0..s.tasks) as usize;
            match rng.random_range(0..6) {
                0 => {
                    let i = rng.random_range(0..self.uavs[t].len());
                    let free: Vec<u32> = (0..s.uavs).filter(|u| !self.uavs[t].contains(u)).collect();
                    if let Some(&u) = free.choose(rng) {
                        self.uavs[t][i] = u;
                        self.uavs[t].sort_unstable();
                    }
                }
                1 => {
                    let o = rng.random_range(0..s.tasks) as usize;
                    self.priority.swap(t, o);
                }
                2 => self.paths[t] = flip(self.paths[t]),
                3 => self.sensors[t] = *sc.sensors[t].choose(rng).unwrap(),
                4 => {
                    let u = rng.random_range(0..s.uavs) as usize;
                    self.gcs[u] = rng.random_range(0..s.gcss);
                }
                _ => {
                    let u = rng.random_range(0..s.uavs) as usize;
                    self.returns[u] = flip(self.returns[u]);
                }
            }
        }
    }

    fn used_uavs(&self) -> BTreeSet<u32> {
        self.uavs.iter().flatten().copied().collect()
    }

    fn plan(&self, id: String, sc: &Scenario, rng: &mut ChaCha8Rng) -> MissionPlan {
        let used = self.used_uavs();
        let mut tasks = Vec::new();
        for u in &used {
            let mut mine: Vec<usize> = (0..self.uavs.len()).filter(|&t| self.uavs[t].contains(u)).collect();
            mine.sort_by_key(|&t| self.priority[t]);
            for (k, &t) in mine.iter().enumerate() {
                tasks.push(Assignment {
                    task: format!("t{}", t + 1),
                    uav: format!("u{}", u + 1),
                    order: k as u32 + 1,
                    path: Some(self.paths[t].to_string()),
                    sensor: Some(self.sensors[t].to_string()),
                });
            }
        }
        let gcs = used
            .iter()
            .map(|&u| (format!("u{}", u + 1), format!("g{}", self.gcs[u as usize] + 1)))
            .collect();
        let returns = used
            .iter()
            .map(|&u| (format!("u{}", u + 1), self.returns[u as usize].to_string()))
            .collect();
        MissionPlan {
            id,
            tasks,
            gcs,
            returns,
            criteria: self.criteria(sc, rng),
        }
    }

    /// Plausible criteria for the layout. Fast profiles trade fuel for time,
    /// spreading tasks over more UAVs shortens the mission but costs more.
    fn criteria(&self, sc: &Scenario, rng: &mut ChaCha8Rng) -> BTreeMap<String, f64> {
        let used = self.used_uavs();
        let gcss: BTreeSet<u32> = used.iter().map(|&u| self.gcs[u as usize]).collect();
        let mut load: BTreeMap<u32, (f64, f64)> = used.iter().map(|&u| (u, (0.0, 0.0))).collect();
        for (t, us) in self.uavs.iter().enumerate() {
            let (time_f, fuel_f) = if self.paths[t] == "max" { (0.75, 1.35) } else { (1.0, 1.0) };
            let share = sc.duration[t] / us.len() as f64;
            for u in us {
                let e = load.get_mut(u).unwrap();
                e.0 += share * time_f;
                e.1 += share * fuel_f;
            }
        }
        let mut makespan: f64 = 0.0;
        let (mut flight, mut fuel, mut risk_fuel): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for (u, (time, burn)) in &load {
            let (rt, rf) = if self.returns[*u as usize] == "max" { (0.4, 0.55) } else { (0.55, 0.4) };
            let total_time = time + rt;
            makespan = makespan.max(total_time);
            flight += total_time;
            let f = 120.0 * (burn + rf);
            fuel += f;
            risk_fuel = risk_fuel.max(100.0 * f / 900.0);
        }
        let jitter = |rng: &mut ChaCha8Rng| rng.random_range(0.95..1.05);
        let fast_paths = self.paths.iter().filter(|p| **p == "max").count() as f64 / self.paths.len() as f64;
        let n_uavs = used.len() as f64;
        let n_gcss = gcss.len() as f64;
        let distance = flight * 180.0 * (1.0 + 0.3 * fast_paths) * jitter(rng);
        let cost = (fuel * 1.8 + n_uavs * 250.0 + n_gcss * 400.0) * jitter(rng);
        let values = [
            (MAKESPAN, makespan * jitter(rng)),
            (COST, cost),
            (FUEL, fuel * jitter(rng)),
            (DISTANCE, distance),
            (FLIGHT_TIME, flight * jitter(rng)),
            (RISK_FUEL_USAGE, risk_fuel.clamp(1.0, 100.0)),
            (RISK_DISTANCE_GROUND, (5.0 + 40.0 * fast_paths * jitter(rng)).min(100.0)),
            (RISK_DISTANCE_UAVS, (100.0 * (n_uavs / sc.shape.uavs as f64).powi(2) * jitter(rng)).clamp(1.0, 100.0)),
            (RISK_OUT_OF_COVERAGE, (60.0 / n_gcss * (0.6 + 0.4 * n_uavs / sc.shape.uavs as f64) * jitter(rng)).clamp(1.0, 100.0)),
            (NUM_UAVS, n_uavs),
            (NUM_GCSS, n_gcss),
        ];
        values
            .into_iter()
            .map(|(k, v)| (k.to_string(), (v * 1000.0).round() / 1000.0))
            .collect()
    }
}

fn flip(p: &'static str) -> &'static str {
    if p == "min" {
        "max"
    } else {
        "min"
    }
}

/// One dataset of the given shape. Plans differ pairwise in at least one
/// assignment.
pub fn generate_mission(id: &str, shape: Shape, seed: u64) -> MissionDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sc = Scenario::new(shape, &mut rng);
    let n_base = shape.solutions.div_ceil(3).max(1);
    let bases: Vec<Layout> = (0..n_base).map(|_| Layout::random(&sc, &mut rng)).collect();
    let mut seen = BTreeSet::new();
    let mut plans = Vec::with_capacity(shape.solutions);
    while plans.len() < shape.solutions {
        let i = plans.len();
        let layout = if i < n_base {
            bases[i].clone()
        } else {
            let mut l = bases[rng.random_range(0..n_base)].clone();
            l.mutate(&sc, &mut rng);
            l
        };
        let plan = layout.plan(format!("s{}", i + 1), &sc, &mut rng);
        if seen.insert((plan.tasks.clone(), plan.gcs.clone(), plan.returns.clone())) {
            plans.push(plan);
        }
    }
    MissionDataset {
        id: id.to_string(),
        meta: DatasetMeta {
            tasks: shape.tasks,
            multi_uav_tasks: shape.multi_uav_tasks,
            uavs: shape.uavs,
            gcss: shape.gcss,
        },
        plans,
    }
}

/// The twelve missions, each seeded from `seed` and its position.
pub fn generate_missions(seed: u64) -> Vec<MissionDataset> {
    MISSION_SHAPES
        .iter()
        .enumerate()
        .map(|(i, &s)| generate_mission(&mission_id(i), s, seed.wrapping_mul(1_000).wrapping_add(i as u64)))
        .collect()
}

/// Simulated operator choices: each operator picks the plan with the best
/// profile-weighted normalized utility, perturbed by personal noise.
pub fn generate_decisions(missions: &[MissionDataset], seed: u64) -> Vec<Decision> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_dec1);
    let criteria = mission_criteria();
    let profiles = mission_profiles();
    let mut out = Vec::new();
    for (k, op) in OPERATORS.iter().enumerate() {
        let noise = 0.02 + 0.03 * k as f64;
        for profile in &profiles {
            let w = crisp_weights(profile, &criteria).expect("built-in profile covers the criteria");
            for ds in missions {
                let ranges: Vec<(f64, f64)> = criteria
                    .iter()
                    .map(|c| {
                        ds.plans.iter().map(|p| p.criteria[&c.id]).fold(
                            (f64::INFINITY, f64::NEG_INFINITY),
                            |(lo, hi), v| (lo.min(v), hi.max(v)),
                        )
                    })
                    .collect();
                let utility = |p: &MissionPlan| -> f64 {
                    criteria
                        .iter()
                        .zip(&ranges)
                        .map(|(c, &(lo, hi))| {
                            let q = if hi > lo { (hi - p.criteria[&c.id]) / (hi - lo) } else { 1.0 };
                            w.get(&c.id).unwrap() * q
                        })
                        .sum()
                };
                let best = ds
                    .plans
                    .iter()
                    .map(|p| utility(p) + rng.random_range(-noise..noise))
                    .enumerate()
                    .fold((0, f64::NEG_INFINITY), |acc, (i, u)| if u > acc.1 { (i, u) } else { acc })
                    .0;
                out.push(Decision {
                    operator: op.to_string(),
                    profile: profile.name.clone(),
                    mission: ds.id.clone(),
                    plan: ds.plans[best].id.clone(),
                    ts: None,
                });
            }
        }
    }
    out
}
