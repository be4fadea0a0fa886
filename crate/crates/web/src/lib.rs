//! Browser bindings for the demo page. Three operations are exposed: plan a
//! benchmark domain, look around from a pose, and grow a persistent forest
//! point by point. Results cross the boundary as JSON strings.

use serde::Serialize;
use vamp_core::robot_geometry::{footprint, view_ball, visible_cells};
use vamp_core::vamp_planner::violation_of_path;
use vamp_core::{
    generate, relaxed_vamp_search, save_ascii, CellCoord, Configuration, DomainKind, DomainSpec, FpnntConfig, FpnntNode, Orientation,
    PlannerConfig, PointLabel, ProblemInstance, RegionSet, RobotSpec, Strategy,
};
use wasm_bindgen::prelude::*;

/// Larger maps make the page sluggish.
pub const MAX_CELLS: usize = 250_000;

#[derive(Serialize)]
pub struct MapJson {
    pub width: usize,
    pub height: usize,
    /// One string per row in the ASCII map alphabet.
    pub rows: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Pose {
    pub x: i32,
    pub y: i32,
    pub orient: char,
}

impl From<Configuration> for Pose {
    fn from(q: Configuration) -> Self {
        Pose {
            x: q.x,
            y: q.y,
            orient: q.orient.as_char(),
        }
    }
}

#[derive(Serialize)]
pub struct PlanJson {
    pub map: MapJson,
    pub method: &'static str,
    pub path: Vec<Pose>,
    /// Union of unseen swept cells along the path.
    pub violations: Vec<[i32; 2]>,
    pub steps: u64,
    pub violation_cells: u64,
    pub nodes_expanded: u64,
    pub total_ms: f64,
    pub find_vis_viol_ms: f64,
    pub logical_memory: u64,
}

#[derive(Serialize)]
pub struct ViewJson {
    pub pose: Pose,
    pub collides: bool,
    pub footprint: Vec<[i32; 2]>,
    pub visible: Vec<[i32; 2]>,
    pub ball_center: [f64; 2],
    pub ball_radius: f64,
}

fn cells(region: &RegionSet) -> Vec<[i32; 2]> {
    region.iter().map(|c| [c.col, c.row]).collect()
}

fn map_json(instance: &ProblemInstance) -> MapJson {
    MapJson {
        width: instance.grid.width(),
        height: instance.grid.height(),
        rows: save_ascii(instance).lines().skip(1).map(str::to_string).collect(),
    }
}

fn domain(kind: &str, size: usize) -> Result<ProblemInstance, String> {
    let kind = DomainKind::from_name(kind).ok_or_else(|| format!("unknown domain {kind:?}"))?;
    let spec = DomainSpec::new(kind, size);
    spec.validate().map_err(|e| e.to_string())?;
    let robot = RobotSpec::default();
    let instance = generate(&spec, &robot).map_err(|e| e.to_string())?;
    if instance.grid.width() * instance.grid.height() > MAX_CELLS {
        return Err(format!(
            "{} x {} is too large for the demo",
            instance.grid.width(),
            instance.grid.height()
        ));
    }
    Ok(instance)
}

/// The map alone, for drawing before anything is planned.
pub fn map_of(kind: &str, size: usize) -> Result<MapJson, String> {
    domain(kind, size).map(|i| map_json(&i))
}

pub fn plan_domain(kind: &str, size: usize, method: &str, c_viol: f64) -> Result<PlanJson, String> {
    let strategy = Strategy::from_name(method).ok_or_else(|| format!("unknown method {method:?}"))?;
    if !(c_viol >= 0.0 && c_viol.is_finite()) {
        return Err("violation weight must be a non-negative number".into());
    }
    let instance = domain(kind, size)?;
    let robot = RobotSpec::default();
    let mut cfg = PlannerConfig::with_strategy(strategy);
    cfg.c_viol = c_viol;
    let result = relaxed_vamp_search(&instance, &robot, &cfg).map_err(|e| e.to_string())?;
    let violations = violation_of_path(&result.path, &instance, &robot).map_err(|e| e.to_string())?;
    Ok(PlanJson {
        map: map_json(&instance),
        method: strategy.name(),
        path: result.path.iter().map(|&q| q.into()).collect(),
        violations: cells(&violations),
        steps: result.steps,
        violation_cells: result.total_violation_cells,
        nodes_expanded: result.stats.nodes_expanded,
        total_ms: result.stats.total_time.as_secs_f64() * 1e3,
        find_vis_viol_ms: result.stats.find_vis_viol_time.as_secs_f64() * 1e3,
        logical_memory: result.stats.logical_memory,
    })
}

pub fn view_in_domain(kind: &str, size: usize, x: i32, y: i32, orient: &str) -> Result<ViewJson, String> {
    let orient = orient
        .chars()
        .next()
        .and_then(Orientation::from_char)
        .ok_or_else(|| format!("orientation must be one of N, E, S, W, got {orient:?}"))?;
    let instance = domain(kind, size)?;
    let robot = RobotSpec::default();
    let q = Configuration::new(x, y, orient);
    let seen = visible_cells(&instance.grid, q, &robot).map_err(|e| e.to_string())?;
    let fp = footprint(q, &robot);
    let ball = view_ball(q, &robot);
    let collides = !fp.iter().all(|c: CellCoord| instance.grid.is_passable(c));
    Ok(ViewJson {
        pose: q.into(),
        collides,
        footprint: cells(&fp),
        visible: cells(&seen),
        ball_center: ball.center,
        ball_radius: ball.radius,
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn js(result: Result<String, String>) -> Result<String, JsError> {
    result.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn map(kind: &str, size: usize) -> Result<String, JsError> {
    js(map_of(kind, size).map(|m| to_json(&m)))
}

/// Runs the relaxed planner on a generated domain.
#[wasm_bindgen]
pub fn plan(kind: &str, size: usize, method: &str, c_viol: f64) -> Result<String, JsError> {
    js(plan_domain(kind, size, method, c_viol).map(|p| to_json(&p)))
}

/// The viewcone, footprint and view ball of a pose in a generated domain.
#[wasm_bindgen]
pub fn view(kind: &str, size: usize, x: i32, y: i32, orient: &str) -> Result<String, JsError> {
    js(view_in_domain(kind, size, x, y, orient).map(|v| to_json(&v)))
}

#[derive(Serialize)]
pub struct VersionJson {
    pub version: u32,
    pub parent: Option<u32>,
    pub depth: usize,
    pub m: usize,
    /// Version ids along the lookback, newest first.
    pub lookback: Vec<u32>,
    /// Version ids stored in each forest slot, `None` for a vacant slot.
    pub slots: Vec<Option<Vec<u32>>>,
}

#[derive(Serialize)]
pub struct QueryJson {
    pub hits: Vec<u32>,
    pub lookback_points: usize,
    pub tree_nodes: usize,
    /// Points a brute-force scan of the whole chain would examine.
    pub chain_len: usize,
}

/// A tree of FPNNT versions. Every inserted point becomes a new version and
/// is labeled with its version id.
#[wasm_bindgen]
pub struct Playground {
    cfg: FpnntConfig,
    versions: Vec<FpnntNode<u32>>,
    parents: Vec<Option<u32>>,
}

impl Playground {
    pub fn try_new(m: usize) -> Result<Playground, String> {
        if m == 0 {
            return Err("M must be at least 1".into());
        }
        Ok(Playground {
            cfg: FpnntConfig::new(m),
            versions: Vec::new(),
            parents: Vec::new(),
        })
    }

    fn node(&self, version: u32) -> Result<&FpnntNode<u32>, String> {
        self.versions.get(version as usize).ok_or_else(|| format!("no version {version}"))
    }

    /// Inserts under `parent`, or under the newest version when `parent` is
    /// `None`. The first insertion creates the root.
    pub fn insert_point(&mut self, parent: Option<u32>, x: f64, y: f64) -> Result<u32, String> {
        if !(x.is_finite() && y.is_finite()) {
            return Err("coordinates must be finite".into());
        }
        let id = self.versions.len() as u32;
        let label = PointLabel::new([x, y], id);
        let parent = match parent {
            _ if self.versions.is_empty() => None,
            Some(p) => Some(p),
            None => Some(id - 1),
        };
        let node = match parent {
            None => FpnntNode::new_root(label, self.cfg),
            Some(p) => self.node(p)?.insert_node(label),
        };
        self.versions.push(node);
        self.parents.push(parent);
        Ok(id)
    }

    pub fn describe_version(&self, version: u32) -> Result<VersionJson, String> {
        let node = self.node(version)?;
        let forest = node.forest();
        let slots = (0..forest.slot_count())
            .map(|i| forest.slot(i).map(|t| t.iter().map(|p| p.label).collect()))
            .collect();
        Ok(VersionJson {
            version,
            parent: self.parents[version as usize],
            depth: node.depth(),
            m: node.m(),
            lookback: node.lookback().iter().map(|p| p.label).collect(),
            slots,
        })
    }

    pub fn query_version(&self, version: u32, x: f64, y: f64, r: f64) -> Result<QueryJson, String> {
        if r.is_nan() || r < 0.0 {
            return Err("radius must be non-negative".into());
        }
        let node = self.node(version)?;
        let mut hits = Vec::new();
        let work = node.for_each_within(&[x, y], r * r, |p| hits.push(p.label));
        Ok(QueryJson {
            hits,
            lookback_points: work.lookback_points,
            tree_nodes: work.tree_nodes,
            chain_len: node.depth(),
        })
    }
}

#[wasm_bindgen]
impl Playground {
    #[wasm_bindgen(constructor)]
    pub fn new(m: usize) -> Result<Playground, JsError> {
        Playground::try_new(m).map_err(|e| JsError::new(&e))
    }

    /// Number of versions created so far.
    pub fn len(&self) -> usize {
        self.versions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.versions.is_empty()
    }

    /// A negative `parent` means the newest version.
    pub fn insert(&mut self, parent: i32, x: f64, y: f64) -> Result<u32, JsError> {
        let parent = u32::try_from(parent).ok();
        self.insert_point(parent, x, y).map_err(|e| JsError::new(&e))
    }

    pub fn describe(&self, version: u32) -> Result<String, JsError> {
        js(self.describe_version(version).map(|v| to_json(&v)))
    }

    pub fn query(&self, version: u32, x: f64, y: f64, r: f64) -> Result<String, JsError> {
        js(self.query_version(version, x, y, r).map(|q| to_json(&q)))
    }
}
