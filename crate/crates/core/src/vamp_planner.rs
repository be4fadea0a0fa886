//! Relaxed visibility-aware motion planning.
//!
//! Best-first search over the 6-connected configuration lattice. Each edge
//! costs `c_step` plus `c_viol` times the number of swept cells that were not
//! seen beforehand, either initially (`v0`) or by some viewcone earlier on the
//! same search path. Search nodes do not store a visible region; they carry a
//! handle into a persistent path index holding one viewcone bounding-ball
//! center per path configuration, and the unseen part of a swept region is
//! recovered by a ball range query against that index.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Duration;

use web_time::Instant;

use crate::error::{Error, Result};
use crate::fpnnt::{FpnntConfig, FpnntNode, MemoryLedger, DEFAULT_LOOKBACK};
use crate::grid_world::{ProblemInstance, WorkspaceGrid};
use crate::kdtree::PointLabel;
use crate::region::{CellCoord, RegionSet};
use crate::robot_geometry::{
    footprint, footprint_cells, is_visible, motion_between, successors, swept_ball, swept_cells, view_ball, visible_cells, Configuration,
    Motion, RobotSpec,
};

/// Added to the query radius so that rounding in `r_vis + r_s` can never
/// drop a viewcone lying exactly on the interference boundary.
const QUERY_SLACK: f64 = 1e-9;

/// Logical cost of one search node (configuration, parent link, two cost
/// counters, priority, index handle), in the units of [`crate::fpnnt::cost`].
pub const SEARCH_NODE_COST: u64 = 64;

/// Logical cost of one brute-force path entry: a point-label plus a parent link.
pub const BASELINE_ENTRY_COST: u64 = crate::fpnnt::cost::POINT_LABEL + 8;

/// A persistent store of `(viewcone center, configuration)` pairs along search
/// paths. Inserting under a handle yields a new handle; old handles stay
/// valid and keep answering queries over their own chain.
pub trait PathIndex {
    type Handle: Clone;

    fn root(&mut self, w: [f64; 2], q: Configuration) -> Self::Handle;

    fn insert(&mut self, parent: &Self::Handle, w: [f64; 2], q: Configuration) -> Self::Handle;

    /// Appends to `out` every configuration on `handle`'s chain whose point
    /// lies within squared distance `r_sq` of `center`.
    fn range_query(&self, handle: &Self::Handle, center: [f64; 2], r_sq: f64, out: &mut Vec<Configuration>);

    /// Logical memory of the entries reachable from `handles`.
    fn logical_memory<'a>(&'a self, handles: impl Iterator<Item = &'a Self::Handle>) -> u64
    where
        Self::Handle: 'a;
}

/// Stores one point-label per node with a parent link and answers queries
/// by scanning the whole chain.
#[derive(Debug, Default)]
pub struct BruteForceLookback {
    entries: Vec<BaselineEntry>,
}

#[derive(Debug, Clone, Copy)]
struct BaselineEntry {
    point: [f64; 2],
    q: Configuration,
    parent: u32,
}

const NO_PARENT: u32 = u32::MAX;

impl BruteForceLookback {
    pub fn new() -> Self {
        Self::default()
    }
}

impl PathIndex for BruteForceLookback {
    type Handle = u32;

    fn root(&mut self, w: [f64; 2], q: Configuration) -> u32 {
        self.entries.push(BaselineEntry {
            point: w,
            q,
            parent: NO_PARENT,
        });
        (self.entries.len() - 1) as u32
    }

    fn insert(&mut self, parent: &u32, w: [f64; 2], q: Configuration) -> u32 {
        self.entries.push(BaselineEntry {
            point: w,
            q,
            parent: *parent,
        });
        (self.entries.len() - 1) as u32
    }

    fn range_query(&self, handle: &u32, center: [f64; 2], r_sq: f64, out: &mut Vec<Configuration>) {
        let mut cursor = *handle;
        while cursor != NO_PARENT {
            let e = &self.entries[cursor as usize];
            let dx = e.point[0] - center[0];
            let dy = e.point[1] - center[1];
            if dx * dx + dy * dy <= r_sq {
                out.push(e.q);
            }
            cursor = e.parent;
        }
    }

    fn logical_memory<'a>(&'a self, handles: impl Iterator<Item = &'a u32>) -> u64 {
        handles.count() as u64 * BASELINE_ENTRY_COST
    }
}

/// Path index backed by the fully persistent nearest-neighbor tree.
#[derive(Debug, Clone, Copy)]
pub struct FpnntIndex {
    cfg: FpnntConfig,
}

impl FpnntIndex {
    pub fn new(cfg: FpnntConfig) -> Self {
        FpnntIndex { cfg }
    }
}

impl PathIndex for FpnntIndex {
    type Handle = FpnntNode<Configuration>;

    fn root(&mut self, w: [f64; 2], q: Configuration) -> Self::Handle {
        FpnntNode::new_root(PointLabel::new(w, q), self.cfg)
    }

    fn insert(&mut self, parent: &Self::Handle, w: [f64; 2], q: Configuration) -> Self::Handle {
        parent.insert_node(PointLabel::new(w, q))
    }

    fn range_query(&self, handle: &Self::Handle, center: [f64; 2], r_sq: f64, out: &mut Vec<Configuration>) {
        handle.for_each_within(&center, r_sq, |p| out.push(p.label));
    }

    fn logical_memory<'a>(&'a self, handles: impl Iterator<Item = &'a Self::Handle>) -> u64 {
        let mut ledger = MemoryLedger::new();
        for h in handles {
            ledger.add_node(h);
        }
        ledger.total()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Baseline,
    Fpnnt,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Baseline => "baseline",
            Strategy::Fpnnt => "fpnnt",
        }
    }

    pub fn from_name(s: &str) -> Option<Strategy> {
        match s {
            "baseline" => Some(Strategy::Baseline),
            "fpnnt" => Some(Strategy::Fpnnt),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlannerConfig {
    pub c_step: f64,
    pub c_viol: f64,
    /// Manhattan distance to the goal region, scaled by `c_step`.
    pub use_heuristic: bool,
    pub strategy: Strategy,
    pub m: usize,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        PlannerConfig {
            c_step: 1.0,
            c_viol: 100.0,
            use_heuristic: true,
            strategy: Strategy::Fpnnt,
            m: DEFAULT_LOOKBACK,
        }
    }
}

impl PlannerConfig {
    pub fn with_strategy(strategy: Strategy) -> Self {
        PlannerConfig {
            strategy,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub nodes_created: u64,
    pub find_vis_viol_calls: u64,
    pub find_vis_viol_time: Duration,
    pub insert_time: Duration,
    pub total_time: Duration,
    pub logical_memory: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathResult {
    pub path: Vec<Configuration>,
    /// Sum of per-edge unseen swept cell counts along `path`.
    pub total_violation_cells: u64,
    pub steps: u64,
    pub stats: SearchStats,
}

/// True when every cell swept by `from -> to` is free. `to` must be a
/// primitive successor of a collision-free `from`.
fn edge_is_free(grid: &WorkspaceGrid, from: Configuration, to: Configuration, spec: &RobotSpec) -> bool {
    match motion_between(from, to) {
        Some(Motion::Translate(..)) => footprint_cells(to, spec).all(|c| grid.is_passable(c)),
        Some(Motion::Rotate | Motion::Stay) => true,
        None => false,
    }
}

fn check_edge(grid: &WorkspaceGrid, from: Configuration, to: Configuration, spec: &RobotSpec) -> Result<RegionSet> {
    let swept = swept_cells(from, to, spec)?;
    if swept.iter().all(|c| grid.is_passable(c)) {
        Ok(swept)
    } else {
        Err(Error::Collision { from, to })
    }
}

/// The part of the region swept by `q_i -> q_next` that neither `v0` nor any
/// viewcone on `handle`'s chain covers. Only viewcones whose bounding balls
/// interfere with the swept region's bounding ball are examined.
pub fn find_vis_viol<I: PathIndex>(
    index: &I,
    handle: &I::Handle,
    q_i: Configuration,
    q_next: Configuration,
    spec: &RobotSpec,
    grid: &WorkspaceGrid,
    v0: &RegionSet,
) -> Result<RegionSet> {
    let swept = check_edge(grid, q_i, q_next, spec)?;
    let mut scratch = Vec::new();
    Ok(unseen_swept(index, handle, swept, q_i, q_next, spec, grid, v0, &mut scratch))
}

#[allow(clippy::too_many_arguments)]
fn unseen_swept<I: PathIndex>(
    index: &I,
    handle: &I::Handle,
    swept: RegionSet,
    q_i: Configuration,
    q_next: Configuration,
    spec: &RobotSpec,
    grid: &WorkspaceGrid,
    v0: &RegionSet,
    candidates: &mut Vec<Configuration>,
) -> RegionSet {
    let ball = swept_ball(q_i, q_next, spec).expect("edge already validated");
    let r_query = spec.r_vis + ball.radius + QUERY_SLACK;
    let mut unseen = swept;
    unseen.retain(|c| !v0.contains(*c));
    if unseen.is_empty() {
        return unseen;
    }
    candidates.clear();
    index.range_query(handle, ball.center, r_query * r_query, candidates);
    for &q_j in candidates.iter() {
        unseen.retain(|&c| !is_visible(grid, q_j, c, spec));
        if unseen.is_empty() {
            break;
        }
    }
    unseen
}

struct SearchNode<H> {
    q: Configuration,
    parent: u32,
    handle: H,
    g_steps: u64,
    g_viol: u64,
}

#[derive(Clone, Copy, Debug)]
struct OpenEntry {
    priority: f64,
    g_viol: u64,
    g_steps: u64,
    seq: u64,
    node: u32,
}

impl PartialEq for OpenEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for OpenEntry {}

impl PartialOrd for OpenEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OpenEntry {
    // Reversed so that BinaryHeap pops the smallest key first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .priority
            .total_cmp(&self.priority)
            .then(other.g_viol.cmp(&self.g_viol))
            .then(other.g_steps.cmp(&self.g_steps))
            .then(other.seq.cmp(&self.seq))
    }
}

/// Dense table indexed by `(x, y, orientation)` over the grid.
struct ConfigTable<T> {
    width: usize,
    height: usize,
    data: Vec<T>,
}

impl<T: Copy> ConfigTable<T> {
    fn new(grid: &WorkspaceGrid, fill: T) -> Self {
        ConfigTable {
            width: grid.width(),
            height: grid.height(),
            data: vec![fill; grid.width() * grid.height() * 4],
        }
    }

    fn slot(&self, q: Configuration) -> Option<usize> {
        if q.x < 0 || q.y < 0 || q.x as usize >= self.width || q.y as usize >= self.height {
            return None;
        }
        Some((q.y as usize * self.width + q.x as usize) * 4 + q.orient as usize)
    }
}

/// L1 distance from each reference cell to the nearest reference cell whose
/// footprint touches a goal cell.
fn goal_distance_field(instance: &ProblemInstance, spec: &RobotSpec) -> Vec<u32> {
    let (w, h) = (instance.grid.width(), instance.grid.height());
    let s = spec.footprint_side as i32;
    let inf = u32::MAX / 2;
    let mut d = vec![inf; w * h];
    for g in &instance.goal_cells {
        for dy in 0..s {
            for dx in 0..s {
                let (x, y) = (g.col - dx, g.row - dy);
                if x >= 0 && y >= 0 && (x as usize) < w && (y as usize) < h {
                    d[y as usize * w + x as usize] = 0;
                }
            }
        }
    }
    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            if x > 0 {
                d[i] = d[i].min(d[i - 1] + 1);
            }
            if y > 0 {
                d[i] = d[i].min(d[i - w] + 1);
            }
        }
    }
    for y in (0..h).rev() {
        for x in (0..w).rev() {
            let i = y * w + x;
            if x + 1 < w {
                d[i] = d[i].min(d[i + 1] + 1);
            }
            if y + 1 < h {
                d[i] = d[i].min(d[i + w] + 1);
            }
        }
    }
    d
}

/// Relaxed search with the path index chosen by `cfg.strategy`.
pub fn relaxed_vamp_search(instance: &ProblemInstance, spec: &RobotSpec, cfg: &PlannerConfig) -> Result<PathResult> {
    match cfg.strategy {
        Strategy::Baseline => search_with(instance, spec, cfg, BruteForceLookback::new()),
        Strategy::Fpnnt => search_with(instance, spec, cfg, FpnntIndex::new(FpnntConfig::new(cfg.m))),
    }
}

/// Relaxed search over an explicit path index.
pub fn search_with<I: PathIndex>(instance: &ProblemInstance, spec: &RobotSpec, cfg: &PlannerConfig, mut index: I) -> Result<PathResult> {
    assert!(cfg.c_step > 0.0 && cfg.c_viol >= 0.0, "invalid cost weights");
    let started = Instant::now();
    let grid = &instance.grid;
    let mut stats = SearchStats::default();

    let q0 = instance.q0;
    if !footprint_cells(q0, spec).all(|c| grid.is_passable(c)) {
        return Err(Error::InvalidSpec(format!("start {q0:?} is not collision-free")));
    }

    let goal_dist = if cfg.use_heuristic {
        Some(goal_distance_field(instance, spec))
    } else {
        None
    };
    let heuristic = |q: Configuration| -> f64 {
        match &goal_dist {
            Some(d) => cfg.c_step * d[q.y as usize * grid.width() + q.x as usize] as f64,
            None => 0.0,
        }
    };
    let cost = |steps: u64, viol: u64| cfg.c_step * steps as f64 + cfg.c_viol * viol as f64;

    let mut best: ConfigTable<u32> = ConfigTable::new(grid, u32::MAX);
    let mut nodes: Vec<SearchNode<I::Handle>> = Vec::new();
    let mut open = BinaryHeap::new();
    let mut seq = 0u64;

    let t = Instant::now();
    let root_handle = index.root(view_ball(q0, spec).center, q0);
    stats.insert_time += t.elapsed();
    nodes.push(SearchNode {
        q: q0,
        parent: NO_PARENT,
        handle: root_handle,
        g_steps: 0,
        g_viol: 0,
    });
    let start_slot = best.slot(q0).expect("start in grid");
    best.data[start_slot] = 0;
    open.push(OpenEntry {
        priority: heuristic(q0),
        g_viol: 0,
        g_steps: 0,
        seq,
        node: 0,
    });

    let mut candidates = Vec::new();
    let mut goal_node = None;
    while let Some(entry) = open.pop() {
        let id = entry.node;
        let q = nodes[id as usize].q;
        if best.data[best.slot(q).expect("in grid")] != id {
            continue;
        }
        if instance.is_goal(q, spec) {
            goal_node = Some(id);
            break;
        }
        stats.nodes_expanded += 1;
        let (g_steps, g_viol) = (nodes[id as usize].g_steps, nodes[id as usize].g_viol);

        for next in successors(q) {
            let Some(slot) = best.slot(next) else { continue };
            if !edge_is_free(grid, q, next, spec) {
                continue;
            }
            let swept = swept_cells(q, next, spec).expect("successor is a primitive");
            let t = Instant::now();
            let unseen = unseen_swept(
                &index,
                &nodes[id as usize].handle,
                swept,
                q,
                next,
                spec,
                grid,
                &instance.v0,
                &mut candidates,
            );
            stats.find_vis_viol_time += t.elapsed();
            stats.find_vis_viol_calls += 1;

            let steps = g_steps + 1;
            let viol = g_viol + unseen.len() as u64;
            let g = cost(steps, viol);
            let incumbent = best.data[slot];
            if incumbent != u32::MAX {
                let other = &nodes[incumbent as usize];
                if g >= cost(other.g_steps, other.g_viol) {
                    continue;
                }
            }

            let t = Instant::now();
            let handle = index.insert(&nodes[id as usize].handle, view_ball(next, spec).center, next);
            stats.insert_time += t.elapsed();

            let child = nodes.len() as u32;
            nodes.push(SearchNode {
                q: next,
                parent: id,
                handle,
                g_steps: steps,
                g_viol: viol,
            });
            best.data[slot] = child;
            seq += 1;
            open.push(OpenEntry {
                priority: g + heuristic(next),
                g_viol: viol,
                g_steps: steps,
                seq,
                node: child,
            });
        }
    }

    let goal = goal_node.ok_or(Error::NoPath)?;
    let mut path = Vec::new();
    let mut cursor = goal;
    while cursor != NO_PARENT {
        path.push(nodes[cursor as usize].q);
        cursor = nodes[cursor as usize].parent;
    }
    path.reverse();

    stats.nodes_created = nodes.len() as u64;
    stats.logical_memory = SEARCH_NODE_COST * nodes.len() as u64 + index.logical_memory(nodes.iter().map(|n| &n.handle));
    stats.total_time = started.elapsed();
    let goal = &nodes[goal as usize];
    Ok(PathResult {
        path,
        total_violation_cells: goal.g_viol,
        steps: goal.g_steps,
        stats,
    })
}

fn check_path_edges(path: &[Configuration], instance: &ProblemInstance, spec: &RobotSpec) -> Result<()> {
    if let Some(&first) = path.first() {
        if !footprint_cells(first, spec).all(|c| instance.grid.is_passable(c)) {
            return Err(Error::InvalidPath(format!("{first:?} is not collision-free")));
        }
    }
    for w in path.windows(2) {
        check_edge(&instance.grid, w[0], w[1], spec).map_err(|e| Error::InvalidPath(e.to_string()))?;
    }
    Ok(())
}

/// The exact union of unseen swept regions along `path`, computed with an
/// explicit running visible region. No filtering, no persistence.
pub fn violation_of_path(path: &[Configuration], instance: &ProblemInstance, spec: &RobotSpec) -> Result<RegionSet> {
    check_path_edges(path, instance, spec)?;
    let mut seen = instance.v0.clone();
    let mut violation = RegionSet::new();
    for w in path.windows(2) {
        let view = visible_cells(&instance.grid, w[0], spec).map_err(|e| Error::InvalidPath(e.to_string()))?;
        seen = seen.union(&view);
        let swept = swept_cells(w[0], w[1], spec)?;
        violation = violation.union(&swept.difference(&seen));
    }
    Ok(violation)
}

/// Whether `path` is collision-free and every swept region was seen first.
pub fn check_feasible(path: &[Configuration], instance: &ProblemInstance, spec: &RobotSpec) -> bool {
    match violation_of_path(path, instance, spec) {
        Ok(v) => v.is_empty(),
        Err(_) => false,
    }
}

/// Cells swept anywhere along a path (used by visualizations).
pub fn path_swept_cells(path: &[Configuration], spec: &RobotSpec) -> RegionSet {
    let mut out: Vec<CellCoord> = path.iter().flat_map(|&q| footprint(q, spec).as_slice().to_vec()).collect();
    out.sort_unstable();
    out.dedup();
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_world::{CellState, DomainKind, DomainSpec};
    use crate::robot_geometry::Orientation;

    fn open_room(w: usize, h: usize) -> WorkspaceGrid {
        WorkspaceGrid::sealed(w, h)
    }

    #[test]
    fn first_move_inside_v0_is_clean() {
        let spec = RobotSpec::default();
        let grid = open_room(12, 12);
        let q0 = Configuration::new(5, 6, Orientation::N);
        let inst = ProblemInstance::new(grid, q0, [CellCoord::new(5, 1)].into_iter().collect(), &spec).unwrap();
        let mut index = BruteForceLookback::new();
        let h = index.root(view_ball(q0, &spec).center, q0);
        let next = Configuration::new(5, 5, Orientation::N);
        let viol = find_vis_viol(&index, &h, q0, next, &spec, &inst.grid, &inst.v0).unwrap();
        assert!(viol.is_empty());
    }

    #[test]
    fn backing_into_unseen_space_violates() {
        let spec = RobotSpec::default();
        let grid = open_room(10, 10);
        let q0 = Configuration::new(4, 3, Orientation::N);
        let inst = ProblemInstance::new(grid, q0, [CellCoord::new(4, 8)].into_iter().collect(), &spec).unwrap();
        for strategy in [Strategy::Baseline, Strategy::Fpnnt] {
            let next = Configuration::new(4, 4, Orientation::N);
            let expected = swept_cells(q0, next, &spec).unwrap().difference(&inst.v0);
            assert_eq!(expected.as_slice(), &[CellCoord::new(4, 5), CellCoord::new(5, 5)]);
            let viol = match strategy {
                Strategy::Baseline => {
                    let mut index = BruteForceLookback::new();
                    let h = index.root(view_ball(q0, &spec).center, q0);
                    find_vis_viol(&index, &h, q0, next, &spec, &inst.grid, &inst.v0).unwrap()
                }
                Strategy::Fpnnt => {
                    let mut index = FpnntIndex::new(FpnntConfig::new(2));
                    let h = index.root(view_ball(q0, &spec).center, q0);
                    find_vis_viol(&index, &h, q0, next, &spec, &inst.grid, &inst.v0).unwrap()
                }
            };
            assert_eq!(viol, expected);
        }
    }

    #[test]
    fn find_vis_viol_rejects_bad_edges() {
        let spec = RobotSpec::default();
        let mut grid = open_room(10, 10);
        grid.set(CellCoord::new(4, 2), CellState::Glass);
        let q0 = Configuration::new(4, 3, Orientation::N);
        let inst = ProblemInstance::new(grid, q0, [CellCoord::new(4, 8)].into_iter().collect(), &spec).unwrap();
        let mut index = BruteForceLookback::new();
        let h = index.root(view_ball(q0, &spec).center, q0);
        let up = Configuration::new(4, 2, Orientation::N);
        assert!(matches!(
            find_vis_viol(&index, &h, q0, up, &spec, &inst.grid, &inst.v0),
            Err(Error::Collision { .. })
        ));
        let far = Configuration::new(4, 5, Orientation::N);
        assert!(matches!(
            find_vis_viol(&index, &h, q0, far, &spec, &inst.grid, &inst.v0),
            Err(Error::NotAPrimitive { .. })
        ));
    }

    #[test]
    fn goal_ahead_in_open_room_is_violation_free_and_shortest() {
        let spec = RobotSpec::default();
        let q0 = Configuration::new(9, 14, Orientation::N);
        let goal: RegionSet = (9..11).map(|c| CellCoord::new(c, 4)).collect();
        let inst = ProblemInstance::new(open_room(20, 20), q0, goal, &spec).unwrap();
        for strategy in [Strategy::Baseline, Strategy::Fpnnt] {
            let res = relaxed_vamp_search(&inst, &spec, &PlannerConfig::with_strategy(strategy)).unwrap();
            assert_eq!(res.total_violation_cells, 0);
            // Footprint rows 14..=15 must reach row 4: ten forward moves.
            assert_eq!(res.steps, 10);
            assert_eq!(res.path[0], q0);
            assert!(check_feasible(&res.path, &inst, &spec));
        }
    }

    #[test]
    fn walled_off_goal_has_no_path() {
        let spec = RobotSpec::default();
        let mut grid = open_room(20, 20);
        grid.fill_rect(1..=18, 8..=8, CellState::Obstacle);
        let q0 = Configuration::new(9, 14, Orientation::N);
        let goal: RegionSet = [CellCoord::new(9, 3)].into_iter().collect();
        let inst = ProblemInstance::new(grid, q0, goal, &spec).unwrap();
        assert_eq!(
            relaxed_vamp_search(&inst, &spec, &PlannerConfig::default()).unwrap_err(),
            Error::NoPath
        );
    }

    #[test]
    fn glass_blocks_motion_in_feasibility() {
        let spec = RobotSpec::default();
        let mut grid = open_room(12, 12);
        grid.set(CellCoord::new(5, 4), CellState::Glass);
        let q0 = Configuration::new(5, 6, Orientation::N);
        let inst = ProblemInstance::new(grid, q0, [CellCoord::new(5, 1)].into_iter().collect(), &spec).unwrap();
        let path = [
            q0,
            Configuration::new(5, 5, Orientation::N),
            Configuration::new(5, 4, Orientation::N),
        ];
        assert!(!check_feasible(&path, &inst, &spec));
        assert!(check_feasible(&path[..2], &inst, &spec));
        assert!(check_feasible(&[], &inst, &spec));
        assert!(check_feasible(&[q0], &inst, &spec));
    }

    #[test]
    fn single_edge_violation_matches_oracle() {
        let spec = RobotSpec::default();
        let q0 = Configuration::new(4, 3, Orientation::N);
        let inst = ProblemInstance::new(open_room(10, 10), q0, [CellCoord::new(4, 8)].into_iter().collect(), &spec).unwrap();
        let next = Configuration::new(4, 4, Orientation::N);
        let mut index = BruteForceLookback::new();
        let h = index.root(view_ball(q0, &spec).center, q0);
        let direct = find_vis_viol(&index, &h, q0, next, &spec, &inst.grid, &inst.v0).unwrap();
        assert_eq!(violation_of_path(&[q0, next], &inst, &spec).unwrap(), direct);
    }

    #[test]
    fn strategies_agree_on_small_horseshoe() {
        let spec = RobotSpec::default();
        let inst = crate::grid_world::generate(&DomainSpec::new(DomainKind::HorseshoeHallway, 60), &spec).unwrap();
        let a = relaxed_vamp_search(&inst, &spec, &PlannerConfig::with_strategy(Strategy::Baseline)).unwrap();
        let b = relaxed_vamp_search(&inst, &spec, &PlannerConfig::with_strategy(Strategy::Fpnnt)).unwrap();
        assert_eq!(a.path, b.path);
        assert_eq!(a.total_violation_cells, b.total_violation_cells);
        assert_eq!(a.stats.nodes_expanded, b.stats.nodes_expanded);
    }
}
