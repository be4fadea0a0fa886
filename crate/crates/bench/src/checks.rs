//! Oracle-equivalence suites. Each check compares an optimized path through
//! the library against a slow definitional computation written here, and
//! reports every mismatch it finds.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use vamp_core::robot_geometry::{footprint, successors, swept_cells, view_ball, visible_cells};
use vamp_core::vamp_planner::{find_vis_viol, violation_of_path, BruteForceLookback, FpnntIndex, PathIndex};
use vamp_core::{
    generate, relaxed_vamp_search, CellCoord, CellState, Configuration, DomainKind, DomainSpec, FpnntConfig, FpnntNode, Orientation,
    PathResult, PlannerConfig, PointLabel, ProblemInstance, RegionSet, RobotSpec, Strategy, WorkspaceGrid,
};

const MAX_REPORTED: usize = 10;

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub failure_count: usize,
    pub elapsed: Duration,
}

impl CheckOutcome {
    fn new(name: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            cases: 0,
            failures: Vec::new(),
            failure_count: 0,
            elapsed: Duration::ZERO,
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0 && self.cases > 0
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} cases, {} mismatches, {:.2}s",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.failure_count,
            self.elapsed.as_secs_f64()
        )?;
        for msg in &self.failures {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

fn timed(mut outcome: CheckOutcome, started: Instant) -> CheckOutcome {
    outcome.elapsed = started.elapsed();
    outcome
}

fn sorted_labels<'a>(hits: impl IntoIterator<Item = &'a PointLabel<u32>>) -> Vec<u32> {
    let mut v: Vec<u32> = hits.into_iter().map(|p| p.label).collect();
    v.sort_unstable();
    v
}

/// Versions stored as a parent-linked arena; the oracle walks the links.
struct VersionArena {
    nodes: Vec<FpnntNode<u32>>,
    parent: Vec<Option<usize>>,
    points: Vec<[f64; 2]>,
}

impl VersionArena {
    fn new(p: [f64; 2], m: usize) -> Self {
        VersionArena {
            nodes: vec![FpnntNode::new_root(PointLabel::new(p, 0), FpnntConfig::new(m))],
            parent: vec![None],
            points: vec![p],
        }
    }

    fn insert(&mut self, parent: usize, p: [f64; 2]) -> usize {
        let id = self.nodes.len();
        let node = self.nodes[parent].insert_node(PointLabel::new(p, id as u32));
        self.nodes.push(node);
        self.parent.push(Some(parent));
        self.points.push(p);
        id
    }

    fn scan(&self, version: usize, c: [f64; 2], r: f64) -> Vec<u32> {
        let mut out = Vec::new();
        let mut cursor = Some(version);
        while let Some(i) = cursor {
            let p = self.points[i];
            if (p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2) <= r * r {
                out.push(i as u32);
            }
            cursor = self.parent[i];
        }
        out.sort_unstable();
        out
    }

    fn query(&self, version: usize, c: [f64; 2], r: f64) -> Vec<u32> {
        sorted_labels(self.nodes[version].range_query(&c, r).expect("non-negative radius"))
    }
}

fn lattice_point(rng: &mut StdRng) -> [f64; 2] {
    // Half-integer lattice: duplicates and exact boundary distances are common.
    [rng.gen_range(0..64) as f64 * 0.5, rng.gen_range(0..64) as f64 * 0.5]
}

/// Random insert / branch / query schedules against an ancestor-chain scan.
pub fn fpnnt_schedules(schedules: usize, max_depth: usize, seed: u64) -> CheckOutcome {
    let started = Instant::now();
    let mut out = CheckOutcome::new("fpnnt range query == chain scan");
    let mut rng = StdRng::seed_from_u64(seed);
    for s in 0..schedules {
        let m = [1, 2, 5, 32][s % 4];
        let target = rng.gen_range(1..=max_depth);
        let mut arena = VersionArena::new(lattice_point(&mut rng), m);
        let mut deepest = 0;
        let mut check = |arena: &VersionArena, rng: &mut StdRng, v: usize| {
            let c = lattice_point(rng);
            let r = if rng.gen_bool(0.05) {
                1e6
            } else {
                rng.gen_range(0..24) as f64 * 0.5
            };
            let got = arena.query(v, c, r);
            let want = arena.scan(v, c, r);
            out.record(got == want, || {
                format!("schedule {s} M={m} version depth {}: {got:?} != {want:?}", arena.nodes[v].depth())
            });
        };
        while arena.nodes[deepest].depth() < target {
            match rng.gen_range(0..10) {
                0..=6 => {
                    let p = lattice_point(&mut rng);
                    deepest = arena.insert(deepest, p);
                }
                7 => {
                    let from = rng.gen_range(0..arena.nodes.len());
                    let p = lattice_point(&mut rng);
                    let id = arena.insert(from, p);
                    if arena.nodes[id].depth() > arena.nodes[deepest].depth() {
                        deepest = id;
                    }
                }
                _ => {
                    let v = rng.gen_range(0..arena.nodes.len());
                    check(&arena, &mut rng, v);
                }
            }
        }
        check(&arena, &mut rng, deepest);
    }
    timed(out, started)
}

fn expected_occupancy(depth: usize, m: usize) -> Vec<Option<usize>> {
    let mut q = (depth - 1) / m;
    let mut slots = Vec::new();
    let mut i = 0;
    while q > 0 {
        slots.push((q & 1 == 1).then_some((1 << i) * m));
        q >>= 1;
        i += 1;
    }
    slots
}

fn trimmed(mut occ: Vec<Option<usize>>) -> Vec<Option<usize>> {
    while occ.last() == Some(&None) {
        occ.pop();
    }
    occ
}

/// Slot occupancy after every insertion equals the binary digits of
/// `(depth - 1) / M`, slot `i` holding `2^i * M` points.
pub fn forest_shape(ms: &[usize], depth_factor: usize) -> CheckOutcome {
    let started = Instant::now();
    let mut out = CheckOutcome::new("forest occupancy == binary counter");
    for &m in ms {
        let mut node: FpnntNode<u32> = FpnntNode::new_root(PointLabel::new([0.0, 0.0], 0), FpnntConfig::new(m));
        for depth in 1..=depth_factor * m {
            let got = trimmed(node.forest().occupancy());
            let want = expected_occupancy(depth, m);
            let lookback = node.lookback_len();
            out.record(got == want && lookback == (depth - 1) % m + 1, || {
                format!("M={m} depth {depth}: slots {got:?} (want {want:?}), lookback {lookback}")
            });
            node = node.insert_node(PointLabel::new([depth as f64, 0.0], depth as u32));
        }
    }
    timed(out, started)
}

/// The worked example with `M = 5`: lookback 4 -> 5 -> 1 while a 20-point
/// tree replaces the 5- and 10-point slots and the 40-point slot is reused.
pub fn carry_example() -> CheckOutcome {
    let started = Instant::now();
    let mut out = CheckOutcome::new("M=5 carry example");
    let mut node: FpnntNode<u32> = FpnntNode::new_root(PointLabel::new([0.0, 0.0], 0), FpnntConfig::new(5));
    while node.depth() < 59 {
        let d = node.depth() as u32;
        node = node.insert_node(PointLabel::new([d as f64, 1.0], d));
    }
    let a = node;
    let b = a.insert_node(PointLabel::new([59.0, 1.0], 59));
    let c = b.insert_node(PointLabel::new([60.0, 1.0], 60));

    let occ = |n: &FpnntNode<u32>| trimmed(n.forest().occupancy());
    out.record(a.lookback_len() == 4, || format!("depth 59 lookback {}", a.lookback_len()));
    out.record(occ(&a) == vec![Some(5), Some(10), None, Some(40)], || {
        format!("depth 59 slots {:?}", occ(&a))
    });
    out.record(b.lookback_len() == 5, || format!("depth 60 lookback {}", b.lookback_len()));
    out.record(b.forest().shares_slots_with(a.forest()), || "depth 60 copied its forest".into());
    out.record(c.lookback_len() == 1, || format!("depth 61 lookback {}", c.lookback_len()));
    out.record(occ(&c) == vec![None, None, Some(20), Some(40)], || {
        format!("depth 61 slots {:?}", occ(&c))
    });
    let reused = match (b.forest().slot(3), c.forest().slot(3)) {
        (Some(x), Some(y)) => Arc::ptr_eq(x, y),
        _ => false,
    };
    out.record(reused, || "40-point tree was rebuilt instead of shared".into());
    out.record(occ(&a) == vec![Some(5), Some(10), None, Some(40)], || {
        "predecessor forest changed".into()
    });
    timed(out, started)
}

/// Branches `siblings` chains off a trunk and checks that answers recorded
/// on trunk versions beforehand are unchanged.
pub fn sibling_persistence(siblings: usize, trunk_len: usize, seed: u64) -> CheckOutcome {
    let started = Instant::now();
    let mut out = CheckOutcome::new("persistence under sibling branching");
    let mut rng = StdRng::seed_from_u64(seed);
    let mut arena = VersionArena::new(lattice_point(&mut rng), 5);
    let mut trunk = vec![0];
    for _ in 1..trunk_len {
        let p = lattice_point(&mut rng);
        let id = arena.insert(*trunk.last().unwrap(), p);
        trunk.push(id);
    }
    let probes: Vec<([f64; 2], f64)> = (0..8)
        .map(|_| (lattice_point(&mut rng), rng.gen_range(1..20) as f64 * 0.5))
        .collect();
    let recorded: Vec<Vec<u32>> = trunk
        .iter()
        .flat_map(|&v| probes.iter().map(move |&(c, r)| (v, c, r)))
        .map(|(v, c, r)| arena.query(v, c, r))
        .collect();

    for _ in 0..siblings {
        let mut at = trunk[rng.gen_range(0..trunk.len())];
        for _ in 0..rng.gen_range(1..50) {
            let p = lattice_point(&mut rng);
            at = arena.insert(at, p);
        }
    }

    let mut k = 0;
    for &v in &trunk {
        for &(c, r) in &probes {
            let now = arena.query(v, c, r);
            let oracle = arena.scan(v, c, r);
            out.record(now == recorded[k] && now == oracle, || {
                format!("trunk depth {} changed answer", arena.nodes[v].depth())
            });
            k += 1;
        }
    }
    timed(out, started)
}

/// Points handed to kd-tree builds along one chain, checked against
/// `L * (floor(log2(max(L / M, 1))) + 2)` at every prefix length `L`.
pub fn rebuild_amortization(max_len: usize, ms: &[usize]) -> CheckOutcome {
    let started = Instant::now();
    let mut out = CheckOutcome::new("rebuild amortization bound");
    for &m in ms {
        let mut node: FpnntNode<u32> = FpnntNode::new_root(PointLabel::new([0.0, 0.0], 0), FpnntConfig::new(m));
        let mut built = 0usize;
        for len in 1..=max_len {
            let levels = (len as f64 / m as f64).max(1.0).log2().floor() as usize;
            let bound = len * (levels + 2);
            out.record(built <= bound, || format!("M={m} L={len}: built {built} > bound {bound}"));
            let (next, b) = node.insert_counted(PointLabel::new([len as f64, 0.0], len as u32));
            built += b;
            node = next;
        }
    }
    timed(out, started)
}

fn random_grid(rng: &mut StdRng) -> WorkspaceGrid {
    let w = rng.gen_range(10..28);
    let h = rng.gen_range(10..28);
    let obstacle = rng.gen_range(0.0..0.3);
    let glass = rng.gen_range(0.0..0.15);
    let mut g = WorkspaceGrid::sealed(w, h);
    for row in 1..h as i32 - 1 {
        for col in 1..w as i32 - 1 {
            let roll: f64 = rng.gen();
            let s = if roll < obstacle {
                CellState::Obstacle
            } else if roll < obstacle + glass {
                CellState::Glass
            } else {
                CellState::Free
            };
            g.set(CellCoord::new(col, row), s);
        }
    }
    g
}

fn fits(grid: &WorkspaceGrid, q: Configuration, robot: &RobotSpec) -> bool {
    footprint(q, robot).iter().all(|c| grid.is_passable(c))
}

fn random_instance(rng: &mut StdRng, robot: &RobotSpec) -> ProblemInstance {
    let mut grid = random_grid(rng);
    let x = rng.gen_range(1..grid.width() as i32 - 2);
    let y = rng.gen_range(1..grid.height() as i32 - 2);
    let q0 = Configuration::new(x, y, Orientation::from_index(rng.gen_range(0..4)));
    for c in footprint(q0, robot).iter() {
        grid.set(c, CellState::Free);
    }
    let goal: RegionSet = footprint(q0, robot);
    ProblemInstance::new(grid, q0, goal, robot).expect("start cleared")
}

fn random_walk(rng: &mut StdRng, inst: &ProblemInstance, robot: &RobotSpec, tries: usize) -> Vec<Configuration> {
    let mut path = vec![inst.q0];
    for _ in 0..tries {
        let q = *path.last().unwrap();
        let next = successors(q)[rng.gen_range(0..6)];
        if fits(&inst.grid, next, robot) {
            path.push(next);
        }
    }
    path
}

fn run_index<I: PathIndex>(mut index: I, path: &[Configuration], inst: &ProblemInstance, robot: &RobotSpec) -> RegionSet {
    let mut handle = index.root(view_ball(path[0], robot).center, path[0]);
    for &q in &path[1..path.len() - 1] {
        handle = index.insert(&handle, view_ball(q, robot).center, q);
    }
    let n = path.len();
    find_vis_viol(&index, &handle, path[n - 2], path[n - 1], robot, &inst.grid, &inst.v0).expect("edge is collision-free")
}

/// The last edge of a random walk in a random grid, filtered through each
/// path index, against `S \ (v0 ∪ V(q_1) ∪ ... ∪ V(q_i))` with no filter.
pub fn filter_lossless(edges: usize, seed: u64) -> CheckOutcome {
    let started = Instant::now();
    let mut out = CheckOutcome::new("find_vis_viol == unfiltered union");
    let mut rng = StdRng::seed_from_u64(seed);
    let robot = RobotSpec::default();
    let mut nonempty = 0;
    while out.cases < edges {
        let inst = random_instance(&mut rng, &robot);
        let tries = rng.gen_range(1..80);
        let path = random_walk(&mut rng, &inst, &robot, tries);
        if path.len() < 2 {
            continue;
        }
        let n = path.len();
        let mut seen = inst.v0.clone();
        for &q in &path[..n - 1] {
            seen = seen.union(&visible_cells(&inst.grid, q, &robot).expect("in bounds"));
        }
        let want = swept_cells(path[n - 2], path[n - 1], &robot).expect("primitive").difference(&seen);
        if !want.is_empty() {
            nonempty += 1;
        }
        let m = [1, 2, 5, 32][rng.gen_range(0..4)];
        let brute = run_index(BruteForceLookback::new(), &path, &inst, &robot);
        let fast = run_index(FpnntIndex::new(FpnntConfig::new(m)), &path, &inst, &robot);
        out.record(brute == want && fast == want, || {
            format!(
                "path {path:?}: brute {} fpnnt {} oracle {} cells",
                brute.len(),
                fast.len(),
                want.len()
            )
        });
    }
    out.name = format!("{} ({nonempty} non-empty)", out.name);
    timed(out, started)
}

/// A solved benchmark instance kept for later checks.
pub struct Solved {
    pub label: String,
    pub instance: ProblemInstance,
    pub result: PathResult,
}

/// Runs both strategies on each instance and requires identical paths,
/// violation totals and expansion counts.
pub fn strategy_equivalence(cases: &[(DomainKind, usize)], c_viol: f64) -> (CheckOutcome, Vec<Solved>) {
    let started = Instant::now();
    let mut out = CheckOutcome::new(format!("baseline == fpnnt (c_viol={c_viol})"));
    let robot = RobotSpec::default();
    let mut solved = Vec::new();
    for &(kind, size) in cases {
        let label = format!("{}({size})", kind.name());
        let instance = match generate(&DomainSpec::new(kind, size), &robot) {
            Ok(i) => i,
            Err(e) => {
                out.record(false, || format!("{label}: {e}"));
                continue;
            }
        };
        let run = |s: Strategy| {
            let mut cfg = PlannerConfig::with_strategy(s);
            cfg.c_viol = c_viol;
            relaxed_vamp_search(&instance, &robot, &cfg)
        };
        match (run(Strategy::Baseline), run(Strategy::Fpnnt)) {
            (Ok(a), Ok(b)) => {
                let same = a.path == b.path
                    && a.total_violation_cells == b.total_violation_cells
                    && a.stats.nodes_expanded == b.stats.nodes_expanded;
                out.record(same, || {
                    format!(
                        "{label}: steps {} vs {}, violations {} vs {}, expanded {} vs {}",
                        a.steps, b.steps, a.total_violation_cells, b.total_violation_cells, a.stats.nodes_expanded, b.stats.nodes_expanded
                    )
                });
                solved.push(Solved {
                    label,
                    instance,
                    result: b,
                });
            }
            (a, b) => out.record(false, || format!("{label}: {:?} / {:?}", a.err(), b.err())),
        }
    }
    (timed(out, started), solved)
}

/// `total_violation_cells >= |violation_of_path(path)|` on every solved
/// instance.
pub fn over_approximation(solved: &[Solved]) -> CheckOutcome {
    let started = Instant::now();
    let mut out = CheckOutcome::new("reported violations >= union region");
    let robot = RobotSpec::default();
    for s in solved {
        match violation_of_path(&s.result.path, &s.instance, &robot) {
            Ok(union) => {
                let total = s.result.total_violation_cells;
                out.record(total >= union.len() as u64, || {
                    format!("{}: total {total} < union {}", s.label, union.len())
                });
            }
            Err(e) => out.record(false, || format!("{}: {e}", s.label)),
        }
    }
    timed(out, started)
}

/// The suites run by `vamp-bench selftest`, at a size that finishes in a few
/// seconds.
pub fn selftest_suite() -> Vec<CheckOutcome> {
    let mut results = vec![
        fpnnt_schedules(200, 300, 1),
        forest_shape(&[1, 2, 3, 5, 32], 20),
        carry_example(),
        sibling_persistence(50, 200, 2),
        rebuild_amortization(4096, &[1, 32]),
        filter_lossless(300, 3),
    ];
    let cases = [
        (DomainKind::OneHallway, 200),
        (DomainKind::HorseshoeHallway, 120),
        (DomainKind::GlassHallway, 100),
    ];
    let (eq, mut solved) = strategy_equivalence(&cases, 100.0);
    results.push(eq);
    let (eq_free, more) = strategy_equivalence(&cases[1..2], 0.0);
    results.push(eq_free);
    solved.extend(more);
    results.push(over_approximation(&solved));
    results
}
