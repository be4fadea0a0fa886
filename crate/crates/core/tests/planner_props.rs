use std::collections::{HashSet, VecDeque};

use proptest::prelude::*;
use vamp_core::robot_geometry::{footprint, motion_between, successors, swept_cells, view_ball, visible_cells};
use vamp_core::vamp_planner::{check_feasible, find_vis_viol, violation_of_path, BruteForceLookback, FpnntIndex, PathIndex};
use vamp_core::{
    relaxed_vamp_search, CellCoord, CellState, Configuration, Error, FpnntConfig, Orientation, PlannerConfig, ProblemInstance, RegionSet,
    RobotSpec, Strategy as Method, WorkspaceGrid,
};

fn random_grid(w: usize, h: usize, cells: &[u8], density: u8) -> WorkspaceGrid {
    let mut g = WorkspaceGrid::sealed(w, h);
    for row in 1..h as i32 - 1 {
        for col in 1..w as i32 - 1 {
            let v = cells[(row as usize * w + col as usize) % cells.len()] % 100;
            let s = if v < density {
                CellState::Obstacle
            } else if v < density + density / 2 {
                CellState::Glass
            } else {
                CellState::Free
            };
            g.set(CellCoord::new(col, row), s);
        }
    }
    g
}

fn fits(grid: &WorkspaceGrid, q: Configuration, spec: &RobotSpec) -> bool {
    footprint(q, spec).iter().all(|c| grid.is_passable(c))
}

/// Clears a footprint-sized patch so the start is always legal.
fn instance(mut grid: WorkspaceGrid, q0: Configuration, goal: CellCoord, spec: &RobotSpec) -> ProblemInstance {
    for c in footprint(q0, spec).iter() {
        grid.set(c, CellState::Free);
    }
    grid.set(goal, CellState::Free);
    let goal: RegionSet = [goal].into_iter().collect();
    ProblemInstance::new(grid, q0, goal, spec).unwrap()
}

fn random_walk(inst: &ProblemInstance, spec: &RobotSpec, choices: &[u8]) -> Vec<Configuration> {
    let mut path = vec![inst.q0];
    for &k in choices {
        let q = *path.last().unwrap();
        let next = successors(q)[k as usize % 6];
        if fits(&inst.grid, next, spec) {
            path.push(next);
        }
    }
    path
}

/// Unfiltered union of everything seen up to and including `path[i]`.
fn seen_through(path: &[Configuration], i: usize, inst: &ProblemInstance, spec: &RobotSpec) -> RegionSet {
    let mut seen = inst.v0.clone();
    for &q in &path[..=i] {
        seen = seen.union(&visible_cells(&inst.grid, q, spec).unwrap());
    }
    seen
}

fn check_index<I: PathIndex>(mut index: I, path: &[Configuration], inst: &ProblemInstance, spec: &RobotSpec) -> Result<(), TestCaseError> {
    let mut handle = index.root(view_ball(path[0], spec).center, path[0]);
    for i in 0..path.len() - 1 {
        let got = find_vis_viol(&index, &handle, path[i], path[i + 1], spec, &inst.grid, &inst.v0).unwrap();
        let want = swept_cells(path[i], path[i + 1], spec)
            .unwrap()
            .difference(&seen_through(path, i, inst, spec));
        prop_assert_eq!(got, want, "edge {} of {:?}", i, path);
        handle = index.insert(&handle, view_ball(path[i + 1], spec).center, path[i + 1]);
    }
    Ok(())
}

fn reachable(inst: &ProblemInstance, spec: &RobotSpec) -> bool {
    let mut seen = HashSet::from([inst.q0]);
    let mut queue = VecDeque::from([inst.q0]);
    while let Some(q) = queue.pop_front() {
        if inst.is_goal(q, spec) {
            return true;
        }
        for next in successors(q) {
            if fits(&inst.grid, next, spec) && seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    false
}

fn setup(cells: &[u8], density: u8, start: (i32, i32, u8), goal: (i32, i32), spec: &RobotSpec) -> ProblemInstance {
    let grid = random_grid(16, 16, cells, density);
    let q0 = Configuration::new(start.0, start.1, Orientation::from_index(start.2));
    instance(grid, q0, CellCoord::new(goal.0, goal.1), spec)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn filtered_violation_matches_full_union(
        cells in prop::collection::vec(any::<u8>(), 64..256),
        density in 0u8..30,
        start in (1i32..13, 1i32..13, 0u8..4),
        walk in prop::collection::vec(any::<u8>(), 1..40),
        m in prop::sample::select(vec![1usize, 2, 5, 32]),
    ) {
        let spec = RobotSpec::default();
        let inst = setup(&cells, density, start, (1, 1), &spec);
        let path = random_walk(&inst, &spec, &walk);
        prop_assume!(path.len() >= 2);
        check_index(BruteForceLookback::new(), &path, &inst, &spec)?;
        check_index(FpnntIndex::new(FpnntConfig::new(m)), &path, &inst, &spec)?;
    }

    #[test]
    fn feasibility_matches_edgewise_subset_check(
        cells in prop::collection::vec(any::<u8>(), 64..256),
        density in 0u8..30,
        start in (1i32..13, 1i32..13, 0u8..4),
        walk in prop::collection::vec(any::<u8>(), 0..30),
    ) {
        let spec = RobotSpec::default();
        let inst = setup(&cells, density, start, (1, 1), &spec);
        let path = random_walk(&inst, &spec, &walk);
        let want = (0..path.len().saturating_sub(1)).all(|i| {
            swept_cells(path[i], path[i + 1], &spec).unwrap().is_subset(&seen_through(&path, i, &inst, &spec))
        });
        prop_assert_eq!(check_feasible(&path, &inst, &spec), want);
        prop_assert_eq!(violation_of_path(&path, &inst, &spec).unwrap().is_empty(), want);
    }

    #[test]
    fn relaxed_search_is_consistent(
        cells in prop::collection::vec(any::<u8>(), 64..256),
        density in 0u8..35,
        start in (1i32..13, 1i32..13, 0u8..4),
        goal in (1i32..15, 1i32..15),
        c_viol in prop::sample::select(vec![0.0, 1.0, 100.0]),
        m in prop::sample::select(vec![1usize, 3, 32]),
    ) {
        let spec = RobotSpec::default();
        let inst = setup(&cells, density, start, goal, &spec);
        let mut base = PlannerConfig::with_strategy(Method::Baseline);
        base.c_viol = c_viol;
        let mut fast = PlannerConfig::with_strategy(Method::Fpnnt);
        fast.c_viol = c_viol;
        fast.m = m;

        let a = relaxed_vamp_search(&inst, &spec, &base);
        let b = relaxed_vamp_search(&inst, &spec, &fast);
        let (a, b) = match (a, b) {
            (Err(Error::NoPath), Err(Error::NoPath)) => {
                prop_assert!(!reachable(&inst, &spec));
                return Ok(());
            }
            (Ok(a), Ok(b)) => (a, b),
            (a, b) => return Err(TestCaseError::fail(format!("strategies disagree: {a:?} vs {b:?}"))),
        };
        prop_assert_eq!(&a.path, &b.path);
        prop_assert_eq!(a.total_violation_cells, b.total_violation_cells);
        prop_assert_eq!(a.stats.nodes_expanded, b.stats.nodes_expanded);

        let path = &a.path;
        prop_assert_eq!(path[0], inst.q0);
        prop_assert!(inst.is_goal(*path.last().unwrap(), &spec));
        prop_assert_eq!(a.steps as usize, path.len() - 1);
        for w in path.windows(2) {
            prop_assert!(motion_between(w[0], w[1]).is_some());
            prop_assert!(fits(&inst.grid, w[1], &spec));
        }

        // The reported total is the sum of per-edge increments along the
        // returned path, which over-counts the union.
        let mut running = 0u64;
        for i in 0..path.len() - 1 {
            let inc = swept_cells(path[i], path[i + 1], &spec).unwrap().difference(&seen_through(path, i, &inst, &spec));
            running += inc.len() as u64;
        }
        prop_assert_eq!(running, a.total_violation_cells);
        let union = violation_of_path(path, &inst, &spec).unwrap();
        prop_assert!(union.len() as u64 <= a.total_violation_cells);
        prop_assert_eq!(union.is_empty(), a.total_violation_cells == 0);

        let again = relaxed_vamp_search(&inst, &spec, &fast).unwrap();
        prop_assert_eq!(again.path, b.path);
        prop_assert_eq!(again.stats.nodes_expanded, b.stats.nodes_expanded);
    }
}
