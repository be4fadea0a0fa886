use std::collections::{HashSet, VecDeque};

use vamp_core::robot_geometry::{footprint, successors};
use vamp_core::vamp_planner::violation_of_path;
use vamp_core::{
    generate, load_ascii, relaxed_vamp_search, save_ascii, CellState, DomainKind, DomainSpec, Error, PlannerConfig, ProblemInstance,
    RobotSpec, Strategy,
};

const ONE_HALLWAY_44: &str = include_str!("golden/one_hallway_44.txt");
const GLASS_HALLWAY_100: &str = include_str!("golden/glass_hallway_100.txt");

fn build(kind: DomainKind, size: usize) -> ProblemInstance {
    generate(&DomainSpec::new(kind, size), &RobotSpec::default()).unwrap()
}

/// Plain BFS over collision-free lattice moves, ignoring visibility.
fn goal_reachable(inst: &ProblemInstance, spec: &RobotSpec) -> bool {
    let mut seen = HashSet::from([inst.q0]);
    let mut queue = VecDeque::from([inst.q0]);
    while let Some(q) = queue.pop_front() {
        if inst.is_goal(q, spec) {
            return true;
        }
        for next in successors(q) {
            if footprint(next, spec).iter().all(|c| inst.grid.is_passable(c)) && seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    false
}

#[test]
fn golden_maps_are_byte_identical() {
    assert_eq!(save_ascii(&build(DomainKind::OneHallway, 44)), ONE_HALLWAY_44);
    assert_eq!(save_ascii(&build(DomainKind::GlassHallway, 100)), GLASS_HALLWAY_100);
}

#[test]
fn golden_maps_load_back() {
    let spec = RobotSpec::default();
    for (text, inst) in [
        (ONE_HALLWAY_44, build(DomainKind::OneHallway, 44)),
        (GLASS_HALLWAY_100, build(DomainKind::GlassHallway, 100)),
    ] {
        assert_eq!(load_ascii(text, &spec).unwrap(), inst);
    }
}

#[test]
fn every_domain_is_sealed_and_solvable_ignoring_visibility() {
    let spec = RobotSpec::default();
    for kind in [DomainKind::OneHallway, DomainKind::HorseshoeHallway, DomainKind::GlassHallway] {
        for size in [44, 100, 250, 1000] {
            if kind == DomainKind::GlassHallway && size > 250 {
                continue;
            }
            let inst = build(kind, size);
            assert!(inst.grid.is_boundary_sealed(), "{kind:?} {size}");
            assert!(footprint(inst.q0, &spec).is_subset(&inst.v0));
            assert!(goal_reachable(&inst, &spec), "{kind:?} {size}");
            let again = save_ascii(&build(kind, size));
            assert_eq!(save_ascii(&inst), again);
        }
    }
}

#[test]
fn one_hallway_is_at_least_size_tall() {
    let inst = build(DomainKind::OneHallway, 1000);
    assert!(inst.grid.height() >= 1000);
}

#[test]
fn glass_corridors_grow_with_size() {
    let count = |size: usize| {
        let inst = build(DomainKind::GlassHallway, size);
        (0..inst.grid.height() as i32)
            .filter(|&row| inst.grid.cells().any(|(c, s)| c.row == row && s == CellState::Glass))
            .count()
    };
    assert_eq!(count(100), 1);
    assert_eq!(count(300), 3);
}

#[test]
fn undersized_domains_are_rejected() {
    let spec = RobotSpec::default();
    let err = generate(&DomainSpec::new(DomainKind::OneHallway, 43), &spec).unwrap_err();
    assert!(matches!(err, Error::InvalidSpec(_)));
}

#[test]
fn horseshoe_strategies_agree() {
    let spec = RobotSpec::default();
    let inst = build(DomainKind::HorseshoeHallway, 120);
    for c_viol in [100.0, 0.0] {
        let run = |s: Strategy| {
            let mut cfg = PlannerConfig::with_strategy(s);
            cfg.c_viol = c_viol;
            relaxed_vamp_search(&inst, &spec, &cfg).unwrap()
        };
        let (a, b) = (run(Strategy::Baseline), run(Strategy::Fpnnt));
        assert_eq!(a.path, b.path);
        assert_eq!(a.total_violation_cells, b.total_violation_cells);
        assert_eq!(a.stats.nodes_expanded, b.stats.nodes_expanded);
        let union = violation_of_path(&a.path, &inst, &spec).unwrap();
        assert!(union.len() as u64 <= a.total_violation_cells);
        if c_viol == 0.0 {
            // Free violations: the search backs straight into the unseen leg.
            assert!(a.total_violation_cells > 0);
        } else {
            assert_eq!(a.total_violation_cells, 0);
        }
    }
}
