//! Discretized planar workspaces, the three benchmark domains, and the
//! `vamp-grid v1` text format.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::region::{CellCoord, RegionSet};
use crate::robot_geometry::{footprint, visible_cells, Configuration, Orientation, RobotSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellState {
    Free,
    /// Blocks motion and sight.
    Obstacle,
    /// Blocks motion only.
    Glass,
}

impl CellState {
    pub fn blocks_motion(self) -> bool {
        !matches!(self, CellState::Free)
    }

    pub fn blocks_sight(self) -> bool {
        matches!(self, CellState::Obstacle)
    }
}

/// Dense row-major occupancy grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkspaceGrid {
    width: usize,
    height: usize,
    states: Vec<CellState>,
}

impl WorkspaceGrid {
    pub fn filled(width: usize, height: usize, state: CellState) -> Self {
        WorkspaceGrid {
            width,
            height,
            states: vec![state; width * height],
        }
    }

    /// A free grid whose outermost ring is obstacle.
    pub fn sealed(width: usize, height: usize) -> Self {
        let mut grid = Self::filled(width, height, CellState::Free);
        for col in 0..width as i32 {
            grid.set(CellCoord::new(col, 0), CellState::Obstacle);
            grid.set(CellCoord::new(col, height as i32 - 1), CellState::Obstacle);
        }
        for row in 0..height as i32 {
            grid.set(CellCoord::new(0, row), CellState::Obstacle);
            grid.set(CellCoord::new(width as i32 - 1, row), CellState::Obstacle);
        }
        grid
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn in_bounds(&self, c: CellCoord) -> bool {
        c.col >= 0 && c.row >= 0 && (c.col as usize) < self.width && (c.row as usize) < self.height
    }

    #[inline]
    pub fn get(&self, c: CellCoord) -> Option<CellState> {
        if self.in_bounds(c) {
            Some(self.states[c.row as usize * self.width + c.col as usize])
        } else {
            None
        }
    }

    pub fn set(&mut self, c: CellCoord, state: CellState) {
        assert!(self.in_bounds(c), "{c:?} outside {}x{} grid", self.width, self.height);
        self.states[c.row as usize * self.width + c.col as usize] = state;
    }

    /// Sets every cell in the inclusive rectangle.
    pub fn fill_rect(&mut self, cols: std::ops::RangeInclusive<i32>, rows: std::ops::RangeInclusive<i32>, state: CellState) {
        for row in rows {
            for col in cols.clone() {
                self.set(CellCoord::new(col, row), state);
            }
        }
    }

    /// True when `c` is inside the grid and nothing there blocks motion.
    #[inline]
    pub fn is_passable(&self, c: CellCoord) -> bool {
        matches!(self.get(c), Some(CellState::Free))
    }

    pub fn cells(&self) -> impl Iterator<Item = (CellCoord, CellState)> + '_ {
        self.states
            .iter()
            .enumerate()
            .map(move |(i, &s)| (CellCoord::new((i % self.width) as i32, (i / self.width) as i32), s))
    }

    pub fn is_boundary_sealed(&self) -> bool {
        self.cells().all(|(c, s)| {
            let edge = c.col == 0 || c.row == 0 || c.col as usize == self.width - 1 || c.row as usize == self.height - 1;
            !edge || s == CellState::Obstacle
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DomainKind {
    OneHallway,
    HorseshoeHallway,
    GlassHallway,
}

impl DomainKind {
    pub fn name(self) -> &'static str {
        match self {
            DomainKind::OneHallway => "one-hallway",
            DomainKind::HorseshoeHallway => "horseshoe-hallway",
            DomainKind::GlassHallway => "glass-hallway",
        }
    }

    pub fn from_name(s: &str) -> Option<DomainKind> {
        match s {
            "one-hallway" => Some(DomainKind::OneHallway),
            "horseshoe-hallway" => Some(DomainKind::HorseshoeHallway),
            "glass-hallway" => Some(DomainKind::GlassHallway),
            _ => None,
        }
    }
}

pub const DEFAULT_HALLWAY_WIDTH: usize = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DomainSpec {
    pub kind: DomainKind,
    /// Vertical hallway length for the hallway kinds, side length for
    /// `GlassHallway`.
    pub size: usize,
    pub hallway_width: usize,
    /// Unused; generation is deterministic.
    pub seed: u64,
}

impl DomainSpec {
    pub fn new(kind: DomainKind, size: usize) -> Self {
        DomainSpec {
            kind,
            size,
            hallway_width: DEFAULT_HALLWAY_WIDTH,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.hallway_width == 0 {
            return Err(Error::InvalidSpec("hallway width must be positive".into()));
        }
        if self.size < 4 * self.hallway_width {
            return Err(Error::InvalidSpec(format!(
                "size {} is below 4 x hallway width ({})",
                self.size,
                4 * self.hallway_width
            )));
        }
        Ok(())
    }
}

/// A planning problem: workspace, start pose, goal cells, and the region
/// already seen before the robot moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemInstance {
    pub grid: WorkspaceGrid,
    pub q0: Configuration,
    /// Any configuration whose footprint touches one of these cells is a goal.
    pub goal_cells: RegionSet,
    pub v0: RegionSet,
}

impl ProblemInstance {
    /// Assembles an instance with `v0 = footprint(q0) ∪ visible_cells(q0)`.
    pub fn new(grid: WorkspaceGrid, q0: Configuration, goal_cells: RegionSet, robot: &RobotSpec) -> Result<Self> {
        let fp = footprint(q0, robot);
        if !fp.iter().all(|c| grid.is_passable(c)) {
            return Err(Error::InvalidSpec(format!("start {q0:?} is not collision-free")));
        }
        if let Some(bad) = goal_cells.iter().find(|&c| !grid.is_passable(c)) {
            return Err(Error::InvalidSpec(format!("goal cell {bad:?} is not free")));
        }
        let v0 = fp.union(&visible_cells(&grid, q0, robot)?);
        Ok(ProblemInstance { grid, q0, goal_cells, v0 })
    }

    pub fn is_goal(&self, q: Configuration, robot: &RobotSpec) -> bool {
        let s = robot.footprint_side as i32;
        (0..s).any(|dy| (0..s).any(|dx| self.goal_cells.contains(CellCoord::new(q.x + dx, q.y + dy))))
    }
}

/// Number of glass corridors in a `GlassHallway` of the given side length.
pub fn glass_corridor_count(size: usize) -> usize {
    (size / 100).max(1)
}

/// Builds one of the benchmark domains. Pure function of `spec` (and the
/// robot, which fixes the start footprint and the initial view).
pub fn generate(spec: &DomainSpec, robot: &RobotSpec) -> Result<ProblemInstance> {
    spec.validate()?;
    let w = spec.hallway_width as i32;
    let n = spec.size as i32;
    let fs = robot.footprint_side as i32;
    if fs > w {
        return Err(Error::InvalidSpec(format!("footprint {fs} wider than hallway {w}")));
    }
    let centered = 1 + (w - fs) / 2;

    let (grid, q0, goal): (WorkspaceGrid, Configuration, RegionSet) = match spec.kind {
        DomainKind::OneHallway => {
            // Straight vertical hallway; start at the bottom facing the goal row.
            let grid = WorkspaceGrid::sealed(w as usize + 2, n as usize + 2);
            let q0 = Configuration::new(centered, n + 1 - fs, Orientation::N);
            let goal = (1..=w).map(|col| CellCoord::new(col, 1)).collect();
            (grid, q0, goal)
        }
        DomainKind::HorseshoeHallway => {
            // Two legs of length n joined across the top; a pillar between them.
            let mut grid = WorkspaceGrid::sealed(3 * w as usize + 2, n as usize + 2);
            grid.fill_rect(w + 1..=2 * w, w + 1..=n, CellState::Obstacle);
            // Start at the top of the left leg, looking into the junction;
            // the goal is at the bottom of the same leg, behind the robot.
            let q0 = Configuration::new(centered, w + 1, Orientation::N);
            let goal = (1..=w).map(|col| CellCoord::new(col, n)).collect();
            (grid, q0, goal)
        }
        DomainKind::GlassHallway => {
            let mut grid = WorkspaceGrid::sealed(n as usize, n as usize);
            let bands = glass_corridor_count(spec.size) as i32;
            let band_height = w + 2;
            let gap = (n - 2 - bands * band_height) / (bands + 1);
            // Corridors run from the left wall and open into a free strip
            // along the right wall.
            let wall_end = n - 2 - w;
            let mut top_corridor = None;
            for j in 0..bands {
                let top = 1 + gap + j * (band_height + gap);
                let bottom = top + band_height - 1;
                grid.fill_rect(1..=wall_end, top..=top, CellState::Obstacle);
                // The wall facing the start region (below) is glass.
                grid.fill_rect(1..=wall_end, bottom..=bottom, CellState::Glass);
                if j == 0 {
                    top_corridor = Some(top + 1..=bottom - 1);
                }
            }
            let rows = top_corridor.expect("at least one corridor");
            let goal = rows.flat_map(|row| (1..=w).map(move |col| CellCoord::new(col, row))).collect();
            let q0 = Configuration::new(1, n - 1 - fs, Orientation::N);
            (grid, q0, goal)
        }
    };
    ProblemInstance::new(grid, q0, goal, robot)
}

const HEADER_MAGIC: &str = "vamp-grid v1";

/// Serializes an instance as `vamp-grid v1` text. `v0` is not stored; it is
/// re-derived from the start pose on load.
pub fn save_ascii(instance: &ProblemInstance) -> String {
    let grid = &instance.grid;
    let q0 = instance.q0;
    let mut out = String::with_capacity((grid.width() + 1) * (grid.height() + 1) + 32);
    let _ = writeln!(
        out,
        "{HEADER_MAGIC} {} {} {} {} {}",
        grid.width(),
        grid.height(),
        q0.x,
        q0.y,
        q0.orient.as_char()
    );
    for row in 0..grid.height() as i32 {
        for col in 0..grid.width() as i32 {
            let c = CellCoord::new(col, row);
            let ch = if c == q0.cell() {
                'S'
            } else if instance.goal_cells.contains(c) {
                'E'
            } else {
                match grid.get(c).expect("in bounds") {
                    CellState::Free => '.',
                    CellState::Obstacle => '#',
                    CellState::Glass => 'g',
                }
            };
            out.push(ch);
        }
        out.push('\n');
    }
    out
}

pub fn load_ascii(text: &str, robot: &RobotSpec) -> Result<ProblemInstance> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::parse(1, 1, "empty input"))?;
    let rest = header
        .strip_prefix(HEADER_MAGIC)
        .ok_or_else(|| Error::parse(1, 1, format!("expected header starting with `{HEADER_MAGIC}`")))?;
    let fields: Vec<&str> = rest.split_whitespace().collect();
    if fields.len() != 5 {
        return Err(Error::parse(
            1,
            HEADER_MAGIC.len() + 1,
            "expected `<width> <height> <x> <y> <orient>`",
        ));
    }
    let num = |i: usize, what: &str| -> Result<i64> {
        fields[i]
            .parse::<i64>()
            .map_err(|_| Error::parse(1, header.find(fields[i]).unwrap_or(0) + 1, format!("bad {what} `{}`", fields[i])))
    };
    let width = num(0, "width")?;
    let height = num(1, "height")?;
    if width <= 0 || height <= 0 {
        return Err(Error::parse(1, HEADER_MAGIC.len() + 1, "grid dimensions must be positive"));
    }
    let (x, y) = (num(2, "x")? as i32, num(3, "y")? as i32);
    let orient = fields[4]
        .chars()
        .next()
        .filter(|_| fields[4].len() == 1)
        .and_then(Orientation::from_char)
        .ok_or_else(|| Error::parse(1, header.rfind(fields[4]).unwrap_or(0) + 1, "orientation must be one of N, E, S, W"))?;

    let (width, height) = (width as usize, height as usize);
    let mut grid = WorkspaceGrid::filled(width, height, CellState::Free);
    let mut goal = Vec::new();
    let mut start = None;
    for row in 0..height {
        let line_no = row + 2;
        let line = lines
            .next()
            .ok_or_else(|| Error::parse(line_no, 1, format!("expected {height} grid rows, found {row}")))?;
        let chars: Vec<char> = line.chars().collect();
        if chars.len() != width {
            return Err(Error::parse(
                line_no,
                chars.len().min(width) + 1,
                format!("row has {} cells, expected {width}", chars.len()),
            ));
        }
        for (col, ch) in chars.into_iter().enumerate() {
            let c = CellCoord::new(col as i32, row as i32);
            let state = match ch {
                '.' => CellState::Free,
                '#' => CellState::Obstacle,
                'g' => CellState::Glass,
                'E' => {
                    goal.push(c);
                    CellState::Free
                }
                'S' => {
                    if start.replace(c).is_some() {
                        return Err(Error::parse(line_no, col + 1, "more than one start cell"));
                    }
                    CellState::Free
                }
                other => return Err(Error::parse(line_no, col + 1, format!("unknown cell `{other}`"))),
            };
            grid.set(c, state);
        }
    }
    if let Some((i, _)) = lines.enumerate().find(|(_, l)| !l.is_empty()) {
        return Err(Error::parse(height + 2 + i, 1, "trailing content after grid"));
    }
    let q0 = Configuration::new(x, y, orient);
    match start {
        Some(c) if c == q0.cell() => {}
        Some(c) => {
            return Err(Error::parse(
                c.row as usize + 2,
                c.col as usize + 1,
                format!("start cell disagrees with header position ({x}, {y})"),
            ))
        }
        None => return Err(Error::parse(1, 1, "no start cell `S` in grid")),
    }
    ProblemInstance::new(grid, q0, goal.into_iter().collect(), robot)
        .map_err(|e| Error::parse(y as usize + 2, x as usize + 1, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::VecDeque;

    /// Breadth-first search over reference cells, ignoring visibility.
    fn collision_free_reachable(inst: &ProblemInstance, robot: &RobotSpec) -> bool {
        let s = robot.footprint_side as i32;
        let grid = &inst.grid;
        let fits = |x: i32, y: i32| (0..s).all(|dy| (0..s).all(|dx| grid.is_passable(CellCoord::new(x + dx, y + dy))));
        let mut seen = vec![false; grid.width() * grid.height()];
        let mut queue = VecDeque::from([(inst.q0.x, inst.q0.y)]);
        seen[inst.q0.y as usize * grid.width() + inst.q0.x as usize] = true;
        while let Some((x, y)) = queue.pop_front() {
            if inst.is_goal(Configuration::new(x, y, Orientation::N), robot) {
                return true;
            }
            for (nx, ny) in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
                if fits(nx, ny) && !seen[ny as usize * grid.width() + nx as usize] {
                    seen[ny as usize * grid.width() + nx as usize] = true;
                    queue.push_back((nx, ny));
                }
            }
        }
        false
    }

    fn check_instance(spec: DomainSpec) -> ProblemInstance {
        let robot = RobotSpec::default();
        let inst = generate(&spec, &robot).unwrap();
        assert!(inst.grid.is_boundary_sealed(), "{spec:?}");
        assert!(collision_free_reachable(&inst, &robot), "{spec:?}");
        assert!(footprint(inst.q0, &robot).is_subset(&inst.v0));
        assert!(!inst.goal_cells.is_empty());
        inst
    }

    #[test]
    fn one_hallway_dimensions_and_reachability() {
        let inst = check_instance(DomainSpec::new(DomainKind::OneHallway, 1000));
        assert!(inst.grid.height() >= 1000);
        assert_eq!(inst.grid.width(), 13);
        check_instance(DomainSpec::new(DomainKind::OneHallway, 44));
    }

    #[test]
    fn horseshoe_reachable() {
        for size in [44, 120, 500] {
            let inst = check_instance(DomainSpec::new(DomainKind::HorseshoeHallway, size));
            assert_eq!(inst.grid.height(), size + 2);
        }
    }

    #[test]
    fn glass_corridor_counts() {
        for (size, corridors) in [(100, 1), (199, 1), (300, 3), (1500, 15)] {
            assert_eq!(glass_corridor_count(size), corridors);
        }
        for size in [44, 100, 300] {
            let inst = check_instance(DomainSpec::new(DomainKind::GlassHallway, size));
            let glass_rows: std::collections::BTreeSet<i32> = inst
                .grid
                .cells()
                .filter(|(_, s)| *s == CellState::Glass)
                .map(|(c, _)| c.row)
                .collect();
            assert_eq!(glass_rows.len(), glass_corridor_count(size));
        }
    }

    #[test]
    fn undersized_spec_rejected() {
        let spec = DomainSpec::new(DomainKind::OneHallway, 43);
        assert!(matches!(generate(&spec, &RobotSpec::default()), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn generation_is_deterministic() {
        let robot = RobotSpec::default();
        for kind in [DomainKind::OneHallway, DomainKind::HorseshoeHallway, DomainKind::GlassHallway] {
            let spec = DomainSpec::new(kind, 200);
            let a = save_ascii(&generate(&spec, &robot).unwrap());
            let b = save_ascii(&generate(&spec, &robot).unwrap());
            assert_eq!(a, b);
        }
    }

    #[test]
    fn ascii_round_trip() {
        let robot = RobotSpec::default();
        for kind in [DomainKind::OneHallway, DomainKind::HorseshoeHallway, DomainKind::GlassHallway] {
            let inst = generate(&DomainSpec::new(kind, 44), &robot).unwrap();
            let text = save_ascii(&inst);
            assert_eq!(load_ascii(&text, &robot).unwrap(), inst);
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let robot = RobotSpec::default();
        assert!(matches!(load_ascii("", &robot), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load_ascii("hello", &robot), Err(Error::Parse { line: 1, column: 1, .. })));

        let good = save_ascii(&generate(&DomainSpec::new(DomainKind::OneHallway, 44), &robot).unwrap());
        let bad = good.replacen("#.", "#x", 1);
        match load_ascii(&bad, &robot) {
            Err(Error::Parse { line, column, .. }) => {
                // Rows 0 and 1 are wall and goal; the first `#.` is grid row 2.
                assert_eq!(line, 4);
                assert_eq!(column, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        let truncated: String = good.lines().take(10).map(|l| format!("{l}\n")).collect();
        assert!(matches!(load_ascii(&truncated, &robot), Err(Error::Parse { line: 11, .. })));
    }
}
