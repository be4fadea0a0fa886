//! Lattice configurations, swept volumes, occlusion-aware viewcones and the
//! bounding balls used to filter viewcones against a swept region.
//!
//! All workspace geometry lives on the unit grid: cell `(col, row)` covers
//! `[col, col + 1] x [row, row + 1]`, and row 0 is the top of the map.
//! Internally, visibility works in doubled integer coordinates so that every
//! cell center and footprint center is an exact lattice point.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid_world::{CellState, WorkspaceGrid};
use crate::region::{CellCoord, RegionSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    N = 0,
    E = 1,
    S = 2,
    W = 3,
}

impl Orientation {
    pub const ALL: [Orientation; 4] = [Orientation::N, Orientation::E, Orientation::S, Orientation::W];

    pub fn from_index(i: u8) -> Orientation {
        Self::ALL[(i % 4) as usize]
    }

    pub fn index(self) -> u8 {
        self as u8
    }

    /// Clockwise on screen: N -> E -> S -> W -> N.
    pub fn turn_cw(self) -> Orientation {
        Self::from_index(self.index() + 1)
    }

    pub fn turn_ccw(self) -> Orientation {
        Self::from_index(self.index() + 3)
    }

    /// Unit facing vector in `(col, row)` coordinates. North points to row 0.
    pub fn facing(self) -> (i32, i32) {
        match self {
            Orientation::N => (0, -1),
            Orientation::E => (1, 0),
            Orientation::S => (0, 1),
            Orientation::W => (-1, 0),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Orientation::N => 'N',
            Orientation::E => 'E',
            Orientation::S => 'S',
            Orientation::W => 'W',
        }
    }

    pub fn from_char(c: char) -> Option<Orientation> {
        match c {
            'N' => Some(Orientation::N),
            'E' => Some(Orientation::E),
            'S' => Some(Orientation::S),
            'W' => Some(Orientation::W),
            _ => None,
        }
    }
}

/// A lattice pose: the robot's reference cell plus its heading.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub x: i32,
    pub y: i32,
    pub orient: Orientation,
}

impl Configuration {
    pub const fn new(x: i32, y: i32, orient: Orientation) -> Self {
        Configuration { x, y, orient }
    }

    pub fn cell(self) -> CellCoord {
        CellCoord::new(self.x, self.y)
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.orient.as_char())
    }
}

/// The six lattice actions, in the fixed order used for tie-breaking:
/// `x+, x-, y+, y-, θ+, θ-`.
pub fn successors(q: Configuration) -> [Configuration; 6] {
    let Configuration { x, y, orient } = q;
    [
        Configuration::new(x + 1, y, orient),
        Configuration::new(x - 1, y, orient),
        Configuration::new(x, y + 1, orient),
        Configuration::new(x, y - 1, orient),
        Configuration::new(x, y, orient.turn_cw()),
        Configuration::new(x, y, orient.turn_ccw()),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Motion {
    Stay,
    Translate(i32, i32),
    Rotate,
}

/// Classifies `a -> b` as a lattice primitive, or `None` if it is not one.
pub fn motion_between(a: Configuration, b: Configuration) -> Option<Motion> {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    if a.orient == b.orient {
        match (dx, dy) {
            (0, 0) => Some(Motion::Stay),
            (1 | -1, 0) | (0, 1 | -1) => Some(Motion::Translate(dx, dy)),
            _ => None,
        }
    } else if dx == 0 && dy == 0 && (b.orient == a.orient.turn_cw() || b.orient == a.orient.turn_ccw()) {
        Some(Motion::Rotate)
    } else {
        None
    }
}

/// A closed ball `{p : dist(p, center) <= radius}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ball {
    pub center: [f64; 2],
    pub radius: f64,
}

impl Ball {
    pub fn contains(&self, p: [f64; 2]) -> bool {
        dist(self.center, p) <= self.radius
    }
}

pub fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    dist_sq(a, b).sqrt()
}

pub fn dist_sq(a: [f64; 2], b: [f64; 2]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    dx * dx + dy * dy
}

/// Robot shape and sensor parameters, with the viewcone templates derived
/// from them.
#[derive(Clone)]
pub struct RobotSpec {
    pub footprint_side: u32,
    pub view_range: u32,
    pub view_halfangle_deg: f64,
    /// Radius of a ball around [`view_ball`]'s center containing every
    /// viewcone cell center, for every orientation.
    pub r_vis: f64,
    templates: Arc<[ViewTemplate; 4]>,
}

impl fmt::Debug for RobotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RobotSpec")
            .field("footprint_side", &self.footprint_side)
            .field("view_range", &self.view_range)
            .field("view_halfangle_deg", &self.view_halfangle_deg)
            .field("r_vis", &self.r_vis)
            .finish()
    }
}

impl PartialEq for RobotSpec {
    fn eq(&self, other: &Self) -> bool {
        self.footprint_side == other.footprint_side
            && self.view_range == other.view_range
            && self.view_halfangle_deg == other.view_halfangle_deg
    }
}

impl Default for RobotSpec {
    fn default() -> Self {
        RobotSpec::new(2, 3, 45.0)
    }
}

impl RobotSpec {
    /// Builds the per-orientation viewcone templates and computes `r_vis` by
    /// enumerating every cone cell on an empty grid.
    pub fn new(footprint_side: u32, view_range: u32, view_halfangle_deg: f64) -> Self {
        assert!(footprint_side >= 1, "footprint side must be at least one cell");
        assert!(
            (0.0..=180.0).contains(&view_halfangle_deg),
            "view half-angle must lie in [0, 180] degrees"
        );
        let templates: [ViewTemplate; 4] = Orientation::ALL.map(|o| ViewTemplate::build(footprint_side, view_range, view_halfangle_deg, o));

        let mut r_vis_sq: f64 = 0.0;
        for o in Orientation::ALL {
            let probe = Configuration::new(0, 0, o);
            let center = view_center(probe, footprint_side, view_range);
            for cell in &templates[o as usize].cells {
                let c = CellCoord::new(cell.offset.0, cell.offset.1).center();
                r_vis_sq = r_vis_sq.max(dist_sq(center, c));
            }
        }

        RobotSpec {
            footprint_side,
            view_range,
            view_halfangle_deg,
            r_vis: r_vis_sq.sqrt(),
            templates: Arc::new(templates),
        }
    }

    /// Viewcone cell offsets (relative to the reference cell) for a heading,
    /// before occlusion.
    pub fn cone_offsets(&self, orient: Orientation) -> impl Iterator<Item = (i32, i32)> + '_ {
        self.templates[orient as usize].cells.iter().map(|c| c.offset)
    }
}

/// The sensor origin: the center of the footprint.
pub fn sensor_origin(q: Configuration, spec: &RobotSpec) -> [f64; 2] {
    let h = spec.footprint_side as f64 / 2.0;
    [q.x as f64 + h, q.y as f64 + h]
}

fn view_center(q: Configuration, side: u32, range: u32) -> [f64; 2] {
    let h = side as f64 / 2.0;
    let (fx, fy) = q.orient.facing();
    let reach = range as f64 / 2.0;
    [q.x as f64 + h + reach * fx as f64, q.y as f64 + h + reach * fy as f64]
}

pub fn footprint(q: Configuration, spec: &RobotSpec) -> RegionSet {
    footprint_cells(q, spec).collect()
}

pub(crate) fn footprint_cells(q: Configuration, spec: &RobotSpec) -> impl Iterator<Item = CellCoord> {
    let s = spec.footprint_side as i32;
    (0..s).flat_map(move |dy| (0..s).map(move |dx| CellCoord::new(q.x + dx, q.y + dy)))
}

/// Cells swept while moving `q_a -> q_b`. Rotations and the identity motion
/// sweep only the starting footprint since the footprint does not depend on
/// heading.
pub fn swept_cells(q_a: Configuration, q_b: Configuration, spec: &RobotSpec) -> Result<RegionSet> {
    match motion_between(q_a, q_b) {
        Some(Motion::Translate(..)) => Ok(footprint_cells(q_a, spec).chain(footprint_cells(q_b, spec)).collect()),
        Some(Motion::Stay | Motion::Rotate) => Ok(footprint(q_a, spec)),
        None => Err(Error::NotAPrimitive { from: q_a, to: q_b }),
    }
}

/// The viewcone bounding ball: centered halfway along the facing ray from the
/// sensor origin, with radius `r_vis`.
pub fn view_ball(q: Configuration, spec: &RobotSpec) -> Ball {
    Ball {
        center: view_center(q, spec.footprint_side, spec.view_range),
        radius: spec.r_vis,
    }
}

/// The swept-volume bounding ball: centered between the two footprint
/// centers, just large enough to cover every corner of every swept cell.
pub fn swept_ball(q_a: Configuration, q_b: Configuration, spec: &RobotSpec) -> Result<Ball> {
    let swept = swept_cells(q_a, q_b, spec)?;
    let a = sensor_origin(q_a, spec);
    let b = sensor_origin(q_b, spec);
    let center = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
    let mut r_sq: f64 = 0.0;
    for c in &swept {
        for (dx, dy) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let corner = [(c.col + dx) as f64, (c.row + dy) as f64];
            r_sq = r_sq.max(dist_sq(center, corner));
        }
    }
    Ok(Ball {
        center,
        radius: r_sq.sqrt(),
    })
}

/// Cells visible from `q`: inside the cone (range `view_range + 0.5` from the
/// sensor origin, within the half-angle of the heading) and not hidden behind
/// an obstacle. A cell is hidden when the segment from the sensor origin to
/// its center touches any other obstacle cell, corners included. Glass never
/// hides anything.
pub fn visible_cells(grid: &WorkspaceGrid, q: Configuration, spec: &RobotSpec) -> Result<RegionSet> {
    if !footprint_cells(q, spec).all(|c| grid.in_bounds(c)) {
        return Err(Error::OutOfBounds(q));
    }
    let template = &spec.templates[q.orient as usize];
    let mut out = Vec::with_capacity(template.cells.len());
    for i in 0..template.cells.len() {
        let cell = template.cells[i].offset;
        let c = CellCoord::new(q.x + cell.0, q.y + cell.1);
        if grid.in_bounds(c) && template.unoccluded(grid, q, i) {
            out.push(c);
        }
    }
    Ok(out.into_iter().collect())
}

/// Point query equivalent to `visible_cells(grid, q, spec).contains(cell)`
/// without materializing the set.
pub fn is_visible(grid: &WorkspaceGrid, q: Configuration, cell: CellCoord, spec: &RobotSpec) -> bool {
    if !grid.in_bounds(cell) {
        return false;
    }
    let template = &spec.templates[q.orient as usize];
    match template.index_of(cell.col - q.x, cell.row - q.y) {
        Some(i) => template.unoccluded(grid, q, i),
        None => false,
    }
}

#[derive(Clone, Debug)]
struct TemplateCell {
    offset: (i32, i32),
    blockers: std::ops::Range<usize>,
}

/// Precomputed viewcone for one heading, relative to the reference cell.
#[derive(Clone, Debug)]
struct ViewTemplate {
    cells: Vec<TemplateCell>,
    blockers: Vec<(i32, i32)>,
    lookup_min: (i32, i32),
    lookup_dims: (i32, i32),
    lookup: Vec<u32>,
}

const NO_CELL: u32 = u32::MAX;

impl ViewTemplate {
    fn build(side: u32, range: u32, halfangle_deg: f64, orient: Orientation) -> ViewTemplate {
        let s = side as i64;
        let origin = (s, s);
        let (fx, fy) = orient.facing();
        let (fx, fy) = (fx as i64, fy as i64);
        let reach_sq = (2 * range as i64 + 1).pow(2);
        let cos = halfangle_deg.to_radians().cos();
        // Doubled coordinates keep everything integral; the relative slack
        // only absorbs rounding in cos² at exact boundary angles like 45°.
        let cos_sq = cos * cos * (1.0 - 1e-12);

        let in_cone = |d: (i64, i64)| {
            let len_sq = d.0 * d.0 + d.1 * d.1;
            if len_sq > reach_sq {
                return false;
            }
            if len_sq == 0 {
                return true;
            }
            let dot = d.0 * fx + d.1 * fy;
            let lhs = (dot * dot) as f64;
            let rhs = len_sq as f64 * cos_sq;
            if cos >= 0.0 {
                dot >= 0 && lhs >= rhs
            } else {
                dot >= 0 || lhs <= rhs
            }
        };

        let span = range as i32 + side as i32 + 1;
        let mut cells = Vec::new();
        let mut blockers = Vec::new();
        for dy in -span..=span {
            for dx in -span..=span {
                let target = (2 * dx as i64 + 1, 2 * dy as i64 + 1);
                let d = (target.0 - origin.0, target.1 - origin.1);
                if !in_cone(d) {
                    continue;
                }
                let start = blockers.len();
                let (lo_x, hi_x) = (origin.0.min(target.0), origin.0.max(target.0));
                let (lo_y, hi_y) = (origin.1.min(target.1), origin.1.max(target.1));
                // Cells whose closed squares can reach the segment's bounding box.
                for by in (lo_y - 2).div_euclid(2)..=hi_y.div_euclid(2) {
                    for bx in (lo_x - 2).div_euclid(2)..=hi_x.div_euclid(2) {
                        if (bx, by) == (dx as i64, dy as i64) {
                            continue;
                        }
                        if segment_touches_cell(origin, target, (bx, by)) {
                            blockers.push((bx as i32, by as i32));
                        }
                    }
                }
                cells.push(TemplateCell {
                    offset: (dx, dy),
                    blockers: start..blockers.len(),
                });
            }
        }

        let lookup_min = (-span, -span);
        let lookup_dims = (2 * span + 1, 2 * span + 1);
        let mut lookup = vec![NO_CELL; (lookup_dims.0 * lookup_dims.1) as usize];
        for (i, c) in cells.iter().enumerate() {
            let idx = (c.offset.1 - lookup_min.1) * lookup_dims.0 + (c.offset.0 - lookup_min.0);
            lookup[idx as usize] = i as u32;
        }

        ViewTemplate {
            cells,
            blockers,
            lookup_min,
            lookup_dims,
            lookup,
        }
    }

    fn index_of(&self, dx: i32, dy: i32) -> Option<usize> {
        let ix = dx - self.lookup_min.0;
        let iy = dy - self.lookup_min.1;
        if ix < 0 || iy < 0 || ix >= self.lookup_dims.0 || iy >= self.lookup_dims.1 {
            return None;
        }
        match self.lookup[(iy * self.lookup_dims.0 + ix) as usize] {
            NO_CELL => None,
            i => Some(i as usize),
        }
    }

    fn unoccluded(&self, grid: &WorkspaceGrid, q: Configuration, i: usize) -> bool {
        self.blockers[self.cells[i].blockers.clone()].iter().all(|&(bx, by)| {
            // Off-grid blockers count as walls: the grid is sealed.
            !matches!(grid.get(CellCoord::new(q.x + bx, q.y + by)), None | Some(CellState::Obstacle))
        })
    }
}

/// Exact closed segment / closed unit-cell intersection in doubled
/// coordinates (cell `(cx, cy)` spans `[2cx, 2cx + 2] x [2cy, 2cy + 2]`).
/// Separating-axis test over the two grid axes and the segment normal.
fn segment_touches_cell(p: (i64, i64), q: (i64, i64), cell: (i64, i64)) -> bool {
    let (x0, x1) = (2 * cell.0, 2 * cell.0 + 2);
    let (y0, y1) = (2 * cell.1, 2 * cell.1 + 2);
    if p.0.max(q.0) < x0 || p.0.min(q.0) > x1 || p.1.max(q.1) < y0 || p.1.min(q.1) > y1 {
        return false;
    }
    let d = (q.0 - p.0, q.1 - p.1);
    let (mut pos, mut neg) = (false, false);
    for (cx, cy) in [(x0, y0), (x1, y0), (x0, y1), (x1, y1)] {
        let cross = d.0 * (cy - p.1) - d.1 * (cx - p.0);
        if cross > 0 {
            pos = true;
        } else if cross < 0 {
            neg = true;
        } else {
            return true;
        }
    }
    pos && neg
}
