//! Fully persistent nearest-neighbor trees and their use in relaxed
//! visibility-aware motion planning on a grid lattice.
//!
//! * [`kdtree`]: static kd-tree with exact ball queries.
//! * [`fpnnt`]: persistent versions over a logarithmic-method forest of kd-trees.
//! * [`grid_world`], [`robot_geometry`]: workspaces, domains, swept volumes, viewcones.
//! * [`vamp_planner`]: the relaxed search, with brute-force and FPNNT path indices.

pub mod error;
pub mod fpnnt;
pub mod grid_world;
pub mod kdtree;
pub mod region;
pub mod robot_geometry;
pub mod vamp_planner;

pub use error::{Error, Result};
pub use fpnnt::{logical_size, FpnntConfig, FpnntNode, MemoryLedger};
pub use grid_world::{generate, load_ascii, save_ascii, CellState, DomainKind, DomainSpec, ProblemInstance, WorkspaceGrid};
pub use kdtree::{KdTree, PointLabel};
pub use region::{CellCoord, RegionSet};
pub use robot_geometry::{Ball, Configuration, Orientation, RobotSpec};
pub use vamp_planner::{relaxed_vamp_search, PathResult, PlannerConfig, SearchStats, Strategy};
