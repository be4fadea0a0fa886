use std::io;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use vamp_core::{generate, relaxed_vamp_search, DomainKind, DomainSpec, Error, PlannerConfig, RobotSpec, Strategy};

use crate::BenchError;

pub const CSV_HEADER: &str =
    "domain,size,method,M,trial,total_ms,find_vis_viol_ms,insert_ms,nodes_expanded,steps,violation_cells,logical_memory";

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub kind: DomainKind,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub methods: Vec<Strategy>,
    pub m: usize,
    pub output_dir: PathBuf,
    pub emit_svg: bool,
}

impl BenchConfig {
    pub fn new(kind: DomainKind, sizes: Vec<usize>) -> Self {
        BenchConfig {
            kind,
            sizes,
            trials: 10,
            methods: vec![Strategy::Baseline, Strategy::Fpnnt],
            m: 32,
            output_dir: PathBuf::from("bench-out"),
            emit_svg: false,
        }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.sizes.is_empty() {
            return Err(BenchError::Config("no sizes given".into()));
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BenchError::Config("sizes must be strictly ascending".into()));
        }
        if self.trials == 0 {
            return Err(BenchError::Config("trials must be at least 1".into()));
        }
        if self.methods.is_empty() {
            return Err(BenchError::Config("no methods given".into()));
        }
        if self.m == 0 {
            return Err(BenchError::Config("M must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub domain: String,
    pub size: usize,
    pub method: String,
    #[serde(rename = "M")]
    pub m: usize,
    pub trial: usize,
    pub total_ms: f64,
    pub find_vis_viol_ms: f64,
    pub insert_ms: f64,
    pub nodes_expanded: u64,
    /// -1 when the search found no path.
    pub steps: i64,
    pub violation_cells: i64,
    pub logical_memory: u64,
}

impl BenchRow {
    /// The columns that must not depend on timing.
    pub fn outcome(&self) -> (u64, i64, i64) {
        (self.nodes_expanded, self.steps, self.violation_cells)
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Runs one search and turns it into a row. Instance generation happens
/// outside the timed region.
pub fn solve_row(
    domain: &str,
    size: usize,
    instance: &vamp_core::ProblemInstance,
    robot: &RobotSpec,
    planner: &PlannerConfig,
    trial: usize,
) -> Result<BenchRow, BenchError> {
    let started = Instant::now();
    let outcome = relaxed_vamp_search(instance, robot, planner);
    let wall = started.elapsed();
    let mut row = BenchRow {
        domain: domain.to_string(),
        size,
        method: planner.strategy.name().to_string(),
        m: planner.m,
        trial,
        total_ms: ms(wall),
        find_vis_viol_ms: 0.0,
        insert_ms: 0.0,
        nodes_expanded: 0,
        steps: -1,
        violation_cells: -1,
        logical_memory: 0,
    };
    match outcome {
        Ok(res) => {
            row.total_ms = ms(res.stats.total_time);
            row.find_vis_viol_ms = ms(res.stats.find_vis_viol_time);
            row.insert_ms = ms(res.stats.insert_time);
            row.nodes_expanded = res.stats.nodes_expanded;
            row.steps = res.steps as i64;
            row.violation_cells = res.total_violation_cells as i64;
            row.logical_memory = res.stats.logical_memory;
        }
        Err(Error::NoPath) => {}
        Err(e) => return Err(e.into()),
    }
    Ok(row)
}

/// One row per (size, method, trial), in that nesting order.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    run_bench_with(cfg, |_| {})
}

/// [`run_bench`] with a callback invoked after every finished row.
pub fn run_bench_with(cfg: &BenchConfig, mut progress: impl FnMut(&BenchRow)) -> Result<Vec<BenchRow>, BenchError> {
    cfg.validate()?;
    let robot = RobotSpec::default();
    let mut rows = Vec::with_capacity(cfg.sizes.len() * cfg.methods.len() * cfg.trials);
    for &size in &cfg.sizes {
        let instance = generate(&DomainSpec::new(cfg.kind, size), &robot)?;
        for &method in &cfg.methods {
            let mut planner = PlannerConfig::with_strategy(method);
            planner.m = cfg.m;
            for trial in 0..cfg.trials {
                let row = solve_row(cfg.kind.name(), size, &instance, &robot, &planner, trial)?;
                progress(&row);
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

pub fn write_csv_to<W: io::Write>(out: W, rows: &[BenchRow]) -> Result<(), BenchError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| BenchError::io("<csv>", e))?;
    Ok(())
}

pub fn write_csv(path: &Path, rows: &[BenchRow]) -> Result<(), BenchError> {
    let file = std::fs::File::create(path).map_err(|e| BenchError::io(path, e))?;
    write_csv_to(io::BufWriter::new(file), rows)
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<BenchRow>, BenchError> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != CSV_HEADER {
        return Err(BenchError::Config(format!("unexpected CSV header {:?}", header.join(","))));
    }
    r.deserialize().map(|row| row.map_err(BenchError::from)).collect()
}

/// Arithmetic mean of `f` over rows matching `(size, method)`.
pub fn mean_by(rows: &[BenchRow], size: usize, method: &str, f: impl Fn(&BenchRow) -> f64) -> Option<f64> {
    let picked: Vec<f64> = rows.iter().filter(|r| r.size == size && r.method == method).map(f).collect();
    if picked.is_empty() {
        None
    } else {
        Some(picked.iter().sum::<f64>() / picked.len() as f64)
    }
}
