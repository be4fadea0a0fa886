use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vamp_bench::checks::selftest_suite;
use vamp_bench::run::{mean_by, run_bench_with, solve_row};
use vamp_bench::{emit_plots, write_csv, BenchConfig, BenchError};
use vamp_core::{generate, load_ascii, save_ascii, DomainKind, DomainSpec, Error, PlannerConfig, RobotSpec, Strategy};

const EXIT_NO_PATH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_OTHER: u8 = 3;

#[derive(Parser)]
#[command(name = "vamp-bench", version, about = "Brute-force vs FPNNT visibility filtering benchmarks")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a benchmark domain and write it as an ASCII map.
    Gen {
        #[arg(long, value_parser = parse_kind)]
        kind: DomainKind,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = vamp_core::grid_world::DEFAULT_HALLWAY_WIDTH)]
        width: usize,
    },
    /// Run the relaxed planner on an ASCII map.
    Solve {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_parser = parse_method, default_value = "fpnnt")]
        method: Strategy,
        #[arg(long, default_value_t = 32)]
        m: usize,
        #[arg(long, default_value_t = 100.0)]
        c_viol: f64,
        /// Also write the result as a one-row CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Sweep domain sizes and methods, writing `<kind>.csv` under `--out`.
    Bench {
        #[arg(long, value_parser = parse_kind)]
        kind: DomainKind,
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, value_delimiter = ',', value_parser = parse_method, default_value = "baseline,fpnnt")]
        methods: Vec<Strategy>,
        #[arg(long, default_value_t = 32)]
        m: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also write time and memory charts as SVG.
        #[arg(long)]
        svg: bool,
    },
    /// Run the oracle-equivalence suites.
    Selftest,
}

fn parse_kind(s: &str) -> Result<DomainKind, String> {
    DomainKind::from_name(s).ok_or_else(|| format!("unknown domain {s:?} (one-hallway, horseshoe-hallway, glass-hallway)"))
}

fn parse_method(s: &str) -> Result<Strategy, String> {
    Strategy::from_name(s).ok_or_else(|| format!("unknown method {s:?} (baseline, fpnnt)"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Command::Gen { kind, size, out, width } => cmd_gen(kind, size, width, &out),
        Command::Solve {
            map,
            method,
            m,
            c_viol,
            csv,
        } => cmd_solve(&map, method, m, c_viol, csv.as_deref()),
        Command::Bench {
            kind,
            sizes,
            trials,
            methods,
            m,
            out,
            svg,
        } => {
            let cfg = BenchConfig {
                kind,
                sizes,
                trials,
                methods,
                m,
                output_dir: out,
                emit_svg: svg,
            };
            cmd_bench(&cfg)
        }
        Command::Selftest => return cmd_selftest(),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                BenchError::Config(_) | BenchError::Core(Error::InvalidSpec(_) | Error::Parse { .. }) => ExitCode::from(EXIT_USAGE),
                BenchError::Core(Error::NoPath) => ExitCode::from(EXIT_NO_PATH),
                _ => ExitCode::from(EXIT_OTHER),
            }
        }
    }
}

fn cmd_gen(kind: DomainKind, size: usize, width: usize, out: &Path) -> Result<ExitCode, BenchError> {
    let mut spec = DomainSpec::new(kind, size);
    spec.hallway_width = width;
    let instance = generate(&spec, &RobotSpec::default())?;
    std::fs::write(out, save_ascii(&instance)).map_err(|e| BenchError::Io {
        path: out.to_path_buf(),
        source: e,
    })?;
    println!("wrote {} ({}x{})", out.display(), instance.grid.width(), instance.grid.height());
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(map: &Path, method: Strategy, m: usize, c_viol: f64, csv: Option<&Path>) -> Result<ExitCode, BenchError> {
    if m == 0 {
        return Err(BenchError::Config("M must be at least 1".into()));
    }
    if c_viol.is_nan() || c_viol < 0.0 {
        return Err(BenchError::Config("c_viol must be non-negative".into()));
    }
    let text = std::fs::read_to_string(map).map_err(|e| BenchError::Io {
        path: map.to_path_buf(),
        source: e,
    })?;
    let robot = RobotSpec::default();
    let instance = load_ascii(&text, &robot)?;
    let mut planner = PlannerConfig::with_strategy(method);
    planner.m = m;
    planner.c_viol = c_viol;
    let domain = map.file_stem().and_then(|s| s.to_str()).unwrap_or("map");
    let row = solve_row(domain, instance.grid.height(), &instance, &robot, &planner, 0)?;
    if let Some(path) = csv {
        write_csv(path, std::slice::from_ref(&row))?;
    }
    if row.steps < 0 {
        println!("method={} no path", row.method);
        return Ok(ExitCode::from(EXIT_NO_PATH));
    }
    println!(
        "method={} M={} steps={} violation_cells={} nodes_expanded={} total_ms={:.3} find_vis_viol_ms={:.3} insert_ms={:.3} logical_memory={}",
        row.method,
        row.m,
        row.steps,
        row.violation_cells,
        row.nodes_expanded,
        row.total_ms,
        row.find_vis_viol_ms,
        row.insert_ms,
        row.logical_memory
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(cfg: &BenchConfig) -> Result<ExitCode, BenchError> {
    cfg.validate()?;
    std::fs::create_dir_all(&cfg.output_dir).map_err(|e| BenchError::Io {
        path: cfg.output_dir.clone(),
        source: e,
    })?;
    let rows = run_bench_with(cfg, |r| {
        eprintln!(
            "{} size={} method={} trial={} total_ms={:.2} find_vis_viol_ms={:.2}",
            r.domain, r.size, r.method, r.trial, r.total_ms, r.find_vis_viol_ms
        );
    })?;
    let csv_path = cfg.output_dir.join(format!("{}.csv", cfg.kind.name()));
    write_csv(&csv_path, &rows)?;
    println!("wrote {}", csv_path.display());

    println!(
        "{:>8} {:>10} {:>12} {:>18} {:>16}",
        "size", "method", "total_ms", "find_vis_viol_ms", "logical_memory"
    );
    for &size in &cfg.sizes {
        for method in &cfg.methods {
            let name = method.name();
            let total = mean_by(&rows, size, name, |r| r.total_ms).unwrap_or(f64::NAN);
            let fvv = mean_by(&rows, size, name, |r| r.find_vis_viol_ms).unwrap_or(f64::NAN);
            let mem = mean_by(&rows, size, name, |r| r.logical_memory as f64).unwrap_or(f64::NAN);
            println!("{size:>8} {name:>10} {total:>12.3} {fvv:>18.3} {mem:>16.0}");
        }
    }

    if cfg.emit_svg {
        for path in emit_plots(&rows, &cfg.output_dir)? {
            println!("wrote {}", path.display());
        }
    }
    if rows.iter().any(|r| r.steps < 0) {
        eprintln!("error: some runs found no path");
        return Ok(ExitCode::from(EXIT_NO_PATH));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest() -> ExitCode {
    let results = selftest_suite();
    for r in &results {
        println!("{r}");
    }
    if results.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_OTHER)
    }
}
