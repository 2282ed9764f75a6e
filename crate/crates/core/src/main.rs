use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use cubicalc::analysis::{doomed_region, factorize, find_deadlocks, point_to_text, Factor, GridOracle};
use cubicalc::area::CubicalArea;
use cubicalc::cube::Cube;
use cubicalc::interval::{format_rational, parse_rational, Rational};
use cubicalc::laws::LawSuite;
use cubicalc::pv::{self, PvError, PvProgram, ValidationError};
use cubicalc::svg::{Figure, FORBIDDEN_FILL};

const DOOMED_FILL: &str = "#f2b8b8";

#[derive(Parser)]
#[command(name = "cubicalc", version, about = "Cubical areas and the geometry of PV programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(multiple = false)]
struct Format {
    /// JSON output
    #[arg(long)]
    json: bool,
    /// Plain text output (the default)
    #[arg(long)]
    text: bool,
    /// Write an SVG picture to FILE (two threads only)
    #[arg(long, value_name = "FILE")]
    svg: Option<PathBuf>,
}

#[derive(Args)]
#[group(multiple = false)]
struct DataFormat {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Maximal cubes of the consistent states
    Model {
        path: PathBuf,
        #[command(flatten)]
        format: Format,
    },
    /// Maximal cubes of the forbidden region
    Forbidden {
        path: PathBuf,
        #[command(flatten)]
        format: Format,
    },
    /// Deadlock states
    Deadlocks {
        path: PathBuf,
        #[command(flatten)]
        format: Format,
        /// Also compare with a brute-force grid of this step (1/m)
        #[arg(long, value_name = "Q")]
        step: Option<String>,
    },
    /// The deadlock attractor
    Attractor {
        path: PathBuf,
        #[command(flatten)]
        format: Format,
        /// Also compare with a brute-force grid of this step (1/m)
        #[arg(long, value_name = "Q")]
        step: Option<String>,
    },
    /// Finest product decomposition of a model or of an area
    Factor {
        #[arg(required_unless_present = "area")]
        path: Option<PathBuf>,
        /// Read an area in JSON instead of a program
        #[arg(long, value_name = "FILE", conflicts_with = "path")]
        area: Option<PathBuf>,
        #[command(flatten)]
        format: DataFormat,
    },
    /// Run the randomized law suite
    Laws {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        iters: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=3))]
        dim: u64,
        #[command(flatten)]
        format: DataFormat,
    },
}

#[derive(Serialize)]
struct FactorReport<'a> {
    factors: &'a [Factor],
    #[serde(skip_serializing_if = "Option::is_none")]
    resource_groups: Option<&'a [Vec<usize>]>,
}

enum Failure {
    Input(String),
    Io(String),
    Invariant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Io(_) => 2,
            Failure::Invariant(_) => 3,
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Line of the declaration of `process`, for errors found after parsing.
fn declaration_line(source: &str, process: &str) -> usize {
    source
        .lines()
        .position(|l| {
            l.trim_start()
                .strip_prefix(process)
                .is_some_and(|rest| rest.trim_start().starts_with('='))
        })
        .map_or(1, |k| k + 1)
}

fn program_error(path: &Path, source: &str, e: PvError) -> Failure {
    let line = match &e {
        PvError::Validation(
            ValidationError::UnlockWithoutLock { process, .. }
            | ValidationError::LockWhileHeld { process, .. }
            | ValidationError::Unreleased { process, .. },
        ) => declaration_line(source, process),
        PvError::NoProcesses => 1,
    };
    Failure::Input(format!("{}:{line}:1: {e}", path.display()))
}

struct Loaded {
    path: PathBuf,
    source: String,
    prog: PvProgram,
}

impl Loaded {
    fn new(path: &Path) -> Result<Self, Failure> {
        let source = read(path)?;
        let prog = pv::parse(&source).map_err(|e| Failure::Input(format!("{}:{e}", path.display())))?;
        let loaded = Loaded {
            path: path.to_path_buf(),
            source,
            prog,
        };
        loaded.check(loaded.prog.validate().map(|_| ()).map_err(PvError::from))?;
        loaded.check(pv::ambient(&loaded.prog).map(|_| ()))?;
        Ok(loaded)
    }

    fn check<T>(&self, r: Result<T, PvError>) -> Result<T, Failure> {
        r.map_err(|e| program_error(&self.path, &self.source, e))
    }

    fn ambient(&self) -> Cube {
        pv::ambient(&self.prog).expect("checked on load")
    }

    fn model(&self) -> CubicalArea {
        pv::model(&self.prog).expect("checked on load")
    }

    fn forbidden(&self) -> CubicalArea {
        pv::forbidden_region(&self.prog).expect("checked on load")
    }

    fn figure(&self) -> Result<Figure, Failure> {
        let names = self.prog.main();
        let fig = Figure::new(&self.ambient()).map_err(|e| Failure::Input(format!("{}: {e}", self.path.display())))?;
        let fig = fig.fill(&self.forbidden(), FORBIDDEN_FILL).expect("planar");
        Ok(fig.labels(&names[0], &names[1]))
    }

    fn deadlocks(&self) -> Vec<Vec<Rational>> {
        find_deadlocks(&self.model(), &self.ambient()).expect("same dimension")
    }
}

fn write_svg(file: &Path, svg: String) -> Outcome {
    fs::write(file, svg).map_err(|e| Failure::Io(format!("{}: {e}", file.display())))?;
    Ok(String::new())
}

fn point_text(p: &[Rational]) -> String {
    let coords: Vec<String> = p.iter().map(format_rational).collect();
    format!("({})", coords.join(", "))
}

fn area_output(area: &CubicalArea, format: &Format, svg: impl FnOnce() -> Result<Figure, Failure>) -> Outcome {
    if let Some(file) = &format.svg {
        return write_svg(file, svg()?.render());
    }
    Ok(if format.json {
        format!("{}\n", area.to_json())
    } else {
        area.to_string()
    })
}

fn parse_step(step: &str) -> Result<Rational, Failure> {
    parse_rational(step).map_err(|e| Failure::Input(format!("--step: {e}")))
}

fn oracle(loaded: &Loaded, step: &str) -> Result<GridOracle, Failure> {
    GridOracle::new(&loaded.prog, &parse_step(step)?).map_err(|e| Failure::Input(format!("--step: {e}")))
}

fn cmd_deadlocks(path: &Path, format: &Format, step: Option<&str>) -> Outcome {
    let loaded = Loaded::new(path)?;
    let deadlocks = loaded.deadlocks();
    if let Some(step) = step {
        let grid = oracle(&loaded, step)?;
        let expected = grid.deadlocks();
        if expected != deadlocks {
            let show = |ps: &[Vec<Rational>]| ps.iter().map(|p| point_text(p)).collect::<Vec<_>>().join(" ");
            return Err(Failure::Invariant(format!(
                "deadlocks {} disagree with the grid oracle at step {step}: {}",
                show(&deadlocks),
                show(&expected)
            )));
        }
        eprintln!("grid oracle at step {step} agrees ({} points)", grid.len());
    }
    if let Some(file) = &format.svg {
        return write_svg(file, loaded.figure()?.points(&deadlocks).render());
    }
    if format.json {
        let points: Vec<Vec<String>> = deadlocks.iter().map(|p| point_to_text(p)).collect();
        return Ok(format!("{}\n", json!({ "deadlocks": points })));
    }
    if deadlocks.is_empty() {
        return Ok("no deadlocks\n".into());
    }
    Ok(deadlocks.iter().map(|p| point_text(p) + "\n").collect())
}

fn cmd_attractor(path: &Path, format: &Format, step: Option<&str>) -> Outcome {
    let loaded = Loaded::new(path)?;
    let doomed = doomed_region(&loaded.model(), &loaded.ambient()).expect("same dimension");
    if let Some(step) = step {
        let grid = oracle(&loaded, step)?;
        if let Some(p) = grid
            .points()
            .find(|p| grid.is_doomed(p) != Some(doomed.contains_point(p).expect("same dimension")))
        {
            return Err(Failure::Invariant(format!(
                "attractor disagrees with the grid oracle at step {step} at {}",
                point_text(&p)
            )));
        }
        eprintln!("grid oracle at step {step} agrees ({} points)", grid.len());
    }
    area_output(&doomed, format, || {
        let fig = loaded.figure()?.fill(&doomed, DOOMED_FILL).expect("planar");
        Ok(fig.points(&loaded.deadlocks()))
    })
}

fn cmd_factor(path: Option<&Path>, area: Option<&Path>, format: &DataFormat) -> Outcome {
    let (target, groups, names) = match (path, area) {
        (_, Some(file)) => {
            let text = read(file)?;
            let area: CubicalArea = serde_json::from_str(&text)
                .map_err(|e| Failure::Input(format!("{}:{}:{}: {e}", file.display(), e.line(), e.column())))?;
            (area, None, None)
        }
        (Some(path), None) => {
            let loaded = Loaded::new(path)?;
            let groups = loaded.check(pv::resource_groups(&loaded.prog))?;
            (loaded.model(), Some(groups), Some(loaded.prog.main().to_vec()))
        }
        (None, None) => unreachable!("clap requires one of them"),
    };
    let factors = factorize(&target);
    if format.json {
        let report = FactorReport {
            factors: &factors,
            resource_groups: groups.as_deref(),
        };
        return Ok(format!(
            "{}\n",
            serde_json::to_string(&report).expect("report serializes")
        ));
    }
    let label = |axes: &[usize]| {
        let items: Vec<String> = axes
            .iter()
            .map(|&k| match &names {
                Some(n) => format!("{} (axis {k})", n[k]),
                None => format!("axis {k}"),
            })
            .collect();
        format!("{{{}}}", items.join(", "))
    };
    let mut out = String::new();
    for f in &factors {
        out.push_str(&format!("block {}:\n", label(&f.axes)));
        for line in f.factor.to_string().lines() {
            out.push_str(&format!("  {line}\n"));
        }
    }
    if let Some(groups) = &groups {
        let shown: Vec<String> = groups.iter().map(|g| label(g)).collect();
        out.push_str(&format!("resource groups: {}\n", shown.join(" ")));
    }
    Ok(out)
}

fn cmd_laws(seed: u64, iters: u64, dim: u64, format: &DataFormat) -> Outcome {
    let suite = LawSuite::new(seed, iters as usize, dim as usize).map_err(|e| Failure::Input(e.to_string()))?;
    let report = suite.run();
    let out = if format.json {
        format!("{}\n", report.to_json())
    } else {
        report.to_text()
    };
    if report.all_passed() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Invariant("some laws failed".into()))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Model { path, format } => {
            let loaded = Loaded::new(&path)?;
            let model = loaded.model();
            area_output(&model, &format, || {
                let fig = loaded.figure()?.stroke(&model, "black").expect("planar");
                Ok(fig.points(&loaded.deadlocks()))
            })
        }
        Command::Forbidden { path, format } => {
            let loaded = Loaded::new(&path)?;
            area_output(&loaded.forbidden(), &format, || loaded.figure())
        }
        Command::Deadlocks { path, format, step } => cmd_deadlocks(&path, &format, step.as_deref()),
        Command::Attractor { path, format, step } => cmd_attractor(&path, &format, step.as_deref()),
        Command::Factor { path, area, format } => cmd_factor(path.as_deref(), area.as_deref(), &format),
        Command::Laws {
            seed,
            iters,
            dim,
            format,
        } => cmd_laws(seed, iters, dim, &format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Input(m) | Failure::Io(m) | Failure::Invariant(m) => eprintln!("cubicalc: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
