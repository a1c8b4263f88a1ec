//! `bvass`: compute, query and cross-check reachability sets of 2-BVASS models.
//!
//! Exit codes: 0 success, 1 usage error, 2 input or parse error, 3 negative
//! membership answer, 4 resource limit, 5 validation or differential failure.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bvass::explore::ExploreOutcome;
use bvass::oracle::{bounded_reach, check_post_closure, check_soundness, WitnessStatus};
use bvass::semilinear::model_hash;
use bvass::{
    explore, parse_bvass, validate_exploration, Bvass, ExploreConfig, IVec2, SemilinearPresentation,
    WorklistOrder,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bvass", version, about = "Reachability sets of two-dimensional branching VASS")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a semilinear presentation of the reachability set.
    Reach(ReachArgs),
    /// Decide whether a configuration is reachable.
    Member(MemberArgs),
    /// Dump the configurations reachable inside a box, by brute force.
    Oracle(OracleArgs),
    /// Cross-check a presentation against the brute-force oracles.
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Fifo,
    Lifo,
}

#[derive(Args)]
struct ExploreFlags {
    /// Worklist discipline.
    #[arg(long, value_enum, default_value = "fifo")]
    order: Order,
    #[arg(long, value_name = "N")]
    max_nodes: Option<u64>,
}

impl ExploreFlags {
    fn config(&self, validate: bool) -> ExploreConfig {
        let mut cfg = ExploreConfig {
            worklist_order: match self.order {
                Order::Fifo => WorklistOrder::Fifo,
                Order::Lifo => WorklistOrder::Lifo,
            },
            validate,
            ..ExploreConfig::default()
        };
        if let Some(n) = self.max_nodes {
            cfg.max_nodes = n;
        }
        cfg
    }
}

#[derive(Args)]
struct ReachArgs {
    /// Model file, or `-` for stdin.
    file: PathBuf,
    /// Emit canonical JSON instead of the line format.
    #[arg(long)]
    json: bool,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Certify the exploration; violations exit with code 5.
    #[arg(long)]
    validate: bool,
    /// Print exploration counters to stderr.
    #[arg(long)]
    stats: bool,
    #[command(flatten)]
    explore: ExploreFlags,
}

#[derive(Args)]
struct MemberArgs {
    file: PathBuf,
    state: String,
    #[arg(allow_negative_numbers = true)]
    x: i64,
    #[arg(allow_negative_numbers = true)]
    y: i64,
    /// Use a stored presentation (JSON or line format, `-` for stdin).
    #[arg(long, value_name = "PATH")]
    from: Option<PathBuf>,
    #[command(flatten)]
    explore: ExploreFlags,
}

#[derive(Args)]
struct OracleArgs {
    file: PathBuf,
    #[arg(long = "box", value_name = "K", default_value_t = 20)]
    box_size: u64,
    #[arg(long, value_name = "N", default_value_t = 10_000_000)]
    max_configs: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    #[arg(long = "box", value_name = "K", default_value_t = 20)]
    box_size: u64,
    #[arg(long = "box-max", value_name = "KMAX", default_value_t = 160)]
    box_max: u64,
    /// Check a stored presentation instead of the computed one.
    #[arg(long, value_name = "PATH")]
    from: Option<PathBuf>,
    #[arg(long, value_name = "N", default_value_t = 10_000_000)]
    max_configs: u64,
    #[command(flatten)]
    explore: ExploreFlags,
}

enum Failure {
    Usage(String),
    Input(String),
    Negative,
    Resource(String),
    Invalid(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Negative => 3,
            Failure::Resource(_) => 4,
            Failure::Invalid(_) => 5,
        }
    }
}

impl From<bvass::Error> for Failure {
    fn from(e: bvass::Error) -> Self {
        if e.is_resource_limit() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("BVASS_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Reach(a) => reach(a),
        Command::Member(a) => member(a),
        Command::Oracle(a) => oracle(a),
        Command::Check(a) => check(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Input(m) | Failure::Resource(m) | Failure::Invalid(m) => {
                    eprintln!("bvass: {m}")
                }
                Failure::Negative => {}
            }
            ExitCode::from(f.code())
        }
    }
}

fn read_source(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn load_model(path: &Path) -> Result<Bvass, Failure> {
    let text = read_source(path)?;
    parse_bvass(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_presentation(path: &Path, b: &Bvass) -> Result<SemilinearPresentation, Failure> {
    let text = read_source(path)?;
    let s = SemilinearPresentation::parse(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if !s.model_hash.is_empty() && s.model_hash != model_hash(b) {
        return Err(Failure::Input(format!(
            "{}: presentation was computed for a different model",
            path.display()
        )));
    }
    Ok(s)
}

fn run_explore(b: &Bvass, cfg: &ExploreConfig) -> Result<ExploreOutcome, Failure> {
    explore(b, cfg).map_err(|f| {
        let stats = serde_json::to_string(&f.stats).unwrap_or_default();
        let msg = format!("{f}; partial stats: {stats}");
        if f.error.is_resource_limit() {
            Failure::Resource(msg)
        } else {
            Failure::Input(msg)
        }
    })
}

fn write_output(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(format!("stdout: {e}"))),
    }
}

fn reach(a: ReachArgs) -> Outcome {
    let b = load_model(&a.file)?;
    let out = run_explore(&b, &a.explore.config(a.validate))?;
    let mut text = if a.json {
        out.presentation.to_json()
    } else {
        out.presentation.to_string()
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    write_output(a.out.as_deref(), &text)?;
    if a.stats {
        eprintln!("{}", serde_json::to_string(&out.stats).unwrap());
    }
    if let Some(report) = out.validation.filter(|r| !r.is_ok()) {
        let detail = serde_json::to_string_pretty(&report.violations).unwrap();
        return Err(Failure::Invalid(format!("exploration failed validation:\n{detail}")));
    }
    Ok(())
}

fn member(a: MemberArgs) -> Outcome {
    let b = load_model(&a.file)?;
    let s = match &a.from {
        Some(p) => load_presentation(p, &b)?,
        None => run_explore(&b, &a.explore.config(false))?.presentation,
    };
    let limits = ExploreConfig::default().limits;
    let hit = s.member_config(&a.state, IVec2::new(a.x, a.y), &limits)?;
    match hit {
        Some(i) => {
            let e = &s.entries[i];
            let mut line = format!("reachable: linear {} : {} {}", e.state, e.base.x, e.base.y);
            for g in e.periods.generators() {
                line.push_str(&format!(" ; {} {}", g.x, g.y));
            }
            println!("{line}");
            Ok(())
        }
        None => {
            println!("not reachable");
            Err(Failure::Negative)
        }
    }
}

fn oracle(a: OracleArgs) -> Outcome {
    let b = load_model(&a.file)?;
    let r = bounded_reach(&b, a.box_size, a.max_configs)?;
    let text = if a.json {
        let configs: Vec<_> = r
            .configs
            .iter()
            .map(|c| json!({"state": b.name(c.state), "point": c.point}))
            .collect();
        let doc = json!({"box": r.box_size, "saturated": r.saturated, "configs": configs});
        format!("{doc}\n")
    } else {
        let mut t = String::new();
        for c in &r.configs {
            t.push_str(&format!("{} {} {}\n", b.name(c.state), c.point.x, c.point.y));
        }
        t
    };
    write_output(None, &text)?;
    log::info!("{} configurations, saturated: {}", r.configs.len(), r.saturated);
    Ok(())
}

fn check(a: CheckArgs) -> Outcome {
    if a.box_max < a.box_size {
        return Err(Failure::Usage("--box-max must be at least --box".into()));
    }
    let b = load_model(&a.file)?;
    let cfg = a.explore.config(false);
    let out = run_explore(&b, &cfg)?;
    let s = match &a.from {
        Some(p) => load_presentation(p, &b)?,
        None => out.presentation.clone(),
    };
    let soundness = check_soundness(&s, &b, a.box_size, a.box_max, a.max_configs);
    let closure = check_post_closure(&s, &b, a.box_size, &cfg.limits);
    let validation = validate_exploration(&out.exploration, &b, &cfg);

    let inconclusive: Vec<_> = soundness
        .entries
        .iter()
        .filter(|e| e.status == WitnessStatus::Inconclusive)
        .collect();
    let ok = soundness.is_sound()
        && soundness.limit_error.is_none()
        && closure.is_closed()
        && validation.is_ok();
    let report = json!({
        "model_hash": model_hash(&b),
        "entries": s.entries.len(),
        "soundness": {
            "box": soundness.box_size,
            "boxes_tried": soundness.boxes_tried,
            "witnessed": soundness.witnessed,
            "inconclusive": inconclusive,
            "limit_error": soundness.limit_error,
        },
        "closure": closure,
        "validation": validation,
        "ok": ok,
    });
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    if ok {
        Ok(())
    } else {
        Err(Failure::Invalid("differential check failed".into()))
    }
}
