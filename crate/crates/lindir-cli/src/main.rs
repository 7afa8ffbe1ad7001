//! `lindir` binary: thin argument layer over [`lindir_cli::config`] and
//! [`lindir_cli::run`].
//!
//! A run is resolved in three steps: load the base configuration from
//! `--config` (or start from the subcommand's defaults), overlay the command
//! line flags, then validate. Exit codes: 0 success; 1 I/O failure; 2 usage,
//! schema or validation error; 3 the computation itself failed (a structured
//! error payload is still written).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use lindir_cli::config::{
    parse_c64, parse_config, parse_directions, parse_point, parse_weight_spec,
    CompareDirectionsOp, CheckQOp, CountQuery, CriterionKind, EstimateIndexOp,
    EstimateJointIndexOp, GrowthOp, Operation, PdeCheckOp, RunConfig, VerifyOp, ZerosOp,
    SCHEMA_VERSION,
};
use lindir_cli::run;

#[derive(Parser)]
#[command(
    name = "lindir",
    version,
    about = "Numerical toolkit for entire functions of bounded L-index in a direction",
    after_help = "Reports are reproducible: the JSON payload embeds the full configuration,\n\
                  and identical configurations (including seeds) produce identical bytes."
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args)]
struct GlobalArgs {
    /// Base configuration file (JSON); flags override its fields
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Write the JSON report here instead of standard output
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Also write per-operation CSV tables into this directory
    #[arg(long, global = true, value_name = "DIR")]
    csv_dir: Option<PathBuf>,
    /// Worker threads (default: one per core)
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Fixture name (see `lindir list-fixtures`)
    #[arg(long, global = true, value_name = "NAME")]
    fixture: Option<String>,
    /// Fixture parameters as JSON, e.g. '{"c": [[1.0, 0.0]]}'
    #[arg(long, global = true, value_name = "JSON")]
    fixture_params: Option<String>,
    /// Weight L in compact form, e.g. const:1 or poly_abs:1,1,1
    #[arg(long, global = true, value_name = "SPEC")]
    weight: Option<String>,
    /// Direction b as comma-separated complex coordinates, e.g. 1,0 or 1+1i
    #[arg(long, global = true, value_name = "COORDS")]
    direction: Option<String>,
    /// Override the sampling seed of the operation's grid
    #[arg(long, global = true, value_name = "SEED")]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the directional index over a sampled slice grid
    EstimateIndex(EstimateIndexArgs),
    /// Estimate the joint index from partial derivatives over a polydisc
    EstimateJointIndex(EstimateJointIndexArgs),
    /// Estimate the index along several directions and compare verdicts
    CompareDirections(CompareDirectionsArgs),
    /// Check that the weight L belongs to the admissible class
    CheckQ(CheckQArgs),
    /// Find slice zeros, excluded disks around them, and zero counts
    Zeros(ZerosArgs),
    /// Run one characterization criterion and report its constant
    Verify(VerifyArgs),
    /// Check a directional differential equation and its slice ODE form
    PdeCheck(PdeCheckArgs),
    /// Radial growth profile with the fitted exponential type
    Growth(GrowthArgs),
    /// List built-in fixtures plus any fixture declared by the configuration
    ListFixtures,
}

impl Command {
    fn op_name(&self) -> &'static str {
        match self {
            Command::EstimateIndex(_) => "estimate-index",
            Command::EstimateJointIndex(_) => "estimate-joint-index",
            Command::CompareDirections(_) => "compare-directions",
            Command::CheckQ(_) => "check-q",
            Command::Zeros(_) => "zeros",
            Command::Verify(_) => "verify",
            Command::PdeCheck(_) => "pde-check",
            Command::Growth(_) => "growth",
            Command::ListFixtures => "list-fixtures",
        }
    }
}

#[derive(Args)]
struct EstimateIndexArgs {
    /// Largest derivative order probed
    #[arg(long, value_name = "M")]
    max_order: Option<usize>,
    /// Polydisc reach of the sampled slice grid
    #[arg(long, value_name = "R")]
    grid_reach: Option<f64>,
    /// Number of sampled base points
    #[arg(long, value_name = "N")]
    grid_bases: Option<usize>,
    /// Slice parameters per base point
    #[arg(long, value_name = "N")]
    grid_t: Option<usize>,
}

impl EstimateIndexArgs {
    fn apply(&self, op: &mut EstimateIndexOp) {
        if let Some(m) = self.max_order {
            op.m_cap = m;
        }
        if let Some(r) = self.grid_reach {
            op.grid.reach = r;
        }
        if let Some(n) = self.grid_bases {
            op.grid.bases = n;
        }
        if let Some(n) = self.grid_t {
            op.grid.t_per_base = n;
        }
    }
}

#[derive(Args)]
struct EstimateJointIndexArgs {
    /// Per-axis probe caps, comma separated, e.g. 1,1
    #[arg(long, value_name = "K1,K2,...")]
    kmax: Option<String>,
    /// Polydisc radius of the sample
    #[arg(long, value_name = "R")]
    grid_radius: Option<f64>,
    /// Number of sampled points
    #[arg(long, value_name = "N")]
    grid_points: Option<usize>,
}

impl EstimateJointIndexArgs {
    fn apply(&self, op: &mut EstimateJointIndexOp) -> Result<(), String> {
        if let Some(text) = &self.kmax {
            let caps: Result<Vec<usize>, _> = text.split(',').map(|p| p.trim().parse()).collect();
            op.kmax = caps.map_err(|_| format!("--kmax: cannot parse {text:?}"))?;
        }
        if let Some(r) = self.grid_radius {
            op.grid.radius = r;
        }
        if let Some(n) = self.grid_points {
            op.grid.points = n;
        }
        Ok(())
    }
}

#[derive(Args)]
struct CompareDirectionsArgs {
    /// Directions separated by ';', coordinates by ',', e.g. 1,0;0,1
    #[arg(long, value_name = "DIRS")]
    directions: Option<String>,
    /// Largest derivative order probed
    #[arg(long, value_name = "M")]
    max_order: Option<usize>,
    /// Polydisc reach of the sampled slice grid
    #[arg(long, value_name = "R")]
    grid_reach: Option<f64>,
    /// Number of sampled base points
    #[arg(long, value_name = "N")]
    grid_bases: Option<usize>,
    /// Slice parameters per base point
    #[arg(long, value_name = "N")]
    grid_t: Option<usize>,
}

impl CompareDirectionsArgs {
    fn apply(&self, op: &mut CompareDirectionsOp) -> Result<(), String> {
        if let Some(text) = &self.directions {
            op.directions = parse_directions(text).map_err(|e| format!("--directions: {e}"))?;
        }
        if let Some(m) = self.max_order {
            op.m_cap = m;
        }
        if let Some(r) = self.grid_reach {
            op.grid.reach = r;
        }
        if let Some(n) = self.grid_bases {
            op.grid.bases = n;
        }
        if let Some(n) = self.grid_t {
            op.grid.t_per_base = n;
        }
        Ok(())
    }
}

#[derive(Args)]
struct CheckQArgs {
    /// Disk-shrink parameters eta, comma separated, e.g. 0.1,1,2
    #[arg(long, value_name = "E1,E2,...")]
    etas: Option<String>,
    /// Radius of the sampled region
    #[arg(long, value_name = "R")]
    region_radius: Option<f64>,
    /// Enlargement factor that classifies a bound as growing
    #[arg(long, value_name = "F")]
    trend_factor: Option<f64>,
}

impl CheckQArgs {
    fn apply(&self, op: &mut CheckQOp) -> Result<(), String> {
        if let Some(text) = &self.etas {
            let etas: Result<Vec<f64>, _> = text.split(',').map(|p| p.trim().parse()).collect();
            op.options.etas = etas.map_err(|_| format!("--etas: cannot parse {text:?}"))?;
        }
        if let Some(r) = self.region_radius {
            op.options.region.radius = r;
        }
        if let Some(f) = self.trend_factor {
            op.options.trend_factor = f;
        }
        Ok(())
    }
}

#[derive(Args)]
struct ZerosArgs {
    /// Search circle radius in the slice parameter
    #[arg(long, value_name = "R")]
    radius: Option<f64>,
    /// Slice base point, comma-separated coordinates (default: origin)
    #[arg(long, value_name = "COORDS")]
    z0: Option<String>,
    /// Also report excluded disks of radius R/L around each zero
    #[arg(long, value_name = "R")]
    excluded_r: Option<f64>,
    /// Count zeros in a disk centered here (needs --count-r)
    #[arg(long, value_name = "T0", requires = "count_r")]
    count_t0: Option<String>,
    /// Radius of the counting disk (needs --count-t0)
    #[arg(long, value_name = "R", requires = "count_t0")]
    count_r: Option<f64>,
}

impl ZerosArgs {
    fn apply(&self, op: &mut ZerosOp) -> Result<(), String> {
        if let Some(r) = self.radius {
            op.radius = r;
        }
        if let Some(text) = &self.z0 {
            op.z0 = Some(parse_point(text).map_err(|e| format!("--z0: {e}"))?);
        }
        if let Some(r) = self.excluded_r {
            op.excluded_r = Some(r);
        }
        if let (Some(t0), Some(r)) = (&self.count_t0, self.count_r) {
            let t0 = parse_c64(t0).map_err(|e| format!("--count-t0: {e}"))?;
            op.count = Some(CountQuery { t0, r });
        }
        Ok(())
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Which criterion to run
    #[arg(long, value_enum, value_name = "KIND")]
    criterion: Option<CriterionKind>,
    /// local-deriv: base order
    #[arg(long, value_name = "N")]
    n0: Option<usize>,
    /// Inner radius factor (local-deriv, max-mod, min-max)
    #[arg(long, value_name = "R")]
    r1: Option<f64>,
    /// Outer radius factor (local-deriv, max-mod, min-max)
    #[arg(long, value_name = "R")]
    r2: Option<f64>,
    /// hayman: probe order
    #[arg(long, value_name = "N")]
    n_probe: Option<usize>,
    /// Disk radius factor (log-deriv, value-dist)
    #[arg(long, value_name = "R")]
    r: Option<f64>,
    /// value-dist: probe values, comma separated, e.g. 0,1+1i
    #[arg(long, value_name = "W1,W2,...")]
    values: Option<String>,
    /// growth: largest ladder radius
    #[arg(long, value_name = "R")]
    rmax: Option<f64>,
    /// growth: ladder rungs
    #[arg(long, value_name = "N")]
    samples: Option<usize>,
    /// growth: ray base point (default: origin)
    #[arg(long, value_name = "COORDS")]
    z0: Option<String>,
    /// Enlargement factor that classifies a constant as growing
    #[arg(long, value_name = "F")]
    trend_factor: Option<f64>,
}

impl VerifyArgs {
    fn apply(&self, op: &mut VerifyOp) -> Result<(), String> {
        if let Some(kind) = self.criterion {
            op.criterion = kind;
        }
        if let Some(n) = self.n0 {
            op.params.n0 = n;
        }
        if let Some(r) = self.r1 {
            op.params.r1 = r;
        }
        if let Some(r) = self.r2 {
            op.params.r2 = r;
        }
        if let Some(n) = self.n_probe {
            op.params.n_probe = n;
        }
        if let Some(r) = self.r {
            op.params.r = r;
        }
        if let Some(text) = &self.values {
            let values: Result<Vec<_>, String> = text.split(',').map(parse_c64).collect();
            op.params.values = values.map_err(|e| format!("--values: {e}"))?;
        }
        if let Some(r) = self.rmax {
            op.params.rmax = r;
        }
        if let Some(n) = self.samples {
            op.params.samples = n;
        }
        if let Some(text) = &self.z0 {
            op.params.z0 = Some(parse_point(text).map_err(|e| format!("--z0: {e}"))?);
        }
        if let Some(f) = self.trend_factor {
            op.options.trend_factor = f;
        }
        Ok(())
    }
}

#[derive(Args)]
struct PdeCheckArgs {
    /// Coefficients a_0..a_p as a JSON array of expressions
    #[arg(long, value_name = "JSON")]
    coefficients: Option<String>,
    /// Right-hand side as a JSON expression (default: homogeneous)
    #[arg(long, value_name = "JSON")]
    rhs: Option<String>,
    /// Slice ODE cross-check integrates to this t
    #[arg(long, value_name = "T")]
    t_end: Option<f64>,
    /// Cross-check comparison points
    #[arg(long, value_name = "N")]
    checkpoints: Option<usize>,
    /// Cross-check base point (default: origin)
    #[arg(long, value_name = "COORDS")]
    z0: Option<String>,
    /// Also estimate the solution's directional index (needs a weight)
    #[arg(long)]
    with_index: bool,
    /// Largest derivative order probed by the index estimate
    #[arg(long, value_name = "M")]
    max_order: Option<usize>,
}

impl PdeCheckArgs {
    fn apply(&self, op: &mut PdeCheckOp) -> Result<(), String> {
        if let Some(text) = &self.coefficients {
            op.coefficients =
                serde_json::from_str(text).map_err(|e| format!("--coefficients: {e}"))?;
        }
        if let Some(text) = &self.rhs {
            op.rhs = Some(serde_json::from_str(text).map_err(|e| format!("--rhs: {e}"))?);
        }
        if let Some(t) = self.t_end {
            op.t_end = t;
        }
        if let Some(n) = self.checkpoints {
            op.checkpoints = n;
        }
        if let Some(text) = &self.z0 {
            op.z0 = Some(parse_point(text).map_err(|e| format!("--z0: {e}"))?);
        }
        if self.with_index {
            op.with_index = true;
        }
        if let Some(m) = self.max_order {
            op.m_cap = m;
        }
        Ok(())
    }
}

#[derive(Args)]
struct GrowthArgs {
    /// Largest ladder radius
    #[arg(long, value_name = "R")]
    rmax: Option<f64>,
    /// Ladder rungs
    #[arg(long, value_name = "N")]
    samples: Option<usize>,
    /// Ray base point (default: origin)
    #[arg(long, value_name = "COORDS")]
    z0: Option<String>,
}

impl GrowthArgs {
    fn apply(&self, op: &mut GrowthOp) -> Result<(), String> {
        if let Some(r) = self.rmax {
            op.rmax = r;
        }
        if let Some(n) = self.samples {
            op.samples = n;
        }
        if let Some(text) = &self.z0 {
            op.z0 = Some(parse_point(text).map_err(|e| format!("--z0: {e}"))?);
        }
        Ok(())
    }
}

enum Fail {
    /// Bad flags or configuration contents: exit 2.
    Usage(String),
    /// Could not read the configuration file: exit 1.
    Io(String),
}

/// Default operation for a subcommand, used when no base configuration (or
/// one for a different operation) was given.
fn default_operation(command: &Command) -> Result<Operation, Fail> {
    Ok(match command {
        Command::EstimateIndex(_) => Operation::EstimateIndex(EstimateIndexOp::default()),
        Command::EstimateJointIndex(_) => {
            Operation::EstimateJointIndex(EstimateJointIndexOp::default())
        }
        Command::CompareDirections(_) => {
            Operation::CompareDirections(CompareDirectionsOp::default())
        }
        Command::CheckQ(_) => Operation::CheckQ(CheckQOp::default()),
        Command::Zeros(_) => Operation::Zeros(ZerosOp::default()),
        Command::Verify(args) => {
            let criterion = args.criterion.ok_or_else(|| {
                Fail::Usage("verify: --criterion is required (or supply one via --config)".into())
            })?;
            Operation::Verify(VerifyOp {
                criterion,
                params: Default::default(),
                options: Default::default(),
            })
        }
        Command::PdeCheck(_) => Operation::PdeCheck(PdeCheckOp {
            coefficients: Vec::new(),
            rhs: None,
            t_end: 2.0,
            checkpoints: 8,
            z0: None,
            with_index: false,
            m_cap: 12,
            grid: Default::default(),
            point: Default::default(),
            options: Default::default(),
        }),
        Command::Growth(_) => Operation::Growth(GrowthOp::default()),
        Command::ListFixtures => Operation::ListFixtures,
    })
}

fn apply_operation_args(command: &Command, operation: &mut Operation) -> Result<(), String> {
    match (command, operation) {
        (Command::EstimateIndex(args), Operation::EstimateIndex(op)) => {
            args.apply(op);
            Ok(())
        }
        (Command::EstimateJointIndex(args), Operation::EstimateJointIndex(op)) => args.apply(op),
        (Command::CompareDirections(args), Operation::CompareDirections(op)) => args.apply(op),
        (Command::CheckQ(args), Operation::CheckQ(op)) => args.apply(op),
        (Command::Zeros(args), Operation::Zeros(op)) => args.apply(op),
        (Command::Verify(args), Operation::Verify(op)) => args.apply(op),
        (Command::PdeCheck(args), Operation::PdeCheck(op)) => args.apply(op),
        (Command::Growth(args), Operation::Growth(op)) => args.apply(op),
        (Command::ListFixtures, Operation::ListFixtures) => Ok(()),
        _ => unreachable!("operation resolved from a different subcommand"),
    }
}

fn apply_seed(operation: &mut Operation, seed: u64) {
    match operation {
        Operation::EstimateIndex(op) => op.grid.seed = seed,
        Operation::EstimateJointIndex(op) => op.grid.seed = seed,
        Operation::CompareDirections(op) => op.grid.seed = seed,
        Operation::CheckQ(op) => op.options.region.seed = seed,
        Operation::Zeros(_) => {} // the zero search is deterministic, no seed
        Operation::Verify(op) => op.options.region.seed = seed,
        Operation::PdeCheck(op) => {
            op.options.region.seed = seed;
            op.grid.seed = seed;
        }
        Operation::Growth(op) => op.options.region.seed = seed,
        Operation::ListFixtures => {}
    }
}

fn resolve(cli: Cli) -> Result<RunConfig, Fail> {
    let base = match &cli.global.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Fail::Io(format!("cannot read {}: {e}", path.display())))?;
            Some(parse_config(&text).map_err(Fail::Usage)?)
        }
        None => None,
    };

    let mut config = match (&cli.command, base) {
        (Some(command), Some(mut config)) => {
            if config.operation.name() != command.op_name() {
                config.operation = default_operation(command)?;
            }
            config
        }
        (Some(command), None) => RunConfig {
            schema_version: SCHEMA_VERSION,
            fixture: None,
            weight: None,
            direction: None,
            jobs: None,
            output: Default::default(),
            operation: default_operation(command)?,
        },
        (None, Some(config)) => config,
        (None, None) => {
            return Err(Fail::Usage(
                "a subcommand or --config is required; see --help".into(),
            ))
        }
    };

    if let Some(command) = &cli.command {
        apply_operation_args(command, &mut config.operation).map_err(Fail::Usage)?;
    }

    let g = cli.global;
    if let Some(name) = g.fixture {
        let params: serde_json::Value = match &g.fixture_params {
            Some(text) => serde_json::from_str(text)
                .map_err(|e| Fail::Usage(format!("--fixture-params: {e}")))?,
            None => serde_json::json!({}),
        };
        let spec = serde_json::json!({"name": name, "params": params});
        config.fixture = Some(
            serde_json::from_value(spec)
                .map_err(|e| Fail::Usage(format!("--fixture: {e}")))?,
        );
    } else if g.fixture_params.is_some() {
        return Err(Fail::Usage("--fixture-params needs --fixture".into()));
    }
    if let Some(text) = g.weight {
        config.weight =
            Some(parse_weight_spec(&text).map_err(|e| Fail::Usage(format!("--weight: {e}")))?);
    }
    if let Some(text) = g.direction {
        config.direction =
            Some(parse_point(&text).map_err(|e| Fail::Usage(format!("--direction: {e}")))?);
    }
    if let Some(jobs) = g.jobs {
        config.jobs = Some(jobs);
    }
    if let Some(path) = g.out {
        config.output.json = Some(path);
    }
    if let Some(dir) = g.csv_dir {
        config.output.csv_dir = Some(dir);
    }
    if let Some(seed) = g.seed {
        apply_seed(&mut config.operation, seed);
    }
    Ok(config)
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = Cli::parse();
    let config = match resolve(cli) {
        Ok(config) => config,
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
        Err(Fail::Io(msg)) => {
            eprintln!("error: {msg}");
            return 1;
        }
    };
    if let Err(msg) = config.validate() {
        eprintln!("error: {msg}");
        return 2;
    }
    if let Some(jobs) = config.jobs {
        // A second initialization in the same process is harmless; the pool
        // sticks to whatever was set first.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run::run(&config) {
        Ok(result) => {
            let payload = run::payload(&config, result);
            if let Err(e) = run::write_json(&payload, config.output.json.as_deref()) {
                eprintln!("error: writing report: {e}");
                return 1;
            }
            if let Some(dir) = &config.output.csv_dir {
                if let Err(e) = run::write_csv_tables(&payload.result, dir) {
                    eprintln!("error: writing tables to {}: {e}", dir.display());
                    return 1;
                }
            }
            0
        }
        Err(err) => {
            let payload = run::error_payload(&config, &err);
            if let Err(e) = run::write_json(&payload, config.output.json.as_deref()) {
                eprintln!("error: writing error report: {e}");
            }
            eprintln!("error: {err}");
            3
        }
    }
}
