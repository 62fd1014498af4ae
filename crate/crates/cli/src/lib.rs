//! Command-line surface over `staircase-core`.
//!
//! [`run`] parses an argument vector, executes one command and returns a
//! [`CommandReport`] together with the text to print and the exit code.
//! Every command is deterministic; only `elapsed_ms` varies between runs.

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use staircase_core::block::{
    blocked_interval, blocked_interval_bisect, capacity_lower, class_pool, find_blocking, find_blocking_b,
    scan_families, special_exc_class, tree_pool, PoolEntry,
};
use staircase_core::classes::{class_from_center, ClassTuple, Eps};
use staircase_core::exact::{parse_rational, rational_text, DEFAULT_DIGITS};
use staircase_core::family::{class_at_label, enumerate_tree, triple_at_label, Direction, Label, Move};
use staircase_core::suites::{self, Status, Suite};
use staircase_core::symmetry::{apply_sym, SymWord};
use staircase_core::{Error, QuadSurd, Rational};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "STAIRCASE_LAB_THREADS";

/// The result of one command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub elapsed_ms: u64,
}

/// What the binary prints and how it exits.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: CommandReport,
    /// Text for stdout (JSON report, or CSV rows for `capacity --format csv`).
    pub stdout: String,
    /// Diagnostics for stderr (usage errors).
    pub stderr: String,
    pub code: i32,
}

#[derive(Parser, Debug)]
#[command(name = "staircase-lab", version, about = "Exact staircase machinery for one-point blowups of CP²")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classes from centers and symmetry images.
    #[command(subcommand)]
    Class(ClassCmd),
    /// Generating triples by label.
    #[command(subcommand)]
    Triple(TripleCmd),
    /// Steps and exact limit of a pre-staircase of a labelled triple.
    Staircase(StaircaseArgs),
    /// Blocking queries at a point `z` or a parameter `b`.
    #[command(subcommand)]
    Blocked(BlockedCmd),
    /// Blocked interval of a labelled class.
    Interval(IntervalArgs),
    /// Lower bound for the capacity function on a rational grid.
    Capacity(CapacityArgs),
    /// Every class of a family tree to a level.
    Tree(TreeArgs),
    /// Runs a verification suite, or all of them.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum ClassCmd {
    /// The class whose center is `P/Q`.
    FromCenter { center: String },
    /// The image of the class centered at `P/Q` under `S^iR^d`.
    ApplySym { word: String, center: String },
}

#[derive(Subcommand, Debug)]
enum TripleCmd {
    /// The triple whose middle entry carries the label.
    At { label: String },
    /// An x- or y-mutation of the labelled triple.
    Mutate { side: String, label: String },
}

#[derive(Args, Debug)]
struct StaircaseArgs {
    #[arg(long)]
    label: String,
    #[arg(long, default_value = "asc")]
    side: String,
    #[arg(long, default_value_t = 6)]
    count: usize,
}

#[derive(Subcommand, Debug)]
enum BlockedCmd {
    /// The first pool class blocking the point `z`.
    Z {
        z: String,
        #[arg(long, allow_hyphen_values = true, default_value = "+1")]
        eps: String,
        #[arg(long, default_value_t = 6)]
        level: usize,
        /// Largest tree index `n` in the pool (default covers `z`).
        #[arg(long)]
        nmax: Option<u64>,
    },
    /// Every pool class whose b-interval contains `b`.
    B {
        b: String,
        #[arg(long, default_value_t = 6)]
        level: usize,
        #[arg(long, default_value_t = 3)]
        nmax: u64,
    },
}

#[derive(Args, Debug)]
struct IntervalArgs {
    #[arg(long)]
    label: String,
    /// Also bracket the endpoints by bisection to this width.
    #[arg(long)]
    bisect: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct CapacityArgs {
    #[arg(long)]
    b: String,
    #[arg(long = "z-from")]
    z_from: String,
    #[arg(long = "z-to")]
    z_to: String,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long = "pool-level", default_value_t = 5)]
    pool_level: usize,
    /// Family of the pool trees.
    #[arg(long, default_value = "id")]
    sym: String,
    /// Adds the exceptional class (3; 1, 2, 1^5) to the pool.
    #[arg(long)]
    special: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct TreeArgs {
    #[arg(long, default_value_t = 0)]
    n: u64,
    #[arg(long, default_value_t = 3)]
    level: usize,
    #[arg(long, default_value = "id")]
    sym: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name or `all`.
    suite: String,
    /// Largest index for the `noasc` suite.
    #[arg(long, default_value_t = 8)]
    imax: u64,
}

/// A failed command: usage errors exit with 2, domain errors report `fail`.
enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) | Error::InvalidLabel(msg) => Failure::Usage(msg),
            other => Failure::Domain(other),
        }
    }
}

type CmdResult = std::result::Result<Done, Failure>;

/// A finished command before timing is attached.
struct Done {
    status: Status,
    payload: Value,
    csv: Option<String>,
}

impl Done {
    fn info(payload: Value) -> CmdResult {
        Ok(Done { status: Status::Info, payload, csv: None })
    }
}

/// Parses and executes `argv` (without the program name).
pub fn run<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let start = Instant::now();
    let args: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let command = args.join(" ");
    let parsed = Cli::try_parse_from(std::iter::once("staircase-lab".to_string()).chain(args.iter().cloned()));
    let result = match parsed {
        Ok(cli) => with_thread_limit(|| execute(cli.command)),
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let report = report(command, Status::Info, json!({ "help": e.to_string() }), start);
            return Outcome { report, stdout: e.to_string(), stderr: String::new(), code: 0 };
        }
        Err(e) => Err(Failure::Usage(e.to_string())),
    };
    match result {
        Ok(done) => {
            let code = if done.status == Status::Fail { 1 } else { 0 };
            let report = report(command, done.status, done.payload, start);
            let stdout = done.csv.unwrap_or_else(|| to_json(&report));
            Outcome { report, stdout, stderr: String::new(), code }
        }
        Err(Failure::Domain(e)) => {
            let report = report(command, Status::Fail, json!({ "error": e.to_string() }), start);
            let stdout = to_json(&report);
            Outcome { report, stdout, stderr: String::new(), code: 1 }
        }
        Err(Failure::Usage(msg)) => {
            let report = report(command, Status::Fail, json!({ "usage": msg }), start);
            Outcome { report, stdout: String::new(), stderr: msg, code: 2 }
        }
    }
}

fn report(command: String, status: Status, payload: Value, start: Instant) -> CommandReport {
    CommandReport { command, status, payload, elapsed_ms: start.elapsed().as_millis() as u64 }
}

fn to_json(r: &CommandReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

/// Runs `f` on a dedicated pool when the thread limit is set.
fn with_thread_limit<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|n| *n > 0);
    match threads.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

fn execute(cmd: Command) -> CmdResult {
    match cmd {
        Command::Class(c) => class_cmd(c),
        Command::Triple(t) => triple_cmd(t),
        Command::Staircase(a) => staircase_cmd(a),
        Command::Blocked(b) => blocked_cmd(b),
        Command::Interval(a) => interval_cmd(a),
        Command::Capacity(a) => capacity_cmd(a),
        Command::Tree(a) => tree_cmd(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn rat(s: &str) -> std::result::Result<Rational, Failure> {
    parse_rational(s).map_err(|e| usage(e.to_string()))
}

fn center(s: &str) -> std::result::Result<(BigInt, BigInt), Failure> {
    let r = rat(s)?;
    Ok((r.numer().clone(), r.denom().clone()))
}

fn label(s: &str) -> std::result::Result<Label, Failure> {
    s.parse::<Label>().map_err(|e| usage(e.to_string()))
}

fn sym(s: &str) -> std::result::Result<SymWord, Failure> {
    s.parse::<SymWord>().map_err(|e| usage(e.to_string()))
}

fn decimal(r: &Rational) -> String {
    QuadSurd::from_rational(r).to_decimal(DEFAULT_DIGITS)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("value serializes")
}

/// The conventional name of a class, where it has one.
fn class_name(c: &ClassTuple, n: u64) -> Option<String> {
    let n = n as i64;
    (n - 1..=n + 1)
        .find(|k| *c == ClassTuple::b_upper(*k))
        .map(|k| format!("B^U_{k}"))
        .or_else(|| (*c == ClassTuple::e_one(n)).then(|| format!("E^1_{n}")))
}

fn class_value(c: &ClassTuple) -> Value {
    let mut v = to_value(c);
    v["text"] = json!(c.to_string());
    if let Some(center) = c.center() {
        v["center"] = json!(rational_text(&center));
    }
    v
}

fn class_cmd(c: ClassCmd) -> CmdResult {
    match c {
        ClassCmd::FromCenter { center: s } => {
            let (p, q) = center(&s)?;
            let c = class_from_center(&p, &q)?;
            Done::info(json!({ "class": class_value(&c) }))
        }
        ClassCmd::ApplySym { word, center: s } => {
            let w = sym(&word)?;
            let (p, q) = center(&s)?;
            let c = class_from_center(&p, &q)?;
            let image = apply_sym(w, &c)?;
            Done::info(json!({ "word": w.to_string(), "class": class_value(&c), "image": class_value(&image) }))
        }
    }
}

fn triple_value(t: &staircase_core::family::Triple) -> std::result::Result<Value, Failure> {
    let check = t.check()?;
    Ok(json!({
        "left": class_value(&t.left),
        "mid": class_value(&t.mid),
        "right": class_value(&t.right),
        "quasi": t.quasi,
        "check": to_value(&check),
    }))
}

fn triple_cmd(t: TripleCmd) -> CmdResult {
    match t {
        TripleCmd::At { label: s } => {
            let lbl = label(&s)?;
            let t = triple_at_label(&lbl)?;
            Done::info(json!({ "label": lbl.to_string(), "triple": triple_value(&t)? }))
        }
        TripleCmd::Mutate { side, label: s } => {
            let mv: Move = side.parse().map_err(|e: Error| usage(e.to_string()))?;
            let lbl = label(&s)?;
            let t = triple_at_label(&lbl)?;
            let m = t.mutate(mv)?;
            Done::info(json!({
                "label": lbl.to_string(),
                "move": side,
                "triple": triple_value(&t)?,
                "mutated": triple_value(&m)?,
            }))
        }
    }
}

fn staircase_cmd(a: StaircaseArgs) -> CmdResult {
    let lbl = label(&a.label)?;
    let dir: Direction = a.side.parse().map_err(|e: Error| usage(e.to_string()))?;
    let t = triple_at_label(&lbl)?;
    let s = match dir {
        Direction::Ascending => t.ascending(),
        Direction::Descending => t.descending(),
    };
    let steps = s.steps(a.count)?;
    let (z, b) = s.limit()?;
    Done::info(json!({
        "label": lbl.to_string(),
        "side": dir.to_string(),
        "nu": s.nu.to_string(),
        "blocking": s.blocking.as_ref().map(class_value),
        "steps": steps.iter().map(class_value).collect::<Vec<_>>(),
        "limit_z": to_value(&z),
        "limit_b": to_value(&b),
    }))
}

/// Tree index whose interval `[2n+6, 2n+8]` reaches `z`, plus a margin.
fn default_nmax(z: &Rational) -> u64 {
    let k = ((z - Rational::from_integer(6.into())) / Rational::from_integer(2.into())).ceil().to_integer();
    let k: u64 = k.try_into().unwrap_or(0);
    k.max(2) + 1
}

fn owner_value(lc: &staircase_core::block::LabelledClass) -> Value {
    json!({
        "label": lc.label.to_string(),
        "name": class_name(&lc.class, lc.label.n),
        "class": class_value(&lc.class),
    })
}

fn blocked_cmd(b: BlockedCmd) -> CmdResult {
    match b {
        BlockedCmd::Z { z, eps, level, nmax } => {
            let z = rat(&z)?;
            let eps: Eps = eps.parse().map_err(|e: Error| usage(e.to_string()))?;
            let nmax = nmax.unwrap_or_else(|| default_nmax(&z));
            let pool = class_pool(nmax, level, &scan_families(Some(eps)))?;
            let owner = find_blocking(&z, &pool);
            Done::info(json!({
                "z": rational_text(&z),
                "eps": eps,
                "level": level,
                "nmax": nmax,
                "pool_size": pool.len(),
                "blocked": owner.is_some(),
                "owner": owner.map(owner_value),
            }))
        }
        BlockedCmd::B { b, level, nmax } => {
            let b = rat(&b)?;
            let pool = class_pool(nmax, level, &scan_families(None))?;
            let owners = find_blocking_b(&b, &pool);
            Done::info(json!({
                "b": rational_text(&b),
                "level": level,
                "nmax": nmax,
                "pool_size": pool.len(),
                "blocked": !owners.is_empty(),
                "owners": owners.into_iter().map(owner_value).collect::<Vec<_>>(),
            }))
        }
    }
}

fn interval_cmd(a: IntervalArgs) -> CmdResult {
    let lbl = label(&a.label)?;
    let c = class_at_label(&lbl)?;
    let iv = blocked_interval(&c, &lbl)?;
    let mut payload = json!({ "label": lbl.to_string(), "interval": to_value(&iv) });
    if let Some(tol) = a.bisect {
        let tol = rat(&tol)?;
        payload["bisect"] = to_value(&blocked_interval_bisect(&c, &tol)?);
    }
    Done::info(payload)
}

/// Evenly spaced rationals on `[lo, hi]` plus the pool centers inside it.
fn sample_grid(lo: &Rational, hi: &Rational, samples: usize, centers: &[Rational]) -> Vec<Rational> {
    let steps = Rational::from_integer(BigInt::from(samples - 1));
    let mut grid: Vec<Rational> = (0..samples)
        .map(|i| lo + (hi - lo) * Rational::from_integer(BigInt::from(i)) / &steps)
        .chain(centers.iter().filter(|c| lo <= *c && *c <= hi).cloned())
        .collect();
    grid.sort();
    grid.dedup();
    grid
}

fn capacity_cmd(a: CapacityArgs) -> CmdResult {
    let b = rat(&a.b)?;
    let (lo, hi) = (rat(&a.z_from)?, rat(&a.z_to)?);
    if a.samples < 2 {
        return Err(usage("--samples must be at least 2"));
    }
    if lo >= hi {
        return Err(usage("--z-from must be below --z-to"));
    }
    let w = sym(&a.sym)?;
    let nmax = default_nmax(&hi);
    let mut pool: Vec<PoolEntry> = Vec::new();
    let mut centers = Vec::new();
    if a.pool_level > 0 {
        for n in 0..=nmax {
            match enumerate_tree(n, a.pool_level, w) {
                Ok(nodes) => centers.extend(nodes.iter().filter(|nd| !nd.class.formal).filter_map(|nd| nd.class.center())),
                Err(Error::OutOfDomain(_)) | Err(Error::InvalidTriple(_)) => continue,
                Err(e) => return Err(e.into()),
            }
            pool.extend(tree_pool(n, a.pool_level, w)?);
        }
    }
    if a.special {
        pool.push(PoolEntry::exc("special", special_exc_class()));
    }
    let grid = sample_grid(&lo, &hi, a.samples, &centers);
    let rows: Vec<Value> = grid
        .par_iter()
        .map(|z| {
            let pt = capacity_lower(&b, z, &pool)?;
            Ok(json!({
                "z": rational_text(z),
                "z_decimal": decimal(z),
                "volume_decimal": pt.volume.to_decimal(DEFAULT_DIGITS),
                "c_lower_decimal": pt.value.to_decimal(DEFAULT_DIGITS),
                "argmax_id": pt.argmax,
            }))
        })
        .collect::<staircase_core::Result<_>>()?;
    let payload = json!({
        "b": rational_text(&b),
        "pool": { "sym": w.to_string(), "n": [0, nmax], "level": a.pool_level, "size": pool.len(), "special": a.special },
        "rows": rows,
    });
    let csv = (a.format == Format::Csv).then(|| profile_csv(&rows));
    Ok(Done { status: Status::Info, payload, csv })
}

const PROFILE_COLUMNS: [&str; 5] = ["z", "z_decimal", "volume_decimal", "c_lower_decimal", "argmax_id"];

fn profile_csv(rows: &[Value]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(PROFILE_COLUMNS).expect("in-memory write");
    for r in rows {
        let rec: Vec<&str> = PROFILE_COLUMNS.iter().map(|k| r[*k].as_str().unwrap_or("")).collect();
        w.write_record(rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn tree_cmd(a: TreeArgs) -> CmdResult {
    if a.level == 0 {
        return Err(usage("--level must be at least 1"));
    }
    if a.format != Format::Json {
        return Err(usage("tree supports --format json only"));
    }
    let w = sym(&a.sym)?;
    let nodes = enumerate_tree(a.n, a.level, w)?;
    let out: Vec<Value> = nodes
        .par_iter()
        .map(|nd| {
            let interval = if nd.class.formal { None } else { blocked_interval(&nd.class, &nd.label).ok() };
            json!({
                "label": nd.label.to_string(),
                "addr": nd.label.addr.to_string(),
                "level": nd.level,
                "name": class_name(&nd.class, a.n),
                "class": class_value(&nd.class),
                "cs_length": nd.cs_length,
                "parent": nd.parent,
                "interval": interval.map(|iv| json!({
                    "z_lo": to_value(&iv.z_lo),
                    "z_hi": to_value(&iv.z_hi),
                    "b_lo": to_value(&iv.b_lo),
                    "b_hi": to_value(&iv.b_hi),
                })),
            })
        })
        .collect();
    Done::info(json!({ "n": a.n, "level": a.level, "sym": w.to_string(), "count": out.len(), "nodes": out }))
}

fn verify_cmd(a: VerifyArgs) -> CmdResult {
    if a.suite.eq_ignore_ascii_case("all") {
        let (status, reports) = suites::run_all();
        return Ok(Done { status, payload: json!({ "suites": reports }), csv: None });
    }
    let suite: Suite = a.suite.parse().map_err(|e: Error| usage(e.to_string()))?;
    let rep = if suite == Suite::Noasc {
        suites::noasc(a.imax).unwrap_or_else(|e| suites::SuiteReport {
            name: suite.name().into(),
            status: Status::Fail,
            payload: json!({ "error": e.to_string() }),
        })
    } else {
        suite.run()
    };
    Ok(Done { status: rep.status, payload: to_value(&rep), csv: None })
}
