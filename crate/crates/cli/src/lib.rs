//! The `fchain` command line: every library operation as a subcommand, JSON
//! on standard output by default and plain tables with `--pretty`.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error, 3 cap exceeded.

pub mod svg;

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use fchain::cutproject::{enumerate_window_lines, is_singular, render_tiling, CutError, CutLine};
use fchain::golden::GoldenError;
use fchain::ktheory::{
    cone_member_finite, cone_member_limit, leaf_equivalent, prefix_equiv_rn, rotation_orbit,
    tail_equiv, BratteliDiagram, K0Element, KTheoryError,
};
use fchain::partition::{InterceptIndex, PartitionError};
use fchain::substitution::{IndexOutcome, SubstitutionError};
use fchain::{
    build_partition, cut_window, fixed_word, golden_power, index_from_intercept, index_prefix,
    strip_chain, GoldenRational, IndexPrefix, SingularPolicy, Word,
};

pub const SCHEMA: &str = "fchain/1";

const MAX_STEPS: usize = 30;
const MAX_LETTERS: u64 = 1_000_000;
const MAX_PARTITION_LEVEL: usize = 25;
const MAX_SYMBOLIC_DEPTH: usize = 20;
const MAX_ITEMS: usize = 100_000;
const MAX_BRATTELI_LEVELS: usize = 500;
const MAX_CONE_LEVEL: usize = 100_000;

#[derive(Parser)]
#[command(
    name = "fchain",
    version,
    about = "Fibonacci chains in exact golden-ratio arithmetic"
)]
struct Cli {
    /// Print human-readable tables instead of JSON
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    /// S then L at a coincidence
    Upper,
    /// L then S at a coincidence
    Lower,
}

impl From<PolicyArg> for SingularPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Upper => SingularPolicy::Upper,
            PolicyArg::Lower => SingularPolicy::Lower,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Descend the partition tower
    Tower,
    /// Inflate a cut window around the origin segment
    Symbolic,
    /// Run both and report whether they agree
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// The word obtained by deflating L the given number of times
    Generate {
        #[arg(long)]
        steps: usize,
    },
    /// Cut procedure for the line y = x/tau + b
    Cut {
        #[arg(long, allow_hyphen_values = true)]
        b: GoldenRational,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        /// Order of coincident crossings; required when the line meets a lattice point
        #[arg(long, value_enum)]
        policy: Option<PolicyArg>,
        /// Crossings to include left of the origin
        #[arg(long, default_value_t = 0)]
        before: u64,
    },
    /// Strip projection through the window [c, c + tau)
    Strip {
        #[arg(long, allow_hyphen_values = true)]
        c: GoldenRational,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// Index prefix (a_0, ..., a_depth) of the origin segment
    #[command(group(ArgGroup::new("source").required(true).args(["b", "b_list", "random"])))]
    Index {
        #[arg(long, allow_hyphen_values = true)]
        b: Option<GoldenRational>,
        /// Comma-separated intercepts, answered in input order
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b_list: Vec<GoldenRational>,
        /// Number of random nonsingular intercepts to draw
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "tower")]
        method: Method,
        /// Coincidence order for the symbolic method on a singular line
        #[arg(long, value_enum)]
        policy: Option<PolicyArg>,
    },
    /// The partition W_n of the intercept interval
    Partition {
        #[arg(long)]
        level: usize,
        /// Also write the tower W_0..W_n as SVG
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Orbit of an irrational rotation of the circle
    Orbit {
        #[arg(long)]
        count: usize,
        /// Starting point (default 2-tau)
        #[arg(long, allow_hyphen_values = true)]
        start: Option<GoldenRational>,
        /// Rotation step (default 1-tau, a rotation by -1/tau)
        #[arg(long, allow_hyphen_values = true)]
        step: Option<GoldenRational>,
    },
    /// Dimension data of the Bratteli diagram
    Bratteli {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        levels: u64,
        /// Print Graphviz DOT instead of JSON
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Positive-cone membership of a + b*tau
    Cone {
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        b: BigInt,
        /// Finite level n >= 1; the limit cone when omitted
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        level: Option<u64>,
    },
    /// Leaf equivalence of intercepts or tail equivalence of index prefixes
    #[command(group(ArgGroup::new("pair").required(true).args(["b1", "z1"])))]
    Equiv {
        #[arg(long, allow_hyphen_values = true, requires = "b2")]
        b1: Option<GoldenRational>,
        #[arg(long, allow_hyphen_values = true, requires = "b1")]
        b2: Option<GoldenRational>,
        #[arg(long, requires = "z2", conflicts_with = "b1")]
        z1: Option<String>,
        #[arg(long, requires = "z1")]
        z2: Option<String>,
    },
    /// Window lines ordered by parallel distance
    Lines {
        #[arg(long)]
        limit: usize,
    },
    /// Lay out a word as an F-lattice
    #[command(group(ArgGroup::new("input").required(true).args(["word", "from_json"])))]
    Render {
        #[arg(long)]
        word: Option<String>,
        /// Read the word from `cut` JSON output; `-` reads standard input
        #[arg(long)]
        from_json: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        origin: f64,
        /// Pixels per unit length in the SVG
        #[arg(long, default_value_t = 100.0)]
        scale: f64,
    },
}

#[derive(Debug)]
enum Failure {
    Domain(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Domain(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<PartitionError> for Failure {
    fn from(e: PartitionError) -> Self {
        match e {
            PartitionError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<KTheoryError> for Failure {
    fn from(e: KTheoryError) -> Self {
        match e {
            KTheoryError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<CutError> for Failure {
    fn from(e: CutError) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<SubstitutionError> for Failure {
    fn from(e: SubstitutionError) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<GoldenError> for Failure {
    fn from(e: GoldenError) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn cap(what: &str, requested: impl std::fmt::Display, limit: impl std::fmt::Display) -> Failure {
    Failure::Cap(format!("{what} {requested} exceeds the cap {limit}"))
}

struct Report {
    command: &'static str,
    json: Value,
    table: String,
}

impl Report {
    fn new(command: &'static str, json: Value, table: String) -> Self {
        Self {
            command,
            json,
            table,
        }
    }
}

/// Output that bypasses the JSON envelope (DOT text).
enum Output {
    Report(Report),
    Raw(String),
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize to JSON")
}

fn show(x: &GoldenRational) -> String {
    format!("{x} ~ {}", x.to_decimal_string(6))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display())))
}

fn parse_word(text: &str) -> Result<Word, Failure> {
    text.parse::<Word>()
        .map_err(|e| Failure::Domain(format!("invalid word: {e}")))
}

fn parse_prefix(text: &str) -> Result<IndexPrefix, Failure> {
    text.parse::<IndexPrefix>()
        .map_err(|e| Failure::Domain(format!("invalid index prefix {text:?}: {e}")))
}

fn singular_without_policy(b: &GoldenRational) -> Failure {
    Failure::Domain(format!(
        "intercept {b} is singular: the line y = x/tau + b passes a lattice point; \
         choose --policy upper (SL at each coincidence) or --policy lower (LS)"
    ))
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let to_stdout = !e.use_stderr();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if to_stdout { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return if to_stdout { 0 } else { 1 };
        }
    };
    let outcome = dispatch(cli.command, stdin);
    let written = match outcome {
        Ok(Output::Raw(text)) => stdout.write_all(text.as_bytes()),
        Ok(Output::Report(report)) if cli.pretty => stdout.write_all(report.table.as_bytes()),
        Ok(Output::Report(report)) => {
            let mut json = report.json;
            if let Value::Object(map) = &mut json {
                map.insert("schema".into(), SCHEMA.into());
                map.insert("command".into(), report.command.into());
            }
            writeln!(stdout, "{json}")
        }
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message());
            return failure.code();
        }
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot write output: {e}");
            2
        }
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Result<Output, Failure> {
    let report = match command {
        Command::Generate { steps } => generate(steps)?,
        Command::Cut {
            b,
            count,
            policy,
            before,
        } => cut(&b, count, policy, before)?,
        Command::Strip { c, count } => strip(&c, count)?,
        Command::Index {
            b,
            b_list,
            random,
            seed,
            depth,
            method,
            policy,
        } => {
            let (inputs, single) = match (b, random) {
                (Some(b), _) => (vec![b], true),
                (None, Some(n)) => (random_intercepts(n, seed)?, false),
                (None, None) => (b_list, false),
            };
            index(&inputs, single, depth, method, policy)?
        }
        Command::Partition { level, svg } => partition(level, svg.as_deref())?,
        Command::Orbit { count, start, step } => orbit(count, start, step)?,
        Command::Bratteli { levels, dot, svg } => {
            let levels = usize::try_from(levels).unwrap_or(usize::MAX);
            if levels > MAX_BRATTELI_LEVELS {
                return Err(cap("levels", levels, MAX_BRATTELI_LEVELS));
            }
            let diagram = BratteliDiagram::new(levels);
            if let Some(path) = svg {
                write_file(&path, &svg::bratteli(&diagram))?;
            }
            if dot {
                return Ok(Output::Raw(diagram.to_dot()));
            }
            bratteli(&diagram)
        }
        Command::Cone { a, b, level } => cone(a, b, level)?,
        Command::Equiv { b1, b2, z1, z2 } => match (b1, b2, z1, z2) {
            (Some(b1), Some(b2), _, _) => equiv_leaf(&b1, &b2),
            (_, _, Some(z1), Some(z2)) => equiv_tail(&z1, &z2)?,
            _ => unreachable!("clap enforces a complete pair"),
        },
        Command::Lines { limit } => lines(limit)?,
        Command::Render {
            word,
            from_json,
            svg,
            origin,
            scale,
        } => {
            let word = match (word, from_json) {
                (Some(w), _) => parse_word(&w)?,
                (None, Some(path)) => word_from_json(&path, stdin)?,
                (None, None) => unreachable!("clap enforces an input"),
            };
            render(&word, origin, scale, svg.as_deref())?
        }
    };
    Ok(Output::Report(report))
}

fn generate(steps: usize) -> Result<Report, Failure> {
    if steps > MAX_STEPS {
        return Err(cap("steps", steps, MAX_STEPS));
    }
    let w = fixed_word(steps);
    let table = format!("steps   {steps}\nlength  {}\nword    {w}\n", w.len());
    let json = json!({ "steps": steps, "length": w.len(), "word": w.to_string() });
    Ok(Report::new("generate", json, table))
}

fn cut(
    b: &GoldenRational,
    count: u64,
    policy: Option<PolicyArg>,
    before: u64,
) -> Result<Report, Failure> {
    if count > MAX_LETTERS || before > MAX_LETTERS {
        return Err(cap("letter count", count.max(before), MAX_LETTERS));
    }
    let singular = CutLine::new(b.clone()).is_singular();
    if singular && policy.is_none() {
        return Err(singular_without_policy(b));
    }
    let chosen = policy.map(SingularPolicy::from);
    let chain = cut_window(
        b,
        before as usize,
        count as usize,
        chosen.unwrap_or(SingularPolicy::Lower),
    )?;
    let mut table = format!(
        "b             {}\nsingular      {singular}\nword          {}\norigin        {}\ncoincidences  {:?}\n\n{:>6}  kind  {:>8}  x\n",
        show(b),
        chain.word,
        chain.origin,
        chain.coincidences,
        "i",
        "grid",
    );
    for (i, e) in chain.events.iter().enumerate() {
        let _ = writeln!(
            table,
            "{i:>6}  {:<4}  {:>8}  {}",
            e.kind,
            e.grid_index,
            show(&e.x)
        );
    }
    let json = json!({
        "b": to_json(b),
        "singular": singular,
        "policy": to_json(&chosen),
        "origin": chain.origin,
        "word": chain.word.to_string(),
        "events": to_json(&chain.events),
        "coincidences": chain.coincidences,
    });
    Ok(Report::new("cut", json, table))
}

fn strip(c: &GoldenRational, count: u64) -> Result<Report, Failure> {
    if count > MAX_LETTERS {
        return Err(cap("letter count", count, MAX_LETTERS));
    }
    let chain = strip_chain(c, count as usize)?;
    let mut table = format!(
        "c     {}\nword  {}\n\n{:>6}  {:>8}  {:>8}\n",
        show(c),
        chain.word,
        "i",
        "r",
        "s"
    );
    for (i, (r, s)) in chain.points.iter().enumerate() {
        let _ = writeln!(table, "{i:>6}  {r:>8}  {s:>8}");
    }
    let json = to_json(&chain);
    Ok(Report::new("strip", json, table))
}

fn random_intercepts(n: usize, seed: u64) -> Result<Vec<GoldenRational>, Failure> {
    if n > MAX_ITEMS {
        return Err(cap("random count", n, MAX_ITEMS));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let den = rng.gen_range(2i64..1000);
        let b = GoldenRational::new(rng.gen_range(-500..500), rng.gen_range(-50..50), den)?.frac();
        if !b.is_zero() && !is_singular(&b) {
            out.push(b);
        }
    }
    Ok(out)
}

fn in_unit_interval(b: &GoldenRational) -> Result<(), Failure> {
    if b.sign() > 0 && b < &GoldenRational::one() {
        Ok(())
    } else {
        Err(Failure::Domain(format!(
            "intercept {b} must lie in the open interval (0, 1)"
        )))
    }
}

/// Letters of context on each side that carry the origin through `depth` inflations.
fn symbolic_context(depth: usize) -> usize {
    let f: usize = fchain::ktheory::fib(depth + 4)
        .try_into()
        .expect("capped depth");
    (4 * f).max(64)
}

fn symbolic_index(
    b: &GoldenRational,
    depth: usize,
    policy: Option<PolicyArg>,
) -> Result<IndexPrefix, Failure> {
    if depth > MAX_SYMBOLIC_DEPTH {
        return Err(cap("symbolic depth", depth, MAX_SYMBOLIC_DEPTH));
    }
    if is_singular(b) && policy.is_none() {
        return Err(singular_without_policy(b));
    }
    let policy = policy.map_or(SingularPolicy::Lower, SingularPolicy::from);
    let context = symbolic_context(depth);
    let w = cut_window(b, context, context, policy)?;
    match index_prefix(&w.word, w.origin, depth)? {
        IndexOutcome::Defined(p) => Ok(p),
        IndexOutcome::Undefined { level, .. } => Err(Failure::Domain(format!(
            "origin segment of {b} left the cut window at inflation level {level}"
        ))),
    }
}

fn index_one(
    b: &GoldenRational,
    depth: usize,
    method: Method,
    policy: Option<PolicyArg>,
) -> Result<(Value, String), Failure> {
    in_unit_interval(b)?;
    let tower = if method == Method::Symbolic {
        None
    } else {
        Some(index_from_intercept(b, depth)?)
    };
    let on_boundary = matches!(tower, Some(InterceptIndex::SingularBoundary(_)));
    let symbolic = if method == Method::Tower || (on_boundary && policy.is_none()) {
        None
    } else {
        Some(symbolic_index(b, depth, policy)?)
    };
    let mut obj = json!({ "b": to_json(b) });
    let mut line = format!("{:<28}", b.to_string());
    let (prefix, boundary) = match &tower {
        Some(InterceptIndex::Prefix(p)) => (Some(p.clone()), None),
        Some(InterceptIndex::SingularBoundary(l)) => (None, Some(*l)),
        None => (symbolic.clone(), None),
    };
    obj["prefix"] = to_json(&prefix.as_ref().map(ToString::to_string));
    obj["singular_boundary"] = to_json(&boundary);
    match (&prefix, boundary) {
        (Some(p), _) => line.push_str(&p.to_string()),
        (None, Some(l)) => {
            let _ = write!(line, "boundary created at level {l}");
        }
        (None, None) => {}
    }
    if method == Method::Both {
        // a tower boundary has no prefix to compare against
        let sym = symbolic.as_ref().map(ToString::to_string);
        let agree = prefix.as_ref().zip(symbolic.as_ref()).map(|(p, s)| p == s);
        obj["symbolic"] = to_json(&sym);
        obj["agree"] = to_json(&agree);
        if let (Some(sym), Some(agree)) = (sym, agree) {
            let _ = write!(line, "  symbolic {sym}  agree {agree}");
        }
    }
    line.push('\n');
    Ok((obj, line))
}

fn index(
    inputs: &[GoldenRational],
    single: bool,
    depth: usize,
    method: Method,
    policy: Option<PolicyArg>,
) -> Result<Report, Failure> {
    let method_name = match method {
        Method::Tower => "tower",
        Method::Symbolic => "symbolic",
        Method::Both => "both",
    };
    let mut results = Vec::with_capacity(inputs.len());
    let mut table = format!("depth {depth}, method {method_name}\n");
    for b in inputs {
        let (obj, line) = index_one(b, depth, method, policy)?;
        results.push(obj);
        table.push_str(&line);
    }
    let json = if single {
        let mut obj = results.pop().expect("one input");
        obj["depth"] = depth.into();
        obj["method"] = method_name.into();
        obj
    } else {
        json!({ "depth": depth, "method": method_name, "results": results })
    };
    Ok(Report::new("index", json, table))
}

fn partition(level: usize, svg_path: Option<&Path>) -> Result<Report, Failure> {
    if level > MAX_PARTITION_LEVEL {
        return Err(cap("partition level", level, MAX_PARTITION_LEVEL));
    }
    let w = build_partition(level)?;
    if let Some(path) = svg_path {
        let levels = (0..=level)
            .map(build_partition)
            .collect::<Result<Vec<_>, _>>()?;
        write_file(path, &svg::tower(&levels, 800.0))?;
    }
    let mut table = format!(
        "W{level}: {} intervals\n\n{:<4}  {:<24}  {:<24}  path\n",
        w.intervals.len(),
        "kind",
        "lo",
        "hi"
    );
    for i in &w.intervals {
        let _ = writeln!(
            table,
            "{:<4}  {:<24}  {:<24}  {}",
            i.kind,
            show(&i.lo),
            show(&i.hi),
            i.path
        );
    }
    Ok(Report::new("partition", to_json(&w), table))
}

fn orbit(
    count: usize,
    start: Option<GoldenRational>,
    step: Option<GoldenRational>,
) -> Result<Report, Failure> {
    if count > MAX_ITEMS {
        return Err(cap("orbit length", count, MAX_ITEMS));
    }
    let start = start.unwrap_or_else(|| golden_power(-2));
    let step = step.unwrap_or_else(|| -GoldenRational::tau_inv());
    let points = rotation_orbit(&start, count, &step);
    let mut table = format!("start {}\nstep  {}\n\n", show(&start), show(&step));
    for (k, p) in points.iter().enumerate() {
        let _ = writeln!(table, "{k:>6}  {}", show(p));
    }
    let json =
        json!({ "start": to_json(&start), "step": to_json(&step), "points": to_json(&points) });
    Ok(Report::new("orbit", json, table))
}

fn bratteli(diagram: &BratteliDiagram) -> Report {
    let mut table = format!("{:>4}  {:>12}  {:>12}\n", "n", "kL", "kS");
    for v in &diagram.levels {
        let _ = writeln!(table, "{:>4}  {:>12}  {:>12}", v.level, v.k, v.k_prime);
    }
    table.push_str("edges L<-L, L<-S, S<-L\n");
    Report::new("bratteli", to_json(diagram), table)
}

fn cone(a: BigInt, b: BigInt, level: Option<u64>) -> Result<Report, Failure> {
    let e = K0Element::new(a, b);
    let level = level.map(|n| usize::try_from(n).unwrap_or(usize::MAX));
    if let Some(n) = level {
        if n > MAX_CONE_LEVEL {
            return Err(cap("cone level", n, MAX_CONE_LEVEL));
        }
    }
    let value = e.value();
    let member = match level {
        Some(n) => cone_member_finite(n, &e),
        None => cone_member_limit(&e),
    };
    let sign = match value.sign() {
        1 => "+",
        -1 => "-",
        _ => "0",
    };
    let cone_name = level.map_or("limit".to_string(), |n| format!("level {n}"));
    let table = format!(
        "element  {e} = {}\nsign     {sign}\ncone     {cone_name}\nmember   {member}\n",
        show(&value)
    );
    let mut json = to_json(&e);
    json["level"] = to_json(&level);
    json["member"] = member.into();
    json["sign"] = sign.into();
    Ok(Report::new("cone", json, table))
}

fn equiv_leaf(b1: &GoldenRational, b2: &GoldenRational) -> Report {
    let same = leaf_equivalent(b1, b2);
    let diff = b1 - b2;
    let table = format!(
        "b1 - b2          {}\nleaf equivalent  {same}\n",
        show(&diff)
    );
    let json = json!({ "b1": to_json(b1), "b2": to_json(b2), "difference": to_json(&diff), "leaf_equivalent": same });
    Report::new("equiv", json, table)
}

fn equiv_tail(z1: &str, z2: &str) -> Result<Report, Failure> {
    let (z1, z2) = (parse_prefix(z1)?, parse_prefix(z2)?);
    let rn = prefix_equiv_rn(&z1, &z2)?;
    let tail = tail_equiv(&z1, &z2)?;
    let table = format!("z1    {z1}\nz2    {z2}\nR_n   {rn}\ntail  {tail:?}\n");
    let json =
        json!({ "z1": z1.to_string(), "z2": z2.to_string(), "rn": rn, "tail": to_json(&tail) });
    Ok(Report::new("equiv", json, table))
}

fn lines(limit: usize) -> Result<Report, Failure> {
    if limit > MAX_ITEMS {
        return Err(cap("line count", limit, MAX_ITEMS));
    }
    let ls = enumerate_window_lines(limit);
    let mut table = format!("{:>4}  {:>8}  {:>8}  {:<28}  d\n", "k", "r", "s", "u");
    for (k, l) in ls.iter().enumerate() {
        let _ = writeln!(
            table,
            "{:>4}  {:>8}  {:>8}  {:<28}  {}",
            k + 1,
            l.r,
            l.s,
            show(&l.intercept),
            show(&l.distance)
        );
    }
    Ok(Report::new(
        "lines",
        json!({ "lines": to_json(&ls) }),
        table,
    ))
}

fn word_from_json(path: &Path, stdin: &mut dyn Read) -> Result<Word, Failure> {
    let mut text = String::new();
    let read = if path == Path::new("-") {
        stdin.read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Domain(format!("input is not JSON: {e}")))?;
    let word = value
        .get("word")
        .and_then(Value::as_str)
        .ok_or_else(|| Failure::Domain("input JSON has no \"word\" string".into()))?;
    let word = parse_word(word)?;
    if let Some(events) = value.get("events").and_then(Value::as_array) {
        let kinds: Option<String> = events
            .iter()
            .map(|e| e.get("kind").and_then(Value::as_str))
            .collect();
        if kinds.as_deref() != Some(word.to_string().as_str()) {
            return Err(Failure::Domain("event kinds disagree with the word".into()));
        }
    }
    Ok(word)
}

fn render(
    word: &Word,
    origin: f64,
    scale: f64,
    svg_path: Option<&Path>,
) -> Result<Report, Failure> {
    if word.len() > MAX_ITEMS {
        return Err(cap("word length", word.len(), MAX_ITEMS));
    }
    let tiles = render_tiling(word, origin);
    if let Some(path) = svg_path {
        write_file(path, &svg::tiling(&tiles, origin, scale))?;
    }
    let mut table = format!("{:>6}  kind  {:>12}  {:>10}\n", "i", "start", "length");
    for (i, t) in tiles.iter().enumerate() {
        let _ = writeln!(
            table,
            "{i:>6}  {:<4}  {:>12.6}  {:>10.6}",
            t.kind, t.start, t.length
        );
    }
    let json = json!({ "word": word.to_string(), "origin": origin, "tiles": to_json(&tiles) });
    Ok(Report::new("render", json, table))
}
