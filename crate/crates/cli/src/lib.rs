//! The `omlab` command line: axiom checks, generators, minors, duals,
//! conformal decompositions and digraph certificates over plain-text files.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use omlab_core::digraph::{graphic_om, minty_certificate};
use omlab_core::format::{
    emit_certificate, emit_lines, emit_om, emit_pair, parse_digraph, parse_lines, parse_om, OmFile,
};
use omlab_core::generators::uniform_alt;
use omlab_core::oriented::{
    check_4p, check_ce, check_fa, check_fp, check_orthogonality, conformal_decompose,
    derive_cocircuit_signature, induced_sets, induced_signature, Derivation, InducedMode,
    DEFAULT_CAP_4P, DEFAULT_CAP_CE, DEFAULT_CAP_FA,
};
use omlab_core::realizations::{is_free, neat_prefix, u3_signature, LineSet};
use omlab_core::{
    CheckOptions, CheckResult, Coverage, Error, MinorSpec, SignedSubset, ValidationOptions, Verdict,
};

pub const CAPS_ENV: &str = "OMLAB_CAPS";

#[derive(Parser, Debug)]
#[command(name = "omlab", version, about = "Check and construct finite oriented matroids")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run axiom checks on an oriented-matroid file
    Check(CheckArgs),
    /// Generate an oriented-matroid file
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Complete a file holding signed circuits with its cocircuit signature
    Derive {
        file: PathBuf,
        #[arg(long)]
        trusted: bool,
    },
    /// Induced signatures of a minor
    Minor {
        file: PathBuf,
        /// Comma-separated labels to contract
        #[arg(long, default_value = "")]
        contract: String,
        /// Comma-separated labels to delete
        #[arg(long, default_value = "")]
        delete: String,
        /// Which induced sets to emit; non-strict modes print raw sets
        #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
        mode: ModeArg,
        #[arg(long)]
        trusted: bool,
    },
    /// Directed cycle or directed bond through an arc
    Farkas {
        digraph: PathBuf,
        /// Arc label
        arc: String,
    },
    /// Write a vector as a composition of conforming signed circuits
    Decompose {
        file: PathBuf,
        /// Sign-vector string over the ground set
        vector: String,
        #[arg(long)]
        trusted: bool,
    },
    /// Swap circuits and cocircuits
    Dual {
        file: PathBuf,
        #[arg(long)]
        trusted: bool,
    },
}

#[derive(Subcommand, Debug)]
enum GenKind {
    /// Rank-2 alternating pair on 1..n
    UniformAlt { n: usize },
    /// Pair of a free line set read from a file
    Lines { file: PathBuf },
    /// Pair of a digraph read from a file
    Graphic { file: PathBuf },
    /// Pair of a seeded prefix of the line-placement recursion
    NeatPrefix {
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Emit the line set instead of the pair
        #[arg(long)]
        lines: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Strict,
    VectorRestrictions,
    Unfiltered,
}

#[derive(Args, Debug)]
struct CheckArgs {
    file: PathBuf,
    /// Comma-separated subset of O, CE, 4P, FP, FA
    #[arg(long)]
    only: Option<String>,
    /// Key:value report
    #[arg(long)]
    structured: bool,
    #[arg(long)]
    cap_4p: Option<usize>,
    #[arg(long)]
    cap_ce: Option<usize>,
    #[arg(long)]
    cap_fa: Option<usize>,
    /// Sample this many random instances when a check is above its cap
    #[arg(long, requires = "seed")]
    sample: Option<usize>,
    #[arg(long, requires = "sample")]
    seed: Option<u64>,
    /// Skip circuit-elimination validation of the underlying matroid
    #[arg(long)]
    trusted: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckName {
    O,
    Ce,
    FourP,
    Fp,
    Fa,
}

impl CheckName {
    pub const ALL: [CheckName; 5] = [CheckName::O, CheckName::Ce, CheckName::FourP, CheckName::Fp, CheckName::Fa];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::O => "O",
            CheckName::Ce => "CE",
            CheckName::FourP => "4P",
            CheckName::Fp => "FP",
            CheckName::Fa => "FA",
        }
    }

    fn parse(s: &str) -> Option<CheckName> {
        CheckName::ALL.into_iter().find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub name: CheckName,
    pub passed: bool,
    pub witness: Option<String>,
    pub coverage: String,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub subject: String,
    pub checks: Vec<CheckLine>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self, structured: bool) -> String {
        let mut out = String::new();
        let verdict = if self.passed() { "pass" } else { "fail" };
        if structured {
            writeln!(out, "subject: {}", self.subject).unwrap();
            for c in &self.checks {
                let k = c.name.as_str();
                writeln!(out, "{k}.result: {}", if c.passed { "pass" } else { "fail" }).unwrap();
                writeln!(out, "{k}.coverage: {}", c.coverage).unwrap();
                writeln!(out, "{k}.elapsed_ms: {:.3}", c.elapsed_ms).unwrap();
                writeln!(out, "{k}.witness: {}", c.witness.as_deref().unwrap_or("-")).unwrap();
            }
            writeln!(out, "verdict: {verdict}").unwrap();
        } else {
            writeln!(out, "{}", self.subject).unwrap();
            for c in &self.checks {
                writeln!(
                    out,
                    "  {:<3} {}  ({}, {:.1} ms)",
                    c.name.as_str(),
                    if c.passed { "pass" } else { "FAIL" },
                    c.coverage,
                    c.elapsed_ms
                )
                .unwrap();
                if let Some(w) = &c.witness {
                    writeln!(out, "      witness: {w}").unwrap();
                }
            }
            writeln!(out, "verdict: {verdict}").unwrap();
        }
        out
    }
}

/// Why a command stopped: exit code 1 for a failed check or operation,
/// 2 for usage, parse and cap errors.
#[derive(Debug)]
enum Failure {
    Failed(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Failed(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Failed(m) | Failure::Usage(m) => m,
        }
    }
}

fn from_core(path: Option<&Path>, e: Error) -> Failure {
    let prefix = path.map(|p| format!("{}: ", p.display())).unwrap_or_default();
    let msg = format!("{prefix}{e}");
    match e {
        Error::Parse { .. } | Error::CapExceeded { .. } | Error::UnknownElement(_) | Error::GroundMismatch => {
            Failure::Usage(msg)
        }
        _ => Failure::Failed(msg),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_om(path: &Path, trusted: bool) -> Result<OmFile, Failure> {
    let text = read(path)?;
    let opts = ValidationOptions {
        trusted,
        ..ValidationOptions::default()
    };
    parse_om(&text, opts).map_err(|e| from_core(Some(path), e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub four_painting: usize,
    pub elimination: usize,
    pub farkas: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            four_painting: DEFAULT_CAP_4P,
            elimination: DEFAULT_CAP_CE,
            farkas: DEFAULT_CAP_FA,
        }
    }
}

/// Parses `4p=N,ce=N,fa=N` (any subset, any order) over the defaults.
pub fn parse_caps_env(value: &str) -> Result<Caps, String> {
    let mut caps = Caps::default();
    for part in value.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("{CAPS_ENV}: expected key=value, found `{part}`"))?;
        let v: usize = v
            .trim()
            .parse()
            .map_err(|_| format!("{CAPS_ENV}: `{v}` is not a number"))?;
        match k.trim().to_ascii_lowercase().as_str() {
            "4p" => caps.four_painting = v,
            "ce" => caps.elimination = v,
            "fa" => caps.farkas = v,
            other => return Err(format!("{CAPS_ENV}: unknown cap `{other}` (use 4p, ce or fa)")),
        }
    }
    Ok(caps)
}

fn coverage_text(c: &Coverage) -> String {
    match c {
        Coverage::Exhaustive => "exhaustive".to_string(),
        Coverage::Sampled { trials, seed } => format!("sampled trials={trials} seed={seed}"),
    }
}

fn line<W>(name: CheckName, start: Instant, r: CheckResult<W>, describe: impl Fn(&W) -> String) -> CheckLine {
    CheckLine {
        name,
        passed: r.holds(),
        witness: r.witness().map(describe),
        coverage: coverage_text(&r.coverage),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn run_check(args: &CheckArgs, caps_env: Option<&str>) -> Result<CheckReport, Failure> {
    let mut caps = match caps_env {
        Some(v) => parse_caps_env(v).map_err(Failure::Usage)?,
        None => Caps::default(),
    };
    if let Some(c) = args.cap_4p {
        caps.four_painting = c;
    }
    if let Some(c) = args.cap_ce {
        caps.elimination = c;
    }
    if let Some(c) = args.cap_fa {
        caps.farkas = c;
    }
    let which: BTreeSet<CheckName> = match &args.only {
        None => CheckName::ALL.into_iter().collect(),
        Some(list) => list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| CheckName::parse(s).ok_or_else(|| Failure::Usage(format!("unknown check `{}`", s.trim()))))
            .collect::<Result<_, _>>()?,
    };
    let options = |cap: usize| {
        let o = CheckOptions::with_cap(cap);
        match (args.sample, args.seed) {
            (Some(n), Some(s)) => o.sampled(n, s),
            _ => o,
        }
    };
    let path = args.file.as_path();
    let pair = load_om(path, args.trusted)?
        .pair()
        .map_err(|e| from_core(Some(path), e))?;
    let ground = pair.ground().clone();
    let core = |e: Error| from_core(Some(path), e);
    let mut checks = Vec::new();
    for name in which {
        let start = Instant::now();
        let l = match name {
            CheckName::O => {
                let v = check_orthogonality(&pair);
                let r = CheckResult {
                    verdict: v,
                    coverage: Coverage::Exhaustive,
                };
                line(name, start, r, |w| w.describe())
            }
            CheckName::Ce => {
                let opts = options(caps.elimination);
                let c = check_ce(pair.circuits(), &opts).map_err(core)?;
                if !c.holds() {
                    line(name, start, c, |w| format!("circuits: {}", w.describe(&ground)))
                } else {
                    let u = check_ce(pair.cocircuits(), &opts).map_err(core)?;
                    line(name, start, u, |w| format!("cocircuits: {}", w.describe(&ground)))
                }
            }
            CheckName::FourP => {
                let r = check_4p(&pair, &options(caps.four_painting)).map_err(core)?;
                line(name, start, r, |w| w.describe(&ground))
            }
            CheckName::Fp => {
                let v = check_fp(&ground, &pair.circuits().signed_subsets(), &pair.cocircuits().signed_subsets())
                    .map_err(core)?;
                let r = CheckResult {
                    verdict: v,
                    coverage: Coverage::Exhaustive,
                };
                line(name, start, r, |w| w.describe(&ground))
            }
            CheckName::Fa => {
                let r = check_fa(&pair, &options(caps.farkas)).map_err(core)?;
                line(name, start, r, |w| w.describe(&ground))
            }
        };
        checks.push(l);
    }
    Ok(CheckReport {
        subject: path.display().to_string(),
        checks,
    })
}

fn lines_pair(q: &LineSet) -> Result<String, Failure> {
    if let Verdict::Violated([a, b, c]) = is_free(q) {
        return Err(Failure::Failed(format!(
            "line set is not free: lines {}, {}, {} are coplanar",
            a + 1,
            b + 1,
            c + 1
        )));
    }
    let pair = u3_signature(q).map_err(|e| from_core(None, e))?;
    Ok(emit_pair(&pair))
}

fn run_gen(kind: &GenKind) -> Result<String, Failure> {
    match kind {
        GenKind::UniformAlt { n } => {
            let p = uniform_alt(*n).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(emit_pair(&p))
        }
        GenKind::Lines { file } => {
            let q = parse_lines(&read(file)?).map_err(|e| from_core(Some(file), e))?;
            lines_pair(&q)
        }
        GenKind::Graphic { file } => {
            let d = parse_digraph(&read(file)?).map_err(|e| from_core(Some(file), e))?;
            let p = graphic_om(&d).map_err(|e| from_core(Some(file), e))?;
            Ok(emit_pair(&p))
        }
        GenKind::NeatPrefix { n, seed, lines } => {
            let q = neat_prefix(*n, *seed).map_err(|e| from_core(None, e))?;
            let body = if *lines { emit_lines(&q) } else { lines_pair(&q)? };
            Ok(format!("# neat-prefix n={n} seed={seed}\n{body}"))
        }
    }
}

fn label_set(ground: &omlab_core::GroundSet, list: &str) -> Result<omlab_core::ElementSet, Failure> {
    ground
        .set_of(list.split(',').map(str::trim).filter(|s| !s.is_empty()))
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run_command(cli: &Cli, caps_env: Option<&str>) -> Result<(String, i32), Failure> {
    match &cli.command {
        Command::Check(args) => {
            let report = run_check(args, caps_env)?;
            let code = if report.passed() { 0 } else { 1 };
            Ok((report.render(args.structured), code))
        }
        Command::Gen { kind } => Ok((run_gen(kind)?, 0)),
        Command::Derive { file, trusted } => {
            let f = load_om(file, *trusted)?;
            let cs = f
                .circuits
                .clone()
                .ok_or_else(|| Failure::Usage(format!("{}: no [signed-circuits] section", file.display())))?;
            match derive_cocircuit_signature(&cs).map_err(|e| from_core(Some(file), e))? {
                Derivation::Derived(us) => {
                    let out = OmFile {
                        cocircuits: Some(us),
                        ..f
                    };
                    Ok((emit_om(&out), 0))
                }
                Derivation::Failed(v) => Err(Failure::Failed(format!(
                    "no orthogonal cocircuit signature exists: {}",
                    v.describe()
                ))),
            }
        }
        Command::Minor {
            file,
            contract,
            delete,
            mode,
            trusted,
        } => {
            let pair = load_om(file, *trusted)?
                .pair()
                .map_err(|e| from_core(Some(file), e))?;
            let spec = MinorSpec::new(label_set(pair.ground(), contract)?, label_set(pair.ground(), delete)?);
            spec.validate(pair.ground()).map_err(|e| Failure::Usage(e.to_string()))?;
            let induced = match mode {
                ModeArg::Strict => {
                    let q = induced_signature(&pair, &spec).map_err(|e| from_core(Some(file), e))?;
                    return Ok((emit_pair(&q), 0));
                }
                ModeArg::VectorRestrictions => InducedMode::VectorRestrictions,
                ModeArg::Unfiltered => InducedMode::Unfiltered,
            };
            let (s, t) = induced_sets(&pair, &spec, induced).map_err(|e| from_core(Some(file), e))?;
            let mut out = String::new();
            let ground = pair.ground().subset(spec.kept(pair.ground()));
            writeln!(out, "{}", ground.labels().join(" ")).unwrap();
            writeln!(out, "[induced-circuits]").unwrap();
            for x in &s {
                writeln!(out, "{x}").unwrap();
            }
            writeln!(out, "[induced-cocircuits]").unwrap();
            for x in &t {
                writeln!(out, "{x}").unwrap();
            }
            Ok((out, 0))
        }
        Command::Farkas { digraph, arc } => {
            let d = parse_digraph(&read(digraph)?).map_err(|e| from_core(Some(digraph), e))?;
            let a = d.ground().index_of(arc).map_err(|e| Failure::Usage(e.to_string()))?;
            let c = minty_certificate(&d, a).map_err(|e| from_core(Some(digraph), e))?;
            Ok((emit_certificate(&d, &c), 0))
        }
        Command::Decompose { file, vector, trusted } => {
            let pair = load_om(file, *trusted)?
                .pair()
                .map_err(|e| from_core(Some(file), e))?;
            let x = SignedSubset::parse(pair.ground(), vector).map_err(|e| Failure::Usage(e.to_string()))?;
            match conformal_decompose(&pair, &x) {
                Ok(parts) => {
                    let mut out = String::new();
                    for p in parts {
                        writeln!(out, "{p}").unwrap();
                    }
                    Ok((out, 0))
                }
                Err(f) => Err(Failure::Failed(f.describe(&pair))),
            }
        }
        Command::Dual { file, trusted } => {
            let f = load_om(file, *trusted)?;
            let out = OmFile {
                matroid: f.matroid.dual(),
                circuits: f.cocircuits,
                cocircuits: f.circuits,
            };
            Ok((emit_om(&out), 0))
        }
    }
}

/// Runs the command line `args` (program name first), writing the result to
/// `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, caps_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match run_command(&cli, caps_env) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}
