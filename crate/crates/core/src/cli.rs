//! Command-line front end.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::construct::{
    complement, construction_i, construction_iii, flag_difference_set, group_orbits, lemmas,
    mk_set, nonsingular_points_in_class, orbit_union_sets, vertex_class, GroupKind, RepChoice,
    VertexSet,
};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::gf::Field;
use crate::io::{self, GraphSummary, SetReport};
use crate::srg::{build_graph, Caps, Coords, Family, Graph, GraphSpec};
use crate::tables::{default_grid, quick_grid, run_tables};
use crate::verify::{check_intriguing, eigenvector_check, orbit_union_scan, SetType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    Ii,
    #[value(name = "III")]
    Iii,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoordsArg {
    Standard,
    Split,
}

#[derive(Debug, Parser)]
#[command(name = "polar-srg", version, about = "Strongly regular graphs on polar spaces and their intriguing sets")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Output file (the set file for `construct`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for sampled choices, recorded in the output.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Lift the parameter caps (same as setting POLAR_SRG_NO_CAPS).
    #[arg(long, global = true)]
    pub no_caps: bool,
    #[arg(long, global = true)]
    pub max_vertices: Option<u64>,
    /// Upper bound on the number of orbit subsets tried by `scan`.
    #[arg(long, global = true)]
    pub max_masks: Option<u64>,
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub r: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub eps: Option<i8>,
    #[arg(long, value_enum)]
    pub coords: Option<CoordsArg>,
    /// Q-value class (1 or 2) for no-even3.
    #[arg(long, default_value_t = 1)]
    pub part: u32,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Build a graph and compare its parameters with the closed forms.
    Build(GraphArgs),
    /// Construct an intriguing set and write it as a set file.
    Construct {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, ignore_case = true)]
        method: Method,
        /// Dimension of the totally singular subspace (method I).
        #[arg(long)]
        t: Option<usize>,
        /// Take the complement of the method I set.
        #[arg(long)]
        complement: bool,
        /// Take W_t^perp minus W_{t+1}^perp (method I).
        #[arg(long)]
        difference: bool,
        /// Acting group (method II); defaults by family.
        #[arg(long)]
        group: Option<GroupKind>,
        /// Index of the designated orbit union, or of M_k (method II).
        #[arg(long)]
        k: Option<u64>,
        /// The nonsingular point (method III), e.g. "([0],[1],[0],[1],[0])";
        /// sampled with the seed when absent.
        #[arg(long)]
        y: Option<String>,
    },
    /// Re-check a set file.
    Verify {
        /// Set file, or `-` for standard input.
        input: PathBuf,
    },
    /// Run every construction over the parameter grid.
    Tables {
        #[arg(long)]
        quick: bool,
    },
    /// Run the lemma checks.
    Lemmas,
    /// Search unions of group orbits for intriguing sets.
    Scan {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        group: Option<GroupKind>,
    },
    /// Finite fields and their moduli.
    Fields {
        #[command(subcommand)]
        action: FieldsAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum FieldsAction {
    List,
}

/// A validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub caps: Caps,
    pub max_masks: Option<u64>,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub enum Command {
    Build(GraphSpec),
    Construct(GraphSpec, Selector),
    Verify(PathBuf),
    Tables { quick: bool },
    Lemmas,
    Scan(GraphSpec, GroupKind),
    FieldsList,
}

#[derive(Debug, Clone)]
pub enum Selector {
    SingularPerp { t: usize, complement: bool },
    FlagDifference { t: usize },
    Orbits { group: GroupKind, index: u64 },
    Nonsingular { y: Option<String> },
}

/// Result of one command: bytes for stdout, optional file, diagnostics
/// for stderr, and whether every check passed.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub file: Option<(PathBuf, String)>,
    pub stderr: String,
    pub passed: bool,
}

fn default_group(family: Family) -> GroupKind {
    match family {
        Family::NoPerp | Family::NoOdd => GroupKind::K,
        Family::NoEven3 | Family::NoEven2 => GroupKind::L,
        Family::Nu => GroupKind::G,
    }
}

fn spec_from(args: &GraphArgs, group: Option<GroupKind>) -> Result<GraphSpec> {
    let needs_split = matches!(group, Some(GroupKind::K | GroupKind::L));
    let coords = match (args.coords, needs_split) {
        (Some(CoordsArg::Standard), true) => {
            return Err(Error::UnsupportedParameters(
                "groups K and L act in split coordinates; drop --coords standard".into(),
            ))
        }
        (Some(CoordsArg::Split), _) | (None, true) => Coords::Split,
        _ => Coords::Standard,
    };
    GraphSpec::new(args.family, args.q, args.r, args.eps)?
        .with_coords(coords)?
        .with_part(args.part)
}

impl RunConfig {
    /// Checks flag combinations without building anything.
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let mut caps = if cli.no_caps { Caps::off() } else { Caps::from_env() };
        if let Some(m) = cli.max_vertices {
            caps.max_vertices = m;
        }
        let bad = |m: &str| Err(Error::UnsupportedParameters(m.into()));
        let command = match cli.command {
            CommandArgs::Build(g) => Command::Build(spec_from(&g, None)?),
            CommandArgs::Construct {
                graph,
                method,
                t,
                complement,
                difference,
                group,
                k,
                y,
            } => {
                let foreign = match method {
                    Method::I => group.is_some() || k.is_some() || y.is_some(),
                    Method::Ii => t.is_some() || complement || difference || y.is_some(),
                    Method::Iii => {
                        t.is_some() || complement || difference || group.is_some() || k.is_some()
                    }
                };
                if foreign {
                    return bad("flags do not belong to the chosen --method");
                }
                let selector = match method {
                    Method::I => {
                        let Some(t) = t else { return bad("--method I needs --t") };
                        match (complement, difference) {
                            (true, true) => return bad("--complement and --difference exclude each other"),
                            (_, true) => Selector::FlagDifference { t },
                            (c, false) => Selector::SingularPerp { t, complement: c },
                        }
                    }
                    Method::Ii => Selector::Orbits {
                        group: group.unwrap_or(default_group(graph.family)),
                        index: k.unwrap_or(0),
                    },
                    Method::Iii => Selector::Nonsingular { y },
                };
                let group = match &selector {
                    Selector::Orbits { group, .. } => Some(*group),
                    _ => None,
                };
                Command::Construct(spec_from(&graph, group)?, selector)
            }
            CommandArgs::Verify { input } => Command::Verify(input),
            CommandArgs::Tables { quick } => Command::Tables { quick },
            CommandArgs::Lemmas => Command::Lemmas,
            CommandArgs::Scan { graph, group } => {
                let group = group.unwrap_or(default_group(graph.family));
                Command::Scan(spec_from(&graph, Some(group))?, group)
            }
            CommandArgs::Fields { action: FieldsAction::List } => Command::FieldsList,
        };
        if cli.format == Format::Dot && !matches!(command, Command::Build(_) | Command::Construct(..)) {
            return bad("--format dot applies to build and construct only");
        }
        Ok(RunConfig {
            command,
            format: cli.format,
            out: cli.out,
            caps,
            max_masks: cli.max_masks,
            seed: cli.seed,
        })
    }
}

#[derive(Serialize)]
struct Seeded<'a, T: Serialize> {
    #[serde(flatten)]
    body: &'a T,
    seed: u64,
}

fn to_json<T: Serialize>(body: &T, seed: u64) -> String {
    let mut s = serde_json::to_string_pretty(&Seeded { body, seed }).expect("serializable");
    s.push('\n');
    s
}

fn summary_text(s: &GraphSummary, spec: &GraphSpec) -> String {
    format!(
        "graph: {spec}\nparameters: v={} k={} lambda={} mu={} e+={} e-={}\nmatches_expected: {}\n",
        s.v, s.k, s.lambda, s.mu, s.e_plus, s.e_minus, s.matches_expected
    )
}

fn opt(x: Option<u64>) -> String {
    x.map_or_else(|| "-".into(), |v| v.to_string())
}

fn report_text(r: &SetReport, spec: &GraphSpec, seed: u64) -> String {
    let mut s = summary_text(&r.graph, spec);
    writeln!(s, "set: size={} provenance={}", r.set.size, r.set.provenance.label()).unwrap();
    writeln!(s, "measured: h1={} h2={} type={}", opt(r.measured.h1), opt(r.measured.h2), r.set_type).unwrap();
    if let Some(e) = &r.expected {
        for c in &e.candidates {
            writeln!(s, "expected: h1={} h2={} type={} ({})", c.h1, c.h2, c.set_type, c.label).unwrap();
        }
    }
    let m = r.matches_expected.map_or_else(|| "-".into(), |b| b.to_string());
    writeln!(s, "matches_expected: {m}\neigenvector_ok: {}\nseed: {seed}", r.eigenvector_ok).unwrap();
    s
}

fn build_checked(spec: &GraphSpec, caps: &Caps) -> Result<Graph> {
    caps.check(spec)?;
    build_graph(spec)
}

fn set_report(g: &Graph, set: &VertexSet) -> Result<SetReport> {
    let report = check_intriguing(g, set)?;
    let eig = if report.values().is_some() {
        eigenvector_check(g, set, &report)?
    } else {
        false
    };
    SetReport::new(g, set, &report, eig)
}

fn choose_y(g: &Graph, y: &Option<String>, seed: u64) -> Result<Point> {
    let space = g.space();
    if let Some(text) = y {
        let v = io::parse_point(space.coord_field(), text)?;
        if v.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: v.len(),
            });
        }
        return space
            .normalize(&v)
            .ok_or_else(|| Error::Parse("y must be nonzero".into()));
    }
    let class = vertex_class(g.spec())
        .ok_or_else(|| Error::WrongFamily(format!("no square class on {}", g.spec())))?;
    let ys = nonsingular_points_in_class(g, class.opposite())?;
    if ys.is_empty() {
        return Err(Error::Invariant("no point in the required class".into()));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    Ok(ys[rng.gen_range(0..ys.len())].clone())
}

fn construct(g: &Graph, selector: &Selector, seed: u64) -> Result<VertexSet> {
    match selector {
        Selector::SingularPerp { t, complement: c } => {
            let y = construction_i(g, *t)?;
            if *c {
                complement(&y)
            } else {
                Ok(y)
            }
        }
        Selector::FlagDifference { t } => flag_difference_set(g, *t),
        Selector::Orbits { group, index } => {
            if *group == GroupKind::G {
                return mk_set(g, *index, RepChoice::First);
            }
            let sets = match (group, g.spec().family) {
                (GroupKind::K, Family::NoPerp | Family::NoOdd) => orbit_union_sets(g)?,
                _ => group_orbits(g, *group)?,
            };
            let n = sets.len();
            sets.into_iter().nth(*index as usize).ok_or_else(|| {
                Error::UnsupportedParameters(format!("--k {index} out of range (0..{n})"))
            })
        }
        Selector::Nonsingular { y } => construction_iii(g, &choose_y(g, y, seed)?),
    }
}

#[derive(Serialize)]
struct ScanEntry {
    mask: u64,
    orbits: Vec<usize>,
    size: usize,
    h1: Option<u64>,
    h2: Option<u64>,
    #[serde(rename = "type")]
    set_type: SetType,
}

#[derive(Serialize)]
struct ScanOutput {
    graph: String,
    group: String,
    orbit_sizes: Vec<usize>,
    hits: Vec<ScanEntry>,
}

#[derive(Serialize)]
struct FieldEntry {
    p: u32,
    n: u32,
    order: u32,
    modulus: Vec<u32>,
    primitive: Vec<u32>,
}

#[derive(Serialize)]
struct FieldsOutput {
    fields: Vec<FieldEntry>,
}

/// Fields the graph families and the lemma checks work in.
pub const FIELDS_USED: &[(u32, u32)] = &[
    (2, 1),
    (3, 1),
    (5, 1),
    (7, 1),
    (2, 2),
    (2, 3),
    (3, 2),
    (2, 4),
    (5, 2),
    (7, 2),
    (2, 6),
    (2, 12),
];

#[derive(Serialize)]
struct LemmasOutput<'a> {
    lemmas: &'a [lemmas::LemmaReport],
    all_passed: bool,
}

/// Executes a validated command.
pub fn run_command(cfg: &RunConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let seed = cfg.seed;
    let json = cfg.format == Format::Json;
    match &cfg.command {
        Command::Build(spec) => {
            let g = build_checked(spec, &cfg.caps)?;
            let s = io::graph_summary(&g)?;
            o.passed = s.matches_expected;
            o.stdout = match cfg.format {
                Format::Json => to_json(&s, seed),
                Format::Text => summary_text(&s, spec),
                Format::Dot => io::to_dot(&g, None),
            };
        }
        Command::Construct(spec, selector) => {
            let g = build_checked(spec, &cfg.caps)?;
            let set = construct(&g, selector, seed)?;
            let r = set_report(&g, &set)?;
            o.passed = r.passed();
            let file = io::write_set(&g, &set)?;
            let report = match cfg.format {
                Format::Json => to_json(&r, seed),
                Format::Text => report_text(&r, spec, seed),
                Format::Dot => io::to_dot(&g, Some(&set)),
            };
            match &cfg.out {
                Some(path) => {
                    o.file = Some((path.clone(), file));
                    o.stdout = report;
                }
                None => {
                    o.stdout = file;
                    o.stderr = report;
                }
            }
            return Ok(o);
        }
        Command::Verify(path) => {
            let text = if path.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin())?
            } else {
                std::fs::read_to_string(path)?
            };
            let spec = io::read_set_spec(&text)?;
            let g = build_checked(&spec, &cfg.caps)?;
            let set = io::read_set(&g, &text)?;
            let r = set_report(&g, &set)?;
            o.passed = r.passed();
            o.stdout = if json { to_json(&r, seed) } else { report_text(&r, &spec, seed) };
        }
        Command::Tables { quick } => {
            let grid = if *quick { quick_grid() } else { default_grid() };
            let t = run_tables(&grid, &cfg.caps)?;
            o.passed = t.all_passed;
            o.stdout = if json {
                to_json(&t, seed)
            } else {
                let mut s: String = t.rows.iter().map(|r| r.line() + "\n").collect();
                let failed = t.rows.iter().filter(|r| !r.passed).count();
                writeln!(s, "rows: {} passed: {} failed: {failed}", t.rows.len(), t.rows.len() - failed).unwrap();
                s
            };
        }
        Command::Lemmas => {
            let reports = lemmas::run_all(seed)?;
            o.passed = reports.iter().all(|r| r.passed);
            o.stdout = if json {
                to_json(&LemmasOutput { lemmas: &reports, all_passed: o.passed }, seed)
            } else {
                let mut s = String::new();
                for r in &reports {
                    let st = if r.passed { "PASS" } else { "FAIL" };
                    writeln!(s, "{st} {:<24} {:<16} checked={} {}", r.name, r.params, r.checked, r.detail).unwrap();
                }
                writeln!(s, "seed: {seed}").unwrap();
                s
            };
        }
        Command::Scan(spec, group) => {
            let g = build_checked(spec, &cfg.caps)?;
            let orbits = group_orbits(&g, *group)?;
            let hits = orbit_union_scan(&g, &orbits, cfg.max_masks)?;
            let out = ScanOutput {
                graph: spec.to_string(),
                group: group.to_string(),
                orbit_sizes: orbits.iter().map(VertexSet::len).collect(),
                hits: hits
                    .into_iter()
                    .map(|h| ScanEntry {
                        mask: h.mask,
                        orbits: (0..64).filter(|i| h.mask >> i & 1 == 1).collect(),
                        size: h.report.set_size,
                        h1: h.report.h1,
                        h2: h.report.h2,
                        set_type: h.report.set_type,
                    })
                    .collect(),
            };
            o.passed = true;
            o.stdout = if json {
                to_json(&out, seed)
            } else {
                let mut s = format!("graph: {}\ngroup: {}\norbit sizes: {:?}\n", out.graph, out.group, out.orbit_sizes);
                for h in &out.hits {
                    writeln!(s, "orbits={:?} size={} h1={} h2={} type={}", h.orbits, h.size, opt(h.h1), opt(h.h2), h.set_type).unwrap();
                }
                writeln!(s, "intriguing unions: {}", out.hits.len()).unwrap();
                s
            };
        }
        Command::FieldsList => {
            let mut fields = Vec::new();
            for &(p, n) in FIELDS_USED {
                let f = Field::new(p, n, None)?;
                fields.push(FieldEntry {
                    p,
                    n,
                    order: f.order(),
                    modulus: f.modulus().to_vec(),
                    primitive: f.coeffs(f.primitive_element()),
                });
            }
            let out = FieldsOutput { fields };
            o.passed = true;
            o.stdout = if json {
                to_json(&out, seed)
            } else {
                let mut s = String::new();
                for e in &out.fields {
                    writeln!(s, "GF({}^{}) order={} modulus={:?} primitive={:?}", e.p, e.n, e.order, e.modulus, e.primitive).unwrap();
                }
                s
            };
        }
    }
    if let Some(path) = &cfg.out {
        o.file = Some((path.clone(), std::mem::take(&mut o.stdout)));
    }
    Ok(o)
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    error: &'a str,
    message: String,
}

fn error_record(kind: &str, message: String) -> String {
    serde_json::to_string(&ErrorRecord { error: kind, message }).expect("serializable")
}

/// Parses arguments, runs, writes outputs; returns the process exit code:
/// 0 when every check passed, 1 on a failed check, 2 on an error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| run_command(&cfg));
    match result {
        Ok(o) => {
            if let Some((path, contents)) = &o.file {
                if let Err(e) = std::fs::write(path, contents) {
                    eprintln!("{}", error_record("Io", format!("{}: {e}", path.display())));
                    return 2;
                }
            }
            print!("{}", o.stdout);
            eprint!("{}", o.stderr);
            if o.passed {
                0
            } else {
                eprintln!("{}", error_record("CheckFailed", "at least one check did not pass".into()));
                1
            }
        }
        Err(e) => {
            eprintln!("{}", error_record(e.kind(), e.to_string()));
            2
        }
    }
}
