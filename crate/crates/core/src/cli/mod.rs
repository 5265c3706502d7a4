//! Command-line front end.
//!
//! Every command writes deterministic text. Exit codes: 0 on success, 1 when
//! a check fails (not Hausdorff, not continuous, a dovetail that ran out of
//! fuel, ...), 2 on input errors.

pub mod formats;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::function_space::{
    compare_open_open, enumerate_continuous, generate_b2b_topology, Relation, DEFAULT_ENUMERATION_CAP,
};
use crate::observation::{incompatible, Observation};
use crate::points::{PointSet, Possibilities};
use crate::relationship::{
    is_continuous, preimage_map, reconstruct_function, validate_observation_map, ContinuityVerdict, MapViolation,
    ObservationMap,
};
use crate::scheduler::{run_all, run_any, Fuel, RunOutcome, TestStream};
use crate::topology::{check_axioms, is_hausdorff, separating_pair, AxiomViolation, HausdorffVerdict, Topology};

use formats::{
    parse_map_spec, parse_script, parse_space_spec, Combinator, DiagCode, Diagnostic, MapKind, MapSpec, SpaceSpec,
};

/// Environment variable overriding the universe-size cap.
pub const MAX_POINTS_VAR: &str = "VERITOP_MAX_POINTS";
pub const DEFAULT_MAX_POINTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_points: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_points: DEFAULT_MAX_POINTS,
        }
    }
}

impl Limits {
    pub fn from_env() -> Result<Self, Diagnostic> {
        match std::env::var(MAX_POINTS_VAR) {
            Err(_) => Ok(Limits::default()),
            Ok(raw) => raw
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n >= 2)
                .map(|max_points| Limits { max_points })
                .ok_or_else(|| {
                    Diagnostic::new(
                        DiagCode::Malformed,
                        MAX_POINTS_VAR,
                        format!("expected an integer of at least 2, got `{raw}`"),
                    )
                }),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "veritop", version, about = "Verifiable sets, natural topologies and experimental relationships")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Hausdorff,
    Axioms,
    Distinguishability,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisChoice {
    /// The basis generated from the space's sub-basis.
    Generated,
    /// Minimal open neighbourhoods of the points.
    Minimal,
    /// Every open set.
    Full,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the topology generated by a space's sub-basis.
    Topology {
        #[arg(long)]
        space: PathBuf,
    },
    /// Check a property of a space's topology.
    Check {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, value_enum)]
        property: Property,
    },
    /// Check whether a point map is continuous.
    Continuity {
        #[arg(long)]
        map: PathBuf,
        /// Space files; otherwise `<name>.json` next to the map is used.
        #[arg(long)]
        space: Vec<PathBuf>,
    },
    /// Print the observation map induced by a continuous point map.
    Preimage {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        space: Vec<PathBuf>,
    },
    /// Recover the point map behind an observation map.
    Reconstruct {
        #[arg(long)]
        gmap: PathBuf,
        #[arg(long)]
        space: Vec<PathBuf>,
    },
    /// Enumerate C(X,Y) and build its basis-to-basis topology.
    Fnspace {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        codomain: PathBuf,
        #[arg(long, value_enum, default_value_t = BasisChoice::Generated)]
        basis_x: BasisChoice,
        #[arg(long, value_enum, default_value_t = BasisChoice::Generated)]
        basis_y: BasisChoice,
        #[arg(long)]
        compare_open_open: bool,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        max_functions: u64,
    },
    /// Run a scripted conjunction or disjunction.
    Dovetail {
        #[arg(long)]
        script: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<Combinator>,
        #[arg(long)]
        fuel: Option<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn failed(stdout: String) -> Self {
        CommandOutput {
            code: 1,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(message: String) -> Self {
        CommandOutput {
            code: 2,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Parses `argv` (including the program name) and runs the command, reading
/// limits from the environment.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Limits::from_env() {
        Ok(limits) => run_command_with(argv, limits),
        Err(d) => CommandOutput::input_error(format!("{d}\n")),
    }
}

pub fn run_command_with<I, T>(argv: I, limits: Limits) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutput::input_error(text)
            } else {
                CommandOutput::ok(text)
            };
        }
    };
    match dispatch(cli.command, limits) {
        Ok(out) => out,
        Err(d) => CommandOutput::input_error(format!("{d}\n")),
    }
}

fn read(path: &Path) -> Result<String, Diagnostic> {
    std::fs::read_to_string(path)
        .map_err(|e| Diagnostic::new(DiagCode::Io, path.display().to_string(), e.to_string()))
}

fn load_space(path: &Path) -> Result<SpaceSpec, Diagnostic> {
    parse_space_spec(&read(path)?).map_err(|d| with_file(d, path))
}

fn with_file(mut d: Diagnostic, path: &Path) -> Diagnostic {
    d.location = format!("{}: {}", path.display(), d.location);
    d
}

/// Finds the space called `name` among `explicit`, else `<dir>/<name>.json`.
fn resolve_space(name: &str, explicit: &[SpaceSpec], map_path: &Path) -> Result<SpaceSpec, Diagnostic> {
    if let Some(s) = explicit.iter().find(|s| s.name == name) {
        return Ok(s.clone());
    }
    let candidate = map_path.parent().unwrap_or(Path::new(".")).join(format!("{name}.json"));
    if candidate.is_file() {
        let spec = load_space(&candidate)?;
        if spec.name == name {
            return Ok(spec);
        }
    }
    Err(Diagnostic::new(
        DiagCode::UnknownSpace,
        map_path.display().to_string(),
        format!("no space named `{name}` (pass it with --space)"),
    ))
}

struct LoadedMap {
    spec: MapSpec,
    domain: (SpaceSpec, Topology),
    codomain: (SpaceSpec, Topology),
}

fn load_map(path: &Path, spaces: &[PathBuf], kind: MapKind, limits: Limits) -> Result<LoadedMap, Diagnostic> {
    let spec = parse_map_spec(&read(path)?).map_err(|d| with_file(d, path))?;
    if spec.kind != kind {
        return Err(Diagnostic::new(
            DiagCode::WrongKind,
            format!("{}: kind", path.display()),
            format!("this command needs a {kind:?} document"),
        ));
    }
    let explicit = spaces.iter().map(|p| load_space(p)).collect::<Result<Vec<_>, _>>()?;
    let dom = resolve_space(&spec.domain, &explicit, path)?;
    let cod = resolve_space(&spec.codomain, &explicit, path)?;
    let tx = dom.topology(limits.max_points)?;
    let ty = cod.topology(limits.max_points)?;
    Ok(LoadedMap {
        spec,
        domain: (dom, tx),
        codomain: (cod, ty),
    })
}

fn dispatch(command: Command, limits: Limits) -> Result<CommandOutput, Diagnostic> {
    match command {
        Command::Topology { space } => {
            let spec = load_space(&space)?;
            let t = spec.topology(limits.max_points).map_err(|d| with_file(d, &space))?;
            let mut out = String::new();
            writeln!(out, "space: {}", spec.name).unwrap();
            writeln!(out, "points: {}", t.points().labels().join(",")).unwrap();
            write_topology(&mut out, &t);
            Ok(CommandOutput::ok(out))
        }
        Command::Check { space, property } => {
            let spec = load_space(&space)?;
            let t = spec.topology(limits.max_points).map_err(|d| with_file(d, &space))?;
            Ok(check(&spec, &t, property))
        }
        Command::Continuity { map, space } => {
            let loaded = load_map(&map, &space, MapKind::PointMap, limits)?;
            let (tx, ty) = (&loaded.domain.1, &loaded.codomain.1);
            let f = loaded.spec.point_map(tx, ty).map_err(|d| with_file(d, &map))?;
            let mut out = map_header(&loaded);
            let verdict = is_continuous(&f, tx, ty).expect("map resolved against these spaces");
            Ok(match verdict {
                ContinuityVerdict::Continuous => {
                    writeln!(out, "continuous: yes").unwrap();
                    CommandOutput::ok(out)
                }
                ContinuityVerdict::Discontinuous { open, preimage } => {
                    writeln!(out, "continuous: no").unwrap();
                    writeln!(out, "witness: {}", ty.points().format_set(&open)).unwrap();
                    writeln!(out, "preimage: {} (not open)", tx.points().format_set(&preimage)).unwrap();
                    CommandOutput::failed(out)
                }
            })
        }
        Command::Preimage { map, space } => {
            let loaded = load_map(&map, &space, MapKind::PointMap, limits)?;
            let (tx, ty) = (&loaded.domain.1, &loaded.codomain.1);
            let f = loaded.spec.point_map(tx, ty).map_err(|d| with_file(d, &map))?;
            let mut out = map_header(&loaded);
            match preimage_map(&f, tx, ty) {
                Ok(g) => {
                    writeln!(out, "observation map:").unwrap();
                    write_observation_map(&mut out, &g);
                    let status = if validate_observation_map(&g).is_ok() { "pass" } else { "fail" };
                    writeln!(out, "validation: {status}").unwrap();
                    Ok(CommandOutput::ok(out))
                }
                Err(crate::relationship::RelationError::NotContinuous { open, preimage }) => {
                    writeln!(out, "continuous: no").unwrap();
                    writeln!(out, "witness: {}", ty.points().format_set(&open)).unwrap();
                    writeln!(out, "preimage: {} (not open)", tx.points().format_set(&preimage)).unwrap();
                    Ok(CommandOutput::failed(out))
                }
                Err(e) => Err(Diagnostic::new(DiagCode::Malformed, map.display().to_string(), e.to_string())),
            }
        }
        Command::Reconstruct { gmap, space } => {
            let loaded = load_map(&gmap, &space, MapKind::ObservationMap, limits)?;
            let (tx, ty) = (&loaded.domain.1, &loaded.codomain.1);
            let g = loaded.spec.observation_map(tx, ty).map_err(|d| with_file(d, &gmap))?;
            Ok(reconstruct(map_header(&loaded), &g))
        }
        Command::Fnspace {
            domain,
            codomain,
            basis_x,
            basis_y,
            compare_open_open,
            max_functions,
        } => {
            let (dom, cod) = (load_space(&domain)?, load_space(&codomain)?);
            let tx = dom.topology(limits.max_points).map_err(|d| with_file(d, &domain))?;
            let ty = cod.topology(limits.max_points).map_err(|d| with_file(d, &codomain))?;
            fnspace(&dom, &tx, &cod, &ty, basis_x, basis_y, compare_open_open, max_functions)
        }
        Command::Dovetail { script, mode, fuel } => {
            let spec = parse_script(&read(&script)?).map_err(|d| with_file(d, &script))?;
            let mode = mode.unwrap_or(spec.combinator);
            let fuel = fuel.unwrap_or(spec.fuel);
            if fuel == 0 {
                return Err(Diagnostic::new(DiagCode::BadFuel, "--fuel", "fuel must be at least 1"));
            }
            let tests = spec.tests();
            let report = match mode {
                Combinator::All => run_all(&tests, Fuel::Steps(fuel)),
                Combinator::Any => {
                    let stream = TestStream::finite(tests).expect("parse rejects empty scripts");
                    run_any(&stream, Fuel::Steps(fuel))
                }
            }
            .expect("parse rejects empty scripts");
            let mut out = String::new();
            if let Some(name) = &spec.name {
                writeln!(out, "script: {name}").unwrap();
            }
            writeln!(out, "mode: {}", if mode == Combinator::All { "all" } else { "any" }).unwrap();
            writeln!(out, "tests: {}", spec.tests.len()).unwrap();
            writeln!(out, "fuel: {fuel}").unwrap();
            let success = match report.outcome {
                RunOutcome::Success { winner_index, round } => {
                    writeln!(out, "outcome: success").unwrap();
                    writeln!(out, "winner_index: {winner_index}").unwrap();
                    writeln!(out, "round: {round}").unwrap();
                    true
                }
                RunOutcome::Exhausted => {
                    writeln!(out, "outcome: exhausted").unwrap();
                    false
                }
            };
            writeln!(out, "total_steps: {}", report.total_steps).unwrap();
            writeln!(out, "rounds_completed: {}", report.rounds_completed).unwrap();
            Ok(if success {
                CommandOutput::ok(out)
            } else {
                CommandOutput::failed(out)
            })
        }
    }
}

fn write_sets(out: &mut String, points: &Possibilities, sets: &[PointSet]) {
    for s in sets {
        writeln!(out, "  {}", points.format_set(s)).unwrap();
    }
}

fn write_topology(out: &mut String, t: &Topology) {
    writeln!(out, "basis: {}", t.basis().len()).unwrap();
    write_sets(out, t.points(), t.basis());
    match t.opens() {
        Ok(opens) => {
            writeln!(out, "opens: {}", opens.len()).unwrap();
            write_sets(out, t.points(), opens);
        }
        Err(_) => {
            let minimal = t.minimal_basis();
            writeln!(out, "opens: not listed (more than {})", crate::topology::OPENS_LIMIT).unwrap();
            writeln!(out, "minimal neighbourhoods: {}", minimal.len()).unwrap();
            write_sets(out, t.points(), &minimal);
        }
    }
}

fn check(spec: &SpaceSpec, t: &Topology, property: Property) -> CommandOutput {
    let points = t.points();
    let mut out = String::new();
    writeln!(out, "space: {}", spec.name).unwrap();
    let pass = match property {
        Property::Hausdorff => {
            writeln!(out, "property: hausdorff").unwrap();
            match is_hausdorff(t) {
                HausdorffVerdict::Hausdorff => true,
                HausdorffVerdict::Inseparable(a, b) => {
                    writeln!(out, "witness: {} {}", points.label(a), points.label(b)).unwrap();
                    false
                }
            }
        }
        Property::Axioms => {
            writeln!(out, "property: axioms").unwrap();
            match check_axioms(t) {
                Ok(()) => true,
                Err(v) => {
                    writeln!(out, "violation: {}", describe_axiom(points, &v)).unwrap();
                    false
                }
            }
        }
        Property::Distinguishability => {
            writeln!(out, "property: distinguishability").unwrap();
            let mut all = true;
            for i in 0..points.len() {
                for j in i + 1..points.len() {
                    let (a, b) = (points.label(i), points.label(j));
                    match separating_pair(t, i, j).expect("distinct in-range points") {
                        Some((u1, u2)) => {
                            let o1 = Observation::membership(u1.clone(), i, std::num::NonZeroU64::MIN);
                            let o2 = Observation::membership(u2.clone(), j, std::num::NonZeroU64::MIN);
                            debug_assert!(incompatible(&o1, &o2).unwrap_or(false));
                            writeln!(
                                out,
                                "  {a} | {b}: x in {} / x in {}",
                                points.format_set(&u1),
                                points.format_set(&u2)
                            )
                            .unwrap();
                        }
                        None => {
                            writeln!(out, "  {a} | {b}: no incompatible observations").unwrap();
                            all = false;
                        }
                    }
                }
            }
            all
        }
    };
    writeln!(out, "result: {}", if pass { "pass" } else { "fail" }).unwrap();
    if pass {
        CommandOutput::ok(out)
    } else {
        CommandOutput::failed(out)
    }
}

fn describe_axiom(points: &Possibilities, v: &AxiomViolation) -> String {
    let f = |s: &PointSet| points.format_set(s);
    match v {
        AxiomViolation::MissingEmpty => "the empty set is not open".into(),
        AxiomViolation::MissingWhole => "the whole space is not open".into(),
        AxiomViolation::IntersectionNotOpen(a, b) => format!("{} ∩ {} is not open", f(a), f(b)),
        AxiomViolation::UnionNotOpen(a, b) => format!("{} ∪ {} is not open", f(a), f(b)),
        AxiomViolation::BasisMemberNotOpen(b) => format!("basis member {} is not open", f(b)),
        AxiomViolation::NotUnionOfBasis(u) => format!("{} is not a union of basis members", f(u)),
    }
}

fn map_header(loaded: &LoadedMap) -> String {
    format!(
        "map: {}\ndomain: {}\ncodomain: {}\n",
        loaded.spec.name, loaded.domain.0.name, loaded.codomain.0.name
    )
}

fn write_observation_map(out: &mut String, g: &ObservationMap) {
    let (y, x) = (g.source().points(), g.target().points());
    for (v, u) in g.pairs() {
        writeln!(out, "  {} -> {}", y.format_set(v), x.format_set(u)).unwrap();
    }
}

fn describe_violation(g: &ObservationMap, v: &MapViolation) -> String {
    let (y, x) = (g.source().points(), g.target().points());
    let detail = match v {
        MapViolation::NotTotal { open } => format!("open {} has no image", y.format_set(open)),
        MapViolation::UnknownSource { set } => format!("{} is not an open of the codomain", y.format_set(set)),
        MapViolation::NonOpenImage { open, image } => {
            format!("g({}) = {} is not open", y.format_set(open), x.format_set(image))
        }
        MapViolation::Contradiction { image } => format!("g({{}}) = {}", x.format_set(image)),
        MapViolation::NoKnowledge { image } => {
            format!("g({}) = {}", y.format_set(&y.full_set()), x.format_set(image))
        }
        MapViolation::Intersection { left, right } | MapViolation::Union { left, right } => {
            format!("offending pair {} {}", y.format_set(left), y.format_set(right))
        }
    };
    format!("{}: {}", v.rule(), detail)
}

fn reconstruct(mut out: String, g: &ObservationMap) -> CommandOutput {
    if let Err(v) = validate_observation_map(g) {
        writeln!(out, "validation: fail").unwrap();
        writeln!(out, "violation: {}", describe_violation(g, &v)).unwrap();
        return CommandOutput::failed(out);
    }
    writeln!(out, "validation: pass").unwrap();
    match reconstruct_function(g) {
        Ok(f) => {
            let (x, y) = (f.domain(), f.codomain());
            writeln!(out, "function:").unwrap();
            for (i, &image) in f.images().iter().enumerate() {
                writeln!(out, "  {} -> {}", x.label(i), y.label(image)).unwrap();
            }
            let round_trip = preimage_map(&f, g.target(), g.source()).is_ok_and(|back| back == *g);
            writeln!(
                out,
                "round-trip: preimage_map(f) = g: {}",
                if round_trip { "ok" } else { "mismatch" }
            )
            .unwrap();
            if round_trip {
                CommandOutput::ok(out)
            } else {
                CommandOutput::failed(out)
            }
        }
        Err(e) => {
            writeln!(out, "reconstruction: fail").unwrap();
            writeln!(out, "reason: {e}").unwrap();
            CommandOutput::failed(out)
        }
    }
}

fn choose_basis(spec: &SpaceSpec, t: &Topology, choice: BasisChoice) -> Result<Vec<PointSet>, Diagnostic> {
    Ok(match choice {
        BasisChoice::Generated => t.basis().to_vec(),
        BasisChoice::Minimal => t.minimal_basis(),
        BasisChoice::Full => t
            .opens()
            .map_err(|e| Diagnostic::new(DiagCode::TooManyPoints, spec.name.clone(), e.to_string()))?
            .to_vec(),
    })
}

fn basis_name(choice: BasisChoice) -> &'static str {
    match choice {
        BasisChoice::Generated => "generated",
        BasisChoice::Minimal => "minimal",
        BasisChoice::Full => "full",
    }
}

#[allow(clippy::too_many_arguments)]
fn fnspace(
    dom: &SpaceSpec,
    tx: &Topology,
    cod: &SpaceSpec,
    ty: &Topology,
    basis_x: BasisChoice,
    basis_y: BasisChoice,
    compare: bool,
    max_functions: u64,
) -> Result<CommandOutput, Diagnostic> {
    let fs = enumerate_continuous(tx, ty, max_functions)
        .map_err(|e| Diagnostic::new(DiagCode::TooManyPoints, "--max-functions", e.to_string()))?;
    let bx = choose_basis(dom, tx, basis_x)?;
    let by = choose_basis(cod, ty, basis_y)?;
    let b2b = generate_b2b_topology(&fs, &bx, &by)
        .map_err(|e| Diagnostic::new(DiagCode::Malformed, "basis", e.to_string()))?;
    let names = fs.universe();
    let (x, y) = (tx.points(), ty.points());

    let mut out = String::new();
    writeln!(out, "domain: {}", dom.name).unwrap();
    writeln!(out, "codomain: {}", cod.name).unwrap();
    writeln!(out, "functions: {}", fs.len()).unwrap();
    for (i, f) in fs.functions().iter().enumerate() {
        let table: Vec<String> = f
            .images()
            .iter()
            .enumerate()
            .map(|(p, &q)| format!("{}->{}", x.label(p), y.label(q)))
            .collect();
        writeln!(out, "  {}: {}", names.label(i), table.join(" ")).unwrap();
    }
    writeln!(out, "basis-x: {} ({} sets)", basis_name(basis_x), bx.len()).unwrap();
    writeln!(out, "basis-y: {} ({} sets)", basis_name(basis_y), by.len()).unwrap();
    writeln!(out, "subbasis: {}", b2b.subbasis().len()).unwrap();
    for v in b2b.subbasis() {
        writeln!(
            out,
            "  V({},{}) = {}",
            x.format_set(&v.domain_set),
            y.format_set(&v.codomain_set),
            names.format_set(&v.members)
        )
        .unwrap();
    }
    write_topology(&mut out, b2b.topology());
    let hausdorff = is_hausdorff(b2b.topology());
    match &hausdorff {
        HausdorffVerdict::Hausdorff => writeln!(out, "hausdorff: pass").unwrap(),
        HausdorffVerdict::Inseparable(a, b) => {
            writeln!(out, "hausdorff: fail ({} {})", names.label(*a), names.label(*b)).unwrap()
        }
    }
    if compare {
        let report = compare_open_open(&fs, &b2b)
            .map_err(|e| Diagnostic::new(DiagCode::TooManyPoints, "--compare-open-open", e.to_string()))?;
        let relation = match report.relation {
            Relation::Equal => "equal",
            Relation::StrictlyCoarser => "strictly coarser",
            Relation::StrictlyFiner => "strictly finer",
            Relation::Incomparable => "incomparable",
        };
        writeln!(out, "open-open: {relation}").unwrap();
        if let Some(w) = &report.witness {
            writeln!(out, "open-open witness: {}", names.format_set(w)).unwrap();
        }
    }
    Ok(if hausdorff.is_hausdorff() {
        CommandOutput::ok(out)
    } else {
        CommandOutput::failed(out)
    })
}
