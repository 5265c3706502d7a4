//! JSON documents read by the command-line tool.
//!
//! ```json
//! {"name": "sierpinski", "points": ["a", "b"], "subbasis": [["b"]]}
//! {"name": "f", "domain": "sierpinski", "codomain": "pair", "kind": "point-map",
//!  "pairs": [["a", "0"], ["b", "1"]]}
//! {"name": "g", "domain": "x", "codomain": "y", "kind": "observation-map",
//!  "pairs": [[[], []], [["c"], ["a"]]]}
//! {"tests": [{"index": 1, "behavior": "diverge"},
//!            {"index": 2, "behavior": {"succeed_at": 5}}],
//!  "combinator": "any", "fuel": 100}
//! ```
//!
//! An observation map's pairs run from an open of the codomain space to an
//! open of the domain space.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::observation::{Script, Test};
use crate::points::{PointSet, Possibilities};
use crate::relationship::{ObservationMap, PointMap};
use crate::topology::{generate_topology, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagCode {
    Malformed,
    DuplicateLabel,
    UnknownLabel,
    TooFewPoints,
    TooManyPoints,
    NonTotalMap,
    DuplicateEntry,
    WrongKind,
    UnknownSpace,
    BadIndex,
    BadStep,
    BadFuel,
    EmptyScript,
    Io,
}

impl DiagCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagCode::Malformed => "MALFORMED",
            DiagCode::DuplicateLabel => "DUPLICATE_LABEL",
            DiagCode::UnknownLabel => "UNKNOWN_LABEL",
            DiagCode::TooFewPoints => "TOO_FEW_POINTS",
            DiagCode::TooManyPoints => "TOO_MANY_POINTS",
            DiagCode::NonTotalMap => "NON_TOTAL_MAP",
            DiagCode::DuplicateEntry => "DUPLICATE_ENTRY",
            DiagCode::WrongKind => "WRONG_KIND",
            DiagCode::UnknownSpace => "UNKNOWN_SPACE",
            DiagCode::BadIndex => "BAD_INDEX",
            DiagCode::BadStep => "BAD_STEP",
            DiagCode::BadFuel => "BAD_FUEL",
            DiagCode::EmptyScript => "EMPTY_SCRIPT",
            DiagCode::Io => "IO",
        }
    }
}

/// An input problem, located by line (syntax errors) or field path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: DiagCode,
    pub location: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(code: DiagCode, location: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}] at {}: {}", self.code.as_str(), self.location, self.message)
    }
}

impl std::error::Error for Diagnostic {}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Diagnostic> {
    serde_json::from_str(text).map_err(|e| {
        Diagnostic::new(
            DiagCode::Malformed,
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub name: String,
    pub points: Vec<String>,
    #[serde(default)]
    pub subbasis: Vec<Vec<String>>,
}

pub fn parse_space_spec(text: &str) -> Result<SpaceSpec, Diagnostic> {
    let spec: SpaceSpec = from_json(text)?;
    if spec.points.len() < 2 {
        return Err(Diagnostic::new(
            DiagCode::TooFewPoints,
            "points",
            format!("a space needs at least two points, got {}", spec.points.len()),
        ));
    }
    let mut seen = HashSet::new();
    for (i, p) in spec.points.iter().enumerate() {
        if !seen.insert(p.as_str()) {
            return Err(Diagnostic::new(
                DiagCode::DuplicateLabel,
                format!("points[{i}]"),
                format!("duplicate point label `{p}`"),
            ));
        }
    }
    for (i, set) in spec.subbasis.iter().enumerate() {
        for (j, p) in set.iter().enumerate() {
            if !seen.contains(p.as_str()) {
                return Err(Diagnostic::new(
                    DiagCode::UnknownLabel,
                    format!("subbasis[{i}][{j}]"),
                    format!("unknown point label `{p}`"),
                ));
            }
        }
    }
    Ok(spec)
}

impl SpaceSpec {
    pub fn possibilities(&self, max_points: usize) -> Result<Possibilities, Diagnostic> {
        if self.points.len() > max_points {
            return Err(Diagnostic::new(
                DiagCode::TooManyPoints,
                "points",
                format!(
                    "{} points exceed the limit of {max_points} (set VERITOP_MAX_POINTS to raise it)",
                    self.points.len()
                ),
            ));
        }
        Possibilities::new(self.points.iter().cloned())
            .map_err(|e| Diagnostic::new(DiagCode::Malformed, "points", e.to_string()))
    }

    pub fn subbasis_sets(&self, points: &Possibilities) -> Result<Vec<PointSet>, Diagnostic> {
        self.subbasis
            .iter()
            .enumerate()
            .map(|(i, s)| {
                points
                    .set_of(s)
                    .map_err(|e| Diagnostic::new(DiagCode::UnknownLabel, format!("subbasis[{i}]"), e.to_string()))
            })
            .collect()
    }

    /// The topology generated by the sub-basis.
    pub fn topology(&self, max_points: usize) -> Result<Topology, Diagnostic> {
        let points = self.possibilities(max_points)?;
        let sets = self.subbasis_sets(&points)?;
        generate_topology(&points, &sets).map_err(|e| Diagnostic::new(DiagCode::Malformed, "subbasis", e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    PointMap,
    ObservationMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapPair {
    Points(String, String),
    Opens(Vec<String>, Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub name: String,
    pub domain: String,
    pub codomain: String,
    pub kind: MapKind,
    pub pairs: Vec<MapPair>,
}

pub fn parse_map_spec(text: &str) -> Result<MapSpec, Diagnostic> {
    let spec: MapSpec = from_json(text)?;
    for (i, pair) in spec.pairs.iter().enumerate() {
        let fits = matches!(
            (spec.kind, pair),
            (MapKind::PointMap, MapPair::Points(..)) | (MapKind::ObservationMap, MapPair::Opens(..))
        );
        if !fits {
            return Err(Diagnostic::new(
                DiagCode::WrongKind,
                format!("pairs[{i}]"),
                "pair shape does not match the map kind",
            ));
        }
    }
    Ok(spec)
}

fn lookup(points: &Possibilities, label: &str, location: String) -> Result<usize, Diagnostic> {
    points
        .index_of(label)
        .ok_or_else(|| Diagnostic::new(DiagCode::UnknownLabel, location, format!("unknown point label `{label}`")))
}

fn set_at(points: &Possibilities, labels: &[String], location: String) -> Result<PointSet, Diagnostic> {
    let mut set = points.empty_set();
    for (k, l) in labels.iter().enumerate() {
        set.insert(lookup(points, l, format!("{location}[{k}]"))?);
    }
    Ok(set)
}

impl MapSpec {
    /// Resolves a point map against its spaces; every domain point needs
    /// exactly one image.
    pub fn point_map(&self, t_x: &Topology, t_y: &Topology) -> Result<PointMap, Diagnostic> {
        let mut images: Vec<Option<usize>> = vec![None; t_x.len()];
        for (i, pair) in self.pairs.iter().enumerate() {
            let MapPair::Points(from, to) = pair else {
                return Err(Diagnostic::new(DiagCode::WrongKind, format!("pairs[{i}]"), "expected a point pair"));
            };
            let x = lookup(t_x.points(), from, format!("pairs[{i}][0]"))?;
            let y = lookup(t_y.points(), to, format!("pairs[{i}][1]"))?;
            if images[x].replace(y).is_some() {
                return Err(Diagnostic::new(
                    DiagCode::DuplicateEntry,
                    format!("pairs[{i}]"),
                    format!("point `{from}` is mapped twice"),
                ));
            }
        }
        if let Some(x) = images.iter().position(Option::is_none) {
            return Err(Diagnostic::new(
                DiagCode::NonTotalMap,
                "pairs",
                format!("point `{}` has no image", t_x.points().label(x)),
            ));
        }
        PointMap::new(
            t_x.points().clone(),
            t_y.points().clone(),
            images.into_iter().map(|y| y.expect("checked total")).collect(),
        )
        .map_err(|e| Diagnostic::new(DiagCode::Malformed, "pairs", e.to_string()))
    }

    /// Resolves an observation map `g: opens(T_Y) → subsets of X`; every open
    /// of `t_y` needs an image.
    pub fn observation_map(&self, t_x: &Topology, t_y: &Topology) -> Result<ObservationMap, Diagnostic> {
        let mut pairs: Vec<(PointSet, PointSet)> = Vec::new();
        let mut seen = HashSet::new();
        for (i, pair) in self.pairs.iter().enumerate() {
            let MapPair::Opens(from, to) = pair else {
                return Err(Diagnostic::new(DiagCode::WrongKind, format!("pairs[{i}]"), "expected a pair of sets"));
            };
            let v = set_at(t_y.points(), from, format!("pairs[{i}][0]"))?;
            let u = set_at(t_x.points(), to, format!("pairs[{i}][1]"))?;
            if !seen.insert(v.clone()) {
                return Err(Diagnostic::new(
                    DiagCode::DuplicateEntry,
                    format!("pairs[{i}]"),
                    format!("set {} is mapped twice", t_y.points().format_set(&v)),
                ));
            }
            pairs.push((v, u));
        }
        let opens = t_y
            .opens()
            .map_err(|e| Diagnostic::new(DiagCode::TooManyPoints, "codomain", e.to_string()))?;
        if let Some(v) = opens.iter().find(|v| !seen.contains(*v)) {
            return Err(Diagnostic::new(
                DiagCode::NonTotalMap,
                "pairs",
                format!("open {} has no image", t_y.points().format_set(v)),
            ));
        }
        ObservationMap::new(t_y.clone(), t_x.clone(), pairs)
            .map_err(|e| Diagnostic::new(DiagCode::Malformed, "pairs", e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Behavior {
    SucceedAt(u64),
    Diverge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScriptEntry {
    pub index: usize,
    pub behavior: Behavior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Combinator {
    All,
    Any,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScriptSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub tests: Vec<ScriptEntry>,
    pub combinator: Combinator,
    pub fuel: u64,
}

pub fn parse_script(text: &str) -> Result<ScriptSpec, Diagnostic> {
    let spec: ScriptSpec = from_json(text)?;
    if spec.tests.is_empty() {
        return Err(Diagnostic::new(DiagCode::EmptyScript, "tests", "a script needs at least one test"));
    }
    for (i, entry) in spec.tests.iter().enumerate() {
        if entry.index != i + 1 {
            return Err(Diagnostic::new(
                DiagCode::BadIndex,
                format!("tests[{i}].index"),
                format!("expected index {}, found {}", i + 1, entry.index),
            ));
        }
        if entry.behavior == Behavior::SucceedAt(0) {
            return Err(Diagnostic::new(
                DiagCode::BadStep,
                format!("tests[{i}].behavior"),
                "succeed_at needs a step count of at least 1",
            ));
        }
    }
    if spec.fuel == 0 {
        return Err(Diagnostic::new(DiagCode::BadFuel, "fuel", "fuel must be at least 1"));
    }
    Ok(spec)
}

impl ScriptSpec {
    pub fn tests(&self) -> Vec<Test> {
        self.tests
            .iter()
            .map(|e| match e.behavior {
                Behavior::SucceedAt(k) => Test::Scripted(Script::succeed_at(k)),
                Behavior::Diverge => Test::diverge(),
            })
            .collect()
    }
}
