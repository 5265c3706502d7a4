//! Experimental relationships, from both directions.
//!
//! A [`PointMap`] `f: X → Y` is a relationship on possibilities; it is
//! continuous when every verifiable set of `Y` pulls back to a verifiable set
//! of `X`. An [`ObservationMap`] `g` sends verifiable sets of `Y` to verifiable
//! sets of `X` and must respect conjunction, disjunction, contradiction and
//! "no knowledge". [`reconstruct_function`] recovers the unique `f` with
//! `g = f⁻¹` on opens by extending `g` to every subset ([`borel_extend`]) and
//! reading off the fibres `ĝ(y) = ḡ({y})`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::points::{PointSet, Possibilities};
use crate::topology::{Topology, TopologyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("map has {found} images for a domain of {expected} points")]
    NotTotal { expected: usize, found: usize },
    #[error("image {image} of point {point} is outside the codomain")]
    ImageOutOfRange { point: usize, image: usize },
    #[error("topology is over a different universe than the map")]
    UniverseMismatch,
    #[error("map is not continuous: preimage of {open:?} is {preimage:?}, which is not open")]
    NotContinuous { open: PointSet, preimage: PointSet },
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// A total map between two finite possibility sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointMap {
    domain: Possibilities,
    codomain: Possibilities,
    images: Vec<usize>,
}

impl PointMap {
    pub fn new(domain: Possibilities, codomain: Possibilities, images: Vec<usize>) -> Result<Self, RelationError> {
        if images.len() != domain.len() {
            return Err(RelationError::NotTotal {
                expected: domain.len(),
                found: images.len(),
            });
        }
        if let Some((point, &image)) = images.iter().enumerate().find(|(_, &y)| y >= codomain.len()) {
            return Err(RelationError::ImageOutOfRange { point, image });
        }
        Ok(PointMap {
            domain,
            codomain,
            images,
        })
    }

    pub fn identity(points: &Possibilities) -> Self {
        PointMap {
            domain: points.clone(),
            codomain: points.clone(),
            images: (0..points.len()).collect(),
        }
    }

    pub fn constant(domain: &Possibilities, codomain: &Possibilities, value: usize) -> Result<Self, RelationError> {
        Self::new(domain.clone(), codomain.clone(), vec![value; domain.len()])
    }

    pub fn domain(&self) -> &Possibilities {
        &self.domain
    }

    pub fn codomain(&self) -> &Possibilities {
        &self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn preimage(&self, set: &PointSet) -> PointSet {
        PointSet::from_indices(
            self.domain.len(),
            self.images
                .iter()
                .enumerate()
                .filter(|(_, &y)| set.contains(y))
                .map(|(x, _)| x),
        )
    }

    pub fn image(&self, set: &PointSet) -> PointSet {
        PointSet::from_indices(self.codomain.len(), set.iter().map(|x| self.images[x]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContinuityVerdict {
    Continuous,
    /// An open set of the codomain whose preimage is not open.
    Discontinuous { open: PointSet, preimage: PointSet },
}

impl ContinuityVerdict {
    pub fn is_continuous(&self) -> bool {
        matches!(self, ContinuityVerdict::Continuous)
    }
}

fn check_spaces(f: &PointMap, t_x: &Topology, t_y: &Topology) -> Result<(), RelationError> {
    if t_x.points() != f.domain() || t_y.points() != f.codomain() {
        return Err(RelationError::UniverseMismatch);
    }
    Ok(())
}

/// Checks every open of `t_y` (its basis when the opens are implicit, which
/// suffices because preimages commute with unions).
pub fn is_continuous(f: &PointMap, t_x: &Topology, t_y: &Topology) -> Result<ContinuityVerdict, RelationError> {
    check_spaces(f, t_x, t_y)?;
    let candidates = t_y.opens().unwrap_or(t_y.basis());
    for v in candidates {
        let pre = f.preimage(v);
        if !t_x.is_open(&pre) {
            return Ok(ContinuityVerdict::Discontinuous {
                open: v.clone(),
                preimage: pre,
            });
        }
    }
    Ok(ContinuityVerdict::Continuous)
}

/// A map from the opens of `T_Y` (source) to subsets of `X` (target).
#[derive(Debug, Clone)]
pub struct ObservationMap {
    source: Topology,
    target: Topology,
    images: BTreeMap<PointSet, PointSet>,
}

impl ObservationMap {
    /// Unchecked: see [`validate_observation_map`]. The source topology must
    /// have materialized opens.
    pub fn new(
        source: Topology,
        target: Topology,
        pairs: impl IntoIterator<Item = (PointSet, PointSet)>,
    ) -> Result<Self, RelationError> {
        source.opens()?;
        let images: BTreeMap<PointSet, PointSet> = pairs.into_iter().collect();
        for (v, u) in &images {
            if v.universe_len() != source.len() || u.universe_len() != target.len() {
                return Err(RelationError::UniverseMismatch);
            }
        }
        Ok(ObservationMap {
            source,
            target,
            images,
        })
    }

    /// `T_Y`.
    pub fn source(&self) -> &Topology {
        &self.source
    }

    /// `T_X`.
    pub fn target(&self) -> &Topology {
        &self.target
    }

    pub fn get(&self, open: &PointSet) -> Option<&PointSet> {
        self.images.get(open)
    }

    /// Pairs in canonical order of the source open.
    pub fn pairs(&self) -> impl Iterator<Item = (&PointSet, &PointSet)> {
        self.images.iter()
    }

    fn source_opens(&self) -> &[PointSet] {
        self.source.opens().expect("checked at construction")
    }
}

impl PartialEq for ObservationMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && self.source.same_opens(&other.source)
            && self.target.same_opens(&other.target)
    }
}

/// `g = f⁻¹` restricted to the opens of `t_y`.
pub fn preimage_map(f: &PointMap, t_x: &Topology, t_y: &Topology) -> Result<ObservationMap, RelationError> {
    if let ContinuityVerdict::Discontinuous { open, preimage } = is_continuous(f, t_x, t_y)? {
        return Err(RelationError::NotContinuous { open, preimage });
    }
    let pairs: Vec<(PointSet, PointSet)> = t_y.opens()?.iter().map(|v| (v.clone(), f.preimage(v))).collect();
    ObservationMap::new(t_y.clone(), t_x.clone(), pairs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapViolation {
    /// An open of `T_Y` has no image.
    NotTotal { open: PointSet },
    /// A key that is not an open of `T_Y`.
    UnknownSource { set: PointSet },
    /// `g(V)` is not an open of `T_X`.
    NonOpenImage { open: PointSet, image: PointSet },
    /// `g(∅) ≠ ∅`.
    Contradiction { image: PointSet },
    /// `g(Y) ≠ X`.
    NoKnowledge { image: PointSet },
    /// `g(V1 ∩ V2) ≠ g(V1) ∩ g(V2)`.
    Intersection { left: PointSet, right: PointSet },
    /// `g(V1 ∪ V2) ≠ g(V1) ∪ g(V2)`.
    Union { left: PointSet, right: PointSet },
}

impl MapViolation {
    /// Short name of the violated consistency rule.
    pub fn rule(&self) -> &'static str {
        match self {
            MapViolation::NotTotal { .. } => "totality",
            MapViolation::UnknownSource { .. } => "unknown source",
            MapViolation::NonOpenImage { .. } => "open image",
            MapViolation::Contradiction { .. } => "contradiction",
            MapViolation::NoKnowledge { .. } => "no knowledge",
            MapViolation::Intersection { .. } => "conjunction",
            MapViolation::Union { .. } => "disjunction",
        }
    }
}

/// Checks the three consistency rules over every pair of opens and reports
/// the first violation.
pub fn validate_observation_map(g: &ObservationMap) -> Result<(), MapViolation> {
    let opens = g.source_opens();
    for v in opens {
        if !g.images.contains_key(v) {
            return Err(MapViolation::NotTotal { open: v.clone() });
        }
    }
    for (v, u) in &g.images {
        if !g.source.is_open(v) {
            return Err(MapViolation::UnknownSource { set: v.clone() });
        }
        if !g.target.is_open(u) {
            return Err(MapViolation::NonOpenImage {
                open: v.clone(),
                image: u.clone(),
            });
        }
    }
    let empty = g.source.points().empty_set();
    let image = &g.images[&empty];
    if !image.is_empty() {
        return Err(MapViolation::Contradiction { image: image.clone() });
    }
    let image = &g.images[&g.source.points().full_set()];
    if !image.is_full() {
        return Err(MapViolation::NoKnowledge { image: image.clone() });
    }
    for (i, a) in opens.iter().enumerate() {
        for b in &opens[i + 1..] {
            let (ga, gb) = (&g.images[a], &g.images[b]);
            let meet = g.images.get(&a.intersection(b));
            if meet != Some(&ga.intersection(gb)) {
                return Err(MapViolation::Intersection {
                    left: a.clone(),
                    right: b.clone(),
                });
            }
            let join = g.images.get(&a.union(b));
            if join != Some(&ga.union(gb)) {
                return Err(MapViolation::Union {
                    left: a.clone(),
                    right: b.clone(),
                });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("the singleton of point {point} is not generated by the opens (its atom is {atom:?})")]
    NotBorel { point: usize, atom: PointSet },
    #[error("the extension of point {point}'s singleton differs between routes: {via_atoms:?} vs {via_difference:?}")]
    Inconsistent {
        point: usize,
        via_atoms: PointSet,
        via_difference: PointSet,
    },
    #[error("the extension gives {extended:?} on open {open:?} but the map gives {given:?}")]
    Disagrees {
        open: PointSet,
        extended: PointSet,
        given: PointSet,
    },
    #[error("the map has no image for open {0:?}")]
    Missing(PointSet),
}

/// Extension `ḡ` of an observation map to every subset of `Y`.
///
/// Stored through its fibres `ĝ(y) = ḡ({y})`; `ḡ(A)` is the union of the
/// fibres of the points of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorelMap {
    source: Possibilities,
    target: Possibilities,
    fibers: Vec<PointSet>,
}

impl BorelMap {
    pub fn fiber(&self, y: usize) -> &PointSet {
        &self.fibers[y]
    }

    pub fn fibers(&self) -> &[PointSet] {
        &self.fibers
    }

    pub fn apply(&self, set: &PointSet) -> PointSet {
        set.iter()
            .fold(self.target.empty_set(), |acc, y| acc.union(&self.fibers[y]))
    }

    /// `ḡ(A)` for every subset `A` of `Y`, indexed by the bit pattern of `A`.
    pub fn table(&self) -> Vec<(PointSet, PointSet)> {
        assert!(self.source.len() <= 20, "power-set table too large");
        (0..1u64 << self.source.len())
            .map(|bits| {
                let a = PointSet::from_bits(self.source.len(), bits);
                let image = self.apply(&a);
                (a, image)
            })
            .collect()
    }
}

/// Extends `g` to all subsets of `Y` and checks the result.
///
/// Each singleton `{y}` is rebuilt from opens in two ways: as the atom
/// `⋂{V ∋ y} ∩ ⋂{Vᶜ : y ∉ V}`, and as the difference `U_y ∖ W_y` of the
/// minimal neighbourhood of `y` and the union of all opens missing `y`. The
/// images of both routes under the lattice and complement rules must agree,
/// and the extension must reproduce `g` on every open.
///
/// Fails with [`ExtensionError::NotBorel`] when `T_Y` cannot tell two points
/// apart, since their singletons are then not generated by the opens.
pub fn borel_extend(g: &ObservationMap) -> Result<BorelMap, ExtensionError> {
    let ty = &g.source;
    let x_points = g.target.points().clone();
    let y_points = ty.points().clone();
    let opens = g.source_opens();
    let image_of = |v: &PointSet| g.images.get(v).cloned().ok_or_else(|| ExtensionError::Missing(v.clone()));

    let mut fibers = Vec::with_capacity(y_points.len());
    for y in 0..y_points.len() {
        let mut atom = y_points.full_set();
        let mut via_atoms = x_points.full_set();
        let mut outside = y_points.empty_set();
        for v in opens {
            let gv = image_of(v)?;
            if v.contains(y) {
                atom.intersect_with(v);
                via_atoms.intersect_with(&gv);
            } else {
                atom.intersect_with(&v.complement());
                via_atoms.intersect_with(&gv.complement());
                outside.union_with(v);
            }
        }
        if atom.count() != 1 {
            return Err(ExtensionError::NotBorel { point: y, atom });
        }
        let hood = ty.neighborhood(y);
        let via_difference = image_of(hood)?.difference(&image_of(&outside)?);
        if via_atoms != via_difference {
            return Err(ExtensionError::Inconsistent {
                point: y,
                via_atoms,
                via_difference,
            });
        }
        fibers.push(via_atoms);
    }
    let extension = BorelMap {
        source: y_points,
        target: x_points,
        fibers,
    };
    for v in opens {
        let given = image_of(v)?;
        let extended = extension.apply(v);
        if extended != given {
            return Err(ExtensionError::Disagrees {
                open: v.clone(),
                extended,
                given,
            });
        }
    }
    Ok(extension)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error("fibres of points {0} and {1} overlap; g is not induced by any function")]
    Overlap(usize, usize),
    #[error("point {0} lies in no fibre; g is not induced by any function")]
    Uncovered(usize),
    #[error("the reconstructed function does not reproduce g")]
    NotInduced,
    #[error(transparent)]
    Relation(#[from] RelationError),
}

/// The unique continuous `f` with `f⁻¹ = g` on the opens of `T_Y`.
pub fn reconstruct_function(g: &ObservationMap) -> Result<PointMap, ReconstructError> {
    let extension = borel_extend(g)?;
    let fibers = extension.fibers();
    for (i, a) in fibers.iter().enumerate() {
        for (j, b) in fibers.iter().enumerate().skip(i + 1) {
            if !a.is_disjoint(b) {
                return Err(ReconstructError::Overlap(i, j));
            }
        }
    }
    let x_points = g.target.points();
    let mut images = vec![usize::MAX; x_points.len()];
    for (y, fiber) in fibers.iter().enumerate() {
        for x in fiber.iter() {
            images[x] = y;
        }
    }
    if let Some(x) = images.iter().position(|&y| y == usize::MAX) {
        return Err(ReconstructError::Uncovered(x));
    }
    let f = PointMap::new(x_points.clone(), g.source.points().clone(), images)?;
    match preimage_map(&f, &g.target, &g.source) {
        Ok(back) if back == *g => Ok(f),
        _ => Err(ReconstructError::NotInduced),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::generate_topology;

    fn space(labels: &[&str]) -> Possibilities {
        Possibilities::new(labels.iter().copied()).unwrap()
    }

    fn sierpinski() -> Topology {
        let x = space(&["a", "b"]);
        generate_topology(&x, &[x.set_of(&["b"]).unwrap()]).unwrap()
    }

    fn obs_map(ty: &Topology, tx: &Topology, pairs: &[(&[&str], &[&str])]) -> ObservationMap {
        let (y, x) = (ty.points(), tx.points());
        ObservationMap::new(
            ty.clone(),
            tx.clone(),
            pairs
                .iter()
                .map(|(v, u)| (y.set_of(v).unwrap(), x.set_of(u).unwrap())),
        )
        .unwrap()
    }

    #[test]
    fn identity_and_constants_are_continuous() {
        let s = sierpinski();
        let id = PointMap::identity(s.points());
        assert!(is_continuous(&id, &s, &s).unwrap().is_continuous());
        let d = Topology::discrete(&space(&["0", "1", "2"]));
        let c = PointMap::constant(s.points(), d.points(), 2).unwrap();
        assert!(is_continuous(&c, &s, &d).unwrap().is_continuous());
    }

    // Preimages: {}→{}, {0}→{a}, {1}→{b}, {0,1}→{a,b}; {a} is not open in the
    // Sierpiński space and {0} is the first failing open in canonical order.
    #[test]
    fn sierpinski_to_discrete_is_discontinuous() {
        let s = sierpinski();
        let d = Topology::discrete(&space(&["0", "1"]));
        let f = PointMap::new(s.points().clone(), d.points().clone(), vec![0, 1]).unwrap();
        assert_eq!(
            is_continuous(&f, &s, &d).unwrap(),
            ContinuityVerdict::Discontinuous {
                open: d.points().singleton(0),
                preimage: s.points().singleton(0),
            }
        );
        assert!(matches!(
            preimage_map(&f, &s, &d),
            Err(RelationError::NotContinuous { .. })
        ));
    }

    #[test]
    fn point_map_rejects_partial_tables() {
        let x = space(&["a", "b"]);
        assert_eq!(
            PointMap::new(x.clone(), x.clone(), vec![0]).unwrap_err(),
            RelationError::NotTotal { expected: 2, found: 1 }
        );
        assert_eq!(
            PointMap::new(x.clone(), x.clone(), vec![0, 5]).unwrap_err(),
            RelationError::ImageOutOfRange { point: 1, image: 5 }
        );
    }

    #[test]
    fn preimage_maps() {
        let tx = Topology::discrete(&space(&["a", "b"]));
        let id = PointMap::identity(tx.points());
        let g = preimage_map(&id, &tx, &tx).unwrap();
        assert!(g.pairs().all(|(v, u)| v == u));

        let ty = Topology::discrete(&space(&["c", "d"]));
        let f = PointMap::new(tx.points().clone(), ty.points().clone(), vec![0, 1]).unwrap();
        let g = preimage_map(&f, &tx, &ty).unwrap();
        let expected = obs_map(
            &ty,
            &tx,
            &[(&[], &[]), (&["c"], &["a"]), (&["d"], &["b"]), (&["c", "d"], &["a", "b"])],
        );
        assert_eq!(g, expected);
        assert_eq!(validate_observation_map(&g), Ok(()));

        let k = PointMap::constant(tx.points(), ty.points(), 0).unwrap();
        let g = preimage_map(&k, &tx, &ty).unwrap();
        assert_eq!(g.get(&ty.points().singleton(0)), Some(&tx.points().full_set()));
        assert_eq!(g.get(&ty.points().empty_set()), Some(&tx.points().empty_set()));
    }

    #[test]
    fn validation_reports_no_knowledge() {
        let tx = Topology::discrete(&space(&["a", "b"]));
        let ty = Topology::discrete(&space(&["c", "d"]));
        let g = obs_map(
            &ty,
            &tx,
            &[(&[], &[]), (&["c"], &["a"]), (&["d"], &[]), (&["c", "d"], &["a"])],
        );
        assert!(matches!(
            validate_observation_map(&g),
            Err(v @ MapViolation::NoKnowledge { .. }) if v.rule() == "no knowledge"
        ));
    }

    #[test]
    fn validation_reports_intersection_pair() {
        let tx = Topology::discrete(&space(&["a", "b"]));
        let ty = Topology::discrete(&space(&["c", "d"]));
        let g = obs_map(
            &ty,
            &tx,
            &[
                (&[], &[]),
                (&["c"], &["a", "b"]),
                (&["d"], &["a", "b"]),
                (&["c", "d"], &["a", "b"]),
            ],
        );
        assert_eq!(
            validate_observation_map(&g),
            Err(MapViolation::Intersection {
                left: ty.points().singleton(0),
                right: ty.points().singleton(1),
            })
        );
    }

    #[test]
    fn validation_reports_structural_problems() {
        let tx = sierpinski();
        let ty = Topology::discrete(&space(&["c", "d"]));
        let partial = obs_map(&ty, &tx, &[(&[], &[]), (&["c", "d"], &["a", "b"])]);
        assert!(matches!(
            validate_observation_map(&partial),
            Err(MapViolation::NotTotal { .. })
        ));
        let non_open = obs_map(
            &ty,
            &tx,
            &[(&[], &[]), (&["c"], &["a"]), (&["d"], &["b"]), (&["c", "d"], &["a", "b"])],
        );
        assert_eq!(
            validate_observation_map(&non_open),
            Err(MapViolation::NonOpenImage {
                open: ty.points().singleton(0),
                image: tx.points().singleton(0),
            })
        );
        let g_empty = obs_map(
            &ty,
            &tx,
            &[(&[], &["b"]), (&["c"], &["b"]), (&["d"], &["b"]), (&["c", "d"], &["a", "b"])],
        );
        assert!(matches!(
            validate_observation_map(&g_empty),
            Err(MapViolation::Contradiction { .. })
        ));
    }

    #[test]
    fn borel_extension_of_a_swap() {
        let tx = Topology::discrete(&space(&["a", "b"]));
        let ty = Topology::discrete(&space(&["c", "d"]));
        let g = obs_map(
            &ty,
            &tx,
            &[(&[], &[]), (&["c"], &["a"]), (&["d"], &["b"]), (&["c", "d"], &["a", "b"])],
        );
        let bar = borel_extend(&g).unwrap();
        let (c, d) = (ty.points().singleton(0), ty.points().singleton(1));
        assert_eq!(bar.apply(&c), tx.points().singleton(0));
        // Complement route: ḡ({c}ᶜ) = ḡ({d}) = {b} = {a}ᶜ.
        assert_eq!(bar.apply(&c.complement()), bar.apply(&d));
        assert_eq!(bar.apply(&c.complement()), bar.apply(&c).complement());
        assert_eq!(bar.apply(&ty.points().empty_set()), tx.points().empty_set());
        assert_eq!(bar.apply(&ty.points().full_set()), tx.points().full_set());
        assert_eq!(bar.table().len(), 4);
    }

    #[test]
    fn borel_extension_of_identity_is_identity() {
        let t = Topology::discrete(&space(&["a", "b"]));
        let g = preimage_map(&PointMap::identity(t.points()), &t, &t).unwrap();
        let bar = borel_extend(&g).unwrap();
        for (a, image) in bar.table() {
            assert_eq!(a, image);
        }
    }

    #[test]
    fn coarse_codomain_cannot_extend() {
        let tx = Topology::discrete(&space(&["a", "b"]));
        let ty = Topology::indiscrete(&space(&["c", "d"]));
        let g = obs_map(&ty, &tx, &[(&[], &[]), (&["c", "d"], &["a", "b"])]);
        assert_eq!(validate_observation_map(&g), Ok(()));
        assert!(matches!(
            borel_extend(&g),
            Err(ExtensionError::NotBorel { point: 0, .. })
        ));
        assert!(matches!(
            reconstruct_function(&g),
            Err(ReconstructError::Extension(ExtensionError::NotBorel { .. }))
        ));
    }

    #[test]
    fn reconstructs_swap_identity_and_constant() {
        let tx = Topology::discrete(&space(&["a", "b"]));
        let ty = Topology::discrete(&space(&["c", "d"]));
        let g = obs_map(
            &ty,
            &tx,
            &[(&[], &[]), (&["c"], &["a"]), (&["d"], &["b"]), (&["c", "d"], &["a", "b"])],
        );
        assert_eq!(reconstruct_function(&g).unwrap().images(), &[0, 1]);

        let s = sierpinski();
        let id = preimage_map(&PointMap::identity(s.points()), &s, &s).unwrap();
        assert_eq!(reconstruct_function(&id).unwrap(), PointMap::identity(s.points()));

        // ĝ(c) = {a,b}, ĝ(d) = ∅.
        let g = obs_map(
            &ty,
            &tx,
            &[(&[], &[]), (&["c"], &["a", "b"]), (&["d"], &[]), (&["c", "d"], &["a", "b"])],
        );
        let bar = borel_extend(&g).unwrap();
        assert_eq!(bar.fiber(0), &tx.points().full_set());
        assert!(bar.fiber(1).is_empty());
        assert_eq!(reconstruct_function(&g).unwrap().images(), &[0, 0]);
    }

    #[test]
    fn reconstruction_rejects_unsound_maps() {
        let tx = Topology::discrete(&space(&["a", "b"]));
        let ty = Topology::discrete(&space(&["c", "d"]));
        let lossy = obs_map(
            &ty,
            &tx,
            &[(&[], &[]), (&["c"], &["a"]), (&["d"], &[]), (&["c", "d"], &["a"])],
        );
        assert_eq!(reconstruct_function(&lossy), Err(ReconstructError::Uncovered(1)));

        let overlapping = obs_map(
            &ty,
            &tx,
            &[
                (&[], &[]),
                (&["c"], &["a", "b"]),
                (&["d"], &["a", "b"]),
                (&["c", "d"], &["a", "b"]),
            ],
        );
        assert!(matches!(
            reconstruct_function(&overlapping),
            Err(ReconstructError::Extension(ExtensionError::Disagrees { .. }))
        ));
    }
}
