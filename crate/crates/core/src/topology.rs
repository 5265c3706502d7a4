//! Finite topologies of verifiable sets.
//!
//! A [`Topology`] is stored through a basis plus the minimal open
//! neighbourhood of every point. On a finite universe those neighbourhoods
//! determine the whole topology: a set is open iff it contains the
//! neighbourhood of each of its points. The explicit list of opens is
//! materialized only when it stays below [`OPENS_LIMIT`]; a discrete space on
//! 64 points would otherwise need 2^64 entries.

use std::collections::HashSet;

use thiserror::Error;

use crate::points::{canonicalize, PointSet, Possibilities};

/// Largest open-set family that is listed explicitly.
pub const OPENS_LIMIT: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("set lives in a universe of {found} points, expected {expected}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("point {0} is outside the universe")]
    PointOutOfRange(usize),
    #[error("a point cannot be separated from itself")]
    SamePoint,
    #[error("the open sets were not materialized ({neighborhoods} minimal neighbourhoods, more than {limit} opens)")]
    OpensNotMaterialized { neighborhoods: usize, limit: usize },
}

/// A generating family of sets over a shared universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubBasis {
    points: Possibilities,
    sets: Vec<PointSet>,
}

impl SubBasis {
    pub fn new(points: Possibilities, sets: Vec<PointSet>) -> Result<Self, TopologyError> {
        for s in &sets {
            check_universe(&points, s)?;
        }
        Ok(SubBasis { points, sets })
    }

    pub fn points(&self) -> &Possibilities {
        &self.points
    }

    pub fn sets(&self) -> &[PointSet] {
        &self.sets
    }
}

fn check_universe(points: &Possibilities, set: &PointSet) -> Result<(), TopologyError> {
    if set.universe_len() != points.len() {
        return Err(TopologyError::UniverseMismatch {
            expected: points.len(),
            found: set.universe_len(),
        });
    }
    Ok(())
}

/// Closes `generators` under finite intersection.
fn intersection_closure(generators: &[PointSet]) -> HashSet<PointSet> {
    let mut closure: HashSet<PointSet> = HashSet::with_capacity(generators.len());
    let mut frontier: Vec<PointSet> = Vec::new();
    for g in generators {
        if closure.insert(g.clone()) {
            frontier.push(g.clone());
        }
    }
    let mut distinct: Vec<PointSet> = closure.iter().cloned().collect();
    distinct.sort();
    while let Some(s) = frontier.pop() {
        for g in &distinct {
            let t = s.intersection(g);
            if !closure.contains(&t) {
                closure.insert(t.clone());
                frontier.push(t);
            }
        }
    }
    closure
}

/// All intersections of non-empty finite subfamilies of the sub-basis, plus
/// the whole universe (the empty intersection), in canonical order.
pub fn generate_basis(sb: &SubBasis) -> Vec<PointSet> {
    let mut closure = intersection_closure(&sb.sets);
    closure.insert(sb.points.full_set());
    let mut basis: Vec<PointSet> = closure.into_iter().collect();
    basis.sort();
    basis
}

/// The natural topology generated by a family of verifiable sets.
#[derive(Debug, Clone)]
pub struct Topology {
    points: Possibilities,
    basis: Vec<PointSet>,
    neighborhoods: Vec<PointSet>,
    opens: Option<Vec<PointSet>>,
}

/// Intersection of the family members containing each point; the whole
/// universe for a point no member covers.
fn neighborhoods_of(points: &Possibilities, family: &[PointSet]) -> Vec<PointSet> {
    let mut hoods = vec![points.full_set(); points.len()];
    for set in family {
        for x in set.iter() {
            hoods[x].intersect_with(set);
        }
    }
    hoods
}

/// Every union of neighbourhoods, or `None` past `limit`.
fn enumerate_unions(points: &Possibilities, hoods: &[PointSet], limit: usize) -> Option<Vec<PointSet>> {
    let mut distinct = hoods.to_vec();
    canonicalize(&mut distinct);
    // The inclusion-minimal neighbourhoods are pairwise disjoint, so their
    // unions alone give 2^m distinct opens.
    let minimal = distinct
        .iter()
        .filter(|h| !distinct.iter().any(|k| k != *h && k.is_subset(h)))
        .count();
    if minimal >= usize::BITS as usize || 1usize << minimal > limit {
        return None;
    }
    let mut opens: HashSet<PointSet> = HashSet::new();
    opens.insert(points.empty_set());
    for h in &distinct {
        let grown: Vec<PointSet> = opens
            .iter()
            .map(|s| s.union(h))
            .filter(|u| !opens.contains(u))
            .collect();
        opens.extend(grown);
        if opens.len() > limit {
            return None;
        }
    }
    let mut opens: Vec<PointSet> = opens.into_iter().collect();
    opens.sort();
    Some(opens)
}

/// Topology whose opens are all unions of members of `family`.
///
/// When `family` is not already a basis (it misses the universe, or some
/// pairwise intersection is not a union of members) it is first closed under
/// finite intersection, so the result always satisfies the axioms.
pub fn generate_topology(points: &Possibilities, family: &[PointSet]) -> Result<Topology, TopologyError> {
    for s in family {
        check_universe(points, s)?;
    }
    let mut basis = family.to_vec();
    canonicalize(&mut basis);
    let mut hoods = neighborhoods_of(points, &basis);
    let covers = basis.iter().fold(points.empty_set(), |acc, s| acc.union(s)).is_full();
    let members: HashSet<&PointSet> = basis.iter().collect();
    let is_basis = covers && hoods.iter().all(|h| members.contains(h));
    drop(members);
    if !is_basis {
        let sb = SubBasis::new(points.clone(), basis)?;
        basis = generate_basis(&sb);
        hoods = neighborhoods_of(points, &basis);
    }
    let opens = enumerate_unions(points, &hoods, OPENS_LIMIT);
    Ok(Topology {
        points: points.clone(),
        basis,
        neighborhoods: hoods,
        opens,
    })
}

impl Topology {
    /// An unchecked candidate topology with an explicit open family; it
    /// doubles as its own basis. Use [`check_axioms`] before relying on it.
    pub fn from_opens(points: &Possibilities, opens: Vec<PointSet>) -> Result<Self, TopologyError> {
        for s in &opens {
            check_universe(points, s)?;
        }
        let mut opens = opens;
        canonicalize(&mut opens);
        let neighborhoods = neighborhoods_of(points, &opens);
        Ok(Topology {
            points: points.clone(),
            basis: opens.clone(),
            neighborhoods,
            opens: Some(opens),
        })
    }

    pub fn discrete(points: &Possibilities) -> Self {
        let singletons: Vec<PointSet> = (0..points.len()).map(|i| points.singleton(i)).collect();
        generate_topology(points, &singletons).expect("singletons share the universe")
    }

    pub fn indiscrete(points: &Possibilities) -> Self {
        generate_topology(points, &[points.full_set()]).expect("whole set shares the universe")
    }

    pub fn points(&self) -> &Possibilities {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The basis this topology was generated from, in canonical order.
    pub fn basis(&self) -> &[PointSet] {
        &self.basis
    }

    /// Minimal open neighbourhood of each point.
    pub fn neighborhoods(&self) -> &[PointSet] {
        &self.neighborhoods
    }

    pub fn neighborhood(&self, x: usize) -> &PointSet {
        &self.neighborhoods[x]
    }

    /// The distinct minimal neighbourhoods: the smallest basis, contained in
    /// every other basis of the same topology.
    pub fn minimal_basis(&self) -> Vec<PointSet> {
        let mut hoods = self.neighborhoods.clone();
        canonicalize(&mut hoods);
        hoods
    }

    pub fn opens(&self) -> Result<&[PointSet], TopologyError> {
        self.opens.as_deref().ok_or(TopologyError::OpensNotMaterialized {
            neighborhoods: self.minimal_basis().len(),
            limit: OPENS_LIMIT,
        })
    }

    pub fn opens_materialized(&self) -> bool {
        self.opens.is_some()
    }

    pub fn is_open(&self, set: &PointSet) -> bool {
        if set.universe_len() != self.len() {
            return false;
        }
        match &self.opens {
            Some(opens) => opens.binary_search(set).is_ok(),
            None => set.iter().all(|x| self.neighborhoods[x].is_subset(set)),
        }
    }

    pub fn is_closed(&self, set: &PointSet) -> bool {
        self.is_open(&set.complement())
    }

    /// Same universe and same open sets, regardless of the generating basis.
    pub fn same_opens(&self, other: &Topology) -> bool {
        self.points == other.points
            && self.neighborhoods.iter().all(|h| other.is_open(h))
            && other.neighborhoods.iter().all(|h| self.is_open(h))
    }

    fn check_point(&self, x: usize) -> Result<(), TopologyError> {
        if x < self.len() {
            Ok(())
        } else {
            Err(TopologyError::PointOutOfRange(x))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    MissingEmpty,
    MissingWhole,
    IntersectionNotOpen(PointSet, PointSet),
    UnionNotOpen(PointSet, PointSet),
    BasisMemberNotOpen(PointSet),
    NotUnionOfBasis(PointSet),
}

/// Checks every topology axiom exhaustively and reports the first failure.
///
/// With materialized opens every pair is checked directly. Otherwise the
/// opens are by construction the unions of the basis and the check reduces to
/// the basis criterion.
pub fn check_axioms(t: &Topology) -> Result<(), AxiomViolation> {
    let Some(opens) = &t.opens else {
        let union = t.basis.iter().fold(t.points.empty_set(), |acc, s| acc.union(s));
        if !union.is_full() {
            return Err(AxiomViolation::MissingWhole);
        }
        let members: HashSet<&PointSet> = t.basis.iter().collect();
        for h in &t.neighborhoods {
            if !members.contains(h) {
                return Err(AxiomViolation::NotUnionOfBasis(h.clone()));
            }
        }
        return Ok(());
    };
    let members: HashSet<&PointSet> = opens.iter().collect();
    if !members.contains(&t.points.empty_set()) {
        return Err(AxiomViolation::MissingEmpty);
    }
    if !members.contains(&t.points.full_set()) {
        return Err(AxiomViolation::MissingWhole);
    }
    for (i, a) in opens.iter().enumerate() {
        for b in &opens[i + 1..] {
            if !members.contains(&a.intersection(b)) {
                return Err(AxiomViolation::IntersectionNotOpen(a.clone(), b.clone()));
            }
            if !members.contains(&a.union(b)) {
                return Err(AxiomViolation::UnionNotOpen(a.clone(), b.clone()));
            }
        }
    }
    for b in &t.basis {
        if !members.contains(b) {
            return Err(AxiomViolation::BasisMemberNotOpen(b.clone()));
        }
    }
    for u in opens {
        let covered = t
            .basis
            .iter()
            .filter(|b| b.is_subset(u))
            .fold(t.points.empty_set(), |acc, b| acc.union(b));
        if &covered != u {
            return Err(AxiomViolation::NotUnionOfBasis(u.clone()));
        }
    }
    Ok(())
}

pub fn is_topology(t: &Topology) -> bool {
    check_axioms(t).is_ok()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HausdorffVerdict {
    Hausdorff,
    /// The first pair (in index order) that no two disjoint opens separate.
    Inseparable(usize, usize),
}

impl HausdorffVerdict {
    pub fn is_hausdorff(&self) -> bool {
        matches!(self, HausdorffVerdict::Hausdorff)
    }
}

/// Requires `is_topology(t)`.
pub fn is_hausdorff(t: &Topology) -> HausdorffVerdict {
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            if !t.neighborhoods[i].is_disjoint(&t.neighborhoods[j]) {
                return HausdorffVerdict::Inseparable(i, j);
            }
        }
    }
    HausdorffVerdict::Hausdorff
}

/// Disjoint opens around `x1` and `x2`, or `None` if the points are
/// inseparable. Requires `is_topology(t)`.
///
/// Any opens containing the points contain their minimal neighbourhoods, so
/// those are the only candidates worth checking.
pub fn separating_pair(
    t: &Topology,
    x1: usize,
    x2: usize,
) -> Result<Option<(PointSet, PointSet)>, TopologyError> {
    t.check_point(x1)?;
    t.check_point(x2)?;
    if x1 == x2 {
        return Err(TopologyError::SamePoint);
    }
    let (u1, u2) = (&t.neighborhoods[x1], &t.neighborhoods[x2]);
    Ok(u1.is_disjoint(u2).then(|| (u1.clone(), u2.clone())))
}

/// Closed (refutable) sets and clopen (decidable) sets, canonically ordered.
pub fn closed_and_clopen_sets(t: &Topology) -> Result<(Vec<PointSet>, Vec<PointSet>), TopologyError> {
    let opens = t.opens()?;
    let mut closed: Vec<PointSet> = opens.iter().map(PointSet::complement).collect();
    canonicalize(&mut closed);
    let clopen = closed.iter().filter(|c| t.is_open(c)).cloned().collect();
    Ok((closed, clopen))
}
