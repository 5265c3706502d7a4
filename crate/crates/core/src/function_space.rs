//! Continuous functions between finite spaces and the basis-to-basis topology.
//!
//! `C(X, Y)` is enumerated exhaustively and each function is identified by its
//! canonical index: functions are ordered lexicographically on their value
//! tuples, with the first domain point most significant. The resulting
//! function universe is an ordinary [`Possibilities`] value, so every check in
//! [`crate::topology`] applies to it unchanged.

use std::collections::HashSet;

use thiserror::Error;

use crate::points::{PointSet, Possibilities, PointsError};
use crate::relationship::{is_continuous, PointMap, RelationError};
use crate::topology::{generate_basis, generate_topology, is_hausdorff, SubBasis, Topology, TopologyError};

/// Default ceiling on the number of candidate maps `|Y|^|X|`.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctionSpaceError {
    #[error("enumerating C(X,Y) needs {required} candidates, above the cap of {cap}")]
    CapExceeded { required: u128, cap: u64 },
    #[error("{which} is not open in its space")]
    NotOpen { which: &'static str },
    #[error("{which} basis is invalid: {reason}")]
    InvalidBasis { which: &'static str, reason: String },
    #[error("the sub-basis sets do not cover every function")]
    Uncovered,
    #[error("the codomain is not Hausdorff")]
    CodomainNotHausdorff,
    #[error("functions {0} and {1} are equal")]
    SameFunction(usize, usize),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Points(#[from] PointsError),
}

/// The continuous maps from `T_X` to `T_Y`, in canonical order.
#[derive(Debug, Clone)]
pub struct FunctionSpace {
    domain: Topology,
    codomain: Topology,
    functions: Vec<PointMap>,
    universe: Possibilities,
}

impl FunctionSpace {
    pub fn domain(&self) -> &Topology {
        &self.domain
    }

    pub fn codomain(&self) -> &Topology {
        &self.codomain
    }

    pub fn functions(&self) -> &[PointMap] {
        &self.functions
    }

    pub fn function(&self, index: usize) -> &PointMap {
        &self.functions[index]
    }

    /// Labels `f0`, `f1`, ... for the function indices.
    pub fn universe(&self) -> &Possibilities {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn index_of(&self, f: &PointMap) -> Option<usize> {
        self.functions.iter().position(|g| g == f)
    }
}

/// Every map `X → Y` in canonical order, continuous or not.
pub fn all_maps(domain: &Possibilities, codomain: &Possibilities) -> impl Iterator<Item = PointMap> {
    let (domain, codomain) = (domain.clone(), codomain.clone());
    let (n, m) = (domain.len(), codomain.len());
    let mut next = Some(vec![0usize; n]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        // Odometer with the last domain point as the fastest digit.
        let mut carried = true;
        for digit in succ.iter_mut().rev() {
            *digit += 1;
            if *digit < m {
                carried = false;
                break;
            }
            *digit = 0;
        }
        if !carried {
            next = Some(succ);
        }
        Some(PointMap::new(domain.clone(), codomain.clone(), current).expect("odometer stays in range"))
    })
}

pub fn enumerate_continuous(t_x: &Topology, t_y: &Topology, cap: u64) -> Result<FunctionSpace, FunctionSpaceError> {
    let required = (t_y.len() as u128).checked_pow(t_x.len() as u32).unwrap_or(u128::MAX);
    if required > cap as u128 {
        return Err(FunctionSpaceError::CapExceeded { required, cap });
    }
    let mut functions = Vec::new();
    for f in all_maps(t_x.points(), t_y.points()) {
        if is_continuous(&f, t_x, t_y)?.is_continuous() {
            functions.push(f);
        }
    }
    // Constants are always continuous and |Y| > 1, so there are at least two.
    let universe = Possibilities::numbered("f", functions.len())?;
    Ok(FunctionSpace {
        domain: t_x.clone(),
        codomain: t_y.clone(),
        functions,
        universe,
    })
}

/// `V(U_X, U_Y) = { f : f(U_X) ⊆ U_Y }` as a set of function indices.
///
/// Containment is non-strict, and `V(∅, ·)` is every function.
pub fn vset(fs: &FunctionSpace, u_x: &PointSet, u_y: &PointSet) -> Result<PointSet, FunctionSpaceError> {
    if !fs.domain.is_open(u_x) {
        return Err(FunctionSpaceError::NotOpen { which: "U_X" });
    }
    if !fs.codomain.is_open(u_y) {
        return Err(FunctionSpaceError::NotOpen { which: "U_Y" });
    }
    Ok(PointSet::from_indices(
        fs.len(),
        fs.functions
            .iter()
            .enumerate()
            .filter(|(_, f)| f.image(u_x).is_subset(u_y))
            .map(|(i, _)| i),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VSet {
    pub domain_set: PointSet,
    pub codomain_set: PointSet,
    pub members: PointSet,
}

/// The topology on `C(X, Y)` generated by `V(U_X, U_Y)` over `B_X × B_Y`.
#[derive(Debug, Clone)]
pub struct BasisToBasisTopology {
    basis_x: Vec<PointSet>,
    basis_y: Vec<PointSet>,
    subbasis: Vec<VSet>,
    topology: Topology,
}

impl BasisToBasisTopology {
    pub fn basis_x(&self) -> &[PointSet] {
        &self.basis_x
    }

    pub fn basis_y(&self) -> &[PointSet] {
        &self.basis_y
    }

    /// One entry per pair in `B_X × B_Y`, in the order of the bases.
    pub fn subbasis(&self) -> &[VSet] {
        &self.subbasis
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }
}

fn check_basis(t: &Topology, basis: &[PointSet], which: &'static str) -> Result<(), FunctionSpaceError> {
    for b in basis {
        if !t.is_open(b) {
            return Err(FunctionSpaceError::InvalidBasis {
                which,
                reason: format!("{} is not open", t.points().format_set(b)),
            });
        }
    }
    // Every open is a union of basis members iff each minimal neighbourhood is.
    for h in t.neighborhoods() {
        let covered = basis
            .iter()
            .filter(|b| b.is_subset(h))
            .fold(t.points().empty_set(), |acc, b| acc.union(b));
        if &covered != h {
            return Err(FunctionSpaceError::InvalidBasis {
                which,
                reason: format!("{} is not a union of basis members", t.points().format_set(h)),
            });
        }
    }
    Ok(())
}

pub fn generate_b2b_topology(
    fs: &FunctionSpace,
    b_x: &[PointSet],
    b_y: &[PointSet],
) -> Result<BasisToBasisTopology, FunctionSpaceError> {
    check_basis(&fs.domain, b_x, "domain")?;
    check_basis(&fs.codomain, b_y, "codomain")?;
    let mut subbasis = Vec::with_capacity(b_x.len() * b_y.len());
    for u_x in b_x {
        for u_y in b_y {
            subbasis.push(VSet {
                domain_set: u_x.clone(),
                codomain_set: u_y.clone(),
                members: vset(fs, u_x, u_y)?,
            });
        }
    }
    let cover = subbasis
        .iter()
        .fold(fs.universe.empty_set(), |acc, v| acc.union(&v.members));
    if !cover.is_full() {
        return Err(FunctionSpaceError::Uncovered);
    }
    let generators: Vec<PointSet> = {
        let mut seen = HashSet::new();
        subbasis
            .iter()
            .filter(|v| seen.insert(v.members.clone()))
            .map(|v| v.members.clone())
            .collect()
    };
    let sb = SubBasis::new(fs.universe.clone(), generators)?;
    let basis = generate_basis(&sb);
    let topology = generate_topology(&fs.universe, &basis)?;
    Ok(BasisToBasisTopology {
        basis_x: b_x.to_vec(),
        basis_y: b_y.to_vec(),
        subbasis,
        topology,
    })
}

impl BasisToBasisTopology {
    /// Disjoint sub-basis opens around two distinct functions, built as in the
    /// Hausdorff argument: pick the first point `x` where `f(x) ≠ g(x)`, take
    /// disjoint neighbourhoods `V1 ∋ f(x)`, `V2 ∋ g(x)` in `Y` and the minimal
    /// neighbourhood `U` of `x`, and return `V(U, V1)` and `V(U, V2)`.
    pub fn separate(&self, fs: &FunctionSpace, f: usize, g: usize) -> Result<(VSet, VSet), FunctionSpaceError> {
        let (fm, gm) = (fs.function(f), fs.function(g));
        let x = (0..fs.domain.len())
            .find(|&x| fm.apply(x) != gm.apply(x))
            .ok_or(FunctionSpaceError::SameFunction(f, g))?;
        let (v1, v2) = (
            fs.codomain.neighborhood(fm.apply(x)).clone(),
            fs.codomain.neighborhood(gm.apply(x)).clone(),
        );
        if !v1.is_disjoint(&v2) {
            return Err(FunctionSpaceError::CodomainNotHausdorff);
        }
        let u = fs.domain.neighborhood(x).clone();
        let find = |u_y: &PointSet| {
            self.subbasis
                .iter()
                .find(|v| v.domain_set == u && &v.codomain_set == u_y)
                .cloned()
                .ok_or_else(|| FunctionSpaceError::InvalidBasis {
                    which: "chosen",
                    reason: "minimal neighbourhood missing from basis".into(),
                })
        };
        Ok((find(&v1)?, find(&v2)?))
    }

    pub fn is_hausdorff(&self) -> bool {
        is_hausdorff(&self.topology).is_hausdorff()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// Every basis-to-basis open is open-open, but not conversely.
    StrictlyCoarser,
    StrictlyFiner,
    Incomparable,
}

#[derive(Debug, Clone)]
pub struct OpenOpenComparison {
    pub relation: Relation,
    /// An open set present in one topology but not the other.
    pub witness: Option<PointSet>,
    pub open_open: Topology,
}

/// Compares with the topology generated by the full open-set families.
pub fn compare_open_open(
    fs: &FunctionSpace,
    b2b: &BasisToBasisTopology,
) -> Result<OpenOpenComparison, FunctionSpaceError> {
    let open_open = generate_b2b_topology(fs, fs.domain.opens()?, fs.codomain.opens()?)?.topology;
    let ours = &b2b.topology;
    let missing_from = |a: &Topology, b: &Topology| a.neighborhoods().iter().find(|h| !b.is_open(h)).cloned();
    let extra_in_ours = missing_from(ours, &open_open);
    let extra_in_theirs = missing_from(&open_open, ours);
    let (relation, witness) = match (extra_in_ours, extra_in_theirs) {
        (None, None) => (Relation::Equal, None),
        (None, Some(w)) => (Relation::StrictlyCoarser, Some(w)),
        (Some(w), None) => (Relation::StrictlyFiner, Some(w)),
        (Some(w), Some(_)) => (Relation::Incomparable, Some(w)),
    };
    Ok(OpenOpenComparison {
        relation,
        witness,
        open_open,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::is_topology;

    fn space(labels: &[&str]) -> Possibilities {
        Possibilities::new(labels.iter().copied()).unwrap()
    }

    fn sierpinski() -> Topology {
        let x = space(&["a", "b"]);
        generate_topology(&x, &[x.set_of(&["b"]).unwrap()]).unwrap()
    }

    fn discrete2() -> (Topology, Topology) {
        (
            Topology::discrete(&space(&["a", "b"])),
            Topology::discrete(&space(&["0", "1"])),
        )
    }

    #[test]
    fn all_maps_are_lexicographic() {
        let x = space(&["a", "b"]);
        let y = space(&["0", "1", "2"]);
        let tables: Vec<Vec<usize>> = all_maps(&x, &y).map(|f| f.images().to_vec()).collect();
        assert_eq!(tables.len(), 9);
        assert_eq!(tables[0], vec![0, 0]);
        assert_eq!(tables[1], vec![0, 1]);
        assert_eq!(tables[3], vec![1, 0]);
        assert_eq!(tables[8], vec![2, 2]);
    }

    #[test]
    fn discrete_pairs_have_four_functions() {
        let (tx, ty) = discrete2();
        assert_eq!(enumerate_continuous(&tx, &ty, 100).unwrap().len(), 4);
    }

    // The two non-constant maps pull {0} or {1} back to {a}, which is not open.
    #[test]
    fn sierpinski_into_discrete_has_only_constants() {
        let (_, ty) = discrete2();
        let fs = enumerate_continuous(&sierpinski(), &ty, 100).unwrap();
        let tables: Vec<&[usize]> = fs.functions().iter().map(|f| f.images()).collect();
        assert_eq!(tables, [&[0, 0][..], &[1, 1][..]]);
    }

    #[test]
    fn self_maps_include_identity() {
        let s = sierpinski();
        let fs = enumerate_continuous(&s, &s, 100).unwrap();
        assert!(fs.index_of(&PointMap::identity(s.points())).is_some());
        // Order-preserving maps on a ≤ b: (a,a), (a,b), (b,b).
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn cap_is_enforced() {
        let t = Topology::discrete(&Possibilities::numbered("p", 5).unwrap());
        assert_eq!(
            enumerate_continuous(&t, &t, 1000).unwrap_err(),
            FunctionSpaceError::CapExceeded { required: 3125, cap: 1000 }
        );
    }

    // Functions in order: (0,0), (0,1), (1,0), (1,1); a ↦ 0 for the first two.
    #[test]
    fn vsets_on_discrete_pairs() {
        let (tx, ty) = discrete2();
        let fs = enumerate_continuous(&tx, &ty, 100).unwrap();
        let v = vset(&fs, &tx.points().singleton(0), &ty.points().singleton(0)).unwrap();
        assert_eq!(v.iter().collect::<Vec<_>>(), vec![0, 1]);
        assert!(vset(&fs, &tx.points().empty_set(), &ty.points().empty_set()).unwrap().is_full());
        assert!(vset(&fs, &tx.points().full_set(), &ty.points().full_set()).unwrap().is_full());
    }

    #[test]
    fn vset_rejects_non_open_arguments() {
        let s = sierpinski();
        let (_, ty) = discrete2();
        let fs = enumerate_continuous(&s, &ty, 100).unwrap();
        assert_eq!(
            vset(&fs, &s.points().singleton(0), &ty.points().singleton(0)),
            Err(FunctionSpaceError::NotOpen { which: "U_X" })
        );
    }

    #[test]
    fn b2b_on_discrete_pairs_is_discrete() {
        let (tx, ty) = discrete2();
        let fs = enumerate_continuous(&tx, &ty, 100).unwrap();
        let b2b = generate_b2b_topology(&fs, &tx.minimal_basis(), &ty.minimal_basis()).unwrap();
        assert_eq!(b2b.subbasis().len(), 4);
        assert!(is_topology(b2b.topology()));
        for i in 0..4 {
            assert!(b2b.topology().is_open(&fs.universe().singleton(i)));
        }
        assert!(b2b.is_hausdorff());

        let full_y = generate_b2b_topology(&fs, &tx.minimal_basis(), ty.opens().unwrap()).unwrap();
        assert!(full_y.topology().same_opens(b2b.topology()));
    }

    #[test]
    fn constants_are_separated_by_vsets() {
        let (tx, ty) = discrete2();
        let fs = enumerate_continuous(&tx, &ty, 100).unwrap();
        let b2b = generate_b2b_topology(&fs, &tx.minimal_basis(), &ty.minimal_basis()).unwrap();
        let (c0, c1) = (0, 3);
        let (t1, t2) = b2b.separate(&fs, c0, c1).unwrap();
        assert!(t1.members.contains(c0) && t2.members.contains(c1));
        assert!(t1.members.is_disjoint(&t2.members));
        assert_eq!(b2b.separate(&fs, 1, 1), Err(FunctionSpaceError::SameFunction(1, 1)));
    }

    #[test]
    fn invalid_basis_is_rejected() {
        let (tx, ty) = discrete2();
        let fs = enumerate_continuous(&tx, &ty, 100).unwrap();
        let err = generate_b2b_topology(&fs, &[tx.points().full_set()], &ty.minimal_basis()).unwrap_err();
        assert!(matches!(err, FunctionSpaceError::InvalidBasis { which: "domain", .. }));
    }

    #[test]
    fn open_open_with_full_bases_is_equal() {
        let s = sierpinski();
        let (_, ty) = discrete2();
        for (tx, ty) in [(s.clone(), s.clone()), (s.clone(), ty.clone()), (ty.clone(), s.clone())] {
            let fs = enumerate_continuous(&tx, &ty, 100).unwrap();
            let b2b = generate_b2b_topology(&fs, tx.opens().unwrap(), ty.opens().unwrap()).unwrap();
            let report = compare_open_open(&fs, &b2b).unwrap();
            assert_eq!(report.relation, Relation::Equal);
            assert!(report.witness.is_none());
        }
    }
}
