//! Corpus builders and brute-force oracles shared by the integration tests.
//!
//! Everything here works on raw `u64` bitmasks so that it stays independent
//! of the library's own set and closure code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use veritop::points::{PointSet, Possibilities};
use veritop::topology::Topology;

pub fn universe(n: usize) -> Possibilities {
    Possibilities::numbered("x", n).unwrap()
}

pub fn set(n: usize, mask: u64) -> PointSet {
    PointSet::from_bits(n, mask)
}

pub fn mask(s: &PointSet) -> u64 {
    s.iter().fold(0, |m, i| m | 1 << i)
}

pub fn full_mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

/// Closes a family under pairwise intersection and union, adding the empty
/// set and the whole space, until nothing new appears.
pub fn closure_oracle(n: usize, family: &[u64]) -> BTreeSet<u64> {
    let mut opens: BTreeSet<u64> = family.iter().copied().collect();
    opens.insert(0);
    opens.insert(full_mask(n));
    loop {
        let current: Vec<u64> = opens.iter().copied().collect();
        let mut grew = false;
        for (i, &a) in current.iter().enumerate() {
            for &b in &current[i + 1..] {
                grew |= opens.insert(a & b);
                grew |= opens.insert(a | b);
            }
        }
        if !grew {
            return opens;
        }
    }
}

/// Open families of every topology on `n` points. Each topology on a finite
/// set is the family of up-sets of a unique preorder, so enumerating
/// preorders enumerates topologies without repetition.
pub fn topology_masks(n: usize) -> Vec<Vec<u64>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for bits in 0u64..1 << pairs.len() {
        let mut le = vec![vec![false; n]; n];
        for (a, row) in le.iter_mut().enumerate() {
            row[a] = true;
        }
        for (k, &(a, b)) in pairs.iter().enumerate() {
            le[a][b] = bits >> k & 1 == 1;
        }
        let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(le[a][b] && le[b][c]) || le[a][c])));
        if !transitive {
            continue;
        }
        let opens: Vec<u64> = (0..1u64 << n)
            .filter(|&s| (0..n).all(|a| s >> a & 1 == 0 || (0..n).all(|b| !le[a][b] || s >> b & 1 == 1)))
            .collect();
        out.push(opens);
    }
    out
}

pub fn topology_from_masks(points: &Possibilities, opens: &[u64]) -> Topology {
    let n = points.len();
    Topology::from_opens(points, opens.iter().map(|&m| set(n, m)).collect()).unwrap()
}

pub fn all_topologies(n: usize) -> Vec<Topology> {
    let points = universe(n);
    topology_masks(n).iter().map(|o| topology_from_masks(&points, o)).collect()
}

fn permute(mask: u64, perm: &[usize]) -> u64 {
    perm.iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .fold(0, |m, (_, &j)| m | 1 << j)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// One topology per homeomorphism class on `n` points.
pub fn representatives(n: usize) -> Vec<Topology> {
    let points = universe(n);
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for opens in topology_masks(n) {
        let canonical = perms
            .iter()
            .map(|p| {
                let mut image: Vec<u64> = opens.iter().map(|&m| permute(m, p)).collect();
                image.sort_unstable();
                image
            })
            .min()
            .unwrap();
        if seen.insert(canonical) {
            out.push(topology_from_masks(&points, &opens));
        }
    }
    out
}

/// Points are told apart by some open.
pub fn is_t0(t: &Topology) -> bool {
    let opens = t.opens().unwrap();
    (0..t.len()).all(|a| (a + 1..t.len()).all(|b| opens.iter().any(|u| u.contains(a) != u.contains(b))))
}

/// Exhaustive scan for disjoint opens around `a` and `b`.
pub fn separable_by_scan(t: &Topology, a: usize, b: usize) -> bool {
    let opens = t.opens().unwrap();
    opens.iter().any(|u| u.contains(a) && opens.iter().any(|v| v.contains(b) && u.is_disjoint(v)))
}

/// Every function `X -> Y` as an image vector, first point most significant.
pub fn all_image_vectors(nx: usize, ny: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..nx {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..ny).map(move |y| {
                    let mut w = v.clone();
                    w.push(y);
                    w
                })
            })
            .collect();
    }
    out
}

/// Bases of `t`: the minimal neighbourhoods plus any subfamily of the other
/// nonempty opens.
pub fn all_bases(t: &Topology) -> Vec<Vec<PointSet>> {
    let minimal = t.minimal_basis();
    let extras: Vec<PointSet> = t
        .opens()
        .unwrap()
        .iter()
        .filter(|u| !u.is_empty() && !minimal.contains(u))
        .cloned()
        .collect();
    (0u64..1 << extras.len())
        .map(|pick| {
            let mut b = minimal.clone();
            b.extend(extras.iter().enumerate().filter(|&(i, _)| pick >> i & 1 == 1).map(|(_, u)| u.clone()));
            b.sort();
            b
        })
        .collect()
}
