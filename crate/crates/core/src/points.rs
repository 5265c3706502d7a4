//! Finite possibility sets and positional subsets of them.
//!
//! A [`Possibilities`] value is an ordered list of distinct labels with at
//! least two entries. Subsets are [`PointSet`]s: bitsets indexed by label
//! position, which stay inline for universes of up to 256 points and spill to
//! the heap beyond that.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;
use thiserror::Error;

const WORD_BITS: usize = u64::BITS as usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointsError {
    #[error("a possibility set needs at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown point label `{0}`")]
    UnknownLabel(String),
    #[error("point index {index} is outside a universe of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
}

#[derive(Debug)]
struct Labels {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

/// The set of possibilities `X`: ordered, distinct labels, `|X| > 1`.
///
/// Cloning is cheap; the label table is shared.
#[derive(Clone)]
pub struct Possibilities(Arc<Labels>);

impl Possibilities {
    pub fn new<I, S>(labels: I) -> Result<Self, PointsError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = labels.into_iter().map(Into::into).collect();
        if names.len() < 2 {
            return Err(PointsError::TooFewPoints(names.len()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(PointsError::DuplicateLabel(name.clone()));
            }
        }
        Ok(Possibilities(Arc::new(Labels { names, index })))
    }

    /// Points labelled `prefix0`, `prefix1`, ...
    pub fn numbered(prefix: &str, len: usize) -> Result<Self, PointsError> {
        Self::new((0..len).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.0.names[index]
    }

    pub fn labels(&self) -> &[String] {
        &self.0.names
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn singleton(&self, index: usize) -> PointSet {
        PointSet::singleton(self.len(), index)
    }

    /// Builds a subset from labels.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<PointSet, PointsError> {
        let mut set = self.empty_set();
        for label in labels {
            let label = label.as_ref();
            let i = self
                .index_of(label)
                .ok_or_else(|| PointsError::UnknownLabel(label.to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    /// Canonical notation: `{a,b}` with members in universe order, `{}` for the
    /// empty set.
    pub fn format_set(&self, set: &PointSet) -> String {
        let members: Vec<&str> = set.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", members.join(","))
    }

    pub fn member_labels(&self, set: &PointSet) -> Vec<String> {
        set.iter().map(|i| self.label(i).to_string()).collect()
    }
}

impl PartialEq for Possibilities {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}

impl Eq for Possibilities {}

impl fmt::Debug for Possibilities {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.names.iter()).finish()
    }
}

/// A subset of a finite universe `{0, .., len-1}`, encoded positionally.
///
/// `Ord` is the canonical collection order: by cardinality, then
/// lexicographically on the sorted member lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    len: usize,
    words: SmallVec<[u64; 2]>,
}

impl PointSet {
    pub fn empty(len: usize) -> Self {
        PointSet {
            len,
            words: SmallVec::from_elem(0, len.div_ceil(WORD_BITS)),
        }
    }

    pub fn full(len: usize) -> Self {
        let mut set = Self::empty(len);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.trim();
        set
    }

    pub fn singleton(len: usize, index: usize) -> Self {
        let mut set = Self::empty(len);
        set.insert(index);
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut set = Self::empty(len);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Interprets the low `len` bits of `bits` as membership flags.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= WORD_BITS, "from_bits needs a universe of at most 64 points");
        let mut set = Self::empty(len);
        if len > 0 {
            set.words[0] = bits;
            set.trim();
        }
        set
    }

    /// Size of the universe this set lives in.
    pub fn universe_len(&self) -> usize {
        self.len
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.len && self.words[index / WORD_BITS] & (1 << (index % WORD_BITS)) != 0
    }

    pub fn insert(&mut self, index: usize) {
        assert!(
            index < self.len,
            "point {index} outside universe of {} points",
            self.len
        );
        self.words[index / WORD_BITS] |= 1 << (index % WORD_BITS);
    }

    pub fn remove(&mut self, index: usize) {
        if index < self.len {
            self.words[index / WORD_BITS] &= !(1 << (index % WORD_BITS));
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + bit)
                }
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_same(other);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check_same(other);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_same(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_same(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        self.check_same(other);
        PointSet {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.len, other.len,
            "set operation across universes of different sizes"
        );
    }

    fn trim(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.count().cmp(&other.count()))
            .then_with(|| {
                // Equal cardinality: the set holding the lowest differing
                // point has the smaller member list.
                for (a, b) in self.words.iter().zip(other.words.iter()) {
                    let diff = a ^ b;
                    if diff != 0 {
                        let low = diff & diff.wrapping_neg();
                        return if a & low != 0 {
                            Ordering::Less
                        } else {
                            Ordering::Greater
                        };
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Sorts into canonical order and drops duplicates.
pub fn canonicalize(sets: &mut Vec<PointSet>) {
    sets.sort();
    sets.dedup();
}
