//! Finite posets stored as a full strict-order table over dense indices,
//! together with linear extensions, realizers and the elementary operations
//! on them (duality, restriction, disjoint union, isomorphism).

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};

/// Dense index of an element inside one [`Poset`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId(pub usize);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

pub(crate) fn validate_label(label: &str) -> Result<()> {
    if label.is_empty() || label.chars().any(char::is_whitespace) {
        return Err(Error::InvalidLabel(label.to_string()));
    }
    Ok(())
}

/// A finite strict partial order.
///
/// Elements carry text labels; the order is kept both as an "up" table
/// (`less(a, b)`) and its transpose, and the cover relation is derived once
/// at construction.
#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, ElementId>,
    up: BitMatrix,
    down: BitMatrix,
    upper_covers: Vec<Vec<ElementId>>,
    lower_covers: Vec<Vec<ElementId>>,
}

impl Poset {
    /// Builds the transitive closure of `relations` over `elements`.
    ///
    /// Relations need not be covers. Each pair `(a, b)` means `a < b`.
    pub fn new<S, T>(elements: &[S], relations: &[(T, T)]) -> Result<Self>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            validate_label(l)?;
            if index.insert(l.clone(), ElementId(i)).is_some() {
                return Err(Error::DuplicateElement(l.clone()));
            }
        }
        let mut edges = Vec::with_capacity(relations.len());
        for (a, b) in relations {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownElement(a.as_ref().to_string()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownElement(b.as_ref().to_string()))?;
            edges.push((ia.0, ib.0));
        }
        Self::closure_of(labels, index, &edges)
    }

    /// Same as [`Poset::new`] with relations given as indices into `labels`.
    pub fn from_index_relations(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            validate_label(l)?;
            if index.insert(l.clone(), ElementId(i)).is_some() {
                return Err(Error::DuplicateElement(l.clone()));
            }
        }
        for &(a, b) in edges {
            for x in [a, b] {
                if x >= labels.len() {
                    return Err(Error::UnknownElement(format!("#{x}")));
                }
            }
        }
        Self::closure_of(labels, index, edges)
    }

    fn closure_of(
        labels: Vec<String>,
        index: HashMap<String, ElementId>,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let n = labels.len();
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in edges {
            if a == b {
                return Err(Error::RelationCycle(labels[a].clone()));
            }
            succ[a].push(b);
            indeg[b] += 1;
        }
        // Kahn order; anything left over sits on a directed cycle.
        let mut order = Vec::with_capacity(n);
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&v| indeg[v] > 0).unwrap();
            return Err(Error::RelationCycle(labels[stuck].clone()));
        }

        let mut up = BitMatrix::new(n);
        for &v in order.iter().rev() {
            for &w in &succ[v] {
                up.set(v, w);
                up.union_rows(v, w);
            }
        }
        let down = up.transpose();

        // Every cover of the closure is one of the declared edges.
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for (a, nexts) in succ.iter().enumerate() {
            for &b in nexts {
                if !up.rows_intersect(a, &down, b) && !upper_covers[a].contains(&ElementId(b)) {
                    upper_covers[a].push(ElementId(b));
                    lower_covers[b].push(ElementId(a));
                }
            }
        }
        for v in upper_covers.iter_mut().chain(lower_covers.iter_mut()) {
            v.sort_unstable();
        }
        Ok(Self {
            labels,
            index,
            up,
            down,
            upper_covers,
            lower_covers,
        })
    }

    pub fn empty() -> Self {
        Self::from_index_relations(Vec::new(), &[]).expect("empty poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = ElementId> + DoubleEndedIterator {
        (0..self.len()).map(ElementId)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: ElementId) -> &str {
        &self.labels[e.0]
    }

    pub fn id(&self, label: &str) -> Option<ElementId> {
        self.index.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<ElementId> {
        self.id(label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    /// Strict order: `a < b`.
    #[inline]
    pub fn less(&self, a: ElementId, b: ElementId) -> bool {
        self.up.get(a.0, b.0)
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        a == b || self.less(a, b)
    }

    #[inline]
    pub fn comparable(&self, a: ElementId, b: ElementId) -> bool {
        a == b || self.less(a, b) || self.less(b, a)
    }

    /// Convenience lookup by label; panics on unknown labels.
    pub fn less_by_label(&self, a: &str, b: &str) -> bool {
        self.less(
            self.id(a).expect("known label"),
            self.id(b).expect("known label"),
        )
    }

    pub fn upper_covers(&self, a: ElementId) -> &[ElementId] {
        &self.upper_covers[a.0]
    }

    pub fn lower_covers(&self, a: ElementId) -> &[ElementId] {
        &self.lower_covers[a.0]
    }

    /// Cover-graph neighbours of `a`, lower covers first.
    pub fn cover_neighbors(&self, a: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        self.lower_covers[a.0]
            .iter()
            .chain(&self.upper_covers[a.0])
            .copied()
    }

    pub fn cover_degree(&self, a: ElementId) -> usize {
        self.lower_covers[a.0].len() + self.upper_covers[a.0].len()
    }

    /// All cover pairs `(a, b)` with `a ⋖ b`, sorted.
    pub fn covers(&self) -> Vec<(ElementId, ElementId)> {
        let mut out: Vec<_> = self
            .elements()
            .flat_map(|a| self.upper_covers[a.0].iter().map(move |&b| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn cover_count(&self) -> usize {
        self.upper_covers.iter().map(Vec::len).sum()
    }

    /// Elements strictly above `a`.
    pub fn above(&self, a: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        self.up.row_ones(a.0).map(ElementId)
    }

    /// Elements strictly below `a`.
    pub fn below(&self, a: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        self.down.row_ones(a.0).map(ElementId)
    }

    pub fn count_above(&self, a: ElementId) -> usize {
        self.up.row_count(a.0)
    }

    pub fn count_below(&self, a: ElementId) -> usize {
        self.down.row_count(a.0)
    }

    pub fn is_minimal(&self, a: ElementId) -> bool {
        self.lower_covers[a.0].is_empty()
    }

    pub fn is_maximal(&self, a: ElementId) -> bool {
        self.upper_covers[a.0].is_empty()
    }

    pub fn minimal_elements(&self) -> Vec<ElementId> {
        self.elements().filter(|&a| self.is_minimal(a)).collect()
    }

    pub fn maximal_elements(&self) -> Vec<ElementId> {
        self.elements().filter(|&a| self.is_maximal(a)).collect()
    }

    /// Unordered incomparable pairs `(a, b)` with `a < b` as indices.
    pub fn incomparable_pairs(&self) -> Vec<(ElementId, ElementId)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !self.up.get(a, b) && !self.down.get(a, b) {
                    out.push((ElementId(a), ElementId(b)));
                }
            }
        }
        out
    }

    pub fn is_chain(&self) -> bool {
        self.incomparable_pairs().is_empty()
    }

    /// All strict relations as label pairs, sorted. Useful for comparing
    /// posets whose element order differs.
    pub fn relation_labels(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.above(a) {
                out.push((self.label(a).to_string(), self.label(b).to_string()));
            }
        }
        out.sort();
        out
    }

    /// Same labelled poset, ignoring the internal element order.
    pub fn same_labeled(&self, other: &Poset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut a: Vec<&String> = self.labels.iter().collect();
        let mut b: Vec<&String> = other.labels.iter().collect();
        a.sort();
        b.sort();
        a == b && self.relation_labels() == other.relation_labels()
    }

    /// The dual poset: same elements, order reversed.
    pub fn dual(&self) -> Poset {
        Poset {
            labels: self.labels.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            upper_covers: self.lower_covers.clone(),
            lower_covers: self.upper_covers.clone(),
        }
    }

    /// Induced subposet on `subset`. Retained elements keep their relative
    /// order, so new ids are ranks among the retained old ids.
    pub fn restrict(&self, subset: &[ElementId]) -> Result<Poset> {
        let keep = self.subset_mask(subset)?;
        let kept: Vec<ElementId> = self.elements().filter(|e| keep[e.0]).collect();
        let labels = kept.iter().map(|&e| self.label(e).to_string()).collect();
        let mut edges = Vec::new();
        for (i, &a) in kept.iter().enumerate() {
            for (j, &b) in kept.iter().enumerate() {
                if self.less(a, b) {
                    edges.push((i, j));
                }
            }
        }
        Poset::from_index_relations(labels, &edges)
    }

    /// Induced subposet together with the host id of each new id.
    pub fn induced(&self, subset: &[ElementId]) -> Result<(Poset, Vec<ElementId>)> {
        let mut kept = subset.to_vec();
        kept.sort_unstable();
        kept.dedup();
        Ok((self.restrict(&kept)?, kept))
    }

    pub fn restrict_labels<S: AsRef<str>>(&self, subset: &[S]) -> Result<Poset> {
        let ids = subset
            .iter()
            .map(|s| self.require(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        self.restrict(&ids)
    }

    pub(crate) fn subset_mask(&self, subset: &[ElementId]) -> Result<Vec<bool>> {
        let mut keep = vec![false; self.len()];
        for &e in subset {
            if e.0 >= self.len() {
                return Err(Error::UnknownElement(e.to_string()));
            }
            keep[e.0] = true;
        }
        Ok(keep)
    }

    /// Connected components of the cover graph, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<ElementId>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![ElementId(s)];
            let mut stack = vec![ElementId(s)];
            while let Some(v) = stack.pop() {
                for w in self.cover_neighbors(v) {
                    if !seen[w.0] {
                        seen[w.0] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Checks the order axioms on the stored table (O(n³)).
    pub fn check_axioms(&self) -> bool {
        let n = self.len();
        for a in 0..n {
            if self.up.get(a, a) {
                return false;
            }
            for b in 0..n {
                if self.up.get(a, b) != self.down.get(b, a) {
                    return false;
                }
                if self.up.get(a, b) && self.up.get(b, a) {
                    return false;
                }
                if self.up.get(a, b) {
                    for c in self.up.row_ones(b) {
                        if !self.up.get(a, c) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Ranks of the elements under ascending label order.
    pub(crate) fn label_ranks(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.len()).collect();
        ids.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        let mut rank = vec![0; self.len()];
        for (r, i) in ids.into_iter().enumerate() {
            rank[i] = r;
        }
        rank
    }
}

impl PartialEq for Poset {
    /// Equal element lists (in order) and equal tables.
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for Poset {}

/// A permutation of the ground set, read left to right as increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LinearExtension {
    pub order: Vec<ElementId>,
}

impl LinearExtension {
    pub fn new(order: Vec<ElementId>) -> Self {
        Self { order }
    }

    pub fn from_labels<S: AsRef<str>>(p: &Poset, labels: &[S]) -> Result<Self> {
        labels
            .iter()
            .map(|l| p.require(l.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.order.iter().rev().copied().collect())
    }

    pub fn labels<'a>(&self, p: &'a Poset) -> Vec<&'a str> {
        self.order.iter().map(|&e| p.label(e)).collect()
    }

    /// Space-separated labels.
    pub fn to_line(&self, p: &Poset) -> String {
        self.labels(p).join(" ")
    }

    /// Subword on the letters in `subset`, still in the host poset's ids.
    pub fn restrict(&self, subset: &[ElementId]) -> Self {
        Self::new(restrict_extension(&self.order, subset))
    }

    /// Position of every element, `usize::MAX` for absent ones.
    pub(crate) fn positions(&self, n: usize) -> Vec<usize> {
        let mut pos = vec![usize::MAX; n];
        for (i, e) in self.order.iter().enumerate() {
            if e.0 < n {
                pos[e.0] = i;
            }
        }
        pos
    }
}

/// Subword of `seq` on the letters of `subset`.
pub fn restrict_extension(seq: &[ElementId], subset: &[ElementId]) -> Vec<ElementId> {
    let max = seq.iter().chain(subset).map(|e| e.0 + 1).max().unwrap_or(0);
    let mut keep = vec![false; max];
    for e in subset {
        keep[e.0] = true;
    }
    seq.iter().copied().filter(|e| keep[e.0]).collect()
}

/// True iff `seq` is a permutation of the ground set respecting every
/// relation of `p`.
pub fn is_linear_extension(p: &Poset, seq: &[ElementId]) -> bool {
    let n = p.len();
    if seq.len() != n {
        return false;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, e) in seq.iter().enumerate() {
        if e.0 >= n || pos[e.0] != usize::MAX {
            return false;
        }
        pos[e.0] = i;
    }
    p.covers().iter().all(|&(a, b)| pos[a.0] < pos[b.0])
}

/// A cover `a < b` with `b` placed before `a` in the permutation `seq`.
pub fn first_inversion(p: &Poset, seq: &[ElementId]) -> Option<(ElementId, ElementId)> {
    let mut pos = vec![usize::MAX; p.len()];
    for (i, e) in seq.iter().enumerate() {
        if e.0 < pos.len() {
            pos[e.0] = i;
        }
    }
    p.covers().into_iter().find(|&(a, b)| pos[b.0] < pos[a.0])
}

/// An ordered family of linear extensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Realizer {
    pub extensions: Vec<LinearExtension>,
}

/// Why a family of words fails to realize a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealizerViolation {
    /// Word `word` is not a linear extension.
    NotLinearExtension { word: usize },
    /// `first` precedes `second` in every word, yet they are incomparable.
    UnreversedPair { first: ElementId, second: ElementId },
    /// A nonempty poset with no words at all.
    NoWords,
}

impl Realizer {
    pub fn new(extensions: Vec<LinearExtension>) -> Self {
        Self { extensions }
    }

    pub fn from_words(words: Vec<Vec<ElementId>>) -> Self {
        Self::new(words.into_iter().map(LinearExtension::new).collect())
    }

    pub fn from_label_words<S: AsRef<str>>(p: &Poset, words: &[Vec<S>]) -> Result<Self> {
        words
            .iter()
            .map(|w| LinearExtension::from_labels(p, w))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn len(&self) -> usize {
        self.extensions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extensions.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &[ElementId]> {
        self.extensions.iter().map(|e| e.order.as_slice())
    }

    pub fn label_words(&self, p: &Poset) -> Vec<Vec<String>> {
        self.extensions
            .iter()
            .map(|e| e.labels(p).into_iter().map(str::to_string).collect())
            .collect()
    }

    /// Restriction of every word to `subset`, re-indexed into
    /// `p.restrict(subset)`.
    pub fn restrict(&self, p: &Poset, subset: &[ElementId]) -> Result<Realizer> {
        let keep = p.subset_mask(subset)?;
        let mut new_id = vec![usize::MAX; p.len()];
        let mut next = 0;
        for (i, k) in keep.iter().enumerate() {
            if *k {
                new_id[i] = next;
                next += 1;
            }
        }
        Ok(Realizer::new(
            self.extensions
                .iter()
                .map(|w| {
                    LinearExtension::new(
                        w.order
                            .iter()
                            .filter(|e| e.0 < keep.len() && keep[e.0])
                            .map(|e| ElementId(new_id[e.0]))
                            .collect(),
                    )
                })
                .collect(),
        ))
    }
}

/// Reverses every word; realizes the dual poset whenever `r` realizes `p`.
pub fn reverse_realizer(r: &Realizer) -> Realizer {
    Realizer::new(r.extensions.iter().map(LinearExtension::reversed).collect())
}

/// First reason `r` fails to realize `p`, if any.
pub fn find_violation(p: &Poset, r: &Realizer) -> Option<RealizerViolation> {
    if r.is_empty() {
        return (!p.is_empty()).then_some(RealizerViolation::NoWords);
    }
    for (i, w) in r.extensions.iter().enumerate() {
        if !is_linear_extension(p, &w.order) {
            return Some(RealizerViolation::NotLinearExtension { word: i });
        }
    }
    let n = p.len();
    let pos: Vec<Vec<usize>> = r.extensions.iter().map(|w| w.positions(n)).collect();
    for (a, b) in p.incomparable_pairs() {
        let a_first = pos.iter().any(|ps| ps[a.0] < ps[b.0]);
        let b_first = pos.iter().any(|ps| ps[b.0] < ps[a.0]);
        if !b_first {
            return Some(RealizerViolation::UnreversedPair {
                first: a,
                second: b,
            });
        }
        if !a_first {
            return Some(RealizerViolation::UnreversedPair {
                first: b,
                second: a,
            });
        }
    }
    None
}

/// True iff every word is a linear extension of `p` and their intersection
/// is exactly the order of `p`.
pub fn realizes(p: &Poset, r: &Realizer) -> bool {
    find_violation(p, r).is_none()
}

/// Combines three-word realizers of disjoint posets into one for their
/// disjoint union: word 1 lists the parts in order, word 2 in reverse order,
/// word 3 in order again.
pub fn disjoint_union_realizer(parts: &[(Poset, Realizer)]) -> Result<(Poset, Realizer)> {
    let mut labels: Vec<String> = Vec::new();
    let mut seen: HashMap<&str, ()> = HashMap::new();
    let mut offsets = Vec::with_capacity(parts.len());
    for (p, r) in parts {
        if r.len() != 3 {
            return Err(Error::WrongWordCount {
                expected: 3,
                found: r.len(),
            });
        }
        offsets.push(labels.len());
        for l in p.labels() {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(Error::ElementCollision(l.clone()));
            }
        }
        labels.extend(p.labels().iter().cloned());
    }
    let mut edges = Vec::new();
    for ((p, _), &off) in parts.iter().zip(&offsets) {
        for (a, b) in p.covers() {
            edges.push((a.0 + off, b.0 + off));
        }
    }
    let union = Poset::from_index_relations(labels, &edges)?;

    let shifted = |part: usize, word: usize| {
        let off = offsets[part];
        parts[part].1.extensions[word]
            .order
            .iter()
            .map(move |e| ElementId(e.0 + off))
    };
    let forward = |word: usize| {
        (0..parts.len())
            .flat_map(|i| shifted(i, word))
            .collect::<Vec<_>>()
    };
    let w1 = forward(0);
    let w2: Vec<_> = (0..parts.len()).rev().flat_map(|i| shifted(i, 1)).collect();
    let w3 = forward(2);
    Ok((union, Realizer::from_words(vec![w1, w2, w3])))
}

/// Largest poset accepted by [`is_isomorphic`].
pub const ISOMORPHISM_LIMIT: usize = 64;

/// Exact order-isomorphism test by backtracking with invariant pruning.
pub fn is_isomorphic(p: &Poset, q: &Poset) -> Result<bool> {
    for s in [p, q] {
        if s.len() > ISOMORPHISM_LIMIT {
            return Err(Error::SizeLimitExceeded {
                size: s.len(),
                limit: ISOMORPHISM_LIMIT,
            });
        }
    }
    if p.len() != q.len() || p.cover_count() != q.cover_count() {
        return Ok(false);
    }
    let sig = |s: &Poset| -> Vec<(usize, usize, usize, usize, usize)> {
        let height = heights(s);
        s.elements()
            .map(|e| {
                (
                    height[e.0],
                    s.count_below(e),
                    s.count_above(e),
                    s.lower_covers(e).len(),
                    s.upper_covers(e).len(),
                )
            })
            .collect()
    };
    let sp = sig(p);
    let sq = sig(q);
    let mut a = sp.clone();
    let mut b = sq.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(false);
    }

    // Map p's elements in cover-graph BFS order so each new element is
    // usually adjacent to an already mapped one.
    let mut order = Vec::with_capacity(p.len());
    let mut seen = vec![false; p.len()];
    for comp in p.components() {
        let mut queue = VecDeque::from([comp[0]]);
        seen[comp[0].0] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in p.cover_neighbors(v) {
                if !seen[w.0] {
                    seen[w.0] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    let n = p.len();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    // Explicit stack of candidate cursors, one per depth.
    let mut cursor = vec![0usize; n + 1];
    let mut depth = 0;
    loop {
        if depth == n {
            return Ok(true);
        }
        let v = order[depth];
        let mut placed = false;
        while cursor[depth] < n {
            let c = cursor[depth];
            cursor[depth] += 1;
            if used[c] || sq[c] != sp[v.0] {
                continue;
            }
            let ok = order[..depth].iter().all(|&u| {
                let cu = ElementId(image[u.0]);
                p.less(u, v) == q.less(cu, ElementId(c)) && p.less(v, u) == q.less(ElementId(c), cu)
            });
            if ok {
                image[v.0] = c;
                used[c] = true;
                placed = true;
                break;
            }
        }
        if placed {
            depth += 1;
            cursor[depth] = 0;
        } else {
            if depth == 0 {
                return Ok(false);
            }
            depth -= 1;
            let u = order[depth];
            used[image[u.0]] = false;
            image[u.0] = usize::MAX;
        }
    }
}

/// Length of the longest chain ending at each element.
fn heights(p: &Poset) -> Vec<usize> {
    let mut ids: Vec<ElementId> = p.elements().collect();
    ids.sort_by_key(|&e| p.count_below(e));
    let mut h = vec![0; p.len()];
    for e in ids {
        h[e.0] = p
            .lower_covers(e)
            .iter()
            .map(|c| h[c.0] + 1)
            .max()
            .unwrap_or(0);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn crown1() -> Poset {
        Poset::new(
            &["x", "a", "b", "z"],
            &[("x", "a"), ("x", "b"), ("a", "z"), ("b", "z")],
        )
        .unwrap()
    }

    fn chain(labels: &[&str]) -> Poset {
        let rel: Vec<_> = labels.windows(2).map(|w| (w[0], w[1])).collect();
        Poset::new(labels, &rel).unwrap()
    }

    fn words(p: &Poset, ws: &[&str]) -> Realizer {
        let ws: Vec<Vec<&str>> = ws.iter().map(|w| w.split(' ').collect()).collect();
        Realizer::from_label_words(p, &ws).unwrap()
    }

    #[test]
    fn closure_is_transitive() {
        let p = chain(&["a", "b", "c"]);
        assert!(p.less_by_label("a", "c"));
        assert_eq!(p.cover_count(), 2);
        assert!(p.check_axioms());
    }

    #[test]
    fn square_is_crown_one() {
        let p = crown1();
        assert_eq!(p.cover_count(), 4);
        assert!(p.less_by_label("x", "z"));
        assert!(!p.comparable(p.id("a").unwrap(), p.id("b").unwrap()));
        assert_eq!(p.minimal_elements(), vec![p.id("x").unwrap()]);
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            Poset::new(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err(),
            Error::RelationCycle("a".into())
        );
        assert_eq!(
            Poset::new(&["a", "a"], &[] as &[(&str, &str)]).unwrap_err(),
            Error::DuplicateElement("a".into())
        );
        assert_eq!(
            Poset::new(&["a"], &[("a", "q")]).unwrap_err(),
            Error::UnknownElement("q".into())
        );
        assert!(matches!(
            Poset::new(&["a b"], &[] as &[(&str, &str)]),
            Err(Error::InvalidLabel(_))
        ));
        assert!(matches!(
            Poset::new(&["a"], &[("a", "a")]),
            Err(Error::RelationCycle(_))
        ));
    }

    #[test]
    fn non_cover_relations_are_reduced() {
        let p = Poset::new(&["a", "b", "c"], &[("a", "c"), ("a", "b"), ("b", "c")]).unwrap();
        let c: Vec<_> = p
            .covers()
            .into_iter()
            .map(|(a, b)| (p.label(a), p.label(b)))
            .collect();
        assert_eq!(c, vec![("a", "b"), ("b", "c")]);
    }

    #[test]
    fn linear_extension_checks() {
        let p = chain(&["a", "b", "c"]);
        let ext = |s: &[&str]| LinearExtension::from_labels(&p, s).unwrap().order;
        assert!(!is_linear_extension(&p, &ext(&["a", "c", "b"])));
        assert!(is_linear_extension(&p, &ext(&["a", "b", "c"])));
        assert!(!is_linear_extension(&p, &ext(&["a", "b"])));
        assert!(!is_linear_extension(&p, &ext(&["a", "b", "b"])));
        assert!(!is_linear_extension(
            &p,
            &[ElementId(0), ElementId(1), ElementId(7)]
        ));
        let c = crown1();
        assert!(is_linear_extension(
            &c,
            &LinearExtension::from_labels(&c, &["x", "a", "b", "z"])
                .unwrap()
                .order
        ));
    }

    #[test]
    fn realizes_crown_one_and_chain() {
        let c = crown1();
        assert!(realizes(&c, &words(&c, &["x a b z", "x b a z"])));
        assert!(!realizes(&c, &words(&c, &["x a b z", "x a b z"])));
        let p = chain(&["a", "b"]);
        assert!(realizes(&p, &words(&p, &["a b"])));
        assert!(realizes(
            &Poset::empty(),
            &Realizer::from_words(vec![vec![]; 3])
        ));
        assert!(!realizes(&p, &Realizer::default()));
    }

    #[test]
    fn violation_reports_pair() {
        let c = crown1();
        let v = find_violation(&c, &words(&c, &["x a b z", "x a b z"])).unwrap();
        assert_eq!(
            v,
            RealizerViolation::UnreversedPair {
                first: c.id("a").unwrap(),
                second: c.id("b").unwrap()
            }
        );
        let v = find_violation(&c, &words(&c, &["x a b z", "a x b z"])).unwrap();
        assert_eq!(v, RealizerViolation::NotLinearExtension { word: 1 });
    }

    #[test]
    fn duality() {
        let p = chain(&["a", "b", "c"]);
        let d = p.dual();
        assert!(d.less_by_label("c", "a"));
        assert_eq!(d.dual(), p);
        let c = crown1();
        let r = words(&c, &["x a b z", "x b a z"]);
        assert!(realizes(&c.dual(), &reverse_realizer(&r)));
        assert!(!realizes(&c.dual(), &r));
    }

    #[test]
    fn restriction() {
        let c2 = Poset::new(
            &["x1", "x2", "z1", "z2"],
            &[("x1", "z1"), ("x2", "z1"), ("x2", "z2"), ("x1", "z2")],
        )
        .unwrap();
        let fence = c2.restrict_labels(&["x1", "z1", "x2"]).unwrap();
        assert_eq!(fence.labels(), &["x1", "x2", "z1"]);
        assert_eq!(fence.cover_count(), 2);
        assert!(fence.less_by_label("x2", "z1"));
        assert!(!fence.less_by_label("x1", "x2"));
        assert!(matches!(
            c2.restrict(&[ElementId(9)]),
            Err(Error::UnknownElement(_))
        ));

        let c3_word = ["x1", "x2", "z1", "x3", "z2", "z3"];
        let labels = ["x1", "x2", "x3", "z1", "z2", "z3"];
        let c3 = Poset::new(
            &labels,
            &[
                ("x1", "z1"),
                ("x2", "z1"),
                ("x2", "z2"),
                ("x3", "z2"),
                ("x3", "z3"),
                ("x1", "z3"),
            ],
        )
        .unwrap();
        let w = LinearExtension::from_labels(&c3, &c3_word).unwrap();
        let sub = ["x1", "x2", "z1"].map(|l| c3.id(l).unwrap());
        assert_eq!(w.restrict(&sub).labels(&c3), vec!["x1", "x2", "z1"]);
    }

    #[test]
    fn union_of_two_chains() {
        let ab = chain(&["a", "b"]);
        let cd = chain(&["c", "d"]);
        let rab = words(&ab, &["a b", "a b", "a b"]);
        let rcd = words(&cd, &["c d", "c d", "c d"]);
        let (u, r) = disjoint_union_realizer(&[(ab.clone(), rab.clone()), (cd, rcd)]).unwrap();
        let lines: Vec<String> = r.extensions.iter().map(|w| w.to_line(&u)).collect();
        assert_eq!(lines, vec!["a b c d", "c d a b", "a b c d"]);
        assert!(realizes(&u, &r));

        let (single, rs) = disjoint_union_realizer(&[(ab.clone(), rab.clone())]).unwrap();
        assert_eq!(single, ab);
        assert_eq!(rs, rab);

        assert_eq!(
            disjoint_union_realizer(&[(ab.clone(), rab.clone()), (ab, rab)]).unwrap_err(),
            Error::ElementCollision("a".into())
        );
        let (e, re) = disjoint_union_realizer(&[]).unwrap();
        assert!(e.is_empty() && realizes(&e, &re));
    }

    #[test]
    fn isomorphism_basics() {
        let c2 = Poset::new(
            &["x1", "x2", "z1", "z2"],
            &[("x1", "z1"), ("x2", "z1"), ("x2", "z2"), ("x1", "z2")],
        )
        .unwrap();
        let relabeled = Poset::new(
            &["q", "r", "s", "t"],
            &[("s", "q"), ("s", "t"), ("r", "q"), ("r", "t")],
        )
        .unwrap();
        assert!(is_isomorphic(&c2, &relabeled).unwrap());
        let ch = chain(&["a", "b", "c"]);
        let anti = Poset::new(&["a", "b", "c"], &[] as &[(&str, &str)]).unwrap();
        assert!(!is_isomorphic(&ch, &anti).unwrap());
        // Same degree data, different shape: N versus a 4-chain-with-fork.
        let n_shape =
            Poset::new(&["a", "b", "c", "d"], &[("a", "c"), ("b", "c"), ("b", "d")]).unwrap();
        let v_shape =
            Poset::new(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("d", "c")]).unwrap();
        assert!(is_isomorphic(&n_shape, &n_shape.dual()).unwrap());
        assert!(is_isomorphic(&n_shape, &v_shape).unwrap());
        let big = Poset::new(
            &(0..65).map(|i| format!("e{i}")).collect::<Vec<_>>(),
            &[] as &[(&str, &str)],
        )
        .unwrap();
        assert!(matches!(
            is_isomorphic(&big, &big),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }
}
