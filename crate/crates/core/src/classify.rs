//! Cover-graph classification, tree neighbourhoods, and the correspondence
//! between unicycle posets and cycle posets with grafted rooted trees.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::crown::cyclic;
use crate::error::{Error, Result};
use crate::poset::{validate_label, ElementId, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentClass {
    Tree,
    Unicycle,
    Other,
}

impl fmt::Display for ComponentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentClass::Tree => "tree",
            ComponentClass::Unicycle => "unicycle",
            ComponentClass::Other => "other",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub class: ComponentClass,
    pub elements: Vec<ElementId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetClass {
    pub connected: bool,
    pub components: Vec<Component>,
}

impl PosetClass {
    pub fn is_connected_as(&self, class: ComponentClass) -> bool {
        self.connected && self.components.len() == 1 && self.components[0].class == class
    }

    pub fn count(&self, class: ComponentClass) -> usize {
        self.components.iter().filter(|c| c.class == class).count()
    }
}

/// Classifies each cover-graph component by comparing edge and vertex counts.
pub fn classify(p: &Poset) -> PosetClass {
    let components: Vec<Component> = p
        .components()
        .into_iter()
        .map(|elements| {
            let degree_sum: usize = elements.iter().map(|&e| p.cover_degree(e)).sum();
            let edges = degree_sum / 2;
            let class = match edges.cmp(&elements.len()) {
                std::cmp::Ordering::Less => ComponentClass::Tree,
                std::cmp::Ordering::Equal => ComponentClass::Unicycle,
                std::cmp::Ordering::Greater => ComponentClass::Other,
            };
            Component { class, elements }
        })
        .collect();
    PosetClass {
        connected: components.len() <= 1,
        components,
    }
}

/// True iff the cover graph of `p` is a (nonempty) tree.
pub fn is_tree(p: &Poset) -> bool {
    !p.is_empty() && p.cover_count() + 1 == p.len() && p.components().len() == 1
}

/// The partition of `T \ {a}` seen from `a` in a tree poset.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TreeNeighborhood {
    /// Reached from `a` by a path starting with an up-step.
    pub up: Vec<ElementId>,
    /// Reached from `a` by a path starting with a down-step.
    pub down: Vec<ElementId>,
    /// Part of `up` above `a`.
    pub up_plus: Vec<ElementId>,
    /// Part of `up` incomparable to `a`.
    pub up_minus: Vec<ElementId>,
    /// Part of `down` below `a`.
    pub down_minus: Vec<ElementId>,
    /// Part of `down` incomparable to `a`.
    pub down_plus: Vec<ElementId>,
}

impl TreeNeighborhood {
    /// `U ⊔ D⁺`
    pub fn i_plus(&self) -> Vec<ElementId> {
        let mut v: Vec<_> = self.up.iter().chain(&self.down_plus).copied().collect();
        v.sort_unstable();
        v
    }

    /// `D ⊔ U⁻`
    pub fn i_minus(&self) -> Vec<ElementId> {
        let mut v: Vec<_> = self.down.iter().chain(&self.up_minus).copied().collect();
        v.sort_unstable();
        v
    }
}

pub fn tree_neighborhood(t: &Poset, a: ElementId) -> Result<TreeNeighborhood> {
    if a.0 >= t.len() {
        return Err(Error::UnknownElement(a.to_string()));
    }
    if !is_tree(t) {
        return Err(Error::NotATree(format!(
            "{} elements, {} covers",
            t.len(),
            t.cover_count()
        )));
    }
    let reach = |starts: &[ElementId]| -> Vec<ElementId> {
        let mut seen = vec![false; t.len()];
        seen[a.0] = true;
        let mut out = Vec::new();
        let mut stack: Vec<ElementId> = starts.to_vec();
        for s in starts {
            seen[s.0] = true;
        }
        while let Some(v) = stack.pop() {
            out.push(v);
            for w in t.cover_neighbors(v) {
                if !seen[w.0] {
                    seen[w.0] = true;
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    };
    let up = reach(t.upper_covers(a));
    let down = reach(t.lower_covers(a));
    let (up_plus, up_minus) = up.iter().partition(|&&e| t.less(a, e));
    let (down_minus, down_plus) = down.iter().partition(|&&e| t.less(e, a));
    Ok(TreeNeighborhood {
        up,
        down,
        up_plus,
        up_minus,
        down_minus,
        down_plus,
    })
}

/// A tree poset with a distinguished root element.
#[derive(Clone, Debug)]
pub struct RootedTree {
    pub tree: Poset,
    pub root: ElementId,
}

impl RootedTree {
    pub fn new(tree: Poset, root: &str) -> Result<Self> {
        let root = tree
            .id(root)
            .ok_or_else(|| Error::InvalidTree(format!("root {root:?} not in tree")))?;
        Self::from_id(tree, root)
    }

    pub fn from_id(tree: Poset, root: ElementId) -> Result<Self> {
        if root.0 >= tree.len() {
            return Err(Error::InvalidTree(format!("root {root} out of range")));
        }
        if !is_tree(&tree) {
            return Err(Error::InvalidTree(
                "cover graph is not connected and acyclic".into(),
            ));
        }
        Ok(Self { tree, root })
    }

    pub fn trivial(label: &str) -> Result<Self> {
        let tree = Poset::new(&[label], &[] as &[(&str, &str)])?;
        Ok(Self {
            tree,
            root: ElementId(0),
        })
    }

    pub fn root_label(&self) -> &str {
        self.tree.label(self.root)
    }

    pub fn is_trivial(&self) -> bool {
        self.tree.len() == 1
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }
}

impl PartialEq for RootedTree {
    fn eq(&self, other: &Self) -> bool {
        self.root_label() == other.root_label() && self.tree.same_labeled(&other.tree)
    }
}

impl Eq for RootedTree {}

/// A unicycle poset described as a crown, saturated chains subdividing the
/// crown covers, and a rooted tree grafted at every cycle element.
///
/// `chains[p - 1]` lists chain `p` from bottom to top. For `n >= 2` chain `p`
/// runs from `x_{⌊p/2⌋+1}` to `z_{⌈p/2⌉}`; for `n = 1` both chains run from
/// `x` to `z` and are nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnicycleDecomposition {
    pub n: usize,
    pub x: Vec<String>,
    pub z: Vec<String>,
    pub chains: Vec<Vec<String>>,
    /// Keyed by cycle element label; each tree is rooted at that element.
    pub trees: BTreeMap<String, RootedTree>,
}

impl UnicycleDecomposition {
    /// Decomposition with every tree trivial.
    pub fn bare(x: Vec<String>, z: Vec<String>, chains: Vec<Vec<String>>) -> Result<Self> {
        let n = x.len();
        let mut trees = BTreeMap::new();
        for l in x.iter().chain(&z).chain(chains.iter().flatten()) {
            trees.insert(l.clone(), RootedTree::trivial(l)?);
        }
        let d = Self {
            n,
            x,
            z,
            chains,
            trees,
        };
        d.validate()?;
        Ok(d)
    }

    /// `x_i` with cyclic 1-based index.
    pub fn x_at(&self, i: isize) -> &str {
        &self.x[cyclic(i, self.n) - 1]
    }

    pub fn z_at(&self, i: isize) -> &str {
        &self.z[cyclic(i, self.n) - 1]
    }

    /// Chain `p` with cyclic 1-based index in `1..=2n`.
    pub fn chain(&self, p: isize) -> &[String] {
        &self.chains[cyclic(p, 2 * self.n) - 1]
    }

    /// Lower and upper crown endpoints of chain `p`.
    pub fn chain_ends(&self, p: usize) -> (&str, &str) {
        if self.n == 1 {
            (&self.x[0], &self.z[0])
        } else {
            (
                self.x_at((p / 2 + 1) as isize),
                self.z_at(p.div_ceil(2) as isize),
            )
        }
    }

    /// Crown and chain labels.
    pub fn cycle_labels(&self) -> Vec<&str> {
        self.x
            .iter()
            .chain(&self.z)
            .chain(self.chains.iter().flatten())
            .map(String::as_str)
            .collect()
    }

    pub fn tree(&self, label: &str) -> &RootedTree {
        &self.trees[label]
    }

    pub fn element_count(&self) -> usize {
        self.trees.values().map(RootedTree::len).sum()
    }

    pub fn crown_trees_trivial(&self) -> bool {
        self.x
            .iter()
            .chain(&self.z)
            .all(|l| self.trees[l].is_trivial())
    }

    /// Chains empty for `n >= 2`; single trivially-treed elements for `n = 1`.
    pub fn chains_minimal(&self) -> bool {
        if self.n == 1 {
            self.chains
                .iter()
                .all(|c| c.len() == 1 && self.trees[&c[0]].is_trivial())
        } else {
            self.chains.iter().all(Vec::is_empty)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDecomposition(m));
        if self.n == 0 {
            return bad("crown size must be at least 1".into());
        }
        if self.x.len() != self.n || self.z.len() != self.n {
            return bad(format!("expected {} crown minima and maxima", self.n));
        }
        if self.chains.len() != 2 * self.n {
            return bad(format!(
                "expected {} chains, found {}",
                2 * self.n,
                self.chains.len()
            ));
        }
        if self.n == 1 && self.chains.iter().any(Vec::is_empty) {
            return bad("both chains of the size-one crown must be nonempty".into());
        }
        let cycle = self.cycle_labels();
        let mut seen = HashSet::new();
        for l in &cycle {
            validate_label(l)?;
            if !seen.insert(*l) {
                return bad(format!("cycle element {l:?} repeated"));
            }
        }
        if self.trees.len() != cycle.len() || cycle.iter().any(|l| !self.trees.contains_key(*l)) {
            return bad("trees must be indexed by exactly the cycle elements".into());
        }
        let mut all = HashSet::new();
        for (key, t) in &self.trees {
            if t.root_label() != key {
                return bad(format!("tree at {key:?} is rooted at {:?}", t.root_label()));
            }
            if !is_tree(&t.tree) {
                return bad(format!("tree at {key:?} is not a tree poset"));
            }
            for l in t.tree.labels() {
                if !all.insert(l.as_str()) {
                    return bad(format!("element {l:?} appears in two trees"));
                }
                if l != key && seen.contains(l.as_str()) {
                    return bad(format!("tree at {key:?} contains cycle element {l:?}"));
                }
            }
        }
        Ok(())
    }

    /// Relabels crown indices so the result follows the canonical
    /// convention that [`decompose`] produces: `x1` is the crown minimum with
    /// the smallest label and `z1` the smaller-labelled of its two crown
    /// neighbours; for `n = 1`, chain 1 starts with the smaller label.
    ///
    /// Works on the index structure only (rotation or reflection of the
    /// crown), independently of the poset.
    pub fn canonicalize(&self) -> Self {
        let mut out = self.clone();
        let n = self.n;
        if n == 1 {
            if self.chains[0][0] > self.chains[1][0] {
                out.chains.swap(0, 1);
            }
            return out;
        }
        let i0 = (1..=n)
            .min_by(|&a, &b| self.x[a - 1].cmp(&self.x[b - 1]))
            .unwrap() as isize;
        let forward = self.z_at(i0) < self.z_at(i0 - 1);
        for i in 1..=n as isize {
            let (xi, zi) = if forward {
                (i0 + i - 1, i0 + i - 1)
            } else {
                (i0 + 1 - i, i0 - i)
            };
            out.x[i as usize - 1] = self.x_at(xi).to_string();
            out.z[i as usize - 1] = self.z_at(zi).to_string();
        }
        for p in 1..=2 * n as isize {
            let src = if forward {
                p + 2 * (i0 - 1)
            } else {
                2 * i0 - 1 - p
            };
            out.chains[p as usize - 1] = self.chain(src).to_vec();
        }
        out
    }
}

/// Builds the grafted poset: the cycle poset plus every tree, trees joined
/// to the cycle at their roots.
///
/// Element order: crown minima, crown maxima, chain elements by chain, then
/// the non-root tree elements in that same order of attachment.
pub fn graft(d: &UnicycleDecomposition) -> Result<Poset> {
    d.validate()?;
    let mut labels: Vec<String> = d.cycle_labels().into_iter().map(String::from).collect();
    let cycle_len = labels.len();
    for i in 0..cycle_len {
        let t = &d.trees[&labels[i]];
        for (j, l) in t.tree.labels().iter().enumerate() {
            if j != t.root.0 {
                labels.push(l.clone());
            }
        }
    }
    let index: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut edges = Vec::new();
    for p in 1..=2 * d.n {
        let (lo, hi) = d.chain_ends(p);
        let mut prev = index[lo];
        for y in &d.chains[p - 1] {
            let cur = index[y.as_str()];
            edges.push((prev, cur));
            prev = cur;
        }
        edges.push((prev, index[hi]));
    }
    for t in d.trees.values() {
        for (a, b) in t.tree.covers() {
            edges.push((index[t.tree.label(a)], index[t.tree.label(b)]));
        }
    }
    Poset::from_index_relations(labels, &edges)
}

/// Elements lying on the unique cycle of a connected unicycle cover graph,
/// found by repeatedly deleting degree-one vertices.
pub fn cycle_elements(p: &Poset) -> Vec<ElementId> {
    let mut deg: Vec<usize> = p.elements().map(|e| p.cover_degree(e)).collect();
    let mut removed = vec![false; p.len()];
    let mut stack: Vec<ElementId> = p.elements().filter(|e| deg[e.0] <= 1).collect();
    while let Some(v) = stack.pop() {
        if removed[v.0] {
            continue;
        }
        removed[v.0] = true;
        for w in p.cover_neighbors(v) {
            if !removed[w.0] {
                deg[w.0] -= 1;
                if deg[w.0] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    p.elements().filter(|e| !removed[e.0]).collect()
}

/// Recovers the crown, chains and grafted trees of a connected unicycle
/// poset, labelled canonically (see [`UnicycleDecomposition::canonicalize`]).
pub fn decompose(p: &Poset) -> Result<UnicycleDecomposition> {
    let class = classify(p);
    if !class.is_connected_as(ComponentClass::Unicycle) {
        let desc = if class.connected {
            class
                .components
                .first()
                .map_or("empty".to_string(), |c| c.class.to_string())
        } else {
            format!("{} components", class.components.len())
        };
        return Err(Error::NotUnicycle(desc));
    }

    let cycle = cycle_elements(p);
    let mut on_cycle = vec![false; p.len()];
    for e in &cycle {
        on_cycle[e.0] = true;
    }
    let cycle_nbrs = |v: ElementId| -> Vec<ElementId> {
        p.cover_neighbors(v).filter(|w| on_cycle[w.0]).collect()
    };
    // Walk once around the cycle.
    let start = cycle[0];
    let mut walk = vec![start];
    let mut prev = start;
    let mut cur = cycle_nbrs(start)[0];
    while cur != start {
        walk.push(cur);
        let nb = cycle_nbrs(cur);
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
    }
    let m = walk.len();
    let at = |i: usize| walk[i % m];
    let is_min = |i: usize| p.less(at(i), at(i + m - 1)) && p.less(at(i), at(i + 1));
    let is_max = |i: usize| p.less(at(i + m - 1), at(i)) && p.less(at(i + 1), at(i));
    let label = |e: ElementId| p.label(e).to_string();

    let mins: Vec<usize> = (0..m).filter(|&i| is_min(i)).collect();

    // Re-walk starting at the minimum with the smallest label.
    let x1_pos = *mins.iter().min_by_key(|&&i| p.label(at(i))).unwrap();
    // Elements strictly between position `from` and the next extremal element
    // in direction `step`, plus the index of that extremal element.
    let run = |from: usize, forward: bool| -> (Vec<ElementId>, usize) {
        let mut out = Vec::new();
        let mut i = from;
        loop {
            i = if forward {
                (i + 1) % m
            } else {
                (i + m - 1) % m
            };
            if is_min(i) || is_max(i) {
                return (out, i);
            }
            out.push(at(i));
        }
    };

    let mut d = if mins.len() == 1 {
        let x = at(x1_pos);
        let (c_fwd, z_pos) = run(x1_pos, true);
        let (c_bwd, _) = run(x1_pos, false);
        let z = at(z_pos);
        let mut chains = vec![c_fwd, c_bwd];
        if p.label(chains[0][0]) > p.label(chains[1][0]) {
            chains.swap(0, 1);
        }
        UnicycleDecomposition {
            n: 1,
            x: vec![label(x)],
            z: vec![label(z)],
            chains: chains
                .into_iter()
                .map(|c| c.into_iter().map(label).collect())
                .collect(),
            trees: BTreeMap::new(),
        }
    } else {
        let n = mins.len();
        let (_, zf) = run(x1_pos, true);
        let (_, zb) = run(x1_pos, false);
        let forward = p.label(at(zf)) < p.label(at(zb));
        let mut x = Vec::with_capacity(n);
        let mut z = Vec::with_capacity(n);
        let mut chains = Vec::with_capacity(2 * n);
        let mut pos = x1_pos;
        for _ in 0..n {
            x.push(label(at(pos)));
            let (up, zpos) = run(pos, forward);
            z.push(label(at(zpos)));
            chains.push(up.into_iter().map(label).collect::<Vec<_>>());
            let (down, xpos) = run(zpos, forward);
            chains.push(down.into_iter().rev().map(label).collect());
            pos = xpos;
        }
        UnicycleDecomposition {
            n,
            x,
            z,
            chains,
            trees: BTreeMap::new(),
        }
    };

    // Trees: components of the cover graph once cycle edges are removed.
    for &v in &cycle {
        let mut members = vec![v];
        let mut stack = vec![v];
        let mut seen: HashSet<ElementId> = HashSet::from([v]);
        while let Some(u) = stack.pop() {
            for w in p.cover_neighbors(u) {
                if !on_cycle[w.0] && seen.insert(w) {
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        let tree = p.restrict(&members)?;
        let rt = RootedTree::new(tree, p.label(v))?;
        d.trees.insert(label(v), rt);
    }
    d.validate()?;
    Ok(d)
}
