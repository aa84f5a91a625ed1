//! Ground truth for small posets and seeded random instances.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{classify, graft, ComponentClass, RootedTree, UnicycleDecomposition};
use crate::error::{Error, Result};
use crate::poset::{is_linear_extension, ElementId, LinearExtension, Poset, Realizer};

pub const DEFAULT_CAP: usize = 200_000;
pub const DEFAULT_MAX_K: usize = 4;

/// Lazy enumeration of all linear extensions by backtracking over the
/// currently minimal unplaced elements.
pub struct LinearExtensions<'a> {
    p: &'a Poset,
    placed: Vec<ElementId>,
    is_placed: Vec<bool>,
    pending_below: Vec<usize>,
    frames: Vec<(Vec<ElementId>, usize)>,
    started: bool,
}

impl<'a> LinearExtensions<'a> {
    pub fn new(p: &'a Poset) -> Self {
        Self {
            p,
            placed: Vec::with_capacity(p.len()),
            is_placed: vec![false; p.len()],
            pending_below: p.elements().map(|e| p.lower_covers(e).len()).collect(),
            frames: Vec::new(),
            started: false,
        }
    }

    fn available(&self) -> Vec<ElementId> {
        self.p
            .elements()
            .filter(|e| !self.is_placed[e.0] && self.pending_below[e.0] == 0)
            .collect()
    }

    fn place(&mut self, e: ElementId) {
        self.placed.push(e);
        self.is_placed[e.0] = true;
        for &u in self.p.upper_covers(e) {
            self.pending_below[u.0] -= 1;
        }
    }

    fn unplace(&mut self) {
        let e = self.placed.pop().expect("something placed");
        self.is_placed[e.0] = false;
        for &u in self.p.upper_covers(e) {
            self.pending_below[u.0] += 1;
        }
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = LinearExtension;

    fn next(&mut self) -> Option<LinearExtension> {
        if !self.started {
            self.started = true;
            if self.p.is_empty() {
                return Some(LinearExtension::default());
            }
            let first = self.available();
            self.frames.push((first, 0));
        }
        loop {
            let (cands, idx) = self.frames.last_mut()?;
            if *idx < cands.len() {
                let c = cands[*idx];
                *idx += 1;
                self.place(c);
                if self.placed.len() == self.p.len() {
                    let out = LinearExtension::new(self.placed.clone());
                    self.unplace();
                    return Some(out);
                }
                let next = self.available();
                self.frames.push((next, 0));
            } else {
                self.frames.pop();
                if self.frames.is_empty() {
                    return None;
                }
                self.unplace();
            }
        }
    }
}

pub fn linear_extensions(p: &Poset) -> LinearExtensions<'_> {
    LinearExtensions::new(p)
}

/// Every linear extension, failing once more than `cap` exist.
pub fn all_linear_extensions(p: &Poset, cap: usize) -> Result<Vec<LinearExtension>> {
    let mut out = Vec::new();
    for l in linear_extensions(p) {
        if out.len() == cap {
            return Err(Error::CapExceeded(cap));
        }
        out.push(l);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Exact(usize),
    /// No realizer with at most this many words.
    Exceeds(usize),
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Exact(k) => write!(f, "{k}"),
            Dimension::Exceeds(k) => write!(f, "exceeds {k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionResult {
    pub value: Dimension,
    pub witness: Option<Realizer>,
}

/// Ordered pairs `(a, b)` with `a ∥ b`, `D(a) ⊆ D(b)` and `U(b) ⊆ U(a)`.
/// A family of linear extensions realizes `p` iff each of these pairs has
/// `b` before `a` in some member.
pub fn critical_pairs(p: &Poset) -> Vec<(ElementId, ElementId)> {
    let mut out = Vec::new();
    for a in p.elements() {
        for b in p.elements() {
            if a == b || p.comparable(a, b) {
                continue;
            }
            let down_ok = p.below(a).all(|c| p.less(c, b));
            let up_ok = p.above(b).all(|c| p.less(a, c));
            if down_ok && up_ok {
                out.push((a, b));
            }
        }
    }
    out
}

type Mask = Vec<u64>;

fn mask_set(m: &mut Mask, i: usize) {
    m[i / 64] |= 1 << (i % 64);
}

fn mask_get(m: &Mask, i: usize) -> bool {
    m[i / 64] >> (i % 64) & 1 == 1
}

fn is_subset(a: &Mask, b: &Mask) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Exact dimension by exhaustive search over the linear extensions.
///
/// Sizes 1 and 2 are decided on the definition (chain test, then a
/// complement lookup over incomparable pairs). Larger sizes search for `k`
/// extensions jointly reversing every critical pair.
pub fn brute_dimension(p: &Poset, k_max: usize, cap: usize) -> Result<DimensionResult> {
    if p.is_empty() {
        return Ok(DimensionResult {
            value: Dimension::Exact(0),
            witness: Some(Realizer::default()),
        });
    }
    let exts = all_linear_extensions(p, cap)?;
    if p.is_chain() {
        return Ok(found(vec![exts[0].clone()]));
    }
    if k_max < 2 {
        return Ok(exceeds(k_max));
    }

    let pairs = p.incomparable_pairs();
    let words = pairs.len().div_ceil(64);
    let positions: Vec<Vec<usize>> = exts.iter().map(|l| l.positions(p.len())).collect();
    let mut by_mask: HashMap<Mask, usize> = HashMap::new();
    let mut masks = Vec::with_capacity(exts.len());
    for (i, pos) in positions.iter().enumerate() {
        let mut m = vec![0u64; words];
        for (j, &(a, b)) in pairs.iter().enumerate() {
            if pos[a.0] < pos[b.0] {
                mask_set(&mut m, j);
            }
        }
        by_mask.entry(m.clone()).or_insert(i);
        masks.push(m);
    }
    let full: Mask = (0..words)
        .map(|w| {
            let bits = (pairs.len() - 64 * w).min(64);
            if bits == 64 {
                u64::MAX
            } else {
                (1u64 << bits) - 1
            }
        })
        .collect();
    for (i, m) in masks.iter().enumerate() {
        let comp: Mask = m.iter().zip(&full).map(|(x, f)| !x & f).collect();
        if let Some(&j) = by_mask.get(&comp) {
            return Ok(found(vec![exts[i].clone(), exts[j].clone()]));
        }
    }

    let crit = critical_pairs(p);
    let cwords = crit.len().div_ceil(64);
    let mut reverse_masks: Vec<(Mask, usize)> = positions
        .iter()
        .enumerate()
        .map(|(i, pos)| {
            let mut m = vec![0u64; cwords];
            for (j, &(a, b)) in crit.iter().enumerate() {
                if pos[b.0] < pos[a.0] {
                    mask_set(&mut m, j);
                }
            }
            (m, i)
        })
        .collect();
    // Only extensions with inclusion-maximal masks.
    reverse_masks
        .sort_by_key(|(m, _)| std::cmp::Reverse(m.iter().map(|w| w.count_ones()).sum::<u32>()));
    let mut kept: Vec<(Mask, usize)> = Vec::new();
    for (m, i) in reverse_masks {
        if !kept.iter().any(|(k, _)| is_subset(&m, k)) {
            kept.push((m, i));
        }
    }
    let all_crit: Mask = {
        let mut m = vec![0u64; cwords];
        for j in 0..crit.len() {
            mask_set(&mut m, j);
        }
        m
    };
    for k in 3..=k_max {
        let mut chosen = Vec::new();
        if cover_search(&kept, &vec![0u64; cwords], &all_crit, k, &mut chosen) {
            return Ok(found(chosen.iter().map(|&i| exts[i].clone()).collect()));
        }
    }
    Ok(exceeds(k_max))
}

fn found(words: Vec<LinearExtension>) -> DimensionResult {
    DimensionResult {
        value: Dimension::Exact(words.len()),
        witness: Some(Realizer::new(words)),
    }
}

fn exceeds(k: usize) -> DimensionResult {
    DimensionResult {
        value: Dimension::Exceeds(k),
        witness: None,
    }
}

/// Can `left` more masks complete `covered` to `all`? Branches on the first
/// uncovered bit.
fn cover_search(
    masks: &[(Mask, usize)],
    covered: &Mask,
    all: &Mask,
    left: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    let first = (0..all.len() * 64).find(|&j| mask_get(all, j) && !mask_get(covered, j));
    let Some(bit) = first else {
        return true;
    };
    if left == 0 {
        return false;
    }
    for (m, i) in masks.iter().filter(|(m, _)| mask_get(m, bit)) {
        let next: Mask = covered.iter().zip(m).map(|(a, b)| a | b).collect();
        if left == 1 && !is_subset(all, &next) {
            continue;
        }
        chosen.push(*i);
        if cover_search(masks, &next, all, left - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Limit for [`dimension_by_coloring`], which packs elements into `u64`.
pub const COLORING_LIMIT: usize = 64;

/// Exact dimension without enumerating extensions: split the critical
/// pairs into the fewest classes such that adding the reversed pairs of a
/// class to the order stays acyclic. Returns `None` if more than `k_max`
/// classes are needed.
pub fn dimension_by_coloring(p: &Poset, k_max: usize) -> Result<Option<(usize, Realizer)>> {
    let n = p.len();
    if n > COLORING_LIMIT {
        return Err(Error::SizeLimitExceeded {
            size: n,
            limit: COLORING_LIMIT,
        });
    }
    if n == 0 {
        return Ok(Some((0, Realizer::default())));
    }
    let base: Vec<u64> = p
        .elements()
        .map(|a| p.above(a).fold(0u64, |m, b| m | 1 << b.0))
        .collect();
    let crit = critical_pairs(p);
    for k in 1..=k_max {
        let mut classes = vec![base.clone(); k];
        if color(&crit, 0, 0, &mut classes) {
            let words = classes.iter().map(|up| topological(up)).collect();
            return Ok(Some((k, Realizer::new(words))));
        }
    }
    Ok(None)
}

fn color(
    crit: &[(ElementId, ElementId)],
    idx: usize,
    used: usize,
    classes: &mut [Vec<u64>],
) -> bool {
    let Some(&(a, b)) = crit.get(idx) else {
        return true;
    };
    let (a, b) = (a.0, b.0);
    let limit = (used + 1).min(classes.len());
    for c in 0..limit {
        let up = &classes[c];
        if up[a] >> b & 1 == 1 {
            continue;
        }
        let saved = up.clone();
        let up = &mut classes[c];
        if up[b] >> a & 1 == 0 {
            let add = up[a] | 1 << a;
            for (u, row) in up.iter_mut().enumerate() {
                if u == b || *row >> b & 1 == 1 {
                    *row |= add;
                }
            }
        }
        if color(crit, idx + 1, used.max(c + 1), classes) {
            return true;
        }
        classes[c] = saved;
    }
    false
}

/// A linear extension of the order whose strict up-sets are `up`.
fn topological(up: &[u64]) -> LinearExtension {
    let n = up.len();
    let mut below = vec![0usize; n];
    for row in up {
        for (v, slot) in below.iter_mut().enumerate() {
            if row >> v & 1 == 1 {
                *slot += 1;
            }
        }
    }
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let v = (0..n)
            .find(|&v| !done[v] && below[v] == 0)
            .expect("acyclic");
        done[v] = true;
        order.push(ElementId(v));
        for (w, slot) in below.iter_mut().enumerate() {
            if up[v] >> w & 1 == 1 {
                *slot -= 1;
            }
        }
    }
    LinearExtension::new(order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Gnp,
    Tree,
    Unicycle,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Gnp => "gnp",
            ModelKind::Tree => "tree",
            ModelKind::Unicycle => "unicycle",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RandomModel {
    pub kind: ModelKind,
    pub n: usize,
    pub c: f64,
    pub seed: u64,
}

/// Independent generator for one purpose (`stream`) under a seed.
pub fn rng_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

const STREAM_SHAPE: u64 = 1;
const STREAM_LABELS: u64 = 2;

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

pub fn sample(model: &RandomModel) -> Result<Poset> {
    let bad = |m: String| Err(Error::InvalidModel(m));
    let n = model.n;
    match model.kind {
        ModelKind::Gnp => {
            let c = model.c;
            if !c.is_finite() || c < 0.0 {
                return bad(format!("edge rate {c} must be finite and non-negative"));
            }
            if n > 0 && c > n as f64 {
                return bad(format!("edge probability {c}/{n} exceeds 1"));
            }
            let prob = if n == 0 { 0.0 } else { c / n as f64 };
            let mut rng = rng_stream(model.seed, STREAM_SHAPE);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random_bool(prob) {
                        edges.push((i, j));
                    }
                }
            }
            Poset::from_index_relations(labels(n), &edges)
        }
        ModelKind::Tree => {
            if n == 0 {
                return bad("a tree needs at least one element".into());
            }
            let mut rng = rng_stream(model.seed, STREAM_SHAPE);
            let edges = oriented_tree_edges(&mut rng, n);
            Poset::from_index_relations(labels(n), &edges)
        }
        ModelKind::Unicycle => {
            if n < 4 {
                return bad(format!(
                    "a unicycle poset needs at least 4 elements, got {n}"
                ));
            }
            let mut rng = rng_stream(model.seed, STREAM_SHAPE);
            let d = sized_decomposition(&mut rng, n, model.seed);
            let g = graft(&d)?;
            // Re-index so that element v_i has index i - 1.
            let order: Vec<usize> = g
                .labels()
                .iter()
                .map(|l| l[1..].parse::<usize>().expect("generated label") - 1)
                .collect();
            let edges: Vec<(usize, usize)> = g
                .covers()
                .into_iter()
                .map(|(a, b)| (order[a.0], order[b.0]))
                .collect();
            Poset::from_index_relations(labels(n), &edges)
        }
    }
}

/// Edges of a uniform random labelled tree on `0..n` (Prüfer decoding).
pub fn uniform_tree_edges(rng: &mut impl Rng, n: usize) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => return vec![],
        2 => return vec![(0, 1)],
        _ => {}
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = leaves.pop_first().expect("a leaf exists");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// A uniform tree skeleton with every edge oriented by a fair coin.
pub fn oriented_tree_edges(rng: &mut impl Rng, n: usize) -> Vec<(usize, usize)> {
    uniform_tree_edges(rng, n)
        .into_iter()
        .map(|(a, b)| if rng.random_bool(0.5) { (a, b) } else { (b, a) })
        .collect()
}

/// Random tree poset on `n` elements labelled `prefix1..prefixN` with a
/// uniformly chosen root.
pub fn random_rooted_tree(rng: &mut impl Rng, n: usize, prefix: &str) -> Result<RootedTree> {
    let labels: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
    let edges = oriented_tree_edges(rng, n);
    let t = Poset::from_index_relations(labels, &edges)?;
    let root = ElementId(rng.random_range(0..n));
    RootedTree::from_id(t, root)
}

/// Random tree poset with a minimum: a uniform skeleton oriented away from
/// a random root.
pub fn random_tree_with_minimum(rng: &mut impl Rng, n: usize) -> Result<Poset> {
    let skeleton = uniform_tree_edges(rng, n);
    let root = rng.random_range(0..n.max(1));
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &skeleton {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut seen = vec![false; n];
    let mut stack = vec![root];
    if n > 0 {
        seen[root] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                edges.push((v, w));
                stack.push(w);
            }
        }
    }
    Poset::from_index_relations(labels(n), &edges)
}

/// Number of failures before the first success, capped.
fn geometric(rng: &mut impl Rng, p: f64, cap: usize) -> usize {
    let mut k = 0;
    while k < cap && !rng.random_bool(p) {
        k += 1;
    }
    k
}

/// Knobs for [`random_decomposition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecompositionParams {
    pub min_crown: usize,
    pub max_crown: usize,
    pub max_chain: usize,
    pub max_tree: usize,
    /// Allow subdivision elements beyond the two required for `n = 1`.
    pub chains: bool,
    /// Allow nontrivial trees on chain elements.
    pub chain_trees: bool,
    /// Allow nontrivial trees on crown vertices.
    pub crown_trees: bool,
}

impl Default for DecompositionParams {
    fn default() -> Self {
        Self {
            min_crown: 1,
            max_crown: 8,
            max_chain: 4,
            max_tree: 6,
            chains: true,
            chain_trees: true,
            crown_trees: true,
        }
    }
}

/// Tree shapes as parent links: node `k > 0` hangs from `parent < k`, above
/// it if the flag is set.
type Shape = Vec<(usize, bool)>;

fn random_shape(rng: &mut impl Rng, size: usize) -> Shape {
    (1..size)
        .map(|k| (rng.random_range(0..k), rng.random_bool(0.5)))
        .collect()
}

struct Skeleton {
    n: usize,
    chain_lens: Vec<usize>,
    /// One shape per cycle element: x's, z's, then chain elements.
    shapes: Vec<Shape>,
}

fn realize_skeleton(rng: &mut ChaCha8Rng, sk: Skeleton) -> UnicycleDecomposition {
    let total: usize = sk.shapes.iter().map(|s| s.len() + 1).sum();
    let mut numbers: Vec<usize> = (1..=total).collect();
    numbers.shuffle(rng);
    let mut next = numbers.into_iter().map(|k| format!("v{k}"));
    let mut take = || next.next().expect("enough labels");

    let cycle_len = 2 * sk.n + sk.chain_lens.iter().sum::<usize>();
    let cycle: Vec<String> = (0..cycle_len).map(|_| take()).collect();
    let x = cycle[..sk.n].to_vec();
    let z = cycle[sk.n..2 * sk.n].to_vec();
    let mut chains = Vec::with_capacity(sk.chain_lens.len());
    let mut at = 2 * sk.n;
    for &k in &sk.chain_lens {
        chains.push(cycle[at..at + k].to_vec());
        at += k;
    }
    let mut trees = std::collections::BTreeMap::new();
    for (root, shape) in cycle.iter().zip(&sk.shapes) {
        let mut ls = vec![root.clone()];
        ls.extend((0..shape.len()).map(|_| take()));
        let edges: Vec<(usize, usize)> = shape
            .iter()
            .enumerate()
            .map(|(i, &(parent, above))| {
                if above {
                    (parent, i + 1)
                } else {
                    (i + 1, parent)
                }
            })
            .collect();
        let t = Poset::from_index_relations(ls, &edges).expect("tree shape is acyclic");
        trees.insert(
            root.clone(),
            RootedTree::from_id(t, ElementId(0)).expect("shape is a tree"),
        );
    }
    let d = UnicycleDecomposition {
        n: sk.n,
        x,
        z,
        chains,
        trees,
    };
    debug_assert!(d.validate().is_ok());
    d
}

/// A random decomposition drawn from `params`, labelled with a random
/// permutation of `v1..vN`.
pub fn random_decomposition(
    rng: &mut ChaCha8Rng,
    params: &DecompositionParams,
) -> UnicycleDecomposition {
    let n =
        rng.random_range(params.min_crown.max(1)..=params.max_crown.max(params.min_crown.max(1)));
    let chain_lens: Vec<usize> = (0..2 * n)
        .map(|_| {
            let extra = if params.chains {
                geometric(rng, 0.5, params.max_chain)
            } else {
                0
            };
            if n == 1 {
                (1 + extra).min(params.max_chain.max(1))
            } else {
                extra
            }
        })
        .collect();
    let cycle_len = 2 * n + chain_lens.iter().sum::<usize>();
    let shapes = (0..cycle_len)
        .map(|i| {
            let allowed = if i < 2 * n {
                params.crown_trees
            } else {
                params.chain_trees
            };
            let size = if allowed {
                1 + geometric(rng, 1.0 / 3.0, params.max_tree.saturating_sub(1))
            } else {
                1
            };
            random_shape(rng, size)
        })
        .collect();
    realize_skeleton(
        rng,
        Skeleton {
            n,
            chain_lens,
            shapes,
        },
    )
}

/// A random decomposition with exactly `total >= 4` elements.
fn sized_decomposition(rng: &mut ChaCha8Rng, total: usize, seed: u64) -> UnicycleDecomposition {
    let n = rng.random_range(1..=(total / 2).min(8));
    let mut budget = total - if n == 1 { 4 } else { 2 * n };
    let chain_lens: Vec<usize> = (0..2 * n)
        .map(|_| {
            let extra = geometric(rng, 0.5, 3).min(budget);
            budget -= extra;
            extra + usize::from(n == 1)
        })
        .collect();
    let cycle_len = 2 * n + chain_lens.iter().sum::<usize>();
    let mut shapes: Vec<Shape> = vec![Vec::new(); cycle_len];
    for _ in 0..budget {
        let v = rng.random_range(0..cycle_len);
        let size = shapes[v].len() + 1;
        let link = (rng.random_range(0..size), rng.random_bool(0.5));
        shapes[v].push(link);
    }
    let mut label_rng = rng_stream(seed, STREAM_LABELS);
    realize_skeleton(
        &mut label_rng,
        Skeleton {
            n,
            chain_lens,
            shapes,
        },
    )
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ComponentStats {
    pub tree: usize,
    pub unicycle: usize,
    pub other: usize,
}

impl ComponentStats {
    /// Every component is a tree or unicycle.
    pub fn supported(&self) -> bool {
        self.other == 0
    }
}

pub fn component_stats(p: &Poset) -> ComponentStats {
    let c = classify(p);
    ComponentStats {
        tree: c.count(ComponentClass::Tree),
        unicycle: c.count(ComponentClass::Unicycle),
        other: c.count(ComponentClass::Other),
    }
}

/// Count of linear extensions by dynamic programming over down-sets
/// (at most 24 elements).
pub fn count_linear_extensions(p: &Poset) -> Result<u64> {
    const LIMIT: usize = 24;
    let n = p.len();
    if n > LIMIT {
        return Err(Error::SizeLimitExceeded {
            size: n,
            limit: LIMIT,
        });
    }
    let below: Vec<u32> = p
        .elements()
        .map(|a| p.below(a).fold(0u32, |m, b| m | 1 << b.0))
        .collect();
    let mut ways: HashMap<u32, u64> = HashMap::from([(0, 1)]);
    let mut frontier: HashSet<u32> = HashSet::from([0]);
    for _ in 0..n {
        let mut next = HashSet::new();
        for &s in &frontier {
            let w = ways[&s];
            for (v, &bv) in below.iter().enumerate() {
                if s >> v & 1 == 0 && bv & !s == 0 {
                    let t = s | 1 << v;
                    *ways.entry(t).or_insert(0) += w;
                    next.insert(t);
                }
            }
        }
        frontier = next;
    }
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    Ok(ways.get(&full).copied().unwrap_or(1))
}

/// Checks a witness: right number of words, all linear extensions.
pub fn witness_is_valid(p: &Poset, r: &DimensionResult) -> bool {
    match (&r.value, &r.witness) {
        (Dimension::Exact(k), Some(w)) => {
            w.len() == *k
                && w.words().all(|x| is_linear_extension(p, x))
                && crate::poset::realizes(p, w)
        }
        (Dimension::Exceeds(_), None) => true,
        _ => false,
    }
}
