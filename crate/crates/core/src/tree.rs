//! Realizers of tree posets built from named segments.
//!
//! Everything here is iterative, so arbitrarily deep trees are fine.

use std::collections::HashSet;

use crate::classify::{is_tree, tree_neighborhood, RootedTree};
use crate::error::{Error, Result};
use crate::poset::{ElementId, LinearExtension, Poset, Realizer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Minimal,
    Maximal,
}

/// The four words produced at an extremal element `a`.
///
/// For a minimal `a` these are `U⁻, U⁺, U₁, U₂` and the realizer is
/// `(minus a plus), (a one), (a two)`. For a maximal `a` they are
/// `D⁻, D⁺, D₁, D₂` and the realizer is `(minus a plus), (one a), (two a)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HalfSegments {
    pub minus: Vec<ElementId>,
    pub plus: Vec<ElementId>,
    pub one: Vec<ElementId>,
    pub two: Vec<ElementId>,
}

impl HalfSegments {
    fn reversed(self) -> Self {
        let rev = |mut v: Vec<ElementId>| {
            v.reverse();
            v
        };
        Self {
            minus: rev(self.plus),
            plus: rev(self.minus),
            one: rev(self.one),
            two: rev(self.two),
        }
    }

    pub fn words(&self, a: ElementId, side: Side) -> [Vec<ElementId>; 3] {
        let mut w1 = self.minus.clone();
        w1.push(a);
        w1.extend(&self.plus);
        let (w2, w3) = match side {
            Side::Minimal => (
                [&[a][..], &self.one].concat(),
                [&[a][..], &self.two].concat(),
            ),
            Side::Maximal => (
                [&self.one[..], &[a]].concat(),
                [&self.two[..], &[a]].concat(),
            ),
        };
        [w1, w2, w3]
    }
}

/// Named words of the rooted-tree realizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeSegments {
    pub root: ElementId,
    pub u_minus: Vec<ElementId>,
    pub u_plus: Vec<ElementId>,
    pub u1: Vec<ElementId>,
    pub u2: Vec<ElementId>,
    pub d_minus: Vec<ElementId>,
    pub d_plus: Vec<ElementId>,
    pub d1: Vec<ElementId>,
    pub d2: Vec<ElementId>,
}

impl TreeSegments {
    /// `(U⁻ D₁ r U⁺), (D⁻ r U₁ D⁺), (D₂ r U₂)`
    pub fn words(&self) -> [Vec<ElementId>; 3] {
        let r = [self.root];
        [
            [&self.u_minus[..], &self.d1, &r, &self.u_plus].concat(),
            [&self.d_minus[..], &r, &self.u1, &self.d_plus].concat(),
            [&self.d2[..], &r, &self.u2].concat(),
        ]
    }

    pub fn realizer(&self) -> Realizer {
        Realizer::from_words(self.words().into())
    }

    pub fn vertex_segments(&self) -> VertexSegments {
        let r = [self.root];
        VertexSegments {
            i_minus: [&self.u_minus[..], &self.d1].concat(),
            i_plus: [&self.u1[..], &self.d_plus].concat(),
            w_plus: [&r[..], &self.u_plus].concat(),
            w_minus: [&self.d_minus[..], &r].concat(),
            w_bullet: [&self.d2[..], &r, &self.u2].concat(),
        }
    }

    /// Renames every element through `f`.
    pub fn map(&self, f: impl Fn(ElementId) -> ElementId) -> Self {
        let m = |v: &[ElementId]| v.iter().map(|&e| f(e)).collect::<Vec<_>>();
        Self {
            root: f(self.root),
            u_minus: m(&self.u_minus),
            u_plus: m(&self.u_plus),
            u1: m(&self.u1),
            u2: m(&self.u2),
            d_minus: m(&self.d_minus),
            d_plus: m(&self.d_plus),
            d1: m(&self.d1),
            d2: m(&self.d2),
        }
    }

    pub fn trivial(root: ElementId) -> Self {
        Self {
            root,
            u_minus: vec![],
            u_plus: vec![],
            u1: vec![],
            u2: vec![],
            d_minus: vec![],
            d_plus: vec![],
            d1: vec![],
            d2: vec![],
        }
    }
}

/// Words attached to a tree grafted at a crown vertex `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSegments {
    /// `U⁻ D₁`
    pub i_minus: Vec<ElementId>,
    /// `U₁ D⁺`
    pub i_plus: Vec<ElementId>,
    /// `w U⁺`
    pub w_plus: Vec<ElementId>,
    /// `D⁻ w`
    pub w_minus: Vec<ElementId>,
    /// `D₂ w U₂`
    pub w_bullet: Vec<ElementId>,
}

/// Depth-first reading of the tree above `root` following `step`, children
/// taken in ascending (or descending) label order. The root is included.
fn preorder(
    root: ElementId,
    ranks: &[usize],
    descending: bool,
    mut step: impl FnMut(ElementId) -> Vec<ElementId>,
) -> Vec<(ElementId, ElementId)> {
    let order = |mut v: Vec<ElementId>| {
        v.sort_by_key(|e| ranks[e.0]);
        if !descending {
            v.reverse();
        }
        v
    };
    let mut out = Vec::new();
    let mut stack: Vec<(ElementId, ElementId)> =
        order(step(root)).into_iter().map(|c| (c, root)).collect();
    while let Some((v, parent)) = stack.pop() {
        out.push((v, parent));
        stack.extend(order(step(v)).into_iter().map(|c| (c, v)));
    }
    out
}

/// Prefix left-right and right-left reading words of a tree with a minimum.
pub fn prefix_words(t: &Poset) -> Result<(LinearExtension, LinearExtension)> {
    if !is_tree(t) {
        return Err(Error::NotATree(format!("{} covers", t.cover_count())));
    }
    let mins = t.minimal_elements();
    if mins.len() != 1 {
        return Err(Error::NoMinimum);
    }
    let m = mins[0];
    let ranks = t.label_ranks();
    let read = |descending| {
        let mut w = vec![m];
        w.extend(
            preorder(m, &ranks, descending, |v| t.upper_covers(v).to_vec())
                .into_iter()
                .map(|(v, _)| v),
        );
        LinearExtension::new(w)
    };
    Ok((read(false), read(true)))
}

/// Segment construction for the part of `t` reached from `a` by a first
/// step in direction `up`. The result is in the orientation where `a` is
/// minimal.
fn half(t: &Poset, ranks: &[usize], a: ElementId, up: bool) -> HalfSegments {
    struct Task {
        e: Vec<ElementId>,
        s: Vec<usize>,
        children: Vec<usize>,
    }
    let step = |v: ElementId, up: bool, skip: Option<ElementId>| -> Vec<ElementId> {
        let covers = if up {
            t.upper_covers(v)
        } else {
            t.lower_covers(v)
        };
        covers
            .iter()
            .copied()
            .filter(|&w| Some(w) != skip)
            .collect()
    };

    let mut pending = vec![(a, up, None::<ElementId>)];
    let mut tasks: Vec<Task> = Vec::new();
    let mut pos = vec![usize::MAX; t.len()];
    let mut i = 0;
    while i < pending.len() {
        let (node, dir, skip) = pending[i];
        let mut first = true;
        let lr = preorder(node, ranks, false, |v| {
            let s = if first { skip } else { None };
            first = false;
            step(v, dir, s)
        });
        let mut first = true;
        let rl = preorder(node, ranks, true, |v| {
            let s = if first { skip } else { None };
            first = false;
            step(v, dir, s)
        });
        let e: Vec<ElementId> = lr.iter().map(|&(v, _)| v).collect();
        for (j, &v) in e.iter().enumerate() {
            pos[v.0] = j;
        }
        let s = rl.iter().map(|&(v, _)| pos[v.0]).collect();
        let mut children = Vec::with_capacity(e.len());
        for &(v, parent) in &lr {
            children.push(pending.len());
            pending.push((v, !dir, Some(parent)));
        }
        tasks.push(Task { e, s, children });
        i += 1;
    }

    let mut results: Vec<Option<HalfSegments>> = vec![None; tasks.len()];
    for (idx, task) in tasks.iter().enumerate().rev() {
        let kids: Vec<HalfSegments> = task
            .children
            .iter()
            .map(|&c| results[c].take().expect("child processed").reversed())
            .collect();
        let r = task.e.len();
        let mut out = HalfSegments {
            plus: task.e.clone(),
            ..HalfSegments::default()
        };
        for j in (0..r).rev() {
            out.minus.extend(&kids[j].one);
        }
        for (kid, &e) in kids.iter().zip(&task.e).take(r) {
            out.one.extend(&kid.two);
            out.one.push(e);
        }
        for &j in &task.s {
            out.two.extend(&kids[j].minus);
            out.two.push(task.e[j]);
        }
        for j in (0..r).rev() {
            out.two.extend(&kids[j].plus);
        }
        results[idx] = Some(out);
    }
    results[0].take().expect("root processed")
}

/// The segment words at an extremal element of a tree poset.
pub fn hardcore(t: &Poset, a: ElementId, side: Side) -> Result<HalfSegments> {
    if a.0 >= t.len() {
        return Err(Error::UnknownElement(a.to_string()));
    }
    if !is_tree(t) {
        return Err(Error::NotATree(format!("{} covers", t.cover_count())));
    }
    let ranks = t.label_ranks();
    match side {
        Side::Minimal if t.is_minimal(a) => Ok(half(t, &ranks, a, true)),
        Side::Maximal if t.is_maximal(a) => Ok(half(t, &ranks, a, false).reversed()),
        _ => Err(Error::NotExtremal(t.label(a).to_string())),
    }
}

/// Segments of the three-word realizer of a rooted tree.
pub fn rooted_realizer(rt: &RootedTree) -> Result<TreeSegments> {
    let t = &rt.tree;
    if rt.root.0 >= t.len() || !is_tree(t) {
        return Err(Error::InvalidTree("not a rooted tree poset".into()));
    }
    let ranks = t.label_ranks();
    let up = half(t, &ranks, rt.root, true);
    let down = half(t, &ranks, rt.root, false).reversed();
    Ok(TreeSegments {
        root: rt.root,
        u_minus: up.minus,
        u_plus: up.plus,
        u1: up.one,
        u2: up.two,
        d_minus: down.minus,
        d_plus: down.plus,
        d1: down.one,
        d2: down.two,
    })
}

/// Segments of the tree at `root` that avoids the `blocked` elements,
/// expressed in the ids of `q`.
pub(crate) fn attached_segments(
    q: &Poset,
    root: ElementId,
    blocked: &HashSet<ElementId>,
) -> Result<TreeSegments> {
    let mut members = vec![root];
    let mut seen: HashSet<ElementId> = HashSet::from([root]);
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for w in q.cover_neighbors(v) {
            if !blocked.contains(&w) && seen.insert(w) {
                members.push(w);
                stack.push(w);
            }
        }
    }
    let (sub, back) = q.induced(&members)?;
    let local = ElementId(back.binary_search(&root).expect("root kept"));
    let segs = rooted_realizer(&RootedTree::from_id(sub, local)?)?;
    Ok(segs.map(|e| back[e.0]))
}

/// Three-word realizer of a tree containing a saturated chain
/// `x ⋖ y₁ ⋖ … ⋖ y_k ⋖ z` where nothing incomparable to `x` hangs below
/// it, nothing incomparable to `z` hangs above it, `x` is covered only by
/// `y₁` and `z` covers only `y_k`.
pub fn chain_tree_realizer(q: &Poset, x: ElementId, z: ElementId) -> Result<Realizer> {
    let bad = |m: &str| Err(Error::PreconditionViolated(m.into()));
    if x.0 >= q.len() || z.0 >= q.len() {
        return bad("x or z not in the poset");
    }
    if !is_tree(q) {
        return bad("cover graph is not a tree");
    }
    if !q.less(x, z) {
        return bad("x is not below z");
    }
    let mut ys: Vec<ElementId> = q.above(x).filter(|&c| q.less(c, z)).collect();
    ys.sort_by_key(|&c| q.count_below(c));
    let mut chain = vec![x];
    chain.extend(&ys);
    chain.push(z);
    if chain
        .windows(2)
        .any(|w| !q.upper_covers(w[0]).contains(&w[1]))
    {
        return bad("interval [x, z] is not a saturated chain");
    }
    if q.upper_covers(x) != [chain[1]] {
        return bad("x has more than one upper cover");
    }
    if q.lower_covers(z) != [chain[chain.len() - 2]] {
        return bad("z has more than one lower cover");
    }
    if !tree_neighborhood(q, x)?.down_plus.is_empty() {
        return bad("some element below-reachable from x is incomparable to x");
    }
    if !tree_neighborhood(q, z)?.up_minus.is_empty() {
        return bad("some element above-reachable from z is incomparable to z");
    }

    let blocked: HashSet<ElementId> = chain.iter().copied().collect();
    let seg = |v: ElementId| {
        let mut b = blocked.clone();
        b.remove(&v);
        attached_segments(q, v, &b)
    };
    let tx = seg(x)?;
    let tz = seg(z)?;
    let ty = ys.iter().map(|&y| seg(y)).collect::<Result<Vec<_>>>()?;

    let mut w1 = Vec::with_capacity(q.len());
    for s in ty.iter().rev() {
        w1.extend(&s.u_minus);
        w1.extend(&s.d1);
    }
    w1.extend(&tx.d1);
    w1.push(x);
    for s in &ty {
        w1.push(s.root);
        w1.extend(&s.u_plus);
    }
    w1.push(z);
    w1.extend(&tz.u_plus);

    let mut w2 = tx.d_minus.clone();
    w2.push(x);
    for s in &ty {
        w2.extend(&s.d_minus);
        w2.push(s.root);
    }
    w2.push(z);
    w2.extend(&tz.u1);
    for s in ty.iter().rev() {
        w2.extend(&s.u1);
        w2.extend(&s.d_plus);
    }

    let mut w3 = tx.d2.clone();
    w3.push(x);
    for s in &ty {
        w3.extend(&s.d2);
        w3.push(s.root);
        w3.extend(&s.u2);
    }
    w3.push(z);
    w3.extend(&tz.u2);

    Ok(Realizer::from_words(vec![w1, w2, w3]))
}
