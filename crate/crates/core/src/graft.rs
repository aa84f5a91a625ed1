//! Three-word realizers of unicycle posets assembled from tree segments.
//!
//! Every word is built as a list of tagged [`Piece`]s so that the long
//! formulas can be audited element by element.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::classify::{
    classify, decompose, graft, ComponentClass, RootedTree, UnicycleDecomposition,
};
use crate::crown::cyclic;
use crate::error::{Error, Result};
use crate::poset::{disjoint_union_realizer, ElementId, Poset, Realizer};
use crate::tree::{rooted_realizer, TreeSegments, VertexSegments};

/// A crown vertex with a (cyclic, 1-based) index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vertex {
    X(isize),
    Z(isize),
}

use Vertex::{X, Z};

/// A tagged run of elements inside an assembled word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub tag: String,
    pub word: Vec<ElementId>,
}

/// A word assembled from tagged pieces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assembly {
    pub pieces: Vec<Piece>,
}

impl Assembly {
    pub fn piece(tag: impl Into<String>, word: Vec<ElementId>) -> Self {
        Self {
            pieces: vec![Piece {
                tag: tag.into(),
                word,
            }],
        }
    }

    pub fn word(&self) -> Vec<ElementId> {
        self.pieces
            .iter()
            .flat_map(|p| p.word.iter().copied())
            .collect()
    }

    /// One `tag[labels]` group per nonempty piece.
    pub fn describe(&self, p: &Poset) -> String {
        let mut out = String::new();
        for piece in self.pieces.iter().filter(|pc| !pc.word.is_empty()) {
            if !out.is_empty() {
                out.push(' ');
            }
            let labels: Vec<&str> = piece.word.iter().map(|&e| p.label(e)).collect();
            let _ = write!(out, "{}[{}]", piece.tag, labels.join(" "));
        }
        out
    }
}

fn cat(parts: impl IntoIterator<Item = Assembly>) -> Assembly {
    Assembly {
        pieces: parts.into_iter().flat_map(|a| a.pieces).collect(),
    }
}

/// Tree segments for every element of each subdivision chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSegments {
    /// `chains[p - 1][j - 1]` belongs to `y^p_j`.
    pub chains: Vec<Vec<TreeSegments>>,
}

/// Everything needed to assemble words for one decomposition, in the ids of
/// the grafted poset.
#[derive(Clone, Debug)]
pub struct GraftSegments {
    pub n: usize,
    pub poset: Poset,
    pub chains: ChainSegments,
    pub x: Vec<VertexSegments>,
    pub z: Vec<VertexSegments>,
}

pub fn build_segments(d: &UnicycleDecomposition) -> Result<GraftSegments> {
    d.validate()?;
    let poset = graft(d)?;
    let segs = |label: &str| -> Result<TreeSegments> {
        let rt: &RootedTree = d.tree(label);
        let s = rooted_realizer(rt)?;
        let ids: Vec<ElementId> = rt
            .tree
            .labels()
            .iter()
            .map(|l| poset.require(l))
            .collect::<Result<_>>()?;
        Ok(s.map(|e| ids[e.0]))
    };
    let chains = d
        .chains
        .iter()
        .map(|c| c.iter().map(|y| segs(y)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let verts = |ls: &[String]| -> Result<Vec<VertexSegments>> {
        ls.iter().map(|l| Ok(segs(l)?.vertex_segments())).collect()
    };
    Ok(GraftSegments {
        n: d.n,
        x: verts(&d.x)?,
        z: verts(&d.z)?,
        chains: ChainSegments { chains },
        poset,
    })
}

impl GraftSegments {
    fn chain(&self, p: isize) -> (usize, &[TreeSegments]) {
        let p = cyclic(p, 2 * self.n);
        (p, &self.chains.chains[p - 1])
    }

    fn vertex(&self, v: Vertex) -> (String, &VertexSegments) {
        match v {
            X(i) => {
                let i = cyclic(i, self.n);
                (format!("X{i}"), &self.x[i - 1])
            }
            Z(i) => {
                let i = cyclic(i, self.n);
                (format!("Z{i}"), &self.z[i - 1])
            }
        }
    }

    /// `A_p(X) = ∏_{j=k..1}(U⁻ D₁) · X · ∏_{j=1..k}(y U⁺)`
    pub fn a(&self, p: isize, inner: Assembly) -> Assembly {
        let (p, ys) = self.chain(p);
        let mut pre = Vec::new();
        for s in ys.iter().rev() {
            pre.extend(&s.u_minus);
            pre.extend(&s.d1);
        }
        let mut post = Vec::new();
        for s in ys {
            post.push(s.root);
            post.extend(&s.u_plus);
        }
        cat([
            Assembly::piece(format!("A{p}<"), pre),
            inner,
            Assembly::piece(format!("A{p}>"), post),
        ])
    }

    /// `B_p(Z) = ∏_{j=1..k}(D⁻ y) · Z · ∏_{j=k..1}(U₁ D⁺)`
    pub fn b(&self, p: isize, inner: Assembly) -> Assembly {
        let (p, ys) = self.chain(p);
        let mut pre = Vec::new();
        for s in ys {
            pre.extend(&s.d_minus);
            pre.push(s.root);
        }
        let mut post = Vec::new();
        for s in ys.iter().rev() {
            post.extend(&s.u1);
            post.extend(&s.d_plus);
        }
        cat([
            Assembly::piece(format!("B{p}<"), pre),
            inner,
            Assembly::piece(format!("B{p}>"), post),
        ])
    }

    /// `C_p = ∏_{j=1..k}(D₂ y U₂)`
    pub fn c(&self, p: isize) -> Assembly {
        let (p, ys) = self.chain(p);
        let mut w = Vec::new();
        for s in ys {
            w.extend(&s.d2);
            w.push(s.root);
            w.extend(&s.u2);
        }
        Assembly::piece(format!("C{p}"), w)
    }

    /// `A_q^p(X) = A_p(A_q(X))`
    pub fn a2(&self, q: isize, p: isize, inner: Assembly) -> Assembly {
        self.a(p, self.a(q, inner))
    }

    /// `B_q^p(Z) = B_p(B_q(Z))`
    pub fn b2(&self, q: isize, p: isize, inner: Assembly) -> Assembly {
        self.b(p, self.b(q, inner))
    }

    pub fn i_minus(&self, v: Vertex) -> Assembly {
        let (name, s) = self.vertex(v);
        Assembly::piece(format!("I-({})", name.to_lowercase()), s.i_minus.clone())
    }

    pub fn i_plus(&self, v: Vertex) -> Assembly {
        let (name, s) = self.vertex(v);
        Assembly::piece(format!("I+({})", name.to_lowercase()), s.i_plus.clone())
    }

    pub fn w_plus(&self, v: Vertex) -> Assembly {
        let (name, s) = self.vertex(v);
        Assembly::piece(format!("{name}+"), s.w_plus.clone())
    }

    pub fn w_minus(&self, v: Vertex) -> Assembly {
        let (name, s) = self.vertex(v);
        Assembly::piece(format!("{name}-"), s.w_minus.clone())
    }

    pub fn w_bullet(&self, v: Vertex) -> Assembly {
        let (name, s) = self.vertex(v);
        Assembly::piece(format!("{name}*"), s.w_bullet.clone())
    }

    /// The bare crown element (its tree must be trivial).
    pub fn letter(&self, v: Vertex) -> Assembly {
        let (name, s) = self.vertex(v);
        Assembly::piece(name.to_lowercase(), s.w_plus[..1].to_vec())
    }

    /// The single element of chain `p` as a bare letter.
    fn chain_letter(&self, p: isize) -> Assembly {
        let (p, ys) = self.chain(p);
        Assembly::piece(format!("y{p}"), vec![ys[0].root])
    }
}

/// Which of the four displayed variants applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrownCase {
    One,
    Two,
    Three,
    Large,
}

impl CrownCase {
    pub fn of(n: usize) -> Self {
        match n {
            1 => CrownCase::One,
            2 => CrownCase::Two,
            3 => CrownCase::Three,
            _ => CrownCase::Large,
        }
    }
}

/// The three assembled words together with the segments they were built
/// from.
#[derive(Clone, Debug)]
pub struct AssemblyPlan {
    pub case: CrownCase,
    pub segments: GraftSegments,
    pub words: [Assembly; 3],
}

impl AssemblyPlan {
    pub fn poset(&self) -> &Poset {
        &self.segments.poset
    }

    pub fn realizer(&self) -> Realizer {
        Realizer::from_words(self.words.iter().map(Assembly::word).collect())
    }

    pub fn describe(&self) -> Vec<String> {
        self.words
            .iter()
            .map(|w| w.describe(&self.segments.poset))
            .collect()
    }
}

fn edge_words(s: &GraftSegments) -> [Assembly; 3] {
    let n = s.n as isize;
    let l = |v| s.letter(v);
    match CrownCase::of(s.n) {
        CrownCase::One => [
            cat([s.a(1, l(X(1))), s.b(2, l(Z(1)))]),
            cat([s.a(2, l(X(1))), s.b(1, l(Z(1)))]),
            cat([l(X(1)), s.c(1), s.c(2), l(Z(1))]),
        ],
        CrownCase::Two => [
            cat([
                s.a(1, l(X(1))),
                l(X(2)),
                s.b(2, l(Z(1))),
                s.b2(4, 3, l(Z(2))),
            ]),
            cat([
                s.a2(3, 2, l(X(2))),
                s.a(4, l(X(1))),
                l(Z(2)),
                s.b(1, l(Z(1))),
            ]),
            cat([
                l(X(1)),
                s.c(4),
                l(X(2)),
                s.c(1),
                s.c(3),
                l(Z(2)),
                s.c(2),
                l(Z(1)),
            ]),
        ],
        CrownCase::Three => [
            cat([
                s.a(1, l(X(1))),
                l(X(2)),
                s.b(2, l(Z(1))),
                s.c(6),
                s.c(3),
                s.a(4, l(X(3))),
                l(Z(2)),
                s.b(5, l(Z(3))),
            ]),
            cat([
                s.a(3, l(X(2))),
                l(X(3)),
                s.b(4, l(Z(2))),
                s.c(2),
                s.c(5),
                s.a(6, l(X(1))),
                l(Z(3)),
                s.b(1, l(Z(1))),
            ]),
            cat([
                l(X(1)),
                s.a(5, l(X(3))),
                s.b(6, l(Z(3))),
                s.c(1),
                s.c(4),
                s.a(2, l(X(2))),
                s.b(3, l(Z(2))),
                l(Z(1)),
            ]),
        ],
        CrownCase::Large => {
            let mut w1 = cat([s.a(1, l(X(1))), l(X(2)), s.b(2, l(Z(1))), s.c(2 * n)]);
            for i in 2..n {
                w1 = cat([w1, s.c(2 * i - 1), s.a(2 * i, l(X(i + 1))), l(Z(i))]);
            }
            w1 = cat([w1, s.b(2 * n - 1, l(Z(n)))]);

            let mut w2 = cat([s.a(3, l(X(2))), l(X(3)), s.b(4, l(Z(2))), s.c(2)]);
            for i in 3..n {
                w2 = cat([w2, l(X(i + 1)), s.b2(2 * i, 2 * i - 1, l(Z(i)))]);
            }
            w2 = cat([
                w2,
                s.c(2 * n - 1),
                s.a(2 * n, l(X(1))),
                l(Z(n)),
                s.b(1, l(Z(1))),
            ]);

            let mut w3 = cat([
                l(X(1)),
                s.a(2 * n - 1, l(X(n))),
                s.b(2 * n, l(Z(n))),
                s.c(1),
            ]);
            for i in (3..n).rev() {
                w3 = cat([w3, s.c(2 * i), s.a(2 * i - 1, l(X(i))), l(Z(i))]);
            }
            w3 = cat([w3, s.c(4), s.a(2, l(X(2))), s.b(3, l(Z(2))), l(Z(1))]);
            [w1, w2, w3]
        }
    }
}

fn vertex_words(s: &GraftSegments) -> [Assembly; 3] {
    let n = s.n as isize;
    let (im, ip) = (|v| s.i_minus(v), |v| s.i_plus(v));
    let (wp, wm, wb) = (|v| s.w_plus(v), |v| s.w_minus(v), |v| s.w_bullet(v));
    match CrownCase::of(s.n) {
        CrownCase::One => {
            let (a, b) = (s.chain_letter(1), s.chain_letter(2));
            [
                cat([wm(X(1)), a.clone(), b.clone(), wb(Z(1)), ip(X(1))]),
                cat([im(Z(1)), wb(X(1)), b.clone(), a.clone(), wp(Z(1))]),
                cat([im(X(1)), wp(X(1)), a, b, wm(Z(1)), ip(Z(1))]),
            ]
        }
        CrownCase::Two => [
            cat([wm(X(1)), wm(X(2)), wb(Z(1)), wb(Z(2)), ip(X(1)), ip(X(2))]),
            cat([im(Z(2)), im(Z(1)), wb(X(2)), wb(X(1)), wp(Z(2)), wp(Z(1))]),
            cat([
                im(X(1)),
                wp(X(1)),
                im(X(2)),
                wp(X(2)),
                wm(Z(2)),
                ip(Z(2)),
                wm(Z(1)),
                ip(Z(1)),
            ]),
        ],
        CrownCase::Three => [
            cat([
                im(Z(1)),
                im(X(2)),
                wm(X(1)),
                wp(X(2)),
                wp(Z(1)),
                wm(X(3)),
                wm(Z(2)),
                ip(Z(2)),
                wb(Z(3)),
                ip(X(3)),
                ip(X(1)),
            ]),
            cat([
                im(Z(2)),
                wb(X(2)),
                im(X(3)),
                wp(X(3)),
                wp(Z(2)),
                wb(X(1)),
                wm(Z(3)),
                wb(Z(1)),
                ip(Z(3)),
            ]),
            cat([
                im(Z(3)),
                im(X(1)),
                wp(X(1)),
                wb(X(3)),
                wp(Z(3)),
                wm(X(2)),
                wb(Z(2)),
                wm(Z(1)),
                ip(Z(1)),
                ip(X(2)),
            ]),
        ],
        CrownCase::Large => {
            let mut w1 = cat([
                im(Z(1)),
                im(X(2)),
                wm(X(1)),
                wp(X(2)),
                wp(Z(1)),
                wm(X(3)),
                wm(Z(2)),
                ip(Z(2)),
            ]);
            for i in 3..n {
                w1 = cat([w1, wm(X(i + 1)), wm(Z(i)), ip(Z(i)), ip(X(i))]);
            }
            w1 = cat([w1, wb(Z(n)), ip(X(n)), ip(X(1))]);

            let mut w2 = cat([im(Z(2)), wb(X(2))]);
            for i in 2..n - 1 {
                w2 = cat([w2, im(Z(i + 1)), im(X(i + 1)), wp(X(i + 1)), wp(Z(i))]);
            }
            w2 = cat([
                w2,
                im(X(n)),
                wp(X(n)),
                wp(Z(n - 1)),
                wb(X(1)),
                wm(Z(n)),
                wb(Z(1)),
                ip(Z(n)),
            ]);

            let mut w3 = cat([im(Z(n)), im(X(1)), wp(X(1)), wb(X(n)), wp(Z(n))]);
            for i in (3..n).rev() {
                w3 = cat([w3, wb(X(i)), wb(Z(i))]);
            }
            w3 = cat([w3, wm(X(2)), wb(Z(2)), wm(Z(1)), ip(Z(1)), ip(X(2))]);
            [w1, w2, w3]
        }
    }
}

fn full_words(s: &GraftSegments) -> [Assembly; 3] {
    let n = s.n as isize;
    let (im, ip) = (|v| s.i_minus(v), |v| s.i_plus(v));
    let (wp, wm, wb) = (|v| s.w_plus(v), |v| s.w_minus(v), |v| s.w_bullet(v));
    match CrownCase::of(s.n) {
        CrownCase::One => [
            cat([s.a(1, wm(X(1))), s.b(2, wb(Z(1))), ip(X(1))]),
            cat([im(Z(1)), s.a(2, wb(X(1))), s.b(1, wp(Z(1)))]),
            cat([im(X(1)), wp(X(1)), s.c(1), s.c(2), wm(Z(1)), ip(Z(1))]),
        ],
        CrownCase::Two => [
            cat([
                s.a(1, wm(X(1))),
                wm(X(2)),
                s.b(2, wb(Z(1))),
                s.b2(4, 3, wb(Z(2))),
                ip(X(1)),
                ip(X(2)),
            ]),
            cat([
                im(Z(2)),
                im(Z(1)),
                s.a2(3, 2, wb(X(2))),
                s.a(4, wb(X(1))),
                wp(Z(2)),
                s.b(1, wp(Z(1))),
            ]),
            cat([
                im(X(1)),
                wp(X(1)),
                s.c(4),
                im(X(2)),
                wp(X(2)),
                s.c(1),
                s.c(3),
                wm(Z(2)),
                ip(Z(2)),
                s.c(2),
                wm(Z(1)),
                ip(Z(1)),
            ]),
        ],
        CrownCase::Three => [
            cat([
                im(Z(1)),
                im(X(2)),
                s.a(1, wm(X(1))),
                wp(X(2)),
                s.b(2, wp(Z(1))),
                s.c(6),
                s.c(3),
                s.a(4, wm(X(3))),
                wm(Z(2)),
                ip(Z(2)),
                s.b(5, wb(Z(3))),
                ip(X(3)),
                ip(X(1)),
            ]),
            cat([
                im(Z(2)),
                s.a(3, wb(X(2))),
                im(X(3)),
                wp(X(3)),
                s.b(4, wp(Z(2))),
                s.c(2),
                s.c(5),
                s.a(6, wb(X(1))),
                wm(Z(3)),
                s.b(1, wb(Z(1))),
                ip(Z(3)),
            ]),
            cat([
                im(Z(3)),
                im(X(1)),
                wp(X(1)),
                s.a(5, wb(X(3))),
                s.b(6, wp(Z(3))),
                s.c(1),
                s.c(4),
                s.a(2, wm(X(2))),
                s.b(3, wb(Z(2))),
                wm(Z(1)),
                ip(Z(1)),
                ip(X(2)),
            ]),
        ],
        CrownCase::Large => {
            let mut w1 = cat([
                im(Z(1)),
                im(X(2)),
                s.a(1, wm(X(1))),
                wp(X(2)),
                s.b(2, wp(Z(1))),
                s.c(2 * n),
                s.c(3),
                s.a(4, wm(X(3))),
                wm(Z(2)),
                ip(Z(2)),
            ]);
            for i in 3..n {
                w1 = cat([
                    w1,
                    s.c(2 * i - 1),
                    s.a(2 * i, wm(X(i + 1))),
                    wm(Z(i)),
                    ip(Z(i)),
                    ip(X(i)),
                ]);
            }
            w1 = cat([w1, s.b(2 * n - 1, wb(Z(n))), ip(X(n)), ip(X(1))]);

            let mut w2 = cat([
                im(Z(2)),
                s.a(3, wb(X(2))),
                im(Z(3)),
                im(X(3)),
                wp(X(3)),
                s.b(4, wp(Z(2))),
                s.c(2),
            ]);
            for i in 3..n - 1 {
                w2 = cat([
                    w2,
                    im(Z(i + 1)),
                    im(X(i + 1)),
                    wp(X(i + 1)),
                    s.b2(2 * i, 2 * i - 1, wp(Z(i))),
                ]);
            }
            w2 = cat([
                w2,
                im(X(n)),
                wp(X(n)),
                s.b2(2 * n - 2, 2 * n - 3, wp(Z(n - 1))),
                s.c(2 * n - 1),
                s.a(2 * n, wb(X(1))),
                wm(Z(n)),
                s.b(1, wb(Z(1))),
                ip(Z(n)),
            ]);

            let mut w3 = cat([
                im(Z(n)),
                im(X(1)),
                wp(X(1)),
                s.a(2 * n - 1, wb(X(n))),
                s.b(2 * n, wp(Z(n))),
                s.c(1),
            ]);
            for i in (3..n).rev() {
                w3 = cat([w3, s.c(2 * i), s.a(2 * i - 1, wb(X(i))), wb(Z(i))]);
            }
            w3 = cat([
                w3,
                s.c(4),
                s.a(2, wm(X(2))),
                s.b(3, wb(Z(2))),
                wm(Z(1)),
                ip(Z(1)),
                ip(X(2)),
            ]);
            [w1, w2, w3]
        }
    }
}

fn plan(
    d: &UnicycleDecomposition,
    words: fn(&GraftSegments) -> [Assembly; 3],
) -> Result<AssemblyPlan> {
    let segments = build_segments(d)?;
    let words = words(&segments);
    Ok(AssemblyPlan {
        case: CrownCase::of(d.n),
        segments,
        words,
    })
}

/// Realizer when trees hang only on chain elements (crown trees trivial).
pub fn edge_only_plan(d: &UnicycleDecomposition) -> Result<AssemblyPlan> {
    d.validate()?;
    if !d.crown_trees_trivial() {
        return Err(Error::PreconditionViolated(
            "a crown vertex carries a nontrivial tree".into(),
        ));
    }
    plan(d, edge_words)
}

pub fn edge_only_realizer(d: &UnicycleDecomposition) -> Result<Realizer> {
    Ok(edge_only_plan(d)?.realizer())
}

/// Realizer when the cycle is the bare crown (no subdivisions; for `n = 1`
/// the two chains are single elements with trivial trees).
pub fn vertex_only_plan(d: &UnicycleDecomposition) -> Result<AssemblyPlan> {
    d.validate()?;
    if !d.chains_minimal() {
        return Err(Error::PreconditionViolated(
            "the cycle has subdivision elements".into(),
        ));
    }
    plan(d, vertex_words)
}

pub fn vertex_only_realizer(d: &UnicycleDecomposition) -> Result<Realizer> {
    Ok(vertex_only_plan(d)?.realizer())
}

/// The general three-word assembly for any decomposition.
pub fn unicycle_plan(d: &UnicycleDecomposition) -> Result<AssemblyPlan> {
    plan(d, full_words)
}

/// Three-word realizer of `graft(d)`, in the ids of `graft(d)`.
pub fn unicycle_realizer(d: &UnicycleDecomposition) -> Result<Realizer> {
    Ok(unicycle_plan(d)?.realizer())
}

/// Three-word realizer of any poset whose components are trees or
/// unicycles.
pub fn realize_any(p: &Poset) -> Result<Realizer> {
    let class = classify(p);
    if let Some(c) = class
        .components
        .iter()
        .find(|c| c.class == ComponentClass::Other)
    {
        return Err(Error::UnsupportedClass(format!(
            "component containing {:?} has more than one cycle",
            p.label(c.elements[0])
        )));
    }
    let mut parts = Vec::with_capacity(class.components.len());
    for comp in &class.components {
        let (sub, _) = p.induced(&comp.elements)?;
        let (host, r) = match comp.class {
            ComponentClass::Tree => {
                let root = sub
                    .elements()
                    .min_by(|&a, &b| sub.label(a).cmp(sub.label(b)))
                    .expect("nonempty component");
                let r = rooted_realizer(&RootedTree::from_id(sub.clone(), root)?)?.realizer();
                (sub, r)
            }
            ComponentClass::Unicycle => {
                let d = decompose(&sub)?;
                let pl = unicycle_plan(&d)?;
                (pl.segments.poset.clone(), pl.realizer())
            }
            ComponentClass::Other => unreachable!(),
        };
        parts.push((host, r));
    }
    if parts.is_empty() {
        return Ok(Realizer::from_words(vec![vec![]; 3]));
    }
    let (union, r) = disjoint_union_realizer(&parts)?;
    let to_p: HashMap<ElementId, ElementId> = union
        .elements()
        .map(|e| Ok((e, p.require(union.label(e))?)))
        .collect::<Result<_>>()?;
    Ok(Realizer::from_words(
        r.words()
            .map(|w| w.iter().map(|e| to_p[e]).collect())
            .collect(),
    ))
}
