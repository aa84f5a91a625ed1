#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use posetdim::classify::{RootedTree, UnicycleDecomposition};
use posetdim::oracle::{random_decomposition, rng_stream, DecompositionParams};
use posetdim::{ElementId, Poset, Realizer};
use proptest::prelude::*;

/// `(labels, edges)` with edges pointing from lower to higher index, so the
/// relation is acyclic.
pub fn dag(max_n: usize) -> impl Strategy<Value = (Vec<String>, Vec<(usize, usize)>)> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let k = pairs.len();
        (
            Just(n),
            Just(pairs),
            proptest::collection::vec(any::<bool>(), k),
        )
            .prop_map(|(n, pairs, keep)| {
                let labels = (0..n).map(|i| format!("e{i}")).collect();
                let edges = pairs
                    .into_iter()
                    .zip(keep)
                    .filter(|(_, k)| *k)
                    .map(|(e, _)| e)
                    .collect();
                (labels, edges)
            })
    })
}

pub fn poset(max_n: usize) -> impl Strategy<Value = Poset> {
    dag(max_n).prop_map(|(l, e)| Poset::from_index_relations(l, &e).unwrap())
}

/// Floyd–Warshall closure of the edge list.
#[allow(clippy::needless_range_loop)]
pub fn closure(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for &(a, b) in edges {
        r[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// Realizer check straight from the definition: every word is a
/// permutation respecting `<`, and `a < b` iff `a` precedes `b` everywhere.
pub fn realizes_by_definition(p: &Poset, r: &Realizer) -> bool {
    let n = p.len();
    if r.extensions.is_empty() {
        return n == 0;
    }
    let mut pos = Vec::new();
    for w in &r.extensions {
        if w.order.len() != n {
            return false;
        }
        let mut at = vec![usize::MAX; n];
        for (i, e) in w.order.iter().enumerate() {
            if at[e.0] != usize::MAX {
                return false;
            }
            at[e.0] = i;
        }
        pos.push(at);
    }
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let everywhere = pos.iter().all(|at| at[a] < at[b]);
            if everywhere != p.less(ElementId(a), ElementId(b)) {
                return false;
            }
        }
    }
    true
}

pub fn decomposition_with(seed: u64, params: DecompositionParams) -> UnicycleDecomposition {
    random_decomposition(&mut rng_stream(seed, 11), &params)
}

pub fn decomposition(seed: u64) -> UnicycleDecomposition {
    decomposition_with(seed, DecompositionParams::default())
}

/// The order of `graft(d)` as label pairs, computed from the pieces of `d`
/// by closing the cycle covers together with every tree's covers.
pub fn graft_relation(d: &UnicycleDecomposition) -> BTreeSet<(String, String)> {
    let mut labels: Vec<String> = Vec::new();
    let mut idx: HashMap<String, usize> = HashMap::new();
    let mut id = |l: &str, labels: &mut Vec<String>| {
        *idx.entry(l.to_string()).or_insert_with(|| {
            labels.push(l.to_string());
            labels.len() - 1
        })
    };
    let mut edges = Vec::new();
    let n = d.n;
    for p in 1..=2 * n {
        let (lo, hi) = if n == 1 {
            (d.x[0].clone(), d.z[0].clone())
        } else {
            (
                d.x[(p / 2) % n].clone(),
                d.z[(p.div_ceil(2) - 1) % n].clone(),
            )
        };
        let mut path = vec![lo];
        path.extend(d.chains[p - 1].iter().cloned());
        path.push(hi);
        for w in path.windows(2) {
            let a = id(&w[0], &mut labels);
            let b = id(&w[1], &mut labels);
            edges.push((a, b));
        }
    }
    for t in d.trees.values() {
        for (a, b) in t.tree.covers() {
            let a = id(t.tree.label(a), &mut labels);
            let b = id(t.tree.label(b), &mut labels);
            edges.push((a, b));
        }
    }
    let r = closure(labels.len(), &edges);
    let mut out = BTreeSet::new();
    for (i, row) in r.iter().enumerate() {
        for (j, &lt) in row.iter().enumerate() {
            if lt {
                out.insert((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    out
}

pub fn relation_set(p: &Poset) -> BTreeSet<(String, String)> {
    p.relation_labels().into_iter().collect()
}

/// Words of `r` restricted to `subset`, as label lines.
pub fn restricted_lines(p: &Poset, r: &Realizer, subset: &[&str]) -> Vec<String> {
    r.extensions
        .iter()
        .map(|w| {
            w.labels(p)
                .into_iter()
                .filter(|l| subset.contains(l))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

pub fn tree_labels(t: &RootedTree) -> Vec<&str> {
    t.tree.labels().iter().map(String::as_str).collect()
}
