//! Crowns and their fixed three-word realizers.
//!
//! For `n >= 2` the crown has minima `x1..xn` and maxima `z1..zn` with
//! `x_i < z_i` and `x_{i+1} < z_i` (indices cyclic). The size-one crown is the
//! square `x < a, b < z`.

use crate::error::{Error, Result};
use crate::poset::{ElementId, Poset, Realizer};

/// A named vertex of a crown. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrownVertex {
    X(usize),
    Z(usize),
    /// The two middle elements of the size-one crown.
    A,
    B,
}

/// Reduces `i` into `1..=n` cyclically (`0 -> n`, `n + 1 -> 1`).
#[inline]
pub fn cyclic(i: isize, n: usize) -> usize {
    let n = n as isize;
    ((i - 1).rem_euclid(n) + 1) as usize
}

pub fn crown_label(v: CrownVertex) -> String {
    match v {
        CrownVertex::X(i) => format!("x{i}"),
        CrownVertex::Z(i) => format!("z{i}"),
        CrownVertex::A => "a".into(),
        CrownVertex::B => "b".into(),
    }
}

/// Element order: `x, a, b, z` for `n = 1`; `x1..xn, z1..zn` otherwise.
pub fn crown_vertices(n: usize) -> Result<Vec<CrownVertex>> {
    match n {
        0 => Err(Error::InvalidSize(0)),
        1 => Ok(vec![
            CrownVertex::X(1),
            CrownVertex::A,
            CrownVertex::B,
            CrownVertex::Z(1),
        ]),
        _ => Ok((1..=n)
            .map(CrownVertex::X)
            .chain((1..=n).map(CrownVertex::Z))
            .collect()),
    }
}

fn vertex_label(n: usize, v: CrownVertex) -> String {
    match (n, v) {
        (1, CrownVertex::X(_)) => "x".into(),
        (1, CrownVertex::Z(_)) => "z".into(),
        _ => crown_label(v),
    }
}

/// The crown with deterministic labels (`x`, `a`, `b`, `z` or `x1`, …, `zn`).
pub fn crown_poset(n: usize) -> Result<Poset> {
    let verts = crown_vertices(n)?;
    let labels: Vec<String> = verts.iter().map(|&v| vertex_label(n, v)).collect();
    let edges: Vec<(usize, usize)> = if n == 1 {
        vec![(0, 1), (0, 2), (1, 3), (2, 3)]
    } else {
        (1..=2 * n)
            .map(|p| {
                let (xi, zi) = cover_endpoints(n, p).expect("p in range");
                (xi - 1, n + zi - 1)
            })
            .collect()
    };
    Poset::from_index_relations(labels, &edges)
}

/// Cover number `p` of the crown `n` joins `x_{⌊p/2⌋+1}` to `z_{⌈p/2⌉}`.
/// Returns the 1-based `(x, z)` indices.
pub fn cover_endpoints(n: usize, p: usize) -> Result<(usize, usize)> {
    if n < 2 || p == 0 || p > 2 * n {
        return Err(Error::OutOfRange { n, p });
    }
    Ok((cyclic((p / 2 + 1) as isize, n), p.div_ceil(2)))
}

/// The three crown words as vertex patterns.
pub fn crown_word_pattern(n: usize) -> Result<[Vec<CrownVertex>; 3]> {
    use CrownVertex::*;
    match n {
        0 => Err(Error::InvalidSize(0)),
        1 => {
            let first = vec![X(1), A, B, Z(1)];
            Ok([first.clone(), vec![X(1), B, A, Z(1)], first])
        }
        _ => {
            let mut w1 = vec![X(1), X(2), Z(1)];
            for i in 2..n {
                w1.extend([X(i + 1), Z(i)]);
            }
            w1.push(Z(n));

            let mut w2 = vec![X(2)];
            for i in 2..n {
                w2.extend([X(i + 1), Z(i)]);
            }
            w2.extend([X(1), Z(n), Z(1)]);

            let mut w3 = vec![X(1)];
            for i in (2..=n).rev() {
                w3.extend([X(i), Z(i)]);
            }
            w3.push(Z(1));
            Ok([w1, w2, w3])
        }
    }
}

/// Three-word realizer of [`crown_poset`]`(n)`.
///
/// For `n = 1` the third word repeats the first.
pub fn crown_realizer(n: usize) -> Result<Realizer> {
    let p = crown_poset(n)?;
    let id =
        |v: CrownVertex| -> ElementId { p.id(&vertex_label(n, v)).expect("crown vertex label") };
    let words = crown_word_pattern(n)?;
    Ok(Realizer::from_words(
        words
            .iter()
            .map(|w| w.iter().map(|&v| id(v)).collect())
            .collect(),
    ))
}
