/// Square boolean matrix stored as packed `u64` rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct BitMatrix {
    n: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn new(n: usize) -> Self {
        let stride = n.div_ceil(64);
        Self {
            n,
            stride,
            data: vec![0; n * stride],
        }
    }

    #[inline]
    pub(crate) fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.n && c < self.n);
        self.data[r * self.stride + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, r: usize, c: usize) {
        self.data[r * self.stride + c / 64] |= 1 << (c % 64);
    }

    pub(crate) fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// `row[dst] |= row[src]`
    pub(crate) fn union_rows(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s] as &[u64])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x |= *y;
        }
    }

    pub(crate) fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(r).iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + t)
            })
        })
    }

    pub(crate) fn row_count(&self, r: usize) -> usize {
        self.row(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn rows_intersect(&self, r: usize, other: &BitMatrix, s: usize) -> bool {
        self.row(r)
            .iter()
            .zip(other.row(s))
            .any(|(a, b)| a & b != 0)
    }

    pub(crate) fn transpose(&self) -> Self {
        let mut t = BitMatrix::new(self.n);
        for r in 0..self.n {
            for c in self.row_ones(r) {
                t.set(c, r);
            }
        }
        t
    }
}
