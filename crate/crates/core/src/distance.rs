//! Distance matrices consumed by the metric-dimension solver.

/// Sentinel for a pair with no connecting path.
pub const UNREACHABLE: u32 = u32::MAX;

/// Anything that can report pairwise distances on vertices `0..order()`.
pub trait Metric {
    fn order(&self) -> usize;
    fn dist(&self, u: usize, v: usize) -> u32;
}

/// Dense `u32` distance matrix, used for BFS results and arbitrary inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                data.push(f(u, v));
            }
        }
        Self { n, data }
    }

    /// Builds from row-major rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.data[u * self.n..(u + 1) * self.n]
    }
}

impl Metric for DistanceMatrix {
    fn order(&self) -> usize {
        self.n
    }

    fn dist(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.n + v]
    }
}

/// All-pairs distances in `{0, 1, 2, 3}`, two bits per ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedDistances {
    n: usize,
    words: Vec<u64>,
}

impl PackedDistances {
    const PER_WORD: usize = 32;

    /// Panics if `f` returns a value above 3.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut words = vec![0u64; (n * n).div_ceil(Self::PER_WORD)];
        for u in 0..n {
            for v in 0..n {
                let d = f(u, v);
                assert!(d <= 3, "distance {d} does not fit in two bits");
                let idx = u * n + v;
                words[idx / Self::PER_WORD] |= u64::from(d) << (2 * (idx % Self::PER_WORD));
            }
        }
        Self { n, words }
    }

    pub fn get(&self, u: usize, v: usize) -> u8 {
        let idx = u * self.n + v;
        ((self.words[idx / Self::PER_WORD] >> (2 * (idx % Self::PER_WORD))) & 0b11) as u8
    }
}

impl Metric for PackedDistances {
    fn order(&self) -> usize {
        self.n
    }

    fn dist(&self, u: usize, v: usize) -> u32 {
        u32::from(self.get(u, v))
    }
}
