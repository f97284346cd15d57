//! Dense bit rows with word-parallel intersection counts.

use std::sync::OnceLock;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

type CountFn = fn(&[u64], &[u64]) -> u64;

fn and_count_portable(a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).map(|(x, y)| u64::from((x & y).count_ones())).sum()
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "popcnt")]
unsafe fn and_count_popcnt_impl(a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).map(|(x, y)| u64::from((x & y).count_ones())).sum()
}

#[cfg(target_arch = "x86_64")]
fn and_count_popcnt(a: &[u64], b: &[u64]) -> u64 {
    // SAFETY: only selected after runtime detection of the popcnt feature.
    unsafe { and_count_popcnt_impl(a, b) }
}

fn select_kernel() -> CountFn {
    #[cfg(target_arch = "x86_64")]
    if std::is_x86_feature_detected!("popcnt") {
        return and_count_popcnt;
    }
    and_count_portable
}

/// Number of positions set in both `a` and `b`.
#[inline]
pub fn and_count(a: &[u64], b: &[u64]) -> u64 {
    static KERNEL: OnceLock<CountFn> = OnceLock::new();
    KERNEL.get_or_init(select_kernel)(a, b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet {
    n: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet {
            n,
            words: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = BitSet::new(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Self {
        let mut s = BitSet::new(n);
        for &i in indices {
            s.insert(i);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.n);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn complement(&self) -> Self {
        let mut out = BitSet::new(self.n);
        for (o, &w) in out.words.iter_mut().zip(&self.words) {
            *o = !w;
        }
        if self.n % 64 != 0 {
            if let Some(last) = out.words.last_mut() {
                *last &= (1u64 << (self.n % 64)) - 1;
            }
        }
        out
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, &b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference(&self, other: &BitSet) -> Self {
        let mut out = self.clone();
        for (a, &b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & b == 0)
    }
}

/// Square 0/1 matrix stored as packed rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let stride = words_for(n);
        BitMatrix {
            n,
            stride,
            data: vec![0; n * stride],
        }
    }

    /// Assembles a matrix from per-row bit words.
    pub fn from_rows(n: usize, rows: Vec<Vec<u64>>) -> Self {
        let stride = words_for(n);
        let mut data = Vec::with_capacity(n * stride);
        for row in rows {
            debug_assert_eq!(row.len(), stride);
            data.extend(row);
        }
        BitMatrix { n, stride, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.stride + j / 64] |= 1 << (j % 64);
    }

    #[inline]
    pub fn clear(&mut self, i: usize, j: usize) {
        self.data[i * self.stride + j / 64] &= !(1 << (j % 64));
    }

    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(i);
        row.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.row(i).iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Common neighbours of `i` and `j`.
    #[inline]
    pub fn common(&self, i: usize, j: usize) -> u64 {
        and_count(self.row(i), self.row(j))
    }

    /// `|N(i) ∩ S|`.
    #[inline]
    pub fn count_in(&self, i: usize, s: &BitSet) -> u64 {
        and_count(self.row(i), s.words())
    }

    /// Copies every set bit above the diagonal to its mirror position.
    pub fn mirror_upper(&mut self) {
        for i in 0..self.n {
            let ones: Vec<usize> = self.row_ones(i).filter(|&j| j > i).collect();
            for j in ones {
                self.set(j, i);
            }
        }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| self.row_ones(i).all(|j| self.get(j, i)))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| !self.get(i, i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kernels_agree() {
        let a: Vec<u64> = (0..37).map(|i| 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(i + 1)).collect();
        let b: Vec<u64> = (0..37).map(|i| 0xc2b2_ae3d_27d4_eb4fu64.wrapping_mul(i + 3)).collect();
        assert_eq!(and_count(&a, &b), and_count_portable(&a, &b));
    }

    #[test]
    fn complement_masks_tail() {
        let s = BitSet::from_indices(70, &[0, 69]);
        let c = s.complement();
        assert_eq!(c.len(), 68);
        assert!(!c.contains(69));
        assert!(c.contains(68));
    }

    #[test]
    fn mirror_makes_symmetric() {
        let mut m = BitMatrix::new(130);
        m.set(0, 129);
        m.set(5, 64);
        m.mirror_upper();
        assert!(m.get(129, 0) && m.get(64, 5));
        assert!(m.is_symmetric());
        assert_eq!(m.common(0, 5), 0);
        assert_eq!(m.degree(129), 1);
    }

    proptest! {
        #[test]
        fn bitset_roundtrip(indices in proptest::collection::btree_set(0usize..200, 0..60)) {
            let v: Vec<usize> = indices.iter().copied().collect();
            let s = BitSet::from_indices(200, &v);
            prop_assert_eq!(s.iter().collect::<Vec<_>>(), v.clone());
            prop_assert_eq!(s.len(), v.len());
            prop_assert_eq!(s.complement().len(), 200 - v.len());
        }
    }
}
