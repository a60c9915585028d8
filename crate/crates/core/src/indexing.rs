//! Strictly increasing multi-indices and the symplectic pairing on labels.
//!
//! Labels are 1-based throughout. `I(d, m)` is the set of strictly
//! increasing `d`-tuples drawn from `1..=m`, always enumerated in
//! lexicographic order.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{domain, Result};

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// A strictly increasing tuple of labels in `1..=ambient`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    entries: Vec<usize>,
    ambient: usize,
}

impl MultiIndex {
    pub fn new(entries: Vec<usize>, ambient: usize) -> Result<Self> {
        if entries.len() > ambient {
            return domain(format!(
                "index of length {} exceeds ambient {ambient}",
                entries.len()
            ));
        }
        for (pos, &e) in entries.iter().enumerate() {
            if e == 0 || e > ambient {
                return domain(format!("entry {e} outside 1..={ambient}"));
            }
            if pos > 0 && entries[pos - 1] >= e {
                return domain(format!("entries not strictly increasing: {entries:?}"));
            }
        }
        Ok(Self { entries, ambient })
    }

    /// Sorts the labels first; repeated labels are rejected.
    pub fn from_unsorted(mut entries: Vec<usize>, ambient: usize) -> Result<Self> {
        entries.sort_unstable();
        Self::new(entries, ambient)
    }

    pub(crate) fn from_sorted_unchecked(entries: Vec<usize>, ambient: usize) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0] < w[1]));
        Self { entries, ambient }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, label: usize) -> bool {
        self.entries.binary_search(&label).is_ok()
    }

    /// 1-based position of `label`, if present.
    pub fn position(&self, label: usize) -> Option<usize> {
        self.entries.binary_search(&label).ok().map(|p| p + 1)
    }

    /// Position of this index in the lexicographic enumeration of `I(d, m)`.
    pub fn lex_rank(&self) -> usize {
        lex_rank(&self.entries, self.ambient)
    }

    /// This index with the labels of `extra` merged in. Fails if they overlap.
    pub fn union(&self, extra: &[usize]) -> Result<Self> {
        let mut merged = self.entries.clone();
        merged.extend_from_slice(extra);
        Self::from_unsorted(merged, self.ambient)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

/// Lexicographic rank of a strictly increasing 1-based tuple within `I(d, m)`.
pub fn lex_rank(entries: &[usize], m: usize) -> usize {
    let d = entries.len();
    let mut rank = 0u64;
    let mut prev = 0;
    for (i, &e) in entries.iter().enumerate() {
        for v in prev + 1..e {
            rank += binomial(m - v, d - i - 1);
        }
        prev = e;
    }
    rank as usize
}

/// Lazy lexicographic walk over `I(d, m)`.
#[derive(Clone, Debug)]
pub struct IndexIter {
    current: Option<Vec<usize>>,
    m: usize,
}

impl IndexIter {
    pub fn new(d: usize, m: usize) -> Result<Self> {
        if d > m {
            return domain(format!("cannot choose {d} labels out of {m}"));
        }
        Ok(Self {
            current: Some((1..=d).collect()),
            m,
        })
    }
}

impl Iterator for IndexIter {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let cur = self.current.take()?;
        let out = MultiIndex::from_sorted_unchecked(cur.clone(), self.m);
        let d = cur.len();
        let mut next = cur;
        // Rightmost entry that can still move.
        let mut i = d;
        while i > 0 {
            i -= 1;
            if next[i] < self.m - (d - 1 - i) {
                next[i] += 1;
                for j in i + 1..d {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

/// All of `I(d, m)` in lexicographic order.
pub fn enumerate_indices(d: usize, m: usize) -> Result<Vec<MultiIndex>> {
    Ok(IndexIter::new(d, m)?.collect())
}

/// The fixed symplectic basis pairing on `1..=2n`: `e_i` pairs with `e_{2n+1-i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticLabels {
    n: usize,
}

impl SymplecticLabels {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return domain(format!("half-dimension must be at least 2, got {n}"));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient(&self) -> usize {
        2 * self.n
    }

    pub fn involution(&self, label: usize) -> usize {
        2 * self.n + 1 - label
    }

    /// Index `j` in `1..=n` of the pair `P_j = {j, 2n+1-j}` containing `label`.
    pub fn pair_index(&self, label: usize) -> usize {
        label.min(self.involution(label))
    }

    /// The two labels of pair `P_j`.
    pub fn pair(&self, j: usize) -> (usize, usize) {
        (j, self.involution(j))
    }

    pub fn is_pair(&self, a: usize, b: usize) -> bool {
        a + b == 2 * self.n + 1
    }

    pub fn is_pair_free(&self, index: &MultiIndex) -> bool {
        index
            .entries()
            .iter()
            .all(|&a| a > self.n || !index.contains(self.involution(a)))
    }

    /// Pair indices `j` with both labels of `P_j` in `index`.
    pub fn full_pairs(&self, index: &MultiIndex) -> Vec<usize> {
        index
            .entries()
            .iter()
            .copied()
            .filter(|&a| a <= self.n && index.contains(self.involution(a)))
            .collect()
    }

    /// Pair indices whose labels are both absent from `index`.
    pub fn free_pairs(&self, index: &MultiIndex) -> Vec<usize> {
        (1..=self.n)
            .filter(|&j| !index.contains(j) && !index.contains(self.involution(j)))
            .collect()
    }
}

/// The singleton/pair decomposition of a multi-index.
///
/// Two indices lie in the same class exactly when their singleton tuples
/// agree; `pair_count` is carried along for the row-weight law.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RowClass {
    pub singletons: Vec<usize>,
    pub pair_count: usize,
}

impl RowClass {
    pub fn singleton_count(&self) -> usize {
        self.singletons.len()
    }
}

pub fn decompose_row_class(index: &MultiIndex, labels: &SymplecticLabels) -> RowClass {
    let mut singletons = Vec::new();
    let mut pair_count = 0;
    for &a in index.entries() {
        if index.contains(labels.involution(a)) {
            if a <= labels.n() {
                pair_count += 1;
            }
        } else {
            singletons.push(a);
        }
    }
    RowClass {
        singletons,
        pair_count,
    }
}

/// All pair-free `t`-tuples in `I(t, 2n)`, lexicographic. Empty when `t > n`.
pub fn admissible_tuples(t: usize, labels: &SymplecticLabels) -> Vec<MultiIndex> {
    if t > labels.n() {
        return Vec::new();
    }
    IndexIter::new(t, labels.ambient())
        .expect("t <= n < 2n")
        .filter(|idx| labels.is_pair_free(idx))
        .collect()
}

/// Number of pair-free `t`-tuples, by the closed form `C(n, t) * 2^t`.
pub fn q_count(t: usize, labels: &SymplecticLabels) -> u64 {
    binomial(labels.n(), t) << t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(entries: &[usize], m: usize) -> MultiIndex {
        MultiIndex::new(entries.to_vec(), m).unwrap()
    }

    /// Brute force: every 0/1 mask of length m with d bits, read off in order.
    fn subsets_by_mask(d: usize, m: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0u32..1 << m)
            .filter(|mask| mask.count_ones() as usize == d)
            .map(|mask| (0..m).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn two_subsets_of_four() {
        let got: Vec<Vec<usize>> = enumerate_indices(2, 4)
            .unwrap()
            .iter()
            .map(|i| i.entries().to_vec())
            .collect();
        assert_eq!(
            got,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
    }

    #[test]
    fn empty_index_and_bounds() {
        let all = enumerate_indices(0, 5).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
        assert_eq!(enumerate_indices(4, 12).unwrap().len(), 495);
        assert!(enumerate_indices(5, 4).is_err());
        assert_eq!(enumerate_indices(3, 3).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_matches_mask_oracle() {
        for m in 0..=9 {
            for d in 0..=m {
                let got: Vec<Vec<usize>> = enumerate_indices(d, m)
                    .unwrap()
                    .iter()
                    .map(|i| i.entries().to_vec())
                    .collect();
                assert_eq!(got, subsets_by_mask(d, m), "d={d} m={m}");
                assert_eq!(got.len() as u64, binomial(m, d));
            }
        }
    }

    #[test]
    fn lex_rank_is_position() {
        for (pos, i) in enumerate_indices(4, 9).unwrap().iter().enumerate() {
            assert_eq!(i.lex_rank(), pos);
        }
    }

    #[test]
    fn invalid_indices_rejected() {
        assert!(MultiIndex::new(vec![2, 2], 4).is_err());
        assert!(MultiIndex::new(vec![3, 1], 4).is_err());
        assert!(MultiIndex::new(vec![0], 4).is_err());
        assert!(MultiIndex::new(vec![5], 4).is_err());
        assert!(SymplecticLabels::new(1).is_err());
    }

    #[test]
    fn row_class_examples() {
        let l6 = SymplecticLabels::new(6).unwrap();
        let c = decompose_row_class(&idx(&[1, 8, 12], 12), &l6);
        assert_eq!(c.singletons, vec![8]);
        assert_eq!(c.pair_count, 1);

        // 2 + 9 = 11 = 2n+1, so {2,9} is a pair; 3 and 6 stay single.
        let l5 = SymplecticLabels::new(5).unwrap();
        let c = decompose_row_class(&idx(&[2, 3, 6, 9], 10), &l5);
        assert_eq!(c.singletons, vec![3, 6]);
        assert_eq!(c.pair_count, 1);

        let c = decompose_row_class(&idx(&[1, 2, 11, 12], 12), &l6);
        assert!(c.singletons.is_empty());
        assert_eq!(c.pair_count, 2);
    }

    #[test]
    fn row_class_agrees_with_partner_scan() {
        for n in 2..=5 {
            let labels = SymplecticLabels::new(n).unwrap();
            for d in 0..=2 * n {
                for a in IndexIter::new(d, 2 * n).unwrap() {
                    let e = a.entries();
                    let single: Vec<usize> = e
                        .iter()
                        .copied()
                        .filter(|&x| !e.iter().any(|&y| x + y == 2 * n + 1))
                        .collect();
                    let pairs = e
                        .iter()
                        .filter(|&&x| e.iter().any(|&y| y > x && x + y == 2 * n + 1))
                        .count();
                    let c = decompose_row_class(&a, &labels);
                    assert_eq!(c.singletons, single);
                    assert_eq!(c.pair_count, pairs);
                    assert_eq!(2 * c.pair_count + c.singleton_count(), d);
                }
            }
        }
    }

    #[test]
    fn row_singleton_parity_matches_n() {
        for n in 2..=6 {
            let labels = SymplecticLabels::new(n).unwrap();
            for a in IndexIter::new(n - 2, 2 * n).unwrap() {
                let s = decompose_row_class(&a, &labels).singleton_count();
                assert_eq!(s % 2, n % 2);
            }
        }
    }

    #[test]
    fn admissible_counts() {
        let l6 = SymplecticLabels::new(6).unwrap();
        assert_eq!(admissible_tuples(2, &l6).len(), 60);
        assert_eq!(admissible_tuples(3, &l6).len(), 160);
        assert_eq!(admissible_tuples(4, &l6).len(), 240);
        assert!(admissible_tuples(7, &l6).is_empty());
        let l7 = SymplecticLabels::new(7).unwrap();
        assert_eq!(q_count(3, &l7), 280);
        assert_eq!(q_count(0, &l7), 1);
        assert_eq!(q_count(2, &l6), 60);
    }

    #[test]
    fn closed_form_q_count_matches_enumeration() {
        for n in 2..=8 {
            let labels = SymplecticLabels::new(n).unwrap();
            for t in 0..=n {
                assert_eq!(
                    admissible_tuples(t, &labels).len() as u64,
                    q_count(t, &labels),
                    "t={t} n={n}"
                );
            }
        }
    }

    #[test]
    fn class_size_law_even_n() {
        use std::collections::BTreeMap;
        for n in [4, 6, 8] {
            let labels = SymplecticLabels::new(n).unwrap();
            let mut sizes: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
            let mut total = 0;
            for a in IndexIter::new(n - 2, 2 * n).unwrap() {
                *sizes.entry(decompose_row_class(&a, &labels).singletons).or_default() += 1;
                total += 1;
            }
            assert_eq!(total, binomial(2 * n, n - 2));
            for (key, size) in sizes {
                let s = key.len();
                assert_eq!(size, binomial(n - s, (n - 2 - s) / 2), "key {key:?}");
            }
        }
    }
}
