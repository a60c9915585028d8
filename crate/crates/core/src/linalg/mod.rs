//! Exact linear algebra on labeled 0/1 matrices.

mod equivalence;
pub mod primes;
mod rank;

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::indexing::MultiIndex;

pub use equivalence::{permutation_equivalent, Equivalence};
pub use rank::{
    bareiss_rank, gf2_rank, gfp_rank, multimodular_rank, rank, rank_with_certificate,
    RankCertificate, RankMethod, BAREISS_MAX_COLS, DEFAULT_PRIME_SEED,
};

const WORD: usize = 64;

/// A 0/1 matrix with bit-packed rows and optional row/column labels.
///
/// Equality compares entries only; labels are metadata.
#[derive(Clone)]
pub struct BinaryMatrix {
    n_rows: usize,
    n_cols: usize,
    words: usize,
    bits: Vec<u64>,
    row_labels: Option<Vec<MultiIndex>>,
    col_labels: Option<Vec<MultiIndex>>,
}

impl BinaryMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        let words = n_cols.div_ceil(WORD);
        Self {
            n_rows,
            n_cols,
            words,
            bits: vec![0; n_rows * words],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    pub fn ones(n_rows: usize, n_cols: usize) -> Self {
        let mut m = Self::zeros(n_rows, n_cols);
        for i in 0..n_rows {
            for j in 0..n_cols {
                m.set(i, j, true);
            }
        }
        m
    }

    /// Builds from dense rows of 0/1 values. All rows must share a length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n_cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), n_cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n_cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {n_cols}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.set(i, j, true),
                    _ => return domain(format!("entry ({i},{j}) = {v} is not 0/1")),
                }
            }
        }
        Ok(m)
    }

    /// Builds from the column positions of the ones in each row.
    pub fn from_support(n_rows: usize, n_cols: usize, support: &[Vec<usize>]) -> Result<Self> {
        if support.len() != n_rows {
            return Err(Error::Dimension(format!(
                "{} support rows for {n_rows} rows",
                support.len()
            )));
        }
        let mut m = Self::zeros(n_rows, n_cols);
        for (i, cols) in support.iter().enumerate() {
            for &j in cols {
                if j >= n_cols {
                    return Err(Error::Dimension(format!("column {j} out of {n_cols}")));
                }
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    pub fn with_labels(
        mut self,
        row_labels: Option<Vec<MultiIndex>>,
        col_labels: Option<Vec<MultiIndex>>,
    ) -> Result<Self> {
        check_labels(&row_labels, self.n_rows, "row")?;
        check_labels(&col_labels, self.n_cols, "column")?;
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_rows, self.n_cols)
    }

    pub fn row_labels(&self) -> Option<&[MultiIndex]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[MultiIndex]> {
        self.col_labels.as_deref()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n_rows && j < self.n_cols, "({i},{j}) out of bounds");
        self.bits[i * self.words + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.n_rows && j < self.n_cols, "({i},{j}) out of bounds");
        let w = &mut self.bits[i * self.words + j / WORD];
        if value {
            *w |= 1 << (j % WORD);
        } else {
            *w &= !(1 << (j % WORD));
        }
    }

    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub(crate) fn words_per_row(&self) -> usize {
        self.words
    }

    /// Column positions of the ones in row `i`, increasing.
    pub fn row_support(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(i).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * WORD + b)
            })
        })
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.n_rows).map(|i| self.row_weight(i)).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut out = vec![0; self.n_cols];
        for i in 0..self.n_rows {
            for j in self.row_support(i) {
                out[j] += 1;
            }
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Nonzero positions in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_rows).flat_map(move |i| self.row_support(i).map(move |j| (i, j)))
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        (0..self.n_rows)
            .map(|i| (0..self.n_cols).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    /// Rows `rows` and columns `cols`, in the given order. Labels follow.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut col_pos = vec![usize::MAX; self.n_cols];
        for (k, &j) in cols.iter().enumerate() {
            col_pos[j] = k;
        }
        let mut out = Self::zeros(rows.len(), cols.len());
        for (r, &i) in rows.iter().enumerate() {
            for j in self.row_support(i) {
                if col_pos[j] != usize::MAX {
                    out.set(r, col_pos[j], true);
                }
            }
        }
        out.row_labels = self
            .row_labels
            .as_ref()
            .map(|l| rows.iter().map(|&i| l[i].clone()).collect());
        out.col_labels = self
            .col_labels
            .as_ref()
            .map(|l| cols.iter().map(|&j| l[j].clone()).collect());
        out
    }

    /// Entry `(i, j)` moves to `(rows.apply(i), cols.apply(j))`.
    pub fn permuted(&self, rows: &Permutation, cols: &Permutation) -> Result<Self> {
        if rows.len() != self.n_rows || cols.len() != self.n_cols {
            return Err(Error::Dimension(format!(
                "permutations of size {}x{} for a {}x{} matrix",
                rows.len(),
                cols.len(),
                self.n_rows,
                self.n_cols
            )));
        }
        let mut out = Self::zeros(self.n_rows, self.n_cols);
        for (i, j) in self.nonzeros() {
            out.set(rows.apply(i), cols.apply(j), true);
        }
        let place = |labels: &Option<Vec<MultiIndex>>, p: &Permutation| {
            labels.as_ref().map(|l| {
                let mut moved = l.clone();
                for (i, lab) in l.iter().enumerate() {
                    moved[p.apply(i)] = lab.clone();
                }
                moved
            })
        };
        out.row_labels = place(&self.row_labels, rows);
        out.col_labels = place(&self.col_labels, cols);
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.n_cols, self.n_rows);
        for (i, j) in self.nonzeros() {
            out.set(j, i, true);
        }
        out.row_labels = self.col_labels.clone();
        out.col_labels = self.row_labels.clone();
        out
    }
}

fn check_labels(labels: &Option<Vec<MultiIndex>>, expected: usize, what: &str) -> Result<()> {
    if let Some(l) = labels {
        if l.len() != expected {
            return Err(Error::Dimension(format!(
                "{} {what} labels for {expected} {what}s",
                l.len()
            )));
        }
        let mut seen = HashSet::with_capacity(l.len());
        if let Some(dup) = l.iter().find(|x| !seen.insert(*x)) {
            return domain(format!("duplicate {what} label {dup}"));
        }
    }
    Ok(())
}

impl PartialEq for BinaryMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n_rows == other.n_rows && self.n_cols == other.n_cols && self.bits == other.bits
    }
}

impl Eq for BinaryMatrix {}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.n_rows, self.n_cols)?;
        if self.n_rows <= 32 && self.n_cols <= 64 {
            for i in 0..self.n_rows {
                let line: String = (0..self.n_cols)
                    .map(|j| if self.get(i, j) { '1' } else { '.' })
                    .collect();
                writeln!(f, "  {line}")?;
            }
        }
        Ok(())
    }
}

/// Block-diagonal assembly; the empty list gives the 0x0 matrix.
pub fn block_diagonal(blocks: &[BinaryMatrix]) -> BinaryMatrix {
    let rows = blocks.iter().map(|b| b.n_rows).sum();
    let cols = blocks.iter().map(|b| b.n_cols).sum();
    let mut out = BinaryMatrix::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for (i, j) in b.nonzeros() {
            out.set(r0 + i, c0 + j, true);
        }
        r0 += b.n_rows;
        c0 += b.n_cols;
    }
    out
}

/// Characteristic of the field ranks are taken over: 0 (the rationals) or a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic != 0 && !primes::is_prime(characteristic) {
            return domain(format!("characteristic {characteristic} is not 0 or a prime"));
        }
        Ok(Self { characteristic })
    }

    pub const fn rationals() -> Self {
        Self { characteristic: 0 }
    }

    pub fn prime(p: u64) -> Result<Self> {
        if p == 0 {
            return domain("0 is not a prime");
        }
        Self::new(p)
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.characteristic == 0 {
            write!(f, "Q")
        } else {
            write!(f, "GF({})", self.characteristic)
        }
    }
}

/// A bijection on `0..len`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return domain(format!("not a permutation: {images:?}"));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(len: usize) -> Self {
        Self {
            images: (0..len).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    /// Uniformly random permutation (Fisher-Yates).
    pub fn random<R: rand::Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        use rand::seq::SliceRandom;
        let mut images: Vec<usize> = (0..len).collect();
        images.shuffle(rng);
        Self { images }
    }
}
