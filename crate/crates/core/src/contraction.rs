//! The kernel conditions of the contraction map `∧^n E -> ∧^{n-2} E`.
//!
//! For `alpha` in `I(n-2, 2n)` the linear form `Pi_alpha` is the sum of the
//! Plücker variables `X_beta` over every `beta = alpha ∪ {i, 2n+1-i}` with the
//! pair disjoint from `alpha`. Stacking these forms gives the 0/1 matrix `B`
//! with rows `I(n-2, 2n)` and columns `I(n, 2n)`, both lexicographic.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::indexing::{decompose_row_class, IndexIter, MultiIndex, SymplecticLabels};
use crate::linalg::primes::{inv_mod, mul_mod};
use crate::linalg::{BinaryMatrix, FieldSpec};

/// `Pi_alpha`: its row label and the column labels carrying coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneForm {
    pub row_label: MultiIndex,
    pub terms: Vec<MultiIndex>,
}

impl PlaneForm {
    /// Number of surviving variables; a form with `t` terms is a `t`-plane.
    pub fn weight(&self) -> usize {
        self.terms.len()
    }
}

pub fn plane_form(alpha: &MultiIndex, labels: &SymplecticLabels) -> Result<PlaneForm> {
    let n = labels.n();
    if alpha.len() != n - 2 || alpha.ambient() != labels.ambient() {
        return domain(format!(
            "{alpha} is not in I({}, {})",
            n - 2,
            labels.ambient()
        ));
    }
    let terms = labels
        .free_pairs(alpha)
        .into_iter()
        .map(|j| {
            let (a, b) = labels.pair(j);
            alpha.union(&[a, b]).expect("free pair is disjoint")
        })
        .collect();
    Ok(PlaneForm {
        row_label: alpha.clone(),
        terms,
    })
}

/// The `C(2n, n-2) x C(2n, n)` matrix of all `Pi_alpha`, labeled.
pub fn build_b(labels: &SymplecticLabels) -> BinaryMatrix {
    let n = labels.n();
    let ambient = labels.ambient();
    let rows: Vec<MultiIndex> = IndexIter::new(n - 2, ambient).expect("n-2 < 2n").collect();
    let cols: Vec<MultiIndex> = IndexIter::new(n, ambient).expect("n < 2n").collect();
    let support: Vec<Vec<usize>> = rows
        .par_iter()
        .map(|alpha| {
            plane_form(alpha, labels)
                .expect("row label has length n-2")
                .terms
                .iter()
                .map(MultiIndex::lex_rank)
                .collect()
        })
        .collect();
    BinaryMatrix::from_support(rows.len(), cols.len(), &support)
        .and_then(|m| m.with_labels(Some(rows), Some(cols)))
        .expect("labels enumerate I(n-2,2n) and I(n,2n)")
}

/// Histogram of plane weights over all rows of `B`.
pub fn plane_census(labels: &SymplecticLabels) -> BTreeMap<usize, usize> {
    let mut census = BTreeMap::new();
    for alpha in IndexIter::new(labels.n() - 2, labels.ambient()).expect("n-2 < 2n") {
        let c = decompose_row_class(&alpha, labels);
        *census
            .entry(labels.n() - c.pair_count - c.singleton_count())
            .or_default() += 1;
    }
    census
}

/// Sign bookkeeping applied to the terms of `Pi_alpha` when evaluating it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Every coefficient is 1.
    Unsigned,
    /// The term that drops positions `s < t` of `beta` carries `(-1)^(s+t)`.
    Signed,
}

/// Arithmetic in `Z` (checked `i128`) or `GF(p)` with canonical representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Arith {
    p: u64,
}

impl Arith {
    fn new(field: FieldSpec) -> Self {
        Self {
            p: field.characteristic(),
        }
    }

    fn reduce(&self, x: i128) -> i128 {
        if self.p == 0 {
            x
        } else {
            x.rem_euclid(self.p as i128)
        }
    }

    fn add(&self, a: i128, b: i128) -> Result<i128> {
        if self.p == 0 {
            a.checked_add(b)
                .ok_or_else(|| Error::Overflow(format!("{a} + {b}")))
        } else {
            Ok((a + b).rem_euclid(self.p as i128))
        }
    }

    fn sub(&self, a: i128, b: i128) -> Result<i128> {
        if self.p == 0 {
            a.checked_sub(b)
                .ok_or_else(|| Error::Overflow(format!("{a} - {b}")))
        } else {
            Ok((a - b).rem_euclid(self.p as i128))
        }
    }

    fn mul(&self, a: i128, b: i128) -> Result<i128> {
        if self.p == 0 {
            a.checked_mul(b)
                .ok_or_else(|| Error::Overflow(format!("{a} * {b}")))
        } else {
            Ok(mul_mod(a as u64, b as u64, self.p) as i128)
        }
    }

    fn neg(&self, a: i128) -> Result<i128> {
        self.sub(0, a)
    }
}

/// A vector of `∧^n E` in Plücker coordinates, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerVector {
    n: usize,
    field: FieldSpec,
    coords: BTreeMap<MultiIndex, i128>,
}

impl PluckerVector {
    pub fn zero(labels: &SymplecticLabels, field: FieldSpec) -> Self {
        Self {
            n: labels.n(),
            field,
            coords: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Sets `p_beta`; values are reduced into the field and zeros are dropped.
    pub fn set(&mut self, beta: MultiIndex, value: i128) -> Result<()> {
        if beta.len() != self.n || beta.ambient() != 2 * self.n {
            return domain(format!("{beta} is not in I({}, {})", self.n, 2 * self.n));
        }
        let v = Arith::new(self.field).reduce(value);
        if v == 0 {
            self.coords.remove(&beta);
        } else {
            self.coords.insert(beta, v);
        }
        Ok(())
    }

    pub fn get(&self, beta: &MultiIndex) -> i128 {
        self.coords.get(beta).copied().unwrap_or(0)
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (&MultiIndex, i128)> {
        self.coords.iter().map(|(k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Indicator of a single basis vector `e_beta`.
    pub fn basis(labels: &SymplecticLabels, field: FieldSpec, beta: MultiIndex) -> Result<Self> {
        let mut v = Self::zero(labels, field);
        v.set(beta, 1)?;
        Ok(v)
    }
}

/// Rows `alpha` with `Pi_alpha(p) != 0`, with the offending value.
///
/// Computed from the columns side: each nonzero `p_beta` feeds the rows
/// obtained by deleting one full pair from `beta`.
pub fn kernel_violations(
    p: &PluckerVector,
    convention: Convention,
) -> Result<Vec<(MultiIndex, i128)>> {
    let labels = SymplecticLabels::new(p.n)?;
    let arith = Arith::new(p.field);
    let mut sums: BTreeMap<MultiIndex, i128> = BTreeMap::new();
    for (beta, value) in p.nonzeros() {
        for j in labels.full_pairs(beta) {
            let (a, b) = labels.pair(j);
            let rest: Vec<usize> = beta
                .entries()
                .iter()
                .copied()
                .filter(|&x| x != a && x != b)
                .collect();
            let alpha = MultiIndex::from_sorted_unchecked(rest, beta.ambient());
            let mut term = value;
            if convention == Convention::Signed {
                let s = beta.position(a).expect("pair member");
                let t = beta.position(b).expect("pair member");
                if (s + t) % 2 == 1 {
                    term = arith.neg(term)?;
                }
            }
            let slot = sums.entry(alpha).or_insert(0);
            *slot = arith.add(*slot, term)?;
        }
    }
    Ok(sums.into_iter().filter(|&(_, v)| v != 0).collect())
}

pub fn kernel_membership(p: &PluckerVector, convention: Convention) -> Result<bool> {
    Ok(kernel_violations(p, convention)?.is_empty())
}

/// Plücker vector of the row space of the `n x 2n` generator with
/// `G[i][i] = 1` and `G[i][2n+1-j] = S[i][j]`.
///
/// The row space is isotropic for the alternating form with
/// `w(e_i, e_{2n+1-i}) = 1` for `i <= n`; this is checked before returning.
pub fn sample_lagrangian(
    s: &[Vec<i128>],
    labels: &SymplecticLabels,
    field: FieldSpec,
) -> Result<PluckerVector> {
    let n = labels.n();
    let arith = Arith::new(field);
    if s.len() != n || s.iter().any(|row| row.len() != n) {
        return Err(Error::Dimension(format!("S must be {n}x{n}")));
    }
    for i in 0..n {
        for j in i + 1..n {
            if arith.reduce(s[i][j]) != arith.reduce(s[j][i]) {
                return domain(format!("S is not symmetric at ({i},{j})"));
            }
        }
    }
    let ambient = labels.ambient();
    let mut g = vec![vec![0i128; ambient]; n];
    for i in 0..n {
        g[i][i] = 1;
        for j in 0..n {
            // 0-based column of label 2n+1-(j+1) is 2n-1-j.
            g[i][ambient - 1 - j] = arith.reduce(s[i][j]);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if symplectic_pairing(&g[i], &g[j], n, arith)? != 0 {
                return domain("generator rows are not isotropic");
            }
        }
    }
    let mut out = PluckerVector::zero(labels, field);
    for beta in IndexIter::new(n, ambient)? {
        let minor: Vec<Vec<i128>> = g
            .iter()
            .map(|row| beta.entries().iter().map(|&c| row[c - 1]).collect())
            .collect();
        let d = determinant(minor, arith)?;
        out.set(beta, d)?;
    }
    Ok(out)
}

fn symplectic_pairing(x: &[i128], y: &[i128], n: usize, arith: Arith) -> Result<i128> {
    let mut acc = 0;
    for i in 0..n {
        let partner = 2 * n - 1 - i;
        acc = arith.add(acc, arith.mul(x[i], y[partner])?)?;
        acc = arith.sub(acc, arith.mul(x[partner], y[i])?)?;
    }
    Ok(acc)
}

/// Determinant by fraction-free elimination (char 0) or Gaussian elimination mod p.
fn determinant(mut a: Vec<Vec<i128>>, arith: Arith) -> Result<i128> {
    let n = a.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| a[i][c] != 0) else {
            return Ok(0);
        };
        if piv != c {
            a.swap(piv, c);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                if arith.p == 0 {
                    let num = arith.sub(arith.mul(a[c][c], a[i][j])?, arith.mul(a[i][c], a[c][j])?)?;
                    a[i][j] = num / prev;
                } else {
                    let f = mul_mod(a[i][c] as u64, inv_mod(a[c][c] as u64, arith.p), arith.p);
                    a[i][j] = arith.sub(a[i][j], arith.mul(f as i128, a[c][j])?)?;
                }
            }
            a[i][c] = 0;
        }
        if arith.p == 0 {
            prev = a[c][c];
        }
    }
    if arith.p == 0 {
        Ok(sign * a[n - 1][n - 1])
    } else {
        let mut det = arith.reduce(sign);
        for (i, row) in a.iter().enumerate() {
            det = arith.mul(det, row[i])?;
        }
        Ok(det)
    }
}

/// Random symmetric `n x n` matrix: entries uniform in `0..p`, or in `-3..=3` over `Q`.
pub fn random_symmetric<R: Rng + ?Sized>(n: usize, field: FieldSpec, rng: &mut R) -> Vec<Vec<i128>> {
    let mut s = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = if field.is_rational() {
                rng.gen_range(-3i128..=3)
            } else {
                rng.gen_range(0..field.characteristic()) as i128
            };
            s[i][j] = v;
            s[j][i] = v;
        }
    }
    s
}

/// The coordinate Lagrangian spanned by one basis vector from each pair:
/// `e_j` when `take_low[j-1]`, else `e_{2n+1-j}`.
pub fn coordinate_lagrangian(
    take_low: &[bool],
    labels: &SymplecticLabels,
    field: FieldSpec,
) -> Result<PluckerVector> {
    if take_low.len() != labels.n() {
        return Err(Error::Dimension(format!(
            "need one choice per pair, got {}",
            take_low.len()
        )));
    }
    let entries = take_low
        .iter()
        .enumerate()
        .map(|(j, &low)| if low { j + 1 } else { labels.involution(j + 1) })
        .collect();
    PluckerVector::basis(labels, field, MultiIndex::from_unsorted(entries, labels.ambient())?)
}

/// Checks the three-term Grassmann-Plücker relations
/// `p(S,a,b) p(S,c,d) - p(S,a,c) p(S,b,d) + p(S,a,d) p(S,b,c) = 0`
/// for every `(n-2)`-subset `S` and `a < b < c < d` outside it.
pub fn satisfies_three_term_relations(p: &PluckerVector) -> Result<bool> {
    let n = p.n;
    let ambient = 2 * n;
    let arith = Arith::new(p.field);
    let signed_coord = |base: &[usize], x: usize, y: usize| -> i128 {
        let mut seq = base.to_vec();
        seq.push(x);
        seq.push(y);
        // Sorting sign: count inversions contributed by x and y.
        let mut inversions = base.iter().filter(|&&v| v > x).count()
            + base.iter().filter(|&&v| v > y).count();
        if x > y {
            inversions += 1;
        }
        seq.sort_unstable();
        let value = p.get(&MultiIndex::from_sorted_unchecked(seq, ambient));
        if inversions % 2 == 1 {
            arith.neg(value).unwrap_or(0)
        } else {
            value
        }
    };
    for base in IndexIter::new(n - 2, ambient)? {
        let rest: Vec<usize> = (1..=ambient).filter(|&x| !base.contains(x)).collect();
        let e = base.entries();
        for quad in IndexIter::new(4, rest.len())? {
            let q: Vec<usize> = quad.entries().iter().map(|&i| rest[i - 1]).collect();
            let (a, b, c, d) = (q[0], q[1], q[2], q[3]);
            let t1 = arith.mul(signed_coord(e, a, b), signed_coord(e, c, d))?;
            let t2 = arith.mul(signed_coord(e, a, c), signed_coord(e, b, d))?;
            let t3 = arith.mul(signed_coord(e, a, d), signed_coord(e, b, c))?;
            if arith.add(arith.sub(t1, t2)?, t3)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
