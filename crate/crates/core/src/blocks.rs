//! The recursive block matrices `A_k^l`, the family `L_k`, and the
//! subset-inclusion matrices `M_m` that serve as their independent oracle.
//!
//! `A_k^0` is the element-in-pair incidence of a `(k+1)`-set. Level `l+1`
//! is the bottom-aligned side-by-side join
//!
//! ```text
//! A_k^{l+1} = A_k^l(I) ⊔ A_{k-1}^l(I) ⊔ ... ⊔ A_1^l(I)
//! ```
//!
//! where `X(I)` stacks an identity of matching width under `X`, and
//! `L_k = A_k^{k-3}`.

use std::collections::HashMap;

use crate::error::{domain, Error, Result};
use crate::indexing::{binomial, lex_rank, IndexIter, MultiIndex};
use crate::linalg::BinaryMatrix;

/// `(k+1) x C(k+1,2)`: block `j` has width `k+1-j`, an all-ones segment in
/// row `j` and an identity in rows `j+1..=k+1`.
pub fn a0(k: usize) -> Result<BinaryMatrix> {
    if k < 1 {
        return domain("A_k^0 needs k >= 1");
    }
    let mut m = BinaryMatrix::zeros(k + 1, binomial(k + 1, 2) as usize);
    let mut offset = 0;
    for j in 1..=k {
        let width = k + 1 - j;
        for t in 0..width {
            m.set(j - 1, offset + t, true);
            m.set(j + t, offset + t, true);
        }
        offset += width;
    }
    Ok(m)
}

/// `x` stacked over `I_s`.
pub fn with_identity(x: &BinaryMatrix, s: usize) -> Result<BinaryMatrix> {
    if x.n_cols() != s {
        return Err(Error::Dimension(format!(
            "cannot stack I_{s} under a matrix with {} columns",
            x.n_cols()
        )));
    }
    let mut out = BinaryMatrix::zeros(x.n_rows() + s, s);
    for (i, j) in x.nonzeros() {
        out.set(i, j, true);
    }
    for i in 0..s {
        out.set(x.n_rows() + i, i, true);
    }
    Ok(out)
}

/// Side-by-side join with bottoms aligned and zeros above shorter operands.
pub fn join_bottom(operands: &[BinaryMatrix]) -> Result<BinaryMatrix> {
    let Some(first) = operands.first() else {
        return domain("join of no operands");
    };
    if operands.windows(2).any(|w| w[1].n_rows() > w[0].n_rows()) {
        return domain("operand heights must weakly decrease left to right");
    }
    let height = first.n_rows();
    let width = operands.iter().map(BinaryMatrix::n_cols).sum();
    let mut out = BinaryMatrix::zeros(height, width);
    let mut col0 = 0;
    for x in operands {
        let row0 = height - x.n_rows();
        for (i, j) in x.nonzeros() {
            out.set(row0 + i, col0 + j, true);
        }
        col0 += x.n_cols();
    }
    Ok(out)
}

/// `A_k^level`, with `C(k+level+1, level+2)` columns and `C(k+level+1, level+1)` rows.
pub fn a(k: usize, level: usize) -> Result<BinaryMatrix> {
    if k < 1 {
        return domain("A_k^l needs k >= 1");
    }
    let mut memo = HashMap::new();
    a_memo(k, level, &mut memo)
}

fn a_memo(
    k: usize,
    level: usize,
    memo: &mut HashMap<(usize, usize), BinaryMatrix>,
) -> Result<BinaryMatrix> {
    if let Some(m) = memo.get(&(k, level)) {
        return Ok(m.clone());
    }
    let m = if level == 0 {
        a0(k)?
    } else {
        let prev = level - 1;
        let operands = (0..k)
            .map(|j| {
                let inner = a_memo(k - j, prev, memo)?;
                with_identity(&inner, binomial(k + prev + 1 - j, prev + 2) as usize)
            })
            .collect::<Result<Vec<_>>>()?;
        join_bottom(&operands)?
    };
    memo.insert((k, level), m.clone());
    Ok(m)
}

/// `L_k = A_k^{k-3}` for `k >= 3`, and the `1 x 2` all-ones matrix for `k = 2`.
pub fn l_matrix(k: usize) -> Result<BinaryMatrix> {
    match k {
        0 | 1 => domain(format!("L_k needs k >= 2, got {k}")),
        2 => Ok(BinaryMatrix::ones(1, 2)),
        _ => a(k, k - 3),
    }
}

/// Inclusion matrix of `(m-2)/2`-subsets (rows) in `m/2`-subsets (columns)
/// of `{1..m}`, both in lexicographic order and carried as labels.
pub fn m_matrix(m: usize) -> Result<BinaryMatrix> {
    if m < 2 || m % 2 == 1 {
        return domain(format!("M_m needs an even m >= 2, got {m}"));
    }
    let rows: Vec<MultiIndex> = IndexIter::new((m - 2) / 2, m)?.collect();
    let cols: Vec<MultiIndex> = IndexIter::new(m / 2, m)?.collect();
    let support: Vec<Vec<usize>> = rows
        .iter()
        .map(|r| {
            (1..=m)
                .filter(|&i| !r.contains(i))
                .map(|i| {
                    let mut b = r.entries().to_vec();
                    b.push(i);
                    b.sort_unstable();
                    lex_rank(&b, m)
                })
                .collect()
        })
        .collect();
    BinaryMatrix::from_support(rows.len(), cols.len(), &support)?.with_labels(Some(rows), Some(cols))
}

/// `T_alpha`: a fixed prefix of pair indices completed by every 2-subset of
/// the pair indices after the prefix's last entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    /// `alpha` in `I((m-6)/2, m-2)`.
    pub prefix: MultiIndex,
    pub m: usize,
    /// The 2-subsets `(a, b)` with `last(alpha) < a < b <= m`, lexicographic.
    pub completions: Vec<(usize, usize)>,
}

impl Triangle {
    /// The `(m-2)/2`-subsets of `{1..m}` in this triangle, in completion order.
    pub fn members(&self) -> Vec<MultiIndex> {
        self.completions
            .iter()
            .map(|&(a, b)| {
                let mut e = self.prefix.entries().to_vec();
                e.push(a);
                e.push(b);
                MultiIndex::from_sorted_unchecked(e, self.m)
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.completions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.completions.is_empty()
    }
}

/// The triangles `T_alpha` for `alpha` in `I((m-6)/2, m-2)`, lexicographic.
pub fn triangles(m: usize) -> Result<Vec<Triangle>> {
    if m < 6 || m % 2 == 1 {
        return domain(format!("triangles need an even m >= 6, got {m}"));
    }
    Ok(IndexIter::new((m - 6) / 2, m - 2)?
        .map(|prefix| {
            let last = prefix.entries().last().copied().unwrap_or(0);
            let completions = (last + 1..=m)
                .flat_map(|a| (a + 1..=m).map(move |b| (a, b)))
                .collect();
            Triangle {
                prefix: MultiIndex::from_sorted_unchecked(prefix.entries().to_vec(), m),
                m,
                completions,
            }
        })
        .collect())
}

/// True iff the triangles are pairwise disjoint and cover every `(m-2)/2`-subset of `{1..m}`.
pub fn verify_triangle_partition(m: usize, family: &[Triangle]) -> bool {
    let size = (m - 2) / 2;
    let total = binomial(m, size) as usize;
    let mut seen = vec![false; total];
    let mut count = 0;
    for t in family {
        for member in t.members() {
            if member.len() != size || member.ambient() != m {
                return false;
            }
            let r = member.lex_rank();
            if std::mem::replace(&mut seen[r], true) {
                return false;
            }
            count += 1;
        }
    }
    count == total
}

/// Rows of `M_m` for the given row subsets, restricted to the columns they touch.
///
/// Columns are the `m/2`-subsets containing at least one row, lexicographic.
pub fn phi_rows(rows: &[MultiIndex], m: usize) -> Result<BinaryMatrix> {
    let mut supersets: Vec<Vec<Vec<usize>>> = Vec::with_capacity(rows.len());
    for r in rows {
        if r.ambient() != m || 2 * r.len() + 2 != m {
            return domain(format!("{r} is not an (m-2)/2-subset of 1..={m}"));
        }
        supersets.push(
            (1..=m)
                .filter(|&i| !r.contains(i))
                .map(|i| {
                    let mut b = r.entries().to_vec();
                    b.push(i);
                    b.sort_unstable();
                    b
                })
                .collect(),
        );
    }
    let mut cols: Vec<Vec<usize>> = supersets.iter().flatten().cloned().collect();
    cols.sort();
    cols.dedup();
    let support: Vec<Vec<usize>> = supersets
        .iter()
        .map(|sup| {
            sup.iter()
                .map(|b| cols.binary_search(b).expect("column collected above"))
                .collect()
        })
        .collect();
    let col_labels = cols
        .into_iter()
        .map(|c| MultiIndex::from_sorted_unchecked(c, m))
        .collect::<Vec<_>>();
    BinaryMatrix::from_support(rows.len(), col_labels.len(), &support)?
        .with_labels(Some(rows.to_vec()), Some(col_labels))
}

/// `phi(T)`: the image of a triangle, on its support columns.
pub fn phi(triangle: &Triangle) -> Result<BinaryMatrix> {
    phi_rows(&triangle.members(), triangle.m)
}
