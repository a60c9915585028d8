//! Splitting `B` into `L_k` blocks.
//!
//! Rows and columns of `B` are keyed by their singleton tuple (the labels
//! whose partner is absent). A row and a column meet in a nonzero entry only
//! when their tuples agree, so `B` is block diagonal over these keys once the
//! pair-free columns are set aside. Inside the class of a tuple with `s`
//! singletons, the `m = n - s` untouched pair indices relabel to `1..=m`
//! and the block becomes the inclusion matrix `M_m`, i.e. `L_{(m+2)/2}`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::blocks::m_matrix;
use crate::contraction::{build_b, plane_census};
use crate::error::{domain, Result};
use crate::indexing::{
    binomial, decompose_row_class, lex_rank, MultiIndex, SymplecticLabels,
};
use crate::linalg::{rank, rank_with_certificate, BinaryMatrix, FieldSpec, RankCertificate};

/// Where a column of `B` lands.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnClass {
    /// No symplectic pair inside: the column is identically zero.
    Zero,
    /// Belongs to the block of the row class with these singletons.
    Block(Vec<usize>),
}

pub fn classify_column(beta: &MultiIndex, labels: &SymplecticLabels) -> ColumnClass {
    let class = decompose_row_class(beta, labels);
    if class.pair_count == 0 {
        ColumnClass::Zero
    } else {
        ColumnClass::Block(class.singletons)
    }
}

pub fn classify_columns(labels: &SymplecticLabels) -> BTreeMap<MultiIndex, ColumnClass> {
    crate::indexing::IndexIter::new(labels.n(), labels.ambient())
        .expect("n < 2n")
        .map(|beta| {
            let c = classify_column(&beta, labels);
            (beta, c)
        })
        .collect()
}

/// One diagonal block of `B` together with the relabeling that identifies it
/// with `M_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub singletons: Vec<usize>,
    /// `m`, the number of pair indices untouched by the singletons.
    pub m: usize,
    /// Row `i` of `M_m` is row `rows[i]` of `B`.
    pub rows: Vec<usize>,
    /// Column `j` of `M_m` is column `cols[j]` of `B`.
    pub cols: Vec<usize>,
    pub verified: bool,
}

impl Block {
    /// `k` in `L_k`.
    pub fn kind(&self) -> usize {
        (self.m + 2) / 2
    }

    pub fn extract(&self, b: &BinaryMatrix) -> BinaryMatrix {
        b.submatrix(&self.rows, &self.cols)
    }
}

/// `B` for one `n`, with row/column class membership precomputed.
pub struct Decomposer {
    labels: SymplecticLabels,
    b: BinaryMatrix,
    row_groups: BTreeMap<Vec<usize>, Vec<usize>>,
    col_groups: BTreeMap<Vec<usize>, Vec<usize>>,
    zero_columns: Vec<usize>,
}

impl Decomposer {
    pub fn new(labels: SymplecticLabels) -> Self {
        let b = build_b(&labels);
        let mut row_groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, alpha) in b.row_labels().expect("B is labeled").iter().enumerate() {
            row_groups
                .entry(decompose_row_class(alpha, &labels).singletons)
                .or_default()
                .push(i);
        }
        let mut col_groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        let mut zero_columns = Vec::new();
        for (j, beta) in b.col_labels().expect("B is labeled").iter().enumerate() {
            match classify_column(beta, &labels) {
                ColumnClass::Zero => zero_columns.push(j),
                ColumnClass::Block(s) => col_groups.entry(s).or_default().push(j),
            }
        }
        Self {
            labels,
            b,
            row_groups,
            col_groups,
            zero_columns,
        }
    }

    pub fn labels(&self) -> &SymplecticLabels {
        &self.labels
    }

    pub fn b(&self) -> &BinaryMatrix {
        &self.b
    }

    pub fn zero_columns(&self) -> &[usize] {
        &self.zero_columns
    }

    /// Singleton tuples of all row classes, lexicographic.
    pub fn class_keys(&self) -> Vec<Vec<usize>> {
        self.row_groups.keys().cloned().collect()
    }

    /// Every column class has a row class and vice versa, and the column
    /// classes together with the zero columns cover each column once.
    pub fn columns_partitioned(&self) -> bool {
        let covered: usize = self.col_groups.values().map(Vec::len).sum();
        self.col_groups.keys().eq(self.row_groups.keys())
            && covered + self.zero_columns.len() == self.b.n_cols()
    }

    /// Extracts the block of `singletons` in `M_m` order and compares it
    /// entrywise with `m_matrix(m)`.
    pub fn verify_block(&self, singletons: &[usize]) -> Result<Block> {
        let Some(row_ids) = self.row_groups.get(singletons) else {
            return domain(format!("no row class with singletons {singletons:?}"));
        };
        let col_ids = self.col_groups.get(singletons).map_or(&[][..], Vec::as_slice);
        let n = self.labels.n();
        let mut relabel = vec![0usize; n + 1];
        let mut m = 0;
        for j in 1..=n {
            if !singletons.contains(&j) && !singletons.contains(&self.labels.involution(j)) {
                m += 1;
                relabel[j] = m;
            }
        }
        let reference = m_matrix(m)?;
        let place = |ids: &[usize], labels: &[MultiIndex], size: usize| -> Option<Vec<usize>> {
            let mut slots = vec![usize::MAX; binomial(m, size) as usize];
            for &id in ids {
                let idx = &labels[id];
                let pairs: Vec<usize> = self
                    .labels
                    .full_pairs(idx)
                    .into_iter()
                    .map(|j| relabel[j])
                    .collect();
                if pairs.len() != size || pairs.contains(&0) {
                    return None;
                }
                let slot = lex_rank(&pairs, m);
                if slots[slot] != usize::MAX {
                    return None;
                }
                slots[slot] = id;
            }
            slots.iter().all(|&s| s != usize::MAX).then_some(slots)
        };
        let rows = place(row_ids, self.b.row_labels().expect("labeled"), (m - 2) / 2);
        let cols = place(col_ids, self.b.col_labels().expect("labeled"), m / 2);
        let (rows, cols, verified) = match (rows, cols) {
            (Some(r), Some(c)) => {
                let ok = self.b.submatrix(&r, &c) == reference;
                (r, c, ok)
            }
            _ => (row_ids.clone(), col_ids.to_vec(), false),
        };
        Ok(Block {
            singletons: singletons.to_vec(),
            m,
            rows,
            cols,
            verified,
        })
    }

    /// All blocks, verified in parallel, in class-key order.
    pub fn blocks(&self) -> Vec<Block> {
        let keys = self.class_keys();
        keys.par_iter()
            .map(|k| self.verify_block(k).expect("key comes from the row classes"))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub singletons: Vec<usize>,
    pub block_kind: usize,
    pub row_count: usize,
    pub col_count: usize,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankEntry {
    pub direct: usize,
    pub block_sum: usize,
    pub certificate: RankCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub item: String,
    pub published: u64,
    pub computed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub n: usize,
    pub parity: &'static str,
    pub classes: Vec<ClassSummary>,
    pub zero_column_count: usize,
    /// Number of `L_k` blocks, keyed by `k`.
    pub census: BTreeMap<usize, usize>,
    /// Number of rows of `B` that are `t`-planes, keyed by `t`.
    pub plane_census: BTreeMap<usize, usize>,
    /// Class sizes follow `q_count` and row/column totals reconcile.
    pub census_consistent: bool,
    pub columns_partitioned: bool,
    /// Keyed by characteristic.
    pub rank_table: BTreeMap<u64, RankEntry>,
    /// Rank of `L_k` per characteristic, keyed by `k` then characteristic.
    pub block_ranks: BTreeMap<usize, BTreeMap<u64, usize>>,
    pub corollary_identity_holds: bool,
}

impl DecompositionReport {
    pub fn all_verified(&self) -> bool {
        self.classes.iter().all(|c| c.verified)
    }

    pub fn direct_sum_ranks_agree(&self) -> bool {
        self.rank_table.values().all(|e| e.direct == e.block_sum)
    }

    /// Every internal consistency check.
    pub fn consistent(&self) -> bool {
        self.all_verified()
            && self.direct_sum_ranks_agree()
            && self.census_consistent
            && self.columns_partitioned
            && self.corollary_identity_holds
            && self.zero_column_count == 1 << self.n
    }
}

/// Classifies `B`, verifies every block and tabulates ranks over `fields`.
///
/// `seed` drives the primes of characteristic-0 multi-modular rank.
pub fn verify_theorem(
    labels: &SymplecticLabels,
    fields: &[FieldSpec],
    seed: u64,
) -> Result<DecompositionReport> {
    let n = labels.n();
    if n < 4 {
        return domain(format!("the decomposition report needs n >= 4, got {n}"));
    }
    let dec = Decomposer::new(*labels);
    let blocks = dec.blocks();
    let classes: Vec<ClassSummary> = blocks
        .iter()
        .map(|b| ClassSummary {
            singletons: b.singletons.clone(),
            block_kind: b.kind(),
            row_count: b.rows.len(),
            col_count: b.cols.len(),
            verified: b.verified,
        })
        .collect();
    let mut census = BTreeMap::new();
    for c in &classes {
        *census.entry(c.block_kind).or_insert(0) += 1;
    }

    let rows_total: usize = classes.iter().map(|c| c.row_count).sum();
    let cols_total: usize = classes.iter().map(|c| c.col_count).sum();
    let mut by_size: BTreeMap<usize, u64> = BTreeMap::new();
    for c in &classes {
        *by_size.entry(c.singletons.len()).or_insert(0) += 1;
    }
    let census_consistent = rows_total as u64 == binomial(2 * n, n - 2)
        && (cols_total + dec.zero_columns().len()) as u64 == binomial(2 * n, n)
        && by_size
            .iter()
            .all(|(&s, &count)| count == crate::indexing::q_count(s, labels))
        && (n % 2..=n - 2)
            .step_by(2)
            .all(|s| by_size.contains_key(&s));

    // Blocks of equal kind are all `M_m`, so their ranks are computed once per
    // distinct extracted matrix.
    let mut distinct: BTreeMap<usize, BinaryMatrix> = BTreeMap::new();
    for blk in &blocks {
        distinct.entry(blk.m).or_insert_with(|| blk.extract(dec.b()));
    }
    let all_equal_to_first = blocks
        .par_iter()
        .all(|blk| blk.extract(dec.b()) == distinct[&blk.m]);

    let mut block_ranks: BTreeMap<usize, BTreeMap<u64, usize>> = BTreeMap::new();
    for (&m, mat) in &distinct {
        let per_field = fields
            .par_iter()
            .map(|&f| (f.characteristic(), rank(mat, f)))
            .collect();
        block_ranks.insert((m + 2) / 2, per_field);
    }

    let mut rank_table = BTreeMap::new();
    for &f in fields {
        let certificate = rank_with_certificate(dec.b(), f, seed);
        let block_sum = if all_equal_to_first {
            census
                .iter()
                .map(|(k, count)| count * block_ranks[k][&f.characteristic()])
                .sum()
        } else {
            blocks.par_iter().map(|blk| rank(&blk.extract(dec.b()), f)).sum()
        };
        rank_table.insert(
            f.characteristic(),
            RankEntry {
                direct: certificate.rank,
                block_sum,
                certificate,
            },
        );
    }

    Ok(DecompositionReport {
        n,
        parity: if n % 2 == 0 { "even" } else { "odd" },
        classes,
        zero_column_count: dec.zero_columns().len(),
        census,
        plane_census: plane_census(labels),
        census_consistent,
        columns_partitioned: dec.columns_partitioned(),
        rank_table,
        block_ranks,
        corollary_identity_holds: corollary_counts(labels),
    })
}

/// `C(2n, n-2)` against the class-by-class row count built from `q_count`.
///
/// Even `n`: `C(n, (n-2)/2) + sum_l q(2l) C(n-2l, (n-2l-2)/2)`.
/// Odd `n`: `sum_l q(2l+1) C(n-2l-1, (n-2l-3)/2)`.
pub fn corollary_counts(labels: &SymplecticLabels) -> bool {
    let n = labels.n();
    if n < 2 {
        return false;
    }
    let total: u64 = (n % 2..=n - 2)
        .step_by(2)
        .map(|s| {
            let m = n - s;
            crate::indexing::admissible_tuples(s, labels).len() as u64
                * binomial(m, (m - 2) / 2)
        })
        .sum();
    total == binomial(2 * n, n - 2)
}

/// Outcome of "full rank of `B` forces full row rank of every `L_k`".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum PropositionCheck {
    /// `B` is not of full row rank; nothing to check.
    Vacuous { rank_b: usize },
    /// Per `k`: whether `L_k` has full row rank.
    Checked { per_block: BTreeMap<usize, bool> },
}

impl PropositionCheck {
    pub fn holds(&self) -> bool {
        match self {
            Self::Vacuous { .. } => true,
            Self::Checked { per_block } => per_block.values().all(|&ok| ok),
        }
    }
}

pub fn proposition_rank_check(report: &DecompositionReport, field: FieldSpec) -> Option<PropositionCheck> {
    let entry = report.rank_table.get(&field.characteristic())?;
    let n = report.n;
    if entry.direct as u64 != binomial(2 * n, n - 2) {
        return Some(PropositionCheck::Vacuous {
            rank_b: entry.direct,
        });
    }
    let per_block = report
        .block_ranks
        .iter()
        .map(|(&k, ranks)| {
            let m = 2 * k - 2;
            (k, ranks[&field.characteristic()] as u64 == binomial(m, (m - 2) / 2))
        })
        .collect();
    Some(PropositionCheck::Checked { per_block })
}

/// Census and rank values printed in the worked examples, for comparison.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PublishedValues {
    /// Number of `L_k` blocks, keyed by `k`.
    pub census: BTreeMap<usize, u64>,
    /// Number of `t`-planes among the rows of `B`, keyed by `t`.
    pub planes: BTreeMap<usize, u64>,
    /// Rank of `B`, keyed by characteristic.
    pub b_ranks: BTreeMap<u64, u64>,
    /// Rank of the largest block, keyed by characteristic, with its `k`.
    pub top_block: Option<(usize, BTreeMap<u64, u64>)>,
    /// Other stated counts: (description, value, recomputed value).
    pub counts: Vec<(String, u64, u64)>,
}

pub fn published_values(labels: &SymplecticLabels) -> PublishedValues {
    let ranks = |v: &[(u64, u64)]| v.iter().copied().collect::<BTreeMap<_, _>>();
    match labels.n() {
        4 => PublishedValues {
            planes: BTreeMap::from([(3, 4), (2, 24)]),
            ..Default::default()
        },
        5 => PublishedValues {
            census: BTreeMap::from([(3, 5), (2, 7)]),
            planes: BTreeMap::new(),
            b_ranks: ranks(&[(0, 27), (2, 22), (3, 27), (5, 27), (7, 27)]),
            top_block: Some((3, ranks(&[(0, 4), (2, 3), (3, 4), (5, 4), (7, 4)]))),
            counts: Vec::new(),
        },
        6 => PublishedValues {
            census: BTreeMap::from([(4, 1), (3, 60), (2, 240)]),
            planes: BTreeMap::from([(4, 15), (3, 240), (2, 240)]),
            b_ranks: ranks(&[(0, 495), (2, 430), (3, 494), (5, 495), (7, 495)]),
            top_block: Some((4, ranks(&[(0, 15), (2, 10), (3, 14), (5, 15), (7, 15)]))),
            counts: vec![(
                "pair-free 3-tuples in I(3,12)".to_string(),
                240,
                crate::indexing::admissible_tuples(3, labels).len() as u64,
            )],
        },
        7 => PublishedValues {
            census: BTreeMap::from([(4, 7), (3, 301), (2, 693)]),
            planes: BTreeMap::new(),
            b_ranks: ranks(&[(0, 2002), (2, 1666), (3, 1995), (5, 2002), (7, 2002)]),
            top_block: Some((4, ranks(&[(0, 15), (2, 10), (3, 14), (5, 15), (7, 15)]))),
            counts: Vec::new(),
        },
        _ => PublishedValues::default(),
    }
}

/// Published values that disagree with `report`; only quantities that were
/// actually computed are compared.
pub fn discrepancies(report: &DecompositionReport, published: &PublishedValues) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    let kinds: std::collections::BTreeSet<usize> =
        published.census.keys().chain(report.census.keys()).copied().collect();
    if !published.census.is_empty() {
        for k in kinds {
            let p = published.census.get(&k).copied().unwrap_or(0);
            let c = report.census.get(&k).copied().unwrap_or(0) as u64;
            if p != c {
                out.push(Discrepancy {
                    item: format!("number of L_{k} blocks"),
                    published: p,
                    computed: c,
                });
            }
        }
    }
    for (&t, &p) in &published.planes {
        let c = report.plane_census.get(&t).copied().unwrap_or(0) as u64;
        if p != c {
            out.push(Discrepancy {
                item: format!("number of {t}-planes"),
                published: p,
                computed: c,
            });
        }
    }
    for (&ch, &p) in &published.b_ranks {
        if let Some(e) = report.rank_table.get(&ch) {
            if e.direct as u64 != p {
                out.push(Discrepancy {
                    item: format!("rank B over {}", field_name(ch)),
                    published: p,
                    computed: e.direct as u64,
                });
            }
        }
    }
    if let Some((k, ranks)) = &published.top_block {
        for (&ch, &p) in ranks {
            if let Some(&c) = report.block_ranks.get(k).and_then(|r| r.get(&ch)) {
                if c as u64 != p {
                    out.push(Discrepancy {
                        item: format!("rank L_{k} over {}", field_name(ch)),
                        published: p,
                        computed: c as u64,
                    });
                }
            }
        }
    }
    for (item, p, c) in &published.counts {
        if p != c {
            out.push(Discrepancy {
                item: item.clone(),
                published: *p,
                computed: *c,
            });
        }
    }
    out
}

fn field_name(ch: u64) -> String {
    if ch == 0 {
        "Q".to_string()
    } else {
        format!("GF({ch})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> SymplecticLabels {
        SymplecticLabels::new(n).unwrap()
    }

    fn idx(e: &[usize], m: usize) -> MultiIndex {
        MultiIndex::new(e.to_vec(), m).unwrap()
    }

    fn fields() -> Vec<FieldSpec> {
        [0, 2, 3, 5, 7].map(|c| FieldSpec::new(c).unwrap()).to_vec()
    }

    #[test]
    fn column_examples() {
        assert_eq!(classify_column(&idx(&[1, 2, 3, 4, 5], 10), &labels(5)), ColumnClass::Zero);
        // {1,12}, {2,11} and {3,10} are all pairs for n = 6.
        assert_eq!(
            classify_column(&idx(&[1, 2, 3, 10, 11, 12], 12), &labels(6)),
            ColumnClass::Block(vec![])
        );
        assert_eq!(
            classify_column(&idx(&[1, 2, 7, 8], 8), &labels(4)),
            ColumnClass::Block(vec![])
        );
        assert_eq!(
            classify_column(&idx(&[2, 3, 6, 7, 9], 10), &labels(5)),
            ColumnClass::Block(vec![3, 6, 7])
        );
    }

    #[test]
    fn nonzero_entries_stay_inside_classes() {
        for n in 2..=6 {
            let l = labels(n);
            let b = build_b(&l);
            let (rl, cl) = (b.row_labels().unwrap(), b.col_labels().unwrap());
            for (i, j) in b.nonzeros() {
                assert_eq!(
                    ColumnClass::Block(decompose_row_class(&rl[i], &l).singletons),
                    classify_column(&cl[j], &l)
                );
            }
        }
    }

    #[test]
    fn zero_columns_counted() {
        for n in 2..=7 {
            let total = classify_columns(&labels(n))
                .values()
                .filter(|c| **c == ColumnClass::Zero)
                .count();
            assert_eq!(total, 1 << n);
        }
    }

    #[test]
    fn named_blocks() {
        let d6 = Decomposer::new(labels(6));
        let top = d6.verify_block(&[]).unwrap();
        assert!(top.verified);
        assert_eq!((top.rows.len(), top.cols.len(), top.kind()), (15, 20, 4));
        let b = d6.verify_block(&[1, 2]).unwrap();
        assert!(b.verified);
        assert_eq!((b.rows.len(), b.cols.len(), b.kind()), (4, 6, 3));
        assert!(d6.verify_block(&[1, 12]).is_err());

        let d5 = Decomposer::new(labels(5));
        let b = d5.verify_block(&[8]).unwrap();
        assert!(b.verified);
        assert_eq!((b.rows.len(), b.cols.len()), (4, 6));
    }

    #[test]
    fn block_witness_reproduces_m() {
        let d = Decomposer::new(labels(5));
        for blk in d.blocks() {
            assert_eq!(blk.extract(d.b()), m_matrix(blk.m).unwrap());
        }
    }

    #[test]
    fn n6_report() {
        let r = verify_theorem(&labels(6), &fields(), 0).unwrap();
        assert_eq!(r.census, BTreeMap::from([(4, 1), (3, 60), (2, 240)]));
        assert_eq!(r.zero_column_count, 64);
        assert!(r.consistent());
        let direct: Vec<usize> = r.rank_table.values().map(|e| e.direct).collect();
        assert_eq!(direct, vec![495, 430, 494, 495, 495]);
        let top: Vec<usize> = r.block_ranks[&4].values().copied().collect();
        assert_eq!(top, vec![15, 10, 14, 15, 15]);
        let d = discrepancies(&r, &published_values(&labels(6)));
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].published, d[0].computed), (240, 160));
    }

    #[test]
    fn n4_report() {
        let r = verify_theorem(&labels(4), &fields(), 0).unwrap();
        assert_eq!(r.census, BTreeMap::from([(3, 1), (2, 24)]));
        assert_eq!(r.plane_census, BTreeMap::from([(3, 4), (2, 24)]));
        assert!(r.consistent());
        for (&ch, e) in &r.rank_table {
            if ch != 2 {
                assert_eq!(e.direct, 28);
            }
        }
        assert!(discrepancies(&r, &published_values(&labels(4))).is_empty());
    }

    #[test]
    fn n5_report_flags_published_values() {
        let r = verify_theorem(&labels(5), &fields(), 0).unwrap();
        assert_eq!(r.census, BTreeMap::from([(3, 10), (2, 80)]));
        assert_eq!(r.rank_table[&0].direct, 120);
        assert!(r.consistent());
        let d = discrepancies(&r, &published_values(&labels(5)));
        assert!(d.iter().any(|x| x.item == "number of L_3 blocks" && x.published == 5));
        assert!(d.iter().any(|x| x.item == "rank B over Q" && x.computed == 120));
    }

    #[test]
    fn corollary_identity() {
        for n in 2..=9 {
            assert!(corollary_counts(&labels(n)), "n={n}");
        }
    }

    #[test]
    fn proposition_cases() {
        let r6 = verify_theorem(&labels(6), &fields(), 0).unwrap();
        let q = proposition_rank_check(&r6, FieldSpec::rationals()).unwrap();
        assert!(matches!(q, PropositionCheck::Checked { .. }));
        assert!(q.holds());
        let two = proposition_rank_check(&r6, FieldSpec::new(2).unwrap()).unwrap();
        assert_eq!(two, PropositionCheck::Vacuous { rank_b: 430 });

        let r4 = verify_theorem(&labels(4), &fields(), 0).unwrap();
        let three = proposition_rank_check(&r4, FieldSpec::new(3).unwrap()).unwrap();
        assert_eq!(
            three,
            PropositionCheck::Checked {
                per_block: BTreeMap::from([(2, true), (3, true)])
            }
        );
        assert_eq!(r4.block_ranks[&3][&3], 4);
    }

    #[test]
    fn small_n_rejected() {
        assert!(verify_theorem(&labels(3), &fields(), 0).is_err());
    }
}
