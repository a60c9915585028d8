//! Commands behind the `lagrangian` binary, kept in a library so tests can
//! drive them without spawning processes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use lagrangian_core::blocks::{a, l_matrix, m_matrix};
use lagrangian_core::contraction::{
    build_b, kernel_membership, kernel_violations, random_symmetric, sample_lagrangian,
    Convention, PluckerVector,
};
use lagrangian_core::decompose::{
    discrepancies, proposition_rank_check, published_values, verify_theorem, ClassSummary,
    DecompositionReport, Discrepancy, PropositionCheck, RankEntry,
};
use lagrangian_core::indexing::{MultiIndex, SymplecticLabels};
use lagrangian_core::linalg::{permutation_equivalent, rank, BinaryMatrix, FieldSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;
pub const MAX_DEFAULT_N: usize = 8;

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn to_sms(m: &BinaryMatrix) -> String {
    let mut out = format!("{} {} M\n", m.n_rows(), m.n_cols());
    for (i, j) in m.nonzeros() {
        writeln!(out, "{} {} 1", i + 1, j + 1).expect("writing to a String");
    }
    out.push_str("0 0 0\n");
    out
}

pub fn from_sms(text: &str) -> Result<BinaryMatrix> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| anyhow!("empty SMS input"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    let [r, c, "M"] = h[..] else {
        bail!("line 1: expected \"<rows> <cols> M\", got {header:?}");
    };
    let (rows, cols): (usize, usize) = (r.parse()?, c.parse()?);
    let mut m = BinaryMatrix::zeros(rows, cols);
    for (no, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        let [i, j, v] = f[..] else {
            bail!("line {}: expected three fields", no + 1);
        };
        let (i, j, v): (usize, usize, i64) = (i.parse()?, j.parse()?, v.parse()?);
        if (i, j, v) == (0, 0, 0) {
            return Ok(m);
        }
        if i == 0 || j == 0 || i > rows || j > cols {
            bail!("line {}: entry ({i},{j}) outside {rows}x{cols}", no + 1);
        }
        if v != 1 {
            bail!("line {}: only 0/1 matrices are supported, got {v}", no + 1);
        }
        m.set(i - 1, j - 1, true);
    }
    bail!("missing \"0 0 0\" terminator")
}

pub fn to_csv(m: &BinaryMatrix) -> String {
    let mut out = String::new();
    for row in m.to_dense() {
        let cells: Vec<String> = row.iter().map(u8::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    B { n: usize },
    L { k: usize },
    M { m: usize },
    A { k: usize, level: usize },
}

pub fn build_matrix(kind: Kind) -> Result<BinaryMatrix> {
    Ok(match kind {
        Kind::B { n } => build_b(&SymplecticLabels::new(n)?),
        Kind::L { k } => l_matrix(k)?,
        Kind::M { m } => m_matrix(m)?,
        Kind::A { k, level } => a(k, level)?,
    })
}

/// Rejects `n` outside `4..=8` unless `force` is set, in which case a
/// warning goes to stderr.
pub fn check_n(n: usize, force: bool) -> Result<()> {
    if n < 4 {
        bail!("n must be at least 4, got {n}");
    }
    if n > MAX_DEFAULT_N {
        if !force {
            bail!("n = {n} exceeds {MAX_DEFAULT_N}; pass --force-large to run anyway");
        }
        eprintln!("warning: n = {n} is beyond the tested range, expect long runtimes");
    }
    Ok(())
}

pub fn parse_fields(chars: &[u64]) -> Result<Vec<FieldSpec>> {
    let mut fields = Vec::new();
    for &c in chars {
        let f = FieldSpec::new(c)?;
        if !fields.contains(&f) {
            fields.push(f);
        }
    }
    Ok(fields)
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub k: usize,
    pub m: usize,
    pub rows: usize,
    pub cols: usize,
    pub literal_equal: bool,
    pub equivalent: bool,
}

pub fn lemma_check(k: usize) -> Result<LemmaCheck> {
    let m = 2 * k - 2;
    let (l, mm) = (l_matrix(k)?, m_matrix(m)?);
    let equivalent = match permutation_equivalent(&l, &mm) {
        Some(w) => l.permuted(&w.rows, &w.cols)? == mm,
        None => false,
    };
    Ok(LemmaCheck {
        k,
        m,
        rows: l.n_rows(),
        cols: l.n_cols(),
        literal_equal: l == mm,
        equivalent,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleSummary {
    pub samples: usize,
    pub unsigned_all_in_kernel: bool,
    pub signed_all_in_kernel: bool,
}

impl SampleSummary {
    /// Conventions that annihilated every sample.
    pub fn annihilating(&self) -> Vec<Convention> {
        let mut v = Vec::new();
        if self.unsigned_all_in_kernel {
            v.push(Convention::Unsigned);
        }
        if self.signed_all_in_kernel {
            v.push(Convention::Signed);
        }
        v
    }
}

/// Plücker vectors of `count` Lagrangians from seeded random symmetric matrices.
pub fn sample_kernel(n: usize, field: FieldSpec, count: usize, seed: u64) -> Result<SampleSummary> {
    let labels = SymplecticLabels::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32) ^ field.characteristic());
    let mut summary = SampleSummary {
        samples: count,
        unsigned_all_in_kernel: true,
        signed_all_in_kernel: true,
    };
    for _ in 0..count {
        let s = random_symmetric(n, field, &mut rng);
        let p = sample_lagrangian(&s, &labels, field)?;
        summary.unsigned_all_in_kernel &= kernel_membership(&p, Convention::Unsigned)?;
        summary.signed_all_in_kernel &= kernel_membership(&p, Convention::Signed)?;
    }
    Ok(summary)
}

#[derive(Clone, Debug, Serialize)]
pub struct RankRow {
    pub direct: usize,
    pub block_sum: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub n: usize,
    pub parity: &'static str,
    pub seed: u64,
    pub classes: Vec<ClassSummary>,
    pub zero_columns: usize,
    pub census: BTreeMap<usize, usize>,
    pub plane_census: BTreeMap<usize, usize>,
    pub paper_census: Option<BTreeMap<usize, u64>>,
    pub paper_census_match: Option<bool>,
    pub ranks: BTreeMap<u64, RankRow>,
    pub rank_certificates: BTreeMap<u64, RankEntry>,
    pub block_ranks: BTreeMap<usize, BTreeMap<u64, usize>>,
    pub corollary_identity: bool,
    pub proposition: BTreeMap<u64, PropositionCheck>,
    #[serde(rename = "lemma_Lk_eq_Mm")]
    pub lemma_lk_eq_mm: Vec<LemmaCheck>,
    pub kernel_samples: BTreeMap<u64, SampleSummary>,
    pub discrepancies: Vec<Discrepancy>,
    pub checks: BTreeMap<&'static str, bool>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }
}

pub fn verify(n: usize, fields: &[FieldSpec], seed: u64, samples: usize) -> Result<VerifyReport> {
    let labels = SymplecticLabels::new(n)?;
    let report: DecompositionReport = verify_theorem(&labels, fields, seed)?;
    let published = published_values(&labels);
    let (paper_census, paper_census_match) = if !published.census.is_empty() {
        let same = published.census.len() == report.census.len()
            && published
                .census
                .iter()
                .all(|(k, &v)| report.census.get(k).map(|&c| c as u64) == Some(v));
        (Some(published.census.clone()), Some(same))
    } else {
        (None, None)
    };
    let r = report.census.keys().max().copied().unwrap_or(2);
    let lemma = (2..=r).map(lemma_check).collect::<Result<Vec<_>>>()?;
    let mut kernel_samples = BTreeMap::new();
    for &f in fields {
        kernel_samples.insert(f.characteristic(), sample_kernel(n, f, samples, seed)?);
    }
    let proposition = fields
        .iter()
        .filter_map(|&f| proposition_rank_check(&report, f).map(|c| (f.characteristic(), c)))
        .collect::<BTreeMap<_, _>>();

    let mut checks = BTreeMap::new();
    checks.insert("blocks_verified", report.all_verified());
    checks.insert("direct_sum_ranks", report.direct_sum_ranks_agree());
    checks.insert("census_consistent", report.census_consistent);
    checks.insert("columns_partitioned", report.columns_partitioned);
    checks.insert("zero_columns", report.zero_column_count == 1 << n);
    checks.insert("corollary_identity", report.corollary_identity_holds);
    checks.insert("proposition", proposition.values().all(PropositionCheck::holds));
    checks.insert("lemma_Lk_eq_Mm", lemma.iter().all(|l| l.equivalent));
    checks.insert(
        "samples_in_kernel",
        kernel_samples.iter().all(|(&ch, s)| {
            if ch == 2 {
                s.unsigned_all_in_kernel
            } else {
                !s.annihilating().is_empty()
            }
        }),
    );

    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        n,
        parity: report.parity,
        seed,
        classes: report.classes.clone(),
        zero_columns: report.zero_column_count,
        census: report.census.clone(),
        plane_census: report.plane_census.clone(),
        paper_census,
        paper_census_match,
        ranks: report
            .rank_table
            .iter()
            .map(|(&c, e)| {
                (
                    c,
                    RankRow {
                        direct: e.direct,
                        block_sum: e.block_sum,
                    },
                )
            })
            .collect(),
        rank_certificates: report.rank_table.clone(),
        block_ranks: report.block_ranks.clone(),
        corollary_identity: report.corollary_identity_holds,
        proposition,
        lemma_lk_eq_mm: lemma,
        kernel_samples,
        discrepancies: discrepancies(&report, &published),
        checks,
    })
}

pub fn report_json(report: &VerifyReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

/// Ranks of `B` and `L_2..L_r` as CSV, plus mismatches against published values.
pub fn rank_table(n: usize, fields: &[FieldSpec], seed: u64) -> Result<(String, Vec<String>)> {
    let labels = SymplecticLabels::new(n)?;
    let b = build_b(&labels);
    let r = (n + 2) / 2;
    let mut rows: Vec<(String, Vec<usize>)> = Vec::new();
    rows.push((
        "B".to_string(),
        fields
            .iter()
            .map(|&f| lagrangian_core::linalg::rank_with_certificate(&b, f, seed).rank)
            .collect(),
    ));
    for k in 2..=r {
        let l = l_matrix(k)?;
        rows.push((format!("L_{k}"), fields.iter().map(|&f| rank(&l, f)).collect()));
    }
    let mut csv = String::from("matrix");
    for f in fields {
        write!(csv, ",{}", f.characteristic())?;
    }
    csv.push('\n');
    for (name, vals) in &rows {
        csv.push_str(name);
        for v in vals {
            write!(csv, ",{v}")?;
        }
        csv.push('\n');
    }

    let published = published_values(&labels);
    let mut notes = Vec::new();
    for (i, f) in fields.iter().enumerate() {
        let ch = f.characteristic();
        if let Some(&p) = published.b_ranks.get(&ch) {
            if p != rows[0].1[i] as u64 {
                notes.push(format!("rank B over {f}: published {p}, computed {}", rows[0].1[i]));
            }
        }
        if let Some((k, ranks)) = &published.top_block {
            if let (Some(&p), Some(row)) = (ranks.get(&ch), rows.get(k - 1)) {
                if p != row.1[i] as u64 {
                    notes.push(format!("rank L_{k} over {f}: published {p}, computed {}", row.1[i]));
                }
            }
        }
    }
    Ok((csv, notes))
}

/// Parses a sparse Plücker vector: lines `b_1 ... b_n value`, an optional
/// `field <p>` line (default characteristic 0) and `#` comments.
pub fn parse_point(n: usize, text: &str) -> Result<PluckerVector> {
    let labels = SymplecticLabels::new(n)?;
    let mut field = FieldSpec::rationals();
    let mut entries: Vec<(usize, MultiIndex, i128)> = Vec::new();
    let mut seen_entry = false;
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = no + 1;
        let f: Vec<&str> = line.split_whitespace().collect();
        if f[0] == "field" {
            if seen_entry || f.len() != 2 {
                bail!("line {lineno}: `field <p>` must come first and take one value");
            }
            let c: u64 = f[1]
                .parse()
                .with_context(|| format!("line {lineno}: bad characteristic {:?}", f[1]))?;
            field = FieldSpec::new(c).map_err(|e| anyhow!("line {lineno}: {e}"))?;
            continue;
        }
        seen_entry = true;
        if f.len() != n + 1 {
            bail!("line {lineno}: expected {n} indices and a value, got {} fields", f.len());
        }
        let idx = f[..n]
            .iter()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .with_context(|| format!("line {lineno}: malformed index"))?;
        let beta = MultiIndex::new(idx, 2 * n).map_err(|e| anyhow!("line {lineno}: {e}"))?;
        let value: i128 = f[n]
            .parse()
            .with_context(|| format!("line {lineno}: malformed value {:?}", f[n]))?;
        entries.push((lineno, beta, value));
    }
    let mut p = PluckerVector::zero(&labels, field);
    for (lineno, beta, value) in entries {
        if p.get(&beta) != 0 {
            bail!("line {lineno}: coordinate {beta} given twice");
        }
        p.set(beta, value)?;
    }
    Ok(p)
}

/// The text printed by `check-point` and whether the point is in the kernel.
pub fn check_point(n: usize, text: &str, convention: Convention) -> Result<(String, bool)> {
    let p = parse_point(n, text)?;
    let violations = kernel_violations(&p, convention)?;
    if violations.is_empty() {
        return Ok(("IN KERNEL\n".to_string(), true));
    }
    let mut out = String::new();
    for (alpha, v) in &violations {
        writeln!(out, "violation at {alpha}: {v}")?;
    }
    writeln!(out, "NOT IN KERNEL ({} violated rows)", violations.len())?;
    Ok((out, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sms_of_l2() {
        assert_eq!(to_sms(&m_matrix(2).unwrap()), "1 2 M\n1 1 1\n1 2 1\n0 0 0\n");
    }

    #[test]
    fn sms_rejects_garbage() {
        assert!(from_sms("").is_err());
        assert!(from_sms("2 2 M\n1 1 1\n").is_err());
        assert!(from_sms("2 2 M\n3 1 1\n0 0 0\n").is_err());
        assert!(from_sms("2 2 M\n1 1 2\n0 0 0\n").is_err());
    }

    #[test]
    fn csv_layout() {
        assert_eq!(to_csv(&BinaryMatrix::identity(2)), "1,0\n0,1\n");
    }

    #[test]
    fn n_guard() {
        assert!(check_n(3, true).is_err());
        assert!(check_n(9, false).is_err());
        assert!(check_n(6, false).is_ok());
    }

    #[test]
    fn point_parse_errors_carry_line_numbers() {
        let err = parse_point(2, "# x\n1 4 1\n1 x 1\n").unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
        let err = parse_point(2, "1 5 1\n").unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");
        let err = parse_point(2, "1 4 1\nfield 3\n").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn field_line_reduces_values() {
        let p = parse_point(2, "field 3\n1 4 1\n2 3 2\n").unwrap();
        assert_eq!(p.field().characteristic(), 3);
        assert!(kernel_membership(&p, Convention::Unsigned).unwrap());
    }
}
