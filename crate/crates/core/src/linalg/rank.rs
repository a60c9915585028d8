use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::primes::{inv_mod, mul_mod, random_prime_62};
use super::{BinaryMatrix, FieldSpec};

/// Seed of the generator that draws the primes for characteristic-0 rank.
pub const DEFAULT_PRIME_SEED: u64 = 0xC0FFEE;

/// Above this many columns characteristic-0 rank goes multi-modular.
pub const BAREISS_MAX_COLS: usize = 512;

const MIN_PRIMES: usize = 3;
const MAX_PRIMES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum RankMethod {
    Gf2,
    PrimeField {
        p: u64,
    },
    Bareiss,
    /// Rank is the maximum over the primes; `certified` means at least two
    /// primes reached that maximum.
    MultiModular {
        primes: Vec<u64>,
        ranks: Vec<usize>,
        certified: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub field: FieldSpec,
    #[serde(flatten)]
    pub method: RankMethod,
}

pub fn rank(m: &BinaryMatrix, field: FieldSpec) -> usize {
    rank_with_certificate(m, field, DEFAULT_PRIME_SEED).rank
}

pub fn rank_with_certificate(m: &BinaryMatrix, field: FieldSpec, seed: u64) -> RankCertificate {
    let (rank, method) = match field.characteristic() {
        2 => (gf2_rank(m), RankMethod::Gf2),
        0 if m.n_cols() <= BAREISS_MAX_COLS => (bareiss_rank(m), RankMethod::Bareiss),
        0 => multimodular_rank(m, seed),
        p => (gfp_rank(m, p), RankMethod::PrimeField { p }),
    };
    RankCertificate {
        rank,
        field,
        method,
    }
}

/// Rank over GF(2) by reducing each row against pivots keyed on their lowest set bit.
pub fn gf2_rank(m: &BinaryMatrix) -> usize {
    let w = m.words_per_row();
    let mut pivots: Vec<Option<Box<[u64]>>> = vec![None; m.n_cols()];
    let mut rank = 0;
    let mut row = vec![0u64; w];
    for i in 0..m.n_rows() {
        row.copy_from_slice(m.row_words(i));
        let mut k = 0;
        loop {
            while k < w && row[k] == 0 {
                k += 1;
            }
            if k == w {
                break;
            }
            let lead = k * 64 + row[k].trailing_zeros() as usize;
            match &pivots[lead] {
                Some(p) => {
                    for (x, y) in row[k..].iter_mut().zip(&p[k..]) {
                        *x ^= *y;
                    }
                }
                None => {
                    pivots[lead] = Some(row.clone().into_boxed_slice());
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

type SparseRow = Vec<(u32, u64)>;

/// `a - c * b` over GF(p), both sorted by column.
fn sub_scaled(a: &[(u32, u64)], c: u64, b: &[(u32, u64)], p: u64) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, (p - mul_mod(c, b[j].1, p)) % p));
            j += 1;
        } else {
            let v = (a[i].1 + p - mul_mod(c, b[j].1, p)) % p;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over GF(p) with sparse rows; works for any prime including 2.
pub fn gfp_rank(m: &BinaryMatrix, p: u64) -> usize {
    assert!(p >= 2, "modulus must be a prime");
    let one = 1 % p;
    let mut pivots: Vec<Option<SparseRow>> = vec![None; m.n_cols()];
    let mut rank = 0;
    for i in 0..m.n_rows() {
        let mut v: SparseRow = m.row_support(i).map(|j| (j as u32, one)).collect();
        while let Some(&(lead, c)) = v.first() {
            match &pivots[lead as usize] {
                Some(piv) => v = sub_scaled(&v, c, piv, p),
                None => {
                    let inv = inv_mod(c, p);
                    for e in v.iter_mut() {
                        e.1 = mul_mod(e.1, inv, p);
                    }
                    pivots[lead as usize] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Exact rank over the rationals by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(m: &BinaryMatrix) -> usize {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..cols).map(|j| BigInt::from(m.get(i, j) as u8)).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                if factor.is_zero() {
                    if !row[j].is_zero() {
                        row[j] = &pivot * &row[j] / &prev;
                    }
                } else if !(row[j].is_zero() && pivot_row[j].is_zero()) {
                    row[j] = (&pivot * &row[j] - &factor * &pivot_row[j]) / &prev;
                }
            }
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Characteristic-0 rank as the maximum of ranks modulo seeded random 62-bit primes.
///
/// Rank modulo any prime is a lower bound for the rational rank of an
/// integer matrix, so the maximum is the best available lower bound; it is
/// reported as certified once two primes agree on it.
pub fn multimodular_rank(m: &BinaryMatrix, seed: u64) -> (usize, RankMethod) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut primes: Vec<u64> = (0..MIN_PRIMES).map(|_| random_prime_62(&mut rng)).collect();
    let mut ranks: Vec<usize> = primes.par_iter().map(|&p| gfp_rank(m, p)).collect();
    loop {
        let best = *ranks.iter().max().expect("at least one prime");
        let agreeing = ranks.iter().filter(|&&r| r == best).count();
        if agreeing >= 2 || primes.len() >= MAX_PRIMES {
            return (
                best,
                RankMethod::MultiModular {
                    primes,
                    ranks,
                    certified: agreeing >= 2,
                },
            );
        }
        let p = random_prime_62(&mut rng);
        primes.push(p);
        ranks.push(gfp_rank(m, p));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Dense Gauss-Jordan over GF(p) with plain u64 entries.
    fn dense_rank_mod(rows: &[Vec<u8>], p: u64) -> usize {
        let mut a: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x as u64 % p).collect())
            .collect();
        let cols = a.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, piv);
            let inv = inv_mod(a[r][c], p);
            for i in 0..a.len() {
                if i != r && a[i][c] != 0 {
                    let f = mul_mod(a[i][c], inv, p);
                    for j in 0..cols {
                        let sub = mul_mod(f, a[r][j], p);
                        a[i][j] = (a[i][j] + p - sub) % p;
                    }
                }
            }
            r += 1;
        }
        r
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<u8>>> {
        (1usize..12, 1usize..80).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(0u8..2, c), r)
        })
    }

    #[test]
    fn identity_rank() {
        for k in [1, 5, 70] {
            let i = BinaryMatrix::identity(k);
            for c in [0, 2, 3, 7] {
                assert_eq!(rank(&i, FieldSpec::new(c).unwrap()), k);
            }
        }
    }

    #[test]
    fn characteristic_matters() {
        // Triangle incidence: rank 3 over Q, 2 over GF(2).
        let m = BinaryMatrix::from_rows(&[[1, 1, 0], [0, 1, 1], [1, 0, 1]]).unwrap();
        assert_eq!(rank(&m, FieldSpec::rationals()), 3);
        assert_eq!(rank(&m, FieldSpec::new(2).unwrap()), 2);
        assert_eq!(rank(&m, FieldSpec::new(3).unwrap()), 3);
        assert_eq!(multimodular_rank(&m, 7).0, 3);
    }

    #[test]
    fn multimodular_certifies() {
        let m = BinaryMatrix::identity(600);
        let cert = rank_with_certificate(&m, FieldSpec::rationals(), DEFAULT_PRIME_SEED);
        assert_eq!(cert.rank, 600);
        match cert.method {
            RankMethod::MultiModular {
                primes, certified, ..
            } => {
                assert!(certified);
                assert_eq!(primes.len(), 3);
            }
            other => panic!("unexpected method {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn gf2_agrees_with_generic_p2(rows in arb_matrix()) {
            let m = BinaryMatrix::from_rows(&rows).unwrap();
            prop_assert_eq!(gf2_rank(&m), gfp_rank(&m, 2));
            prop_assert_eq!(gf2_rank(&m), dense_rank_mod(&rows, 2));
        }

        #[test]
        fn sparse_gfp_matches_dense(rows in arb_matrix(), p in prop::sample::select(vec![3u64, 5, 7, 2_305_843_009_213_693_951])) {
            let m = BinaryMatrix::from_rows(&rows).unwrap();
            prop_assert_eq!(gfp_rank(&m, p), dense_rank_mod(&rows, p));
        }

        #[test]
        fn rational_rank_bounds(rows in arb_matrix()) {
            let m = BinaryMatrix::from_rows(&rows).unwrap();
            let q = bareiss_rank(&m);
            prop_assert!(q <= m.n_rows().min(m.n_cols()));
            prop_assert_eq!(q, multimodular_rank(&m, 11).0);
            for p in [2u64, 3, 5] {
                prop_assert!(gfp_rank(&m, p) <= q);
            }
        }
    }
}
