//! Exact row/column permutation equivalence of 0/1 matrices.
//!
//! Both matrices are viewed as bipartite graphs (rows on one side, columns
//! on the other) and colored jointly, so color ids mean the same thing on
//! both sides. Colors are refined by neighbor-color multisets until stable;
//! the search then individualizes one vertex of `A` against each candidate
//! of `B` in the same cell and recurses. A leaf with all cells singleton is
//! a candidate bijection and is checked edge by edge, so a returned witness
//! is always genuine and `None` means no witness exists.

use super::{BinaryMatrix, Permutation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    /// Row `i` of `A` is row `rows.apply(i)` of `B`.
    pub rows: Permutation,
    /// Column `j` of `A` is column `cols.apply(j)` of `B`.
    pub cols: Permutation,
}

impl Equivalence {
    pub fn identity(n_rows: usize, n_cols: usize) -> Self {
        Self {
            rows: Permutation::identity(n_rows),
            cols: Permutation::identity(n_cols),
        }
    }

    /// The witness for `B ~ A`.
    pub fn inverse(&self) -> Self {
        Self {
            rows: self.rows.inverse(),
            cols: self.cols.inverse(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows.is_identity() && self.cols.is_identity()
    }
}

/// Finds permutations taking `a` to `b`, or `None` if they are not equivalent.
pub fn permutation_equivalent(a: &BinaryMatrix, b: &BinaryMatrix) -> Option<Equivalence> {
    if a.shape() != b.shape() || a.nnz() != b.nnz() {
        return None;
    }
    if a == b {
        return Some(Equivalence::identity(a.n_rows(), a.n_cols()));
    }
    let graph = JointGraph::new(a, b);
    let initial: Vec<u32> = (0..2 * graph.side)
        .map(|v| u32::from(v % graph.side >= graph.rows))
        .collect();
    let colors = graph.refine(initial)?;
    graph.search(colors)
}

struct JointGraph {
    rows: usize,
    side: usize,
    /// Vertices `0..side` belong to `A`, `side..2*side` to `B`.
    adj: Vec<Vec<u32>>,
}

impl JointGraph {
    fn new(a: &BinaryMatrix, b: &BinaryMatrix) -> Self {
        let rows = a.n_rows();
        let side = rows + a.n_cols();
        let mut adj = vec![Vec::new(); 2 * side];
        for (offset, m) in [(0, a), (side, b)] {
            for (i, j) in m.nonzeros() {
                let (r, c) = (offset + i, offset + rows + j);
                adj[r].push(c as u32);
                adj[c].push(r as u32);
            }
        }
        Self { rows, side, adj }
    }

    /// Refines to a stable coloring; `None` if the two sides stop matching.
    fn refine(&self, mut colors: Vec<u32>) -> Option<Vec<u32>> {
        let total = colors.len();
        let mut n_colors = count_distinct(&colors);
        loop {
            let sigs: Vec<(u32, Vec<u32>)> = (0..total)
                .map(|v| {
                    let mut nb: Vec<u32> = self.adj[v].iter().map(|&u| colors[u as usize]).collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let mut order: Vec<usize> = (0..total).collect();
            order.sort_by(|&x, &y| sigs[x].cmp(&sigs[y]));
            let mut next = vec![0u32; total];
            let mut id = 0u32;
            let mut balance = 0i64;
            for (k, &v) in order.iter().enumerate() {
                if k > 0 && sigs[v] != sigs[order[k - 1]] {
                    if balance != 0 {
                        return None;
                    }
                    id += 1;
                }
                balance += if v < self.side { 1 } else { -1 };
                next[v] = id;
            }
            if balance != 0 {
                return None;
            }
            let refined = id as usize + 1;
            colors = next;
            if refined == n_colors {
                return Some(colors);
            }
            n_colors = refined;
        }
    }

    fn search(&self, colors: Vec<u32>) -> Option<Equivalence> {
        let n_colors = count_distinct(&colors);
        let mut cell_size = vec![0usize; n_colors];
        for &c in &colors[..self.side] {
            cell_size[c as usize] += 1;
        }
        let target = (0..n_colors)
            .filter(|&c| cell_size[c] > 1)
            .min_by_key(|&c| (cell_size[c], c));
        let Some(target) = target else {
            return self.leaf(&colors);
        };
        let v = (0..self.side).find(|&v| colors[v] as usize == target)?;
        let fresh = n_colors as u32;
        for w in (self.side..2 * self.side).filter(|&w| colors[w] as usize == target) {
            let mut trial = colors.clone();
            trial[v] = fresh;
            trial[w] = fresh;
            if let Some(refined) = self.refine(trial) {
                if let Some(found) = self.search(refined) {
                    return Some(found);
                }
            }
        }
        None
    }

    fn leaf(&self, colors: &[u32]) -> Option<Equivalence> {
        let mut owner = vec![usize::MAX; self.side];
        for w in self.side..2 * self.side {
            owner[colors[w] as usize] = w - self.side;
        }
        let map: Vec<usize> = (0..self.side).map(|v| owner[colors[v] as usize]).collect();
        // Edge counts agree, so preserving every A-edge makes it an isomorphism.
        for v in 0..self.rows {
            for &u in &self.adj[v] {
                let (bv, bu) = (self.side + map[v], self.side + map[u as usize]);
                if !self.adj[bv].contains(&(bu as u32)) {
                    return None;
                }
            }
        }
        let rows = Permutation::new(map[..self.rows].to_vec()).ok()?;
        let cols = Permutation::new(map[self.rows..].iter().map(|&c| c - self.rows).collect()).ok()?;
        Some(Equivalence { rows, cols })
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m as usize + 1)
}
