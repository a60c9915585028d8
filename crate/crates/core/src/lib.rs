//! Exact constructions around the linear sections that cut the
//! Lagrangian-Grassmannian `L(n,2n)` out of `G(n,2n)` in Plücker coordinates.
//!
//! * [`indexing`]: multi-indices, the symplectic pairing `i <-> 2n+1-i`,
//!   pair-free tuples.
//! * [`linalg`]: bit-packed 0/1 matrices, exact rank over `GF(p)` and `Q`,
//!   block-diagonal assembly, permutation equivalence.
//! * [`contraction`]: the kernel-condition matrix `B`, its linear forms and
//!   Plücker vectors of Lagrangian subspaces.
//! * [`blocks`]: the recursive block matrices `A_k^l`, `L_k`, triangles and
//!   the subset-inclusion matrices `M_m`.
//! * [`decompose`]: classification of `B` into `L_k` blocks and the
//!   verification report.

pub mod blocks;
pub mod contraction;
pub mod decompose;
pub mod error;
pub mod indexing;
pub mod linalg;

pub use error::{Error, Result};
