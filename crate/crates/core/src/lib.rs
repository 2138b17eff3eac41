//! Erasure codes over complete graphs.
//!
//! Information lives on the edges of a complete graph with self loops; a
//! failed node erases its whole neighborhood (one row plus one column of the
//! adjacency matrix). The crate provides:
//!
//! - [`c1`]: optimal `rho`-node-erasure codes over GF(q), `q >= n - 1`, built
//!   from a Reed-Solomon component code on rows and columns.
//! - [`c2`]: binary `rho`-node-erasure codes from rank-metric (Gabidulin)
//!   array codes, with cover-weight tooling.
//! - [`double`]: optimal binary double-node-erasure codes for prime `n`, for
//!   undirected and directed graphs, with their diagonal/neighborhood parity
//!   decoders.
//!
//! Every code also exposes its parity constraints as a
//! [`gflinalg::ConstraintSystem`], which serves as a generic decoding oracle.

pub mod c1;
pub mod c2;
pub mod double;
pub mod error;
pub mod gf2m;
pub mod gflinalg;
pub mod graph;
pub mod mds;

pub use error::{Error, Result};
pub use gf2m::{Field, Gf};
pub use graph::{Alphabet, DirectedGraph, Edge, ErasedGraph, ErasedUndirectedGraph, Pair, UndirectedGraph};

/// Lower bound on the redundancy of any `rho`-node-erasure-correcting code
/// on `n` nodes: `n^2 - (n - rho)^2`.
pub fn redundancy_bound(n: usize, rho: usize) -> usize {
    2 * n * rho - rho * rho
}

pub(crate) fn check_failed_set(n: usize, failed: &[usize], budget: usize) -> Result<Vec<usize>> {
    let mut set: Vec<usize> = failed.to_vec();
    set.sort_unstable();
    set.dedup();
    if let Some(&bad) = set.iter().find(|&&t| t >= n) {
        return Err(Error::NodeIndex { index: bad, n });
    }
    if set.len() > budget {
        return Err(Error::BeyondBudget { erased: set.len(), budget });
    }
    Ok(set)
}
