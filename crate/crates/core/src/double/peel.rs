//! Iterative erasure resolution over binary parity constraints.

use crate::error::{Error, Result};
use crate::gf2m::Gf;
use crate::graph::{
    tri_index, DirectedGraph, EdgeSet, ErasedGraph, ErasedUndirectedGraph, Pair, PairSet, UndirectedGraph,
};

/// Result of a peeling run over flat cells.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Peeled {
    /// Cells in the order they were resolved.
    pub order: Vec<usize>,
    /// Cells still unknown at the fixpoint.
    pub stuck: Vec<usize>,
}

/// Resolves any constraint with exactly one unknown cell until nothing
/// changes. Each constraint lists the cells whose labels XOR to zero.
pub fn peel(cells: &mut [Option<Gf>], constraints: &[Vec<usize>]) -> Peeled {
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
    let mut unknown = vec![0usize; constraints.len()];
    let mut sum = vec![Gf::ZERO; constraints.len()];
    for (k, c) in constraints.iter().enumerate() {
        for &cell in c {
            members[cell].push(k);
            match cells[cell] {
                Some(v) => sum[k] += v,
                None => unknown[k] += 1,
            }
        }
    }
    let mut queue: Vec<usize> = (0..constraints.len()).filter(|&k| unknown[k] == 1).collect();
    let mut order = Vec::new();
    while let Some(k) = queue.pop() {
        if unknown[k] != 1 {
            continue;
        }
        let Some(&cell) = constraints[k].iter().find(|&&c| cells[c].is_none()) else {
            continue;
        };
        let v = sum[k];
        cells[cell] = Some(v);
        order.push(cell);
        for &other in &members[cell] {
            unknown[other] -= 1;
            sum[other] += v;
            if unknown[other] == 1 {
                queue.push(other);
            }
        }
    }
    let stuck = (0..cells.len()).filter(|&c| cells[c].is_none()).collect();
    Peeled { order, stuck }
}

/// Flat cell lists (`from * n + to`) of directed parity sets.
pub fn directed_cells(n: usize, sets: &[EdgeSet]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.iter().map(|e| e.from * n + e.to).collect()).collect()
}

/// Flat cell lists (packed lower triangle) of undirected parity sets.
pub fn undirected_cells(sets: &[PairSet]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.iter().map(|p| tri_index(p.hi(), p.lo())).collect()).collect()
}

/// Pair stored at packed index `k`.
pub fn tri_pair(k: usize) -> Pair {
    let mut hi = 0;
    while (hi + 1) * (hi + 2) / 2 <= k {
        hi += 1;
    }
    Pair::new(hi, k - hi * (hi + 1) / 2)
}

pub fn peel_decode(eg: &ErasedGraph, constraints: &[EdgeSet]) -> Result<DirectedGraph> {
    let n = eg.n();
    let mut cells = eg.cells().to_vec();
    let out = peel(&mut cells, &directed_cells(n, constraints));
    if !out.stuck.is_empty() {
        return Err(Error::NotPeelable(out.stuck.iter().map(|&c| (c / n, c % n)).collect()));
    }
    ErasedGraph::from_cells(n, eg.alphabet(), cells)?.into_complete()
}

pub fn peel_decode_undirected(eg: &ErasedUndirectedGraph, constraints: &[PairSet]) -> Result<UndirectedGraph> {
    let mut cells = eg.cells().to_vec();
    let out = peel(&mut cells, &undirected_cells(constraints));
    if !out.stuck.is_empty() {
        return Err(Error::NotPeelable(out.stuck.iter().map(|&c| tri_pair(c)).map(|p| (p.hi(), p.lo())).collect()));
    }
    ErasedUndirectedGraph::from_cells(eg.n(), eg.alphabet(), cells)?.into_complete()
}
