//! The binary directed double-node-erasure code on a prime number of nodes.
//!
//! Constraints: `S↓_h` and `S↑_h` for `h < n-2`, `D↓_m` and `D↑_m` for all
//! `m`, `4n - 4` parity checks in total. Information occupies the
//! `(n-2) x (n-2)` block of edges among the first `n - 2` nodes.

use crate::error::{Error, Result};
use crate::gf2m::Gf;
use crate::gflinalg::ConstraintSystem;
use crate::graph::{Alphabet, DirectedGraph, Direction, Edge, EdgeSet, ErasedGraph};

use super::loops::{run_round_robin, Board, Layout, LoopState, SyndromeTables};
use super::peel::{directed_cells, peel};
use super::sets::{
    check_prime, diagonal_sets, diagonal_sets_prime, neighborhood_sets, neighborhood_sets_prime, orient_all, LoopId,
    LoopParams,
};

#[derive(Clone, Debug)]
pub struct Cg4Code {
    n: usize,
    down_s: Vec<EdgeSet>,
    down_d: Vec<EdgeSet>,
    up_s: Vec<EdgeSet>,
    up_d: Vec<EdgeSet>,
}

impl Cg4Code {
    pub fn new(n: usize) -> Result<Self> {
        check_prime(n)?;
        Ok(Cg4Code {
            n,
            down_s: orient_all(&neighborhood_sets(n)[..n - 2], Direction::Down),
            down_d: orient_all(&diagonal_sets(n), Direction::Down),
            up_s: orient_all(&neighborhood_sets_prime(n)[..n - 2], Direction::Up),
            up_d: orient_all(&diagonal_sets_prime(n), Direction::Up),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::Gf2
    }

    /// `(n - 2)^2`
    pub fn dimension(&self) -> usize {
        (self.n - 2) * (self.n - 2)
    }

    /// `4n - 4`
    pub fn redundancy(&self) -> usize {
        self.n * self.n - self.dimension()
    }

    /// `S↓_h`, `D↓_m`, `S↑_h`, `D↑_m`, in that order.
    pub fn parity_sets(&self) -> Vec<EdgeSet> {
        [&self.down_s, &self.down_d, &self.up_s, &self.up_d].into_iter().flatten().cloned().collect()
    }

    pub fn constraints(&self) -> ConstraintSystem {
        let mut cs = ConstraintSystem::new(self.alphabet().field(), self.n * self.n);
        for cells in directed_cells(self.n, &self.parity_sets()) {
            cs.push_parity(cells);
        }
        cs
    }

    pub fn is_redundancy(&self, e: Edge) -> bool {
        e.from >= self.n - 2 || e.to >= self.n - 2
    }

    pub fn encode(&self, info: &[Vec<Gf>]) -> Result<DirectedGraph> {
        let (n, k) = (self.n, self.n - 2);
        if info.len() != k || info.iter().any(|row| row.len() != k) {
            return Err(Error::Dimension(format!("information block must be {k}x{k}")));
        }
        let mut eg = ErasedGraph::unknown(n, self.alphabet());
        for (a, row) in info.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                eg.set(a, b, Some(v));
            }
        }
        let mut cells = eg.cells().to_vec();
        let out = peel(&mut cells, &directed_cells(n, &self.parity_sets()));
        if !out.stuck.is_empty() {
            return Err(Error::Invariant(format!("encoder stalled with {} redundancy edges left", out.stuck.len())));
        }
        ErasedGraph::from_cells(n, self.alphabet(), cells)?.into_complete()
    }

    /// Encodes `(n-2)^2` bits given row by row.
    pub fn encode_bits(&self, bits: &[bool]) -> Result<DirectedGraph> {
        let k = self.n - 2;
        if bits.len() != k * k {
            return Err(Error::Dimension(format!("expected {} information bits, got {}", k * k, bits.len())));
        }
        let info: Vec<Vec<Gf>> = bits.chunks(k).map(|r| r.iter().map(|&b| Gf(b as u32)).collect()).collect();
        self.encode(&info)
    }

    pub fn check(&self, g: &DirectedGraph) -> bool {
        g.n() == self.n
            && g.alphabet() == self.alphabet()
            && self.parity_sets().iter().all(|s| s.iter().fold(Gf::ZERO, |acc, &e| acc + g.label(e)).is_zero())
    }

    /// Decodes up to two failed nodes. Two failures among the first `n - 2`
    /// nodes go through the four-loop decoder; everything else is peeled.
    pub fn decode(&self, eg: &ErasedGraph, failed: &[usize]) -> Result<DirectedGraph> {
        let failed = self.validate(eg, failed)?;
        let g = match failed[..] {
            [i, j] if j < self.n - 2 => alg3(self, eg, i, j)?.0,
            _ => {
                let mut cells = eg.cells().to_vec();
                let out = peel(&mut cells, &directed_cells(self.n, &self.parity_sets()));
                if !out.stuck.is_empty() {
                    let n = self.n;
                    return Err(Error::NotPeelable(out.stuck.iter().map(|&c| (c / n, c % n)).collect()));
                }
                ErasedGraph::from_cells(self.n, self.alphabet(), cells)?.into_complete()?
            }
        };
        if !self.check(&g) {
            return Err(Error::NotCodeword("decoded graph violates a parity set".into()));
        }
        Ok(g)
    }

    fn validate(&self, eg: &ErasedGraph, failed: &[usize]) -> Result<Vec<usize>> {
        if eg.n() != self.n {
            return Err(Error::Dimension(format!("graph has n={}, code has n={}", eg.n(), self.n)));
        }
        if eg.alphabet() != self.alphabet() {
            return Err(Error::Params(format!("code is binary, graph alphabet is {}", eg.alphabet())));
        }
        let failed = crate::check_failed_set(self.n, failed, 2)?;
        for e in eg.unknown_edges() {
            if !failed.contains(&e.from) && !failed.contains(&e.to) {
                return Err(Error::ErasurePattern(format!("{e} is unknown but outside the failed neighborhoods")));
            }
        }
        Ok(failed)
    }

    /// Syndromes for failed nodes `i`, `j`: XOR of the known labels of
    /// each set.
    pub fn syndromes(&self, eg: &ErasedGraph, i: usize, j: usize) -> Result<DirectedSyndromes> {
        let failed = self.validate(eg, &[i, j])?;
        if eg.failed_nodes().as_deref() != Some(&failed[..]) {
            return Err(Error::ErasurePattern(format!(
                "unknown cells are not exactly the neighborhoods of v{i}, v{j}"
            )));
        }
        let sum = |sets: &[EdgeSet]| -> Vec<Gf> {
            sets.iter().map(|s| s.iter().filter_map(|&e| eg.cell(e)).fold(Gf::ZERO, |a, v| a + v)).collect()
        };
        Ok(DirectedSyndromes {
            down: SyndromeTables { neighborhood: sum(&self.down_s), diagonal: sum(&self.down_d) },
            up: SyndromeTables { neighborhood: sum(&self.up_s), diagonal: sum(&self.up_d) },
        })
    }
}

/// Lower-triangle (`S^↓`, `D^↓`) and upper-triangle (`S^↑`, `D^↑`) syndromes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedSyndromes {
    pub down: SyndromeTables,
    pub up: SyndromeTables,
}

/// What the four-loop decoder did, edge by edge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alg3Trace {
    /// Edges corrected by loops I, II, III, IV, in order.
    pub loops: [Vec<Edge>; 4],
    /// Edges still unknown when all four loops finished.
    pub leftovers: Vec<Edge>,
    /// `(v_j, v_i)` and `(v_i, v_j)`, read off the diagonal syndromes.
    pub post: Vec<Edge>,
    /// Remaining redundancy edges, in peeling order.
    pub peeled: Vec<Edge>,
    pub final_states: Vec<LoopState>,
}

impl Alg3Trace {
    pub fn corrected_by(&self, id: LoopId) -> &[Edge] {
        &self.loops[id as usize]
    }
}

fn alg3(code: &Cg4Code, eg: &ErasedGraph, i: usize, j: usize) -> Result<(DirectedGraph, Alg3Trace)> {
    let n = code.n;
    let params = LoopParams::new(n, i, j)?;
    let syn = code.syndromes(eg, i, j)?;
    let m = (i + j) % n;
    let (post_down, post_up) = (syn.down.diagonal[m], syn.up.diagonal[m]);
    let mut board = Board {
        n,
        layout: Layout::Directed,
        cells: eg.cells().to_vec(),
        down: syn.down,
        up: syn.up,
        self_loop_parity: false,
        corrected: Default::default(),
    };
    let final_states = run_round_robin(&params, &mut board, &LoopId::ALL)?;
    let leftovers: Vec<Edge> =
        (0..n * n).filter(|&k| board.cells[k].is_none()).map(|k| Edge::new(k / n, k % n)).collect();
    let post = vec![Edge::new(j, i), Edge::new(i, j)];
    board.correct(post[0], post_down)?;
    board.correct(post[1], post_up)?;
    let mut cells = board.cells;
    let out = peel(&mut cells, &directed_cells(n, &code.parity_sets()));
    if !out.stuck.is_empty() {
        return Err(Error::NotPeelable(out.stuck.iter().map(|&c| (c / n, c % n)).collect()));
    }
    let trace = Alg3Trace {
        loops: board.corrected,
        leftovers,
        post,
        peeled: out.order.iter().map(|&c| Edge::new(c / n, c % n)).collect(),
        final_states,
    };
    let g = ErasedGraph::from_cells(n, code.alphabet(), cells)?.into_complete()?;
    Ok((g, trace))
}

/// Four-loop decoder for failed nodes `i < j < n - 2`.
pub fn alg3_decode(eg: &ErasedGraph, i: usize, j: usize) -> Result<DirectedGraph> {
    Ok(alg3_decode_traced(eg, i, j)?.0)
}

pub fn alg3_decode_traced(eg: &ErasedGraph, i: usize, j: usize) -> Result<(DirectedGraph, Alg3Trace)> {
    let code = Cg4Code::new(eg.n())?;
    LoopParams::new(eg.n(), i, j)?;
    let (g, trace) = alg3(&code, eg, i, j)?;
    if !code.check(&g) {
        return Err(Error::NotCodeword("decoded graph violates a parity set".into()));
    }
    Ok((g, trace))
}

/// Recovers a codeword with at most two failed nodes.
pub fn cg4_decode(eg: &ErasedGraph, failed: &[usize]) -> Result<DirectedGraph> {
    Cg4Code::new(eg.n())?.decode(eg, failed)
}
