//! Binary undirected double-node-erasure codes on a prime number of nodes.
//!
//! `Cu1` checks `S_h` (`h < n-1`) and `D_m` and is decoded on the lower
//! triangle; `Cu2` checks `S'_h` and `D'_m` and is decoded on the upper
//! triangle. Both have `2n - 1` constraints and store information on the
//! pairs among the first `n - 2` nodes.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2m::Gf;
use crate::gflinalg::ConstraintSystem;
use crate::graph::{tri_index, Alphabet, Direction, Edge, ErasedUndirectedGraph, Pair, PairSet, UndirectedGraph};

use super::loops::{run_sequential, Board, Layout, SyndromeTables};
use super::peel::{peel, tri_pair, undirected_cells};
use super::sets::{
    check_prime, diagonal_sets, diagonal_sets_prime, neighborhood_sets, neighborhood_sets_prime, LoopId, LoopParams,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UndirectedVariant {
    Cu1,
    Cu2,
}

impl fmt::Display for UndirectedVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UndirectedVariant::Cu1 => "cu1",
            UndirectedVariant::Cu2 => "cu2",
        })
    }
}

#[derive(Clone, Debug)]
pub struct UndirectedCode {
    n: usize,
    variant: UndirectedVariant,
    neighborhood: Vec<PairSet>,
    diagonal: Vec<PairSet>,
}

impl UndirectedCode {
    pub fn new(n: usize, variant: UndirectedVariant) -> Result<Self> {
        check_prime(n)?;
        let (neighborhood, diagonal) = match variant {
            UndirectedVariant::Cu1 => (neighborhood_sets(n), diagonal_sets(n)),
            UndirectedVariant::Cu2 => (neighborhood_sets_prime(n), diagonal_sets_prime(n)),
        };
        Ok(UndirectedCode { n, variant, neighborhood, diagonal })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> UndirectedVariant {
        self.variant
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::Gf2
    }

    pub fn num_cells(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    /// `(n - 2)(n - 1) / 2`
    pub fn dimension(&self) -> usize {
        (self.n - 2) * (self.n - 1) / 2
    }

    /// `2n - 1`
    pub fn redundancy(&self) -> usize {
        self.num_cells() - self.dimension()
    }

    /// Neighborhood sets, then diagonal sets.
    pub fn parity_sets(&self) -> Vec<PairSet> {
        self.neighborhood.iter().chain(&self.diagonal).cloned().collect()
    }

    /// Constraints over the packed lower triangle (see [`tri_index`]).
    pub fn constraints(&self) -> ConstraintSystem {
        let mut cs = ConstraintSystem::new(self.alphabet().field(), self.num_cells());
        for cells in undirected_cells(&self.parity_sets()) {
            cs.push_parity(cells);
        }
        cs
    }

    /// Encodes a lower triangle of information: row `a < n-2` holds the
    /// labels of `<v_a, v_b>` for `b <= a`.
    pub fn encode(&self, info: &[Vec<Gf>]) -> Result<UndirectedGraph> {
        let k = self.n - 2;
        if info.len() != k || info.iter().enumerate().any(|(a, row)| row.len() != a + 1) {
            return Err(Error::Dimension(format!("information must be a triangle of {k} rows")));
        }
        let mut cells = vec![None; self.num_cells()];
        for (a, row) in info.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                cells[tri_index(a, b)] = Some(v);
            }
        }
        ErasedUndirectedGraph::from_cells(self.n, self.alphabet(), cells.clone())?;
        let out = peel(&mut cells, &undirected_cells(&self.parity_sets()));
        if !out.stuck.is_empty() {
            return Err(Error::Invariant(format!("encoder stalled with {} redundancy pairs left", out.stuck.len())));
        }
        ErasedUndirectedGraph::from_cells(self.n, self.alphabet(), cells)?.into_complete()
    }

    pub fn encode_bits(&self, bits: &[bool]) -> Result<UndirectedGraph> {
        if bits.len() != self.dimension() {
            return Err(Error::Dimension(format!(
                "expected {} information bits, got {}",
                self.dimension(),
                bits.len()
            )));
        }
        let mut it = bits.iter();
        let info: Vec<Vec<Gf>> =
            (0..self.n - 2).map(|a| it.by_ref().take(a + 1).map(|&b| Gf(b as u32)).collect()).collect();
        self.encode(&info)
    }

    pub fn check(&self, g: &UndirectedGraph) -> bool {
        g.n() == self.n
            && g.alphabet() == self.alphabet()
            && self.parity_sets().iter().all(|s| s.iter().fold(Gf::ZERO, |acc, &p| acc + g.label(p)).is_zero())
    }

    fn validate(&self, eg: &ErasedUndirectedGraph, failed: &[usize]) -> Result<Vec<usize>> {
        if eg.n() != self.n {
            return Err(Error::Dimension(format!("graph has n={}, code has n={}", eg.n(), self.n)));
        }
        if eg.alphabet() != self.alphabet() {
            return Err(Error::Params(format!("code is binary, graph alphabet is {}", eg.alphabet())));
        }
        let failed = crate::check_failed_set(self.n, failed, 2)?;
        if let Some(p) = eg.unknown_pairs().into_iter().find(|p| !failed.iter().any(|&t| p.contains(t))) {
            return Err(Error::ErasurePattern(format!("{p} is unknown but outside the failed neighborhoods")));
        }
        Ok(failed)
    }

    /// `S^_h` (`h < n-1`) and `D^_m`: XOR of the known labels of each set.
    pub fn syndromes(&self, eg: &ErasedUndirectedGraph, i: usize, j: usize) -> Result<SyndromeTables> {
        let failed = self.validate(eg, &[i, j])?;
        if eg.failed_nodes().as_deref() != Some(&failed[..]) {
            return Err(Error::ErasurePattern(format!(
                "unknown cells are not exactly the neighborhoods of v{i}, v{j}"
            )));
        }
        let sum = |sets: &[PairSet]| -> Vec<Gf> {
            sets.iter().map(|s| s.iter().filter_map(|&p| eg.cell(p)).fold(Gf::ZERO, |a, v| a + v)).collect()
        };
        Ok(SyndromeTables { neighborhood: sum(&self.neighborhood), diagonal: sum(&self.diagonal) })
    }

    /// Decodes up to two failed nodes: the two-loop decoder when both lie
    /// among the first `n - 2` nodes, peeling otherwise.
    pub fn decode(&self, eg: &ErasedUndirectedGraph, failed: &[usize]) -> Result<UndirectedGraph> {
        let failed = self.validate(eg, failed)?;
        let g = match failed[..] {
            [i, j] if j < self.n - 2 => self.two_loop(eg, i, j)?.0,
            _ => self.finish(eg.cells().to_vec())?.0,
        };
        if !self.check(&g) {
            return Err(Error::NotCodeword("decoded graph violates a parity set".into()));
        }
        Ok(g)
    }

    fn finish(&self, mut cells: Vec<Option<Gf>>) -> Result<(UndirectedGraph, Vec<Pair>)> {
        let out = peel(&mut cells, &undirected_cells(&self.parity_sets()));
        if !out.stuck.is_empty() {
            return Err(Error::NotPeelable(out.stuck.iter().map(|&c| tri_pair(c)).map(|p| (p.hi(), p.lo())).collect()));
        }
        let g = ErasedUndirectedGraph::from_cells(self.n, self.alphabet(), cells)?.into_complete()?;
        Ok((g, out.order.into_iter().map(tri_pair).collect()))
    }

    fn two_loop(&self, eg: &ErasedUndirectedGraph, i: usize, j: usize) -> Result<(UndirectedGraph, TwoLoopTrace)> {
        let n = self.n;
        let params = LoopParams::new(n, i, j)?;
        let syn = self.syndromes(eg, i, j)?;
        let post = syn.diagonal[(i + j) % n];
        let (ids, dir) = match self.variant {
            UndirectedVariant::Cu1 => ([LoopId::I, LoopId::II], Direction::Down),
            UndirectedVariant::Cu2 => ([LoopId::III, LoopId::IV], Direction::Up),
        };
        let (down, up) = match dir {
            Direction::Down => (syn, SyndromeTables::default()),
            Direction::Up => (SyndromeTables::default(), syn),
        };
        let mut board = Board {
            n,
            layout: Layout::Undirected,
            cells: eg.cells().to_vec(),
            down,
            up,
            self_loop_parity: true,
            corrected: Default::default(),
        };
        run_sequential(&params, &mut board, &ids)?;
        let leftovers: Vec<Pair> = (0..board.cells.len()).filter(|&c| board.cells[c].is_none()).map(tri_pair).collect();
        board.correct(Edge::new(j, i), post)?;
        let [a, b, c, d] = board.corrected;
        let loops = match self.variant {
            UndirectedVariant::Cu1 => [a, b],
            UndirectedVariant::Cu2 => [c, d],
        };
        let (g, peeled) = self.finish(board.cells)?;
        Ok((g, TwoLoopTrace { loops, leftovers, peeled }))
    }

    /// Two-loop decoder for failed nodes `i < j < n - 2`, with its trace.
    pub fn decode_traced(
        &self,
        eg: &ErasedUndirectedGraph,
        i: usize,
        j: usize,
    ) -> Result<(UndirectedGraph, TwoLoopTrace)> {
        let (g, trace) = self.two_loop(eg, i, j)?;
        if !self.check(&g) {
            return Err(Error::NotCodeword("decoded graph violates a parity set".into()));
        }
        Ok((g, trace))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoLoopTrace {
    /// Cells corrected by the first and second loop, oriented into the
    /// triangle the decoder works on.
    pub loops: [Vec<Edge>; 2],
    pub leftovers: Vec<Pair>,
    pub peeled: Vec<Pair>,
}

/// Lower-triangle decoder for `Cu1`, failed nodes `i < j < n - 2`.
pub fn alg1_decode(eg: &ErasedUndirectedGraph, i: usize, j: usize) -> Result<UndirectedGraph> {
    Ok(UndirectedCode::new(eg.n(), UndirectedVariant::Cu1)?.decode_traced(eg, i, j)?.0)
}

/// Upper-triangle decoder for `Cu2`, failed nodes `i < j < n - 2`.
pub fn alg2_decode(eg: &ErasedUndirectedGraph, i: usize, j: usize) -> Result<UndirectedGraph> {
    Ok(UndirectedCode::new(eg.n(), UndirectedVariant::Cu2)?.decode_traced(eg, i, j)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const VARIANTS: [UndirectedVariant; 2] = [UndirectedVariant::Cu1, UndirectedVariant::Cu2];

    fn random_codeword(code: &UndirectedCode, rng: &mut ChaCha8Rng) -> UndirectedGraph {
        let bits: Vec<bool> = (0..code.dimension()).map(|_| rng.gen()).collect();
        code.encode_bits(&bits).unwrap()
    }

    #[test]
    fn counts_and_rank() {
        for n in [5, 7, 11] {
            for v in VARIANTS {
                let code = UndirectedCode::new(n, v).unwrap();
                let cs = code.constraints();
                assert_eq!(cs.len(), 2 * n - 1);
                assert_eq!(cs.rank(), 2 * n - 1);
                assert_eq!(code.redundancy(), 2 * n - 1);
            }
        }
        assert_eq!(UndirectedCode::new(5, UndirectedVariant::Cu1).unwrap().redundancy(), 9);
    }

    #[test]
    fn zero_info_and_systematic() {
        let code = UndirectedCode::new(7, UndirectedVariant::Cu1).unwrap();
        let zero: Vec<Vec<Gf>> = (0..5).map(|a| vec![Gf::ZERO; a + 1]).collect();
        assert_eq!(code.encode(&zero).unwrap(), UndirectedGraph::zeros(7, Alphabet::Gf2));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let info: Vec<Vec<Gf>> = (0..5).map(|a| (0..=a).map(|_| Gf(rng.gen_range(0..2))).collect()).collect();
        let g = code.encode(&info).unwrap();
        assert!(code.check(&g));
        for (a, row) in info.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                assert_eq!(g.get(a, b), v);
            }
        }
        assert!(code.encode(&zero[..4]).is_err());
    }

    #[test]
    fn all_failures_match_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for n in [5, 7, 11] {
            for v in VARIANTS {
                let code = UndirectedCode::new(n, v).unwrap();
                let cs = code.constraints();
                for _ in 0..3 {
                    let g = random_codeword(&code, &mut rng);
                    for i in 0..n {
                        for j in i..n {
                            let f = if i == j { vec![i] } else { vec![i, j] };
                            let eg = g.erase_nodes(&f).unwrap();
                            let out = code.decode(&eg, &f).unwrap();
                            assert_eq!(out, g, "{v} n={n} failed={f:?}");
                            assert_eq!(out.labels(), &cs.solve_erasures(eg.cells()).unwrap()[..]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn loops_do_the_bulk_of_the_work() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for v in VARIANTS {
            let code = UndirectedCode::new(11, v).unwrap();
            let g = random_codeword(&code, &mut rng);
            let (out, tr) = code.decode_traced(&g.erase_nodes(&[3, 5]).unwrap(), 3, 5).unwrap();
            assert_eq!(out, g);
            let by_loops = tr.loops[0].len() + tr.loops[1].len();
            // 2n - 1 erased pairs: the loops, <v_5,v_3>, then peeling
            assert_eq!(by_loops + 1 + tr.peeled.len(), 2 * 11 - 1);
            assert!(tr.leftovers.contains(&Pair::new(5, 3)));
        }
    }

    #[test]
    fn public_entry_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let c1 = UndirectedCode::new(7, UndirectedVariant::Cu1).unwrap();
        let g = random_codeword(&c1, &mut rng);
        assert_eq!(alg1_decode(&g.erase_nodes(&[0, 4]).unwrap(), 0, 4).unwrap(), g);
        let c2 = UndirectedCode::new(7, UndirectedVariant::Cu2).unwrap();
        let g = random_codeword(&c2, &mut rng);
        assert_eq!(alg2_decode(&g.erase_nodes(&[1, 2]).unwrap(), 1, 2).unwrap(), g);
        assert!(alg2_decode(&g.erase_nodes(&[1, 5]).unwrap(), 1, 5).is_err());
        assert!(alg1_decode(&g.erase_nodes(&[1, 2]).unwrap(), 2, 1).is_err());
    }
}
