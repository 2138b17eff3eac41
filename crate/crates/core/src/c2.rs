//! Binary `rho`-node-erasure codes from optimal crisscross array codes.
//!
//! The array code is realized as a Gabidulin code: an `n x n` binary matrix
//! `M` is read column by column as a vector `(c_0, .., c_{n-1})` over
//! GF(2^n) (bit `r` of `c_j` is `M[r][j]`), and must satisfy
//! `sum_j g_j^(2^i) c_j = 0` for `i < 2 rho`, with `g_j = x^j`. Every nonzero
//! codeword has matrix rank at least `2 rho + 1`, hence cover weight at least
//! `2 rho + 1`, so `rho` failed nodes (`rho` rows plus `rho` columns) are
//! always recoverable.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gf2m::{Field, Gf};
use crate::gflinalg::{BitMatrix, ConstraintSystem, GfMatrix};
use crate::graph::{Alphabet, DirectedGraph, ErasedGraph};

/// A row set and a column set covering every nonzero entry of a matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cover {
    pub rows: BTreeSet<usize>,
    pub cols: BTreeSet<usize>,
}

impl Cover {
    pub fn size(&self) -> usize {
        self.rows.len() + self.cols.len()
    }

    pub fn covers(&self, m: &BitMatrix) -> bool {
        (0..m.rows()).all(|r| self.rows.contains(&r) || (0..m.cols()).all(|c| !m.get(r, c) || self.cols.contains(&c)))
    }
}

/// Maximum matching of the bipartite support graph (rows vs columns), by
/// augmenting paths. Returns `match_of_col[c] = Some(row)`.
fn max_matching(m: &BitMatrix) -> Vec<Option<usize>> {
    fn augment(m: &BitMatrix, r: usize, seen: &mut [bool], match_col: &mut [Option<usize>]) -> bool {
        for c in 0..m.cols() {
            if m.get(r, c) && !seen[c] {
                seen[c] = true;
                if match_col[c].is_none_or(|r2| augment(m, r2, seen, match_col)) {
                    match_col[c] = Some(r);
                    return true;
                }
            }
        }
        false
    }
    let mut match_col = vec![None; m.cols()];
    for r in 0..m.rows() {
        augment(m, r, &mut vec![false; m.cols()], &mut match_col);
    }
    match_col
}

/// A minimum cover, built from a maximum matching (König's theorem).
pub fn min_cover(m: &BitMatrix) -> Cover {
    let match_col = max_matching(m);
    let mut match_row = vec![None; m.rows()];
    for (c, r) in match_col.iter().enumerate() {
        if let Some(r) = r {
            match_row[*r] = Some(c);
        }
    }
    // alternating reachability from unmatched rows
    let mut row_seen = vec![false; m.rows()];
    let mut col_seen = vec![false; m.cols()];
    let mut stack: Vec<usize> = (0..m.rows()).filter(|&r| match_row[r].is_none()).collect();
    stack.iter().for_each(|&r| row_seen[r] = true);
    while let Some(r) = stack.pop() {
        for c in 0..m.cols() {
            if m.get(r, c) && !col_seen[c] {
                col_seen[c] = true;
                if let Some(r2) = match_col[c] {
                    if !row_seen[r2] {
                        row_seen[r2] = true;
                        stack.push(r2);
                    }
                }
            }
        }
    }
    Cover {
        rows: (0..m.rows()).filter(|&r| !row_seen[r]).collect(),
        cols: (0..m.cols()).filter(|&c| col_seen[c]).collect(),
    }
}

/// Minimum `|S| + |T|` over covers `(S, T)`.
pub fn cover_weight(m: &BitMatrix) -> usize {
    let w = max_matching(m).iter().flatten().count();
    debug_assert!(m.rows() > 6 || w == cover_weight_brute_force(m));
    w
}

/// Exhaustive cover weight: for each row set, the columns still needed.
pub fn cover_weight_brute_force(m: &BitMatrix) -> usize {
    assert!(m.rows() <= 20, "brute force is exponential in the row count");
    (0u32..1 << m.rows())
        .map(|s| {
            let cols = (0..m.cols()).filter(|&c| (0..m.rows()).any(|r| s >> r & 1 == 0 && m.get(r, c))).count();
            s.count_ones() as usize + cols
        })
        .min()
        .unwrap_or(0)
}

/// Adjacency matrix of a binary graph as a [`BitMatrix`].
pub fn adjacency_bits(g: &DirectedGraph) -> BitMatrix {
    let n = g.n();
    let mut m = BitMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, g.get(i, j).0 & 1 == 1);
        }
    }
    m
}

#[derive(Clone, Debug)]
pub struct ArrayCode {
    n: usize,
    rho: usize,
    field: Field,
    /// `(2 rho n) x n^2` binary parity checks over cells `r*n + j`.
    parity: BitMatrix,
    /// Row `t` lists the redundancy bits generated by the `t`-th info bit.
    generator: BitMatrix,
}

impl ArrayCode {
    /// Gabidulin array code with `2 rho` parity rows; needs `1 <= rho < n/2`.
    pub fn gabidulin(n: usize, rho: usize) -> Result<Self> {
        if rho == 0 || 2 * rho >= n {
            return Err(Error::Params(format!("need 1 <= rho < n/2, got n={n}, rho={rho}")));
        }
        let field = Field::new(n as u32).map_err(|_| Error::Params(format!("n={n} exceeds GF(2^32)")))?;
        let r = 2 * rho;
        let mut parity = BitMatrix::zeros(r * n, n * n);
        for i in 0..r {
            for j in 0..n {
                let h = field.frob(Gf(1 << j), i as u32);
                for row in 0..n {
                    let e = field.mul(h, Gf(1 << row));
                    for b in 0..n {
                        if e.0 >> b & 1 == 1 {
                            parity.set(i * n + b, row * n + j, true);
                        }
                    }
                }
            }
        }
        let rank = parity.rank();
        if rank != r * n {
            return Err(Error::Params(format!("parity checks have rank {rank}, expected {}", r * n)));
        }

        // systematic completion: the last 2 rho rows are solved from the rest
        let k = n * (n - r);
        let red_cells: Vec<usize> = (k..n * n).collect();
        let mut h_red = BitMatrix::zeros(r * n, red_cells.len());
        for row in 0..r * n {
            for (c, &cell) in red_cells.iter().enumerate() {
                h_red.set(row, c, parity.get(row, cell));
            }
        }
        let mut generator = BitMatrix::zeros(k, red_cells.len());
        for t in 0..k {
            let rhs: Vec<Gf> = (0..r * n).map(|row| Gf(parity.get(row, t) as u32)).collect();
            let x = h_red
                .solve_unique(&rhs)
                .map_err(|_| Error::Params("bottom rows are not an information-completable position set".into()))?;
            for (c, v) in x.into_iter().enumerate() {
                generator.set(t, c, v.0 == 1);
            }
        }
        Ok(ArrayCode { n, rho, field, parity, generator })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    /// Designed cover distance minus one, `2 rho`.
    pub fn r(&self) -> usize {
        2 * self.rho
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn parity_bits(&self) -> &BitMatrix {
        &self.parity
    }

    /// Dimension `n (n - 2 rho)`.
    pub fn dimension(&self) -> usize {
        self.n * (self.n - self.r())
    }

    pub fn redundancy(&self) -> usize {
        self.n * self.n - self.dimension()
    }

    pub fn info_rows(&self) -> usize {
        self.n - self.r()
    }

    /// Encodes `(n - 2 rho) x n` bits; they appear verbatim in the top rows.
    pub fn encode(&self, info: &[Vec<Gf>]) -> Result<DirectedGraph> {
        let (n, k_rows) = (self.n, self.info_rows());
        if info.len() != k_rows || info.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension(format!("information block must be {k_rows}x{n}")));
        }
        if info.iter().flatten().any(|v| v.0 > 1) {
            return Err(Error::Dimension("information must be bits".into()));
        }
        let bits: Vec<bool> = info.iter().flatten().map(|v| v.0 == 1).collect();
        Ok(self.encode_bits(&bits))
    }

    /// Encodes a flat information vector of `dimension()` bits.
    pub fn encode_bits(&self, bits: &[bool]) -> DirectedGraph {
        assert_eq!(bits.len(), self.dimension());
        let k = self.dimension();
        let mut red = vec![0u64; self.generator.row_words(0).len().max(1)];
        for (t, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
            red.iter_mut().zip(self.generator.row_words(t)).for_each(|(a, b)| *a ^= b);
        }
        DirectedGraph::from_fn(self.n, Alphabet::Gf2, |i, j| {
            let cell = i * self.n + j;
            let bit = if cell < k { bits[cell] } else { red[(cell - k) / 64] >> ((cell - k) % 64) & 1 == 1 };
            Gf(bit as u32)
        })
    }

    pub fn constraints(&self) -> ConstraintSystem {
        let mut cs = ConstraintSystem::new(Field::binary(), self.n * self.n);
        for row in 0..self.parity.rows() {
            cs.push_parity((0..self.n * self.n).filter(|&c| self.parity.get(row, c)));
        }
        cs
    }

    pub fn check(&self, g: &DirectedGraph) -> bool {
        g.n() == self.n && g.alphabet() == Alphabet::Gf2 && self.parity.apply(g.labels()).iter().all(|v| v.is_zero())
    }

    /// Solves for any erasure pattern; fails if the pattern is not uniquely
    /// recoverable.
    pub fn decode_erasures(&self, erased: &ErasedGraph) -> Result<DirectedGraph> {
        if erased.n() != self.n {
            return Err(Error::Dimension(format!("graph has n={}, code has n={}", erased.n(), self.n)));
        }
        let labels = self.constraints().solve_erasures(erased.cells()).map_err(|e| match e {
            Error::Inconsistent => Error::NotCodeword("known labels violate the parity checks".into()),
            other => other,
        })?;
        DirectedGraph::from_labels(self.n, Alphabet::Gf2, labels)
    }

    pub fn decode(&self, erased: &ErasedGraph, failed: &[usize]) -> Result<DirectedGraph> {
        let failed = crate::check_failed_set(self.n, failed, self.rho)?;
        if let Some(e) =
            erased.unknown_edges().into_iter().find(|e| !failed.contains(&e.from) && !failed.contains(&e.to))
        {
            return Err(Error::ErasurePattern(format!("{e} is unknown but outside the failed neighborhoods")));
        }
        self.decode_erasures(erased)
    }
}

/// Erases whole rows and columns (a crisscross pattern).
pub fn erase_lines(g: &DirectedGraph, rows: &[usize], cols: &[usize]) -> ErasedGraph {
    let mut e = g.to_erased();
    for i in 0..g.n() {
        for j in 0..g.n() {
            if rows.contains(&i) || cols.contains(&j) {
                e.set(i, j, None);
            }
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_bits(len: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
        (0..len).map(|_| rng.gen()).collect()
    }

    #[test]
    fn cover_weight_examples() {
        assert_eq!(cover_weight(&BitMatrix::zeros(4, 4)), 0);
        assert_eq!(cover_weight(&BitMatrix::identity(5)), 5);
        let mut single = BitMatrix::zeros(4, 4);
        single.set(2, 3, true);
        assert_eq!(cover_weight(&single), 1);
        let mut cross = BitMatrix::zeros(5, 5);
        for k in 0..5 {
            cross.set(2, k, true);
            cross.set(k, 1, true);
        }
        assert_eq!(cover_weight(&cross), 2);
    }

    #[test]
    fn matching_cover_agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=6);
            let density = rng.gen_range(0.05..0.7);
            let mut m = BitMatrix::zeros(n, n);
            for r in 0..n {
                for c in 0..n {
                    m.set(r, c, rng.gen_bool(density));
                }
            }
            let cover = min_cover(&m);
            assert!(cover.covers(&m));
            assert_eq!(cover.size(), cover_weight_brute_force(&m));
            assert_eq!(cover_weight(&m), cover.size());
        }
    }

    #[test]
    fn gabidulin_parameters() {
        let code = ArrayCode::gabidulin(5, 2).unwrap();
        assert_eq!(code.parity_bits().rank(), 20);
        assert_eq!(code.dimension(), 5);
        assert!(ArrayCode::gabidulin(4, 2).is_err());
        assert!(ArrayCode::gabidulin(5, 0).is_err());
    }

    #[test]
    fn every_nonzero_codeword_has_rank_at_least_five() {
        let code = ArrayCode::gabidulin(5, 2).unwrap();
        for v in 1u32..32 {
            let bits: Vec<bool> = (0..5).map(|t| v >> t & 1 == 1).collect();
            let g = code.encode_bits(&bits);
            assert!(code.check(&g));
            let m = adjacency_bits(&g);
            assert!(m.rank() >= 5);
            assert!(cover_weight(&m) >= m.rank());
        }
    }

    #[test]
    fn encode_is_systematic_and_linear() {
        let code = ArrayCode::gabidulin(7, 1).unwrap();
        assert!(code.encode(&vec![vec![Gf::ZERO; 7]; 5]).unwrap().labels().iter().all(|v| v.is_zero()));
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let a = random_bits(35, &mut rng);
        let b = random_bits(35, &mut rng);
        let info: Vec<Vec<Gf>> = a.chunks(7).map(|r| r.iter().map(|&x| Gf(x as u32)).collect()).collect();
        let g = code.encode(&info).unwrap();
        assert!(code.check(&g));
        for (i, row) in info.iter().enumerate() {
            assert_eq!(&g.row(i), row);
        }
        let sum: Vec<bool> = a.iter().zip(&b).map(|(x, y)| x ^ y).collect();
        assert_eq!(code.encode_bits(&sum), code.encode_bits(&a).add(&code.encode_bits(&b)));
        assert!(code.encode(&info[..4]).is_err());
    }

    #[test]
    fn node_failures_and_crisscross_patterns_decode() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let code = ArrayCode::gabidulin(7, 2).unwrap();
        let g = code.encode_bits(&random_bits(code.dimension(), &mut rng));
        assert_eq!(code.decode(&g.to_erased(), &[]).unwrap(), g);
        for (i, j) in [(0, 1), (2, 6), (5, 6)] {
            assert_eq!(code.decode(&g.erase_nodes(&[i, j]).unwrap(), &[i, j]).unwrap(), g);
        }
        // rows and columns with unrelated indices
        assert_eq!(code.decode_erasures(&erase_lines(&g, &[0, 4], &[2, 6])).unwrap(), g);
        assert_eq!(code.decode_erasures(&erase_lines(&g, &[1, 2, 3, 5], &[])).unwrap(), g);
        assert!(matches!(
            code.decode(&g.erase_nodes(&[0, 1, 2]).unwrap(), &[0, 1, 2]),
            Err(Error::BeyondBudget { .. })
        ));
    }

    #[test]
    fn singleton_bound_met_but_not_graph_optimal() {
        for rho in 1..=2 {
            let code = ArrayCode::gabidulin(7, rho).unwrap();
            let d = 2 * rho + 1;
            assert_eq!(code.constraints().nullspace_dim(), 7 * (7 - d + 1));
            assert!(code.redundancy() > crate::redundancy_bound(7, rho));
        }
    }
}
