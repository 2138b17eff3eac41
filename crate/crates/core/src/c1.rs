//! Optimal `rho`-node-erasure-correcting codes over GF(q), `q >= n - 1`.
//!
//! The first `n - rho` columns and all `n` rows of the adjacency matrix are
//! codewords of an `[n, n - rho, rho + 1]` MDS code. Information sits in the
//! top-left `(n - rho) x (n - rho)` block.

use crate::error::{Error, Result};
use crate::gf2m::Gf;
use crate::gflinalg::{ConstraintSystem, GfMatrix};
use crate::graph::{neighborhoods, Alphabet, DirectedGraph, EdgeSet, ErasedGraph};
use crate::mds::MdsCode;

#[derive(Clone, Debug)]
pub struct C1Code {
    n: usize,
    rho: usize,
    mds: MdsCode,
}

impl C1Code {
    pub fn new(n: usize, rho: usize) -> Result<Self> {
        let mds = MdsCode::reed_solomon(n, rho)?;
        Ok(C1Code { n, rho, mds })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn mds(&self) -> &MdsCode {
        &self.mds
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::from_field(self.mds.field())
    }

    /// Side of the information block, `n - rho`.
    pub fn k(&self) -> usize {
        self.n - self.rho
    }

    /// Code dimension `(n - rho)^2`.
    pub fn dimension(&self) -> usize {
        self.k() * self.k()
    }

    pub fn redundancy(&self) -> usize {
        self.n * self.n - self.dimension()
    }

    pub fn encode(&self, info: &[Vec<Gf>]) -> Result<DirectedGraph> {
        let (n, k) = (self.n, self.k());
        if info.len() != k || info.iter().any(|row| row.len() != k) {
            return Err(Error::Dimension(format!("information block must be {k}x{k}")));
        }
        let mut g = DirectedGraph::zeros(n, self.alphabet());
        for m in 0..k {
            let column: Vec<Gf> = info.iter().map(|row| row[m]).collect();
            for (i, v) in self.mds.encode(&column)?.into_iter().enumerate() {
                g.set(i, m, v);
            }
        }
        for l in 0..n {
            let row = self.mds.encode(&g.row(l)[..k])?;
            for (j, v) in row.into_iter().enumerate() {
                g.set(l, j, v);
            }
        }
        Ok(g)
    }

    /// Whether columns `0..n-rho` and every row are MDS codewords.
    pub fn check(&self, g: &DirectedGraph) -> bool {
        g.n() == self.n
            && (0..self.k()).all(|m| self.mds.is_codeword(&g.column(m)))
            && (0..self.n).all(|l| self.mds.is_codeword(&g.row(l)))
    }

    /// All parity constraints over the `n^2` cells (cell `i*n + j`).
    pub fn constraints(&self) -> ConstraintSystem {
        let n = self.n;
        let h = self.mds.parity_check();
        let mut cs = ConstraintSystem::new(self.mds.field(), n * n);
        for m in 0..self.k() {
            for r in 0..h.rows() {
                cs.push((0..n).map(|i| (i * n + m, h.get(r, i))).collect());
            }
        }
        for l in 0..n {
            for r in 0..h.rows() {
                cs.push((0..n).map(|j| (l * n + j, h.get(r, j))).collect());
            }
        }
        cs
    }

    /// Rows of surviving nodes, then the first `n - rho` columns, then the
    /// rows of the failed nodes.
    pub fn decode(&self, erased: &ErasedGraph, failed: &[usize]) -> Result<DirectedGraph> {
        let n = self.n;
        if erased.n() != n {
            return Err(Error::Dimension(format!("graph has n={}, code has n={n}", erased.n())));
        }
        let failed = crate::check_failed_set(n, failed, self.rho)?;
        if let Some(e) =
            erased.unknown_edges().into_iter().find(|e| !failed.contains(&e.from) && !failed.contains(&e.to))
        {
            return Err(Error::ErasurePattern(format!("{e} is unknown but outside the failed neighborhoods")));
        }
        let mut work = erased.clone();
        let decode_row = |work: &mut ErasedGraph, l: usize| -> Result<()> {
            let row: Vec<Option<Gf>> = (0..n).map(|j| work.get(l, j)).collect();
            if row.iter().any(Option::is_none) {
                for (j, v) in self.mds.decode_erasures(&row)?.into_iter().enumerate() {
                    work.set(l, j, Some(v));
                }
            }
            Ok(())
        };
        for l in (0..n).filter(|l| !failed.contains(l)) {
            decode_row(&mut work, l)?;
        }
        for m in 0..self.k() {
            let column: Vec<Option<Gf>> = (0..n).map(|i| work.get(i, m)).collect();
            if column.iter().any(Option::is_none) {
                for (i, v) in self.mds.decode_erasures(&column)?.into_iter().enumerate() {
                    work.set(i, m, Some(v));
                }
            }
        }
        for &l in &failed {
            decode_row(&mut work, l)?;
        }
        let g = work.into_complete()?;
        if !self.check(&g) {
            return Err(Error::NotCodeword("decoded graph violates a row or column constraint".into()));
        }
        Ok(g)
    }
}

/// The three neighborhood-intersection counts used by the decoding schedule,
/// for a failed set `J` with `|J| = rho`:
/// (a) `|N_l^out ∩ ∪ F_k^in| = rho` for all `l`;
/// (b) `|N_m^in ∩ ∪ F_k^out| = rho` for all `m`;
/// (c) `|N_l^out ∩ ∪ F_k| = rho` for `l ∉ J`.
pub fn intersection_counts_hold(n: usize, failed: &[usize]) -> Result<[bool; 3]> {
    let rho = failed.len();
    let mut f_in = EdgeSet::new();
    let mut f_out = EdgeSet::new();
    let mut f_all = EdgeSet::new();
    for &k in failed {
        let nb = neighborhoods(n, k)?;
        f_in.extend(nb.incoming);
        f_out.extend(nb.out);
        f_all.extend(nb.all);
    }
    let mut ok = [true; 3];
    for v in 0..n {
        let nb = neighborhoods(n, v)?;
        ok[0] &= nb.out.intersection(&f_in).count() == rho;
        ok[1] &= nb.incoming.intersection(&f_out).count() == rho;
        if !failed.contains(&v) {
            ok[2] &= nb.out.intersection(&f_all).count() == rho;
        }
    }
    Ok(ok)
}
