//! Gaussian elimination over GF(2) and GF(2^m).
//!
//! [`BitMatrix`] packs GF(2) rows into machine words; [`FieldMatrix`] stores
//! GF(2^m) entries densely. Both implement [`GfMatrix`]. Pivot choice is the
//! first row (top to bottom) with a nonzero entry in the current column, so
//! results are reproducible.
//!
//! [`ConstraintSystem`] is the generic erasure decoder used as an oracle for
//! every graph code in the crate: it holds sparse linear constraints over a
//! flat vector of cells and solves for the unknown ones.

use crate::error::{Error, Result};
use crate::gf2m::{Field, Gf};

/// Common interface of the binary and extension-field matrices.
pub trait GfMatrix {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn rank(&self) -> usize;

    fn nullspace_dim(&self) -> usize {
        self.cols() - self.rank()
    }

    /// Matrix-vector product.
    fn apply(&self, x: &[Gf]) -> Vec<Gf>;

    /// The unique `x` with `self * x = b`.
    fn solve_unique(&self, b: &[Gf]) -> Result<Vec<Gf>>;
}

const WORD: usize = 64;

/// Dense GF(2) matrix with rows packed into `u64` words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(WORD).max(1);
        BitMatrix { rows, cols, stride, words: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds from rows of 0/1 values.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!("row {r} has {} entries, expected {cols}", row.len())));
            }
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v & 1 == 1);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.words[r * self.stride + c / WORD] >> (c % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.words[r * self.stride + c / WORD];
        if v {
            *w |= 1 << (c % WORD);
        } else {
            *w &= !(1 << (c % WORD));
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.words[r * self.stride + c / WORD] ^= 1 << (c % WORD);
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.words[r * self.stride..(r + 1) * self.stride]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Row-echelon reduction of a copy of the packed rows restricted to the
    /// first `pivot_cols` columns; returns the reduced rows and the rank.
    fn eliminate(mut rows: Vec<Vec<u64>>, pivot_cols: usize) -> (Vec<Vec<u64>>, usize) {
        let mut rank = 0;
        for c in 0..pivot_cols {
            let (w, bit) = (c / WORD, 1u64 << (c % WORD));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & bit != 0 {
                    row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
                }
            }
            rank += 1;
        }
        (rows, rank)
    }

    fn packed_rows(&self, extra_cols: usize) -> Vec<Vec<u64>> {
        let stride = (self.cols + extra_cols).div_ceil(WORD).max(1);
        (0..self.rows)
            .map(|r| {
                let mut v = self.row_words(r).to_vec();
                v.resize(stride, 0);
                v
            })
            .collect()
    }
}

fn check_bit(v: Gf) -> Result<bool> {
    match v.0 {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(Error::Dimension(format!("value {v} is not a GF(2) element"))),
    }
}

impl GfMatrix for BitMatrix {
    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn rank(&self) -> usize {
        Self::eliminate(self.packed_rows(0), self.cols).1
    }

    fn apply(&self, x: &[Gf]) -> Vec<Gf> {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|r| {
                let parity = (0..self.cols).filter(|&c| self.get(r, c) && x[c].0 & 1 == 1).count();
                Gf((parity & 1) as u32)
            })
            .collect()
    }

    fn solve_unique(&self, b: &[Gf]) -> Result<Vec<Gf>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!("rhs has {} entries, matrix has {} rows", b.len(), self.rows)));
        }
        let mut rows = self.packed_rows(1);
        let aug = self.cols;
        for (row, &v) in rows.iter_mut().zip(b) {
            if check_bit(v)? {
                row[aug / WORD] |= 1 << (aug % WORD);
            }
        }
        let (rows, rank) = Self::eliminate(rows, self.cols);
        let rhs = |row: &Vec<u64>| row[aug / WORD] >> (aug % WORD) & 1 == 1;
        if rows[rank..].iter().any(rhs) {
            return Err(Error::Inconsistent);
        }
        if rank < self.cols {
            return Err(Error::Underdetermined { rank, unknowns: self.cols });
        }
        // full column rank: pivot of row r sits in column r
        Ok(rows[..rank].iter().map(|row| Gf(rhs(row) as u32)).collect())
    }
}

/// Dense matrix over GF(2^m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Gf>,
}

impl FieldMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        FieldMatrix { field, rows, cols, data: vec![Gf::ZERO; rows * cols] }
    }

    pub fn from_rows(field: Field, rows: &[Vec<Gf>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!("row {r} has {} entries, expected {cols}", row.len())));
            }
            if let Some(v) = row.iter().find(|v| !field.contains(**v)) {
                return Err(Error::Dimension(format!("entry {v} outside GF(2^{})", field.degree())));
            }
            data.extend_from_slice(row);
        }
        Ok(FieldMatrix { field, rows: rows.len(), cols, data })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Gf {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Gf) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Gf] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Gauss-Jordan on `rows` (each of width >= pivot_cols); pivots are
    /// normalised to one. Returns the rank.
    fn eliminate(field: &Field, rows: &mut [Vec<Gf>], pivot_cols: usize) -> usize {
        let mut rank = 0;
        for c in 0..pivot_cols {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = field.inv(rows[rank][c]).expect("pivot is nonzero");
            for v in rows[rank].iter_mut() {
                *v = field.mul(*v, inv);
            }
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                let factor = row[c];
                if r != rank && !factor.is_zero() {
                    for (a, &b) in row.iter_mut().zip(&pivot) {
                        *a += field.mul(factor, b);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl GfMatrix for FieldMatrix {
    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Gf>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        Self::eliminate(&self.field, &mut rows, self.cols)
    }

    fn apply(&self, x: &[Gf]) -> Vec<Gf> {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(x).fold(Gf::ZERO, |acc, (&a, &b)| acc + self.field.mul(a, b)))
            .collect()
    }

    fn solve_unique(&self, b: &[Gf]) -> Result<Vec<Gf>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!("rhs has {} entries, matrix has {} rows", b.len(), self.rows)));
        }
        let mut rows: Vec<Vec<Gf>> = (0..self.rows)
            .map(|r| {
                let mut v = self.row(r).to_vec();
                v.push(b[r]);
                v
            })
            .collect();
        let rank = Self::eliminate(&self.field, &mut rows, self.cols);
        if rows[rank..].iter().any(|row| !row[self.cols].is_zero()) {
            return Err(Error::Inconsistent);
        }
        if rank < self.cols {
            return Err(Error::Underdetermined { rank, unknowns: self.cols });
        }
        Ok(rows[..rank].iter().map(|row| row[self.cols]).collect())
    }
}

/// Sparse linear constraints `sum_k coeff_k * cell_k = 0` over a flat vector
/// of cells.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    field: Field,
    num_cells: usize,
    constraints: Vec<Vec<(usize, Gf)>>,
}

impl ConstraintSystem {
    pub fn new(field: Field, num_cells: usize) -> Self {
        ConstraintSystem { field, num_cells, constraints: Vec::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn num_cells(&self) -> usize {
        self.num_cells
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn constraints(&self) -> &[Vec<(usize, Gf)>] {
        &self.constraints
    }

    /// Adds a constraint; zero coefficients are dropped.
    pub fn push(&mut self, terms: Vec<(usize, Gf)>) {
        debug_assert!(terms.iter().all(|&(c, _)| c < self.num_cells));
        self.constraints.push(terms.into_iter().filter(|(_, g)| !g.is_zero()).collect());
    }

    /// Adds a binary parity constraint over the given cells.
    pub fn push_parity<I: IntoIterator<Item = usize>>(&mut self, cells: I) {
        self.push(cells.into_iter().map(|c| (c, Gf::ONE)).collect());
    }

    pub fn append(&mut self, other: ConstraintSystem) {
        assert_eq!(self.num_cells, other.num_cells);
        self.constraints.extend(other.constraints);
    }

    /// Dense matrix of the system restricted to `columns` (in that order).
    fn restricted(&self, columns: &[usize]) -> Box<dyn GfMatrix> {
        let mut position = vec![usize::MAX; self.num_cells];
        for (k, &c) in columns.iter().enumerate() {
            position[c] = k;
        }
        if self.field.degree() == 1 {
            let mut m = BitMatrix::zeros(self.constraints.len(), columns.len());
            for (r, terms) in self.constraints.iter().enumerate() {
                for &(c, _) in terms {
                    if position[c] != usize::MAX {
                        m.flip(r, position[c]);
                    }
                }
            }
            Box::new(m)
        } else {
            let mut m = FieldMatrix::zeros(self.field, self.constraints.len(), columns.len());
            for (r, terms) in self.constraints.iter().enumerate() {
                for &(c, g) in terms {
                    if position[c] != usize::MAX {
                        let k = position[c];
                        m.set(r, k, m.get(r, k) + g);
                    }
                }
            }
            Box::new(m)
        }
    }

    pub fn matrix(&self) -> Box<dyn GfMatrix> {
        self.restricted(&(0..self.num_cells).collect::<Vec<_>>())
    }

    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }

    /// Dimension of the solution space (the code dimension).
    pub fn nullspace_dim(&self) -> usize {
        self.num_cells - self.rank()
    }

    pub fn residual(&self, terms: &[(usize, Gf)], values: &[Gf]) -> Gf {
        terms.iter().fold(Gf::ZERO, |acc, &(c, g)| acc + self.field.mul(g, values[c]))
    }

    pub fn is_satisfied(&self, values: &[Gf]) -> bool {
        values.len() == self.num_cells && self.constraints.iter().all(|t| self.residual(t, values).is_zero())
    }

    /// Rank of the columns belonging to the given cells.
    pub fn column_rank(&self, cells: &[usize]) -> usize {
        self.restricted(cells).rank()
    }

    /// Fills every `None` cell with the unique value consistent with all
    /// constraints.
    pub fn solve_erasures(&self, cells: &[Option<Gf>]) -> Result<Vec<Gf>> {
        if cells.len() != self.num_cells {
            return Err(Error::Dimension(format!("{} cells, system has {}", cells.len(), self.num_cells)));
        }
        let unknown: Vec<usize> = (0..cells.len()).filter(|&c| cells[c].is_none()).collect();
        let rhs: Vec<Gf> = self
            .constraints
            .iter()
            .map(|terms| {
                terms.iter().fold(Gf::ZERO, |acc, &(c, g)| match cells[c] {
                    Some(v) => acc + self.field.mul(g, v),
                    None => acc,
                })
            })
            .collect();
        let mut out: Vec<Gf> = cells.iter().map(|c| c.unwrap_or(Gf::ZERO)).collect();
        if unknown.is_empty() {
            return if rhs.iter().all(|v| v.is_zero()) { Ok(out) } else { Err(Error::Inconsistent) };
        }
        // char 2: moving the known part across the equality keeps its sign
        let x = self.restricted(&unknown).solve_unique(&rhs)?;
        for (&c, v) in unknown.iter().zip(x) {
            out[c] = v;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bits(rows: &[&[u8]]) -> BitMatrix {
        BitMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(bits(&[&[1, 1], &[1, 1]]).rank(), 1);
        assert_eq!(BitMatrix::zeros(4, 5).rank(), 0);
        let f = Field::new(3).unwrap();
        let m = FieldMatrix::from_rows(f, &[vec![Gf(1), Gf(2)], vec![Gf(2), Gf(4)]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(BitMatrix::zeros(6, 6).nullspace_dim(), 6);
        assert_eq!(BitMatrix::identity(6).nullspace_dim(), 0);
    }

    #[test]
    fn solve_identity_and_errors() {
        let b = vec![Gf(1), Gf(0), Gf(1)];
        assert_eq!(BitMatrix::identity(3).solve_unique(&b).unwrap(), b);
        let dep = bits(&[&[1, 1], &[0, 0], &[1, 1]]);
        assert!(matches!(dep.solve_unique(&[Gf(0), Gf(0), Gf(0)]), Err(Error::Underdetermined { rank: 1, .. })));
        let over = bits(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(over.solve_unique(&[Gf(1), Gf(1), Gf(0)]).unwrap(), vec![Gf(1), Gf(1)]);
        assert!(matches!(over.solve_unique(&[Gf(1), Gf(1), Gf(1)]), Err(Error::Inconsistent)));
        assert!(BitMatrix::identity(2).solve_unique(&[Gf(2), Gf(0)]).is_err());
    }

    #[test]
    fn wide_bit_rows_cross_word_boundaries() {
        let n = 150;
        let mut m = BitMatrix::identity(n);
        for c in 1..n {
            m.set(0, c, true);
        }
        assert_eq!(m.rank(), n);
        let x: Vec<Gf> = (0..n).map(|k| Gf((k % 3 == 0) as u32)).collect();
        assert_eq!(m.solve_unique(&m.apply(&x)).unwrap(), x);
    }

    #[test]
    fn constraint_system_solves_erasures() {
        // x0 + x1 + x2 = 0, x2 + x3 = 0 over GF(2)
        let mut cs = ConstraintSystem::new(Field::binary(), 4);
        cs.push_parity([0, 1, 2]);
        cs.push_parity([2, 3]);
        assert_eq!(cs.rank(), 2);
        assert_eq!(cs.nullspace_dim(), 2);
        let got = cs.solve_erasures(&[Some(Gf(1)), None, Some(Gf(1)), None]).unwrap();
        assert_eq!(got, vec![Gf(1), Gf(0), Gf(1), Gf(1)]);
        assert!(cs.is_satisfied(&got));
        assert!(matches!(cs.solve_erasures(&[None, None, None, Some(Gf(0))]), Err(Error::Underdetermined { .. })));
        assert!(matches!(cs.solve_erasures(&[Some(Gf(1)); 4]), Err(Error::Inconsistent)));
    }

    fn random_bits(rows: usize, cols: usize, seed: &[u8]) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, seed[(r * cols + c) % seed.len()] >> ((r + c) % 8) & 1 == 1);
            }
        }
        m
    }

    proptest! {
        #[test]
        fn bit_rank_equals_transpose_rank(rows in 1usize..12, cols in 1usize..12, seed in prop::collection::vec(any::<u8>(), 1..64)) {
            let m = random_bits(rows, cols, &seed);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn field_rank_equals_transpose_rank(m_deg in 2u32..6, rows in 1usize..7, cols in 1usize..7, seed in prop::collection::vec(any::<u32>(), 49)) {
            let f = Field::new(m_deg).unwrap();
            let mask = (f.size() - 1) as u32;
            let data: Vec<Vec<Gf>> = (0..rows).map(|r| (0..cols).map(|c| Gf(seed[r * 7 + c] & mask)).collect()).collect();
            let m = FieldMatrix::from_rows(f, &data).unwrap();
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn solve_recovers_planted_solution(m_deg in 1u32..9, extra in 0usize..4, cols in 1usize..7, seed in prop::collection::vec(any::<u32>(), 80)) {
            let f = Field::new(m_deg).unwrap();
            let mask = (f.size() - 1) as u32;
            let rows = cols + extra;
            let data: Vec<Vec<Gf>> = (0..rows).map(|r| (0..cols).map(|c| Gf(seed[(r * 7 + c) % 70] & mask)).collect()).collect();
            let x: Vec<Gf> = (0..cols).map(|c| Gf(seed[70 + c] & mask)).collect();
            if m_deg == 1 {
                let bm = BitMatrix::from_rows(&data.iter().map(|r| r.iter().map(|g| g.0 as u8).collect()).collect::<Vec<_>>()).unwrap();
                prop_assume!(bm.rank() == cols);
                prop_assert_eq!(bm.solve_unique(&bm.apply(&x)).unwrap(), x);
            } else {
                let fm = FieldMatrix::from_rows(f, &data).unwrap();
                prop_assume!(fm.rank() == cols);
                prop_assert_eq!(fm.solve_unique(&fm.apply(&x)).unwrap(), x);
            }
        }
    }
}
