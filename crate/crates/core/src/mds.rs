//! The `[n, n-rho, rho+1]` MDS component code: Reed-Solomon over GF(2^m),
//! singly extended with the point at infinity when `n = q + 1`.
//!
//! A message is a polynomial `f` of degree `< k`; position `t` holds
//! `f(x_t)`, and the point at infinity holds the coefficient of `x^{k-1}`.
//! Encoding is systematic on the first `k` positions.

use crate::error::{Error, Result};
use crate::gf2m::{Field, Gf};
use crate::gflinalg::{FieldMatrix, GfMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalPoint {
    Finite(Gf),
    Infinity,
}

#[derive(Clone, Debug)]
pub struct MdsCode {
    n: usize,
    k: usize,
    field: Field,
    points: Vec<EvalPoint>,
    /// `k x n` generator; column `t` evaluates the monomial basis at point `t`.
    generator: FieldMatrix,
    /// `k x (n-k)`: row `r` is the redundancy produced by the `r`-th unit message.
    redundancy: FieldMatrix,
}

impl MdsCode {
    /// Smallest field with `2^m + 1 >= n`; plain RS if `2^m >= n`, otherwise
    /// extended RS of length `q + 1`.
    pub fn reed_solomon(n: usize, rho: usize) -> Result<Self> {
        if rho == 0 || rho >= n {
            return Err(Error::Params(format!("need 1 <= rho < n, got n={n}, rho={rho}")));
        }
        let m = (1..=crate::gf2m::MAX_DEGREE)
            .find(|&m| (1u64 << m) + 1 >= n as u64)
            .ok_or_else(|| Error::Params(format!("length {n} too large")))?;
        Self::with_field(Field::new(m)?, n, n - rho)
    }

    /// RS code of length `n`, dimension `k` over `field`; needs `n <= q + 1`.
    pub fn with_field(field: Field, n: usize, k: usize) -> Result<Self> {
        let q = field.size();
        if k == 0 || k > n || n as u64 > q + 1 {
            return Err(Error::Params(format!("no RS code of length {n}, dimension {k} over GF({q})")));
        }
        let alpha = field.primitive_element();
        let mut points = vec![EvalPoint::Finite(Gf::ZERO)];
        points.extend((1..q.min(n as u64)).map(|e| EvalPoint::Finite(field.pow(alpha, e))));
        if n as u64 == q + 1 {
            points.push(EvalPoint::Infinity);
        }
        debug_assert_eq!(points.len(), n);

        let mut generator = FieldMatrix::zeros(field, k, n);
        for (t, p) in points.iter().enumerate() {
            match *p {
                EvalPoint::Finite(x) => {
                    let mut v = Gf::ONE;
                    for r in 0..k {
                        generator.set(r, t, v);
                        v = field.mul(v, x);
                    }
                }
                EvalPoint::Infinity => generator.set(k - 1, t, Gf::ONE),
            }
        }

        let mut code = MdsCode { n, k, field, points, generator, redundancy: FieldMatrix::zeros(field, k, n - k) };
        for r in 0..k {
            let mut unit = vec![Gf::ZERO; k];
            unit[r] = Gf::ONE;
            let word = code.encode_via_interpolation(&unit)?;
            for c in 0..n - k {
                code.redundancy.set(r, c, word[k + c]);
            }
        }
        Ok(code)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rho(&self) -> usize {
        self.n - self.k
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn points(&self) -> &[EvalPoint] {
        &self.points
    }

    pub fn generator(&self) -> &FieldMatrix {
        &self.generator
    }

    /// Solves for the message polynomial through the given positions and
    /// evaluates it everywhere.
    fn interpolate(&self, positions: &[usize], values: &[Gf]) -> Result<Vec<Gf>> {
        let rows: Vec<Vec<Gf>> =
            positions.iter().map(|&t| (0..self.k).map(|r| self.generator.get(r, t)).collect()).collect();
        let coeffs = FieldMatrix::from_rows(self.field, &rows)?.solve_unique(values)?;
        Ok(self.generator.transpose().apply(&coeffs))
    }

    fn encode_via_interpolation(&self, info: &[Gf]) -> Result<Vec<Gf>> {
        self.interpolate(&(0..self.k).collect::<Vec<_>>(), info)
    }

    fn check_symbols(&self, symbols: &[Gf]) -> Result<()> {
        match symbols.iter().find(|s| !self.field.contains(**s)) {
            Some(s) => Err(Error::Dimension(format!("symbol {s} outside GF(2^{})", self.field.degree()))),
            None => Ok(()),
        }
    }

    /// Systematic encoding: the first `k` symbols are `info` verbatim.
    pub fn encode(&self, info: &[Gf]) -> Result<Vec<Gf>> {
        if info.len() != self.k {
            return Err(Error::Dimension(format!("{} info symbols, code dimension is {}", info.len(), self.k)));
        }
        self.check_symbols(info)?;
        let mut word = info.to_vec();
        word.extend(self.redundancy_of(info));
        Ok(word)
    }

    fn redundancy_of(&self, info: &[Gf]) -> Vec<Gf> {
        (0..self.n - self.k)
            .map(|c| {
                info.iter()
                    .enumerate()
                    .fold(Gf::ZERO, |acc, (r, &v)| acc + self.field.mul(v, self.redundancy.get(r, c)))
            })
            .collect()
    }

    pub fn is_codeword(&self, word: &[Gf]) -> bool {
        word.len() == self.n && self.redundancy_of(&word[..self.k]) == word[self.k..]
    }

    /// `(n-k) x n` parity-check matrix `[P^T | I]`.
    pub fn parity_check(&self) -> FieldMatrix {
        let rho = self.n - self.k;
        let mut h = FieldMatrix::zeros(self.field, rho, self.n);
        for c in 0..rho {
            for r in 0..self.k {
                h.set(c, r, self.redundancy.get(r, c));
            }
            h.set(c, self.k + c, Gf::ONE);
        }
        h
    }

    /// Recovers the unique codeword agreeing with every known position.
    pub fn decode_erasures(&self, word: &[Option<Gf>]) -> Result<Vec<Gf>> {
        if word.len() != self.n {
            return Err(Error::Dimension(format!("word has {} symbols, code length is {}", word.len(), self.n)));
        }
        let known: Vec<usize> = (0..self.n).filter(|&t| word[t].is_some()).collect();
        let erased = self.n - known.len();
        if erased > self.n - self.k {
            return Err(Error::BeyondBudget { erased, budget: self.n - self.k });
        }
        let values: Vec<Gf> = known.iter().map(|&t| word[t].unwrap()).collect();
        self.check_symbols(&values)?;
        match self.interpolate(&known, &values) {
            Ok(w) => Ok(w),
            Err(Error::Inconsistent) => Err(Error::NotCodeword("known symbols disagree with every codeword".into())),
            Err(e) => Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_info(code: &MdsCode, rng: &mut ChaCha8Rng) -> Vec<Gf> {
        (0..code.k()).map(|_| Gf(rng.gen_range(0..code.field().size()) as u32)).collect()
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|&t| s >> t & 1 == 1).collect())
            .collect()
    }

    /// Lagrange interpolation through the finite systematic points.
    fn lagrange_eval(f: &Field, xs: &[Gf], ys: &[Gf], at: Gf) -> Gf {
        let mut acc = Gf::ZERO;
        for (a, (&xa, &ya)) in xs.iter().zip(ys).enumerate() {
            let mut num = Gf::ONE;
            let mut den = Gf::ONE;
            for (b, &xb) in xs.iter().enumerate() {
                if a != b {
                    num = f.mul(num, at + xb);
                    den = f.mul(den, xa + xb);
                }
            }
            acc += f.mul(ya, f.div(num, den).unwrap());
        }
        acc
    }

    #[test]
    fn rs_make_examples() {
        let c = MdsCode::reed_solomon(5, 2).unwrap();
        assert_eq!(c.field().size(), 4);
        assert_eq!(c.points().last(), Some(&EvalPoint::Infinity));
        let c = MdsCode::reed_solomon(4, 1).unwrap();
        assert_eq!(c.field().size(), 4);
        assert!(!c.points().contains(&EvalPoint::Infinity));
        assert!(MdsCode::reed_solomon(2, 2).is_err());
        assert!(MdsCode::reed_solomon(3, 0).is_err());
    }

    #[test]
    fn encoding_matches_lagrange_oracle() {
        let code = MdsCode::reed_solomon(4, 2).unwrap();
        let f = code.field();
        let xs: Vec<Gf> = code
            .points()
            .iter()
            .map(|p| match p {
                EvalPoint::Finite(x) => *x,
                _ => unreachable!(),
            })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let info = random_info(&code, &mut rng);
            let word = code.encode(&info).unwrap();
            assert_eq!(&word[..2], &info[..]);
            for t in 2..4 {
                assert_eq!(word[t], lagrange_eval(&f, &xs[..2], &info, xs[t]));
            }
        }
    }

    #[test]
    fn zero_and_linearity() {
        let code = MdsCode::reed_solomon(7, 3).unwrap();
        assert!(code.encode(&[Gf::ZERO; 4]).unwrap().iter().all(|v| v.is_zero()));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_info(&code, &mut rng);
        let b = random_info(&code, &mut rng);
        let sum: Vec<Gf> = a.iter().zip(&b).map(|(&x, &y)| x + y).collect();
        let ea = code.encode(&a).unwrap();
        let eb = code.encode(&b).unwrap();
        let es: Vec<Gf> = ea.iter().zip(&eb).map(|(&x, &y)| x + y).collect();
        assert_eq!(code.encode(&sum).unwrap(), es);
        assert!(code.encode(&a[..3]).is_err());
    }

    #[test]
    fn every_k_columns_of_generator_are_invertible() {
        for n in 2..=8 {
            for rho in 1..n {
                let code = MdsCode::reed_solomon(n, rho).unwrap();
                let k = code.k();
                let g = code.generator();
                for cols in subsets(n, k) {
                    let rows: Vec<Vec<Gf>> = (0..k).map(|r| cols.iter().map(|&c| g.get(r, c)).collect()).collect();
                    assert_eq!(
                        FieldMatrix::from_rows(code.field(), &rows).unwrap().rank(),
                        k,
                        "n={n} rho={rho} {cols:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn parity_check_annihilates_codewords() {
        let code = MdsCode::reed_solomon(9, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let h = code.parity_check();
        for _ in 0..10 {
            let w = code.encode(&random_info(&code, &mut rng)).unwrap();
            assert!(h.apply(&w).iter().all(|v| v.is_zero()));
            assert!(code.is_codeword(&w));
        }
    }

    #[test]
    fn erasure_decoding_exhaustive_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=8 {
            for rho in 1..n {
                let code = MdsCode::reed_solomon(n, rho).unwrap();
                let word = code.encode(&random_info(&code, &mut rng)).unwrap();
                let full: Vec<Option<Gf>> = word.iter().map(|&v| Some(v)).collect();
                assert_eq!(code.decode_erasures(&full).unwrap(), word);
                for erased in subsets(n, rho) {
                    let mut w = full.clone();
                    erased.iter().for_each(|&t| w[t] = None);
                    assert_eq!(code.decode_erasures(&w).unwrap(), word);
                }
                if rho < n {
                    let w: Vec<Option<Gf>> = (0..n).map(|t| (t > rho).then_some(word[t])).collect();
                    assert!(matches!(code.decode_erasures(&w), Err(Error::BeyondBudget { .. })));
                }
            }
        }
    }

    #[test]
    fn erasure_decoding_randomized_larger() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for (n, rho) in [(17, 5), (33, 4), (30, 11)] {
            let code = MdsCode::reed_solomon(n, rho).unwrap();
            for _ in 0..10 {
                let word = code.encode(&random_info(&code, &mut rng)).unwrap();
                let mut w: Vec<Option<Gf>> = word.iter().map(|&v| Some(v)).collect();
                let mut erased = 0;
                while erased < rho {
                    let t = rng.gen_range(0..n);
                    if w[t].is_some() {
                        w[t] = None;
                        erased += 1;
                    }
                }
                assert_eq!(code.decode_erasures(&w).unwrap(), word);
            }
        }
    }

    #[test]
    fn corrupted_known_symbols_are_rejected() {
        let code = MdsCode::reed_solomon(6, 2).unwrap();
        let mut w: Vec<Option<Gf>> =
            code.encode(&[Gf(1), Gf(2), Gf(3), Gf(4)]).unwrap().into_iter().map(Some).collect();
        w[0] = None;
        w[5] = Some(w[5].unwrap() + Gf(1));
        assert!(matches!(code.decode_erasures(&w), Err(Error::NotCodeword(_))));
    }
}
