//! Neighborhood, diagonal and failure parity sets for prime `n >= 5`.
//!
//! Undirected families (pairs `<v_k, v_l>`):
//!
//! - `S_h`, `h < n-2`: `<v_h, v_l>` for `l < n-1`; `S_{n-2}`: self loops `<v_l, v_l>`, `l < n-1`.
//! - `D_m`: `<v_k, v_l>` with `k, l != n-2` and `k + l = m (mod n)`, plus `<v_{n-1}, v_{n-2}>`.
//! - `S'_h`, `D'_m`: the same with the roles of nodes `n-2` and `n-1` swapped
//!   (`S'` ranges over `l != n-2`, `D'` over `k, l < n-1` plus `<v_{n-2}, v_{n-1}>`).
//!
//! The pair `<v_{n-1}, v_{n-2}>` belongs to every `D_m` (and every `D'_m`);
//! it is the only way the diagonal checks see an edge at node `n-2`.
//!
//! Directed families orient these pairs: the down families (`S↓`, `D↓`, `F↓`)
//! live in the lower triangle of the adjacency matrix, the up families in the
//! upper one.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Direction, EdgeSet, Pair, PairSet};

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p))
}

/// Validates the node count of the double-erasure codes.
pub fn check_prime(n: usize) -> Result<()> {
    if n >= 5 && is_prime(n) {
        Ok(())
    } else {
        Err(Error::Params(format!("n must be prime ≥ 5, got {n}")))
    }
}

/// `a mod n` in `[0, n)`.
#[inline]
pub fn modn(a: i64, n: usize) -> usize {
    a.rem_euclid(n as i64) as usize
}

/// Inverse of `a` modulo the prime `n`.
pub fn inv_mod(a: usize, n: usize) -> usize {
    debug_assert!(!a.is_multiple_of(n));
    (1..n).find(|&b| a * b % n == 1).expect("prime modulus")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    S,
    D,
    SPrime,
    DPrime,
    SDown,
    SUp,
    DDown,
    DUp,
    FDown,
    FUp,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 10] = [
        FamilyTag::S,
        FamilyTag::D,
        FamilyTag::SPrime,
        FamilyTag::DPrime,
        FamilyTag::SDown,
        FamilyTag::SUp,
        FamilyTag::DDown,
        FamilyTag::DUp,
        FamilyTag::FDown,
        FamilyTag::FUp,
    ];
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyTag::S => "S",
            FamilyTag::D => "D",
            FamilyTag::SPrime => "S'",
            FamilyTag::DPrime => "D'",
            FamilyTag::SDown => "S-down",
            FamilyTag::SUp => "S-up",
            FamilyTag::DDown => "D-down",
            FamilyTag::DUp => "D-up",
            FamilyTag::FDown => "F-down",
            FamilyTag::FUp => "F-up",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySets {
    Undirected(Vec<PairSet>),
    Directed(Vec<EdgeSet>),
}

/// An indexed collection of parity (or failure) sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityFamily {
    pub n: usize,
    pub tag: FamilyTag,
    pub sets: FamilySets,
}

impl ParityFamily {
    pub fn len(&self) -> usize {
        match &self.sets {
            FamilySets::Undirected(v) => v.len(),
            FamilySets::Directed(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn pairs(&self) -> Option<&[PairSet]> {
        match &self.sets {
            FamilySets::Undirected(v) => Some(v),
            FamilySets::Directed(_) => None,
        }
    }

    pub fn edges(&self) -> Option<&[EdgeSet]> {
        match &self.sets {
            FamilySets::Directed(v) => Some(v),
            FamilySets::Undirected(_) => None,
        }
    }
}

/// `S_h` for `h in [n-1]`.
pub fn neighborhood_sets(n: usize) -> Vec<PairSet> {
    let mut sets: Vec<PairSet> = (0..n - 2).map(|h| (0..n - 1).map(|l| Pair::new(h, l)).collect()).collect();
    sets.push((0..n - 1).map(|l| Pair::new(l, l)).collect());
    sets
}

/// `S'_h` for `h in [n-1]`.
pub fn neighborhood_sets_prime(n: usize) -> Vec<PairSet> {
    let nodes = || (0..n).filter(move |&l| l != n - 2);
    let mut sets: Vec<PairSet> = (0..n - 2).map(|h| nodes().map(|l| Pair::new(h, l)).collect()).collect();
    sets.push(nodes().map(|l| Pair::new(l, l)).collect());
    sets
}

fn diagonal_sets_over(n: usize, nodes: &[usize], special: Pair) -> Vec<PairSet> {
    let mut sets = vec![PairSet::new(); n];
    for &k in nodes {
        for &l in nodes {
            sets[(k + l) % n].insert(Pair::new(k, l));
        }
    }
    for s in &mut sets {
        s.insert(special);
    }
    sets
}

/// `D_m` for `m in [n]`.
pub fn diagonal_sets(n: usize) -> Vec<PairSet> {
    let nodes: Vec<usize> = (0..n).filter(|&l| l != n - 2).collect();
    diagonal_sets_over(n, &nodes, Pair::new(n - 1, n - 2))
}

/// `D'_m` for `m in [n]`.
pub fn diagonal_sets_prime(n: usize) -> Vec<PairSet> {
    let nodes: Vec<usize> = (0..n - 1).collect();
    diagonal_sets_over(n, &nodes, Pair::new(n - 2, n - 1))
}

/// Undirected failure set of `v_t`: every pair touching it.
pub fn undirected_failure_sets(n: usize) -> Vec<PairSet> {
    (0..n).map(|t| (0..n).map(|l| Pair::new(t, l)).collect()).collect()
}

pub fn orient_all(sets: &[PairSet], dir: Direction) -> Vec<EdgeSet> {
    sets.iter().map(|s| s.iter().map(|p| p.orient(dir)).collect()).collect()
}

pub fn parity_family(n: usize, tag: FamilyTag) -> Result<ParityFamily> {
    check_prime(n)?;
    let sets = match tag {
        FamilyTag::S => FamilySets::Undirected(neighborhood_sets(n)),
        FamilyTag::D => FamilySets::Undirected(diagonal_sets(n)),
        FamilyTag::SPrime => FamilySets::Undirected(neighborhood_sets_prime(n)),
        FamilyTag::DPrime => FamilySets::Undirected(diagonal_sets_prime(n)),
        FamilyTag::SDown => FamilySets::Directed(orient_all(&neighborhood_sets(n)[..n - 2], Direction::Down)),
        FamilyTag::SUp => FamilySets::Directed(orient_all(&neighborhood_sets_prime(n)[..n - 2], Direction::Up)),
        FamilyTag::DDown => FamilySets::Directed(orient_all(&diagonal_sets(n), Direction::Down)),
        FamilyTag::DUp => FamilySets::Directed(orient_all(&diagonal_sets_prime(n), Direction::Up)),
        FamilyTag::FDown => FamilySets::Directed(orient_all(&undirected_failure_sets(n), Direction::Down)),
        FamilyTag::FUp => FamilySets::Directed(orient_all(&undirected_failure_sets(n), Direction::Up)),
    };
    Ok(ParityFamily { n, tag, sets })
}

/// The four loops of the directed decoder. Loops I and II walk the lower
/// triangle, III and IV the upper one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LoopId {
    I,
    II,
    III,
    IV,
}

impl LoopId {
    pub const ALL: [LoopId; 4] = [LoopId::I, LoopId::II, LoopId::III, LoopId::IV];

    /// `s1` on iteration `t`: `-d(t+1)-2`, `d(t+1)-2`, `-d(t+1)-1`, `d(t+1)-1` mod n.
    pub fn s1(self, n: usize, d: usize, t: usize) -> usize {
        let step = d as i64 * (t as i64 + 1);
        match self {
            LoopId::I => modn(-step - 2, n),
            LoopId::II => modn(step - 2, n),
            LoopId::III => modn(-step - 1, n),
            LoopId::IV => modn(step - 1, n),
        }
    }
}

impl fmt::Display for LoopId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LoopId::I => "I",
            LoopId::II => "II",
            LoopId::III => "III",
            LoopId::IV => "IV",
        };
        f.write_str(s)
    }
}

/// Loop bounds and visited indices for failed nodes `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopParams {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    /// `<j - i>_n`
    pub d: usize,
    pub d_inv: usize,
    /// Last iteration index of loop I, `<-1 - d^-1>_n`.
    pub x: usize,
    /// Last iteration index of loop II, `<-1 + d^-1>_n`.
    pub y: usize,
    /// Last iteration index of loop III, `<-1 + d^-1>_n`.
    pub x_prime: usize,
    /// Last iteration index of loop IV, `<-1 - d^-1>_n`.
    pub y_prime: usize,
}

impl LoopParams {
    pub fn new(n: usize, i: usize, j: usize) -> Result<Self> {
        check_prime(n)?;
        if i >= j {
            return Err(Error::Params(format!("need i < j, got i={i}, j={j}")));
        }
        if j >= n - 2 {
            return Err(Error::NodeIndex { index: j, n: n - 2 });
        }
        let d = (j - i) % n;
        let d_inv = inv_mod(d, n);
        let x = modn(-1 - d_inv as i64, n);
        let y = modn(-1 + d_inv as i64, n);
        Ok(LoopParams { n, i, j, d, d_inv, x, y, x_prime: y, y_prime: x })
    }

    /// Number of iterations of a loop.
    pub fn iterations(&self, id: LoopId) -> usize {
        1 + match id {
            LoopId::I => self.x,
            LoopId::II => self.y,
            LoopId::III => self.x_prime,
            LoopId::IV => self.y_prime,
        }
    }

    /// `s1` values of a loop in iteration order.
    pub fn s1_sequence(&self, id: LoopId) -> Vec<usize> {
        (0..self.iterations(id)).map(|t| id.s1(self.n, self.d, t)).collect()
    }

    /// `A`, `B`, `A'`, `B'`: the `s1` values of loops I, II, III, IV.
    pub fn visited(&self, id: LoopId) -> BTreeSet<usize> {
        self.s1_sequence(id).into_iter().collect()
    }

    /// Exactly one of `{i, j} ⊆ A ∩ B'` and `{i, j} ⊆ A' ∩ B` holds.
    pub fn self_loop_split_holds(&self) -> bool {
        let has_both = |a: LoopId, b: LoopId| {
            let (sa, sb) = (self.visited(a), self.visited(b));
            [self.i, self.j].iter().all(|v| sa.contains(v) && sb.contains(v))
        };
        has_both(LoopId::I, LoopId::IV) != has_both(LoopId::III, LoopId::II)
    }
}

/// For `i < j` in `[n-2]`: `D↓_<i+j> ∩ F↓_j = {(v_j, v_i)}` and
/// `D↑_<i+j> ∩ F↑_j = {(v_i, v_j)}`.
pub fn diagonal_meets_failure_once(n: usize, i: usize, j: usize) -> Result<bool> {
    check_prime(n)?;
    let (i, j) = (i.min(j), i.max(j));
    let m = (i + j) % n;
    let down = orient_all(&diagonal_sets(n), Direction::Down);
    let up = orient_all(&diagonal_sets_prime(n), Direction::Up);
    let failures = undirected_failure_sets(n);
    let f_down = orient_all(&failures, Direction::Down);
    let f_up = orient_all(&failures, Direction::Up);
    let lower: Vec<_> = down[m].intersection(&f_down[j]).copied().collect();
    let upper: Vec<_> = up[m].intersection(&f_up[j]).copied().collect();
    Ok(lower == [crate::Edge::new(j, i)] && upper == [crate::Edge::new(i, j)])
}
