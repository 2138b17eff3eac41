//! The s1/s2 correction loops shared by the undirected and directed decoders.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2m::Gf;
use crate::graph::{tri_index, Direction, Edge, Pair};

use super::sets::{LoopId, LoopParams};

/// Syndromes of one triangle: `S^_h` for the neighborhood sets and `D^_m`
/// for the diagonal sets, each the XOR of the known labels of the set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SyndromeTables {
    pub neighborhood: Vec<Gf>,
    pub diagonal: Vec<Gf>,
}

impl SyndromeTables {
    pub fn is_zero(&self) -> bool {
        self.neighborhood.iter().chain(&self.diagonal).all(|v| v.is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoopStatus {
    Running,
    Waiting(Edge),
    Done,
}

impl fmt::Display for LoopStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopStatus::Running => f.write_str("running"),
            LoopStatus::Waiting(e) => write!(f, "waiting for {e}"),
            LoopStatus::Done => f.write_str("done"),
        }
    }
}

/// Roles of the nodes in a loop: it alternates between `p` (the node whose
/// diagonal is followed) and `q`, and stops at the redundancy node `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Roles {
    pub p: usize,
    pub q: usize,
    pub z: usize,
    pub dir: Direction,
}

pub(crate) fn roles(id: LoopId, params: &LoopParams) -> Roles {
    let (i, j, n) = (params.i, params.j, params.n);
    match id {
        LoopId::I => Roles { p: j, q: i, z: n - 1, dir: Direction::Down },
        LoopId::II => Roles { p: i, q: j, z: n - 1, dir: Direction::Down },
        LoopId::III => Roles { p: j, q: i, z: n - 2, dir: Direction::Up },
        LoopId::IV => Roles { p: i, q: j, z: n - 2, dir: Direction::Up },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Layout {
    /// `n * n` cells, one per directed edge.
    Directed,
    /// Packed lower triangle, one cell per pair.
    Undirected,
}

/// Working copy of the labels plus the syndromes the loops read.
#[derive(Clone, Debug)]
pub(crate) struct Board {
    pub n: usize,
    pub layout: Layout,
    pub cells: Vec<Option<Gf>>,
    /// Lower-triangle (down) and upper-triangle (up) syndromes.
    pub down: SyndromeTables,
    pub up: SyndromeTables,
    /// Undirected decoders hand the self loops over through `S^_{n-2}`;
    /// the directed one waits for the other loop instead.
    pub self_loop_parity: bool,
    pub corrected: [Vec<Edge>; 4],
}

impl Board {
    pub fn index(&self, e: Edge) -> usize {
        match self.layout {
            Layout::Directed => e.from * self.n + e.to,
            Layout::Undirected => tri_index(e.from, e.to),
        }
    }

    pub fn get(&self, e: Edge) -> Option<Gf> {
        self.cells[self.index(e)]
    }

    /// Writes a corrected label. A cell that is already known must agree.
    pub fn correct(&mut self, e: Edge, v: Gf) -> Result<bool> {
        let k = self.index(e);
        match self.cells[k] {
            Some(old) if old == v => Ok(false),
            Some(_) => Err(Error::NotCodeword(format!("recovered {e} twice with different labels"))),
            None => {
                self.cells[k] = Some(v);
                Ok(true)
            }
        }
    }

    fn tables(&self, dir: Direction) -> &SyndromeTables {
        match dir {
            Direction::Down => &self.down,
            Direction::Up => &self.up,
        }
    }
}

/// One resumable correction loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopState {
    pub id: LoopId,
    pub t: usize,
    pub s1: usize,
    pub s2: usize,
    pub b_prev: Gf,
    pub status: LoopStatus,
}

impl LoopState {
    pub fn new(id: LoopId) -> Self {
        LoopState { id, t: 0, s1: 0, s2: 0, b_prev: Gf::ZERO, status: LoopStatus::Running }
    }

    fn advance(&mut self, params: &LoopParams) {
        self.t += 1;
        self.status = if self.t < params.iterations(self.id) { LoopStatus::Running } else { LoopStatus::Done };
    }

    fn set(&self, board: &mut Board, e: Edge, v: Gf) -> Result<()> {
        if board.correct(e, v)? {
            board.corrected[self.id as usize].push(e);
        }
        Ok(())
    }

    /// Runs one iteration, or retries a pending wait. Returns whether the
    /// loop made progress.
    pub(crate) fn step(&mut self, params: &LoopParams, board: &mut Board) -> Result<bool> {
        if let LoopStatus::Waiting(e) = self.status {
            return Ok(match board.get(e) {
                Some(v) => {
                    self.b_prev = v;
                    self.advance(params);
                    true
                }
                None => false,
            });
        }
        if self.status == LoopStatus::Done || self.t >= params.iterations(self.id) {
            self.status = LoopStatus::Done;
            return Ok(false);
        }
        let Roles { p, q, z, dir } = roles(self.id, params);
        let n = params.n;
        let edge = |a: usize, b: usize| Pair::new(a, b).orient(dir);
        self.s1 = self.id.s1(n, params.d, self.t);
        self.s2 = (self.s1 + p) % n;
        let (s1, s2) = (self.s1, self.s2);
        let diag = board.tables(dir).diagonal[s2];
        if s1 != params.i && s1 != params.j && s1 != z {
            let first = diag + self.b_prev;
            self.set(board, edge(s1, p), first)?;
            let second = board.tables(dir).neighborhood[s1] + first;
            self.set(board, edge(s1, q), second)?;
            self.b_prev = second;
        } else if s1 == p {
            let own = diag + self.b_prev;
            self.set(board, edge(p, p), own)?;
            if board.self_loop_parity {
                let other = board.tables(dir).neighborhood[n - 2] + own;
                self.set(board, edge(q, q), other)?;
                self.b_prev = other;
            } else if let Some(v) = board.get(edge(q, q)) {
                self.b_prev = v;
            } else {
                self.status = LoopStatus::Waiting(edge(q, q));
                return Ok(true);
            }
        } else if s1 == z {
            self.set(board, edge(z, p), diag + self.b_prev)?;
        }
        self.advance(params);
        Ok(true)
    }
}

/// Runs the loops round-robin, one step each, until all are done.
pub(crate) fn run_round_robin(params: &LoopParams, board: &mut Board, ids: &[LoopId]) -> Result<Vec<LoopState>> {
    let mut states: Vec<LoopState> = ids.iter().map(|&id| LoopState::new(id)).collect();
    loop {
        let mut progress = false;
        for s in states.iter_mut().filter(|s| s.status != LoopStatus::Done) {
            progress |= s.step(params, board)?;
        }
        if states.iter().all(|s| s.status == LoopStatus::Done) {
            return Ok(states);
        }
        if !progress {
            let blocked: Vec<String> = states.iter().map(|s| format!("loop {} {}", s.id, s.status)).collect();
            return Err(Error::Deadlock(blocked.join(", ")));
        }
    }
}

/// Runs each loop to completion before starting the next.
pub(crate) fn run_sequential(params: &LoopParams, board: &mut Board, ids: &[LoopId]) -> Result<Vec<LoopState>> {
    ids.iter()
        .map(|&id| {
            let mut s = LoopState::new(id);
            while s.status != LoopStatus::Done {
                if !s.step(params, board)? && s.status != LoopStatus::Done {
                    return Err(Error::Deadlock(format!("loop {id} {}", s.status)));
                }
            }
            Ok(s)
        })
        .collect()
}
