//! Optimal binary double-node-erasure codes for a prime number of nodes.
//!
//! [`undirected`] holds two codes on undirected graphs, each with `2n - 1`
//! parity checks; [`directed`] combines their lower- and upper-triangle
//! versions into a code on directed graphs with redundancy `4n - 4`, which
//! meets the bound `2n*rho - rho^2` for `rho = 2`.

pub mod directed;
pub mod loops;
pub mod peel;
pub mod sets;
pub mod undirected;

use std::fmt;

pub use directed::{alg3_decode, alg3_decode_traced, cg4_decode, Alg3Trace, Cg4Code, DirectedSyndromes};
pub use loops::{LoopState, LoopStatus, SyndromeTables};
pub use peel::{peel, peel_decode, peel_decode_undirected, Peeled};
pub use sets::{parity_family, FamilyTag, LoopId, LoopParams, ParityFamily};
pub use undirected::{alg1_decode, alg2_decode, TwoLoopTrace, UndirectedCode, UndirectedVariant};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DoubleVariant {
    Cu1,
    Cu2,
    Cg4,
}

impl fmt::Display for DoubleVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DoubleVariant::Cu1 => "cu1",
            DoubleVariant::Cu2 => "cu2",
            DoubleVariant::Cg4 => "cg4",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleCodeParams {
    pub n: usize,
    pub variant: DoubleVariant,
}

impl DoubleCodeParams {
    pub fn new(n: usize, variant: DoubleVariant) -> Result<Self> {
        sets::check_prime(n)?;
        Ok(DoubleCodeParams { n, variant })
    }

    pub fn redundancy(&self) -> usize {
        match self.variant {
            DoubleVariant::Cg4 => 4 * self.n - 4,
            DoubleVariant::Cu1 | DoubleVariant::Cu2 => 2 * self.n - 1,
        }
    }
}
