//! One handle over every code the tool knows.

use clap::ValueEnum;
use graphcode::c1::C1Code;
use graphcode::c2::ArrayCode;
use graphcode::double::{Cg4Code, UndirectedCode, UndirectedVariant};
use graphcode::gflinalg::ConstraintSystem;
use graphcode::graph::GraphFile;
use graphcode::{redundancy_bound, Alphabet, DirectedGraph, Error, Gf, Result};
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CodeKind {
    C1,
    C2,
    Cg4,
    Cu1,
    Cu2,
}

impl CodeKind {
    pub fn name(self) -> &'static str {
        match self {
            CodeKind::C1 => "c1",
            CodeKind::C2 => "c2",
            CodeKind::Cg4 => "cg4",
            CodeKind::Cu1 => "cu1",
            CodeKind::Cu2 => "cu2",
        }
    }

    fn is_double(self) -> bool {
        matches!(self, CodeKind::Cg4 | CodeKind::Cu1 | CodeKind::Cu2)
    }
}

pub enum AnyCode {
    C1(C1Code),
    C2(ArrayCode),
    Cg4(Cg4Code),
    Undirected(UndirectedCode),
}

impl AnyCode {
    /// Validates the parameters before any work is done.
    pub fn new(kind: CodeKind, n: usize, rho: Option<usize>) -> Result<Self> {
        if kind.is_double() {
            if rho.is_some_and(|r| r != 2) {
                return Err(Error::Params(format!(
                    "{} corrects exactly 2 failures; drop --rho or pass --rho 2",
                    kind.name()
                )));
            }
            if n < 5 || !graphcode::double::sets::is_prime(n) {
                return Err(Error::Params("n must be prime ≥ 5".into()));
            }
        }
        let rho = || rho.ok_or_else(|| Error::Params(format!("--rho is required for {}", kind.name())));
        Ok(match kind {
            CodeKind::C1 => {
                let rho = rho()?;
                if rho == 0 || rho >= n {
                    return Err(Error::Params(format!("need 1 <= rho < n, got n={n}, rho={rho}")));
                }
                AnyCode::C1(C1Code::new(n, rho)?)
            }
            CodeKind::C2 => {
                let rho = rho()?;
                if rho == 0 || 2 * rho >= n {
                    return Err(Error::Params(format!("c2 needs 1 <= rho < n/2, got n={n}, rho={rho}")));
                }
                AnyCode::C2(ArrayCode::gabidulin(n, rho)?)
            }
            CodeKind::Cg4 => AnyCode::Cg4(Cg4Code::new(n)?),
            CodeKind::Cu1 => AnyCode::Undirected(UndirectedCode::new(n, UndirectedVariant::Cu1)?),
            CodeKind::Cu2 => AnyCode::Undirected(UndirectedCode::new(n, UndirectedVariant::Cu2)?),
        })
    }

    pub fn n(&self) -> usize {
        match self {
            AnyCode::C1(c) => c.n(),
            AnyCode::C2(c) => c.n(),
            AnyCode::Cg4(c) => c.n(),
            AnyCode::Undirected(c) => c.n(),
        }
    }

    pub fn rho(&self) -> usize {
        match self {
            AnyCode::C1(c) => c.rho(),
            AnyCode::C2(c) => c.rho(),
            _ => 2,
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            AnyCode::C1(c) => c.alphabet(),
            _ => Alphabet::Gf2,
        }
    }

    pub fn is_undirected(&self) -> bool {
        matches!(self, AnyCode::Undirected(_))
    }

    /// Number of labels in a codeword.
    pub fn cells(&self) -> usize {
        let n = self.n();
        if self.is_undirected() {
            n * (n + 1) / 2
        } else {
            n * n
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            AnyCode::C1(c) => c.dimension(),
            AnyCode::C2(c) => c.dimension(),
            AnyCode::Cg4(c) => c.dimension(),
            AnyCode::Undirected(c) => c.dimension(),
        }
    }

    pub fn redundancy(&self) -> usize {
        self.cells() - self.dimension()
    }

    /// Lower bound on the redundancy for `rho` node failures. For undirected
    /// graphs a failed node erases `n` labels instead of `2n - 1`.
    pub fn bound(&self) -> usize {
        let (n, rho) = (self.n(), self.rho());
        if self.is_undirected() {
            n * rho - rho * (rho - 1) / 2
        } else {
            redundancy_bound(n, rho)
        }
    }

    pub fn constraints(&self) -> ConstraintSystem {
        match self {
            AnyCode::C1(c) => c.constraints(),
            AnyCode::C2(c) => c.constraints(),
            AnyCode::Cg4(c) => c.constraints(),
            AnyCode::Undirected(c) => c.constraints(),
        }
    }

    /// Shape of the information block: row lengths.
    pub fn info_shape(&self) -> Vec<usize> {
        let n = self.n();
        match self {
            AnyCode::C1(c) => vec![c.k(); c.k()],
            AnyCode::C2(c) => vec![n; c.info_rows()],
            AnyCode::Cg4(_) => vec![n - 2; n - 2],
            AnyCode::Undirected(_) => (1..=n - 2).collect(),
        }
    }

    pub fn random_info(&self, rng: &mut impl Rng) -> Vec<Vec<Gf>> {
        let size = self.alphabet().field().size();
        self.info_shape().into_iter().map(|len| (0..len).map(|_| Gf(rng.gen_range(0..size) as u32)).collect()).collect()
    }

    /// Parses a headerless token grid shaped like [`Self::info_shape`].
    pub fn parse_info(&self, text: &str) -> Result<Vec<Vec<Gf>>> {
        let field = self.alphabet().field();
        let shape = self.info_shape();
        let lines: Vec<&str> = text.split_terminator('\n').collect();
        if lines.len() != shape.len() {
            return Err(Error::Parse(format!("information has {} rows, expected {}", lines.len(), shape.len())));
        }
        lines
            .iter()
            .zip(&shape)
            .enumerate()
            .map(|(r, (line, &len))| {
                let tokens: Vec<&str> = line.split(' ').collect();
                if tokens.len() != len {
                    return Err(Error::Parse(format!(
                        "information row {r} has {} tokens, expected {len}",
                        tokens.len()
                    )));
                }
                tokens.into_iter().map(|t| field.parse_hex(t)).collect()
            })
            .collect()
    }

    pub fn encode(&self, info: &[Vec<Gf>]) -> Result<GraphFile> {
        Ok(match self {
            AnyCode::C1(c) => GraphFile::Directed(c.encode(info)?.to_erased()),
            AnyCode::C2(c) => GraphFile::Directed(c.encode(info)?.to_erased()),
            AnyCode::Cg4(c) => GraphFile::Directed(c.encode(info)?.to_erased()),
            AnyCode::Undirected(c) => GraphFile::Undirected(c.encode(info)?.to_erased()),
        })
    }

    fn check_shape(&self, g: &GraphFile) -> Result<()> {
        let (n, alphabet, undirected) = match g {
            GraphFile::Directed(d) => (d.n(), d.alphabet(), false),
            GraphFile::Undirected(u) => (u.n(), u.alphabet(), true),
        };
        if undirected != self.is_undirected() {
            let want = if self.is_undirected() { "UGRAPH" } else { "GRAPH" };
            return Err(Error::Parse(format!("this code reads {want} files")));
        }
        if n != self.n() {
            return Err(Error::Dimension(format!("file has n={n}, code has n={}", self.n())));
        }
        if alphabet != self.alphabet() {
            return Err(Error::Params(format!("file alphabet is {alphabet}, code alphabet is {}", self.alphabet())));
        }
        Ok(())
    }

    pub fn decode(&self, g: &GraphFile, failed: &[usize]) -> Result<GraphFile> {
        self.check_shape(g)?;
        Ok(match (self, g) {
            (AnyCode::C1(c), GraphFile::Directed(d)) => GraphFile::Directed(c.decode(d, failed)?.to_erased()),
            (AnyCode::C2(c), GraphFile::Directed(d)) => GraphFile::Directed(c.decode(d, failed)?.to_erased()),
            (AnyCode::Cg4(c), GraphFile::Directed(d)) => GraphFile::Directed(c.decode(d, failed)?.to_erased()),
            (AnyCode::Undirected(c), GraphFile::Undirected(u)) => {
                GraphFile::Undirected(c.decode(u, failed)?.to_erased())
            }
            _ => unreachable!("shape checked above"),
        })
    }

    /// Whether a complete graph satisfies every constraint.
    pub fn verify(&self, g: &GraphFile) -> Result<bool> {
        self.check_shape(g)?;
        Ok(match (self, g) {
            (AnyCode::Undirected(c), GraphFile::Undirected(u)) => c.check(&u.clone().into_complete()?),
            (_, GraphFile::Directed(d)) => {
                let g: DirectedGraph = d.clone().into_complete()?;
                match self {
                    AnyCode::C1(c) => c.check(&g),
                    AnyCode::C2(c) => c.check(&g),
                    AnyCode::Cg4(c) => c.check(&g),
                    AnyCode::Undirected(_) => unreachable!(),
                }
            }
            _ => unreachable!("shape checked above"),
        })
    }
}
