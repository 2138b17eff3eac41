//! Complete labeled graphs with self loops, node failures and the text
//! file format.
//!
//! Adjacency convention: `a[i][j] = L(v_i, v_j)`, so row `i` of the
//! adjacency matrix is the out-neighborhood of `v_i` and column `i` its
//! in-neighborhood.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2m::{Field, Gf};

/// Symbol alphabet of a graph: bits, or elements of GF(2^m).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    Gf2,
    Gf2m(u32),
}

impl Alphabet {
    pub fn field(self) -> Field {
        match self {
            Alphabet::Gf2 => Field::binary(),
            Alphabet::Gf2m(m) => Field::new(m).expect("alphabet degree validated on construction"),
        }
    }

    pub fn from_field(field: Field) -> Self {
        match field.degree() {
            1 => Alphabet::Gf2,
            m => Alphabet::Gf2m(m),
        }
    }

    fn parse(tag: &str) -> Result<Self> {
        if tag == "gf2" {
            return Ok(Alphabet::Gf2);
        }
        let m = tag
            .strip_prefix("gf2m:")
            .and_then(|m| m.parse::<u32>().ok())
            .ok_or_else(|| Error::Parse(format!("unknown alphabet tag {tag:?}")))?;
        Field::new(m).map_err(|_| Error::Parse(format!("unknown alphabet tag {tag:?}")))?;
        Ok(Alphabet::Gf2m(m))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Gf2 => write!(f, "gf2"),
            Alphabet::Gf2m(m) => write!(f, "gf2m:{m}"),
        }
    }
}

/// A directed edge `(v_from, v_to)`. Ordering is lexicographic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
}

impl Edge {
    pub const fn new(from: usize, to: usize) -> Self {
        Edge { from, to }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(v{},v{})", self.from, self.to)
    }
}

impl From<(usize, usize)> for Edge {
    fn from((from, to): (usize, usize)) -> Self {
        Edge { from, to }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// From the larger index to the smaller one.
    Down,
    /// From the smaller index to the larger one.
    Up,
}

/// An undirected edge `<v_i, v_j>`; `<v_i, v_j>` and `<v_j, v_i>` are equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    hi: usize,
    lo: usize,
}

impl Pair {
    pub fn new(a: usize, b: usize) -> Self {
        Pair { hi: a.max(b), lo: a.min(b) }
    }

    pub fn hi(self) -> usize {
        self.hi
    }

    pub fn lo(self) -> usize {
        self.lo
    }

    pub fn contains(self, v: usize) -> bool {
        self.hi == v || self.lo == v
    }

    pub fn orient(self, dir: Direction) -> Edge {
        match dir {
            Direction::Down => Edge::new(self.hi, self.lo),
            Direction::Up => Edge::new(self.lo, self.hi),
        }
    }

    pub fn down(self) -> Edge {
        self.orient(Direction::Down)
    }

    pub fn up(self) -> Edge {
        self.orient(Direction::Up)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<v{},v{}>", self.hi, self.lo)
    }
}

pub fn orient_edge(a: usize, b: usize, dir: Direction) -> Edge {
    Pair::new(a, b).orient(dir)
}

/// A duplicate-free set of directed edges, iterated in lexicographic order.
pub type EdgeSet = BTreeSet<Edge>;

/// A duplicate-free set of undirected edges.
pub type PairSet = BTreeSet<Pair>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighborhoods {
    pub out: EdgeSet,
    pub incoming: EdgeSet,
    pub all: EdgeSet,
}

fn check_node(n: usize, i: usize) -> Result<()> {
    if i >= n {
        Err(Error::NodeIndex { index: i, n })
    } else {
        Ok(())
    }
}

/// Out-, in- and full neighborhood of `v_i` in the complete graph on `n` nodes.
pub fn neighborhoods(n: usize, i: usize) -> Result<Neighborhoods> {
    check_node(n, i)?;
    let out: EdgeSet = (0..n).map(|j| Edge::new(i, j)).collect();
    let incoming: EdgeSet = (0..n).map(|j| Edge::new(j, i)).collect();
    let all = out.union(&incoming).copied().collect();
    Ok(Neighborhoods { out, incoming, all })
}

/// Failure set `F_i = N_i`.
pub fn failure_set(n: usize, i: usize) -> Result<EdgeSet> {
    Ok(neighborhoods(n, i)?.all)
}

/// Undirected failure set: every pair touching `v_i`.
pub fn undirected_failure_set(n: usize, i: usize) -> Result<PairSet> {
    check_node(n, i)?;
    Ok((0..n).map(|j| Pair::new(i, j)).collect())
}

fn check_labels(field: Field, labels: &[Gf]) -> Result<()> {
    match labels.iter().find(|v| !field.contains(**v)) {
        Some(v) => Err(Error::Dimension(format!("label {v} outside GF(2^{})", field.degree()))),
        None => Ok(()),
    }
}

fn check_failed(n: usize, failed: &[usize]) -> Result<()> {
    failed.iter().try_for_each(|&t| check_node(n, t))
}

/// A complete directed graph with self loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    n: usize,
    alphabet: Alphabet,
    labels: Vec<Gf>,
}

impl DirectedGraph {
    pub fn zeros(n: usize, alphabet: Alphabet) -> Self {
        DirectedGraph { n, alphabet, labels: vec![Gf::ZERO; n * n] }
    }

    pub fn from_labels(n: usize, alphabet: Alphabet, labels: Vec<Gf>) -> Result<Self> {
        if labels.len() != n * n {
            return Err(Error::Dimension(format!("{} labels for n={n}", labels.len())));
        }
        check_labels(alphabet.field(), &labels)?;
        Ok(DirectedGraph { n, alphabet, labels })
    }

    pub fn from_fn(n: usize, alphabet: Alphabet, mut f: impl FnMut(usize, usize) -> Gf) -> Self {
        let labels = (0..n * n).map(|k| f(k / n, k % n)).collect();
        DirectedGraph { n, alphabet, labels }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn labels(&self) -> &[Gf] {
        &self.labels
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Gf {
        self.labels[i * self.n + j]
    }

    #[inline]
    pub fn label(&self, e: Edge) -> Gf {
        self.get(e.from, e.to)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Gf) {
        self.labels[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Gf> {
        self.labels[i * self.n..(i + 1) * self.n].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Gf> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    /// Labels of the edges in `edges`, in lexicographic edge order.
    pub fn edge_vector(&self, edges: &EdgeSet) -> Vec<Gf> {
        edges.iter().map(|&e| self.label(e)).collect()
    }

    /// Symbol-wise sum `self + other`.
    pub fn add(&self, other: &DirectedGraph) -> DirectedGraph {
        assert_eq!((self.n, self.alphabet), (other.n, other.alphabet));
        let labels = self.labels.iter().zip(&other.labels).map(|(&a, &b)| a + b).collect();
        DirectedGraph { n: self.n, alphabet: self.alphabet, labels }
    }

    /// Erases every edge in the neighborhood of each failed node.
    pub fn erase_nodes(&self, failed: &[usize]) -> Result<ErasedGraph> {
        check_failed(self.n, failed)?;
        let mut down = vec![false; self.n];
        failed.iter().for_each(|&t| down[t] = true);
        let cells = (0..self.n * self.n)
            .map(|k| {
                let (i, j) = (k / self.n, k % self.n);
                (!down[i] && !down[j]).then_some(self.labels[k])
            })
            .collect();
        Ok(ErasedGraph { n: self.n, alphabet: self.alphabet, cells })
    }

    pub fn to_erased(&self) -> ErasedGraph {
        ErasedGraph { n: self.n, alphabet: self.alphabet, cells: self.labels.iter().map(|&v| Some(v)).collect() }
    }

    pub fn to_text(&self) -> String {
        self.to_erased().to_text()
    }

    /// Parses a `GRAPH` file that has no unknown cells.
    pub fn parse(text: &str) -> Result<Self> {
        ErasedGraph::parse(text)?.into_complete()
    }
}

/// A directed graph whose cells are each known or unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErasedGraph {
    n: usize,
    alphabet: Alphabet,
    cells: Vec<Option<Gf>>,
}

impl ErasedGraph {
    pub fn unknown(n: usize, alphabet: Alphabet) -> Self {
        ErasedGraph { n, alphabet, cells: vec![None; n * n] }
    }

    pub fn from_cells(n: usize, alphabet: Alphabet, cells: Vec<Option<Gf>>) -> Result<Self> {
        if cells.len() != n * n {
            return Err(Error::Dimension(format!("{} cells for n={n}", cells.len())));
        }
        check_labels(alphabet.field(), &cells.iter().flatten().copied().collect::<Vec<_>>())?;
        Ok(ErasedGraph { n, alphabet, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn cells(&self) -> &[Option<Gf>] {
        &self.cells
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Option<Gf> {
        self.cells[i * self.n + j]
    }

    #[inline]
    pub fn cell(&self, e: Edge) -> Option<Gf> {
        self.get(e.from, e.to)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Option<Gf>) {
        self.cells[i * self.n + j] = v;
    }

    pub fn is_known(&self, e: Edge) -> bool {
        self.cell(e).is_some()
    }

    pub fn unknown_edges(&self) -> Vec<Edge> {
        (0..self.n * self.n).filter(|&k| self.cells[k].is_none()).map(|k| Edge::new(k / self.n, k % self.n)).collect()
    }

    pub fn unknown_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_none()).count()
    }

    /// Nodes whose full neighborhood is unknown, if the unknown cells are
    /// exactly the union of those neighborhoods.
    pub fn failed_nodes(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let failed: Vec<usize> =
            (0..n).filter(|&t| (0..n).all(|k| self.get(t, k).is_none() && self.get(k, t).is_none())).collect();
        let expected = (0..n * n).all(|k| {
            let (i, j) = (k / n, k % n);
            self.cells[k].is_none() == (failed.contains(&i) || failed.contains(&j))
        });
        expected.then_some(failed)
    }

    /// Fills unknown cells from `original`.
    pub fn overlay(&self, original: &DirectedGraph) -> DirectedGraph {
        let labels = self.cells.iter().zip(original.labels()).map(|(c, &o)| c.unwrap_or(o)).collect();
        DirectedGraph { n: self.n, alphabet: self.alphabet, labels }
    }

    pub fn into_complete(self) -> Result<DirectedGraph> {
        let unknown = self.unknown_count();
        if unknown > 0 {
            return Err(Error::Params(format!("graph still has {unknown} unknown cells")));
        }
        let labels = self.cells.into_iter().flatten().collect();
        Ok(DirectedGraph { n: self.n, alphabet: self.alphabet, labels })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("GRAPH n={} alphabet={}\n", self.n, self.alphabet);
        for i in 0..self.n {
            let line: Vec<String> = (0..self.n).map(|j| token(self.get(i, j))).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        match parse_graph_file(text)? {
            GraphFile::Directed(g) => Ok(g),
            GraphFile::Undirected(_) => Err(Error::Parse("expected GRAPH, found UGRAPH".into())),
        }
    }
}

fn token(c: Option<Gf>) -> String {
    c.map_or_else(|| "?".to_string(), Gf::to_hex)
}

/// Index of `<v_a, v_b>` in the packed lower triangle.
#[inline]
pub fn tri_index(a: usize, b: usize) -> usize {
    let (hi, lo) = (a.max(b), a.min(b));
    hi * (hi + 1) / 2 + lo
}

/// A complete undirected graph with self loops; one label per unordered pair.
/// The lower-triangle adjacency matrix has `a[i][j] = L<v_i,v_j>` for
/// `i >= j`; the upper-triangle matrix is its transpose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    alphabet: Alphabet,
    labels: Vec<Gf>,
}

impl UndirectedGraph {
    pub fn zeros(n: usize, alphabet: Alphabet) -> Self {
        UndirectedGraph { n, alphabet, labels: vec![Gf::ZERO; n * (n + 1) / 2] }
    }

    /// Labels in packed lower-triangle order (row `i` holds `<v_i, v_0..=i>`).
    pub fn from_labels(n: usize, alphabet: Alphabet, labels: Vec<Gf>) -> Result<Self> {
        if labels.len() != n * (n + 1) / 2 {
            return Err(Error::Dimension(format!("{} labels for an undirected graph with n={n}", labels.len())));
        }
        check_labels(alphabet.field(), &labels)?;
        Ok(UndirectedGraph { n, alphabet, labels })
    }

    pub fn labels(&self) -> &[Gf] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> Gf {
        self.labels[tri_index(a, b)]
    }

    #[inline]
    pub fn label(&self, p: Pair) -> Gf {
        self.get(p.hi, p.lo)
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize, v: Gf) {
        self.labels[tri_index(a, b)] = v;
    }

    /// Entry of the lower-triangle adjacency matrix.
    pub fn lower(&self, i: usize, j: usize) -> Gf {
        if i >= j {
            self.get(i, j)
        } else {
            Gf::ZERO
        }
    }

    /// Entry of the upper-triangle adjacency matrix.
    pub fn upper(&self, i: usize, j: usize) -> Gf {
        self.lower(j, i)
    }

    pub fn erase_nodes(&self, failed: &[usize]) -> Result<ErasedUndirectedGraph> {
        check_failed(self.n, failed)?;
        let mut g = self.to_erased();
        for &t in failed {
            for k in 0..self.n {
                g.set(t, k, None);
            }
        }
        Ok(g)
    }

    pub fn to_erased(&self) -> ErasedUndirectedGraph {
        ErasedUndirectedGraph {
            n: self.n,
            alphabet: self.alphabet,
            cells: self.labels.iter().map(|&v| Some(v)).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        self.to_erased().to_text()
    }

    pub fn parse(text: &str) -> Result<Self> {
        ErasedUndirectedGraph::parse(text)?.into_complete()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErasedUndirectedGraph {
    n: usize,
    alphabet: Alphabet,
    cells: Vec<Option<Gf>>,
}

impl ErasedUndirectedGraph {
    pub fn from_cells(n: usize, alphabet: Alphabet, cells: Vec<Option<Gf>>) -> Result<Self> {
        if cells.len() != n * (n + 1) / 2 {
            return Err(Error::Dimension(format!("{} cells for an undirected graph with n={n}", cells.len())));
        }
        check_labels(alphabet.field(), &cells.iter().flatten().copied().collect::<Vec<_>>())?;
        Ok(ErasedUndirectedGraph { n, alphabet, cells })
    }

    pub fn cells(&self) -> &[Option<Gf>] {
        &self.cells
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> Option<Gf> {
        self.cells[tri_index(a, b)]
    }

    #[inline]
    pub fn cell(&self, p: Pair) -> Option<Gf> {
        self.get(p.hi, p.lo)
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize, v: Option<Gf>) {
        self.cells[tri_index(a, b)] = v;
    }

    pub fn unknown_pairs(&self) -> Vec<Pair> {
        (0..self.n).flat_map(|i| (0..=i).map(move |j| Pair::new(i, j))).filter(|&p| self.cell(p).is_none()).collect()
    }

    pub fn unknown_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_none()).count()
    }

    pub fn failed_nodes(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let failed: Vec<usize> = (0..n).filter(|&t| (0..n).all(|k| self.get(t, k).is_none())).collect();
        let expected =
            (0..n).all(|i| (0..=i).all(|j| self.get(i, j).is_none() == (failed.contains(&i) || failed.contains(&j))));
        expected.then_some(failed)
    }

    pub fn into_complete(self) -> Result<UndirectedGraph> {
        let unknown = self.unknown_count();
        if unknown > 0 {
            return Err(Error::Params(format!("graph still has {unknown} unknown cells")));
        }
        let labels = self.cells.into_iter().flatten().collect();
        Ok(UndirectedGraph { n: self.n, alphabet: self.alphabet, labels })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("UGRAPH n={} alphabet={}\n", self.n, self.alphabet);
        for i in 0..self.n {
            let line: Vec<String> = (0..=i).map(|j| token(self.get(i, j))).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        match parse_graph_file(text)? {
            GraphFile::Undirected(g) => Ok(g),
            GraphFile::Directed(_) => Err(Error::Parse("expected UGRAPH, found GRAPH".into())),
        }
    }
}

/// Contents of a graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFile {
    Directed(ErasedGraph),
    Undirected(ErasedUndirectedGraph),
}

impl GraphFile {
    pub fn n(&self) -> usize {
        match self {
            GraphFile::Directed(g) => g.n(),
            GraphFile::Undirected(g) => g.n(),
        }
    }

    /// Marks every cell touching a listed node unknown; cells that were
    /// already unknown stay so.
    pub fn erase_nodes(&self, nodes: &[usize]) -> Result<GraphFile> {
        let n = self.n();
        check_failed(n, nodes)?;
        let hit = |a: usize, b: usize| nodes.contains(&a) || nodes.contains(&b);
        Ok(match self {
            GraphFile::Directed(g) => {
                let mut g = g.clone();
                for (a, b) in (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| hit(a, b)) {
                    g.set(a, b, None);
                }
                GraphFile::Directed(g)
            }
            GraphFile::Undirected(g) => {
                let mut g = g.clone();
                for (a, b) in (0..n).flat_map(|a| (0..=a).map(move |b| (a, b))).filter(|&(a, b)| hit(a, b)) {
                    g.set(a, b, None);
                }
                GraphFile::Undirected(g)
            }
        })
    }

    pub fn to_text(&self) -> String {
        match self {
            GraphFile::Directed(g) => g.to_text(),
            GraphFile::Undirected(g) => g.to_text(),
        }
    }
}

fn parse_header(line: &str) -> Result<(bool, usize, Alphabet)> {
    let mut parts = line.split(' ');
    let kind = parts.next().unwrap_or_default();
    let undirected = match kind {
        "GRAPH" => false,
        "UGRAPH" => true,
        other => return Err(Error::Parse(format!("unknown header {other:?}"))),
    };
    let n = parts
        .next()
        .and_then(|t| t.strip_prefix("n="))
        .and_then(|t| t.parse::<usize>().ok())
        .ok_or_else(|| Error::Parse("header must give n=<nodes>".into()))?;
    let alphabet = parts
        .next()
        .and_then(|t| t.strip_prefix("alphabet="))
        .ok_or_else(|| Error::Parse("header must give alphabet=<tag>".into()))
        .and_then(Alphabet::parse)?;
    if parts.next().is_some() {
        return Err(Error::Parse("trailing header fields".into()));
    }
    Ok((undirected, n, alphabet))
}

/// Parses a `GRAPH` or `UGRAPH` file. Tokens are single-space separated,
/// lines end in LF, `?` marks an unknown cell.
pub fn parse_graph_file(text: &str) -> Result<GraphFile> {
    let mut lines = text.split_terminator('\n');
    let (undirected, n, alphabet) = parse_header(lines.next().ok_or_else(|| Error::Parse("empty file".into()))?)?;
    let field = alphabet.field();
    let mut cells = Vec::new();
    let mut rows = 0;
    for (i, line) in lines.enumerate() {
        if i >= n {
            return Err(Error::Parse(format!("more than {n} rows")));
        }
        let want = if undirected { i + 1 } else { n };
        let tokens: Vec<&str> = line.split(' ').collect();
        if tokens.len() != want {
            return Err(Error::Parse(format!("row {i} has {} tokens, expected {want}", tokens.len())));
        }
        for t in tokens {
            cells.push(if t == "?" { None } else { Some(field.parse_hex(t)?) });
        }
        rows += 1;
    }
    if rows != n {
        return Err(Error::Parse(format!("{rows} rows, expected {n}")));
    }
    Ok(if undirected {
        GraphFile::Undirected(ErasedUndirectedGraph { n, alphabet, cells })
    } else {
        GraphFile::Directed(ErasedGraph { n, alphabet, cells })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample(n: usize) -> DirectedGraph {
        DirectedGraph::from_fn(n, Alphabet::Gf2m(4), |i, j| Gf(((i * 7 + j * 3) % 16) as u32))
    }

    #[test]
    fn neighborhood_examples() {
        let nb = neighborhoods(3, 0).unwrap();
        assert_eq!(nb.out.iter().copied().collect::<Vec<_>>(), vec![Edge::new(0, 0), Edge::new(0, 1), Edge::new(0, 2)]);
        let nb = neighborhoods(7, 2).unwrap();
        assert_eq!(nb.incoming, (0..7).map(|j| Edge::new(j, 2)).collect());
        assert!(matches!(neighborhoods(3, 3), Err(Error::NodeIndex { index: 3, n: 3 })));
        for n in 1..8 {
            for i in 0..n {
                let nb = neighborhoods(n, i).unwrap();
                assert_eq!(nb.all.len(), 2 * n - 1);
                let both: Vec<_> = nb.out.intersection(&nb.incoming).copied().collect();
                assert_eq!(both, vec![Edge::new(i, i)]);
            }
        }
    }

    #[test]
    fn pairwise_failure_sets_have_4n_minus_4_edges() {
        for n in 2..9 {
            for i in 0..n {
                for j in (i + 1)..n {
                    let u: EdgeSet = failure_set(n, i).unwrap().union(&failure_set(n, j).unwrap()).copied().collect();
                    assert_eq!(u.len(), 4 * n - 4);
                }
            }
        }
    }

    #[test]
    fn erase_nodes_examples() {
        let g = sample(7);
        assert_eq!(g.erase_nodes(&[]).unwrap().unknown_count(), 0);
        assert_eq!(g.erase_nodes(&[1, 3]).unwrap().unknown_count(), 24);
        assert_eq!(g.erase_nodes(&(0..7).collect::<Vec<_>>()).unwrap().unknown_count(), 49);
        let e = g.erase_nodes(&[1, 3]).unwrap();
        assert_eq!(e.failed_nodes(), Some(vec![1, 3]));
        assert_eq!(e.overlay(&g), g);
        assert!(g.erase_nodes(&[7]).is_err());
    }

    #[test]
    fn edge_vector_is_lexicographic() {
        let g = sample(7);
        let u: EdgeSet = [(2, 4), (1, 0), (3, 6), (3, 2)].into_iter().map(Edge::from).collect();
        assert_eq!(g.edge_vector(&u), vec![g.get(1, 0), g.get(2, 4), g.get(3, 2), g.get(3, 6)]);
        assert!(g.edge_vector(&EdgeSet::new()).is_empty());
        let g3 = sample(3);
        assert_eq!(g3.edge_vector(&neighborhoods(3, 0).unwrap().out), g3.row(0));
    }

    #[test]
    fn orientation() {
        assert_eq!(orient_edge(2, 5, Direction::Down), Edge::new(5, 2));
        assert_eq!(orient_edge(2, 5, Direction::Up), Edge::new(2, 5));
        assert_eq!(orient_edge(4, 4, Direction::Down), orient_edge(4, 4, Direction::Up));
        assert_eq!(Pair::new(2, 5), Pair::new(5, 2));
    }

    #[test]
    fn text_format() {
        let z = DirectedGraph::zeros(2, Alphabet::Gf2);
        assert_eq!(z.to_text(), "GRAPH n=2 alphabet=gf2\n0 0\n0 0\n");
        let mut e = sample(3).to_erased();
        e.set(1, 2, None);
        let text = e.to_text();
        assert_eq!(text, "GRAPH n=3 alphabet=gf2m:4\n0 3 6\n7 a ?\ne 1 4\n");
        let back = ErasedGraph::parse(&text).unwrap();
        assert_eq!(back.get(1, 2), None);
        assert_eq!(back, e);
        let mut u = UndirectedGraph::zeros(3, Alphabet::Gf2);
        u.set(0, 2, Gf(1));
        assert_eq!(u.to_text(), "UGRAPH n=3 alphabet=gf2\n0\n0 0\n1 0 0\n");
        assert_eq!(UndirectedGraph::parse(&u.to_text()).unwrap(), u);
    }

    #[test]
    fn parse_rejects_malformed() {
        for bad in [
            "GRAPH n=2 alphabet=gf2\n0 0\n0\n",
            "GRAPH n=2 alphabet=gf3\n0 0\n0 0\n",
            "GRAPH n=2 alphabet=gf2\n0 0\n0 x\n",
            "GRAPH n=2 alphabet=gf2\n0 0\n0 2\n",
            "GRAPH n=2 alphabet=gf2\n0 0\n",
            "GRAPH n=2 alphabet=gf2\n0  0\n0 0\n",
            "GRAPH n=2 alphabet=gf2\n0 0\n0 0\n0 0\n",
            "DIGRAPH n=2 alphabet=gf2\n0 0\n0 0\n",
            "UGRAPH n=2 alphabet=gf2\n0 0\n0 0\n",
            "",
        ] {
            assert!(parse_graph_file(bad).is_err(), "{bad:?}");
        }
        assert!(DirectedGraph::parse("GRAPH n=1 alphabet=gf2\n?\n").is_err());
    }

    proptest! {
        #[test]
        fn text_round_trip(n in 1usize..7, m in 1u32..9, seed in prop::collection::vec(any::<u32>(), 49), mask in prop::collection::vec(any::<bool>(), 49)) {
            let f = Field::new(m).unwrap();
            let cells: Vec<Option<Gf>> = (0..n * n)
                .map(|k| (!mask[k]).then_some(Gf(seed[k] % f.size() as u32)))
                .collect();
            let g = ErasedGraph::from_cells(n, Alphabet::from_field(f), cells).unwrap();
            let text = g.to_text();
            prop_assert_eq!(parse_graph_file(&text).unwrap(), GraphFile::Directed(g));
            prop_assert_eq!(parse_graph_file(&text).unwrap().to_text(), text);
        }

        #[test]
        fn erase_then_overlay_is_identity(n in 1usize..8, failed in prop::collection::btree_set(0usize..8, 0..4), seed in any::<u32>()) {
            let g = DirectedGraph::from_fn(n, Alphabet::Gf2, |i, j| Gf((seed >> ((i * n + j) % 32)) & 1));
            let failed: Vec<usize> = failed.into_iter().filter(|&t| t < n).collect();
            let e = g.erase_nodes(&failed).unwrap();
            let r = failed.len();
            prop_assert_eq!(e.unknown_count(), 2 * n * r - r * r);
            prop_assert_eq!(e.overlay(&g), g);
        }
    }
}
