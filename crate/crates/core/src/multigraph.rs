//! Undirected loopless multigraphs, their Laplacians and divisor class groups.
//!
//! Nodes are named `1..=n` in text and reports and indexed `0..n` internally.
//! Node `n` is the distinguished sink throughout the crate.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::{determinant, smith_normal_form, IntMatrix, SmithForm};
use crate::monomials::parse_field;

/// Largest node count supported; splits and flags are indexed by bitmasks.
pub const MAX_NODES: usize = 24;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    mult: Vec<u32>,
}

impl Multigraph {
    /// Builds a graph from a symmetric multiplicity matrix with zero diagonal.
    /// The graph must be connected and have at least two nodes.
    pub fn new(mult: Vec<Vec<u32>>) -> Result<Self> {
        let n = mult.len();
        if n < 2 {
            return Err(Error::InvalidGraph(format!("need at least 2 nodes, got {n}")));
        }
        if n > MAX_NODES {
            return Err(Error::InvalidGraph(format!("at most {MAX_NODES} nodes supported")));
        }
        if mult.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGraph("multiplicity matrix is not square".into()));
        }
        for i in 0..n {
            if mult[i][i] != 0 {
                return Err(Error::InvalidGraph(format!("loop at node {}", i + 1)));
            }
            for j in 0..i {
                if mult[i][j] != mult[j][i] {
                    return Err(Error::InvalidGraph(format!(
                        "multiplicity matrix not symmetric at ({}, {})",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        let g = Multigraph { n, mult: mult.into_iter().flatten().collect() };
        if !g.is_connected_on(g.all_nodes()) {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(g)
    }

    /// Builds a graph on `n` nodes from `(i, j, multiplicity)` triples with 1-based nodes.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut mult = vec![vec![0u32; n]; n];
        for &(i, j, m) in edges {
            if i == 0 || j == 0 || i > n || j > n || i == j {
                return Err(Error::InvalidGraph(format!("bad edge {i}-{j} on {n} nodes")));
            }
            mult[i - 1][j - 1] += m;
            mult[j - 1][i - 1] += m;
        }
        Multigraph::new(mult)
    }

    /// Complete graph with every pair joined by `m` edges.
    pub fn complete(n: usize, m: u32) -> Result<Self> {
        Multigraph::new(
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { 0 } else { m }).collect())
                .collect(),
        )
    }

    /// Cycle `1 - 2 - ... - n - 1` with simple edges.
    pub fn cycle(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1, 1)).collect();
        Multigraph::from_edges(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Multiplicity `u_ij` between zero-based nodes `i` and `j`.
    pub fn mult(&self, i: usize, j: usize) -> u32 {
        self.mult[i * self.n + j]
    }

    pub fn multiplicities(&self) -> Vec<Vec<u32>> {
        self.mult.chunks(self.n).map(<[u32]>::to_vec).collect()
    }

    /// Degree `d_i` of zero-based node `i`, counting multiplicity.
    pub fn degree(&self, i: usize) -> i64 {
        (0..self.n).map(|j| self.mult(i, j) as i64).sum()
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> i64 {
        (0..self.n).map(|i| self.degree(i)).sum::<i64>() / 2
    }

    /// Genus `e - n + 1` (the cyclomatic number).
    pub fn genus(&self) -> i64 {
        self.edge_count() - self.n as i64 + 1
    }

    pub fn is_saturated(&self) -> bool {
        self.first_non_adjacent_pair().is_none()
    }

    /// The first pair of distinct nodes (1-based) without an edge, if any.
    pub fn first_non_adjacent_pair(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .find(|&(i, j)| self.mult(i, j) == 0)
            .map(|(i, j)| (i + 1, j + 1))
    }

    pub(crate) fn all_nodes(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    /// Sum of multiplicities from node `i` into the node set `set`.
    pub(crate) fn edges_into(&self, i: usize, set: u64) -> i64 {
        (0..self.n)
            .filter(|&j| set >> j & 1 == 1)
            .map(|j| self.mult(i, j) as i64)
            .sum()
    }

    /// Whether the subgraph induced on the (nonempty) node set is connected.
    pub fn is_connected_on(&self, set: u64) -> bool {
        if set == 0 {
            return false;
        }
        let start = set.trailing_zeros() as usize;
        let mut seen = 1u64 << start;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..self.n {
                let bit = 1u64 << j;
                if set & bit != 0 && seen & bit == 0 && self.mult(i, j) > 0 {
                    seen |= bit;
                    queue.push_back(j);
                }
            }
        }
        seen == set
    }

    pub fn laplacian_i64(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if i == j { self.degree(i) } else { -(self.mult(i, j) as i64) })
                    .collect()
            })
            .collect()
    }

    /// Laplacian: node degrees on the diagonal, `-u_ij` off it.
    pub fn laplacian(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.laplacian_i64()).expect("square by construction")
    }

    /// `Λ_G · v` for an integer vector `v`.
    pub fn apply_laplacian(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| {
                let d = self.degree(i) * v[i];
                d - (0..self.n).map(|j| self.mult(i, j) as i64 * v[j]).sum::<i64>()
            })
            .collect()
    }

    /// Number of spanning trees, via the Matrix-Tree theorem on the reduced Laplacian.
    pub fn tree_count(&self) -> BigInt {
        let reduced = self.laplacian().minor(self.n - 1, self.n - 1);
        determinant(&reduced).expect("square minor")
    }

    /// Splits whose two sides both induce connected subgraphs.
    pub fn connected_splits(&self) -> Vec<Split> {
        splits(self.n)
            .expect("n >= 2 by construction")
            .into_iter()
            .filter(|s| self.is_connected_on(s.side_i()) && self.is_connected_on(s.side_j()))
            .collect()
    }

    /// Acyclic orientations of the underlying simple graph whose only sink is
    /// `sink` (1-based).
    ///
    /// Inclusion-exclusion over sink sets: `a(S)` counts acyclic orientations of
    /// the subgraph induced on `S`, and orientations whose sinks contain an
    /// independent set `Z` are counted by `a(V \ Z)`.
    pub fn acyclic_orientations_unique_sink(&self, sink: usize) -> Result<u64> {
        if sink == 0 || sink > self.n {
            return Err(Error::InvalidArgument(format!("sink {sink} out of range 1..={}", self.n)));
        }
        let q = sink - 1;
        let n = self.n;
        let adj: Vec<u64> = (0..n)
            .map(|i| (0..n).filter(|&j| self.mult(i, j) > 0).fold(0u64, |m, j| m | 1 << j))
            .collect();
        let independent = |set: u64| {
            let mut rest = set;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if adj[i] & set != 0 {
                    return false;
                }
            }
            true
        };
        let full = self.all_nodes() as usize;
        let mut acyclic = vec![0i128; full + 1];
        acyclic[0] = 1;
        for s in 1..=full {
            let mut total = 0i128;
            // nonempty subsets I of s
            let mut sub = s;
            while sub != 0 {
                if independent(sub as u64) {
                    let term = acyclic[s & !sub];
                    if sub.count_ones() % 2 == 1 {
                        total += term;
                    } else {
                        total -= term;
                    }
                }
                sub = (sub - 1) & s;
            }
            acyclic[s] = total;
        }
        let others = full & !(1usize << q);
        let mut count = 0i128;
        let mut sub = others;
        loop {
            let z = sub | 1 << q;
            if independent(z as u64) {
                let term = acyclic[full & !z];
                if sub.count_ones() % 2 == 0 {
                    count += term;
                } else {
                    count -= term;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
        u64::try_from(count).map_err(|_| Error::Overflow("acyclic orientation count"))
    }

    /// Divisor class group data from the Smith form of the Laplacian.
    pub fn divisor_class_group(&self) -> DivisorClassGroup {
        DivisorClassGroup::new(&self.laplacian())
    }

    /// Swaps node `i` (1-based) with node `n`, making `i` the distinguished sink.
    pub fn with_sink(&self, i: usize) -> Result<Multigraph> {
        if i == 0 || i > self.n {
            return Err(Error::InvalidArgument(format!("sink {i} out of range 1..={}", self.n)));
        }
        let a = i - 1;
        let b = self.n - 1;
        let perm = |k: usize| if k == a { b } else if k == b { a } else { k };
        let mult = (0..self.n)
            .map(|r| (0..self.n).map(|c| self.mult(perm(r), perm(c))).collect())
            .collect();
        Multigraph::new(mult)
    }

    /// Parses the graph text format: `nodes <n>` followed by `edge <i> <j> <mult>` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut mult: Vec<Vec<u32>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let keyword = parts.next().unwrap_or_default();
            match (keyword, n) {
                ("nodes", None) => {
                    let k: usize = parse_field(parts.next(), lineno, "node count")?;
                    if !(2..=MAX_NODES).contains(&k) {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("node count must be in 2..={MAX_NODES}"),
                        });
                    }
                    n = Some(k);
                    mult = vec![vec![0; k]; k];
                }
                ("nodes", Some(_)) => {
                    return Err(Error::Parse { line: lineno, msg: "duplicate nodes line".into() })
                }
                ("edge", Some(k)) => {
                    let i: usize = parse_field(parts.next(), lineno, "edge endpoint")?;
                    let j: usize = parse_field(parts.next(), lineno, "edge endpoint")?;
                    let m: u32 = parse_field(parts.next(), lineno, "multiplicity")?;
                    if !(1 <= i && i < j && j <= k) || m == 0 {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("edge must satisfy 1 <= i < j <= {k} and mult >= 1"),
                        });
                    }
                    if mult[i - 1][j - 1] != 0 {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("duplicate edge {i} {j}"),
                        });
                    }
                    mult[i - 1][j - 1] = m;
                    mult[j - 1][i - 1] = m;
                }
                ("edge", None) => {
                    return Err(Error::Parse { line: lineno, msg: "edge before nodes".into() })
                }
                (other, _) => {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("unknown keyword {other}"),
                    })
                }
            }
            if parts.next().is_some() {
                return Err(Error::Parse { line: lineno, msg: "trailing tokens".into() });
            }
        }
        if n.is_none() {
            return Err(Error::Parse { line: 0, msg: "missing nodes line".into() });
        }
        Multigraph::new(mult)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("nodes {}\n", self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.mult(i, j) > 0 {
                    s.push_str(&format!("edge {} {} {}\n", i + 1, j + 1, self.mult(i, j)));
                }
            }
        }
        s
    }
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph({:?})", self.multiplicities())
    }
}

/// An unordered split `(I, J)` of `[n]`, stored with `n ∈ J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Split {
    n: usize,
    side_i: u64,
}

impl Split {
    /// The split whose side avoiding node `n` is the bitmask `side_i`.
    pub fn new(n: usize, side_i: u64) -> Result<Self> {
        let limit = 1u64 << (n - 1);
        if side_i == 0 || side_i >= limit {
            return Err(Error::InvalidArgument(format!(
                "split side {side_i:#b} must be a nonempty subset of [{}]",
                n - 1
            )));
        }
        Ok(Split { n, side_i })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Bitmask of the side not containing node `n`.
    pub fn side_i(&self) -> u64 {
        self.side_i
    }

    /// Bitmask of the side containing node `n`.
    pub fn side_j(&self) -> u64 {
        ((1u64 << self.n) - 1) & !self.side_i
    }

    /// 1-based node lists of both sides.
    pub fn sides(&self) -> (Vec<usize>, Vec<usize>) {
        (mask_nodes(self.side_i), mask_nodes(self.side_j()))
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.sides();
        let join = |v: Vec<usize>| v.iter().map(ToString::to_string).collect::<String>();
        write!(f, "{}|{}", join(i), join(j))
    }
}

/// 1-based members of a node bitmask.
pub fn mask_nodes(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// All `2^(n-1) - 1` splits of `[n]`, ordered by the bitmask of the side avoiding `n`.
pub fn splits(n: usize) -> Result<Vec<Split>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("splits need n >= 2, got {n}")));
    }
    if n > MAX_NODES {
        return Err(Error::InvalidArgument(format!("at most {MAX_NODES} nodes supported")));
    }
    Ok((1..1u64 << (n - 1)).map(|side_i| Split { n, side_i }).collect())
}

/// `Div(G) = Z^n / image(Λ_G)`, split as degree plus the finite group `Div_0(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorClassGroup {
    /// Invariant factors greater than one.
    pub invariant_factors: Vec<BigInt>,
    #[serde(skip)]
    projection: Vec<Vec<BigInt>>,
    #[serde(skip)]
    small: Option<Vec<(Vec<i64>, i64)>>,
    #[serde(skip)]
    smith: SmithForm,
}

impl DivisorClassGroup {
    pub fn new(laplacian: &IntMatrix) -> Self {
        let smith = smith_normal_form(laplacian);
        let mut invariant_factors = Vec::new();
        let mut projection: Vec<Vec<BigInt>> = Vec::new();
        for (i, d) in smith.diagonal.iter().enumerate() {
            if !d.is_zero() && !d.is_one() {
                invariant_factors.push(d.clone());
                projection.push(smith.left.row(i).iter().map(|a| a.mod_floor(d)).collect());
            }
        }
        // i64 copy of the projection for the common small-group case
        let small = projection
            .iter()
            .zip(&invariant_factors)
            .map(|(row, d)| {
                let d = d.to_i64().filter(|&d| d < 1 << 31)?;
                let row = row.iter().map(|a| a.to_i64()).collect::<Option<Vec<_>>>()?;
                Some((row, d))
            })
            .collect();
        DivisorClassGroup { invariant_factors, projection, small, smith }
    }

    /// Order of `Div_0(G)`.
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn smith(&self) -> &SmithForm {
        &self.smith
    }

    /// Residues of an integer vector against the invariant factors. For a degree-zero
    /// vector this is its class in `Div_0(G)`; together with the degree it
    /// determines the class in `Div(G)` of any vector.
    pub fn residues(&self, v: &[i64]) -> Vec<i64> {
        if let Some(small) = &self.small {
            return small
                .iter()
                .map(|(row, d)| {
                    let s: i128 = row.iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum();
                    s.rem_euclid(*d as i128) as i64
                })
                .collect();
        }
        self.projection
            .iter()
            .zip(&self.invariant_factors)
            .map(|(row, d)| {
                let s: BigInt = row.iter().zip(v).map(|(a, &b)| a * b).sum();
                s.mod_floor(d).to_i64().expect("residue below an invariant factor fits in i64")
            })
            .collect()
    }

    /// Class of the degree-zero divisor `(u, -Σu)` for `u` over the first `n-1` nodes.
    pub fn div_class(&self, u: &[i64]) -> Vec<i64> {
        let mut v = u.to_vec();
        v.push(-u.iter().sum::<i64>());
        self.residues(&v)
    }

    /// Full class key in `Div(G)`: the degree followed by the residues.
    pub fn class_key(&self, v: &[i64]) -> (i64, Vec<i64>) {
        (v.iter().sum(), self.residues(v))
    }
}
