//! Shared fixtures for the benchmarks.

use toppling_core::{Monomial, MonomialIdeal, Multigraph};

pub fn complete(n: usize) -> Multigraph {
    let edges: Vec<_> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j, 1))).collect();
    Multigraph::from_edges(n, &edges).expect("complete graphs are connected")
}

/// Triangular prism: two triangles joined by a perfect matching.
pub fn prism() -> Multigraph {
    Multigraph::from_edges(
        6,
        &[(1, 2, 1), (2, 3, 1), (1, 3, 1), (4, 5, 1), (5, 6, 1), (4, 6, 1), (1, 4, 1), (2, 5, 1), (3, 6, 1)],
    )
    .expect("prism is connected")
}

/// Weighted path on four nodes.
pub fn weighted_path() -> Multigraph {
    Multigraph::from_edges(4, &[(1, 2, 2), (2, 3, 1), (3, 4, 3)]).expect("path is connected")
}

/// Artinian ideal in two variables with canonical monomial (9, 13).
pub fn plane_ideal() -> MonomialIdeal {
    let gens = [[9, 0], [6, 4], [5, 7], [2, 8], [0, 11]].iter().map(|e| Monomial::new(e.to_vec())).collect();
    MonomialIdeal::new(2, gens).expect("valid generators")
}
