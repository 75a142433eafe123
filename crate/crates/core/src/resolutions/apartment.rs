//! Bounded regions of the apartment: the flag complex on `Z^n / Ze` under the
//! tropical metric, with vertex `v` labeled by `Λ_G v`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact_linalg::determinant;
use crate::monomials::{for_each_composition, Monomial};
use crate::multigraph::Multigraph;

use super::complex::LabeledComplex;

/// `max(u - v) - min(u - v)`, the tropical distance on `Z^n / Ze`.
pub fn tropical_distance(u: &[i64], v: &[i64]) -> i64 {
    let d = u.iter().zip(v).map(|(a, b)| a - b);
    let (lo, hi) = d.fold((i64::MAX, i64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)));
    hi - lo
}

/// Preimages under the Laplacian, via the adjugate of the reduced Laplacian.
#[derive(Clone, Debug)]
pub struct Apartment {
    graph: Multigraph,
    adj: Vec<Vec<i64>>,
    det: i64,
}

impl Apartment {
    pub fn new(g: &Multigraph) -> Result<Self> {
        let n = g.n();
        let reduced = g.laplacian().minor(n - 1, n - 1);
        let small = |x: BigInt| x.to_i64().ok_or(Error::Overflow("reduced Laplacian adjugate"));
        let det = small(determinant(&reduced)?)?;
        let mut adj = vec![vec![0i64; n - 1]; n - 1];
        if n == 2 {
            adj[0][0] = 1;
        } else {
            for (i, row) in adj.iter_mut().enumerate() {
                for (j, a) in row.iter_mut().enumerate() {
                    let cof = small(determinant(&reduced.minor(j, i))?)?;
                    *a = if (i + j) % 2 == 0 { cof } else { -cof };
                }
            }
        }
        Ok(Apartment { graph: g.clone(), adj, det })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    /// The unique `v` with `v_n = 0` and `Λ_G v = w`, if `w` is in the lattice.
    pub fn preimage(&self, w: &[i64]) -> Option<Vec<i64>> {
        if w.iter().sum::<i64>() != 0 {
            return None;
        }
        let m = w.len() - 1;
        let mut v = Vec::with_capacity(m + 1);
        for row in &self.adj {
            let s: i128 = row.iter().zip(&w[..m]).map(|(&a, &b)| a as i128 * b as i128).sum();
            if s % self.det as i128 != 0 {
                return None;
            }
            v.push((s / self.det as i128) as i64);
        }
        v.push(0);
        Some(v)
    }

    /// Vertices `v` (normalized with `v_n = 0`) with `Λ_G v <= deg`, sorted.
    pub fn vertices_below(&self, deg: &[i64]) -> Vec<Vec<i64>> {
        let total: i64 = deg.iter().sum();
        let mut out = Vec::new();
        for_each_composition(total, deg.len(), |y| {
            let w: Vec<i64> = deg.iter().zip(y).map(|(d, s)| d - s).collect();
            if let Some(v) = self.preimage(&w) {
                out.push(v);
            }
        });
        out.sort();
        out
    }

    /// The subcomplex of faces whose label strictly divides `x^deg`.
    pub fn region(&self, deg: &Monomial) -> LabeledComplex {
        let target = deg.exps();
        let vertices = self.vertices_below(target);
        let labels: Vec<Monomial> =
            vertices.iter().map(|v| Monomial::from(self.graph.apply_laplacian(v))).collect();
        let keep: Vec<usize> = (0..vertices.len()).filter(|&i| labels[i] != *deg).collect();
        let k = keep.len();
        let adjacent: Vec<Vec<bool>> = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| tropical_distance(&vertices[a], &vertices[b]) <= 1).collect())
            .collect();
        let mut faces = Vec::new();
        #[allow(clippy::too_many_arguments)]
        fn grow(
            clique: &mut Vec<usize>,
            label: &Monomial,
            start: usize,
            k: usize,
            adjacent: &[Vec<bool>],
            labels: &[Monomial],
            deg: &Monomial,
            faces: &mut Vec<Vec<usize>>,
        ) {
            faces.push(clique.clone());
            for c in start..k {
                if clique.iter().all(|&v| adjacent[v][c]) {
                    let next = label.lcm(&labels[c]);
                    if next == *deg {
                        continue;
                    }
                    clique.push(c);
                    grow(clique, &next, c + 1, k, adjacent, labels, deg, faces);
                    clique.pop();
                }
            }
        }
        let kept_labels: Vec<Monomial> = keep.iter().map(|&i| labels[i].clone()).collect();
        for v in 0..k {
            grow(&mut vec![v], &kept_labels[v], v + 1, k, &adjacent, &kept_labels, deg, &mut faces);
        }
        LabeledComplex::from_faces(kept_labels, faces)
    }
}

/// `Apt(G)_{≺deg}` for an exponent vector over all `n` nodes.
pub fn apt_region(g: &Multigraph, deg: &Monomial) -> Result<LabeledComplex> {
    if deg.vars() != g.n() {
        return Err(Error::Dimension(format!("degree {deg} needs {} exponents", g.n())));
    }
    Ok(Apartment::new(g)?.region(deg))
}
