//! Finite simplicial complexes with monomial labels, and their reduced homology.

use std::collections::HashMap;

use crate::exact_linalg::{sparse_rank, Characteristic};
use crate::monomials::Monomial;
use crate::multigraph::Multigraph;

/// A simplicial complex whose vertices carry (Laurent) monomial labels. Faces
/// are stored by dimension as sorted vertex lists; the label of a face is the
/// lcm (componentwise maximum) of its vertex labels. The empty face is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledComplex {
    vertex_labels: Vec<Monomial>,
    faces: Vec<Vec<Vec<usize>>>,
    face_labels: Vec<Vec<Monomial>>,
}

impl LabeledComplex {
    /// Builds a complex from a face list that is closed under taking nonempty subsets.
    pub fn from_faces(vertex_labels: Vec<Monomial>, faces: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
        for mut f in faces {
            f.sort_unstable();
            let d = f.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(f);
        }
        for fs in &mut by_dim {
            fs.sort();
            fs.dedup();
        }
        let face_labels = by_dim
            .iter()
            .map(|fs| fs.iter().map(|f| lcm_of(&vertex_labels, f)).collect())
            .collect();
        let c = LabeledComplex { vertex_labels, faces: by_dim, face_labels };
        debug_assert!(c.is_closed());
        c
    }

    pub fn vertex_labels(&self) -> &[Monomial] {
        &self.vertex_labels
    }

    /// Faces of dimension `d` (each with `d + 1` vertices).
    pub fn faces(&self, d: usize) -> &[Vec<usize>] {
        self.faces.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn face_labels(&self, d: usize) -> &[Monomial] {
        self.face_labels.get(d).map_or(&[], Vec::as_slice)
    }

    /// `f_0, f_1, ...`: number of faces per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.first().is_none_or(Vec::is_empty)
    }

    /// Labels of all nonempty faces.
    pub fn all_labels(&self) -> impl Iterator<Item = &Monomial> {
        self.face_labels.iter().flatten()
    }

    /// Subcomplex of faces whose label strictly divides `x^deg` (divides and differs).
    pub fn sub_below(&self, deg: &Monomial) -> LabeledComplex {
        let keep = |l: &Monomial| l.divides(deg) && l != deg;
        let kept_vertices: Vec<usize> = self
            .faces(0)
            .iter()
            .zip(self.face_labels(0))
            .filter(|(_, l)| keep(l))
            .map(|(f, _)| f[0])
            .collect();
        let mut remap = HashMap::new();
        for (new, &old) in kept_vertices.iter().enumerate() {
            remap.insert(old, new);
        }
        let vertex_labels = kept_vertices.iter().map(|&v| self.vertex_labels[v].clone()).collect();
        let mut faces = Vec::new();
        let mut face_labels = Vec::new();
        for (fs, ls) in self.faces.iter().zip(&self.face_labels) {
            let mut kf = Vec::new();
            let mut kl = Vec::new();
            for (f, l) in fs.iter().zip(ls) {
                if keep(l) {
                    kf.push(f.iter().map(|v| remap[v]).collect());
                    kl.push(l.clone());
                }
            }
            if kf.is_empty() {
                break;
            }
            faces.push(kf);
            face_labels.push(kl);
        }
        LabeledComplex { vertex_labels, faces, face_labels }
    }

    /// Reduced Euler characteristic `Σ_d (-1)^d f_d`, counting the empty face in dimension -1.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        -1 + self
            .faces
            .iter()
            .enumerate()
            .map(|(d, fs)| if d % 2 == 0 { fs.len() as i64 } else { -(fs.len() as i64) })
            .sum::<i64>()
    }

    fn is_closed(&self) -> bool {
        (1..self.faces.len()).all(|d| {
            let lower: std::collections::HashSet<&Vec<usize>> = self.faces[d - 1].iter().collect();
            self.faces[d].iter().all(|f| {
                (0..f.len()).all(|j| {
                    let mut g = f.clone();
                    g.remove(j);
                    lower.contains(&g)
                })
            })
        })
    }
}

fn lcm_of(labels: &[Monomial], face: &[usize]) -> Monomial {
    let mut it = face.iter().map(|&v| &labels[v]);
    let first = it.next().expect("nonempty face").clone();
    it.fold(first, |acc, l| acc.lcm(l))
}

/// Ranks of reduced homology over the given field. Entry `j` is `H̃_{j-1}`, so
/// the vector starts at dimension -1 (nonzero there only for the complex
/// consisting of the empty face alone).
pub fn homology_ranks(c: &LabeledComplex, ch: Characteristic) -> Vec<usize> {
    let dims = c.faces.len();
    // boundary ranks: rank[d] = rank of ∂_d : C_d -> C_{d-1}, for d = 0..dims
    let mut ranks = vec![0usize; dims + 1];
    if dims > 0 {
        ranks[0] = 1;
    }
    for d in 1..dims {
        let index: HashMap<&Vec<usize>, usize> =
            c.faces[d - 1].iter().enumerate().map(|(i, f)| (f, i)).collect();
        let rows: Vec<Vec<(usize, i64)>> = c.faces[d]
            .iter()
            .map(|f| {
                (0..f.len())
                    .map(|j| {
                        let mut g = f.clone();
                        g.remove(j);
                        (index[&g], if j % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        ranks[d] = sparse_rank(&rows, ch);
    }
    // H̃_{-1} = 1 - rank ∂_0; H̃_d = f_d - rank ∂_d - rank ∂_{d+1}
    let mut h = Vec::with_capacity(dims + 1);
    h.push(1 - ranks[0]);
    for d in 0..dims {
        h.push(c.faces[d].len() - ranks[d] - ranks[d + 1]);
    }
    h
}

/// Barycentric subdivision of the `(n-2)`-simplex: vertices are the nonempty
/// subsets `I` of `[n-1]` (vertex `I` has index `mask(I) - 1`), labeled by
/// `x^{I → [n]∖I}` in `n-1` variables; faces are chains.
pub fn bary_complex(g: &Multigraph) -> LabeledComplex {
    let n = g.n();
    let low = (1u64 << (n - 1)) - 1;
    let full = (1u64 << n) - 1;
    let labels: Vec<Monomial> = (1..=low)
        .map(|mask| {
            (0..n - 1)
                .map(|i| if mask >> i & 1 == 1 { g.edges_into(i, full & !mask) } else { 0 })
                .collect::<Vec<_>>()
                .into()
        })
        .collect();
    let mut faces = Vec::new();
    fn extend(chain: &mut Vec<u64>, low: u64, faces: &mut Vec<Vec<usize>>) {
        faces.push(chain.iter().map(|&m| m as usize - 1).collect());
        let last = *chain.last().expect("nonempty chain");
        let free = low & !last;
        let mut sub = free;
        while sub != 0 {
            chain.push(last | sub);
            extend(chain, low, faces);
            chain.pop();
            sub = (sub - 1) & free;
        }
    }
    for mask in 1..=low {
        extend(&mut vec![mask], low, &mut faces);
    }
    LabeledComplex::from_faces(labels, faces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[i64]) -> Monomial {
        Monomial::from(e)
    }

    fn q() -> Characteristic {
        Characteristic::ZERO
    }

    #[test]
    fn small_homology() {
        let pts = LabeledComplex::from_faces(vec![m(&[1]), m(&[2])], vec![vec![0], vec![1]]);
        assert_eq!(homology_ranks(&pts, q()), vec![0, 1]);
        let hollow = LabeledComplex::from_faces(
            vec![m(&[1]); 3],
            vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2], vec![0, 2]],
        );
        assert_eq!(homology_ranks(&hollow, q()), vec![0, 0, 1]);
        let full = LabeledComplex::from_faces(
            vec![m(&[1]); 3],
            vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 1, 2]],
        );
        assert_eq!(homology_ranks(&full, q()), vec![0, 0, 0, 0]);
        let empty = LabeledComplex::from_faces(vec![], vec![]);
        assert_eq!(homology_ranks(&empty, q()), vec![1]);
    }

    #[test]
    fn torsion_depends_on_characteristic() {
        // six-vertex triangulation of the projective plane
        let tris = [
            [0, 1, 3], [0, 1, 5], [0, 2, 4], [0, 2, 5], [0, 3, 4],
            [1, 2, 3], [1, 2, 4], [1, 4, 5], [2, 3, 5], [3, 4, 5],
        ];
        let mut faces = Vec::new();
        for t in tris {
            for mask in 1u32..8 {
                faces.push((0..3).filter(|j| mask >> j & 1 == 1).map(|j| t[j]).collect());
            }
        }
        let rp2 = LabeledComplex::from_faces(vec![m(&[0]); 6], faces);
        assert_eq!(rp2.f_vector(), vec![6, 15, 10]);
        assert_eq!(homology_ranks(&rp2, q()), vec![0, 0, 0, 0]);
        let p2 = Characteristic::new(2).unwrap();
        assert_eq!(homology_ranks(&rp2, p2), vec![0, 0, 1, 1]);
    }

    #[test]
    fn bary_counts() {
        let k4 = Multigraph::complete(4, 1).unwrap();
        assert_eq!(bary_complex(&k4).f_vector(), vec![7, 12, 6]);
        let edge = Multigraph::from_edges(2, &[(1, 2, 2)]).unwrap();
        let b = bary_complex(&edge);
        assert_eq!(b.f_vector(), vec![1]);
        assert_eq!(b.vertex_labels(), &[m(&[2])]);
        let path = Multigraph::cycle(3).unwrap();
        assert_eq!(bary_complex(&path).f_vector(), vec![3, 2]);
    }

    #[test]
    fn sub_below_examples() {
        let g = Multigraph::from_edges(4, &[(1, 2, 2), (2, 3, 1), (3, 4, 3)]).unwrap();
        let b = bary_complex(&g);
        let s = b.sub_below(&m(&[2, 0, 3]));
        assert_eq!(s.f_vector(), vec![2]);
        let mut labels = s.vertex_labels().to_vec();
        labels.sort();
        assert_eq!(labels, vec![m(&[0, 0, 3]), m(&[2, 0, 0])]);
        assert_eq!(homology_ranks(&s, q()), vec![0, 1]);
        assert!(b.sub_below(&m(&[0, 0, 0])).is_empty());
        let top = b.all_labels().fold(m(&[0, 0, 0]), |a, l| a.lcm(l));
        let s = b.sub_below(&top);
        let at_top = b.all_labels().filter(|l| **l == top).count();
        assert_eq!(s.face_count(), b.face_count() - at_top);
    }

    #[test]
    fn euler_characteristic_matches_homology() {
        let k4 = Multigraph::complete(4, 1).unwrap();
        let b = bary_complex(&k4);
        let labels: std::collections::BTreeSet<Monomial> = b.all_labels().cloned().collect();
        for c in labels {
            let s = b.sub_below(&c);
            let h = homology_ranks(&s, q());
            let alt: i64 = h
                .iter()
                .enumerate()
                .map(|(j, &r)| if j % 2 == 1 { r as i64 } else { -(r as i64) })
                .sum();
            assert_eq!(alt, s.reduced_euler_characteristic());
        }
    }
}
