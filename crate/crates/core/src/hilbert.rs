//! Hilbert series of `K[x]/I_G` graded by the divisor class group, written in
//! the group algebra `Z[t, Div_0(G)]`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::ToPrimitive;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::chipfiring::parking_ideal;
use crate::error::{Error, Result};
use crate::monomials::Monomial;
use crate::multigraph::{DivisorClassGroup, Multigraph};
use crate::resolutions::cyc_partitions;

/// Finite sums `Σ c · t^a q^r` with `r` a residue vector against `moduli`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPolynomial {
    moduli: Vec<i64>,
    terms: BTreeMap<(i64, Vec<i64>), i64>,
}

impl GradedPolynomial {
    pub fn zero(moduli: Vec<i64>) -> Self {
        GradedPolynomial { moduli, terms: BTreeMap::new() }
    }

    pub fn one(moduli: Vec<i64>) -> Self {
        let q = vec![0; moduli.len()];
        Self::monomial(moduli, 0, q, 1)
    }

    pub fn monomial(moduli: Vec<i64>, t: i64, q: Vec<i64>, coeff: i64) -> Self {
        let mut p = Self::zero(moduli);
        p.add_term(t, q, coeff);
        p
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn add_term(&mut self, t: i64, q: Vec<i64>, coeff: i64) {
        debug_assert_eq!(q.len(), self.moduli.len());
        let q = q.iter().zip(&self.moduli).map(|(r, m)| r.rem_euclid(*m)).collect();
        let c = self.terms.entry((t, q)).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    /// Nonzero terms `((t, q), coeff)`, sorted.
    pub fn terms(&self) -> impl Iterator<Item = (&(i64, Vec<i64>), &i64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: i64, q: &[i64]) -> i64 {
        self.terms.get(&(t, q.to_vec())).copied().unwrap_or(0)
    }

    /// The image under `q ↦ 1`: coefficients by `t`-degree.
    pub fn forget_classes(&self) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        for ((t, _), c) in &self.terms {
            *out.entry(*t).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        out
    }
}

impl Add for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn add(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        for ((t, q), c) in &rhs.terms {
            out.add_term(*t, q.clone(), *c);
        }
        out
    }
}

impl Neg for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        let mut out = self.clone();
        out.terms.values_mut().for_each(|c| *c = -*c);
        out
    }
}

impl Sub for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn mul(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        assert_eq!(self.moduli, rhs.moduli, "graded polynomials over different groups");
        let mut out = GradedPolynomial::zero(self.moduli.clone());
        for ((t1, q1), c1) in &self.terms {
            for ((t2, q2), c2) in &rhs.terms {
                let q = q1.iter().zip(q2).map(|(a, b)| a + b).collect();
                out.add_term(t1 + t2, q, c1 * c2);
            }
        }
        out
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    t: i64,
    q: &'a [i64],
    coeff: i64,
}

impl Serialize for GradedPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for ((t, q), c) in &self.terms {
            seq.serialize_element(&TermJson { t: *t, q, coeff: *c })?;
        }
        seq.end()
    }
}

/// `ψ` for a fixed graph: `x^u ↦ t^{|u|} q^{div(u)}` on monomials in `x_1..x_{n-1}`.
#[derive(Clone, Debug)]
pub struct Psi {
    classes: DivisorClassGroup,
    moduli: Vec<i64>,
}

impl Psi {
    pub fn new(g: &Multigraph) -> Result<Self> {
        let classes = g.divisor_class_group();
        let moduli = classes
            .invariant_factors
            .iter()
            .map(|d| d.to_i64().ok_or(Error::Overflow("invariant factor")))
            .collect::<Result<_>>()?;
        Ok(Psi { classes, moduli })
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn apply(&self, u: &[i64]) -> GradedPolynomial {
        self.term(u, 1)
    }

    fn term(&self, u: &[i64], coeff: i64) -> GradedPolynomial {
        GradedPolynomial::monomial(self.moduli.clone(), u.iter().sum(), self.classes.div_class(u), coeff)
    }
}

/// `ψ(x^u)` for `u ∈ N^{n-1}`.
pub fn psi(g: &Multigraph, u: &[i64]) -> Result<GradedPolynomial> {
    if u.len() + 1 != g.n() {
        return Err(Error::Dimension(format!("expected {} exponents, got {}", g.n() - 1, u.len())));
    }
    if u.iter().any(|&a| a < 0) {
        return Err(Error::InvalidArgument(format!("negative exponent in {u:?}")));
    }
    Ok(Psi::new(g)?.apply(u))
}

/// Numerator of the Hilbert series: `Σ_k (-1)^{k-1} Σ_{Cyc_{n,k}} ψ(label)`,
/// together with the number of signed terms summed before cancellation.
pub fn hilbert_numerator_with_count(g: &Multigraph) -> Result<(GradedPolynomial, u128)> {
    if let Some((i, j)) = g.first_non_adjacent_pair() {
        return Err(Error::NotSaturated(i, j));
    }
    let psi = Psi::new(g)?;
    let mut out = GradedPolynomial::zero(psi.moduli.clone());
    let mut count = 0u128;
    for k in 1..=g.n() {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        for p in cyc_partitions(g.n(), k)? {
            let label = p.label(g).truncated();
            let term = psi.term(label.exps(), sign);
            out = &out + &term;
            count += 1;
        }
    }
    Ok((out, count))
}

pub fn hilbert_numerator(g: &Multigraph) -> Result<GradedPolynomial> {
    hilbert_numerator_with_count(g).map(|(p, _)| p)
}

/// `Σ ψ(u)` over the parking functions `u`, the standard monomials of `M_G`.
pub fn parking_sum(g: &Multigraph) -> Result<GradedPolynomial> {
    let psi = Psi::new(g)?;
    let mut out = GradedPolynomial::zero(psi.moduli.clone());
    for u in parking_ideal(g).standard_monomials()? {
        out = &out + &psi.apply(u.exps());
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertIdentityReport {
    pub numerator: GradedPolynomial,
    pub signed_terms: u128,
    pub expected_signed_terms: u128,
    pub parking_terms: usize,
    pub tree_count: String,
    /// `parking_sum · Π(1 - ψ(x_i)) - numerator`; empty when the identity holds.
    pub difference: GradedPolynomial,
    pub pass: bool,
}

/// Checks `parking_sum · Π_{i<n} (1 - ψ(x_i)) = numerator` exactly.
pub fn hilbert_identity_check(g: &Multigraph) -> Result<HilbertIdentityReport> {
    let (numerator, signed_terms) = hilbert_numerator_with_count(g)?;
    let psi = Psi::new(g)?;
    let sum = parking_sum(g)?;
    let mut lhs = sum.clone();
    let one = GradedPolynomial::one(psi.moduli.clone());
    for i in 0..g.n() - 1 {
        let x = Monomial::var(g.n() - 1, i);
        lhs = &lhs * &(&one - &psi.apply(x.exps()));
    }
    let difference = &lhs - &numerator;
    let expected_signed_terms = (1..=g.n()).map(|k| crate::resolutions::cyc_count(g.n(), k)).sum();
    let tree_count = g.tree_count();
    let pass = difference.is_empty()
        && signed_terms == expected_signed_terms
        && tree_count == sum.len().into();
    Ok(HilbertIdentityReport {
        numerator,
        signed_terms,
        expected_signed_terms,
        parking_terms: sum.len(),
        tree_count: tree_count.to_string(),
        difference,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_basics() {
        let g = Multigraph::complete(4, 1).unwrap();
        let p = psi(&g, &[0, 0, 0]).unwrap();
        assert_eq!(p, GradedPolynomial::one(vec![4, 4]));
        let e1 = psi(&g, &[1, 0, 0]).unwrap();
        let classes = g.divisor_class_group();
        assert_eq!(e1.coeff(1, &classes.residues(&[1, 0, 0, -1])), 1);
        let a = psi(&g, &[2, 1, 0]).unwrap();
        let b = psi(&g, &[0, 3, 1]).unwrap();
        assert_eq!(&a * &b, psi(&g, &[2, 4, 1]).unwrap());
        assert!(psi(&g, &[1, 0]).is_err());
        assert!(psi(&g, &[-1, 0, 0]).is_err());
    }

    #[test]
    fn lattice_steps_are_trivial() {
        // ψ(lead) = ψ(trail) for every split binomial, once x_n is dropped from the trail
        let g = Multigraph::complete(4, 2).unwrap();
        let classes = g.divisor_class_group();
        for b in crate::chipfiring::toppling_generators(&g) {
            assert_eq!(classes.class_key(b.lead.exps()), classes.class_key(b.trail.exps()));
        }
    }

    #[test]
    fn k4_numerator() {
        let g = Multigraph::complete(4, 1).unwrap();
        let (p, count) = hilbert_numerator_with_count(&g).unwrap();
        assert_eq!(count, 26);
        assert_eq!(p.coeff(0, &[0, 0]), 1);
        let r = hilbert_identity_check(&g).unwrap();
        assert!(r.pass, "{:?}", r.difference);
        assert_eq!(r.parking_terms, 16);
    }

    #[test]
    fn single_edge_telescopes() {
        for w in 1..5 {
            let g = Multigraph::from_edges(2, &[(1, 2, w)]).unwrap();
            let p = hilbert_numerator(&g).unwrap();
            let classes = g.divisor_class_group();
            let mut want = GradedPolynomial::one(vec![w as i64].into_iter().filter(|&d| d > 1).collect());
            let gen = GradedPolynomial::monomial(want.moduli().to_vec(), w as i64, classes.div_class(&[w as i64]), 1);
            want = &want - &gen;
            assert_eq!(p, want);
            let s = parking_sum(&g).unwrap();
            assert_eq!(s.len(), w as usize);
            assert!(hilbert_identity_check(&g).unwrap().pass);
        }
    }

    #[test]
    fn parking_sum_counts_trees() {
        let tree = Multigraph::from_edges(3, &[(1, 2, 1), (2, 3, 1)]).unwrap();
        assert_eq!(parking_sum(&tree).unwrap(), GradedPolynomial::one(vec![]));
        let g = Multigraph::complete(4, 1).unwrap();
        let s = parking_sum(&g).unwrap();
        let classes: std::collections::BTreeSet<_> = s.terms().map(|((_, q), _)| q.clone()).collect();
        assert_eq!(classes.len(), 16);
        assert_eq!(s.forget_classes().values().sum::<i64>(), 16);
        assert!(s.terms().all(|(_, c)| *c == 1));
    }

    #[test]
    fn rejects_unsaturated() {
        let g = Multigraph::cycle(4).unwrap();
        assert!(matches!(hilbert_numerator(&g), Err(Error::NotSaturated(..))));
        assert!(parking_sum(&g).is_ok());
    }

    #[test]
    fn saturated_family() {
        for m in 1..=3 {
            let g = Multigraph::complete(5, m).unwrap();
            assert!(hilbert_identity_check(&g).unwrap().pass);
        }
        let g = Multigraph::from_edges(4, &[(1, 2, 3), (1, 3, 1), (1, 4, 2), (2, 3, 1), (2, 4, 1), (3, 4, 2)])
            .unwrap();
        assert!(hilbert_identity_check(&g).unwrap().pass);
    }

    #[test]
    fn serializes_terms() {
        let p = GradedPolynomial::monomial(vec![4], 2, vec![5], -3);
        let mut out = Vec::new();
        let mut ser = serde_json_writer(&mut out);
        p.serialize(&mut ser).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), r#"[{"t":2,"q":[1],"coeff":-3}]"#);
    }

    fn serde_json_writer(out: &mut Vec<u8>) -> serde_json::Serializer<&mut Vec<u8>> {
        serde_json::Serializer::new(out)
    }
}
