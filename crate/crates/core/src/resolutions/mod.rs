//! Free resolutions of the toppling and parking ideals: the CYC complex, the
//! labeled complexes supporting them, and Betti numbers read off from homology.

pub mod apartment;
pub mod complex;
pub mod cyc;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::exact_linalg::Characteristic;
use crate::monomials::Monomial;
use crate::multigraph::Multigraph;

pub use apartment::{apt_region, tropical_distance, Apartment};
pub use complex::{bary_complex, homology_ranks, LabeledComplex};
pub use cyc::{
    arrow, cyc_complex, cyc_count, cyc_partitions, minimality_check, scarf_complex_parking, Column,
    FreeComplex, OrderedPartition, Poly,
};

/// One graded Betti number `β_{index, degree}` of a quotient `S/I`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BettiEntry {
    pub degree: Vec<i64>,
    pub index: usize,
    pub rank: usize,
}

/// Nonzero graded Betti numbers, sorted by index then degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BettiTable {
    entries: Vec<BettiEntry>,
}

impl BettiTable {
    fn from_map(map: BTreeMap<(usize, Vec<i64>), usize>) -> Self {
        let entries = map
            .into_iter()
            .filter(|&(_, r)| r > 0)
            .map(|((index, degree), rank)| BettiEntry { degree, index, rank })
            .collect();
        BettiTable { entries }
    }

    pub fn entries(&self) -> &[BettiEntry] {
        &self.entries
    }

    /// Total Betti numbers `β_0, β_1, ...` up to the last nonzero one.
    pub fn totals(&self) -> Vec<usize> {
        let mut t = Vec::new();
        for e in &self.entries {
            if t.len() <= e.index {
                t.resize(e.index + 1, 0);
            }
            t[e.index] += e.rank;
        }
        t
    }

    pub fn get(&self, index: usize, degree: &[i64]) -> usize {
        self.entries.iter().find(|e| e.index == index && e.degree == degree).map_or(0, |e| e.rank)
    }

    pub fn degrees(&self, index: usize) -> Vec<&[i64]> {
        self.entries.iter().filter(|e| e.index == index).map(|e| e.degree.as_slice()).collect()
    }
}

/// Betti numbers of `S/M` at `c` (over `n-1` variables), read from `Bary(G)_{≺c}`.
/// Entry `i` is `β_i`. Degrees outside the ideal carry nothing.
fn bary_betti_at(bary: &LabeledComplex, c: &Monomial, ch: Characteristic) -> Vec<usize> {
    if c.is_one() {
        return vec![1];
    }
    if !bary.vertex_labels().iter().any(|l| l.divides(c)) {
        return Vec::new();
    }
    let h = homology_ranks(&bary.sub_below(c), ch);
    std::iter::once(0).chain(h).collect()
}

/// Betti numbers of `S/I_G` in the class of `c` (over `n` variables), read from `Apt(G)_{≺c}`.
fn apt_betti_at(apt: &Apartment, c: &Monomial, ch: Characteristic) -> Vec<usize> {
    homology_ranks(&apt.region(c), ch)
}

fn accumulate(map: &mut BTreeMap<(usize, Vec<i64>), usize>, degree: &Monomial, betti: &[usize]) {
    for (i, &r) in betti.iter().enumerate() {
        if r > 0 {
            *map.entry((i, degree.exps().to_vec())).or_default() += r;
        }
    }
}

/// Graded Betti numbers of `K[x_1..x_{n-1}]/M_G` from the homology of the
/// barycentric complex below each face label.
pub fn betti_parking(g: &Multigraph, ch: Characteristic) -> BettiTable {
    let bary = bary_complex(g);
    let degrees: BTreeSet<Monomial> = bary.all_labels().cloned().collect();
    let rows: Vec<(Monomial, Vec<usize>)> = degrees
        .into_par_iter()
        .map(|c| {
            let b = bary_betti_at(&bary, &c, ch);
            (c, b)
        })
        .collect();
    let mut map = BTreeMap::new();
    map.insert((0, vec![0; g.n() - 1]), 1);
    for (c, b) in rows {
        accumulate(&mut map, &c, &b);
    }
    BettiTable::from_map(map)
}

/// One `x_n`-free degree per lattice orbit of apartment face labels, including
/// the orbit of `1`. Sorted.
pub fn toppling_orbit_representatives(g: &Multigraph) -> Vec<Monomial> {
    let classes = g.divisor_class_group();
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    let bary = bary_complex(g);
    let labels: BTreeSet<Monomial> = bary.all_labels().cloned().collect();
    let zero = Monomial::one(g.n() - 1);
    for l in std::iter::once(&zero).chain(&labels) {
        let c = l.extended(&[0]);
        if seen.insert(classes.class_key(c.exps())) {
            reps.push(c);
        }
    }
    reps.sort();
    reps
}

/// Graded Betti numbers of `K[x]/I_G`, one degree per lattice orbit, from the
/// homology of the apartment below each orbit representative.
pub fn betti_toppling(g: &Multigraph, ch: Characteristic) -> Result<BettiTable> {
    let apt = Apartment::new(g)?;
    let rows: Vec<(Monomial, Vec<usize>)> = toppling_orbit_representatives(g)
        .into_par_iter()
        .map(|c| {
            let b = apt_betti_at(&apt, &c, ch);
            (c, b)
        })
        .collect();
    let mut map = BTreeMap::new();
    for (c, b) in rows {
        accumulate(&mut map, &c, &b);
    }
    Ok(BettiTable::from_map(map))
}

/// One lattice class of degrees at one homological index: the toppling Betti
/// number there against the sum of the parking Betti numbers over the
/// `x_n`-free degrees of the class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureComparison {
    /// `x_n`-free representative of the class, over all `n` nodes.
    pub class: Vec<i64>,
    pub index: usize,
    pub parking: usize,
    pub toppling: usize,
    /// Parking degrees (over `n-1` nodes) contributing at this index.
    pub parking_degrees: Vec<Vec<i64>>,
}

impl ConjectureComparison {
    pub fn agrees(&self) -> bool {
        self.parking == self.toppling
    }

    /// More than one parking degree maps to this class, so the single-degree
    /// reading `H̃_{i-1}(Bary_{≺c}) = H̃_i(Apt_{≺c})` does not apply verbatim.
    pub fn ambiguous(&self) -> bool {
        self.parking_degrees.len() > 1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub characteristic: u64,
    pub classes_checked: usize,
    /// Comparisons where at least one side is nonzero, by index then class.
    pub comparisons: Vec<ConjectureComparison>,
    pub disagreements: Vec<ConjectureComparison>,
    pub ambiguous: usize,
    pub pass: bool,
}

/// Compares `H̃_{i-1}(Bary(G)_{≺c})` with `H̃_i(Apt(G)_{≺c})` for all `i >= 0`.
/// Parking degrees `c ∈ N^{n-1}` are identified with `(c, 0)` and grouped by
/// lattice class, since the toppling side only sees classes; within a class
/// the parking ranks are summed.
pub fn conjecture_check(g: &Multigraph, ch: Characteristic) -> Result<ConjectureReport> {
    let classes = g.divisor_class_group();
    let parking = betti_parking(g, ch);
    let toppling = betti_toppling(g, ch)?;
    let reps = toppling_orbit_representatives(g);
    let rep_of: HashMap<(i64, Vec<i64>), &Monomial> =
        reps.iter().map(|r| (classes.class_key(r.exps()), r)).collect();
    let mut cells: BTreeMap<(usize, Vec<i64>), ConjectureComparison> = BTreeMap::new();
    for e in parking.entries().iter().filter(|e| e.index > 0) {
        let full: Vec<i64> = e.degree.iter().copied().chain([0]).collect();
        let rep = rep_of[&classes.class_key(&full)].exps().to_vec();
        let c = entry(&mut cells, e.index - 1, &rep);
        c.parking += e.rank;
        c.parking_degrees.push(e.degree.clone());
    }
    for e in toppling.entries().iter().filter(|e| e.index > 0) {
        entry(&mut cells, e.index - 1, &e.degree).toppling += e.rank;
    }
    let comparisons: Vec<ConjectureComparison> = cells.into_values().collect();
    let disagreements: Vec<ConjectureComparison> =
        comparisons.iter().filter(|c| !c.agrees()).cloned().collect();
    Ok(ConjectureReport {
        characteristic: ch.value(),
        classes_checked: reps.len(),
        ambiguous: comparisons.iter().filter(|c| c.ambiguous()).count(),
        pass: disagreements.is_empty(),
        comparisons,
        disagreements,
    })
}

fn entry<'a>(
    cells: &'a mut BTreeMap<(usize, Vec<i64>), ConjectureComparison>,
    index: usize,
    class: &[i64],
) -> &'a mut ConjectureComparison {
    cells.entry((index, class.to_vec())).or_insert_with(|| ConjectureComparison {
        class: class.to_vec(),
        index,
        parking: 0,
        toppling: 0,
        parking_degrees: Vec::new(),
    })
}

/// Stirling-type counts `((k-1)! S_{n,k})_{k=1..n}`, the ranks of the CYC complex.
pub fn cyc_ranks(n: usize) -> Vec<u128> {
    (1..=n).map(|k| cyc_count(n, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chipfiring::toppling_generators;

    fn q() -> Characteristic {
        Characteristic::ZERO
    }

    fn weighted_path() -> Multigraph {
        Multigraph::from_edges(4, &[(1, 2, 2), (2, 3, 1), (3, 4, 3)]).unwrap()
    }

    #[test]
    fn k4_tables() {
        let g = Multigraph::complete(4, 1).unwrap();
        assert_eq!(betti_parking(&g, q()).totals(), vec![1, 7, 12, 6]);
        assert_eq!(betti_toppling(&g, q()).unwrap().totals(), vec![1, 7, 12, 6]);
    }

    #[test]
    fn weighted_path_tables() {
        let g = weighted_path();
        let p = betti_parking(&g, q());
        assert_eq!(p.totals(), vec![1, 3, 3, 1]);
        assert_eq!(p.get(2, &[2, 0, 3]), 1);
        let t = betti_toppling(&g, q()).unwrap();
        assert_eq!(t.totals(), vec![1, 3, 3, 1]);
        let classes = g.divisor_class_group();
        let key = classes.class_key(&[2, 0, 3, 0]);
        let hits: Vec<_> = t.degrees(2).into_iter().filter(|d| classes.class_key(d) == key).collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(t.get(2, hits[0]), 1);
        let direct = homology_ranks(&apt_region(&g, &Monomial::new(vec![2, 0, 3, 0])).unwrap(), q());
        assert_eq!(direct, vec![0, 0, 1, 0]);
    }

    #[test]
    fn first_syzygies_are_split_leads() {
        for g in [weighted_path(), Multigraph::complete(4, 2).unwrap(), Multigraph::cycle(5).unwrap()] {
            let p = betti_parking(&g, q());
            let mut leads: Vec<Vec<i64>> = toppling_generators(&g)
                .iter()
                .map(|b| b.parking_generator().into_exps())
                .collect();
            leads.sort();
            leads.dedup();
            let mut got: Vec<Vec<i64>> = p.degrees(1).into_iter().map(<[i64]>::to_vec).collect();
            got.sort();
            assert_eq!(got, leads);
        }
    }

    #[test]
    fn top_betti_counts_acyclic_orientations() {
        let graphs = [
            weighted_path(),
            Multigraph::cycle(4).unwrap(),
            Multigraph::from_edges(4, &[(1, 2, 1), (2, 3, 2), (1, 3, 1), (3, 4, 1)]).unwrap(),
            Multigraph::from_edges(3, &[(1, 2, 2), (2, 3, 1)]).unwrap(),
        ];
        for g in graphs {
            let want = g.acyclic_orientations_unique_sink(g.n()).unwrap() as usize;
            let p = betti_parking(&g, q()).totals();
            let t = betti_toppling(&g, q()).unwrap().totals();
            assert_eq!(p.len(), g.n());
            assert_eq!(t.len(), g.n());
            assert_eq!(p[g.n() - 1], want);
            assert_eq!(t[g.n() - 1], want);
        }
    }

    #[test]
    fn saturated_tables_match_cyc_counts() {
        for g in [Multigraph::complete(3, 2).unwrap(), Multigraph::complete(4, 1).unwrap()] {
            let n = g.n();
            let counts: Vec<usize> = cyc_ranks(n).into_iter().map(|c| c as usize).collect();
            assert_eq!(betti_toppling(&g, q()).unwrap().totals(), counts);
            assert_eq!(betti_parking(&g, q()).totals(), counts);
        }
    }

    #[test]
    fn orbit_representatives_are_distinct_classes() {
        let g = Multigraph::complete(4, 1).unwrap();
        // one per cyclically ordered partition
        assert_eq!(toppling_orbit_representatives(&g).len(), 26);
    }

    #[test]
    fn conjecture_on_small_graphs() {
        for g in [weighted_path(), Multigraph::complete(4, 1).unwrap(), Multigraph::cycle(4).unwrap()] {
            let r = conjecture_check(&g, q()).unwrap();
            assert!(r.pass, "{:?}", r.disagreements);
            assert!(r.classes_checked > 0);
        }
    }

    #[test]
    fn table_serializes_as_entries() {
        let g = Multigraph::from_edges(2, &[(1, 2, 3)]).unwrap();
        let t = betti_parking(&g, q());
        let json = serde_json_like(&t);
        assert_eq!(json, vec![(vec![0], 0, 1), (vec![3], 1, 1)]);
    }

    fn serde_json_like(t: &BettiTable) -> Vec<(Vec<i64>, usize, usize)> {
        t.entries().iter().map(|e| (e.degree.clone(), e.index, e.rank)).collect()
    }
}
