//! Riemann-Roch theory for artinian monomial ideals.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomials::{degree_plus, for_each_composition, intersect_irreducible, Monomial, MonomialIdeal};

/// Rank together with a minimal-degree certificate `a` (for non-negative input).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankWitness {
    pub rank: i64,
    pub witness: Option<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RRProfile {
    pub ideal: MonomialIdeal,
    pub socle: Vec<Monomial>,
    pub genus_min: i64,
    pub genus_max: i64,
    pub level: bool,
    /// Every exponent vector `K` for which `c -> K - c` permutes the socle.
    pub canonical_candidates: Vec<Monomial>,
    /// The lexicographically smallest candidate.
    pub canonical: Option<Monomial>,
    pub reflection_invariant: bool,
}

impl RRProfile {
    /// The genus, defined only for level ideals.
    pub fn genus(&self) -> Option<i64> {
        self.level.then_some(self.genus_min)
    }

    /// Artinian, level and reflection-invariant.
    pub fn is_riemann_roch(&self) -> bool {
        self.level && self.reflection_invariant
    }
}

fn nonempty_socle(m: &MonomialIdeal) -> Result<Vec<Monomial>> {
    let socle = m.socle()?;
    if socle.is_empty() {
        return Err(Error::InvalidIdeal("the unit ideal has no socle".into()));
    }
    Ok(socle)
}

fn check_vars(m: &MonomialIdeal, b: &Monomial) -> Result<()> {
    if b.vars() != m.vars() {
        return Err(Error::Dimension(format!(
            "monomial {b} has {} exponents, ideal has {} variables",
            b.vars(),
            m.vars()
        )));
    }
    Ok(())
}

/// Rank by the defining search: smallest `a` with `0 <= a <= b` and `x^{b-a}`
/// outside `M`, by degree and then lexicographically.
pub fn mono_rank_bruteforce(m: &MonomialIdeal, b: &Monomial) -> Result<RankWitness> {
    check_vars(m, b)?;
    m.pure_power_bounds()?;
    if !b.is_nonneg() {
        return Err(Error::InvalidArgument(format!("{b} is not an honest monomial")));
    }
    if m.generators().iter().any(Monomial::is_one) {
        return Err(Error::InvalidIdeal("the unit ideal has no socle".into()));
    }
    for t in 0..=b.degree() {
        let mut found = None;
        for_each_composition(t, b.vars(), |a| {
            if found.is_none() && a.iter().zip(b.exps()).all(|(x, y)| x <= y) {
                let a = Monomial::from(a);
                if !m.contains(&(b - &a)) {
                    found = Some(a);
                }
            }
        });
        if let Some(a) = found {
            return Ok(RankWitness { rank: t - 1, witness: Some(a) });
        }
    }
    unreachable!("x^0 = 1 lies outside a proper ideal")
}

fn rank_from_socle(socle: &[Monomial], b: &Monomial) -> i64 {
    socle
        .iter()
        .map(|c| degree_plus((b - c).exps()))
        .min()
        .expect("non-empty socle")
        - 1
}

/// Rank of a Laurent monomial: `min_c degree⁺(b - c) - 1` over the socle.
pub fn mono_rank(m: &MonomialIdeal, b: &Monomial) -> Result<i64> {
    check_vars(m, b)?;
    Ok(rank_from_socle(&nonempty_socle(m)?, b))
}

/// Rank via `min_c degree(lcm(x^b, x^c) / x^c) - 1`.
pub fn mono_rank_lcm(m: &MonomialIdeal, b: &Monomial) -> Result<i64> {
    check_vars(m, b)?;
    Ok(nonempty_socle(m)?
        .iter()
        .map(|c| (&b.lcm(c) - c).degree())
        .min()
        .expect("non-empty socle")
        - 1)
}

/// Whether `c -> k - c` maps the socle onto itself (with every socle element dividing `k`).
fn is_canonical(socle: &[Monomial], k: &Monomial) -> bool {
    let set: BTreeSet<&Monomial> = socle.iter().collect();
    socle.iter().all(|c| {
        let d = k - c;
        d.is_nonneg() && set.contains(&d)
    })
}

pub fn rr_profile(m: &MonomialIdeal) -> Result<RRProfile> {
    let socle = nonempty_socle(m)?;
    let degrees: Vec<i64> = socle.iter().map(Monomial::degree).collect();
    let genus_min = 1 + degrees.iter().min().expect("non-empty");
    let genus_max = 1 + degrees.iter().max().expect("non-empty");
    let mut candidates = BTreeSet::new();
    for (i, c) in socle.iter().enumerate() {
        for d in &socle[i..] {
            candidates.insert(c + d);
        }
    }
    let canonical_candidates: Vec<Monomial> =
        candidates.into_iter().filter(|k| is_canonical(&socle, k)).collect();
    Ok(RRProfile {
        ideal: m.clone(),
        level: genus_min == genus_max,
        genus_min,
        genus_max,
        canonical: canonical_candidates.first().cloned(),
        reflection_invariant: !canonical_candidates.is_empty(),
        canonical_candidates,
        socle,
    })
}

/// Whether the Alexander dual inside the box below `k` is generated by the socle.
pub fn box_dual_identity(m: &MonomialIdeal, k: &Monomial) -> Result<bool> {
    Ok(m.alexander_dual_box_generators(k)? == nonempty_socle(m)?)
}

/// An artinian ideal with a verified canonical monomial.
#[derive(Clone, Debug)]
pub struct ReflectionInvariantIdeal {
    ideal: MonomialIdeal,
    socle: Vec<Monomial>,
    canonical: Monomial,
    genus_min: i64,
    genus_max: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RRCheck {
    pub b: Monomial,
    pub rank: i64,
    pub dual_rank: i64,
    pub degree: i64,
    pub genus: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityCheck {
    pub b: Monomial,
    pub lower: i64,
    pub value: i64,
    pub upper: i64,
    pub pass: bool,
}

/// Outcome of a check whose hypotheses may not hold for the given input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Applicability {
    Checked { pass: bool },
    Skipped { reason: String },
}

impl Applicability {
    /// True unless the check ran and failed.
    pub fn ok(&self) -> bool {
        !matches!(self, Applicability::Checked { pass: false })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliffordCheck {
    pub b: Monomial,
    pub rank: i64,
    pub dual_rank: i64,
    pub degree: i64,
    pub outcome: Applicability,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuperadditivityCheck {
    pub rank_a: i64,
    pub rank_b: i64,
    pub rank_product: i64,
    pub outcome: Applicability,
}

impl ReflectionInvariantIdeal {
    /// Validates that `m` is artinian and that `k` is a canonical monomial for it.
    pub fn new(m: &MonomialIdeal, k: &Monomial) -> Result<Self> {
        check_vars(m, k)?;
        m.pure_power_bounds()?;
        let socle = nonempty_socle(m)?;
        if !is_canonical(&socle, k) {
            return Err(Error::NotRiemannRoch(format!(
                "c -> {k} - c does not permute the socle (not reflection-invariant for this K)"
            )));
        }
        let degrees: Vec<i64> = socle.iter().map(Monomial::degree).collect();
        Ok(ReflectionInvariantIdeal {
            ideal: m.clone(),
            genus_min: 1 + degrees.iter().min().expect("non-empty"),
            genus_max: 1 + degrees.iter().max().expect("non-empty"),
            canonical: k.clone(),
            socle,
        })
    }

    /// Builds the context from the ideal's own profile.
    pub fn from_profile(p: &RRProfile) -> Result<Self> {
        let k = p.canonical.as_ref().ok_or_else(|| {
            Error::NotRiemannRoch("no canonical monomial: not reflection-invariant".into())
        })?;
        ReflectionInvariantIdeal::new(&p.ideal, k)
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn socle(&self) -> &[Monomial] {
        &self.socle
    }

    pub fn canonical(&self) -> &Monomial {
        &self.canonical
    }

    pub fn is_level(&self) -> bool {
        self.genus_min == self.genus_max
    }

    pub fn genus_bounds(&self) -> (i64, i64) {
        (self.genus_min, self.genus_max)
    }

    pub fn rank(&self, b: &Monomial) -> Result<i64> {
        check_vars(&self.ideal, b)?;
        Ok(rank_from_socle(&self.socle, b))
    }

    /// `rank(b) - rank(K - b) = degree(b) - genus + 1`; requires a level ideal.
    pub fn verify(&self, b: &Monomial) -> Result<RRCheck> {
        if !self.is_level() {
            return Err(Error::NotRiemannRoch(format!(
                "not level: socle degrees range over {}..={}",
                self.genus_min - 1,
                self.genus_max - 1
            )));
        }
        let rank = self.rank(b)?;
        let dual_rank = self.rank(&(&self.canonical - b))?;
        let degree = b.degree();
        let genus = self.genus_min;
        Ok(RRCheck {
            b: b.clone(),
            rank,
            dual_rank,
            degree,
            genus,
            pass: rank - dual_rank == degree - genus + 1,
        })
    }

    /// `genus_min - 1 <= degree(b) - rank(b) + rank(K - b) <= genus_max - 1`.
    pub fn inequalities(&self, b: &Monomial) -> Result<InequalityCheck> {
        let value = b.degree() - self.rank(b)? + self.rank(&(&self.canonical - b))?;
        let (lower, upper) = (self.genus_min - 1, self.genus_max - 1);
        Ok(InequalityCheck { b: b.clone(), lower, value, upper, pass: lower <= value && value <= upper })
    }

    /// `rank(b) <= (degree(b) - 1) / 2` when `b | K` and both ranks are non-negative.
    pub fn clifford(&self, b: &Monomial) -> Result<CliffordCheck> {
        let rank = self.rank(b)?;
        let dual = &self.canonical - b;
        let dual_rank = self.rank(&dual)?;
        let degree = b.degree();
        let outcome = if !b.is_nonneg() || !dual.is_nonneg() {
            Applicability::Skipped { reason: format!("{b} does not divide {}", self.canonical) }
        } else if rank < 0 || dual_rank < 0 {
            Applicability::Skipped {
                reason: format!("ranks ({rank}, {dual_rank}) are not both non-negative"),
            }
        } else {
            Applicability::Checked { pass: 2 * rank < degree }
        };
        Ok(CliffordCheck { b: b.clone(), rank, dual_rank, degree, outcome })
    }
}

pub fn rr_verify(m: &MonomialIdeal, k: &Monomial, b: &Monomial) -> Result<RRCheck> {
    ReflectionInvariantIdeal::new(m, k)?.verify(b)
}

pub fn rr_inequalities(m: &MonomialIdeal, k: &Monomial, b: &Monomial) -> Result<InequalityCheck> {
    ReflectionInvariantIdeal::new(m, k)?.inequalities(b)
}

pub fn clifford_check(m: &MonomialIdeal, k: &Monomial, b: &Monomial) -> Result<CliffordCheck> {
    ReflectionInvariantIdeal::new(m, k)?.clifford(b)
}

/// `rank(ab) >= rank(a) + rank(b)` for honest monomials of non-negative rank.
pub fn superadditivity_check(m: &MonomialIdeal, a: &Monomial, b: &Monomial) -> Result<SuperadditivityCheck> {
    let rank_a = mono_rank(m, a)?;
    let rank_b = mono_rank(m, b)?;
    let rank_product = mono_rank(m, &(a + b))?;
    let outcome = if !a.is_nonneg() || !b.is_nonneg() {
        Applicability::Skipped { reason: "inputs must be honest monomials".into() }
    } else if rank_a < 0 || rank_b < 0 {
        Applicability::Skipped { reason: format!("ranks ({rank_a}, {rank_b}) are not both non-negative") }
    } else {
        Applicability::Checked { pass: rank_product >= rank_a + rank_b }
    };
    Ok(SuperadditivityCheck { rank_a, rank_b, rank_product, outcome })
}

/// The unique artinian ideal whose socle is the seeds together with their
/// complements in `K`.
pub fn construct_rr_ideal(k: &Monomial, seeds: &[Monomial]) -> Result<MonomialIdeal> {
    let m = k.vars();
    let dk = k.degree();
    if !k.is_nonneg() || dk % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "canonical exponent {k} must be non-negative of even degree"
        )));
    }
    if seeds.is_empty() {
        return Err(Error::InvalidArgument("at least one seed is required".into()));
    }
    let mut socle = BTreeSet::new();
    for s in seeds {
        if s.vars() != m {
            return Err(Error::Dimension(format!("seed {s} has {} exponents, expected {m}", s.vars())));
        }
        let rest = k - s;
        if !s.is_nonneg() || !rest.is_nonneg() {
            return Err(Error::InvalidArgument(format!("seed {s} does not divide x^{k}")));
        }
        if 2 * s.degree() != dk {
            return Err(Error::InvalidArgument(format!(
                "seed {s} has degree {}, expected {}",
                s.degree(),
                dk / 2
            )));
        }
        socle.insert(s.clone());
        socle.insert(rest);
    }
    let components: Vec<Monomial> = socle
        .iter()
        .map(|c| c.exps().iter().map(|x| x + 1).collect::<Vec<_>>().into())
        .collect();
    let ideal = intersect_irreducible(&components, m)?;
    let profile = rr_profile(&ideal)?;
    if profile.socle != socle.into_iter().collect::<Vec<_>>()
        || !profile.level
        || !profile.canonical_candidates.contains(k)
    {
        return Err(Error::NotRiemannRoch("constructed ideal failed its own profile".into()));
    }
    Ok(ideal)
}
