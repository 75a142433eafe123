//! Laurent monomials and artinian monomial ideals.

use std::fmt;
use std::ops::{Add, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

/// A Laurent monomial `x^b`, stored as its integer exponent vector.
///
/// The same type plays the role of a graph divisor, an ideal generator and a
/// multidegree label.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn new(exps: Vec<i64>) -> Self {
        Monomial(exps)
    }

    /// The constant monomial 1 in `vars` variables.
    pub fn one(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[i64] {
        &self.0
    }

    pub fn into_exps(self) -> Vec<i64> {
        self.0
    }

    pub fn vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn degree_plus(&self) -> i64 {
        degree_plus(&self.0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise `self <= other`, i.e. `x^self` divides `x^other` in the Laurent ring
    /// with quotient a genuine monomial.
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.vars(), other.vars());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Divides and is not equal.
    pub fn strictly_divides(&self, other: &Monomial) -> bool {
        self.divides(other) && self != other
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Appends extra coordinates (e.g. a zero exponent for a sink variable).
    pub fn extended(&self, extra: &[i64]) -> Monomial {
        let mut e = self.0.clone();
        e.extend_from_slice(extra);
        Monomial(e)
    }

    /// Drops the last coordinate.
    pub fn truncated(&self) -> Monomial {
        Monomial(self.0[..self.0.len() - 1].to_vec())
    }
}

impl From<Vec<i64>> for Monomial {
    fn from(v: Vec<i64>) -> Self {
        Monomial(v)
    }
}

impl From<&[i64]> for Monomial {
    fn from(v: &[i64]) -> Self {
        Monomial(v.to_vec())
    }
}

impl Add for &Monomial {
    type Output = Monomial;
    fn add(self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Monomial {
    type Output = Monomial;
    fn sub(self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if wrote {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Sum of the positive coordinates of `u`.
pub fn degree_plus(u: &[i64]) -> i64 {
    u.iter().filter(|&&x| x > 0).sum()
}

/// A monomial ideal in `vars` variables, stored by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialIdeal {
    vars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, discarding non-minimal generators.
    pub fn new(vars: usize, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            if g.vars() != vars {
                return Err(Error::InvalidIdeal(format!(
                    "generator {g} has {} exponents, expected {vars}",
                    g.vars()
                )));
            }
            if !g.is_nonneg() {
                return Err(Error::InvalidIdeal(format!("generator {g} has a negative exponent")));
            }
        }
        Ok(MonomialIdeal { vars, gens: minimize(gens) })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    /// Whether `x^b` lies in the ideal. Laurent monomials with a negative
    /// exponent never do.
    pub fn contains(&self, b: &Monomial) -> bool {
        b.is_nonneg() && self.gens.iter().any(|g| g.divides(b))
    }

    /// Exponent `p_i` of the smallest pure power `x_i^{p_i}` in the ideal, for each variable.
    pub fn pure_power_bounds(&self) -> Result<Vec<i64>> {
        (0..self.vars)
            .map(|i| {
                self.gens
                    .iter()
                    .filter(|g| g.exps().iter().enumerate().all(|(j, &e)| j == i || e == 0))
                    .map(|g| g.exps()[i])
                    .min()
                    .ok_or(Error::NotArtinian(i + 1))
            })
            .collect()
    }

    pub fn is_artinian(&self) -> bool {
        self.pure_power_bounds().is_ok()
    }

    /// All monomials outside the ideal, in lexicographic order.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let bounds = self.pure_power_bounds()?;
        let mut out = Vec::new();
        for_each_in_box(&bounds, |e| {
            let m = Monomial::from(e);
            if !self.contains(&m) {
                out.push(m);
            }
        });
        Ok(out)
    }

    /// Socle monomials: standard monomials pushed into the ideal by every variable.
    pub fn socle(&self) -> Result<Vec<Monomial>> {
        Ok(self
            .standard_monomials()?
            .into_iter()
            .filter(|s| self.is_socle(s))
            .collect())
    }

    fn is_socle(&self, s: &Monomial) -> bool {
        (0..self.vars).all(|i| {
            let mut e = s.exps().to_vec();
            e[i] += 1;
            self.contains(&Monomial(e))
        })
    }

    /// Minimal elements of `{u : 0 <= u <= k, x^(k-u) not in M}`.
    ///
    /// These generate the Alexander dual of `M` with respect to `k + e`
    /// inside the box below `k`.
    pub fn alexander_dual_box_generators(&self, k: &Monomial) -> Result<Vec<Monomial>> {
        if k.vars() != self.vars || !k.is_nonneg() {
            return Err(Error::InvalidArgument(format!(
                "box corner {k} must be a non-negative exponent vector in {} variables",
                self.vars
            )));
        }
        let bounds: Vec<i64> = k.exps().iter().map(|&x| x + 1).collect();
        let mut candidates = Vec::new();
        for_each_in_box(&bounds, |u| {
            let u = Monomial::from(u);
            if !self.contains(&(k - &u)) {
                candidates.push(u);
            }
        });
        Ok(minimize(candidates))
    }

    /// Parses the text format: `vars <m>` followed by `gen <e_1> ... <e_m>` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vars = None;
        let mut gens = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            match (parts.next(), vars) {
                (Some("vars"), None) => {
                    let m = parse_field::<usize>(parts.next(), lineno, "variable count")?;
                    if parts.next().is_some() {
                        return Err(parse_err(lineno, "trailing tokens after vars"));
                    }
                    vars = Some(m);
                }
                (Some("vars"), Some(_)) => return Err(parse_err(lineno, "duplicate vars line")),
                (Some("gen"), Some(m)) => {
                    let exps: Vec<i64> = parts
                        .map(|t| t.parse::<i64>().map_err(|_| parse_err(lineno, "bad exponent")))
                        .collect::<Result<_>>()?;
                    if exps.len() != m {
                        return Err(parse_err(
                            lineno,
                            &format!("expected {m} exponents, found {}", exps.len()),
                        ));
                    }
                    if exps.iter().any(|&e| e < 0) {
                        return Err(parse_err(lineno, "negative exponent"));
                    }
                    gens.push(Monomial(exps));
                }
                (Some("gen"), None) => return Err(parse_err(lineno, "gen before vars")),
                (Some(tok), _) => return Err(parse_err(lineno, &format!("unknown keyword {tok}"))),
                (None, _) => {}
            }
        }
        let vars = vars.ok_or_else(|| parse_err(0, "missing vars line"))?;
        MonomialIdeal::new(vars, gens)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("vars {}\n", self.vars);
        for g in &self.gens {
            let e: Vec<String> = g.exps().iter().map(ToString::to_string).collect();
            s.push_str(&format!("gen {}\n", e.join(" ")));
        }
        s
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", g.join(", "))
    }
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse { line, msg: msg.to_string() }
}

pub(crate) fn parse_field<T: std::str::FromStr>(
    tok: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T> {
    tok.ok_or_else(|| parse_err(line, &format!("missing {what}")))?
        .parse::<T>()
        .map_err(|_| parse_err(line, &format!("bad {what}")))
}

/// Minimal elements under divisibility, deduplicated and sorted.
pub(crate) fn minimize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    // A divisor has coordinate sum no larger than its multiple; test against
    // lower-degree survivors only.
    let mut by_degree = gens.clone();
    by_degree.sort_by_key(Monomial::degree);
    let mut kept: Vec<Monomial> = Vec::new();
    for g in by_degree {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

/// Visits every exponent vector `e` with `0 <= e_i < bounds_i` in lexicographic order.
pub(crate) fn for_each_in_box(bounds: &[i64], mut f: impl FnMut(&[i64])) {
    if bounds.iter().any(|&b| b <= 0) {
        return;
    }
    let mut e = vec![0i64; bounds.len()];
    loop {
        f(&e);
        let mut i = bounds.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            e[i] += 1;
            if e[i] < bounds[i] {
                break;
            }
            e[i] = 0;
        }
    }
}

/// Visits every `e` in `N^parts` with coordinate sum `total`, in lexicographic order.
pub(crate) fn for_each_composition(total: i64, parts: usize, mut f: impl FnMut(&[i64])) {
    fn rec(e: &mut Vec<i64>, i: usize, left: i64, f: &mut dyn FnMut(&[i64])) {
        if i + 1 == e.len() {
            e[i] = left;
            f(e);
            return;
        }
        for x in 0..=left {
            e[i] = x;
            rec(e, i + 1, left - x, f);
        }
    }
    if total < 0 || parts == 0 {
        if total == 0 && parts == 0 {
            f(&[]);
        }
        return;
    }
    let mut e = vec![0; parts];
    rec(&mut e, 0, total, &mut f);
}

/// Intersection of the irreducible ideals `<x_1^{a_1}, ..., x_m^{a_m}>`, one per
/// component vector `a` (all entries at least 1).
pub fn intersect_irreducible(components: &[Monomial], vars: usize) -> Result<MonomialIdeal> {
    let mut acc: Option<Vec<Monomial>> = None;
    for a in components {
        if a.vars() != vars || a.exps().iter().any(|&x| x < 1) {
            return Err(Error::InvalidArgument(format!(
                "irreducible component {a:?} must have {vars} positive exponents"
            )));
        }
        let powers: Vec<Monomial> = (0..vars)
            .map(|i| {
                let mut e = vec![0; vars];
                e[i] = a.exps()[i];
                Monomial(e)
            })
            .collect();
        acc = Some(match acc {
            None => powers,
            Some(prev) => {
                let merged = prev
                    .iter()
                    .flat_map(|g| powers.iter().map(move |p| g.lcm(p)))
                    .collect();
                minimize(merged)
            }
        });
    }
    let gens = acc.ok_or_else(|| Error::InvalidArgument("no irreducible components".into()))?;
    MonomialIdeal::new(vars, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[i64]) -> Monomial {
        Monomial::from(e)
    }

    pub(crate) fn k4_parking() -> MonomialIdeal {
        MonomialIdeal::new(
            3,
            vec![
                m(&[3, 0, 0]),
                m(&[0, 3, 0]),
                m(&[0, 0, 3]),
                m(&[1, 1, 1]),
                m(&[2, 2, 0]),
                m(&[2, 0, 2]),
                m(&[0, 2, 2]),
            ],
        )
        .unwrap()
    }

    fn fig2() -> MonomialIdeal {
        MonomialIdeal::new(2, vec![m(&[9, 0]), m(&[6, 4]), m(&[5, 7]), m(&[2, 8]), m(&[0, 11])])
            .unwrap()
    }

    fn k4_socle() -> Vec<Monomial> {
        let mut s = vec![
            m(&[0, 1, 2]),
            m(&[0, 2, 1]),
            m(&[1, 0, 2]),
            m(&[1, 2, 0]),
            m(&[2, 0, 1]),
            m(&[2, 1, 0]),
        ];
        s.sort();
        s
    }

    #[test]
    fn membership() {
        assert!(k4_parking().contains(&m(&[3, 0, 0])));
        assert!(!k4_parking().contains(&m(&[0, 0, 0])));
        assert!(!fig2().contains(&m(&[8, 3])));
        assert!(!fig2().contains(&m(&[-1, 20])));
    }

    #[test]
    fn standard_monomials_examples() {
        assert_eq!(k4_parking().standard_monomials().unwrap().len(), 16);
        let maximal = MonomialIdeal::new(3, vec![m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])]).unwrap();
        assert_eq!(maximal.standard_monomials().unwrap(), vec![m(&[0, 0, 0])]);
        let ci = MonomialIdeal::new(3, vec![m(&[2, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 3])]).unwrap();
        let expected = vec![
            m(&[0, 0, 0]),
            m(&[0, 0, 1]),
            m(&[0, 0, 2]),
            m(&[1, 0, 0]),
            m(&[1, 0, 1]),
            m(&[1, 0, 2]),
        ];
        assert_eq!(ci.standard_monomials().unwrap(), expected);
    }

    #[test]
    fn non_artinian_rejected() {
        let i = MonomialIdeal::new(2, vec![m(&[1, 1]), m(&[2, 0])]).unwrap();
        assert_eq!(i.standard_monomials(), Err(Error::NotArtinian(2)));
        assert!(i.socle().is_err());
    }

    #[test]
    fn socle_examples() {
        assert_eq!(k4_parking().socle().unwrap(), k4_socle());
        let one_var = MonomialIdeal::new(1, vec![m(&[5])]).unwrap();
        assert_eq!(one_var.socle().unwrap(), vec![m(&[4])]);
        assert_eq!(
            fig2().socle().unwrap(),
            vec![m(&[1, 10]), m(&[4, 7]), m(&[5, 6]), m(&[8, 3])]
        );
    }

    #[test]
    fn degree_plus_examples() {
        assert_eq!(degree_plus(&[2, -1, 3]), 5);
        assert_eq!(degree_plus(&[0, 0, 0]), 0);
        assert_eq!(degree_plus(&[-4, -2]), 0);
    }

    #[test]
    fn intersect_irreducible_examples() {
        let single = intersect_irreducible(&[m(&[2, 3])], 2).unwrap();
        assert_eq!(single.generators(), &[m(&[0, 3]), m(&[2, 0])]);

        let comps: Vec<Monomial> = k4_socle().iter().map(|c| c + &m(&[1, 1, 1])).collect();
        assert_eq!(intersect_irreducible(&comps, 3).unwrap(), k4_parking());

        let comps: Vec<Monomial> = fig2().socle().unwrap().iter().map(|c| c + &m(&[1, 1])).collect();
        assert_eq!(intersect_irreducible(&comps, 2).unwrap(), fig2());

        assert!(intersect_irreducible(&[m(&[0, 2])], 2).is_err());
    }

    #[test]
    fn alexander_dual_examples() {
        let dual = fig2().alexander_dual_box_generators(&m(&[9, 13])).unwrap();
        assert_eq!(dual, fig2().socle().unwrap());
        let dual = k4_parking().alexander_dual_box_generators(&m(&[2, 2, 2])).unwrap();
        assert_eq!(dual, k4_socle());
        let x = MonomialIdeal::new(1, vec![m(&[1])]).unwrap();
        assert_eq!(x.alexander_dual_box_generators(&m(&[0])).unwrap(), vec![m(&[0])]);
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let text = "# plane example\nvars 2\ngen 9 0\ngen 6 4\ngen 5 7\ngen 2 8\ngen 0 11\n";
        let ideal = MonomialIdeal::parse(text).unwrap();
        assert_eq!(ideal, fig2());
        assert_eq!(MonomialIdeal::parse(&ideal.to_text()).unwrap(), ideal);
        assert!(matches!(MonomialIdeal::parse("gen 1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            MonomialIdeal::parse("vars 2\ngen 1 2 3"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(MonomialIdeal::parse("vars 2\ngen 1 -2").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(m(&[2, 0, -1]).to_string(), "x1^2*x3^-1");
        assert_eq!(m(&[0, 0]).to_string(), "1");
    }
}
