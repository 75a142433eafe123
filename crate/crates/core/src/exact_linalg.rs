//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Determinants and
//! ranks over the rationals use fraction-free (Bareiss) elimination, ranks over
//! `GF(p)` use modular elimination, and lattice questions go through the Smith
//! normal form with its unimodular transforms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix stored in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        IntMatrix::new(rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Entries as `i64`, failing if any entry does not fit.
    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|x| x.to_i64().ok_or(Error::Overflow("matrix entry")))
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// The matrix with row `r` and column `c` deleted.
    pub fn minor(&self, r: usize, c: usize) -> IntMatrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(src, c) * k;
            self.data[dst * self.cols + c] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, src) * k;
            self.data[r * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c);
            self.set(r, c, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Characteristic of the coefficient field: zero (the rationals) or a prime.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Characteristic(u64);

impl Characteristic {
    pub const ZERO: Characteristic = Characteristic(0);

    pub fn new(p: u64) -> Result<Self> {
        if p == 0 || is_prime(p) {
            Ok(Characteristic(p))
        } else {
            Err(Error::Characteristic(p))
        }
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            let aik = a.get(i, k).clone();
            for j in k + 1..n {
                let v = (a.get(i, j) * &pivot - &aik * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
            a.set(i, k, BigInt::zero());
        }
        prev = pivot;
    }
    let det = a.get(n - 1, n - 1).clone();
    Ok(if negate { -det } else { det })
}

/// Rank of `m` over the field of the given characteristic.
pub fn rank_over_field(m: &IntMatrix, ch: Characteristic) -> usize {
    if ch.is_zero() {
        rank_rational(m)
    } else {
        rank_mod_p(m, ch.value())
    }
}

fn rank_rational(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..a.cols {
        if rank == a.rows {
            break;
        }
        let Some(p) = (rank..a.rows).find(|&i| !a.get(i, col).is_zero()) else {
            continue;
        };
        a.swap_rows(rank, p);
        let pivot = a.get(rank, col).clone();
        for i in rank + 1..a.rows {
            let aic = a.get(i, col).clone();
            for j in col + 1..a.cols {
                let v = (a.get(i, j) * &pivot - &aic * a.get(rank, j)) / &prev;
                a.set(i, j, v);
            }
            a.set(i, col, BigInt::zero());
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| {
            m.row(r)
                .iter()
                .map(|x| x.mod_floor(&pb).to_u64().expect("residue fits in u64"))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(piv) = (rank..m.rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = inv_mod(a[rank][col], p);
        for j in col..m.cols {
            a[rank][j] = mul_mod(a[rank][j], inv, p);
        }
        for i in 0..m.rows {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col];
                for j in col..m.cols {
                    let s = mul_mod(f, a[rank][j], p);
                    a[i][j] = (a[i][j] + p - s) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Smith normal form `left * m * right = diagonal` with unimodular transforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Non-negative diagonal entries, one per `min(rows, cols)`; nonzero
    /// entries come first and each divides the next.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    /// The diagonal matrix with the shape of the original input.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.cols());
        for (i, v) in self.diagonal.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }
}

/// Smith normal form by repeated gcd elimination, always pivoting on the
/// smallest nonzero absolute value of the active submatrix.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    let steps = rows.min(cols);
    for t in 0..steps {
        let Some((pi, pj)) = smallest_entry(&a, (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j))))
        else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(&pivot);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(&pivot);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                let line = (t..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
                let (pi, pj) = smallest_entry(&a, line).expect("pivot line is nonzero");
                a.swap_rows(t, pi);
                left.swap_rows(t, pi);
                a.swap_cols(t, pj);
                right.swap_cols(t, pj);
                continue;
            }
            // Row and column are clear; enforce the divisibility chain.
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diagonal = (0..steps).map(|i| a.get(i, i).clone()).collect();
    SmithForm { diagonal, left, right }
}

fn smallest_entry(
    a: &IntMatrix,
    positions: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    positions
        .filter(|&(i, j)| !a.get(i, j).is_zero())
        .min_by(|&(i, j), &(k, l)| a.get(i, j).abs().cmp(&a.get(k, l).abs()))
}

/// Some integer solution of `m * x = b`, or `None` when none exists over the integers.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.rows {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows
        )));
    }
    let snf = smith_normal_form(m);
    Ok(solve_with_smith(&snf, b))
}

/// Solves `m * x = b` given a precomputed Smith form of `m`.
pub fn solve_with_smith(snf: &SmithForm, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = snf.left.mul_vec(b).ok()?;
    let cols = snf.right.rows();
    let mut y = vec![BigInt::zero(); cols];
    for (i, ci) in c.iter().enumerate() {
        let d = snf.diagonal.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !ci.is_zero() {
                return None;
            }
        } else {
            let (q, r) = ci.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    snf.right.mul_vec(&y).ok()
}

/// Rank of a sparse matrix given as rows of `(column, value)` pairs.
///
/// Used for simplicial boundary maps, whose rows are short and whose entries
/// are `±1`. Over the rationals the elimination runs on `i128` and falls back
/// to arbitrary precision if an entry would overflow.
pub fn sparse_rank(rows: &[Vec<(usize, i64)>], ch: Characteristic) -> usize {
    if ch.is_zero() {
        sparse_rank_rational_i128(rows).unwrap_or_else(|| sparse_rank_rational_big(rows))
    } else {
        sparse_rank_mod_p(rows, ch.value())
    }
}

fn sorted_row<T: Clone>(row: &[(usize, T)]) -> Vec<(usize, T)> {
    let mut r = row.to_vec();
    r.sort_by_key(|e| e.0);
    r
}

fn sparse_rank_mod_p(rows: &[Vec<(usize, i64)>], p: u64) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for row in rows {
        let mut cur: Vec<(usize, u64)> = sorted_row(row)
            .into_iter()
            .map(|(c, v)| (c, v.rem_euclid(p as i64) as u64))
            .filter(|e| e.1 != 0)
            .collect();
        while let Some(&(lead, lv)) = cur.first() {
            match pivots.get(&lead) {
                Some(prow) => {
                    // cur -= lv * prow   (prow is normalized: leading 1)
                    let mut out = Vec::with_capacity(cur.len() + prow.len());
                    let (mut i, mut j) = (0, 0);
                    while i < cur.len() || j < prow.len() {
                        let ci = cur.get(i).map_or(usize::MAX, |e| e.0);
                        let cj = prow.get(j).map_or(usize::MAX, |e| e.0);
                        if ci < cj {
                            out.push(cur[i]);
                            i += 1;
                        } else if cj < ci {
                            out.push((cj, (p - mul_mod(lv, prow[j].1, p)) % p));
                            j += 1;
                        } else {
                            let v = (cur[i].1 + p - mul_mod(lv, prow[j].1, p)) % p;
                            if v != 0 {
                                out.push((ci, v));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    cur = out;
                }
                None => {
                    let inv = inv_mod(lv, p);
                    for e in &mut cur {
                        e.1 = mul_mod(e.1, inv, p);
                    }
                    pivots.insert(lead, cur);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn sparse_rank_rational_i128(rows: &[Vec<(usize, i64)>]) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, i128)>> = HashMap::new();
    for row in rows {
        let mut cur: Vec<(usize, i128)> = sorted_row(row)
            .into_iter()
            .filter(|e| e.1 != 0)
            .map(|(c, v)| (c, v as i128))
            .collect();
        while let Some(&(lead, lv)) = cur.first() {
            match pivots.get(&lead) {
                Some(prow) => {
                    let pv = prow[0].1;
                    // cur = cur * pv - prow * lv
                    let mut out = Vec::with_capacity(cur.len() + prow.len());
                    let (mut i, mut j) = (0, 0);
                    while i < cur.len() || j < prow.len() {
                        let ci = cur.get(i).map_or(usize::MAX, |e| e.0);
                        let cj = prow.get(j).map_or(usize::MAX, |e| e.0);
                        let (col, v) = if ci < cj {
                            i += 1;
                            (ci, cur[i - 1].1.checked_mul(pv)?)
                        } else if cj < ci {
                            j += 1;
                            (cj, prow[j - 1].1.checked_mul(lv)?.checked_neg()?)
                        } else {
                            i += 1;
                            j += 1;
                            let a = cur[i - 1].1.checked_mul(pv)?;
                            let b = prow[j - 1].1.checked_mul(lv)?;
                            (ci, a.checked_sub(b)?)
                        };
                        if v != 0 {
                            out.push((col, v));
                        }
                    }
                    let g = out.iter().fold(0i128, |g, e| g.gcd(&e.1));
                    if g > 1 {
                        for e in &mut out {
                            e.1 /= g;
                        }
                    }
                    cur = out;
                }
                None => {
                    pivots.insert(lead, cur);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

fn sparse_rank_rational_big(rows: &[Vec<(usize, i64)>]) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, BigInt)>> = HashMap::new();
    for row in rows {
        let mut cur: Vec<(usize, BigInt)> = sorted_row(row)
            .into_iter()
            .filter(|e| e.1 != 0)
            .map(|(c, v)| (c, BigInt::from(v)))
            .collect();
        while let Some((lead, lv)) = cur.first().cloned() {
            match pivots.get(&lead) {
                Some(prow) => {
                    let pv = &prow[0].1;
                    let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                    for (c, v) in &cur {
                        acc.insert(*c, v * pv);
                    }
                    for (c, v) in prow {
                        *acc.entry(*c).or_insert_with(BigInt::zero) -= v * &lv;
                    }
                    let mut out: Vec<(usize, BigInt)> =
                        acc.into_iter().filter(|e| !e.1.is_zero()).collect();
                    let g = out.iter().fold(BigInt::zero(), |g, e| g.gcd(&e.1));
                    if g > BigInt::one() {
                        for e in &mut out {
                            e.1 /= &g;
                        }
                    }
                    cur = out;
                }
                None => {
                    pivots.insert(lead, cur);
                    break;
                }
            }
        }
    }
    pivots.len()
}
