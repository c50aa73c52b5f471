use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `U · A · V = S` with `U`, `V` unimodular and `S` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub a: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub s: IntMatrix,
    /// Nonzero diagonal entries of `S`, positive and forming a divisibility
    /// chain.
    pub factors: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithCheck {
    pub product_matches: bool,
    pub u_unimodular: bool,
    pub v_unimodular: bool,
    pub diagonal: bool,
    pub divisibility_chain: bool,
}

impl SmithCheck {
    pub fn pass(&self) -> bool {
        self.product_matches
            && self.u_unimodular
            && self.v_unimodular
            && self.diagonal
            && self.divisibility_chain
    }
}

impl SmithForm {
    /// Multiplies the witnesses back out and checks every claim.
    pub fn verify(&self) -> Result<SmithCheck> {
        let uav = self.u.mul(&self.a)?.mul(&self.v)?;
        let unit = |m: &IntMatrix| determinant(m).map(|d| d.abs().is_one());
        let s = self.s.to_dense();
        let mut diagonal = true;
        for (r, row) in s.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if r != c && !v.is_zero() {
                    diagonal = false;
                }
            }
        }
        let diag: Vec<BigInt> = (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.get(i, i))
            .collect();
        let nonzero: Vec<&BigInt> = diag.iter().filter(|d| !d.is_zero()).collect();
        let leading = diag.iter().take(nonzero.len()).all(|d| d.is_positive());
        let chain = nonzero.windows(2).all(|w| (w[1] % w[0]).is_zero());
        let listed: Vec<&BigInt> = self.factors.iter().collect();
        Ok(SmithCheck {
            product_matches: uav == self.s,
            u_unimodular: unit(&self.u)?,
            v_unimodular: unit(&self.v)?,
            diagonal,
            divisibility_chain: leading && chain && listed == nonzero,
        })
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::Shape("determinant of a non-square matrix".into()));
    }
    let mut a = m.to_dense();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(if n == 0 { BigInt::one() } else { sign * &a[n - 1][n - 1] })
}

struct Dense {
    m: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl Dense {
    fn rows(&self) -> usize {
        self.m.len()
    }

    fn cols(&self) -> usize {
        self.m.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap(a, b);
        if let Some(u) = &mut self.u {
            u.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.m {
            row.swap(a, b);
        }
        if let Some(v) = &mut self.v {
            for row in v {
                row.swap(a, b);
            }
        }
    }

    /// row[dst] -= q · row[src]
    fn row_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        let (s, d) = pair_mut(&mut self.m, src, dst);
        for (x, y) in d.iter_mut().zip(s.iter()) {
            *x -= q * y;
        }
        if let Some(u) = &mut self.u {
            let (s, d) = pair_mut(u, src, dst);
            for (x, y) in d.iter_mut().zip(s.iter()) {
                *x -= q * y;
            }
        }
    }

    /// col[dst] -= q · col[src]
    fn col_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        for row in &mut self.m {
            let y = row[src].clone();
            row[dst] -= q * y;
        }
        if let Some(v) = &mut self.v {
            for row in v {
                let y = row[src].clone();
                row[dst] -= q * y;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in &mut self.m[r] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[r] {
                *x = -&*x;
            }
        }
    }

    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let v = &self.m[i][j];
                if !v.is_zero() {
                    let a = v.abs();
                    if best.as_ref().map_or(true, |b| a < b.2) {
                        let one = a.is_one();
                        best = Some((i, j, a));
                        if one {
                            let (i, j, _) = best.unwrap();
                            return Some((i, j));
                        }
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Reduces to Smith form in place; returns the nonzero diagonal.
    fn reduce(&mut self) -> Vec<BigInt> {
        let (m, n) = (self.rows(), self.cols());
        let mut t = 0;
        while t < m.min(n) {
            let Some((i, j)) = self.smallest(t) else { break };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    if !self.m[i][t].is_zero() {
                        let q = self.m[i][t].div_floor(&self.m[t][t]);
                        self.row_op(i, t, &q);
                        if !self.m[i][t].is_zero() {
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..n {
                    if !self.m[t][j].is_zero() {
                        let q = self.m[t][j].div_floor(&self.m[t][t]);
                        self.col_op(j, t, &q);
                        if !self.m[t][j].is_zero() {
                            dirty = true;
                        }
                    }
                }
                if !dirty {
                    // divisibility: fold an offending row into row t
                    let p = self.m[t][t].clone();
                    let bad = (t + 1..m)
                        .find(|&i| (t + 1..n).any(|j| !(&self.m[i][j] % &p).is_zero()));
                    match bad {
                        Some(i) => {
                            self.row_op(t, i, &-BigInt::one());
                        }
                        None => break,
                    }
                }
                let (i, j) = self.smallest_in_cross(t);
                self.swap_rows(t, i);
                self.swap_cols(t, j);
            }
            if self.m[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        (0..t).map(|k| self.m[k][k].clone()).collect()
    }

    /// Smallest nonzero entry in row `t` or column `t` (from `t` on).
    fn smallest_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t, self.m[t][t].abs());
        for i in t + 1..self.rows() {
            let a = self.m[i][t].abs();
            if !a.is_zero() && (best.2.is_zero() || a < best.2) {
                best = (i, t, a);
            }
        }
        for j in t + 1..self.cols() {
            let a = self.m[t][j].abs();
            if !a.is_zero() && (best.2.is_zero() || a < best.2) {
                best = (t, j, a);
            }
        }
        (best.0, best.1)
    }
}

fn pair_mut<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (a, b) = v.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

fn identity_dense(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Dense Smith normal form with unimodular witnesses.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = Dense {
        m: a.to_dense(),
        u: Some(identity_dense(m)),
        v: Some(identity_dense(n)),
    };
    if n == 0 {
        d.m = vec![Vec::new(); m];
    }
    let factors = d.reduce();
    let s = IntMatrix::from_dense_big(m, n, &d.m);
    SmithForm {
        a: a.clone(),
        u: IntMatrix::from_dense_big(m, m, &d.u.unwrap()),
        v: IntMatrix::from_dense_big(n, n, &d.v.unwrap()),
        s,
        factors,
    }
}

/// Invariant factors of `a` (nonzero diagonal of its Smith form).
///
/// Unit pivots are eliminated sparsely first: with `a_rc = ±1`, the Smith
/// form of `A` is `1 ⊕` that of the Schur complement
/// `A' = A − A[:,c] a_rc A[r,:]`. Whatever remains is reduced densely.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<u32, BigInt>> = vec![BTreeMap::new(); a.rows()];
    let mut col_rows: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); a.cols()];
    for c in 0..a.cols() {
        for (r, v) in a.column(c) {
            rows[*r as usize].insert(c as u32, v.clone());
            col_rows[c].insert(*r);
        }
    }
    let mut units = 0usize;
    loop {
        let mut progress = false;
        for c in 0..col_rows.len() {
            let pivot = col_rows[c]
                .iter()
                .filter(|&&r| rows[r as usize][&(c as u32)].abs().is_one())
                .min_by_key(|&&r| rows[r as usize].len())
                .copied();
            let Some(r) = pivot else { continue };
            eliminate(&mut rows, &mut col_rows, r, c as u32);
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<u32> = (0..col_rows.len() as u32)
        .filter(|&c| !col_rows[c as usize].is_empty())
        .collect();
    let mut factors = vec![BigInt::one(); units];
    if !live_rows.is_empty() {
        let m = live_rows
            .iter()
            .map(|&r| {
                live_cols
                    .iter()
                    .map(|c| rows[r].get(c).cloned().unwrap_or_else(BigInt::zero))
                    .collect()
            })
            .collect();
        let mut d = Dense { m, u: None, v: None };
        factors.extend(d.reduce());
    }
    factors
}

fn eliminate(rows: &mut [BTreeMap<u32, BigInt>], col_rows: &mut [BTreeSet<u32>], r: u32, c: u32) {
    let pivot_row = std::mem::take(&mut rows[r as usize]);
    let a = pivot_row[&c].clone();
    for j in pivot_row.keys() {
        col_rows[*j as usize].remove(&r);
    }
    let others: Vec<u32> = col_rows[c as usize].iter().copied().collect();
    for i in others {
        let row = &mut rows[i as usize];
        let factor = row.remove(&c).expect("entry in pivot column") * &a;
        for (j, v) in &pivot_row {
            if *j == c {
                continue;
            }
            let e = row.entry(*j).or_insert_with(BigInt::zero);
            *e -= &factor * v;
            if e.is_zero() {
                row.remove(j);
                col_rows[*j as usize].remove(&i);
            } else {
                col_rows[*j as usize].insert(i);
            }
        }
    }
    col_rows[c as usize].clear();
}

/// Rank over the rationals by fraction-free elimination; an independent
/// check on the elimination above.
pub fn rational_rank(a: &IntMatrix) -> usize {
    let mut m = a.to_dense();
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let (x, y) = (m[rank][c].clone(), m[r][c].clone());
                for k in 0..cols {
                    let v = &m[r][k] * &x - &m[rank][k] * &y;
                    m[r][k] = v;
                }
                let g = m[r].iter().fold(BigInt::zero(), |g, v| g.gcd(v));
                if !g.is_zero() && !g.is_one() {
                    for v in &mut m[r] {
                        *v /= &g;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}
