//! Matrices over the fraction field, fraction-free solving, denominator
//! clearing and minor enumeration.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyalg::{MonomialOrder, Polynomial, Rational, RationalFunction, VariableRing};

/// Dense matrix of rational functions over one ring, stored row-major.
#[derive(Clone, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RationalFunction>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<RationalFunction>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::MalformedInput(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(first) = entries.first() {
            if entries.iter().any(|e| e.ring().names() != first.ring().names()) {
                return Err(Error::MalformedInput("matrix entries from different rings".into()));
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<RationalFunction>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::MalformedInput("ragged matrix rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(ring: &Arc<VariableRing>, order: &MonomialOrder, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![RationalFunction::zero(ring, order); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<VariableRing>, order: &MonomialOrder, n: usize) -> Self {
        let mut m = Self::zeros(ring, order, n, n);
        for i in 0..n {
            m.entries[i * n + i] = RationalFunction::constant(ring, order, Rational::from_integer(1.into()));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RationalFunction] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.entries
    }

    fn template<'a>(&'a self, other: Option<&'a Self>) -> Option<&'a RationalFunction> {
        self.entries.first().or_else(|| other.and_then(|o| o.entries.first()))
    }

    pub fn transpose(&self) -> Self {
        let mut e = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                e.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries: e,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::MalformedInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let Some(t) = self.template(Some(other)) else {
            return Ok(Self {
                rows: self.rows,
                cols: other.cols,
                entries: Vec::new(),
            });
        };
        let mut e = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = RationalFunction::zero(t.ring(), t.order());
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b)?)?;
                }
                e.push(acc);
            }
        }
        Self::new(self.rows, other.cols, e)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::MalformedInput(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let e = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.rows, self.cols, e)
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.neg()).collect(),
        }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut e = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                e.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: rows.len(),
            cols: cols.len(),
            entries: e,
        }
    }

    /// Exact entrywise equality in the fraction field.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Ok(false);
        }
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if !a.equals(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Numeric matrix at a rational point, or `None` if some denominator
    /// vanishes there.
    pub fn eval(&self, point: &[Rational]) -> Option<Vec<Vec<Rational>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.eval(point)).collect())
            .collect()
    }

    pub fn eval_mod(&self, point: &[u64], p: u64) -> Option<Vec<Vec<u64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.eval_mod(point, p)).collect())
            .collect()
    }

    pub fn to_ring(&self, ring: &Arc<VariableRing>, order: &MonomialOrder) -> Result<Self> {
        let e = self
            .entries
            .iter()
            .map(|x| x.to_ring(ring, order))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.rows, self.cols, e)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// A matrix with every row multiplied into polynomial form.
#[derive(Clone, Debug)]
pub struct ClearedMatrix {
    pub rows: usize,
    pub cols: usize,
    /// Row-major polynomial grid: `polys[i][j] = row_denoms[i] * entry`.
    pub polys: Vec<Vec<Polynomial>>,
    pub row_denoms: Vec<Polynomial>,
    /// Product of the distinct non-constant denominator factors.
    pub denom_product: Polynomial,
}

/// Label recorded in reports for the lcm replacement.
pub const DENOMINATOR_SURROGATE: &str = "product";

/// Distinct non-constant monic denominators, in first-appearance order.
pub fn distinct_denominators<'a>(entries: impl IntoIterator<Item = &'a RationalFunction>) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for e in entries {
        let d = e.denom();
        if !d.is_constant() && !out.contains(d) {
            out.push(d.clone());
        }
    }
    out
}

fn product(ps: &[Polynomial], ring: &Arc<VariableRing>, order: &MonomialOrder) -> Polynomial {
    ps.iter()
        .fold(Polynomial::one(ring, order), |acc, p| &acc * p)
}

/// Multiplies every row by the product of its distinct denominators.
pub fn clear_denominators(a: &RationalMatrix) -> Result<ClearedMatrix> {
    let Some(t) = a.entries.first() else {
        return Err(Error::Precondition("cannot clear an empty matrix".into()));
    };
    let (ring, order) = (t.ring().clone(), t.order().clone());
    let mut polys = Vec::with_capacity(a.rows);
    let mut row_denoms = Vec::with_capacity(a.rows);
    let mut all: Vec<Polynomial> = Vec::new();
    for i in 0..a.rows {
        let ds = distinct_denominators(a.row(i));
        let mut row = Vec::with_capacity(a.cols);
        for e in a.row(i) {
            let others: Vec<Polynomial> = ds.iter().filter(|d| *d != e.denom()).cloned().collect();
            let mut p = &e.numer().with_order(&order) * &product(&others, &ring, &order);
            if e.denom().is_constant() {
                p = p.scale(&e.denom().constant_value().unwrap().recip());
            }
            row.push(p);
        }
        for d in &ds {
            if !all.contains(d) {
                all.push(d.clone());
            }
        }
        polys.push(row);
        row_denoms.push(product(&ds, &ring, &order));
    }
    Ok(ClearedMatrix {
        rows: a.rows,
        cols: a.cols,
        polys,
        row_denoms,
        denom_product: product(&all, &ring, &order),
    })
}

/// Determinant by Bareiss fraction-free elimination. Returns zero for a
/// singular matrix.
pub fn det_bareiss(mut m: Vec<Vec<Polynomial>>) -> Result<Polynomial> {
    let n = m.len();
    if n == 0 {
        return Err(Error::Precondition("determinant of an empty matrix".into()));
    }
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::MalformedInput("determinant of a non-square matrix".into()));
    }
    let (ring, order) = (m[0][0].ring().clone(), m[0][0].order().clone());
    let mut prev = Polynomial::one(&ring, &order);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| (m[i][k].len(), i))
        else {
            return Ok(Polynomial::zero(&ring, &order));
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = exact_div(&v, &prev)?;
            }
            m[i][k] = Polynomial::zero(&ring, &order);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}

fn exact_div(v: &Polynomial, d: &Polynomial) -> Result<Polynomial> {
    if v.is_zero() || d.is_one() {
        return Ok(v.clone());
    }
    v.div_exact(d)?
        .ok_or_else(|| Error::Inconsistency(format!("Bareiss step: {d} does not divide {v}")))
}

/// Solves `P X = Q` exactly by fraction-free Gauss-Jordan elimination on the
/// row-cleared augmented matrix.
pub fn fraction_free_solve(p: &RationalMatrix, q: &RationalMatrix) -> Result<RationalMatrix> {
    let n = p.rows;
    if p.cols != n {
        return Err(Error::Precondition(format!("P is {}x{}, not square", p.rows, p.cols)));
    }
    if q.rows != n {
        return Err(Error::MalformedInput(format!(
            "P has {n} rows but Q has {}",
            q.rows
        )));
    }
    let m = q.cols;
    if n == 0 {
        return Ok(q.clone());
    }
    let t = &p.entries[0];
    let (ring, order) = (t.ring().clone(), t.order().clone());
    let mut aug: Vec<RationalFunction> = Vec::with_capacity(n * (n + m));
    for i in 0..n {
        aug.extend_from_slice(p.row(i));
        aug.extend_from_slice(q.row(i));
    }
    let cleared = clear_denominators(&RationalMatrix::new(n, n + m, aug)?)?;
    let mut a = cleared.polys;
    let mut prev = Polynomial::one(&ring, &order);
    for k in 0..n {
        let Some(piv) = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| (a[i][k].len(), i))
        else {
            return Err(Error::WellPosedness(
                "det P vanishes identically (P is structurally singular)".into(),
            ));
        };
        a.swap(piv, k);
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in 0..n + m {
                if j == k {
                    continue;
                }
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = exact_div(&v, &prev)?;
            }
            a[i][k] = Polynomial::zero(&ring, &order);
        }
        prev = a[k][k].clone();
    }
    // Every diagonal entry now equals det P (up to the sign of the swaps).
    let det = a[n - 1][n - 1].clone();
    let mut e = Vec::with_capacity(n * m);
    for row in a.iter().take(n) {
        for j in 0..m {
            e.push(RationalFunction::new(row[n + j].clone(), det.clone())?);
        }
    }
    RationalMatrix::new(n, m, e)
}

/// `Pi = R P^{-1} Q + S`.
pub fn build_pi(
    p: &RationalMatrix,
    q: &RationalMatrix,
    r: &RationalMatrix,
    s: &RationalMatrix,
) -> Result<RationalMatrix> {
    let x = fraction_free_solve(p, q)?;
    r.mul(&x)?.add(s)
}

/// Lazy enumeration of the `k x k` minors of a polynomial grid, row subsets
/// outer and column subsets inner, both in lexicographic order.
pub struct Minors<'a> {
    grid: &'a [Vec<Polynomial>],
    k: usize,
    rows: Option<Vec<usize>>,
    cols: Option<Vec<usize>>,
    ncols: usize,
}

pub fn minors_iter(grid: &[Vec<Polynomial>], k: usize) -> Result<Minors<'_>> {
    let nr = grid.len();
    let nc = grid.first().map_or(0, |r| r.len());
    if k == 0 || k > nr.min(nc) {
        return Err(Error::Precondition(format!(
            "minor size {k} outside 1..={} for a {nr}x{nc} matrix",
            nr.min(nc)
        )));
    }
    Ok(Minors {
        grid,
        k,
        rows: Some((0..k).collect()),
        cols: Some((0..k).collect()),
        ncols: nc,
    })
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl Iterator for Minors<'_> {
    /// `(row subset, column subset, determinant)`.
    type Item = Result<(Vec<usize>, Vec<usize>, Polynomial)>;

    fn next(&mut self) -> Option<Self::Item> {
        let rows = self.rows.clone()?;
        let cols = self.cols.clone()?;
        let sub: Vec<Vec<Polynomial>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.grid[i][j].clone()).collect())
            .collect();
        let mut c = cols.clone();
        if next_subset(&mut c, self.ncols) {
            self.cols = Some(c);
        } else {
            let mut r = rows.clone();
            if next_subset(&mut r, self.grid.len()) {
                self.rows = Some(r);
                self.cols = Some((0..self.k).collect());
            } else {
                self.rows = None;
            }
        }
        Some(det_bareiss(sub).map(|d| (rows, cols, d)))
    }
}

/// All `k x k` minors in enumeration order.
pub fn k_minors(grid: &[Vec<Polynomial>], k: usize) -> Result<Vec<Polynomial>> {
    minors_iter(grid, k)?.map(|r| r.map(|(_, _, d)| d)).collect()
}
