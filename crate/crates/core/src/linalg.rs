//! Exact linear algebra over the rationals.
//!
//! Two elimination routes live here. [`rank`] runs fraction-free (Bareiss)
//! elimination on an integer-scaled copy of the matrix. [`Subspace`] keeps a
//! sparse reduced row echelon basis over `Q` and is what the degreewise ideal
//! code builds on; its canonical form makes subspace equality a structural
//! comparison.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{input, Result};

pub type Rational = BigRational;

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return input(format!(
                "matrix of shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            ));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must share one length.
    /// An empty list gives a `0 x cols` matrix.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return input(format!("row {i} has length {}, expected {cols}", row.len()));
            }
            entries.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            entries,
        })
    }

    /// Builds a matrix from column vectors of length `rows`.
    pub fn from_columns(columns: &[Vec<Rational>], rows: usize) -> Result<Self> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return input(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                ));
            }
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| rat(x)).collect()
            })
            .collect();
        Matrix::from_rows(data, cols).expect("shape checked above")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return input(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            ));
        }
        Ok(self
            .row_vectors()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return input("matrix shape mismatch in subtraction");
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    /// Row space as a canonical [`Subspace`].
    pub fn row_space(&self) -> Subspace {
        let mut s = Subspace::new(self.cols);
        for row in self.row_vectors() {
            s.insert(SparseVec::from_dense(row));
        }
        s
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if self.rows != self.cols {
            return input("inverse of a non-square matrix");
        }
        let n = self.rows;
        let mut columns = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            match solve(self, &e)? {
                Some(x) => columns.push(x),
                None => return Ok(None),
            }
        }
        Matrix::from_columns(&columns, n).map(Some)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in self.row_vectors() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rescales a rational row to a primitive integer row with the same span.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect()
}

/// Rank over `Q` by fraction-free Bareiss elimination.
///
/// Pivots are chosen column by column as the entry of largest magnitude,
/// ties going to the lowest row index.
pub fn rank(m: &Matrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.row_vectors().map(integer_row).collect();
    let rows = m.rows;
    let cols = m.cols;
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut pivot: Option<usize> = None;
        for i in r..rows {
            if a[i][c].is_zero() {
                continue;
            }
            match pivot {
                Some(p) if a[i][c].abs() <= a[p][c].abs() => {}
                _ => pivot = Some(i),
            }
        }
        let Some(p) = pivot else { continue };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for k in c + 1..cols {
                let num = &prow[c] * &row[k] - &lead * &prow[k];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                row[k] = num / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Rank computed by the sparse rational echelon route; independent of [`rank`].
pub fn rank_rational(m: &Matrix) -> usize {
    m.row_space().dim()
}

/// Canonical row space computed by fraction-free Gauss–Jordan elimination over `Z`.
///
/// Every intermediate entry is a minor of the integerised input, so divisions by the
/// previous pivot are exact and no fraction appears until the final normalisation.
/// Much faster than [`Matrix::row_space`] on dense rows with large entries.
pub fn echelon_form(m: &Matrix) -> Subspace {
    let cols = m.cols;
    let mut a: Vec<Vec<BigInt>> = m
        .row_vectors()
        .map(integer_row)
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    for c in 0..cols {
        let r = pivots.len();
        if r == rows {
            break;
        }
        let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].bits())
        else {
            continue;
        };
        a.swap(r, p);
        let pivot_row = std::mem::take(&mut a[r]);
        let pv = pivot_row[c].clone();
        for row in a.iter_mut().filter(|row| !row.is_empty()) {
            let lead = std::mem::take(&mut row[c]);
            for k in 0..cols {
                if k == c {
                    continue;
                }
                let x = &row[k];
                let y = &pivot_row[k];
                if x.is_zero() && (y.is_zero() || lead.is_zero()) {
                    continue;
                }
                let num = &pv * x - &lead * y;
                debug_assert!(
                    (&num % &prev).is_zero(),
                    "fraction-free division must be exact"
                );
                row[k] = num / &prev;
            }
        }
        a[r] = pivot_row;
        prev = pv;
        pivots.push(c);
    }
    let mut out = Subspace::new(cols);
    for (row, &c) in a.iter().zip(&pivots) {
        let d = &row[c];
        let v = SparseVec::from_pairs(
            row.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (k, Rational::new(x.clone(), d.clone()))),
        );
        out.rows.insert(c, v);
    }
    out
}

/// Basis of the right null space, one vector per free column of the RREF.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    let rs = echelon_form(m);
    rs.free_columns()
        .into_iter()
        .map(|f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (p, row) in rs.pivot_rows() {
                let x = row.get(f);
                if !x.is_zero() {
                    v[p] = -x;
                }
            }
            v
        })
        .collect()
}

/// Some `x` with `m x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != m.rows {
        return input(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows
        ));
    }
    let n = m.cols;
    let mut aug = Subspace::new(n + 1);
    for (row, bi) in m.row_vectors().zip(b) {
        let mut v = SparseVec::from_dense(row);
        v.push_tail(n, bi.clone());
        aug.insert(v);
    }
    if aug.pivot_rows().any(|(p, _)| p == n) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); n];
    for (p, row) in aug.pivot_rows() {
        x[p] = row.get(n);
    }
    Ok(Some(x))
}

/// `(dim A, dim B, dim(A+B), dim(A∩B))` for the row spans of `a` and `b`.
pub fn subspace_dim_sum(a: &Matrix, b: &Matrix) -> Result<(usize, usize, usize, usize)> {
    if a.cols != b.cols {
        return input(format!(
            "ambient dimensions differ: {} vs {}",
            a.cols, b.cols
        ));
    }
    let sa = a.row_space();
    let sb = b.row_space();
    let sum = sa.sum(&sb);
    let (da, db, ds) = (sa.dim(), sb.dim(), sum.dim());
    Ok((da, db, ds, da + db - ds))
}

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Rational::one())],
        }
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    /// From unsorted `(index, value)` pairs; repeated indices are summed.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, x) in pairs {
            *map.entry(i).or_insert_with(Rational::zero) += x;
        }
        SparseVec {
            entries: map.into_iter().filter(|(_, x)| !x.is_zero()).collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        for (i, x) in &self.entries {
            v[*i] = x.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(i, x)| (*i, x))
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, x)| (*i, x))
    }

    fn push_tail(&mut self, i: usize, x: Rational) {
        debug_assert!(self.entries.last().is_none_or(|(j, _)| *j < i));
        if !x.is_zero() {
            self.entries.push((i, x));
        }
    }

    pub fn scale(&mut self, c: &Rational) {
        if c.is_zero() {
            self.entries.clear();
        } else {
            for (_, x) in &mut self.entries {
                *x *= c;
            }
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Rational, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, c * y));
                }
                (Some(_), Some(_)) => {
                    let (i, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = x + c * y;
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, c * y));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn dot(&self, dense: &[Rational]) -> Rational {
        self.entries
            .iter()
            .filter(|(i, _)| !dense[*i].is_zero())
            .fold(Rational::zero(), |acc, (i, x)| acc + x * &dense[*i])
    }
}

/// A subspace of `Q^n` held as its reduced row echelon basis.
///
/// Pivots are leading (lowest-index) entries, each pivot entry is 1 and every
/// other basis row is zero in that column, so two subspaces are equal exactly
/// when their `Subspace` values compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: BTreeMap::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let mut s = Subspace::new(ambient);
        for i in 0..ambient {
            s.rows.insert(i, SparseVec::unit(i));
        }
        s
    }

    pub fn spanned_by(ambient: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut s = Subspace::new(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// `(pivot column, row)` pairs in increasing pivot order.
    pub fn pivot_rows(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.rows.iter().map(|(p, r)| (*p, r))
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Non-pivot columns in increasing order; their unit vectors span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.rows.contains_key(c))
            .collect()
    }

    /// Normal form of `v`: the unique representative of `v + self` vanishing on all pivots.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, Rational)> = v
            .iter()
            .filter(|(i, _)| self.rows.contains_key(i))
            .map(|(i, x)| (i, x.clone()))
            .collect();
        let mut out = v.clone();
        for (p, x) in hits {
            out.axpy(&-x, &self.rows[&p]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().all(|v| self.contains(v))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce(&v);
        let Some((p, lead)) = v.leading() else {
            return false;
        };
        let inv = lead.recip();
        v.scale(&inv);
        for row in self.rows.values_mut() {
            let x = row.get(p);
            if !x.is_zero() {
                row.axpy(&-x, &v);
            }
        }
        self.rows.insert(p, v);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in other.basis() {
            s.insert(v.clone());
        }
        s
    }

    /// Coordinates of `v + self` in the quotient, indexed like [`Self::free_columns`].
    pub fn quotient_coords(&self, v: &SparseVec, free_index: &[Option<usize>]) -> SparseVec {
        let nf = self.reduce(v);
        SparseVec::from_pairs(nf.iter().map(|(i, x)| {
            (
                free_index[i].expect("normal form lives on free columns"),
                x.clone(),
            )
        }))
    }

    /// Map from ambient column to its position among free columns.
    pub fn free_index(&self) -> Vec<Option<usize>> {
        let mut idx = vec![None; self.ambient];
        for (k, c) in self.free_columns().into_iter().enumerate() {
            idx[c] = Some(k);
        }
        idx
    }

    /// Matrix whose rows are the echelon basis.
    pub fn to_matrix(&self) -> Matrix {
        let rows = self.basis().map(|v| v.to_dense(self.ambient)).collect();
        Matrix::from_rows(rows, self.ambient).expect("rows have ambient length")
    }
}
