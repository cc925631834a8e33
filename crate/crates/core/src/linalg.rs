//! Exact linear algebra over the rationals.
//!
//! Sparse systems go through [`Echelon`], an incremental fraction-free
//! elimination on integer rows. Dense systems use Bareiss elimination.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// A sparse vector: sorted `(column, value)` pairs with no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

#[derive(Clone, Debug)]
enum Store {
    Dense(Vec<Vec<Rational>>),
    Sparse(Vec<SparseVec>),
}

/// A rational matrix stored densely or sparsely depending on its fill.
#[derive(Clone, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    store: Store,
}

const SPARSE_BELOW: f64 = 0.1;

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            store: Store::Sparse(vec![Vec::new(); rows]),
        }
    }

    pub fn identity(k: usize) -> Self {
        RationalMatrix::from_sparse_rows(k, (0..k).map(|i| vec![(i, Rational::one())]).collect())
    }

    pub fn from_dense(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::SizeMismatch {
                left: bad.len(),
                right: cols,
            });
        }
        let sparse = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        Ok(RationalMatrix::from_sparse_rows(cols, sparse))
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        RationalMatrix::from_dense(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
    }

    /// Rows given as `(column, value)` lists; duplicates are summed.
    pub fn from_sparse_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        let rows: Vec<SparseVec> = rows.into_iter().map(normalize_sparse).collect();
        let nnz: usize = rows.iter().map(|r| r.len()).sum();
        let total = rows.len() * cols;
        let mut m = RationalMatrix {
            rows: rows.len(),
            cols,
            store: Store::Sparse(rows),
        };
        if total > 0 && (nnz as f64) / (total as f64) >= SPARSE_BELOW {
            m.store = Store::Dense(m.to_dense_rows());
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.store, Store::Sparse(_))
    }

    pub fn nnz(&self) -> usize {
        (0..self.rows).map(|i| self.row(i).len()).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        match &self.store {
            Store::Dense(d) => d[i][j].clone(),
            Store::Sparse(s) => s[i]
                .binary_search_by_key(&j, |(c, _)| *c)
                .map_or_else(|_| Rational::zero(), |k| s[i][k].1.clone()),
        }
    }

    pub fn row(&self, i: usize) -> SparseVec {
        match &self.store {
            Store::Dense(d) => d[i]
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect(),
            Store::Sparse(s) => s[i].clone(),
        }
    }

    pub fn rows(&self) -> Vec<SparseVec> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<Rational>> {
        match &self.store {
            Store::Dense(d) => d.clone(),
            Store::Sparse(s) => s
                .iter()
                .map(|r| {
                    let mut dense = vec![Rational::zero(); self.cols];
                    for (j, v) in r {
                        dense[*j] = v.clone();
                    }
                    dense
                })
                .collect(),
        }
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                cols[j].push((i, v));
            }
        }
        RationalMatrix::from_sparse_rows(self.rows, cols)
    }

    /// Column `j` as a sparse vector.
    pub fn column(&self, j: usize) -> SparseVec {
        (0..self.rows)
            .map(|i| (i, self.get(i, j)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let other_rows = other.rows();
        let rows = (0..self.rows)
            .map(|i| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, a) in self.row(i) {
                    for (j, b) in &other_rows[k] {
                        *acc.entry(*j).or_insert_with(Rational::zero) += &a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(RationalMatrix::from_sparse_rows(other.cols, rows))
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut dense: HashMap<usize, &Rational> = HashMap::new();
        for (j, x) in v {
            dense.insert(*j, x);
        }
        (0..self.rows)
            .map(|i| {
                let s = self
                    .row(i)
                    .iter()
                    .filter_map(|(j, a)| dense.get(j).map(|x| a * *x))
                    .fold(Rational::zero(), |acc, t| acc + t);
                (i, s)
            })
            .filter(|(_, s)| !s.is_zero())
            .collect()
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.cols {
            return Err(Error::SizeMismatch {
                left: self.cols,
                right: other.cols,
            });
        }
        let mut rows = self.rows();
        rows.extend(other.rows());
        Ok(RationalMatrix::from_sparse_rows(self.cols, rows))
    }

    /// Matrix Market coordinate format.
    pub fn to_market(&self) -> String {
        let mut out = String::from("%%MatrixMarket matrix coordinate rational general\n");
        let _ = writeln!(out, "{} {} {}", self.rows, self.cols, self.nnz());
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                let _ = writeln!(out, "{} {} {}", i + 1, j + 1, v);
            }
        }
        out
    }
}

impl PartialEq for RationalMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.rows() == other.rows()
    }
}

pub fn normalize_sparse(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|(j, _)| *j);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (j, x) in v {
        match out.last_mut() {
            Some((k, y)) if *k == j => *y += x,
            _ => out.push((j, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

type IntRow = Vec<(usize, BigInt)>;

/// Scale a rational row to a primitive integer row with positive leading entry.
fn to_int_row(v: &[(usize, Rational)]) -> IntRow {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let row: IntRow = v
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| (*j, x.numer() * (&lcm / x.denom())))
        .collect();
    primitive(row)
}

fn primitive(mut row: IntRow) -> IntRow {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    let flip = row.first().is_some_and(|(_, x)| x.is_negative());
    if !g.is_zero() && !g.is_one() {
        for (_, x) in row.iter_mut() {
            *x /= &g;
        }
    }
    if flip {
        for (_, x) in row.iter_mut() {
            *x = -&*x;
        }
    }
    row
}

/// `a·r − b·s` on sorted sparse rows.
fn combine(a: &BigInt, r: &IntRow, b: &BigInt, s: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(r.len() + s.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < s.len() {
        let take_r = j >= s.len() || (i < r.len() && r[i].0 < s[j].0);
        let take_s = i >= r.len() || (j < s.len() && s[j].0 < r[i].0);
        if take_r {
            out.push((r[i].0, a * &r[i].1));
            i += 1;
        } else if take_s {
            out.push((s[j].0, -(b * &s[j].1)));
            j += 1;
        } else {
            let v = a * &r[i].1 - b * &s[j].1;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form. Each stored row has a distinct leading
/// column; the pivot is the smallest column of the row.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    cols: usize,
    pivots: HashMap<usize, IntRow>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            pivots: HashMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.pivots.keys().copied().collect();
        cols.sort_unstable();
        cols
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|c| !self.pivots.contains_key(c))
            .collect()
    }

    /// Insert a row; `true` when it was independent of the rows so far.
    pub fn insert(&mut self, v: &[(usize, Rational)]) -> bool {
        let row = to_int_row(&normalize_sparse(v.to_vec()));
        self.insert_int(row)
    }

    /// Insert a row with small integer entries.
    pub fn insert_i64(&mut self, v: &[(usize, i64)]) -> bool {
        let mut row: Vec<(usize, i64)> = v.to_vec();
        row.sort_by_key(|(j, _)| *j);
        let mut merged: IntRow = Vec::with_capacity(row.len());
        for (j, x) in row {
            match merged.last_mut() {
                Some((k, y)) if *k == j => *y += x,
                _ => merged.push((j, BigInt::from(x))),
            }
        }
        merged.retain(|(_, x)| !x.is_zero());
        self.insert_int(primitive(merged))
    }

    fn insert_int(&mut self, mut row: IntRow) -> bool {
        loop {
            let Some(&(lead, _)) = row.first() else {
                return false;
            };
            match self.pivots.get(&lead) {
                None => {
                    debug_assert!(lead < self.cols, "column {lead} out of range");
                    self.pivots.insert(lead, primitive(row));
                    return true;
                }
                Some(piv) => {
                    let a = piv[0].1.clone();
                    let b = row[0].1.clone();
                    let g = a.gcd(&b);
                    row = primitive(combine(&(&a / &g), &row, &(&b / &g), piv));
                }
            }
        }
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Rational> = normalize_sparse(v.to_vec()).into_iter().collect();
        let mut cursor = 0;
        loop {
            let next = acc
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = next else { break };
            let piv = &self.pivots[&c];
            let scale = x / Rational::from_integer(piv[0].1.clone());
            for (j, y) in piv {
                let entry = acc.entry(*j).or_insert_with(Rational::zero);
                *entry -= &scale * Rational::from_integer(y.clone());
                if entry.is_zero() {
                    acc.remove(j);
                }
            }
            cursor = c + 1;
        }
        acc.into_iter().collect()
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Reduced row echelon form: pivot entries 1, pivot columns cleared
    /// elsewhere. Rows in increasing pivot order.
    pub fn rref(&self) -> Vec<(usize, SparseVec)> {
        let pivots = self.pivot_columns();
        let mut reduced: HashMap<usize, SparseVec> = HashMap::new();
        for &c in pivots.iter().rev() {
            let row = &self.pivots[&c];
            let lead = Rational::from_integer(row[0].1.clone());
            let mut acc: BTreeMap<usize, Rational> = row
                .iter()
                .map(|(j, x)| (*j, Rational::from_integer(x.clone()) / &lead))
                .collect();
            let later: Vec<usize> = acc
                .keys()
                .copied()
                .filter(|j| *j != c && reduced.contains_key(j))
                .collect();
            for j in later {
                let Some(x) = acc.get(&j).cloned() else { continue };
                for (k, y) in &reduced[&j] {
                    let entry = acc.entry(*k).or_insert_with(Rational::zero);
                    *entry -= &x * y;
                    if entry.is_zero() {
                        acc.remove(k);
                    }
                }
            }
            reduced.insert(c, acc.into_iter().collect());
        }
        pivots
            .into_iter()
            .map(|c| {
                let row = reduced.remove(&c).unwrap();
                (c, row)
            })
            .collect()
    }

    /// Basis of `{x : row·x = 0 for all inserted rows}`, one vector per free column.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let rref = self.rref();
        let free = self.free_columns();
        let mut by_free: HashMap<usize, SparseVec> =
            free.iter().map(|&f| (f, vec![(f, Rational::one())])).collect();
        for (c, row) in &rref {
            for (j, x) in row {
                if let Some(v) = by_free.get_mut(j) {
                    v.push((*c, -x.clone()));
                }
            }
        }
        free.into_iter()
            .map(|f| normalize_sparse(by_free.remove(&f).unwrap()))
            .collect()
    }
}

fn dense_rank(rows: Vec<Vec<Rational>>) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| {
            let lcm = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = &m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn rank(m: &RationalMatrix) -> usize {
    match &m.store {
        Store::Dense(d) => dense_rank(d.clone()),
        Store::Sparse(s) => {
            let mut e = Echelon::new(m.cols);
            for row in s {
                e.insert(row);
            }
            e.rank()
        }
    }
}

/// Right kernel as the columns of the returned `cols × k` matrix.
pub fn nullspace(m: &RationalMatrix) -> RationalMatrix {
    let mut e = Echelon::new(m.cols);
    for row in m.rows() {
        e.insert(&row);
    }
    let kernel = e.kernel();
    RationalMatrix::from_sparse_rows(m.cols, kernel).transpose()
}

/// `span(e_0..e_{dim}) / span(relations)`, with coordinates on the
/// non-pivot basis vectors.
#[derive(Clone, Debug)]
pub struct Quotient {
    echelon: Echelon,
    representatives: Vec<usize>,
    position: HashMap<usize, usize>,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn relation_rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Coordinates of the class of `v` on the representatives.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        self.echelon
            .reduce(v)
            .into_iter()
            .map(|(j, x)| (self.position[&j], x))
            .collect()
    }
}

pub fn quotient_basis(space_dim: usize, relations: &RationalMatrix) -> Result<Quotient> {
    if relations.ncols() != space_dim {
        return Err(Error::SizeMismatch {
            left: relations.ncols(),
            right: space_dim,
        });
    }
    let mut echelon = Echelon::new(space_dim);
    for row in relations.rows() {
        echelon.insert(&row);
    }
    Ok(quotient_from_echelon(echelon))
}

pub fn quotient_from_echelon(echelon: Echelon) -> Quotient {
    let representatives = echelon.free_columns();
    let position = representatives
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    Quotient {
        echelon,
        representatives,
        position,
    }
}

/// Dimensions and basis labels per degree; zero-dimensional degrees are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GradedSpace {
    pub degrees: BTreeMap<i64, DegreeSlice>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSlice {
    pub dim: usize,
    pub basis: Vec<String>,
}

impl GradedSpace {
    pub fn insert(&mut self, degree: i64, basis: Vec<String>) {
        if !basis.is_empty() {
            self.degrees.insert(
                degree,
                DegreeSlice {
                    dim: basis.len(),
                    basis,
                },
            );
        }
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.degrees.get(&degree).map_or(0, |s| s.dim)
    }
}

/// Bijection between labels and `0..len`.
#[derive(Clone, Debug)]
pub struct BasisIndex<T: Hash + Eq + Clone> {
    labels: Vec<T>,
    index: HashMap<T, usize>,
}

impl<T: Hash + Eq + Clone> Default for BasisIndex<T> {
    fn default() -> Self {
        BasisIndex {
            labels: Vec::new(),
            index: HashMap::new(),
        }
    }
}

impl<T: Hash + Eq + Clone> BasisIndex<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_labels(labels: Vec<T>) -> Self {
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        BasisIndex { labels, index }
    }

    pub fn insert(&mut self, label: T) -> usize {
        if let Some(&i) = self.index.get(&label) {
            return i;
        }
        self.labels.push(label.clone());
        self.index.insert(label, self.labels.len() - 1);
        self.labels.len() - 1
    }

    pub fn get(&self, label: &T) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn label(&self, i: usize) -> &T {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[T] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn rank_and_kernel_small() {
        let a = m(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = nullspace(&a);
        assert_eq!(k.ncols(), 1);
        let prod = a.mul(&k).unwrap();
        assert!(prod.rows().iter().all(|r| r.is_empty()));
    }

    #[test]
    fn quotient_reduces_relations_to_zero() {
        let rel = m(&[vec![1, -1, 0, 0], vec![0, 1, -1, 0]]);
        let q = quotient_basis(4, &rel).unwrap();
        assert_eq!(q.dim(), 2);
        let a = q.reduce(&[(0, rat(1))]);
        let c = q.reduce(&[(2, rat(1))]);
        assert_eq!(a, c);
        assert!(q.reduce(&[(0, rat(1)), (1, rat(-1))]).is_empty());
    }

    #[test]
    fn market_dump_lists_entries() {
        let a = m(&[vec![0, 2], vec![0, 0]]);
        let s = a.to_market();
        assert!(s.contains("2 2 1"));
        assert!(s.contains("1 2 2"));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-2i64..3, c), r)
        })
    }

    proptest! {
        #[test]
        fn sparse_and_dense_ranks_agree(rows in small_matrix()) {
            let a = m(&rows);
            let dense = dense_rank(a.to_dense_rows());
            let mut e = Echelon::new(a.ncols());
            for r in a.rows() {
                e.insert(&r);
            }
            prop_assert_eq!(dense, e.rank());
            prop_assert_eq!(rank(&a), rank(&a.transpose()));
        }

        #[test]
        fn kernel_is_annihilated_and_complementary(rows in small_matrix()) {
            let a = m(&rows);
            let k = nullspace(&a);
            prop_assert_eq!(k.ncols() + rank(&a), a.ncols());
            let prod = a.mul(&k).unwrap();
            prop_assert!(prod.rows().iter().all(|r| r.is_empty()));
        }

        #[test]
        fn reduce_is_linear_and_kills_rows(rows in small_matrix(), x in -3i64..4) {
            let a = m(&rows);
            let q = quotient_basis(a.ncols(), &a).unwrap();
            for r in a.rows() {
                prop_assert!(q.reduce(&r).is_empty());
            }
            let v: SparseVec = (0..a.ncols()).map(|j| (j, rat(x + j as i64))).collect();
            let doubled: SparseVec = v.iter().map(|(j, y)| (*j, y * rat(2))).collect();
            let lhs = q.reduce(&doubled);
            let rhs: SparseVec = q.reduce(&v).into_iter().map(|(j, y)| (j, y * rat(2))).collect();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
