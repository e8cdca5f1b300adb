//! Exact linear algebra over the rationals.
//!
//! [`RationalMatrix`] is a dense row-major matrix with fraction-free
//! elimination. [`SparseEchelon`] holds a reduced echelon basis for the
//! relation spaces of Artinian reductions, whose matrices are large but very
//! sparse; big instances are solved modulo primes and certified exactly.

mod modular;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed to give empty row lists a width.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
            cols,
        )
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Rational>], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {c} has {} entries, expected {rows}",
                    col.len()
                )));
            }
            for (r, x) in col.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Appends a column on the right.
    pub fn with_column(&self, column: &[Rational]) -> Result<Self> {
        if column.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "column of length {} for {} rows",
                column.len(),
                self.rows
            )));
        }
        let mut out = Self::zeros(self.rows, self.cols + 1);
        for (r, x) in column.iter().enumerate() {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            out.set(r, self.cols, x.clone());
        }
        Ok(out)
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[Self], cols: usize) -> Result<Self> {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch(format!(
                    "block with {} columns in a stack of width {cols}",
                    b.cols
                )));
            }
            rows += b.rows;
            data.extend(b.data.iter().cloned());
        }
        Ok(Self { rows, cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    /// Reduced row-echelon form together with the (strictly increasing) pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.integer_rows();
        let pivots = integer_elimination(&mut rows, self.cols, true);
        let mut out = Self::zeros(self.rows, self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            let lead = Rational::from_integer(rows[i][p].clone());
            for (c, x) in rows[i].iter().enumerate() {
                if !x.is_zero() {
                    out.set(i, c, Rational::from_integer(x.clone()) / &lead);
                }
            }
        }
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.integer_rows();
        integer_elimination(&mut rows, self.cols, false).len()
    }

    /// A basis of the right kernel `{x : Mx = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `Mx = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        if b.len() != self.rows {
            return None;
        }
        let aug = self.with_column(b).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                for k in 0..n {
                    a.swap(p * n + k, c * n + k);
                }
                det = -det;
            }
            let pivot = a[c * n + c].clone();
            det *= &pivot;
            for r in c + 1..n {
                if a[r * n + c].is_zero() {
                    continue;
                }
                let f = &a[r * n + c] / &pivot;
                for k in c..n {
                    let sub = &f * &a[c * n + k];
                    a[r * n + k] -= sub;
                }
            }
        }
        Ok(det)
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect()
    }
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Integer Gaussian (or Gauss-Jordan when `back`) elimination with gcd-scaled
/// row combinations. Pivot rows end up first, in pivot order.
fn integer_elimination(rows: &mut [Vec<BigInt>], cols: usize, back: bool) -> Vec<usize> {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(sel) = (r..n)
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].magnitude().bits())
        else {
            continue;
        };
        rows.swap(r, sel);
        make_primitive(&mut rows[r]);
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().expect("pivot row exists");
        let targets = below
            .iter_mut()
            .chain(head.iter_mut().filter(|_| back));
        for t in targets {
            if t[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&t[c]);
            let a = &pivot_row[c] / &g;
            let b = &t[c] / &g;
            for k in 0..cols {
                let scaled = &t[k] * &a;
                t[k] = if pivot_row[k].is_zero() {
                    scaled
                } else {
                    scaled - &b * &pivot_row[k]
                };
            }
            make_primitive(t);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Uniform integer matrix with entries in `[-bound, bound]`, reproducible per seed.
pub fn random_int_matrix(rows: usize, cols: usize, bound: u32, seed: u64) -> Result<RationalMatrix> {
    if bound == 0 {
        return Err(Error::InvalidParameter("bound must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = i64::from(bound);
    let mut m = RationalMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rat(rng.random_range(-b..=b)));
        }
    }
    Ok(m)
}

/// Random integers in `[-bound, bound]`, optionally excluding zero.
pub(crate) fn random_ints(len: usize, bound: u32, nonzero: bool, seed: u64) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = i64::from(bound.max(1));
    (0..len)
        .map(|_| loop {
            let x = rng.random_range(-b..=b);
            if !nonzero || x != 0 {
                break x;
            }
        })
        .collect()
}

/// Mixes a base seed with a counter (splitmix64 finaliser).
pub(crate) fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(stream.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub type SparseRow = Vec<(usize, Rational)>;

/// Row-echelon basis of a subspace of `Q^n`, grown one vector at a time.
///
/// Stored rows have leading coefficient one and are reduced against every
/// pivot that existed when they were inserted. The set of pivot columns only
/// depends on the spanned subspace, not on insertion order.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    ncols: usize,
    rows: Vec<Option<SparseRow>>,
    rank: usize,
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: vec![None; ncols],
            rank: 0,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows[col].is_some()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.is_pivot(c)).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// Fully reduces a vector: the result has no entries in pivot columns.
    ///
    /// Stored rows are kept in reduced row echelon form, so each pivot entry of
    /// the input is cleared by one subtraction touching only free columns.
    pub fn reduce(&self, entries: impl IntoIterator<Item = (usize, Rational)>) -> SparseRow {
        let mut buf: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in entries {
            *buf.entry(c).or_insert_with(Rational::zero) += v;
        }
        let hits: Vec<(usize, Rational)> = buf
            .iter()
            .filter(|(c, v)| self.rows[**c].is_some() && !v.is_zero())
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        for (c, f) in hits {
            buf.remove(&c);
            for (k, a) in self.rows[c].as_ref().expect("pivot row").iter().skip(1) {
                *buf.entry(*k).or_insert_with(Rational::zero) -= &f * a;
            }
        }
        buf.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// Inserts a vector, returning `true` when it enlarged the span.
    pub fn insert(&mut self, entries: impl IntoIterator<Item = (usize, Rational)>) -> bool {
        let reduced = self.reduce(entries);
        let Some((lead, lead_value)) = reduced.first().cloned() else {
            return false;
        };
        let inv = lead_value.recip();
        let row: SparseRow = reduced.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        for other in self.rows.iter_mut().flatten() {
            if let Ok(pos) = other.binary_search_by_key(&lead, |(c, _)| *c) {
                let f = other[pos].1.clone();
                *other = axpy(other, &f, &row);
            }
        }
        self.rows[lead] = Some(row);
        self.rank += 1;
        true
    }

    /// Exact echelon basis of the span of `rows`, computed modularly for large inputs.
    ///
    /// The result equals what repeated [`Self::insert`] would produce.
    pub fn from_rows(ncols: usize, rows: impl IntoIterator<Item = SparseRow>) -> Self {
        modular::echelon(ncols, rows.into_iter().collect())
    }

    fn install(&mut self, col: usize, row: SparseRow) {
        self.rows[col] = Some(row);
        self.rank += 1;
    }

    pub fn contains(&self, entries: impl IntoIterator<Item = (usize, Rational)>) -> bool {
        self.reduce(entries).is_empty()
    }
}

/// `x - f * y` for sorted sparse rows.
fn axpy(x: &[(usize, Rational)], f: &Rational, y: &[(usize, Rational)]) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(f * &y[j].1)));
            j += 1;
        } else {
            let v = &x[i].1 - f * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of a matrix given by sparse rows, computed with [`SparseEchelon`].
pub fn sparse_rank(ncols: usize, rows: impl IntoIterator<Item = SparseRow>) -> usize {
    modular::rank(ncols, rows.into_iter().collect())
}

/// Greatest common divisor of all `k x k` minors of the given columns, where
/// `k` is the number of selected columns. Zero when they are dependent.
pub fn maximal_minor_gcd(matrix: &RationalMatrix, cols: &[usize]) -> Rational {
    let k = cols.len();
    let sub = matrix.select_columns(cols);
    if k == 0 {
        return Rational::one();
    }
    let mut g = Rational::zero();
    for rows in combinations(matrix.nrows(), k) {
        let mut minor = RationalMatrix::zeros(k, k);
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..k {
                minor.set(i, j, sub.get(r, j).clone());
            }
        }
        let det = minor.determinant().expect("square minor").abs();
        g = rational_gcd(&g, &det);
    }
    g
}

fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    Rational::new(num, den)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
