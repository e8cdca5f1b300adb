//! Stanley-Reisner rings, linear systems of parameters and Artinian reductions.
//!
//! Variables carry degree two, so the piece of the face ring spanned by
//! monomials with `j` factors is the degree `2j` piece. Functions in this
//! module index pieces by `j`.

mod macaulay;
mod reduction;

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{derive_seed, maximal_minor_gcd, random_int_matrix, Rational, RationalMatrix};

pub use macaulay::{
    hilbert_coefficients, hilbert_series_numerator, is_m_vector, pseudopower, schenzel_predicted,
};
pub use reduction::{ArtinianReduction, StarRestriction};

/// A monomial, stored as the sorted multiset of its variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn new(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        Self(vars)
    }

    /// The squarefree monomial `x_σ`.
    pub fn face(sigma: &[usize]) -> Self {
        Self::new(sigma.to_vec())
    }

    pub fn variables(&self) -> &[usize] {
        &self.0
    }

    /// Number of variable factors `j`; the grading degree is `2j`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        2 * self.0.len()
    }

    pub fn support(&self) -> Face {
        let mut s = self.0.clone();
        s.dedup();
        s
    }

    /// Exponent vector over vertices `1..=m`.
    pub fn exponents(&self, m: usize) -> Vec<u32> {
        let mut e = vec![0; m];
        for &v in &self.0 {
            e[v - 1] += 1;
        }
        e
    }

    pub fn times_var(&self, v: usize) -> Self {
        let pos = self.0.partition_point(|&x| x <= v);
        let mut vars = self.0.clone();
        vars.insert(pos, v);
        Self(vars)
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut vars = self.0.clone();
        vars.extend_from_slice(&other.0);
        Self::new(vars)
    }

    /// Applies a relabeling; `None` when some variable has no image.
    pub fn map_vars(&self, f: impl Fn(usize) -> Option<usize>) -> Option<Self> {
        self.0.iter().map(|&v| f(v)).collect::<Option<Vec<_>>>().map(Self::new)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let v = self.0[i];
            let mut e = 1;
            while i + e < self.0.len() && self.0[i + e] == v {
                e += 1;
            }
            parts.push(if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") });
            i += e;
        }
        f.write_str(&parts.join("*"))
    }
}

/// Monomials with `j` variable factors whose support is a face, in lexicographic order.
pub fn graded_basis(c: &SimplicialComplex, j: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut vars = Vec::with_capacity(j);
    let mut support = Vec::with_capacity(j);
    fn rec(
        c: &SimplicialComplex,
        j: usize,
        vars: &mut Vec<usize>,
        support: &mut Vec<usize>,
        out: &mut Vec<Monomial>,
    ) {
        if vars.len() == j {
            out.push(Monomial(vars.clone()));
            return;
        }
        let start = vars.last().copied().unwrap_or(1);
        for v in start..=c.m() {
            let fresh = support.last() != Some(&v);
            if fresh {
                support.push(v);
                if !c.contains(support) {
                    support.pop();
                    continue;
                }
            }
            vars.push(v);
            rec(c, j, vars, support, out);
            vars.pop();
            if fresh {
                support.pop();
            }
        }
    }
    rec(c, j, &mut vars, &mut support, &mut out);
    out
}

/// Coefficient matrix `Λ` of the linear forms `θ_i = Σ_j λ_ij x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LsopMatrix(RationalMatrix);

impl LsopMatrix {
    pub fn new(matrix: RationalMatrix) -> Self {
        Self(matrix)
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        RationalMatrix::from_i64_rows(rows).map(Self)
    }

    /// Builds `Λ` from its columns `λ_1, ..., λ_m`.
    pub fn from_i64_columns(columns: &[Vec<i64>]) -> Result<Self> {
        let d = columns.first().map_or(0, Vec::len);
        let cols: Vec<Vec<Rational>> = columns
            .iter()
            .map(|c| c.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        RationalMatrix::from_columns(&cols, d).map(Self)
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.0
    }

    /// Number of forms.
    pub fn forms(&self) -> usize {
        self.0.nrows()
    }

    /// Number of variables.
    pub fn vars(&self) -> usize {
        self.0.ncols()
    }

    /// Column `λ_v` for the vertex `v` (1-based).
    pub fn column(&self, v: usize) -> Vec<Rational> {
        self.0.column(v - 1)
    }

    pub fn entry(&self, form: usize, v: usize) -> &Rational {
        self.0.get(form, v - 1)
    }

    /// Restriction to the given vertices, in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> Self {
        let cols: Vec<usize> = vertices.iter().map(|v| v - 1).collect();
        Self(self.0.select_columns(&cols))
    }

    /// Appends a column for a new last vertex.
    pub fn with_column(&self, column: &[Rational]) -> Result<Self> {
        self.0.with_column(column).map(Self)
    }

    pub fn is_integral(&self) -> bool {
        self.0.is_integral()
    }

    /// Entries as strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.0
            .to_rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }

    fn check_shape(&self, c: &SimplicialComplex) -> Result<()> {
        if self.forms() != c.rank() || self.vars() != c.m() {
            return Err(Error::DimensionMismatch(format!(
                "coefficient matrix is {}x{}, complex needs {}x{}",
                self.forms(),
                self.vars(),
                c.rank(),
                c.m()
            )));
        }
        Ok(())
    }
}

fn facet_columns(f: &[usize]) -> Vec<usize> {
    f.iter().map(|v| v - 1).collect()
}

/// Rank criterion: `Λ_σ` has rank `|σ|` for every facet `σ`.
pub fn is_lsop(c: &SimplicialComplex, lsop: &LsopMatrix) -> Result<bool> {
    lsop.check_shape(c)?;
    Ok(c
        .facets()
        .iter()
        .all(|f| lsop.0.select_columns(&facet_columns(f)).rank() == f.len()))
}

/// Integrality: integer entries, and unimodular facet columns.
///
/// A facet with `d` vertices needs a minor of `±1`; a smaller facet needs its
/// maximal minors to have greatest common divisor one.
pub fn is_integral_characteristic(c: &SimplicialComplex, lsop: &LsopMatrix) -> Result<bool> {
    lsop.check_shape(c)?;
    if !lsop.is_integral() {
        return Ok(false);
    }
    Ok(c
        .facets()
        .iter()
        .all(|f| maximal_minor_gcd(&lsop.0, &facet_columns(f)).is_one()))
}

/// `|det Λ_σ|` for every facet with `d` vertices.
pub fn facet_minors(c: &SimplicialComplex, lsop: &LsopMatrix) -> Result<Vec<(Face, Rational)>> {
    lsop.check_shape(c)?;
    Ok(c
        .facets()
        .iter()
        .filter(|f| f.len() == c.rank())
        .map(|f| {
            let det = lsop.0.select_columns(&facet_columns(f)).determinant().expect("square");
            (f.clone(), det.abs())
        })
        .collect())
}

/// Order of the cokernel of an integer `Λ: Z^m -> Z^d`: the gcd of its `d x d` minors.
///
/// `None` when the cokernel is infinite (rank below `d`) or `Λ` is not integral.
pub fn cokernel_order(lsop: &LsopMatrix) -> Option<Rational> {
    if !lsop.is_integral() {
        return None;
    }
    let g = maximal_minor_gcd(&lsop.0.transpose(), &(0..lsop.forms()).collect::<Vec<_>>());
    (!g.is_zero()).then_some(g)
}

/// A sampled l.s.o.p. together with the number of draws it took.
#[derive(Clone, Debug)]
pub struct LsopSample {
    pub lsop: LsopMatrix,
    pub tries: usize,
    pub seed: u64,
}

/// Rejection-samples integer matrices with entries in `[-bound, bound]` until one is an l.s.o.p.
pub fn random_lsop(c: &SimplicialComplex, bound: u32, seed: u64, max_tries: usize) -> Result<LsopSample> {
    for t in 0..max_tries {
        let m = random_int_matrix(c.rank(), c.m(), bound, derive_seed(seed, t as u64))?;
        let lsop = LsopMatrix::new(m);
        if is_lsop(c, &lsop)? {
            return Ok(LsopSample {
                lsop,
                tries: t + 1,
                seed,
            });
        }
    }
    Err(Error::LsopSearchExhausted(max_tries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary_simplex, cross_polytope_boundary};

    #[test]
    fn graded_basis_of_triangle_boundary() {
        let t = boundary_simplex(2).unwrap();
        assert_eq!(graded_basis(&t, 0), vec![Monomial::one()]);
        let b1: Vec<String> = graded_basis(&t, 1).iter().map(ToString::to_string).collect();
        assert_eq!(b1, ["x1", "x2", "x3"]);
        let b2: Vec<String> = graded_basis(&t, 2).iter().map(ToString::to_string).collect();
        assert_eq!(b2, ["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"]);
        assert_eq!(graded_basis(&t, 2)[1].exponents(3), vec![1, 1, 0]);
        assert_eq!(graded_basis(&t, 2)[1].degree(), 4);
    }

    #[test]
    fn lsop_examples() {
        let t = boundary_simplex(2).unwrap();
        let l1 = LsopMatrix::from_i64_columns(&[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        assert!(is_lsop(&t, &l1).unwrap());
        assert!(is_integral_characteristic(&t, &l1).unwrap());
        let l2 = LsopMatrix::from_i64_columns(&[vec![1, 0], vec![0, 1], vec![-2, -3]]).unwrap();
        assert!(is_lsop(&t, &l2).unwrap());
        assert!(!is_integral_characteristic(&t, &l2).unwrap());
        let l0 = LsopMatrix::from_i64_columns(&[vec![1, 0], vec![0, 1], vec![0, 0]]).unwrap();
        assert!(!is_lsop(&t, &l0).unwrap());
        let l3 = LsopMatrix::from_i64_columns(&[vec![1, -1], vec![1, 2], vec![-2, -1]]).unwrap();
        let minors: Vec<Rational> = facet_minors(&t, &l3).unwrap().into_iter().map(|(_, d)| d).collect();
        assert_eq!(minors, vec![Rational::from_integer(3.into()); 3]);
        assert_eq!(cokernel_order(&l3), Some(Rational::from_integer(3.into())));
        assert_eq!(cokernel_order(&l1), Some(Rational::one()));
        let bad = LsopMatrix::from_i64_rows(&[vec![1, 0, 0]]).unwrap();
        assert!(matches!(is_lsop(&t, &bad), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn random_lsop_is_valid() {
        let oct = cross_polytope_boundary(3).unwrap();
        let s = random_lsop(&oct, 3, 11, 50).unwrap();
        assert!(is_lsop(&oct, &s.lsop).unwrap());
        assert!(s.tries >= 1);
        assert_eq!(random_lsop(&oct, 3, 11, 50).unwrap().lsop, s.lsop);
        assert_eq!(random_lsop(&oct, 3, 11, 0).unwrap_err(), Error::LsopSearchExhausted(0));
    }

    #[test]
    fn monomial_helpers() {
        let a = Monomial::new(vec![3, 1, 1]);
        assert_eq!(a.to_string(), "x1^2*x3");
        assert_eq!(a.support(), vec![1, 3]);
        assert_eq!(a.times_var(2).variables(), &[1, 1, 2, 3]);
        assert_eq!(a.times(&Monomial::face(&[2, 4])).len(), 5);
    }
}
