use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::Zero;
use rayon::prelude::*;

use super::{graded_basis, is_lsop, LsopMatrix, Monomial};
use crate::complex::{Face, Relabeled, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::is_homology_ball;
use crate::linalg::{sparse_rank, Rational, RationalMatrix, SparseEchelon, SparseRow};

/// One graded piece: monomial basis of the face ring, echelonized relations,
/// and the quotient basis formed by the non-pivot monomials.
struct DegreePiece {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    relations: SparseEchelon,
    quotient: Vec<usize>,
    position: HashMap<usize, usize>,
}

impl DegreePiece {
    fn build(basis: Vec<Monomial>, relations: impl FnOnce(&HashMap<Monomial, usize>) -> SparseEchelon) -> Self {
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let relations = relations(&index);
        let quotient = relations.free_columns();
        let position = quotient.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        Self {
            basis,
            index,
            relations,
            quotient,
            position,
        }
    }

    fn coordinates(&self, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Vec<Rational> {
        let entries: Vec<(usize, Rational)> = terms
            .into_iter()
            .filter_map(|(m, c)| self.index.get(&m).map(|&i| (i, c)))
            .collect();
        let mut out = vec![Rational::zero(); self.quotient.len()];
        for (c, v) in self.relations.reduce(entries) {
            out[self.position[&c]] = v;
        }
        out
    }
}

/// Relations `θ_i · μ` spanning the degree-`j` part of `Θ`, given the monomials of degree `j - 1`.
fn theta_relations<'a>(
    lsop: &'a LsopMatrix,
    lower: &'a [Monomial],
    index: &'a HashMap<Monomial, usize>,
) -> impl Iterator<Item = SparseRow> + 'a {
    (0..lsop.forms()).flat_map(move |i| {
        lower.iter().map(move |mu| {
            let mut row: SparseRow = (1..=lsop.vars())
                .filter(|&v| !lsop.entry(i, v).is_zero())
                .filter_map(|v| index.get(&mu.times_var(v)).map(|&c| (c, lsop.entry(i, v).clone())))
                .collect();
            row.sort_by_key(|(c, _)| *c);
            row
        })
    })
}

/// The Artinian reduction `Q[Δ]/Θ`, computed one graded piece at a time on demand.
pub struct ArtinianReduction {
    complex: SimplicialComplex,
    lsop: LsopMatrix,
    pieces: Vec<OnceLock<DegreePiece>>,
}

impl ArtinianReduction {
    /// Fails with [`Error::NotLsop`] unless `lsop` passes the rank criterion for `complex`.
    pub fn new(complex: &SimplicialComplex, lsop: &LsopMatrix) -> Result<Self> {
        if !is_lsop(complex, lsop)? {
            return Err(Error::NotLsop);
        }
        Ok(Self {
            complex: complex.clone(),
            lsop: lsop.clone(),
            pieces: (0..complex.rank() + 2).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn lsop(&self) -> &LsopMatrix {
        &self.lsop
    }

    /// `d`: pieces vanish beyond this index.
    pub fn top(&self) -> usize {
        self.complex.rank()
    }

    fn piece(&self, j: usize) -> Option<&DegreePiece> {
        let slot = self.pieces.get(j)?;
        Some(slot.get_or_init(|| {
            let basis = graded_basis(&self.complex, j);
            if j == 0 {
                return DegreePiece::build(basis, |_| SparseEchelon::new(1));
            }
            let lower = graded_basis(&self.complex, j - 1);
            let n = basis.len();
            DegreePiece::build(basis, |index| {
                SparseEchelon::from_rows(n, theta_relations(&self.lsop, &lower, index))
            })
        }))
    }

    /// `dim (Q[Δ]/Θ)_{2j}`.
    pub fn dim(&self, j: usize) -> usize {
        self.piece(j).map_or(0, |p| p.quotient.len())
    }

    /// Dimensions for `j = 0..=d`; pieces are computed in parallel.
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.top()).into_par_iter().map(|j| self.dim(j)).collect()
    }

    /// Dimension of the piece just above the top, which vanishes for a valid l.s.o.p.
    pub fn dim_above_top(&self) -> usize {
        self.dim(self.top() + 1)
    }

    /// Monomials whose classes form the chosen basis of the degree-`j` piece.
    pub fn quotient_basis(&self, j: usize) -> Vec<Monomial> {
        self.piece(j)
            .map(|p| p.quotient.iter().map(|&c| p.basis[c].clone()).collect())
            .unwrap_or_default()
    }

    /// Number of monomials of the face ring with `j` factors.
    pub fn ring_dim(&self, j: usize) -> usize {
        self.piece(j).map_or_else(|| graded_basis(&self.complex, j).len(), |p| p.basis.len())
    }

    /// Coordinates of a polynomial in the quotient basis of degree `j`.
    ///
    /// Monomials outside the face ring (non-face support) are dropped.
    pub fn normal_form(&self, j: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Vec<Rational> {
        match self.piece(j) {
            Some(p) => p.coordinates(terms.into_iter().filter(|(m, _)| m.len() == j)),
            None => Vec::new(),
        }
    }

    /// Coordinates of the class of `x_σ`.
    pub fn face_class(&self, sigma: &[usize]) -> Vec<Rational> {
        self.normal_form(sigma.len(), [(Monomial::face(sigma), Rational::from_integer(1.into()))])
    }

    /// Product of two elements given in quotient coordinates.
    pub fn multiply(&self, j1: usize, a: &[Rational], j2: usize, b: &[Rational]) -> Vec<Rational> {
        let ba = self.quotient_basis(j1);
        let bb = self.quotient_basis(j2);
        let mut terms = Vec::new();
        for (x, mx) in a.iter().zip(&ba) {
            if x.is_zero() {
                continue;
            }
            for (y, my) in b.iter().zip(&bb) {
                if !y.is_zero() {
                    terms.push((mx.times(my), x * y));
                }
            }
        }
        self.normal_form(j1 + j2, terms)
    }

    /// Matrix of multiplication by `ω = Σ ω_v x_v` from degree `j` to degree `j + 1`.
    pub fn mult_map(&self, omega: &[Rational], j: usize) -> Result<RationalMatrix> {
        if omega.len() != self.complex.m() {
            return Err(Error::DimensionMismatch(format!(
                "linear form with {} coefficients for {} vertices",
                omega.len(),
                self.complex.m()
            )));
        }
        let source = self.quotient_basis(j);
        let columns: Vec<Vec<Rational>> = source
            .iter()
            .map(|mu| {
                let terms = omega
                    .iter()
                    .enumerate()
                    .filter(|(_, w)| !w.is_zero())
                    .map(|(v, w)| (mu.times_var(v + 1), w.clone()));
                self.normal_form(j + 1, terms)
            })
            .collect();
        RationalMatrix::from_columns(&columns, self.dim(j + 1))
    }

    /// Rank of multiplication by `ω` from degree `j` to `j + 1`.
    pub fn mult_rank(&self, omega: &[Rational], j: usize) -> Result<usize> {
        let m = self.mult_map(omega, j)?;
        Ok(sparse_rank(m.nrows(), columns_sparse(&m)))
    }

    /// Socle dimensions for `j = 0..=d`: the common kernel of all `·x_v`.
    pub fn socle_dims(&self) -> Vec<usize> {
        (0..=self.top()).map(|j| self.socle_dim(j)).collect()
    }

    pub fn socle_dim(&self, j: usize) -> usize {
        let target = self.dim(j + 1);
        let source = self.quotient_basis(j);
        if target == 0 {
            return source.len();
        }
        let m = self.complex.m();
        let rows = source.iter().map(|mu| {
            let mut row = SparseRow::new();
            for v in 1..=m {
                let nf = self.normal_form(j + 1, [(mu.times_var(v), Rational::from_integer(1.into()))]);
                row.extend(
                    nf.into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(i, x)| ((v - 1) * target + i, x)),
                );
            }
            row
        });
        source.len() - sparse_rank(m * target, rows)
    }

    /// Greedy choice of faces with `k` vertices whose monomials are independent in degree `k`.
    ///
    /// Faces are scanned lexicographically. The second value is the rank reached.
    pub fn face_monomial_span(&self, k: usize) -> (Vec<Face>, usize) {
        self.face_monomial_span_among(k, self.complex.faces(k).iter())
    }

    pub fn face_monomial_span_among<'a>(&self, k: usize, faces: impl Iterator<Item = &'a Face>) -> (Vec<Face>, usize) {
        let n = self.dim(k);
        let mut e = SparseEchelon::new(n);
        let mut chosen = Vec::new();
        for f in faces {
            if e.rank() == n {
                break;
            }
            if e.insert(sparse(self.face_class(f))) {
                chosen.push(f.clone());
            }
        }
        let rank = e.rank();
        (chosen, rank)
    }

    /// Dimensions of `(I/IΘ)_{2j}` for the ideal `I` spanned by interior face monomials.
    pub fn interior_ideal_dims(&self) -> Result<Vec<usize>> {
        let ball = is_homology_ball(&self.complex);
        if !ball.is_ball {
            return Err(Error::Precondition("complex is not a rational homology ball".into()));
        }
        let interior = |m: &Monomial| !ball.in_boundary(&m.support());
        let mut lower: Vec<Monomial> = Vec::new();
        let mut dims = Vec::new();
        for j in 0..=self.top() {
            let basis: Vec<Monomial> = graded_basis(&self.complex, j).into_iter().filter(interior).collect();
            let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let rank = sparse_rank(basis.len(), theta_relations(&self.lsop, &lower, &index));
            dims.push(basis.len() - rank);
            lower = basis;
        }
        Ok(dims)
    }

    /// Restriction to the star of `σ`, with the induced maps on quotients.
    pub fn star_restriction(&self, sigma: &[usize]) -> Result<StarRestriction<'_>> {
        let star = self.complex.star(sigma)?;
        let lsop = self.lsop.restrict(&star.labels);
        if !is_lsop(&star.complex, &lsop).unwrap_or(false) {
            return Err(Error::Precondition(format!(
                "restricted coefficients are not an l.s.o.p. for the star of {}",
                crate::complex::format_face(sigma)
            )));
        }
        let reduction = ArtinianReduction::new(&star.complex, &lsop)?;
        Ok(StarRestriction {
            parent: self,
            star,
            reduction,
        })
    }
}

pub(crate) fn sparse(v: Vec<Rational>) -> SparseRow {
    v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

pub(crate) fn columns_sparse(m: &RationalMatrix) -> Vec<SparseRow> {
    (0..m.ncols()).map(|c| sparse(m.column(c))).collect()
}

/// The quotient map `Q[Δ]/Θ -> Q[st_σ Δ]/Θ_S` induced by restricting to the star's vertices.
pub struct StarRestriction<'a> {
    parent: &'a ArtinianReduction,
    pub star: Relabeled,
    pub reduction: ArtinianReduction,
}

impl StarRestriction<'_> {
    /// The map in degree `j`, as a `dim(star) x dim(parent)` matrix.
    pub fn map(&self, j: usize) -> RationalMatrix {
        let columns: Vec<Vec<Rational>> = self
            .parent
            .quotient_basis(j)
            .iter()
            .map(|mu| self.image(j, mu))
            .collect();
        RationalMatrix::from_columns(&columns, self.reduction.dim(j)).expect("consistent sizes")
    }

    /// Image of one monomial class; zero when it uses a vertex outside the star.
    pub fn image(&self, j: usize, mu: &Monomial) -> Vec<Rational> {
        match mu.map_vars(|v| self.star.labels.binary_search(&v).ok().map(|i| i + 1)) {
            Some(local) => self
                .reduction
                .normal_form(j, [(local, Rational::from_integer(1.into()))]),
            None => vec![Rational::zero(); self.reduction.dim(j)],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary_simplex, cross_polytope_boundary, seven_vertex_torus, simplex};
    use crate::face_ring::random_lsop;
    use crate::linalg::rat;

    fn reduction(c: &SimplicialComplex, seed: u64) -> ArtinianReduction {
        let s = random_lsop(c, 10, seed, 100).unwrap();
        ArtinianReduction::new(c, &s.lsop).unwrap()
    }

    #[test]
    fn stanley_and_schenzel_dims() {
        let oct = cross_polytope_boundary(3).unwrap();
        assert_eq!(reduction(&oct, 1).dims(), vec![1, 3, 3, 1]);
        assert_eq!(reduction(&seven_vertex_torus(), 1).dims(), vec![1, 4, 10, 1]);
        let tri = simplex(2);
        let r = reduction(&tri, 3);
        assert_eq!(r.dims(), vec![1, 0, 0, 0]);
        assert_eq!(r.dim_above_top(), 0);
    }

    #[test]
    fn rejects_non_lsop() {
        let t = boundary_simplex(2).unwrap();
        let l = LsopMatrix::from_i64_columns(&[vec![1, 0], vec![0, 1], vec![0, 0]]).unwrap();
        assert!(matches!(ArtinianReduction::new(&t, &l), Err(Error::NotLsop)));
    }

    #[test]
    fn multiplication_maps() {
        let oct = cross_polytope_boundary(3).unwrap();
        let r = reduction(&oct, 2);
        let omega: Vec<Rational> = [3, -1, 4, 1, -5, 9].iter().map(|&x| rat(x)).collect();
        let m0 = r.mult_map(&omega, 0).unwrap();
        assert_eq!((m0.nrows(), m0.ncols()), (3, 1));
        assert_eq!(m0.rank(), 1);
        let zero = vec![rat(0); 6];
        assert!(r.mult_map(&zero, 1).unwrap().is_zero());
        let t = boundary_simplex(2).unwrap();
        let rt = reduction(&t, 2);
        let m1 = rt.mult_map(&[rat(2), rat(-3), rat(7)], 1).unwrap();
        assert_eq!((m1.nrows(), m1.ncols()), (1, 1));
        assert!(!m1.is_zero());
    }

    #[test]
    fn socles() {
        let torus = reduction(&seven_vertex_torus(), 5);
        assert_eq!(torus.socle_dims(), vec![0, 0, 6, 1]);
        let oct = reduction(&cross_polytope_boundary(3).unwrap(), 5);
        assert_eq!(oct.socle_dims(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn interior_ideal_of_triangle() {
        let r = reduction(&simplex(2), 4);
        assert_eq!(r.interior_ideal_dims().unwrap(), vec![0, 0, 0, 1]);
        let sphere = reduction(&boundary_simplex(2).unwrap(), 4);
        assert!(sphere.interior_ideal_dims().is_err());
    }

    #[test]
    fn star_restriction_maps() {
        let oct = cross_polytope_boundary(3).unwrap();
        let r = reduction(&oct, 7);
        let s = r.star_restriction(&[1]).unwrap();
        assert_eq!(s.reduction.dims(), vec![1, 2, 1, 0]);
        // x_2 is antipodal to x_1, so it dies in the star
        assert!(s.image(1, &Monomial::face(&[2])).iter().all(Zero::is_zero));
        let id = r.star_restriction(&[]).unwrap();
        for j in 0..=3 {
            let m = id.map(j);
            assert_eq!(m, RationalMatrix::identity(r.dim(j)));
        }
    }

    #[test]
    fn face_monomials_span() {
        let oct = cross_polytope_boundary(3).unwrap();
        let r = reduction(&oct, 9);
        for k in 0..=3 {
            assert_eq!(r.face_monomial_span(k).1, r.dim(k));
        }
    }
}
