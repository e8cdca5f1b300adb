//! Cohomology of moment-angle complexes from full subcomplexes, the union
//! product on reduced cochains, and closed-form toric cohomology dimensions
//! for Buchsbaum complexes.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{binomial, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::face_ring::{
    cokernel_order, facet_minors, hilbert_coefficients, is_integral_characteristic, is_lsop,
    schenzel_predicted, ArtinianReduction, LsopMatrix,
};
use crate::homology::{is_buchsbaum, reduced_betti, BettiVector};
use crate::linalg::{Rational, RationalMatrix, SparseEchelon, SparseRow};
use crate::report::ser_lsop;

pub const DEFAULT_CAP: usize = 20;

/// Reduced cohomology of every full subcomplex with nonzero cohomology.
#[derive(Clone, Debug, Serialize)]
pub struct HochsterTable {
    pub m: usize,
    /// Keyed by the vertex subset `J` (sorted labels).
    #[serde(serialize_with = "ser_subsets")]
    pub subsets: BTreeMap<Vec<usize>, BettiVector>,
}

#[derive(Serialize)]
struct SubsetEntry<'a> {
    subset: &'a [usize],
    reduced_betti: &'a BettiVector,
}

fn ser_subsets<S: serde::Serializer>(
    m: &BTreeMap<Vec<usize>, BettiVector>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|(subset, reduced_betti)| SubsetEntry { subset, reduced_betti }))
}

/// `β^{-i,2j}` as a flat record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigradedEntry {
    pub i: usize,
    pub j: usize,
    pub value: usize,
}

impl HochsterTable {
    /// Nonzero bigraded Betti numbers keyed by `(i, j)`.
    pub fn bigraded(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for (set, b) in &self.subsets {
            let j = set.len();
            for (idx, &v) in b.values().iter().enumerate() {
                if v == 0 {
                    continue;
                }
                // idx = q + 1 for reduced degree q, and i = j - q - 1
                let i = j - idx;
                *out.entry((i, j)).or_insert(0) += v;
            }
        }
        out
    }

    pub fn beta(&self, i: usize, j: usize) -> usize {
        self.bigraded().get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn rows(&self) -> Vec<BigradedEntry> {
        self.bigraded()
            .into_iter()
            .map(|((i, j), value)| BigradedEntry { i, j, value })
            .collect()
    }

    /// Coefficients of the Poincaré polynomial: entry `p` is `dim H^p`.
    pub fn poincare(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for ((i, j), v) in self.bigraded() {
            let p = 2 * j - i;
            if out.len() <= p {
                out.resize(p + 1, 0);
            }
            out[p] += v;
        }
        out
    }

    /// `β^{-i,2j} = β^{-(m-d-i),2(m-j)}` for all `i, j`.
    pub fn is_symmetric(&self, d: usize) -> bool {
        let b = self.bigraded();
        b.iter().all(|(&(i, j), &v)| {
            let (Some(i2), Some(j2)) = ((self.m).checked_sub(d + i), self.m.checked_sub(j)) else {
                return false;
            };
            b.get(&(i2, j2)) == Some(&v)
        })
    }
}

fn subset_of_mask(mask: u64, m: usize) -> Vec<usize> {
    (0..m).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Builds the table by enumerating all vertex subsets, skipping cones.
///
/// `jobs` sets the number of worker threads (at least one).
pub fn hochster_table(c: &SimplicialComplex, cap: usize, jobs: usize) -> Result<HochsterTable> {
    let m = c.m();
    if m > cap || m >= 64 {
        return Err(Error::CapExceeded { m, cap: cap.min(63) });
    }
    let work = || {
        (0..1u64 << m)
            .into_par_iter()
            .filter_map(|mask| {
                let set = subset_of_mask(mask, m);
                if set.is_empty() {
                    return Some((set, BettiVector::new(vec![1])));
                }
                let sub = c.full_subcomplex(&set).complex;
                if sub.is_cone() {
                    return None;
                }
                let b = reduced_betti(&sub);
                (!b.is_acyclic()).then_some((set, b))
            })
            .collect::<Vec<_>>()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let subsets = pool.install(work).into_iter().collect();
    Ok(HochsterTable { m, subsets })
}

/// Compares `Σ_i (-1)^i β^{-i,2j}` with the coefficients of `(1-λ^2)^m F(Q[Δ], λ)`.
pub fn euler_hilbert_crosscheck(c: &SimplicialComplex, table: &HochsterTable) -> bool {
    let m = c.m() as i64;
    let a = hilbert_coefficients(c, c.m());
    let b = table.bigraded();
    (0..=m).all(|j| {
        let lhs: i64 = b
            .iter()
            .filter(|((_, jj), _)| *jj as i64 == j)
            .map(|((i, _), &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum();
        let rhs: i64 = (0..=j)
            .map(|k| {
                let sign = if (j - k) % 2 == 0 { 1 } else { -1 };
                a[k as usize] * sign * binomial(m, j - k)
            })
            .sum();
        lhs == rhs
    })
}

/// A reduced cocycle on the full subcomplex `Δ_J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyClassRep {
    pub subset: Vec<usize>,
    /// Cochain degree `q`; faces carry `q + 1` vertices.
    pub degree: isize,
    /// Nonzero coefficients, sorted by face.
    #[serde(serialize_with = "ser_cochain")]
    pub cochain: Vec<(Face, Rational)>,
}

fn ser_cochain<S: serde::Serializer>(c: &[(Face, Rational)], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(|(f, x)| (f, x.to_string())))
}

impl CohomologyClassRep {
    /// The unit class on `Δ_∅`.
    pub fn unit() -> Self {
        Self {
            subset: Vec::new(),
            degree: -1,
            cochain: vec![(Vec::new(), Rational::one())],
        }
    }

    /// Total degree in the cohomology of the moment-angle complex.
    pub fn total_degree(&self) -> usize {
        (self.degree + 1) as usize + self.subset.len()
    }
}

struct Cochains<'a> {
    c: &'a SimplicialComplex,
    subset: Vec<usize>,
}

impl<'a> Cochains<'a> {
    fn new(c: &'a SimplicialComplex, subset: &[usize]) -> Self {
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        Self { c, subset: s }
    }

    /// Faces of `Δ_J` with `q + 1` vertices.
    fn faces(&self, q: isize) -> Vec<Face> {
        if q < -1 {
            return Vec::new();
        }
        self.c
            .faces((q + 1) as usize)
            .iter()
            .filter(|f| f.iter().all(|v| self.subset.binary_search(v).is_ok()))
            .cloned()
            .collect()
    }

    /// Matrix of `δ^q: C^q -> C^{q+1}`.
    fn coboundary_matrix(&self, q: isize) -> (Vec<Face>, Vec<Face>, RationalMatrix) {
        let src = self.faces(q);
        let tgt = self.faces(q + 1);
        let index: HashMap<&Face, usize> = src.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut m = RationalMatrix::zeros(tgt.len(), src.len());
        for (r, tau) in tgt.iter().enumerate() {
            for j in 0..tau.len() {
                let mut sub = tau.clone();
                sub.remove(j);
                let sign = if j % 2 == 0 { 1 } else { -1 };
                m.set(r, index[&sub], Rational::from_integer(sign.into()));
            }
        }
        (src, tgt, m)
    }

    /// Echelon basis of the coboundaries in degree `q`, over the columns of `faces(q)`.
    fn coboundaries(&self, q: isize) -> SparseEchelon {
        let n = self.faces(q).len();
        let mut e = SparseEchelon::new(n);
        let (_, _, d) = self.coboundary_matrix(q - 1);
        for c in 0..d.ncols() {
            e.insert(to_sparse(&d.column(c)));
        }
        e
    }

    fn dense(&self, q: isize, cochain: &[(Face, Rational)]) -> Result<Vec<Rational>> {
        let faces = self.faces(q);
        let mut v = vec![Rational::zero(); faces.len()];
        for (f, x) in cochain {
            let i = faces
                .binary_search(f)
                .map_err(|_| Error::NotAFace(crate::complex::format_face(f)))?;
            v[i] += x;
        }
        Ok(v)
    }

    fn is_cocycle(&self, q: isize, v: &[Rational]) -> bool {
        let (_, _, d) = self.coboundary_matrix(q);
        d.mul_vec(v).map(|w| w.iter().all(Zero::is_zero)).unwrap_or(false)
    }

    fn canonical(&self, q: isize, v: Vec<Rational>) -> CohomologyClassRep {
        let faces = self.faces(q);
        let reduced = self.coboundaries(q).reduce(to_sparse(&v));
        CohomologyClassRep {
            subset: self.subset.clone(),
            degree: q,
            cochain: reduced.into_iter().map(|(i, x)| (faces[i].clone(), x)).collect(),
        }
    }
}

fn to_sparse(v: &[Rational]) -> SparseRow {
    v.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

/// Canonical representatives of a basis of `H̃^q(Δ_J)`.
///
/// Each representative has zero coefficients on the pivot faces of the coboundary space.
pub fn cohomology_basis(c: &SimplicialComplex, subset: &[usize], q: isize) -> Vec<CohomologyClassRep> {
    let cc = Cochains::new(c, subset);
    let (_, _, d) = cc.coboundary_matrix(q);
    let mut span = cc.coboundaries(q);
    let mut out = Vec::new();
    for z in d.kernel_basis() {
        if span.insert(to_sparse(&z)) {
            out.push(cc.canonical(q, z));
        }
    }
    out
}

/// Whether the representative is a cocycle on its full subcomplex.
pub fn is_cocycle(c: &SimplicialComplex, rep: &CohomologyClassRep) -> bool {
    let cc = Cochains::new(c, &rep.subset);
    cc.dense(rep.degree, &rep.cochain)
        .map(|v| cc.is_cocycle(rep.degree, &v))
        .unwrap_or(false)
}

/// Sign of the permutation sorting the juxtaposition `σ τ` of disjoint sorted faces.
fn juxtaposition_sign(sigma: &[usize], tau: &[usize]) -> i64 {
    let inversions: usize = sigma.iter().map(|a| tau.iter().filter(|&&b| b < *a).count()).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The union product `α ⊔ β`, reduced to its canonical representative.
///
/// Returns `None` for the zero class, which includes every product of classes on overlapping subsets.
pub fn union_product(
    c: &SimplicialComplex,
    alpha: &CohomologyClassRep,
    beta: &CohomologyClassRep,
) -> Result<Option<CohomologyClassRep>> {
    if !is_cocycle(c, alpha) || !is_cocycle(c, beta) {
        return Err(Error::NotCocycle);
    }
    if alpha.subset.iter().any(|v| beta.subset.binary_search(v).is_ok()) {
        return Ok(None);
    }
    let mut union = alpha.subset.clone();
    union.extend_from_slice(&beta.subset);
    union.sort_unstable();
    let q = alpha.degree + beta.degree + 1;
    let mut terms = Vec::new();
    for (s, a) in &alpha.cochain {
        for (t, b) in &beta.cochain {
            let mut rho = s.clone();
            rho.extend_from_slice(t);
            rho.sort_unstable();
            if c.contains(&rho) {
                let sign = Rational::from_integer(juxtaposition_sign(s, t).into());
                terms.push((rho, a * b * sign));
            }
        }
    }
    let cc = Cochains::new(c, &union);
    let v = cc.dense(q, &terms)?;
    let rep = cc.canonical(q, v);
    Ok((!rep.cochain.is_empty()).then_some(rep))
}

/// `E_3^{2p,q}` for `p = 0..=d`, `q = 0..=d`: the Schenzel value on the row `q = 0`,
/// and `C(d, p+q) β̃_{p-1}` above it.
pub fn toric_e3_table(c: &SimplicialComplex) -> Result<Vec<Vec<i64>>> {
    let d = c.rank();
    let betti = reduced_betti(c);
    let row0 = schenzel_predicted(&c.h_vector(), &betti, d)?;
    Ok((0..=d)
        .map(|p| {
            (0..=d)
                .map(|q| {
                    if q == 0 {
                        row0[p]
                    } else {
                        binomial(d as i64, (p + q) as i64) * betti.get(p as isize - 1) as i64
                    }
                })
                .collect()
        })
        .collect())
}

/// Dimensions of the rational cohomology of the toric space over a Buchsbaum
/// complex, in degrees `0..=2d`.
pub fn buchsbaum_toric_dims(c: &SimplicialComplex, lsop: &LsopMatrix) -> Result<Vec<i64>> {
    if !is_lsop(c, lsop)? {
        return Err(Error::NotLsop);
    }
    if !is_buchsbaum(c) {
        return Err(Error::Precondition("complex is not Buchsbaum".into()));
    }
    let d = c.rank();
    let e3 = toric_e3_table(c)?;
    let mut dims = vec![0i64; 2 * d + 1];
    for (p, row) in e3.iter().enumerate() {
        for (q, &v) in row.iter().enumerate() {
            if 2 * p + q <= 2 * d {
                dims[2 * p + q] += v;
            }
        }
    }
    Ok(dims)
}

/// One of the bundled characteristic matrices on the boundary of a triangle.
#[derive(Clone, Debug, Serialize)]
pub struct CharacteristicExample {
    pub name: &'static str,
    #[serde(serialize_with = "ser_lsop")]
    pub lsop: LsopMatrix,
    pub is_lsop: bool,
    pub integral: bool,
    pub dims: Vec<usize>,
    /// `|det|` of each facet minor.
    pub facet_minors: Vec<(Face, String)>,
    pub cokernel_order: Option<String>,
}

pub fn characteristic_examples() -> Vec<CharacteristicExample> {
    let tri = crate::complex::boundary_simplex(2).expect("valid");
    let cases: [(&'static str, [[i64; 2]; 3]); 3] = [
        ("projective_plane", [[1, 0], [0, 1], [-1, -1]]),
        ("weighted_projective", [[1, 0], [0, 1], [-2, -3]]),
        ("fake_weighted_projective", [[1, -1], [1, 2], [-2, -1]]),
    ];
    cases
        .into_iter()
        .map(|(name, cols)| {
            let lsop = LsopMatrix::from_i64_columns(&cols.map(|c| c.to_vec())).expect("2x3");
            let ok = is_lsop(&tri, &lsop).expect("shape");
            CharacteristicExample {
                name,
                is_lsop: ok,
                integral: is_integral_characteristic(&tri, &lsop).expect("shape"),
                dims: ArtinianReduction::new(&tri, &lsop).map(|r| r.dims()).unwrap_or_default(),
                facet_minors: facet_minors(&tri, &lsop)
                    .expect("shape")
                    .into_iter()
                    .map(|(f, x)| (f, x.to_string()))
                    .collect(),
                cokernel_order: cokernel_order(&lsop).map(|x| x.to_string()),
                lsop,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary_simplex, cross_polytope_boundary, seven_vertex_torus, simplex};
    use crate::face_ring::random_lsop;

    fn square() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]]).unwrap()
    }

    #[test]
    fn poincare_polynomials() {
        let t = hochster_table(&boundary_simplex(2).unwrap(), DEFAULT_CAP, 1).unwrap();
        assert_eq!(t.poincare(), vec![1, 0, 0, 0, 0, 1]);
        let t = hochster_table(&square(), DEFAULT_CAP, 2).unwrap();
        assert_eq!(t.poincare(), vec![1, 0, 0, 2, 0, 0, 1]);
        assert!(t.is_symmetric(2));
        assert!(matches!(
            hochster_table(&boundary_simplex(3).unwrap(), 3, 1),
            Err(Error::CapExceeded { m: 4, cap: 3 })
        ));
    }

    #[test]
    fn crosscheck_and_contractible_case() {
        for c in [boundary_simplex(2).unwrap(), square(), simplex(3)] {
            let t = hochster_table(&c, DEFAULT_CAP, 1).unwrap();
            assert!(euler_hilbert_crosscheck(&c, &t));
        }
        let t = hochster_table(&simplex(3), DEFAULT_CAP, 1).unwrap();
        assert_eq!(t.rows(), vec![BigradedEntry { i: 0, j: 0, value: 1 }]);
    }

    #[test]
    fn square_products() {
        let sq = square();
        let a = cohomology_basis(&sq, &[1, 3], 0);
        let b = cohomology_basis(&sq, &[2, 4], 0);
        assert_eq!((a.len(), b.len()), (1, 1));
        let ab = union_product(&sq, &a[0], &b[0]).unwrap().expect("nonzero");
        assert_eq!(ab.degree, 1);
        assert_eq!(ab.total_degree(), 6);
        assert!(is_cocycle(&sq, &ab));
        let ba = union_product(&sq, &b[0], &a[0]).unwrap().expect("nonzero");
        let neg: Vec<(Face, Rational)> = ab.cochain.iter().map(|(f, x)| (f.clone(), -x.clone())).collect();
        assert_eq!(ba.cochain, neg);
        assert_eq!(union_product(&sq, &a[0], &a[0]).unwrap(), None);
        let unit = CohomologyClassRep::unit();
        assert_eq!(union_product(&sq, &unit, &a[0]).unwrap().unwrap(), a[0]);
        let bogus = CohomologyClassRep {
            subset: vec![1, 2],
            degree: 0,
            cochain: vec![(vec![1], Rational::one())],
        };
        assert_eq!(union_product(&sq, &bogus, &a[0]), Err(Error::NotCocycle));
    }

    #[test]
    fn toric_dims() {
        let torus = seven_vertex_torus();
        let l = random_lsop(&torus, 10, 1, 100).unwrap().lsop;
        assert_eq!(buchsbaum_toric_dims(&torus, &l).unwrap(), vec![1, 0, 4, 0, 10, 2, 1]);
        let oct = cross_polytope_boundary(3).unwrap();
        let l = random_lsop(&oct, 10, 1, 100).unwrap().lsop;
        assert_eq!(buchsbaum_toric_dims(&oct, &l).unwrap(), vec![1, 0, 3, 0, 3, 0, 1]);
        let nonpure = SimplicialComplex::from_facets(3, vec![vec![1, 2], vec![3]]).unwrap();
        let l = LsopMatrix::from_i64_rows(&[vec![1, 2, 1], vec![1, 1, 3]]).unwrap();
        assert!(buchsbaum_toric_dims(&nonpure, &l).is_err());
    }

    #[test]
    fn characteristic_catalog() {
        let ex = characteristic_examples();
        assert_eq!(ex.len(), 3);
        assert!(ex.iter().all(|e| e.is_lsop && e.dims == vec![1, 1, 1]));
        assert!(ex[0].integral && !ex[1].integral && !ex[2].integral);
        assert_eq!(ex[2].cokernel_order.as_deref(), Some("3"));
        assert!(ex[2].facet_minors.iter().all(|(_, d)| d == "3"));
    }
}
