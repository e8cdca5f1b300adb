//! Reduced simplicial homology over the rationals and the homological
//! classes of complexes built on it (Cohen-Macaulay, Buchsbaum, homology
//! manifolds, spheres and balls).

use std::collections::HashMap;

use serde::Serialize;

use crate::complex::{Face, Relabeled, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{sparse_rank, Rational, RationalMatrix, SparseRow};

/// Reduced Betti numbers `(β̃_{-1}, β̃_0, ..., β̃_{d-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BettiVector(Vec<usize>);

impl BettiVector {
    pub fn new(values: Vec<usize>) -> Self {
        Self(values)
    }

    /// `β̃_i`, zero outside the stored range.
    pub fn get(&self, i: isize) -> usize {
        if i < -1 {
            return 0;
        }
        self.0.get((i + 1) as usize).copied().unwrap_or(0)
    }

    /// Stored values, starting at index `-1`.
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// Whether these are the reduced Betti numbers of an `n`-sphere.
    pub fn is_sphere(&self, n: isize) -> bool {
        (-1..self.0.len() as isize - 1).all(|i| self.get(i) == usize::from(i == n)) && self.get(n) == 1
    }

    pub fn is_acyclic(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

fn boundary_columns(c: &SimplicialComplex, size: usize) -> Vec<SparseRow> {
    c.faces(size)
        .iter()
        .map(|tau| {
            let mut col: SparseRow = (0..tau.len())
                .map(|j| {
                    let mut sub = tau.clone();
                    sub.remove(j);
                    let row = c.face_index(&sub).expect("boundary face present");
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    (row, Rational::from_integer(sign.into()))
                })
                .collect();
            col.sort_by_key(|(r, _)| *r);
            col
        })
        .collect()
}

/// The boundary map `∂_k` from `k`-faces to `(k-1)`-faces, with the augmentation at `k = 0`.
///
/// Rows and columns follow the lexicographic face order.
pub fn boundary_matrix(c: &SimplicialComplex, k: usize) -> Result<RationalMatrix> {
    if k > c.rank() {
        return Err(Error::InvalidParameter(format!(
            "boundary index {k} outside 0..={}",
            c.rank()
        )));
    }
    let rows = c.faces(k).len();
    let cols = boundary_columns(c, k + 1);
    let mut m = RationalMatrix::zeros(rows, cols.len());
    for (j, col) in cols.into_iter().enumerate() {
        for (i, v) in col {
            m.set(i, j, v);
        }
    }
    Ok(m)
}

pub fn reduced_betti(c: &SimplicialComplex) -> BettiVector {
    let d = c.rank();
    // ranks[s] = rank of the boundary map out of the faces with s vertices
    let mut ranks = vec![0usize; d + 2];
    for (s, slot) in ranks.iter_mut().enumerate().take(d + 1).skip(1) {
        *slot = sparse_rank(c.faces(s - 1).len(), boundary_columns(c, s));
    }
    BettiVector(
        (0..=d)
            .map(|s| c.faces(s).len() - ranks[s] - ranks[s + 1])
            .collect(),
    )
}

/// Reduced Betti numbers of links, memoized by the relabeled link.
#[derive(Default)]
pub struct LinkHomology {
    cache: HashMap<(usize, Vec<Face>), BettiVector>,
}

impl LinkHomology {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn betti(&mut self, link: &SimplicialComplex) -> BettiVector {
        let key = (link.m(), link.facets().to_vec());
        self.cache
            .entry(key)
            .or_insert_with(|| reduced_betti(link))
            .clone()
    }

    fn link_of(&mut self, c: &SimplicialComplex, sigma: &[usize]) -> (isize, BettiVector) {
        let lk = c.link(sigma).expect("face of the complex").complex;
        (lk.dim(), self.betti(&lk))
    }
}

fn cm_with(c: &SimplicialComplex, cache: &mut LinkHomology, include_empty: bool) -> bool {
    let start = usize::from(!include_empty);
    (start..=c.rank()).all(|k| {
        c.faces(k).iter().all(|sigma| {
            let (dim, b) = cache.link_of(c, sigma);
            (-1..dim).all(|i| b.get(i) == 0)
        })
    })
}

/// Reisner's criterion: every link (including that of `∅`) has vanishing
/// reduced homology below its top dimension.
pub fn is_cohen_macaulay(c: &SimplicialComplex) -> bool {
    cm_with(c, &mut LinkHomology::new(), true)
}

/// Pure, and the link of every nonempty face is Cohen-Macaulay.
pub fn is_buchsbaum(c: &SimplicialComplex) -> bool {
    c.is_pure() && cm_with(c, &mut LinkHomology::new(), false)
}

fn manifold_with(c: &SimplicialComplex, cache: &mut LinkHomology) -> bool {
    let top = c.dim();
    (1..=c.rank()).all(|k| {
        c.faces(k).iter().all(|sigma| {
            let (_, b) = cache.link_of(c, sigma);
            b.is_sphere(top - k as isize)
        })
    })
}

/// Every nonempty face has a link with the rational homology of a sphere of
/// dimension `dim Δ - |σ|`.
pub fn is_homology_manifold(c: &SimplicialComplex) -> bool {
    manifold_with(c, &mut LinkHomology::new())
}

/// A homology manifold with the rational homology of a sphere.
pub fn is_homology_sphere(c: &SimplicialComplex) -> bool {
    !c.is_only_empty_face() && manifold_with(c, &mut LinkHomology::new()) && reduced_betti(c).is_sphere(c.dim())
}

/// Outcome of the homology ball test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallCheck {
    pub is_ball: bool,
    /// Facets of the boundary complex, in the original labels.
    pub boundary_facets: Vec<Face>,
}

impl BallCheck {
    /// Whether `face` lies in the boundary subcomplex.
    pub fn in_boundary(&self, face: &[usize]) -> bool {
        self.boundary_facets.iter().any(|f| crate::complex::is_subset(face, f))
    }
}

/// Ridges lying in exactly one facet, which generate the boundary of a pseudomanifold.
pub fn boundary_facets(c: &SimplicialComplex) -> Vec<Face> {
    let d = c.rank();
    if d < 1 {
        return Vec::new();
    }
    let mut count: HashMap<Face, usize> = HashMap::new();
    for f in c.facets().iter().filter(|f| f.len() == d) {
        for j in 0..f.len() {
            let mut r = f.clone();
            r.remove(j);
            *count.entry(r).or_default() += 1;
        }
    }
    let mut out: Vec<Face> = count.into_iter().filter(|(_, n)| *n == 1).map(|(r, _)| r).collect();
    out.sort();
    out
}

/// Tests whether `c` is a rational homology ball and extracts its boundary.
///
/// The boundary is the closure of the ridges lying in exactly one facet.
/// The complex is a ball when interior links are homology spheres of the
/// right dimension, the boundary is a closed homology manifold one dimension
/// lower, the links of boundary faces are acyclic, and `c` itself is acyclic.
pub fn is_homology_ball(c: &SimplicialComplex) -> BallCheck {
    let boundary = boundary_facets(c);
    let mut check = BallCheck {
        is_ball: false,
        boundary_facets: boundary,
    };
    if !c.is_pure() || check.boundary_facets.is_empty() || c.rank() == 0 {
        return check;
    }
    let mut cache = LinkHomology::new();
    let top = c.dim();
    for k in 1..=c.rank() {
        for sigma in c.faces(k) {
            let (_, b) = cache.link_of(c, sigma);
            let ok = if check.in_boundary(sigma) {
                b.is_acyclic()
            } else {
                b.is_sphere(top - k as isize)
            };
            if !ok {
                return check;
            }
        }
    }
    let bd = subcomplex(&check.boundary_facets);
    let bd_ok = if check.boundary_facets == [Vec::<usize>::new()] {
        true
    } else {
        bd.complex.rank() + 1 == c.rank() && manifold_with(&bd.complex, &mut cache)
    };
    check.is_ball = bd_ok && reduced_betti(c).is_acyclic();
    check
}

/// The complex generated by some faces of a larger complex, on a dense vertex range.
pub fn subcomplex(generators: &[Face]) -> Relabeled {
    let mut labels: Vec<usize> = generators.iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    if labels.is_empty() {
        return Relabeled {
            complex: SimplicialComplex::only_empty_face(),
            labels,
        };
    }
    let facets = generators
        .iter()
        .filter(|f| !f.is_empty())
        .map(|f| f.iter().map(|v| labels.binary_search(v).unwrap() + 1).collect())
        .collect();
    let complex = SimplicialComplex::from_facets(labels.len(), facets).expect("relabeled generators are valid");
    Relabeled { complex, labels }
}

/// Dimension of the top rational homology of a connected homology manifold.
pub fn orientation_class_dim(c: &SimplicialComplex) -> Result<usize> {
    if !c.is_connected() {
        return Err(Error::Precondition("complex is not connected".into()));
    }
    if !is_homology_manifold(c) {
        return Err(Error::Precondition("complex is not a rational homology manifold".into()));
    }
    Ok(reduced_betti(c).get(c.dim()))
}

/// Summary of the homological predicates of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub cohen_macaulay: bool,
    pub buchsbaum: bool,
    pub manifold: bool,
    pub sphere: bool,
    pub ball: bool,
    pub pure: bool,
    pub connected: bool,
}

pub fn classify(c: &SimplicialComplex) -> Classification {
    let mut cache = LinkHomology::new();
    let pure = c.is_pure();
    let betti = reduced_betti(c);
    let buchsbaum = pure && cm_with(c, &mut cache, false);
    let cohen_macaulay = buchsbaum && (-1..c.dim()).all(|i| betti.get(i) == 0);
    let manifold = manifold_with(c, &mut cache);
    Classification {
        cohen_macaulay,
        buchsbaum,
        manifold,
        sphere: manifold && betti.is_sphere(c.dim()),
        ball: is_homology_ball(c).is_ball,
        pure,
        connected: c.is_connected(),
    }
}

/// Checks `∂_{k} ∘ ∂_{k+1} = 0` for every `k`.
pub fn is_chain_complex(c: &SimplicialComplex) -> bool {
    (0..c.rank()).all(|k| {
        let a = boundary_matrix(c, k).expect("in range");
        let b = boundary_matrix(c, k + 1).expect("in range");
        a.mul(&b).map(|p| p.is_zero()).unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary_simplex, cross_polytope_boundary, seven_vertex_torus, simplex};

    fn sc(m: usize, f: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(m, f.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    #[test]
    fn boundary_matrices() {
        let t = boundary_simplex(2).unwrap();
        let d1 = boundary_matrix(&t, 1).unwrap();
        assert_eq!((d1.nrows(), d1.ncols()), (3, 3));
        assert_eq!(d1.rank(), 2);
        let d0 = boundary_matrix(&t, 0).unwrap();
        assert_eq!(d0, RationalMatrix::from_i64_rows(&[vec![1, 1, 1]]).unwrap());
        assert!(boundary_matrix(&t, 3).is_err());
        assert!(is_chain_complex(&cross_polytope_boundary(3).unwrap()));
    }

    #[test]
    fn betti_numbers() {
        let oct = cross_polytope_boundary(3).unwrap();
        assert_eq!(reduced_betti(&oct).values(), &[0, 0, 0, 1]);
        assert_eq!(reduced_betti(&seven_vertex_torus()).values(), &[0, 0, 2, 1]);
        assert_eq!(reduced_betti(&sc(2, &[&[1], &[2]])).values(), &[0, 1]);
        assert_eq!(reduced_betti(&SimplicialComplex::only_empty_face()).values(), &[1]);
    }

    #[test]
    fn predicates() {
        let oct = cross_polytope_boundary(3).unwrap();
        let torus = seven_vertex_torus();
        let two_edges = sc(4, &[&[1, 2], &[3, 4]]);
        let bowtie = sc(5, &[&[1, 2, 3], &[3, 4, 5], &[1, 5]]);
        assert!(is_cohen_macaulay(&oct));
        assert!(!is_cohen_macaulay(&torus));
        assert!(!is_cohen_macaulay(&two_edges));
        assert!(is_buchsbaum(&torus));
        assert!(is_buchsbaum(&oct));
        assert!(!is_buchsbaum(&bowtie));
        assert!(is_homology_sphere(&oct));
        assert!(is_homology_manifold(&torus));
        assert!(!is_homology_sphere(&torus));
        assert_eq!(orientation_class_dim(&oct), Ok(1));
        assert_eq!(orientation_class_dim(&torus), Ok(1));
        assert!(orientation_class_dim(&sc(6, &[&[1, 2], &[2, 3], &[1, 3], &[4, 5], &[5, 6], &[4, 6]])).is_err());
    }

    #[test]
    fn balls() {
        let tri = simplex(2);
        let b = is_homology_ball(&tri);
        assert!(b.is_ball);
        assert_eq!(b.boundary_facets, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        let sub = tri.stellar_subdivide(&[1, 2, 3]).unwrap();
        assert!(is_homology_ball(&sub).is_ball);
        assert!(!is_homology_ball(&cross_polytope_boundary(3).unwrap()).is_ball);
        let disk = boundary_simplex(2).unwrap().join(&simplex(0)).stellar_subdivide(&[1, 2, 4]).unwrap();
        assert!(is_homology_ball(&disk).is_ball);
    }

    #[test]
    fn sphere_pattern() {
        assert!(BettiVector::new(vec![1]).is_sphere(-1));
        assert!(BettiVector::new(vec![0, 0, 1]).is_sphere(1));
        assert!(!BettiVector::new(vec![0, 0]).is_sphere(1));
    }
}
