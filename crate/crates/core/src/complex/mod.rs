//! Finite abstract simplicial complexes on the vertex set `1..=m`.

mod generators;
mod io;
mod subdivision;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::combinations;

pub use generators::{
    boundary_simplex, cross_polytope_boundary, cyclic_polytope_boundary, seven_vertex_torus,
    simplex,
};
pub use io::{parse_text, ComplexDocument};
pub use subdivision::Subdivided;

/// A face is a strictly increasing list of vertex labels.
pub type Face = Vec<usize>;

pub(crate) fn format_face(face: &[usize]) -> String {
    let parts: Vec<String> = face.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

#[derive(Default)]
struct FaceTable {
    by_size: Vec<Vec<Face>>,
    index: HashMap<Face, usize>,
}

/// Facet-presented simplicial complex. Faces are enumerated lazily and cached.
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<Face>,
    rank: usize,
    table: OnceLock<FaceTable>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        Self {
            m: self.m,
            facets: self.facets.clone(),
            rank: self.rank,
            table: OnceLock::new(),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("m", &self.m)
            .field("facets", &self.facets)
            .finish()
    }
}

/// A complex on a dense vertex range together with the original label of each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeled {
    pub complex: SimplicialComplex,
    /// `labels[i - 1]` is the original label of new vertex `i`.
    pub labels: Vec<usize>,
}

impl Relabeled {
    pub fn to_original(&self, face: &[usize]) -> Face {
        face.iter().map(|&v| self.labels[v - 1]).collect()
    }

    /// Translates an original face into new labels, if all its vertices survive.
    pub fn from_original(&self, face: &[usize]) -> Option<Face> {
        face.iter()
            .map(|v| self.labels.binary_search(v).ok().map(|i| i + 1))
            .collect()
    }
}

impl SimplicialComplex {
    /// Builds the complex generated by `facets` on the vertex set `1..=m`.
    ///
    /// Non-maximal generators are dropped. Every vertex must occur in some facet.
    pub fn from_facets(m: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::EmptyFacetList);
        }
        let mut cleaned = Vec::with_capacity(facets.len());
        for (i, mut f) in facets.into_iter().enumerate() {
            if f.is_empty() {
                return Err(Error::EmptyFacet(i));
            }
            f.sort_unstable();
            f.dedup();
            if let Some(&v) = f.iter().find(|&&v| v == 0 || v > m) {
                return Err(Error::VertexOutOfRange { vertex: v, m });
            }
            cleaned.push(f);
        }
        let facets = maximal_sets(cleaned);
        let mut used = vec![false; m + 1];
        for f in &facets {
            for &v in f {
                used[v] = true;
            }
        }
        if let Some(v) = (1..=m).find(|&v| !used[v]) {
            return Err(Error::UnusedVertex(v));
        }
        Ok(Self::from_parts(m, facets))
    }

    /// The complex `{∅}` whose only face is the empty face.
    pub fn only_empty_face() -> Self {
        Self::from_parts(0, vec![Vec::new()])
    }

    fn from_parts(m: usize, facets: Vec<Face>) -> Self {
        let rank = facets.iter().map(Vec::len).max().unwrap_or(0);
        Self {
            m,
            facets,
            rank,
            table: OnceLock::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// Largest facet cardinality, written `d` throughout (so `dim = d - 1`).
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> isize {
        self.rank as isize - 1
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().all(|f| f.len() == self.rank)
    }

    pub fn is_only_empty_face(&self) -> bool {
        self.m == 0
    }

    fn table(&self) -> &FaceTable {
        self.table.get_or_init(|| {
            let mut sets: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); self.rank + 1];
            for f in &self.facets {
                for (k, set) in sets.iter_mut().enumerate().take(f.len() + 1) {
                    for idx in combinations(f.len(), k) {
                        set.insert(idx.iter().map(|&i| f[i]).collect());
                    }
                }
            }
            let by_size: Vec<Vec<Face>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
            let mut index = HashMap::new();
            for faces in &by_size {
                for (i, face) in faces.iter().enumerate() {
                    index.insert(face.clone(), i);
                }
            }
            FaceTable { by_size, index }
        })
    }

    /// Faces with exactly `k` vertices, in lexicographic order.
    pub fn faces(&self, k: usize) -> &[Face] {
        self.table().by_size.get(k).map_or(&[], Vec::as_slice)
    }

    /// Faces of dimension `i` (that is, with `i + 1` vertices).
    pub fn faces_of_dim(&self, i: isize) -> &[Face] {
        if i < -1 {
            return &[];
        }
        self.faces((i + 1) as usize)
    }

    /// All faces, grouped by cardinality.
    pub fn all_faces(&self) -> impl Iterator<Item = &Face> {
        self.table().by_size.iter().flatten()
    }

    /// Position of a sorted face within [`Self::faces`] of its cardinality.
    pub fn face_index(&self, face: &[usize]) -> Option<usize> {
        self.table().index.get(face).copied()
    }

    /// Membership test for a sorted vertex list.
    pub fn contains(&self, face: &[usize]) -> bool {
        face.len() <= self.rank && self.table().index.contains_key(face)
    }

    /// Membership test for an arbitrary vertex collection.
    pub fn contains_set(&self, vertices: &[usize]) -> bool {
        let mut f = vertices.to_vec();
        f.sort_unstable();
        f.dedup();
        self.contains(&f)
    }

    fn require_face(&self, sigma: &[usize]) -> Result<Face> {
        let mut s = sigma.to_vec();
        s.sort_unstable();
        s.dedup();
        if self.contains(&s) {
            Ok(s)
        } else {
            Err(Error::NotAFace(format_face(&s)))
        }
    }

    /// `(f_0, ..., f_{d-1})`.
    pub fn f_vector(&self) -> Vec<u64> {
        (1..=self.rank).map(|k| self.faces(k).len() as u64).collect()
    }

    /// `(h_0, ..., h_d)` from `sum h_i t^{d-i} = sum f_{i-1} (t-1)^{d-i}`.
    pub fn h_vector(&self) -> Vec<i64> {
        h_from_f(&self.f_vector())
    }

    /// `(g_0, ..., g_{floor(d/2)})` with `g_0 = 1` and `g_i = h_i - h_{i-1}`.
    pub fn g_vector(&self) -> Vec<i64> {
        g_from_h(&self.h_vector())
    }

    /// Restriction to the vertex set `j`, relabeled to `1..=|J|`.
    pub fn full_subcomplex(&self, j: &[usize]) -> Relabeled {
        let mut labels = j.to_vec();
        labels.sort_unstable();
        labels.dedup();
        let generators = self
            .facets
            .iter()
            .map(|f| {
                f.iter()
                    .filter_map(|v| labels.binary_search(v).ok().map(|i| i + 1))
                    .collect()
            })
            .collect();
        Self::relabeled_from(generators, labels)
    }

    /// `lk σ = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ Δ}`.
    pub fn link(&self, sigma: &[usize]) -> Result<Relabeled> {
        let s = self.require_face(sigma)?;
        let pieces: Vec<Face> = self
            .facets
            .iter()
            .filter(|f| is_subset(&s, f))
            .map(|f| f.iter().copied().filter(|v| s.binary_search(v).is_err()).collect())
            .collect();
        Ok(self.relabel_pieces(pieces))
    }

    /// `st σ = {τ : τ ∪ σ ∈ Δ}`, the closure of the facets containing `σ`.
    pub fn star(&self, sigma: &[usize]) -> Result<Relabeled> {
        let s = self.require_face(sigma)?;
        let pieces: Vec<Face> = self.facets.iter().filter(|f| is_subset(&s, f)).cloned().collect();
        Ok(self.relabel_pieces(pieces))
    }

    fn relabel_pieces(&self, pieces: Vec<Face>) -> Relabeled {
        let labels: Vec<usize> = pieces
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let generators = pieces
            .iter()
            .map(|f| f.iter().map(|v| labels.binary_search(v).unwrap() + 1).collect())
            .collect();
        Self::relabeled_from(generators, labels)
    }

    fn relabeled_from(generators: Vec<Face>, labels: Vec<usize>) -> Relabeled {
        let complex = if labels.is_empty() {
            Self::only_empty_face()
        } else {
            let facets = maximal_sets(generators.into_iter().filter(|f| !f.is_empty()).collect());
            Self::from_parts(labels.len(), facets)
        };
        Relabeled { complex, labels }
    }

    /// Join with `other`, whose vertices are shifted by `m`.
    pub fn join(&self, other: &Self) -> Self {
        let m = self.m + other.m;
        let mut facets = Vec::new();
        for f in &self.facets {
            for g in &other.facets {
                let mut h = f.clone();
                h.extend(g.iter().map(|v| v + self.m));
                facets.push(h);
            }
        }
        Self::from_parts(m, facets)
    }

    /// Cone with apex `m + 1`.
    pub fn cone(&self) -> Self {
        let apex = self.m + 1;
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let mut g = f.clone();
                g.push(apex);
                g
            })
            .collect();
        Self::from_parts(apex, facets)
    }

    /// Minimal non-faces, sorted by size and then lexicographically.
    pub fn missing_faces(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for k in 2..=self.rank + 1 {
            for tau in self.faces(k - 1) {
                let start = tau.last().copied().unwrap_or(0) + 1;
                for v in start..=self.m {
                    let mut cand = tau.clone();
                    cand.push(v);
                    if self.contains(&cand) {
                        continue;
                    }
                    let minimal = (0..cand.len()).all(|i| {
                        let mut sub = cand.clone();
                        sub.remove(i);
                        self.contains(&sub)
                    });
                    if minimal {
                        out.push(cand);
                    }
                }
            }
        }
        out
    }

    /// Whether some vertex lies in every facet.
    pub fn is_cone(&self) -> bool {
        let Some(first) = self.facets.first() else {
            return false;
        };
        first
            .iter()
            .any(|v| self.facets.iter().all(|f| f.binary_search(v).is_ok()))
    }

    /// Whether the complex is disconnected as a graph on its vertices.
    pub fn is_connected(&self) -> bool {
        if self.m <= 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..=self.m).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for f in &self.facets {
            for w in f.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 1);
        (2..=self.m).all(|v| find(&mut parent, v) == root)
    }

    /// Relabels vertices by `perm`, where `perm[v - 1]` is the new label of `v`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "permutation of length {} for {} vertices",
                perm.len(),
                self.m
            )));
        }
        let facets = self
            .facets
            .iter()
            .map(|f| f.iter().map(|&v| perm[v - 1]).collect())
            .collect();
        Self::from_facets(self.m, facets)
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// Keeps the inclusion-maximal sets, sorted lexicographically and deduplicated.
fn maximal_sets(mut sets: Vec<Face>) -> Vec<Face> {
    sets.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(sets.len());
    let mut seen: HashSet<Face> = HashSet::new();
    for s in sets {
        if seen.contains(&s) || kept.iter().any(|k| k.len() > s.len() && is_subset(&s, k)) {
            continue;
        }
        seen.insert(s.clone());
        kept.push(s);
    }
    kept.sort_unstable();
    kept
}

pub(crate) fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

/// `h_k = sum_{i=0}^{k} (-1)^{k-i} C(d-i, k-i) f_{i-1}` with `f_{-1} = 1`.
pub fn h_from_f(f: &[u64]) -> Vec<i64> {
    let d = f.len() as i64;
    let fm = |i: i64| if i == 0 { 1 } else { f[(i - 1) as usize] as i64 };
    (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(d - i, k - i) * fm(i)
                })
                .sum()
        })
        .collect()
}

pub fn g_from_h(h: &[i64]) -> Vec<i64> {
    let d = h.len().saturating_sub(1);
    (0..=d / 2)
        .map(|i| if i == 0 { h[0] } else { h[i] - h[i - 1] })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]]).unwrap()
    }

    #[test]
    fn construction_and_errors() {
        let t = SimplicialComplex::from_facets(3, vec![vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap();
        assert_eq!(t.f_vector(), vec![3, 3]);
        let r = SimplicialComplex::from_facets(3, vec![vec![1, 2, 3], vec![1, 2]]).unwrap();
        assert_eq!(r.facets(), &[vec![1, 2, 3]]);
        assert_eq!(square().dim(), 1);
        assert_eq!(SimplicialComplex::from_facets(3, vec![]), Err(Error::EmptyFacetList));
        assert_eq!(
            SimplicialComplex::from_facets(2, vec![vec![1, 3]]),
            Err(Error::VertexOutOfRange { vertex: 3, m: 2 })
        );
        assert_eq!(SimplicialComplex::from_facets(3, vec![vec![1, 2]]), Err(Error::UnusedVertex(3)));
        assert_eq!(SimplicialComplex::from_facets(2, vec![vec![1, 2], vec![]]), Err(Error::EmptyFacet(1)));
    }

    #[test]
    fn link_star_cone() {
        let oct = cross_polytope_boundary(3).unwrap();
        let lk = oct.link(&[1]).unwrap();
        assert_eq!(lk.complex.f_vector(), vec![4, 4]);
        assert_eq!(lk.labels, vec![3, 4, 5, 6]);
        let st = oct.star(&[1]).unwrap();
        assert_eq!(st.complex.f_vector(), lk.complex.cone().f_vector());
        assert!(oct.link(&[1, 2]).is_err());
        let pair = boundary_simplex(1).unwrap();
        let c = pair.cone();
        assert_eq!(c.facets(), &[vec![1, 3], vec![2, 3]]);
        let facet_link = oct.link(&[1, 3, 5]).unwrap();
        assert!(facet_link.complex.is_only_empty_face());
        assert_eq!(facet_link.complex.dim(), -1);
    }

    #[test]
    fn missing_faces_of_square() {
        assert_eq!(square().missing_faces(), vec![vec![1, 3], vec![2, 4]]);
        let b = boundary_simplex(2).unwrap();
        assert_eq!(b.missing_faces(), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn join_of_pairs_is_square() {
        let pair = boundary_simplex(1).unwrap();
        let j = pair.join(&pair);
        assert_eq!(j.f_vector(), vec![4, 4]);
        assert_eq!(j.missing_faces(), vec![vec![1, 2], vec![3, 4]]);
    }

    #[test]
    fn vectors() {
        let b = boundary_simplex(2).unwrap();
        assert_eq!(b.h_vector(), vec![1, 1, 1]);
        assert_eq!(b.g_vector(), vec![1, 0]);
        let oct = cross_polytope_boundary(3).unwrap();
        assert_eq!(oct.f_vector(), vec![6, 12, 8]);
        assert_eq!(oct.h_vector(), vec![1, 3, 3, 1]);
        let t = seven_vertex_torus();
        assert_eq!(t.f_vector(), vec![7, 21, 14]);
        assert_eq!(t.h_vector(), vec![1, 4, 10, -1]);
    }

    #[test]
    fn cone_face_counts() {
        let t = seven_vertex_torus();
        let c = t.cone();
        let f = t.f_vector();
        let fc = c.f_vector();
        assert_eq!(fc[0], f[0] + 1);
        for i in 1..f.len() {
            assert_eq!(fc[i], f[i] + f[i - 1]);
        }
        assert_eq!(fc[3], f[2]);
    }

    #[test]
    fn full_subcomplex_relabels() {
        let sq = square();
        let r = sq.full_subcomplex(&[1, 3]);
        assert_eq!(r.complex.facets(), &[vec![1], vec![2]]);
        assert_eq!(r.labels, vec![1, 3]);
        let e = sq.full_subcomplex(&[]);
        assert!(e.complex.is_only_empty_face());
        assert!(sq.is_connected());
        assert!(!r.complex.is_connected());
    }
}
