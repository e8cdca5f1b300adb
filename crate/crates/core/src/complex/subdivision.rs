use std::collections::BTreeSet;

use super::{format_face, is_subset, Face, SimplicialComplex};
use crate::error::{Error, Result};

/// A subdivided complex with the originating face of every vertex.
///
/// Original vertices keep their labels and map to singletons; a vertex added
/// by subdividing at `σ` maps to `σ` (in the labels of the original complex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivided {
    pub complex: SimplicialComplex,
    pub origin: Vec<Face>,
}

impl Subdivided {
    pub fn trivial(complex: &SimplicialComplex) -> Self {
        Self {
            origin: (1..=complex.m()).map(|v| vec![v]).collect(),
            complex: complex.clone(),
        }
    }

    /// Labels of the vertices introduced by subdivision.
    pub fn new_vertices(&self) -> Vec<usize> {
        (1..=self.origin.len()).filter(|&v| self.origin[v - 1].len() > 1).collect()
    }

    /// Faces written in terms of originating faces, independent of vertex labels.
    pub fn canonical_faces(&self) -> BTreeSet<Vec<Face>> {
        self.complex
            .all_faces()
            .map(|f| {
                let mut tags: Vec<Face> = f.iter().map(|&v| self.origin[v - 1].clone()).collect();
                tags.sort();
                tags
            })
            .collect()
    }

    /// Subdivides further at `sigma`, a face given in the current labels.
    pub fn subdivide_at(&mut self, sigma: &[usize]) -> Result<Option<usize>> {
        let before = self.complex.m();
        self.complex = self.complex.stellar_subdivide(sigma)?;
        if self.complex.m() == before {
            return Ok(None);
        }
        let mut tag: Face = sigma
            .iter()
            .flat_map(|&v| self.origin[v - 1].iter().copied())
            .collect();
        tag.sort_unstable();
        tag.dedup();
        self.origin.push(tag);
        Ok(Some(before + 1))
    }
}

impl SimplicialComplex {
    /// Stellar subdivision at `sigma`; the new vertex (if any) is `m + 1`.
    pub fn stellar_subdivide(&self, sigma: &[usize]) -> Result<Self> {
        let s = self.require_face(sigma)?;
        if s.is_empty() {
            return Err(Error::InvalidParameter("cannot subdivide at the empty face".into()));
        }
        if s.len() == 1 {
            return Ok(self.clone());
        }
        let v = self.m + 1;
        let mut facets = Vec::with_capacity(self.facets.len() + s.len());
        for f in &self.facets {
            if !is_subset(&s, f) {
                facets.push(f.clone());
                continue;
            }
            for i in &s {
                let mut g: Face = f.iter().copied().filter(|x| x != i).collect();
                g.push(v);
                facets.push(g);
            }
        }
        Self::from_facets(v, facets)
    }

    /// The partial barycentric subdivision `D_i`, subdividing faces in lexicographic order.
    pub fn partial_barycentric(&self, i: usize) -> Result<Subdivided> {
        self.partial_barycentric_ordered(i, |_, _| {})
    }

    /// As [`Self::partial_barycentric`], but `order(level, faces)` may permute
    /// the faces of each level before they are subdivided.
    pub fn partial_barycentric_ordered(
        &self,
        i: usize,
        mut order: impl FnMut(usize, &mut Vec<Face>),
    ) -> Result<Subdivided> {
        let d = self.rank;
        if !self.is_pure() {
            return Err(Error::Precondition(
                "partial barycentric subdivision needs a pure complex".into(),
            ));
        }
        if i > d {
            return Err(Error::InvalidParameter(format!("level {i} exceeds d = {d}")));
        }
        let mut out = Subdivided::trivial(self);
        for level in 1..=i {
            let size = d + 1 - level;
            if size < 2 {
                break;
            }
            let mut faces = self.faces(size).to_vec();
            order(level, &mut faces);
            for face in &faces {
                out.subdivide_at(face).map_err(|e| match e {
                    Error::NotAFace(_) => Error::Precondition(format!(
                        "original face {} vanished during subdivision",
                        format_face(face)
                    )),
                    other => other,
                })?;
            }
        }
        Ok(out)
    }

    /// Successive stellar subdivisions at the given faces of `self`, in order.
    pub fn stellar_sequence(&self, faces: &[Face]) -> Result<Subdivided> {
        let mut out = Subdivided::trivial(self);
        for f in faces {
            out.subdivide_at(f)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use crate::complex::{boundary_simplex, cross_polytope_boundary, SimplicialComplex};

    #[test]
    fn stellar_examples() {
        let t = boundary_simplex(2).unwrap();
        assert_eq!(t.stellar_subdivide(&[2]).unwrap(), t);
        let sq = t.stellar_subdivide(&[1, 2]).unwrap();
        assert_eq!(sq.f_vector(), vec![4, 4]);
        assert_eq!(sq.facets(), &[vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]]);
        let oct = cross_polytope_boundary(3).unwrap();
        let s = oct.stellar_subdivide(&[1, 3, 5]).unwrap();
        assert_eq!(s.f_vector(), vec![7, 15, 10]);
        assert!(oct.stellar_subdivide(&[1, 2]).is_err());
    }

    #[test]
    fn partial_barycentric_examples() {
        let t = boundary_simplex(2).unwrap();
        let hex = t.partial_barycentric(1).unwrap();
        assert_eq!(hex.complex.f_vector(), vec![6, 6]);
        assert_eq!(hex.complex.h_vector(), vec![1, 4, 1]);
        assert_eq!(hex.new_vertices(), vec![4, 5, 6]);
        assert_eq!(hex.origin[3], vec![1, 2]);
        assert_eq!(t.partial_barycentric(0).unwrap().complex, t);

        let oct = cross_polytope_boundary(3).unwrap();
        let d2 = oct.partial_barycentric(2).unwrap();
        let d3 = oct.partial_barycentric(3).unwrap();
        assert_eq!(d2, d3);
        // barycentric subdivision of the octahedron: 6 + 12 + 8 vertices, 48 triangles
        assert_eq!(d2.complex.f_vector(), vec![26, 72, 48]);
    }

    #[test]
    fn partial_barycentric_rejects_bad_input() {
        let nonpure = SimplicialComplex::from_facets(4, vec![vec![1, 2, 3], vec![3, 4]]).unwrap();
        assert!(nonpure.partial_barycentric(1).is_err());
        assert!(boundary_simplex(2).unwrap().partial_barycentric(3).is_err());
    }
}
