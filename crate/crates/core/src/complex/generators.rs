use super::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::combinations;

/// Boundary of the `n`-simplex on vertices `1..=n+1`.
pub fn boundary_simplex(n: usize) -> Result<SimplicialComplex> {
    if n == 0 {
        return Err(Error::InvalidParameter("boundary_simplex needs n >= 1".into()));
    }
    let facets = combinations(n + 1, n)
        .into_iter()
        .map(|c| c.into_iter().map(|i| i + 1).collect())
        .collect();
    SimplicialComplex::from_facets(n + 1, facets)
}

/// The full `n`-simplex on vertices `1..=n+1`.
pub fn simplex(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_facets(n + 1, vec![(1..=n + 1).collect()]).expect("valid simplex")
}

/// Boundary of the `d`-dimensional cross-polytope; antipodal pairs are `(2i-1, 2i)`.
pub fn cross_polytope_boundary(d: usize) -> Result<SimplicialComplex> {
    if d == 0 || d > 16 {
        return Err(Error::InvalidParameter(format!(
            "cross_polytope_boundary needs 1 <= d <= 16, got {d}"
        )));
    }
    let facets = (0u32..1 << d)
        .map(|mask| (0..d).map(|i| 2 * i + 1 + ((mask >> i) & 1) as usize).collect())
        .collect();
    SimplicialComplex::from_facets(2 * d, facets)
}

/// Boundary of the cyclic `d`-polytope with `n` vertices, via Gale's evenness condition.
pub fn cyclic_polytope_boundary(d: usize, n: usize) -> Result<SimplicialComplex> {
    if d < 2 || n <= d {
        return Err(Error::InvalidParameter(format!(
            "cyclic_polytope_boundary needs n > d >= 2, got d={d}, n={n}"
        )));
    }
    let facets: Vec<Face> = combinations(n, d)
        .into_iter()
        .map(|c| c.into_iter().map(|i| i + 1).collect::<Face>())
        .filter(|s| gale_even(s, n))
        .collect();
    SimplicialComplex::from_facets(n, facets)
}

fn gale_even(s: &[usize], n: usize) -> bool {
    let outside: Vec<usize> = (1..=n).filter(|v| s.binary_search(v).is_err()).collect();
    outside.windows(2).all(|w| {
        let between = s.iter().filter(|&&v| v > w[0] && v < w[1]).count();
        between % 2 == 0
    })
}

/// Seven-vertex triangulation of the torus (14 triangles).
pub fn seven_vertex_torus() -> SimplicialComplex {
    let mut facets = Vec::with_capacity(14);
    for i in 0..7 {
        for offsets in [[0, 1, 3], [0, 2, 3]] {
            facets.push(offsets.iter().map(|o| (i + o) % 7 + 1).collect());
        }
    }
    SimplicialComplex::from_facets(7, facets).expect("valid torus")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_generators() {
        assert_eq!(boundary_simplex(2).unwrap().f_vector(), vec![3, 3]);
        assert!(boundary_simplex(0).is_err());
        assert_eq!(simplex(2).facets(), &[vec![1, 2, 3]]);
    }

    #[test]
    fn cross_polytope_four() {
        let c = cross_polytope_boundary(4).unwrap();
        assert_eq!(c.f_vector(), vec![8, 24, 32, 16]);
        assert_eq!(c.h_vector(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn cyclic_is_neighborly() {
        let c = cyclic_polytope_boundary(4, 7).unwrap();
        assert_eq!(c.f_vector()[0], 7);
        assert_eq!(c.f_vector()[1], 21);
        let h = c.h_vector();
        assert_eq!(h, vec![1, 3, 6, 3, 1]);
        assert!(cyclic_polytope_boundary(4, 4).is_err());
        assert_eq!(cyclic_polytope_boundary(2, 5).unwrap().f_vector(), vec![5, 5]);
    }
}
