//! Fixtures shared by the benchmarks.

use facering::complex::{cross_polytope_boundary, cyclic_polytope_boundary};
use facering::face_ring::random_lsop;
use facering::linalg::random_int_matrix;
use facering::{LsopMatrix, RationalMatrix, SimplicialComplex};

/// A sphere together with a fixed l.s.o.p.
pub fn sphere_with_lsop(kind: &str) -> (SimplicialComplex, LsopMatrix) {
    let c = match kind {
        "cross4" => cross_polytope_boundary(4).expect("valid"),
        "cyclic4_8" => cyclic_polytope_boundary(4, 8).expect("valid"),
        _ => cross_polytope_boundary(3).expect("valid"),
    };
    let lsop = random_lsop(&c, 10, 1, 200).expect("l.s.o.p. found").lsop;
    (c, lsop)
}

/// A dense random integer matrix of the given size.
pub fn dense_matrix(n: usize) -> RationalMatrix {
    random_int_matrix(n, n, 20, 7).expect("nonzero bound")
}
