use facering::complex::{boundary_simplex, cross_polytope_boundary, parse_text, seven_vertex_torus};
use facering::face_ring::{pseudopower, random_lsop};
use facering::homology::{is_buchsbaum, is_cohen_macaulay, is_homology_sphere, reduced_betti};
use facering::lefschetz::{check_form, find_wle, sample_form, MapSelection};
use facering::moment_angle::{euler_hilbert_crosscheck, hochster_table, DEFAULT_CAP};
use facering::{ArtinianReduction, Face, Rational, SimplicialComplex};
mod common;

use common::{complex_from_masks, pseudopower_by_search, random_pure};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn any_complex() -> impl Strategy<Value = SimplicialComplex> {
    (3usize..=7)
        .prop_flat_map(|m| (Just(m), prop::collection::vec(1u32..(1 << m), 1..6)))
        .prop_filter_map("nonempty", |(m, masks)| complex_from_masks(m, &masks))
}

/// Spheres obtained from small polytope boundaries by stellar moves.
fn stellar_sphere(base: usize, moves: &[(usize, usize)]) -> SimplicialComplex {
    let mut c = match base {
        0 => boundary_simplex(2).unwrap(),
        1 => boundary_simplex(3).unwrap(),
        _ => cross_polytope_boundary(3).unwrap(),
    };
    for &(size, pick) in moves {
        let size = 1 + size % c.rank();
        let faces = c.faces(size);
        let f = faces[pick % faces.len()].clone();
        c = c.stellar_subdivide(&f).unwrap();
    }
    c
}

fn sphere_strategy() -> impl Strategy<Value = SimplicialComplex> {
    (0usize..3, prop::collection::vec((0usize..4, 0usize..50), 0..4))
        .prop_map(|(b, moves)| stellar_sphere(b, &moves))
}

fn reduced_euler_from_f(c: &SimplicialComplex) -> i64 {
    let mut chi = -1;
    for (i, &f) in c.f_vector().iter().enumerate() {
        chi += if i % 2 == 0 { f as i64 } else { -(f as i64) };
    }
    chi
}

/// Monomials of degree `i` in `n` variables as exponent vectors, lex descending.
fn lex_monomials(n: usize, i: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, i as u32, &mut Vec::new(), &mut out);
    out
}

/// Degree `i + 1` quotient dimension when the lex-first monomials of degree `i` are killed
/// so that `a` survive.
fn lex_growth(n: usize, i: usize, a: usize) -> u64 {
    let deg_i = lex_monomials(n, i);
    let killed = &deg_i[..deg_i.len() - a];
    let mut shadow = std::collections::BTreeSet::new();
    for mono in killed {
        for v in 0..n {
            let mut up = mono.clone();
            up[v] += 1;
            shadow.insert(up);
        }
    }
    (lex_monomials(n, i + 1).len() - shadow.len()) as u64
}

#[test]
fn pseudopower_matches_exhaustive_expansion() {
    for i in 1..=6 {
        for a in 0..=200u64 {
            assert_eq!(pseudopower(a, i).unwrap(), pseudopower_by_search(a, i), "a = {a}, i = {i}");
        }
    }
}

#[test]
fn pseudopower_matches_lex_segment_growth() {
    let n = 6;
    for i in 1..=4 {
        let total = lex_monomials(n, i).len();
        for a in 0..=total.min(120) {
            assert_eq!(pseudopower(a as u64, i).unwrap(), lex_growth(n, i, a), "a = {a}, i = {i}");
        }
    }
}

#[test]
fn partial_barycentric_is_order_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let c = random_pure(&mut rng);
        let i = rng.random_range(1..=c.rank());
        let lex = c.partial_barycentric(i).unwrap();
        let mut shuffler = ChaCha8Rng::seed_from_u64(rng.random());
        let shuffled = c
            .partial_barycentric_ordered(i, |_, faces: &mut Vec<Face>| faces.shuffle(&mut shuffler))
            .unwrap();
        assert_eq!(lex.canonical_faces(), shuffled.canonical_faces());
        assert_eq!(lex.complex.f_vector(), shuffled.complex.f_vector());
    }
}

#[test]
fn torus_round_trips_through_text() {
    let t = seven_vertex_torus();
    assert_eq!(parse_text(&t.to_text()).unwrap(), t);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduced_euler_characteristic(c in any_complex()) {
        prop_assert_eq!(reduced_betti(&c).euler_characteristic(), reduced_euler_from_f(&c));
    }

    #[test]
    fn cohen_macaulay_implies_buchsbaum(c in any_complex()) {
        if is_cohen_macaulay(&c) {
            prop_assert!(is_buchsbaum(&c));
        }
    }

    #[test]
    fn text_round_trip(c in any_complex()) {
        prop_assert_eq!(parse_text(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn hochster_euler_matches_hilbert_series(c in any_complex()) {
        let t = hochster_table(&c, DEFAULT_CAP, 2).unwrap();
        prop_assert!(euler_hilbert_crosscheck(&c, &t));
    }

    #[test]
    fn dehn_sommerville_on_stellar_spheres(c in sphere_strategy()) {
        prop_assert!(is_homology_sphere(&c));
        let h = c.h_vector();
        let rev: Vec<i64> = h.iter().rev().copied().collect();
        prop_assert_eq!(h, rev);
    }

    #[test]
    fn hochster_table_is_symmetric_on_spheres(c in sphere_strategy()) {
        prop_assume!(c.m() <= 9);
        let t = hochster_table(&c, DEFAULT_CAP, 1).unwrap();
        prop_assert!(t.is_symmetric(c.rank()));
        prop_assert_eq!(t.beta(0, 0), 1);
        for j in 1..=c.m() {
            prop_assert_eq!(t.beta(0, j), 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn wle_verdict_is_scale_invariant(c in sphere_strategy(), seed in 0u64..1000, scale in 1i64..9) {
        let lsop = random_lsop(&c, 10, seed, 200).unwrap().lsop;
        let red = ArtinianReduction::new(&c, &lsop).unwrap();
        let omega = sample_form(c.m(), 10, seed, 0);
        let scaled: Vec<Rational> = omega.iter().map(|x| x * Rational::from_integer((-scale).into())).collect();
        let a = check_form(&red, &omega, MapSelection::All).unwrap();
        let b = check_form(&red, &scaled, MapSelection::All).unwrap();
        prop_assert_eq!(a.ranks, b.ranks);
        prop_assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn generic_lsops_agree_on_spheres(c in sphere_strategy(), s1 in 0u64..1000, s2 in 0u64..1000) {
        let h: Vec<usize> = c.h_vector().iter().map(|&x| x as usize).collect();
        let mut previous_cert = None;
        for seed in [s1, s2] {
            let lsop = random_lsop(&c, 10, seed, 200).unwrap().lsop;
            let red = ArtinianReduction::new(&c, &lsop).unwrap();
            prop_assert_eq!(&red.dims(), &h);
            let cert = find_wle(&red, 50, 10, seed).unwrap();
            prop_assert!(cert.certified());
            if let Some(prev) = previous_cert.replace(cert.ranks.clone()) {
                prop_assert_eq!(prev, cert.ranks);
            }
        }
    }
}
