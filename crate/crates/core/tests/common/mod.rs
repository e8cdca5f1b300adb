//! Oracles shared by the integration test targets.
#![allow(dead_code)]

use facering::SimplicialComplex;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn binomial_coefficient(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// Complex on the vertices actually used by the given facet masks.
pub fn complex_from_masks(m: usize, masks: &[u32]) -> Option<SimplicialComplex> {
    let used: Vec<usize> = (0..m).filter(|i| masks.iter().any(|f| f >> i & 1 == 1)).collect();
    let facets: Vec<Vec<usize>> = masks
        .iter()
        .filter(|&&f| f != 0)
        .map(|f| {
            used.iter()
                .enumerate()
                .filter(|(_, &v)| f >> v & 1 == 1)
                .map(|(i, _)| i + 1)
                .collect()
        })
        .collect();
    SimplicialComplex::from_facets(used.len(), facets).ok()
}

/// A random pure complex with at most 8 vertices.
pub fn random_pure(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    loop {
        let m = rng.random_range(3..=8usize);
        let size = rng.random_range(2..=m.min(4));
        let count = rng.random_range(1..=6);
        let masks: Vec<u32> = (0..count)
            .map(|_| {
                let mut verts: Vec<u32> = (0..m as u32).collect();
                verts.shuffle(rng);
                verts[..size].iter().map(|v| 1 << v).sum()
            })
            .collect();
        if let Some(c) = complex_from_masks(m, &masks) {
            if c.is_pure() {
                return c;
            }
        }
    }
}

/// Every Macaulay expansion of `a` in level `i`, by exhaustive search.
pub fn expansions(rem: u64, k: usize, upper: u64) -> Vec<Vec<u64>> {
    if rem == 0 {
        return vec![Vec::new()];
    }
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for ak in k as u64..upper {
        let b = binomial_coefficient(ak, k as u64);
        if b > rem {
            break;
        }
        for mut tail in expansions(rem - b, k - 1, ak) {
            tail.insert(0, ak);
            out.push(tail);
        }
    }
    out
}

pub fn pseudopower_by_search(a: u64, i: usize) -> u64 {
    if a == 0 {
        return 0;
    }
    let all = expansions(a, i, a + i as u64 + 1);
    assert_eq!(all.len(), 1, "expansion of {a} in level {i} is not unique");
    all[0]
        .iter()
        .enumerate()
        .map(|(t, &ak)| binomial_coefficient(ak + 1, (i - t) as u64 + 1))
        .sum()
}

