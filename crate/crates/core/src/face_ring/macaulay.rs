use crate::complex::{binomial, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::BettiVector;

fn choose(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The Macaulay pseudopower `a^<i>`.
///
/// Writes `a = C(a_i, i) + C(a_{i-1}, i-1) + ... + C(a_j, j)` greedily with
/// `a_i > a_{i-1} > ... > a_j >= j >= 1`, then returns `Σ C(a_k + 1, k + 1)`.
pub fn pseudopower(a: u64, i: usize) -> Result<u64> {
    if i == 0 {
        return Err(Error::InvalidParameter("pseudopower needs i >= 1".into()));
    }
    let mut rest = a as u128;
    let mut out: u128 = 0;
    let mut k = i as u64;
    while rest > 0 && k > 0 {
        let mut n = k;
        while choose(n + 1, k) <= rest {
            n += 1;
        }
        rest -= choose(n, k);
        out += choose(n + 1, k + 1);
        k -= 1;
    }
    u64::try_from(out).map_err(|_| Error::InvalidParameter("pseudopower overflow".into()))
}

/// Macaulay's criterion: `k_0 = 1`, all entries nonnegative, `k_{i+1} <= k_i^<i>` for `i >= 1`.
pub fn is_m_vector(k: &[i64]) -> bool {
    if k.first() != Some(&1) || k.iter().any(|&x| x < 0) {
        return false;
    }
    (1..k.len().saturating_sub(1)).all(|i| {
        pseudopower(k[i] as u64, i).is_ok_and(|p| k[i + 1] as u64 <= p)
    })
}

/// Numerator `(h_0, ..., h_d)` of the Hilbert series over `(1 - λ^2)^d`.
pub fn hilbert_series_numerator(c: &SimplicialComplex) -> Vec<i64> {
    c.h_vector()
}

/// Coefficients `a_0, ..., a_up_to` of the Hilbert series, `a_k = Σ_i h_i C(k - i + d - 1, d - 1)`.
pub fn hilbert_coefficients(c: &SimplicialComplex, up_to: usize) -> Vec<i64> {
    let h = c.h_vector();
    let d = c.rank() as i64;
    (0..=up_to as i64)
        .map(|k| {
            if d == 0 {
                return i64::from(k == 0);
            }
            h.iter()
                .enumerate()
                .filter(|(i, _)| *i as i64 <= k)
                .map(|(i, &hi)| hi * binomial(k - i as i64 + d - 1, d - 1))
                .sum()
        })
        .collect()
}

/// `h_j - C(d, j) Σ_{i=1}^{j-1} (-1)^i β̃_{j-i-1}` for `j = 0..=d`.
pub fn schenzel_predicted(h: &[i64], betti: &BettiVector, d: usize) -> Result<Vec<i64>> {
    if h.len() != d + 1 {
        return Err(Error::DimensionMismatch(format!(
            "h-vector of length {} for d = {d}",
            h.len()
        )));
    }
    Ok((0..=d)
        .map(|j| {
            let correction: i64 = (1..j)
                .map(|i| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    sign * betti.get(j as isize - i as isize - 1) as i64
                })
                .sum();
            h[j] - binomial(d as i64, j as i64) * correction
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary_simplex, cross_polytope_boundary, simplex};
    use crate::face_ring::graded_basis;

    #[test]
    fn pseudopower_values() {
        assert_eq!(pseudopower(0, 3), Ok(0));
        assert_eq!(pseudopower(4, 2), Ok(5));
        assert_eq!(pseudopower(2, 1), Ok(3));
        assert_eq!(pseudopower(4, 1), Ok(10));
        assert!(pseudopower(3, 0).is_err());
    }

    #[test]
    fn m_vectors() {
        assert!(!is_m_vector(&[1, 2, 4]));
        assert!(is_m_vector(&[1, 3, 6]));
        assert!(is_m_vector(&[1, 4, 2]));
        assert!(is_m_vector(&[1, 0]));
        assert!(!is_m_vector(&[1, 0, 1]));
        assert!(!is_m_vector(&[2, 1]));
        assert!(!is_m_vector(&[1, -1]));
    }

    #[test]
    fn hilbert_counts_match_bases() {
        for c in [boundary_simplex(2).unwrap(), cross_polytope_boundary(3).unwrap()] {
            let a = hilbert_coefficients(&c, c.rank() + 2);
            for (k, &ak) in a.iter().enumerate() {
                assert_eq!(graded_basis(&c, k).len() as i64, ak);
            }
        }
        let point = simplex(0);
        assert_eq!(hilbert_series_numerator(&point), vec![1, 0]);
        assert_eq!(hilbert_coefficients(&point, 3), vec![1, 1, 1, 1]);
    }

    #[test]
    fn schenzel_on_torus_data() {
        let b = BettiVector::new(vec![0, 0, 2, 1]);
        assert_eq!(schenzel_predicted(&[1, 4, 10, -1], &b, 3).unwrap(), vec![1, 4, 10, 1]);
        let sphere = BettiVector::new(vec![0, 0, 0, 1]);
        assert_eq!(schenzel_predicted(&[1, 3, 3, 1], &sphere, 3).unwrap(), vec![1, 3, 3, 1]);
        assert!(schenzel_predicted(&[1, 3], &sphere, 3).is_err());
    }
}
