#![allow(dead_code)]

/// Odometer enumeration of all `n^N` ball sequences, independent of the library backends.
/// Returns the pmf of the number of distinct boxes hit, indexed `0..=n`.
pub fn enumerate_pmf(p: &[f64], balls: usize) -> Vec<f64> {
    let n = p.len();
    let mut pmf = vec![0.0; n + 1];
    let mut digits = vec![0usize; balls];
    loop {
        let mut seen = vec![false; n];
        let mut weight = 1.0;
        for &d in &digits {
            seen[d] = true;
            weight *= p[d];
        }
        pmf[seen.iter().filter(|&&s| s).count()] += weight;
        // Advance the odometer.
        let mut pos = 0;
        loop {
            if pos == balls {
                return pmf;
            }
            digits[pos] += 1;
            if digits[pos] < n {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

pub fn mean(pmf: &[f64]) -> f64 {
    pmf.iter().enumerate().map(|(k, x)| k as f64 * x).sum()
}

pub fn assert_close(actual: &[f64], expected: &[f64], tol: f64) {
    assert_eq!(actual.len(), expected.len(), "{actual:?} vs {expected:?}");
    for (k, (a, e)) in actual.iter().zip(expected).enumerate() {
        assert!((a - e).abs() <= tol, "index {k}: {a} vs {e} (tol {tol})");
    }
}
