//! Closed-form comparison-count bounds and the regimes in which they are
//! guaranteed.

/// Smallest `r` with `r * r >= x`.
pub fn ceil_sqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while r * r < x {
        r += 1;
    }
    r
}

// Rounding of irrational sizes. The tolerance absorbs `powf` noise on
// exact powers (e.g. 16^0.75 = 8) so sizes do not depend on libm quirks.
const ROUNDING_SLACK: f64 = 1e-9;

pub(crate) fn floor_tol(x: f64) -> usize {
    (x + ROUNDING_SLACK).floor() as usize
}

pub(crate) fn ceil_tol(x: f64) -> usize {
    (x - ROUNDING_SLACK).ceil() as usize
}

fn pow2(k: u32) -> f64 {
    2f64.powi(k as i32)
}

/// `C(n, 2)` as a float.
pub fn pairs(n: usize) -> f64 {
    let n = n as f64;
    n * (n - 1.0) / 2.0
}

/// `log2(log2(n))`, or negative infinity when `n < 2`.
pub fn log_log(n: usize) -> f64 {
    if n < 2 {
        return f64::NEG_INFINITY;
    }
    (n as f64).log2().log2()
}

/// Whether `2 <= k <= log log n`, the regime of the recursive bounds.
pub fn k_in_range(k: u32, n: usize) -> bool {
    k >= 2 && (k as f64) <= log_log(n)
}

/// Round-robin tournament: exactly `C(n, 2)`.
pub fn round_robin(n: usize) -> f64 {
    pairs(n)
}

/// Error-2 max-finding with subset size `s`: `(n-s)s + (n²-s²)/(s-1)`.
pub fn max_find_2(n: usize, s: usize) -> f64 {
    if n <= 1 {
        return 0.0;
    }
    let (n, s) = (n as f64, s as f64);
    (n - s) * s + (n * n - s * s) / (s - 1.0)
}

/// `2 n^{3/2}`, the error-2 max-finding bound at the default `s`.
pub fn max_find_2_default(n: usize) -> f64 {
    2.0 * (n as f64).powf(1.5)
}

/// `3 n^{3/2}`.
pub fn one_cover(n: usize) -> f64 {
    3.0 * (n as f64).powf(1.5)
}

/// Largest 1-cover size guaranteed for `n >= 81`: `sqrt(n)`.
pub fn one_cover_size(n: usize) -> f64 {
    (n as f64).sqrt()
}

/// Exponent `1 + 1/(3·2^{k-2} - 1)` of the error-k max-finding bound.
pub fn max_find_k_exponent(k: u32) -> f64 {
    1.0 + 1.0 / (3.0 * pow2(k - 2) - 1.0)
}

/// `54 n^{1 + 1/(3·2^{k-2} - 1)}`.
pub fn max_find_k(n: usize, k: u32) -> f64 {
    54.0 * (n as f64).powf(max_find_k_exponent(k))
}

/// Exponent `1 + 1/(2^k - 1)` of the max-finding lower bound.
pub fn max_find_lower_exponent(k: u32) -> f64 {
    1.0 + 1.0 / (pow2(k) - 1.0)
}

/// `4 n^{3/2}`.
pub fn sort_2(n: usize) -> f64 {
    4.0 * (n as f64).powf(1.5)
}

/// `c_n = min(C(n,2), C(215,2))`.
pub fn c_n(n: usize) -> f64 {
    pairs(n).min(pairs(215))
}

/// `9 n^{1 + 1/(2^k - 1)} + c_n`.
pub fn k_pivot(n: usize, k: u32) -> f64 {
    9.0 * (n as f64).powf(1.0 + 1.0 / (pow2(k) - 1.0)) + c_n(n)
}

/// Guaranteed pivot coverage `n / (5·2^{k-1})`.
pub fn k_pivot_coverage(n: usize, k: u32) -> f64 {
    n as f64 / (5.0 * pow2(k - 1))
}

/// `25·2^{k-1} n^{1+2^{1-k}} + 5·2^{2k-3} n^{2^{1-k}} c_n`.
pub fn select_k(n: usize, k: u32) -> f64 {
    let nf = n as f64;
    let e = 2f64.powi(1 - k as i32);
    25.0 * pow2(k - 1) * nf.powf(1.0 + e) + 5.0 * 2f64.powi(2 * k as i32 - 3) * nf.powf(e) * c_n(n)
}

/// `7·4^k n^{1+2^{1-k}} + n c_n`.
pub fn sort_k(n: usize, k: u32) -> f64 {
    let nf = n as f64;
    let e = 2f64.powi(1 - k as i32);
    7.0 * 4f64.powi(k as i32) * nf.powf(1.0 + e) + nf * c_n(n)
}

/// Error-k sorting lower-bound exponent `1 + 1/2^{k-1}`.
pub fn sort_lower_exponent(k: u32) -> f64 {
    1.0 + 1.0 / pow2(k - 1)
}

/// Comparison budget `(s-1) n` of the sampled tournament.
pub fn sampled_tournament(n: usize, s: usize) -> f64 {
    (s as f64 - 1.0) * n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_roots() {
        for x in 0..10_000u64 {
            let r = ceil_sqrt(x);
            assert!(r * r >= x);
            assert!(r == 0 || (r - 1) * (r - 1) < x);
        }
        assert_eq!(ceil_sqrt(100), 10);
        assert_eq!(ceil_sqrt(101), 11);
    }

    #[test]
    fn exact_powers_round_cleanly() {
        assert_eq!(floor_tol(16f64.powf(0.75)), 8);
        assert_eq!(ceil_tol(3.0 * 8f64.powf(1.0 / 3.0)), 6);
    }

    #[test]
    fn reference_values() {
        assert_eq!(max_find_2(100, 10), 2000.0);
        assert_eq!(pairs(64), 2016.0);
        assert_eq!(sort_2(64), 2048.0);
        assert_eq!(c_n(215), 23005.0);
        assert_eq!(c_n(10), 45.0);
        let k3 = max_find_k(10_000, 3);
        assert!((k3 - 54.0 * 10f64.powf(4.8)).abs() < 1e-6 * k3);
        assert!((max_find_k_exponent(2) - 1.5).abs() < 1e-12);
        assert!((max_find_k_exponent(3) - 1.2).abs() < 1e-12);
        let sel = select_k(2000, 3);
        let want = 25.0 * 4.0 * 2000f64.powf(1.25) + 5.0 * 8.0 * 2000f64.powf(0.25) * 23005.0;
        assert!((sel - want).abs() < 1e-6 * want);
        let srt = sort_k(2000, 3);
        let want = 7.0 * 64.0 * 2000f64.powf(1.25) + 2000.0 * 23005.0;
        assert!((srt - want).abs() < 1e-6 * want);
    }

    #[test]
    fn log_log_regime() {
        assert!(!k_in_range(3, 216));
        assert!(k_in_range(3, 256));
        assert!(k_in_range(3, 10_000));
        assert!(!k_in_range(4, 10_000));
        assert!(!k_in_range(2, 8));
    }
}
