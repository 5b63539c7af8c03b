//! Small number-theory helpers shared across the crate.

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as (prime, exponent) pairs in ascending prime order.
pub(crate) fn factorize(mut n: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut d = 2usize;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0u32;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d as u32, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n as u32, 1));
    }
    out
}

pub(crate) fn is_prime_power(n: u32) -> bool {
    n >= 2 && factorize(n as usize).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), []);
        assert_eq!(factorize(12), [(2, 2), (3, 1)]);
        assert_eq!(factorize(97), [(97, 1)]);
        assert_eq!(factorize(64), [(2, 6)]);
    }

    #[test]
    fn prime_powers() {
        assert!(is_prime_power(8));
        assert!(is_prime_power(27));
        assert!(is_prime_power(13));
        assert!(!is_prime_power(1));
        assert!(!is_prime_power(6));
        assert!(!is_prime_power(12));
    }
}
