//! Small-integer number theory: factorization, square-freeness, Legendre,
//! Jacobi and Kronecker symbols.

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// ascending order. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors in ascending order.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> i8 {
    assert!(n % 2 == 1, "jacobi symbol needs an odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        (a, n) = (n, a);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> i8 {
    jacobi(a, p)
}

/// Kronecker symbol `(a/n)` for arbitrary integers.
pub fn kronecker(a: i64, n: i64) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut t = 1i8;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            t = -t;
        }
    }
    let mut n = n as u64;
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 {
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        n >>= twos;
    }
    t * jacobi(a, n)
}

/// The quadratic character `k ↦ (−D/k)` of the imaginary quadratic field of
/// discriminant `−D`, for `D ≡ 3 mod 4`.
pub fn kronecker_neg(d: u64, k: i64) -> i8 {
    kronecker(-(d as i64), k)
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Extended Euclid on signed 128-bit integers: `(g, x, y)` with
/// `a·x + b·y = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Euler's criterion, computed by exhaustive squaring.
    fn qr_oracle(a: i64, p: u64) -> i8 {
        let a = a.rem_euclid(p as i64) as u64;
        if a == 0 {
            return 0;
        }
        if (1..p).any(|x| x * x % p == a) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(95), vec![(5, 1), (19, 1)]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert!(is_squarefree(119));
        assert!(!is_squarefree(23 * 23));
        assert_eq!(totient(23), 22);
        assert_eq!(totient(119), 96);
    }

    #[test]
    fn legendre_matches_exhaustive_squares() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 47] {
            for a in -60..60 {
                assert_eq!(legendre(a, p), qr_oracle(a, p), "({a}/{p})");
            }
        }
    }

    #[test]
    fn kronecker_of_negative_discriminant() {
        assert_eq!(kronecker_neg(23, 1), 1);
        // −23 ≡ 1 mod 8, and 2 ≡ 5² is a square mod 23.
        assert_eq!(kronecker_neg(23, 2), 1);
        assert_eq!(qr_oracle(2, 23), 1);
        assert_eq!(kronecker_neg(23, 23 * 5), 0);
        assert_eq!(kronecker_neg(23, -1), -1);
        // For a fundamental discriminant −D ≡ 1 mod 4 and k > 0 coprime to D,
        // (−D/k) = ∏_{ℓ | D} (k/ℓ).
        for d in [23u64, 47, 95, 119, 143] {
            for k in 1..200i64 {
                let prod: i8 = prime_divisors(d).iter().map(|&l| qr_oracle(k, l)).product();
                assert_eq!(kronecker_neg(d, k), prod, "D={d} k={k}");
            }
        }
    }

    #[test]
    fn ext_gcd_bezout() {
        for (a, b) in [(240i128, 46i128), (-7, 3), (0, 5), (12, 0), (17, -51)] {
            let (g, x, y) = ext_gcd(a, b);
            assert_eq!(a * x + b * y, g);
            assert!(g >= 0);
        }
    }

    #[test]
    fn integer_square_root() {
        for n in 0..2000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }
}
