//! Small integer utilities shared across modules.

/// Divisors of `n` in increasing order. `n >= 1`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Möbius function μ(n) for `n >= 1`.
pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut factors = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            factors += 1;
        }
        p += 1;
    }
    if n > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Writes `q = s² · q'` with `q'` square-free; returns `(s, q')`.
pub fn squarefree_part(q: u64) -> (u64, u64) {
    let mut s = 1;
    let mut qp = q;
    let mut p = 2;
    while p * p <= qp {
        while qp % (p * p) == 0 {
            qp /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, qp)
}

/// True iff `q` is a power of two (q >= 1).
pub fn is_power_of_two(q: u64) -> bool {
    q >= 1 && q & (q - 1) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(8), vec![1, 2, 4, 8]);
    }

    #[test]
    fn mobius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &mu) in expected.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1), mu, "mu({})", i + 1);
        }
    }

    #[test]
    fn squarefree_decomposition() {
        assert_eq!(squarefree_part(2), (1, 2));
        assert_eq!(squarefree_part(4), (2, 1));
        assert_eq!(squarefree_part(8), (2, 2));
        assert_eq!(squarefree_part(16), (4, 1));
        assert_eq!(squarefree_part(12), (2, 3));
    }
}
