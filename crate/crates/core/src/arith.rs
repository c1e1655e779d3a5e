//! Small integer helpers.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((p, k))` when `n = p^k` with `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
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

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Partitions of `n` as descending parts.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Invariant factor lists (ascending divisibility chains) of every abelian
/// group of order `n`.
pub fn abelian_invariant_factors(n: u64) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for acc in &out {
            for part in partitions(e) {
                // Largest factor first while merging, reversed at the end.
                let mut merged: Vec<u64> = acc.iter().rev().copied().collect();
                for (i, &k) in part.iter().enumerate() {
                    let pk = p.pow(k);
                    if i < merged.len() {
                        merged[i] *= pk;
                    } else {
                        merged.push(pk);
                    }
                }
                merged.reverse();
                next.push(merged);
            }
        }
        out = next;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers() {
        assert_eq!(gcd(36, 24), 12);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(factorize(72), vec![(2, 3), (3, 2)]);
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(36), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(36), 12);
        assert!(is_prime(31) && !is_prime(1) && !is_prime(33));
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(
            abelian_invariant_factors(36),
            vec![vec![2, 18], vec![3, 12], vec![6, 6], vec![36]]
        );
        assert_eq!(abelian_invariant_factors(32).len(), 7);
        assert_eq!(abelian_invariant_factors(1), vec![Vec::<u64>::new()]);
    }
}
