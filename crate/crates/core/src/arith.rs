//! Small integer utilities: gcd/lcm, Euler phi, factorization, unit groups
//! mod n, p-adic valuations, squarefree parts.
//!
//! Everything here works on `u64`/`i64`; the sizes in this crate (moduli,
//! conductors, class counts) are small.  Arbitrary-precision arithmetic lives
//! in `num-bigint` and is used where group orders or character degrees can
//! grow (see `glq`).

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 { 0 } else { a / gcd(a, b) * b }
}

/// p-adic valuation: the exponent of `p` in `m`.  `nu_p(0, p)` is undefined
/// and panics.
pub fn nu_p(mut m: u64, p: u64) -> u32 {
    assert!(m != 0, "nu_p(0) is undefined");
    assert!(p >= 2);
    let mut a = 0;
    while m % p == 0 {
        m /= p;
        a += 1;
    }
    a
}

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// increasing prime order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
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

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n) == vec![(n, 1)]
}

/// Primes up to and including `n`.
pub fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product::<u64>()
        .max(1)
}

/// All divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// The unit group (Z/n)^* as a sorted list of residues.  For n = 1 this is
/// the trivial group `{0}` (the residue of 1 mod 1).
pub fn units_mod(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&k| gcd(k, n) == 1).collect()
}

/// Closes a set of residues coprime to n into a subgroup of (Z/n)^*.
/// Returns the sorted subgroup; always contains 1 (or 0 when n = 1).
pub fn subgroup_closure(n: u64, gens: &[u64]) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    let mut set = std::collections::BTreeSet::new();
    set.insert(1u64);
    let mut stack: Vec<u64> = gens.iter().map(|&g| g % n).collect();
    while let Some(g) = stack.pop() {
        if set.insert(g) {
            let snapshot: Vec<u64> = set.iter().copied().collect();
            for h in snapshot {
                stack.push(g * h % n);
            }
        }
    }
    set.into_iter().collect()
}

/// Order of the multiplicative group element `g` mod n (g coprime to n).
pub fn mult_order(g: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let g = g % n;
    assert_eq!(gcd(g, n), 1, "element not coprime to modulus");
    let mut x = g;
    let mut k = 1;
    while x != 1 {
        x = x * g % n;
        k += 1;
    }
    k
}

/// Squarefree part of a nonzero integer, keeping the sign: the product of the
/// primes dividing it with odd exponent, times sign(n).
pub fn squarefree_part(n: i64) -> i64 {
    assert!(n != 0);
    let sign = n.signum();
    let mut out = 1i64;
    for (p, e) in factor(n.unsigned_abs()) {
        if e % 2 == 1 {
            out *= p as i64;
        }
    }
    sign * out
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && factor(n).iter().all(|&(_, e)| e == 1)
}

/// Normalizes a cyclotomic modulus: Q_{2m} = Q_m for odd m, so moduli
/// congruent to 2 mod 4 are halved; 1 and 2 both map to 1.
pub fn normalize_modulus(n: u64) -> u64 {
    assert!(n >= 1);
    if n % 4 == 2 { n / 2 } else { n }
}
