//! Cyclotomic polynomials and power-reduction tables, memoized per modulus.
//!
//! `Phi_n` is computed by exact division of x^n - 1 by the lower `Phi_d`
//! (divisor recursion).  For each modulus we also precompute the rows
//! x^j mod Phi_n for 0 <= j < n, which back the Galois substitution
//! zeta |-> zeta^k and the embedding of Q_m into Q_n.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, euler_phi};
use crate::Rational;

pub(crate) struct CycloTable {
    pub n: u64,
    pub degree: usize,
    /// Coefficients of Phi_n, constant term first, length `degree + 1`, monic.
    pub phi: Vec<BigInt>,
    /// Row j holds the coefficients of x^j mod Phi_n (length `degree`),
    /// for 0 <= j < n.
    pub pow: Vec<Vec<Rational>>,
}

static TABLES: OnceLock<RwLock<HashMap<u64, Arc<CycloTable>>>> = OnceLock::new();

fn cache() -> &'static RwLock<HashMap<u64, Arc<CycloTable>>> {
    TABLES.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Largest supported modulus: the dense power table takes n * phi(n)
/// entries, and nothing at desk scale needs moduli beyond the exponent of
/// S_8 (840).
pub const MAX_MODULUS: u64 = 2048;

pub(crate) fn table(n: u64) -> Arc<CycloTable> {
    assert!(
        (1..=MAX_MODULUS).contains(&n),
        "cyclotomic modulus {n} outside the supported range 1..={MAX_MODULUS}"
    );
    if let Some(t) = cache().read().unwrap().get(&n) {
        return Arc::clone(t);
    }
    let t = Arc::new(build_table(n));
    cache().write().unwrap().entry(n).or_insert(t.clone());
    t
}

/// The n-th cyclotomic polynomial as integer coefficients, constant term
/// first; degree phi(n).
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    table(n).phi.clone()
}

fn build_table(n: u64) -> CycloTable {
    let phi = compute_phi(n);
    let degree = phi.len() - 1;
    debug_assert_eq!(degree as u64, euler_phi(n));

    // x^j mod Phi_n: unit vectors below the degree, then the recurrence
    // x^j = x * x^{j-1} reduced by the monic Phi_n.
    let mut pow: Vec<Vec<Rational>> = Vec::with_capacity(n as usize);
    for j in 0..degree.min(n as usize) {
        let mut row = vec![Rational::zero(); degree];
        row[j] = Rational::one();
        pow.push(row);
    }
    for _ in degree..n as usize {
        let prev = pow.last().unwrap();
        let mut row = vec![Rational::zero(); degree];
        // shift up by one
        for l in 1..degree {
            row[l] = prev[l - 1].clone();
        }
        let lead = prev[degree - 1].clone();
        if !lead.is_zero() {
            for l in 0..degree {
                row[l] -= &lead * Rational::from_integer(phi[l].clone());
            }
        }
        pow.push(row);
    }
    CycloTable { n, degree, phi, pow }
}

fn compute_phi(n: u64) -> Vec<BigInt> {
    if n == 1 {
        return vec![BigInt::from(-1), BigInt::one()];
    }
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = table(d);
        num = exact_div_monic(&num, &phi_d.phi);
    }
    num
}

/// Exact division of integer polynomials where the divisor is monic.
/// Panics if the division is not exact (indicates a bug).
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(dn >= dd);
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (dd..=dn).rev() {
        let c = std::mem::replace(&mut rem[i], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for l in 0..dd {
            let t = &c * &den[l];
            rem[i - dd + l] -= t;
        }
    }
    assert!(
        rem.iter().all(|c| c.is_zero()),
        "non-exact cyclotomic division"
    );
    quot
}

/// Reduces an arbitrary-length coefficient vector modulo Phi_n in place,
/// returning the low `degree` coefficients.  Used after polynomial products.
pub(crate) fn reduce_mod_phi(tab: &CycloTable, mut v: Vec<Rational>) -> Vec<Rational> {
    let deg = tab.degree;
    let mut i = v.len();
    while i > deg {
        i -= 1;
        let c = std::mem::replace(&mut v[i], Rational::zero());
        if c.is_zero() {
            continue;
        }
        for l in 0..deg {
            if !tab.phi[l].is_zero() {
                let t = &c * Rational::from_integer(tab.phi[l].clone());
                v[i - deg + l] -= t;
            }
        }
    }
    v.truncate(deg);
    v.resize(deg, Rational::zero());
    v
}

pub(crate) fn int_is_small(x: &BigInt) -> bool {
    x.abs() <= BigInt::from(i64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn phi_1_and_4() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
    }

    #[test]
    fn phi_12_by_divisor_recursion() {
        // independent oracle: multiply Phi_d over all d | 12 and compare
        // against x^12 - 1
        let phi12 = cyclotomic_polynomial(12);
        assert_eq!(phi12, ints(&[1, 0, -1, 0, 1]));
        let mut prod = vec![BigInt::one()];
        for d in divisors(12) {
            let f = cyclotomic_polynomial(d);
            let mut next = vec![BigInt::zero(); prod.len() + f.len() - 1];
            for (i, a) in prod.iter().enumerate() {
                for (j, b) in f.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            prod = next;
        }
        let mut expect = vec![BigInt::zero(); 13];
        expect[0] = BigInt::from(-1);
        expect[12] = BigInt::one();
        assert_eq!(prod, expect);
    }

    #[test]
    fn phi_degrees_match_euler_phi() {
        for n in 1..=40 {
            assert_eq!(cyclotomic_polynomial(n).len() as u64 - 1, euler_phi(n));
        }
    }

    #[test]
    fn pow_rows_satisfy_recurrence() {
        let tab = table(8);
        // x^4 = -1 mod Phi_8
        assert_eq!(tab.pow[4][0], Rational::from_integer(BigInt::from(-1)));
        assert!(tab.pow[4][1..].iter().all(|c| c.is_zero()));
        // x^7 = -x^3
        assert_eq!(tab.pow[7][3], Rational::from_integer(BigInt::from(-1)));
    }
}
