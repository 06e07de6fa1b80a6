//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! Elements are residues in Q[x]/(Phi_n(x)) on the power basis
//! {1, zeta, ..., zeta^(phi(n)-1)}, kept in canonical form: the stored
//! modulus always equals the conductor of the element (with the
//! n != 2 mod 4 normalization, so Q_2m = Q_m for odd m never appears),
//! and the zero element has modulus 1.  Equality is plain coefficient
//! equality.
//!
//! The Galois action sigma_k : zeta |-> zeta^k (k coprime to n) is a
//! coefficient substitution; stabilizers and conductors fall out of it.

mod parse;
mod tables;

pub use parse::parse;
pub use tables::cyclotomic_polynomial;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::{factor, gcd, lcm, normalize_modulus, units_mod};
use crate::error::Error;
use crate::Rational;

use tables::{int_is_small, reduce_mod_phi, table, CycloTable};

#[derive(Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    modulus: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { modulus: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        Cyclotomic::from_integer(1)
    }

    pub fn from_integer(x: i64) -> Self {
        Cyclotomic::from_rational(Rational::from_integer(BigInt::from(x)))
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic { modulus: 1, coeffs: vec![q] }
    }

    /// The primitive n-th root of unity zeta_n.
    pub fn root_of_unity(n: u64) -> Self {
        Cyclotomic::make(n, &[(1, Rational::one())])
    }

    /// Builds sum of c * zeta_n^k from (exponent, coefficient) terms,
    /// reduces modulo Phi_n and canonicalizes down to the conductor.
    /// Exponents are taken mod n.
    pub fn make(n: u64, terms: &[(i64, Rational)]) -> Self {
        assert!(n >= 1, "modulus must be positive");
        let mut n = n;
        let mut terms: Vec<(u64, Rational)> = terms
            .iter()
            .map(|(e, c)| (e.rem_euclid(n as i64) as u64, c.clone()))
            .collect();
        if n % 4 == 2 {
            // zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
            let m = n / 2;
            let half = (m + 1) / 2;
            terms = terms
                .into_iter()
                .map(|(e, c)| {
                    let c = if e % 2 == 1 { -c } else { c };
                    (e * half % m, c)
                })
                .collect();
            n = m;
        }
        let tab = table(n);
        let mut coeffs = vec![Rational::zero(); tab.degree];
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            add_scaled(&mut coeffs, &tab.pow[e as usize], &c);
        }
        canonicalize(n, coeffs)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Coefficients on the power basis of Q_modulus; length phi(modulus).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The conductor c(z): smallest t with z in Q_t.  Canonical form makes
    /// this the stored modulus.
    pub fn conductor(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.modulus == 1 && self.coeffs[0].is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.modulus == 1 { Some(&self.coeffs[0]) } else { None }
    }

    /// The rational value if the element is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        let q = self.as_rational()?;
        q.is_integer().then(|| q.to_integer())
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let n = normalize_modulus(lcm(self.modulus, other.modulus));
        let amb = Ambient::new(n);
        let mut acc = amb.embed(self);
        let rhs = amb.embed(other);
        add_scaled(&mut acc, &rhs, &Rational::one());
        canonicalize(n, acc)
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let n = normalize_modulus(lcm(self.modulus, other.modulus));
        let amb = Ambient::new(n);
        let a = amb.embed(self);
        let b = amb.embed(other);
        canonicalize(n, amb.mul(&a, &b))
    }

    pub fn scale(&self, c: &Rational) -> Cyclotomic {
        if c.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm against
    /// Phi_n (the quotient is a field).
    pub fn inv(&self) -> Result<Cyclotomic, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let tab = table(self.modulus);
        let mut phi: Vec<Rational> = tab
            .phi
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        trim(&mut phi);
        let mut f = self.coeffs.clone();
        trim(&mut f);
        // extended gcd: maintain u with u*f = r (mod Phi)
        let (mut r0, mut r1) = (phi, f);
        let (mut u0, mut u1) = (vec![], vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let u = poly_sub(&u0, &poly_mul(&q, &u1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
        }
        // r0 is a nonzero constant gcd
        assert_eq!(r0.len(), 1, "Phi_n must be coprime to a nonzero element");
        let c = r0[0].clone();
        let mut inv_coeffs = vec![Rational::zero(); tab.degree];
        let reduced = reduce_mod_phi(&tab, u0);
        for (l, x) in reduced.into_iter().enumerate() {
            inv_coeffs[l] = x / &c;
        }
        Ok(canonicalize(self.modulus, inv_coeffs))
    }

    pub fn pow(&self, e: i64) -> Result<Cyclotomic, Error> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclotomic::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Applies the Galois automorphism sigma_k : zeta_n |-> zeta_n^k.
    /// Errors unless k is coprime to the modulus.
    pub fn galois(&self, k: i64) -> Result<Cyclotomic, Error> {
        let n = self.modulus;
        let kr = k.rem_euclid(n as i64) as u64;
        if n > 1 && gcd(kr, n) != 1 {
            return Err(Error::NonCoprimeGalois { k, n });
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let tab = table(n);
        let out = galois_raw(&tab, &self.coeffs, kr);
        // automorphisms preserve the conductor, so the result is canonical
        debug_assert_eq!(conductor_of_raw(n, &out), n);
        Ok(Cyclotomic { modulus: n, coeffs: out })
    }

    /// Complex conjugation (= sigma_{-1}).
    pub fn conjugate(&self) -> Cyclotomic {
        self.galois(-1).expect("-1 is always coprime to the modulus")
    }

    /// The subgroup of (Z/n)^* fixing this element, n = modulus.
    pub fn stabilizer(&self) -> Vec<u64> {
        let n = self.modulus;
        if n == 1 {
            return vec![0];
        }
        let tab = table(n);
        units_mod(n)
            .into_iter()
            .filter(|&k| galois_raw(&tab, &self.coeffs, k) == self.coeffs)
            .collect()
    }

    /// Floating-point image under zeta_n |-> exp(2 pi i / n), as (re, im).
    /// A sanity cross-check only; the exact arithmetic is authoritative.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.modulus as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = c.numer().to_f64().unwrap_or(f64::NAN)
                / c.denom().to_f64().unwrap_or(f64::NAN);
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / n;
            re += x * theta.cos();
            im += x * theta.sin();
        }
        (re, im)
    }

    /// Serialized form {"n": modulus, "coeffs": [[num, den], ...]}.
    pub fn to_value(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|c| json!([bigint_value(c.numer()), bigint_value(c.denom())]))
            .collect();
        json!({ "n": self.modulus, "coeffs": coeffs })
    }

    pub fn from_value(v: &Value) -> Result<Cyclotomic, Error> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Schema("cyclotomic value must be an object".into()))?;
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Schema("cyclotomic 'n' must be a positive integer".into()))?;
        let coeffs = obj
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema("cyclotomic 'coeffs' must be an array".into()))?;
        let terms: Vec<(i64, Rational)> = coeffs
            .iter()
            .enumerate()
            .map(|(j, pair)| Ok((j as i64, rational_from_value(pair)?)))
            .collect::<Result<_, Error>>()?;
        if n == 0 {
            return Err(Error::Schema("cyclotomic 'n' must be >= 1".into()));
        }
        Ok(Cyclotomic::make(n, &terms))
    }
}

pub(crate) fn bigint_value(x: &BigInt) -> Value {
    if int_is_small(x) {
        Value::from(x.to_i64().unwrap())
    } else {
        Value::from(x.to_string())
    }
}

pub(crate) fn bigint_from_value(v: &Value) -> Result<BigInt, Error> {
    if let Some(x) = v.as_i64() {
        return Ok(BigInt::from(x));
    }
    if let Some(x) = v.as_u64() {
        return Ok(BigInt::from(x));
    }
    if let Some(s) = v.as_str() {
        return s
            .parse::<BigInt>()
            .map_err(|_| Error::Schema(format!("bad integer literal {s:?}")));
    }
    Err(Error::Schema(format!("expected integer, got {v}")))
}

pub(crate) fn rational_from_value(v: &Value) -> Result<Rational, Error> {
    match v {
        Value::Array(pair) if pair.len() == 2 => {
            let num = bigint_from_value(&pair[0])?;
            let den = bigint_from_value(&pair[1])?;
            if den.is_zero() {
                return Err(Error::Schema("zero denominator".into()));
            }
            Ok(Rational::new(num, den))
        }
        _ => Ok(Rational::from_integer(bigint_from_value(v)?)),
    }
}

fn add_scaled(acc: &mut [Rational], v: &[Rational], c: &Rational) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += x * c;
        }
    }
}

fn galois_raw(tab: &CycloTable, coeffs: &[Rational], k: u64) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); tab.degree];
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = (j as u64 * k % tab.n) as usize;
        add_scaled(&mut out, &tab.pow[e], c);
    }
    out
}

/// Maximal proper divisors m of n with m != 2 mod 4; descending through them
/// reaches the conductor (the allowed moduli with F in Q_m are closed under
/// gcd).
fn maximal_allowed_divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = factor(n)
        .into_iter()
        .map(|(p, _)| normalize_modulus(n / p))
        .collect();
    out.sort_unstable();
    out.dedup();
    out.reverse();
    out
}

/// Residues of (Z/n)^* congruent to 1 mod m (the kernel of reduction).
fn reduction_kernel(n: u64, m: u64) -> Vec<u64> {
    units_mod(n)
        .into_iter()
        .filter(|&k| m == 1 || k % m == 1)
        .collect()
}

fn is_fixed_by_kernel(tab: &CycloTable, coeffs: &[Rational], m: u64) -> bool {
    reduction_kernel(tab.n, m)
        .into_iter()
        .filter(|&k| k != 1)
        .all(|k| galois_raw(tab, coeffs, k) == coeffs)
}

/// Conductor of a raw coefficient vector in Q_n, without rewriting it.
/// z lies in Q_m exactly when the kernel of (Z/n)^* -> (Z/m)^* fixes z, so
/// every test runs against the level-n representation.
fn conductor_of_raw(n: u64, coeffs: &[Rational]) -> u64 {
    if coeffs.iter().all(|c| c.is_zero()) {
        return 1;
    }
    let tab = table(n);
    let mut best = n;
    'outer: loop {
        for m in maximal_allowed_divisors(best) {
            if is_fixed_by_kernel(&tab, coeffs, m) {
                best = m;
                continue 'outer;
            }
        }
        return best;
    }
}

/// Brings a coefficient vector in Q_n into canonical form: descends the
/// modulus to the conductor and rewrites the coefficients on the smaller
/// power basis.
fn canonicalize(n: u64, coeffs: Vec<Rational>) -> Cyclotomic {
    debug_assert!(n % 4 != 2);
    if coeffs.iter().all(|c| c.is_zero()) {
        return Cyclotomic::zero();
    }
    let mut n = n;
    let mut coeffs = coeffs;
    'outer: loop {
        let tab = table(n);
        for m in maximal_allowed_divisors(n) {
            if is_fixed_by_kernel(&tab, &coeffs, m) {
                coeffs = rewrite_down(&tab, &coeffs, m);
                n = m;
                continue 'outer;
            }
        }
        return Cyclotomic { modulus: n, coeffs };
    }
}

/// Rewrites z (known to lie in Q_m) from the basis of Q_n to that of Q_m by
/// solving the linear system over the embedded basis zeta_m^j = zeta_n^(jt).
fn rewrite_down(tab: &CycloTable, coeffs: &[Rational], m: u64) -> Vec<Rational> {
    let t = tab.n / m;
    let deg_m = table(m).degree;
    if m == 1 {
        // a rational is the constant coefficient in any power basis
        return vec![coeffs[0].clone()];
    }
    // columns: embedded basis vectors; solve A y = coeffs
    let rows = tab.degree;
    let mut a: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            (0..deg_m)
                .map(|j| tab.pow[(j as u64 * t) as usize][r].clone())
                .collect()
        })
        .collect();
    let mut b: Vec<Rational> = coeffs.to_vec();
    let mut y = vec![Rational::zero(); deg_m];
    let mut pivot_row = 0usize;
    let mut pivots = Vec::with_capacity(deg_m);
    for col in 0..deg_m {
        let Some(sel) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            unreachable!("embedded basis has full column rank");
        };
        a.swap(pivot_row, sel);
        b.swap(pivot_row, sel);
        let inv = a[pivot_row][col].clone();
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let f = &a[r][col] / &inv;
                for c2 in col..deg_m {
                    let t2 = &f * &a[pivot_row][c2];
                    a[r][c2] -= t2;
                }
                let t2 = &f * &b[pivot_row];
                b[r] -= t2;
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    for (r, col) in pivots {
        y[col] = &b[r] / &a[r][col];
    }
    // rows beyond the pivots must have been annihilated (consistency)
    debug_assert!(b.iter().skip(pivot_row).all(|x| x.is_zero()));
    y
}

// ---------------------------------------------------------------------------
// dense polynomial helpers over Q (for the inverse only)

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len()), Rational::zero());
    for (o, y) in out.iter_mut().zip(b) {
        *o -= y;
    }
    trim(&mut out);
    out
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!den.is_empty());
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if num.len() <= dd {
        return (vec![], rem);
    }
    let mut quot = vec![Rational::zero(); num.len() - dd];
    let lead = den.last().unwrap();
    for i in (dd..num.len()).rev() {
        let c = &rem[i] / lead;
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for l in 0..=dd {
            let t = &c * &den[l];
            rem[i - dd + l] -= t;
        }
    }
    trim(&mut rem);
    (quot, rem)
}

// ---------------------------------------------------------------------------
// Ambient: raw (non-canonical) arithmetic at a fixed modulus, for inner
// products and norm sums where canonicalizing every intermediate would be
// wasteful.

pub struct Ambient {
    n: u64,
    tab: Arc<CycloTable>,
}

impl Ambient {
    pub fn new(n: u64) -> Self {
        assert!(n % 4 != 2 && n >= 1);
        Ambient { n, tab: table(n) }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn zero(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.tab.degree]
    }

    /// Embeds an element whose conductor divides the ambient modulus.
    pub fn embed(&self, z: &Cyclotomic) -> Vec<Rational> {
        assert!(
            self.n % z.modulus == 0,
            "conductor {} does not divide ambient modulus {}",
            z.modulus,
            self.n
        );
        let t = self.n / z.modulus;
        let mut out = self.zero();
        for (j, c) in z.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (j as u64 * t) as usize;
            add_scaled(&mut out, &self.tab.pow[e], c);
        }
        out
    }

    pub fn add_scaled(&self, acc: &mut [Rational], v: &[Rational], c: &Rational) {
        add_scaled(acc, v, c);
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        reduce_mod_phi(&self.tab, poly_mul(a, b))
    }

    pub fn conj(&self, a: &[Rational]) -> Vec<Rational> {
        if self.n == 1 {
            return a.to_vec();
        }
        galois_raw(&self.tab, a, self.n - 1)
    }

    /// sigma_k on a raw vector; k must be coprime to the ambient modulus.
    pub fn galois(&self, a: &[Rational], k: u64) -> Vec<Rational> {
        if self.n == 1 {
            return a.to_vec();
        }
        debug_assert_eq!(crate::arith::gcd(k % self.n, self.n), 1);
        galois_raw(&self.tab, a, k % self.n)
    }

    pub fn extract(&self, v: Vec<Rational>) -> Cyclotomic {
        canonicalize(self.n, v)
    }
}

// ---------------------------------------------------------------------------

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

impl fmt::Display for Cyclotomic {
    /// Prints a valid expression in the parser grammar, e.g. `3/2*z(5)^2 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_one = mag.is_one();
            if j == 0 || !is_one {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
                if j > 0 {
                    write!(f, "*")?;
                }
            }
            if j == 1 {
                write!(f, "z({})", self.modulus)?;
            } else if j > 1 {
                write!(f, "z({})^{}", self.modulus, j)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn sqrt2() -> Cyclotomic {
        Cyclotomic::make(8, &[(1, q(1)), (7, q(1))])
    }

    #[test]
    fn make_basic_examples() {
        let z5 = Cyclotomic::make(5, &[(1, q(1))]);
        assert_eq!(z5.modulus(), 5);
        assert_eq!(sqrt2().modulus(), 8);
        let three = Cyclotomic::make(6, &[(0, q(3))]);
        assert_eq!(three.modulus(), 1);
        assert_eq!(three.as_integer(), Some(BigInt::from(3)));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        // (zeta_8 + zeta_8^-1)^2 = 2 by direct expansion
        let s = sqrt2();
        let sq = s.mul(&s);
        assert_eq!(sq, Cyclotomic::from_integer(2));
    }

    #[test]
    fn sum_of_cube_roots_is_minus_one() {
        let z = Cyclotomic::root_of_unity(3);
        let z2 = z.pow(2).unwrap();
        assert_eq!(z.add(&z2), Cyclotomic::from_integer(-1));
    }

    #[test]
    fn conjugate_of_zeta5() {
        let z = Cyclotomic::root_of_unity(5);
        assert_eq!(z.conjugate(), z.pow(4).unwrap());
    }

    #[test]
    fn galois_examples() {
        let z = Cyclotomic::root_of_unity(5);
        assert_eq!(z.galois(3).unwrap(), z.pow(3).unwrap());
        assert_eq!(z.galois(1).unwrap(), z);
        // sigma_3 negates sqrt 2
        assert_eq!(sqrt2().galois(3).unwrap(), sqrt2().neg());
        assert!(matches!(
            z.galois(5),
            Err(Error::NonCoprimeGalois { .. })
        ));
    }

    #[test]
    fn stabilizer_examples() {
        assert_eq!(Cyclotomic::root_of_unity(5).stabilizer(), vec![1]);
        assert_eq!(sqrt2().stabilizer(), vec![1, 7]);
        assert_eq!(Cyclotomic::from_integer(7).stabilizer(), vec![0]);
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(Cyclotomic::root_of_unity(3).conductor(), 3);
        assert_eq!(sqrt2().conductor(), 8);
        // sqrt 5 = 2(zeta_5 + zeta_5^4) + 1 has conductor 5
        let s5 = Cyclotomic::make(5, &[(1, q(2)), (4, q(2)), (0, q(1))]);
        assert_eq!(s5.conductor(), 5);
        assert_eq!(s5.mul(&s5), Cyclotomic::from_integer(5));
    }

    #[test]
    fn canonicalization_descends_composite_moduli() {
        // zeta_12^3 = i has conductor 4
        let z = Cyclotomic::make(12, &[(3, q(1))]);
        assert_eq!(z.modulus(), 4);
        assert_eq!(z, Cyclotomic::root_of_unity(4));
        // zeta_12^4 = zeta_3
        let w = Cyclotomic::make(12, &[(4, q(1))]);
        assert_eq!(w, Cyclotomic::root_of_unity(3));
    }

    #[test]
    fn modulus_two_mod_four_is_normalized() {
        // zeta_6 = -zeta_3^2
        let z6 = Cyclotomic::make(6, &[(1, q(1))]);
        assert_eq!(z6.modulus(), 3);
        let expect = Cyclotomic::root_of_unity(3).pow(2).unwrap().neg();
        assert_eq!(z6, expect);
    }

    #[test]
    fn inverse_of_root_is_conjugate_power() {
        let z = Cyclotomic::root_of_unity(7);
        let inv = z.inv().unwrap();
        assert_eq!(inv, z.pow(6).unwrap());
        assert_eq!(z.mul(&inv), Cyclotomic::one());
        let half = Cyclotomic::from_integer(2).inv().unwrap();
        assert_eq!(half.as_rational(), Some(&Rational::new(1.into(), 2.into())));
    }

    #[test]
    fn json_round_trip() {
        let s = sqrt2();
        let v = s.to_value();
        assert_eq!(Cyclotomic::from_value(&v).unwrap(), s);
        let z = Cyclotomic::make(12, &[(1, Rational::new(3.into(), 2.into())), (5, q(-2))]);
        assert_eq!(Cyclotomic::from_value(&z.to_value()).unwrap(), z);
    }

    #[test]
    fn display_round_trip() {
        for z in [
            Cyclotomic::zero(),
            Cyclotomic::from_integer(-3),
            sqrt2(),
            Cyclotomic::make(12, &[(1, Rational::new(3.into(), 2.into())), (5, q(-2))]),
        ] {
            let printed = z.to_string();
            assert_eq!(parse(&printed).unwrap(), z, "round-trip of {printed}");
        }
    }

    #[test]
    fn float_embedding_agrees() {
        let z = Cyclotomic::make(60, &[(1, q(2)), (13, Rational::new(1.into(), 3.into()))]);
        let w = Cyclotomic::make(60, &[(7, q(-1)), (59, q(5))]);
        let sum = z.add(&w);
        let prod = z.mul(&w);
        let (zr, zi) = z.to_complex();
        let (wr, wi) = w.to_complex();
        let (sr, si) = sum.to_complex();
        let (pr, pi) = prod.to_complex();
        assert!((sr - (zr + wr)).abs() < 1e-9);
        assert!((si - (zi + wi)).abs() < 1e-9);
        assert!((pr - (zr * wr - zi * wi)).abs() < 1e-9);
        assert!((pi - (zr * wi + zi * wr)).abs() < 1e-9);
    }
}
