//! Abelian number fields via the Galois correspondence inside cyclotomic
//! fields.
//!
//! A field F is stored as the pair (n, H) where n is the conductor of F
//! (normalized to n != 2 mod 4) and H <= (Z/n)^* is the subgroup whose
//! sigma_k fix F pointwise, so F = Q_n^H and [F:Q] = phi(n)/|H|.  Keeping n
//! equal to the conductor makes equality and containment plain subgroup
//! tests after lifting to a common modulus.

use std::collections::HashSet;

use num_traits::One;
use serde_json::{json, Value};

use crate::arith::{
    euler_phi, factor, gcd, is_squarefree, lcm, normalize_modulus, nu_p, subgroup_closure,
    units_mod,
};
use crate::cyclo::Cyclotomic;
use crate::error::Error;
use crate::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianField {
    modulus: u64,
    stabilizer: Vec<u64>,
}

impl AbelianField {
    /// The rational field Q (conductor 1).
    pub fn rationals() -> Self {
        AbelianField { modulus: 1, stabilizer: vec![0] }
    }

    /// The full cyclotomic field Q_n.
    pub fn cyclotomic(n: u64) -> Self {
        let n = normalize_modulus(n);
        if n == 1 {
            return Self::rationals();
        }
        AbelianField { modulus: n, stabilizer: vec![1] }
    }

    /// Fixed field of the subgroup generated by `generators` inside Q_n.
    pub fn from_stabilizer(n: u64, generators: &[u64]) -> Result<Self, Error> {
        assert!(n >= 1);
        for &g in generators {
            if n > 1 && gcd(g % n, n) != 1 {
                return Err(Error::NonCoprimeGenerator { g, n });
            }
        }
        let n0 = normalize_modulus(n);
        let gens: Vec<u64> = if n0 == n {
            generators.to_vec()
        } else {
            // (Z/2m)^* = (Z/m)^* for odd m, by reduction mod m
            generators.iter().map(|&g| g % n0).collect()
        };
        let h = subgroup_closure(n0, &gens);
        Ok(canonical(n0, h))
    }

    /// The smallest field containing all the given values: lift to a common
    /// modulus and intersect the value stabilizers.
    pub fn from_values(values: &[Cyclotomic]) -> Self {
        let n = values
            .iter()
            .fold(1u64, |acc, v| normalize_modulus(lcm(acc, v.conductor())));
        if n == 1 {
            return Self::rationals();
        }
        let stabs: Vec<(u64, HashSet<u64>)> = values
            .iter()
            .filter(|v| v.conductor() > 1)
            .map(|v| (v.conductor(), v.stabilizer().into_iter().collect()))
            .collect();
        let joint: Vec<u64> = units_mod(n)
            .into_iter()
            .filter(|&k| stabs.iter().all(|(c, s)| s.contains(&(k % c))))
            .collect();
        canonical(n, joint)
    }

    /// The quadratic field Q(sqrt d) for squarefree d not in {0, 1}.  The
    /// stabilizer is built from the Gauss-sum expression of sqrt d; the
    /// conductor rule (|d| when d = 1 mod 4, else 4|d|) is asserted, not
    /// assumed.
    ///
    /// ```
    /// use charfield_core::numfield::AbelianField;
    /// assert_eq!(AbelianField::quadratic(6).unwrap().conductor(), 24);
    /// assert_eq!(AbelianField::quadratic(5).unwrap().conductor(), 5);
    /// ```
    pub fn quadratic(d: i64) -> Result<Self, Error> {
        if d == 0 || d == 1 || !is_squarefree(d.unsigned_abs()) {
            return Err(Error::NotSquarefree(d));
        }
        let root = sqrt_of_squarefree(d);
        debug_assert_eq!(
            root.mul(&root),
            Cyclotomic::from_integer(d),
            "gauss sum square must be d"
        );
        let field = AbelianField::from_values(std::slice::from_ref(&root));
        let expected = if d.rem_euclid(4) == 1 {
            d.unsigned_abs()
        } else {
            4 * d.unsigned_abs()
        };
        assert_eq!(
            field.conductor(),
            expected,
            "conductor of Q(sqrt {d}) violates the mod-4 rule"
        );
        Ok(field)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The conductor c(F) (equals the canonical modulus).
    pub fn conductor(&self) -> u64 {
        self.modulus
    }

    pub fn stabilizer(&self) -> &[u64] {
        &self.stabilizer
    }

    /// [F : Q] = phi(n) / |H|.
    pub fn degree(&self) -> u64 {
        euler_phi(self.modulus) / self.stabilizer.len() as u64
    }

    pub fn is_rationals(&self) -> bool {
        self.modulus == 1
    }

    /// F_m := F(e^{2 pi i / m}), the compositum with Q_m.
    pub fn adjoin(&self, m: u64) -> Self {
        let m = normalize_modulus(m.max(1));
        let l = normalize_modulus(lcm(self.modulus, m));
        let h: Vec<u64> = units_mod(l)
            .into_iter()
            .filter(|&k| self.stab_contains(k, l) && (m == 1 || k % m == 1))
            .collect();
        canonical(l, h)
    }

    pub fn compositum(&self, other: &AbelianField) -> Self {
        let l = normalize_modulus(lcm(self.modulus, other.modulus));
        let h: Vec<u64> = units_mod(l)
            .into_iter()
            .filter(|&k| self.stab_contains(k, l) && other.stab_contains(k, l))
            .collect();
        canonical(l, h)
    }

    pub fn intersect(&self, other: &AbelianField) -> Self {
        let l = normalize_modulus(lcm(self.modulus, other.modulus));
        let mut gens: Vec<u64> = units_mod(l)
            .into_iter()
            .filter(|&k| self.stab_contains(k, l))
            .collect();
        gens.extend(
            units_mod(l)
                .into_iter()
                .filter(|&k| other.stab_contains(k, l)),
        );
        canonical(l, subgroup_closure(l, &gens))
    }

    /// Whether `other` is a subfield of `self`.
    pub fn contains(&self, other: &AbelianField) -> bool {
        let l = normalize_modulus(lcm(self.modulus, other.modulus));
        units_mod(l)
            .into_iter()
            .filter(|&k| self.stab_contains(k, l))
            .all(|k| other.stab_contains(k, l))
    }

    /// [self : other]; errors unless other is a subfield of self.
    pub fn degree_over(&self, other: &AbelianField) -> Result<u64, Error> {
        if !self.contains(other) {
            return Err(Error::NotNested);
        }
        let (de, df) = (self.degree(), other.degree());
        debug_assert_eq!(de % df, 0);
        Ok(de / df)
    }

    /// Whether sigma_k (k a residue at modulus `l`, with modulus | l) fixes
    /// this field.
    fn stab_contains(&self, k: u64, l: u64) -> bool {
        debug_assert_eq!(l % self.modulus, 0);
        if self.modulus == 1 {
            return true;
        }
        self.stabilizer.binary_search(&(k % self.modulus)).is_ok()
    }

    /// The Conjecture B data for this field at p: a = nu_p(c(F)) and the
    /// index [F_{p^a} : F_p].  For a = 0 the index is 1 by convention (the
    /// conjecture hypothesizes a >= 1).
    pub fn conjecture_degree_index(&self, p: u64) -> (u32, u64) {
        let a = nu_p(self.conductor(), p);
        if a == 0 {
            return (0, 1);
        }
        let fpa = self.adjoin(p.pow(a));
        let fp = self.adjoin(p);
        let index = fpa.degree_over(&fp).expect("F_p <= F_{p^a}");
        debug_assert_eq!(
            index,
            p_part(fpa.degree_over(self).expect("F <= F_{p^a}"), p),
            "index must be the p-part of [F_{{p^a}} : F]"
        );
        (a, index)
    }

    /// If the field is quadratic, the squarefree d with F = Q(sqrt d).
    pub fn as_quadratic(&self) -> Option<i64> {
        if self.degree() != 2 {
            return None;
        }
        let c = self.conductor() as i64;
        let mut candidates = vec![c, -c];
        if c % 4 == 0 {
            candidates.push(c / 4);
            candidates.push(-c / 4);
        }
        candidates
            .into_iter()
            .filter(|&d| d != 0 && d != 1)
            .find(|&d| AbelianField::quadratic(d).map_or(false, |f| f == *self))
    }

    /// Serialized form {"n": modulus, "stabilizer": [residues]}.
    pub fn to_value(&self) -> Value {
        json!({ "n": self.modulus, "stabilizer": self.stabilizer })
    }

    pub fn from_value(v: &Value) -> Result<Self, Error> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Schema("field must be an object".into()))?;
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Schema("field 'n' must be a positive integer".into()))?;
        let gens: Vec<u64> = obj
            .get("stabilizer")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema("field 'stabilizer' must be an array".into()))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .ok_or_else(|| Error::Schema("stabilizer entries must be integers".into()))
            })
            .collect::<Result<_, _>>()?;
        if n == 1 {
            return Ok(Self::rationals());
        }
        AbelianField::from_stabilizer(n, &gens)
    }
}

impl std::fmt::Display for AbelianField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_rationals() {
            return write!(f, "Q");
        }
        if self.stabilizer == [1] {
            return write!(f, "Q_{}", self.modulus);
        }
        if let Some(d) = self.as_quadratic() {
            return write!(f, "Q(sqrt {d})");
        }
        write!(f, "Q_{}^{:?}", self.modulus, self.stabilizer)
    }
}

/// p-part of a positive integer.
pub fn p_part(m: u64, p: u64) -> u64 {
    p.pow(nu_p(m, p))
}

/// Canonicalizes a (modulus, subgroup) pair: descends the modulus to the
/// field conductor, mapping the stabilizer along the way.
fn canonical(n: u64, h: Vec<u64>) -> AbelianField {
    debug_assert!(n % 4 != 2);
    if n == 1 {
        return AbelianField::rationals();
    }
    let mut n = n;
    let mut h = h;
    'outer: loop {
        if n == 1 {
            return AbelianField::rationals();
        }
        for m in maximal_allowed_divisors(n) {
            let kernel_inside = units_mod(n)
                .into_iter()
                .filter(|&k| m == 1 || k % m == 1)
                .all(|k| h.binary_search(&k).is_ok());
            if kernel_inside {
                let mut image: Vec<u64> = h.iter().map(|&x| x % m).collect();
                image.sort_unstable();
                image.dedup();
                n = m;
                h = image;
                continue 'outer;
            }
        }
        return AbelianField { modulus: n, stabilizer: h };
    }
}

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

/// sqrt d as an exact cyclotomic value, composed from quadratic Gauss sums:
/// for odd primes p, sum_k (k|p) zeta_p^k squares to (-1)^((p-1)/2) p;
/// zeta_8 + zeta_8^7 squares to 2; zeta_4 squares to -1.  Accepts any
/// squarefree d != 0 including +-1.
pub(crate) fn sqrt_of_squarefree(d: i64) -> Cyclotomic {
    let mut value = Cyclotomic::one();
    for (p, _) in factor(d.unsigned_abs()) {
        if p == 2 {
            value = value.mul(&Cyclotomic::make(
                8,
                &[(1, Rational::one()), (7, Rational::one())],
            ));
        } else {
            let terms: Vec<(i64, Rational)> = (1..p)
                .map(|k| {
                    let sign = if legendre(k, p) == 1 {
                        Rational::one()
                    } else {
                        -Rational::one()
                    };
                    (k as i64, sign)
                })
                .collect();
            value = value.mul(&Cyclotomic::make(p, &terms));
        }
    }
    let square = value
        .mul(&value)
        .as_integer()
        .expect("gauss-sum square is a rational integer");
    let ratio = Rational::from_integer(num_bigint::BigInt::from(d))
        / Rational::from_integer(square);
    if ratio == -Rational::one() {
        value = value.mul(&Cyclotomic::root_of_unity(4));
    } else {
        debug_assert!(ratio.is_one());
    }
    value
}

fn legendre(k: u64, p: u64) -> i64 {
    let mut result = 1u64;
    let mut base = k % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if result == 1 { 1 } else { -1 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u64) -> AbelianField {
        AbelianField::cyclotomic(n)
    }

    #[test]
    fn from_stabilizer_examples() {
        let f = AbelianField::from_stabilizer(8, &[7]).unwrap();
        assert_eq!(f.modulus(), 8);
        assert_eq!(f.stabilizer(), &[1, 7]);
        assert_eq!(f, AbelianField::quadratic(2).unwrap());

        // <2> mod 5 is everything, so the fixed field is Q
        let f = AbelianField::from_stabilizer(5, &[2]).unwrap();
        assert_eq!(f, AbelianField::rationals());
        assert_eq!(f.modulus(), 1);

        let f = AbelianField::from_stabilizer(12, &[]).unwrap();
        assert_eq!(f, q(12));
        assert_eq!(f.degree(), 4);

        assert!(matches!(
            AbelianField::from_stabilizer(8, &[6]),
            Err(Error::NonCoprimeGenerator { .. })
        ));
    }

    #[test]
    fn from_values_examples() {
        let z5 = Cyclotomic::root_of_unity(5);
        let golden = z5.add(&z5.pow(4).unwrap());
        let f = AbelianField::from_values(&[golden]);
        assert_eq!(f, AbelianField::quadratic(5).unwrap());

        let f = AbelianField::from_values(&[
            Cyclotomic::one(),
            Cyclotomic::from_rational(Rational::new((-3).into(), 2.into())),
        ]);
        assert_eq!(f, AbelianField::rationals());

        let f = AbelianField::from_values(&[
            Cyclotomic::root_of_unity(3),
            Cyclotomic::root_of_unity(4),
        ]);
        assert_eq!(f, q(12));
    }

    #[test]
    fn conductor_of_sqrt6_is_24() {
        let f = AbelianField::quadratic(6).unwrap();
        assert_eq!(f.conductor(), 24);
        assert_eq!(nu_p(f.conductor(), 2), 3);
    }

    #[test]
    fn quadratic_conductor_rule() {
        assert_eq!(AbelianField::quadratic(5).unwrap().conductor(), 5);
        assert_eq!(AbelianField::quadratic(-1).unwrap().conductor(), 4);
        assert_eq!(AbelianField::quadratic(-2).unwrap().conductor(), 8);
        assert_eq!(AbelianField::quadratic(-7).unwrap().conductor(), 7);
        assert!(AbelianField::quadratic(12).is_err());
        assert!(AbelianField::quadratic(1).is_err());
    }

    #[test]
    fn adjoin_examples() {
        let sqrt6 = AbelianField::quadratic(6).unwrap();
        let f8 = sqrt6.adjoin(8);
        assert_eq!(f8.degree(), 8);
        assert_eq!(f8.degree_over(&sqrt6).unwrap(), 4);

        assert_eq!(AbelianField::rationals().adjoin(20), q(20));
        assert_eq!(AbelianField::quadratic(5).unwrap().adjoin(5), q(5));
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(q(8).intersect(&q(12)), q(4));
        assert_eq!(q(9).degree_over(&q(3)).unwrap(), 3);
        let sqrt2 = AbelianField::quadratic(2).unwrap();
        let i = AbelianField::quadratic(-1).unwrap();
        assert_eq!(sqrt2.compositum(&i), q(8));
        assert!(q(8).contains(&sqrt2));
        assert!(!sqrt2.contains(&q(8)));
        assert!(matches!(sqrt2.degree_over(&q(8)), Err(Error::NotNested)));
    }

    #[test]
    fn conjecture_degree_index_examples() {
        let sqrt6 = AbelianField::quadratic(6).unwrap();
        assert_eq!(sqrt6.conjecture_degree_index(2), (3, 4));
        assert_eq!(q(5).conjecture_degree_index(5), (1, 1));
        let f = AbelianField::quadratic(-2).unwrap();
        assert_eq!(f.conjecture_degree_index(2), (3, 2));
    }

    #[test]
    fn as_quadratic_round_trips() {
        for d in [-10i64, -7, -2, -1, 2, 3, 5, 6, 15, -15, 21] {
            let f = AbelianField::quadratic(d).unwrap();
            assert_eq!(f.as_quadratic(), Some(d), "d = {d}");
        }
        assert_eq!(q(8).as_quadratic(), None);
        assert_eq!(AbelianField::rationals().as_quadratic(), None);
    }

    #[test]
    fn serialization_round_trip() {
        for f in [
            AbelianField::rationals(),
            q(12),
            AbelianField::quadratic(6).unwrap(),
            AbelianField::from_stabilizer(40, &[9, 31]).unwrap(),
        ] {
            assert_eq!(AbelianField::from_value(&f.to_value()).unwrap(), f);
        }
    }

    #[test]
    fn galois_group_structure_of_local_towers() {
        // Gal(Q_{p^a} / Q_p) is the kernel of (Z/p^a)^* -> (Z/p)^*:
        // cyclic of order p^{a-1} for odd p; for p = 2 the kernel is the
        // whole group, of type C_{2^{a-2}} x C_2 when a >= 3
        use crate::arith::mult_order;
        for p in [3u64, 5] {
            for a in 1..=5u32 {
                let n = p.pow(a);
                let kernel: Vec<u64> = units_mod(n)
                    .into_iter()
                    .filter(|&k| k % p == 1)
                    .collect();
                assert_eq!(kernel.len() as u64, p.pow(a - 1));
                let exponent = kernel
                    .iter()
                    .map(|&k| mult_order(k, n))
                    .fold(1, crate::arith::lcm);
                assert_eq!(exponent, p.pow(a - 1), "cyclic for odd p");
            }
        }
        for a in 3..=5u32 {
            let n = 2u64.pow(a);
            let group = units_mod(n);
            assert_eq!(group.len() as u64, 2u64.pow(a - 1));
            let exponent = group
                .iter()
                .map(|&k| mult_order(k, n))
                .fold(1, crate::arith::lcm);
            assert_eq!(exponent, 2u64.pow(a - 2), "C_{{2^{{a-2}}}} x C_2");
        }
    }
}
