//! Property tests for the algebraic invariants: Galois action laws,
//! canonical-form guarantees, the Galois correspondence, and serialization
//! round-trips on randomized inputs.

use num_bigint::BigInt;
use proptest::prelude::*;

use charfield_core::arith::{
    euler_phi, gcd, lcm, mult_order, normalize_modulus, subgroup_closure, units_mod,
};
use charfield_core::cyclo::{parse, Cyclotomic};
use charfield_core::numfield::AbelianField;
use charfield_core::Rational;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

/// A random cyclotomic built from a few terms at a modulus <= 60.
fn cyclotomic(max_modulus: u64) -> impl Strategy<Value = Cyclotomic> {
    (2..=max_modulus, proptest::collection::vec((0i64..120, rational()), 1..5))
        .prop_map(|(n, terms)| Cyclotomic::make(n, &terms))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn galois_composition_law(z in cyclotomic(40), seed in any::<u64>()) {
        let n = z.modulus();
        let units = units_mod(n);
        let k = units[(seed % units.len() as u64) as usize];
        let l = units[((seed / 7) % units.len() as u64) as usize];
        if n > 1 {
            let lhs = z.galois(k as i64).unwrap().galois(l as i64).unwrap();
            let rhs = z.galois((k * l % n) as i64).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn galois_is_a_field_homomorphism(z in cyclotomic(30), w in cyclotomic(30), seed in any::<u64>()) {
        let n = normalize_modulus(lcm(z.modulus(), w.modulus()));
        let units = units_mod(n);
        let k = units[(seed % units.len() as u64) as usize] as i64;
        let zs = Cyclotomic::make(n, &[(0, Rational::new(0.into(), 1.into()))]).add(&z);
        // lift both to the joint modulus by adding zero, then apply sigma_k
        let ws = Cyclotomic::make(n, &[(0, Rational::new(0.into(), 1.into()))]).add(&w);
        let sum = zs.add(&ws);
        let prod = zs.mul(&ws);
        // sigma_k is applied at each element's own conductor, which divides n
        let gz = zs.galois(k).unwrap();
        let gw = ws.galois(k).unwrap();
        prop_assert_eq!(sum.galois(k).unwrap(), gz.add(&gw));
        prop_assert_eq!(prod.galois(k).unwrap(), gz.mul(&gw));
    }

    #[test]
    fn conductor_is_canonical_and_reconstructible(z in cyclotomic(48)) {
        let c = z.conductor();
        prop_assert!(c % 4 != 2, "conductor is never 2 mod 4");
        prop_assert_eq!(c, z.modulus());
        // rebuild z inside Q_c from its own coefficients
        let terms: Vec<(i64, Rational)> = z
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, q)| (j as i64, q.clone()))
            .collect();
        prop_assert_eq!(Cyclotomic::make(c, &terms), z);
    }

    #[test]
    fn display_parse_round_trip(z in cyclotomic(36)) {
        let text = z.to_string();
        prop_assert_eq!(parse(&text).unwrap(), z, "printed as {}", text);
    }

    #[test]
    fn json_round_trip(z in cyclotomic(36)) {
        prop_assert_eq!(Cyclotomic::from_value(&z.to_value()).unwrap(), z);
    }

    #[test]
    fn arithmetic_matches_float_embedding((z, w) in modest_pair()) {
        let (zr, zi) = z.to_complex();
        let (wr, wi) = w.to_complex();
        let (sr, si) = z.add(&w).to_complex();
        prop_assert!((sr - (zr + wr)).abs() < 1e-9);
        prop_assert!((si - (zi + wi)).abs() < 1e-9);
        let (pr, pi) = z.mul(&w).to_complex();
        prop_assert!((pr - (zr * wr - zi * wi)).abs() < 1e-9);
        prop_assert!((pi - (zr * wi + zi * wr)).abs() < 1e-9);
    }

    #[test]
    fn stabilizer_is_a_subgroup_fixing_z(z in cyclotomic(40)) {
        let n = z.modulus();
        let stab = z.stabilizer();
        let identity = if n == 1 { 0 } else { 1 };
        prop_assert!(stab.contains(&identity));
        for &a in &stab {
            for &b in &stab {
                let c = if n == 1 { 0 } else { a * b % n };
                prop_assert!(stab.binary_search(&c).is_ok(), "closed under product");
            }
            if n > 1 {
                prop_assert_eq!(&z.galois(a as i64).unwrap(), &z);
            }
        }
    }

    #[test]
    fn field_from_subgroup_reads_back(n in 2u64..=40, seed in any::<u64>()) {
        let n = normalize_modulus(n);
        prop_assume!(n > 1);
        let units = units_mod(n);
        let g1 = units[(seed % units.len() as u64) as usize];
        let g2 = units[((seed / 11) % units.len() as u64) as usize];
        let f = AbelianField::from_stabilizer(n, &[g1, g2]).unwrap();
        // canonical: re-creating from the stored data is the identity
        let again = AbelianField::from_stabilizer(f.modulus(), f.stabilizer()).unwrap();
        prop_assert_eq!(&again, &f);
        prop_assert_eq!(f.degree() * f.stabilizer().len() as u64, euler_phi(f.modulus()));
    }

    #[test]
    fn galois_correspondence_is_antitone(n in 2u64..=36, seed in any::<u64>()) {
        let n = normalize_modulus(n);
        prop_assume!(n > 1);
        let units = units_mod(n);
        let g1 = units[(seed % units.len() as u64) as usize];
        let g2 = units[((seed / 13) % units.len() as u64) as usize];
        // H = <g1> inside H' = <g1, g2>: fixed fields reverse the inclusion
        let small = AbelianField::from_stabilizer(n, &[g1]).unwrap();
        let large = AbelianField::from_stabilizer(n, &[g1, g2]).unwrap();
        prop_assert!(small.contains(&large));
        let index = small.degree_over(&large).unwrap();
        prop_assert_eq!(index * large.degree(), small.degree());
    }

    #[test]
    fn compositum_conductor_divides_lcm(d1 in 2u64..=30, d2 in 2u64..=30, s in any::<u64>()) {
        let e = AbelianField::from_stabilizer(normalize_modulus(d1), &[pick_unit(normalize_modulus(d1), s)]).unwrap();
        let f = AbelianField::from_stabilizer(normalize_modulus(d2), &[pick_unit(normalize_modulus(d2), s / 5)]).unwrap();
        let comp = e.compositum(&f);
        let l = lcm(e.conductor(), f.conductor());
        prop_assert_eq!(l % comp.conductor(), 0, "c(EF) divides lcm(c(E), c(F))");
        // and the compositum contains both
        prop_assert!(comp.contains(&e));
        prop_assert!(comp.contains(&f));
        // intersection is contained in both
        let meet = e.intersect(&f);
        prop_assert!(e.contains(&meet));
        prop_assert!(f.contains(&meet));
    }

    #[test]
    fn galois_factorization_generates_the_whole_group(n in 2u64..=40, s in any::<u64>()) {
        use charfield_core::wreath::cyclic_factorization;
        let n = normalize_modulus(n);
        prop_assume!(n > 1);
        let e = AbelianField::from_stabilizer(n, &[pick_unit(n, s)]).unwrap();
        let f = AbelianField::from_stabilizer(n, &[pick_unit(n, s), pick_unit(n, s / 17)]).unwrap();
        let fact = cyclic_factorization(&e, &f).unwrap();
        prop_assert_eq!(fact.n, e.degree_over(&f).unwrap());
        prop_assert_eq!(fact.orders.iter().product::<u64>(), fact.n);
        prop_assert!(fact.orders.windows(2).all(|w| w[0] % w[1] == 0));
        // the generators together with Gal(Q_N / E) span Gal(Q_N / F)
        let mut gens: Vec<u64> = e.stabilizer().to_vec();
        gens.extend(&fact.gens);
        let span = subgroup_closure(fact.modulus, &gens);
        prop_assert_eq!(
            span.len() as u64,
            fact.n * e.stabilizer().len() as u64,
            "generated subgroup order"
        );
    }

    #[test]
    fn conjecture_index_is_p_part(n in 2u64..=40, s in any::<u64>(), p_idx in 0usize..3) {
        let p = [2u64, 3, 5][p_idx];
        let n = normalize_modulus(n);
        prop_assume!(n > 1);
        let f = AbelianField::from_stabilizer(n, &[pick_unit(n, s)]).unwrap();
        let (a, index) = f.conjecture_degree_index(p);
        // always a power of p
        let mut x = index;
        while x % p == 0 {
            x /= p;
        }
        prop_assert_eq!(x, 1, "index {} is a power of {}", index, p);
        if a >= 1 {
            let fpa = f.adjoin(p.pow(a));
            let full = fpa.degree_over(&f).unwrap();
            prop_assert_eq!(index, charfield_core::numfield::p_part(full, p));
        }
    }
}

fn pick_unit(n: u64, seed: u64) -> u64 {
    let units = units_mod(n);
    units[(seed % units.len() as u64) as usize]
}

/// Two elements of modulus <= 60 whose joint modulus stays small enough for
/// the dense arithmetic tables.
fn modest_pair() -> impl Strategy<Value = (Cyclotomic, Cyclotomic)> {
    ((2u64..=60), (2u64..=60))
        .prop_filter("joint modulus stays small", |&(a, b)| lcm(a, b) <= 240)
        .prop_flat_map(|(a, b)| {
            (
                proptest::collection::vec((0i64..120, rational()), 1..5),
                proptest::collection::vec((0i64..120, rational()), 1..5),
            )
                .prop_map(move |(t1, t2)| (Cyclotomic::make(a, &t1), Cyclotomic::make(b, &t2)))
        })
}

#[test]
fn subgroups_of_two_power_unit_groups_have_the_expected_shape() {
    // every subgroup of C_{2^m} x C_2 is cyclic or cyclic times C_2:
    // |B| / exponent(B) <= 2, enumerated over all subgroups of (Z/2^a)^*
    for a in 1..=6u32 {
        let n = 2u64.pow(a);
        let units = units_mod(n);
        let mut seen = std::collections::BTreeSet::new();
        for &x in &units {
            for &y in &units {
                let sub = subgroup_closure(n, &[x, y]);
                if !seen.insert(sub.clone()) {
                    continue;
                }
                let order = sub.len() as u64;
                let exponent = sub
                    .iter()
                    .map(|&g| if n == 1 { 1 } else { mult_order(g, n) })
                    .fold(1, lcm);
                assert!(
                    order % exponent == 0 && order / exponent <= 2,
                    "subgroup {sub:?} of (Z/{n})^* is not C_2^m or C_2^m x C_2"
                );
            }
        }
    }
}

#[test]
fn make_normalizes_two_mod_four_moduli() {
    for m in [2u64, 6, 10, 14, 18, 22] {
        let z = Cyclotomic::root_of_unity(m);
        assert!(z.modulus() % 4 != 2);
        assert_eq!(z.pow(m as i64).unwrap(), Cyclotomic::one());
        // order is exactly m
        for d in 1..m {
            if m % d == 0 {
                assert_ne!(z.pow(d as i64).unwrap(), Cyclotomic::one(), "order divides {d}?");
            }
        }
    }
}

#[test]
fn unit_group_orders_multiply_in_subgroup_lattice() {
    // spot check that closure and gcd arithmetic agree with group orders
    for n in [8u64, 12, 15, 16, 21, 24, 40] {
        let units = units_mod(n);
        for &g in &units {
            let sub = subgroup_closure(n, &[g]);
            assert_eq!(sub.len() as u64, mult_order(g, n));
            assert_eq!(euler_phi(n) % sub.len() as u64, 0, "Lagrange");
        }
        for &g in &units {
            assert_eq!(gcd(g, n), 1);
        }
    }
}
