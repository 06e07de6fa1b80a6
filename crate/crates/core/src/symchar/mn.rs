//! Murnaghan–Nakayama character values and the S_n / A_n table generators.
//!
//! Values are computed with the border-strip recursion on beta numbers
//! (first-column hook lengths): removing a rim hook of length t from the
//! partition with beta set B corresponds to replacing some b in B by b - t
//! not already in B, with sign (-1)^(number of entries strictly between).
//!
//! The A_n tables follow the classical splitting: classes of cycle type with
//! all parts odd and distinct split in two; a self-conjugate lambda splits
//! into chi^+/- which agree with Psi/2 away from the diagonal-hook type
//! h(lambda) and take the values (eps +- sqrt(eps h_11 ... h_kk))/2 there.
//! Which of the two classes receives "+" is a convention; assembled tables
//! must pass full orthogonality validation, which is the oracle for the
//! whole value convention.

use num_bigint::BigInt;

use crate::arith::lcm;
use crate::chartab::{CharacterTable, ClassInfo, FusionMap};
use crate::cyclo::Cyclotomic;
use crate::error::Error;
use crate::numfield::sqrt_of_squarefree;
use crate::Rational;

use super::{diagonal_hooks, factorial, partitions, Partition};

/// Value of the S_n-irreducible labeled by `lambda` at the class of cycle
/// type `cycle_type`.
pub fn mn_value(lambda: &Partition, cycle_type: &Partition) -> i64 {
    assert_eq!(
        lambda.n(),
        cycle_type.n(),
        "partition sizes must match: {:?} vs {:?}",
        lambda.parts(),
        cycle_type.parts()
    );
    let len = lambda.len();
    let mut beta: Vec<i64> = (0..len)
        .map(|i| lambda.part(i) as i64 + (len - 1 - i) as i64)
        .collect();
    beta.sort_unstable();
    mn_rec(&beta, cycle_type.parts())
}

fn mn_rec(beta: &[i64], mu: &[u32]) -> i64 {
    let Some((&t, rest)) = mu.split_first() else {
        return 1;
    };
    let t = t as i64;
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        let b2 = b - t;
        if b2 < 0 || beta.binary_search(&b2).is_ok() {
            continue;
        }
        let lo = beta.partition_point(|&x| x <= b2);
        let crossings = i - lo;
        let mut next = beta.to_vec();
        next.remove(i);
        next.insert(lo, b2);
        let term = mn_rec(&next, rest);
        total += if crossings % 2 == 0 { term } else { -term };
    }
    total
}

/// Centralizer order z_mu = prod over distinct parts k^m_k * m_k!.
fn centralizer_order(mu: &Partition) -> u64 {
    let mut z = 1u64;
    let mut i = 0;
    let parts = mu.parts();
    while i < parts.len() {
        let k = parts[i];
        let mut m = 0u64;
        while i < parts.len() && parts[i] == k {
            m += 1;
            i += 1;
        }
        z *= (k as u64).pow(m as u32) * factorial(m);
    }
    z
}

fn element_order(mu: &Partition) -> u64 {
    mu.parts().iter().fold(1u64, |acc, &p| lcm(acc, p as u64))
}

/// Cycle types in class order: the identity type (1, ..., 1) first, then the
/// remaining partitions in enumeration order.
fn class_types(n: u32) -> Vec<Partition> {
    let all = partitions(n);
    let identity = all.last().expect("n >= 1").clone();
    let mut out = vec![identity.clone()];
    out.extend(all.into_iter().filter(|p| *p != identity));
    out
}

/// The full character table of S_n; all values are rational integers.
pub fn symmetric_table(n: u32) -> CharacterTable {
    assert!(n >= 1, "symmetric_table needs n >= 1");
    let order = factorial(n as u64);
    let types = class_types(n);
    let classes: Vec<ClassInfo> = types
        .iter()
        .map(|mu| ClassInfo {
            size: order / centralizer_order(mu),
            element_order: element_order(mu),
            label: mu.label(),
        })
        .collect();
    let exponent = classes.iter().fold(1, |acc, c| lcm(acc, c.element_order));
    let rows: Vec<Vec<Cyclotomic>> = partitions(n)
        .iter()
        .map(|lambda| {
            types
                .iter()
                .map(|mu| Cyclotomic::from_integer(mn_value(lambda, mu)))
                .collect()
        })
        .collect();
    CharacterTable::new(format!("S{n}"), order, exponent, classes, rows)
        .expect("symmetric group table is valid")
}

/// One alternating class: its cycle type, the index of that type in the S_n
/// class list, and which half it is (None for non-split classes).
struct AltClass {
    mu: Partition,
    sym_index: usize,
    half: Option<bool>,
    size: u64,
}

fn alt_classes(n: u32) -> Vec<AltClass> {
    let types = class_types(n);
    let sym_order = factorial(n as u64);
    let mut out = Vec::new();
    for (sym_index, mu) in types.iter().enumerate() {
        if (n - mu.len() as u32) % 2 != 0 {
            continue; // odd permutations
        }
        let size = sym_order / centralizer_order(mu);
        let splits = mu.parts().iter().all(|&p| p % 2 == 1)
            && mu.parts().windows(2).all(|w| w[0] > w[1]);
        if splits {
            out.push(AltClass { mu: mu.clone(), sym_index, half: Some(true), size: size / 2 });
            out.push(AltClass { mu: mu.clone(), sym_index, half: Some(false), size: size / 2 });
        } else {
            out.push(AltClass { mu: mu.clone(), sym_index, half: None, size });
        }
    }
    out
}

/// The full character table of A_n (n >= 3).
pub fn alternating_table(n: u32) -> CharacterTable {
    assert!(n >= 3, "alternating_table needs n >= 3");
    match assemble_alternating(n, false) {
        Ok(t) => t,
        // a failed orthogonality check would signal a wrong +- assignment;
        // retry with the alternate one before giving up
        Err(_) => assemble_alternating(n, true).expect("alternating table assembly"),
    }
}

fn assemble_alternating(n: u32, flip: bool) -> Result<CharacterTable, Error> {
    let order = factorial(n as u64) / 2;
    let classes_spec = alt_classes(n);
    let classes: Vec<ClassInfo> = classes_spec
        .iter()
        .map(|c| ClassInfo {
            size: c.size,
            element_order: element_order(&c.mu),
            label: match c.half {
                Some(true) => format!("{}+", c.mu.label()),
                Some(false) => format!("{}-", c.mu.label()),
                None => c.mu.label(),
            },
        })
        .collect();
    let exponent = classes.iter().fold(1, |acc, c| lcm(acc, c.element_order));

    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    let mut seen: std::collections::HashSet<Partition> = std::collections::HashSet::new();
    for lambda in partitions(n) {
        if seen.contains(&lambda) {
            continue;
        }
        let conj = lambda.conjugate();
        seen.insert(lambda.clone());
        seen.insert(conj.clone());
        if lambda != conj {
            // restriction is irreducible and unchanged
            rows.push(
                classes_spec
                    .iter()
                    .map(|c| Cyclotomic::from_integer(mn_value(&lambda, &c.mu)))
                    .collect(),
            );
            continue;
        }
        let hooks = diagonal_hooks(&lambda)?;
        let h_type = Partition::new(hooks.hooks.iter().map(|&h| h as u32).collect());
        let d = hooks.signed_squarefree();
        let scale = (hooks.product / hooks.squarefree_part).isqrt();
        debug_assert_eq!(scale * scale * hooks.squarefree_part, hooks.product);
        let root = sqrt_of_squarefree(d).scale(&Rational::from_integer(scale.into()));
        let eps = Cyclotomic::from_integer(hooks.epsilon);
        let plus = eps.add(&root).scale(&half);
        let minus = eps.sub(&root).scale(&half);
        let mut row_a = Vec::with_capacity(classes_spec.len());
        let mut row_b = Vec::with_capacity(classes_spec.len());
        for c in &classes_spec {
            if c.mu == h_type {
                let first = c.half == Some(!flip);
                row_a.push(if first { plus.clone() } else { minus.clone() });
                row_b.push(if first { minus.clone() } else { plus.clone() });
            } else {
                let v = Cyclotomic::from_integer(mn_value(&lambda, &c.mu)).scale(&half);
                row_a.push(v.clone());
                row_b.push(v);
            }
        }
        rows.push(row_a);
        rows.push(row_b);
    }
    CharacterTable::new(format!("A{n}"), order, exponent, classes, rows)
}

/// Class fusion A_n -> S_n: each alternating class lands in the symmetric
/// class of its cycle type.
pub fn alternating_fusion(n: u32) -> FusionMap {
    FusionMap {
        source: format!("A{n}"),
        target: format!("S{n}"),
        map: alt_classes(n).iter().map(|c| c.sym_index).collect(),
    }
}
