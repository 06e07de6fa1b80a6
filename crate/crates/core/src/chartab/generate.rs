//! Generators for the bundled corpus: cyclic, dihedral, and dicyclic tables,
//! direct products, and SL(2,3).  Symmetric and alternating tables live in
//! `symchar`.  Every generated table passes full validation before being
//! returned, so orthogonality is checked at the source.

use num_traits::One;

use crate::arith::{gcd, lcm};
use crate::cyclo::Cyclotomic;
use crate::Rational;

use super::{CharacterTable, ClassInfo};

fn zeta_pow(n: u64, e: i64) -> Cyclotomic {
    Cyclotomic::make(n, &[(e, Rational::one())])
}

fn int(x: i64) -> Cyclotomic {
    Cyclotomic::from_integer(x)
}

/// The cyclic group C_n: n singleton classes, characters chi_j(k) = zeta^(jk).
pub fn cyclic(n: u64) -> CharacterTable {
    assert!(n >= 1);
    let classes: Vec<ClassInfo> = (0..n)
        .map(|k| ClassInfo {
            size: 1,
            element_order: n / gcd(n, k),
            label: format!("g{k}"),
        })
        .collect();
    let irreducibles: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|j| (0..n).map(|k| zeta_pow(n, (j * k) as i64)).collect())
        .collect();
    CharacterTable::new(format!("C{n}"), n, n, classes, irreducibles)
        .expect("cyclic table is valid")
}

/// The dihedral group of the given (even) order 2m, m >= 2, with rotations
/// r^k and reflections.
pub fn dihedral(order: u64) -> CharacterTable {
    assert!(order >= 4 && order % 2 == 0, "dihedral order must be even and >= 4");
    let m = order / 2;
    let exponent = lcm(m, 2);
    let mut classes = vec![ClassInfo { size: 1, element_order: 1, label: "e".into() }];
    let rot_order = |k: u64| m / gcd(m, k);
    let half = m / 2;
    if m % 2 == 0 {
        for k in 1..half {
            classes.push(ClassInfo { size: 2, element_order: rot_order(k), label: format!("r{k}") });
        }
        classes.push(ClassInfo { size: 1, element_order: 2, label: format!("r{half}") });
        classes.push(ClassInfo { size: half, element_order: 2, label: "s".into() });
        classes.push(ClassInfo { size: half, element_order: 2, label: "rs".into() });
    } else {
        for k in 1..=(m - 1) / 2 {
            classes.push(ClassInfo { size: 2, element_order: rot_order(k), label: format!("r{k}") });
        }
        classes.push(ClassInfo { size: m, element_order: 2, label: "s".into() });
    }

    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    // linear characters factor through the abelianization
    let linear_signs: Vec<(i64, i64)> = if m % 2 == 0 {
        vec![(1, 1), (1, -1), (-1, 1), (-1, -1)]
    } else {
        vec![(1, 1), (1, -1)]
    };
    for (er, es) in linear_signs {
        let mut row = Vec::with_capacity(classes.len());
        row.push(int(1));
        if m % 2 == 0 {
            for k in 1..half {
                row.push(int(er.pow(k as u32)));
            }
            row.push(int(er.pow(half as u32)));
            row.push(int(es));
            row.push(int(er * es));
        } else {
            for _k in 1..=(m - 1) / 2 {
                row.push(int(1));
            }
            row.push(int(es));
        }
        rows.push(row);
    }
    // two-dimensional characters induced from rotations
    let top = if m % 2 == 0 { half } else { (m - 1) / 2 + 1 };
    for j in 1..top {
        let mut row = Vec::with_capacity(classes.len());
        row.push(int(2));
        let val = |k: u64| {
            zeta_pow(m, (j * k) as i64).add(&zeta_pow(m, -((j * k) as i64)))
        };
        if m % 2 == 0 {
            for k in 1..half {
                row.push(val(k));
            }
            row.push(val(half));
            row.push(int(0));
            row.push(int(0));
        } else {
            for k in 1..=(m - 1) / 2 {
                row.push(val(k));
            }
            row.push(int(0));
        }
        rows.push(row);
    }
    CharacterTable::new(format!("D{order}"), order, exponent, classes, rows)
        .expect("dihedral table is valid")
}

/// The dicyclic group of order 4t (generalized quaternion when t is a power
/// of 2): <a, b | a^2t = 1, b^2 = a^t, b a b^-1 = a^-1>.
pub fn dicyclic(order: u64) -> CharacterTable {
    assert!(order >= 8 && order % 4 == 0, "dicyclic order must be a multiple of 4, at least 8");
    let t = order / 4;
    let n2t = 2 * t;
    let exponent = lcm(n2t, 4);
    let mut classes = vec![ClassInfo { size: 1, element_order: 1, label: "e".into() }];
    for k in 1..t {
        classes.push(ClassInfo {
            size: 2,
            element_order: n2t / gcd(n2t, k),
            label: format!("a{k}"),
        });
    }
    classes.push(ClassInfo { size: 1, element_order: 2, label: format!("a{t}") });
    classes.push(ClassInfo { size: t, element_order: 4, label: "b".into() });
    classes.push(ClassInfo { size: t, element_order: 4, label: "ab".into() });

    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    if t % 2 == 0 {
        for (ea, eb) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
            let mut row = vec![int(1)];
            for k in 1..t {
                row.push(int(ea.pow(k as u32)));
            }
            row.push(int(1)); // a^t with t even
            row.push(int(eb));
            row.push(int(ea * eb));
            rows.push(row);
        }
    } else {
        // the abelianization is C_4 generated by the image of b
        for j in 0..4i64 {
            let mut row = vec![int(1)];
            let ea = if j % 2 == 0 { 1i64 } else { -1 };
            for k in 1..t {
                row.push(int(ea.pow(k as u32)));
            }
            row.push(int(ea.pow(t as u32)));
            row.push(zeta_pow(4, j));
            row.push(zeta_pow(4, j).scale(&Rational::from_integer((ea).into())));
            rows.push(row);
        }
    }
    for j in 1..t {
        let mut row = vec![int(2)];
        for k in 1..t {
            row.push(zeta_pow(n2t, (j * k) as i64).add(&zeta_pow(n2t, -((j * k) as i64))));
        }
        row.push(int(if j % 2 == 0 { 2 } else { -2 }));
        row.push(int(0));
        row.push(int(0));
        rows.push(row);
    }
    CharacterTable::new(format!("Dic{order}"), order, exponent, classes, rows)
        .expect("dicyclic table is valid")
}

/// Outer direct product: classes are pairs, characters are value-wise
/// products.
pub fn direct_product(t1: &CharacterTable, t2: &CharacterTable) -> CharacterTable {
    let classes: Vec<ClassInfo> = t1
        .classes
        .iter()
        .flat_map(|c1| {
            t2.classes.iter().map(move |c2| ClassInfo {
                size: c1.size * c2.size,
                element_order: lcm(c1.element_order, c2.element_order),
                label: format!("{}|{}", c1.label, c2.label),
            })
        })
        .collect();
    let irreducibles: Vec<Vec<Cyclotomic>> = t1
        .irreducibles
        .iter()
        .flat_map(|r1| {
            t2.irreducibles.iter().map(move |r2| {
                r1.iter()
                    .flat_map(|a| r2.iter().map(move |b| a.mul(b)))
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    CharacterTable::new(
        format!("{}x{}", t1.name, t2.name),
        t1.order * t2.order,
        lcm(t1.exponent, t2.exponent),
        classes,
        irreducibles,
    )
    .expect("direct product of valid tables is valid")
}

/// SL(2,3): order 24, seven classes.  The three faithful degree-2 characters
/// carry the cube-root irrationalities; the degree-3 character is inflated
/// from A4.
pub fn sl2_3() -> CharacterTable {
    let w = |e: i64| zeta_pow(3, e);
    let classes = vec![
        ClassInfo { size: 1, element_order: 1, label: "e".into() },
        ClassInfo { size: 1, element_order: 2, label: "-e".into() },
        ClassInfo { size: 6, element_order: 4, label: "4a".into() },
        ClassInfo { size: 4, element_order: 3, label: "3a".into() },
        ClassInfo { size: 4, element_order: 3, label: "3b".into() },
        ClassInfo { size: 4, element_order: 6, label: "6a".into() },
        ClassInfo { size: 4, element_order: 6, label: "6b".into() },
    ];
    let rows = vec![
        vec![int(1), int(1), int(1), int(1), int(1), int(1), int(1)],
        vec![int(1), int(1), int(1), w(1), w(2), w(1), w(2)],
        vec![int(1), int(1), int(1), w(2), w(1), w(2), w(1)],
        vec![int(3), int(3), int(-1), int(0), int(0), int(0), int(0)],
        vec![int(2), int(-2), int(0), int(-1), int(-1), int(1), int(1)],
        vec![int(2), int(-2), int(0), w(1).neg(), w(2).neg(), w(1), w(2)],
        vec![int(2), int(-2), int(0), w(2).neg(), w(1).neg(), w(2), w(1)],
    ];
    CharacterTable::new("SL(2,3)", 24, 12, classes, rows).expect("SL(2,3) table is valid")
}
