//! Partition combinatorics and the alternating-group character-field
//! machinery: diagonal hooks of self-conjugate partitions, the quadratic
//! field and conductor they determine, and the formula-side scan that the
//! table-side construction cross-checks.

mod mn;

pub use mn::{alternating_fusion, alternating_table, mn_value, symmetric_table};

use crate::arith::{is_squarefree, nu_p, squarefree_part};
use crate::error::Error;
use crate::numfield::AbelianField;
use crate::report::VerificationRecord;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Parts must be weakly decreasing positive integers.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0),
            "partition parts must be weakly decreasing and positive"
        );
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row i (0-based), or 0 past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let rows = self.parts.len();
        let cols = self.part(0) as usize;
        let parts = (0..cols)
            .map(|j| (0..rows).take_while(|&i| self.parts[i] as usize > j).count() as u32)
            .collect();
        Partition { parts }
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Hook length at cell (i, j), 0-based; the cell must be in the diagram.
    pub fn hook_length(&self, i: usize, j: usize) -> u32 {
        assert!(j < self.part(i) as usize, "cell outside the diagram");
        let arm = self.part(i) - 1 - j as u32;
        let leg = self
            .parts
            .iter()
            .skip(i + 1)
            .take_while(|&&p| p as usize > j)
            .count() as u32;
        arm + leg + 1
    }

    /// Product of all hook lengths.
    pub fn hook_product(&self) -> u64 {
        let mut prod = 1u64;
        for i in 0..self.parts.len() {
            for j in 0..self.parts[i] as usize {
                prod *= self.hook_length(i, j) as u64;
            }
        }
        prod
    }

    /// Dimension of the S_n-irreducible labeled by this partition, by the
    /// hook length formula n! / prod of hooks.
    pub fn dimension(&self) -> u64 {
        factorial(self.n() as u64) / self.hook_product()
    }

    pub fn label(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// All partitions of n in descending lexicographic order; (n) first,
/// (1, ..., 1) last.  partitions(0) is the single empty partition.
pub fn partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: current.clone() });
            return;
        }
        for next in (1..=remaining.min(max)).rev() {
            current.push(next);
            rec(remaining - next, next, current, out);
            current.pop();
        }
    }
    rec(n, n.max(1), &mut current, &mut out);
    out
}

/// n! for n <= 20 (the largest factorial fitting in u64); panics beyond.
pub fn factorial(n: u64) -> u64 {
    (1..=n)
        .try_fold(1u64, u64::checked_mul)
        .expect("factorial overflows u64 (needs n <= 20)")
}

/// Diagonal hook data of a self-conjugate partition: the hooks h_ii at the
/// diagonal cells, epsilon = (-1)^((n-k)/2), their product, and its
/// squarefree part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalHookData {
    pub k: usize,
    pub hooks: Vec<u64>,
    pub epsilon: i64,
    pub product: u64,
    pub squarefree_part: u64,
}

impl DiagonalHookData {
    /// The radicand epsilon * product, with its squarefree part kept signed.
    pub fn signed_squarefree(&self) -> i64 {
        self.epsilon * self.squarefree_part as i64
    }
}

pub fn diagonal_hooks(p: &Partition) -> Result<DiagonalHookData, Error> {
    if !p.is_self_conjugate() {
        return Err(Error::invalid(format!(
            "diagonal hooks require a self-conjugate partition, got {:?}",
            p.parts()
        )));
    }
    let k = (0..p.len()).take_while(|&i| p.part(i) as usize > i).count();
    let hooks: Vec<u64> = (0..k).map(|i| p.hook_length(i, i) as u64).collect();
    let n = p.n() as u64;
    debug_assert_eq!(hooks.iter().sum::<u64>(), n);
    debug_assert!(hooks.windows(2).all(|w| w[0] > w[1]));
    debug_assert!(hooks.iter().all(|h| h % 2 == 1));
    let nk = n - k as u64;
    debug_assert_eq!(nk % 2, 0);
    let epsilon = if nk % 4 == 0 { 1 } else { -1 };
    let product: u64 = hooks.iter().product();
    Ok(DiagonalHookData {
        k,
        hooks,
        epsilon,
        product,
        squarefree_part: squarefree_part(product as i64) as u64,
    })
}

/// Q(chi) for the alternating-group characters labeled by a self-conjugate
/// partition: the quadratic field generated by sqrt of epsilon times the
/// diagonal hook product (or Q when the radicand is a square).
pub fn alt_field_of_values(p: &Partition) -> Result<AbelianField, Error> {
    let data = diagonal_hooks(p)?;
    let d = data.signed_squarefree();
    if d == 1 {
        return Ok(AbelianField::rationals());
    }
    AbelianField::quadratic(d)
}

/// c(chi) for the same characters: the squarefree part d of the diagonal
/// hook product (both mod-4 branches of the radicand give conductor d).
pub fn alt_conductor(p: &Partition) -> Result<u64, Error> {
    let data = diagonal_hooks(p)?;
    let d = data.squarefree_part;
    Ok(if d == 1 && data.epsilon == 1 {
        1
    } else if d == 1 {
        // epsilon = -1 with square product cannot happen: an odd square is
        // 1 mod 4, forcing n - k = 0 mod 4
        unreachable!("square diagonal hook product with negative sign")
    } else {
        d
    })
}

/// Formula-side scan over all self-conjugate partitions of every n <= max_n:
/// the conductor must be squarefree (nu_p <= 1 for every prime), and must
/// agree with the conductor of the formula field.  One record per
/// self-conjugate partition; non-self-conjugate ones have conductor 1.
pub fn scan_alternating(max_n: u32, primes: &[u64]) -> Vec<VerificationRecord> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for (idx, p) in partitions(n).iter().enumerate() {
            if !p.is_self_conjugate() {
                continue;
            }
            let d = alt_conductor(p).expect("self-conjugate");
            let field = alt_field_of_values(p).expect("self-conjugate");
            let conductor_ok = field.conductor() == d;
            let squarefree_ok = d == 1 || is_squarefree(d);
            let prime_ok = primes.iter().all(|&q| nu_p(d.max(1), q) <= 1);
            let a_max = if d == 1 {
                0
            } else {
                crate::arith::factor(d).iter().map(|&(_, e)| e).max().unwrap_or(0)
            };
            let dim = p.dimension();
            let degree = if dim > 1 { dim / 2 } else { 1 };
            let index = crate::arith::euler_phi(field.conductor()) / field.degree();
            out.push(VerificationRecord {
                group: format!("Alt({n})"),
                char_index: idx,
                prime: None,
                a: a_max,
                conductor: d,
                index,
                degree,
                check: "alternating".into(),
                verdict: conductor_ok && squarefree_ok && prime_ok,
                vacuous: false,
                expected_fail: false,
            });
        }
    }
    out
}
