//! Exact-arithmetic toolkit for fields of values and conductors of
//! irreducible characters of finite groups.
//!
//! The crate is organized around a small tower:
//!
//! * [`cyclo`] — exact elements of cyclotomic fields Q(zeta_n) with Galois
//!   actions, stabilizers, conductors, and an expression parser;
//! * [`numfield`] — abelian number fields as Galois-stabilizer subgroups of
//!   (Z/n)^*, with composita, intersections, and degree arithmetic;
//! * [`chartab`] — character tables, their file format, generators for the
//!   bundled corpus, and the per-character divisibility checks;
//! * [`symchar`] — partition combinatorics, Murnaghan–Nakayama values, and
//!   the diagonal-hook formulas for alternating groups;
//! * [`wreath`] — the field-shrinking construction G^n x| Gal(E/F) verified
//!   by direct evaluation, plus the prescribed-(field, p-part) pipeline;
//! * [`glq`] — parameter model for Irr(GL_n(q)) and Irr(GU_n(q)) with exact
//!   degrees, Galois action, and divisibility scans.

pub mod arith;
pub mod chartab;
pub mod cyclo;
mod error;
pub mod glq;
pub mod numfield;
pub mod report;
pub mod symchar;
pub mod wreath;

pub use error::Error;

/// Arbitrary-precision rational, the coefficient field for all exact values.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
