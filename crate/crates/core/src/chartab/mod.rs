//! Character-table data model: classes, exact irreducible character values,
//! the JSON file format, fusion maps, and load-time validation.
//!
//! Tables carry no element-level group structure, only class data: sizes,
//! element orders, labels, and one cyclotomic value per (character, class).
//! Row and column orthogonality are validated exactly on construction and on
//! load, so a table that exists is a character table.

pub mod checks;
pub mod generate;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::lcm;
use crate::cyclo::{rational_from_value, Ambient, Cyclotomic};
use crate::error::Error;
use crate::numfield::AbelianField;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub size: u64,
    pub element_order: u64,
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub name: String,
    pub order: u64,
    pub exponent: u64,
    pub classes: Vec<ClassInfo>,
    pub irreducibles: Vec<Vec<Cyclotomic>>,
}

/// Class fusion for a normal (or any) subgroup N <= G: for each class of N,
/// the index of the G-class containing it.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FusionMap {
    pub source: String,
    pub target: String,
    pub map: Vec<usize>,
}

impl CharacterTable {
    /// Builds and fully validates a table.
    pub fn new(
        name: impl Into<String>,
        order: u64,
        exponent: u64,
        classes: Vec<ClassInfo>,
        irreducibles: Vec<Vec<Cyclotomic>>,
    ) -> Result<Self, Error> {
        let t = CharacterTable { name: name.into(), order, exponent, classes, irreducibles };
        t.validate()?;
        Ok(t)
    }

    fn fail(&self, msg: impl Into<String>) -> Error {
        Error::InvalidTable { table: self.name.clone(), msg: msg.into() }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.classes.is_empty() {
            return Err(self.fail("no classes"));
        }
        if self.classes[0].size != 1 || self.classes[0].element_order != 1 {
            return Err(self.fail("class 0 must be the identity (size 1, order 1)"));
        }
        let size_sum: u64 = self.classes.iter().map(|c| c.size).sum();
        if size_sum != self.order {
            return Err(self.fail(format!(
                "class sizes sum to {size_sum}, group order is {}",
                self.order
            )));
        }
        let order_lcm = self
            .classes
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.element_order));
        if order_lcm != self.exponent {
            return Err(self.fail(format!(
                "stored exponent {} differs from lcm of element orders {order_lcm}",
                self.exponent
            )));
        }
        if self.irreducibles.len() != self.classes.len() {
            return Err(self.fail(format!(
                "{} irreducibles vs {} classes",
                self.irreducibles.len(),
                self.classes.len()
            )));
        }
        let mut degree_square_sum = BigInt::zero();
        for (i, row) in self.irreducibles.iter().enumerate() {
            if row.len() != self.classes.len() {
                return Err(self.fail(format!("row {i} has wrong length")));
            }
            let deg = row[0]
                .as_integer()
                .filter(|d| *d > BigInt::zero())
                .ok_or_else(|| self.fail(format!("row {i} has non-positive degree")))?;
            degree_square_sum += &deg * &deg;
            for (c, v) in row.iter().enumerate() {
                if self.exponent % v.conductor() != 0 {
                    return Err(self.fail(format!(
                        "value at ({i}, {c}) has conductor {} outside Q_{}",
                        v.conductor(),
                        self.exponent
                    )));
                }
            }
        }
        if degree_square_sum != BigInt::from(self.order) {
            return Err(self.fail(format!(
                "sum of squared degrees {degree_square_sum} differs from group order {}",
                self.order
            )));
        }
        self.check_row_orthogonality()?;
        self.check_column_orthogonality()?;
        Ok(())
    }

    fn check_row_orthogonality(&self) -> Result<(), Error> {
        for i in 0..self.irreducibles.len() {
            for j in i..self.irreducibles.len() {
                let ip = self.inner_product_value(&self.irreducibles[i], &self.irreducibles[j]);
                let expect = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
                if ip != expect {
                    return Err(self.fail(format!(
                        "row orthogonality fails for pair ({i}, {j}): <x_{i}, x_{j}> = {ip}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_column_orthogonality(&self) -> Result<(), Error> {
        let k = self.classes.len();
        for c in 0..k {
            for d in c..k {
                let n = self
                    .irreducibles
                    .iter()
                    .fold(1u64, |acc, row| {
                        lcm(acc, lcm(row[c].conductor(), row[d].conductor()))
                    });
                let amb = Ambient::new(crate::arith::normalize_modulus(n));
                let mut acc = amb.zero();
                for row in &self.irreducibles {
                    let a = amb.embed(&row[c]);
                    let b = amb.conj(&amb.embed(&row[d]));
                    let prod = amb.mul(&a, &b);
                    amb.add_scaled(&mut acc, &prod, &Rational::one());
                }
                let got = amb.extract(acc);
                let expect = if c == d {
                    Cyclotomic::from_rational(Rational::new(
                        BigInt::from(self.order),
                        BigInt::from(self.classes[c].size),
                    ))
                } else {
                    Cyclotomic::zero()
                };
                if got != expect {
                    return Err(self.fail(format!(
                        "column orthogonality fails for classes ({c}, {d})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn char_count(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.irreducibles[i][0]
            .as_integer()
            .and_then(|d| d.to_u64())
            .expect("validated degree")
    }

    pub fn value(&self, i: usize, class: usize) -> &Cyclotomic {
        &self.irreducibles[i][class]
    }

    /// Q(chi_i): the field generated by the values of row i.
    pub fn field_of_values(&self, i: usize) -> AbelianField {
        AbelianField::from_values(&self.irreducibles[i])
    }

    /// c(chi_i) = conductor of Q(chi_i).
    pub fn char_conductor(&self, i: usize) -> u64 {
        self.field_of_values(i).conductor()
    }

    /// Inner product of two class functions; the sum of size * f * conj(g)
    /// over classes, divided by |G|.
    fn inner_product_value(&self, f: &[Cyclotomic], g: &[Cyclotomic]) -> Cyclotomic {
        assert_eq!(f.len(), self.classes.len());
        assert_eq!(g.len(), self.classes.len());
        let n = f
            .iter()
            .zip(g)
            .fold(1u64, |acc, (a, b)| lcm(acc, lcm(a.conductor(), b.conductor())));
        let amb = Ambient::new(crate::arith::normalize_modulus(n));
        let mut acc = amb.zero();
        for (c, (a, b)) in f.iter().zip(g).enumerate() {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let av = amb.embed(a);
            let bv = amb.conj(&amb.embed(b));
            let prod = amb.mul(&av, &bv);
            amb.add_scaled(
                &mut acc,
                &prod,
                &Rational::from_integer(BigInt::from(self.classes[c].size)),
            );
        }
        let scale = Rational::new(BigInt::one(), BigInt::from(self.order));
        let acc: Vec<Rational> = acc.into_iter().map(|x| x * &scale).collect();
        amb.extract(acc)
    }

    /// Inner product of two class functions as a rational number; errors if
    /// the value is irrational.
    pub fn inner_product(&self, f: &[Cyclotomic], g: &[Cyclotomic]) -> Result<Rational, Error> {
        let v = self.inner_product_value(f, g);
        v.as_rational()
            .cloned()
            .ok_or_else(|| Error::invalid("inner product is not rational"))
    }

    // -- file format --------------------------------------------------------

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "order": self.order,
            "exponent": self.exponent,
            "classes": self.classes.iter().map(|c| json!({
                "size": c.size,
                "order": c.element_order,
                "label": c.label,
            })).collect::<Vec<_>>(),
            "irreducibles": self.irreducibles.iter().map(|row| {
                row.iter().map(value_to_json).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }

    pub fn save(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec_pretty(&self.to_json()).expect("table serializes");
        bytes.push(b'\n');
        bytes
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Schema("table must be a JSON object".into()))?;
        let get = |key: &str| {
            obj.get(key)
                .ok_or_else(|| Error::Schema(format!("table is missing '{key}'")))
        };
        let name = get("name")?
            .as_str()
            .ok_or_else(|| Error::Schema("'name' must be a string".into()))?
            .to_owned();
        let order = get("order")?
            .as_u64()
            .ok_or_else(|| Error::Schema("'order' must be an integer".into()))?;
        let exponent = get("exponent")?
            .as_u64()
            .ok_or_else(|| Error::Schema("'exponent' must be an integer".into()))?;
        let classes = get("classes")?
            .as_array()
            .ok_or_else(|| Error::Schema("'classes' must be an array".into()))?
            .iter()
            .map(|c| {
                let size = c.get("size").and_then(Value::as_u64);
                let order = c.get("order").and_then(Value::as_u64);
                let label = c.get("label").and_then(Value::as_str);
                match (size, order, label) {
                    (Some(size), Some(order), Some(label)) => Ok(ClassInfo {
                        size,
                        element_order: order,
                        label: label.to_owned(),
                    }),
                    _ => Err(Error::Schema("bad class entry".into())),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let irreducibles = get("irreducibles")?
            .as_array()
            .ok_or_else(|| Error::Schema("'irreducibles' must be an array".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Schema("character row must be an array".into()))?
                    .iter()
                    .map(value_from_json)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        CharacterTable::new(name, order, exponent, classes, irreducibles)
    }

    pub fn load(bytes: &[u8]) -> Result<Self, Error> {
        let v: Value = serde_json::from_slice(bytes)?;
        Self::from_json(&v)
    }
}

/// Encodes a value in the most compact of the three accepted forms:
/// a bare integer, a [num, den] pair, or the full {"n", "coeffs"} object.
pub fn value_to_json(v: &Cyclotomic) -> Value {
    if let Some(q) = v.as_rational() {
        if q.is_integer() {
            if let Some(x) = q.to_integer().to_i64() {
                return Value::from(x);
            }
        }
        return json!([
            crate::cyclo::bigint_value(q.numer()),
            crate::cyclo::bigint_value(q.denom())
        ]);
    }
    v.to_value()
}

pub fn value_from_json(v: &Value) -> Result<Cyclotomic, Error> {
    match v {
        Value::Object(_) => Cyclotomic::from_value(v),
        _ => Ok(Cyclotomic::from_rational(rational_from_value(v)?)),
    }
}

impl FusionMap {
    /// Checks the fusion against its source and target tables: identity goes
    /// to identity, element orders are preserved, |N| divides |G|, and all
    /// indices are in range.
    pub fn validate(
        &self,
        source: &CharacterTable,
        target: &CharacterTable,
    ) -> Result<(), Error> {
        let fail = |msg: String| Error::Schema(format!("fusion {}->{}: {msg}", self.source, self.target));
        if self.map.len() != source.classes.len() {
            return Err(fail("map length differs from source class count".into()));
        }
        if target.order % source.order != 0 {
            return Err(fail("subgroup order does not divide group order".into()));
        }
        for (c, &g) in self.map.iter().enumerate() {
            if g >= target.classes.len() {
                return Err(fail(format!("class {c} maps out of range")));
            }
            if source.classes[c].element_order != target.classes[g].element_order {
                return Err(fail(format!("class {c} changes element order")));
            }
        }
        if self.map[0] != 0 {
            return Err(fail("identity class must map to the identity".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("fusion serializes")
    }

    pub fn load(bytes: &[u8]) -> Result<Self, Error> {
        Ok(serde_json::from_slice(bytes)?)
    }
}
