//! Exact arithmetic for F_{p^m}.
//!
//! Elements are integer representatives in `[0, p^m)` whose base-p digits,
//! little-endian, are the coefficients of the residue polynomial. The modulus
//! for each `(p, m)` is canonical (lexicographically smallest monic
//! irreducible primitive polynomial), so two independently created fields for
//! the same parameters are identical and serialized data is portable.

pub(crate) mod poly;
mod extension;

pub use extension::{Extension, TowerContext};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Default cap on field size; fields above it are rejected.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 24;

/// Multiplication uses discrete-log tables up to this size, and falls back to
/// polynomial reduction above it.
const TABLE_LIMIT: u64 = 1 << 16;

/// Serialized form of a field: `{p, m, modulus}` with the modulus as a
/// little-endian coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

/// A finite field F_{p^m} with canonical modulus and, for small sizes,
/// discrete-log tables. Immutable after creation; shared via `Arc`.
pub struct Field {
    p: u32,
    m: u32,
    size: u32,
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub type FieldRef = Arc<Field>;

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field(p={}, m={}, size={})", self.p, self.m, self.size)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for Field {}

fn smallest_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let order = p as u64 - 1;
    let factors = poly::prime_factors(order);
    'g: for g in 2..p {
        for &r in &factors {
            // g^(order/r) mod p
            let mut acc = 1u64;
            let mut b = g as u64;
            let mut e = order / r;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * b % p as u64;
                }
                b = b * b % p as u64;
                e >>= 1;
            }
            if acc == 1 {
                continue 'g;
            }
        }
        return g;
    }
    unreachable!("no primitive root mod {p}")
}

impl Field {
    /// The canonical field F_{p^m} under the default size cap.
    pub fn new(p: u32, m: u32) -> Result<FieldRef> {
        Field::with_cap(p, m, DEFAULT_FIELD_CAP)
    }

    /// Like [`Field::new`] with an explicit size cap.
    pub fn with_cap(p: u32, m: u32, cap: u64) -> Result<FieldRef> {
        if !poly::is_prime(p as u64) {
            return Err(Error::NonPrimeCharacteristic(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidParams("extension degree must be >= 1".into()));
        }
        let size = (p as u64).checked_pow(m).filter(|&s| s <= cap).ok_or(
            Error::FieldTooLarge { p: p as u64, m, cap },
        )?;
        let modulus = poly::canonical_modulus(p, m);
        let mut field = Field {
            p,
            m,
            size: size as u32,
            modulus,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.generator = if m == 1 {
            smallest_primitive_root(p)
        } else {
            // modulus is primitive, so the class of x generates
            field.rep_from_digits(&[0, 1])
        };
        if size <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(Arc::new(field))
    }

    /// Reconstructs a field from its serialized spec, re-deriving the
    /// canonical modulus and checking it matches.
    pub fn from_spec(spec: &FieldSpec) -> Result<FieldRef> {
        let f = Field::new(spec.p, spec.m)?;
        if f.modulus != spec.modulus {
            return Err(Error::InvalidParams(format!(
                "modulus {:?} is not the canonical modulus for ({}, {})",
                spec.modulus, spec.p, spec.m
            )));
        }
        Ok(f)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
        }
    }

    fn build_tables(&mut self) {
        let q = self.size as usize;
        let mut exp = Vec::with_capacity(q - 1);
        let mut log = vec![u32::MAX; q];
        let mut acc = 1u32;
        for i in 0..q - 1 {
            exp.push(acc);
            log[acc as usize] = i as u32;
            acc = self.mul_slow(acc, self.generator);
        }
        debug_assert_eq!(acc, 1, "generator order must be q-1");
        self.exp = exp;
        self.log = log;
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// A fixed generator of the multiplicative group: the class of x for
    /// m ≥ 2 (the canonical modulus is primitive), the smallest primitive
    /// root for prime fields.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    fn digits(&self, rep: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        let mut r = rep;
        for _ in 0..self.m {
            out.push(r % self.p);
            r /= self.p;
        }
        out
    }

    fn rep_from_digits(&self, digits: &[u32]) -> u32 {
        let mut rep = 0u32;
        for &d in digits.iter().rev() {
            rep = rep * self.p + d % self.p;
        }
        rep
    }

    /// The i-th base-p digit (polynomial coefficient) of a representative.
    pub fn digit(&self, rep: u32, i: u32) -> u32 {
        (rep / self.p.pow(i)) % self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut out, mut scale) = (0u32, 1u32);
        let (mut a, mut b) = (a, b);
        for _ in 0..self.m {
            out += (a % self.p + b % self.p) % self.p * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut out, mut scale) = (0u32, 1u32);
        let mut a = a;
        for _ in 0..self.m {
            out += (self.p - a % self.p) % self.p * scale;
            a /= self.p;
            scale *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let prod = {
            let da = self.digits(a);
            let db = self.digits(b);
            let mut prod = vec![0u32; 2 * self.m as usize];
            for (i, &ai) in da.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                for (j, &bj) in db.iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u64 + ai as u64 * bj as u64)
                        % self.p as u64) as u32;
                }
            }
            prod
        };
        let r = poly::rem(&prod, &self.modulus, self.p);
        self.rep_from_digits(&r)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let la = self.log[a as usize] as u64;
            let lb = self.log[b as usize] as u64;
            let q1 = self.size as u64 - 1;
            return self.exp[((la + lb) % q1) as usize];
        }
        self.mul_slow(a, b)
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if !self.exp.is_empty() {
            let q1 = self.size as u64 - 1;
            let la = self.log[a as usize] as u64;
            return Ok(self.exp[((q1 - la) % q1) as usize]);
        }
        Ok(self.pow(a, self.size as u64 - 2))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let q1 = self.size as u64 - 1;
        let e = e % q1;
        if !self.exp.is_empty() {
            let la = self.log[a as usize] as u64;
            return self.exp[((la * e) % q1) as usize];
        }
        let mut acc = 1u32;
        let mut b = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        acc
    }

    /// Embeds an integer `0 <= c < p` as the constant polynomial c.
    pub fn from_prime_subfield(&self, c: u32) -> u32 {
        c % self.p
    }

    /// All element representatives, 0 upward.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size
    }

    pub fn element(self: &Arc<Self>, rep: u32) -> FieldElement {
        assert!(rep < self.size, "rep {rep} out of range for {self:?}");
        FieldElement {
            field: Arc::clone(self),
            rep,
        }
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        self.element(0)
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.element(1)
    }
}

/// An element bound to its field, for ergonomic arithmetic. Hot loops use the
/// rep-level methods on [`Field`] directly.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldRef,
    rep: u32,
}

impl FieldElement {
    pub fn rep(&self) -> u32 {
        self.rep
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.rep == 0
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.field.element(self.field.add(self.rep, other.rep)))
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.field.element(self.field.mul(self.rep, other.rep)))
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.field.element(self.field.sub(self.rep, other.rep)))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.field.element(self.field.inv(self.rep)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.field.element(self.field.neg(self.rep))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.field.element(self.field.pow(self.rep, e))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && *self.field == *other.field
    }
}
impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@F{}", self.rep, self.field.size)
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch in +")
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field mismatch in -")
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field mismatch in *")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_and_f4_basics() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // omega * omega = omega + 1
        let w = f4.generator();
        assert_eq!(w, 2);
        assert_eq!(f4.mul(w, w), f4.add(w, 1));
        // omega^3 = 1
        assert_eq!(f4.pow(w, 3), 1);
    }

    #[test]
    fn f9_multiplicative_group_is_cyclic_of_order_8() {
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[2, 1, 1]);
        // enumerate the order of every nonzero element; orders must divide 8
        // and at least one element must have order exactly 8
        let mut max_order = 0;
        for a in 1..9 {
            let mut t = a;
            let mut ord = 1;
            while t != 1 {
                t = f9.mul(t, a);
                ord += 1;
                assert!(ord <= 8);
            }
            assert_eq!(8 % ord, 0);
            max_order = max_order.max(ord);
        }
        assert_eq!(max_order, 8);
        assert_eq!(f9.pow(f9.generator(), 8), 1);
        assert_ne!(f9.pow(f9.generator(), 4), 1);
    }

    #[test]
    fn field_axioms_exhaustive_up_to_64() {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2), (11, 1), (13, 1)] {
            let f = Field::new(p, m).unwrap();
            let q = f.size();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q.min(16) {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn untabled_field_agrees_with_tabled() {
        // force the slow path by rebuilding a small field without tables
        let f = Field::new(2, 4).unwrap();
        for a in 0..16 {
            for b in 0..16 {
                assert_eq!(f.mul(a, b), f.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            Field::new(4, 1),
            Err(Error::NonPrimeCharacteristic(4))
        ));
        assert!(matches!(
            Field::with_cap(2, 30, 1 << 24),
            Err(Error::FieldTooLarge { .. })
        ));
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.inv(0), Err(Error::DivisionByZero));
        let f9 = Field::new(3, 2).unwrap();
        let a = f4.element(1);
        let b = f9.element(1);
        assert_eq!(a.checked_add(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn element_ops() {
        let f4 = Field::new(2, 2).unwrap();
        let w = f4.element(f4.generator());
        assert_eq!((&w * &w).rep(), f4.add(w.rep(), 1));
        assert_eq!(w.pow(3), f4.one());
        assert_eq!((&w - &w), f4.zero());
        assert_eq!(&w.inv().unwrap() * &w, f4.one());
    }

    #[test]
    fn spec_roundtrip() {
        let f = Field::new(3, 2).unwrap();
        let spec = f.spec();
        let js = serde_json::to_string(&spec).unwrap();
        let back: FieldSpec = serde_json::from_str(&js).unwrap();
        let f2 = Field::from_spec(&back).unwrap();
        assert_eq!(*f, *f2);
    }
}
