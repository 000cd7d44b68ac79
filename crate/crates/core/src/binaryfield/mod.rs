//! Arithmetic in GF(2^k) in a polynomial basis, plus the additive tools the
//! SL(2, 2^k) analysis needs: absolute trace, Artin-Schreier solving, and the
//! map `f(u) = u^2 + u`.
//!
//! Elements are bit strings of length `k` (bit `i` is the coefficient of
//! `x^i`); multiplication is carryless multiply followed by reduction.

mod f2poly;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

pub use f2poly::F2Poly;

use crate::arith;
use crate::error::{Error, Result};

pub const MAX_FIELD_DEGREE: u32 = 32;

/// GF(2^k) with a fixed irreducible modulus.
///
/// The modulus is stored with its leading bit, so `x^4 + x + 1` is `0x13`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryField {
    degree: u32,
    modulus: u64,
}

impl BinaryField {
    /// GF(2^k) with the irreducible modulus of least numeric value, i.e.
    /// comparing coefficient strings from the leading term downward.
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 || k > MAX_FIELD_DEGREE {
            return Err(Error::FieldDegree(k));
        }
        let lo = 1u64 << k;
        let modulus = (lo..lo << 1)
            .find(|&m| F2Poly::from_u64(m).is_irreducible())
            .expect("an irreducible polynomial exists in every degree");
        Ok(BinaryField { degree: k, modulus })
    }

    pub fn with_modulus(modulus: u64) -> Result<Self> {
        let poly = F2Poly::from_u64(modulus);
        let k = poly.degree().unwrap_or(0) as u32;
        if k == 0 || k > MAX_FIELD_DEGREE {
            return Err(Error::FieldDegree(k));
        }
        if !poly.is_irreducible() {
            return Err(Error::Reducible(modulus));
        }
        Ok(BinaryField { degree: k, modulus })
    }

    /// The field with `q` elements; `q` must be a power of two.
    pub fn of_size(q: u64) -> Result<Self> {
        if !q.is_power_of_two() || q < 2 {
            return Err(Error::NotPowerOfTwo(q));
        }
        Self::new(q.trailing_zeros())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn modulus_poly(&self) -> F2Poly {
        F2Poly::from_u64(self.modulus)
    }

    pub fn size(&self) -> u64 {
        1u64 << self.degree
    }

    pub fn elem(&self, bits: u64) -> Result<FieldElement> {
        if bits >= self.size() {
            return Err(Error::BadElement(format!("{bits:#x} in GF(2^{})", self.degree)));
        }
        Ok(FieldElement { field: *self, bits })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: *self, bits: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: *self, bits: 1 }
    }

    /// The class of `x`.
    pub fn generator(&self) -> FieldElement {
        FieldElement { field: *self, bits: 2 }.reduced()
    }

    /// All elements in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone + '_ {
        let field = *self;
        (0..self.size()).map(move |bits| FieldElement { field, bits })
    }

    // Raw arithmetic on bit strings. Callers guarantee the inputs are reduced.

    #[inline]
    pub fn mul_raw(&self, a: u64, b: u64) -> u64 {
        let (mut a, mut b) = if a.count_ones() < b.count_ones() { (b, a) } else { (a, b) };
        let mut r = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            a <<= 1;
            b >>= 1;
        }
        self.reduce(r)
    }

    #[inline]
    fn reduce(&self, mut r: u64) -> u64 {
        let k = self.degree;
        while r >> k != 0 {
            let shift = 63 - r.leading_zeros() - k;
            r ^= self.modulus << shift;
        }
        r
    }

    #[inline]
    pub fn square_raw(&self, a: u64) -> u64 {
        self.mul_raw(a, a)
    }

    pub fn pow_raw(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square_raw(base);
            }
        }
        acc
    }

    /// Inverse via `a^(q-2)`; the caller checks `a != 0`.
    pub fn inv_raw(&self, a: u64) -> u64 {
        self.pow_raw(a, self.size() - 2)
    }

    pub fn trace_raw(&self, a: u64) -> u64 {
        let mut acc = 0;
        let mut t = a;
        for _ in 0..self.degree {
            acc ^= t;
            t = self.square_raw(t);
        }
        acc
    }
}

/// An element of some [`BinaryField`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    field: BinaryField,
    bits: u64,
}

impl FieldElement {
    fn reduced(self) -> Self {
        FieldElement { field: self.field, bits: self.field.reduce(self.bits) }
    }

    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(FieldElement { field: self.field, bits: self.bits ^ other.bits })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(FieldElement { field: self.field, bits: self.field.mul_raw(self.bits, other.bits) })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn square(&self) -> Self {
        FieldElement { field: self.field, bits: self.field.square_raw(self.bits) }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement { field: self.field, bits: self.field.inv_raw(self.bits) })
    }

    /// `self^e`; negative `e` goes through the inverse. `0^0 = 1`.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { *self };
        Ok(FieldElement { field: self.field, bits: self.field.pow_raw(base.bits, e.unsigned_abs()) })
    }

    /// `self^(2^i)`.
    pub fn frobenius(&self, i: u32) -> Self {
        (0..i).fold(*self, |acc, _| acc.square())
    }

    /// Absolute trace to GF(2): `sum_{i<k} a^(2^i)`, returned as 0 or 1.
    pub fn absolute_trace(&self) -> u8 {
        self.field.trace_raw(self.bits) as u8
    }

    /// Trace from the subfield GF(2^j) to GF(2), for an element lying in that
    /// subfield.
    pub fn subfield_trace(&self, j: u32) -> Result<u8> {
        if !self.in_subfield(j)? {
            return Err(Error::Unsupported(format!("{self} is not in GF(2^{j})")));
        }
        let mut acc = self.field.zero();
        let mut t = *self;
        for _ in 0..j {
            acc = acc + t;
            t = t.square();
        }
        Ok(acc.bits as u8)
    }

    /// Membership in the subfield GF(2^j): `a^(2^j) = a`.
    pub fn in_subfield(&self, j: u32) -> Result<bool> {
        let k = self.field.degree;
        if j == 0 || k % j != 0 {
            return Err(Error::NotASubfield { j, k });
        }
        Ok(self.frobenius(j) == *self)
    }

    /// Multiplicative order, from the factorization of `2^k - 1`.
    pub fn element_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = self.field.degree;
        let n = self.field.size() - 1;
        let primes = arith::mersenne_prime_factors(k);
        Ok(arith::order_from_exponent(n, &primes, |d| {
            self.field.pow_raw(self.bits, d) == 1
        }))
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.element_order()? == self.field.size() - 1)
    }

    /// Frobenius orbit `{a, a^2, a^4, ...}`.
    pub fn frobenius_orbit(&self) -> BTreeSet<FieldElement> {
        let mut out = BTreeSet::new();
        let mut t = *self;
        while out.insert(t) {
            t = t.square();
        }
        out
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("field elements from different fields")
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> Self {
        self + rhs
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("field elements from different fields")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gf{}:{:#x}", self.field.size(), self.bits)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `gf<q>:0x<hex>` into the default field of size `q`.
impl FromStr for FieldElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadElement(s.to_string());
        let rest = s.strip_prefix("gf").ok_or_else(bad)?;
        let (q, hex) = rest.split_once(':').ok_or_else(bad)?;
        let q: u64 = q.parse().map_err(|_| bad())?;
        let hex = hex.strip_prefix("0x").ok_or_else(bad)?;
        let bits = u64::from_str_radix(hex, 16).map_err(|_| bad())?;
        BinaryField::of_size(q)?.elem(bits)
    }
}

/// Solves `a^2 + a = b`. Returns the root with zero constant coefficient;
/// the other root is that plus one. `None` exactly when the absolute trace
/// of `b` is 1.
pub fn solve_artin_schreier(b: FieldElement) -> Option<FieldElement> {
    let field = b.field;
    let k = field.degree as usize;
    // Row r of the augmented system: bit i is coefficient r of L(x^i), bit k is b_r.
    let columns: Vec<u64> = (0..k)
        .map(|i| {
            let e = 1u64 << i;
            field.square_raw(e) ^ e
        })
        .collect();
    let mut rows: Vec<u64> = (0..k)
        .map(|r| {
            let mut row = 0u64;
            for (i, c) in columns.iter().enumerate() {
                row |= ((c >> r) & 1) << i;
            }
            row | (((b.bits >> r) & 1) << k)
        })
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..k {
        let Some(p) = (rank..k).find(|&r| (rows[r] >> col) & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..k {
            if r != rank && (rows[r] >> col) & 1 == 1 {
                rows[r] ^= rows[rank];
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|row| (row >> k) & 1 == 1) {
        return None;
    }
    let mut alpha = 0u64;
    for (r, &col) in pivots.iter().enumerate() {
        alpha |= ((rows[r] >> k) & 1) << col;
    }
    alpha &= !1;
    let alpha = FieldElement { field, bits: alpha };
    debug_assert_eq!(alpha.square() + alpha, b);
    Some(alpha)
}

/// `f(u) = u^2 + u`.
pub fn f_apply(u: FieldElement) -> FieldElement {
    u.square() + u
}

/// `f^m(u)`; `m = 0` is the identity.
pub fn f_iterate(u: FieldElement, m: u64) -> FieldElement {
    (0..m).fold(u, |acc, _| f_apply(acc))
}

/// `{ f^m(u) : u in field }` by full enumeration.
pub fn f_image(field: &BinaryField, m: u64) -> BTreeSet<FieldElement> {
    field.elements().map(|u| f_iterate(u, m)).collect()
}

/// Checks `f^(2^i)(u) = u^(2^(2^i)) + u` as polynomials over GF(2).
pub fn verify_f_power_identity(i: u32) -> Result<bool> {
    if i > 4 {
        return Err(Error::Unsupported(format!("symbolic f-power identity for i = {i} > 4")));
    }
    let u = F2Poly::monomial(1);
    let composed = (0..1u64 << i).fold(u.clone(), |p, _| p.artin_schreier());
    let expected = F2Poly::monomial(1usize << (1usize << i)).add(&u);
    Ok(composed == expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(k: u32) -> BinaryField {
        BinaryField::new(k).unwrap()
    }

    #[test]
    fn default_moduli() {
        assert_eq!(gf(2).modulus(), 0b111);
        assert_eq!(gf(3).modulus(), 0b1011);
        assert_eq!(gf(4).modulus(), 0b10011);
        assert_eq!(gf(8).modulus(), 0x11b);
    }

    #[test]
    fn degree_three_sieve_picks_x3_x_1() {
        // The only degree-3 irreducibles are the two without roots.
        let no_roots: Vec<u64> = (8u64..16)
            .filter(|&m| {
                let p = F2Poly::from_u64(m);
                // root 0 <=> constant term 0; root 1 <=> even weight
                p.coeff(0) && m.count_ones() % 2 == 1
            })
            .collect();
        assert_eq!(no_roots, vec![0b1011, 0b1101]);
        assert_eq!(gf(3).modulus(), no_roots[0]);
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert_eq!(BinaryField::with_modulus(0b10101), Err(Error::Reducible(0b10101)));
        assert!(BinaryField::new(0).is_err());
        assert!(BinaryField::new(33).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let f = gf(4);
        let x = f.generator();
        assert_eq!(x.pow(4).unwrap(), f.elem(0b0011).unwrap());
        for a in f.elements() {
            assert!((a + a).is_zero());
        }
        assert_eq!(f.one().inv().unwrap(), f.one());
        assert_eq!(f.zero().inv(), Err(Error::DivisionByZero));
        let a = f.elem(7).unwrap();
        assert_eq!(a.pow(-3).unwrap() * a.pow(3).unwrap(), f.one());
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = gf(4).one();
        let b = gf(8).one();
        assert_eq!(a.try_add(&b), Err(Error::MixedFields));
        assert_eq!(a.try_mul(&b), Err(Error::MixedFields));
    }

    #[test]
    fn field_axioms_exhaustive_gf16() {
        let f = gf(4);
        for a in f.elements() {
            if !a.is_zero() {
                assert_eq!(a * a.inv().unwrap(), f.one());
            }
            for b in f.elements() {
                assert_eq!(a * b, b * a);
                assert_eq!((a + b).square(), a.square() + b.square());
                for c in f.elements() {
                    assert_eq!(a * (b + c), a * b + a * c);
                }
            }
        }
    }

    #[test]
    fn trace_examples() {
        let f = gf(4);
        assert_eq!(f.zero().absolute_trace(), 0);
        assert_eq!(f.one().absolute_trace(), 0);
        for k in 1..=12 {
            let f = gf(k);
            let zeros = f.elements().filter(|a| a.absolute_trace() == 0).count();
            assert_eq!(zeros as u64, f.size() / 2, "k={k}");
        }
    }

    #[test]
    fn artin_schreier_examples() {
        let f = gf(2);
        assert_eq!(solve_artin_schreier(f.zero()), Some(f.zero()));
        let omega = f.generator();
        assert_eq!(omega.absolute_trace(), 1);
        assert_eq!(solve_artin_schreier(omega), None);
        let f = gf(12);
        for b in f.elements() {
            match solve_artin_schreier(b) {
                Some(a) => {
                    assert_eq!(b.absolute_trace(), 0);
                    assert_eq!(a.square() + a, b);
                    assert_eq!(a.bits() & 1, 0);
                }
                None => assert_eq!(b.absolute_trace(), 1),
            }
        }
    }

    #[test]
    fn orders_and_primitivity() {
        let f = gf(4);
        assert_eq!(f.one().element_order().unwrap(), 1);
        assert!(!f.one().is_primitive().unwrap());
        let omega = gf(2).generator();
        assert_eq!(omega.element_order().unwrap(), 3);
        assert!(omega.is_primitive().unwrap());
        let primitive = f.elements().skip(1).filter(|a| a.is_primitive().unwrap()).count();
        // brute force: least d with a^d = 1
        let brute = f
            .elements()
            .skip(1)
            .filter(|a| (1..15).all(|d| a.pow(d).unwrap() != f.one()))
            .count();
        assert_eq!(primitive, 8);
        assert_eq!(brute, 8);
        assert_eq!(f.zero().element_order(), Err(Error::DivisionByZero));
        for a in gf(8).elements().skip(1) {
            assert_eq!(255 % a.element_order().unwrap(), 0);
        }
    }

    #[test]
    fn subfield_membership() {
        let f16 = gf(4);
        for j in [1, 2, 4] {
            assert!(f16.zero().in_subfield(j).unwrap());
            assert!(f16.one().in_subfield(j).unwrap());
        }
        assert_eq!(f16.elements().filter(|a| a.in_subfield(2).unwrap()).count(), 4);
        assert_eq!(gf(8).elements().filter(|a| a.in_subfield(4).unwrap()).count(), 16);
        assert_eq!(f16.one().in_subfield(3), Err(Error::NotASubfield { j: 3, k: 4 }));
    }

    #[test]
    fn f_examples() {
        let f = gf(4);
        assert!(f_apply(f.zero()).is_zero());
        assert!(f_apply(f.one()).is_zero());
        assert_eq!(f_image(&f, 1).len(), 8);
        let f256 = gf(8);
        let sub: BTreeSet<_> = f256.elements().filter(|a| a.in_subfield(4).unwrap()).collect();
        assert_eq!(f_image(&f256, 4), sub);
        assert_eq!(f_iterate(f.elem(5).unwrap(), 0), f.elem(5).unwrap());
    }

    #[test]
    fn f_power_identity_symbolic() {
        for i in 0..=4 {
            assert!(verify_f_power_identity(i).unwrap(), "i={i}");
        }
        assert!(verify_f_power_identity(5).is_err());
    }

    #[test]
    fn element_rendering_round_trips() {
        let f = gf(4);
        let e = f.elem(3).unwrap();
        assert_eq!(e.to_string(), "gf16:0x3");
        assert_eq!("gf16:0x3".parse::<FieldElement>().unwrap(), e);
        assert!("gf15:0x3".parse::<FieldElement>().is_err());
        assert!("gf16:0x13".parse::<FieldElement>().is_err());
        assert!("gf16:3".parse::<FieldElement>().is_err());
    }
}
