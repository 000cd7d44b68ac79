//! SL(2, q) for q = 2^k.
//!
//! In characteristic 2 the identity is the only central element, so every
//! non-identity element is either unipotent (trace 0, order 2) or
//! semisimple (trace nonzero). A semisimple element is split when its
//! eigenvalues lie in GF(q) (order dividing q-1, class size q(q+1)) and
//! non-split otherwise (order dividing q+1, class size q(q-1)). Semisimple
//! classes are determined by the trace.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith;
use crate::binaryfield::{BinaryField, FieldElement};
use crate::error::{Error, Result};
use crate::words::EvaluationContext;

/// Largest supported field degree; keeps the group exponent inside `u64`.
pub const MAX_SL2_DEGREE: u32 = 31;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2Matrix {
    field: BinaryField,
    /// `[a, b, c, d]` for `[[a, b], [c, d]]`, as raw field bits.
    e: [u64; 4],
}

impl Sl2Matrix {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<Self> {
        let field = a.field();
        if [b, c, d].iter().any(|x| x.field() != field) {
            return Err(Error::MixedFields);
        }
        if a * d + b * c != field.one() {
            return Err(Error::Determinant);
        }
        Ok(Sl2Matrix { field, e: [a.bits(), b.bits(), c.bits(), d.bits()] })
    }

    pub(crate) fn from_raw(field: BinaryField, e: [u64; 4]) -> Self {
        debug_assert_eq!(field.mul_raw(e[0], e[3]) ^ field.mul_raw(e[1], e[2]), 1);
        Sl2Matrix { field, e }
    }

    pub fn identity(field: BinaryField) -> Self {
        Sl2Matrix { field, e: [1, 0, 0, 1] }
    }

    /// `[[0, 1], [1, tau]]`, the companion matrix of `x^2 + tau x + 1`.
    pub fn companion(tau: FieldElement) -> Self {
        Sl2Matrix { field: tau.field(), e: [0, 1, 1, tau.bits()] }
    }

    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn raw(&self) -> [u64; 4] {
        self.e
    }

    pub fn entries(&self) -> [FieldElement; 4] {
        self.e.map(|x| self.field.elem(x).expect("reduced entry"))
    }

    pub fn trace(&self) -> FieldElement {
        self.field.elem(self.e[0] ^ self.e[3]).expect("reduced entry")
    }

    pub fn is_identity(&self) -> bool {
        self.e == [1, 0, 0, 1]
    }

    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let [a, b, c, d] = self.e;
        let [p, q, r, s] = other.e;
        Sl2Matrix {
            field: self.field,
            e: [
                f.mul_raw(a, p) ^ f.mul_raw(b, r),
                f.mul_raw(a, q) ^ f.mul_raw(b, s),
                f.mul_raw(c, p) ^ f.mul_raw(d, r),
                f.mul_raw(c, q) ^ f.mul_raw(d, s),
            ],
        }
    }

    /// `[[d, b], [c, a]]` (signs vanish in characteristic 2).
    #[inline]
    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.e;
        Sl2Matrix { field: self.field, e: [d, b, c, a] }
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inverse() } else { *self };
        let mut e = e.unsigned_abs();
        let mut acc = Sl2Matrix::identity(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn pow_u64(&self, e: u64) -> Self {
        let mut base = *self;
        let mut e = e;
        let mut acc = Sl2Matrix::identity(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse().mul(self).mul(g)
    }

    /// Applies the field automorphism `x -> x^2` to every entry.
    pub fn frobenius(&self) -> Self {
        Sl2Matrix { field: self.field, e: self.e.map(|x| self.field.square_raw(x)) }
    }
}

impl fmt::Display for Sl2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries();
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

impl fmt::Debug for Sl2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sl2Kind {
    Identity,
    Unipotent,
    Semisimple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Torus {
    Split,
    NonSplit,
}

/// Conjugacy class of an element of SL(2, 2^k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2ClassId {
    pub kind: Sl2Kind,
    pub trace: FieldElement,
}

impl fmt::Display for Sl2ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Sl2Kind::Identity => write!(f, "id"),
            Sl2Kind::Unipotent => write!(f, "unip"),
            Sl2Kind::Semisimple => write!(f, "ss(trace={})", self.trace),
        }
    }
}

/// Class up to automorphisms: the Frobenius orbit of the trace, keyed by
/// its least member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2EquivClassId {
    pub kind: Sl2Kind,
    pub orbit_min: FieldElement,
}

impl fmt::Display for Sl2EquivClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Sl2Kind::Identity => write!(f, "id"),
            Sl2Kind::Unipotent => write!(f, "unip"),
            Sl2Kind::Semisimple => write!(f, "ss(orbit={})", self.orbit_min),
        }
    }
}

/// Split or non-split torus of a nonzero trace: `x^2 + tau x + 1` has roots
/// in GF(q) iff the absolute trace of `1/tau` vanishes.
pub fn torus_of_trace(tau: FieldElement) -> Option<Torus> {
    let inv = tau.inv().ok()?;
    Some(if inv.absolute_trace() == 0 { Torus::Split } else { Torus::NonSplit })
}

fn check_q(q: u64) -> Result<u32> {
    if q < 2 || !q.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(q));
    }
    Ok(q.trailing_zeros())
}

/// `q (q - 1) (q + 1)`.
pub fn group_order(q: u64) -> Result<u128> {
    check_q(q)?;
    let q = q as u128;
    Ok(q * (q - 1) * (q + 1))
}

/// `2 (q^2 - 1)`, the least common multiple of element orders.
pub fn group_exponent(q: u64) -> Result<u128> {
    check_q(q)?;
    let q = q as u128;
    Ok(2 * (q * q - 1))
}

/// SL(2, 2^k) with its exponent factored once.
#[derive(Clone, Debug)]
pub struct Sl2Group {
    field: BinaryField,
    exponent: u64,
    exponent_primes: Vec<u64>,
}

impl Sl2Group {
    pub fn new(field: BinaryField) -> Result<Self> {
        let k = field.degree();
        if k > MAX_SL2_DEGREE {
            return Err(Error::Unsupported(format!("SL(2, 2^{k})")));
        }
        let q = field.size();
        let mut primes = vec![2];
        primes.extend(arith::mersenne_prime_factors(k));
        primes.extend(arith::prime_factors(q + 1));
        primes.sort_unstable();
        primes.dedup();
        Ok(Sl2Group { field, exponent: 2 * (q * q - 1), exponent_primes: primes })
    }

    pub fn of_size(q: u64) -> Result<Self> {
        Self::new(BinaryField::of_size(q)?)
    }

    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn q(&self) -> u64 {
        self.field.size()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> u128 {
        group_order(self.q()).expect("q is a power of two")
    }

    pub fn element_order(&self, m: &Sl2Matrix) -> u64 {
        arith::order_from_exponent(self.exponent, &self.exponent_primes, |d| {
            m.pow_u64(d).is_identity()
        })
    }

    pub fn class_id(&self, m: &Sl2Matrix) -> Sl2ClassId {
        class_id(m)
    }

    /// Torus type of a semisimple element, `None` otherwise.
    pub fn torus(&self, m: &Sl2Matrix) -> Option<Torus> {
        torus_of_trace(m.trace())
    }

    /// Every element, trace by trace.
    pub fn elements(&self) -> impl Iterator<Item = Sl2Matrix> + '_ {
        self.field.elements().flat_map(move |tau| elements_with_trace(tau))
    }

    /// First element of order `n` in scan order: traces ascending, then
    /// [`elements_with_trace`] order. `None` when no element has that order.
    pub fn find_element_of_order(&self, n: u64) -> Option<Sl2Matrix> {
        if n == 0 || self.exponent % n != 0 {
            return None;
        }
        for tau in self.field.elements() {
            if tau.is_zero() {
                if let Some(m) = elements_with_trace(tau).find(|m| self.element_order(m) == n) {
                    return Some(m);
                }
                continue;
            }
            // all elements of a nonzero trace are conjugate
            let m = elements_with_trace(tau).next().expect("nonempty");
            if self.element_order(&m) == n {
                return Some(m);
            }
        }
        None
    }

    /// Traces of the elements of order `m > 2`, grouped into Frobenius
    /// orbits, orbits sorted by least member.
    pub fn trace_orbits_of_order(&self, m: u64) -> Vec<BTreeSet<FieldElement>> {
        let mut traces = BTreeSet::new();
        for tau in self.field.elements().skip(1) {
            let c = Sl2Matrix::companion(tau);
            if c.pow_u64(m).is_identity() && self.element_order(&c) == m {
                traces.insert(tau);
            }
        }
        let mut orbits = Vec::new();
        while let Some(&t) = traces.iter().next() {
            let orbit = t.frobenius_orbit();
            for x in &orbit {
                traces.remove(x);
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// The two Frobenius orbits of order-17 traces, the first containing an
    /// element of multiplicative order 15 (a generator of GF(16)^*).
    pub fn order17_trace_orbits(&self) -> Result<(BTreeSet<FieldElement>, BTreeSet<FieldElement>)> {
        let mut orbits = self.trace_orbits_of_order(17);
        if orbits.len() != 2 || orbits.iter().any(|o| o.len() != 4) {
            return Err(Error::Unsupported(format!(
                "expected two orbits of four order-17 traces in SL(2,{}), found {:?}",
                self.q(),
                orbits.iter().map(BTreeSet::len).collect::<Vec<_>>()
            )));
        }
        let has_generator = |o: &BTreeSet<FieldElement>| {
            o.iter().any(|t| t.element_order().ok() == Some(15))
        };
        if !has_generator(&orbits[0]) && has_generator(&orbits[1]) {
            orbits.swap(0, 1);
        }
        let second = orbits.pop().unwrap();
        let first = orbits.pop().unwrap();
        Ok((first, second))
    }
}

impl EvaluationContext for Sl2Group {
    type Element = Sl2Matrix;

    fn identity(&self) -> Sl2Matrix {
        Sl2Matrix::identity(self.field)
    }
    fn compose(&self, a: &Sl2Matrix, b: &Sl2Matrix) -> Sl2Matrix {
        a.mul(b)
    }
    fn invert(&self, a: &Sl2Matrix) -> Sl2Matrix {
        a.inverse()
    }
    fn power(&self, a: &Sl2Matrix, e: i64) -> Sl2Matrix {
        a.pow(e)
    }
}

pub fn class_id(m: &Sl2Matrix) -> Sl2ClassId {
    let trace = m.trace();
    let kind = if m.is_identity() {
        Sl2Kind::Identity
    } else if trace.is_zero() {
        Sl2Kind::Unipotent
    } else {
        Sl2Kind::Semisimple
    };
    Sl2ClassId { kind, trace }
}

/// Classification with the order computed from the factored exponent.
pub fn classify(m: &Sl2Matrix) -> Result<(Sl2ClassId, u64)> {
    let g = Sl2Group::new(m.field())?;
    Ok((class_id(m), g.element_order(m)))
}

pub fn element_order(m: &Sl2Matrix) -> Result<u64> {
    Ok(Sl2Group::new(m.field())?.element_order(m))
}

pub fn equiv_class_id(m: &Sl2Matrix) -> Sl2EquivClassId {
    let id = class_id(m);
    Sl2EquivClassId {
        kind: id.kind,
        orbit_min: *id.trace.frobenius_orbit().iter().next().expect("orbit is nonempty"),
    }
}

/// Number of conjugacy classes of elements of order `m`: `phi(m) / 2`.
pub fn count_classes_of_order(q: u64, m: u64) -> Result<u64> {
    check_q(q)?;
    if m <= 2 || ((q - 1) % m != 0 && (q + 1) % m != 0) {
        return Err(Error::OrderNotInTorus(m));
    }
    Ok(arith::euler_phi(m) / 2)
}

/// Number of classes up to automorphisms: `phi(m) / (2j)` with `j` least
/// such that `2^j = +-1 (mod m)`.
pub fn count_equiv_classes_of_order(q: u64, m: u64) -> Result<u64> {
    let classes = count_classes_of_order(q, m)?;
    let mut j = 1;
    let mut p = 2 % m;
    while p != 1 && p != m - 1 {
        p = p * 2 % m;
        j += 1;
    }
    Ok(classes / j)
}

/// Uniformly random element of SL(2, q).
pub fn random_element<R: rand::Rng + ?Sized>(field: BinaryField, rng: &mut R) -> Sl2Matrix {
    let q = field.size();
    let r = rng.gen_range(0..q * q * q - q);
    let with_a = (q - 1) * q * q;
    if r < with_a {
        let a = 1 + r / (q * q);
        let (b, c) = ((r / q) % q, r % q);
        let d = field.mul_raw(1 ^ field.mul_raw(b, c), field.inv_raw(a));
        Sl2Matrix::from_raw(field, [a, b, c, d])
    } else {
        let r = r - with_a;
        let b = 1 + r / q;
        let d = r % q;
        Sl2Matrix::from_raw(field, [0, b, field.inv_raw(b), d])
    }
}

/// Every matrix of trace `tau`, each once: for each `a` ascending,
/// `d = tau + a`, and all factorizations `b c = 1 + a d`.
#[derive(Clone, Debug)]
pub struct TraceStream {
    field: BinaryField,
    tau: u64,
    a: u64,
    a_end: u64,
    j: u64,
}

pub fn elements_with_trace(tau: FieldElement) -> TraceStream {
    let field = tau.field();
    TraceStream { field, tau: tau.bits(), a: 0, a_end: field.size(), j: 0 }
}

impl TraceStream {
    /// Restricts to `a` in `start..end`, for partitioned scans.
    pub fn with_a_range(mut self, start: u64, end: u64) -> Self {
        self.a = start;
        self.a_end = end.min(self.field.size());
        self.j = 0;
        self
    }
}

impl Iterator for TraceStream {
    type Item = Sl2Matrix;

    fn next(&mut self) -> Option<Sl2Matrix> {
        let f = self.field;
        let q = f.size();
        while self.a < self.a_end {
            let a = self.a;
            let d = self.tau ^ a;
            let p = 1 ^ f.mul_raw(a, d);
            let (per_a, item) = if p != 0 {
                let b = self.j + 1;
                (q - 1, (b, f.mul_raw(p, f.inv_raw(b))))
            } else if self.j < q {
                (2 * q - 1, (0, self.j))
            } else {
                (2 * q - 1, (self.j - q + 1, 0))
            };
            if self.j < per_a {
                self.j += 1;
                return Some(Sl2Matrix::from_raw(f, [a, item.0, item.1, d]));
            }
            self.a += 1;
            self.j = 0;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn gf(k: u32) -> BinaryField {
        BinaryField::new(k).unwrap()
    }

    #[test]
    fn order_and_exponent_formulas() {
        assert_eq!(group_order(16).unwrap(), 4080);
        assert_eq!(group_exponent(16).unwrap(), 510);
        assert_eq!(group_order(2).unwrap(), 6);
        assert_eq!(group_exponent(2).unwrap(), 6);
        assert_eq!(group_order(256).unwrap(), 16_776_960);
        assert_eq!(group_exponent(256).unwrap(), 131_070);
        assert!(group_order(12).is_err());
    }

    #[test]
    fn matrix_basics() {
        let f = gf(4);
        let e = |b| f.elem(b).unwrap();
        assert_eq!(Sl2Matrix::new(e(1), e(1), e(0), e(1)).unwrap().trace(), f.zero());
        assert_eq!(Sl2Matrix::new(e(1), e(1), e(1), e(1)), Err(Error::Determinant));
        let d = (e(5) * e(7) + f.one()) * e(3).inv().unwrap();
        let m = Sl2Matrix::new(e(3), e(5), e(7), d).unwrap();
        assert!(m.mul(&m.inverse()).is_identity());
        assert_eq!(m.pow(510), Sl2Matrix::identity(f));
        assert_eq!(m.pow(-2), m.inverse().mul(&m.inverse()));
        assert_eq!(Sl2Matrix::identity(f).to_string(), "[[gf16:0x1,gf16:0x0],[gf16:0x0,gf16:0x1]]");
    }

    #[test]
    fn trace_stream_counts() {
        let f16 = gf(4);
        assert_eq!(elements_with_trace(f16.zero()).count(), 256);
        assert_eq!(elements_with_trace(f16.one()).count(), 272);
        assert_eq!(elements_with_trace(gf(2).zero()).count(), 16);
        let all: BTreeSet<_> = Sl2Group::new(gf(2)).unwrap().elements().collect();
        assert_eq!(all.len(), 60);
        let parts: Vec<_> = (0..4)
            .flat_map(|i| elements_with_trace(f16.one()).with_a_range(i * 4, i * 4 + 4))
            .collect();
        assert_eq!(parts, elements_with_trace(f16.one()).collect::<Vec<_>>());
    }

    #[test]
    fn exhaustive_classification_of_sl2_16() {
        let g = Sl2Group::of_size(16).unwrap();
        let mut sizes: BTreeMap<Sl2ClassId, u64> = BTreeMap::new();
        let mut orders: BTreeMap<Sl2ClassId, BTreeSet<u64>> = BTreeMap::new();
        for m in g.elements() {
            assert!(m.entries()[0] * m.entries()[3] + m.entries()[1] * m.entries()[2] == g.field().one());
            let id = class_id(&m);
            let o = g.element_order(&m);
            assert_eq!(g.exponent() % o, 0);
            *sizes.entry(id).or_default() += 1;
            orders.entry(id).or_default().insert(o);
        }
        assert_eq!(sizes.values().sum::<u64>(), 4080);
        let unip = sizes.iter().find(|(k, _)| k.kind == Sl2Kind::Unipotent).unwrap();
        assert_eq!(*unip.1, 255);
        for (id, size) in &sizes {
            let os = &orders[id];
            assert_eq!(os.len(), 1, "order is a class invariant");
            let o = *os.iter().next().unwrap();
            match (id.kind, torus_of_trace(id.trace)) {
                (Sl2Kind::Semisimple, Some(Torus::Split)) => {
                    assert_eq!(*size, 272);
                    assert_eq!(15 % o, 0);
                }
                (Sl2Kind::Semisimple, Some(Torus::NonSplit)) => {
                    assert_eq!(*size, 240);
                    assert_eq!(17 % o, 0);
                }
                (Sl2Kind::Identity, _) => assert_eq!(o, 1),
                (Sl2Kind::Unipotent, _) => assert_eq!(o, 2),
                _ => unreachable!(),
            }
        }
        let order17 = orders.values().filter(|o| o.contains(&17)).count();
        assert_eq!(order17 as u64, count_classes_of_order(16, 17).unwrap());
        let order5 = orders.values().filter(|o| o.contains(&5)).count();
        assert_eq!(order5 as u64, count_classes_of_order(16, 5).unwrap());
    }

    #[test]
    fn class_counts() {
        assert_eq!(count_classes_of_order(16, 17).unwrap(), 8);
        assert_eq!(count_equiv_classes_of_order(16, 17).unwrap(), 2);
        assert_eq!(count_classes_of_order(16, 3).unwrap(), 1);
        assert_eq!(count_classes_of_order(16, 5).unwrap(), 2);
        assert_eq!(count_equiv_classes_of_order(16, 5).unwrap(), 1);
        assert!(count_classes_of_order(16, 7).is_err());
        assert!(count_classes_of_order(16, 2).is_err());
    }

    #[test]
    fn conjugation_invariance() {
        let g = Sl2Group::of_size(16).unwrap();
        let m = g.find_element_of_order(17).unwrap();
        let elems: Vec<_> = g.elements().step_by(37).collect();
        for x in &elems {
            assert_eq!(class_id(&m.conjugate_by(x)), class_id(&m));
            assert_eq!(equiv_class_id(&m.frobenius().conjugate_by(x)), equiv_class_id(&m));
        }
        assert_eq!(equiv_class_id(&m), equiv_class_id(&m.pow(2)));
        assert_ne!(class_id(&m), class_id(&m.pow(2)));
    }

    #[test]
    fn element_search() {
        let g = Sl2Group::of_size(16).unwrap();
        let m = g.find_element_of_order(17).unwrap();
        assert_eq!(g.element_order(&m), 17);
        assert_eq!(torus_of_trace(m.trace()), Some(Torus::NonSplit));
        assert!(g.find_element_of_order(7).is_none());
        assert!(g.find_element_of_order(1).unwrap().is_identity());
        assert_eq!(g.element_order(&g.find_element_of_order(2).unwrap()), 2);
        let (first, second) = g.order17_trace_orbits().unwrap();
        assert!(first.contains(&m.trace()) || second.contains(&m.trace()));
        assert!(first.iter().any(|t| t.is_primitive().unwrap()));
    }
}
