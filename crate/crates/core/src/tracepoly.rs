//! Trace polynomials of two-generator words.
//!
//! For `A, B` in SL(2, F) the trace of `w(A, B)` is an integer polynomial in
//! `s = tr A`, `t = tr B` and `u = tr AB`. [`trace_polynomial`] computes it
//! by reducing the word with three trace identities valid for determinant-one
//! 2x2 matrices:
//!
//! * `tr(W) = tr(W^-1)` and `tr(UV) = tr(VU)`,
//! * `tr(P g^n Q) = tr(g) tr(P g^(n-1) Q) - tr(P g^(n-2) Q)` (Cayley-Hamilton),
//! * `tr(gAgB) = tr(gA) tr(gB) - tr(A B^-1)`.
//!
//! Every rewrite strictly lowers `(letters, inverse letters)` in
//! lexicographic order, which is checked in debug builds.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::binaryfield::FieldElement;
use crate::error::{Error, Result};
use crate::words::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    S,
    T,
    U,
}

impl Var {
    fn index(self) -> usize {
        match self {
            Var::S => 0,
            Var::T => 1,
            Var::U => 2,
        }
    }
}

/// Sparse polynomial in `s, t, u` with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TriPoly {
    terms: BTreeMap<[u32; 3], BigInt>,
}

impl TriPoly {
    pub fn zero() -> Self {
        TriPoly::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut p = TriPoly::zero();
        p.add_term([0, 0, 0], BigInt::from(c));
        p
    }

    pub fn var(v: Var) -> Self {
        let mut exps = [0; 3];
        exps[v.index()] = 1;
        let mut p = TriPoly::zero();
        p.add_term(exps, BigInt::one());
        p
    }

    /// `c * s^i t^j u^k`.
    pub fn monomial(c: i64, exps: [u32; 3]) -> Self {
        let mut p = TriPoly::zero();
        p.add_term(exps, BigInt::from(c));
        p
    }

    fn add_term(&mut self, exps: [u32; 3], c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: [u32; 3]) -> BigInt {
        self.terms.get(&exps).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(TriPoly::constant(1), |acc, _| &acc * self)
    }

    /// Replaces `v` by `value` everywhere.
    pub fn substitute(&self, v: Var, value: &TriPoly) -> Self {
        let idx = v.index();
        let mut powers: Vec<TriPoly> = vec![TriPoly::constant(1)];
        let mut out = TriPoly::zero();
        for (exps, c) in &self.terms {
            let e = exps[idx] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = *exps;
            rest[idx] = 0;
            let mut base = TriPoly::zero();
            base.add_term(rest, c.clone());
            out = &out + &(&base * &powers[e]);
        }
        out
    }

    pub fn substitute_const(&self, v: Var, c: i64) -> Self {
        self.substitute(v, &TriPoly::constant(c))
    }

    /// Coefficients mapped into `{0, ..., p-1}`.
    pub fn reduce_mod(&self, p: u64) -> Self {
        let p = BigInt::from(p);
        let mut out = TriPoly::zero();
        for (exps, c) in &self.terms {
            out.add_term(*exps, c.mod_floor(&p));
        }
        out
    }

    /// Evaluates in a field of characteristic 2: integer coefficients are
    /// read modulo 2.
    pub fn eval_char2(&self, s: FieldElement, t: FieldElement, u: FieldElement) -> FieldElement {
        let field = s.field();
        let mut acc = field.zero();
        for (exps, c) in &self.terms {
            if c.is_even() {
                continue;
            }
            let term = s.pow(exps[0] as i64).unwrap()
                * t.pow(exps[1] as i64).unwrap()
                * u.pow(exps[2] as i64).unwrap();
            acc = acc + term;
        }
        acc
    }

    /// Terms in graded lexicographic order with `s > t > u`.
    fn sorted_terms(&self) -> Vec<([u32; 3], &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c)).collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }
}

impl Add for &TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        TriPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        let mut out = TriPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (exps, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let vars: Vec<String> = ["s", "t", "u"]
                .iter()
                .zip(exps)
                .filter(|(_, e)| *e > 0)
                .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TriPoly({self})")
    }
}

/// Syllable: generator (0 = x, 1 = y) and nonzero exponent.
type Syllable = (u8, i64);

fn push_merge(out: &mut Vec<Syllable>, (g, e): Syllable) {
    if e == 0 {
        return;
    }
    match out.last_mut() {
        Some(last) if last.0 == g => {
            last.1 += e;
            if last.1 == 0 {
                out.pop();
            }
        }
        _ => out.push((g, e)),
    }
}

/// Free and cyclic reduction.
fn reduce_cyclic(word: &[Syllable]) -> Vec<Syllable> {
    let mut out = Vec::with_capacity(word.len());
    for &s in word {
        push_merge(&mut out, s);
    }
    while out.len() >= 2 && out[0].0 == out[out.len() - 1].0 {
        let (_, e) = out.remove(0);
        let last = out.last_mut().unwrap();
        last.1 += e;
        if last.1 == 0 {
            out.pop();
        }
    }
    out
}

fn syllable_key(&(g, e): &Syllable) -> (u8, bool, u64) {
    (g, e < 0, e.unsigned_abs())
}

fn seq_less(a: &[Syllable], b: &[Syllable]) -> bool {
    a.iter().map(syllable_key).lt(b.iter().map(syllable_key))
}

/// Least rotation of the word or of its inverse.
fn canonical(word: &[Syllable]) -> Vec<Syllable> {
    let inverse: Vec<Syllable> = word.iter().rev().map(|&(g, e)| (g, -e)).collect();
    let n = word.len();
    let mut best: Vec<Syllable> = word.to_vec();
    for base in [word, &inverse[..]] {
        for r in 0..n {
            let cand: Vec<Syllable> = base[r..].iter().chain(&base[..r]).copied().collect();
            if seq_less(&cand, &best) {
                best = cand;
            }
        }
    }
    best
}

fn measure(word: &[Syllable]) -> (u64, u64) {
    let letters = word.iter().map(|s| s.1.unsigned_abs()).sum();
    let inverses = word.iter().filter(|s| s.1 < 0).map(|s| s.1.unsigned_abs()).sum();
    (letters, inverses)
}

/// Memoized trace-polynomial reducer. Memo keys are canonical cyclic words.
pub struct TraceReducer {
    memo: Option<HashMap<Vec<Syllable>, TriPoly>>,
}

impl Default for TraceReducer {
    fn default() -> Self {
        Self::new(true)
    }
}

impl TraceReducer {
    pub fn new(memoize: bool) -> Self {
        TraceReducer { memo: memoize.then(HashMap::new) }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.as_ref().map_or(0, HashMap::len)
    }

    pub fn trace_of(&mut self, w: &Word) -> Result<TriPoly> {
        let syllables = two_generator_syllables(w)?;
        Ok(self.trace(&syllables))
    }

    fn trace(&mut self, word: &[Syllable]) -> TriPoly {
        let word = reduce_cyclic(word);
        if word.is_empty() {
            return TriPoly::constant(2);
        }
        let key = canonical(&word);
        if let Some(hit) = self.memo.as_ref().and_then(|m| m.get(&key)) {
            return hit.clone();
        }
        let value = self.reduce(&key);
        if let Some(m) = self.memo.as_mut() {
            m.insert(key, value.clone());
        }
        value
    }

    fn child(&mut self, parent: &[Syllable], child: &[Syllable]) -> TriPoly {
        debug_assert!(
            measure(&reduce_cyclic(child)) < measure(parent),
            "trace reduction did not decrease: {parent:?} -> {child:?}"
        );
        self.trace(child)
    }

    fn reduce(&mut self, w: &[Syllable]) -> TriPoly {
        let gen_var = |g: u8| TriPoly::var(if g == 0 { Var::S } else { Var::T });

        if w.len() == 1 && w[0].1.abs() == 1 {
            return gen_var(w[0].0);
        }
        if w.len() == 2 && w.iter().all(|s| s.1 == 1) {
            return TriPoly::var(Var::U);
        }

        // Cayley-Hamilton on the first syllable with |exponent| >= 2.
        if let Some(i) = w.iter().position(|s| s.1.abs() >= 2) {
            let (g, e) = w[i];
            let step = e.signum();
            let mut once = w.to_vec();
            once[i].1 = e - step;
            let mut twice = w.to_vec();
            twice[i].1 = e - 2 * step;
            let a = self.child(w, &once);
            let b = self.child(w, &twice);
            return &(&gen_var(g) * &a) - &b;
        }

        // tr(P g^-1 Q) = tr(g) tr(PQ) - tr(P g Q)
        if let Some(i) = w.iter().position(|s| s.1 == -1) {
            let g = w[i].0;
            let mut dropped = w.to_vec();
            dropped.remove(i);
            let mut flipped = w.to_vec();
            flipped[i].1 = 1;
            let a = self.child(w, &dropped);
            let b = self.child(w, &flipped);
            return &(&gen_var(g) * &a) - &b;
        }

        // Positive word with a repeated letter: g A g B.
        let g = w[0].0;
        let j = (1..w.len())
            .find(|&j| w[j].0 == g)
            .expect("cyclically reduced positive word of length > 2 repeats a letter");
        let a_part = &w[1..j];
        let b_part = &w[j + 1..];
        let ga: Vec<Syllable> = std::iter::once((g, 1)).chain(a_part.iter().copied()).collect();
        let gb: Vec<Syllable> = std::iter::once((g, 1)).chain(b_part.iter().copied()).collect();
        let ab_inv: Vec<Syllable> = a_part
            .iter()
            .copied()
            .chain(b_part.iter().rev().map(|&(h, e)| (h, -e)))
            .collect();
        let p = self.child(w, &ga);
        let q = self.child(w, &gb);
        let r = self.child(w, &ab_inv);
        &(&p * &q) - &r
    }
}

fn two_generator_syllables(w: &Word) -> Result<Vec<Syllable>> {
    w.syllables()
        .into_iter()
        .map(|(g, e)| match g.as_str() {
            "x" => Ok((0, e)),
            "y" => Ok((1, e)),
            _ => Err(Error::NotTwoGenerator(g)),
        })
        .collect()
}

/// The trace polynomial `P_w(s, t, u)` of a word in `x, y`.
pub fn trace_polynomial(w: &Word) -> Result<TriPoly> {
    TraceReducer::default().trace_of(w)
}

/// Checks, modulo 2, that `tr([[v,x],x]) = T^2 + T s^2` where `T = tr([v,x])`.
pub fn verify_lemma_trace(v: &Word) -> Result<bool> {
    verify_lemma_trace_with(&mut TraceReducer::default(), v)
}

pub fn verify_lemma_trace_with(reducer: &mut TraceReducer, v: &Word) -> Result<bool> {
    let x = Word::gen("x");
    let inner = Word::comm(v.clone(), x.clone());
    let outer = Word::comm(inner.clone(), x);
    let t = reducer.trace_of(&inner)?;
    let lhs = reducer.trace_of(&outer)?;
    let s2 = TriPoly::var(Var::S).pow(2);
    let rhs = &(&t * &t) + &(&t * &s2);
    Ok((&lhs - &rhs).reduce_mod(2).is_zero())
}

/// `P_[[x,y],x]` at `s = 1, t = 0` modulo 2, as a polynomial in `c = u`.
pub fn theorem1_base_trace_polynomial() -> TriPoly {
    let w = Word::comm(Word::comm(Word::gen("x"), Word::gen("y")), Word::gen("x"));
    trace_polynomial(&w)
        .expect("two-generator word")
        .reduce_mod(2)
        .substitute_const(Var::S, 1)
        .substitute_const(Var::T, 0)
        .reduce_mod(2)
}

/// With `tr x = 1` and `tr y = 0`, `tr([[x,y],x]) = c^4 + c^2` where
/// `c = tr(xy)`; writing `u = c^2` this is `u + u^2`.
pub fn theorem1_base_trace_check() -> bool {
    let expected = &TriPoly::monomial(1, [0, 0, 4]) + &TriPoly::monomial(1, [0, 0, 2]);
    theorem1_base_trace_polynomial() == expected
}
