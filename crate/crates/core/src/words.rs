//! Free-group words: a small expression language, free reduction, and
//! evaluation into any group that implements [`EvaluationContext`].
//!
//! The commutator convention is `[a,b] = a^-1 b^-1 a b` throughout.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// A word in the free group, kept as an expression tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Word {
    /// The empty word.
    Identity,
    Generator(String),
    Inverse(Box<Word>),
    /// Exponent is never zero.
    Power(Box<Word>, i64),
    /// At least two children, none of which is itself a `Product`.
    Product(Vec<Word>),
    Commutator(Box<Word>, Box<Word>),
}

/// A group in which words can be evaluated.
///
/// Implementations must be usable from several threads at once, so they
/// should not carry interior mutable state.
pub trait EvaluationContext {
    type Element: Clone;

    fn identity(&self) -> Self::Element;
    /// `a` followed by `b`.
    fn compose(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn invert(&self, a: &Self::Element) -> Self::Element;

    /// Square-and-multiply; override when the group has something faster.
    fn power(&self, a: &Self::Element, e: i64) -> Self::Element {
        let mut base = if e < 0 { self.invert(a) } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.compose(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.compose(&base, &base);
            }
        }
        acc
    }

    fn commutator(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        let ai = self.invert(a);
        let bi = self.invert(b);
        let left = self.compose(&ai, &bi);
        let right = self.compose(a, b);
        self.compose(&left, &right)
    }
}

impl Word {
    pub fn gen(name: &str) -> Word {
        Word::Generator(name.to_string())
    }

    pub fn inverse(w: Word) -> Word {
        Word::Inverse(Box::new(w))
    }

    /// `w^e`; returns the identity word for `e == 0` rather than storing a
    /// zero exponent.
    pub fn pow(w: Word, e: i64) -> Word {
        if e == 0 {
            Word::Identity
        } else {
            Word::Power(Box::new(w), e)
        }
    }

    pub fn comm(a: Word, b: Word) -> Word {
        Word::Commutator(Box::new(a), Box::new(b))
    }

    /// Builds a product, flattening nested products. Zero factors give the
    /// identity word and one factor is returned unchanged.
    pub fn product(factors: Vec<Word>) -> Word {
        let mut flat = Vec::with_capacity(factors.len());
        for f in factors {
            match f {
                Word::Product(children) => flat.extend(children),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Word::Identity,
            1 => flat.pop().unwrap(),
            _ => Word::Product(flat),
        }
    }

    /// Left-normed commutator `[a, _m b] = [...[[a,b],b],...,b]`.
    pub fn left_normed(a: Word, b: &Word, m: usize) -> Word {
        (0..m).fold(a, |acc, _| Word::comm(acc, b.clone()))
    }

    pub fn generators(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators(&self, out: &mut BTreeSet<String>) {
        match self {
            Word::Identity => {}
            Word::Generator(g) => {
                out.insert(g.clone());
            }
            Word::Inverse(w) | Word::Power(w, _) => w.collect_generators(out),
            Word::Product(ws) => ws.iter().for_each(|w| w.collect_generators(out)),
            Word::Commutator(a, b) => {
                a.collect_generators(out);
                b.collect_generators(out);
            }
        }
    }

    /// Freely reduced syllable sequence `(generator, exponent)`, with
    /// adjacent syllables on distinct generators and no zero exponents.
    ///
    /// Powers of compound words are expanded, so this is meant for words of
    /// moderate expanded length.
    pub fn syllables(&self) -> Vec<(String, i64)> {
        let mut out = Vec::new();
        self.push_syllables(false, &mut out);
        out
    }

    fn push_syllables(&self, inverted: bool, out: &mut Vec<(String, i64)>) {
        match self {
            Word::Identity => {}
            Word::Generator(g) => push_syllable(out, g, if inverted { -1 } else { 1 }),
            Word::Inverse(w) => w.push_syllables(!inverted, out),
            Word::Power(w, e) => {
                if let Word::Generator(g) = w.as_ref() {
                    push_syllable(out, g, if inverted { -e } else { *e });
                } else {
                    let inner_inverted = inverted ^ (*e < 0);
                    for _ in 0..e.unsigned_abs() {
                        w.push_syllables(inner_inverted, out);
                    }
                }
            }
            Word::Product(ws) => {
                if inverted {
                    ws.iter().rev().for_each(|w| w.push_syllables(true, out));
                } else {
                    ws.iter().for_each(|w| w.push_syllables(false, out));
                }
            }
            Word::Commutator(a, b) => {
                // [a,b]^-1 = [b,a]
                let (a, b) = if inverted { (b, a) } else { (a, b) };
                a.push_syllables(true, out);
                b.push_syllables(true, out);
                a.push_syllables(false, out);
                b.push_syllables(false, out);
            }
        }
    }

    /// Freely reduced, flattened form: a product of generator powers.
    pub fn normalize(&self) -> Word {
        let factors = self
            .syllables()
            .into_iter()
            .map(|(g, e)| {
                if e == 1 {
                    Word::Generator(g)
                } else {
                    Word::Power(Box::new(Word::Generator(g)), e)
                }
            })
            .collect();
        Word::product(factors)
    }

    /// Evaluates the word homomorphically in `ctx`.
    pub fn evaluate<C: EvaluationContext>(
        &self,
        assignment: &HashMap<String, C::Element>,
        ctx: &C,
    ) -> Result<C::Element> {
        Ok(match self {
            Word::Identity => ctx.identity(),
            Word::Generator(g) => assignment
                .get(g)
                .cloned()
                .ok_or_else(|| Error::UnassignedGenerator(g.clone()))?,
            Word::Inverse(w) => ctx.invert(&w.evaluate(assignment, ctx)?),
            Word::Power(w, e) => ctx.power(&w.evaluate(assignment, ctx)?, *e),
            Word::Product(ws) => {
                let mut acc = ctx.identity();
                for w in ws {
                    acc = ctx.compose(&acc, &w.evaluate(assignment, ctx)?);
                }
                acc
            }
            Word::Commutator(a, b) => {
                let a = a.evaluate(assignment, ctx)?;
                let b = b.evaluate(assignment, ctx)?;
                ctx.commutator(&a, &b)
            }
        })
    }

    fn is_atomic(&self) -> bool {
        matches!(
            self,
            Word::Identity | Word::Generator(_) | Word::Commutator(_, _)
        )
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_atomic() {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }
}

fn push_syllable(out: &mut Vec<(String, i64)>, g: &str, e: i64) {
    if e == 0 {
        return;
    }
    if let Some(last) = out.last_mut() {
        if last.0 == g {
            last.1 += e;
            if last.1 == 0 {
                out.pop();
            }
            return;
        }
    }
    out.push((g.to_string(), e));
}

/// `[...[[w1,w2]^{e1}, w2]^{e2}, ...]^{ek}`.
pub fn build_iterated_commutator(w1: Word, w2: Word, exps: &[i64]) -> Result<Word> {
    if exps.is_empty() || exps.iter().any(|&e| e < 1) {
        return Err(Error::BadExponents);
    }
    Ok(exps.iter().fold(w1, |acc, &e| {
        Word::Power(Box::new(Word::comm(acc, w2.clone())), e)
    }))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Identity => write!(f, "1"),
            Word::Generator(g) => write!(f, "{g}"),
            Word::Inverse(w) => {
                w.fmt_atom(f)?;
                write!(f, "^-1")
            }
            Word::Power(w, e) => {
                w.fmt_atom(f)?;
                write!(f, "^{e}")
            }
            Word::Product(ws) => {
                for (i, w) in ws.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    if matches!(w, Word::Product(_)) {
                        write!(f, "({w})")?;
                    } else {
                        write!(f, "{w}")?;
                    }
                }
                Ok(())
            }
            Word::Commutator(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

impl std::str::FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        parse(s)
    }
}

/// Parses the word language:
///
/// ```text
/// word      := factor { factor }
/// factor    := atom [ '^' int ]
/// atom      := generator | '1' | '(' word ')' | '[' word ',' word ']'
///            | '[' word ',_' uint word ']'
/// generator := letter { digit }
/// ```
///
/// `[a,_m b]` is the left-normed commutator with `m` copies of `b`.
pub fn parse(text: &str) -> Result<Word> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err(match p.src[p.pos] {
            b')' | b']' => "unbalanced closing bracket",
            _ => "unexpected character",
        }));
    }
    Ok(w)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            None if matches!(c, b')' | b']') => Err(self.err("unbalanced brackets")),
            _ => Err(self.err(&format!("expected `{}`", c as char))),
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut factors = Vec::new();
        while let Some(c) = self.peek() {
            if matches!(c, b')' | b']' | b',') {
                break;
            }
            factors.push(self.factor()?);
        }
        if factors.is_empty() {
            return Err(self.err("expected a word"));
        }
        Ok(Word::product(factors))
    }

    fn factor(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.int()?;
            return Ok(Word::Power(Box::new(atom), e));
        }
        Ok(atom)
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.src.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let digits = self.uint_digits()?;
        let v: i64 = digits
            .parse()
            .map_err(|_| Error::Syntax { pos: start, msg: "exponent out of range".into() })?;
        if v == 0 {
            return Err(Error::Syntax { pos: start, msg: "exponent 0 is not allowed".into() });
        }
        Ok(if neg { -v } else { v })
    }

    fn uint_digits(&mut self) -> Result<&str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let left = self.word()?;
                self.expect(b',')?;
                if self.peek() == Some(b'_') {
                    self.pos += 1;
                    let start = self.pos;
                    let m: usize = self
                        .uint_digits()?
                        .parse()
                        .map_err(|_| Error::Syntax { pos: start, msg: "count out of range".into() })?;
                    let right = self.word()?;
                    self.expect(b']')?;
                    Ok(Word::left_normed(left, &right, m))
                } else {
                    let right = self.word()?;
                    self.expect(b']')?;
                    Ok(Word::comm(left, right))
                }
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::Identity)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Word::Generator(name.to_string()))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Largest number of assignments [`image_by_enumeration`] will evaluate.
pub const FULL_ENUMERATION_LIMIT: u128 = 100_000_000;

/// Image of `word` over every assignment of its generators to `elements`,
/// keyed by `key`. Each key keeps the value from the first assignment in
/// lexicographic order, so the result does not depend on `workers`.
pub fn image_by_enumeration<C, K, F>(
    word: &Word,
    ctx: &C,
    elements: &[C::Element],
    workers: usize,
    key: F,
) -> Result<BTreeMap<K, C::Element>>
where
    C: EvaluationContext + Sync,
    C::Element: Send + Sync,
    K: Ord + Send,
    F: Fn(&C::Element) -> K + Sync,
{
    use rayon::prelude::*;

    let names: Vec<String> = word.generators().into_iter().collect();
    let v = names.len() as u32;
    let n = elements.len() as u128;
    let total = n.checked_pow(v).unwrap_or(u128::MAX);
    if total > FULL_ENUMERATION_LIMIT {
        return Err(Error::SizeGuard(total, FULL_ENUMERATION_LIMIT));
    }
    let total = total as u64;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    let chunk = (total / (workers.max(1) as u64 * 16)).max(1);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let parts: Vec<Result<BTreeMap<K, (u64, C::Element)>>> = pool.install(|| {
        starts
            .par_iter()
            .map(|&start| {
                let mut out: BTreeMap<K, (u64, C::Element)> = BTreeMap::new();
                let mut assignment: HashMap<String, C::Element> = names
                    .iter()
                    .map(|g| (g.clone(), ctx.identity()))
                    .collect();
                for idx in start..(start + chunk).min(total) {
                    let mut rest = idx;
                    for g in names.iter().rev() {
                        let e = &elements[(rest % n as u64) as usize];
                        *assignment.get_mut(g).expect("present") = e.clone();
                        rest /= n as u64;
                    }
                    let value = word.evaluate(&assignment, ctx)?;
                    out.entry(key(&value)).or_insert((idx, value));
                }
                Ok(out)
            })
            .collect()
    });
    let mut merged: BTreeMap<K, (u64, C::Element)> = BTreeMap::new();
    for part in parts {
        for (k, (idx, value)) in part? {
            match merged.get(&k) {
                Some((old, _)) if *old <= idx => {}
                _ => {
                    merged.insert(k, (idx, value));
                }
            }
        }
    }
    Ok(merged.into_iter().map(|(k, (_, v))| (k, v)).collect())
}
