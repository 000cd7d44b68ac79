//! Permutations on at most [`MAX_DEGREE`] points, cycle types, and
//! Alt(n)-conjugacy classes.
//!
//! Points are stored 0-based and rendered 1-based. Products act on the
//! right: `p.compose(&q)` applies `p` first, then `q`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use arrayvec::ArrayVec;

use crate::error::{Error, Result};
use crate::words::EvaluationContext;

pub const MAX_DEGREE: usize = 32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: u8,
    img: [u8; MAX_DEGREE],
}

fn check_degree(n: usize) -> Result<()> {
    if n > MAX_DEGREE {
        Err(Error::PermDegree(n))
    } else {
        Ok(())
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self> {
        check_degree(n)?;
        Ok(Self::identity_unchecked(n))
    }

    fn identity_unchecked(n: usize) -> Self {
        let mut img = [0u8; MAX_DEGREE];
        for (i, v) in img.iter_mut().enumerate() {
            *v = i as u8;
        }
        Permutation { n: n as u8, img }
    }

    /// From a 0-based image list.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        check_degree(n)?;
        let mut seen = [false; MAX_DEGREE];
        let mut p = Self::identity_unchecked(n);
        for (i, &v) in images.iter().enumerate() {
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[v] = true;
            p.img[i] = v as u8;
        }
        Ok(p)
    }

    /// From 1-based disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        check_degree(n)?;
        let mut p = Self::identity_unchecked(n);
        let mut seen = [false; MAX_DEGREE];
        for cycle in cycles {
            for (i, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > n || seen[pt - 1] {
                    return Err(Error::InvalidPermutation(format!("bad cycle {cycle:?}")));
                }
                seen[pt - 1] = true;
                let next = cycle[(i + 1) % cycle.len()];
                p.img[pt - 1] = (next - 1) as u8;
            }
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.n as usize
    }

    /// Image of 0-based point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.img[..self.n as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images().iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// `self` then `other`, without the degree check.
    #[inline]
    pub fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut out = *self;
        for i in 0..self.n as usize {
            out.img[i] = other.img[self.img[i] as usize];
        }
        out
    }

    #[inline]
    pub fn inverse(&self) -> Self {
        let mut out = *self;
        for i in 0..self.n as usize {
            out.img[self.img[i] as usize] = i as u8;
        }
        out
    }

    /// `self^e`, computed cycle by cycle with `e` reduced modulo each
    /// cycle length.
    pub fn power(&self, e: i64) -> Self {
        let n = self.n as usize;
        let mut out = *self;
        let mut seen = [false; MAX_DEGREE];
        let mut cycle = [0u8; MAX_DEGREE];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle[len] = x as u8;
                len += 1;
                x = self.img[x] as usize;
            }
            let shift = e.rem_euclid(len as i64) as usize;
            for i in 0..len {
                out.img[cycle[i] as usize] = cycle[(i + shift) % len];
            }
        }
        out
    }

    /// `a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, other: &Self) -> Self {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    /// Nontrivial cycles, each listed from its least point, ordered by
    /// least point. 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n as usize;
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.img[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.img[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: ArrayVec<u8, 16> = self.cycles().iter().map(|c| c.len() as u8).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    pub fn is_even(&self) -> bool {
        self.cycle_type().is_even()
    }

    pub fn support(&self) -> usize {
        self.images().iter().enumerate().filter(|(i, &v)| *i != v as usize).count()
    }

    /// Conjugate `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse().then(self).then(g)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} on {}", self.n)
    }
}

/// Parses cycle notation such as `(1 2 3)(4 5)` on `n` points.
pub fn parse_cycles(n: usize, text: &str) -> Result<Permutation> {
    let bad = || Error::InvalidPermutation(text.to_string());
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(bad)?;
        let (body, tail) = open.split_once(')').ok_or_else(bad)?;
        let pts: Vec<usize> = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if !pts.is_empty() {
            cycles.push(pts);
        }
        rest = tail.trim_start();
    }
    let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
    Permutation::from_cycles(n, &refs)
}

/// Multiset of cycle lengths >= 2, sorted descending. Fixed points are
/// implicit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CycleType(ArrayVec<u8, 16>);

impl CycleType {
    pub fn new(parts: &[usize]) -> Result<Self> {
        let text = || parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("+");
        if parts.len() > 16 || parts.iter().any(|&p| p < 2 || p > MAX_DEGREE) {
            return Err(Error::BadCycleType(text()));
        }
        let mut v: ArrayVec<u8, 16> = parts.iter().map(|&p| p as u8).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType(v))
    }

    pub fn identity() -> Self {
        CycleType::default()
    }

    pub fn parts(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&p| p as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> usize {
        self.parts().sum()
    }

    pub fn is_even(&self) -> bool {
        self.parts().filter(|p| p % 2 == 0).count() % 2 == 0
    }

    /// Whether the Sym(n)-class splits into two Alt(n)-classes: all cycle
    /// lengths, counting fixed points as 1-cycles, odd and distinct.
    pub fn splits_in_alt(&self, n: usize) -> bool {
        if self.is_identity() || self.support() > n {
            return false;
        }
        let fixed = n - self.support();
        if fixed > 1 {
            return false;
        }
        self.parts().all(|p| p % 2 == 1) && self.0.windows(2).all(|w| w[0] != w[1])
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.parts().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleType({self})")
    }
}

impl FromStr for CycleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s == "e" {
            return Ok(CycleType::identity());
        }
        let parts: Vec<usize> = s
            .split('+')
            .map(|p| p.trim().parse().map_err(|_| Error::BadCycleType(s.to_string())))
            .collect::<Result<_>>()?;
        CycleType::new(&parts)
    }
}

/// Alt(n)-conjugacy class: a cycle type plus, for split types, which half.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AltClassId {
    pub cycle_type: CycleType,
    pub half: Option<u8>,
}

impl AltClassId {
    pub fn identity() -> Self {
        AltClassId { cycle_type: CycleType::identity(), half: None }
    }

    /// All Alt(n)-classes making up the Sym(n)-class of `ct`.
    pub fn all_of(n: usize, ct: &CycleType) -> Vec<AltClassId> {
        if ct.splits_in_alt(n) {
            (0..2).map(|h| AltClassId { cycle_type: ct.clone(), half: Some(h) }).collect()
        } else {
            vec![AltClassId { cycle_type: ct.clone(), half: None }]
        }
    }
}

impl fmt::Display for AltClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycle_type.is_identity() {
            return write!(f, "e");
        }
        match self.half {
            Some(h) => write!(f, "{}/{h}", self.cycle_type),
            None => write!(f, "{}", self.cycle_type),
        }
    }
}

fn parity_of_images(img: &[u8]) -> u8 {
    let n = img.len();
    let mut seen = [false; MAX_DEGREE];
    let mut cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = img[x] as usize;
        }
    }
    ((n - cycles) % 2) as u8
}

/// Alt(n)-class of `p`. For split types the half is the parity of a
/// conjugator from `canonical_rep(n, type, 0)` to `p`.
pub fn alt_class_id(p: &Permutation) -> AltClassId {
    let n = p.degree();
    let mut seen = [false; MAX_DEGREE];
    // (length, start offset into `order`)
    let mut cycles: ArrayVec<(u8, u8), MAX_DEGREE> = ArrayVec::new();
    let mut order = [0u8; MAX_DEGREE];
    let mut len_total = 0usize;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let begin = len_total;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            order[len_total] = x as u8;
            len_total += 1;
            x = p.img[x] as usize;
        }
        cycles.push(((len_total - begin) as u8, begin as u8));
    }
    let mut parts: ArrayVec<u8, 16> = cycles.iter().filter(|c| c.0 >= 2).map(|c| c.0).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    let cycle_type = CycleType(parts);
    if !cycle_type.splits_in_alt(n) {
        return AltClassId { cycle_type, half: None };
    }
    // Distinct lengths: sorting by length descending is canonical.
    cycles.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    let mut sigma = [0u8; MAX_DEGREE];
    let mut pos = 0;
    for &(len, begin) in &cycles {
        for j in 0..len as usize {
            sigma[pos] = order[begin as usize + j];
            pos += 1;
        }
    }
    AltClassId { cycle_type, half: Some(parity_of_images(&sigma[..n])) }
}

/// Cycles on consecutive points in descending length order; half 1 is
/// half 0 conjugated by the transposition of the first two points.
pub fn canonical_rep(n: usize, ct: &CycleType, half: u8) -> Result<Permutation> {
    check_degree(n)?;
    if ct.support() > n {
        return Err(Error::SupportExceeds { ct: ct.to_string(), n });
    }
    let mut p = Permutation::identity_unchecked(n);
    let mut offset = 0;
    for len in ct.parts() {
        for j in 0..len {
            p.img[offset + j] = (offset + (j + 1) % len) as u8;
        }
        offset += len;
    }
    if half == 1 && n >= 2 {
        let mut t = Permutation::identity_unchecked(n);
        t.img.swap(0, 1);
        p = p.conjugate_by(&t);
    }
    Ok(p)
}

/// Size of the Sym(n)-class of `ct`.
pub fn class_size(n: usize, ct: &CycleType) -> Result<u128> {
    let s = ct.support();
    if s > n {
        return Err(Error::SupportExceeds { ct: ct.to_string(), n });
    }
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    let mut denom = fact(n - s);
    let parts: Vec<usize> = ct.parts().collect();
    let mut i = 0;
    while i < parts.len() {
        let l = parts[i];
        let mult = parts[i..].iter().take_while(|&&p| p == l).count();
        denom *= (l as u128).pow(mult as u32) * fact(mult);
        i += mult;
    }
    Ok(fact(n) / denom)
}

/// Even cycle types fitting on `n` points (identity included), in
/// descending lexicographic order of parts.
pub fn even_cycle_types(n: usize) -> Vec<CycleType> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<CycleType>) {
        let ct = CycleType::new(cur).expect("valid parts");
        if ct.is_even() {
            out.push(ct);
        }
        for l in (2..=max.min(rem)).rev() {
            cur.push(l);
            rec(rem - l, l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All permutations of type `ct` on exactly `s = support(ct)` points
/// `0..s`, flattened `s` bytes per pattern.
fn full_support_patterns(ct: &CycleType) -> Vec<u8> {
    let s = ct.support();
    let mut out = Vec::new();
    let mut img = vec![0u8; s];
    let mut used = vec![false; s];
    let mut lengths: Vec<usize> = ct.parts().collect();
    fn place(img: &mut [u8], used: &mut [bool], lengths: &mut Vec<usize>, out: &mut Vec<u8>) {
        let Some(first) = used.iter().position(|u| !u) else {
            out.extend_from_slice(img);
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for idx in 0..lengths.len() {
            let l = lengths[idx];
            if tried.contains(&l) {
                continue;
            }
            tried.push(l);
            lengths.remove(idx);
            used[first] = true;
            let mut cycle = vec![first];
            extend_cycle(img, used, lengths, out, &mut cycle, l);
            used[first] = false;
            lengths.insert(idx, l);
        }
    }
    fn extend_cycle(
        img: &mut [u8],
        used: &mut [bool],
        lengths: &mut Vec<usize>,
        out: &mut Vec<u8>,
        cycle: &mut Vec<usize>,
        l: usize,
    ) {
        if cycle.len() == l {
            for i in 0..l {
                img[cycle[i]] = cycle[(i + 1) % l] as u8;
            }
            place(img, used, lengths, out);
            return;
        }
        for x in 0..used.len() {
            if used[x] {
                continue;
            }
            used[x] = true;
            cycle.push(x);
            extend_cycle(img, used, lengths, out, cycle, l);
            cycle.pop();
            used[x] = false;
        }
    }
    place(&mut img, &mut used, &mut lengths, &mut out);
    out
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Every permutation of one cycle type on `n` points, in a fixed order:
/// support sets in lexicographic order, and within each support a fixed
/// list of arrangements. Indexable, so disjoint index ranges can be
/// consumed independently.
#[derive(Clone)]
pub struct ClassStream {
    n: usize,
    support: usize,
    patterns: Arc<Vec<u8>>,
    pattern_count: u64,
    combo_count: u64,
}

impl ClassStream {
    pub fn new(n: usize, ct: &CycleType) -> Result<Self> {
        check_degree(n)?;
        if ct.support() > n {
            return Err(Error::SupportExceeds { ct: ct.to_string(), n });
        }
        if !ct.is_even() {
            return Err(Error::OddCycleType(ct.to_string()));
        }
        let support = ct.support();
        let patterns = full_support_patterns(ct);
        let pattern_count = if support == 0 { 1 } else { (patterns.len() / support) as u64 };
        Ok(ClassStream {
            n,
            support,
            patterns: Arc::new(patterns),
            pattern_count,
            combo_count: binomial(n, support),
        })
    }

    pub fn len(&self) -> u64 {
        self.pattern_count * self.combo_count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn unrank_combo(&self, mut r: u64) -> [u8; MAX_DEGREE] {
        let mut combo = [0u8; MAX_DEGREE];
        let mut next = 0;
        for i in 0..self.support {
            loop {
                let c = binomial(self.n - next - 1, self.support - i - 1);
                if r < c {
                    break;
                }
                r -= c;
                next += 1;
            }
            combo[i] = next as u8;
            next += 1;
        }
        combo
    }

    fn advance_combo(&self, combo: &mut [u8; MAX_DEGREE]) {
        let (n, s) = (self.n, self.support);
        let mut i = s;
        while i > 0 {
            i -= 1;
            if (combo[i] as usize) < n - s + i {
                combo[i] += 1;
                for j in i + 1..s {
                    combo[j] = combo[j - 1] + 1;
                }
                return;
            }
        }
    }

    #[inline]
    fn build(&self, combo: &[u8; MAX_DEGREE], pattern: u64) -> Permutation {
        let mut p = Permutation::identity_unchecked(self.n);
        let s = self.support;
        let pat = &self.patterns[pattern as usize * s..(pattern as usize + 1) * s];
        for i in 0..s {
            p.img[combo[i] as usize] = combo[pat[i] as usize];
        }
        p
    }

    pub fn get(&self, index: u64) -> Option<Permutation> {
        if index >= self.len() {
            return None;
        }
        let combo = self.unrank_combo(index / self.pattern_count);
        Some(self.build(&combo, index % self.pattern_count))
    }

    pub fn iter(&self) -> ClassIter<'_> {
        self.iter_range(0, self.len())
    }

    /// Elements with index in `start..end`.
    pub fn iter_range(&self, start: u64, end: u64) -> ClassIter<'_> {
        let end = end.min(self.len());
        let start = start.min(end);
        ClassIter {
            stream: self,
            combo: self.unrank_combo(if start < end { start / self.pattern_count } else { 0 }),
            pattern: if self.pattern_count == 0 { 0 } else { start % self.pattern_count },
            remaining: end - start,
        }
    }
}

pub struct ClassIter<'a> {
    stream: &'a ClassStream,
    combo: [u8; MAX_DEGREE],
    pattern: u64,
    remaining: u64,
}

impl Iterator for ClassIter<'_> {
    type Item = Permutation;

    #[inline]
    fn next(&mut self) -> Option<Permutation> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let p = self.stream.build(&self.combo, self.pattern);
        self.pattern += 1;
        if self.pattern == self.stream.pattern_count && self.remaining > 0 {
            self.pattern = 0;
            self.stream.advance_combo(&mut self.combo);
        }
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}

pub fn stream_class(n: usize, ct: &CycleType) -> Result<ClassStream> {
    ClassStream::new(n, ct)
}

/// Every element of Alt(n), class by class.
pub fn alt_elements(n: usize) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    for ct in even_cycle_types(n) {
        out.extend(ClassStream::new(n, &ct)?.iter());
    }
    Ok(out)
}

/// Alt(n) (or any permutation group on n points) as an evaluation context.
#[derive(Clone, Copy, Debug)]
pub struct PermGroup {
    pub n: usize,
}

impl EvaluationContext for PermGroup {
    type Element = Permutation;

    fn identity(&self) -> Permutation {
        Permutation::identity_unchecked(self.n)
    }
    fn compose(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.then(b)
    }
    fn invert(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }
    fn power(&self, a: &Permutation, e: i64) -> Permutation {
        a.power(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeMap, HashSet};

    fn ct(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            if cur.len() == used.len() {
                out.push(Permutation::from_images(cur).unwrap());
                return;
            }
            for x in 0..used.len() {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    rec(cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    #[test]
    fn power_examples() {
        let c = parse_cycles(5, "(1 2 3)").unwrap();
        assert!(c.power(3).is_identity());
        let nine = parse_cycles(9, "(1 2 3 4 5 6 7 8 9)").unwrap();
        assert!(nine.power(46080).is_identity());
        let p = parse_cycles(7, "(1 5 2)(3 4 6 7)").unwrap();
        assert_eq!(p.power(-1), p.inverse());
        let mut acc = Permutation::identity(7).unwrap();
        for e in 0..=20 {
            assert_eq!(p.power(e), acc);
            acc = acc.then(&p);
        }
    }

    #[test]
    fn cycle_type_examples() {
        let p = parse_cycles(5, "(1 2)(3 4)").unwrap();
        assert_eq!(p.cycle_type(), ct("2+2"));
        assert!(p.is_even());
        assert_eq!(p.support(), 4);
        let c = parse_cycles(5, "(2 4 5)").unwrap();
        assert!(c.is_even());
        assert_eq!(c.support(), 3);
        assert!(ct("4+2").is_even());
        assert!(!ct("4").is_even());
        assert_eq!(ct("2+4+2+2").to_string(), "4+2+2+2");
        assert!("2+1".parse::<CycleType>().is_err());
    }

    #[test]
    fn class_size_examples() {
        assert_eq!(class_size(5, &ct("2+2")).unwrap(), 15);
        assert_eq!(class_size(5, &ct("3")).unwrap(), 20);
        assert_eq!(class_size(13, &ct("9")).unwrap(), 28_828_800);
        assert!(class_size(4, &ct("5")).is_err());
    }

    #[test]
    fn stream_examples() {
        for (n, t, count) in [(5, "3", 20), (4, "2+2", 3), (6, "3+3", 40)] {
            let s = stream_class(n, &ct(t)).unwrap();
            let elems: HashSet<_> = s.iter().collect();
            assert_eq!(s.len(), count);
            assert_eq!(elems.len() as u64, count);
            assert!(elems.iter().all(|p| p.is_even() && p.cycle_type() == ct(t)));
        }
        assert!(matches!(stream_class(5, &ct("2")), Err(Error::OddCycleType(_))));
        assert!(matches!(stream_class(4, &ct("5")), Err(Error::SupportExceeds { .. })));
    }

    #[test]
    fn stream_matches_brute_force_classes() {
        for n in 1..=7 {
            let mut by_type: BTreeMap<CycleType, HashSet<Permutation>> = BTreeMap::new();
            for p in all_perms(n).into_iter().filter(|p| p.is_even()) {
                by_type.entry(p.cycle_type()).or_default().insert(p);
            }
            for t in even_cycle_types(n) {
                let s = stream_class(n, &t).unwrap();
                let got: HashSet<_> = s.iter().collect();
                assert_eq!(s.len() as u128, class_size(n, &t).unwrap());
                assert_eq!(got, by_type[&t], "n={n} type={t}");
            }
        }
    }

    #[test]
    fn stream_ranges_partition() {
        let s = stream_class(8, &ct("3+2+2")).unwrap();
        let all: Vec<_> = s.iter().collect();
        let mut pieces = Vec::new();
        let mut start = 0;
        for chunk in [1u64, 7, 100, 333, 1000, 10_000] {
            pieces.extend(s.iter_range(start, start + chunk));
            start += chunk;
        }
        pieces.extend(s.iter_range(start, s.len()));
        assert_eq!(pieces, all);
        for (i, p) in all.iter().enumerate().step_by(97) {
            assert_eq!(s.get(i as u64).as_ref(), Some(p));
        }
        assert_eq!(s.get(s.len()), None);
    }

    #[test]
    fn splitting_examples() {
        assert!(ct("3").splits_in_alt(4));
        assert!(!ct("5").splits_in_alt(7));
        assert!(ct("5").splits_in_alt(5));
        assert!(ct("9").splits_in_alt(10));
        assert!(!ct("9").splits_in_alt(11));
        assert!(!ct("3+3").splits_in_alt(6));
        assert!(!CycleType::identity().splits_in_alt(1));
    }

    /// Alt(n)-orbits by brute-force conjugation.
    fn alt_orbits(n: usize, t: &CycleType) -> Vec<HashSet<Permutation>> {
        let alt: Vec<_> = all_perms(n).into_iter().filter(|p| p.is_even()).collect();
        let mut remaining: HashSet<_> = stream_class(n, t).unwrap().iter().collect();
        let mut orbits = Vec::new();
        while let Some(&p) = remaining.iter().next() {
            let orbit: HashSet<_> = alt.iter().map(|g| p.conjugate_by(g)).collect();
            for q in &orbit {
                remaining.remove(q);
            }
            orbits.push(orbit);
        }
        orbits
    }

    #[test]
    fn alt_class_ids_match_orbits() {
        for (n, t) in [(4, "3"), (5, "5"), (5, "3"), (6, "5"), (7, "7"), (7, "5"), (7, "3+2+2")] {
            let t = ct(t);
            let orbits = alt_orbits(n, &t);
            assert_eq!(orbits.len(), if t.splits_in_alt(n) { 2 } else { 1 });
            let mut halves = HashSet::new();
            for orbit in &orbits {
                let ids: HashSet<_> = orbit.iter().map(alt_class_id).collect();
                assert_eq!(ids.len(), 1, "class id not constant on an orbit");
                halves.insert(ids.into_iter().next().unwrap());
            }
            assert_eq!(halves.len(), orbits.len());
            if t.splits_in_alt(n) {
                for h in 0..2 {
                    let rep = canonical_rep(n, &t, h).unwrap();
                    assert_eq!(alt_class_id(&rep).half, Some(h));
                }
            }
        }
        // 3-cycles of Alt(4): two halves of 4
        let orbits = alt_orbits(4, &ct("3"));
        assert_eq!(orbits.iter().map(HashSet::len).collect::<Vec<_>>(), vec![4, 4]);
        let orbits = alt_orbits(5, &ct("5"));
        assert_eq!(orbits.iter().map(HashSet::len).collect::<Vec<_>>(), vec![12, 12]);
    }

    #[test]
    fn rendering() {
        let p = parse_cycles(5, "(1 2 3)(4 5)").unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Permutation::identity(3).unwrap().to_string(), "()");
        assert_eq!(AltClassId::identity().to_string(), "e");
        assert_eq!(AltClassId::all_of(9, &ct("9"))[1].to_string(), "9/1");
        assert!(parse_cycles(3, "(1 2 4)").is_err());
        assert!(parse_cycles(3, "(1 2)(2 3)").is_err());
    }

    #[test]
    fn commutator_by_hand() {
        let x = parse_cycles(5, "(1 2 3)").unwrap();
        let y = parse_cycles(5, "(3 4 5)").unwrap();
        let direct = x.inverse().then(&y.inverse()).then(&x).then(&y);
        assert_eq!(x.commutator(&y), direct);
        // traced point by point: 1->3, 3->4, 4->1, 2 and 5 fixed
        assert_eq!(direct, parse_cycles(5, "(1 3 4)").unwrap());
    }

    #[test]
    fn even_types_of_six() {
        let names: Vec<String> = even_cycle_types(6).iter().map(|t| t.to_string()).collect();
        assert_eq!(names, vec!["1", "5", "4+2", "3", "3+3", "2+2"]);
    }
}
