use std::fmt;

/// Dense univariate polynomial over GF(2), one bit per coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Poly {
    limbs: Vec<u64>,
}

impl F2Poly {
    pub fn zero() -> Self {
        F2Poly { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_u64(1)
    }

    pub fn from_u64(bits: u64) -> Self {
        let mut p = F2Poly { limbs: vec![bits] };
        p.trim();
        p
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut p = F2Poly { limbs: vec![0; n / 64 + 1] };
        p.limbs[n / 64] = 1 << (n % 64);
        p
    }

    /// Lowest 64 coefficients.
    pub fn low_u64(&self) -> u64 {
        self.limbs.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        let top = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs.get(i / 64).is_some_and(|l| (l >> (i % 64)) & 1 == 1)
    }

    /// Exponents of the nonzero coefficients, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (li, &limb) in self.limbs.iter().enumerate() {
            let mut l = limb;
            while l != 0 {
                let b = l.trailing_zeros() as usize;
                out.push(li * 64 + b);
                l &= l - 1;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.limbs.len().max(other.limbs.len());
        let mut limbs = vec![0u64; n];
        for (i, l) in limbs.iter_mut().enumerate() {
            *l = self.limbs.get(i).unwrap_or(&0) ^ other.limbs.get(i).unwrap_or(&0);
        }
        let mut p = F2Poly { limbs };
        p.trim();
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut limbs = vec![0u64; self.limbs.len() + other.limbs.len()];
        for e in self.support() {
            let (ls, bs) = (e / 64, e % 64);
            for (j, &ol) in other.limbs.iter().enumerate() {
                limbs[ls + j] ^= ol << bs;
                if bs > 0 {
                    limbs[ls + j + 1] ^= ol >> (64 - bs);
                }
            }
        }
        let mut p = F2Poly { limbs };
        p.trim();
        p
    }

    /// Squaring is linear in characteristic 2: coefficient i moves to 2i.
    pub fn square(&self) -> Self {
        let mut limbs = vec![0u64; self.limbs.len() * 2];
        for e in self.support() {
            let t = 2 * e;
            limbs[t / 64] |= 1 << (t % 64);
        }
        let mut p = F2Poly { limbs };
        p.trim();
        p
    }

    pub fn rem(&self, modulus: &Self) -> Self {
        let md = modulus.degree().expect("remainder by the zero polynomial");
        let mut r = self.clone();
        while let Some(d) = r.degree() {
            if d < md {
                break;
            }
            let shifted = modulus.mul(&F2Poly::monomial(d - md));
            r = r.add(&shifted);
        }
        r
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or test: `gcd(x^{2^i} - x, f) = 1` for `1 <= i <= deg/2`.
    pub fn is_irreducible(&self) -> bool {
        let Some(k) = self.degree() else { return false };
        if k == 0 {
            return false;
        }
        let x = F2Poly::monomial(1);
        let mut power = x.rem(self);
        for _ in 1..=k / 2 {
            power = power.square().rem(self);
            if power.add(&x).gcd(self).degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// `p(u) = u^2 + u` applied on the outside: returns `self^2 + self`.
    pub fn artin_schreier(&self) -> Self {
        self.square().add(self)
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Poly({self})")
    }
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.support();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = terms
            .iter()
            .rev()
            .map(|&e| match e {
                0 => "1".to_string(),
                1 => "u".to_string(),
                _ => format!("u^{e}"),
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_and_support() {
        let p = F2Poly::from_u64(0b1011);
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.support(), vec![0, 1, 3]);
        assert_eq!(F2Poly::zero().degree(), None);
        assert_eq!(F2Poly::monomial(130).degree(), Some(130));
    }

    #[test]
    fn square_matches_mul() {
        let p = F2Poly::from_u64(0xdead_beef_1234_5678).mul(&F2Poly::monomial(70).add(&F2Poly::one()));
        assert_eq!(p.square(), p.mul(&p));
    }

    #[test]
    fn irreducibility_by_sieve() {
        // Sieve: reducible degree-d polynomials are products of lower-degree ones.
        let mut reducible = std::collections::HashSet::new();
        for a in 2u64..32 {
            for b in 2u64..32 {
                let p = F2Poly::from_u64(a).mul(&F2Poly::from_u64(b));
                if p.degree().unwrap() <= 5 {
                    reducible.insert(p.low_u64());
                }
            }
        }
        for f in 2u64..64 {
            let p = F2Poly::from_u64(f);
            assert_eq!(p.is_irreducible(), !reducible.contains(&f), "{p}");
        }
    }

    #[test]
    fn display() {
        assert_eq!(F2Poly::from_u64(0b10011).to_string(), "u^4 + u + 1");
    }
}
