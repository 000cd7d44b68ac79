//! Reference arithmetic for the integration tests, written independently
//! of the library: bit-serial GF(2^k), plain 2x2 matrices and permutations
//! as vectors.

#![allow(dead_code)]

#[derive(Clone, Copy, Debug)]
pub struct Gf {
    pub k: u32,
    pub modulus: u64,
}

impl Gf {
    pub fn new(k: u32, modulus: u64) -> Self {
        assert_eq!(64 - modulus.leading_zeros() - 1, k);
        Gf { k, modulus }
    }

    pub fn size(&self) -> u64 {
        1 << self.k
    }

    pub fn mul(&self, mut a: u64, mut b: u64) -> u64 {
        let mut acc = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.k & 1 == 1 {
                a ^= self.modulus;
            }
        }
        acc
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn pow_fast(&self, a: u64, mut e: u64) -> u64 {
        let (mut acc, mut base) = (1, a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert_ne!(a, 0);
        self.pow_fast(a, self.size() - 2)
    }

    /// `a + a^2 + ... + a^(2^(k-1))`.
    pub fn trace(&self, a: u64) -> u64 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.k {
            acc ^= x;
            x = self.mul(x, x);
        }
        acc
    }

    /// Multiplicative order by repeated multiplication.
    pub fn order(&self, a: u64) -> u64 {
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }
}

/// `[a, b, c, d]` for `[[a, b], [c, d]]`.
pub type Mat = [u64; 4];

pub const IDENTITY: Mat = [1, 0, 0, 1];

pub fn mat_mul(f: &Gf, x: &Mat, y: &Mat) -> Mat {
    [
        f.mul(x[0], y[0]) ^ f.mul(x[1], y[2]),
        f.mul(x[0], y[1]) ^ f.mul(x[1], y[3]),
        f.mul(x[2], y[0]) ^ f.mul(x[3], y[2]),
        f.mul(x[2], y[1]) ^ f.mul(x[3], y[3]),
    ]
}

pub fn mat_inv(x: &Mat) -> Mat {
    [x[3], x[1], x[2], x[0]]
}

pub fn mat_pow(f: &Gf, x: &Mat, e: u64) -> Mat {
    let (mut acc, mut base, mut e) = (IDENTITY, *x, e);
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(f, &acc, &base);
        }
        base = mat_mul(f, &base, &base);
        e >>= 1;
    }
    acc
}

pub fn mat_comm(f: &Gf, x: &Mat, y: &Mat) -> Mat {
    let l = mat_mul(f, &mat_inv(x), &mat_inv(y));
    mat_mul(f, &mat_mul(f, &l, x), y)
}

pub fn mat_order(f: &Gf, x: &Mat) -> u64 {
    let mut y = *x;
    let mut n = 1;
    while y != IDENTITY {
        y = mat_mul(f, &y, x);
        n += 1;
    }
    n
}

/// All of SL(2, 2^k), by scanning every quadruple.
pub fn sl2_elements(f: &Gf) -> Vec<Mat> {
    let q = f.size();
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if f.mul(a, d) ^ f.mul(b, c) == 1 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Random element of SL(2, 2^k) from three random field entries.
pub fn sl2_random(f: &Gf, mut next: impl FnMut(u64) -> u64) -> Mat {
    let q = f.size();
    loop {
        let (a, b, c) = (next(q), next(q), next(q));
        if a != 0 {
            let d = f.mul(1 ^ f.mul(b, c), f.inv(a));
            return [a, b, c, d];
        }
        if c != 0 {
            // a = 0 forces b c = 1
            return [0, f.inv(c), c, b];
        }
    }
}

/// Permutation as an image vector; `p.then(q)` applies `p` first.
pub type Perm = Vec<usize>;

pub fn perm_then(p: &Perm, q: &Perm) -> Perm {
    p.iter().map(|&i| q[i]).collect()
}

pub fn perm_inv(p: &Perm) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x] = i;
    }
    out
}

pub fn perm_pow(p: &Perm, e: i64) -> Perm {
    let base = if e < 0 { perm_inv(p) } else { p.clone() };
    let mut acc: Perm = (0..p.len()).collect();
    for _ in 0..e.unsigned_abs() {
        acc = perm_then(&acc, &base);
    }
    acc
}

/// Nontrivial cycle lengths, descending.
pub fn perm_cycle_type(p: &Perm) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 1 {
            out.push(len);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Evaluates a word on permutations of `n` points, reading products left
/// to right.
pub fn eval_word_perm(w: &wordmap::words::Word, n: usize, assign: &dyn Fn(&str) -> Perm) -> Perm {
    use wordmap::words::Word;
    match w {
        Word::Identity => (0..n).collect(),
        Word::Generator(g) => assign(g),
        Word::Inverse(a) => perm_inv(&eval_word_perm(a, n, assign)),
        Word::Power(a, e) => perm_pow(&eval_word_perm(a, n, assign), *e),
        Word::Product(fs) => fs
            .iter()
            .fold((0..n).collect(), |acc, f| perm_then(&acc, &eval_word_perm(f, n, assign))),
        Word::Commutator(a, b) => {
            let (a, b) = (eval_word_perm(a, n, assign), eval_word_perm(b, n, assign));
            let left = perm_then(&perm_inv(&a), &perm_inv(&b));
            perm_then(&perm_then(&left, &a), &b)
        }
    }
}
