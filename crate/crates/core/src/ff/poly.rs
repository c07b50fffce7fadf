//! Dense polynomials over GF(2) of arbitrary degree.
//!
//! Used for modulus construction (Rabin's irreducibility test), for the
//! extended-Euclid inverse, and as a slow reference for field arithmetic.

use super::clmul::clmul_soft;

/// Coefficient `i` lives in bit `i % 64` of word `i / 64`. Trailing zero
/// words are trimmed so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    words: Vec<u64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { words: vec![1] }
    }

    /// The monomial `x^e`.
    pub fn monomial(e: usize) -> Self {
        let mut words = vec![0u64; e / 64 + 1];
        words[e / 64] = 1 << (e % 64);
        Poly { words }
    }

    pub fn from_words(words: &[u64]) -> Self {
        let mut p = Poly { words: words.to_vec() };
        p.trim();
        p
    }

    /// Builds a polynomial from its set exponents.
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = Poly::zero();
        for &e in exps {
            p.flip(e);
        }
        p
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn flip(&mut self, i: usize) {
        if self.words.len() <= i / 64 {
            self.words.resize(i / 64 + 1, 0);
        }
        self.words[i / 64] ^= 1 << (i % 64);
        self.trim();
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        let mut p = Poly { words };
        p.trim();
        p
    }

    /// `self ^= other << shift` in place.
    fn xor_shifted(&mut self, other: &Poly, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        let need = other.words.len() + ws + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + ws] ^= w << bs;
            if bs != 0 {
                self.words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        self.trim();
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut words = vec![0u64; self.words.len() + other.words.len()];
        for (i, &a) in self.words.iter().enumerate() {
            for (j, &b) in other.words.iter().enumerate() {
                let (lo, hi) = clmul_soft(a, b);
                words[i + j] ^= lo;
                words[i + j + 1] ^= hi;
            }
        }
        let mut p = Poly { words };
        p.trim();
        p
    }

    /// Remainder of long division by `m`. Panics on a zero divisor.
    pub fn rem(&self, m: &Poly) -> Poly {
        let dm = m.degree().expect("division by the zero polynomial");
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dm {
                break;
            }
            r.xor_shifted(m, dr - dm);
        }
        r
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m)
    }

    /// `x^(2^k) mod m` by repeated squaring.
    pub fn x_pow_pow2_mod(k: usize, m: &Poly) -> Poly {
        let mut acc = Poly::monomial(1).rem(m);
        for _ in 0..k {
            acc = acc.mul_mod(&acc, m);
        }
        acc
    }

    /// Inverse of `self` modulo `m` by the binary extended Euclidean
    /// algorithm. Returns `None` when `gcd(self, m) != 1`.
    pub fn inverse_mod(&self, m: &Poly) -> Option<Poly> {
        let mut u = self.rem(m);
        let mut v = m.clone();
        let mut g1 = Poly::one();
        let mut g2 = Poly::zero();
        if u.is_zero() {
            return None;
        }
        while !u.is_one() {
            let du = u.degree()?;
            let dv = v.degree()?;
            if du < dv {
                std::mem::swap(&mut u, &mut v);
                std::mem::swap(&mut g1, &mut g2);
                continue;
            }
            let j = du - dv;
            u.xor_shifted(&v, j);
            g1.xor_shifted(&g2, j);
            if u.is_zero() {
                return None;
            }
        }
        Some(g1.rem(m))
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `f` of degree `n` is irreducible over GF(2) iff
/// `x^(2^n) = x (mod f)` and `gcd(x^(2^(n/p)) - x, f) = 1` for every prime
/// `p | n`.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    let x = Poly::monomial(1);
    if Poly::x_pow_pow2_mod(n, f) != x.rem(f) {
        return false;
    }
    prime_factors(n).into_iter().all(|p| {
        let h = Poly::x_pow_pow2_mod(n / p, f).add(&x);
        f.gcd(&h).is_one()
    })
}
