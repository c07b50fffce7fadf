//! Arithmetic in GF(2^ℓ).
//!
//! Elements are polynomials over GF(2) of degree < ℓ, packed into 64-bit
//! limbs, reduced modulo a sparse irreducible `x^ℓ + r(x)` with `deg r < 64`.
//! Supported sizes are the multiples of 64 up to 1024; a 3-bit field with
//! modulus `x^3 + x + 1` is available for hand-checkable tests.

mod clmul;
pub mod linalg;
pub mod poly;

use std::fmt;

use num_bigint::BigUint;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use self::clmul::has_hw_clmul;
use self::clmul::clmul_soft;
use self::poly::Poly;

/// Largest supported field size in bits.
pub const MAX_BITS: u32 = 1024;
/// Limbs needed to hold an element of the largest field.
pub const MAX_LIMBS: usize = (MAX_BITS / 64) as usize;

/// Low terms `(a, b, c)` of the pentanomials `x^ℓ + x^a + x^b + x^c + 1`,
/// indexed by `ℓ / 64 - 1`. Each entry was found by a Rabin search in
/// lexicographic order of `(a, b, c)`, except ℓ = 64 which is the usual
/// `x^64 + x^4 + x^3 + x + 1`. Degree 64k admits no irreducible trinomial
/// (Swan), so pentanomials are the sparsest option.
const PENTANOMIALS: [(u32, u32, u32); 16] = [
    (4, 3, 1),
    (7, 2, 1),
    (7, 2, 1),
    (10, 5, 2),
    (4, 3, 1),
    (12, 3, 2),
    (11, 6, 4),
    (8, 5, 2),
    (13, 4, 3),
    (14, 3, 2),
    (8, 3, 2),
    (19, 17, 4),
    (13, 5, 2),
    (7, 5, 3),
    (12, 9, 3),
    (19, 6, 1),
];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error("unsupported field size {0} bits (must be a positive multiple of 64, at most {MAX_BITS})")]
    UnsupportedBits(u32),
    #[error("field too large: the error bound needs more than {MAX_BITS} bits; raise epsilon or use fewer terminals")]
    FieldTooLarge,
    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    InvalidEpsilon(f64),
    #[error("n and k must both be at least 1")]
    EmptyInstance,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not canonical for a {0}-bit field")]
    NonCanonical(u32),
}

/// Where the modulus of a [`FieldSpec`] came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Hardcoded low-weight irreducible.
    Table,
    /// Seeded search with Rabin's test.
    Searched { seed: u64 },
    /// The 3-bit test field.
    Mini,
}

/// An immutable description of GF(2^ℓ).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    bits: u32,
    limbs: usize,
    /// The modulus minus its leading term `x^bits`.
    low: u64,
    provenance: Provenance,
    hw: bool,
}

/// A field element. Limbs past the field's size are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    limbs: [u64; MAX_LIMBS],
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let used = self.limbs.iter().rposition(|&w| w != 0).map_or(1, |i| i + 1);
        write!(f, "FieldElem(0x")?;
        for w in self.limbs[..used].iter().rev() {
            write!(f, "{w:016x}")?;
        }
        write!(f, ")")
    }
}

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem { limbs: [0; MAX_LIMBS] };

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one() -> Self {
        Self::from_u64(1)
    }

    pub fn from_u64(v: u64) -> Self {
        let mut limbs = [0; MAX_LIMBS];
        limbs[0] = v;
        FieldElem { limbs }
    }

    /// Copies `words` into the low limbs; extra limbs must not exceed
    /// [`MAX_LIMBS`].
    pub fn from_limbs(words: &[u64]) -> Self {
        let mut limbs = [0; MAX_LIMBS];
        limbs[..words.len()].copy_from_slice(words);
        FieldElem { limbs }
    }

    pub fn limbs(&self) -> &[u64; MAX_LIMBS] {
        &self.limbs
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&w| w == 0)
    }

    pub fn bit(&self, i: usize) -> bool {
        (self.limbs[i / 64] >> (i % 64)) & 1 == 1
    }
}

/// Smallest supported ℓ with `2^ℓ > (1/eps) · (n·k) · n^k`, evaluated with
/// exact integer arithmetic on the binary expansion of `eps`.
pub fn required_bits(n: u64, k: u64, eps: f64) -> Result<u32, FieldError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(FieldError::InvalidEpsilon(eps));
    }
    if n == 0 || k == 0 {
        return Err(FieldError::EmptyInstance);
    }
    // eps = mantissa * 2^exp exactly.
    let (mantissa, exp) = decode_f64(eps);
    let rhs = BigUint::from(n) * BigUint::from(k) * BigUint::from(n).pow(k as u32);
    for bits in (64..=MAX_BITS).step_by(64) {
        // 2^bits > rhs / eps  <=>  mantissa * 2^(bits + exp) > rhs
        let shift = bits as i64 + exp;
        let (lhs, rhs_scaled) = if shift >= 0 {
            (BigUint::from(mantissa) << shift as u64, rhs.clone())
        } else {
            (BigUint::from(mantissa), rhs.clone() << (-shift) as u64)
        };
        if lhs > rhs_scaled {
            return Ok(bits);
        }
    }
    Err(FieldError::FieldTooLarge)
}

fn decode_f64(x: f64) -> (u64, i64) {
    let raw = x.to_bits();
    let exp_bits = ((raw >> 52) & 0x7ff) as i64;
    let frac = raw & ((1u64 << 52) - 1);
    if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    }
}

/// `ff_make`: a field of `bits` bits. All supported sizes have a table
/// entry; the seed is recorded but only consulted by [`FieldSpec::search`].
pub fn make_field(bits: u32, seed: u64) -> Result<FieldSpec, FieldError> {
    FieldSpec::new(bits, seed)
}

impl FieldSpec {
    pub fn new(bits: u32, seed: u64) -> Result<Self, FieldError> {
        Self::check_bits(bits)?;
        match PENTANOMIALS.get(bits as usize / 64 - 1) {
            Some(&(a, b, c)) => Ok(Self::with_low(
                bits,
                (1 << a) | (1 << b) | (1 << c) | 1,
                Provenance::Table,
            )),
            None => Self::search(bits, seed),
        }
    }

    /// Deterministic search for an irreducible `x^bits + r(x)` with a random
    /// `r` of degree < 64, seeded by `seed`.
    pub fn search(bits: u32, seed: u64) -> Result<Self, FieldError> {
        Self::check_bits(bits)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let low = rng.next_u64() | 1;
            let mut f = Poly::from_words(&[low]);
            f.flip(bits as usize);
            if poly::is_irreducible(&f) {
                return Ok(Self::with_low(bits, low, Provenance::Searched { seed }));
            }
        }
    }

    /// GF(8) with modulus `x^3 + x + 1`. Test fixture only.
    pub fn mini() -> Self {
        Self::with_low(3, 0b011, Provenance::Mini)
    }

    fn check_bits(bits: u32) -> Result<(), FieldError> {
        if bits == 0 || !bits.is_multiple_of(64) || bits > MAX_BITS {
            Err(FieldError::UnsupportedBits(bits))
        } else {
            Ok(())
        }
    }

    fn with_low(bits: u32, low: u64, provenance: Provenance) -> Self {
        FieldSpec {
            bits,
            limbs: (bits as usize).div_ceil(64),
            low,
            provenance,
            hw: has_hw_clmul(),
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Number of 64-bit limbs per element.
    pub fn limbs(&self) -> usize {
        self.limbs
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// The full modulus as a GF(2) polynomial.
    pub fn modulus(&self) -> Poly {
        let mut f = Poly::from_words(&[self.low]);
        f.flip(self.bits as usize);
        f
    }

    /// True when the mini field is in use.
    fn is_sub_limb(&self) -> bool {
        self.bits < 64
    }

    pub fn is_canonical(&self, a: &FieldElem) -> bool {
        let top = self.limbs - 1;
        if a.limbs[self.limbs..].iter().any(|&w| w != 0) {
            return false;
        }
        !self.is_sub_limb() || a.limbs[top] >> self.bits == 0
    }

    pub fn check(&self, a: &FieldElem) -> Result<(), FieldError> {
        if self.is_canonical(a) {
            Ok(())
        } else {
            Err(FieldError::NonCanonical(self.bits))
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let mut out = *a;
        for i in 0..self.limbs {
            out.limbs[i] ^= b.limbs[i];
        }
        out
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let mut out = FieldElem::ZERO;
        self.mul_raw(&mut out.limbs[..self.limbs], &a.limbs[..self.limbs], &b.limbs[..self.limbs]);
        out
    }

    pub fn square(&self, a: &FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let inv = Poly::from_words(&a.limbs[..self.limbs])
            .inverse_mod(&self.modulus())
            .ok_or(FieldError::DivisionByZero)?;
        Ok(FieldElem::from_limbs(inv.words()))
    }

    /// `ff_rand`: a uniform element drawn from `rng`.
    pub fn random<R: RngCore + ?Sized>(&self, rng: &mut R) -> FieldElem {
        let mut out = FieldElem::ZERO;
        self.random_raw(rng, &mut out.limbs[..self.limbs]);
        out
    }

    pub fn random_raw<R: RngCore + ?Sized>(&self, rng: &mut R, out: &mut [u64]) {
        for w in out.iter_mut() {
            *w = rng.next_u64();
        }
        if self.is_sub_limb() {
            out[0] &= (1u64 << self.bits) - 1;
        }
    }

    /// Big-endian hex of an element, `ceil(bits / 4)` digits.
    pub fn to_hex(&self, a: &[u64]) -> String {
        let digits = (self.bits as usize).div_ceil(4);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let nib = (a[d / 16] >> (4 * (d % 16))) & 0xf;
            s.push(char::from_digit(nib as u32, 16).unwrap());
        }
        s
    }

    // ---- slice kernels: every slice holds exactly `limbs()` words ----

    pub fn is_zero_raw(a: &[u64]) -> bool {
        a.iter().all(|&w| w == 0)
    }

    pub fn add_assign_raw(acc: &mut [u64], a: &[u64]) {
        for (x, y) in acc.iter_mut().zip(a) {
            *x ^= y;
        }
    }

    /// `out = a * b`.
    pub fn mul_raw(&self, out: &mut [u64], a: &[u64], b: &[u64]) {
        out.fill(0);
        self.mul_add_raw(out, a, b);
    }

    /// `acc += a * b`.
    #[inline]
    pub fn mul_add_raw(&self, acc: &mut [u64], a: &[u64], b: &[u64]) {
        debug_assert!(acc.len() == self.limbs && a.len() == self.limbs && b.len() == self.limbs);
        if self.is_sub_limb() {
            acc[0] ^= self.mul_sub_limb(a[0], b[0]);
            return;
        }
        #[cfg(target_arch = "x86_64")]
        if self.hw {
            // SAFETY: `hw` is only set when the CPU reports pclmulqdq.
            unsafe { mul_add_wide_hw(self.low, acc, a, b) };
            return;
        }
        mul_add_wide(self.low, acc, a, b, clmul_soft);
    }

    fn mul_sub_limb(&self, a: u64, b: u64) -> u64 {
        let (lo, hi) = clmul_soft(a, b);
        let mut p = ((hi as u128) << 64) | lo as u128;
        let bits = self.bits;
        let modulus = (1u128 << bits) | self.low as u128;
        for deg in (bits..2 * bits).rev() {
            if (p >> deg) & 1 == 1 {
                p ^= modulus << (deg - bits);
            }
        }
        p as u64
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq,sse2")]
unsafe fn mul_add_wide_hw(low: u64, acc: &mut [u64], a: &[u64], b: &[u64]) {
    mul_add_wide(low, acc, a, b, |x, y| unsafe { clmul::clmul_hw(x, y) })
}

/// Schoolbook product of two `L`-limb polynomials followed by folding the
/// upper `L` limbs back through `x^(64L) = r(x)`.
#[inline(always)]
fn mul_add_wide<F: Fn(u64, u64) -> (u64, u64)>(low: u64, acc: &mut [u64], a: &[u64], b: &[u64], clmul: F) {
    let l = acc.len();
    let mut prod = [0u64; 2 * MAX_LIMBS];
    for i in 0..l {
        let ai = a[i];
        if ai == 0 {
            continue;
        }
        for j in 0..l {
            let (lo, hi) = clmul(ai, b[j]);
            prod[i + j] ^= lo;
            prod[i + j + 1] ^= hi;
        }
    }
    loop {
        let mut spilled = false;
        for i in (l..2 * l).rev() {
            let h = prod[i];
            if h == 0 {
                continue;
            }
            prod[i] = 0;
            let (lo, hi) = clmul(h, low);
            prod[i - l] ^= lo;
            prod[i - l + 1] ^= hi;
            // With one limb the high half lands back in limb 1.
            spilled |= l == 1 && hi != 0;
        }
        if !spilled {
            break;
        }
    }
    for i in 0..l {
        acc[i] ^= prod[i];
    }
}
