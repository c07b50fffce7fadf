//! Carry-less 64x64 -> 128 bit multiplication.
//!
//! The portable routine uses a 4-bit window table. On x86_64 the PCLMULQDQ
//! instruction is used when the running CPU advertises it; both produce the
//! same bits.

/// Portable carry-less product, returned as (low, high).
#[inline]
pub fn clmul_soft(a: u64, b: u64) -> (u64, u64) {
    let a = a as u128;
    let mut table = [0u128; 16];
    for i in 1..16 {
        table[i] = (table[i >> 1] << 1) ^ if i & 1 == 1 { a } else { 0 };
    }
    let mut acc = 0u128;
    for nibble in (0..16).rev() {
        acc = (acc << 4) ^ table[((b >> (4 * nibble)) & 0xf) as usize];
    }
    (acc as u64, (acc >> 64) as u64)
}

#[cfg(target_arch = "x86_64")]
#[inline]
#[target_feature(enable = "pclmulqdq,sse2")]
pub unsafe fn clmul_hw(a: u64, b: u64) -> (u64, u64) {
    use std::arch::x86_64::*;
    let x = _mm_set_epi64x(0, a as i64);
    let y = _mm_set_epi64x(0, b as i64);
    let r = _mm_clmulepi64_si128(x, y, 0x00);
    let lo = _mm_cvtsi128_si64(r) as u64;
    let hi = _mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)) as u64;
    (lo, hi)
}

/// True when the hardware path can be taken on this machine.
#[inline]
pub fn has_hw_clmul() -> bool {
    #[cfg(target_arch = "x86_64")]
    {
        std::is_x86_feature_detected!("pclmulqdq")
    }
    #[cfg(not(target_arch = "x86_64"))]
    {
        false
    }
}
