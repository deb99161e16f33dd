//! High-precision evaluation at roots of unity `A = exp(2πik/n)`.
//!
//! The polynomial is first folded exactly onto residues `e*k mod n`, so the
//! only rounding happens in the `n` trigonometric constants. Those are computed
//! in binary fixed point with enough guard bits that the absolute error of the
//! result stays below `2^-bits`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::laurent::LaurentPoly;

/// Default fractional bits of a result, a bit over 77 significant decimals.
pub const DEFAULT_BITS: u32 = 256;

/// `(re + i*im) / 2^bits`.
#[derive(Clone, PartialEq, Eq)]
pub struct HiComplex {
    re: BigInt,
    im: BigInt,
    bits: u32,
}

impl HiComplex {
    pub fn from_integers(re: impl Into<BigInt>, im: impl Into<BigInt>, bits: u32) -> Self {
        Self {
            re: re.into() << bits,
            im: im.into() << bits,
            bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn re_f64(&self) -> f64 {
        fixed_to_f64(&self.re, self.bits)
    }

    pub fn im_f64(&self) -> f64 {
        fixed_to_f64(&self.im, self.bits)
    }

    /// Sum at the precision of `self`.
    pub fn add(&self, other: &HiComplex) -> HiComplex {
        let align = |v: &BigInt| {
            if other.bits >= self.bits {
                round_shift(v, other.bits - self.bits)
            } else {
                v << (self.bits - other.bits)
            }
        };
        HiComplex {
            re: &self.re + align(&other.re),
            im: &self.im + align(&other.im),
            bits: self.bits,
        }
    }

    /// Product, rounded back to `self.bits`.
    pub fn mul(&self, other: &HiComplex) -> HiComplex {
        let shift = other.bits;
        let re = &self.re * &other.re - &self.im * &other.im;
        let im = &self.re * &other.im + &self.im * &other.re;
        HiComplex {
            re: round_shift(&re, shift),
            im: round_shift(&im, shift),
            bits: self.bits,
        }
    }

    /// Whether both parts differ by at most `10^-digits`.
    pub fn close_to(&self, other: &HiComplex, digits: u32) -> bool {
        self.close_to_scaled(other, digits, &BigInt::one())
    }

    /// Whether both parts differ by at most `scale * 10^-digits`, used for
    /// relative comparisons of large values.
    pub fn close_to_scaled(&self, other: &HiComplex, digits: u32, scale: &BigInt) -> bool {
        let bits = self.bits.max(other.bits);
        let (a_re, a_im) = (&self.re << (bits - self.bits), &self.im << (bits - self.bits));
        let (b_re, b_im) = (&other.re << (bits - other.bits), &other.im << (bits - other.bits));
        // |diff| / 2^bits <= scale / 10^digits  <=>  |diff| * 10^digits <= scale * 2^bits
        let ten = num_traits::pow(BigInt::from(10u32), digits as usize);
        let bound = scale << bits;
        ((a_re - b_re).abs() * &ten) <= bound && ((a_im - b_im).abs() * &ten) <= bound
    }

    /// Decimal rendering of both parts with `digits` places after the point.
    pub fn to_decimal(&self, digits: u32) -> (String, String) {
        (
            fixed_to_decimal(&self.re, self.bits, digits),
            fixed_to_decimal(&self.im, self.bits, digits),
        )
    }
}

impl fmt::Display for HiComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_decimal(50);
        write!(f, "{re} + {im}i")
    }
}

impl fmt::Debug for HiComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `f(exp(2πik/n))` with [`DEFAULT_BITS`] fractional bits.
pub fn eval_unit_root(f: &LaurentPoly, k: i64, n: u64) -> HiComplex {
    eval_unit_root_with_bits(f, k, n, DEFAULT_BITS)
}

pub fn eval_unit_root_with_bits(f: &LaurentPoly, k: i64, n: u64, bits: u32) -> HiComplex {
    assert!(n >= 1, "root of unity order must be positive");
    let n_i = n as i128;
    let mut residues: BTreeMap<u64, BigInt> = BTreeMap::new();
    for (e, c) in f.terms() {
        let r = ((e as i128) * (k as i128)).rem_euclid(n_i) as u64;
        *residues.entry(r).or_insert_with(BigInt::zero) += c;
    }
    residues.retain(|_, c| !c.is_zero());

    let mass: BigInt = residues.values().map(|c| c.abs()).sum();
    let guard = mass.bits() as u32 + 64 - n.leading_zeros().min(63) + 16;
    let work = bits + guard;
    let pi = fixed_pi(work + 8);

    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (r, c) in &residues {
        let (cos, sin) = cos_sin_turn(*r, n, work, &pi);
        re += c * cos;
        im += c * sin;
    }
    HiComplex {
        re: round_shift(&re, work - bits),
        im: round_shift(&im, work - bits),
        bits,
    }
}

/// `cos(2πr/n)`, `sin(2πr/n)` scaled by `2^bits`; exact at multiples of a
/// quarter turn.
fn cos_sin_turn(r: u64, n: u64, bits: u32, pi: &BigInt) -> (BigInt, BigInt) {
    let one = BigInt::one() << bits;
    let g = r.gcd(&n);
    let (r, n) = (r / g, n / g);
    match (r, n) {
        (0, _) => return (one, BigInt::zero()),
        (1, 4) => return (BigInt::zero(), one),
        (1, 2) => return (-one, BigInt::zero()),
        (3, 4) => return (BigInt::zero(), -one),
        _ => {}
    }
    // Angle in (-π, π]: 2π * r' / n with r' = r or r - n.
    let signed_r = if 2 * r > n { r as i128 - n as i128 } else { r as i128 };
    // pi carries 8 more bits than requested.
    let x: BigInt = ((pi * BigInt::from(2 * signed_r)) / BigInt::from(n)) >> 8u32;
    let x2 = round_shift(&(&x * &x), bits);

    let mut sin = x.clone();
    let mut term = x;
    let mut m: u64 = 1;
    loop {
        term = round_shift(&(&term * &x2), bits) / BigInt::from((m + 1) * (m + 2));
        term = -term;
        if term.is_zero() {
            break;
        }
        sin += &term;
        m += 2;
    }

    let mut cos = one.clone();
    let mut term = one;
    let mut m: u64 = 0;
    loop {
        term = round_shift(&(&term * &x2), bits) / BigInt::from((m + 1) * (m + 2));
        term = -term;
        if term.is_zero() {
            break;
        }
        cos += &term;
        m += 2;
    }
    (cos, sin)
}

/// π scaled by `2^bits` (Machin's formula).
fn fixed_pi(bits: u32) -> BigInt {
    let work = bits + 16;
    let pi = atan_inv(5, work) * 16u32 - atan_inv(239, work) * 4u32;
    pi >> 16u32
}

fn atan_inv(x: u32, bits: u32) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut term = (BigInt::one() << bits) / &x;
    let mut sum = BigInt::zero();
    let mut k: u32 = 0;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &x2;
        k += 1;
    }
    sum
}

fn round_shift(v: &BigInt, shift: u32) -> BigInt {
    if shift == 0 {
        return v.clone();
    }
    let half = BigInt::one() << (shift - 1);
    if v.is_negative() {
        -((-v + half) >> shift)
    } else {
        (v + half) >> shift
    }
}

fn fixed_to_f64(v: &BigInt, bits: u32) -> f64 {
    let drop = v.bits().saturating_sub(60) as u32;
    let mantissa = (v >> drop).to_f64().unwrap_or(0.0);
    mantissa * 2f64.powi(drop as i32 - bits as i32)
}

fn fixed_to_decimal(v: &BigInt, bits: u32, digits: u32) -> String {
    let ten = num_traits::pow(BigInt::from(10u32), digits as usize);
    let scaled = round_shift(&(v * &ten), bits);
    let negative = scaled.sign() == Sign::Minus;
    let (int, frac) = scaled.abs().div_rem(&ten);
    let frac = frac.to_string();
    let pad = "0".repeat(digits as usize - frac.len());
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{pad}{frac}")
    }
}
