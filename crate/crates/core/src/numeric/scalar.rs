//! The two scalar backends and the trait every geometric type is generic over.
//!
//! * [`Exact`] is an arbitrary-precision rational (`BigRational`). Equality is
//!   exact and tolerances are ignored.
//! * [`Float`] is a double-precision complex number. Zero tests go through a
//!   [`Tolerance`](super::Tolerance).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational backend.
pub type Exact = BigRational;
/// Complex floating backend.
pub type Float = Complex64;

/// Which backend a scalar type implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(format!("unknown backend `{other}` (expected exact|float)")),
        }
    }
}

/// Field operations needed by the geometry, plus the backend-specific
/// queries that the algorithms branch on.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
    /// Float: the value itself. Exact: the exact binary value of the double
    /// (panics on non-finite input).
    fn from_f64(v: f64) -> Self;
    /// Float: the value itself. Exact: the exact binary value of the real part.
    fn from_c64(z: Complex64) -> Self;

    fn to_c64(&self) -> Complex64;
    /// |x| as a double. Used for pivot choice and reporting.
    fn modulus(&self) -> f64;
    /// Compare |self| with |other|; exact on the rational backend.
    fn cmp_modulus(&self, other: &Self) -> Ordering;
    fn is_exact_zero(&self) -> bool;
    /// Principal square root when it exists in the backend. Float always
    /// succeeds; exact succeeds only for squares of rationals.
    fn sqrt(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    fn is_finite(&self) -> bool;

    fn is_exact() -> bool {
        Self::BACKEND == Backend::Exact
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for BigRational {
    const BACKEND: Backend = Backend::Exact;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite double")
    }
    fn from_c64(z: Complex64) -> Self {
        Self::from_f64(z.re)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
    fn modulus(&self) -> f64 {
        rational_to_f64(self).abs()
    }
    fn cmp_modulus(&self, other: &Self) -> Ordering {
        self.abs().cmp(&other.abs())
    }
    fn is_exact_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &rn * &rn == *n && &rd * &rd == *d {
            Some(BigRational::new(rn, rd))
        } else {
            None
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn is_finite(&self) -> bool {
        true
    }
}

impl Scalar for Complex64 {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_f64(v: f64) -> Self {
        Complex64::new(v, 0.0)
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn cmp_modulus(&self, other: &Self) -> Ordering {
        self.norm()
            .partial_cmp(&other.norm())
            .unwrap_or(Ordering::Equal)
    }
    fn is_exact_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn sqrt(&self) -> Option<Self> {
        Some(Complex64::sqrt(*self))
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Rational to double without overflowing on large numerators/denominators.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Scale both parts down by a common power of two.
    let bits = r.numer().bits().max(r.denom().bits()) as i64;
    let shift = (bits - 900).max(0) as usize;
    let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
    if d == 0.0 {
        f64::INFINITY.copysign(n)
    } else {
        n / d
    }
}

/// Best rational approximation to `x` by continued fractions, with
/// denominator at most `max_den`. Returns every convergent in order.
pub fn rational_convergents(x: f64, max_den: i64) -> Vec<BigRational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h_prev, mut h) = (BigInt::from(1), BigInt::from(x.floor() as i64));
    let (mut k_prev, mut k) = (BigInt::from(0), BigInt::from(1));
    out.push(BigRational::new(h.clone(), k.clone()));
    let mut frac = x - x.floor();
    for _ in 0..64 {
        if frac.abs() < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        let a = BigInt::from(a as i64);
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if k_next > BigInt::from(max_den) {
            break;
        }
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        out.push(BigRational::new(h.clone(), k.clone()));
    }
    out
}
