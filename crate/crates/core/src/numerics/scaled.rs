//! Overflow-safe real and complex numbers.
//!
//! Values are held as a float mantissa times a binary exponent kept in an
//! `i64`, so `from_f64`/`to_f64` round-trip exactly and products never lose
//! range. The sign / log-magnitude view is available through accessors.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::f64::consts::LN_2;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Split a finite nonzero float into `(m, e)` with `0.5 <= |m| < 1` and `x = m * 2^e`.
fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let raw = ((bits >> 52) & 0x7ff) as i64;
    if raw == 0 {
        // subnormal
        let (m, e) = frexp(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1022 << 52));
    (m, raw - 1022)
}

/// `m * 2^e` without intermediate overflow.
fn ldexp(m: f64, e: i64) -> f64 {
    if m == 0.0 {
        return m;
    }
    if e > 2100 {
        return m.signum() * f64::INFINITY;
    }
    if e < -2200 {
        return 0.0 * m.signum();
    }
    let mut out = m;
    let mut e = e;
    while e > 1000 {
        out *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        out *= 2f64.powi(-1000);
        e += 1000;
    }
    out * 2f64.powi(e as i32)
}

#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledReal {
    mant: f64,
    exp: i64,
}

impl ScaledReal {
    pub const ZERO: ScaledReal = ScaledReal { mant: 0.0, exp: 0 };
    pub const ONE: ScaledReal = ScaledReal { mant: 0.5, exp: 1 };

    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "ScaledReal::from_f64 on non-finite {x}");
        let (mant, exp) = frexp(x);
        ScaledReal { mant, exp }
    }

    /// `x * 2^e`.
    pub fn from_exp2(x: f64, e: i64) -> Self {
        assert!(x.is_finite(), "ScaledReal::from_exp2 on non-finite {x}");
        Self::renorm(x, e)
    }

    /// `sign * e^log_mag`.
    pub fn from_log(sign: i8, log_mag: f64) -> Self {
        if sign == 0 || log_mag == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        let e = (log_mag / LN_2).floor();
        let m = (log_mag - e * LN_2).exp() * f64::from(sign.signum());
        let (mant, de) = frexp(m);
        ScaledReal {
            mant,
            exp: e as i64 + de,
        }
    }

    pub fn to_f64(self) -> f64 {
        ldexp(self.mant, self.exp)
    }

    pub fn sign(self) -> i8 {
        if self.mant > 0.0 {
            1
        } else if self.mant < 0.0 {
            -1
        } else {
            0
        }
    }

    /// Natural log of the magnitude; `-inf` for zero.
    pub fn log_mag(self) -> f64 {
        if self.mant == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.mant.abs().ln() + self.exp as f64 * LN_2
        }
    }

    pub fn is_zero(self) -> bool {
        self.mant == 0.0
    }

    pub fn abs(self) -> Self {
        ScaledReal {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn mul_f64(self, x: f64) -> Self {
        self * ScaledReal::from_f64(x)
    }

    pub fn sqrt(self) -> Self {
        assert!(self.mant >= 0.0, "sqrt of negative ScaledReal");
        if self.mant == 0.0 {
            return self;
        }
        let (m, e) = if self.exp % 2 == 0 {
            (self.mant, self.exp)
        } else {
            (self.mant * 2.0, self.exp - 1)
        };
        let (mant, de) = frexp(m.sqrt());
        ScaledReal {
            mant,
            exp: e / 2 + de,
        }
    }

    pub fn powi(self, n: u32) -> Self {
        let mut acc = ScaledReal::ONE;
        let mut base = self;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    /// Ratio as a plain float; both operands may be far outside float range.
    pub fn ratio(self, other: Self) -> f64 {
        (self / other).to_f64()
    }

    fn renorm(mant: f64, exp: i64) -> Self {
        if mant == 0.0 {
            return Self::ZERO;
        }
        let (m, de) = frexp(mant);
        ScaledReal {
            mant: m,
            exp: exp + de,
        }
    }
}

impl Default for ScaledReal {
    fn default() -> Self {
        Self::ZERO
    }
}

impl fmt::Debug for ScaledReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScaledReal({} * e^{})", self.sign(), self.log_mag())
    }
}

impl Mul for ScaledReal {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::renorm(self.mant * o.mant, self.exp + o.exp)
    }
}

impl Div for ScaledReal {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(o.mant != 0.0, "ScaledReal division by zero");
        Self::renorm(self.mant / o.mant, self.exp - o.exp)
    }
}

impl Neg for ScaledReal {
    type Output = Self;
    fn neg(self) -> Self {
        ScaledReal {
            mant: -self.mant,
            exp: self.exp,
        }
    }
}

impl Add for ScaledReal {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.mant == 0.0 {
            return o;
        }
        if o.mant == 0.0 {
            return self;
        }
        let (big, small) = if self.exp >= o.exp {
            (self, o)
        } else {
            (o, self)
        };
        let shift = big.exp - small.exp;
        if shift > 1100 {
            return big;
        }
        Self::renorm(big.mant + ldexp(small.mant, -shift), big.exp)
    }
}

impl Sub for ScaledReal {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl PartialOrd for ScaledReal {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        let d = *self - *o;
        d.mant.partial_cmp(&0.0)
    }
}

impl From<f64> for ScaledReal {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

/// Complex mantissa with a shared binary exponent.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledComplex {
    mant: Complex64,
    exp: i64,
}

impl ScaledComplex {
    pub const ZERO: ScaledComplex = ScaledComplex {
        mant: Complex64::new(0.0, 0.0),
        exp: 0,
    };

    pub fn new(z: Complex64) -> Self {
        Self::renorm(z, 0)
    }

    /// `z * e^log_scale`.
    pub fn from_parts(log_scale: f64, z: Complex64) -> Self {
        let e = (log_scale / LN_2).floor();
        Self::renorm(z * (log_scale - e * LN_2).exp(), e as i64)
    }

    pub fn from_real(x: ScaledReal) -> Self {
        ScaledComplex {
            mant: Complex64::new(x.mant, 0.0),
            exp: x.exp,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(ldexp(self.mant.re, self.exp), ldexp(self.mant.im, self.exp))
    }

    pub fn re(self) -> ScaledReal {
        ScaledReal::renorm(self.mant.re, self.exp)
    }

    pub fn im(self) -> ScaledReal {
        ScaledReal::renorm(self.mant.im, self.exp)
    }

    pub fn norm(self) -> ScaledReal {
        ScaledReal::renorm(self.mant.norm(), self.exp)
    }

    pub fn conj(self) -> Self {
        ScaledComplex {
            mant: self.mant.conj(),
            exp: self.exp,
        }
    }

    pub fn is_zero(self) -> bool {
        self.mant.re == 0.0 && self.mant.im == 0.0
    }

    pub fn scale(self, x: ScaledReal) -> Self {
        Self::renorm(self.mant * x.mant, self.exp + x.exp)
    }

    pub fn mul_c(self, z: Complex64) -> Self {
        Self::renorm(self.mant * z, self.exp)
    }

    /// Plain complex ratio of two scaled values.
    pub fn ratio(self, other: Self) -> Complex64 {
        (self / other).to_complex()
    }

    fn renorm(z: Complex64, exp: i64) -> Self {
        let m = z.re.abs().max(z.im.abs());
        if m == 0.0 {
            return Self::ZERO;
        }
        let (_, de) = frexp(m);
        ScaledComplex {
            mant: Complex64::new(ldexp(z.re, -de), ldexp(z.im, -de)),
            exp: exp + de,
        }
    }
}

impl Default for ScaledComplex {
    fn default() -> Self {
        Self::ZERO
    }
}

impl fmt::Debug for ScaledComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScaledComplex({} * 2^{})", self.mant, self.exp)
    }
}

impl Mul for ScaledComplex {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::renorm(self.mant * o.mant, self.exp + o.exp)
    }
}

impl Div for ScaledComplex {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        Self::renorm(self.mant / o.mant, self.exp - o.exp)
    }
}

impl Neg for ScaledComplex {
    type Output = Self;
    fn neg(self) -> Self {
        ScaledComplex {
            mant: -self.mant,
            exp: self.exp,
        }
    }
}

impl Add for ScaledComplex {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (big, small) = if self.exp >= o.exp {
            (self, o)
        } else {
            (o, self)
        };
        let shift = big.exp - small.exp;
        if shift > 1100 {
            return big;
        }
        let s = Complex64::new(ldexp(small.mant.re, -shift), ldexp(small.mant.im, -shift));
        Self::renorm(big.mant + s, big.exp)
    }
}

impl Sub for ScaledComplex {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}
