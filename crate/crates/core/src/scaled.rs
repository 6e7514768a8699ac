//! Floating values with an unbounded binary exponent.
//!
//! Surd components for long words run to thousands of bits, far past the
//! `f64` range, while the quantities we need from them (values near 1..10,
//! logarithms of fundamental units) are perfectly ordinary.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// `m * 2^e` with `0.5 <= |m| < 1`, or `m == 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Scaled {
    m: f64,
    e: i64,
}

fn ldexp(x: f64, mut e: i64) -> f64 {
    let mut x = x;
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let raw = ((bits >> 52) & 0x7ff) as i64;
    if raw == 0 {
        // subnormal: lift into the normal range first
        let (m, e) = frexp(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let e = raw - 1022;
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, e)
}

impl Scaled {
    pub(crate) const ZERO: Scaled = Scaled { m: 0.0, e: 0 };

    pub(crate) fn from_f64(x: f64) -> Self {
        let (m, e) = frexp(x);
        Scaled { m, e }
    }

    pub(crate) fn from_bigint(x: &BigInt) -> Self {
        if x.is_zero() {
            return Self::ZERO;
        }
        let bits = x.bits();
        if bits <= 960 {
            return Self::from_f64(x.to_f64().unwrap_or(f64::NAN));
        }
        let shift = bits - 64;
        let top: BigInt = x.abs() >> shift;
        let mut s = Self::from_f64(top.to_f64().unwrap_or(f64::NAN));
        if x.is_negative() {
            s.m = -s.m;
        }
        s.e += shift as i64;
        s
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.m == 0.0
    }

    pub(crate) fn mul(self, o: Scaled) -> Scaled {
        let (m, e) = frexp(self.m * o.m);
        Scaled { m, e: e + self.e + o.e }
    }

    pub(crate) fn div(self, o: Scaled) -> Scaled {
        let (m, e) = frexp(self.m / o.m);
        Scaled { m, e: e + self.e - o.e }
    }

    pub(crate) fn add(self, o: Scaled) -> Scaled {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (big, small) = if self.e >= o.e { (self, o) } else { (o, self) };
        let m = big.m + ldexp(small.m, small.e - big.e);
        let (m, e) = frexp(m);
        Scaled { m, e: e + big.e }
    }

    pub(crate) fn neg(self) -> Scaled {
        Scaled { m: -self.m, e: self.e }
    }

    pub(crate) fn sqrt(self) -> Scaled {
        let (mut m, mut e) = (self.m, self.e);
        if e % 2 != 0 {
            m *= 2.0;
            e -= 1;
        }
        let (m, e2) = frexp(m.sqrt());
        Scaled { m, e: e / 2 + e2 }
    }

    pub(crate) fn to_f64(self) -> f64 {
        ldexp(self.m, self.e)
    }

    /// Natural logarithm of a positive value.
    pub(crate) fn ln(self) -> f64 {
        self.m.ln() + self.e as f64 * std::f64::consts::LN_2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_and_huge_values() {
        for x in [1.0, -3.5, 1e-300, 7e300, 0.1] {
            assert_eq!(Scaled::from_f64(x).to_f64(), x);
        }
        let big = BigInt::from(10).pow(400);
        let s = Scaled::from_bigint(&big);
        assert!((s.ln() - 400.0 * 10f64.ln()).abs() < 1e-12);
        let r = s.div(Scaled::from_bigint(&(BigInt::from(10).pow(399) * 4)));
        assert!((r.to_f64() - 2.5).abs() < 1e-15);
        assert!((s.sqrt().ln() - 200.0 * 10f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn addition_aligns_exponents() {
        let a = Scaled::from_f64(3.0);
        let b = Scaled::from_f64(-0.25);
        assert_eq!(a.add(b).to_f64(), 2.75);
        assert_eq!(a.add(a.neg()).to_f64(), 0.0);
    }
}
