//! Exact real quadratic irrationalities `(p + q*sqrt(d)) / r`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{self, Mat2};
use crate::scaled::Scaled;
use crate::words::PeriodicWord;

/// Primes up to this bound are tried when removing square factors from a radicand.
pub const DEFAULT_TRIAL_LIMIT: u64 = 1_000_000;

/// Hard cap on continued-fraction digits generated while looking for the period.
pub const DEFAULT_CF_LIMIT: usize = 1_000_000;

/// An element `(p + q*sqrt(d)) / r` of a real quadratic field.
///
/// Normalized so that `r > 0` and `gcd(p, q, r) = 1`. Construction through
/// [`QuadSurd::new`] additionally pulls square factors out of `d` (by trial
/// division, see [`DEFAULT_TRIAL_LIMIT`]). `q == 0` is allowed and denotes a
/// rational element of the field; such values carry the radicand of the field
/// they were computed in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    d: BigInt,
}

/// A continued fraction `[a0; a1, ..., ak, (period)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfExpansion {
    pub preperiod: Vec<BigInt>,
    /// Minimal period.
    pub period: Vec<BigInt>,
}

impl CfExpansion {
    /// Digit `i` (0-based, `a0` first) of the infinite expansion.
    pub fn digit(&self, i: usize) -> &BigInt {
        if i < self.preperiod.len() {
            &self.preperiod[i]
        } else {
            &self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// The period as a word of positive letters.
    pub fn period_word(&self) -> Result<PeriodicWord> {
        let letters = self
            .period
            .iter()
            .map(|a| a.to_u64().filter(|&v| v > 0).ok_or(Error::NonPositiveLetter))
            .collect::<Result<Vec<_>>>()?;
        PeriodicWord::new(letters)
    }
}

fn primes_up_to(limit: u64) -> Vec<u32> {
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

fn default_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(DEFAULT_TRIAL_LIMIT))
}

fn mod_small(digits: &[u32], p: u64) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &w| ((acc << 32) | w as u64) % p)
}

/// Splits `d > 0` as `s^2 * core` using primes up to `limit`. `core` is
/// squarefree whenever `d` has at most one prime factor above the limit.
fn split_square(d: &BigInt, limit: u64) -> (BigInt, BigInt) {
    let owned;
    let primes: &[u32] = if limit == DEFAULT_TRIAL_LIMIT {
        default_primes()
    } else {
        owned = primes_up_to(limit.min(u32::MAX as u64));
        &owned
    };
    let mut n = d.clone();
    let mut s = BigInt::one();
    let mut core = BigInt::one();
    for &p in primes {
        let p64 = p as u64;
        let pb = BigInt::from(p);
        if let Some(small) = n.to_u128() {
            if (p64 as u128) * (p64 as u128) > small {
                break;
            }
            if small % p64 as u128 != 0 {
                continue;
            }
        } else {
            let (_, digits) = n.to_u32_digits();
            if mod_small(&digits, p64) != 0 {
                continue;
            }
        }
        let mut k = 0u32;
        while (&n % &pb).is_zero() {
            n /= &pb;
            k += 1;
        }
        if k / 2 > 0 {
            s *= pb.pow(k / 2);
        }
        if k % 2 == 1 {
            core *= &pb;
        }
    }
    if !n.is_one() {
        let root = n.sqrt();
        if &root * &root == n {
            s *= root;
        } else {
            core *= n;
        }
    }
    (s, core)
}

/// Sign of `a + b*sqrt(n)` for integers `a, b` and `n >= 0`.
fn sign_ab(a: &BigInt, b: &BigInt, n: &BigInt) -> Ordering {
    let sa = a.sign();
    let sb = if n.is_zero() { Sign::NoSign } else { b.sign() };
    let ord = |s: Sign| match s {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    };
    if sb == Sign::NoSign {
        return ord(sa);
    }
    if sa == Sign::NoSign || sa == sb {
        return ord(sb);
    }
    match (a * a).cmp(&(b * b * n)) {
        Ordering::Greater => ord(sa),
        Ordering::Less => ord(sb),
        Ordering::Equal => Ordering::Equal,
    }
}

impl QuadSurd {
    /// Builds and normalizes `(p + q*sqrt(d)) / r`.
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        Self::with_trial_limit(p, q, r, d, DEFAULT_TRIAL_LIMIT)
    }

    /// As [`QuadSurd::new`] with an explicit bound for square-factor removal.
    pub fn with_trial_limit(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        d: impl Into<BigInt>,
        limit: u64,
    ) -> Result<Self> {
        let (p, q, r, d) = (p.into(), q.into(), r.into(), d.into());
        if r.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if !d.is_positive() {
            return Err(Error::NonPositiveRadicand(d.to_string()));
        }
        let (s, core) = split_square(&d, limit.max(2));
        if core.is_one() {
            return Err(Error::SquareRadicand(d.to_string()));
        }
        Ok(Self::from_parts(p, q * s, r, core))
    }

    /// Normalizes sign and common factors; `d` is taken as given.
    pub(crate) fn from_parts(p: BigInt, q: BigInt, r: BigInt, d: BigInt) -> Self {
        debug_assert!(!r.is_zero());
        let g = p.gcd(&q).gcd(&r);
        let (mut p, mut q, mut r) = if g.is_one() || g.is_zero() {
            (p, q, r)
        } else {
            (p / &g, q / &g, r / &g)
        };
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        QuadSurd { p, q, r, d }
    }

    /// The rational integer `n`, viewed in the field with radicand `d`.
    pub fn integer(n: impl Into<BigInt>, d: &BigInt) -> Self {
        QuadSurd {
            p: n.into(),
            q: BigInt::zero(),
            r: BigInt::one(),
            d: d.clone(),
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }
    pub fn q(&self) -> &BigInt {
        &self.q
    }
    pub fn r(&self) -> &BigInt {
        &self.r
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// Galois conjugate `(p - q*sqrt(d)) / r`.
    pub fn conjugate(&self) -> Self {
        QuadSurd {
            p: self.p.clone(),
            q: -&self.q,
            r: self.r.clone(),
            d: self.d.clone(),
        }
    }

    fn field_d(&self, other: &Self) -> BigInt {
        if self.q.is_zero() {
            other.d.clone()
        } else if other.q.is_zero() || self.d == other.d {
            self.d.clone()
        } else {
            panic!(
                "arithmetic between different quadratic fields: sqrt({}) and sqrt({})",
                self.d, other.d
            )
        }
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.q.is_zero() || other.q.is_zero() || self.d == other.d {
            Ok(())
        } else {
            Err(Error::RadicandMismatch(self.d.to_string(), other.d.to_string()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        Ok(self * other)
    }

    /// `1 / self`.
    pub fn recip(&self) -> Result<Self> {
        let norm = &self.p * &self.p - &self.q * &self.q * &self.d;
        if norm.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::from_parts(
            &self.r * &self.p,
            -(&self.r * &self.q),
            norm,
            self.d.clone(),
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        Ok(self * &other.recip()?)
    }

    pub fn add_int(&self, n: &BigInt) -> Self {
        Self::from_parts(&self.p + n * &self.r, self.q.clone(), self.r.clone(), self.d.clone())
    }

    pub fn sub_int(&self, n: &BigInt) -> Self {
        Self::from_parts(&self.p - n * &self.r, self.q.clone(), self.r.clone(), self.d.clone())
    }

    /// Field norm `self * conj(self)` as a reduced fraction `(num, den)`, `den > 0`.
    pub fn norm(&self) -> (BigInt, BigInt) {
        let num = &self.p * &self.p - &self.q * &self.q * &self.d;
        let den = &self.r * &self.r;
        let g = num.gcd(&den);
        (num / &g, den / g)
    }

    /// Primitive `(A, B, C)` with `A > 0` and `A x^2 + B x + C = 0`.
    pub fn minimal_polynomial(&self) -> Result<(BigInt, BigInt, BigInt)> {
        if self.is_rational() {
            return Err(Error::Rational);
        }
        // (r x - p)^2 = q^2 d
        let a = &self.r * &self.r;
        let b = BigInt::from(-2) * &self.p * &self.r;
        let c = &self.p * &self.p - &self.q * &self.q * &self.d;
        let g = a.gcd(&b).gcd(&c);
        Ok((a / &g, b / &g, c / g))
    }

    /// Discriminant `B^2 - 4AC` of the minimal polynomial.
    pub fn discriminant(&self) -> Result<BigInt> {
        let (a, b, c) = self.minimal_polynomial()?;
        Ok(&b * &b - BigInt::from(4) * a * c)
    }

    /// Sign of the value, exactly.
    pub fn signum(&self) -> Ordering {
        sign_ab(&self.p, &self.q, &self.d)
    }

    /// Exact order, valid across different radicands.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        let big = &self.p * &other.r - &other.p * &self.r;
        let q1 = &self.q * &other.r;
        let q2 = &other.q * &self.r;
        if self.d == other.d || q1.is_zero() || q2.is_zero() {
            let d = if q1.is_zero() { &other.d } else { &self.d };
            let qq = if self.d == other.d { &q1 - &q2 } else if q1.is_zero() { -q2 } else { q1 };
            return sign_ab(&big, &qq, d);
        }
        // sign of big + q1*sqrt(d1) - q2*sqrt(d2)
        let u = q1.sign();
        let v = (-&q2).sign();
        let irr = if u == v {
            u
        } else {
            match (&q1 * &q1 * &self.d).cmp(&(&q2 * &q2 * &other.d)) {
                Ordering::Greater => u,
                Ordering::Less => v,
                Ordering::Equal => Sign::NoSign,
            }
        };
        let to_ord = |s: Sign| match s {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        };
        let sp = big.sign();
        if sp == Sign::NoSign {
            return to_ord(irr);
        }
        if irr == Sign::NoSign || irr == sp {
            return to_ord(sp);
        }
        // |big| against |q1 sqrt(d1) - q2 sqrt(d2)|, by squaring both sides
        let a = &big * &big - &q1 * &q1 * &self.d - &q2 * &q2 * &other.d;
        let b = BigInt::from(2) * &q1 * &q2;
        let n = &self.d * &other.d;
        match sign_ab(&a, &b, &n) {
            Ordering::Greater => to_ord(sp),
            Ordering::Less => to_ord(irr),
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// `floor(self)`, exactly.
    pub fn floor(&self) -> BigInt {
        if self.q.is_zero() {
            return self.p.div_floor(&self.r);
        }
        let m = (&self.q * &self.q * &self.d).sqrt();
        let n = if self.q.is_positive() {
            &self.p + m
        } else {
            &self.p - m - 1
        };
        n.div_floor(&self.r)
    }

    fn scaled(&self) -> Scaled {
        let sp = Scaled::from_bigint(&self.p);
        let sr = Scaled::from_bigint(&self.r);
        if self.q.is_zero() {
            return sp.div(sr);
        }
        let root = Scaled::from_bigint(&self.q.abs()).mul(Scaled::from_bigint(&self.d).sqrt());
        let irr = if self.q.is_negative() { root.neg() } else { root };
        if self.p.is_zero() || self.p.sign() == self.q.sign() {
            return sp.add(irr).div(sr);
        }
        // opposite signs: rationalize to avoid cancellation
        let norm = &self.p * &self.p - &self.q * &self.q * &self.d;
        Scaled::from_bigint(&norm).div(sr.mul(sp.add(irr.neg())))
    }

    /// Nearest-ish `f64`; accurate to a few ulps even for huge components.
    pub fn to_f64(&self) -> f64 {
        self.scaled().to_f64()
    }

    /// `ln(self)` for a positive value, accurate for values far outside the `f64` range.
    pub fn ln(&self) -> Result<f64> {
        if self.signum() != Ordering::Greater {
            return Err(Error::OutOfDomain("logarithm of a non-positive surd".into()));
        }
        Ok(self.scaled().ln())
    }

    /// `(a x + b) / (c x + d)` for `x = self`.
    pub fn mobius(&self, m: &Mat2) -> Result<Self> {
        let num = &(self * &m.a) + &Self::integer(m.b.clone(), &self.d);
        let den = &(self * &m.c) + &Self::integer(m.d.clone(), &self.d);
        num.checked_div(&den)
    }

    fn mul_big(&self, n: &BigInt) -> Self {
        Self::from_parts(&self.p * n, &self.q * n, self.r.clone(), self.d.clone())
    }

    /// Continued fraction with period detection.
    pub fn cf_expand(&self) -> Result<CfExpansion> {
        let bound = self.cf_bound()?;
        self.cf_expand_with_limit(bound)
    }

    fn cf_bound(&self) -> Result<usize> {
        let disc = self.discriminant()?;
        let bits = (self.p.bits() + self.q.bits() + self.r.bits()) as usize;
        let by_disc = disc
            .to_usize()
            .and_then(|d| d.checked_mul(2))
            .unwrap_or(usize::MAX);
        Ok(by_disc
            .saturating_add(8 * bits + 64)
            .min(DEFAULT_CF_LIMIT))
    }

    /// As [`QuadSurd::cf_expand`] but giving up after `limit` digits.
    pub fn cf_expand_with_limit(&self, limit: usize) -> Result<CfExpansion> {
        if self.is_rational() {
            return Err(Error::Rational);
        }
        let mut x = self.clone();
        let mut seen: HashMap<QuadSurd, usize> = HashMap::new();
        let mut digits = Vec::new();
        loop {
            if let Some(&start) = seen.get(&x) {
                let period = digits.split_off(start);
                return Ok(CfExpansion {
                    preperiod: digits,
                    period,
                });
            }
            if digits.len() >= limit {
                return Err(Error::InternalOverflow(limit));
            }
            let a = x.floor();
            let next = x.sub_int(&a).recip()?;
            seen.insert(x, digits.len());
            digits.push(a);
            x = next;
        }
    }

    /// Attracting fixed point of the word's matrix, i.e. `[a1; a2, ..., (period)]`
    /// for the even form of the word.
    pub fn value_of_period(word: &PeriodicWord) -> Result<Self> {
        let m = geometry::word_to_matrix(&word.even_form())?;
        Ok(geometry::fixed_points(&m)?.attracting)
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.q.is_negative() { '-' } else { '+' };
        write!(f, "({}{}{}*sqrt({}))/{}", self.p, sign, self.q.abs(), self.d, self.r)
    }
}

fn big_json<S: SerializeStruct>(s: &mut S, key: &'static str, v: &BigInt) -> std::result::Result<(), S::Error> {
    match v.to_i64() {
        Some(small) => s.serialize_field(key, &small),
        None => s.serialize_field(key, &v.to_string()),
    }
}

/// Serialized as `{p, q, r, d}`; components beyond 64 bits become decimal strings.
impl Serialize for QuadSurd {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("QuadSurd", 4)?;
        big_json(&mut s, "p", &self.p)?;
        big_json(&mut s, "q", &self.q)?;
        big_json(&mut s, "r", &self.r)?;
        big_json(&mut s, "d", &self.d)?;
        s.end()
    }
}

impl<'a> Add<&'a QuadSurd> for &'a QuadSurd {
    type Output = QuadSurd;
    fn add(self, o: &QuadSurd) -> QuadSurd {
        let d = self.field_d(o);
        QuadSurd::from_parts(
            &self.p * &o.r + &o.p * &self.r,
            &self.q * &o.r + &o.q * &self.r,
            &self.r * &o.r,
            d,
        )
    }
}

impl<'a> Sub<&'a QuadSurd> for &'a QuadSurd {
    type Output = QuadSurd;
    fn sub(self, o: &QuadSurd) -> QuadSurd {
        self + &(-o)
    }
}

impl<'a> Mul<&'a QuadSurd> for &'a QuadSurd {
    type Output = QuadSurd;
    fn mul(self, o: &QuadSurd) -> QuadSurd {
        let d = self.field_d(o);
        QuadSurd::from_parts(
            &self.p * &o.p + &self.q * &o.q * &d,
            &self.p * &o.q + &o.p * &self.q,
            &self.r * &o.r,
            d,
        )
    }
}

impl Mul<&BigInt> for &QuadSurd {
    type Output = QuadSurd;
    fn mul(self, n: &BigInt) -> QuadSurd {
        self.mul_big(n)
    }
}

impl Neg for &QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd {
            p: -&self.p,
            q: -&self.q,
            r: self.r.clone(),
            d: self.d.clone(),
        }
    }
}

impl Neg for QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        -&self
    }
}

/// Orders two irrationals by walking their continued fractions.
pub fn cf_compare(u: &CfExpansion, v: &CfExpansion) -> Ordering {
    let pre = u.preperiod.len().max(v.preperiod.len());
    let span = pre + u.period.len() * v.period.len();
    for i in 0..span {
        match u.digit(i).cmp(v.digit(i)) {
            Ordering::Equal => continue,
            ord if i % 2 == 0 => return ord,
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64, r: i64, d: i64) -> QuadSurd {
        QuadSurd::new(p, q, r, d).unwrap()
    }

    fn digits(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn normalization() {
        let x = s(2, 2, 4, 5);
        assert_eq!((x.p(), x.q(), x.r()), (&1.into(), &1.into(), &2.into()));
        let y = s(1, 1, -2, 20);
        assert_eq!(y, s(-1, -2, 2, 5));
        assert_eq!(y.d(), &BigInt::from(5));
        assert!(matches!(QuadSurd::new(1, 1, 0, 5), Err(Error::ZeroDenominator)));
        assert!(matches!(QuadSurd::new(1, 1, 2, 49), Err(Error::SquareRadicand(_))));
        assert!(matches!(QuadSurd::new(1, 1, 2, -3), Err(Error::NonPositiveRadicand(_))));
    }

    #[test]
    fn square_part_of_large_radicand() {
        let p = BigInt::from(1_000_003u64); // prime above the trial bound
        let d = &p * &p * BigInt::from(12);
        let x = QuadSurd::new(0, 1, 1, d).unwrap();
        assert_eq!(x.d(), &BigInt::from(3));
        assert_eq!(x.q(), &(p * 2));
    }

    #[test]
    fn golden_and_silver_expansions() {
        let phi = s(1, 1, 2, 5);
        let e = phi.cf_expand().unwrap();
        assert_eq!(e.preperiod, Vec::<BigInt>::new());
        assert_eq!(e.period, digits(&[1]));
        let psi = s(1, 1, 1, 2);
        let e = psi.cf_expand().unwrap();
        assert_eq!(e.period, digits(&[2]));
        assert!(e.preperiod.is_empty());
        let root2 = s(0, 1, 1, 2);
        let e = root2.cf_expand().unwrap();
        assert_eq!(e.preperiod, digits(&[1]));
        assert_eq!(e.period, digits(&[2]));
    }

    #[test]
    fn floor_is_exact() {
        assert_eq!(s(1, 1, 2, 5).floor(), BigInt::from(1));
        assert_eq!(s(1, -1, 2, 5).floor(), BigInt::from(-1));
        assert_eq!(s(0, -1, 1, 2).floor(), BigInt::from(-2));
        assert_eq!(s(-7, 3, 5, 11).floor(), BigInt::from(0));
    }

    #[test]
    fn reciprocal_and_conjugate() {
        let phi = s(1, 1, 2, 5);
        assert_eq!(phi.recip().unwrap(), phi.sub_int(&BigInt::one()));
        assert_eq!(phi.conjugate(), s(1, -1, 2, 5));
        assert_eq!(phi.norm(), (BigInt::from(-1), BigInt::one()));
        assert_eq!(phi.minimal_polynomial().unwrap(), (1.into(), (-1).into(), (-1).into()));
    }

    #[test]
    fn exact_comparison_across_fields() {
        let phi = s(1, 1, 2, 5);
        let r3 = s(0, 1, 1, 3);
        assert_eq!(phi.cmp_exact(&r3), Ordering::Less);
        assert_eq!(r3.cmp_exact(&phi), Ordering::Greater);
        // sqrt(2) + sqrt(3) vs sqrt(10)
        let a = &s(0, 1, 1, 2) + &QuadSurd::integer(0, &BigInt::from(2));
        assert_eq!(a.cmp_exact(&s(0, 1, 1, 10)), Ordering::Less);
        assert_eq!(phi.cmp_exact(&phi.clone()), Ordering::Equal);
        assert_eq!(
            QuadSurd::integer(2, &BigInt::from(5)).cmp_exact(&s(0, 1, 1, 3)),
            Ordering::Greater
        );
    }

    #[test]
    fn float_conversion_handles_cancellation() {
        // (big + sqrt(big^2 - 1)) - big and conjugates
        let n = BigInt::from(10).pow(40);
        let x = QuadSurd::new(n.clone(), -1, 1, &n * &n + 1).unwrap();
        let f = x.to_f64();
        assert!((f + 0.5e-40).abs() < 1e-55, "{f}");
        assert!((s(1, 1, 2, 5).to_f64() - 1.618033988749895).abs() < 1e-15);
    }

    #[test]
    fn compare_via_digits() {
        let phi = s(1, 1, 2, 5).cf_expand().unwrap();
        let psi = s(1, 1, 1, 2).cf_expand().unwrap();
        let r2 = s(0, 1, 1, 2).cf_expand().unwrap();
        assert_eq!(cf_compare(&phi, &psi), Ordering::Less);
        assert_eq!(cf_compare(&r2, &phi), Ordering::Less);
        assert_eq!(cf_compare(&psi, &psi), Ordering::Equal);
    }

    #[test]
    fn display_literal() {
        assert_eq!(s(1, -1, 2, 5).to_string(), "(1-1*sqrt(5))/2");
    }
}
