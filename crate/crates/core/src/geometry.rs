//! Integer 2x2 matrices, hyperbolic fixed points and the associated forms.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::surd::QuadSurd;
use crate::words::PeriodicWord;

/// `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Mat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    /// Translation `z -> z + 1`.
    pub fn t() -> Self {
        Self::new(1, 1, 0, 1)
    }

    /// `[[1,0],[1,1]]`.
    pub fn v() -> Self {
        Self::new(1, 0, 1, 1)
    }

    /// Inversion `z -> -1/z`.
    pub fn s() -> Self {
        Self::new(0, -1, 1, 0)
    }

    /// The reflection `[[0,1],[1,0]]` of determinant -1.
    pub fn swap() -> Self {
        Self::new(0, 1, 1, 0)
    }

    /// `[[1,1],[1,0]]`, whose attracting fixed point is the golden ratio.
    pub fn golden() -> Self {
        Self::new(1, 1, 1, 0)
    }

    /// `[[2,1],[1,0]]`, whose attracting fixed point is the silver ratio.
    pub fn silver() -> Self {
        Self::new(2, 1, 1, 0)
    }

    /// `T^k`.
    pub fn t_pow(k: impl Into<BigInt>) -> Self {
        Self::new(1, k, 0, 1)
    }

    /// `V^k`.
    pub fn v_pow(k: impl Into<BigInt>) -> Self {
        Self::new(1, 0, k, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    /// Inverse of a matrix with determinant +-1.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.is_one() {
            Ok(Self::new(self.d.clone(), -&self.b, -&self.c, self.a.clone()))
        } else if det == BigInt::from(-1) {
            Ok(Self::new(-&self.d, self.b.clone(), self.c.clone(), -&self.a))
        } else {
            Err(Error::Invalid(format!("matrix with determinant {det} is not invertible over Z")))
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::identity();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Action on a complex point.
    pub fn apply_c64(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
        (z * f(&self.a) + f(&self.b)) / (z * f(&self.c) + f(&self.d))
    }
}

impl<'a> Mul<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn mul(self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// `T^a1 V^a2 T^a3 V^a4 ...` for a word of even length.
pub fn word_to_matrix(word: &PeriodicWord) -> Result<Mat2> {
    if word.len() % 2 != 0 {
        return Err(Error::OddWord(word.len()));
    }
    let mut m = Mat2::identity();
    for pair in word.letters().chunks(2) {
        // T^a V^b = [[1 + ab, a], [b, 1]]
        let (a, b) = (BigInt::from(pair[0]), BigInt::from(pair[1]));
        let step = Mat2::new(BigInt::one() + &a * &b, a, b, 1);
        m = &m * &step;
    }
    Ok(m)
}

/// Integral binary quadratic form `a x^2 + b x y + c y^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndefiniteForm {
    #[serde(serialize_with = "ser_big")]
    pub a: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub b: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub c: BigInt,
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl IndefiniteForm {
    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// `Q(x, 1)` at a real point.
    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        let f = |v: &BigInt| v.to_f64().unwrap_or(f64::NAN);
        (f(&self.a) * x + f(&self.b)) * x + f(&self.c)
    }
}

/// Fixed points of a hyperbolic matrix and its primitive form.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    /// Fixed point `x` with `|c x + d| > 1`.
    pub attracting: QuadSurd,
    /// Galois conjugate of `attracting`.
    pub repelling: QuadSurd,
    /// Primitive form vanishing at both points, signed so that
    /// `attracting = (-b + sqrt(disc)) / (2a)`.
    pub form: IndefiniteForm,
}

fn require_hyperbolic(m: &Mat2) -> Result<BigInt> {
    let det = m.det();
    let tr = m.trace();
    if !det.is_one() || tr.abs() <= BigInt::from(2) {
        return Err(Error::NotHyperbolic {
            det: det.to_string(),
            trace: tr.to_string(),
        });
    }
    Ok(&tr * &tr - 4)
}

pub fn fixed_points(m: &Mat2) -> Result<FixedPoints> {
    let disc = require_hyperbolic(m)?;
    let two_c: BigInt = &m.c * 2;
    let x_plus = QuadSurd::new(&m.a - &m.d, 1, two_c.clone(), disc.clone())?;
    let x_minus = x_plus.conjugate();
    let deriv_den = |x: &QuadSurd| -> QuadSurd {
        (x * &m.c).add_int(&m.d)
    };
    let one = QuadSurd::integer(1, x_plus.d());
    let y = deriv_den(&x_plus);
    let y_abs = if y.signum() == Ordering::Less { -y } else { y };
    let (attracting, repelling) = if y_abs.cmp_exact(&one) == Ordering::Greater {
        (x_plus, x_minus)
    } else {
        (x_minus, x_plus)
    };
    let g = m.c.gcd(&(&m.d - &m.a)).gcd(&m.b);
    let mut form = IndefiniteForm {
        a: &m.c / &g,
        b: (&m.d - &m.a) / &g,
        c: -&m.b / &g,
    };
    // sign so that the root with +sqrt is the attracting point
    let want_positive = attracting.cmp_exact(&repelling) == Ordering::Greater;
    if form.a.is_positive() != want_positive {
        form.a = -form.a;
        form.b = -form.b;
        form.c = -form.c;
    }
    Ok(FixedPoints {
        attracting,
        repelling,
        form,
    })
}

/// Largest root of `x^2 - |tr| x + 1`, the multiplier of the attracting point.
pub fn epsilon(m: &Mat2) -> Result<QuadSurd> {
    let disc = require_hyperbolic(m)?;
    QuadSurd::new(m.trace().abs(), 1, 2, disc)
}

/// `ln(epsilon(m))`.
pub fn log_epsilon(m: &Mat2) -> Result<f64> {
    epsilon(m)?.ln()
}

/// A matrix of determinant 1 with the given attracting fixed point, for a
/// purely periodic continued fraction `[(a1, ..., al)]`.
pub fn matrix_of_period(word: &PeriodicWord) -> Result<Mat2> {
    word_to_matrix(&word.even_form())
}

/// Checks that a point lies strictly above the real axis.
pub(crate) fn require_upper(z: num_complex::Complex64) -> Result<()> {
    if z.im > 0.0 && z.im.is_finite() && z.re.is_finite() {
        Ok(())
    } else {
        Err(Error::NotInUpperHalfPlane)
    }
}
