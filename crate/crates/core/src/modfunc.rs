//! Weakly holomorphic modular functions given by `q`-expansions.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::OnceLock;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{require_upper, Mat2};

/// Default number of stored coefficients of `j` beyond the constant term.
pub const DEFAULT_N_MAX: usize = 60;
/// Largest coefficient count accepted.
pub const N_MAX_CAP: usize = 10_000;
/// Points sampled on the arc when checking the arc hypotheses.
const ARC_SAMPLES: usize = 257;
/// Multiplier applied to the observed coefficient growth when bounding tails.
const TAIL_SAFETY: f64 = 4.0;

/// `f(tau) = sum_{n >= -pole_order} c_n q^n`, `q = exp(2 pi i tau)`.
#[derive(Clone, Debug)]
pub struct ModularFunction {
    name: String,
    pole_order: usize,
    coeffs: Vec<BigInt>,
    coeffs_f64: Vec<f64>,
    arc: ArcReport,
}

/// Outcome of the numerical check that `f` is real, non-negative and
/// non-decreasing along the arc from `rho` to `i`.
#[derive(Clone, Debug, Serialize)]
pub struct ArcReport {
    pub max_imag: f64,
    pub min_value: f64,
    /// Most negative step between consecutive samples on `[pi/3, pi/2]`.
    pub worst_decrease: f64,
    pub real: bool,
    pub non_negative: bool,
    pub increasing: bool,
}

impl ArcReport {
    pub fn holds(&self) -> bool {
        self.real && self.non_negative && self.increasing
    }
}

/// A value of `f` together with a bound on the neglected part of the series.
#[derive(Clone, Copy, Debug)]
pub struct Evaluation {
    pub value: Complex64,
    pub tail_bound: f64,
}

fn sigma(n: usize, k: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

fn series_mul(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// `prod_{n >= 1} (1 - q^n)` through `q^(len-1)`, by the pentagonal number theorem.
fn euler_product(len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    out[0] = BigInt::one();
    let mut k: i64 = 1;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let e1 = (k * (3 * k - 1) / 2) as usize;
        let e2 = (k * (3 * k + 1) / 2) as usize;
        if e1 >= len {
            break;
        }
        out[e1] += sign;
        if e2 < len {
            out[e2] += sign;
        }
        k += 1;
    }
    out
}

/// Coefficients `c_{-1}, c_0, ..., c_{n_max}` of `j`, exactly, from `E4^3 / Delta`.
pub fn j_coefficients(n_max: usize) -> Result<Vec<BigInt>> {
    if n_max > N_MAX_CAP {
        return Err(Error::ResourceLimit(format!(
            "n_max {n_max} exceeds cap {N_MAX_CAP}"
        )));
    }
    let len = n_max + 2;
    let mut e4 = vec![BigInt::one(); len];
    for (n, c) in e4.iter_mut().enumerate().skip(1) {
        *c = sigma(n, 3) * 240;
    }
    let e4_cubed = series_mul(&series_mul(&e4, &e4, len), &e4, len);
    let p1 = euler_product(len);
    let p2 = series_mul(&p1, &p1, len);
    let p4 = series_mul(&p2, &p2, len);
    let p8 = series_mul(&p4, &p4, len);
    let p16 = series_mul(&p8, &p8, len);
    let delta_over_q = series_mul(&p16, &p8, len);
    // q j = E4^3 / (Delta / q); the divisor has constant term 1
    let mut qj = vec![BigInt::zero(); len];
    for n in 0..len {
        let mut acc = e4_cubed[n].clone();
        for k in 1..=n {
            acc -= &delta_over_q[k] * &qj[n - k];
        }
        qj[n] = acc;
    }
    Ok(qj)
}

fn cached_j() -> &'static [BigInt] {
    static J: OnceLock<Vec<BigInt>> = OnceLock::new();
    J.get_or_init(|| j_coefficients(DEFAULT_N_MAX).expect("default size is within cap"))
}

/// Maps `tau` into the standard fundamental domain, returning the image and
/// the matrix used.
pub fn reduce_to_fundamental_domain(tau: Complex64) -> Result<(Complex64, Mat2)> {
    require_upper(tau)?;
    let mut z = tau;
    let (mut a, mut b, mut c, mut d) = (1i64, 0i64, 0i64, 1i64);
    let overflow = || Error::NonConvergence("reduction matrix overflowed".into());
    for _ in 0..10_000 {
        let n = z.re.round();
        if n != 0.0 {
            z.re -= n;
            let n = n as i64;
            // T^-n * M
            a = a.checked_sub(n.checked_mul(c).ok_or_else(overflow)?).ok_or_else(overflow)?;
            b = b.checked_sub(n.checked_mul(d).ok_or_else(overflow)?).ok_or_else(overflow)?;
        }
        if z.norm_sqr() < 1.0 - 1e-14 {
            z = -z.inv();
            // S * M
            let (na, nb, nc, nd) = (-c, -d, a, b);
            a = na;
            b = nb;
            c = nc;
            d = nd;
        } else {
            if !(z.im > 0.0) || !z.im.is_finite() {
                return Err(Error::NonConvergence("lost the upper half-plane".into()));
            }
            return Ok((z, Mat2::new(a, b, c, d)));
        }
    }
    Err(Error::NonConvergence("fundamental-domain reduction".into()))
}

thread_local! {
    static CONSTS: RefCell<Option<Consts>> = const { RefCell::new(None) };
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cell| {
        let mut slot = cell.borrow_mut();
        let cc = slot.get_or_insert_with(|| Consts::new().expect("astro-float constants"));
        f(cc)
    })
}

fn bigfloat_to_f64(x: &BigFloat) -> f64 {
    match x.as_raw_parts() {
        Some((words, _, sign, exp, _)) if !words.is_empty() => {
            let top = *words.last().unwrap() as f64;
            let v = top * 2f64.powi(exp - 64);
            if sign == astro_float::Sign::Neg {
                -v
            } else {
                v
            }
        }
        _ => 0.0,
    }
}

impl ModularFunction {
    /// `j` with the default number of coefficients.
    pub fn j() -> Self {
        Self::build("j", 1, cached_j().to_vec())
    }

    /// `j` with coefficients through `q^n_max`.
    pub fn j_with_terms(n_max: usize) -> Result<Self> {
        if n_max == DEFAULT_N_MAX {
            return Ok(Self::j());
        }
        Ok(Self::build("j", 1, j_coefficients(n_max)?))
    }

    /// The constant function 1.
    pub fn one() -> Self {
        Self::build("one", 0, vec![BigInt::one()])
    }

    /// A function from its coefficients `c_{-pole_order}, c_{-pole_order+1}, ...`.
    ///
    /// Rejected unless real, non-negative and non-decreasing on the arc. The
    /// coefficient list is treated as the complete expansion when it has fewer
    /// than three entries; otherwise its tail is estimated from the growth of
    /// the last stored coefficients.
    pub fn from_coefficients(name: &str, pole_order: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("empty coefficient list".into()));
        }
        if coeffs.len() > N_MAX_CAP + pole_order + 1 {
            return Err(Error::ResourceLimit(format!(
                "{} coefficients exceed cap {}",
                coeffs.len(),
                N_MAX_CAP
            )));
        }
        let f = Self::build(name, pole_order, coeffs);
        if !f.arc.holds() {
            return Err(Error::ArcHypothesis(format!("{:?}", f.arc)));
        }
        Ok(f)
    }

    fn build(name: &str, pole_order: usize, coeffs: Vec<BigInt>) -> Self {
        let coeffs_f64 = coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
        let mut f = ModularFunction {
            name: name.to_string(),
            pole_order,
            coeffs,
            coeffs_f64,
            arc: ArcReport {
                max_imag: 0.0,
                min_value: 0.0,
                worst_decrease: 0.0,
                real: true,
                non_negative: true,
                increasing: true,
            },
        };
        f.arc = f.check_arc();
        f
    }

    fn check_arc(&self) -> ArcReport {
        let mut max_imag: f64 = 0.0;
        let mut min_value = f64::INFINITY;
        let mut worst_decrease: f64 = 0.0;
        let mut prev: Option<f64> = None;
        for k in 0..ARC_SAMPLES {
            let t = PI / 3.0 + (PI / 3.0) * k as f64 / (ARC_SAMPLES - 1) as f64;
            let v = match self.evaluate_reduced(Complex64::from_polar(1.0, t)) {
                Ok(e) => e.value,
                Err(_) => Complex64::new(f64::NAN, f64::NAN),
            };
            let scale = v.re.abs().max(1.0);
            max_imag = max_imag.max(v.im.abs() / scale);
            min_value = min_value.min(v.re);
            if 2 * k < ARC_SAMPLES {
                if let Some(p) = prev {
                    worst_decrease = worst_decrease.min((v.re - p) / scale);
                }
                prev = Some(v.re);
            }
        }
        let tol = 1e-8;
        ArcReport {
            max_imag,
            min_value,
            worst_decrease,
            real: max_imag <= tol,
            non_negative: min_value >= -tol,
            increasing: worst_decrease >= -tol,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pole_order(&self) -> usize {
        self.pole_order
    }

    /// Largest stored exponent.
    pub fn n_max(&self) -> i64 {
        self.coeffs.len() as i64 - 1 - self.pole_order as i64
    }

    /// `c_n`, if stored.
    pub fn coefficient(&self, n: i64) -> Option<&BigInt> {
        let idx = n + self.pole_order as i64;
        if idx < 0 {
            return None;
        }
        self.coeffs.get(idx as usize)
    }

    /// All stored coefficients, lowest exponent first.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn arc_report(&self) -> &ArcReport {
        &self.arc
    }

    fn tail_bound(&self, q_abs: f64) -> f64 {
        let n = self.coeffs.len();
        if n < 3 {
            return 0.0;
        }
        let last = self.coeffs_f64[n - 1].abs();
        let prev = self.coeffs_f64[n - 2].abs();
        let growth = if prev > 0.0 { (last / prev).max(1.0) } else { last.max(1.0) };
        let x = growth * TAIL_SAFETY * q_abs;
        if x >= 0.5 {
            return f64::INFINITY;
        }
        let top_exp = self.n_max() as f64;
        last * q_abs.powf(top_exp) * x / (1.0 - x)
    }

    /// Series evaluation for a point already in the fundamental domain.
    pub fn evaluate_reduced(&self, tau: Complex64) -> Result<Evaluation> {
        require_upper(tau)?;
        let q = (Complex64::new(0.0, 2.0 * PI) * tau).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs_f64.iter().rev() {
            acc = acc * q + *c;
        }
        let value = if self.pole_order > 0 {
            acc / q.powu(self.pole_order as u32)
        } else {
            acc
        };
        Ok(Evaluation {
            value,
            tail_bound: self.tail_bound(q.norm()),
        })
    }

    /// `f(tau)`, reducing `tau` first.
    pub fn evaluate(&self, tau: Complex64) -> Result<Evaluation> {
        let (z, _) = reduce_to_fundamental_domain(tau)?;
        self.evaluate_reduced(z)
    }

    /// As [`ModularFunction::evaluate`], failing when the tail exceeds `tol`.
    pub fn evaluate_within(&self, tau: Complex64, tol: f64) -> Result<Complex64> {
        let e = self.evaluate(tau)?;
        if e.tail_bound > tol {
            return Err(Error::PrecisionLoss(format!(
                "series tail bound {:e} exceeds {:e}",
                e.tail_bound, tol
            )));
        }
        Ok(e.value)
    }

    fn check_arc_angle(t: f64) -> Result<()> {
        let slack = 1e-12;
        if !(t >= PI / 3.0 - slack && t <= 2.0 * PI / 3.0 + slack) {
            return Err(Error::OutOfDomain(format!("angle {t} outside [pi/3, 2pi/3]")));
        }
        Ok(())
    }

    fn check_real(&self, v: Complex64) -> Result<f64> {
        if v.im.abs() > 1e-8 * v.re.abs().max(1.0) {
            return Err(Error::RealityViolation(v.im));
        }
        Ok(v.re)
    }

    /// `f(e^{it})` for `t` in `[pi/3, 2pi/3]`, checked to be real.
    pub fn arc_value(&self, t: f64) -> Result<f64> {
        Self::check_arc_angle(t)?;
        let e = self.evaluate_reduced(Complex64::from_polar(1.0, t))?;
        self.check_real(e.value)
    }

    /// [`ModularFunction::arc_value`] with the series summed in `bits`-bit arithmetic.
    pub fn arc_value_extended(&self, t: f64, bits: usize) -> Result<f64> {
        Self::check_arc_angle(t)?;
        let v = self.evaluate_extended_arc(t, bits);
        self.check_real(v)
    }

    fn evaluate_extended_arc(&self, t: f64, bits: usize) -> Complex64 {
        let rm = RoundingMode::ToEven;
        let p = bits.max(64);
        with_consts(|cc| {
            let tb = BigFloat::from_f64(t, p);
            let two_pi = cc.pi(p, rm).mul(&BigFloat::from_f64(2.0, p), p, rm);
            let (c, s) = (tb.cos(p, rm, cc), tb.sin(p, rm, cc));
            let modulus = two_pi.mul(&s, p, rm).neg().exp(p, rm, cc);
            let theta = two_pi.mul(&c, p, rm);
            let qr = modulus.mul(&theta.cos(p, rm, cc), p, rm);
            let qi = modulus.mul(&theta.sin(p, rm, cc), p, rm);
            let mut ar = BigFloat::from_f64(0.0, p);
            let mut ai = BigFloat::from_f64(0.0, p);
            for coeff in self.coeffs.iter().rev() {
                let cb = BigFloat::parse(&coeff.to_string(), Radix::Dec, p, rm, cc);
                let nr = ar.mul(&qr, p, rm).sub(&ai.mul(&qi, p, rm), p, rm).add(&cb, p, rm);
                let ni = ar.mul(&qi, p, rm).add(&ai.mul(&qr, p, rm), p, rm);
                ar = nr;
                ai = ni;
            }
            for _ in 0..self.pole_order {
                // divide by q = modulus * e^{i theta}
                let cr = theta.cos(p, rm, cc);
                let ci = theta.sin(p, rm, cc);
                let nr = ar.mul(&cr, p, rm).add(&ai.mul(&ci, p, rm), p, rm).div(&modulus, p, rm);
                let ni = ai.mul(&cr, p, rm).sub(&ar.mul(&ci, p, rm), p, rm).div(&modulus, p, rm);
                ar = nr;
                ai = ni;
            }
            Complex64::new(bigfloat_to_f64(&ar), bigfloat_to_f64(&ai))
        })
    }

    /// Coefficient table as `(n, c_n)` pairs.
    pub fn coefficient_table(&self) -> Vec<(i64, BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (i as i64 - self.pole_order as i64, c.clone()))
            .collect()
    }

    /// Whether every stored coefficient is non-negative.
    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}
