//! Orbit sums of a periodic word and the value `val_f(w)`.
//!
//! For an even word `(a1, ..., al)` with rotation values
//! `v_i = [a_i; a_(i+1), ...]`, the orbit terms are
//! `w_(i,m) = m + 1/v_(i+1)` for `1 <= m <= a_i`. Every kernel sum in this
//! module runs over those terms.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::Serialize;

use crate::config::Precision;
use crate::error::{Error, Result};
use crate::geometry::{self, Mat2};
use crate::kernels;
use crate::modfunc::ModularFunction;
use crate::quad::{integrate, try_integrate};
use crate::surd::QuadSurd;
use crate::words::PeriodicWord;

/// Absolute tolerance on `|S_L(w) - log(eps)|` accepted by [`Orbit::sum_l`].
pub const LOG_MASS_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct OrbitTerm {
    /// 1-based rotation index.
    pub i: usize,
    pub m: u64,
    pub value: QuadSurd,
    pub approx: f64,
}

/// Exact orbit data of one word.
#[derive(Clone, Debug)]
pub struct Orbit {
    word: PeriodicWord,
    rotations: Vec<QuadSurd>,
    terms: Vec<OrbitTerm>,
    epsilon: QuadSurd,
    log_epsilon: f64,
}

impl Orbit {
    /// Builds the orbit of the even form of `word`.
    pub fn new(word: &PeriodicWord) -> Result<Self> {
        let word = word.even_form();
        let matrix = geometry::word_to_matrix(&word)?;
        let v1 = geometry::fixed_points(&matrix)?.attracting;
        let n = word.len();
        let mut rotations = Vec::with_capacity(n);
        let mut v = v1.clone();
        for &a in word.letters() {
            let next = v.sub_int(&BigInt::from(a)).recip()?;
            rotations.push(v);
            v = next;
        }
        if v != v1 {
            return Err(Error::NonConvergence("rotation values did not close up".into()));
        }
        let mut terms = Vec::new();
        for i in 1..=n {
            let a_i = word.letter(i as isize);
            // v_i - a_i = 1 / v_(i+1)
            let frac = rotations[i - 1].sub_int(&BigInt::from(a_i));
            for m in 1..=a_i {
                let value = frac.add_int(&BigInt::from(m));
                let approx = value.to_f64();
                terms.push(OrbitTerm { i, m, value, approx });
            }
        }
        let epsilon = geometry::epsilon(&matrix)?;
        let log_epsilon = epsilon.ln()?;
        Ok(Orbit {
            word,
            rotations,
            terms,
            epsilon,
            log_epsilon,
        })
    }

    pub fn word(&self) -> &PeriodicWord {
        &self.word
    }

    /// `v_1, ..., v_l`.
    pub fn rotations(&self) -> &[QuadSurd] {
        &self.rotations
    }

    pub fn terms(&self) -> &[OrbitTerm] {
        &self.terms
    }

    pub fn epsilon(&self) -> &QuadSurd {
        &self.epsilon
    }

    pub fn log_epsilon(&self) -> f64 {
        self.log_epsilon
    }

    pub fn term_values(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.approx).collect()
    }

    /// `v_1 v_2 ... v_l`, exactly.
    pub fn rotation_product(&self) -> QuadSurd {
        let mut acc = QuadSurd::integer(1, self.epsilon.d());
        for v in &self.rotations {
            acc = &acc * v;
        }
        acc
    }

    /// Sum of `k(w_(i,m))` over the orbit.
    pub fn sum_with(&self, k: impl Fn(f64) -> f64) -> f64 {
        self.terms.iter().map(|t| k(t.approx)).sum()
    }

    /// `S_L(w)` summed directly.
    pub fn sum_l_direct(&self) -> f64 {
        self.sum_with(kernels::log_mass)
    }

    /// `S_L(w) = log(eps)`, after checking the direct sum agrees.
    pub fn sum_l(&self) -> Result<f64> {
        let direct = self.sum_l_direct();
        let gap = (direct - self.log_epsilon).abs();
        if gap > LOG_MASS_TOLERANCE * self.log_epsilon.max(1.0) {
            return Err(Error::PrecisionLoss(format!(
                "orbit log-mass {direct} differs from log(eps) {} by {gap:e}",
                self.log_epsilon
            )));
        }
        Ok(self.log_epsilon)
    }

    pub fn sum_f(&self, t: f64) -> f64 {
        self.sum_with(|x| kernels::density(x, t))
    }

    pub fn sum_g(&self, t: f64) -> f64 {
        self.sum_with(|x| kernels::slope(x, t))
    }

    pub fn sum_h(&self, t: f64) -> f64 {
        self.sum_with(|x| kernels::mirror_slope(x, t))
    }
}

/// Angular weight of a word on the arc, built from the orbits of the word and
/// its opposite.
#[derive(Clone, Debug)]
pub struct ArcWeight {
    word: PeriodicWord,
    terms: Vec<f64>,
    two_log_epsilon: f64,
}

impl ArcWeight {
    pub fn new(word: &PeriodicWord) -> Result<Self> {
        let fwd = Orbit::new(word)?;
        let op = Orbit::new(&word.opposite())?;
        let two_log_epsilon = fwd.sum_l()? + op.sum_l()?;
        let mut terms = fwd.term_values();
        terms.extend(op.term_values());
        Ok(ArcWeight {
            word: word.clone(),
            terms,
            two_log_epsilon,
        })
    }

    pub fn word(&self) -> &PeriodicWord {
        &self.word
    }

    pub fn log_epsilon(&self) -> f64 {
        self.two_log_epsilon / 2.0
    }

    /// Ŝ(w, t) = sin t (S_F(w, t) + S_F(w^op, t)) / (2 log eps).
    pub fn weight(&self, t: f64) -> f64 {
        let s: f64 = self.terms.iter().map(|&x| kernels::density(x, t)).sum();
        t.sin() * s / self.two_log_epsilon
    }

    /// Ŝ(w, t) + Ŝ(w, pi - t).
    pub fn paired(&self, t: f64) -> f64 {
        self.weight(t) + self.weight(PI - t)
    }

    /// d/dt of [`ArcWeight::paired`].
    pub fn paired_dt(&self, t: f64) -> f64 {
        let s: f64 = self.terms.iter().map(|&x| kernels::slope_sum(x, t)).sum();
        s / self.two_log_epsilon
    }

    /// `(S_G + S_H)(w, t) + (S_G + S_H)(w^op, t)`.
    pub fn slope_total(&self, t: f64) -> f64 {
        self.terms.iter().map(|&x| kernels::slope_sum(x, t)).sum()
    }
}

/// D_(w1,w2)(t): difference of paired weights.
pub fn weight_gap(w1: &ArcWeight, w2: &ArcWeight, t: f64) -> f64 {
    w1.paired(t) - w2.paired(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    Formula,
    Oracle,
}

#[derive(Clone, Debug)]
pub struct ValOptions {
    pub tol: f64,
    pub precision: Precision,
}

impl Default for ValOptions {
    fn default() -> Self {
        ValOptions {
            tol: 1e-10,
            precision: Precision::Double,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValResult {
    pub word: PeriodicWord,
    pub re_val: f64,
    /// Only the direct route produces an imaginary part.
    pub im_val: Option<f64>,
    pub log_epsilon: f64,
    pub method: Method,
    pub error_estimate: f64,
}

fn arc_value(f: &ModularFunction, t: f64, precision: Precision) -> Result<f64> {
    match precision {
        Precision::Double => f.arc_value(t),
        Precision::Extended { bits } => f.arc_value_extended(t, bits),
    }
}

/// Largest series tail of `f` anywhere on the arc.
fn arc_tail(f: &ModularFunction) -> Result<f64> {
    Ok(f.evaluate_reduced(Complex64::from_polar(1.0, PI / 3.0))?.tail_bound)
}

/// `Re val_f(w)` from the arc formula.
pub fn re_val(f: &ModularFunction, word: &PeriodicWord, opts: &ValOptions) -> Result<ValResult> {
    let weight = ArcWeight::new(word)?;
    re_val_with(f, &weight, opts)
}

/// [`re_val`] for a precomputed weight.
pub fn re_val_with(f: &ModularFunction, weight: &ArcWeight, opts: &ValOptions) -> Result<ValResult> {
    // the paired integrand is symmetric about pi/2
    let est = try_integrate(
        |t| Ok::<f64, Error>(arc_value(f, t, opts.precision)? * weight.paired(t)),
        PI / 3.0,
        PI / 2.0,
        opts.tol,
    )?;
    if !est.converged || !est.value.is_finite() {
        return Err(Error::QuadratureFailure(format!(
            "arc integral for {} (error {:e})",
            weight.word(),
            est.error
        )));
    }
    Ok(ValResult {
        word: weight.word().clone(),
        re_val: est.value,
        im_val: None,
        log_epsilon: weight.log_epsilon(),
        method: Method::Formula,
        error_estimate: est.error + arc_tail(f)?,
    })
}

/// Path used by the direct cycle integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DirectPath {
    /// Horizontal segments following the factorization of the word's matrix
    /// into powers of `T` and `V`; `f` is only sampled at heights
    /// `Im(tau0)` and `Im(-1/tau0)`.
    Factored { tau0: Complex64 },
    /// The hyperbolic geodesic from `tau0` to `A tau0`. Only usable for short
    /// words, since the far end approaches the real axis like `1/eps^2`.
    Geodesic { tau0: Option<Complex64> },
}

impl Default for DirectPath {
    fn default() -> Self {
        DirectPath::Factored {
            tau0: Complex64::new(0.0, 1.0),
        }
    }
}

/// Lowest point the geodesic path may visit.
const GEODESIC_MIN_HEIGHT: f64 = 0.05;

#[derive(Clone, Copy, Debug)]
pub struct CycleIntegral {
    pub value: Complex64,
    pub error: f64,
}

/// Cycle integral of `f` along the closed geodesic of `word`, oriented so that
/// the integral of the constant function 1 equals `2 log(eps)`.
pub fn cycle_integral_direct(
    f: &ModularFunction,
    word: &PeriodicWord,
    path: DirectPath,
    tol: f64,
) -> Result<CycleIntegral> {
    let orbit = Orbit::new(word)?;
    let word = orbit.word().clone();
    let roots: Vec<(f64, f64)> = orbit
        .rotations()
        .iter()
        .map(|v| (v.to_f64(), v.conjugate().to_f64()))
        .collect();
    match path {
        DirectPath::Factored { tau0 } => factored_integral(f, &word, &roots, tau0, tol),
        DirectPath::Geodesic { tau0 } => geodesic_integral(f, &word, &orbit, tau0, tol),
    }
}

fn eval_f(f: &ModularFunction, tau: Complex64) -> Result<Complex64> {
    let e = f.evaluate(tau)?;
    if !e.value.is_finite() {
        return Err(Error::PathSingularity(format!("f is not finite at {tau}")));
    }
    Ok(e.value)
}

fn factored_integral(
    f: &ModularFunction,
    word: &PeriodicWord,
    roots: &[(f64, f64)],
    tau0: Complex64,
    tol: f64,
) -> Result<CycleIntegral> {
    geometry::require_upper(tau0)?;
    let s_tau0 = -tau0.inv();
    let n = word.len();
    let piece_tol = tol / n as f64;
    let mut total = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for (k, &(v, vc)) in roots.iter().enumerate() {
        let a = word.letters()[k] as f64;
        // odd pieces (1-based) are powers of T, even pieces powers of V
        // conjugated by the inversion
        let (start, shift, pole, pole_c) = if k % 2 == 0 {
            (tau0, a, v, vc)
        } else {
            (s_tau0, -a, -v, -vc)
        };
        let est = try_integrate(
            |s: f64| -> Result<Complex64> {
                let tau = start + s * shift;
                let form = 1.0 / (tau - pole) - 1.0 / (tau - pole_c);
                Ok(eval_f(f, tau)? * form * shift)
            },
            0.0,
            1.0,
            piece_tol,
        )?;
        if !est.converged {
            return Err(Error::QuadratureFailure(format!("direct piece {}", k + 1)));
        }
        total += est.value;
        error += est.error;
    }
    Ok(CycleIntegral {
        value: -total,
        error,
    })
}

fn geodesic_integral(
    f: &ModularFunction,
    word: &PeriodicWord,
    orbit: &Orbit,
    tau0: Option<Complex64>,
    tol: f64,
) -> Result<CycleIntegral> {
    let w = orbit.rotations()[0].to_f64();
    let wc = orbit.rotations()[0].conjugate().to_f64();
    let center = (w + wc) / 2.0;
    let radius = (w - wc).abs() / 2.0;
    let tau0 = tau0.unwrap_or(Complex64::new(center, radius));
    let on_geodesic = ((tau0 - center).norm() - radius).abs() <= 1e-9 * radius.max(1.0);
    if !on_geodesic {
        return Err(Error::Invalid("base point is not on the geodesic".into()));
    }
    let m = geometry::word_to_matrix(word)?;
    let end = m.apply_c64(tau0);
    let s0 = (tau0 - center).arg();
    let s1 = (end - center).arg();
    let lowest = radius * s0.sin().min(s1.sin());
    if lowest < GEODESIC_MIN_HEIGHT {
        return Err(Error::PathSingularity(format!(
            "geodesic reaches height {lowest:e}"
        )));
    }
    let est = try_integrate(
        |s: f64| -> Result<Complex64> {
            let e = Complex64::from_polar(1.0, s);
            let tau = center + radius * e;
            let dtau = Complex64::new(0.0, radius) * e;
            let form = 1.0 / (tau - w) - 1.0 / (tau - wc);
            Ok(eval_f(f, tau)? * form * dtau)
        },
        s0,
        s1,
        tol,
    )?;
    if !est.converged {
        return Err(Error::QuadratureFailure("geodesic integral".into()));
    }
    Ok(CycleIntegral {
        value: -est.value,
        error: est.error,
    })
}

/// `val_f(w) = I_f / I_1` from the direct cycle integrals.
pub fn val_complex(f: &ModularFunction, word: &PeriodicWord, path: DirectPath, tol: f64) -> Result<ValResult> {
    let num = cycle_integral_direct(f, word, path, tol)?;
    let den = cycle_integral_direct(&ModularFunction::one(), word, path, tol)?;
    let orbit_log = Orbit::new(word)?.log_epsilon();
    let v = num.value / den.value;
    let rel = num.error / num.value.norm().max(1e-300) + den.error / den.value.norm();
    Ok(ValResult {
        word: word.clone(),
        re_val: v.re,
        im_val: Some(v.im),
        log_epsilon: orbit_log,
        method: Method::Oracle,
        error_estimate: rel * v.norm(),
    })
}

/// U-sum of a Markov word split by the letter preceding each odd position.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SilverSplit {
    /// `S_U(w, t)`.
    pub total: f64,
    /// Groups of four, for odd `i` with `a_(i-1) = 2`.
    pub quads: f64,
    /// Pairs, for odd `i` with `a_(i-1) = 1`.
    pub pairs: f64,
}

/// Reference data of the silver orbit used by the U-sums.
#[derive(Clone, Debug)]
pub struct SilverReference {
    orbit: Orbit,
}

impl SilverReference {
    pub fn new() -> Result<Self> {
        let psi = PeriodicWord::new(vec![2, 2])?;
        Ok(SilverReference {
            orbit: Orbit::new(&psi)?,
        })
    }

    /// U(x, t) from the orbit sums of the silver word.
    pub fn excess(&self, x: f64, t: f64) -> f64 {
        let slope = self.orbit.sum_g(t) + self.orbit.sum_h(t);
        kernels::log_mass(x) * slope - self.orbit.sum_l_direct() * kernels::slope_sum(x, t)
    }
}

/// `S_U(w, t)` and its split; `w` must use only the letters 1 and 2.
///
/// The split reproduces the total when letters come in aligned equal pairs
/// (positions `2k-1, 2k`), as in every word of the Markov tree.
pub fn silver_sum_split(word: &PeriodicWord, t: f64, reference: &SilverReference) -> Result<SilverSplit> {
    if !word.is_markov_alphabet() {
        return Err(Error::NotMarkovWord);
    }
    let orbit = Orbit::new(word)?;
    let w = orbit.word();
    let u = |x: f64| reference.excess(x, t);
    let total = orbit.sum_with(u);
    let mut quads = 0.0;
    let mut pairs = 0.0;
    for i in (1..=w.len()).step_by(2) {
        let v = orbit.rotations()[i - 1].to_f64();
        if w.letter(i as isize - 1) == 2 {
            let y = kernels::silver_map(v);
            quads += u(v) + u(y) + u(kernels::golden_map(v)) + u(kernels::golden_map(y));
        } else {
            pairs += u(v) + u(kernels::golden_map(v));
        }
    }
    Ok(SilverSplit { total, quads, pairs })
}

/// One bad orbit term and the terms it is balanced against.
#[derive(Clone, Debug, Serialize)]
pub struct Pairing {
    /// `(i, m)` of the term below the golden ratio.
    pub bad: (usize, u64),
    pub partners: Vec<(usize, u64)>,
    /// Smallest value of the grouped Z-sum over the sampled angles.
    pub min_sum: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GoodBadReport {
    pub word: PeriodicWord,
    pub bad_terms: usize,
    pub pairings: Vec<Pairing>,
    /// Smallest value of `sum Z(w_(i,m), t) / cos t` over the sampled angles.
    pub min_total: f64,
    pub holds: bool,
}

/// Splits the orbit into terms below and above the golden ratio (exactly),
/// pairs each bad term with good ones and checks the Z-sums on `t_grid`.
pub fn check_goodbad(word: &PeriodicWord, t_grid: &[f64], slack: f64) -> Result<GoodBadReport> {
    let orbit = Orbit::new(word)?;
    let phi = QuadSurd::new(1, 1, 2, 5)?;
    let w = orbit.word();
    let n = w.len();
    let find = |i: usize, m: u64| -> Option<&OrbitTerm> {
        orbit.terms().iter().find(|t| t.i == i && t.m == m)
    };
    let z = |x: f64, t: f64| kernels::golden_excess_reduced(x, t);
    let mut pairings = Vec::new();
    let mut bad_terms = 0;
    for term in orbit.terms() {
        if term.value.cmp_exact(&phi) != Ordering::Less {
            continue;
        }
        bad_terms += 1;
        let next = term.i % n + 1;
        let a_next = w.letter(next as isize);
        let partners: Vec<(usize, u64)> = if a_next <= 2 {
            vec![(next, a_next)]
        } else {
            vec![(next, 2), (next, 3)]
        };
        let mut min_sum = f64::INFINITY;
        for &t in t_grid {
            let mut s = z(term.approx, t);
            for &(i, m) in &partners {
                let p = find(i, m).ok_or_else(|| Error::Invalid("missing partner term".into()))?;
                s += z(p.approx, t);
            }
            min_sum = min_sum.min(s);
        }
        pairings.push(Pairing {
            bad: (term.i, term.m),
            partners,
            min_sum,
        });
    }
    let mut min_total = f64::INFINITY;
    for &t in t_grid {
        min_total = min_total.min(orbit.sum_with(|x| z(x, t)));
    }
    let holds = min_total >= -slack && pairings.iter().all(|p| p.min_sum >= -slack);
    Ok(GoodBadReport {
        word: w.clone(),
        bad_terms,
        pairings,
        min_total,
        holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MonotoneReport {
    pub first: PeriodicWord,
    pub second: PeriodicWord,
    /// Largest increase of the gap between consecutive grid angles.
    pub max_step: f64,
    /// Largest value of its derivative on the grid.
    pub max_derivative: f64,
    /// Smallest margin of each sufficient inequality (negative means violated).
    pub criterion_margins: [f64; 2],
    pub decreasing: bool,
    pub criterion_holds: bool,
}

/// Checks that `D_(w1,w2)` decreases on the grid (angles in `[pi/3, pi/2]`)
/// and evaluates the two orbit-sum inequalities that imply it.
pub fn check_monotone_d(w1: &PeriodicWord, w2: &PeriodicWord, t_grid: &[f64], slack: f64) -> Result<MonotoneReport> {
    let a = ArcWeight::new(w1)?;
    let b = ArcWeight::new(w2)?;
    let (o1, o2) = (Orbit::new(w1)?, Orbit::new(w2)?);
    let (p1, p2) = (Orbit::new(&w1.opposite())?, Orbit::new(&w2.opposite())?);
    let (l1, l2) = (o1.sum_l()?, o2.sum_l()?);
    let mut max_step = f64::NEG_INFINITY;
    let mut max_derivative = f64::NEG_INFINITY;
    let mut margins = [f64::INFINITY; 2];
    let mut prev: Option<f64> = None;
    for &t in t_grid {
        let d = weight_gap(&a, &b, t);
        if let Some(p) = prev {
            max_step = max_step.max(d - p);
        }
        prev = Some(d);
        max_derivative = max_derivative.max(a.paired_dt(t) - b.paired_dt(t));
        let gh = |o: &Orbit| o.sum_g(t) + o.sum_h(t);
        margins[0] = margins[0].min(l1 * gh(&o2) - l2 * gh(&o1));
        margins[1] = margins[1].min(l1 * gh(&p2) - l2 * gh(&p1));
    }
    Ok(MonotoneReport {
        first: w1.clone(),
        second: w2.clone(),
        max_step,
        max_derivative,
        criterion_margins: margins,
        decreasing: max_step <= slack && max_derivative <= slack,
        criterion_holds: margins[0] >= -slack && margins[1] >= -slack,
    })
}

/// Integral of Ŝ over the arc; equals 1 for every word.
pub fn weight_integral(weight: &ArcWeight, tol: f64) -> f64 {
    integrate(|t| weight.weight(t), PI / 3.0, 2.0 * PI / 3.0, tol).value
}

/// Integral of `D_(w1,w2)` over the arc; vanishes for every pair.
pub fn gap_integral(w1: &ArcWeight, w2: &ArcWeight, tol: f64) -> f64 {
    integrate(|t| weight_gap(w1, w2, t), PI / 3.0, 2.0 * PI / 3.0, tol).value
}

/// Real value of `f` at a quadratic irrationality: the period of its
/// continued fraction determines `val`, and a preperiod of odd length
/// conjugates the complex value.
pub fn surd_period(x: &QuadSurd) -> Result<(PeriodicWord, bool)> {
    let cf = x.cf_expand()?;
    Ok((cf.period_word()?, cf.preperiod.len() % 2 == 1))
}

/// The matrix `T^a1 V^a2 ...` of a word's even form.
pub fn word_matrix(word: &PeriodicWord) -> Result<Mat2> {
    geometry::word_to_matrix(&word.even_form())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u64]) -> PeriodicWord {
        PeriodicWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn golden_orbit() {
        let o = Orbit::new(&w(&[1])).unwrap();
        assert_eq!(o.word(), &w(&[1, 1]));
        let phi = QuadSurd::new(1, 1, 2, 5).unwrap();
        assert!(o.rotations().iter().all(|v| v == &phi));
        assert!(o.terms().iter().all(|t| t.value == phi));
        assert_eq!(&o.rotation_product(), o.epsilon());
        assert!((o.sum_l().unwrap() - 2.0 * kernels::log_phi()).abs() < 1e-15);
    }

    #[test]
    fn rotation_product_is_epsilon() {
        for v in [vec![1, 2], vec![3, 1, 4, 1], vec![2, 2, 1, 1], vec![7, 1, 1, 5, 2, 9]] {
            let o = Orbit::new(&w(&v)).unwrap();
            assert_eq!(&o.rotation_product(), o.epsilon());
            assert!((o.sum_l_direct() - o.log_epsilon()).abs() < 1e-12);
        }
    }

    #[test]
    fn weight_is_normalized() {
        for v in [vec![1], vec![2], vec![1, 2], vec![3, 1, 4, 1]] {
            let a = ArcWeight::new(&w(&v)).unwrap();
            assert!((weight_integral(&a, 1e-13) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn golden_and_silver_values() {
        let j = ModularFunction::j();
        let opts = ValOptions::default();
        let phi = re_val(&j, &w(&[1]), &opts).unwrap();
        assert!((phi.re_val - 706.3248135408).abs() < 1e-7, "{}", phi.re_val);
        let psi = re_val(&j, &w(&[2]), &opts).unwrap();
        assert!((psi.re_val - 709.8928909199).abs() < 1e-7, "{}", psi.re_val);
    }

    #[test]
    fn constant_function_has_value_one() {
        let one = ModularFunction::one();
        let r = re_val(&one, &w(&[3, 1, 4, 1]), &ValOptions::default()).unwrap();
        assert!((r.re_val - 1.0).abs() < 1e-10);
        let c = cycle_integral_direct(&one, &w(&[3, 1, 4, 1]), DirectPath::default(), 1e-12).unwrap();
        let o = Orbit::new(&w(&[3, 1, 4, 1])).unwrap();
        assert!((c.value - Complex64::new(2.0 * o.log_epsilon(), 0.0)).norm() < 1e-9);
    }

    #[test]
    fn direct_route_matches_formula() {
        let j = ModularFunction::j();
        for v in [vec![1, 2], vec![2, 2, 1, 1]] {
            let word = w(&v);
            let direct = val_complex(&j, &word, DirectPath::default(), 1e-10).unwrap();
            let formula = re_val(&j, &word, &ValOptions::default()).unwrap();
            assert!((direct.re_val - formula.re_val).abs() < 1e-8, "{v:?}");
        }
    }

    #[test]
    fn base_point_independence() {
        let j = ModularFunction::j();
        let word = w(&[1, 3]);
        let a = cycle_integral_direct(&j, &word, DirectPath::default(), 1e-11).unwrap();
        let b = cycle_integral_direct(
            &j,
            &word,
            DirectPath::Factored {
                tau0: Complex64::new(0.2, 1.1),
            },
            1e-11,
        )
        .unwrap();
        assert!((a.value - b.value).norm() < 1e-7 * a.value.norm());
    }

    #[test]
    fn geodesic_path_agrees_on_short_words() {
        let j = ModularFunction::j();
        for v in [vec![1, 1], vec![2, 2]] {
            let word = w(&v);
            let a = val_complex(&j, &word, DirectPath::default(), 1e-11).unwrap();
            let b = val_complex(&j, &word, DirectPath::Geodesic { tau0: None }, 1e-11).unwrap();
            assert!((a.re_val - b.re_val).abs() < 1e-6, "{v:?}: {} {}", a.re_val, b.re_val);
        }
    }

    #[test]
    fn silver_reference_matches_closed_form() {
        let r = SilverReference::new().unwrap();
        for t in [PI / 3.0, 1.3, 1.5] {
            for x in [kernels::PHI, 2.0, kernels::PSI] {
                assert!((r.excess(x, t) - kernels::silver_excess(x, t)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn silver_split_on_tree_words() {
        let r = SilverReference::new().unwrap();
        let tree = crate::words::markov_tree(4).unwrap();
        for node in tree.nodes() {
            for t in [PI / 3.0, 1.2, 1.5] {
                let s = silver_sum_split(&node.word, t, &r).unwrap();
                assert!((s.total - s.quads - s.pairs).abs() < 1e-10, "{}", node.word);
            }
        }
        assert!(matches!(silver_sum_split(&w(&[1, 3]), 1.2, &r), Err(Error::NotMarkovWord)));
    }

    #[test]
    fn goodbad_pairing() {
        let grid: Vec<f64> = (0..50).map(|k| PI / 3.0 + (PI / 6.0) * k as f64 / 50.0).collect();
        let rep = check_goodbad(&w(&[1, 2]), &grid, 1e-9).unwrap();
        assert!(rep.holds);
        assert!(rep.bad_terms > 0);
        let rep = check_goodbad(&w(&[1, 5, 1, 3]), &grid, 1e-9).unwrap();
        assert!(rep.holds);
    }

    #[test]
    fn monotone_golden_against_one_two() {
        let grid: Vec<f64> = (0..=64).map(|k| PI / 3.0 + (PI / 6.0) * k as f64 / 64.0).collect();
        let rep = check_monotone_d(&w(&[1]), &w(&[1, 2]), &grid, 1e-12).unwrap();
        assert!(rep.decreasing && rep.criterion_holds, "{rep:?}");
    }
}
