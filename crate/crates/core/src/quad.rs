//! Adaptive Gauss-Legendre quadrature on intervals.

use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;

/// Nodes per panel.
pub const PANEL_NODES: usize = 20;
const MAX_DEPTH: usize = 48;
/// Evaluation budget after which panels are accepted as they are.
pub const MAX_EVALUATIONS: usize = 4_000_000;

/// Values that can be integrated: reals and complex numbers.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadEstimate<V> {
    pub value: V,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Nodes and weights on `[-1, 1]`, by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn panel_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_NODES))
}

fn panel<V: QuadValue, E, F: FnMut(f64) -> Result<V, E>>(f: &mut F, a: f64, b: f64) -> Result<V, E> {
    let (x, w) = panel_rule();
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    let mut acc = V::zero();
    for (xi, wi) in x.iter().zip(w) {
        acc = acc + f(mid + half * xi)? * (wi * half);
    }
    Ok(acc)
}

fn panel_scale<V: QuadValue>(left: V, right: V) -> f64 {
    left.magnitude() + right.magnitude()
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Panels are bisected until the single-panel and two-half-panel estimates
/// agree; the reported error is the sum of those differences.
pub fn try_integrate<V, E, F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<QuadEstimate<V>, E>
where
    V: QuadValue,
    F: FnMut(f64) -> Result<V, E>,
{
    let width = (b - a).abs().max(f64::MIN_POSITIVE);
    let mut evaluations = PANEL_NODES;
    let whole = panel(&mut f, a, b)?;
    let mut stack = vec![(a, b, whole, 0usize)];
    let mut value = V::zero();
    let mut error = 0.0;
    let mut converged = true;
    while let Some((lo, hi, est, depth)) = stack.pop() {
        let mid = (lo + hi) / 2.0;
        let left = panel(&mut f, lo, mid)?;
        let right = panel(&mut f, mid, hi)?;
        evaluations += 2 * PANEL_NODES;
        let refined = left + right;
        let diff = (refined - est).magnitude();
        // below roundoff of the panel itself no further splitting helps
        let floor = 64.0 * f64::EPSILON * panel_scale(left, right);
        let local = (tol * ((hi - lo).abs() / width)).max(floor);
        if diff <= local || depth >= MAX_DEPTH || evaluations >= MAX_EVALUATIONS {
            if diff > local {
                converged = false;
            }
            value = value + refined;
            error += diff;
        } else {
            stack.push((mid, hi, right, depth + 1));
            stack.push((lo, mid, left, depth + 1));
        }
    }
    Ok(QuadEstimate {
        value,
        error,
        evaluations,
        converged,
    })
}

/// Infallible form of [`try_integrate`].
pub fn integrate<V, F>(mut f: F, a: f64, b: f64, tol: f64) -> QuadEstimate<V>
where
    V: QuadValue,
    F: FnMut(f64) -> V,
{
    match try_integrate::<V, std::convert::Infallible, _>(|x| Ok(f(x)), a, b, tol) {
        Ok(est) => est,
        Err(never) => match never {},
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(7);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // degree 13 is exact for 7 nodes
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(12)).sum();
        assert!((s - 2.0 / 13.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_on_smooth_and_peaked() {
        let est = integrate(|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-12);
        assert!((est.value - 2.0).abs() < 1e-13 && est.converged);
        let est = integrate(|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-10);
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((est.value - exact).abs() < 1e-8, "{}", est.value - exact);
        let est = integrate(|x: f64| Complex64::new(0.0, x).exp(), 0.0, 1.0, 1e-12);
        assert!((est.value - Complex64::new(1.0f64.sin(), 1.0 - 1.0f64.cos())).norm() < 1e-13);
    }
}
