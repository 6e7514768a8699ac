//! Closed-form real kernels on the arc `t in [pi/3, 2pi/3]`.
//!
//! `x` is a real point (an orbit value of a quadratic irrationality), `t` an
//! angle. The conventional one-letter names are given in each doc comment.

use std::f64::consts::SQRT_2;

/// Golden ratio.
pub const PHI: f64 = 1.618_033_988_749_895;
/// Silver ratio `1 + sqrt(2)`.
pub const PSI: f64 = 1.0 + SQRT_2;

pub fn log_phi() -> f64 {
    PHI.ln()
}

pub fn log_psi() -> f64 {
    PSI.ln()
}

/// `x -> 1 + 1/x` (Φ).
pub fn golden_map(x: f64) -> f64 {
    1.0 + 1.0 / x
}

/// `x -> 2 + 1/x` (Ψ).
pub fn silver_map(x: f64) -> f64 {
    2.0 + 1.0 / x
}

/// F(x, t) = x / (1 + x^2 - 2x cos t).
pub fn density(x: f64, t: f64) -> f64 {
    x / (1.0 + x * x - 2.0 * x * t.cos())
}

/// L(x), the integral of `sin(u) F(x, u)` over the arc.
pub fn log_mass(x: f64) -> f64 {
    let s = 1.0 + x * x;
    0.5 * ((s + x) / (s - x)).ln()
}

/// L'(x).
pub fn log_mass_dx(x: f64) -> f64 {
    let x2 = x * x;
    (1.0 - x2) / (x2 * x2 + x2 + 1.0)
}

/// G(x, t) = d/dt (sin t F(x, t)).
pub fn slope(x: f64, t: f64) -> f64 {
    let c = t.cos();
    let den = x * x + 1.0 - 2.0 * x * c;
    x * ((x * x + 1.0) * c - 2.0 * x) / (den * den)
}

/// H(x, t) = -G(x, pi - t).
pub fn mirror_slope(x: f64, t: f64) -> f64 {
    let c = t.cos();
    let den = x * x + 1.0 + 2.0 * x * c;
    x * ((x * x + 1.0) * c + 2.0 * x) / (den * den)
}

/// G + H.
pub fn slope_sum(x: f64, t: f64) -> f64 {
    slope(x, t) + mirror_slope(x, t)
}

/// dG/dx.
pub fn slope_dx(x: f64, t: f64) -> f64 {
    let c = t.cos();
    let den = -2.0 * x * c + x * x + 1.0;
    -(x * x - 1.0) * ((x * x + 1.0) * c + 2.0 * x * c * c - 4.0 * x) / den.powi(3)
}

/// dH/dx.
pub fn mirror_slope_dx(x: f64, t: f64) -> f64 {
    let c = t.cos();
    let den = 2.0 * x * c + x * x + 1.0;
    -(x * x - 1.0) * ((x * x + 1.0) * c - 2.0 * x * c * c + 4.0 * x) / den.powi(3)
}

fn quartic_den(x: f64, t: f64) -> f64 {
    let x2 = x * x;
    x2 * x2 - 2.0 * x2 * (2.0 * t).cos() + 1.0
}

/// P(x, t) = (G + H) / cos t, which stays regular at `t = pi/2`.
pub fn reduced_slope(x: f64, t: f64) -> f64 {
    let x2 = x * x;
    let c2 = (2.0 * t).cos();
    let den = quartic_den(x, t);
    2.0 * x * (x2 + 1.0) * (2.0 * x2 * c2 + x2 * x2 - 4.0 * x2 + 1.0) / (den * den)
}

/// dP/dx.
pub fn reduced_slope_dx(x: f64, t: f64) -> f64 {
    let x2 = x * x;
    let x4 = x2 * x2;
    let c2 = (2.0 * t).cos();
    let c4 = (4.0 * t).cos();
    let inner = 1.0 + x4 * x4 + (4.0 * x2 + 4.0 * x4 * x2) * (-2.0 + 3.0 * c2) + 2.0 * x4 * (-14.0 + 8.0 * c2 + c4);
    2.0 * (1.0 - x2) * inner / quartic_den(x, t).powi(3)
}

/// dP/dt.
pub fn reduced_slope_dt(x: f64, t: f64) -> f64 {
    let x2 = x * x;
    let s2 = (2.0 * t).sin();
    let c2 = (2.0 * t).cos();
    -8.0 * x2 * x * s2 * (x2 + 1.0) * (2.0 * x2 * c2 - 8.0 * x2 + 3.0 * x2 * x2 + 3.0) / quartic_den(x, t).powi(3)
}

/// p(x, t), the polynomial factor of the mixed partial of P.
pub fn mixed_partial_poly(x: f64, t: f64) -> f64 {
    let x2 = x * x;
    let x4 = x2 * x2;
    let c2 = (2.0 * t).cos();
    let c4 = (4.0 * t).cos();
    9.0 + 9.0 * x4 * x4 + (4.0 * x2 + 4.0 * x4 * x2) * (-4.0 + 7.0 * c2) + 2.0 * x4 * (-38.0 + 16.0 * c2 + c4)
}

/// d^2 P / dx dt.
pub fn reduced_slope_dxdt(x: f64, t: f64) -> f64 {
    let x2 = x * x;
    8.0 * x2 * (x2 - 1.0) * (2.0 * t).sin() * mixed_partial_poly(x, t) / quartic_den(x, t).powi(4)
}

/// q(x, t), the polynomial factor of `dP/dt` at `1/(x-1)`.
pub fn shifted_partial_poly(x: f64, t: f64) -> f64 {
    let xm = x - 1.0;
    2.0 * xm * xm * (2.0 * t).cos() + 3.0 * x.powi(4) - 12.0 * x.powi(3) + 10.0 * x * x + 4.0 * x - 2.0
}

/// R(x, t): `d(G + H)/dx = -(x^2 - 1) cos(t) R(x, t)`.
pub fn critical_ratio(x: f64, t: f64) -> f64 {
    let x2 = x * x;
    let x4 = x2 * x2;
    let c2 = (2.0 * t).cos();
    let c4 = (4.0 * t).cos();
    let num = 12.0 * x4 * x2 * c2 + 16.0 * x4 * c2 + 2.0 * x4 * c4 + 12.0 * x2 * c2 + x4 * x4
        - 8.0 * x4 * x2
        - 28.0 * x4
        - 8.0 * x2
        + 1.0;
    2.0 * num / quartic_den(x, t).powi(3)
}

/// R(x, t) from its defining sum of two cubic quotients over `cos t`.
/// Singular at `t = pi/2`; used to cross-check [`critical_ratio`].
pub fn critical_ratio_unreduced(x: f64, t: f64) -> f64 {
    let c = t.cos();
    let a = ((x * x + 1.0) * c + 2.0 * x * c * c - 4.0 * x) / (-2.0 * x * c + x * x + 1.0).powi(3);
    let b = ((x * x + 1.0) * c - 2.0 * x * c * c + 4.0 * x) / (2.0 * x * c + x * x + 1.0).powi(3);
    (a + b) / c
}

/// M(x, t) with `R(x, t) = 2 M(x^2, 2t)`.
pub fn critical_ratio_half(x: f64, t: f64) -> f64 {
    let c = t.cos();
    let c2 = (2.0 * t).cos();
    let num = 12.0 * x.powi(3) * c + 16.0 * x * x * c + 2.0 * x * x * c2 + 12.0 * x * c + x.powi(4)
        - 8.0 * x.powi(3)
        - 28.0 * x * x
        - 8.0 * x
        + 1.0;
    num / (-2.0 * x * c + x * x + 1.0).powi(3)
}

/// N(x, t) with `dM/dx = -2 N / (x^2 + 1 - 2x cos t)^4`.
pub fn critical_ratio_numerator(x: f64, t: f64) -> f64 {
    let (c, c2, c3) = (t.cos(), (2.0 * t).cos(), (3.0 * t).cos());
    19.0 * x.powi(4) * c + 32.0 * x.powi(3) * c + 4.0 * x.powi(3) * c2 + 39.0 * x * x * c
        - 8.0 * x * x * c2
        - x * x * c3
        - 14.0 * x * c2
        - 9.0 * c
        + x.powi(5)
        - 12.0 * x.powi(4)
        - 58.0 * x.powi(3)
        - 16.0 * x * x
        + 19.0 * x
        + 4.0
}

/// Z(x, t) = L(phi)(G + H)(x, t) - (G + H)(phi, t) L(x).
pub fn golden_excess(x: f64, t: f64) -> f64 {
    log_phi() * slope_sum(x, t) - slope_sum(PHI, t) * log_mass(x)
}

/// Z(x, t) / cos t.
pub fn golden_excess_reduced(x: f64, t: f64) -> f64 {
    log_phi() * reduced_slope(x, t) - reduced_slope(PHI, t) * log_mass(x)
}

/// d/dx of [`golden_excess_reduced`].
pub fn golden_excess_reduced_dx(x: f64, t: f64) -> f64 {
    log_phi() * reduced_slope_dx(x, t) - reduced_slope(PHI, t) * log_mass_dx(x)
}

/// `L(phi) R(x, t) - P(phi, t) / (x^4 + x^2 + 1)`; for `x > 1` its sign is
/// opposite to that of `dZ/dx`, and it scales by `x^4` under `x -> 1/x`.
pub fn golden_critical_gap(x: f64, t: f64) -> f64 {
    let x2 = x * x;
    log_phi() * critical_ratio(x, t) - reduced_slope(PHI, t) / (x2 * x2 + x2 + 1.0)
}

/// K(t) = P(psi, t) + P(psi - 1, t).
pub fn silver_slope(t: f64) -> f64 {
    reduced_slope(PSI, t) + reduced_slope(PSI - 1.0, t)
}

/// Closed form of [`silver_slope`] as a rational function of `cos t`.
pub fn silver_slope_closed(t: f64) -> f64 {
    let c2 = t.cos().powi(2);
    7.0 * SQRT_2 * (63.0 * c2 - 54.0 * c2 * c2 + 16.0 * c2 * c2 * c2 - 24.0)
        / (8.0 * c2 * c2 - 25.0 * c2 + 18.0).powi(2)
}

/// U(x, t) / (2 cos t) = L(x) K(t) - log(psi) P(x, t).
pub fn silver_excess_reduced(x: f64, t: f64) -> f64 {
    log_mass(x) * silver_slope(t) - log_psi() * reduced_slope(x, t)
}

/// U(x, t) with the silver reference orbit summed in closed form.
pub fn silver_excess(x: f64, t: f64) -> f64 {
    2.0 * t.cos() * silver_excess_reduced(x, t)
}

/// Ũ(x) + Ũ(Φ(x)).
pub fn silver_pair(x: f64, t: f64) -> f64 {
    silver_excess_reduced(x, t) + silver_excess_reduced(golden_map(x), t)
}

/// V(x, t) = Ũ(x) + Ũ(Φ x) + Ũ(Ψ x) + Ũ(Φ Ψ x).
pub fn silver_quad(x: f64, t: f64) -> f64 {
    let y = silver_map(x);
    silver_excess_reduced(x, t)
        + silver_excess_reduced(golden_map(x), t)
        + silver_excess_reduced(y, t)
        + silver_excess_reduced(golden_map(y), t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid() -> impl Iterator<Item = (f64, f64)> {
        let xs = [0.3, 0.77, 1.0, 1.3, PHI, 2.2, 3.5, 7.0];
        let ts = [PI / 3.0, 1.2, 1.4, PI / 2.0 - 1e-3, 1.9];
        xs.into_iter().flat_map(move |x| ts.into_iter().map(move |t| (x, t)))
    }

    fn d_dx(f: impl Fn(f64) -> f64, x: f64) -> f64 {
        let h = 1e-5 * x.abs().max(1.0);
        (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
    }

    #[test]
    fn mass_is_integral_of_density() {
        for x in [0.2, 1.0, PHI, 5.0] {
            let est = crate::quad::integrate(|u: f64| u.sin() * density(x, u), PI / 3.0, 2.0 * PI / 3.0, 1e-13);
            assert!((est.value - log_mass(x)).abs() < 1e-12);
        }
        assert!((log_mass(PHI) - log_phi()).abs() < 1e-15);
    }

    #[test]
    fn slopes_are_derivatives() {
        for (x, t) in grid() {
            let g = d_dx(|s| s.sin() * density(x, s), t);
            assert!((g - slope(x, t)).abs() < 1e-8, "G at {x},{t}");
            let h = d_dx(|s| (PI - s).sin() * density(x, PI - s), t);
            assert!((h - mirror_slope(x, t)).abs() < 1e-8, "H at {x},{t}");
            assert!((mirror_slope(x, t) + slope(x, PI - t)).abs() < 1e-12);
            assert!((d_dx(|y| slope(y, t), x) - slope_dx(x, t)).abs() < 1e-7);
            assert!((d_dx(|y| mirror_slope(y, t), x) - mirror_slope_dx(x, t)).abs() < 1e-7);
            assert!((d_dx(log_mass, x) - log_mass_dx(x)).abs() < 1e-9);
        }
    }

    #[test]
    fn reduced_forms_agree() {
        for (x, t) in grid() {
            let p = reduced_slope(x, t);
            assert!((p * t.cos() - slope_sum(x, t)).abs() < 1e-12);
            assert!((d_dx(|y| reduced_slope(y, t), x) - reduced_slope_dx(x, t)).abs() < 1e-7);
            assert!((d_dx(|s| reduced_slope(x, s), t) - reduced_slope_dt(x, t)).abs() < 1e-7);
            let mixed = d_dx(|s| reduced_slope_dx(x, s), t);
            assert!((mixed - reduced_slope_dxdt(x, t)).abs() < 1e-6, "{x} {t}");
            let r = critical_ratio(x, t);
            assert!((r - critical_ratio_unreduced(x, t)).abs() < 1e-8 * r.abs().max(1.0));
            assert!((r - 2.0 * critical_ratio_half(x * x, 2.0 * t)).abs() < 1e-10 * r.abs().max(1.0));
            let dsum = slope_dx(x, t) + mirror_slope_dx(x, t);
            assert!((dsum + (x * x - 1.0) * t.cos() * r).abs() < 1e-10);
            assert!((golden_excess(x, t) - t.cos() * golden_excess_reduced(x, t)).abs() < 1e-12);
            assert!((d_dx(|y| golden_excess_reduced(y, t), x) - golden_excess_reduced_dx(x, t)).abs() < 1e-7);
        }
    }

    #[test]
    fn half_ratio_derivative() {
        for x in [0.0f64, 0.1, 0.2, 0.25] {
            for t in [2.0 * PI / 3.0, 2.5, 3.0, PI] {
                let m = d_dx(|y| critical_ratio_half(y, t), x.max(1e-3));
                let y = x.max(1e-3);
                let want = -2.0 * critical_ratio_numerator(y, t) / (-2.0 * y * t.cos() + y * y + 1.0).powi(4);
                assert!((m - want).abs() < 1e-6, "{x} {t}");
            }
        }
        assert!((critical_ratio_numerator(0.0, 2.0 * PI / 3.0) - 8.5).abs() < 1e-12);
    }

    #[test]
    fn invariance_under_inversion() {
        for (x, t) in grid() {
            assert!((log_mass(x) - log_mass(1.0 / x)).abs() < 1e-12);
            assert!((slope_sum(x, t) - slope_sum(1.0 / x, t)).abs() < 1e-10);
            let gap = golden_critical_gap(x, t);
            assert!((golden_critical_gap(1.0 / x, t) - x.powi(4) * gap).abs() < 1e-8 * x.powi(4).max(1.0));
        }
    }

    #[test]
    fn silver_closed_forms() {
        for t in [PI / 3.0, 1.2, PI / 2.0, 1.8] {
            assert!((silver_slope(t) - silver_slope_closed(t)).abs() < 1e-13);
            assert!(silver_pair(PSI, t).abs() < 1e-12);
            assert!(silver_quad(PSI, t).abs() < 1e-12);
        }
        for x in [PHI, 2.0, PSI] {
            let direct = log_mass(x) + log_mass(golden_map(x));
            let closed = 0.5 * ((3.0 * x * x + 3.0 * x + 1.0) / (x * x - x + 1.0)).ln();
            assert!((direct - closed).abs() < 1e-13);
            let y = silver_map(x);
            let four = direct + log_mass(y) + log_mass(golden_map(y));
            let closed = 0.5 * ((19.0 * x * x + 15.0 * x + 3.0) / (x * x - x + 1.0)).ln();
            assert!((four - closed).abs() < 1e-13);
        }
        assert!((log_mass(PSI) + log_mass(PSI - 1.0) - log_psi()).abs() < 1e-14);
    }

    #[test]
    fn golden_excess_at_small_integers() {
        let common = |t: f64| {
            let c2 = t.cos().powi(2);
            5f64.sqrt() * (4.0 * c2 - 3.0) / (4.0 * c2 - 5.0).powi(2)
        };
        let lp = log_phi();
        for t in [PI / 3.0, 1.2, 1.5, PI / 2.0] {
            let c2 = t.cos().powi(2);
            let z1 = lp / (c2 - 1.0) - 3f64.ln() * common(t);
            let z2 = lp * (320.0 * c2 - 140.0) / (16.0 * c2 - 25.0).powi(2) - (7.0f64 / 3.0).ln() * common(t);
            let z3 = lp * (135.0 * c2 + 105.0) / (9.0 * c2 - 25.0).powi(2) - (13.0f64 / 7.0).ln() * common(t);
            let z4 = lp * (8704.0 * c2 + 21896.0) / (64.0 * c2 - 289.0).powi(2) - (21.0f64 / 13.0).ln() * common(t);
            for (k, z) in [(1.0, z1), (2.0, z2), (3.0, z3), (4.0, z4)] {
                assert!((golden_excess_reduced(k, t) - z).abs() < 1e-12, "{k} {t}");
            }
        }
    }
}
