//! Shared numerical settings.

use serde::Serialize;

/// Arithmetic used when evaluating modular functions on the arc.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Precision {
    #[default]
    Double,
    /// Multiprecision with the given number of mantissa bits.
    Extended { bits: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct Config {
    pub precision: Precision,
    /// Absolute tolerance for each quadrature.
    pub quad_tol: f64,
    /// Largest `q`-expansion tail accepted when evaluating `f`.
    pub tail_tol: f64,
    /// Number of stored coefficients `c_0 .. c_n_max` of `j`.
    pub n_max: usize,
    /// Grid points per axis in certification sweeps.
    pub grid: usize,
    /// Refinement rounds after the grid scan.
    pub refine_iters: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision: Precision::Double,
            quad_tol: 1e-10,
            tail_tol: 1e-12,
            n_max: 60,
            grid: 512,
            refine_iters: 40,
        }
    }
}
