//! Exact and numerical tools for cycle-integral values of modular functions
//! at real quadratic irrationalities.

pub mod certify;
pub mod config;
pub mod cycle;
pub mod error;
pub mod geometry;
pub mod kernels;
pub mod modfunc;
pub mod quad;
mod scaled;
pub mod surd;
pub mod words;

pub use config::{Config, Precision};
pub use error::{Error, Result};
pub use geometry::{FixedPoints, IndefiniteForm, Mat2};
pub use modfunc::ModularFunction;
pub use surd::{cf_compare, CfExpansion, QuadSurd};
pub use words::{markov_tree, MarkovTree, PeriodicWord};
pub use certify::{CertReport, Suite, Verdict};
pub use cycle::{re_val, val_complex, ArcWeight, Orbit, ValOptions, ValResult};
