//! Numerical certification of the kernel inequalities by grid scan plus local
//! refinement.
//!
//! This is floating-point sampling, not interval arithmetic. Every report
//! states the searched rectangle, the extremum found and how it was judged.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Config;
use crate::cycle::{self, SilverReference};
use crate::error::{Error, Result};
use crate::kernels::{self as k, PHI, PSI};
use crate::words::{markov_tree, PeriodicWord};

/// Slack for "non-negative" claims.
pub const DEFAULT_SLACK: f64 = 1e-9;
/// Tolerance for quoted constants that are exact.
pub const EXACT_TOL: f64 = 5e-4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremum {
    Min,
    Max,
}

impl Extremum {
    fn better(self, a: f64, b: f64) -> bool {
        match self {
            Extremum::Min => a < b,
            Extremum::Max => a > b,
        }
    }
}

/// Rectangle `x_range x t_range` sampled on an `nx x nt` grid. An axis whose
/// range is a single point is sampled once.
#[derive(Clone, Debug, Serialize)]
pub struct SearchDomain {
    pub x_range: (f64, f64),
    pub t_range: (f64, f64),
    pub grid: (usize, usize),
    pub refine_iters: usize,
}

/// Points per axis for a one-dimensional search at grid setting `n`.
fn line_points(n: usize) -> usize {
    (n * n).clamp(2, 1 << 18)
}

impl SearchDomain {
    pub fn new(x_range: (f64, f64), t_range: (f64, f64), grid: (usize, usize), refine_iters: usize) -> Result<Self> {
        for (r, n) in [(x_range, grid.0), (t_range, grid.1)] {
            if !(r.0 <= r.1) || !r.0.is_finite() || !r.1.is_finite() {
                return Err(Error::Invalid(format!("empty range [{}, {}]", r.0, r.1)));
            }
            if r.0 < r.1 && n < 2 {
                return Err(Error::Invalid("at least two grid points per axis".into()));
            }
        }
        Ok(SearchDomain {
            x_range,
            t_range,
            grid,
            refine_iters,
        })
    }

    pub fn rect(x_range: (f64, f64), t_range: (f64, f64), grid: usize, refine_iters: usize) -> Result<Self> {
        Self::new(x_range, t_range, (grid, grid), refine_iters)
    }

    /// Search in `t` alone, with `x` pinned to 0.
    pub fn line_t(t_range: (f64, f64), grid: usize, refine_iters: usize) -> Result<Self> {
        Self::new((0.0, 0.0), t_range, (1, line_points(grid)), refine_iters)
    }

    /// Search in `x` alone, with `t` pinned to 0.
    pub fn line_x(x_range: (f64, f64), grid: usize, refine_iters: usize) -> Result<Self> {
        Self::new(x_range, (0.0, 0.0), (line_points(grid), 1), refine_iters)
    }

    fn axis(range: (f64, f64), n: usize) -> Vec<f64> {
        if range.0 == range.1 || n < 2 {
            return vec![range.0];
        }
        let step = (range.1 - range.0) / (n - 1) as f64;
        let mut v: Vec<f64> = (0..n).map(|i| range.0 + step * i as f64).collect();
        v[n - 1] = range.1;
        v
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Found {
    pub x: f64,
    pub t: f64,
    pub value: f64,
    /// Best value on the grid before refinement.
    pub grid_value: f64,
}

fn checked(f: &(dyn Fn(f64, f64) -> f64 + Sync), x: f64, t: f64) -> Result<f64> {
    let v = f(x, t);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(vec![x, t]))
    }
}

const GOLDEN_STEPS: usize = 80;
const REFINE_STARTS: usize = 4;

/// Golden-section search on `[lo, hi]`; the endpoints are candidates too.
fn golden_line(g: &dyn Fn(f64) -> Result<f64>, lo: f64, hi: f64, kind: Extremum) -> Result<(f64, f64)> {
    let mut best = (lo, g(lo)?);
    let vh = g(hi)?;
    if kind.better(vh, best.1) {
        best = (hi, vh);
    }
    if hi <= lo {
        return Ok(best);
    }
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = g(c)?;
    let mut fd = g(d)?;
    for _ in 0..GOLDEN_STEPS {
        if kind.better(fc, fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = g(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = g(d)?;
        }
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs()) {
            break;
        }
    }
    for (p, v) in [(c, fc), (d, fd)] {
        if kind.better(v, best.1) {
            best = (p, v);
        }
    }
    Ok(best)
}

/// Dense grid scan followed by coordinate-wise golden-section refinement in
/// the cells around the best grid points. Deterministic for a fixed domain.
pub fn extremize(f: &(dyn Fn(f64, f64) -> f64 + Sync), dom: &SearchDomain, kind: Extremum) -> Result<Found> {
    let xs = SearchDomain::axis(dom.x_range, dom.grid.0);
    let ts = SearchDomain::axis(dom.t_range, dom.grid.1);
    let rows: Vec<Vec<f64>> = xs
        .par_iter()
        .map(|&x| ts.iter().map(|&t| checked(f, x, t)).collect::<Result<Vec<f64>>>())
        .collect::<Result<_>>()?;
    let mut cells: Vec<(usize, usize, f64)> = Vec::with_capacity(xs.len() * ts.len());
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            cells.push((i, j, v));
        }
    }
    cells.sort_by(|a, b| {
        let o = a.2.partial_cmp(&b.2).unwrap_or(Ordering::Equal);
        let o = if kind == Extremum::Max { o.reverse() } else { o };
        o.then((a.0, a.1).cmp(&(b.0, b.1)))
    });
    let (bi, bj, grid_value) = cells[0];
    let mut best = (xs[bi], ts[bj], grid_value);
    let hx = if xs.len() > 1 { xs[1] - xs[0] } else { 0.0 };
    let ht = if ts.len() > 1 { ts[1] - ts[0] } else { 0.0 };
    for &(i, j, v0) in cells.iter().take(REFINE_STARTS) {
        let bx = ((xs[i] - hx).max(dom.x_range.0), (xs[i] + hx).min(dom.x_range.1));
        let bt = ((ts[j] - ht).max(dom.t_range.0), (ts[j] + ht).min(dom.t_range.1));
        let (mut x, mut t, mut v) = (xs[i], ts[j], v0);
        for _ in 0..dom.refine_iters {
            let mut moved = false;
            if bx.0 < bx.1 {
                let (nx, nv) = golden_line(&|s| checked(f, s, t), bx.0, bx.1, kind)?;
                if kind.better(nv, v) {
                    x = nx;
                    v = nv;
                    moved = true;
                }
            }
            if bt.0 < bt.1 {
                let (nt, nv) = golden_line(&|s| checked(f, x, s), bt.0, bt.1, kind)?;
                if kind.better(nv, v) {
                    t = nt;
                    v = nv;
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        if kind.better(v, best.2) {
            best = (x, t, v);
        }
    }
    Ok(Found {
        x: best.0,
        t: best.1,
        value: best.2,
        grid_value,
    })
}

/// How a quoted constant is compared with the computed value.
#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Agreement {
    /// The value truncated to `decimals` places equals the constant.
    Truncated { decimals: u32 },
    /// `|value - constant| <= tol`.
    Exact { tol: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct Reference {
    pub value: f64,
    pub agreement: Agreement,
}

impl Reference {
    pub fn truncated(value: f64, decimals: u32) -> Self {
        Reference {
            value,
            agreement: Agreement::Truncated { decimals },
        }
    }

    pub fn exact(value: f64) -> Self {
        Reference {
            value,
            agreement: Agreement::Exact { tol: EXACT_TOL },
        }
    }

    /// Signed distance to the edge of the accepted interval, positive inside.
    pub fn margin(&self, v: f64, slack: f64) -> f64 {
        match self.agreement {
            Agreement::Exact { tol } => tol - (v - self.value).abs(),
            Agreement::Truncated { decimals } => {
                let unit = 10f64.powi(-(decimals as i32));
                // truncation is toward zero
                let (lo, hi) = if self.value > 0.0 || (self.value == 0.0 && v >= 0.0) {
                    (self.value, self.value + unit)
                } else {
                    (self.value - unit, self.value)
                };
                (v - lo + slack).min(hi - v + slack)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtMost(f64),
    AtLeast(f64),
    Below(f64),
    Above(f64),
}

impl Bound {
    pub fn margin(&self, v: f64, slack: f64) -> f64 {
        match *self {
            Bound::AtMost(b) => b - v + slack,
            Bound::AtLeast(b) => v - b + slack,
            Bound::Below(b) => b - v,
            Bound::Above(b) => v - b,
        }
    }

    fn holds(&self, v: f64, slack: f64) -> bool {
        match self {
            Bound::Below(_) | Bound::Above(_) => self.margin(v, slack) > 0.0,
            _ => self.margin(v, slack) >= 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NoReference,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Point {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertReport {
    pub task: String,
    pub description: String,
    pub kind: Option<Extremum>,
    pub domain: Option<SearchDomain>,
    pub location: Point,
    pub value: f64,
    pub reference: Option<Reference>,
    pub bound: Option<Bound>,
    /// Location where the extremum is expected, when one is stated.
    pub expected_location: Option<Point>,
    pub verdict: Verdict,
    pub margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

impl CertReport {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    /// Largest coordinate distance between the found and expected locations.
    pub fn location_error(&self) -> Option<f64> {
        let e = self.expected_location?;
        let d = |a: Option<f64>, b: Option<f64>| match (a, b) {
            (Some(a), Some(b)) => (a - b).abs(),
            _ => 0.0,
        };
        Some(d(self.location.x, e.x).max(d(self.location.t, e.t)))
    }
}

#[derive(Clone, Debug)]
pub struct CertConfig {
    pub grid: usize,
    pub refine_iters: usize,
    pub slack: f64,
}

impl Default for CertConfig {
    fn default() -> Self {
        CertConfig::from(&Config::default())
    }
}

impl From<&Config> for CertConfig {
    fn from(c: &Config) -> Self {
        CertConfig {
            grid: c.grid,
            refine_iters: c.refine_iters,
            slack: DEFAULT_SLACK,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Suite {
    Z,
    U,
    Appendix,
    Monotone,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(Suite::Z),
            "u" => Ok(Suite::U),
            "appendix" => Ok(Suite::Appendix),
            "monotone" => Ok(Suite::Monotone),
            "all" => Ok(Suite::All),
            other => Err(Error::Invalid(format!("unknown suite {other:?}"))),
        }
    }
}

/// Finalizes a report from its value and checks.
#[allow(clippy::too_many_arguments)]
fn judge(
    task: &str,
    description: &str,
    kind: Option<Extremum>,
    domain: Option<SearchDomain>,
    location: Point,
    value: f64,
    reference: Option<Reference>,
    bound: Option<Bound>,
    expected_location: Option<Point>,
    unquoted: bool,
    slack: f64,
) -> CertReport {
    let mut margin = f64::INFINITY;
    let mut ok = true;
    if let Some(r) = &reference {
        let m = r.margin(value, slack);
        margin = margin.min(m);
        ok &= m >= 0.0;
    }
    if let Some(b) = &bound {
        margin = margin.min(b.margin(value, slack));
        ok &= b.holds(value, slack);
    }
    let verdict = if !ok || !value.is_finite() {
        Verdict::Fail
    } else if unquoted || (reference.is_none() && bound.is_none()) {
        Verdict::NoReference
    } else {
        Verdict::Pass
    };
    CertReport {
        task: task.into(),
        description: description.into(),
        kind,
        domain,
        location,
        value,
        reference,
        bound,
        expected_location,
        verdict,
        margin,
        notes: None,
    }
}

type Kernel = Box<dyn Fn(f64, f64) -> f64 + Sync + Send>;

#[derive(Clone, Copy)]
enum Shape {
    Rect((f64, f64), (f64, f64)),
    LineT((f64, f64)),
    LineX((f64, f64)),
}

/// An extremum search with optional quoted constant and bound.
struct Search {
    id: &'static str,
    description: &'static str,
    shape: Shape,
    kind: Extremum,
    f: Kernel,
    reference: Option<Reference>,
    bound: Option<Bound>,
    expected: Option<Point>,
    unquoted: bool,
}

impl Search {
    fn new(id: &'static str, description: &'static str, shape: Shape, kind: Extremum, f: Kernel) -> Self {
        Search {
            id,
            description,
            shape,
            kind,
            f,
            reference: None,
            bound: None,
            expected: None,
            unquoted: false,
        }
    }

    fn reference(mut self, r: Reference) -> Self {
        self.reference = Some(r);
        self
    }

    fn bound(mut self, b: Bound) -> Self {
        self.bound = Some(b);
        self
    }

    fn at(mut self, x: Option<f64>, t: Option<f64>) -> Self {
        self.expected = Some(Point { x, t });
        self
    }

    fn unquoted(mut self) -> Self {
        self.unquoted = true;
        self
    }

    fn domain(&self, cfg: &CertConfig) -> Result<SearchDomain> {
        match self.shape {
            Shape::Rect(x, t) => SearchDomain::rect(x, t, cfg.grid, cfg.refine_iters),
            Shape::LineT(t) => SearchDomain::line_t(t, cfg.grid, cfg.refine_iters),
            Shape::LineX(x) => SearchDomain::line_x(x, cfg.grid, cfg.refine_iters),
        }
    }

    fn run(&self, cfg: &CertConfig) -> Result<CertReport> {
        let dom = self.domain(cfg)?;
        let found = extremize(&*self.f, &dom, self.kind)?;
        let location = match self.shape {
            Shape::Rect(..) => Point {
                x: Some(found.x),
                t: Some(found.t),
            },
            Shape::LineT(_) => Point {
                x: None,
                t: Some(found.t),
            },
            Shape::LineX(_) => Point {
                x: Some(found.x),
                t: None,
            },
        };
        Ok(judge(
            self.id,
            self.description,
            Some(self.kind),
            Some(dom),
            location,
            found.value,
            self.reference.clone(),
            self.bound,
            self.expected,
            self.unquoted,
            cfg.slack,
        ))
    }
}

type Custom = Box<dyn Fn(&CertConfig) -> Result<CertReport> + Sync + Send>;

enum Task {
    Search(Search),
    Custom(Custom),
}

impl Task {
    fn run(&self, cfg: &CertConfig) -> Result<CertReport> {
        match self {
            Task::Search(s) => s.run(cfg),
            Task::Custom(c) => c(cfg),
        }
    }
}

const ARC: (f64, f64) = (FRAC_PI_3, FRAC_PI_2);
/// Upper end of `[4/3, phi)` where the kernel has a removable `phi - x`.
const PHI_OPEN: f64 = PHI - 1e-7;

fn lphi() -> f64 {
    k::log_phi()
}

fn lpsi() -> f64 {
    k::log_psi()
}

/// `2 L(phi) / (cos^2 t - 1)`, one side of the sign condition on `Z(1, t)`.
pub fn unit_excess_lhs(t: f64) -> f64 {
    2.0 * lphi() / (t.cos().powi(2) - 1.0)
}

/// `(L(phi) P(x,t) - P(phi,t) L(x)) / (phi - x)`.
pub fn golden_lower_quotient(x: f64, t: f64) -> f64 {
    (lphi() * k::reduced_slope(x, t) - k::reduced_slope(PHI, t) * k::log_mass(x)) / (PHI - x)
}

/// `(P(phi,t) L(1/(x-1)) - L(phi) P(1/(x-1),t)) / (phi - x)`.
pub fn golden_upper_quotient(x: f64, t: f64) -> f64 {
    let y = 1.0 / (x - 1.0);
    (k::reduced_slope(PHI, t) * k::log_mass(y) - lphi() * k::reduced_slope(y, t)) / (PHI - x)
}

/// `log(phi) p(x,t) / (1 + x^4 - 2x^2 cos 2t)^4`, without the factor `x^2`.
pub fn mixed_bound_lhs_bare(x: f64, t: f64) -> f64 {
    let x2 = x * x;
    lphi() * k::mixed_partial_poly(x, t) / (1.0 + x2 * x2 - 2.0 * x2 * (2.0 * t).cos()).powi(4)
}

/// `log(phi) x^2 p(x,t) / (1 + x^4 - 2x^2 cos 2t)^4`.
pub fn mixed_bound_lhs(x: f64, t: f64) -> f64 {
    x * x * mixed_bound_lhs_bare(x, t)
}

/// `-sqrt(5) (2 cos 2t + 1) / ((2 cos 2t - 3)^3 (1 + x^2 + x^4))`.
pub fn mixed_bound_rhs(x: f64, t: f64) -> f64 {
    let c = (2.0 * t).cos();
    let x2 = x * x;
    -5f64.sqrt() * (2.0 * c + 1.0) / ((2.0 * c - 3.0).powi(3) * (1.0 + x2 + x2 * x2))
}

/// The lower quotient at `t = pi/3` in closed form, a function of `x` only.
pub fn golden_lower_edge(x: f64) -> f64 {
    let x2 = x * x;
    let a = 5f64.sqrt() / 8.0 * ((x2 + x + 1.0) / (x2 - x + 1.0)).ln();
    let b = 2.0 * x * lphi() * (x2 + 1.0) * (x2 * x2 - 5.0 * x2 + 1.0) / (x2 * x2 + x2 + 1.0).powi(2);
    (a + b) / (PHI - x)
}

/// The upper quotient at `t = pi/2` in closed form, a function of `x` only.
pub fn golden_upper_edge(x: f64) -> f64 {
    let s5 = 5f64.sqrt();
    let a = -3.0 * (47.0 + 21.0 * s5) * ((x * x - x + 1.0) / (x * x - 3.0 * x + 3.0)).ln() / (525.0 + 235.0 * s5);
    let poly = x.powi(5) - 5.0 * x.powi(4) + 4.0 * x.powi(3) + 8.0 * x * x - 12.0 * x + 4.0;
    let b = -2.0 * poly * lphi() / (x * x - 2.0 * x + 2.0).powi(3);
    (a + b) / (PHI - x)
}

/// `2 log(phi) (x-1)^3 (x^2-2x+2) / (sqrt(5) log((x^2-x+1)/(x^2-3x+3)))`.
pub fn shifted_log_ratio(x: f64) -> f64 {
    let xm = x - 1.0;
    2.0 * lphi() * xm.powi(3) * (x * x - 2.0 * x + 2.0)
        / (5f64.sqrt() * ((x * x - x + 1.0) / (x * x - 3.0 * x + 3.0)).ln())
}

/// `q(x,t) / ((x^2-2x+2)^2 - 4(x-1)^2 cos^2 t)^3` minus its value at `x = phi`.
pub fn shifted_partial_excess(x: f64, t: f64) -> f64 {
    let c2 = (2.0 * t).cos();
    let base = x * x - 2.0 * x + 2.0;
    let den = base * base - 4.0 * (x - 1.0).powi(2) * t.cos().powi(2);
    k::shifted_partial_poly(x, t) / den.powi(3) - PHI.powi(4) * (2.0 * c2 + 1.0) / (3.0 - 2.0 * c2).powi(3)
}

/// `x^2 (2 + 2x - 3x^2) / (1 + 2x + x^2 + 3x^4)`.
pub fn pair_weight_ratio(x: f64) -> f64 {
    x * x * (2.0 + 2.0 * x - 3.0 * x * x) / (1.0 + 2.0 * x + x * x + 3.0 * x.powi(4))
}

/// `(9 + 16x - 17x^2) x^2 / ((1 - x + x^2)(3 + 15x + 19x^2))`.
pub fn quad_weight_ratio(x: f64) -> f64 {
    (9.0 + 16.0 * x - 17.0 * x * x) * x * x / ((1.0 - x + x * x) * (3.0 + 15.0 * x + 19.0 * x * x))
}

/// Polynomial side of the silver slope bound in `y = x^2`.
pub fn silver_slope_poly_y(y: f64, t: f64) -> f64 {
    let l = lpsi();
    let c = (2.0 * t).cos();
    let c4 = (4.0 * t).cos();
    -l - 6.3 * c
        + y * (-12.0 * l * c + 9.0 * l + 12.6 * c * c + 3.15)
        + y.powi(2) * (-4.0 * l * c - 2.0 * l * c4 + 20.0 * l - 8.4 * c.powi(3) - 12.6 * c)
        + y.powi(3) * (4.0 * l * c + 2.0 * l * c4 - 20.0 * l + 12.6 * c * c + 3.15)
        + y.powi(4) * (12.0 * l * c - 9.0 * l - 6.3 * c)
        + y.powi(5) * (l + 1.05)
}

/// Polynomial side of the shifted silver slope bound in `w = (1 + 1/x)^2`.
pub fn silver_shift_poly_w(w: f64, t: f64) -> f64 {
    let l = lpsi();
    let c = (2.0 * t).cos();
    let c4 = (4.0 * t).cos();
    -12.0 * l * c + 9.0 * l - 4.2 * c
        + w * (-4.0 * l * c - 2.0 * l * c4 + 20.0 * l + 8.4 * c * c + 2.1)
        + w.powi(2) * (4.0 * l * c + 2.0 * l * c4 - 20.0 * l - 5.6 * c.powi(3) - 8.4 * c)
        + w.powi(3) * (12.0 * l * c - 9.0 * l + 8.4 * c * c + 2.1)
        + w.powi(4) * (l - 4.2 * c)
        + 0.7 * w.powi(5)
}

/// `Z~(1) + Z~(2) + min(Z~(3), Z~(4))`.
pub fn small_integer_envelope(t: f64) -> f64 {
    let z = |x: f64| k::golden_excess_reduced(x, t);
    z(1.0) + z(2.0) + z(3.0).min(z(4.0))
}

fn s(id: &'static str, description: &'static str, shape: Shape, kind: Extremum, f: Kernel) -> Search {
    Search::new(id, description, shape, kind, f)
}

fn appendix_tasks() -> Vec<Task> {
    use Extremum::{Max, Min};
    let tr3 = |v| Reference::truncated(v, 3);
    let phi_sq = PHI * PHI;
    let head: Vec<Search> = vec![
        s("unit-excess-lhs", "max of 2L(phi)/(cos^2 t - 1)", Shape::LineT(ARC), Max, Box::new(|_, t| unit_excess_lhs(t)))
            .reference(tr3(-0.962))
            .at(None, Some(FRAC_PI_2)),
        s("unit-excess-rhs", "min of log(3) P(phi,t)", Shape::LineT(ARC), Min, Box::new(|_, t| 3f64.ln() * k::reduced_slope(PHI, t)))
            .reference(tr3(-0.614))
            .at(None, Some(FRAC_PI_3)),
        s(
            "unit-excess-gap",
            "max of 2L(phi)/(cos^2 t - 1) - log(3) P(phi,t)",
            Shape::LineT(ARC),
            Max,
            Box::new(|_, t| unit_excess_lhs(t) - 3f64.ln() * k::reduced_slope(PHI, t)),
        )
        .bound(Bound::Below(0.0)),
        s("critical-gap-quarter", "min over t of L(phi)R(1/4,t) - P(phi,t)/(x^4+x^2+1)", Shape::LineT(ARC), Min, Box::new(|_, t| k::golden_critical_gap(0.25, t)))
            .reference(Reference::truncated(0.2229, 4))
            .at(None, Some(FRAC_PI_2)),
        s("critical-gap-third", "max over t of L(phi)R(1/3,t) - P(phi,t)/(x^4+x^2+1)", Shape::LineT(ARC), Max, Box::new(|_, t| k::golden_critical_gap(1.0 / 3.0, t)))
            .reference(tr3(-0.202))
            .at(None, Some(FRAC_PI_3)),
        s("ratio-numerator-min", "min of N on [0,1/4] x [2pi/3, pi]", Shape::Rect((0.0, 0.25), (2.0 * FRAC_PI_3, PI)), Min, Box::new(k::critical_ratio_numerator))
            .reference(Reference::exact(8.5))
            .at(Some(0.0), Some(2.0 * FRAC_PI_3)),
        s("scaled-ratio-max", "max of L(phi)R(x,t) on [1/2,1] x arc", Shape::Rect((0.5, 1.0), ARC), Max, Box::new(|x, t| lphi() * k::critical_ratio(x, t)))
            .reference(tr3(-1.203))
            .at(Some(1.0), Some(FRAC_PI_2)),
        s("damped-slope-min", "min of P(phi,t)/(x^4+x^2+1) on [1/2,1] x arc", Shape::Rect((0.5, 1.0), ARC), Min, Box::new(|x, t| k::reduced_slope(PHI, t) / (x.powi(4) + x * x + 1.0)))
            .reference(tr3(-0.425))
            .at(Some(0.5), Some(FRAC_PI_3)),
        s("reduced-excess-1", "min over t of Z~(1,t)", Shape::LineT(ARC), Min, Box::new(|_, t| k::golden_excess_reduced(1.0, t)))
            .reference(tr3(-0.334))
            .at(None, Some(FRAC_PI_3)),
        s("reduced-excess-2", "min over t of Z~(2,t)", Shape::LineT(ARC), Min, Box::new(|_, t| k::golden_excess_reduced(2.0, t)))
            .reference(tr3(0.119))
            .at(None, Some(FRAC_PI_2)),
        s("reduced-excess-3", "min over t of Z~(3,t)", Shape::LineT(ARC), Min, Box::new(|_, t| k::golden_excess_reduced(3.0, t)))
            .reference(tr3(0.246))
            .at(None, Some(FRAC_PI_2)),
        s("reduced-excess-4", "min over t of Z~(4,t)", Shape::LineT(ARC), Min, Box::new(|_, t| k::golden_excess_reduced(4.0, t)))
            .reference(tr3(0.254))
            .at(None, Some(FRAC_PI_2)),
    ];
    let mut v: Vec<Task> = head.into_iter().map(Task::Search).collect();
    v.push(Task::Custom(Box::new(|cfg| {
        // the quoted lower bound adds the separate minima of the four terms
        let dom = SearchDomain::line_t(ARC, cfg.grid, cfg.refine_iters)?;
        let mins: Vec<f64> = (1..=4)
            .map(|n| extremize(&|_, t| k::golden_excess_reduced(n as f64, t), &dom, Extremum::Min).map(|f| f.value))
            .collect::<Result<_>>()?;
        let value = mins[0] + mins[1] + mins[2].min(mins[3]);
        let mut r = judge(
            "reduced-excess-sum",
            "min Z~(1) + min Z~(2) + min(min Z~(3), min Z~(4)) over t",
            Some(Extremum::Min),
            Some(dom),
            Point::default(),
            value,
            Some(Reference::truncated(0.031, 3)),
            Some(Bound::Above(0.0)),
            None,
            false,
            cfg.slack,
        );
        r.notes = Some(format!("term minima {mins:?}"));
        Ok(r)
    })));
    let rest: Vec<Search> = vec![
        s("golden-lower-quotient", "min of (L(phi)P(x,t) - P(phi,t)L(x))/(phi-x) on [4/3,phi) x arc", Shape::Rect((4.0 / 3.0, PHI_OPEN), ARC), Min, Box::new(golden_lower_quotient))
            .reference(tr3(-0.651))
            .at(Some(4.0 / 3.0), Some(FRAC_PI_3)),
        s("golden-upper-quotient", "max of (P(phi,t)L(1/(x-1)) - L(phi)P(1/(x-1),t))/(phi-x) on [4/3,phi) x arc", Shape::Rect((4.0 / 3.0, PHI_OPEN), ARC), Max, Box::new(golden_upper_quotient))
            .reference(tr3(-0.867))
            .at(Some(4.0 / 3.0), Some(FRAC_PI_2)),
        s("mixed-bound-lhs", "max of log(phi) p(x,t)/(1+x^4-2x^2 cos 2t)^4 on [4/3,phi] x arc", Shape::Rect((4.0 / 3.0, PHI), ARC), Max, Box::new(mixed_bound_lhs_bare))
            .reference(tr3(-0.019))
            .at(Some(PHI), Some(FRAC_PI_2)),
        s("mixed-bound-lhs-weighted", "max of log(phi) x^2 p(x,t)/(1+x^4-2x^2 cos 2t)^4 on [4/3,phi] x arc", Shape::Rect((4.0 / 3.0, PHI), ARC), Max, Box::new(mixed_bound_lhs))
            .unquoted()
            .at(Some(PHI), Some(FRAC_PI_2)),
        s("mixed-bound-rhs", "min of -sqrt5(2cos2t+1)/((2cos2t-3)^3(1+x^2+x^4)) on [4/3,phi] x arc", Shape::Rect((4.0 / 3.0, PHI), ARC), Min, Box::new(mixed_bound_rhs))
            .reference(tr3(-0.003))
            .at(Some(4.0 / 3.0), Some(FRAC_PI_2)),
        s("mixed-bound-gap", "max of weighted lhs minus rhs on [4/3,phi] x arc", Shape::Rect((4.0 / 3.0, PHI), ARC), Max, Box::new(|x, t| mixed_bound_lhs(x, t) - mixed_bound_rhs(x, t)))
            .bound(Bound::AtMost(0.0)),
        s("golden-lower-edge", "min over [4/3,phi) of the lower quotient at t = pi/3", Shape::LineX((4.0 / 3.0, PHI_OPEN)), Min, Box::new(|x, _| golden_lower_edge(x)))
            .reference(tr3(-0.651))
            .at(Some(4.0 / 3.0), None),
        s("golden-upper-edge", "max over [4/3,phi) of the upper quotient at t = pi/2", Shape::LineX((4.0 / 3.0, PHI_OPEN)), Max, Box::new(|x, _| golden_upper_edge(x)))
            .reference(tr3(-0.867))
            .at(Some(4.0 / 3.0), None),
        s("shifted-log-ratio-min", "min of the shifted log ratio on [4/3,phi]", Shape::LineX((4.0 / 3.0, PHI)), Min, Box::new(|x, _| shifted_log_ratio(x)))
            .bound(Bound::Above(0.0)),
        s("shifted-log-ratio-max", "max of the shifted log ratio on [4/3,phi]", Shape::LineX((4.0 / 3.0, PHI)), Max, Box::new(|x, _| shifted_log_ratio(x)))
            .bound(Bound::AtMost(PHI.powi(-4))),
        s("shifted-partial-excess", "min of q/(...)^3 - phi^4 (2cos2t+1)/(3-2cos2t)^3 on [4/3,phi] x arc", Shape::Rect((4.0 / 3.0, PHI), ARC), Min, Box::new(shifted_partial_excess))
            .bound(Bound::AtLeast(0.0)),
        s("pair-ratio-min", "min of x^2(2+2x-3x^2)/(1+2x+x^2+3x^4) on [phi,psi]", Shape::LineX((PHI, PSI)), Min, Box::new(|x, _| pair_weight_ratio(x)))
            .reference(tr3(-0.546)),
        s("pair-ratio-max", "max of x^2(2+2x-3x^2)/(1+2x+x^2+3x^4) on [phi,psi]", Shape::LineX((PHI, PSI)), Max, Box::new(|x, _| pair_weight_ratio(x)))
            .reference(Reference::exact(-0.25))
            .at(Some(PHI), None),
        s("silver-slope-min", "min of K(t)", Shape::LineT(ARC), Min, Box::new(|_, t| k::silver_slope(t))).reference(tr3(-0.750)),
        s("silver-slope-max", "max of K(t)", Shape::LineT(ARC), Max, Box::new(|_, t| k::silver_slope(t))).reference(tr3(-0.733)),
        s("pair-weight-bound", "max of the pair ratio times K(t) on [phi,psi] x arc", Shape::Rect((PHI, PSI), ARC), Max, Box::new(|x, t| pair_weight_ratio(x) * k::silver_slope(t)))
            .bound(Bound::AtMost(0.5)),
        s("silver-slope-bound", "min of log(psi) x^2 dP/dx on [phi,psi] x arc", Shape::Rect((PHI, PSI), ARC), Min, Box::new(|x, t| lpsi() * x * x * k::reduced_slope_dx(x, t)))
            .bound(Bound::AtLeast(2.1)),
        s("silver-slope-lhs-y", "min of -1.05/y on [phi^2,psi^2]", Shape::LineX((phi_sq, PSI * PSI)), Min, Box::new(|y, _| -1.05 / y))
            .reference(tr3(-0.401))
            .at(Some(phi_sq), None),
        s("silver-slope-rhs-y", "max of the y-polynomial on [phi^2,psi^2] x arc", Shape::Rect((phi_sq, PSI * PSI), ARC), Max, Box::new(silver_slope_poly_y))
            .reference(tr3(-29.385))
            .at(Some(phi_sq), Some(FRAC_PI_2)),
        s("silver-shift-bound", "max of log(psi) dP/dx(1+1/x,t) on [phi,psi] x arc", Shape::Rect((PHI, PSI), ARC), Max, Box::new(|x, t| lpsi() * k::reduced_slope_dx(k::golden_map(x), t)))
            .bound(Bound::AtMost(1.4)),
        s("silver-shift-lhs-w", "max of (log(psi)-0.7)/w on [2,phi^2]", Shape::LineX((2.0, phi_sq)), Max, Box::new(|w, _| (lpsi() - 0.7) / w))
            .reference(tr3(0.090))
            .at(Some(2.0), None),
        s("silver-shift-rhs-w", "min of the w-polynomial on [2,phi^2] x arc", Shape::Rect((2.0, phi_sq), ARC), Min, Box::new(silver_shift_poly_w))
            .reference(tr3(0.714))
            .at(Some(2.0), Some(FRAC_PI_3)),
        s("quad-weight-bound", "max of (9+16x-17x^2)x^2/((1-x+x^2)(3+15x+19x^2)) K(t) on [phi,psi] x arc", Shape::Rect((PHI, PSI), ARC), Max, Box::new(|x, t| quad_weight_ratio(x) * k::silver_slope(t)))
            .bound(Bound::AtMost(0.34))
            .unquoted(),
        s("silver-map-bound", "max of log(psi) dP/dx(2+1/x,t) on [phi,psi] x arc", Shape::Rect((PHI, PSI), ARC), Max, Box::new(|x, t| lpsi() * k::reduced_slope_dx(k::silver_map(x), t)))
            .bound(Bound::AtMost(0.38))
            .unquoted(),
        s(
            "composite-map-bound",
            "min of log(psi) x^2/(2x+1)^2 dP/dx(1+1/(2+1/x),t) on [phi,psi] x arc",
            Shape::Rect((PHI, PSI), ARC),
            Min,
            Box::new(|x, t| lpsi() * x * x / (2.0 * x + 1.0).powi(2) * k::reduced_slope_dx(k::golden_map(k::silver_map(x)), t)),
        )
        .bound(Bound::AtLeast(0.12))
        .unquoted(),
    ];
    v.extend(rest.into_iter().map(Task::Search));
    v
}

fn arc_grid(n: usize) -> Vec<f64> {
    SearchDomain::axis(ARC, n.max(2))
}

/// Sign changes of the central-difference derivative of `Z~(., t)` on
/// `(1, x_max]`, with the position of each change.
fn excess_turning_points(t: f64, x_max: f64, n: usize) -> Vec<f64> {
    let h = 1e-6;
    let dz = |x: f64| (k::golden_excess_reduced(x + h, t) - k::golden_excess_reduced(x - h, t)) / (2.0 * h);
    let step = (x_max - 1.0) / n as f64;
    let mut out = Vec::new();
    let mut prev_x = 1.0 + step;
    let mut prev = dz(prev_x);
    for i in 2..=n {
        let x = 1.0 + step * i as f64;
        let cur = dz(x);
        if (prev > 0.0) != (cur > 0.0) {
            // bisect the change
            let (mut a, mut b) = (prev_x, x);
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                if (dz(m) > 0.0) == (prev > 0.0) {
                    a = m;
                } else {
                    b = m;
                }
            }
            out.push(0.5 * (a + b));
        }
        prev = cur;
        prev_x = x;
    }
    out
}

fn z_tasks() -> Vec<Task> {
    use Extremum::{Max, Min};
    let mut v = vec![
        Task::Search(
            s("z-unit-negative", "max over t of Z~(1,t)", Shape::LineT(ARC), Max, Box::new(|_, t| k::golden_excess_reduced(1.0, t)))
                .bound(Bound::Below(0.0)),
        ),
        Task::Search(
            s("z-golden-zero", "max over t of |Z(phi,t)|", Shape::LineT(ARC), Max, Box::new(|_, t| k::golden_excess(PHI, t).abs()))
                .bound(Bound::AtMost(1e-12)),
        ),
        Task::Search(
            s("z-gap-low", "min of the critical gap on [0,1/4] x arc", Shape::Rect((0.0, 0.25), ARC), Min, Box::new(k::golden_critical_gap))
                .bound(Bound::Above(0.0)),
        ),
        Task::Search(
            s("z-gap-high", "max of the critical gap on [1/3,1] x arc", Shape::Rect((1.0 / 3.0, 1.0), ARC), Max, Box::new(k::golden_critical_gap))
                .bound(Bound::Below(0.0)),
        ),
        Task::Search(
            s("z-small-integers", "min over t of Z~(1)+Z~(2)+min(Z~(3),Z~(4))", Shape::LineT(ARC), Min, Box::new(|_, t| small_integer_envelope(t)))
                .bound(Bound::AtLeast(0.0)),
        ),
        Task::Search(
            s("z-shift-pair", "min of Z~(x)+Z~(1/(x-1)) on [4/3,phi] x arc", Shape::Rect((4.0 / 3.0, PHI), ARC), Min, Box::new(|x, t| {
                k::golden_excess_reduced(x, t) + k::golden_excess_reduced(1.0 / (x - 1.0), t)
            }))
            .bound(Bound::AtLeast(0.0)),
        ),
    ];
    v.push(Task::Custom(Box::new(|cfg| {
        // exactly one root of the critical gap in (1/4, 1/3) for every sampled t
        let ts = arc_grid(cfg.grid);
        let us = SearchDomain::axis((0.25, 1.0 / 3.0), cfg.grid.max(2));
        let bad = ts
            .par_iter()
            .filter(|&&t| {
                let signs: Vec<bool> = us.iter().map(|&u| k::golden_critical_gap(u, t) > 0.0).collect();
                signs.windows(2).filter(|w| w[0] != w[1]).count() != 1
            })
            .count();
        Ok(judge(
            "z-gap-single-root",
            "angles where the critical gap does not change sign exactly once on [1/4,1/3]",
            None,
            None,
            Point::default(),
            bad as f64,
            None,
            Some(Bound::AtMost(0.0)),
            None,
            false,
            0.0,
        ))
    })));
    v.push(Task::Custom(Box::new(|cfg| {
        // the x-derivative of Z changes sign once, between 3 and 4
        let ts = arc_grid(cfg.grid.min(128));
        let n = 4 * cfg.grid;
        let bad = ts
            .par_iter()
            .filter(|&&t| {
                let roots = excess_turning_points(t, 40.0, n);
                !(roots.len() == 1 && roots[0] > 3.0 && roots[0] < 4.0)
            })
            .count();
        let at = |t: f64| excess_turning_points(t, 40.0, n);
        let mut r = judge(
            "z-turning-point",
            "angles where dZ/dx does not change sign exactly once, inside (3,4), on (1,40]",
            None,
            None,
            Point::default(),
            bad as f64,
            None,
            Some(Bound::AtMost(0.0)),
            None,
            false,
            0.0,
        );
        r.notes = Some(format!(
            "turning points: t=pi/3 -> {:?}, t=5pi/12 -> {:?}",
            at(FRAC_PI_3),
            at(5.0 * PI / 12.0)
        ));
        Ok(r)
    })));
    v
}

fn u_tasks() -> Vec<Task> {
    use Extremum::{Max, Min};
    let mut v = vec![
        Task::Search(
            s("u-pair", "min of U~(x)+U~(1+1/x) on [phi,psi] x arc", Shape::Rect((PHI, PSI), ARC), Min, Box::new(k::silver_pair))
                .bound(Bound::AtLeast(0.0)),
        ),
        Task::Search(
            s("u-pair-boundary", "max over t of |U~(psi)+U~(1+1/psi)|", Shape::LineT(ARC), Max, Box::new(|_, t| k::silver_pair(PSI, t).abs()))
                .bound(Bound::AtMost(1e-10)),
        ),
        Task::Search(
            s("u-quad", "min of V(x,t) on [phi,psi] x arc", Shape::Rect((PHI, PSI), ARC), Min, Box::new(k::silver_quad))
                .bound(Bound::AtLeast(0.0)),
        ),
    ];
    v.push(Task::Custom(Box::new(|cfg| {
        let reference = SilverReference::new()?;
        let tree = markov_tree(5)?;
        let ts = arc_grid(cfg.grid.min(64));
        let (gap, min_total) = tree
            .nodes()
            .par_iter()
            .map(|node| -> Result<(f64, f64)> {
                let mut gap: f64 = 0.0;
                let mut low = f64::INFINITY;
                for &t in &ts {
                    let s = cycle::silver_sum_split(&node.word, t, &reference)?;
                    gap = gap.max((s.total - s.quads - s.pairs).abs());
                    low = low.min(s.total);
                }
                Ok((gap, low))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold((0.0f64, f64::INFINITY), |a, b| (a.0.max(b.0), a.1.min(b.1)));
        let mut r = judge(
            "u-split",
            "max |S_U - S_U(quads) - S_U(pairs)| over Markov words to depth 5",
            Some(Extremum::Max),
            None,
            Point::default(),
            gap,
            None,
            Some(Bound::AtMost(1e-10)),
            None,
            false,
            0.0,
        );
        r.notes = Some(format!("min of S_U over the same words and angles: {min_total:e}"));
        Ok(r)
    })));
    v
}

/// Words checked by the monotonicity suite.
pub fn monotone_sample() -> Result<(Vec<PeriodicWord>, Vec<PeriodicWord>)> {
    let tree = markov_tree(4)?;
    let markov: Vec<PeriodicWord> = tree.nodes().iter().map(|n| n.word.clone()).collect();
    let mut golden = markov.clone();
    for w in [
        vec![2],
        vec![1, 2],
        vec![1, 3],
        vec![3, 1, 4, 1],
        vec![1, 5, 1, 3],
        vec![10, 1],
        vec![1, 1, 1, 10],
        vec![4, 4, 1, 7, 2, 9],
    ] {
        golden.push(PeriodicWord::new(w)?);
    }
    Ok((golden, markov))
}

fn monotone_tasks() -> Vec<Task> {
    let run = |silver: bool| -> Custom {
        Box::new(move |cfg: &CertConfig| {
            let (golden, markov) = monotone_sample()?;
            let phi = PeriodicWord::new(vec![1])?;
            let psi = PeriodicWord::new(vec![2])?;
            let ts = arc_grid(cfg.grid);
            let words = if silver { markov } else { golden };
            let reports = words
                .par_iter()
                .map(|w| {
                    if silver {
                        cycle::check_monotone_d(w, &psi, &ts, cfg.slack)
                    } else {
                        cycle::check_monotone_d(&phi, w, &ts, cfg.slack)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let worst_step = reports.iter().map(|r| r.max_step.max(r.max_derivative)).fold(f64::NEG_INFINITY, f64::max);
            let worst_margin = reports
                .iter()
                .map(|r| r.criterion_margins[0].min(r.criterion_margins[1]))
                .fold(f64::INFINITY, f64::min);
            let (id, desc) = if silver {
                ("monotone-silver", "max increase of D(w, psi) over Markov words to depth 4")
            } else {
                ("monotone-golden", "max increase of D(phi, w) over sample words")
            };
            let mut r = judge(id, desc, Some(Extremum::Max), None, Point::default(), worst_step, None, Some(Bound::AtMost(0.0)), None, false, cfg.slack);
            let criteria_hold = worst_margin >= -cfg.slack;
            if !criteria_hold {
                r.verdict = Verdict::Fail;
            }
            r.margin = r.margin.min(worst_margin + cfg.slack);
            r.notes = Some(format!("{} words; smallest criterion margin {worst_margin:e}", reports.len()));
            Ok(r)
        })
    };
    let goodbad: Custom = Box::new(|cfg| {
        let (golden, _) = monotone_sample()?;
        let ts = arc_grid(cfg.grid.min(128));
        let reports = golden
            .par_iter()
            .map(|w| cycle::check_goodbad(w, &ts, cfg.slack))
            .collect::<Result<Vec<_>>>()?;
        let low = reports
            .iter()
            .flat_map(|r| std::iter::once(r.min_total).chain(r.pairings.iter().map(|p| p.min_sum)))
            .fold(f64::INFINITY, f64::min);
        let bad: usize = reports.iter().map(|r| r.bad_terms).sum();
        let mut r = judge(
            "good-bad-sums",
            "min of the paired and total Z~-sums over sample words",
            Some(Extremum::Min),
            None,
            Point::default(),
            low,
            None,
            Some(Bound::AtLeast(0.0)),
            None,
            false,
            cfg.slack,
        );
        r.notes = Some(format!("{} words, {bad} bad terms", reports.len()));
        Ok(r)
    });
    vec![Task::Custom(run(false)), Task::Custom(run(true)), Task::Custom(goodbad)]
}

fn tasks(suite: Suite) -> Vec<Task> {
    match suite {
        Suite::Z => z_tasks(),
        Suite::U => u_tasks(),
        Suite::Appendix => appendix_tasks(),
        Suite::Monotone => monotone_tasks(),
        Suite::All => {
            let mut v = appendix_tasks();
            v.extend(z_tasks());
            v.extend(u_tasks());
            v.extend(monotone_tasks());
            v
        }
    }
}

/// Runs every task of a suite in parallel; reports come back in task order.
pub fn run_suite(suite: Suite, cfg: &CertConfig) -> Result<Vec<CertReport>> {
    tasks(suite).par_iter().map(|t| t.run(cfg)).collect()
}
