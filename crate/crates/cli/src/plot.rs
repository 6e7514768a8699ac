//! Data behind the figures, as tables.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use valkit_core::certify::{
    golden_lower_edge, golden_upper_edge, mixed_bound_lhs, mixed_bound_lhs_bare, mixed_bound_rhs, unit_excess_lhs,
};
use valkit_core::cycle::weight_gap;
use valkit_core::kernels as k;
use valkit_core::{markov_tree, ArcWeight, Error, PeriodicWord, Result};

use crate::output::{Cell, Table};

pub const FIGURES: std::ops::RangeInclusive<u32> = 1..=11;

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let n = n.max(2);
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

fn line(columns: &[&str], lo: f64, hi: f64, points: usize, row: impl Fn(f64) -> Vec<f64>) -> Table {
    let mut t = Table::new(columns);
    for x in grid(lo, hi, points) {
        let mut r = vec![Cell::from(x)];
        r.extend(row(x).into_iter().map(Cell::from));
        t.push(r);
    }
    t
}

fn surface(
    columns: &[&str],
    xs: (f64, f64),
    ts: (f64, f64),
    points: usize,
    row: impl Fn(f64, f64) -> Vec<f64>,
) -> Table {
    let mut t = Table::new(columns);
    for x in grid(xs.0, xs.1, points) {
        for s in grid(ts.0, ts.1, points) {
            let mut r = vec![Cell::from(x), Cell::from(s)];
            r.extend(row(x, s).into_iter().map(Cell::from));
            t.push(r);
        }
    }
    t
}

fn word(letters: &[u64]) -> PeriodicWord {
    PeriodicWord::new(letters.to_vec()).expect("literal word")
}

/// Table for figure `n`; `points` samples per axis.
pub fn figure(n: u32, points: usize) -> Result<Table> {
    const ARC: (f64, f64) = (FRAC_PI_3, 2.0 * FRAC_PI_3);
    const HALF: (f64, f64) = (FRAC_PI_3, FRAC_PI_2);
    let edge = (4.0 / 3.0, k::PHI - 1e-9);
    Ok(match n {
        1 => {
            let tree = markov_tree(3)?;
            let mut t = Table::new(&["index", "depth", "parent", "word", "value", "value_approx"]);
            for (i, node) in tree.nodes().iter().enumerate() {
                let x = valkit_core::QuadSurd::value_of_period(&node.word)?;
                t.push(vec![
                    Cell::Text(i.to_string()),
                    Cell::Text(node.depth.to_string()),
                    Cell::Text(node.parent.map_or(String::new(), |p| p.to_string())),
                    Cell::Text(node.word.to_string()),
                    Cell::Text(x.to_string()),
                    Cell::from(x.to_f64()),
                ]);
            }
            t
        }
        2 => {
            let w = ArcWeight::new(&word(&[1, 1]))?;
            line(&["t", "weight", "symmetrized"], ARC.0, ARC.1, points, |t| {
                vec![w.weight(t), 0.5 * w.paired(t)]
            })
        }
        3 => {
            let a = ArcWeight::new(&word(&[1, 1]))?;
            let b = ArcWeight::new(&word(&[1, 2]))?;
            line(&["t", "gap"], ARC.0, ARC.1, points, |t| vec![weight_gap(&a, &b, t)])
        }
        4 => {
            let ts = [FRAC_PI_3, 5.0 * PI / 12.0, FRAC_PI_2];
            line(
                &["x", "z_pi_3", "z_5pi_12", "z_pi_2", "z_over_cos_pi_2"],
                0.05,
                10.0,
                points,
                |x| {
                    let mut r: Vec<f64> = ts.iter().map(|&t| k::golden_excess(x, t)).collect();
                    r.push(k::golden_excess_reduced(x, FRAC_PI_2));
                    r
                },
            )
        }
        5 => line(&["t", "unit_lhs", "log3_slope"], HALF.0, HALF.1, points, |t| {
            vec![unit_excess_lhs(t), 3f64.ln() * k::reduced_slope(k::PHI, t)]
        }),
        6 => line(&["t", "gap_third", "gap_quarter"], HALF.0, HALF.1, points, |t| {
            vec![k::golden_critical_gap(1.0 / 3.0, t), k::golden_critical_gap(0.25, t)]
        }),
        7 => surface(&["x", "t", "numerator"], (0.0, 0.25), (2.0 * FRAC_PI_3, PI), points, |x, t| {
            vec![k::critical_ratio_numerator(x, t)]
        }),
        8 => surface(&["x", "t", "scaled_ratio", "damped_slope"], (0.5, 1.0), HALF, points, |x, t| {
            vec![
                k::log_phi() * k::critical_ratio(x, t),
                k::reduced_slope(k::PHI, t) / (x.powi(4) + x * x + 1.0),
            ]
        }),
        9 => surface(&["x", "t", "lhs", "lhs_bare", "rhs"], (4.0 / 3.0, k::PHI), HALF, points, |x, t| {
            vec![mixed_bound_lhs(x, t), mixed_bound_lhs_bare(x, t), mixed_bound_rhs(x, t)]
        }),
        10 => line(&["x", "lower_edge"], edge.0, edge.1, points, |x| vec![golden_lower_edge(x)]),
        11 => line(&["x", "upper_edge"], edge.0, edge.1, points, |x| vec![golden_upper_edge(x)]),
        _ => return Err(Error::Invalid(format!("no figure {n}; expected 1..=11"))),
    })
}

/// The main kernels on an `x` by `t` grid over `[1, 4] x [pi/3, pi/2]`.
pub fn kernel_table(points: usize) -> Table {
    surface(
        &["x", "t", "F", "L", "G", "H", "P", "R", "Z_reduced", "U_reduced"],
        (1.0, 4.0),
        (FRAC_PI_3, FRAC_PI_2),
        points,
        |x, t| {
            vec![
                k::density(x, t),
                k::log_mass(x),
                k::slope(x, t),
                k::mirror_slope(x, t),
                k::reduced_slope(x, t),
                k::critical_ratio(x, t),
                k::golden_excess_reduced(x, t),
                k::silver_excess_reduced(x, t),
            ]
        },
    )
}
