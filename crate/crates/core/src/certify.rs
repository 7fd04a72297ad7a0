//! Grid certification of nonvanishing for functions on the Riemann sphere given in two charts
//! as polynomials in `(u, ū)`.

use num_complex::Complex64;

use crate::exactnum::{BiPoly, Scalar};

/// Which property is certified on each cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertMode {
    /// Real-valued function, certified strictly positive.
    Positive,
    /// Complex-valued function, certified nonvanishing.
    Nonvanishing,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CertOutcome {
    Certified { min_sample: f64 },
    /// A sample with a certified wrong sign (Positive mode only), as a point of the sphere
    /// in chart-1 coordinates (`None` is ∞).
    Violated { zeta: Option<Complex64>, value: f64, min_sample: f64 },
    Undecided { zeta: Option<Complex64>, min_sample: f64 },
}

/// Polynomial in `(u, v)` evaluated at `v = ū`, stored as float coefficients.
#[derive(Clone, Debug)]
pub struct ChartPoly {
    terms: Vec<(usize, usize, Complex64)>,
}

impl ChartPoly {
    pub fn new<S: Scalar>(p: &BiPoly<S>) -> Self {
        ChartPoly { terms: p.terms().into_iter().map(|(i, j, c)| (i, j, c.to_c64())).collect() }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        self.terms.iter().map(|&(i, j, c)| c * z.powu(i as u32) * zb.powu(j as u32)).sum()
    }

    /// Bound on `|∂f/∂x| + |∂f/∂y|`-type growth for `|u| ≤ rho`.
    fn lipschitz(&self, rho: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(i, j, c)| {
                let d = i + j;
                if d == 0 { 0.0 } else { c.norm() * d as f64 * rho.powi(d as i32 - 1) }
            })
            .sum()
    }

    fn magnitude(&self, rho: f64) -> f64 {
        self.terms.iter().map(|&(i, j, c)| c.norm() * rho.powi((i + j) as i32)).sum()
    }
}

struct Cell {
    chart: usize,
    cx: f64,
    cy: f64,
    h: f64,
    depth: usize,
}

fn to_zeta(chart: usize, u: Complex64) -> Option<Complex64> {
    if chart == 0 {
        Some(u)
    } else if u.norm() == 0.0 {
        None
    } else {
        Some(Complex64::new(1.0, 0.0) / u)
    }
}

fn meets_disk(c: &Cell) -> bool {
    let dx = (c.cx.abs() - c.h).max(0.0);
    let dy = (c.cy.abs() - c.h).max(0.0);
    dx * dx + dy * dy <= 1.0
}

/// Certifies the property on both closed unit disks (chart 1: `ζ`, chart 2: `s = 1/ζ`).
/// `grid` cells per side on `[−1,1]²`, refined up to `max_depth` times.
pub fn certify_sphere(charts: [&ChartPoly; 2], mode: CertMode, grid: usize, max_depth: usize) -> CertOutcome {
    let grid = grid.max(1);
    let h0 = 1.0 / grid as f64;
    let mut cells = Vec::with_capacity(2 * grid * grid);
    for chart in 0..2 {
        for a in 0..grid {
            for b in 0..grid {
                let c = Cell {
                    chart,
                    cx: -1.0 + (2 * a + 1) as f64 * h0,
                    cy: -1.0 + (2 * b + 1) as f64 * h0,
                    h: h0,
                    depth: 0,
                };
                if meets_disk(&c) {
                    cells.push(c);
                }
            }
        }
    }
    let mut min_sample = f64::INFINITY;
    let score = |c: &Cell| -> (Complex64, f64, f64) {
        let q = charts[c.chart];
        let u = Complex64::new(c.cx, c.cy);
        let val = q.eval(u);
        let rho = u.norm() + c.h * std::f64::consts::SQRT_2;
        let margin = 1e-12 * q.magnitude(rho) * (1.0 + q.terms.len() as f64);
        let s = match mode {
            CertMode::Positive => val.re,
            CertMode::Nonvanishing => val.norm(),
        };
        (u, s, margin)
    };
    // sign scan on the coarse grid before any refinement
    let mut evaluated = Vec::with_capacity(cells.len());
    for c in cells {
        let (u, s, margin) = score(&c);
        min_sample = min_sample.min(s.abs());
        if mode == CertMode::Positive && s < -margin {
            return CertOutcome::Violated { zeta: to_zeta(c.chart, u), value: s, min_sample };
        }
        evaluated.push((c, s, margin));
    }
    let mut undecided: Option<Option<Complex64>> = None;
    let mut stack: Vec<(Cell, Option<(f64, f64)>)> = evaluated.into_iter().map(|(c, s, m)| (c, Some((s, m)))).collect();
    while let Some((c, pre)) = stack.pop() {
        let (u, s, margin) = match pre {
            Some((s, m)) => (Complex64::new(c.cx, c.cy), s, m),
            None => score(&c),
        };
        min_sample = min_sample.min(s.abs());
        if mode == CertMode::Positive && s < -margin {
            return CertOutcome::Violated { zeta: to_zeta(c.chart, u), value: s, min_sample };
        }
        let q = charts[c.chart];
        let radius = c.h * std::f64::consts::SQRT_2;
        let bound = q.lipschitz(u.norm() + radius) * radius + margin;
        if s > bound {
            continue;
        }
        if c.depth < max_depth {
            let h = c.h / 2.0;
            for (sx, sy) in [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)] {
                let child = Cell { chart: c.chart, cx: c.cx + sx * h, cy: c.cy + sy * h, h, depth: c.depth + 1 };
                if meets_disk(&child) {
                    stack.push((child, None));
                }
            }
        } else if undecided.is_none() {
            undecided = Some(to_zeta(c.chart, u));
            if mode == CertMode::Nonvanishing {
                break;
            }
        }
    }
    match undecided {
        Some(zeta) => CertOutcome::Undecided { zeta, min_sample },
        None => CertOutcome::Certified { min_sample },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as G;

    fn bp(rows: Vec<Vec<i64>>) -> BiPoly<G> {
        BiPoly::from_table(rows.into_iter().map(|r| r.into_iter().map(G::from).collect()).collect()).unwrap()
    }

    #[test]
    fn positive_function_certifies() {
        // (1 + u v)^2 in both charts
        let q = ChartPoly::new(&bp(vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 1]]));
        let out = certify_sphere([&q, &q], CertMode::Positive, 16, 8);
        assert!(matches!(out, CertOutcome::Certified { .. }));
    }

    #[test]
    fn sign_change_found() {
        // 1 − u v and its chart-2 form u v − 1
        let q1 = ChartPoly::new(&bp(vec![vec![1, 0], vec![0, -1]]));
        let q2 = ChartPoly::new(&bp(vec![vec![-1, 0], vec![0, 1]]));
        let out = certify_sphere([&q1, &q2], CertMode::Positive, 16, 8);
        assert!(matches!(out, CertOutcome::Violated { .. }));
    }
}
