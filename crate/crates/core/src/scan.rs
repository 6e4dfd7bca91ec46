//! Grid scans of the parameter space Δ by transitivity verdict, with CSV and
//! SVG output.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::dynamics::Params;
use crate::transitivity::{in_region, region_bounds_f64, RegionId};

/// A `beta_steps × alpha_steps` grid of cells over `[beta_lo, beta_hi] × [0, 1]`.
/// Each cell is sampled at its centre.
#[derive(Clone, Debug)]
pub struct Grid {
    pub beta_lo: BigRational,
    pub beta_hi: BigRational,
    pub beta_steps: usize,
    pub alpha_steps: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CellStatus {
    /// The sample lies outside Δ.
    Outside,
    Transitive,
    NotTransitive(RegionId),
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub i: usize,
    pub j: usize,
    pub beta: BigRational,
    pub alpha: BigRational,
    pub status: CellStatus,
}

impl Grid {
    pub fn new(beta_lo: BigRational, beta_hi: BigRational, beta_steps: usize, alpha_steps: usize) -> Self {
        assert!(beta_steps >= 2 && alpha_steps >= 2, "grid needs at least 2 cells per axis");
        assert!(beta_lo < beta_hi);
        Grid { beta_lo, beta_hi, beta_steps, alpha_steps }
    }

    /// The full strip `1 < β < 2`.
    pub fn full(beta_steps: usize, alpha_steps: usize) -> Self {
        Self::new(BigRational::from_integer(1.into()), BigRational::from_integer(2.into()), beta_steps, alpha_steps)
    }

    fn center(lo: &BigRational, hi: &BigRational, steps: usize, i: usize) -> BigRational {
        lo + (hi - lo) * BigRational::new(BigInt::from(2 * i + 1), BigInt::from(2 * steps))
    }

    pub fn beta_at(&self, i: usize) -> BigRational {
        Self::center(&self.beta_lo, &self.beta_hi, self.beta_steps, i)
    }

    pub fn alpha_at(&self, j: usize) -> BigRational {
        Self::center(&BigRational::zero(), &BigRational::from_integer(1.into()), self.alpha_steps, j)
    }

    /// The cell containing a point, if it lies inside the grid.
    pub fn cell_of(&self, beta: f64, alpha: f64) -> Option<(usize, usize)> {
        let lo = self.beta_lo.to_f64()?;
        let hi = self.beta_hi.to_f64()?;
        let u = (beta - lo) / (hi - lo);
        if !(0.0..1.0).contains(&u) || !(0.0..1.0).contains(&alpha) {
            return None;
        }
        Some(((u * self.beta_steps as f64) as usize, (alpha * self.alpha_steps as f64) as usize))
    }
}

fn column(grid: &Grid, i: usize) -> Vec<Cell> {
    let beta = grid.beta_at(i);
    let b = beta.to_f64().unwrap_or(f64::NAN);
    // Regions with 1 < βⁿ ≤ 2 (one spare n so the exact test settles the edge).
    let mut regions = Vec::new();
    let mut n = 2u32;
    while b.powi(n as i32 - 1) <= 2.0 + 1e-9 {
        regions.extend((1..n).filter_map(|k| RegionId::new(k, n).ok()).map(|r| (r, region_bounds_f64(b, r))));
        n += 1;
    }
    let two_minus_beta = BigRational::from_integer(2.into()) - &beta;
    (0..grid.alpha_steps)
        .map(|j| {
            let alpha = grid.alpha_at(j);
            let status = if alpha > two_minus_beta {
                CellStatus::Outside
            } else {
                let a = alpha.to_f64().unwrap_or(f64::NAN);
                let params = Params::from_rationals(&beta, &alpha).expect("sample inside Δ");
                regions
                    .iter()
                    .filter(|(_, (lo, hi))| a >= lo - 1e-9 && a <= hi + 1e-9)
                    .find(|(r, _)| in_region(&params, *r))
                    .map_or(CellStatus::Transitive, |(r, _)| CellStatus::NotTransitive(*r))
            };
            Cell { i, j, beta: beta.clone(), alpha, status }
        })
        .collect()
}

/// Evaluates every cell; columns run in parallel, output order is fixed.
pub fn scan(grid: &Grid) -> Vec<Cell> {
    (0..grid.beta_steps).into_par_iter().flat_map_iter(|i| column(grid, i)).collect()
}

pub fn to_csv(cells: &[Cell]) -> String {
    let mut out = String::from("beta_approx,alpha_approx,verdict,region\n");
    for c in cells {
        let (verdict, region) = match c.status {
            CellStatus::Outside => ("outside", String::new()),
            CellStatus::Transitive => ("transitive", String::new()),
            // Region labels contain a comma, so they are quoted.
            CellStatus::NotTransitive(r) => ("not_transitive", format!("\"{r}\"")),
        };
        let _ = writeln!(
            out,
            "{:.6},{:.6},{verdict},{region}",
            c.beta.to_f64().unwrap_or(f64::NAN),
            c.alpha.to_f64().unwrap_or(f64::NAN)
        );
    }
    out
}

fn color(status: CellStatus) -> String {
    match status {
        CellStatus::Outside => "#ffffff".into(),
        CellStatus::Transitive => "#d9d9d9".into(),
        CellStatus::NotTransitive(r) => {
            // Hue by n, lightness by k/n.
            let hue = (r.n() as f64 * 47.0) % 360.0;
            let light = 35.0 + 30.0 * r.k() as f64 / r.n() as f64;
            format!("hsl({hue:.0},70%,{light:.0}%)")
        }
    }
}

/// A flat raster: β to the right, α upwards, with the line `α = 1 − β/2`.
pub fn to_svg(grid: &Grid, cells: &[Cell]) -> String {
    let px = 3usize;
    let (w, h) = (grid.beta_steps * px, grid.alpha_steps * px);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" shape-rendering=\"crispEdges\">\n"
    );
    for c in cells {
        let x = c.i * px;
        let y = h - (c.j + 1) * px;
        let _ = writeln!(out, "<rect x=\"{x}\" y=\"{y}\" width=\"{px}\" height=\"{px}\" fill=\"{}\"/>", color(c.status));
    }
    let lo = grid.beta_lo.to_f64().unwrap_or(1.0);
    let hi = grid.beta_hi.to_f64().unwrap_or(2.0);
    let to_xy = |beta: f64| {
        let x = (beta - lo) / (hi - lo) * w as f64;
        let y = h as f64 - (1.0 - beta / 2.0) * h as f64;
        (x, y)
    };
    let (x0, y0) = to_xy(lo);
    let (x1, y1) = to_xy(hi);
    let _ = writeln!(
        out,
        "<line x1=\"{x0:.1}\" y1=\"{y0:.1}\" x2=\"{x1:.1}\" y2=\"{y1:.1}\" stroke=\"#000000\" stroke-width=\"1\"/>"
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn two_by_two() {
        let grid = Grid::full(2, 2);
        let cells = scan(&grid);
        assert_eq!(cells.len(), 4);
        assert_eq!(to_csv(&cells).lines().count(), 5);
        let pinch = to_csv(&scan(&Grid::new(q(141, 100), q(142, 100), 2, 2000)));
        assert!(pinch.lines().any(|l| l.ends_with(",not_transitive,\"D_{1,2}\"")));
        // β = 5/4, α = 3/4 is inside Δ; β = 7/4, α = 3/4 is not.
        assert_ne!(cells[1].status, CellStatus::Outside);
        assert_eq!(cells[3].status, CellStatus::Outside);
    }

    #[test]
    fn pinch_near_sqrt_two() {
        let grid = Grid::new(q(141, 100), q(142, 100), 4, 2000);
        let cells = scan(&grid);
        let in_d12 = |c: &&Cell| c.status == CellStatus::NotTransitive(RegionId::new(1, 2).unwrap());
        // Left of √2 the tongue still has width; right of it D_{1,2} is empty.
        assert!(cells.iter().filter(|c| c.i == 0).any(|c| in_d12(&c)));
        assert!(!cells.iter().filter(|c| c.i == 3).any(|c| in_d12(&c)));
    }

    #[test]
    fn deterministic_svg() {
        let grid = Grid::full(10, 10);
        let a = to_svg(&grid, &scan(&grid));
        let b = to_svg(&grid, &scan(&grid));
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
    }
}
