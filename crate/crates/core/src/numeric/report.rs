//! Oracle spectra against analytic energies, convergence studies and the
//! small two-dimensional spot check.

use std::time::Instant;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::operator::{discretize, from_samples, lowest_eigenvalues, Grid, Scheme};
use crate::error::{Error, Result};
use crate::models::{AxisModel, ModelND};
use crate::potential::{Domain, PotentialForm};
use crate::ratpoly::{format_rational, rat, Polynomial, RationalFunction};

/// Grid settings; `None` picks the defaults per axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    pub n_points: usize,
    pub l: Option<f64>,
    pub scheme: Scheme,
    pub tolerance: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            n_points: 4000,
            l: None,
            scheme: Scheme::Numerov,
            tolerance: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub model: String,
    pub scheme: Scheme,
    pub grid_l: f64,
    pub grid_n: usize,
    pub analytic_exact: Vec<String>,
    pub analytic: Vec<f64>,
    pub oracle: Vec<f64>,
    pub abs_error: Vec<f64>,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

/// `max(12, 2 sqrt(2 E_max / omega))`.
pub fn default_extent(e_max: f64, omega: f64) -> f64 {
    (2.0 * (2.0 * e_max.max(0.0) / omega).sqrt()).max(12.0)
}

/// Lowest `k` oracle eigenvalues of one axis compared with its analytic spectrum.
pub fn verify_axis(axis: &AxisModel, k: usize, config: &OracleConfig) -> Result<SpectrumReport> {
    let start = Instant::now();
    let exact: Vec<_> = (0..k).map(|i| axis.energy(i)).collect();
    let analytic: Vec<f64> = exact
        .iter()
        .map(|e| e.to_f64().unwrap_or(f64::NAN) * axis.omega())
        .collect();
    let e_max = analytic.iter().cloned().fold(0.0, f64::max);
    let l = config.l.unwrap_or_else(|| default_extent(e_max, axis.omega()));
    let grid = Grid::for_domain(axis.domain(), l, config.n_points)?;
    let op = discretize(&axis.hamiltonian()?, &grid, config.scheme)?;
    let oracle = lowest_eigenvalues(&op, k)?;
    let abs_error: Vec<f64> = oracle.iter().zip(&analytic).map(|(o, a)| (o - a).abs()).collect();
    let pass = abs_error.iter().all(|e| *e <= config.tolerance);
    Ok(SpectrumReport {
        model: axis.label(),
        scheme: config.scheme,
        grid_l: l,
        grid_n: config.n_points,
        analytic_exact: exact.iter().map(|e| format!("{}*omega", format_rational(e))).collect(),
        analytic,
        oracle,
        abs_error,
        tolerance: config.tolerance,
        pass,
        runtime_ms: Some(start.elapsed().as_secs_f64() * 1e3),
    })
}

/// One report per axis; multi-axis energies are exact sums of these.
pub fn verify_model(model: &ModelND, k: usize, config: &OracleConfig) -> Result<Vec<SpectrumReport>> {
    model.axes().iter().map(|a| verify_axis(a, k, config)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub scheme: Scheme,
    pub n_points: usize,
    pub h: f64,
    pub error: f64,
}

/// Max error of the three lowest levels of `x^2/4` on `[-l, l]` for each
/// point count; halving `h` means `n -> 2n + 1`.
pub fn convergence_study(scheme: Scheme, counts: &[usize], l: f64) -> Result<Vec<ConvergenceRow>> {
    let osc = PotentialForm::new(
        Domain::Full,
        1.0,
        RationalFunction::from_poly(Polynomial::monomial(rat(1, 2), 2)),
    );
    counts
        .iter()
        .map(|&n| {
            let grid = Grid::for_domain(Domain::Full, l, n)?;
            let e = lowest_eigenvalues(&discretize(&osc, &grid, scheme)?, 3)?;
            let error = e
                .iter()
                .enumerate()
                .map(|(i, v)| (v - (i as f64 + 0.5)).abs())
                .fold(0.0, f64::max);
            Ok(ConvergenceRow {
                scheme,
                n_points: n,
                h: grid.h(),
                error,
            })
        })
        .collect()
}

pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("h,error,scheme\n");
    for r in rows {
        let scheme = match r.scheme {
            Scheme::Fd2 => "fd2",
            Scheme::Numerov => "numerov",
        };
        out.push_str(&format!("{:.12e},{:.12e},{scheme}\n", r.h, r.error));
    }
    out
}

/// Symmetric banded matrix stored by rows: `band[i][d] = A[i][i + d]`.
struct Banded {
    band: Vec<Vec<f64>>,
    width: usize,
}

impl Banded {
    /// Negative pivots of `LDL^T` of `A - e I`, i.e. eigenvalues below `e`.
    fn count_below(&self, e: f64) -> usize {
        let n = self.band.len();
        let w = self.width;
        let mut a: Vec<Vec<f64>> = self.band.clone();
        for row in a.iter_mut() {
            row[0] -= e;
        }
        let mut count = 0;
        for i in 0..n {
            let mut d = a[i][0];
            if d == 0.0 {
                d = f64::EPSILON;
            }
            if d < 0.0 {
                count += 1;
            }
            let reach = w.min(n - 1 - i);
            let row: Vec<f64> = a[i][1..=reach].to_vec();
            for p in 0..reach {
                let lp = row[p] / d;
                if lp == 0.0 {
                    continue;
                }
                let target = &mut a[i + 1 + p];
                for q in p..reach {
                    target[q - p] -= lp * row[q];
                }
            }
        }
        count
    }
}

/// Lowest `k` eigenvalues of a two-axis model from a dense `fd2` discretization
/// on an `n x n` grid over `[-l, l]` (or `(0, l]`) per axis.
pub fn spot_check_2d(model: &ModelND, n: usize, l: f64, k: usize) -> Result<Vec<f64>> {
    if model.dim() != 2 {
        return Err(Error::InvalidSpec("the 2D spot check needs a two-axis model".into()));
    }
    let grids = model
        .axes()
        .iter()
        .map(|a| Grid::for_domain(a.domain(), l, n))
        .collect::<Result<Vec<_>>>()?;
    let pots = model
        .axes()
        .iter()
        .map(|a| a.hamiltonian())
        .collect::<Result<Vec<_>>>()?;
    let (hx, hy) = (grids[0].h(), grids[1].h());
    let total = n * n;
    let mut band = vec![vec![0.0; n + 1]; total];
    for i in 0..n {
        let vx = pots[0].eval(grids[0].point(i))?;
        for j in 0..n {
            let vy = pots[1].eval(grids[1].point(j))?;
            let row = i * n + j;
            band[row][0] = 2.0 / (hx * hx) + 2.0 / (hy * hy) + vx + vy;
            if j + 1 < n {
                band[row][1] = -1.0 / (hy * hy);
            }
            if i + 1 < n {
                band[row][n] = -1.0 / (hx * hx);
            }
        }
    }
    let m = Banded { band, width: n };
    let vmin = (0..total).map(|r| m.band[r][0]).fold(f64::INFINITY, f64::min) - 4.0 / (hx * hx) - 4.0 / (hy * hy);
    let mut hi = vmin.abs() + 1.0;
    while m.count_below(hi) < k {
        hi *= 2.0;
    }
    let mut out = Vec::with_capacity(k);
    let mut lo = vmin - 1.0;
    for j in 0..k {
        let (mut a, mut b) = (lo, hi);
        while b - a > 1e-7 * (1.0 + b.abs()) {
            let mid = 0.5 * (a + b);
            if m.count_below(mid) > j {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push(0.5 * (a + b));
        lo = a;
    }
    Ok(out)
}

/// Oracle eigenvalues of a potential sampled on a grid, for callers that
/// assemble their own potential.
pub fn eigenvalues_of_samples(samples: Vec<f64>, h: f64, scheme: Scheme, k: usize) -> Result<Vec<f64>> {
    lowest_eigenvalues(&from_samples(samples, h, scheme), k)
}
