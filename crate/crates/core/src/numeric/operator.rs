//! Finite-difference discretization of `-d^2/dx^2 + V` and Sturm-bisection
//! eigenvalues of the resulting tridiagonal pencils.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{Domain, PotentialForm};

/// Uniform grid of interior points `a + i h`, `i = 1..=n_points`, with
/// Dirichlet conditions at `a` and `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    a: f64,
    b: f64,
    n_points: usize,
}

impl Grid {
    pub fn new(a: f64, b: f64, n_points: usize) -> Result<Self> {
        if a.is_nan() || b.is_nan() || a >= b || n_points < 16 {
            return Err(Error::InvalidSpec(format!(
                "grid needs a < b and at least 16 points (got [{a}, {b}], {n_points})"
            )));
        }
        Ok(Self { a, b, n_points })
    }

    /// `[-l, l]` for the full line, `(0, l]` for the half line.
    pub fn for_domain(domain: Domain, l: f64, n_points: usize) -> Result<Self> {
        match domain {
            Domain::Full => Self::new(-l, l, n_points),
            Domain::Half => Self::new(0.0, l, n_points),
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn h(&self) -> f64 {
        (self.b - self.a) / (self.n_points + 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.a + (i + 1) as f64 * self.h()
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(|i| self.point(i))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Fd2,
    Numerov,
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fd2" => Ok(Scheme::Fd2),
            "numerov" => Ok(Scheme::Numerov),
            other => Err(Error::InvalidSpec(format!("unknown scheme {other:?}"))),
        }
    }
}

/// Tridiagonal pencil `(K + M diag(V)) psi = E M psi` where `K = -T/h^2`.
/// For `fd2`, `M` is the identity; for Numerov it is `tridiag(1, 10, 1)/12`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscretizedOperator {
    potential: Vec<f64>,
    h: f64,
    scheme: Scheme,
}

impl DiscretizedOperator {
    pub fn n(&self) -> usize {
        self.potential.len()
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// Diagonal of `K + M diag(V)`.
    pub fn diagonal(&self) -> Vec<f64> {
        let k = 2.0 / (self.h * self.h);
        match self.scheme {
            Scheme::Fd2 => self.potential.iter().map(|v| k + v).collect(),
            Scheme::Numerov => self.potential.iter().map(|v| k + 10.0 * v / 12.0).collect(),
        }
    }

    /// Off-diagonal of the symmetric `fd2` matrix (`-1/h^2`); for Numerov the
    /// pencil is only symmetrizable and this is the `K` part.
    pub fn off_diagonal(&self) -> Vec<f64> {
        vec![-1.0 / (self.h * self.h); self.n().saturating_sub(1)]
    }

    /// Number of generalized eigenvalues strictly below `e`, read from the
    /// signs of the LDU pivots of `K + M diag(V - e)`.
    pub fn count_below(&self, e: f64) -> Result<usize> {
        let n = self.n();
        let inv_h2 = 1.0 / (self.h * self.h);
        let (wd, wo) = match self.scheme {
            Scheme::Fd2 => (1.0, 0.0),
            Scheme::Numerov => (10.0 / 12.0, 1.0 / 12.0),
        };
        let shifted: Vec<f64> = self.potential.iter().map(|v| v - e).collect();
        let mut count = 0;
        let mut d = 0.0;
        for i in 0..n {
            let diag = 2.0 * inv_h2 + wd * shifted[i];
            d = if i == 0 {
                diag
            } else {
                let upper = -inv_h2 + wo * shifted[i];
                let lower = -inv_h2 + wo * shifted[i - 1];
                let prod = upper * lower;
                if prod <= 0.0 {
                    return Err(Error::ConvergenceFailure {
                        reason: format!("pencil not symmetrizable at row {i}; refine the grid"),
                    });
                }
                let pivot = if d == 0.0 { f64::EPSILON * inv_h2 } else { d };
                diag - prod / pivot
            };
            if d < 0.0 {
                count += 1;
            }
        }
        Ok(count)
    }

    fn spectrum_bracket(&self) -> (f64, f64) {
        let vmin = self.potential.iter().cloned().fold(f64::INFINITY, f64::min);
        let vmax = self.potential.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let k = 4.0 / (self.h * self.h);
        (vmin - 1.0 - vmin.abs() * 1e-9, vmax + 2.0 * k + 1.0)
    }
}

/// Samples the potential at the interior grid points.
pub fn discretize(potential: &PotentialForm, grid: &Grid, scheme: Scheme) -> Result<DiscretizedOperator> {
    let values = grid
        .points()
        .map(|x| match potential.eval(x) {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(Error::PotentialPoleOnGrid { x }),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(from_samples(values, grid.h(), scheme))
}

/// Operator built from potential samples at the interior points of a grid with spacing `h`.
pub fn from_samples(potential: Vec<f64>, h: f64, scheme: Scheme) -> DiscretizedOperator {
    DiscretizedOperator { potential, h, scheme }
}

/// The `k` smallest eigenvalues, ascending, by bisection on the Sturm count.
pub fn lowest_eigenvalues(op: &DiscretizedOperator, k: usize) -> Result<Vec<f64>> {
    if k > op.n() {
        return Err(Error::ConvergenceFailure {
            reason: format!("asked for {k} eigenvalues of a {}-point operator", op.n()),
        });
    }
    let (mut lo, mut hi) = op.spectrum_bracket();
    let mut guard = 0;
    while op.count_below(lo)? > 0 {
        lo -= (hi - lo).max(1.0);
        guard += 1;
        if guard > 60 {
            return Err(Error::ConvergenceFailure {
                reason: "no lower bound for the spectrum".into(),
            });
        }
    }
    guard = 0;
    while op.count_below(hi)? < k {
        hi += (hi - lo).max(1.0);
        guard += 1;
        if guard > 60 {
            return Err(Error::ConvergenceFailure {
                reason: "no upper bound for the spectrum".into(),
            });
        }
    }
    let mut out = Vec::with_capacity(k);
    let mut floor = lo;
    for j in 0..k {
        let (mut a, mut b) = (floor, hi);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if op.count_below(mid)? > j {
                b = mid;
            } else {
                a = mid;
            }
        }
        let e = 0.5 * (a + b);
        out.push(e);
        floor = a;
    }
    Ok(out)
}
