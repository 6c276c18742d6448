//! Checks of closed-form states against the Schrodinger equation and each other.

use num_traits::ToPrimitive;

use super::operator::Grid;
use super::quadrature::{integrate, normalize, overlap};
use crate::error::Result;
use crate::models::AxisModel;
use crate::orthopoly::{exceptional_hermite, pseudo_hermite};
use crate::potential::{Domain, PotentialForm};
use crate::ratpoly::{ExpPolyFunction, Rational, RationalFunction};

/// `max |-psi'' + V psi - E psi| / max |psi|` over `points`, using exact derivatives.
pub fn residual(potential: &PotentialForm, state: &ExpPolyFunction, energy: f64, points: &[f64]) -> Result<f64> {
    let d2 = state.derivative().derivative();
    let mut worst: f64 = 0.0;
    let mut peak: f64 = 0.0;
    for &x in points {
        let psi = state.eval(x)?;
        let r = -d2.eval(x)? + (potential.eval(x)? - energy) * psi;
        worst = worst.max(r.abs());
        peak = peak.max(psi.abs());
    }
    Ok(if peak > 0.0 { worst / peak } else { worst })
}

/// The Schrodinger equation divided by `omega psi`, carried out exactly:
/// `-(w' + w^2)/2 + R - e` with `w = psi_z / psi` and `E = e omega`.
/// Zero iff the state solves the equation identically.
pub fn exact_residual(
    potential: &PotentialForm,
    state: &ExpPolyFunction,
    energy: &Rational,
) -> Result<RationalFunction> {
    let w = state.log_derivative_z()?;
    let kinetic = (&w.derivative() + &(&w * &w)).scale(&crate::ratpoly::rat(-1, 2));
    Ok(&(&kinetic + potential.reduced()) - &RationalFunction::constant(energy.clone()))
}

/// Evenly spaced interior sample points covering the classically relevant region.
pub fn sample_points(axis: &AxisModel, count: usize) -> Vec<f64> {
    let l = 4.0 / axis.scale();
    let (a, b) = match axis.domain() {
        Domain::Full => (-l, l),
        Domain::Half => (0.0, l),
    };
    (0..count)
        .map(|i| a + (b - a) * (i as f64 + 0.5) / count as f64)
        .collect()
}

/// Strict sign changes of the state over the grid points.
pub fn node_count(state: &ExpPolyFunction, grid: &Grid) -> Result<usize> {
    let mut last = 0.0f64;
    let mut nodes = 0;
    for x in grid.points() {
        let v = state.eval(x)?;
        if v != 0.0 {
            if last != 0.0 && (v > 0.0) != (last > 0.0) {
                nodes += 1;
            }
            last = v;
        }
    }
    Ok(nodes)
}

/// Grid suited to counting nodes of the lowest few states of an axis.
pub fn node_grid(axis: &AxisModel) -> Result<Grid> {
    Grid::for_domain(axis.domain(), 9.0 / axis.scale(), 4000)
}

pub fn gram_matrix(states: &[ExpPolyFunction], domain: Domain) -> Vec<Vec<f64>> {
    states
        .iter()
        .map(|f| states.iter().map(|g| overlap(f, g, domain)).collect())
        .collect()
}

/// Largest `|G - I|` entry.
pub fn gram_deviation(gram: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, row) in gram.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - target).abs());
        }
    }
    worst
}

/// `int Xh_i Xh_j e^{-z^2} / pH_m^2 dz` for `k = 0..count`, computed directly in
/// `z` from the polynomials (independent of the state machinery), scaled so
/// the diagonal is one.
pub fn exceptional_hermite_gram(m: usize, count: usize) -> Vec<Vec<f64>> {
    let weight_den = pseudo_hermite(m);
    let polys: Vec<_> = (0..count).map(|k| exceptional_hermite(k, m)).collect();
    let raw: Vec<Vec<f64>> = polys
        .iter()
        .map(|p| {
            polys
                .iter()
                .map(|q| {
                    integrate(
                        |z| {
                            let h = weight_den.eval_f64(z);
                            p.eval_f64(z) * q.eval_f64(z) * (-z * z).exp() / (h * h)
                        },
                        -12.0,
                        12.0,
                        48,
                        1e-14,
                    )
                })
                .collect()
        })
        .collect();
    (0..count)
        .map(|i| (0..count).map(|j| raw[i][j] / (raw[i][i] * raw[j][j]).sqrt()).collect())
        .collect()
}

/// `|| A^dagger psi^+_n / sqrt(E) - psi^-_k ||_2` after normalizing and aligning
/// signs; `k` is `n` shifted by the extra state when there is one.
pub fn intertwine_check(axis: &AxisModel, n: usize) -> Result<f64> {
    let (k, mapped) = axis.intertwined_state(n)?;
    let mapped = normalize(&mapped, axis.domain());
    let target = axis.state(k)?.factors.remove(0);
    let domain = axis.domain();
    let l = 12.0 / axis.scale();
    let (a, b) = match domain {
        Domain::Full => (-l, l),
        Domain::Half => (0.0, l),
    };
    let sq = integrate(
        |x| {
            let d = mapped.eval(x).unwrap_or(f64::NAN) - target.eval(x).unwrap_or(f64::NAN);
            d * d
        },
        a,
        b,
        64,
        1e-14,
    );
    Ok(sq.max(0.0).sqrt())
}

/// Energy of spectral index `k` as a float.
pub fn energy_value(axis: &AxisModel, k: usize) -> f64 {
    axis.energy(k).to_f64().unwrap_or(f64::NAN) * axis.omega()
}
