//! Three-dimensional oscillator with `omega_x = omega_y`, separated in
//! cylindrical coordinates into a radial half-line problem with index
//! `|gamma|` and a full-line axial problem.

use serde::Serialize;

use super::{AxisModel, Eigenstate, ModelKind, ModelND};
use crate::error::{Error, Result};
use crate::orthopoly::{laguerre, laguerre_or_zero, pseudo_hermite};
use crate::ratpoly::int;

pub fn cylindrical_model(gamma: i64, m1: usize, m2: usize, omega: f64, omega_z: f64) -> Result<ModelND> {
    if m2 % 2 == 1 {
        return Err(Error::OddM2 { m2 });
    }
    Ok(ModelND {
        kind: ModelKind::Cylindrical,
        axes: vec![AxisModel::radial(m1, gamma, omega)?, AxisModel::full(m2, omega_z)?],
        gamma: Some(gamma),
    })
}

/// `zeta_{n1,k2}(r, z)`; `k2 = 0` is the axial state `1/phi_{m2}`.
pub fn cylindrical_state(
    n1: usize,
    k2: usize,
    gamma: i64,
    m1: usize,
    m2: usize,
    omega: f64,
    omega_z: f64,
) -> Result<Eigenstate> {
    cylindrical_model(gamma, m1, m2, omega, omega_z)?.state(&[n1, k2])
}

/// Constructed effective potential against the closed form printed for it,
/// sampled at a few points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CylindricalReport {
    pub gamma: i64,
    pub m1: usize,
    pub m2: usize,
    pub omega: f64,
    pub omega_z: f64,
    pub samples: Vec<CylindricalSample>,
    pub max_radial_difference: f64,
    /// Spread of (constructed - printed) over the samples; zero would mean
    /// the two radial forms differ by a constant only.
    pub radial_difference_spread: f64,
    pub max_axial_difference_as_printed: f64,
    pub max_axial_difference_quarter: f64,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CylindricalSample {
    pub r: f64,
    pub z: f64,
    pub radial_constructed: f64,
    pub radial_printed: f64,
    pub axial_constructed: f64,
    pub axial_printed: f64,
    pub axial_printed_quarter: f64,
}

fn radial_printed(gamma: i64, m1: usize, omega: f64, r: f64) -> f64 {
    let g = gamma.abs();
    let a = int(g);
    let s = -0.5 * omega * r * r;
    let p = laguerre(m1, &a).eval_f64(s);
    let l1 = laguerre_or_zero(m1 as i64 - 1, &int(g + 1)).eval_f64(s);
    let l2 = laguerre_or_zero(m1 as i64 - 2, &int(g + 2)).eval_f64(s);
    let g = g as f64;
    let r2 = r * r;
    0.25 * omega * omega * r2 + (g * g - 0.25) / r2 + 2.0 * g / r2 - (2.0 * m1 as f64 + 1.0) * omega
        + 1.0 / r2
        + 2.0 * r2 * omega * omega * l1 * l1 / (p * p)
        + omega * ((2.0 * g + r2 * omega) * l1 - r2 * omega * l2) / p
}

fn axial_printed(m2: usize, omega_z: f64, z: f64, quadratic: f64) -> f64 {
    let s = (0.5 * omega_z).sqrt();
    let h = pseudo_hermite(m2);
    let (h0, h1, h2) = (
        h.eval_f64(s * z),
        h.derivative().eval_f64(s * z),
        h.derivative().derivative().eval_f64(s * z),
    );
    let (d1, d2) = (s * h1 / h0, s * s * h2 / h0);
    quadratic * omega_z * omega_z * z * z - 2.0 * (d2 - d1 * d1 + 0.5 * omega_z)
}

/// Compares the seed-built `V_eff^-` with the printed closed form. The printed
/// `-(2m+1) omega` and `L_{m-2}` are read with `m = m1`; the axial term is
/// evaluated both with its printed `1/2 omega_z^2 z^2` and with `1/4`.
pub fn printed_cylindrical_report(
    gamma: i64,
    m1: usize,
    m2: usize,
    omega: f64,
    omega_z: f64,
    points: &[(f64, f64)],
) -> Result<CylindricalReport> {
    let model = cylindrical_model(gamma, m1, m2, omega, omega_z)?;
    let radial = model.axes()[0].potential()?;
    let axial = model.axes()[1].potential()?;
    let mut samples = Vec::with_capacity(points.len());
    for &(r, z) in points {
        samples.push(CylindricalSample {
            r,
            z,
            radial_constructed: radial.eval(r)?,
            radial_printed: radial_printed(gamma, m1, omega, r),
            axial_constructed: axial.eval(z)?,
            axial_printed: axial_printed(m2, omega_z, z, 0.5),
            axial_printed_quarter: axial_printed(m2, omega_z, z, 0.25),
        });
    }
    let rd: Vec<f64> = samples
        .iter()
        .map(|s| s.radial_constructed - s.radial_printed)
        .collect();
    let max_abs = |v: &mut dyn Iterator<Item = f64>| v.fold(0.0f64, |m, x| m.max(x.abs()));
    let spread =
        rd.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - rd.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_radial = max_abs(&mut rd.iter().cloned());
    let max_ax = max_abs(&mut samples.iter().map(|s| s.axial_constructed - s.axial_printed));
    let max_axq = max_abs(&mut samples.iter().map(|s| s.axial_constructed - s.axial_printed_quarter));
    let mut notes = vec![
        "axial term printed as 1/2 omega_z^2 z^2; the starting potential has 1/4 omega_z^2 z^2".to_string(),
        "printed L_{m-2}^{(|gamma|+2)} and -(2m+1) omega read with m = m1".to_string(),
    ];
    notes.push(if max_axq < 1e-9 * (1.0 + omega_z * omega_z) {
        "axial part agrees with the construction once the coefficient is 1/4".into()
    } else {
        "axial part differs from the construction even with coefficient 1/4".into()
    });
    notes.push(if max_radial < 1e-9 * (1.0 + omega) {
        "radial part agrees with the construction".into()
    } else if spread.abs() < 1e-9 * (1.0 + omega) {
        format!(
            "radial part differs from the construction by the constant {:.12}",
            rd[0]
        )
    } else {
        "radial part differs from the construction by a non-constant function".into()
    });
    Ok(CylindricalReport {
        gamma,
        m1,
        m2,
        omega,
        omega_z,
        samples,
        max_radial_difference: max_radial,
        radial_difference_spread: spread,
        max_axial_difference_as_printed: max_ax,
        max_axial_difference_quarter: max_axq,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::int;

    #[test]
    fn odd_axial_m_is_rejected() {
        assert!(matches!(
            cylindrical_model(0, 0, 1, 1.0, 1.0),
            Err(Error::OddM2 { m2: 1 })
        ));
    }

    #[test]
    fn energies() {
        let m = cylindrical_model(1, 1, 0, 1.0, 2.0).unwrap();
        let e = |n1, k2| m.energy(&[n1, k2]).unwrap().value(&m.omegas());
        // ground 2(m1 + |gamma| + 1) omega
        assert_eq!(e(0, 0), 6.0);
        // 2(n1 + m1 + |gamma| + 1) omega + (n2 + m2 + 1) omega_z with k2 = n2 + 1
        assert_eq!(e(2, 1), 10.0 + 2.0);
        assert_eq!(m.axes()[0].energy(0), int(6));
    }

    #[test]
    fn trivial_seeds_potential() {
        // gamma = 0, m1 = m2 = 0: radial 1/4 omega^2 r^2 + 3/(4 r^2) - omega, axial 1/4 omega_z^2 z^2 - omega_z
        let m = cylindrical_model(0, 0, 0, 1.3, 0.7).unwrap();
        let (r, z) = (0.9, -1.4);
        let vr = m.axes()[0].potential().unwrap().eval(r).unwrap();
        let vz = m.axes()[1].potential().unwrap().eval(z).unwrap();
        assert!((vr - (0.25 * 1.69 * r * r + 0.75 / (r * r) - 1.3)).abs() < 1e-12);
        assert!((vz - (0.25 * 0.49 * z * z - 0.7)).abs() < 1e-12);
    }

    #[test]
    fn ground_state_small_r_power() {
        let s = cylindrical_state(0, 0, 0, 0, 0, 1.0, 1.0).unwrap();
        assert_eq!(s.factors[0].power(), &crate::ratpoly::rat(3, 2));
        let s = cylindrical_state(0, 0, -2, 1, 0, 1.0, 1.0).unwrap();
        assert_eq!(s.factors[0].power(), &crate::ratpoly::rat(7, 2));
    }

    #[test]
    fn report_flags_axial_coefficient() {
        let rep = printed_cylindrical_report(1, 1, 2, 1.0, 1.0, &[(0.5, 0.3), (1.2, -0.8), (2.0, 1.5)]).unwrap();
        assert!(rep.max_axial_difference_as_printed > 1e-3);
        assert!(rep.max_axial_difference_quarter < 1e-9);
        let trivial = printed_cylindrical_report(2, 0, 0, 1.0, 1.0, &[(0.5, 0.3), (1.2, -0.8)]).unwrap();
        assert!(trivial.max_radial_difference < 1e-9);
        let two = printed_cylindrical_report(1, 2, 0, 1.0, 1.0, &[(0.5, 0.3), (1.2, -0.8), (2.0, 1.5)]).unwrap();
        assert!(two.max_radial_difference < 1e-9, "{two:?}");
    }
}
