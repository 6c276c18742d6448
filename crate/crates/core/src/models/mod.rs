//! Catalog of rationally extended oscillators: closed-form potentials,
//! eigenstates and exact energies for each axis family, tensor products of
//! axes, the cylindrical case, and degeneracy enumeration.

mod cylindrical;
mod degeneracy;
mod spec;
pub mod tables;

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::quadrature::normalize;
use crate::orthopoly::{exceptional_hermite, exceptional_laguerre, hermite, laguerre, pseudo_hermite};
use crate::potential::{scale_for, Domain, PotentialForm};
use crate::ratpoly::{format_rational, int, rat, ExpPolyFunction, GaussSign, Polynomial, Rational, RationalFunction};
use crate::susy::{self, PartnerPair, SeedFunction, Superpotential};

pub use cylindrical::{cylindrical_model, cylindrical_state, printed_cylindrical_report, CylindricalReport};
pub use degeneracy::{degeneracy, level_energies, rational_ratio, DegeneracyReport, Level, StateSelection};
pub use spec::{AxisSpec, ModelSpec};

/// Family of a single axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AxisKind {
    Full,
    Half {
        alpha: Rational,
    },
    /// Radial coordinate of the cylindrical model; behaves as a half line
    /// with `alpha = |gamma|`.
    Radial {
        gamma: i64,
    },
}

/// One axis of an extended oscillator.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisModel {
    kind: AxisKind,
    omega: f64,
    m: usize,
}

impl AxisModel {
    pub fn full(m: usize, omega: f64) -> Result<Self> {
        if m % 2 == 1 {
            return Err(Error::OddMOnFullLine { m });
        }
        Self::checked(AxisKind::Full, omega, m)
    }

    pub fn half(m: usize, alpha: Rational, omega: f64) -> Result<Self> {
        if alpha != rat(1, 2) && alpha != rat(-1, 2) {
            return Err(Error::InvalidAlpha {
                alpha: format_rational(&alpha),
            });
        }
        Self::checked(AxisKind::Half { alpha }, omega, m)
    }

    pub fn radial(m: usize, gamma: i64, omega: f64) -> Result<Self> {
        Self::checked(AxisKind::Radial { gamma }, omega, m)
    }

    fn checked(kind: AxisKind, omega: f64, m: usize) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidSpec(format!("frequency must be positive, got {omega}")));
        }
        Ok(Self { kind, omega, m })
    }

    pub fn kind(&self) -> &AxisKind {
        &self.kind
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn scale(&self) -> f64 {
        scale_for(self.omega)
    }

    pub fn domain(&self) -> Domain {
        match self.kind {
            AxisKind::Full => Domain::Full,
            _ => Domain::Half,
        }
    }

    /// The Laguerre index (`alpha`, or `|gamma|` for a radial axis).
    pub fn alpha(&self) -> Option<Rational> {
        match &self.kind {
            AxisKind::Full => None,
            AxisKind::Half { alpha } => Some(alpha.clone()),
            AxisKind::Radial { gamma } => Some(int(gamma.abs())),
        }
    }

    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::checked(self.kind.clone(), omega, self.m)
    }

    /// Short label such as `full(m=2)` or `half(m=1, alpha=-1/2)`.
    pub fn label(&self) -> String {
        match &self.kind {
            AxisKind::Full => format!("full(m={})", self.m),
            AxisKind::Half { alpha } => format!("half(m={}, alpha={})", self.m, format_rational(alpha)),
            AxisKind::Radial { gamma } => format!("radial(m={}, gamma={gamma})", self.m),
        }
    }

    pub fn seed(&self) -> Result<SeedFunction> {
        match &self.kind {
            AxisKind::Full => susy::build_seed(Domain::Full, self.m, None, self.omega),
            AxisKind::Half { alpha } => susy::build_seed(Domain::Half, self.m, Some(alpha.clone()), self.omega),
            AxisKind::Radial { gamma } => Ok(susy::build_radial_seed(self.m, *gamma, self.omega)),
        }
    }

    pub fn superpotential(&self) -> Result<Superpotential> {
        susy::superpotential(&self.seed()?)
    }

    /// Partners built from the seed through `W^2 -/+ W' + epsilon`.
    pub fn partner_pair(&self) -> Result<PartnerPair> {
        let seed = self.seed()?;
        Ok(susy::partner_pair(
            &susy::superpotential(&seed)?,
            &seed.factorization_energy(),
        ))
    }

    /// Factorization energy in units of `omega`.
    pub fn epsilon(&self) -> Rational {
        let m = int(self.m as i64);
        match self.alpha() {
            None => -(m + rat(1, 2)),
            Some(a) => -(m * int(2) + Rational::one() + a),
        }
    }

    /// `V^+` in units of `omega`: `z^2/2 + (alpha^2 - 1/4)/(2 z^2)`.
    pub fn plus_potential(&self) -> PotentialForm {
        let quad = RationalFunction::from_poly(Polynomial::monomial(rat(1, 2), 2));
        let r = match self.alpha() {
            None => quad,
            Some(a) => {
                let c = (&a * &a - rat(1, 4)) / int(2);
                let barrier = RationalFunction::reduce(Polynomial::constant(c), Polynomial::monomial(int(1), 2))
                    .expect("nonzero denominator");
                &quad + &barrier
            }
        };
        PotentialForm::new(self.domain(), self.omega, r)
    }

    /// Closed-form `V^-` from the log-derivative of the seed polynomial `P`:
    /// full line `z^2/2 - 1 - (P''P - P'^2)/P^2`, Laguerre families add the
    /// barrier `(alpha^2 - 1/4)/(2z^2) + (alpha + 1/2)/z^2`.
    pub fn potential(&self) -> Result<PotentialForm> {
        let (p, extra) = match self.alpha() {
            None => {
                if self.m % 2 == 1 {
                    return Err(Error::OddMOnFullLine { m: self.m });
                }
                (pseudo_hermite(self.m), RationalFunction::zero())
            }
            Some(a) => {
                let c = (&a * &a - rat(1, 4)) / int(2) + &a + rat(1, 2);
                let barrier = RationalFunction::reduce(Polynomial::constant(c), Polynomial::monomial(int(1), 2))?;
                (laguerre(self.m, &a).compose_neg_square(), barrier)
            }
        };
        let dp = p.derivative();
        let curvature = RationalFunction::reduce(&(&dp.derivative() * &p) - &(&dp * &dp), &p * &p)?;
        let base = RationalFunction::from_poly(Polynomial::from_ratios(&[(-1, 1), (0, 1), (1, 2)]));
        let r = &(&base + &extra) - &curvature;
        Ok(PotentialForm::new(self.domain(), self.omega, r))
    }

    /// `H^- = -d^2/dx^2 + V^- - epsilon`, whose eigenvalues are [`Self::energy`].
    pub fn hamiltonian(&self) -> Result<PotentialForm> {
        Ok(self.potential()?.shifted(&-self.epsilon()))
    }

    /// Whether the extension adds the state `1/phi` below the old spectrum.
    pub fn has_extra_state(&self) -> bool {
        matches!(self.kind, AxisKind::Full)
    }

    /// `V^-` energy of spectral index `k`, in units of `omega`.
    pub fn energy(&self, k: usize) -> Rational {
        let m = int(self.m as i64);
        match self.alpha() {
            None if k == 0 => Rational::zero(),
            None => int(k as i64) + m,
            Some(a) => (int(k as i64) + m + Rational::one() + a) * int(2),
        }
    }

    /// `V^+` energy of level `n` measured from `epsilon`, in units of `omega`.
    pub fn plus_energy(&self, n: usize) -> Rational {
        let m = int(self.m as i64);
        match self.alpha() {
            None => int(n as i64) + m + Rational::one(),
            Some(a) => (int(n as i64) + m + Rational::one() + a) * int(2),
        }
    }

    /// Unnormalized closed-form `V^-` eigenfunction of spectral index `k`.
    pub fn state_shape(&self, k: usize) -> Result<ExpPolyFunction> {
        let s = self.scale();
        match self.alpha() {
            None => {
                if self.m % 2 == 1 {
                    return Err(Error::OddMOnFullLine { m: self.m });
                }
                ExpPolyFunction::new(
                    Rational::zero(),
                    exceptional_hermite(k, self.m),
                    pseudo_hermite(self.m),
                    GaussSign::Decaying,
                    s,
                )
            }
            Some(a) => ExpPolyFunction::new(
                &a + rat(3, 2),
                exceptional_laguerre(k, self.m, &a).compose_square(),
                laguerre(self.m, &a).compose_neg_square(),
                GaussSign::Decaying,
                s,
            ),
        }
    }

    /// Unnormalized `V^+` eigenfunction of level `n`.
    pub fn plus_state_shape(&self, n: usize) -> ExpPolyFunction {
        let s = self.scale();
        let (power, num) = match self.alpha() {
            None => (Rational::zero(), hermite(n)),
            Some(a) => (&a + rat(1, 2), laguerre(n, &a).compose_square()),
        };
        ExpPolyFunction::new(power, num, Polynomial::one(), GaussSign::Decaying, s).expect("unit denominator")
    }

    /// Normalized `V^-` eigenstate, positive as `x -> +infinity`.
    pub fn state(&self, k: usize) -> Result<Eigenstate> {
        let f = normalize(&self.state_shape(k)?, self.domain());
        Ok(Eigenstate {
            indices: vec![k],
            gamma: None,
            energy: Energy::single(self.energy(k)),
            factors: vec![f],
            domains: vec![self.domain()],
            omegas: vec![self.omega],
        })
    }

    /// `A^dagger psi^+_n / sqrt(E^+_{n,m})` from a normalized `V^+` state,
    /// together with the `V^-` spectral index it lands on.
    pub fn intertwined_state(&self, n: usize) -> Result<(usize, ExpPolyFunction)> {
        let seed = self.seed()?;
        let w = susy::superpotential(&seed)?;
        let plus = normalize(&self.plus_state_shape(n), self.domain());
        let e = self.plus_energy(n).to_f64().unwrap_or(f64::NAN) * self.omega;
        let mapped = susy::map_state(&w, &plus, e)?;
        Ok((n + susy::index_shift(susy::classify_seed(&seed)), mapped))
    }
}

/// Exact energy `sum_k coeffs[k] * omega_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Energy {
    #[serde(serialize_with = "serialize_coeffs")]
    pub coeffs: Vec<Rational>,
}

fn serialize_coeffs<S: serde::Serializer>(c: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(format_rational))
}

impl Energy {
    pub fn single(c: Rational) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn value(&self, omegas: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .zip(omegas)
            .map(|(c, w)| c.to_f64().unwrap_or(f64::NAN) * w)
            .sum()
    }

    /// `"3*w1 + 5/2*w2"`-style label.
    pub fn render(&self, names: &[&str]) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| format!("{}*{n}", format_rational(c)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// A product eigenstate with its exact energy.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigenstate {
    pub indices: Vec<usize>,
    pub gamma: Option<i64>,
    pub energy: Energy,
    pub factors: Vec<ExpPolyFunction>,
    pub domains: Vec<Domain>,
    pub omegas: Vec<f64>,
}

impl Eigenstate {
    pub fn energy_value(&self) -> f64 {
        self.energy.value(&self.omegas)
    }

    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        let mut v = 1.0;
        for (f, &x) in self.factors.iter().zip(point) {
            v *= f.eval(x)?;
        }
        Ok(v)
    }

    /// The single factor of a one-axis state.
    pub fn wavefunction(&self) -> &ExpPolyFunction {
        &self.factors[0]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Tensor,
    Cylindrical,
}

/// Extended oscillator in one to three dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelND {
    kind: ModelKind,
    axes: Vec<AxisModel>,
    gamma: Option<i64>,
}

/// Tensor product of independent axes. Two half-line axes with
/// `(alpha, beta) = (-1/2, +1/2)` are swapped to the equivalent `(+1/2, -1/2)`.
pub fn assemble_tensor(axes: Vec<AxisModel>) -> Result<ModelND> {
    if axes.is_empty() || axes.len() > 3 {
        return Err(Error::InvalidSpec(format!(
            "tensor models take 1 to 3 axes, got {}",
            axes.len()
        )));
    }
    if axes.iter().any(|a| matches!(a.kind, AxisKind::Radial { .. })) {
        return Err(Error::InvalidSpec("radial axes belong to cylindrical models".into()));
    }
    let mut axes = axes;
    if axes.len() == 2 {
        if let (AxisKind::Half { alpha: a }, AxisKind::Half { alpha: b }) = (&axes[0].kind, &axes[1].kind) {
            if *a == rat(-1, 2) && *b == rat(1, 2) {
                axes.swap(0, 1);
            }
        }
    }
    Ok(ModelND {
        kind: ModelKind::Tensor,
        axes,
        gamma: None,
    })
}

impl ModelND {
    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn axes(&self) -> &[AxisModel] {
        &self.axes
    }

    pub fn gamma(&self) -> Option<i64> {
        self.gamma
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn omegas(&self) -> Vec<f64> {
        self.axes.iter().map(|a| a.omega).collect()
    }

    pub fn label(&self) -> String {
        let axes: Vec<String> = self.axes.iter().map(AxisModel::label).collect();
        match self.kind {
            ModelKind::Tensor => format!("tensor[{}]", axes.join(", ")),
            ModelKind::Cylindrical => format!("cylindrical[{}]", axes.join(", ")),
        }
    }

    pub fn energy(&self, indices: &[usize]) -> Result<Energy> {
        self.check_indices(indices)?;
        Ok(Energy {
            coeffs: self.axes.iter().zip(indices).map(|(a, &k)| a.energy(k)).collect(),
        })
    }

    pub fn state(&self, indices: &[usize]) -> Result<Eigenstate> {
        self.check_indices(indices)?;
        let mut factors = Vec::with_capacity(self.dim());
        for (a, &k) in self.axes.iter().zip(indices) {
            factors.push(a.state(k)?.factors.remove(0));
        }
        Ok(Eigenstate {
            indices: indices.to_vec(),
            gamma: self.gamma,
            energy: self.energy(indices)?,
            factors,
            domains: self.axes.iter().map(AxisModel::domain).collect(),
            omegas: self.omegas(),
        })
    }

    /// Sum of the axis potentials at a point.
    pub fn potential_at(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.dim() {
            return Err(Error::InvalidSpec(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.dim()
            )));
        }
        let mut v = 0.0;
        for (a, &x) in self.axes.iter().zip(point) {
            if a.domain() == Domain::Half && x <= 0.0 {
                return Ok(f64::INFINITY);
            }
            v += a.potential()?.eval(x)?;
        }
        Ok(v)
    }

    /// Index tuples written out as eigenstates in the closed-form catalog:
    /// the common ground state plus every tuple whose full-line axes are
    /// all excited.
    pub fn is_listed(&self, indices: &[usize]) -> bool {
        indices.iter().all(|&k| k == 0)
            || self
                .axes
                .iter()
                .zip(indices)
                .all(|(a, &k)| !a.has_extra_state() || k > 0)
    }

    fn check_indices(&self, indices: &[usize]) -> Result<()> {
        if indices.len() != self.dim() {
            return Err(Error::InvalidSpec(format!(
                "{} quantum numbers given for a {}-axis model",
                indices.len(),
                self.dim()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_line_energies() {
        let a = AxisModel::full(2, 1.0).unwrap();
        assert_eq!(a.energy(0), int(0));
        assert_eq!(a.energy(1), int(3));
        let b = AxisModel::full(2, 2.0).unwrap();
        assert_eq!(b.energy(4).to_f64().unwrap() * b.omega(), 12.0);
        assert!(matches!(AxisModel::full(1, 1.0), Err(Error::OddMOnFullLine { m: 1 })));
    }

    #[test]
    fn half_line_energies() {
        let e = |n, m, a| AxisModel::half(m, a, 1.0).unwrap().energy(n);
        assert_eq!(e(0, 0, rat(-1, 2)), int(1));
        assert_eq!(e(0, 1, rat(-1, 2)), int(3));
        assert_eq!(e(2, 1, rat(1, 2)), int(9));
        assert!(matches!(
            AxisModel::half(0, rat(1, 3), 1.0),
            Err(Error::InvalidAlpha { .. })
        ));
    }

    #[test]
    fn full_line_potential_m0() {
        let v = AxisModel::full(0, 1.0).unwrap().potential().unwrap();
        assert_eq!(v.render(), "¼ω²x² − ω");
    }

    #[test]
    fn half_line_potential_examples() {
        let v = |m, a| AxisModel::half(m, a, 1.0).unwrap().potential().unwrap().render();
        assert_eq!(v(1, rat(-1, 2)), "¼ω²x² + 4ω/(ωx² + 1) − 8ω/(ωx² + 1)² − ω");
        assert_eq!(v(0, rat(1, 2)), "¼ω²x² + 2/x² − ω");
        assert_eq!(
            v(2, rat(1, 2)),
            "¼ω²x² + 8(ω²x² − 5ω)/(ω²x⁴ + 10ωx² + 15) + 320ω²x²/(ω²x⁴ + 10ωx² + 15)² + 2/x² − ω"
        );
    }

    #[test]
    fn closed_form_equals_partner_construction() {
        for m in [0, 2, 4] {
            let a = AxisModel::full(m, 1.0).unwrap();
            assert_eq!(
                a.potential().unwrap().reduced(),
                a.partner_pair().unwrap().v_minus.reduced()
            );
        }
        for m in 0..4 {
            for al in [rat(1, 2), rat(-1, 2)] {
                let a = AxisModel::half(m, al, 1.0).unwrap();
                assert_eq!(
                    a.potential().unwrap().reduced(),
                    a.partner_pair().unwrap().v_minus.reduced()
                );
                assert_eq!(a.plus_potential().reduced(), a.partner_pair().unwrap().v_plus.reduced());
            }
        }
    }

    #[test]
    fn state_shapes() {
        let a = AxisModel::full(2, 1.0).unwrap();
        let s = a.state_shape(0).unwrap();
        assert_eq!(s.num(), &Polynomial::from_ratios(&[(1, 2)]));
        assert_eq!(s.den(), &Polynomial::from_i64s(&[1, 0, 2]));
        let s = AxisModel::full(0, 1.0).unwrap().state_shape(1).unwrap();
        assert_eq!(s.power(), &int(1));
        let s = AxisModel::half(0, rat(-1, 2), 1.0).unwrap().state_shape(3).unwrap();
        assert_eq!(s.power(), &int(1));
        let s = AxisModel::half(0, rat(1, 2), 1.0).unwrap().state_shape(3).unwrap();
        assert_eq!(s.power(), &int(2));
        let s = AxisModel::radial(0, 2, 1.0).unwrap().state_shape(0).unwrap();
        assert_eq!(s.power(), &rat(7, 2));
    }

    #[test]
    fn tensor_assembly() {
        let m = assemble_tensor(vec![AxisModel::full(2, 1.0).unwrap(), AxisModel::full(2, 1.0).unwrap()]).unwrap();
        assert_eq!(m.energy(&[0, 0]).unwrap().value(&m.omegas()), 0.0);
        assert_eq!(m.energy(&[1, 1]).unwrap().value(&m.omegas()), 6.0);
        let hh = assemble_tensor(vec![
            AxisModel::half(0, rat(-1, 2), 1.0).unwrap(),
            AxisModel::half(0, rat(1, 2), 1.0).unwrap(),
        ])
        .unwrap();
        assert_eq!(hh.axes()[0].alpha(), Some(rat(1, 2)));
        let mixed = assemble_tensor(vec![
            AxisModel::full(0, 1.0).unwrap(),
            AxisModel::half(1, rat(-1, 2), 1.0).unwrap(),
        ])
        .unwrap();
        assert_eq!(mixed.energy(&[0, 0]).unwrap().value(&mixed.omegas()), 3.0);
        assert_eq!(mixed.energy(&[2, 1]).unwrap().value(&mixed.omegas()), 2.0 + 5.0);
        assert!(mixed.is_listed(&[0, 0]) && mixed.is_listed(&[1, 4]) && !mixed.is_listed(&[0, 1]));
        assert!(assemble_tensor(vec![]).is_err());
    }
}
