//! First-order SUSY factorization: seed functions, superpotentials, partner
//! potentials, ladder operators and the separable `Q_D` vanishing check.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::orthopoly::{laguerre, pseudo_hermite};
use crate::potential::{scale_for, Domain, PotentialForm};
use crate::ratpoly::{int, rat, ExpPolyFunction, GaussSign, Polynomial, Rational, RationalFunction};

/// Which polynomial family a seed is drawn from.
#[derive(Clone, Debug, PartialEq)]
pub enum SeedFamily {
    /// `pH_m(z) e^{z^2/2}` on the full line.
    Hermite,
    /// `z^{alpha+1/2} L_m^{(alpha)}(-z^2) e^{z^2/2}` on the half line.
    Laguerre { alpha: Rational },
}

/// A nodeless, non-normalizable formal solution of the starting oscillator.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedFunction {
    shape: ExpPolyFunction,
    m: usize,
    family: SeedFamily,
    omega: f64,
}

impl SeedFunction {
    pub fn shape(&self) -> &ExpPolyFunction {
        &self.shape
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn family(&self) -> &SeedFamily {
        &self.family
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn domain(&self) -> Domain {
        match self.family {
            SeedFamily::Hermite => Domain::Full,
            SeedFamily::Laguerre { .. } => Domain::Half,
        }
    }

    /// Polynomial part of the seed in `z` (`pH_m(z)` or `L_m^{(alpha)}(-z^2)`).
    pub fn polynomial(&self) -> Polynomial {
        match &self.family {
            SeedFamily::Hermite => pseudo_hermite(self.m),
            SeedFamily::Laguerre { alpha } => laguerre(self.m, alpha).compose_neg_square(),
        }
    }

    pub fn factorization_energy(&self) -> FactorizationEnergy {
        let m = int(self.m as i64);
        let coeff = match &self.family {
            SeedFamily::Hermite => -(m + rat(1, 2)),
            SeedFamily::Laguerre { alpha } => -(m * int(2) + Rational::one() + alpha),
        };
        FactorizationEnergy { coeff }
    }
}

/// Exact multiple of the axis frequency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationEnergy {
    pub coeff: Rational,
}

impl FactorizationEnergy {
    pub fn value(&self, omega: f64) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::NAN) * omega
    }
}

/// `W(x) = sqrt(omega/2) * w(z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Superpotential {
    w: RationalFunction,
    domain: Domain,
    omega: f64,
}

impl Superpotential {
    pub fn new(w: RationalFunction, domain: Domain, omega: f64) -> Self {
        Self { w, domain, omega }
    }

    /// The dimensionless part `w(z)`.
    pub fn w(&self) -> &RationalFunction {
        &self.w
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn scale(&self) -> f64 {
        scale_for(self.omega)
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let z = self.scale() * x;
        let d = self.w.den().eval_f64(z);
        if d == 0.0 {
            return Err(Error::PoleEvaluation { x });
        }
        Ok(self.scale() * self.w.num().eval_f64(z) / d)
    }

    /// `W'(x)`.
    pub fn eval_derivative(&self, x: f64) -> Result<f64> {
        let z = self.scale() * x;
        let dw = self.w.derivative();
        let d = dw.den().eval_f64(z);
        if d == 0.0 {
            return Err(Error::PoleEvaluation { x });
        }
        Ok(0.5 * self.omega * dw.num().eval_f64(z) / d)
    }
}

/// `V^-` and `V^+` sharing one superpotential.
#[derive(Clone, Debug, PartialEq)]
pub struct PartnerPair {
    pub v_plus: PotentialForm,
    pub v_minus: PotentialForm,
    pub epsilon: FactorizationEnergy,
}

/// Whether the partner gains a new ground state `1/phi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedClass {
    ExtraBoundState,
    StrictlyIsospectral,
}

fn laguerre_seed(m: usize, alpha: Rational, omega: f64) -> SeedFunction {
    let poly = laguerre(m, &alpha).compose_neg_square();
    let power = &alpha + rat(1, 2);
    let shape = ExpPolyFunction::new(power, poly, Polynomial::one(), GaussSign::Growing, scale_for(omega))
        .expect("unit denominator");
    SeedFunction {
        shape,
        m,
        family: SeedFamily::Laguerre { alpha },
        omega,
    }
}

pub fn build_seed(domain: Domain, m: usize, alpha: Option<Rational>, omega: f64) -> Result<SeedFunction> {
    match (domain, alpha) {
        (Domain::Full, None) => {
            let shape = ExpPolyFunction::new(
                Rational::zero(),
                pseudo_hermite(m),
                Polynomial::one(),
                GaussSign::Growing,
                scale_for(omega),
            )?;
            Ok(SeedFunction {
                shape,
                m,
                family: SeedFamily::Hermite,
                omega,
            })
        }
        (Domain::Full, Some(a)) => Err(Error::InvalidAlpha {
            alpha: crate::ratpoly::format_rational(&a),
        }),
        (Domain::Half, Some(a)) if a == rat(1, 2) || a == rat(-1, 2) => Ok(laguerre_seed(m, a, omega)),
        (Domain::Half, a) => Err(Error::InvalidAlpha {
            alpha: a.map_or_else(|| "none".into(), |a| crate::ratpoly::format_rational(&a)),
        }),
    }
}

/// Seed for the radial equation with angular momentum `gamma`; the
/// centrifugal index `|gamma|` plays the role of `alpha`.
pub fn build_radial_seed(m: usize, gamma: i64, omega: f64) -> SeedFunction {
    laguerre_seed(m, int(gamma.abs()), omega)
}

/// `W = d/dx ln phi`, refusing seeds with a zero inside the domain.
pub fn superpotential(seed: &SeedFunction) -> Result<Superpotential> {
    let poly = seed.polynomial();
    let interior_zeros = match seed.domain() {
        Domain::Full => poly.count_real_roots(None, None),
        Domain::Half => poly.count_real_roots(Some(&Rational::zero()), None),
    };
    if interior_zeros > 0 {
        return Err(Error::SeedHasInteriorZero { m: seed.m });
    }
    Ok(Superpotential {
        w: seed.shape.log_derivative_z()?,
        domain: seed.domain(),
        omega: seed.omega,
    })
}

/// Superpotential of the state-deleting branch: `W = -d/dx ln psi_0` for a
/// nodeless ground state `psi_0` of the starting Hamiltonian.
pub fn ground_state_superpotential(psi0: &ExpPolyFunction, domain: Domain, omega: f64) -> Result<Superpotential> {
    Ok(Superpotential {
        w: -psi0.log_derivative_z()?,
        domain,
        omega,
    })
}

/// `V^{-/+} = W^2 -/+ W' + epsilon`.
pub fn partner_pair(w: &Superpotential, epsilon: &FactorizationEnergy) -> PartnerPair {
    let half = rat(1, 2);
    let sq = &w.w * &w.w;
    let dw = w.w.derivative();
    let eps = RationalFunction::constant(epsilon.coeff.clone());
    let minus = &(&sq - &dw).scale(&half) + &eps;
    let plus = &(&sq + &dw).scale(&half) + &eps;
    PartnerPair {
        v_plus: PotentialForm::new(w.domain, w.omega, plus),
        v_minus: PotentialForm::new(w.domain, w.omega, minus),
        epsilon: epsilon.clone(),
    }
}

fn w_times(w: &Superpotential, f: &ExpPolyFunction) -> ExpPolyFunction {
    f.mul_ratfun(&w.w).with_prefactor(f.prefactor() * w.scale())
}

/// `A f = (d/dx + W) f`.
pub fn apply_a(w: &Superpotential, f: &ExpPolyFunction) -> Result<ExpPolyFunction> {
    f.derivative().try_add(&w_times(w, f))
}

/// `A^dagger f = (-d/dx + W) f`.
pub fn apply_a_dagger(w: &Superpotential, f: &ExpPolyFunction) -> Result<ExpPolyFunction> {
    f.derivative().scale_exact(&int(-1)).try_add(&w_times(w, f))
}

/// `A^dagger psi_plus / sqrt(E)`, with `E` the `V^+` energy measured from epsilon.
pub fn map_state(w: &Superpotential, psi_plus: &ExpPolyFunction, e_plus: f64) -> Result<ExpPolyFunction> {
    if e_plus.is_nan() || e_plus <= 0.0 {
        return Err(Error::NonPositiveEnergy { energy: e_plus });
    }
    let f = apply_a_dagger(w, psi_plus)?;
    Ok(f.with_prefactor(f.prefactor() / e_plus.sqrt()))
}

/// Index offset between a `V^+` state and its `V^-` image.
pub fn index_shift(class: SeedClass) -> usize {
    match class {
        SeedClass::ExtraBoundState => 1,
        SeedClass::StrictlyIsospectral => 0,
    }
}

/// `ExtraBoundState` iff `1/phi` is square integrable and satisfies the
/// boundary condition of the domain, decided from the structural form.
pub fn classify_seed(seed: &SeedFunction) -> SeedClass {
    let inv_decays = seed.shape.sigma() == GaussSign::Growing;
    let ok = match seed.domain() {
        Domain::Full => inv_decays && seed.polynomial().count_real_roots(None, None) == 0,
        Domain::Half => {
            // 1/phi ~ z^{-power} at the wall; it must vanish there.
            let inv_power = -seed.shape.power().clone();
            inv_decays
                && inv_power.is_positive()
                && seed.polynomial().count_real_roots(Some(&Rational::zero()), None) == 0
        }
    };
    if ok {
        SeedClass::ExtraBoundState
    } else {
        SeedClass::StrictlyIsospectral
    }
}

/// Result of the separable `Q_D` check.
#[derive(Clone, Debug, PartialEq)]
pub struct QCheck {
    pub max_abs: f64,
    /// Largest `|t1 - t2| / max(|t1|, |t2|)` over all brackets and points.
    pub max_relative: f64,
    /// Largest relative value per bracket `(j, k)`; one entry in 2D, three in 3D.
    pub components: Vec<f64>,
}

/// Evaluates `(W_j d_k - W_k d_j) prod(phi)` component-wise at `points`.
pub fn q_vanishing_check(seeds: &[SeedFunction], points: &[Vec<f64>]) -> Result<QCheck> {
    let dim = seeds.len();
    let pairs: Vec<(usize, usize)> = match dim {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        3 => vec![(0, 1), (1, 2), (2, 0)],
        _ => return Err(Error::InvalidSpec(format!("Q check supports 1 to 3 axes, got {dim}"))),
    };
    let ws = seeds.iter().map(superpotential).collect::<Result<Vec<_>>>()?;
    let dphis: Vec<ExpPolyFunction> = seeds.iter().map(|s| s.shape.derivative()).collect();
    let mut check = QCheck {
        max_abs: 0.0,
        max_relative: 0.0,
        components: vec![0.0; pairs.len()],
    };
    for p in points {
        if p.len() != dim {
            return Err(Error::InvalidSpec(format!(
                "point has {} coordinates, expected {dim}",
                p.len()
            )));
        }
        let phi = seeds
            .iter()
            .zip(p)
            .map(|(s, &x)| s.shape.eval(x))
            .collect::<Result<Vec<_>>>()?;
        let dphi = dphis
            .iter()
            .zip(p)
            .map(|(d, &x)| d.eval(x))
            .collect::<Result<Vec<_>>>()?;
        let partial = |k: usize| -> f64 { (0..dim).map(|i| if i == k { dphi[i] } else { phi[i] }).product() };
        for (c, &(j, k)) in pairs.iter().enumerate() {
            let t1 = ws[j].eval(p[j])? * partial(k);
            let t2 = ws[k].eval(p[k])? * partial(j);
            let abs = (t1 - t2).abs();
            let scale = t1.abs().max(t2.abs());
            let rel = if scale > 0.0 { abs / scale } else { 0.0 };
            check.max_abs = check.max_abs.max(abs);
            check.max_relative = check.max_relative.max(rel);
            check.components[c] = check.components[c].max(rel);
        }
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn seeds() {
        let s = build_seed(Domain::Full, 0, None, 1.0).unwrap();
        assert_eq!(s.shape().num(), &p(&[1]));
        assert_eq!(s.shape().sigma(), GaussSign::Growing);
        let s = build_seed(Domain::Full, 2, None, 1.0).unwrap();
        assert_eq!(s.shape().num(), &p(&[2, 0, 4]));
        let s = build_seed(Domain::Half, 1, Some(rat(-1, 2)), 1.0).unwrap();
        assert!(s.shape().power().is_zero());
        assert_eq!(s.shape().num(), &Polynomial::from_ratios(&[(1, 2), (0, 1), (1, 1)]));
        assert!(matches!(
            build_seed(Domain::Half, 1, Some(rat(1, 3)), 1.0),
            Err(Error::InvalidAlpha { .. })
        ));
        assert!(matches!(
            build_seed(Domain::Half, 1, None, 1.0),
            Err(Error::InvalidAlpha { .. })
        ));
        assert!(matches!(
            build_seed(Domain::Full, 1, Some(rat(1, 2)), 1.0),
            Err(Error::InvalidAlpha { .. })
        ));
    }

    #[test]
    fn superpotential_examples() {
        // full m=2, omega=2 (z = x): W = x + 4x/(2x^2+1)
        let w = superpotential(&build_seed(Domain::Full, 2, None, 2.0).unwrap()).unwrap();
        let expect =
            &RationalFunction::from_poly(p(&[0, 1])) + &RationalFunction::reduce(p(&[0, 4]), p(&[1, 0, 2])).unwrap();
        assert_eq!(w.w(), &expect);
        assert!((w.eval(0.7).unwrap() - (0.7 + 2.8 / (2.0 * 0.49 + 1.0))).abs() < 1e-14);
        // half m=0, alpha=1/2: W = omega x/2 + 1/x
        let omega = 3.0;
        let w = superpotential(&build_seed(Domain::Half, 0, Some(rat(1, 2)), omega).unwrap()).unwrap();
        let x = 0.9;
        assert!((w.eval(x).unwrap() - (omega * x / 2.0 + 1.0 / x)).abs() < 1e-13);
        assert!(matches!(
            superpotential(&build_seed(Domain::Full, 1, None, 1.0).unwrap()),
            Err(Error::SeedHasInteriorZero { m: 1 })
        ));
    }

    #[test]
    fn partner_examples() {
        let seed = build_seed(Domain::Full, 0, None, 1.0).unwrap();
        let pair = partner_pair(&superpotential(&seed).unwrap(), &seed.factorization_energy());
        assert_eq!(pair.v_plus.render(), "¼ω²x²");
        assert_eq!(pair.v_minus.render(), "¼ω²x² − ω");
        let seed = build_seed(Domain::Half, 0, Some(rat(1, 2)), 1.0).unwrap();
        let w = superpotential(&seed).unwrap();
        let pair = partner_pair(&w, &seed.factorization_energy());
        assert_eq!(pair.v_minus.render(), "¼ω²x² + 2/x² − ω");
        assert_eq!(pair.v_plus.render(), "¼ω²x²");
        let diff = pair.v_plus.reduced() - pair.v_minus.reduced();
        assert_eq!(diff, w.w().derivative());
    }

    #[test]
    fn ladder_examples() {
        let omega = 1.7;
        let seed = build_seed(Domain::Full, 2, None, omega).unwrap();
        let w = superpotential(&seed).unwrap();
        let ground = seed.shape().recip().unwrap();
        assert!(apply_a(&w, &ground).unwrap().is_zero());

        let w0 = superpotential(&build_seed(Domain::Full, 0, None, omega).unwrap()).unwrap();
        let g = ExpPolyFunction::gaussian(GaussSign::Decaying, scale_for(omega));
        let up = apply_a_dagger(&w0, &g).unwrap();
        for x in [-1.3, 0.2, 2.0] {
            let expect = omega * x * (-omega * x * x / 4.0).exp();
            assert!((up.eval(x).unwrap() - expect).abs() < 1e-13);
        }

        // [A, A^dagger] f = 2 W' f
        let f = ExpPolyFunction::new(int(1), p(&[1, 2]), p(&[3, 0, 1]), GaussSign::Decaying, scale_for(omega)).unwrap();
        let aad = apply_a(&w, &apply_a_dagger(&w, &f).unwrap()).unwrap();
        let ada = apply_a_dagger(&w, &apply_a(&w, &f).unwrap()).unwrap();
        for x in [-0.8, 0.4, 1.9] {
            let lhs = aad.eval(x).unwrap() - ada.eval(x).unwrap();
            let rhs = 2.0 * w.eval_derivative(x).unwrap() * f.eval(x).unwrap();
            assert!((lhs - rhs).abs() < 1e-10 * rhs.abs().max(1.0));
        }
    }

    #[test]
    fn map_state_requires_positive_energy() {
        let w = superpotential(&build_seed(Domain::Full, 0, None, 1.0).unwrap()).unwrap();
        let g = ExpPolyFunction::gaussian(GaussSign::Decaying, scale_for(1.0));
        assert!(matches!(map_state(&w, &g, 0.0), Err(Error::NonPositiveEnergy { .. })));
        let up = map_state(&w, &g, 1.0).unwrap();
        assert_eq!(up.power(), &int(1));
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify_seed(&build_seed(Domain::Full, 2, None, 1.0).unwrap()),
            SeedClass::ExtraBoundState
        );
        assert_eq!(
            classify_seed(&build_seed(Domain::Full, 1, None, 1.0).unwrap()),
            SeedClass::StrictlyIsospectral
        );
        for m in 0..4 {
            for a in [rat(1, 2), rat(-1, 2)] {
                let s = build_seed(Domain::Half, m, Some(a), 1.0).unwrap();
                assert_eq!(classify_seed(&s), SeedClass::StrictlyIsospectral);
            }
        }
        assert_eq!(index_shift(SeedClass::ExtraBoundState), 1);
    }

    #[test]
    fn state_deleting_branch() {
        // W = -d ln psi_0 for the plain oscillator: V^- is the oscillator, V^+ is it shifted up by omega.
        let g = ExpPolyFunction::gaussian(GaussSign::Decaying, scale_for(1.0));
        let w = ground_state_superpotential(&g, Domain::Full, 1.0).unwrap();
        let pair = partner_pair(&w, &FactorizationEnergy { coeff: rat(1, 2) });
        assert_eq!(pair.v_minus.render(), "¼ω²x²");
        assert_eq!(pair.v_plus.render(), "¼ω²x² + ω");
    }

    #[test]
    fn q_vanishes_for_separable_seeds() {
        let seeds = vec![
            build_seed(Domain::Full, 2, None, 1.0).unwrap(),
            build_seed(Domain::Full, 2, None, 2.0).unwrap(),
        ];
        let pts = vec![vec![0.3, -1.1], vec![-2.0, 0.7]];
        let q = q_vanishing_check(&seeds, &pts).unwrap();
        assert!(q.max_relative <= 1e-12);
        assert_eq!(q.components.len(), 1);
        let q1 = q_vanishing_check(&seeds[..1], &[vec![0.5]]).unwrap();
        assert_eq!(q1.max_abs, 0.0);
    }
}
