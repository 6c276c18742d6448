use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::polynomial::horner;
use super::{Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

/// Sign of the Gaussian factor `exp(sigma * z^2 / 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaussSign {
    Decaying,
    Growing,
}

impl GaussSign {
    pub fn value(self) -> i64 {
        match self {
            GaussSign::Decaying => -1,
            GaussSign::Growing => 1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            GaussSign::Decaying => GaussSign::Growing,
            GaussSign::Growing => GaussSign::Decaying,
        }
    }
}

/// `prefactor * z^power * num(z)/den(z) * exp(sigma z^2/2)` with `z = scale * x`.
///
/// Kept in a canonical form: every factor of `z` in `num` or `den` is moved
/// into `power`, `num/den` is reduced with a primitive denominator. `power`
/// is rational so half-integer radial prefactors (`r^{|gamma|+3/2}`) fit; for
/// a non-integer power the function is only defined for `x > 0`.
#[derive(Clone)]
pub struct ExpPolyFunction {
    power: Rational,
    num: Polynomial,
    den: Polynomial,
    sigma: GaussSign,
    scale: f64,
    prefactor: f64,
    num_f: Vec<f64>,
    den_f: Vec<f64>,
    power_f: f64,
    power_int: Option<i32>,
}

impl ExpPolyFunction {
    pub fn new(power: Rational, num: Polynomial, den: Polynomial, sigma: GaussSign, scale: f64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::canonical(power, num, den, sigma, scale, 1.0))
    }

    /// `exp(sigma z^2 / 2)`.
    pub fn gaussian(sigma: GaussSign, scale: f64) -> Self {
        Self::canonical(
            Rational::zero(),
            Polynomial::one(),
            Polynomial::one(),
            sigma,
            scale,
            1.0,
        )
    }

    fn canonical(
        power: Rational,
        num: Polynomial,
        den: Polynomial,
        sigma: GaussSign,
        scale: f64,
        prefactor: f64,
    ) -> Self {
        let (power, num, den) = if num.is_zero() {
            (Rational::zero(), Polynomial::zero(), Polynomial::one())
        } else {
            let r = RationalFunction::reduce(num, den).expect("nonzero denominator");
            let (num, den) = (r.num().clone(), r.den().clone());
            let vn = num.z_valuation();
            let vd = den.z_valuation();
            let power = power + Rational::from_integer(vn.into()) - Rational::from_integer(vd.into());
            let num = num.unshift(vn);
            let den = den.unshift(vd);
            let c = den.content().recip();
            (power, num.scale(&c), den.scale(&c))
        };
        let power_int = if power.is_integer() {
            power.to_integer().to_i32()
        } else {
            None
        };
        Self {
            power_f: power.to_f64().unwrap_or(f64::NAN),
            power_int,
            num_f: num.to_f64_coeffs(),
            den_f: den.to_f64_coeffs(),
            power,
            num,
            den,
            sigma,
            scale,
            prefactor,
        }
    }

    pub fn power(&self) -> &Rational {
        &self.power
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn sigma(&self) -> GaussSign {
        self.sigma
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn prefactor(&self) -> f64 {
        self.prefactor
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn with_prefactor(&self, prefactor: f64) -> Self {
        Self {
            prefactor,
            ..self.clone()
        }
    }

    /// Multiply the rational part by an exact constant.
    pub fn scale_exact(&self, c: &Rational) -> Self {
        Self::canonical(
            self.power.clone(),
            self.num.scale(c),
            self.den.clone(),
            self.sigma,
            self.scale,
            self.prefactor,
        )
    }

    /// Multiply by a rational function of `z`.
    pub fn mul_ratfun(&self, r: &RationalFunction) -> Self {
        Self::canonical(
            self.power.clone(),
            &self.num * r.num(),
            &self.den * r.den(),
            self.sigma,
            self.scale,
            self.prefactor,
        )
    }

    /// `1 / f`.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::canonical(
            -self.power.clone(),
            self.den.clone(),
            self.num.clone(),
            self.sigma.flip(),
            self.scale,
            1.0 / self.prefactor,
        ))
    }

    /// Sum of two functions sharing the Gaussian, scale and prefactor and whose
    /// powers differ by an integer.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.sigma != other.sigma || self.scale != other.scale || self.prefactor != other.prefactor {
            return Err(Error::Incompatible(
                "exp-poly operands differ in gaussian, scale or prefactor".into(),
            ));
        }
        let diff = &self.power - &other.power;
        if !diff.is_integer() {
            return Err(Error::Incompatible("exp-poly powers differ by a non-integer".into()));
        }
        let (low, high) = if diff.is_negative() {
            (self, other)
        } else {
            (other, self)
        };
        let shift = diff.abs().to_integer().to_usize().expect("small power difference");
        let num = &(&low.num * &high.den) + &(&high.num * &low.den).shift(shift);
        Ok(Self::canonical(
            low.power.clone(),
            num,
            &low.den * &high.den,
            self.sigma,
            self.scale,
            self.prefactor,
        ))
    }

    /// Exact derivative with respect to the scaled variable `z` (prefactor unchanged).
    pub fn z_derivative(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        // d/dz [z^p N/D e^{s z^2/2}] = z^{p-1} [p N D + z (N'D - N D') + s z^2 N D] / D^2 e^{...}
        let nd = &self.num * &self.den;
        let wronski = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let sigma = Rational::from_integer(self.sigma.value().into());
        let bracket = &(&nd.scale(&self.power) + &wronski.shift(1)) + &nd.scale(&sigma).shift(2);
        Self::canonical(
            &self.power - Rational::one(),
            bracket,
            &self.den * &self.den,
            self.sigma,
            self.scale,
            self.prefactor,
        )
    }

    /// Exact derivative with respect to `x`; carries one factor of `scale`.
    pub fn derivative(&self) -> Self {
        let d = self.z_derivative();
        Self {
            prefactor: self.prefactor * self.scale,
            ..d
        }
    }

    /// Logarithmic derivative `f_z / f` as a rational function of `z`.
    pub fn log_derivative_z(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut w = RationalFunction::reduce(self.num.derivative(), self.num.clone())?;
        w = &w - &RationalFunction::reduce(self.den.derivative(), self.den.clone())?;
        let linear = Polynomial::monomial(Rational::from_integer(self.sigma.value().into()), 1);
        w = &w + &RationalFunction::from_poly(linear);
        if !self.power.is_zero() {
            w = &w + &RationalFunction::reduce(Polynomial::constant(self.power.clone()), Polynomial::z())?;
        }
        Ok(w)
    }

    /// Exact value of `num(z)/den(z)` at rational `z` (power, Gaussian and prefactor omitted).
    pub fn rational_part_at(&self, z: &Rational) -> Option<Rational> {
        let d = self.den.eval(z);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(z) / d)
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let z = self.scale * x;
        let d = horner(&self.den_f, z);
        if d == 0.0 {
            return Err(Error::PoleEvaluation { x });
        }
        if self.num.is_zero() {
            return Ok(0.0);
        }
        let zp = match self.power_int {
            Some(0) => 1.0,
            Some(k) => z.powi(k),
            None if z > 0.0 => z.powf(self.power_f),
            None if z == 0.0 && self.power_f > 0.0 => 0.0,
            None => return Err(Error::PoleEvaluation { x }),
        };
        let g = (self.sigma.value() as f64 * 0.5 * z * z).exp();
        Ok(self.prefactor * zp * horner(&self.num_f, z) / d * g)
    }

    /// Sign of the function as `x -> +infinity`.
    pub fn sign_at_infinity(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let s = (self.num.leading() / self.den.leading()).signum();
        s.to_f64().unwrap_or(1.0) * self.prefactor.signum()
    }
}

impl PartialEq for ExpPolyFunction {
    fn eq(&self, other: &Self) -> bool {
        self.power == other.power
            && self.num == other.num
            && self.den == other.den
            && self.sigma == other.sigma
            && self.scale == other.scale
            && self.prefactor == other.prefactor
    }
}

impl fmt::Debug for ExpPolyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpPolyFunction({self})")
    }
}

impl fmt::Display for ExpPolyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefactor != 1.0 {
            write!(f, "{} * ", self.prefactor)?;
        }
        if !self.power.is_zero() {
            write!(f, "z^({}) * ", self.power)?;
        }
        if self.den.is_one() {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "({}) / ({})", self.num, self.den)?;
        }
        let s = if self.sigma == GaussSign::Growing { "" } else { "-" };
        write!(f, " * exp({s}z^2/2) [z = {} x]", self.scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn gaussian_derivative() {
        let s = 0.7;
        let f = ExpPolyFunction::gaussian(GaussSign::Decaying, s);
        let d = f.derivative();
        assert_eq!(d.power(), &rat(1, 1));
        assert_eq!(d.num(), &p(&[-1]));
        assert!((d.prefactor() - s).abs() < 1e-15);
    }

    #[test]
    fn linear_times_gaussian_derivative() {
        let s = 1.3;
        let f = ExpPolyFunction::new(rat(1, 1), p(&[1]), p(&[1]), GaussSign::Decaying, s).unwrap();
        let d = f.derivative();
        assert_eq!(d.power(), &rat(0, 1));
        assert_eq!(d.num(), &p(&[1, 0, -1]));
        let x = 0.4;
        let z = s * x;
        assert!((d.eval(x).unwrap() - s * (1.0 - z * z) * (-z * z / 2.0).exp()).abs() < 1e-14);
    }

    #[test]
    fn eval_examples() {
        let f = ExpPolyFunction::gaussian(GaussSign::Decaying, 1.0);
        assert_eq!(f.eval(0.0).unwrap(), 1.0);
        let g = ExpPolyFunction::new(rat(2, 1), p(&[1]), p(&[1]), GaussSign::Decaying, 1.0).unwrap();
        assert!((g.eval(2.0).unwrap() - 4.0 * (-2.0f64).exp()).abs() < 1e-12);
        assert!((g.eval(2.0).unwrap() - 0.541341).abs() < 1e-6);
    }

    #[test]
    fn pole_is_reported() {
        let f = ExpPolyFunction::new(rat(0, 1), p(&[1]), p(&[-1, 1]), GaussSign::Decaying, 1.0).unwrap();
        assert_eq!(f.eval(1.0), Err(Error::PoleEvaluation { x: 1.0 }));
    }

    #[test]
    fn z_factors_move_into_power() {
        let f = ExpPolyFunction::new(rat(0, 1), p(&[0, 0, 3]), p(&[0, 1, 2]), GaussSign::Growing, 1.0).unwrap();
        assert_eq!(f.power(), &rat(1, 1));
        assert_eq!(f.den(), &p(&[1, 2]));
    }

    #[test]
    fn reciprocal_flips_gaussian() {
        let f = ExpPolyFunction::new(rat(1, 2), p(&[1, 0, 2]), p(&[1]), GaussSign::Growing, 0.5).unwrap();
        let g = f.recip().unwrap();
        assert_eq!(g.sigma(), GaussSign::Decaying);
        assert_eq!(g.power(), &rat(-1, 2));
        let x = 1.7;
        assert!((f.eval(x).unwrap() * g.eval(x).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn log_derivative_matches_definition() {
        let f = ExpPolyFunction::new(rat(1, 1), p(&[2, 0, 4]), p(&[1]), GaussSign::Growing, 1.0).unwrap();
        let w = f.log_derivative_z().unwrap();
        let fz = f.z_derivative();
        for &z in &[0.3, 1.1, 2.5] {
            let lhs = w.eval_f64(z);
            let rhs = fz.eval(z).unwrap() / f.eval(z).unwrap();
            assert!((lhs - rhs).abs() < 1e-12 * rhs.abs().max(1.0));
        }
    }
}
