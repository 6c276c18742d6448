//! Exact potentials `V(x) = omega * R(z)` and their term-wise decomposition.

use std::fmt::Write as _;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratpoly::{format_rational, rat, Polynomial, Rational, RationalFunction};

/// Coordinate range of one axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// `-inf < x < inf`
    Full,
    /// `0 < x < inf`, infinite wall at the origin
    Half,
}

/// `sqrt(omega / 2)`, the map from `x` to the dimensionless `z`.
pub fn scale_for(omega: f64) -> f64 {
    (0.5 * omega).sqrt()
}

/// A one-axis potential stored exactly as `omega * reduced(z)` with
/// `z = sqrt(omega/2) x`. The frequency never enters the rational part.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialForm {
    domain: Domain,
    omega: f64,
    reduced: RationalFunction,
}

/// One rational correction `omega * num(t) / den(t)^power`, `t = omega x^2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrectionTerm {
    pub num: Polynomial,
    pub den: Polynomial,
    pub power: u32,
}

/// `quadratic * omega^2 x^2 + sum(corrections) + inverse_square / x^2 + constant * omega`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PotentialTerms {
    #[serde(with = "crate::ratpoly::rational_serde")]
    pub quadratic: Rational,
    pub corrections: Vec<CorrectionTerm>,
    #[serde(with = "crate::ratpoly::rational_serde")]
    pub inverse_square: Rational,
    #[serde(with = "crate::ratpoly::rational_serde")]
    pub constant: Rational,
}

impl PotentialForm {
    pub fn new(domain: Domain, omega: f64, reduced: RationalFunction) -> Self {
        Self { domain, omega, reduced }
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

    /// The frequency-free rational function `R(z)`.
    pub fn reduced(&self) -> &RationalFunction {
        &self.reduced
    }

    /// `V + c * omega`.
    pub fn shifted(&self, c: &Rational) -> Self {
        Self {
            reduced: &self.reduced + &RationalFunction::constant(c.clone()),
            ..self.clone()
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let z = self.scale() * x;
        let d = self.reduced.den().eval_f64(z);
        if d == 0.0 {
            return Err(Error::PoleEvaluation { x });
        }
        Ok(self.omega * self.reduced.num().eval_f64(z) / d)
    }

    /// Split into oscillator, rational-correction, barrier and constant parts.
    /// `None` if the reduced form is not even in `z` or has an unexpected
    /// pole structure at the origin.
    pub fn terms(&self) -> Option<PotentialTerms> {
        decompose(&self.reduced)
    }

    /// Human-readable form in `omega` and `x`, e.g.
    /// `¼ω²x² + 4ω/(ωx² + 3) − 24ω/(ωx² + 3)² + 2/x² − ω`.
    pub fn render(&self) -> String {
        match self.terms() {
            Some(t) => render_terms(&t),
            None => format!("ω·[{}] (z = √(ω/2)·x)", self.reduced),
        }
    }
}

/// Even polynomial in `z` rewritten in `t = 2 z^2` (which is `omega x^2`).
fn even_z_to_t(p: &Polynomial) -> Option<Polynomial> {
    Some(p.even_part_in_square()?.compose_scale(&rat(1, 2)))
}

fn decompose(r: &RationalFunction) -> Option<PotentialTerms> {
    let (quot, rem) = r.num().div_rem(r.den());
    if quot.degree().unwrap_or(0) > 2 || !quot.coeff(1).is_zero() {
        return None;
    }
    let quadratic = quot.coeff(2) / Rational::from_integer(2.into());
    let constant = quot.coeff(0);

    let j = r.den().z_valuation();
    let den = r.den().unshift(j);
    let (inverse_square, rest) = match j {
        0 => (Rational::zero(), rem),
        2 => {
            let c = rem.coeff(0) / den.coeff(0);
            let e = &rem - &den.scale(&c);
            if !e.coeff(1).is_zero() {
                return None;
            }
            (c * Rational::from_integer(2.into()), e.unshift(2))
        }
        _ => return None,
    };

    let mut corrections = Vec::new();
    if !rest.is_zero() {
        let s = Polynomial::gcd(&den, &den.derivative());
        let squared = (&s * &s).monic();
        let pieces: Vec<(Polynomial, Polynomial, u32)> = if s.degree().unwrap_or(0) > 0 && squared == den.monic() {
            let e = rest.scale(&den.leading().recip());
            let (a, b) = e.div_rem(&s);
            vec![(a, s.clone(), 1), (b, s, 2)]
        } else {
            vec![(rest, den, 1)]
        };
        for (num, den, power) in pieces {
            if num.is_zero() {
                continue;
            }
            let num_t = even_z_to_t(&num)?;
            let den_t = even_z_to_t(&den)?;
            let mu = den_t.leading();
            let mu_p = (0..power).fold(Rational::one(), |acc, _| acc * &mu);
            corrections.push(CorrectionTerm {
                num: num_t.scale(&mu_p.recip()),
                den: den_t.monic(),
                power,
            });
        }
    }

    Some(PotentialTerms {
        quadratic,
        corrections,
        inverse_square,
        constant,
    })
}

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if n == 1 {
        return String::new();
    }
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn magnitude(c: &Rational) -> String {
    let c = c.abs();
    match format_rational(&c).as_str() {
        "1/4" => "¼".into(),
        "1/2" => "½".into(),
        "3/4" => "¾".into(),
        s if c.is_integer() => s.to_string(),
        s => format!("({s})"),
    }
}

/// `omega^a x^b` with unicode exponents; empty for `a = b = 0`.
fn omega_x(a: u32, b: u32) -> String {
    let mut s = String::new();
    if a > 0 {
        s.push('ω');
        s.push_str(&superscript(a));
    }
    if b > 0 {
        s.push('x');
        s.push_str(&superscript(b));
    }
    s
}

/// Polynomial in `t = omega x^2`, multiplied by `omega^extra`, highest power first.
pub fn render_t_poly(p: &Polynomial, extra: u32) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let k = k as u32;
        let mono = omega_x(k + extra, 2 * k);
        let coeff = if c.abs().is_one() && !mono.is_empty() {
            String::new()
        } else {
            magnitude(c)
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('−');
            }
        } else {
            out.push_str(if c.is_negative() { " − " } else { " + " });
        }
        out.push_str(&coeff);
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn render_correction(term: &CorrectionTerm) -> (bool, String) {
    let content = term.num.content();
    let prim = term.num.scale(&content.recip());
    let negative = content.is_negative();
    let den = render_t_poly(&term.den, 0);
    let den = format!("({den}){}", superscript(term.power));
    let monomials = prim.coeffs().iter().filter(|c| !c.is_zero()).count();
    let body = if monomials == 1 {
        let k = prim.degree().unwrap() as u32;
        let c = content.abs() * prim.leading();
        let coeff = if c.is_one() { String::new() } else { magnitude(&c) };
        format!("{coeff}{}", omega_x(k + 1, 2 * k))
    } else {
        let coeff = if content.abs().is_one() {
            String::new()
        } else {
            magnitude(&content)
        };
        format!("{coeff}({})", render_t_poly(&prim, 1))
    };
    (negative, format!("{body}/{den}"))
}

pub fn render_terms(t: &PotentialTerms) -> String {
    let mut parts: Vec<(bool, String)> = Vec::new();
    if !t.quadratic.is_zero() {
        let q = if t.quadratic.abs().is_one() {
            String::new()
        } else {
            magnitude(&t.quadratic)
        };
        parts.push((t.quadratic.is_negative(), format!("{q}ω²x²")));
    }
    for c in &t.corrections {
        parts.push(render_correction(c));
    }
    if !t.inverse_square.is_zero() {
        parts.push((
            t.inverse_square.is_negative(),
            format!("{}/x²", magnitude(&t.inverse_square)),
        ));
    }
    if !t.constant.is_zero() {
        let c = if t.constant.abs().is_one() {
            String::new()
        } else {
            magnitude(&t.constant)
        };
        parts.push((t.constant.is_negative(), format!("{c}ω")));
    }
    let mut out = String::new();
    for (i, (neg, body)) in parts.iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('−'),
            (0, false) => {}
            (_, true) => out.push_str(" − "),
            (_, false) => out.push_str(" + "),
        }
        let _ = write!(out, "{body}");
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Rational `c` as a float (convenience for reports).
pub fn to_f64(c: &Rational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}
