//! Exact data behind the half-line potential and eigenfunction tables
//! (`m = 0..=3`, `alpha = -1/2, +1/2`).

use num_traits::One;
use serde::Serialize;

use super::AxisModel;
use crate::error::Result;
use crate::orthopoly::{laguerre, laguerre_or_zero};
use crate::potential::{render_t_poly, PotentialTerms};
use crate::ratpoly::{format_rational, rat, Polynomial, Rational, RationalFunction};

pub const TABLE_MS: [usize; 4] = [0, 1, 2, 3];

pub fn table_alphas() -> [Rational; 2] {
    [rat(-1, 2), rat(1, 2)]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table1Row {
    pub m: usize,
    pub alpha: String,
    /// `V / omega` as a rational function of `z = sqrt(omega/2) x`.
    pub reduced: RationalFunction,
    pub terms: PotentialTerms,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table2Row {
    pub m: usize,
    pub alpha: String,
    /// Power of `x` in front (`alpha + 3/2`).
    pub x_power: String,
    /// `1 + L_{m-1}^{(alpha+1)}(-s) / L_m^{(alpha)}(-s)` as `num(t)/den(t)`, `t = omega x^2`.
    pub ratio_num: Polynomial,
    pub ratio_den: Polynomial,
    pub display: String,
}

pub fn table1() -> Result<Vec<Table1Row>> {
    let mut rows = Vec::new();
    for m in TABLE_MS {
        for alpha in table_alphas() {
            let v = AxisModel::half(m, alpha.clone(), 1.0)?.potential()?;
            let terms = v.terms().expect("half-line potentials decompose");
            rows.push(Table1Row {
                m,
                alpha: format_rational(&alpha),
                reduced: v.reduced().clone(),
                display: v.render(),
                terms,
            });
        }
    }
    Ok(rows)
}

/// The bracket ratio of row `(m, alpha)` as a rational function of `t = omega x^2`.
pub fn table2_ratio(m: usize, alpha: &Rational) -> Result<RationalFunction> {
    let a1 = alpha + Rational::one();
    let neg = rat(-1, 1);
    let top = laguerre_or_zero(m as i64 - 1, &a1).compose_scale(&neg);
    let bottom = laguerre(m, alpha).compose_scale(&neg);
    let in_s = &RationalFunction::constant(Rational::one()) + &RationalFunction::reduce(top, bottom)?;
    Ok(in_s.compose_scale(&rat(1, 2)))
}

fn laguerre_label(index: &str, alpha: &Rational) -> String {
    format!("L_{index}^{{({})}}(ωx²/2)", format_rational(alpha))
}

pub fn table2() -> Result<Vec<Table2Row>> {
    let mut rows = Vec::new();
    for m in TABLE_MS {
        for alpha in table_alphas() {
            let a1 = &alpha + Rational::one();
            let x_power = &alpha + rat(3, 2);
            let prefix = if x_power == Rational::one() {
                "x".to_string()
            } else {
                format!("x^{}", format_rational(&x_power))
            };
            let ratio = table2_ratio(m, &alpha)?;
            let display = if m == 0 {
                format!("{prefix} e^(−ωx²/4) {}", laguerre_label("n", &a1))
            } else {
                format!(
                    "{prefix} e^(−ωx²/4) [{} + ({})/({})·{}]",
                    laguerre_label("{n−1}", &a1),
                    render_t_poly(ratio.num(), 0),
                    render_t_poly(ratio.den(), 0),
                    laguerre_label("n", &alpha)
                )
            };
            rows.push(Table2Row {
                m,
                alpha: format_rational(&alpha),
                x_power: format_rational(&x_power),
                ratio_num: ratio.num().clone(),
                ratio_den: ratio.den().clone(),
                display,
            });
        }
    }
    Ok(rows)
}
