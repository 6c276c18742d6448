//! JSON model specification `{kind, axes: [{domain, omega, m, alpha}], gamma?, omega_z?}`.

use serde::{Deserialize, Serialize};

use super::{assemble_tensor, cylindrical_model, AxisModel, ModelND};
use crate::error::{Error, Result};
use crate::potential::Domain;
use crate::ratpoly::{parse_rational, Rational};

/// `alpha` may be written as a number (`0.5`) or an exact string (`"1/2"`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaValue {
    Number(f64),
    Text(String),
}

impl AlphaValue {
    pub fn to_rational(&self) -> Result<Rational> {
        let parsed = match self {
            AlphaValue::Number(v) if *v == 0.5 => parse_rational("1/2"),
            AlphaValue::Number(v) if *v == -0.5 => parse_rational("-1/2"),
            AlphaValue::Number(v) => Rational::from_float(*v),
            AlphaValue::Text(s) => parse_rational(s),
        };
        parsed.ok_or_else(|| Error::InvalidSpec(format!("cannot read alpha {self:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub domain: Domain,
    #[serde(default = "default_omega")]
    pub omega: f64,
    #[serde(default)]
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<AlphaValue>,
}

fn default_omega() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub kind: String,
    pub axes: Vec<AxisSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_z: Option<f64>,
}

impl AxisSpec {
    pub fn build(&self) -> Result<AxisModel> {
        match self.domain {
            Domain::Full => {
                if self.alpha.is_some() {
                    return Err(Error::InvalidSpec("full-line axes take no alpha".into()));
                }
                AxisModel::full(self.m, self.omega)
            }
            Domain::Half => {
                let alpha = self
                    .alpha
                    .as_ref()
                    .ok_or_else(|| Error::InvalidSpec("half-line axes need alpha = -1/2 or 1/2".into()))?;
                AxisModel::half(self.m, alpha.to_rational()?, self.omega)
            }
        }
    }
}

impl ModelSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    /// A cylindrical spec lists the radial axis (`domain: "half"`, `m = m1`)
    /// then the axial one (`domain: "full"`, `m = m2`); `omega_z` overrides
    /// the axial frequency.
    pub fn build(&self) -> Result<ModelND> {
        match self.kind.as_str() {
            "tensor" => assemble_tensor(self.axes.iter().map(AxisSpec::build).collect::<Result<Vec<_>>>()?),
            "cylindrical" => {
                let gamma = self
                    .gamma
                    .ok_or_else(|| Error::InvalidSpec("cylindrical models need gamma".into()))?;
                let [radial, axial] = self.axes.as_slice() else {
                    return Err(Error::InvalidSpec(
                        "cylindrical models take a radial and an axial axis".into(),
                    ));
                };
                if radial.domain != Domain::Half || axial.domain != Domain::Full {
                    return Err(Error::InvalidSpec(
                        "cylindrical axes are [half (radial), full (axial)]".into(),
                    ));
                }
                let omega_z = self.omega_z.unwrap_or(axial.omega);
                cylindrical_model(gamma, radial.m, axial.m, radial.omega, omega_z)
            }
            other => Err(Error::InvalidSpec(format!("unknown model kind {other:?}"))),
        }
    }
}
