//! Exact enumeration of degenerate levels at rational frequency ratios.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::ModelND;
use crate::error::{Error, Result};
use crate::ratpoly::{format_rational, Rational};

const MAX_DENOMINATOR: i64 = 10_000;

/// Which index tuples count as states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StateSelection {
    /// Every product of axis eigenstates.
    Complete,
    /// Only the tuples written out in the closed-form catalog (see
    /// [`ModelND::is_listed`]).
    Listed,
}

/// Best rational approximation with denominator at most 10^4, accepted only
/// if it reproduces `r` to a relative 1e-12.
pub fn rational_ratio(r: f64) -> Result<Rational> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::IrrationalRatioUnsupported { ratio: r });
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut x = r;
    for _ in 0..40 {
        let a = x.floor();
        if a > 1e12 {
            break;
        }
        let a = a as i64;
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > MAX_DENOMINATOR {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64 / k1 as f64) - r).abs() <= 1e-12 * r {
            return Ok(Rational::new(h1.into(), k1.into()));
        }
        let frac = x - a as f64;
        if frac == 0.0 {
            break;
        }
        x = 1.0 / frac;
    }
    Err(Error::IrrationalRatioUnsupported { ratio: r })
}

/// One energy level in units of the first axis frequency.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Level {
    #[serde(serialize_with = "ser_rational")]
    pub energy: Rational,
    pub value: f64,
    pub count: usize,
    pub witnesses: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegeneracyReport {
    #[serde(serialize_with = "ser_rational")]
    pub energy: Rational,
    pub count: usize,
    pub witnesses: Vec<Vec<usize>>,
    pub selection: StateSelection,
    pub n_max: usize,
    /// False when the level lies above the range `n_max` enumerates completely.
    pub complete: bool,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

struct Enumeration {
    levels: BTreeMap<Rational, Vec<Vec<usize>>>,
    cutoff: Rational,
}

fn enumerate(model: &ModelND, n_max: usize, selection: StateSelection) -> Result<Enumeration> {
    let w0 = model.axes()[0].omega();
    let ratios = model
        .axes()
        .iter()
        .map(|a| rational_ratio(a.omega() / w0))
        .collect::<Result<Vec<_>>>()?;
    let table: Vec<Vec<Rational>> = model
        .axes()
        .iter()
        .zip(&ratios)
        .map(|(a, r)| (0..=n_max + 1).map(|k| a.energy(k) * r).collect())
        .collect();
    let mins: Vec<Rational> = table
        .iter()
        .map(|t| t.iter().min().cloned().unwrap_or_else(Rational::zero))
        .collect();
    let total_min: Rational = mins.iter().cloned().sum();
    let cutoff = (0..table.len())
        .map(|i| &table[i][n_max + 1] + &total_min - &mins[i])
        .min()
        .expect("at least one axis");

    let dim = model.dim();
    let mut levels: BTreeMap<Rational, Vec<Vec<usize>>> = BTreeMap::new();
    let mut idx = vec![0usize; dim];
    loop {
        if selection == StateSelection::Complete || model.is_listed(&idx) {
            let e: Rational = idx.iter().enumerate().map(|(i, &k)| table[i][k].clone()).sum();
            levels.entry(e).or_default().push(idx.clone());
        }
        let mut axis = dim;
        loop {
            if axis == 0 {
                return Ok(Enumeration { levels, cutoff });
            }
            axis -= 1;
            if idx[axis] < n_max {
                idx[axis] += 1;
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// Distinct levels that `n_max` enumerates completely, ascending.
pub fn level_energies(model: &ModelND, n_max: usize, selection: StateSelection) -> Result<Vec<Level>> {
    let w0 = model.axes()[0].omega();
    let en = enumerate(model, n_max, selection)?;
    Ok(en
        .levels
        .into_iter()
        .filter(|(e, _)| *e < en.cutoff)
        .map(|(energy, witnesses)| Level {
            value: energy.to_f64().unwrap_or(f64::NAN) * w0,
            count: witnesses.len(),
            energy,
            witnesses,
        })
        .collect())
}

/// All index tuples with energy `target` (units of the first axis frequency).
pub fn degeneracy(
    model: &ModelND,
    target: &Rational,
    n_max: usize,
    selection: StateSelection,
) -> Result<DegeneracyReport> {
    let en = enumerate(model, n_max, selection)?;
    let witnesses = en.levels.get(target).cloned().unwrap_or_default();
    Ok(DegeneracyReport {
        energy: target.clone(),
        count: witnesses.len(),
        witnesses,
        selection,
        n_max,
        complete: *target < en.cutoff,
    })
}
