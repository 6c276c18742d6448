//! Gauss-Legendre rules and adaptive panel integration.

use std::sync::OnceLock;

use num_traits::{ToPrimitive, Zero};

use crate::potential::Domain;
use crate::ratpoly::{ExpPolyFunction, Polynomial};

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(x) and P_n'(x) by the three-term recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 {
                1.0
            } else if n == 1 {
                x
            } else {
                p1
            };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(20))
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (xs, ws) = rule();
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    xs.iter().zip(ws).map(|(x, w)| w * f(c + r * x)).sum::<f64>() * r
}

fn refine<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let left = panel(f, a, m);
    let right = panel(f, m, b);
    let sum = left + right;
    if depth == 0 || (sum - whole).abs() <= tol {
        return sum;
    }
    refine(f, a, m, left, 0.5 * tol, depth - 1) + refine(f, m, b, right, 0.5 * tol, depth - 1)
}

/// `int_a^b f` on `panels` equal starting panels, each refined until two
/// halves agree with the whole to `rel_tol` times the running magnitude.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize, rel_tol: f64) -> f64 {
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let coarse: Vec<f64> = (0..panels)
        .map(|i| panel(&f, a + i as f64 * h, a + (i + 1) as f64 * h))
        .collect();
    let scale = coarse.iter().map(|v| v.abs()).sum::<f64>().max(f64::MIN_POSITIVE);
    let tol = rel_tol * scale / panels as f64;
    coarse
        .iter()
        .enumerate()
        .map(|(i, &whole)| refine(&f, a + i as f64 * h, a + (i + 1) as f64 * h, whole, tol, 30))
        .sum()
}

fn poly_parity(p: &Polynomial) -> Option<usize> {
    let mut parity = None;
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match parity {
            None => parity = Some(k % 2),
            Some(q) if q != k % 2 => return None,
            _ => {}
        }
    }
    Some(parity.unwrap_or(0))
}

/// `Some(0)` for an even function of `x`, `Some(1)` for odd, `None` otherwise.
pub fn parity(f: &ExpPolyFunction) -> Option<usize> {
    let p = f.power().to_integer().to_i64().filter(|_| f.power().is_integer())?;
    let n = poly_parity(f.num())?;
    let d = poly_parity(f.den())?;
    Some((p.rem_euclid(2) as usize + n + d) % 2)
}

/// Truncation point in `z` beyond which `f^2` is negligible, and a panel count.
fn extent(fs: &[&ExpPolyFunction]) -> (f64, usize) {
    let d: f64 = fs
        .iter()
        .map(|f| {
            let growth = f.num().degree().unwrap_or(0) as f64 - f.den().degree().unwrap_or(0) as f64;
            (growth + f.power().to_f64().unwrap_or(0.0)).max(0.0)
        })
        .sum();
    (8.0 + 1.5 * d.sqrt(), 16 + 2 * d as usize)
}

/// `int f g dx` over the domain; exactly zero for opposite parities on the full line.
pub fn overlap(f: &ExpPolyFunction, g: &ExpPolyFunction, domain: Domain) -> f64 {
    let (zmax, panels) = extent(&[f, g]);
    let l = zmax / f.scale().min(g.scale());
    let integrand = |x: f64| f.eval(x).unwrap_or(f64::NAN) * g.eval(x).unwrap_or(f64::NAN);
    match domain {
        Domain::Half => integrate(integrand, 0.0, l, panels, 1e-13),
        Domain::Full => match (parity(f), parity(g)) {
            (Some(p), Some(q)) if p != q => 0.0,
            (Some(_), Some(_)) => 2.0 * integrate(integrand, 0.0, l, panels, 1e-13),
            _ => integrate(integrand, -l, l, 2 * panels, 1e-13),
        },
    }
}

/// Unit `L^2` norm on the domain, positive sign as `x -> +infinity`.
pub fn normalize(f: &ExpPolyFunction, domain: Domain) -> ExpPolyFunction {
    let unit = f.with_prefactor(1.0);
    let norm = overlap(&unit, &unit, domain).sqrt();
    let sign = unit.sign_at_infinity();
    unit.with_prefactor(sign / norm)
}
