//! Classical and exceptional Hermite / Laguerre polynomials with exact
//! coefficients, generated by three-term recurrences and memoized.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::One;

use crate::ratpoly::{int, Polynomial, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum HermiteKind {
    Classical,
    Pseudo,
}

/// Memo tables for the polynomial families. Entries are never mutated once
/// inserted; readers share a lock.
#[derive(Default)]
pub struct HermiteFamilyCache {
    hermite: RwLock<HashMap<HermiteKind, Vec<Polynomial>>>,
    laguerre: RwLock<HashMap<Rational, Vec<Polynomial>>>,
}

impl HermiteFamilyCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn hermite_family(&self, kind: HermiteKind, n: usize) -> Polynomial {
        if let Some(p) = self.hermite.read().unwrap().get(&kind).and_then(|v| v.get(n)) {
            return p.clone();
        }
        let mut guard = self.hermite.write().unwrap();
        let table = guard.entry(kind).or_insert_with(|| vec![Polynomial::one()]);
        // H_{k+1} = 2z H_k -/+ 2k H_{k-1}
        let sign = match kind {
            HermiteKind::Classical => -1,
            HermiteKind::Pseudo => 1,
        };
        while table.len() <= n {
            let k = table.len() - 1;
            let next = if k == 0 {
                Polynomial::from_i64s(&[0, 2])
            } else {
                let two_z = Polynomial::from_i64s(&[0, 2]);
                &(&two_z * &table[k]) + &table[k - 1].scale(&int(sign * 2 * k as i64))
            };
            table.push(next);
        }
        table[n].clone()
    }

    pub fn hermite(&self, n: usize) -> Polynomial {
        self.hermite_family(HermiteKind::Classical, n)
    }

    pub fn pseudo_hermite(&self, m: usize) -> Polynomial {
        self.hermite_family(HermiteKind::Pseudo, m)
    }

    pub fn laguerre(&self, n: usize, alpha: &Rational) -> Polynomial {
        if let Some(p) = self.laguerre.read().unwrap().get(alpha).and_then(|v| v.get(n)) {
            return p.clone();
        }
        let mut guard = self.laguerre.write().unwrap();
        let table = guard.entry(alpha.clone()).or_insert_with(|| vec![Polynomial::one()]);
        // (k+1) L_{k+1} = (2k+1+a-s) L_k - (k+a) L_{k-1}
        while table.len() <= n {
            let k = table.len() - 1;
            let kr = int(k as i64);
            let linear = Polynomial::new(vec![&kr * int(2) + Rational::one() + alpha, int(-1)]);
            let mut next = &linear * &table[k];
            if k > 0 {
                next = &next - &table[k - 1].scale(&(&kr + alpha));
            }
            table.push(next.scale(&(kr + Rational::one()).recip()));
        }
        table[n].clone()
    }
}

fn cache() -> &'static HermiteFamilyCache {
    static CACHE: OnceLock<HermiteFamilyCache> = OnceLock::new();
    CACHE.get_or_init(HermiteFamilyCache::new)
}

/// Physicists' Hermite polynomial `H_n(z)`.
pub fn hermite(n: usize) -> Polynomial {
    cache().hermite(n)
}

/// Pseudo-Hermite polynomial `(-i)^m H_m(iz)`; all coefficients are nonnegative.
pub fn pseudo_hermite(m: usize) -> Polynomial {
    cache().pseudo_hermite(m)
}

/// Generalized Laguerre polynomial `L_n^{(alpha)}(s)`.
pub fn laguerre(n: usize, alpha: &Rational) -> Polynomial {
    cache().laguerre(n, alpha)
}

/// `L_n^{(alpha)}` with the convention `L_{-1} = 0`.
pub fn laguerre_or_zero(n: i64, alpha: &Rational) -> Polynomial {
    if n < 0 {
        Polynomial::zero()
    } else {
        laguerre(n as usize, alpha)
    }
}

/// Exceptional Hermite polynomial of codimension `m`.
///
/// `k = 0` gives the constant 1 (a convention, not a limit of the formula);
/// `k = n + 1 >= 1` gives `pH_m H_{n+1} + H_n pH_m'`.
pub fn exceptional_hermite(k: usize, m: usize) -> Polynomial {
    if k == 0 {
        return Polynomial::one();
    }
    let ph = pseudo_hermite(m);
    &(&ph * &hermite(k)) + &(&hermite(k - 1) * &ph.derivative())
}

/// Exceptional Laguerre polynomial in `s`:
/// `L_m^{(a)}(-s) L_n^{(a+1)}(s) + L_{m-1}^{(a+1)}(-s) L_n^{(a)}(s)`.
pub fn exceptional_laguerre(n: usize, m: usize, alpha: &Rational) -> Polynomial {
    let a1 = alpha + Rational::one();
    let neg = Rational::from_integer((-1).into());
    let first = &laguerre(m, alpha).compose_scale(&neg) * &laguerre(n, &a1);
    let second = &laguerre_or_zero(m as i64 - 1, &a1).compose_scale(&neg) * &laguerre(n, alpha);
    &first + &second
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;
    use num_traits::{Signed, Zero};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn hermite_examples() {
        assert_eq!(hermite(0), p(&[1]));
        assert_eq!(hermite(2), p(&[-2, 0, 4]));
        assert_eq!(hermite(3), p(&[0, -12, 0, 8]));
    }

    #[test]
    fn pseudo_hermite_examples() {
        assert_eq!(pseudo_hermite(0), p(&[1]));
        assert_eq!(pseudo_hermite(2), p(&[2, 0, 4]));
        assert_eq!(pseudo_hermite(3), p(&[0, 12, 0, 8]));
    }

    #[test]
    fn pseudo_hermite_coefficients_nonnegative_with_parity() {
        for m in 0..16 {
            let ph = pseudo_hermite(m);
            for (k, c) in ph.coeffs().iter().enumerate() {
                assert!(!c.is_negative());
                if (k + m) % 2 == 1 {
                    assert!(c.is_zero());
                }
            }
        }
    }

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre(0, &rat(7, 3)), p(&[1]));
        assert_eq!(laguerre(1, &rat(-1, 2)), Polynomial::from_ratios(&[(1, 2), (-1, 1)]));
        assert_eq!(laguerre(1, &rat(1, 2)), Polynomial::from_ratios(&[(3, 2), (-1, 1)]));
        // L_2^{(0)} = 1 - 2s + s^2/2
        assert_eq!(
            laguerre(2, &rat(0, 1)),
            Polynomial::from_ratios(&[(1, 1), (-2, 1), (1, 2)])
        );
    }

    #[test]
    fn exceptional_hermite_examples() {
        assert_eq!(exceptional_hermite(0, 2), p(&[1]));
        assert_eq!(exceptional_hermite(1, 2), p(&[0, 12, 0, 8]));
        assert_eq!(exceptional_hermite(1, 0), p(&[0, 2]));
    }

    #[test]
    fn exceptional_hermite_degree_gap() {
        for m in [0usize, 2, 4] {
            for k in 1..=8 {
                assert_eq!(exceptional_hermite(k, m).degree(), Some(k + m), "k={k} m={m}");
            }
        }
    }

    #[test]
    fn exceptional_laguerre_examples() {
        assert_eq!(exceptional_laguerre(0, 0, &rat(5, 7)), p(&[1]));
        assert_eq!(
            exceptional_laguerre(0, 1, &rat(-1, 2)),
            Polynomial::from_ratios(&[(3, 2), (1, 1)])
        );
        assert_eq!(
            exceptional_laguerre(1, 0, &rat(1, 2)),
            Polynomial::from_ratios(&[(5, 2), (-1, 1)])
        );
    }

    #[test]
    fn exceptional_laguerre_m0_is_classical_shifted() {
        for n in 0..6 {
            assert_eq!(exceptional_laguerre(n, 0, &rat(-1, 2)), laguerre(n, &rat(1, 2)));
        }
    }

    #[test]
    fn concurrent_cache_reads_agree() {
        let handles: Vec<_> = (0..8)
            .map(|i| std::thread::spawn(move || (hermite(10 + i % 3), laguerre(9, &rat(1, 2)))))
            .collect();
        for h in handles {
            let (hp, lp) = h.join().unwrap();
            assert!(hp.degree().unwrap() >= 10);
            assert_eq!(lp, laguerre(9, &rat(1, 2)));
        }
    }
}
