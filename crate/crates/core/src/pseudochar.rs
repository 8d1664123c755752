//! Pseudo-characters `χ: Γ → U(1)` obeying the cocycle
//! `χ(γ+γ') = χ(γ)χ(γ')·exp((ν/2)(γ·conj(γ') − conj(γ)·γ'))`.
//!
//! A character is determined by its values `u1 = χ(ω₁)`, `u2 = χ(ω₂)`; the
//! cross term reduces to `(−1)^{k·m·n}` because `ν·Im(ω₁conj(ω₂)) = kπ`, so
//! evaluation never touches a floating-point exponential.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticePoint};

const UNIT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PseudoCharacter {
    lattice: Lattice,
    nu: f64,
    u1: Complex64,
    u2: Complex64,
    k: u32,
}

impl PseudoCharacter {
    /// Extends generator values `u1 = χ(ω₁)`, `u2 = χ(ω₂)` to all of Γ.
    pub fn from_generators(lattice: Lattice, nu: f64, u1: Complex64, u2: Complex64) -> Result<Self> {
        let k = lattice.dimension(nu)?;
        for u in [u1, u2] {
            if (u.norm() - 1.0).abs() > UNIT_TOL {
                return Err(Error::NotUnitModulus {
                    value: format!("{u}"),
                });
            }
        }
        Ok(PseudoCharacter {
            lattice,
            nu,
            u1,
            u2,
            k,
        })
    }

    /// The Weierstrass character `u1 = u2 = −1`; for odd `k` it is `+1`
    /// exactly on `2Γ`.
    pub fn weierstrass(lattice: Lattice, nu: f64) -> Result<Self> {
        let minus = Complex64::new(-1.0, 0.0);
        Self::from_generators(lattice, nu, minus, minus)
    }

    /// Skips every consistency check. Only useful to probe how the cocycle
    /// fails for inconsistent data.
    pub fn from_parts_unchecked(lattice: Lattice, nu: f64, u1: Complex64, u2: Complex64, k: u32) -> Self {
        PseudoCharacter {
            lattice,
            nu,
            u1,
            u2,
            k,
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn generator_values(&self) -> (Complex64, Complex64) {
        (self.u1, self.u2)
    }

    /// Real valued iff both generator values are ±1.
    pub fn is_real(&self) -> bool {
        let sign = |u: Complex64| u.im == 0.0 && u.re.abs() == 1.0;
        sign(self.u1) && sign(self.u2)
    }

    pub fn is_weierstrass(&self) -> bool {
        let minus = Complex64::new(-1.0, 0.0);
        self.u1 == minus && self.u2 == minus
    }

    /// `χ(mω₁ + nω₂) = u1^m·u2^n·(−1)^{k·m·n}`.
    pub fn eval_mn(&self, m: i64, n: i64) -> Complex64 {
        let base = int_pow(self.u1, m) * int_pow(self.u2, n);
        if (self.k as i64 * m * n).rem_euclid(2) == 1 {
            -base
        } else {
            base
        }
    }

    pub fn evaluate(&self, gamma: &LatticePoint) -> Complex64 {
        self.eval_mn(gamma.m, gamma.n)
    }

    /// Largest cocycle defect over all pairs with coordinates in `[−radius, radius]`.
    pub fn verify_cocycle(&self, radius: i64) -> f64 {
        let half_nu = 0.5 * self.nu;
        let mut worst: f64 = 0.0;
        let range = -radius..=radius;
        for m1 in range.clone() {
            for n1 in range.clone() {
                let g1 = self.lattice.point(m1, n1);
                let c1 = self.evaluate(&g1);
                for m2 in range.clone() {
                    for n2 in range.clone() {
                        let g2 = self.lattice.point(m2, n2);
                        let sum = self.eval_mn(m1 + m2, n1 + n2);
                        let phase = (half_nu
                            * (g1.value * g2.value.conj() - g1.value.conj() * g2.value))
                            .exp();
                        let rhs = c1 * self.evaluate(&g2) * phase;
                        worst = worst.max((sum - rhs).norm());
                    }
                }
            }
        }
        worst
    }

    /// The character of `λΓ` at magnitude `ν/|λ|²` with `χ_{λΓ}(λγ) = χ(γ)`.
    pub fn transported(&self, lambda: Complex64) -> Result<Self> {
        let lattice = self.lattice.scaled(lambda)?;
        let nu = self.nu / lambda.norm_sqr();
        let mut out = Self::from_generators(lattice, nu, self.u1, self.u2)?;
        debug_assert_eq!(out.k, self.k);
        out.k = self.k;
        Ok(out)
    }
}

fn int_pow(u: Complex64, e: i64) -> Complex64 {
    if e >= 0 {
        pow_u(u, e as u64)
    } else {
        // |u| = 1, so u^{-1} = conj(u)
        pow_u(u.conj(), e.unsigned_abs())
    }
}

fn pow_u(mut base: Complex64, mut e: u64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn weierstrass_values() {
        let chi = PseudoCharacter::weierstrass(Lattice::square(), PI).unwrap();
        assert_eq!(chi.k(), 1);
        assert_eq!(chi.eval_mn(0, 0), c(1.0, 0.0));
        assert_eq!(chi.eval_mn(2, 0), c(1.0, 0.0));
        assert_eq!(chi.eval_mn(1, 0), c(-1.0, 0.0));
        assert_eq!(chi.eval_mn(1, 1), c(-1.0, 0.0));
        assert_eq!(chi.eval_mn(2, 3), c(-1.0, 0.0));
        for m in -5..=5i64 {
            for n in -5..=5i64 {
                let expect = if (m + n + m * n).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                assert_eq!(chi.eval_mn(m, n), c(expect, 0.0));
                let both_even = m % 2 == 0 && n % 2 == 0;
                assert_eq!(chi.eval_mn(m, n).re > 0.0, both_even);
            }
        }
    }

    #[test]
    fn trivial_generators_even_k() {
        let one = c(1.0, 0.0);
        let chi = PseudoCharacter::from_generators(Lattice::square(), 2.0 * PI, one, one).unwrap();
        for m in -5..=5 {
            for n in -5..=5 {
                assert_eq!(chi.eval_mn(m, n), one);
            }
        }
        assert!(chi.verify_cocycle(5) < 1e-10);
    }

    #[test]
    fn cocycle_holds_and_fails() {
        let l = Lattice::new(c(1.0, 0.0), c(0.3, 1.1)).unwrap();
        let nu = 2.0 * PI / 1.1;
        let u1 = Complex64::from_polar(1.0, 0.7);
        let u2 = Complex64::from_polar(1.0, -2.1);
        let chi = PseudoCharacter::from_generators(l, nu, u1, u2).unwrap();
        assert!(chi.verify_cocycle(4) < 1e-10);
        assert_eq!(chi.verify_cocycle(0), 0.0);

        let bad = PseudoCharacter::from_parts_unchecked(l, nu / 2.0, u1, u2, chi.k());
        assert!(bad.verify_cocycle(2) > 0.5);
    }

    #[test]
    fn rejects_bad_inputs() {
        let l = Lattice::square();
        assert!(matches!(
            PseudoCharacter::weierstrass(l, 1.5 * PI),
            Err(Error::NonIntegralDimension { .. })
        ));
        assert!(matches!(
            PseudoCharacter::from_generators(l, PI, c(2.0, 0.0), c(1.0, 0.0)),
            Err(Error::NotUnitModulus { .. })
        ));
    }

    #[test]
    fn reality_flag() {
        let l = Lattice::square();
        assert!(PseudoCharacter::weierstrass(l, PI).unwrap().is_real());
        let chi = PseudoCharacter::from_generators(l, PI, c(0.0, 1.0), c(1.0, 0.0)).unwrap();
        assert!(!chi.is_real());
    }
}
