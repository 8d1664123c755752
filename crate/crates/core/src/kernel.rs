//! The reproducing kernel
//!
//! ```text
//! K(z,w) = (ν/π) Σ_γ χ(γ) exp(−(ν/2)|γ|² + ν(z·γ̄ − w̄·γ + z·w̄))
//! ```
//!
//! of the space of entire `f` with `f(z+γ) = χ(γ)e^{ν(z+γ/2)γ̄} f(z)`,
//! its Hermite–Taylor expansion, and the Poincaré series of monomials.

use std::f64::consts::PI;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::coeffs::coeff_table;
use crate::error::{Error, Result};
use crate::hermite::DEFAULT_DEGREE_CAP;
use crate::lattice::{FundamentalCell, Lattice, LatticePoint};
use crate::pseudochar::PseudoCharacter;
use crate::sum::{checked_exp, shell_sum, SumConfig, SumResult};

/// `(Γ, ν, χ)` with `k = (ν/π)S(Γ)` a positive integer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaFockSpace {
    chi: PseudoCharacter,
    shell_cap: usize,
}

impl ThetaFockSpace {
    pub fn new(chi: PseudoCharacter) -> Self {
        ThetaFockSpace {
            chi,
            shell_cap: SumConfig::from_env().shell_cap,
        }
    }

    pub fn weierstrass(lattice: Lattice, nu: f64) -> Result<Self> {
        Ok(Self::new(PseudoCharacter::weierstrass(lattice, nu)?))
    }

    /// The critical density `ν = π/S` with the Weierstrass character.
    pub fn von_neumann(lattice: Lattice) -> Result<Self> {
        Self::weierstrass(lattice, PI / lattice.cell_area())
    }

    /// The space on `λΓ` with `ν/|λ|²` and the transported character.
    pub fn scaled(&self, lambda: Complex64) -> Result<Self> {
        Ok(ThetaFockSpace {
            chi: self.chi.transported(lambda)?,
            shell_cap: self.shell_cap,
        })
    }

    pub fn with_shell_cap(mut self, cap: usize) -> Self {
        self.shell_cap = cap;
        self
    }

    pub fn chi(&self) -> &PseudoCharacter {
        &self.chi
    }

    pub fn lattice(&self) -> &Lattice {
        self.chi.lattice()
    }

    pub fn nu(&self) -> f64 {
        self.chi.nu()
    }

    pub fn dimension(&self) -> u32 {
        self.chi.k()
    }

    pub fn sum_config(&self, eps: f64) -> Result<SumConfig> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidInput(format!("eps must be positive, got {eps}")));
        }
        Ok(SumConfig {
            eps,
            shell_cap: self.shell_cap,
        })
    }

    /// `K(z, w)` by shell summation.
    pub fn kernel_eval(&self, z: Complex64, w: Complex64, eps: f64) -> Result<SumResult> {
        let nu = self.nu();
        let cfg = self.sum_config(eps)?;
        let d = (z - w).norm();
        let zw = nu * (z * w.conj());
        let majorant = move |r: f64| (-0.5 * nu * r * r + nu * d * r + zw.re).exp();
        let s = shell_sum(self.lattice(), &cfg, d, majorant, |p| {
            let g = p.value;
            let e = -0.5 * nu * g.norm_sqr() + nu * (z * g.conj() - w.conj() * g) + zw;
            Ok(self.chi.evaluate(p) * checked_exp(e)?)
        })?;
        Ok(s.scaled(nu / PI))
    }

    /// `∂K(z, w)/∂z`, each term carrying the factor `ν(γ̄ + w̄)`.
    pub fn kernel_dz(&self, z: Complex64, w: Complex64, eps: f64) -> Result<SumResult> {
        let nu = self.nu();
        let cfg = self.sum_config(eps)?;
        let d = (z - w).norm();
        let wn = w.norm();
        let zw = nu * (z * w.conj());
        let majorant = move |r: f64| nu * (r + wn) * (-0.5 * nu * r * r + nu * d * r + zw.re).exp();
        let s = shell_sum(self.lattice(), &cfg, d + nu.powf(-0.5), majorant, |p| {
            let g = p.value;
            let e = -0.5 * nu * g.norm_sqr() + nu * (z * g.conj() - w.conj() * g) + zw;
            Ok(self.chi.evaluate(p) * checked_exp(e)? * (g.conj() + w.conj()) * nu)
        })?;
        Ok(s.scaled(nu / PI))
    }

    /// `P(e_m)(z) = Σ χ(γ)(z−γ)^m e^{−(ν/2)|γ|² + νzγ̄}`.
    pub fn poincare_monomial(&self, m: usize, z: Complex64, eps: f64) -> Result<SumResult> {
        if m > DEFAULT_DEGREE_CAP {
            return Err(Error::Overflow {
                degree: m,
                cap: DEFAULT_DEGREE_CAP,
            });
        }
        let nu = self.nu();
        let cfg = self.sum_config(eps)?;
        let zn = z.norm();
        let mi = m as i32;
        let majorant = move |r: f64| (r + zn).powi(mi) * (-0.5 * nu * r * r + nu * zn * r).exp();
        let r_min = zn + (m as f64 / nu).sqrt();
        shell_sum(self.lattice(), &cfg, r_min, majorant, |p| {
            let g = p.value;
            let e = -0.5 * nu * g.norm_sqr() + nu * z * g.conj();
            Ok(self.chi.evaluate(p) * checked_exp(e)? * (z - g).powi(mi))
        })
    }

    /// `(ν/π) Σ_{m ≤ M} P(e_m)(z)(νw̄)^m/m!`.
    pub fn kernel_via_poincare(&self, z: Complex64, w: Complex64, max_m: usize, eps: f64) -> Result<Complex64> {
        let nu = self.nu();
        let mut total = Complex64::new(0.0, 0.0);
        let mut factor = Complex64::new(1.0, 0.0);
        for m in 0..=max_m {
            total += self.poincare_monomial(m, z, eps)?.value * factor;
            factor *= w.conj() * nu / (m + 1) as f64;
        }
        Ok(total * (nu / PI))
    }

    /// Coefficients of the double Taylor series of `K`, for `m ≤ M`, `n ≤ N`,
    /// `m + n ≤` the degree cap.
    pub fn kernel_series(&self, max_m: usize, max_n: usize, eps: f64) -> Result<KernelSeries> {
        let max_m = max_m.min(DEFAULT_DEGREE_CAP);
        let max_n = max_n.min(DEFAULT_DEGREE_CAP);
        let table = coeff_table(self, max_m, max_n, 0, 0, DEFAULT_DEGREE_CAP, eps)?;
        Ok(KernelSeries {
            nu: self.nu(),
            max_m,
            max_n,
            coeffs: table.into_iter().map(|r| r.map(|s| s.value)).collect(),
        })
    }

    pub fn kernel_eval_series(
        &self,
        z: Complex64,
        w: Complex64,
        max_m: usize,
        max_n: usize,
        eps: f64,
    ) -> Result<Complex64> {
        Ok(self.kernel_series(max_m, max_n, eps)?.evaluate(z, w))
    }

    /// `|K(z+γ, w+γ′) − χ(γ)e^{ν|γ|²/2+νzγ̄} K(z,w) conj(χ(γ′)) e^{ν|γ′|²/2+νw̄γ′}| / max(1, |rhs|)`.
    pub fn bi_invariance_residual(
        &self,
        z: Complex64,
        w: Complex64,
        gamma: &LatticePoint,
        gamma2: &LatticePoint,
        eps: f64,
    ) -> Result<f64> {
        let nu = self.nu();
        let lhs = self.kernel_eval(z + gamma.value, w + gamma2.value, eps)?.value;
        let k = self.kernel_eval(z, w, eps)?.value;
        let (g, h) = (gamma.value, gamma2.value);
        let e = 0.5 * nu * (g.norm_sqr() + h.norm_sqr()) + nu * (z * g.conj() + w.conj() * h);
        let rhs = self.chi.evaluate(gamma) * self.chi.evaluate(gamma2).conj() * k * checked_exp(e)?;
        Ok((lhs - rhs).norm() / rhs.norm().max(1.0))
    }

    /// Reproducing property for `f = P(e_m)`: quadrature of
    /// `K(z,w) f(w) e^{−ν|w|²}` over one cell against `f(z)`.
    pub fn reproducing_residual(&self, m: usize, z: Complex64, quad_n: usize, eps: f64) -> Result<f64> {
        if quad_n < 8 {
            return Err(Error::InvalidInput(format!("quadrature needs at least 8 nodes, got {quad_n}")));
        }
        let nu = self.nu();
        let rule = GaussLegendre::new(quad_n.try_into().expect("nonzero node count"));
        let nodes: Vec<(f64, f64)> = rule
            .nodes()
            .zip(rule.weights())
            .map(|(x, w)| (0.5 * (x + 1.0), 0.5 * w))
            .collect();
        let cell = FundamentalCell::centered(*self.lattice());
        let pairs: Vec<(usize, usize)> = (0..quad_n).flat_map(|i| (0..quad_n).map(move |j| (i, j))).collect();
        let terms: Vec<Complex64> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (s, ws) = nodes[i];
                let (t, wt) = nodes[j];
                let w = cell.at(s, t);
                let k = self.kernel_eval(z, w, eps)?.value;
                let f = self.poincare_monomial(m, w, eps)?.value;
                Ok(k * f * (-nu * w.norm_sqr()).exp() * (ws * wt))
            })
            .collect::<Result<_>>()?;
        let mut acc = crate::sum::CompensatedSum::new();
        for t in terms {
            acc.add(t);
        }
        let integral = acc.value() * self.lattice().cell_area();
        let f = self.poincare_monomial(m, z, eps)?.value;
        Ok((integral - f).norm() / f.norm().max(1.0))
    }
}

/// Truncated double series `K = (ν/π) Σ (−1)^m a_{m,n} z^n w̄^m/(m!n!)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSeries {
    pub nu: f64,
    pub max_m: usize,
    pub max_n: usize,
    /// `a_{m,n}` row-major in `m`; `None` past the degree cap.
    coeffs: Vec<Option<Complex64>>,
}

impl KernelSeries {
    pub fn coeff(&self, m: usize, n: usize) -> Option<Complex64> {
        self.coeffs[m * (self.max_n + 1) + n]
    }

    pub fn evaluate(&self, z: Complex64, w: Complex64) -> Complex64 {
        let wb = w.conj();
        let mut total = crate::sum::CompensatedSum::new();
        let mut wm = Complex64::new(1.0, 0.0); // (−w̄)^m/m!
        for m in 0..=self.max_m {
            let mut zn = Complex64::new(1.0, 0.0); // z^n/n!
            for n in 0..=self.max_n {
                if let Some(a) = self.coeff(m, n) {
                    total.add(a * wm * zn);
                }
                zn *= z / (n + 1) as f64;
            }
            wm *= -wb / (m + 1) as f64;
        }
        total.value() * (self.nu / PI)
    }
}
