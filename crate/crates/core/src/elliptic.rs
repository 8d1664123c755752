//! Jacobi theta constants, Weierstrass σ and ζ for `Γ = Zω₁ + Zω₂`,
//! the invariant μ and the modified sigma function `σ̃ = e^{−μz²/2}σ`.
//!
//! σ is evaluated through θ₁ with a short base period `a` and
//! `τ = b/a`, `Im τ > 0`:
//!
//! ```text
//! σ(z) = (a/π)·exp(η(a)z²/(2a))·θ₁(πz/a)/θ₁'(0),   η(a) = −π²θ₁'''(0)/(3a·θ₁'(0))
//! ```
//!
//! after reducing `z` to the centered cell with
//! `σ(z₀+γ) = ε(γ)·exp(η(γ)(z₀+γ/2))·σ(z₀)`, `ε(γ) = −1` unless `γ ∈ 2Γ`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::coeffs::gaussian_char_sum;
use crate::error::{Error, Result};
use crate::lattice::{FundamentalCell, Lattice, LatticePoint};

const SERIES_REL_TOL: f64 = 1e-17;
const MAX_TERMS: usize = 100_000;
const MU_TOL: f64 = 1e-8;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Nome `q` with `|q| < 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Nome(Complex64);

impl Nome {
    pub fn new(q: Complex64) -> Result<Self> {
        if q.norm().is_nan() || q.norm() >= 1.0 {
            return Err(Error::NomeOutOfRange { modulus: q.norm() });
        }
        Ok(Nome(q))
    }

    pub fn real(q: f64) -> Result<Self> {
        Self::new(c(q, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    /// `q^e` on the principal branch.
    fn pow(&self, e: f64) -> Complex64 {
        if self.0 == c(0.0, 0.0) {
            return c(0.0, 0.0);
        }
        (self.0.ln() * e).exp()
    }

    /// `θ₂(0, q) = 2Σ_{n≥0} q^{(n+½)²}`.
    pub fn theta2(&self) -> Complex64 {
        series(|n| self.pow((n as f64 + 0.5).powi(2)) * 2.0, 0)
    }

    /// `θ₃(0, q) = 1 + 2Σ_{n≥1} q^{n²}`.
    pub fn theta3(&self) -> Complex64 {
        c(1.0, 0.0) + series(|n| self.pow((n * n) as f64) * 2.0, 1)
    }
}

pub fn theta2(q: Complex64) -> Result<Complex64> {
    Ok(Nome::new(q)?.theta2())
}

pub fn theta3(q: Complex64) -> Result<Complex64> {
    Ok(Nome::new(q)?.theta3())
}

/// Sums `term(n)` for `n ≥ start` until a term drops below the relative tolerance.
fn series<F: Fn(usize) -> Complex64>(term: F, start: usize) -> Complex64 {
    let mut sum = c(0.0, 0.0);
    for n in start..start + MAX_TERMS {
        let t = term(n);
        sum += t;
        if t.norm() <= SERIES_REL_TOL * sum.norm() || t == c(0.0, 0.0) {
            break;
        }
    }
    sum
}

/// Values of the printed identity and of the split sums that derive it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaIdentityReport {
    pub nu: f64,
    pub theta2: f64,
    pub theta3: f64,
    /// `|θ₂² − θ₃² − 2θ₂θ₃|` at `q = e^{−2ν}`.
    pub printed_residual: f64,
    /// `θ₃² − θ₂² − 2θ₂θ₃`, the combination the split sums actually produce.
    pub corrected_combination: f64,
    /// Brute-force `Σ e^{−ν(m²+n²)/2}` over odd/odd pairs, `|m|,|n| ≤ 30`.
    pub split_odd_odd: f64,
    pub split_even_even: f64,
    /// Both parities mixed; the two orderings together.
    pub split_mixed: f64,
    /// `even_even − odd_odd − mixed`.
    pub split_combination: f64,
    /// `Σ (−1)^{m+n+mn} e^{−ν(m²+n²)/2}` by shell summation.
    pub char_sum: f64,
    pub split_vs_char_sum: f64,
}

/// `|θ₂² − θ₃² − 2θ₂θ₃|` at nome `e^{−2ν}`.
pub fn theta_identity_residual(nu: f64) -> Result<f64> {
    let q = Nome::real((-2.0 * nu).exp())?;
    let (t2, t3) = (q.theta2().re, q.theta3().re);
    Ok((t2 * t2 - t3 * t3 - 2.0 * t2 * t3).abs())
}

pub fn theta_identity_report(nu: f64) -> Result<ThetaIdentityReport> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::InvalidInput(format!("nu must be positive, got {nu}")));
    }
    let q = Nome::real((-2.0 * nu).exp())?;
    let (t2, t3) = (q.theta2().re, q.theta3().re);
    let (mut oo, mut ee, mut mixed) = (0.0, 0.0, 0.0);
    for m in -30i64..=30 {
        for n in -30i64..=30 {
            let w = (-0.5 * nu * (m * m + n * n) as f64).exp();
            match (m.rem_euclid(2), n.rem_euclid(2)) {
                (1, 1) => oo += w,
                (0, 0) => ee += w,
                _ => mixed += w,
            }
        }
    }
    let combination = ee - oo - mixed;
    let char_sum = gaussian_char_sum(nu / PI)?;
    Ok(ThetaIdentityReport {
        nu,
        theta2: t2,
        theta3: t3,
        printed_residual: (t2 * t2 - t3 * t3 - 2.0 * t2 * t3).abs(),
        corrected_combination: t3 * t3 - t2 * t2 - 2.0 * t2 * t3,
        split_odd_odd: oo,
        split_even_even: ee,
        split_mixed: mixed,
        split_combination: combination,
        char_sum,
        split_vs_char_sum: (combination - char_sum).abs(),
    })
}

/// Quasi-periods and θ₁ data for the Weierstrass functions of a lattice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeierstrassData {
    lattice: Lattice,
    pub eta1: Complex64,
    pub eta2: Complex64,
    a: Complex64,
    eta_a: Complex64,
    /// `iπτ`, so that `q^x = exp(x·iπτ)`.
    log_q: Complex64,
    theta1_prime0: Complex64,
    cell: FundamentalCell,
}

impl WeierstrassData {
    pub fn new(lattice: Lattice) -> Result<Self> {
        let (w1, w2) = (lattice.omega1(), lattice.omega2());
        // base period: the shorter generator; the other one oriented so Im(b/a) > 0
        // and shifted to |Re τ| ≤ 1/2. Coordinates of (w1, w2) in (a, b) are kept.
        let (a, b0, a_is_w2) = if w2.norm() <= w1.norm() {
            (w2, w1, true)
        } else {
            (w1, -w2, false)
        };
        let r = (b0 / a).re.round();
        let b = b0 - a * r;
        let tau = b / a;
        let log_q = c(0.0, PI) * tau;
        if log_q.re.is_nan() || log_q.re >= 0.0 {
            return Err(Error::NomeOutOfRange { modulus: log_q.re.exp() });
        }
        let (d1, d3) = theta1_odd_derivatives(log_q);
        let eta_a = -(PI * PI) * d3 / (a * d1 * 3.0);
        // Legendre: η(a)b − η(b)a = 2πi
        let eta_b = (eta_a * b - c(0.0, 2.0 * PI)) / a;
        // b0 = b + r·a
        let eta_b0 = eta_b + eta_a * r;
        let (eta1, eta2) = if a_is_w2 {
            (eta_b0, eta_a)
        } else {
            (eta_a, -eta_b0)
        };
        Ok(WeierstrassData {
            lattice,
            eta1,
            eta2,
            a,
            eta_a,
            log_q,
            theta1_prime0: d1,
            cell: FundamentalCell::centered(lattice),
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// `η(ω₁)·ω₂ − η(ω₂)·ω₁`; equals `−2πi` for the stored orientation.
    pub fn legendre(&self) -> Complex64 {
        self.eta1 * self.lattice.omega2() - self.eta2 * self.lattice.omega1()
    }

    fn eta_mn(&self, m: i64, n: i64) -> Complex64 {
        self.eta1 * m as f64 + self.eta2 * n as f64
    }

    /// `η(γ)`, additive in γ.
    pub fn quasi_period(&self, gamma: &LatticePoint) -> Result<Complex64> {
        if gamma.m == 0 && gamma.n == 0 {
            return Err(Error::ZeroGamma);
        }
        Ok(self.eta_mn(gamma.m, gamma.n))
    }

    fn q_pow(&self, x: f64) -> Complex64 {
        (self.log_q * x).exp()
    }

    /// `(θ₁(v), θ₁'(v))`.
    fn theta1_pair(&self, v: Complex64) -> (Complex64, Complex64) {
        let mut th = c(0.0, 0.0);
        let mut dth = c(0.0, 0.0);
        let mut scale = 0.0;
        for n in 0..MAX_TERMS {
            let k = (2 * n + 1) as f64;
            let sign = if n % 2 == 0 { 2.0 } else { -2.0 };
            let qn = self.q_pow((n as f64 + 0.5).powi(2)) * sign;
            let (s, co) = ((v * k).sin(), (v * k).cos());
            let t = qn * s;
            let dt = qn * co * k;
            th += t;
            dth += dt;
            let size = qn.norm() * (k * v.im.abs()).exp();
            scale += size;
            if n > 0 && size * k <= SERIES_REL_TOL * scale {
                break;
            }
        }
        (th, dth)
    }

    fn sigma_raw(&self, z: Complex64) -> Complex64 {
        let v = z * PI / self.a;
        let (th, _) = self.theta1_pair(v);
        self.a / PI * (self.eta_a * z * z / (self.a * 2.0)).exp() * th / self.theta1_prime0
    }

    fn zeta_raw(&self, z: Complex64) -> Complex64 {
        let v = z * PI / self.a;
        let (th, dth) = self.theta1_pair(v);
        self.eta_a * z / self.a + dth / th * PI / self.a
    }

    /// Weierstrass σ with simple zeros exactly on Γ.
    pub fn sigma(&self, z: Complex64) -> Complex64 {
        let (z0, g) = self.cell.reduce(z);
        let base = self.sigma_raw(z0);
        if g.m == 0 && g.n == 0 {
            return base;
        }
        let eps = weierstrass_sign(g.m, g.n);
        base * eps * (self.eta_mn(g.m, g.n) * (z0 + g.value * 0.5)).exp()
    }

    /// `ζ = σ'/σ`.
    pub fn zeta(&self, z: Complex64) -> Result<Complex64> {
        let (z0, g) = self.cell.reduce(z);
        let tiny = 1e-14 * self.a.norm();
        if z0.norm() <= tiny {
            return Err(Error::PoleAtLatticePoint { m: g.m, n: g.n });
        }
        Ok(self.zeta_raw(z0) + self.eta_mn(g.m, g.n))
    }

    /// Solves `η(ω_ℓ) = μω_ℓ + ν·conj(ω_ℓ)`, `ℓ = 1, 2`, in the
    /// one-dimensional case `ν = π/S`.
    pub fn mu_invariant(&self, nu: f64) -> Result<MuInvariant> {
        let k = self.lattice.dimension(nu)?;
        if k != 1 {
            return Err(Error::NotOneDimensional { k });
        }
        let (w1, w2) = (self.lattice.omega1(), self.lattice.omega2());
        let mu1 = (self.eta1 - w1.conj() * nu) / w1;
        let mu2 = (self.eta2 - w2.conj() * nu) / w2;
        if (mu1 - mu2).norm() > MU_TOL * mu1.norm().max(mu2.norm()).max(1.0) {
            return Err(Error::InconsistentMu {
                mu1: format!("{mu1}"),
                mu2: format!("{mu2}"),
            });
        }
        let num = w1.conj() * (self.eta1 - w1.conj() * nu) + w2.conj() * (self.eta2 - w2.conj() * nu);
        let mu = num / (w1.norm_sqr() + w2.norm_sqr());
        Ok(MuInvariant { mu, nu })
    }

    /// `σ̃(z) = e^{−μz²/2}σ(z)`.
    pub fn modified_sigma(&self, mu: &MuInvariant, z: Complex64) -> Complex64 {
        let (z0, g) = self.cell.reduce(z);
        if g.m == 0 && g.n == 0 {
            return (-mu.mu * z * z * 0.5).exp() * self.sigma_raw(z0);
        }
        // combine exponents before exponentiating to avoid overflow far from the cell
        let expo = -mu.mu * z * z * 0.5 + self.eta_mn(g.m, g.n) * (z0 + g.value * 0.5);
        self.sigma_raw(z0) * weierstrass_sign(g.m, g.n) * expo.exp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MuInvariant {
    pub mu: Complex64,
    pub nu: f64,
}

fn weierstrass_sign(m: i64, n: i64) -> f64 {
    if (m + n + m * n).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `(θ₁'(0), θ₁'''(0))` for `q = exp(log_q)`.
fn theta1_odd_derivatives(log_q: Complex64) -> (Complex64, Complex64) {
    let mut d1 = c(0.0, 0.0);
    let mut d3 = c(0.0, 0.0);
    for n in 0..MAX_TERMS {
        let k = (2 * n + 1) as f64;
        let sign = if n % 2 == 0 { 2.0 } else { -2.0 };
        let qn = (log_q * (n as f64 + 0.5).powi(2)).exp() * sign;
        d1 += qn * k;
        d3 -= qn * k.powi(3);
        if (qn * k.powi(3)).norm() <= SERIES_REL_TOL * d3.norm() {
            break;
        }
    }
    (d1, d3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;

    /// Truncated Weierstrass product over `max(|m|,|n|) ≤ r`.
    fn sigma_product(l: &Lattice, z: Complex64, r: usize) -> Complex64 {
        let mut log = z.ln();
        for k in 1..=r {
            for p in l.shell_iter(k) {
                let u = z / p.value;
                log += (c(1.0, 0.0) - u).ln() + u + u * u * 0.5;
            }
        }
        log.exp()
    }

    #[test]
    fn theta_constants() {
        assert_eq!(theta3(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(theta2(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let q = (-2.0f64).exp();
        let direct = 1.0 + 2.0 * (1..10).map(|n| q.powi(n * n)).sum::<f64>();
        let t3 = theta3(c(q, 0.0)).unwrap();
        assert!((t3.re - direct).abs() < 1e-15);
        assert!((t3.re - 1.2713415).abs() < 1e-7);
        assert!(matches!(theta2(c(1.0, 0.0)), Err(Error::NomeOutOfRange { .. })));
    }

    #[test]
    fn square_lattice_quasi_periods() {
        let w = WeierstrassData::new(Lattice::square()).unwrap();
        // ω₁ = i, ω₂ = 1
        assert!((w.eta2 - c(PI, 0.0)).norm() < 1e-12);
        assert!((w.eta1 - c(0.0, -PI)).norm() < 1e-12);
        assert!((w.legendre() - c(0.0, -2.0 * PI)).norm() < 1e-12);
        let g = w.lattice().point(1, 1);
        assert_eq!(w.quasi_period(&g).unwrap(), w.eta1 + w.eta2);
        assert_eq!(w.quasi_period(&w.lattice().point(0, 0)), Err(Error::ZeroGamma));
    }

    #[test]
    fn sigma_matches_product() {
        for l in [Lattice::square(), Lattice::new(c(1.0, 0.0), c(0.3, 1.1)).unwrap()] {
            let w = WeierstrassData::new(l).unwrap();
            for z in [c(0.21, 0.13), c(-0.3, 0.25), c(0.05, -0.4)] {
                let s = w.sigma(z);
                let p = sigma_product(&l, z, 40);
                assert!((s - p).norm() < 1e-3 * p.norm(), "{s} {p}");
            }
        }
    }

    #[test]
    fn sigma_basic_properties() {
        let l = Lattice::new(c(1.0, 0.0), c(0.3, 1.1)).unwrap();
        let w = WeierstrassData::new(l).unwrap();
        assert_eq!(w.sigma(c(0.0, 0.0)), c(0.0, 0.0));
        let h = 1e-6;
        let d = (w.sigma(c(h, 0.0)) - w.sigma(c(-h, 0.0))) / (2.0 * h);
        assert!((d - c(1.0, 0.0)).norm() < 1e-8);
        for z in [c(0.4, 0.2), c(1.7, -2.3)] {
            assert!((w.sigma(-z) + w.sigma(z)).norm() < 1e-12 * w.sigma(z).norm());
        }
        for m in -2..=2 {
            for n in -2..=2 {
                let g = l.point(m, n).value;
                assert!(w.sigma(g).norm() < 1e-10);
            }
        }
        assert!(w.sigma(l.point(1, 1).value * 0.5).norm() > 1e-6);
        assert!(matches!(w.zeta(l.point(1, -1).value), Err(Error::PoleAtLatticePoint { m: 1, n: -1 })));
    }

    #[test]
    fn zeta_is_log_derivative() {
        let w = WeierstrassData::new(Lattice::new(c(1.0, 0.0), c(0.3, 1.1)).unwrap()).unwrap();
        for z in [c(0.3, 0.2), c(1.4, 0.9)] {
            let h = 1e-5;
            let d = (w.sigma(z + h) - w.sigma(z - h)) / (2.0 * h);
            let zeta = w.zeta(z).unwrap();
            assert!((zeta - d / w.sigma(z)).norm() < 1e-7 * zeta.norm().max(1.0));
        }
    }

    #[test]
    fn homogeneity() {
        let l = Lattice::new(c(1.0, 0.0), c(0.3, 1.1)).unwrap();
        let lam = c(0.7, -1.2);
        let w = WeierstrassData::new(l).unwrap();
        let ws = WeierstrassData::new(l.scaled(lam).unwrap()).unwrap();
        for z in [c(0.2, 0.3), c(-0.6, 0.1), c(1.3, 2.2)] {
            let lhs = ws.sigma(lam * z);
            let rhs = lam * w.sigma(z);
            assert!((lhs - rhs).norm() < 1e-9 * rhs.norm());
        }
    }

    #[test]
    fn mu_square_and_scaled() {
        let w = WeierstrassData::new(Lattice::square()).unwrap();
        assert!(w.mu_invariant(PI).unwrap().mu.norm() < 1e-10);
        let lam = c(1.3, 0.4);
        let ws = WeierstrassData::new(Lattice::square().scaled(lam).unwrap()).unwrap();
        assert!(ws.mu_invariant(PI / lam.norm_sqr()).unwrap().mu.norm() < 1e-10);
        assert!(matches!(w.mu_invariant(2.0 * PI), Err(Error::NotOneDimensional { k: 2 })));
    }

    #[test]
    fn modified_sigma_functional_equation() {
        let l = Lattice::new(c(1.0, 0.0), c(0.3, 1.1)).unwrap();
        let nu = PI / 1.1;
        let w = WeierstrassData::new(l).unwrap();
        let mu = w.mu_invariant(nu).unwrap();
        assert_eq!(w.modified_sigma(&mu, c(0.0, 0.0)), c(0.0, 0.0));
        for z in [c(0.1, 0.2), c(-0.35, 0.4), c(0.6, -0.1)] {
            for g in l.shell(1) {
                let lhs = w.modified_sigma(&mu, z + g.value);
                let chi = weierstrass_sign(g.m, g.n);
                let rhs = w.modified_sigma(&mu, z) * chi * (g.value.conj() * nu * (z + g.value * 0.5)).exp();
                assert!((lhs - rhs).norm() < 1e-8 * rhs.norm().max(1.0), "{lhs} {rhs}");
            }
        }
    }

    #[test]
    fn theta_identity_limits() {
        assert!((theta_identity_residual(400.0).unwrap() - 1.0).abs() < 1e-12);
        let r = theta_identity_report(PI).unwrap();
        assert!(r.corrected_combination.abs() < 1e-14);
        assert!(r.printed_residual > 0.1);
        assert!(r.split_vs_char_sum < 1e-12);
    }
}
