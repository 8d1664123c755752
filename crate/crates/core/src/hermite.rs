//! Weighted complex Hermite polynomials
//!
//! ```text
//! H^ν_{m,n}(ξ, ξ̄) = (−1)^{m+n} e^{ν|ξ|²} ∂^{m+n}/∂ξ̄^m ∂ξ^n e^{−ν|ξ|²}
//!                 = m! n! ν^{m+n} Σ_k (−1)^k / (ν^k k!) · ξ^{m−k}/(m−k)! · ξ̄^{n−k}/(n−k)!
//! ```
//!
//! with exponential generating function `exp(ν(aξ + bξ̄ − ab)) = Σ a^m b^n/(m!n!) H_{m,n}`.
//! Differentiating that in `a` gives the three-term recurrence used for tables,
//! `H_{m+1,n} = νξ·H_{m,n} − νn·H_{m,n−1}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

pub const DEFAULT_DEGREE_CAP: usize = 60;

fn check_degree(m: usize, n: usize, cap: usize) -> Result<()> {
    if m + n > cap {
        Err(Error::Overflow { degree: m + n, cap })
    } else {
        Ok(())
    }
}

/// `H^ν_{m,n}(ξ, conj ξ)` from the explicit finite sum.
pub fn hermite_eval(nu: f64, m: usize, n: usize, xi: Complex64) -> Result<Complex64> {
    hermite_eval_capped(nu, m, n, xi, DEFAULT_DEGREE_CAP)
}

pub fn hermite_eval_capped(nu: f64, m: usize, n: usize, xi: Complex64, cap: usize) -> Result<Complex64> {
    check_degree(m, n, cap)?;
    let xib = xi.conj();
    let mut acc = CompensatedSum::new();
    // c_k = (−1)^k C(m,k) C(n,k) k! ν^{m+n−k}
    let mut coef = nu.powi((m + n) as i32);
    for k in 0..=m.min(n) {
        acc.add(xi.powi((m - k) as i32) * xib.powi((n - k) as i32) * coef);
        coef *= -(((m - k) * (n - k)) as f64) / ((k + 1) as f64 * nu);
    }
    Ok(acc.value())
}

/// `Σ_k |c_k| r^{m+n−2k}`, a bound on `|H^ν_{m,n}(ξ)|` for `|ξ| ≤ r`;
/// a polynomial in `r` with nonnegative coefficients and degree `m+n`.
pub fn hermite_majorant(nu: f64, m: usize, n: usize, r: f64) -> f64 {
    let mut coef = nu.powi((m + n) as i32);
    let mut total = 0.0;
    for k in 0..=m.min(n) {
        total += coef * r.powi((m + n - 2 * k) as i32);
        coef *= (((m - k) * (n - k)) as f64) / ((k + 1) as f64 * nu);
    }
    total
}

/// Values `H^ν_{m,n}(ξ)` for `0 ≤ m ≤ max_m`, `0 ≤ n ≤ max_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteTable {
    pub nu: f64,
    pub max_m: usize,
    pub max_n: usize,
    pub xi: Complex64,
    values: Vec<Complex64>,
}

impl HermiteTable {
    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.values[m * (self.max_n + 1) + n]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Fills the table from the first row `H_{0,n} = (νξ̄)^n` with the
/// recurrence in `m`.
pub fn hermite_table(nu: f64, max_m: usize, max_n: usize, xi: Complex64) -> Result<HermiteTable> {
    hermite_table_capped(nu, max_m, max_n, xi, DEFAULT_DEGREE_CAP)
}

pub fn hermite_table_capped(
    nu: f64,
    max_m: usize,
    max_n: usize,
    xi: Complex64,
    cap: usize,
) -> Result<HermiteTable> {
    check_degree(max_m, max_n, cap)?;
    let width = max_n + 1;
    let mut values = vec![Complex64::new(0.0, 0.0); (max_m + 1) * width];
    let step = xi.conj() * nu;
    let mut row0 = Complex64::new(1.0, 0.0);
    for v in values.iter_mut().take(width) {
        *v = row0;
        row0 *= step;
    }
    let nxi = xi * nu;
    for m in 0..max_m {
        for n in 0..=max_n {
            let mut next = nxi * values[m * width + n];
            if n > 0 {
                next -= values[m * width + n - 1] * (nu * n as f64);
            }
            values[(m + 1) * width + n] = next;
        }
    }
    Ok(HermiteTable {
        nu,
        max_m,
        max_n,
        xi,
        values,
    })
}

/// `|exp(ν(aξ + bξ̄ − ab)) − Σ_{m≤M,n≤N} a^m b^n/(m!n!) H_{m,n}(ξ)|`.
pub fn genfun2_residual(
    nu: f64,
    a: Complex64,
    b: Complex64,
    xi: Complex64,
    max_m: usize,
    max_n: usize,
) -> Result<f64> {
    let table = hermite_table(nu, max_m, max_n, xi)?;
    let closed = (nu * (a * xi + b * xi.conj() - a * b)).exp();
    let mut acc = CompensatedSum::new();
    let mut am = Complex64::new(1.0, 0.0); // a^m / m!
    for m in 0..=max_m {
        let mut bn = Complex64::new(1.0, 0.0); // b^n / n!
        for n in 0..=max_n {
            acc.add(am * bn * table.get(m, n));
            bn *= b / (n + 1) as f64;
        }
        am *= a / (m + 1) as f64;
    }
    Ok((closed - acc.value()).norm())
}

/// `|ν^n (ξ̄ − z)^n e^{νξz} − Σ_{m≤M} z^m/m! H_{m,n}(ξ)|`.
pub fn genfun1_residual(nu: f64, z: Complex64, xi: Complex64, n: usize, max_m: usize) -> Result<f64> {
    let table = hermite_table(nu, max_m, n, xi)?;
    let closed = ((xi.conj() - z) * nu).powi(n as i32) * (nu * xi * z).exp();
    let mut acc = CompensatedSum::new();
    let mut zm = Complex64::new(1.0, 0.0);
    for m in 0..=max_m {
        acc.add(zm * table.get(m, n));
        zm *= z / (m + 1) as f64;
    }
    Ok((closed - acc.value()).norm())
}
