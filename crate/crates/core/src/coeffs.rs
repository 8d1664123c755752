//! Hermite–Taylor lattice coefficients
//!
//! ```text
//! a^{p,q}_{m,n} = Σ_γ χ(γ) γ^p γ̄^q e^{−(ν/2)|γ|²} H^ν_{m,n}(γ)
//! ```
//!
//! and the identities they satisfy: parity vanishing for real χ, conjugation
//! symmetry, the two recurrences in `(p, q)` and homogeneity under `Γ → λΓ`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermite::{hermite_eval_capped, hermite_majorant, hermite_table_capped, DEFAULT_DEGREE_CAP};
use crate::kernel::ThetaFockSpace;
use crate::lattice::Lattice;
use crate::sum::{shell_sum, shell_sum_many, SumConfig, SumResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CoeffIndex {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
}

impl CoeffIndex {
    pub fn new(m: usize, n: usize, p: usize, q: usize) -> Self {
        CoeffIndex { m, n, p, q }
    }

    pub fn total(&self) -> usize {
        self.m + self.n + self.p + self.q
    }

    /// `(n, m, q, p)`: the tuple paired with this one under conjugation.
    pub fn swapped(&self) -> Self {
        CoeffIndex::new(self.n, self.m, self.q, self.p)
    }
}

fn coeff_majorant(nu: f64, idx: CoeffIndex, r: f64) -> f64 {
    r.powi((idx.p + idx.q) as i32) * hermite_majorant(nu, idx.m, idx.n, r) * (-0.5 * nu * r * r).exp()
}

fn coeff_r_min(nu: f64, idx: CoeffIndex) -> f64 {
    (idx.total() as f64 / nu).sqrt()
}

/// One coefficient by shell summation.
pub fn coeff(space: &ThetaFockSpace, idx: CoeffIndex, eps: f64) -> Result<SumResult> {
    let cap = DEFAULT_DEGREE_CAP;
    if idx.total() > cap {
        return Err(Error::Overflow {
            degree: idx.total(),
            cap,
        });
    }
    let nu = space.nu();
    let cfg = space.sum_config(eps)?;
    let chi = space.chi();
    shell_sum(
        space.lattice(),
        &cfg,
        coeff_r_min(nu, idx),
        |r| coeff_majorant(nu, idx, r),
        |pt| {
            let g = pt.value;
            let h = hermite_eval_capped(nu, idx.m, idx.n, g, cap)?;
            let mono = g.powi(idx.p as i32) * g.conj().powi(idx.q as i32);
            Ok(chi.evaluate(pt) * mono * h * (-0.5 * nu * g.norm_sqr()).exp())
        },
    )
}

/// `a^{p,q}_{m,n}` for `m ≤ M`, `n ≤ N` at fixed `(p, q)`, sharing one lattice
/// walk. Entries with `m+n+p+q > cap` are `None`. Row-major in `m`.
pub fn coeff_table(
    space: &ThetaFockSpace,
    max_m: usize,
    max_n: usize,
    p: usize,
    q: usize,
    cap: usize,
    eps: f64,
) -> Result<Vec<Option<SumResult>>> {
    let nu = space.nu();
    let cfg = space.sum_config(eps)?;
    let chi = space.chi();
    let width = max_n + 1;
    let slots: Vec<CoeffIndex> = (0..=max_m)
        .flat_map(|m| (0..=max_n).map(move |n| CoeffIndex::new(m, n, p, q)))
        .filter(|i| i.total() <= cap)
        .collect();
    let mut out = vec![None; (max_m + 1) * width];
    if slots.is_empty() {
        return Ok(out);
    }
    let r_min: Vec<f64> = slots.iter().map(|&i| coeff_r_min(nu, i)).collect();
    let sums = shell_sum_many(
        space.lattice(),
        &cfg,
        &r_min,
        |i, r| coeff_majorant(nu, slots[i], r),
        |pt, vals| {
            let g = pt.value;
            // entries past the cap may overflow; they feed no entry below it
            let table = hermite_table_capped(nu, max_m, max_n, g, max_m + max_n)?;
            let w = chi.evaluate(pt)
                * g.powi(p as i32)
                * g.conj().powi(q as i32)
                * (-0.5 * nu * g.norm_sqr()).exp();
            for (v, idx) in vals.iter_mut().zip(&slots) {
                *v = w * table.get(idx.m, idx.n);
            }
            Ok(())
        },
    )?;
    for (idx, s) in slots.iter().zip(sums) {
        out[idx.m * width + idx.n] = Some(s);
    }
    Ok(out)
}

/// Every coefficient with total degree `≤ degree`.
pub fn coeffs_up_to(space: &ThetaFockSpace, degree: usize, eps: f64) -> Result<BTreeMap<CoeffIndex, SumResult>> {
    if degree > DEFAULT_DEGREE_CAP {
        return Err(Error::Overflow {
            degree,
            cap: DEFAULT_DEGREE_CAP,
        });
    }
    let mut all = BTreeMap::new();
    for p in 0..=degree {
        for q in 0..=degree - p {
            let rest = degree - p - q;
            let table = coeff_table(space, rest, rest, p, q, degree, eps)?;
            for m in 0..=rest {
                for n in 0..=rest {
                    if let Some(s) = table[m * (rest + 1) + n] {
                        all.insert(CoeffIndex::new(m, n, p, q), s);
                    }
                }
            }
        }
    }
    Ok(all)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParityEntry {
    pub index: CoeffIndex,
    pub abs: f64,
    pub mass: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParityReport {
    pub degree: usize,
    /// All odd-total tuples.
    pub odd: Vec<ParityEntry>,
    /// `max |a| / mass` over the odd tuples.
    pub max_odd_ratio: f64,
    /// `max |a|` over odd tuples divided by `max(1, max |a|)` over even tuples.
    pub max_odd_vs_even: f64,
    /// Largest even-total coefficient; nonzero even coefficients are allowed.
    pub even_witness: Option<ParityEntry>,
}

/// Odd-total coefficients, which vanish for real characters.
pub fn parity_report(space: &ThetaFockSpace, degree: usize, eps: f64) -> Result<ParityReport> {
    if !space.chi().is_real() {
        return Err(Error::NotRealCharacter);
    }
    let all = coeffs_up_to(space, degree, eps)?;
    let mut odd = Vec::new();
    let mut even_witness: Option<ParityEntry> = None;
    for (idx, s) in &all {
        let e = ParityEntry {
            index: *idx,
            abs: s.value.norm(),
            mass: s.mass,
        };
        if idx.total() % 2 == 1 {
            odd.push(e);
        } else if even_witness.as_ref().is_none_or(|w| e.abs > w.abs) {
            even_witness = Some(e);
        }
    }
    let max_odd_ratio = odd
        .iter()
        .map(|e| if e.mass > 0.0 { e.abs / e.mass } else { 0.0 })
        .fold(0.0, f64::max);
    let max_odd = odd.iter().map(|e| e.abs).fold(0.0, f64::max);
    let even_max = even_witness.as_ref().map_or(0.0, |e| e.abs);
    Ok(ParityReport {
        degree,
        odd,
        max_odd_ratio,
        max_odd_vs_even: max_odd / even_max.max(1.0),
        even_witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConjSymmetry {
    /// `|conj(a^{p,q}_{m,n}) − (−1)^{m+n+p+q} a^{q,p}_{n,m}| / scale`.
    pub swapped: f64,
    /// The same comparison against `a^{p,q}_{m,n}` itself.
    pub unswapped: f64,
    /// Larger of the two masses.
    pub scale: f64,
}

pub fn conj_symmetry_residual(space: &ThetaFockSpace, idx: CoeffIndex, eps: f64) -> Result<ConjSymmetry> {
    let a = coeff(space, idx, eps)?;
    let b = coeff(space, idx.swapped(), eps)?;
    let sign = if idx.total().is_multiple_of(2) { 1.0 } else { -1.0 };
    let scale = a.mass.max(b.mass).max(f64::MIN_POSITIVE);
    Ok(ConjSymmetry {
        swapped: (a.value.conj() - b.value * sign).norm() / scale,
        unswapped: (a.value.conj() - a.value * sign).norm() / scale,
        scale,
    })
}

/// Largest swapped and unswapped conjugation residuals over all tuples of
/// total `≤ degree`, each relative to the larger mass of the pair.
pub fn conj_symmetry_max(space: &ThetaFockSpace, degree: usize, eps: f64) -> Result<ConjSymmetry> {
    let all = coeffs_up_to(space, degree, eps)?;
    let mut worst = ConjSymmetry {
        swapped: 0.0,
        unswapped: 0.0,
        scale: 0.0,
    };
    for (idx, a) in &all {
        let b = &all[&idx.swapped()];
        let sign = if idx.total().is_multiple_of(2) { 1.0 } else { -1.0 };
        let scale = a.mass.max(b.mass).max(f64::MIN_POSITIVE);
        worst.swapped = worst.swapped.max((a.value.conj() - b.value * sign).norm() / scale);
        worst.unswapped = worst.unswapped.max((a.value.conj() - a.value * sign).norm() / scale);
        worst.scale = worst.scale.max(scale);
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RecurrenceReport {
    pub degree: usize,
    /// `ν a^{p+1,q}_{m,n} = a^{p,q}_{m+1,n} + νn a^{p,q}_{m,n−1}`.
    pub raise_p: f64,
    /// `ν a^{p,q+1}_{m,n} = a^{p,q}_{m,n+1} + νm a^{p,q}_{m−1,n}`.
    pub raise_q: f64,
    /// The forms with `p` and `q` exchanged on the left-hand side.
    pub exchanged_raise_q: f64,
    pub exchanged_raise_p: f64,
}

impl RecurrenceReport {
    pub fn max(&self) -> f64 {
        self.raise_p.max(self.raise_q)
    }
}

/// Largest recurrence residual over tuples of total `≤ degree`, each
/// normalized by `max(1, |lhs|)`.
pub fn recurrence_residuals(space: &ThetaFockSpace, degree: usize, eps: f64) -> Result<RecurrenceReport> {
    let all = coeffs_up_to(space, degree + 1, eps)?;
    let nu = space.nu();
    let get = |m: usize, n: usize, p: usize, q: usize| all[&CoeffIndex::new(m, n, p, q)].value;
    let zero = Complex64::new(0.0, 0.0);
    let rel = |lhs: Complex64, rhs: Complex64| (lhs - rhs).norm() / lhs.norm().max(1.0);
    let mut rep = RecurrenceReport {
        degree,
        raise_p: 0.0,
        raise_q: 0.0,
        exchanged_raise_q: 0.0,
        exchanged_raise_p: 0.0,
    };
    for idx in all.keys().filter(|i| i.total() <= degree) {
        let CoeffIndex { m, n, p, q } = *idx;
        let down_n = if n > 0 { get(m, n - 1, p, q) * (nu * n as f64) } else { zero };
        let down_m = if m > 0 { get(m - 1, n, p, q) * (nu * m as f64) } else { zero };
        let up_m = get(m + 1, n, p, q);
        let up_n = get(m, n + 1, p, q);
        let lhs_p = get(m, n, p + 1, q) * nu;
        let lhs_q = get(m, n, p, q + 1) * nu;
        rep.raise_p = rep.raise_p.max(rel(lhs_p, up_m + down_n));
        rep.raise_q = rep.raise_q.max(rel(lhs_q, up_n + down_m));
        rep.exchanged_raise_q = rep.exchanged_raise_q.max(rel(lhs_q, up_m + down_n));
        rep.exchanged_raise_p = rep.exchanged_raise_p.max(rel(lhs_p, up_n + down_m));
    }
    Ok(rep)
}

/// `|a(λΓ) − λ^{p−n} conj(λ)^{q−m} a(Γ)| / max(1, |a(Γ)|)` with the scaled
/// space `(λΓ, ν/|λ|², χ(λ·) = χ)`.
pub fn scaling_residual(space: &ThetaFockSpace, lambda: Complex64, idx: CoeffIndex, eps: f64) -> Result<f64> {
    let scaled = space.scaled(lambda)?;
    let a = coeff(space, idx, eps)?.value;
    let b = coeff(&scaled, idx, eps)?.value;
    let factor = lambda.powi(idx.p as i32 - idx.n as i32) * lambda.conj().powi(idx.q as i32 - idx.m as i32);
    Ok((b - factor * a).norm() / a.norm().max(1.0))
}

/// `Σ_{m,n} (−1)^{m+n+mn} e^{−(tπ/2)(m²+n²)}`.
pub fn gaussian_char_sum(t: f64) -> Result<f64> {
    gaussian_char_sum_result(t).map(|s| s.value.re)
}

pub fn gaussian_char_sum_result(t: f64) -> Result<SumResult> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidInput(format!("t must be positive, got {t}")));
    }
    let a = 0.5 * t * PI;
    shell_sum(
        &Lattice::square(),
        &SumConfig::from_env(),
        0.0,
        |r| (-a * r * r).exp(),
        |pt| {
            let sign = if (pt.m + pt.n + pt.m * pt.n).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            Ok(Complex64::new(sign * (-a * pt.value.norm_sqr()).exp(), 0.0))
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudochar::PseudoCharacter;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn perelomov_sum_vanishes() {
        let sp = ThetaFockSpace::von_neumann(Lattice::square()).unwrap();
        let a = coeff(&sp, CoeffIndex::new(0, 0, 0, 0), 1e-14).unwrap();
        assert!(a.value.norm() < 1e-12 * a.mass);
    }

    #[test]
    fn trivial_character_positive() {
        let one = c(1.0, 0.0);
        let chi = PseudoCharacter::from_generators(Lattice::square(), 2.0 * PI, one, one).unwrap();
        let sp = ThetaFockSpace::new(chi);
        let a = coeff(&sp, CoeffIndex::new(0, 0, 0, 0), 1e-14).unwrap().value;
        assert!(a.re > 1.0 && a.im.abs() < 1e-14);
        // a_{1,1} vanishes here (θ modularity at t = 1); a_{2,2} ≈ 223.170207735
        let a11 = coeff(&sp, CoeffIndex::new(1, 1, 0, 0), 1e-14).unwrap();
        assert!(a11.value.norm() < 1e-12 * a11.mass);
        let a22 = coeff(&sp, CoeffIndex::new(2, 2, 0, 0), 1e-14).unwrap().value;
        assert!((a22 - c(223.170207735, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn table_agrees_with_single() {
        let sp = ThetaFockSpace::weierstrass(Lattice::new(c(1.0, 0.0), c(0.3, 1.1)).unwrap(), 2.0 * PI / 1.1).unwrap();
        let t = coeff_table(&sp, 3, 2, 1, 0, 6, 1e-14).unwrap();
        for m in 0..=3 {
            for n in 0..=2 {
                let one = coeff(&sp, CoeffIndex::new(m, n, 1, 0), 1e-14).unwrap();
                let s = t[m * 3 + n].unwrap();
                assert!((one.value - s.value).norm() < 1e-12 * one.mass);
            }
        }
        let t = coeff_table(&sp, 3, 3, 1, 0, 4, 1e-14).unwrap();
        assert!(t[3 * 4 + 1].is_none());
        assert!(t[2 * 4 + 1].is_some());
    }

    #[test]
    fn parity_requires_real_character() {
        let chi = PseudoCharacter::from_generators(Lattice::square(), PI, c(0.0, 1.0), c(1.0, 0.0)).unwrap();
        let sp = ThetaFockSpace::new(chi);
        assert_eq!(parity_report(&sp, 3, 1e-14).unwrap_err(), Error::NotRealCharacter);
    }

    #[test]
    fn parity_small_degree() {
        let sp = ThetaFockSpace::weierstrass(Lattice::square(), 2.0 * PI).unwrap();
        let rep = parity_report(&sp, 5, 1e-14).unwrap();
        assert!(rep.max_odd_ratio < 1e-12);
        assert!(rep.odd.iter().any(|e| e.index == CoeffIndex::new(0, 0, 3, 0)));
        assert!(rep.even_witness.unwrap().abs > 1.0);
    }

    #[test]
    fn recurrences_and_symmetry() {
        let sp = ThetaFockSpace::von_neumann(Lattice::square()).unwrap();
        let rep = recurrence_residuals(&sp, 4, 1e-14).unwrap();
        assert!(rep.max() < 1e-9, "{rep:?}");
        let chi = PseudoCharacter::from_generators(Lattice::square(), PI, c(0.0, 1.0), c(1.0, 0.0)).unwrap();
        let sp = ThetaFockSpace::new(chi);
        let r = conj_symmetry_residual(&sp, CoeffIndex::new(2, 1, 1, 0), 1e-14).unwrap();
        assert!(r.swapped < 1e-12, "{r:?}");
    }

    #[test]
    fn scaling_identity_and_examples() {
        let sp = ThetaFockSpace::weierstrass(Lattice::square(), 2.0 * PI).unwrap();
        let idx = CoeffIndex::new(1, 1, 0, 0);
        assert!(scaling_residual(&sp, c(1.0, 0.0), idx, 1e-14).unwrap() < 1e-14);
        assert!(scaling_residual(&sp, c(0.0, 2.0), idx, 1e-14).unwrap() < 1e-9);
    }

    #[test]
    fn char_sum_basics() {
        assert!(gaussian_char_sum(1.0).unwrap().abs() < 1e-12);
        assert!(gaussian_char_sum(0.0).is_err());
        assert!(gaussian_char_sum(0.5).unwrap() < 0.0);
        assert!(gaussian_char_sum(3.0).unwrap() > 0.0);
    }
}
