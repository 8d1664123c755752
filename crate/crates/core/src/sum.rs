//! Shell-ordered lattice summation with a Gaussian tail majorant.
//!
//! Every lattice sum in the crate walks shells `max(|m|,|n|) = 0, 1, 2, …` in
//! the fixed lexicographic order of [`Lattice::shell_iter`], so repeated
//! evaluations are bit-identical. Summation stops once
//!
//! * three consecutive shells each contribute less than `eps·mass`,
//! * the next shell lies beyond the radius where the majorant is monotone,
//! * the majorant tail `Σ_{j>K} 8j·g(jρ)` is below `eps·mass`,
//!
//! where `mass = Σ|summand|` accumulated so far.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticePoint};

pub const DEFAULT_SHELL_CAP: usize = 200;
pub const DEFAULT_EPS: f64 = 1e-14;
pub const SHELL_CAP_ENV: &str = "THETA_KERNEL_SHELL_CAP";

/// Exponents with a larger real part are refused instead of producing `inf`.
pub const MAX_EXPONENT: f64 = 700.0;

const QUIET_SHELLS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumConfig {
    pub eps: f64,
    pub shell_cap: usize,
}

impl Default for SumConfig {
    fn default() -> Self {
        SumConfig {
            eps: DEFAULT_EPS,
            shell_cap: DEFAULT_SHELL_CAP,
        }
    }
}

impl SumConfig {
    pub fn with_eps(eps: f64) -> Self {
        SumConfig {
            eps,
            ..Default::default()
        }
    }

    /// Default configuration with the shell cap taken from
    /// `THETA_KERNEL_SHELL_CAP` when set.
    pub fn from_env() -> Self {
        let mut cfg = SumConfig::default();
        if let Some(cap) = std::env::var(SHELL_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            cfg.shell_cap = cap;
        }
        cfg
    }
}

/// A truncated lattice sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumResult {
    pub value: Complex64,
    /// Majorant of everything beyond the last shell.
    pub tail_bound: f64,
    pub shells_used: usize,
    /// `Σ|summand|` over the included terms; the natural scale for cancellation checks.
    pub mass: f64,
}

impl SumResult {
    pub fn scaled(self, factor: f64) -> SumResult {
        SumResult {
            value: self.value * factor,
            tail_bound: self.tail_bound * factor.abs(),
            shells_used: self.shells_used,
            mass: self.mass * factor.abs(),
        }
    }
}

impl Serialize for SumResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SumResult", 4)?;
        st.serialize_field("value", &[self.value.re, self.value.im])?;
        st.serialize_field("tail_bound", &self.tail_bound)?;
        st.serialize_field("shells_used", &self.shells_used)?;
        st.serialize_field("mass", &self.mass)?;
        st.end()
    }
}

/// Neumaier-compensated complex accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier(acc: &mut (f64, f64), x: f64) {
    let (sum, comp) = *acc;
    let t = sum + x;
    let c = if sum.abs() >= x.abs() {
        (sum - t) + x
    } else {
        (x - t) + sum
    };
    *acc = (t, comp + c);
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, z.re);
        neumaier(&mut self.im, z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

/// `exp(e)`, refusing exponents whose real part exceeds [`MAX_EXPONENT`].
pub fn checked_exp(e: Complex64) -> Result<Complex64> {
    if e.re > MAX_EXPONENT {
        return Err(Error::ExponentOverflow { re: e.re });
    }
    Ok(e.exp())
}

/// Sums `summand` over Γ shell by shell.
///
/// `majorant(r)` must bound `|summand(γ)|` for every `|γ| ≥ r` once
/// `r ≥ r_min`, and be nonincreasing there.
pub fn shell_sum<S, G>(
    lattice: &Lattice,
    cfg: &SumConfig,
    r_min: f64,
    majorant: G,
    mut summand: S,
) -> Result<SumResult>
where
    S: FnMut(&LatticePoint) -> Result<Complex64>,
    G: Fn(f64) -> f64,
{
    let rho = lattice.shell_radius_factor();
    let mut acc = CompensatedSum::new();
    let mut mass = 0.0;
    let mut quiet = 0usize;

    for k in 0..=cfg.shell_cap {
        let mut shell_abs = 0.0;
        for p in lattice.shell_iter(k) {
            let t = summand(&p)?;
            acc.add(t);
            shell_abs += t.norm();
        }
        mass += shell_abs;
        let floor = cfg.eps * mass.max(f64::MIN_POSITIVE);
        if shell_abs <= floor {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= QUIET_SHELLS && (k + 1) as f64 * rho >= r_min {
            let tail = tail_majorant(&majorant, k, rho);
            if tail <= floor {
                return Ok(SumResult {
                    value: acc.value(),
                    tail_bound: tail,
                    shells_used: k + 1,
                    mass,
                });
            }
        }
    }
    Err(Error::NoConvergence {
        shells: cfg.shell_cap,
    })
}

/// Sums `count` lattice functions in one walk over the shells.
///
/// `summand(γ, out)` writes the `count` values at γ into `out`;
/// `majorant(i, r)` and `r_min[i]` play the roles they have in
/// [`shell_sum`] for component `i`. The walk stops once every component
/// meets the stopping rule.
pub fn shell_sum_many<S, G>(
    lattice: &Lattice,
    cfg: &SumConfig,
    r_min: &[f64],
    majorant: G,
    mut summand: S,
) -> Result<Vec<SumResult>>
where
    S: FnMut(&LatticePoint, &mut [Complex64]) -> Result<()>,
    G: Fn(usize, f64) -> f64,
{
    let count = r_min.len();
    let rho = lattice.shell_radius_factor();
    let mut acc = vec![CompensatedSum::new(); count];
    let mut mass = vec![0.0; count];
    let mut quiet = vec![0usize; count];
    let mut done: Vec<Option<(f64, usize)>> = vec![None; count];
    let mut buf = vec![Complex64::new(0.0, 0.0); count];
    let mut shell_abs = vec![0.0; count];

    for k in 0..=cfg.shell_cap {
        shell_abs.iter_mut().for_each(|x| *x = 0.0);
        for p in lattice.shell_iter(k) {
            summand(&p, &mut buf)?;
            for i in 0..count {
                if done[i].is_none() {
                    acc[i].add(buf[i]);
                    shell_abs[i] += buf[i].norm();
                }
            }
        }
        let mut all = true;
        for i in 0..count {
            if done[i].is_some() {
                continue;
            }
            mass[i] += shell_abs[i];
            let floor = cfg.eps * mass[i].max(f64::MIN_POSITIVE);
            if shell_abs[i] <= floor {
                quiet[i] += 1;
            } else {
                quiet[i] = 0;
            }
            if quiet[i] >= QUIET_SHELLS && (k + 1) as f64 * rho >= r_min[i] {
                let tail = tail_majorant(&|r| majorant(i, r), k, rho);
                if tail <= floor {
                    done[i] = Some((tail, k + 1));
                    continue;
                }
            }
            all = false;
        }
        if all {
            return Ok((0..count)
                .map(|i| {
                    let (tail, shells) = done[i].expect("finished component");
                    SumResult {
                        value: acc[i].value(),
                        tail_bound: tail,
                        shells_used: shells,
                        mass: mass[i],
                    }
                })
                .collect());
        }
    }
    Err(Error::NoConvergence {
        shells: cfg.shell_cap,
    })
}

/// `Σ_{j>k} 8j·g(jρ)`.
fn tail_majorant<G: Fn(f64) -> f64>(g: &G, k: usize, rho: f64) -> f64 {
    let mut total = 0.0;
    let mut j = k + 1;
    loop {
        let term = 8.0 * j as f64 * g(j as f64 * rho);
        if !term.is_finite() {
            return f64::INFINITY;
        }
        total += term;
        if term == 0.0 || term <= 1e-18 * total || j > k + 100_000 {
            return total;
        }
        j += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_beats_naive() {
        let mut acc = CompensatedSum::new();
        let mut naive = 0.0;
        for x in [1.0, 1e100, 1.0, -1e100] {
            acc.add(Complex64::new(x, -x));
            naive += x;
        }
        assert_eq!(acc.value(), Complex64::new(2.0, -2.0));
        assert_eq!(naive, 0.0);
    }

    #[test]
    fn gaussian_sum_matches_theta_square() {
        // Σ exp(-π|γ|²) over Z+iZ = θ3(e^{-π})², θ3(e^{-π}) = π^{1/4}/Γ(3/4)
        let l = Lattice::square();
        let nu = std::f64::consts::PI;
        let r = shell_sum(
            &l,
            &SumConfig::default(),
            0.0,
            |r| (-nu * r * r).exp(),
            |p| Ok(Complex64::new((-nu * p.value.norm_sqr()).exp(), 0.0)),
        )
        .unwrap();
        let theta3 = std::f64::consts::PI.powf(0.25) / 1.225_416_702_465_177_6;
        assert!((r.value.re - theta3 * theta3).abs() < 1e-14);
        assert!(r.tail_bound <= 1e-14 * r.mass);
        assert!(r.shells_used >= 4);
    }

    #[test]
    fn cap_reached() {
        let l = Lattice::square();
        let cfg = SumConfig {
            eps: 1e-14,
            shell_cap: 3,
        };
        let err = shell_sum(&l, &cfg, 0.0, |_| 1.0, |_| Ok(Complex64::new(1.0, 0.0)));
        assert_eq!(err.unwrap_err(), Error::NoConvergence { shells: 3 });
    }

    #[test]
    fn many_matches_single() {
        let l = Lattice::new(Complex64::new(1.0, 0.0), Complex64::new(0.3, 1.1)).unwrap();
        let cfg = SumConfig::default();
        let nus = [1.0, 2.5, 4.0];
        let many = shell_sum_many(
            &l,
            &cfg,
            &[0.0; 3],
            |i, r| (-nus[i] * r * r).exp(),
            |p, out| {
                for (i, o) in out.iter_mut().enumerate() {
                    *o = Complex64::new((-nus[i] * p.value.norm_sqr()).exp(), 0.0);
                }
                Ok(())
            },
        )
        .unwrap();
        for (i, nu) in nus.iter().enumerate() {
            let one = shell_sum(
                &l,
                &cfg,
                0.0,
                |r| (-nu * r * r).exp(),
                |p| Ok(Complex64::new((-nu * p.value.norm_sqr()).exp(), 0.0)),
            )
            .unwrap();
            assert_eq!(many[i], one);
        }
    }

    #[test]
    fn overflow_guard() {
        assert!(checked_exp(Complex64::new(701.0, 0.0)).is_err());
        assert!(checked_exp(Complex64::new(-1e6, 3.0)).is_ok());
    }
}
