//! The acceptance checks, one function per criterion.
//!
//! Each check returns a [`Criterion`] carrying the measured worst residual,
//! the threshold it is held to and the wall time. Nothing here asserts; the
//! caller decides what to do with a failure.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coeffs::{
    coeff, conj_symmetry_max, gaussian_char_sum, parity_report, recurrence_residuals, scaling_residual, CoeffIndex,
};
use crate::elliptic::{theta_identity_report, WeierstrassData};
use crate::error::Result;
use crate::hermite::{genfun1_residual, genfun2_residual, hermite_eval, hermite_majorant, hermite_table};
use crate::kernel::ThetaFockSpace;
use crate::lattice::{FundamentalCell, Lattice};
use crate::pseudochar::PseudoCharacter;
use crate::zeros::{sample_pairs, sigma_factor_residual, translation_closure_residual, zero_count, zero_locate};

const SEED: u64 = 20_240_611;
const EPS: f64 = 1e-14;

/// `(t, value)` rows of the published table of `Σ(−1)^{m+n+mn}e^{−(tπ/2)(m²+n²)}`.
#[allow(clippy::excessive_precision)]
pub const SUM_TABLE: [(f64, f64); 10] = [
    (0.01, -100.0),
    (0.1, -9.999_993_971_929_989_999),
    (1.0, 0.0),
    (1.25, 0.360_838_197_352_908_204_9),
    (1.5, 0.585_207_567_982_019_854_1),
    (1.75, 0.727_680_687_862_870_146_0),
    (2.0, 0.819_687_299_820_045_899_6),
    (3.0, 0.963_744_063_426_826_634_7),
    (4.0, 0.992_516_279_752_207_747_5),
    (8.0, 0.999_986_050_581_928_937_2),
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Criterion {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
    /// Wall time; left out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub elapsed_s: f64,
    pub note: String,
}

impl Criterion {
    /// Report line without the timing column.
    pub fn summary(&self) -> String {
        format!(
            "[{}] {:>2} {:<34} measured {:.3e} (threshold {:.0e}){}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.measured,
            self.threshold,
            if self.note.is_empty() { String::new() } else { format!("  {}", self.note) }
        )
    }

    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {:<34} measured {:.3e} (threshold {:.0e}) {:.2}s{}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.measured,
            self.threshold,
            self.elapsed_s,
            if self.note.is_empty() { String::new() } else { format!("  {}", self.note) }
        )
    }
}

struct Outcome {
    measured: f64,
    ok: bool,
    note: String,
}

fn outcome(measured: f64, threshold: f64) -> Outcome {
    Outcome {
        measured,
        ok: measured < threshold,
        note: String::new(),
    }
}

fn run<F>(id: u32, title: &str, threshold: f64, time_limit: Option<f64>, f: F) -> Criterion
where
    F: FnOnce() -> Result<Outcome>,
{
    let start = Instant::now();
    let res = f();
    let elapsed = start.elapsed().as_secs_f64();
    match res {
        Ok(mut o) => {
            if let Some(limit) = time_limit {
                if elapsed >= limit {
                    o.ok = false;
                    o.note = format!("{} runtime {elapsed:.2}s exceeds {limit}s", o.note).trim().to_string();
                }
            }
            Criterion {
                id,
                title: title.to_string(),
                passed: o.ok && o.measured.is_finite(),
                measured: o.measured,
                threshold,
                elapsed_s: elapsed,
                note: o.note,
            }
        }
        Err(e) => Criterion {
            id,
            title: title.to_string(),
            passed: false,
            measured: f64::NAN,
            threshold,
            elapsed_s: elapsed,
            note: format!("error: {}: {e}", e.name()),
        },
    }
}

fn generic_lattice() -> Lattice {
    Lattice::new(Complex64::new(1.0, 0.0), Complex64::new(0.3, 1.1)).expect("independent generators")
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

fn random_in_disc(r: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * r.random::<f64>().sqrt(), 2.0 * PI * r.random::<f64>())
}

pub fn criterion_1() -> Criterion {
    run(1, "Perelomov sum vanishes", 1e-12, Some(1.0), || {
        let sp = ThetaFockSpace::von_neumann(Lattice::square())?;
        let a = coeff(&sp, CoeffIndex::new(0, 0, 0, 0), EPS)?;
        Ok(outcome(a.value.norm() / a.mass, 1e-12))
    })
}

pub fn criterion_2() -> Criterion {
    run(2, "character sum table", 1e-9, Some(5.0), || {
        let mut worst: f64 = 0.0;
        for (t, v) in SUM_TABLE {
            worst = worst.max((gaussian_char_sum(t)? - v).abs());
        }
        Ok(outcome(worst, 1e-9))
    })
}

pub fn criterion_3() -> Criterion {
    run(3, "odd-parity coefficients vanish", 1e-10, Some(30.0), || {
        let spaces = [
            ThetaFockSpace::weierstrass(Lattice::square(), PI)?,
            ThetaFockSpace::weierstrass(Lattice::square(), 2.0 * PI)?,
            ThetaFockSpace::weierstrass(generic_lattice(), PI / 1.1)?,
        ];
        let mut worst: f64 = 0.0;
        let mut tuples = 0;
        for sp in &spaces {
            let rep = parity_report(sp, 7, EPS)?;
            worst = worst.max(rep.max_odd_ratio);
            tuples += rep.odd.len();
        }
        let mut o = outcome(worst, 1e-10);
        o.note = format!("{tuples} odd tuples");
        Ok(o)
    })
}

pub fn criterion_4() -> Criterion {
    run(4, "coefficient scaling law", 1e-9, None, || {
        let mut r = rng();
        let spaces = [
            ThetaFockSpace::weierstrass(Lattice::square(), 2.0 * PI)?,
            ThetaFockSpace::weierstrass(generic_lattice(), 2.0 * PI / 1.1)?,
        ];
        let tuples: Vec<CoeffIndex> = (0..10)
            .map(|_| {
                CoeffIndex::new(
                    r.random_range(0..=3),
                    r.random_range(0..=3),
                    r.random_range(0..=2),
                    r.random_range(0..=2),
                )
            })
            .collect();
        let mut worst: f64 = 0.0;
        for i in 0..10 {
            let lambda = Complex64::from_polar(r.random_range(0.6..1.8), r.random_range(0.0..2.0 * PI));
            let sp = &spaces[i % 2];
            for idx in &tuples {
                worst = worst.max(scaling_residual(sp, lambda, *idx, EPS)?);
            }
        }
        Ok(outcome(worst, 1e-9))
    })
}

/// Pairs `(z_i, w_j)`, `i, j < 5`, spread over the centered cell.
pub fn triangle_grid(lattice: &Lattice) -> Vec<(Complex64, Complex64)> {
    let cell = FundamentalCell::centered(*lattice);
    let s = [0.1, 0.3, 0.5, 0.7, 0.9];
    let zs: Vec<Complex64> = (0..5).map(|i| cell.at(s[i], s[(i + 1) % 5])).collect();
    let ws: Vec<Complex64> = (0..5).map(|j| cell.at(s[(j + 3) % 5], s[j])).collect();
    zs.iter().flat_map(|&z| ws.iter().map(move |&w| (z, w))).collect()
}

pub fn criterion_5() -> Criterion {
    run(5, "kernel consistency triangle", 1e-8, Some(60.0), || {
        let mut worst: f64 = 0.0;
        for nu in [PI, 2.0 * PI] {
            let sp = ThetaFockSpace::weierstrass(Lattice::square(), nu)?;
            let series = sp.kernel_series(60, 60, 1e-15)?;
            for (z, w) in triangle_grid(sp.lattice()) {
                let direct = sp.kernel_eval(z, w, EPS)?.value;
                let s = series.evaluate(z, w);
                let p = sp.kernel_via_poincare(z, w, 60, EPS)?;
                let norm = direct.norm().max(1.0);
                worst = worst
                    .max((direct - s).norm() / norm)
                    .max((direct - p).norm() / norm)
                    .max((s - p).norm() / norm);
            }
        }
        Ok(outcome(worst, 1e-8))
    })
}

pub fn criterion_6() -> Criterion {
    run(6, "kernel bi-invariance", 1e-8, None, || {
        let mut r = rng();
        let spaces = [
            ThetaFockSpace::weierstrass(Lattice::square(), 2.0 * PI)?,
            ThetaFockSpace::weierstrass(generic_lattice(), 3.0 * PI / 1.1)?,
        ];
        let mut worst: f64 = 0.0;
        for i in 0..20 {
            let sp = &spaces[i % 2];
            let cell = FundamentalCell::centered(*sp.lattice());
            let z = cell.at(r.random(), r.random());
            let w = cell.at(r.random(), r.random());
            let g = sp.lattice().point(r.random_range(-2..=2), r.random_range(-2..=2));
            let h = sp.lattice().point(r.random_range(-2..=2), r.random_range(-2..=2));
            worst = worst.max(sp.bi_invariance_residual(z, w, &g, &h, EPS)?);
        }
        Ok(outcome(worst, 1e-8))
    })
}

pub fn criterion_7() -> Criterion {
    run(7, "reproducing property", 1e-6, None, || {
        let mut worst: f64 = 0.0;
        for nu in [PI, 2.0 * PI] {
            let sp = ThetaFockSpace::weierstrass(Lattice::square(), nu)?;
            for m in 0..=2 {
                for z in [Complex64::new(0.25, 0.25), Complex64::new(-0.4, 0.15), Complex64::new(0.0, 0.0)] {
                    worst = worst.max(sp.reproducing_residual(m, z, 48, EPS)?);
                }
            }
        }
        Ok(outcome(worst, 1e-6))
    })
}

pub fn criterion_8() -> Criterion {
    run(8, "zero count equals dimension", 1e-7, None, || {
        let mut r = rng();
        let mut worst: f64 = 0.0;
        let mut mismatches = Vec::new();
        for (name, lattice) in [("square", Lattice::square()), ("generic", generic_lattice())] {
            for k in 1..=3u32 {
                let sp = ThetaFockSpace::weierstrass(lattice, k as f64 * PI / lattice.cell_area())?;
                let cell = FundamentalCell::centered(lattice);
                for _ in 0..5 {
                    let w = cell.at(r.random_range(0.05..0.95), r.random_range(0.05..0.95));
                    let count = zero_count(&sp, w, 64)?;
                    let located = zero_locate(&sp, w, 24)?;
                    if count.count != k || located.total != k {
                        mismatches.push(format!(
                            "{name} k={k} w={w:.3}: count {} located {}",
                            count.count, located.total
                        ));
                    }
                    worst = worst.max(translation_closure_residual(&sp, w, &located)?);
                }
            }
        }
        let mut o = outcome(worst, 1e-7);
        if !mismatches.is_empty() {
            o.ok = false;
            o.note = mismatches.join("; ");
        }
        Ok(o)
    })
}

pub fn criterion_9() -> Criterion {
    run(9, "sigma factorization", 1e-7, None, || {
        let sp = ThetaFockSpace::von_neumann(Lattice::square())?;
        let mu = WeierstrassData::new(*sp.lattice())?.mu_invariant(sp.nu())?;
        let rep = sigma_factor_residual(&sp, &sample_pairs(&sp, 10, SEED))?;
        let mut o = outcome(rep.spread, 1e-7);
        if mu.mu.norm() > 1e-10 {
            o.ok = false;
        }
        o.note = format!("|mu| = {:.1e}, {} pairs used", mu.mu.norm(), rep.ratios.len());
        Ok(o)
    })
}

/// Worst residual of the Hermite identities over `trials` random inputs.
pub fn hermite_suite(trials: usize, seed: u64) -> Result<f64> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let nu = r.random_range(0.5..4.0);
        let xi = random_in_disc(&mut r, 1.5);
        let m = r.random_range(0..=8usize);
        let n = r.random_range(0..=8usize);
        // two-variable generating function
        let (a, b) = (random_in_disc(&mut r, 0.5), random_in_disc(&mut r, 0.5));
        let closed = (nu * (a * xi + b * xi.conj() - a * b)).exp().norm();
        worst = worst.max(genfun2_residual(nu, a, b, xi, 30, 30)? / closed.max(1.0));
        // one-variable generating function
        let z = random_in_disc(&mut r, 0.5);
        let closed = ((xi.conj() - z) * nu).powi(n as i32).norm() * (nu * xi * z).exp().norm();
        worst = worst.max(genfun1_residual(nu, z, xi, n, 40)? / closed.max(1.0));
        // conditioning scale of H_{m,n}(ξ): sum of the term magnitudes
        let scale = |m: usize, n: usize, x: Complex64, nu: f64| hermite_majorant(nu, m, n, x.norm()).max(1.0);
        let h = hermite_eval(nu, m, n, xi)?;
        // recurrence, and the table built from it
        let next = hermite_eval(nu, m + 1, n, xi)?;
        let prev = if n > 0 { hermite_eval(nu, m, n - 1, xi)? } else { Complex64::new(0.0, 0.0) };
        let rec = next - xi * nu * h + prev * (nu * n as f64);
        worst = worst.max(rec.norm() / scale(m + 1, n, xi, nu));
        let table = hermite_table(nu, m + 1, n, xi)?;
        worst = worst.max((table.get(m, n) - h).norm() / scale(m, n, xi, nu));
        // conjugation and parity
        worst = worst.max((h.conj() - hermite_eval(nu, n, m, xi)?).norm() / scale(m, n, xi, nu));
        let sign = if (m + n) % 2 == 0 { 1.0 } else { -1.0 };
        worst = worst.max((hermite_eval(nu, m, n, -xi)? - h * sign).norm() / scale(m, n, xi, nu));
        // scaling
        let lambda = Complex64::from_polar(r.random_range(0.5..2.0), r.random_range(0.0..2.0 * PI));
        let lhs = hermite_eval(nu / lambda.norm_sqr(), m, n, lambda * xi)?;
        let rhs = h * lambda.powi(-(n as i32)) * lambda.conj().powi(-(m as i32));
        let s = scale(m, n, xi, nu) * lambda.norm().powi(-((m + n) as i32));
        worst = worst.max((lhs - rhs).norm() / s.max(1.0));
    }
    Ok(worst)
}

pub fn criterion_10() -> Criterion {
    run(10, "Hermite identities", 1e-10, None, || Ok(outcome(hermite_suite(100, SEED)?, 1e-10)))
}

pub fn criterion_11() -> Criterion {
    run(11, "coefficient recurrences", 1e-9, None, || {
        let complex_chi = PseudoCharacter::from_generators(
            generic_lattice(),
            2.0 * PI / 1.1,
            Complex64::new(0.0, 1.0),
            Complex64::from_polar(1.0, 0.4),
        )?;
        let spaces = [
            ThetaFockSpace::von_neumann(Lattice::square())?,
            ThetaFockSpace::new(complex_chi),
        ];
        let mut worst: f64 = 0.0;
        let mut notes = Vec::new();
        for sp in &spaces {
            let rec = recurrence_residuals(sp, 6, EPS)?;
            let conj = conj_symmetry_max(sp, 6, EPS)?;
            worst = worst.max(rec.max()).max(conj.swapped);
            notes.push(format!(
                "exchanged-index forms {:.1e}/{:.1e}, unswapped conjugation {:.1e}",
                rec.exchanged_raise_p, rec.exchanged_raise_q, conj.unswapped
            ));
        }
        let mut o = outcome(worst, 1e-9);
        o.note = notes.join("; ");
        Ok(o)
    })
}

pub fn criterion_12() -> Criterion {
    run(12, "theta identity report", 1e-10, None, || {
        let mut worst: f64 = 0.0;
        let mut printed: f64 = 0.0;
        for nu in [PI / 2.0, 1.0, PI, 2.0 * PI, 3.0] {
            let rep = theta_identity_report(nu)?;
            worst = worst.max(rep.split_vs_char_sum);
            printed = printed.max(rep.printed_residual);
        }
        let mut o = outcome(worst, 1e-10);
        o.note = format!("printed identity residual up to {printed:.3e} (reported only)");
        Ok(o)
    })
}

pub fn run_all() -> Vec<Criterion> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
        criterion_11(),
        criterion_12(),
    ]
}

pub fn criterion(id: u32) -> Option<Criterion> {
    Some(match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        11 => criterion_11(),
        12 => criterion_12(),
        _ => return None,
    })
}
