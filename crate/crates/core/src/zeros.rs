//! Zeros of `φ_w = K(·, w)` in a fundamental cell.
//!
//! `φ_w` satisfies the functional equation of the space, so
//! `|φ_w(z)|·e^{−ν|z|²/2}` is Γ-periodic. Every threshold below is applied to
//! this reduced modulus.

use std::f64::consts::PI;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::elliptic::{MuInvariant, WeierstrassData};
use crate::error::{Error, Result};
use crate::kernel::ThetaFockSpace;
use crate::lattice::FundamentalCell;

pub const DEFAULT_CONTOUR_NODES: usize = 64;
pub const DEFAULT_SEED: u64 = 0x7e7a;
const MAX_SHIFTS: usize = 8;
const PATH_SAFETY: f64 = 1e-6;
const WINDING_TOL: f64 = 0.05;
const IDENTICALLY_ZERO: f64 = 1e-9;
const PROBE_GRID: usize = 8;
const NEWTON_ITERS: usize = 50;
const NEWTON_STEP: f64 = 1e-12;
const DEDUPE: f64 = 1e-6;
const EPS: f64 = 1e-14;
const ACCEPT: f64 = 1e-8;
const CIRCLE_NODES: usize = 64;
const CIRCLE_SHRINK: f64 = 0.7;
const CIRCLE_TRIES: usize = 8;
const CLUSTER_ROUNDS: usize = 16;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    if n == 0 {
        0.0
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// `|f(z)|·e^{−ν|z|²/2}` for an element `f` of the space.
pub fn reduced_abs(nu: f64, value: Complex64, z: Complex64) -> f64 {
    value.norm() * (-0.5 * nu * z.norm_sqr()).exp()
}

/// Reduced modulus of `φ_w(z)`.
pub fn phi_reduced(sp: &ThetaFockSpace, w: Complex64, z: Complex64) -> Result<f64> {
    Ok(reduced_abs(sp.nu(), sp.kernel_eval(z, w, EPS)?.value, z))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProbeScale {
    /// Median reduced `|φ_w|` over the probe grid.
    pub scale: f64,
    /// Largest `|φ_w| / mass` over the probe grid.
    pub max_ratio: f64,
}

/// Samples `φ_w` on an 8×8 grid of the centered cell.
pub fn probe_scale(sp: &ThetaFockSpace, w: Complex64) -> Result<ProbeScale> {
    let cell = FundamentalCell::centered(*sp.lattice());
    let pts: Vec<Complex64> = grid_points(&cell, PROBE_GRID, 0.37);
    let vals: Vec<(f64, f64)> = pts
        .par_iter()
        .map(|&z| {
            let k = sp.kernel_eval(z, w, EPS)?;
            Ok((reduced_abs(sp.nu(), k.value, z), k.value.norm() / k.mass.max(f64::MIN_POSITIVE)))
        })
        .collect::<Result<_>>()?;
    let max_ratio = vals.iter().map(|v| v.1).fold(0.0, f64::max);
    Ok(ProbeScale {
        scale: median(vals.iter().map(|v| v.0).collect()),
        max_ratio,
    })
}

/// Grid `origin + ((i+off)/g)ω₁ + ((j+off)/g)ω₂`, row-major in `i`.
fn grid_points(cell: &FundamentalCell, g: usize, off: f64) -> Vec<Complex64> {
    let g_f = g as f64;
    (0..g)
        .flat_map(|i| (0..g).map(move |j| ((i as f64 + off) / g_f, (j as f64 + off) / g_f)))
        .map(|(s, t)| cell.at(s, t))
        .collect()
}

fn nonzero_scale(sp: &ThetaFockSpace, w: Complex64) -> Result<ProbeScale> {
    let probe = probe_scale(sp, w)?;
    if probe.max_ratio < IDENTICALLY_ZERO {
        return Err(Error::IdenticallyZero {
            max_ratio: probe.max_ratio,
        });
    }
    Ok(probe)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZeroCountResult {
    pub count: u32,
    /// `(1/2πi)∮ φ'/φ dz` before rounding.
    pub winding_raw: Complex64,
    /// Corner `u` of the cell whose boundary was integrated.
    pub shift: Complex64,
    /// Smallest reduced `|φ_w|` at the contour nodes.
    pub path_min_abs: f64,
    pub scale: f64,
    pub attempts: usize,
}

/// Number of zeros of `φ_w` in a cell by the argument principle.
pub fn zero_count(sp: &ThetaFockSpace, w: Complex64, nodes: usize) -> Result<ZeroCountResult> {
    zero_count_seeded(sp, w, nodes, DEFAULT_SEED)
}

pub fn zero_count_seeded(sp: &ThetaFockSpace, w: Complex64, nodes: usize, seed: u64) -> Result<ZeroCountResult> {
    if nodes < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 contour nodes, got {nodes}")));
    }
    let probe = nonzero_scale(sp, w)?;
    let lat = sp.lattice();
    let (w1, w2) = (lat.omega1(), lat.omega2());
    // counter-clockwise: the first edge is the generator that the other one
    // follows in the positive sense
    let (e1, e2) = if (w2.conj() * w1).im > 0.0 { (w2, w1) } else { (w1, w2) };
    let rule = GaussLegendre::new(nodes.try_into().expect("nonzero node count"));
    let nw: Vec<(f64, f64)> = rule
        .nodes()
        .zip(rule.weights())
        .map(|(x, wt)| (0.5 * (x + 1.0), 0.5 * wt))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = -(w1 + w2) * 0.5;
    for attempt in 1..=MAX_SHIFTS {
        let u = base + w1 * (0.25 * rng.random::<f64>()) + w2 * (0.25 * rng.random::<f64>());
        let corners = [u, u + e1, u + e1 + e2, u + e2];
        let pts: Vec<(Complex64, Complex64, f64)> = (0..4)
            .flat_map(|edge| nw.iter().map(move |&(x, wt)| (edge, x, wt)))
            .map(|(edge, x, wt)| {
                let a = corners[edge];
                let d = corners[(edge + 1) % 4] - a;
                (a + d * x, d, wt)
            })
            .collect();
        let terms: Vec<(Complex64, f64)> = pts
            .par_iter()
            .map(|&(z, d, wt)| {
                let f = sp.kernel_eval(z, w, EPS)?.value;
                let df = sp.kernel_dz(z, w, EPS)?.value;
                Ok((df / f * d * wt, reduced_abs(sp.nu(), f, z)))
            })
            .collect::<Result<_>>()?;
        let path_min = terms.iter().map(|t| t.1).fold(f64::INFINITY, f64::min);
        let mut acc = crate::sum::CompensatedSum::new();
        for t in &terms {
            acc.add(t.0);
        }
        let winding = acc.value() / c(0.0, 2.0 * PI);
        let rounded = winding.re.round();
        if path_min <= PATH_SAFETY * probe.scale || (winding - c(rounded, 0.0)).norm() >= WINDING_TOL {
            continue;
        }
        return Ok(ZeroCountResult {
            count: rounded.max(0.0) as u32,
            winding_raw: winding,
            shift: u,
            path_min_abs: path_min,
            scale: probe.scale,
            attempts: attempt,
        });
    }
    Err(Error::PathUnstable { attempts: MAX_SHIFTS })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocatedZero {
    /// Representative in the centered cell.
    pub location: Complex64,
    /// Reduced `|φ_w|` at the refined point.
    pub refined_abs: f64,
    /// Winding number of `φ_w` on a small circle around the zero. Values
    /// above one mean a multiple zero, or a cluster below resolution.
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroList {
    pub zeros: Vec<LocatedZero>,
    /// Sum of the multiplicities.
    pub total: u32,
    /// Argument-principle count over the cell, when the contour was stable.
    pub expected: Option<u32>,
    /// Seeds whose refinement did not reach the acceptance threshold.
    pub failures: Vec<String>,
    pub scale: f64,
}

/// Grid scan for local minima of the reduced modulus, Newton refinement,
/// deduplication modulo Γ, then a small-circle winding number per zero.
/// A circle that winds more often than the zeros inside it triggers a
/// deflated search for the missing partners, and a shortfall against the
/// argument-principle count restarts deflated Newton from the grid.
pub fn zero_locate(sp: &ThetaFockSpace, w: Complex64, grid: usize) -> Result<ZeroList> {
    if grid < 3 {
        return Err(Error::InvalidInput(format!("grid must be at least 3, got {grid}")));
    }
    let probe = nonzero_scale(sp, w)?;
    let lat = *sp.lattice();
    let cell = FundamentalCell::centered(lat);
    let pts = grid_points(&cell, grid, 0.0);
    let vals: Vec<f64> = pts
        .par_iter()
        .map(|&z| phi_reduced(sp, w, z))
        .collect::<Result<_>>()?;
    let at = |i: isize, j: isize| {
        let g = grid as isize;
        vals[(i.rem_euclid(g) * g + j.rem_euclid(g)) as usize]
    };
    let mut seeds = Vec::new();
    for i in 0..grid as isize {
        for j in 0..grid as isize {
            let v = at(i, j);
            let is_min = (-1..=1isize)
                .flat_map(|di| (-1..=1isize).map(move |dj| (di, dj)))
                .filter(|&d| d != (0, 0))
                .all(|(di, dj)| v <= at(i + di, j + dj));
            if is_min {
                seeds.push(pts[(i * grid as isize + j) as usize]);
            }
        }
    }
    let threshold = ACCEPT * probe.scale;
    let refined: Vec<(Complex64, f64)> = seeds
        .par_iter()
        .map(|&z0| refine(sp, w, z0, &[]))
        .collect::<Result<_>>()?;
    let mut found: Vec<(Complex64, f64)> = Vec::new();
    let mut failures = Vec::new();
    for (seed, (z, abs)) in seeds.iter().zip(refined) {
        if abs > threshold {
            failures.push(format!("{seed}"));
            continue;
        }
        let loc = lat.centered_residue(z);
        if found.iter().all(|q| lat.distance_mod(q.0, loc) > DEDUPE) {
            found.push((loc, abs));
        }
    }

    let spacing = lat.omega1().norm().min(lat.omega2().norm()) / grid as f64;
    let multiplicities = |found: &[(Complex64, f64)]| -> Result<Vec<(u32, f64)>> {
        found
            .par_iter()
            .enumerate()
            .map(|(j, &(z, _))| {
                let nearest = found
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, q)| lat.distance_mod(q.0, z))
                    .fold(f64::INFINITY, f64::min);
                circle_winding(sp, w, z, spacing.min(0.45 * nearest), probe.scale)
            })
            .collect()
    };
    let is_new = |found: &[(Complex64, f64)], z: Complex64, abs: f64| {
        abs <= threshold && found.iter().all(|q| lat.distance_mod(q.0, z) > DEDUPE)
    };
    // Grid points by increasing reduced modulus, used as fallback seeds when
    // the minima miss zeros that the argument principle says exist.
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    let mut fallback = order.into_iter();
    let expected = zero_count(sp, w, DEFAULT_CONTOUR_NODES).ok().map(|r| r.count);

    let mut mult = Vec::new();
    for _ in 0..CLUSTER_ROUNDS + 2 * expected.unwrap_or(0) as usize {
        mult = multiplicities(&found)?;
        let mut added = false;
        for (j, &(m, rho)) in mult.iter().enumerate() {
            if m <= 1 {
                continue;
            }
            let centre = found[j].0;
            let known: Vec<Complex64> = found.iter().map(|q| q.0).collect();
            for k in 0..4 {
                let start = centre + Complex64::from_polar(0.5 * rho, 0.3 + 0.5 * PI * k as f64);
                let (z, abs) = refine(sp, w, start, &known)?;
                let loc = lat.centered_residue(z);
                if is_new(&found, loc, abs) {
                    found.push((loc, abs));
                    added = true;
                    break;
                }
            }
            if added {
                break;
            }
        }
        if added {
            continue;
        }
        let total: u32 = mult.iter().map(|m| m.0).sum();
        if expected.is_none_or(|e| total >= e) {
            break;
        }
        let known: Vec<Complex64> = found
            .iter()
            .zip(&mult)
            .flat_map(|(q, m)| std::iter::repeat_n(q.0, m.0 as usize))
            .collect();
        for i in fallback.by_ref() {
            let (z, abs) = refine(sp, w, pts[i], &known)?;
            let loc = lat.centered_residue(z);
            if is_new(&found, loc, abs) {
                found.push((loc, abs));
                added = true;
                break;
            }
        }
        if !added {
            break;
        }
    }
    let zeros: Vec<LocatedZero> = found
        .iter()
        .zip(&mult)
        .map(|(&(location, refined_abs), &(multiplicity, _))| LocatedZero {
            location,
            refined_abs,
            multiplicity,
        })
        .collect();
    Ok(ZeroList {
        total: zeros.iter().map(|z| z.multiplicity).sum(),
        expected,
        zeros,
        failures,
        scale: probe.scale,
    })
}

/// Winding number of `φ_w` around the circle `|z − centre| = ρ`, shrinking
/// `ρ` until the path stays clear of zeros and the winding is near an
/// integer. Returns the count (at least one) and the radius used.
fn circle_winding(
    sp: &ThetaFockSpace,
    w: Complex64,
    centre: Complex64,
    rho: f64,
    scale: f64,
) -> Result<(u32, f64)> {
    let mut rho = rho;
    for _ in 0..CIRCLE_TRIES {
        let mut acc = crate::sum::CompensatedSum::new();
        let mut path_min = f64::INFINITY;
        for i in 0..CIRCLE_NODES {
            let e = Complex64::from_polar(rho, 2.0 * PI * i as f64 / CIRCLE_NODES as f64);
            let z = centre + e;
            let f = sp.kernel_eval(z, w, EPS)?.value;
            let df = sp.kernel_dz(z, w, EPS)?.value;
            path_min = path_min.min(reduced_abs(sp.nu(), f, z));
            acc.add(df / f * e);
        }
        let winding = acc.value() / CIRCLE_NODES as f64;
        let rounded = winding.re.round();
        if path_min > PATH_SAFETY * PATH_SAFETY * scale
            && (winding - c(rounded, 0.0)).norm() < WINDING_TOL
            && winding.is_finite()
        {
            return Ok(((rounded.max(1.0)) as u32, rho));
        }
        rho *= CIRCLE_SHRINK;
    }
    Ok((1, rho))
}

/// Newton iteration on `φ_w / Π(z − z_j)` for the given known zeros, taken
/// at their nearest images. Returns the point with the smallest reduced
/// modulus seen.
fn refine(sp: &ThetaFockSpace, w: Complex64, z0: Complex64, known: &[Complex64]) -> Result<(Complex64, f64)> {
    let lat = sp.lattice();
    let mut z = z0;
    let mut best = (z0, f64::INFINITY);
    for _ in 0..NEWTON_ITERS {
        let f = sp.kernel_eval(z, w, EPS)?.value;
        let abs = reduced_abs(sp.nu(), f, z);
        if abs < best.1 {
            best = (z, abs);
        }
        if f == c(0.0, 0.0) {
            break;
        }
        let df = sp.kernel_dz(z, w, EPS)?.value;
        let mut log_d = df / f;
        for &q in known {
            log_d -= 1.0 / lat.centered_residue(z - q);
        }
        let step = 1.0 / log_d;
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() < NEWTON_STEP * z.norm().max(1.0) {
            let f = sp.kernel_eval(z, w, EPS)?.value;
            let abs = reduced_abs(sp.nu(), f, z);
            if abs < best.1 {
                best = (z, abs);
            }
            break;
        }
    }
    Ok(best)
}

/// Reduced `|φ_w|` on a `grid × grid` sample of the centered cell,
/// row-major in the `ω₁` coordinate.
pub fn reduced_modulus_grid(sp: &ThetaFockSpace, w: Complex64, grid: usize) -> Result<Vec<(Complex64, f64)>> {
    let cell = FundamentalCell::centered(*sp.lattice());
    grid_points(&cell, grid, 0.0)
        .par_iter()
        .map(|&z| Ok((z, phi_reduced(sp, w, z)?)))
        .collect()
}

/// Largest reduced `|φ_w(z₀+γ)| / scale` over the zeros and the first shell.
pub fn translation_closure_residual(sp: &ThetaFockSpace, w: Complex64, zeros: &ZeroList) -> Result<f64> {
    let shell = sp.lattice().shell(1);
    let mut worst: f64 = 0.0;
    for z in &zeros.zeros {
        for g in &shell {
            let p = z.location + g.value;
            worst = worst.max(phi_reduced(sp, w, p)? / zeros.scale);
        }
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct XiCandidate {
    pub w: Complex64,
    /// `max_z` doubly reduced `|K(z, w)|` divided by the scale.
    pub max_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XiProbe {
    pub candidates: Vec<XiCandidate>,
    /// Median doubly reduced `|K|` over all samples.
    pub scale: f64,
    pub threshold: f64,
    pub dimension: u32,
    pub within_bound: bool,
    pub low_confidence: bool,
}

/// Searches the cell for `w` with `φ_w ≡ 0`.
///
/// `M(w) = max_z |K(z,w)|e^{−ν(|z|²+|w|²)/2}` over a `zgrid × zgrid` sample is
/// evaluated on a `wgrid × wgrid` grid; each local minimum is polished by
/// compass search and kept if `M < 1e−8·scale`.
pub fn xi_probe(sp: &ThetaFockSpace, wgrid: usize, zgrid: usize) -> Result<XiProbe> {
    if wgrid == 0 || zgrid == 0 {
        return Err(Error::InvalidInput("grids must be nonempty".into()));
    }
    let lat = *sp.lattice();
    let nu = sp.nu();
    let cell = FundamentalCell::centered(lat);
    let zs = grid_points(&cell, zgrid, 0.31);
    let ws = grid_points(&cell, wgrid, 0.0);
    let reduced = |z: Complex64, w: Complex64| -> Result<f64> {
        let k = sp.kernel_eval(z, w, EPS)?.value;
        Ok(k.norm() * (-0.5 * nu * (z.norm_sqr() + w.norm_sqr())).exp())
    };
    let samples: Vec<Vec<f64>> = ws
        .par_iter()
        .map(|&w| zs.iter().map(|&z| reduced(z, w)).collect::<Result<Vec<f64>>>())
        .collect::<Result<_>>()?;
    let scale = median(samples.iter().flatten().copied().collect());
    let threshold = 1e-8 * scale;
    let objective = |w: Complex64| -> Result<f64> {
        let mut m: f64 = 0.0;
        for &z in &zs {
            m = m.max(reduced(z, w)?);
        }
        Ok(m)
    };
    let maxes: Vec<f64> = samples.iter().map(|v| v.iter().copied().fold(0.0, f64::max)).collect();
    let g = wgrid as isize;
    let at = |i: isize, j: isize| maxes[(i.rem_euclid(g) * g + j.rem_euclid(g)) as usize];
    let mut starts = Vec::new();
    for i in 0..g {
        for j in 0..g {
            let v = at(i, j);
            if (-1..=1isize)
                .flat_map(|di| (-1..=1isize).map(move |dj| (di, dj)))
                .filter(|&d| d != (0, 0))
                .all(|(di, dj)| v <= at(i + di, j + dj))
            {
                starts.push((ws[(i * g + j) as usize], v));
            }
        }
    }
    let polished: Vec<(Complex64, f64)> = starts
        .par_iter()
        .map(|&(w0, v0)| compass_search(&objective, w0, v0, lat.omega1(), lat.omega2(), 0.5 / wgrid as f64))
        .collect::<Result<_>>()?;
    let mut candidates: Vec<XiCandidate> = Vec::new();
    for (w, v) in polished {
        if v >= threshold {
            continue;
        }
        let w = lat.centered_residue(w);
        if candidates.iter().all(|c| lat.distance_mod(c.w, w) > DEDUPE) {
            candidates.push(XiCandidate {
                w,
                max_ratio: v / scale,
            });
        }
    }
    let dimension = sp.dimension();
    Ok(XiProbe {
        within_bound: candidates.len() <= dimension as usize,
        candidates,
        scale,
        threshold,
        dimension,
        low_confidence: zgrid < 4 || wgrid < 4,
    })
}

fn compass_search<F>(f: &F, w0: Complex64, v0: f64, d1: Complex64, d2: Complex64, step0: f64) -> Result<(Complex64, f64)>
where
    F: Fn(Complex64) -> Result<f64>,
{
    let dirs = [d1, -d1, d2, -d2];
    let (mut w, mut v, mut step) = (w0, v0, step0);
    let mut iters = 0;
    while step > 1e-11 && iters < 400 {
        iters += 1;
        let mut moved = false;
        for d in dirs {
            let cand = w + d * step;
            let fv = f(cand)?;
            if fv < v {
                w = cand;
                v = fv;
                moved = true;
                break;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    Ok((w, v))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SigmaFactorReport {
    pub mu: MuInvariant,
    /// `K(z,w) / (σ̃(z)·conj(σ̃(w)))` for each retained sample.
    pub ratios: Vec<Complex64>,
    /// `max_i |r_i − mean| / |mean|`.
    pub spread: f64,
    pub discarded: usize,
}

/// Checks `K(z,w) ∝ e^{−(μz² + conj(μ)w̄²)/2} σ(z) conj(σ(w))` in the
/// one-dimensional space with the Weierstrass character.
pub fn sigma_factor_residual(sp: &ThetaFockSpace, pairs: &[(Complex64, Complex64)]) -> Result<SigmaFactorReport> {
    let k = sp.dimension();
    if k != 1 {
        return Err(Error::NotOneDimensional { k });
    }
    if !sp.chi().is_weierstrass() {
        return Err(Error::InvalidInput("sigma factorization needs the Weierstrass character".into()));
    }
    let wd = WeierstrassData::new(*sp.lattice())?;
    let mu = wd.mu_invariant(sp.nu())?;
    let nu = sp.nu();
    let sig: Vec<(Complex64, Complex64)> = pairs
        .iter()
        .map(|&(z, w)| (wd.modified_sigma(&mu, z), wd.modified_sigma(&mu, w)))
        .collect();
    let reduced: Vec<f64> = pairs
        .iter()
        .zip(&sig)
        .flat_map(|(&(z, w), &(sz, sw))| [reduced_abs(nu, sz, z), reduced_abs(nu, sw, w)])
        .collect();
    let scale = median(reduced.clone());
    let mut ratios = Vec::new();
    let mut discarded = 0;
    for (i, (&(z, w), &(sz, sw))) in pairs.iter().zip(&sig).enumerate() {
        if reduced[2 * i] <= 1e-3 * scale || reduced[2 * i + 1] <= 1e-3 * scale {
            discarded += 1;
            continue;
        }
        let kv = sp.kernel_eval(z, w, EPS)?.value;
        ratios.push(kv / (sz * sw.conj()));
    }
    if ratios.is_empty() {
        return Err(Error::InvalidInput("every sample sits near a zero of sigma".into()));
    }
    let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let spread = ratios.iter().map(|r| (r - mean).norm()).fold(0.0, f64::max) / mean.norm();
    Ok(SigmaFactorReport {
        mu,
        ratios,
        spread,
        discarded,
    })
}

/// Deterministic sample pairs in the centered cell.
pub fn sample_pairs(sp: &ThetaFockSpace, count: usize, seed: u64) -> Vec<(Complex64, Complex64)> {
    let cell = FundamentalCell::centered(*sp.lattice());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let z = cell.at(rng.random(), rng.random());
            let w = cell.at(rng.random(), rng.random());
            (z, w)
        })
        .collect()
}
