//! Full-rank lattices `Zω₁ + Zω₂` in the complex plane.
//!
//! Generators are stored oriented so that `Im(ω₁·conj(ω₂)) > 0`; with that
//! convention `(ν/π)·Im(ω₁·conj(ω₂))` is the (positive) dimension of the
//! theta space for every admissible magnitude `ν`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance on `|Im(conj(ω₁)ω₂)| / (|ω₁||ω₂|)` below which generators count as collinear.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Absolute tolerance for `(ν/π)·S(Γ)` to be accepted as an integer.
pub const INTEGRALITY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct Lattice {
    omega1: Complex64,
    omega2: Complex64,
}

/// JSON shape `{"omega1":[re,im],"omega2":[re,im]}`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
struct LatticeRepr {
    omega1: [f64; 2],
    omega2: [f64; 2],
}

impl TryFrom<LatticeRepr> for Lattice {
    type Error = Error;

    fn try_from(r: LatticeRepr) -> Result<Self> {
        Lattice::new(
            Complex64::new(r.omega1[0], r.omega1[1]),
            Complex64::new(r.omega2[0], r.omega2[1]),
        )
    }
}

impl From<Lattice> for LatticeRepr {
    fn from(l: Lattice) -> Self {
        LatticeRepr {
            omega1: [l.omega1.re, l.omega1.im],
            omega2: [l.omega2.re, l.omega2.im],
        }
    }
}

/// A lattice vector `m·ω₁ + n·ω₂` together with its integer coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticePoint {
    pub m: i64,
    pub n: i64,
    pub value: Complex64,
}

impl Lattice {
    /// Builds a lattice, swapping the generators if needed so that
    /// `Im(ω₁·conj(ω₂)) > 0`.
    pub fn new(omega1: Complex64, omega2: Complex64) -> Result<Self> {
        if !(omega1.is_finite() && omega2.is_finite()) {
            return Err(Error::InvalidInput("non-finite lattice generator".into()));
        }
        let cross = (omega1 * omega2.conj()).im;
        if cross.abs() <= DEGENERACY_TOL * omega1.norm() * omega2.norm() {
            return Err(Error::DegenerateLattice { cross });
        }
        if cross > 0.0 {
            Ok(Lattice { omega1, omega2 })
        } else {
            Ok(Lattice {
                omega1: omega2,
                omega2: omega1,
            })
        }
    }

    /// The Gaussian integers `Z + iZ`, stored as `(i, 1)`.
    pub fn square() -> Self {
        Lattice {
            omega1: Complex64::i(),
            omega2: Complex64::new(1.0, 0.0),
        }
    }

    pub fn omega1(&self) -> Complex64 {
        self.omega1
    }

    pub fn omega2(&self) -> Complex64 {
        self.omega2
    }

    /// Cell area `S(Γ) = |Im(ω₁·conj(ω₂))|`.
    pub fn cell_area(&self) -> f64 {
        (self.omega1 * self.omega2.conj()).im.abs()
    }

    pub fn point(&self, m: i64, n: i64) -> LatticePoint {
        LatticePoint {
            m,
            n,
            value: self.omega1 * m as f64 + self.omega2 * n as f64,
        }
    }

    /// Real coordinates `(s, t)` with `z = s·ω₁ + t·ω₂`.
    pub fn coordinates(&self, z: Complex64) -> (f64, f64) {
        let area = (self.omega1 * self.omega2.conj()).im;
        let s = (z * self.omega2.conj()).im / area;
        let t = -(z * self.omega1.conj()).im / area;
        (s, t)
    }

    /// Points with `max(|m|, |n|) = k`, lexicographic in `(m, n)`.
    pub fn shell(&self, k: usize) -> Vec<LatticePoint> {
        self.shell_iter(k).collect()
    }

    pub fn shell_iter(&self, k: usize) -> ShellIter<'_> {
        ShellIter::new(self, k)
    }

    /// Lower bound on `|γ|` per unit of shell index: every point of shell
    /// `k` has modulus at least `k·ρ`.
    pub fn shell_radius_factor(&self) -> f64 {
        let s = self.cell_area();
        (s / self.omega1.norm()).min(s / self.omega2.norm())
    }

    /// `λ·Γ` with generators `(λω₁, λω₂)`; the orientation is preserved, so
    /// the index correspondence `λ(mω₁+nω₂) ↔ (m, n)` holds.
    pub fn scaled(&self, lambda: Complex64) -> Result<Self> {
        if lambda.norm() == 0.0 {
            return Err(Error::InvalidInput("scaling factor must be nonzero".into()));
        }
        let scaled = Lattice::new(lambda * self.omega1, lambda * self.omega2)?;
        debug_assert!(scaled.omega1 == lambda * self.omega1);
        Ok(scaled)
    }

    /// Dimension `(ν/π)·S(Γ)` of the theta space, which must be a positive integer.
    pub fn dimension(&self, nu: f64) -> Result<u32> {
        let value = nu / PI * self.cell_area();
        let rounded = value.round();
        if nu.is_nan() || nu <= 0.0 || rounded < 1.0 || (value - rounded).abs() >= INTEGRALITY_TOL {
            return Err(Error::NonIntegralDimension { value });
        }
        Ok(rounded as u32)
    }

    /// Representative of `z` modulo Γ closest to the origin among the
    /// centered cell `{(s-1/2)ω₁ + (t-1/2)ω₂}`.
    pub fn centered_residue(&self, z: Complex64) -> Complex64 {
        let cell = FundamentalCell::centered(*self);
        cell.reduce(z).0
    }

    /// Distance between `a` and `b` measured modulo Γ (exact near zero).
    pub fn distance_mod(&self, a: Complex64, b: Complex64) -> f64 {
        self.centered_residue(a - b).norm()
    }
}

/// Iterator over one shell in lexicographic `(m, n)` order.
pub struct ShellIter<'a> {
    lattice: &'a Lattice,
    k: i64,
    m: i64,
    n: i64,
    done: bool,
}

impl<'a> ShellIter<'a> {
    fn new(lattice: &'a Lattice, k: usize) -> Self {
        let k = k as i64;
        ShellIter {
            lattice,
            k,
            m: -k,
            n: -k,
            done: false,
        }
    }
}

impl Iterator for ShellIter<'_> {
    type Item = LatticePoint;

    fn next(&mut self) -> Option<LatticePoint> {
        if self.done {
            return None;
        }
        let out = self.lattice.point(self.m, self.n);
        let k = self.k;
        // advance
        if k == 0 {
            self.done = true;
        } else if self.m.abs() == k {
            if self.n < k {
                self.n += 1;
            } else if self.m == k {
                self.done = true;
            } else {
                self.m += 1;
                self.n = -k;
            }
        } else if self.n == -k {
            self.n = k;
        } else {
            self.m += 1;
            self.n = -k;
        }
        Some(out)
    }
}

/// A translate `origin + {s·ω₁ + t·ω₂ : 0 ≤ s,t < 1}` of the period parallelogram.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FundamentalCell {
    pub origin: Complex64,
    pub lattice: Lattice,
}

impl FundamentalCell {
    pub fn new(lattice: Lattice, origin: Complex64) -> Self {
        FundamentalCell { origin, lattice }
    }

    /// The cell symmetric about 0.
    pub fn centered(lattice: Lattice) -> Self {
        let origin = -(lattice.omega1 + lattice.omega2) * 0.5;
        FundamentalCell { origin, lattice }
    }

    /// Point of the cell at coordinates `(s, t) ∈ [0,1)²`.
    pub fn at(&self, s: f64, t: f64) -> Complex64 {
        self.origin + self.lattice.omega1 * s + self.lattice.omega2 * t
    }

    /// Splits `z = z0 + γ` with `z0` in the cell.
    pub fn reduce(&self, z: Complex64) -> (Complex64, LatticePoint) {
        let (s, t) = self.lattice.coordinates(z - self.origin);
        let mut m = floor_index(s);
        let mut n = floor_index(t);
        // z - γ may round onto the far edge; prefer a coordinate that is
        // negative by a rounding error over one equal to 1
        let (s0, t0) = self.lattice.coordinates(z - self.lattice.point(m, n).value - self.origin);
        if s0 >= 1.0 {
            m += 1;
        }
        if t0 >= 1.0 {
            n += 1;
        }
        let gamma = self.lattice.point(m, n);
        (z - gamma.value, gamma)
    }
}

fn floor_index(x: f64) -> i64 {
    let f = x.floor();
    // x - floor(x) can round up to exactly 1 for tiny negative x
    if x - f >= 1.0 {
        f as i64 + 1
    } else {
        f as i64
    }
}
