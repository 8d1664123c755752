//! Checks against independent implementations: brute-force lattice sums
//! written from the definitions, a symbolic Rodrigues-formula Hermite, and
//! reference constants computed separately with mpmath at 40 digits.

use std::f64::consts::PI;

use approx::assert_relative_eq;
use num_complex::Complex64;
use theta_kernel::coeffs::{coeff, gaussian_char_sum, CoeffIndex};
use theta_kernel::elliptic::{theta2, theta3, WeierstrassData};
use theta_kernel::hermite::hermite_eval;
use theta_kernel::kernel::ThetaFockSpace;
use theta_kernel::lattice::Lattice;
use theta_kernel::pseudochar::PseudoCharacter;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// χ(mω₁ + nω₂) = u1^m u2^n (−1)^{kmn}, written out directly.
fn brute_chi(u1: Complex64, u2: Complex64, k: u32, m: i64, n: i64) -> Complex64 {
    let sign = if (k as i64 * m * n).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    u1.powi(m as i32) * u2.powi(n as i32) * sign
}

fn brute_kernel(lat: &Lattice, nu: f64, u1: Complex64, u2: Complex64, k: u32, z: Complex64, w: Complex64) -> Complex64 {
    let r = 14;
    let mut total = c(0.0, 0.0);
    for m in -r..=r {
        for n in -r..=r {
            let g = lat.omega1() * m as f64 + lat.omega2() * n as f64;
            let e = -0.5 * nu * g.norm_sqr() + nu * (z * g.conj() - w.conj() * g + z * w.conj());
            total += brute_chi(u1, u2, k, m, n) * e.exp();
        }
    }
    total * (nu / PI)
}

/// Rodrigues formula with ξ and ξ̄ treated as independent variables: the
/// derivative of `P(ξ, ξ̄) e^{−νξξ̄}` is `(∂P − ν·(other variable)·P) e^{−νξξ̄}`.
fn rodrigues_hermite(nu: f64, m: usize, n: usize, xi: Complex64) -> Complex64 {
    let size = m + n + 2;
    // poly[i][j] is the coefficient of ξ^i ξ̄^j
    let mut poly = vec![vec![0.0f64; size]; size];
    poly[0][0] = 1.0;
    for _ in 0..n {
        // ∂/∂ξ
        let mut next = vec![vec![0.0; size]; size];
        for i in 0..size {
            for j in 0..size {
                let a = poly[i][j];
                if a == 0.0 {
                    continue;
                }
                if i > 0 {
                    next[i - 1][j] += a * i as f64;
                }
                if j + 1 < size {
                    next[i][j + 1] -= nu * a;
                }
            }
        }
        poly = next;
    }
    for _ in 0..m {
        // ∂/∂ξ̄
        let mut next = vec![vec![0.0; size]; size];
        for i in 0..size {
            for j in 0..size {
                let a = poly[i][j];
                if a == 0.0 {
                    continue;
                }
                if j > 0 {
                    next[i][j - 1] += a * j as f64;
                }
                if i + 1 < size {
                    next[i + 1][j] -= nu * a;
                }
            }
        }
        poly = next;
    }
    let sign = if (m + n).is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut total = c(0.0, 0.0);
    for (i, row) in poly.iter().enumerate() {
        for (j, &a) in row.iter().enumerate() {
            total += xi.powi(i as i32) * xi.conj().powi(j as i32) * a;
        }
    }
    total * sign
}

#[test]
fn hermite_matches_rodrigues_formula() {
    for &(nu, xi) in &[(1.0, c(0.3, -0.7)), (2.0 * PI, c(-1.1, 0.4)), (0.37, c(2.0, 1.5))] {
        for m in 0..7 {
            for n in 0..7 {
                let lib = hermite_eval(nu, m, n, xi).unwrap();
                let oracle = rodrigues_hermite(nu, m, n, xi);
                assert!(
                    (lib - oracle).norm() <= 1e-11 * oracle.norm().max(1.0),
                    "nu={nu} m={m} n={n}: {lib} vs {oracle}"
                );
            }
        }
    }
}

#[test]
fn kernel_matches_brute_force() {
    let cases = [
        (Lattice::square(), PI, c(-1.0, 0.0), c(-1.0, 0.0)),
        (Lattice::square(), 3.0 * PI, c(0.0, 1.0), Complex64::from_polar(1.0, 0.4)),
        (
            Lattice::new(c(1.0, 0.0), c(0.3, 1.1)).unwrap(),
            2.0 * PI / 1.1,
            Complex64::from_polar(1.0, -1.2),
            c(1.0, 0.0),
        ),
    ];
    let points = [(c(0.1, 0.2), c(-0.3, 0.15)), (c(0.45, -0.3), c(0.2, 0.4)), (c(0.0, 0.0), c(0.7, -0.1))];
    for (lat, nu, u1, u2) in cases {
        let chi = PseudoCharacter::from_generators(lat, nu, u1, u2).unwrap();
        let k = chi.k();
        let sp = ThetaFockSpace::new(chi);
        for &(z, w) in &points {
            let lib = sp.kernel_eval(z, w, 1e-14).unwrap().value;
            let oracle = brute_kernel(&lat, nu, u1, u2, k, z, w);
            assert!((lib - oracle).norm() <= 1e-12 * oracle.norm().max(1.0), "{lib} vs {oracle}");
        }
    }
}

#[test]
fn coefficients_match_brute_force() {
    let lat = Lattice::new(c(1.0, 0.0), c(0.3, 1.1)).unwrap();
    let nu = 2.0 * PI / 1.1;
    let (u1, u2) = (c(0.0, 1.0), Complex64::from_polar(1.0, 0.4));
    let chi = PseudoCharacter::from_generators(lat, nu, u1, u2).unwrap();
    let k = chi.k();
    let sp = ThetaFockSpace::new(chi);
    for &(m, n, p, q) in &[(0, 0, 0, 0), (1, 2, 0, 0), (2, 1, 1, 0), (3, 3, 0, 2), (0, 4, 1, 1)] {
        let lib = coeff(&sp, CoeffIndex::new(m, n, p, q), 1e-15).unwrap().value;
        let mut oracle = c(0.0, 0.0);
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let g = lat.omega1() * a as f64 + lat.omega2() * b as f64;
                oracle += brute_chi(u1, u2, k, a, b)
                    * g.powi(p as i32)
                    * g.conj().powi(q as i32)
                    * (-0.5 * nu * g.norm_sqr()).exp()
                    * rodrigues_hermite(nu, m, n, g);
            }
        }
        assert!((lib - oracle).norm() <= 1e-11 * oracle.norm().max(1.0), "({m},{n},{p},{q}): {lib} vs {oracle}");
    }
}

#[test]
fn theta_constants_match_reference() {
    // mpmath jtheta(2|3, 0, q)
    let cases = [
        ((-2.0f64).exp(), 1.235_286_765_853_890_3, 1.271_341_522_189_015_2),
        (0.3, 1.614_460_341_194_433_5, 1.616_239_374_609_513_7),
        ((-PI).exp(), 0.913_579_138_156_116_8, 1.086_434_811_213_308),
    ];
    for (q, t2, t3) in cases {
        assert_relative_eq!(theta2(c(q, 0.0)).unwrap().re, t2, max_relative = 1e-14);
        assert_relative_eq!(theta3(c(q, 0.0)).unwrap().re, t3, max_relative = 1e-14);
    }
    let q = c(0.2, 0.35);
    let t2 = theta2(q).unwrap();
    let t3 = theta3(q).unwrap();
    assert!((t2 - c(1.360_505_886_918_368_1, 0.597_408_172_168_180_4)).norm() < 1e-14);
    assert!((t3 - c(1.373_850_353_216_070_3, 0.653_776_603_157_921)).norm() < 1e-14);
}

#[test]
fn char_sum_matches_reference() {
    // 40-digit direct summation over |m|, |n| ≤ 60
    for (t, v) in [
        (0.5, -1.639_374_599_640_091_8),
        (2.5, 0.919_636_274_290_767_7),
        (0.3, -3.262_001_550_073_172),
    ] {
        assert_relative_eq!(gaussian_char_sum(t).unwrap(), v, max_relative = 1e-13);
    }
}

#[test]
fn sigma_matches_reference() {
    // σ from θ₁ in mpmath, base period 1
    let square = WeierstrassData::new(Lattice::square()).unwrap();
    assert!((square.sigma(c(0.3, 0.1)) - c(0.300_101_333_461_953_94, 0.097_508_834_107_548_2)).norm() < 1e-14);
    assert!((square.sigma(c(0.5, 0.0)) - c(0.474_949_379_987_920_65, 0.0)).norm() < 1e-14);

    let lat = Lattice::new(c(1.0, 0.0), c(0.3, 1.1)).unwrap();
    let wd = WeierstrassData::new(lat).unwrap();
    let s = wd.sigma(c(0.21, -0.17));
    assert!((s - c(0.210_721_959_155_157_24, -0.170_056_797_767_178_78)).norm() < 1e-14, "{s}");
    let (a, b) = lat.coordinates(c(1.0, 0.0));
    let one = lat.point(a.round() as i64, b.round() as i64);
    let eta = wd.quasi_period(&one).unwrap();
    assert!((eta - c(3.314_365_795_830_820_2, -0.074_673_079_105_922_24)).norm() < 1e-13, "{eta}");
}

#[test]
fn square_lattice_k2_zero_positions() {
    // For w = a + bi the two zeros sit at −a − (1/2 − b)i and −(1/2 − a) − bi.
    let sp = ThetaFockSpace::weierstrass(Lattice::square(), 2.0 * PI).unwrap();
    for w in [c(0.3, 0.2), c(0.1, -0.35), c(-0.42, 0.05)] {
        let expected = [c(-w.re, w.im - 0.5), c(w.re - 0.5, -w.im)];
        for z in expected {
            let v = sp.kernel_eval(z, w, 1e-14).unwrap();
            assert!(v.value.norm() < 1e-13 * v.mass, "w={w} z={z}: {}", v.value);
        }
    }
}
