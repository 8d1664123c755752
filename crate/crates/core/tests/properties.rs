use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use theta_kernel::coeffs::{coeff, conj_symmetry_residual, CoeffIndex};
use theta_kernel::hermite::hermite_eval;
use theta_kernel::kernel::ThetaFockSpace;
use theta_kernel::lattice::{FundamentalCell, Lattice};
use theta_kernel::pseudochar::PseudoCharacter;
use theta_kernel::zeros::{zero_count_seeded, zero_locate};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn lattice() -> impl Strategy<Value = Lattice> {
    (0.6f64..1.6, -PI..PI, -0.5f64..0.5, 0.7f64..1.5)
        .prop_map(|(r, th, x, y)| {
            let w1 = Complex64::from_polar(r, th);
            Lattice::new(w1, w1 * c(x, y)).unwrap()
        })
}

fn point() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| c(a, b))
}

fn unit() -> impl Strategy<Value = Complex64> {
    (-PI..PI).prop_map(|t| Complex64::from_polar(1.0, t))
}

fn space() -> impl Strategy<Value = ThetaFockSpace> {
    (lattice(), 1u32..=3, unit(), unit()).prop_map(|(lat, k, u1, u2)| {
        let nu = k as f64 * PI / lat.cell_area();
        ThetaFockSpace::new(PseudoCharacter::from_generators(lat, nu, u1, u2).unwrap())
    })
}

fn weierstrass_space() -> impl Strategy<Value = ThetaFockSpace> {
    (lattice(), 1u32..=3).prop_map(|(lat, k)| {
        ThetaFockSpace::weierstrass(lat, k as f64 * PI / lat.cell_area()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduce_recombines(lat in lattice(), z in point()) {
        let cell = FundamentalCell::centered(lat);
        let (z0, g) = cell.reduce(z);
        prop_assert!((z0 + g.value - z).norm() < 1e-12);
        let (s, t) = lat.coordinates(z0 - cell.at(0.0, 0.0));
        prop_assert!((-1e-12..1.0).contains(&s) && (-1e-12..1.0).contains(&t), "{s} {t}");
    }

    #[test]
    fn shells_have_8k_points(lat in lattice(), k in 0usize..6) {
        let shell = lat.shell(k);
        prop_assert_eq!(shell.len(), if k == 0 { 1 } else { 8 * k });
        for p in &shell {
            prop_assert_eq!(p.m.abs().max(p.n.abs()) as usize, k);
            prop_assert!(p.value.norm() >= k as f64 * lat.shell_radius_factor() * (1.0 - 1e-12));
        }
    }

    #[test]
    fn area_scales_quadratically(lat in lattice(), lambda in point().prop_filter("nonzero", |l| l.norm() > 0.1)) {
        let scaled = lat.scaled(lambda).unwrap();
        let expected = lambda.norm_sqr() * lat.cell_area();
        prop_assert!((scaled.cell_area() - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn character_cocycle_and_inverse(sp in space(), m in -6i64..6, n in -6i64..6) {
        let chi = sp.chi();
        prop_assert!((chi.eval_mn(-m, -n) - chi.eval_mn(m, n).conj()).norm() < 1e-12);
        prop_assert!((chi.eval_mn(m, n).norm() - 1.0).abs() < 1e-12);
        prop_assert!(chi.verify_cocycle(2) < 1e-11);
    }

    #[test]
    fn hermite_symmetries(nu in 0.2f64..8.0, m in 0usize..8, n in 0usize..8, xi in point(), t in 0.3f64..3.0) {
        let h = hermite_eval(nu, m, n, xi).unwrap();
        let tol = 1e-10 * h.norm().max(1.0);
        prop_assert!((hermite_eval(nu, n, m, xi).unwrap() - h.conj()).norm() <= tol);
        let sign = if (m + n) % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((hermite_eval(nu, m, n, -xi).unwrap() - h * sign).norm() <= tol);
        // H^{tν}(ξ/√t) = t^{(m+n)/2} H^ν(ξ)
        let lhs = hermite_eval(t * nu, m, n, xi / t.sqrt()).unwrap();
        let rhs = h * t.powf((m + n) as f64 / 2.0);
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1.0));
    }

    #[test]
    fn kernel_is_hermitian(sp in space(), z in point(), w in point()) {
        let a = sp.kernel_eval(z, w, 1e-13).unwrap();
        let b = sp.kernel_eval(w, z, 1e-13).unwrap();
        prop_assert!((a.value - b.value.conj()).norm() <= 1e-11 * a.mass.max(1.0));
        let d = sp.kernel_eval(z, z, 1e-13).unwrap().value;
        prop_assert!(d.im.abs() <= 1e-11 * d.norm().max(1.0));
    }

    #[test]
    fn reduced_kernel_is_periodic(sp in space(), z in point(), w in point(), m in -2i64..=2, n in -2i64..=2) {
        let nu = sp.nu();
        let g = sp.lattice().point(m, n).value;
        let reduced = |z: Complex64| {
            let k = sp.kernel_eval(z, w, 1e-14).unwrap();
            (k.value.norm() * (-0.5 * nu * z.norm_sqr()).exp(), k.mass * (-0.5 * nu * z.norm_sqr()).exp())
        };
        let (a, ma) = reduced(z);
        let (b, _) = reduced(z + g);
        prop_assert!((a - b).abs() <= 1e-10 * ma.max(a), "{a} {b}");
    }

    #[test]
    fn coefficient_conjugation(sp in space(), m in 0usize..4, n in 0usize..4, p in 0usize..3, q in 0usize..3) {
        let idx = CoeffIndex::new(m, n, p, q);
        let r = conj_symmetry_residual(&sp, idx, 1e-14).unwrap();
        prop_assert!(r.swapped <= 1e-10 * r.scale.max(1.0), "{:?}", r);
    }

    #[test]
    fn odd_coefficients_vanish_for_real_characters(lat in lattice(), k in 1u32..=3, s1 in any::<bool>(), s2 in any::<bool>(),
                                                   m in 0usize..4, n in 0usize..4, p in 0usize..3, q in 0usize..3) {
        prop_assume!((m + n + p + q) % 2 == 1);
        let nu = k as f64 * PI / lat.cell_area();
        let u = |s: bool| c(if s { 1.0 } else { -1.0 }, 0.0);
        let sp = ThetaFockSpace::new(PseudoCharacter::from_generators(lat, nu, u(s1), u(s2)).unwrap());
        let a = coeff(&sp, CoeffIndex::new(m, n, p, q), 1e-14).unwrap();
        prop_assert!(a.value.norm() <= 1e-12 * a.mass.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn zero_count_is_stable_across_shifts(sp in weierstrass_space(), s in 0.05f64..0.95, t in 0.05f64..0.95, seed in any::<u64>()) {
        let w = FundamentalCell::centered(*sp.lattice()).at(s, t);
        let a = zero_count_seeded(&sp, w, 64, seed).unwrap();
        let b = zero_count_seeded(&sp, w, 64, seed.wrapping_add(1)).unwrap();
        prop_assert_eq!(a.count, sp.dimension());
        prop_assert_eq!(a.count, b.count);
    }

    #[test]
    fn zero_sum_is_fixed_modulo_lattice(sp in weierstrass_space(), s1 in 0.05f64..0.95, t1 in 0.05f64..0.95,
                                        s2 in 0.05f64..0.95, t2 in 0.05f64..0.95) {
        // all sections of one line bundle share the sum of their zeros mod Γ
        let cell = FundamentalCell::centered(*sp.lattice());
        let sum = |w: Complex64| {
            let zs = zero_locate(&sp, w, 24).unwrap();
            assert_eq!(zs.total, sp.dimension());
            zs.zeros.iter().map(|z| z.location * z.multiplicity as f64).sum::<Complex64>()
        };
        let a = sum(cell.at(s1, t1));
        let b = sum(cell.at(s2, t2));
        prop_assert!(sp.lattice().distance_mod(a, b) < 1e-7, "{a} {b}");
    }
}
