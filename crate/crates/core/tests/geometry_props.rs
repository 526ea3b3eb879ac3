use catenoid::geometry::*;
use proptest::prelude::*;

const CLASSES: [RotationClass; 4] = [
    RotationClass::Elliptic,
    RotationClass::HyperbolicI,
    RotationClass::HyperbolicII,
    RotationClass::Parabolic,
];

/// Admissible (class, causal) cells with their family.
fn cells() -> Vec<(RotationClass, CausalCharacter, ProfileFamily)> {
    let mut out = Vec::new();
    for class in CLASSES {
        for causal in [CausalCharacter::Spacelike, CausalCharacter::Timelike] {
            if let Some(f) = catenoid_family(class, causal) {
                out.push((class, causal, f));
            }
        }
    }
    out
}

fn vector() -> impl Strategy<Value = LorentzVector> {
    (-5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64).prop_map(|(x, y, z)| LorentzVector::new(x, y, z))
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

fn catenoid() -> impl Strategy<Value = CatenoidSpec> {
    let n = cells().len();
    (0..n, 0.2..3.0f64, -1.5..1.5f64, any::<bool>()).prop_map(|(i, a, b, flip)| {
        let (class, causal, family) = cells()[i];
        let mut p = ProfileCurve::new(family, a, b).unwrap();
        // a negated cubic belongs to the other parabolic cell
        if flip && class != RotationClass::Parabolic {
            p = p.negate();
        }
        CatenoidSpec::new(class, causal, p).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn rotations_are_isometries(ci in 0..4usize, t in -3.0..3.0f64, u in vector(), v in vector()) {
        let a = rotation_matrix(CLASSES[ci], t);
        let lhs = lorentz_inner(&a.apply(&u), &a.apply(&v));
        let rhs = lorentz_inner(&u, &v);
        // cosh(3)^2 amplifies rounding in the hyperbolic case
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + u.euclidean_norm_sq() + v.euclidean_norm_sq()) * (1.0 + t.cosh().powi(2)));
    }

    #[test]
    fn group_law(ci in 0..4usize, t1 in -2.0..2.0f64, t2 in -2.0..2.0f64) {
        let class = CLASSES[ci];
        let prod = rotation_matrix(class, t1).compose(&rotation_matrix(class, t2));
        prop_assert!(prod.max_abs_diff(&rotation_matrix(class, t1 + t2)) <= 1e-12 * (1.0 + (t1.abs() + t2.abs()).cosh()));
    }

    #[test]
    fn orbits_are_rotation_images(
        ci in 0..4usize,
        p in -3.0..3.0f64,
        r in 0.1..4.0f64,
        neg in any::<bool>(),
        t in -2.0..2.0f64,
    ) {
        let side = if neg { Side::Negative } else { Side::Positive };
        let c = match CLASSES[ci] {
            RotationClass::Elliptic => CircleSpec::elliptic(p, r),
            RotationClass::HyperbolicI => CircleSpec::hyperbolic_i(p, r, side),
            RotationClass::HyperbolicII => CircleSpec::hyperbolic_ii(p, r, side),
            RotationClass::Parabolic => CircleSpec::parabolic(p, p + if neg { -r } else { r }),
        }.unwrap();
        let rotated = rotation_matrix(c.class(), c.rotation_angle(t)).apply(&c.circle_point(0.0).unwrap());
        let direct = c.circle_point(t).unwrap();
        prop_assert!(rotated.euclidean_distance(&direct) <= 1e-12 * (1.0 + direct.euclidean_norm_sq().sqrt()));
    }

    #[test]
    fn catenoids_have_zero_mean_curvature(cat in catenoid(), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0;
        while checked < 100 {
            let s = rng.gen_range(-2.0..2.0);
            let t = rng.gen_range(-1.5..1.5);
            if !cat.profile.is_regular_at(s) {
                continue;
            }
            let ff = cat.fundamental_forms(s, t);
            if ff.is_degenerate() {
                continue;
            }
            checked += 1;
            prop_assert!(ff.normalized_residual().abs() < 1e-9, "{cat:?} at ({s}, {t})");
            prop_assert_eq!(surface_causal_character(&ff), cat.causal);
        }
    }

    #[test]
    fn partials_match_finite_differences(cat in catenoid(), s in -1.5..1.5f64, t in -1.0..1.0f64) {
        prop_assume!(cat.profile.is_regular_at(s));
        let j = surface_jet(cat.class, &cat.profile, s, t);
        let x = |s: f64, t: f64| cat.surface_point(s, t);
        let h = 1e-5;
        let ds = (x(s + h, t) - x(s - h, t)) * (0.5 / h);
        let dt = (x(s, t + h) - x(s, t - h)) * (0.5 / h);
        let dss = (x(s + h, t) - x(s, t) * 2.0 + x(s - h, t)) * (1.0 / (h * h));
        let dst = (x(s + h, t + h) - x(s + h, t - h) - x(s - h, t + h) + x(s - h, t - h)) * (0.25 / (h * h));
        let check = |analytic: LorentzVector, fd: LorentzVector, tol: f64| {
            let scale = 1.0 + analytic.euclidean_norm_sq().sqrt();
            analytic.euclidean_distance(&fd) / scale < tol
        };
        prop_assert!(check(j.ds, ds, 1e-6));
        prop_assert!(check(j.dt, dt, 1e-6));
        // second differences lose half the digits at this step
        prop_assert!(check(j.dss, dss, 1e-4));
        prop_assert!(check(j.dst, dst, 1e-4));

        let f_fd = lorentz_inner(&ds, &dt);
        let ff = cat.fundamental_forms(s, t);
        prop_assert!(rel_close(ff.f, f_fd, 1e-6));
    }
}

#[test]
fn euclidean_catenary_is_not_a_solution() {
    let p = FnProfile(|s: f64| ProfileJet {
        f: s.cosh(),
        df: s.sinh(),
        d2f: s.cosh(),
    });
    let r = mean_curvature_residual(RotationClass::Elliptic, &p, 1.0, 0.0).unwrap();
    assert!(r.abs() > 1e-3);
}

#[test]
fn lightlike_classification_is_scale_invariant() {
    for k in [1e-6, 1.0, 1e6] {
        assert_eq!(
            LorentzVector::new(3.0 * k, 4.0 * k, 5.0 * k).causal_character(),
            CausalCharacter::Lightlike
        );
    }
}
