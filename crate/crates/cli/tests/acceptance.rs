//! Acceptance checks, one line per criterion. Run with
//! `cargo test -p catenoid-cli --test acceptance`.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use catenoid::counting::{
    branch_roots, certify, count_cell, count_hyperbolic_i, count_timelike_hyperbolic_ii, tangency_1a, tangency_2a,
    A_CEIL, A_FLOOR,
};
use catenoid::geometry::{catenoid_family, mean_curvature_residual, surface_causal_character, FnProfile, ProfileJet};
use catenoid::mesh::{max_relative_error, read_obj, tessellate};
use catenoid::rootfind::{count_roots, RootConfig};
use catenoid::{
    count_all, count_timelike_elliptic, critical_constants, sweep_n, BoundaryPair, CatenoidSpec, CausalCharacter, Cell,
    CircleSpec, CountOptions, ProfileCurve, ProfileFamily, RotationClass, Side, Subfamily,
};
use catenoid_cli::{cmd_mesh, default_t_range, MeshOptions, MeshSource, RunConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_ca7e;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

type Check = fn(&mut ChaCha8Rng) -> Outcome;
type RealFn = Box<dyn Fn(f64) -> f64>;

fn opts() -> CountOptions {
    CountOptions::default()
}

fn elliptic_pair(h: f64, r: f64) -> BoundaryPair {
    BoundaryPair::new(
        CircleSpec::elliptic(-h, r).unwrap(),
        CircleSpec::elliptic(h, r).unwrap(),
    )
    .unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn c1_catenary(_: &mut ChaCha8Rng) -> Outcome {
    let (c, dt) = timed(critical_constants);
    let Ok(c) = c else {
        return outcome(false, "critical_constants failed");
    };
    let err = (c.c1_catenary - 1.325).abs();
    outcome(
        err <= 1e-3 && dt < Duration::from_secs(1),
        format!("c1 = {:.6}, |c1 - 1.325| = {err:.1e}, {dt:.1?}", c.c1_catenary),
    )
}

fn tangency_onsets(_: &mut ChaCha8Rng) -> Outcome {
    let (t1, dt1) = timed(tangency_1a);
    let (t2, dt2) = timed(tangency_2a);
    let (Ok(t1), Ok(t2)) = (t1, t2) else {
        return outcome(false, "tangency solve failed");
    };
    let ok = (t1.lambda - 6.202).abs() <= 5e-3
        && (t2.lambda - 7.790).abs() <= 5e-3
        && dt1 < Duration::from_secs(1)
        && dt2 < Duration::from_secs(1);
    outcome(
        ok,
        format!(
            "h*(1a) = {:.6} in {dt1:.1?}, h*(2a) = {:.6} in {dt2:.1?}",
            t1.lambda, t2.lambda
        ),
    )
}

fn two_a_roots_at_h10(_: &mut ChaCha8Rng) -> Outcome {
    let Ok(set) = count_timelike_elliptic(1.0, 10.0, &opts()) else {
        return outcome(false, "count failed");
    };
    let pair = elliptic_pair(10.0, 1.0);
    let two_a: Vec<f64> = set
        .catenoids()
        .filter(|c| c.subfamily == Some(Subfamily::TwoA))
        .map(|c| c.profile.a)
        .collect();
    let found = [0.285, 0.706]
        .iter()
        .all(|w| two_a.iter().any(|a| (a - w).abs() <= 1e-3));
    let certified = set
        .catenoids()
        .all(|c| certify(c, &pair).is_ok_and(|cert| cert.passes(1e-9, 1e-8)));
    outcome(
        found && certified,
        format!(
            "2a roots {two_a:.6?}, {} solutions certified: {certified}",
            set.raw_count
        ),
    )
}

fn hyperbolic_i_pair_solutions(_: &mut ChaCha8Rng) -> Outcome {
    let pair = BoundaryPair::new(
        CircleSpec::hyperbolic_i(-1.0, 2.0, Side::Positive).unwrap(),
        CircleSpec::hyperbolic_i(1.0, 2.0, Side::Positive).unwrap(),
    )
    .unwrap();
    let Ok(set) = count_hyperbolic_i(&pair, &opts()) else {
        return outcome(false, "count failed");
    };
    let mut a: Vec<f64> = set.catenoids().map(|c| c.profile.a).collect();
    a.sort_by(f64::total_cmp);
    let ok = a.len() == 2 && (a[0] - 0.589).abs() <= 1e-3 && (a[1] - 2.126).abs() <= 1e-3;
    outcome(ok, format!("{} solutions, a = {a:.6?}", a.len()))
}

fn trichotomy(_: &mut ChaCha8Rng) -> Outcome {
    let (mut agree, mut total) = (0, 0);
    for i in 1..=10 {
        for j in 1..=10 {
            let (r, h) = (0.3 * i as f64, 0.3 * j as f64);
            let want = usize::from(r > h);
            let se = count_cell(&elliptic_pair(h, r), Cell::SE, &opts()).map(|s| s.raw_count);
            let hii = BoundaryPair::new(
                CircleSpec::hyperbolic_ii(-h, r, Side::Negative).unwrap(),
                CircleSpec::hyperbolic_ii(h, r, Side::Positive).unwrap(),
            )
            .unwrap();
            let ht = count_timelike_hyperbolic_ii(&hii, &opts()).map(|s| s.raw_count);
            agree += usize::from(se == Ok(want)) + usize::from(ht == Ok(want));
            total += 2;
        }
    }
    outcome(agree == total, format!("{agree}/{total} grid cells agree"))
}

fn subfamily_onsets(rng: &mut ChaCha8Rng) -> Outcome {
    let count = |h: f64, sf: Subfamily| count_timelike_elliptic(1.0, h, &opts()).map_or(usize::MAX, |s| s.count(sf));
    let mut bad = Vec::new();
    for (sf, onset) in [(Subfamily::OneB, PI), (Subfamily::TwoB, PI / 2.0)] {
        let mut below: Vec<f64> = (0..49).map(|_| rng.gen_range(1e-3..onset)).collect();
        below.push(onset - 1e-6);
        let mut above: Vec<f64> = (0..49).map(|_| rng.gen_range(onset..30.0) + 1e-6).collect();
        above.push(onset + 1e-6);
        bad.extend(
            below
                .iter()
                .filter(|&&h| count(h, sf) != 0)
                .map(|h| format!("{sf} at {h}")),
        );
        bad.extend(
            above
                .iter()
                .filter(|&&h| count(h, sf) == 0 || count(h, sf) == usize::MAX)
                .map(|h| format!("{sf} at {h}")),
        );
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "50 samples per side for 1b and 2b".into()
        } else {
            format!("mismatches: {bad:?}")
        },
    )
}

fn monotone_sweep(_: &mut ChaCha8Rng) -> Outcome {
    let (rows, dt) = timed(|| sweep_n(1.0, 0.1, 30.0, 300, Cell::TE, &opts()));
    let Ok(rows) = rows else {
        return outcome(false, "sweep failed");
    };
    let monotone = rows.windows(2).all(|w| w[1].deduped_count >= w[0].deduped_count);
    let low = rows.iter().filter(|r| r.h <= 1.0).all(|r| r.deduped_count == 1);
    let high = rows.iter().filter(|r| r.h > 1.0 + 1e-3).all(|r| r.deduped_count >= 2);
    let last = rows.last().map_or(0, |r| r.deduped_count);
    outcome(
        monotone && low && high && dt < Duration::from_secs(10),
        format!(
            "{} rows, N(30) = {last}, non-decreasing {monotone}, {dt:.1?}",
            rows.len()
        ),
    )
}

fn dense_count(f: impl Fn(f64) -> f64) -> usize {
    let n = 1_000_000;
    let (mut count, mut prev) = (0, f(A_FLOOR));
    count += usize::from(prev == 0.0);
    for i in 1..n {
        let v = f(A_FLOOR + (A_CEIL - A_FLOOR) * i as f64 / (n - 1) as f64);
        if v == 0.0 || (prev != 0.0 && (v > 0.0) != (prev > 0.0)) {
            count += 1;
        }
        prev = v;
    }
    count
}

fn oracle_equivalence(rng: &mut ChaCha8Rng) -> Outcome {
    let (mut compared, mut skipped, mut bad) = (0, 0, Vec::new());
    for _ in 0..50 {
        let h: f64 = rng.gen_range(1e-9..=30.0);
        let cfg = RootConfig::default().for_period(2.0 * PI / h);
        let cos_f = move |a: f64| (a * h).cos() - a;
        let sin_f = move |a: f64| (a * h).sin() - a;
        let cases: [(&str, Subfamily, RealFn, RealFn); 2] = [
            (
                "cos",
                Subfamily::OneA,
                Box::new(cos_f),
                Box::new(move |a: f64| -h * (a * h).sin() - 1.0),
            ),
            (
                "sin",
                Subfamily::TwoA,
                Box::new(sin_f),
                Box::new(move |a: f64| h * (a * h).cos() - 1.0),
            ),
        ];
        for (name, sf, f, df) in cases {
            let Ok(roots) = count_roots(&f, &df, A_FLOOR, A_CEIL, &cfg) else {
                bad.push(format!("{name} h={h}: count_roots failed"));
                continue;
            };
            let xs: Vec<f64> = roots.iter().map(|r| r.x).collect();
            let gap = std::iter::once(0.0)
                .chain(xs.iter().copied())
                .chain(std::iter::once(A_CEIL))
                .collect::<Vec<_>>()
                .windows(2)
                .map(|w| w[1] - w[0])
                .fold(f64::INFINITY, f64::min);
            if gap < 1e-4 {
                skipped += 1;
                continue;
            }
            let oracle = dense_count(&f);
            let branch = branch_roots(h, sf, &cfg).map_or(usize::MAX, |r| r.len());
            if xs.len() != oracle || branch != oracle {
                bad.push(format!(
                    "{name} h={h}: count_roots {} branch {branch} oracle {oracle}",
                    xs.len()
                ));
            }
            compared += 1;
        }
    }
    outcome(
        bad.is_empty() && compared > 0,
        if bad.is_empty() {
            format!("{compared} functions match the 1e6-point scan, {skipped} skipped for close roots")
        } else {
            format!("{bad:?}")
        },
    )
}

fn admissible_cells() -> Vec<(RotationClass, CausalCharacter, ProfileFamily)> {
    Cell::ALL
        .into_iter()
        .map(|c| (c.class(), c.causal(), catenoid_family(c.class(), c.causal()).unwrap()))
        .collect()
}

fn residual_certification(rng: &mut ChaCha8Rng) -> Outcome {
    let cells = admissible_cells();
    let (mut worst, mut sign_errors, mut points) = (0.0f64, 0, 0usize);
    for k in 0..1000 {
        let (class, causal, family) = cells[k % cells.len()];
        let mut profile = ProfileCurve::new(family, rng.gen_range(0.2..3.0), rng.gen_range(-1.5..1.5)).unwrap();
        if family == ProfileFamily::SinhOverA && rng.gen_bool(0.5) {
            profile = profile.negate();
        }
        let spec = CatenoidSpec::new(class, causal, profile).unwrap();
        let mut n = 0;
        while n < 100 {
            let (s, t) = (rng.gen_range(-2.0..2.0), rng.gen_range(-1.5..1.5));
            if !spec.profile.is_regular_at(s) {
                continue;
            }
            let ff = spec.fundamental_forms(s, t);
            if ff.is_degenerate() {
                continue;
            }
            n += 1;
            worst = worst.max(ff.normalized_residual().abs());
            sign_errors += usize::from(surface_causal_character(&ff) != causal);
        }
        points += n;
    }
    let cosh = FnProfile(|s: f64| ProfileJet {
        f: s.cosh(),
        df: s.sinh(),
        d2f: s.cosh(),
    });
    let euclid = mean_curvature_residual(RotationClass::Elliptic, &cosh, 1.0, 0.0).map_or(0.0, f64::abs);
    outcome(
        worst < 1e-9 && sign_errors == 0 && euclid > 1e-3,
        format!(
            "{points} points, max |residual| {worst:.1e}, {sign_errors} sign errors, Euclidean catenary {euclid:.3}"
        ),
    )
}

fn random_pair(rng: &mut ChaCha8Rng) -> BoundaryPair {
    loop {
        let side = |rng: &mut ChaCha8Rng| {
            if rng.gen_bool(0.5) {
                Side::Positive
            } else {
                Side::Negative
            }
        };
        let (p1, gap) = (rng.gen_range(-3.0..3.0), rng.gen_range(0.3..5.0));
        let p2 = p1 + gap;
        let r1: f64 = rng.gen_range(0.2..4.0);
        let r2 = if rng.gen_bool(0.5) { r1 } else { rng.gen_range(0.2..4.0) };
        let (s1, s2) = (side(rng), side(rng));
        let pair = match rng.gen_range(0..4) {
            0 => BoundaryPair::new(
                CircleSpec::elliptic(p1, r1).unwrap(),
                CircleSpec::elliptic(p2, r2).unwrap(),
            ),
            1 => BoundaryPair::new(
                CircleSpec::hyperbolic_i(p1, r1, s1).unwrap(),
                CircleSpec::hyperbolic_i(p2, r2, s1).unwrap(),
            ),
            2 => BoundaryPair::new(
                CircleSpec::hyperbolic_ii(p1, r1, s1).unwrap(),
                CircleSpec::hyperbolic_ii(p2, r2, s2).unwrap(),
            ),
            _ => BoundaryPair::new(
                CircleSpec::parabolic(p1, p1 + r1).unwrap(),
                CircleSpec::parabolic(p2, p2 - r2).unwrap(),
            ),
        };
        if let Ok(p) = pair {
            return p;
        }
    }
}

fn homothety(rng: &mut ChaCha8Rng) -> Outcome {
    let (mut worst, mut count_mismatch, mut solutions) = (0.0f64, 0, 0);
    for _ in 0..100 {
        let pair = random_pair(rng);
        let Ok(base) = count_all(&pair, &opts()) else {
            count_mismatch += 1;
            continue;
        };
        for k in [0.5, 2.0, 7.0] {
            let Ok(scaled) = count_all(&pair.scaled(k), &opts()) else {
                count_mismatch += 1;
                continue;
            };
            for (c0, c1) in base.cells.iter().zip(&scaled.cells) {
                let (n0, n1) = (
                    c0.set.as_ref().map(|s| s.raw_count),
                    c1.set.as_ref().map(|s| s.raw_count),
                );
                if n0 != n1 || c0.status != c1.status {
                    count_mismatch += 1;
                    continue;
                }
                let (Some(s0), Some(s1)) = (&c0.set, &c1.set) else {
                    continue;
                };
                for (a, b) in s0.catenoids().zip(s1.catenoids()) {
                    // cubic profiles scale as a/k², the others as a/k
                    let power = if matches!(a.profile.family, ProfileFamily::CubicPlus | ProfileFamily::CubicMinus) {
                        2
                    } else {
                        1
                    };
                    let want = a.profile.a / k.powi(power);
                    worst = worst.max((b.profile.a - want).abs() / want.abs());
                    solutions += 1;
                }
            }
        }
    }
    outcome(
        count_mismatch == 0 && worst <= 1e-10,
        format!("100 pairs x 3 scales, {solutions} solutions compared, max relative error {worst:.1e}, {count_mismatch} count mismatches"),
    )
}

fn export_integrity(_: &mut ChaCha8Rng) -> Outcome {
    let Ok(dir) = tempfile::tempdir() else {
        return outcome(false, "no temp dir");
    };
    let cfg = RunConfig::default();
    let mesh_opts = MeshOptions::default();
    let pairs = [
        elliptic_pair(10.0, 1.0),
        elliptic_pair(0.5, 1.0),
        BoundaryPair::new(
            CircleSpec::hyperbolic_i(-1.0, 2.0, Side::Positive).unwrap(),
            CircleSpec::hyperbolic_i(1.0, 2.0, Side::Positive).unwrap(),
        )
        .unwrap(),
        BoundaryPair::new(
            CircleSpec::hyperbolic_ii(-4.0, 1.0, Side::Positive).unwrap(),
            CircleSpec::hyperbolic_ii(4.0, 1.0, Side::Positive).unwrap(),
        )
        .unwrap(),
        BoundaryPair::new(
            CircleSpec::parabolic(1.0, -1.0).unwrap(),
            CircleSpec::parabolic(2.0, 0.5).unwrap(),
        )
        .unwrap(),
    ];
    let mut sources: Vec<(MeshSource, (f64, f64))> = pairs
        .iter()
        .map(|p| {
            let (s1, s2) = (p.circle1.profile_abscissa(), p.circle2.profile_abscissa());
            (MeshSource::Pair { pair: *p, cell: None }, (s1.min(s2), s1.max(s2)))
        })
        .collect();
    let explicit = CatenoidSpec::new(
        RotationClass::Elliptic,
        CausalCharacter::Spacelike,
        ProfileCurve::new(ProfileFamily::SinhOverA, 1.0, 0.0).unwrap(),
    )
    .unwrap();
    sources.push((MeshSource::Spec(explicit), (-1.0, 1.0)));

    let (mut files, mut worst_rt, mut worst_res, mut failures) = (0, 0.0f64, 0.0f64, Vec::new());
    for (i, (src, s_range)) in sources.iter().enumerate() {
        let written = match cmd_mesh(src, &mesh_opts, &dir.path().join(i.to_string()), &cfg) {
            Ok(w) => w,
            Err(e) => {
                failures.push(e.to_string());
                continue;
            }
        };
        for f in written {
            files += 1;
            let obj = match read_obj(&f.path) {
                Ok(o) => o,
                Err(e) => {
                    failures.push(e.to_string());
                    continue;
                }
            };
            let Some(spec) = obj.catenoid else {
                failures.push(format!("{}: no spec", f.path.display()));
                continue;
            };
            let mesh = tessellate(
                &spec,
                *s_range,
                default_t_range(spec.class),
                mesh_opts.n_s,
                mesh_opts.n_t,
            );
            let Ok(mesh) = mesh else {
                failures.push(format!("{}: re-tessellation failed", f.path.display()));
                continue;
            };
            worst_rt = worst_rt.max(max_relative_error(&mesh.vertices, &obj.vertices));
            worst_res = worst_res.max(obj.max_residual.unwrap_or(f64::INFINITY));
        }
    }
    outcome(
        failures.is_empty() && files > 0 && worst_rt < 1e-8 && worst_res < 1e-9,
        if failures.is_empty() {
            format!("{files} OBJ files, max round-trip error {worst_rt:.1e}, max recorded residual {worst_res:.1e}")
        } else {
            format!("{failures:?}")
        },
    )
}

fn main() -> ExitCode {
    let checks: [(&str, Check); 11] = [
        ("critical catenary ratio", c1_catenary),
        ("timelike elliptic tangency onsets", tangency_onsets),
        ("2a roots at h = 10", two_a_roots_at_h10),
        ("hyperbolic I pair at x = ±1", hyperbolic_i_pair_solutions),
        ("equal-radius trichotomy", trichotomy),
        ("sub-family onsets", subfamily_onsets),
        ("monotone N(h)", monotone_sweep),
        ("oracle equivalence", oracle_equivalence),
        ("residual certification", residual_certification),
        ("homothety equivariance", homothety),
        ("export integrity", export_integrity),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let (o, dt) = timed(|| check(&mut rng));
        failed += usize::from(!o.pass);
        println!(
            "{} {:>2} {name}: {} [{dt:.2?}]",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
