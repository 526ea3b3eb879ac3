//! Boundary problems: given two coaxial circles, find every catenoid of
//! each admissible causal character whose trace contains both.
//!
//! Each pair is first reduced to a planar two-point problem in profile
//! coordinates (abscissa along the axis, ordinate = signed radius). The
//! solutions found there are mapped back through the recorded
//! translation and homothety.

use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    surface_causal_character, CatenoidSpec, CausalCharacter, CircleSpec, GeometryError, ProfileCurve, ProfileFamily,
    RotationClass, Subfamily,
};
use crate::rootfind::{
    bisect, count_roots, solve_monotone, solve_tangency, Bracket, Multiplicity, RootConfig, RootError, RootResult,
    Tangency,
};

/// Lower end of the `a` scan for the sine families; `a = 0` is a trivial
/// root of `sin(ah) − a`.
pub const A_FLOOR: f64 = 1e-6;
/// Upper end of the `a` scan; `|sin|, |cos| <= 1` forces `a <= 1`.
pub const A_CEIL: f64 = 1.0 + 1e-9;
/// Parameter tolerance for congruence classes.
pub const DEDUPE_TOL: f64 = 1e-9;
/// Relative tolerance under which two radii count as equal.
pub const EQUAL_RADIUS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CountError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("invalid boundary pair: {0}")]
    InvalidPair(String),
    #[error("invalid planar point: {0}")]
    InvalidPoint(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}

/// Admissible (rotation class, causal character) cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cell {
    SE,
    TE,
    HI,
    HIIt,
    HIIs,
    PAs,
    PAt,
}

impl Cell {
    pub const ALL: [Cell; 7] = [
        Cell::SE,
        Cell::TE,
        Cell::HI,
        Cell::HIIt,
        Cell::HIIs,
        Cell::PAs,
        Cell::PAt,
    ];

    pub fn class(self) -> RotationClass {
        match self {
            Cell::SE | Cell::TE => RotationClass::Elliptic,
            Cell::HI => RotationClass::HyperbolicI,
            Cell::HIIt | Cell::HIIs => RotationClass::HyperbolicII,
            Cell::PAs | Cell::PAt => RotationClass::Parabolic,
        }
    }

    pub fn causal(self) -> CausalCharacter {
        match self {
            Cell::SE | Cell::HIIs | Cell::PAs => CausalCharacter::Spacelike,
            Cell::TE | Cell::HI | Cell::HIIt | Cell::PAt => CausalCharacter::Timelike,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Cell::SE => "SE",
            Cell::TE => "TE",
            Cell::HI => "HI",
            Cell::HIIt => "HIIt",
            Cell::HIIs => "HIIs",
            Cell::PAs => "PAs",
            Cell::PAt => "PAt",
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Cell {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Cell::ALL
            .into_iter()
            .find(|c| c.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown cell `{s}` (expected one of SE, TE, HI, HIIt, HIIs, PAs, PAt)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct CountOptions {
    /// Also enumerate the sign branches `cos(ah) = −a`, `sin(ah) = −a` of
    /// the sine families, and both spacelike elliptic solutions when a
    /// pair admits an axis-crossing one next to a regular one.
    pub all_sign_branches: bool,
    pub roots: RootConfig,
}

/// Two circles of the same rotation class in distinct planes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPair {
    pub circle1: CircleSpec,
    pub circle2: CircleSpec,
}

impl BoundaryPair {
    pub fn new(circle1: CircleSpec, circle2: CircleSpec) -> Result<Self, CountError> {
        let p = Self { circle1, circle2 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), CountError> {
        self.circle1.validate()?;
        self.circle2.validate()?;
        if self.circle1.class() != self.circle2.class() {
            return Err(CountError::InvalidPair(format!(
                "circles belong to different rotation classes ({} and {})",
                self.circle1.class(),
                self.circle2.class()
            )));
        }
        if self.circle1.profile_abscissa() == self.circle2.profile_abscissa() {
            return Err(CountError::InvalidPair("both circles lie in the same plane".into()));
        }
        Ok(())
    }

    pub fn class(&self) -> RotationClass {
        self.circle1.class()
    }

    pub fn swapped(&self) -> Self {
        Self {
            circle1: self.circle2,
            circle2: self.circle1,
        }
    }

    /// Image under the homothety of ratio `k > 0`.
    pub fn scaled(&self, k: f64) -> Self {
        let scale = |c: CircleSpec| match c {
            CircleSpec::Elliptic { z, r } => CircleSpec::Elliptic { z: k * z, r: k * r },
            CircleSpec::HyperbolicI { x, r, side } => CircleSpec::HyperbolicI {
                x: k * x,
                r: k * r,
                side,
            },
            CircleSpec::HyperbolicII { x, r, side } => CircleSpec::HyperbolicII {
                x: k * x,
                r: k * r,
                side,
            },
            CircleSpec::Parabolic { a, c } => CircleSpec::Parabolic { a: k * a, c: k * c },
        };
        Self {
            circle1: scale(self.circle1),
            circle2: scale(self.circle2),
        }
    }

    /// Common radius, if both circles have one and they agree.
    pub fn equal_radius(&self) -> Option<f64> {
        let (r1, r2) = (self.circle1.radius()?, self.circle2.radius()?);
        ((r1 - r2).abs() <= EQUAL_RADIUS_TOL * r1.max(r2)).then_some(0.5 * (r1 + r2))
    }
}

/// Maps a normalized profile `y(x)` back to `f(s)` through
/// `s = abscissa_shift + scale·x` and
/// `f = ordinate_shift + sign·scale·y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transform {
    pub abscissa_shift: f64,
    pub ordinate_shift: f64,
    pub scale: f64,
    pub sign: f64,
}

impl Transform {
    pub const IDENTITY: Self = Self {
        abscissa_shift: 0.0,
        ordinate_shift: 0.0,
        scale: 1.0,
        sign: 1.0,
    };

    pub fn to_original(&self, p: ProfileCurve) -> ProfileCurve {
        let mut out = match p.family {
            ProfileFamily::CubicPlus | ProfileFamily::CubicMinus => ProfileCurve {
                a: p.a / (self.scale * self.scale),
                b: self.ordinate_shift + self.scale * p.b,
                ..p
            },
            _ => {
                let a = p.a / self.scale;
                ProfileCurve {
                    a,
                    b: p.b - a * self.abscissa_shift,
                    ..p
                }
            }
        };
        if self.sign < 0.0 {
            out = out.negate();
        }
        out
    }
}

/// Planar two-point problem equivalent to a boundary pair. The first
/// circle goes to `anchor`: `(0, 1)` for elliptic and hyperbolic pairs,
/// `(1, 0)` for parabolic ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedPair {
    pub anchor: (f64, f64),
    pub target: (f64, f64),
    pub transform: Transform,
    pub obstruction: Option<String>,
}

const SIDE_OBSTRUCTION_I: &str = "circles on opposite sides of the plane y = 0: a cosh profile never changes sign";

pub fn normalize_pair(pair: &BoundaryPair) -> Result<NormalizedPair, CountError> {
    pair.validate()?;
    let (c1, c2) = (pair.circle1, pair.circle2);
    let (s1, f1) = (c1.profile_abscissa(), c1.profile_value());
    let (s2, f2) = (c2.profile_abscissa(), c2.profile_value());
    Ok(match pair.class() {
        RotationClass::Parabolic => NormalizedPair {
            anchor: (1.0, 0.0),
            target: (s2 / s1, (f2 - f1) / s1),
            transform: Transform {
                abscissa_shift: 0.0,
                ordinate_shift: f1,
                scale: s1,
                sign: 1.0,
            },
            obstruction: None,
        },
        class => NormalizedPair {
            anchor: (0.0, 1.0),
            target: ((s2 - s1) / f1.abs(), f2 / f1),
            transform: Transform {
                abscissa_shift: s1,
                ordinate_shift: 0.0,
                scale: f1.abs(),
                sign: f1.signum(),
            },
            obstruction: (class == RotationClass::HyperbolicI && f1 * f2 < 0.0).then(|| SIDE_OBSTRUCTION_I.to_string()),
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub catenoid: CatenoidSpec,
    pub multiplicity: Multiplicity,
    /// Congruent solutions share a class id.
    pub class_id: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub cell: Cell,
    pub solutions: Vec<Solution>,
    pub raw_count: usize,
    pub deduped_count: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subfamily_counts: BTreeMap<Subfamily, usize>,
    pub obstruction: Option<String>,
}

impl SolutionSet {
    pub fn new(cell: Cell, solutions: Vec<Solution>, obstruction: Option<String>) -> Self {
        let mut ids: Vec<usize> = solutions.iter().map(|s| s.class_id).collect();
        ids.sort_unstable();
        ids.dedup();
        let mut subfamily_counts = BTreeMap::new();
        for s in &solutions {
            if let Some(sf) = s.catenoid.subfamily {
                *subfamily_counts.entry(sf).or_insert(0) += 1;
            }
        }
        Self {
            cell,
            raw_count: solutions.len(),
            deduped_count: ids.len(),
            solutions,
            subfamily_counts,
            obstruction,
        }
    }

    fn empty(cell: Cell, obstruction: impl Into<String>) -> Self {
        Self::new(cell, Vec::new(), Some(obstruction.into()))
    }

    pub fn count(&self, sf: Subfamily) -> usize {
        self.subfamily_counts.get(&sf).copied().unwrap_or(0)
    }

    pub fn has_tangential(&self) -> bool {
        self.solutions
            .iter()
            .any(|s| s.multiplicity == Multiplicity::Tangential)
    }

    pub fn catenoids(&self) -> impl Iterator<Item = &CatenoidSpec> {
        self.solutions.iter().map(|s| &s.catenoid)
    }
}

fn distinct(
    cell: Cell,
    profiles: Vec<(ProfileCurve, Multiplicity)>,
    obstruction: Option<String>,
) -> Result<SolutionSet, CountError> {
    let solutions = profiles
        .into_iter()
        .enumerate()
        .map(|(i, (p, m))| {
            Ok(Solution {
                catenoid: CatenoidSpec::new(cell.class(), cell.causal(), p)?,
                multiplicity: m,
                class_id: i,
            })
        })
        .collect::<Result<Vec<_>, CountError>>()?;
    Ok(SolutionSet::new(cell, solutions, obstruction))
}

// ---------------------------------------------------------------- sinh ---

/// Increasing sinh profile through `(0, 1)` evaluated at `x`.
fn sinh_from_anchor(a: f64, x: f64) -> f64 {
    (a * x + a.asinh()).sinh() / a
}

/// The unique profile `±sinh(as + b)/a` through `(0, 1)` and `(x0, y0)`.
///
/// The increasing branch reaches `y0 > 1 + x0` (for `x0 > 0`) or
/// `y0 < 1 + x0` (for `x0 < 0`); the decreasing branch is its mirror image.
fn sinh_through(x0: f64, y0: f64) -> Result<Option<ProfileCurve>, CountError> {
    let increasing = (x0 > 0.0 && y0 > 1.0 + x0) || (x0 < 0.0 && y0 < 1.0 + x0);
    let decreasing = (x0 < 0.0 && y0 > 1.0 - x0) || (x0 > 0.0 && y0 < 1.0 - x0);
    let (x, negated) = if increasing {
        (x0, false)
    } else if decreasing {
        (-x0, true)
    } else {
        return Ok(None);
    };
    let Some(root) = solve_monotone(|a| sinh_from_anchor(a, x), y0, 1.0)? else {
        return Ok(None);
    };
    let a = root.x;
    let b = if negated { -a.asinh() } else { a.asinh() };
    Ok(Some(ProfileCurve {
        family: ProfileFamily::SinhOverA,
        a,
        b,
        negated,
    }))
}

fn se_profiles(x0: f64, y0: f64, opts: &CountOptions) -> Result<(Vec<ProfileCurve>, Option<String>), CountError> {
    let y0 = y0.abs();
    let regular = sinh_through(x0, y0)?;
    let crossing = sinh_through(x0, -y0)?;
    let picked: Vec<ProfileCurve> = if opts.all_sign_branches {
        regular.into_iter().chain(crossing).collect()
    } else {
        regular.or(crossing).into_iter().collect()
    };
    let obstruction = picked.is_empty().then(|| {
        "normalized point lies outside the region reached by sinh profiles (circles too far apart)".to_string()
    });
    Ok((picked, obstruction))
}

fn check_planar(p: (f64, f64), forbidden: (f64, f64)) -> Result<(), CountError> {
    let (x0, y0) = p;
    if !x0.is_finite() || !y0.is_finite() {
        return Err(CountError::InvalidPoint(format!("non-finite point ({x0}, {y0})")));
    }
    if x0 == forbidden.0 {
        return Err(CountError::InvalidPoint(format!(
            "point ({x0}, {y0}) lies in the plane of the anchor circle"
        )));
    }
    if p == forbidden {
        return Err(CountError::InvalidPoint("point coincides with the anchor".into()));
    }
    Ok(())
}

/// Spacelike elliptic catenoids through the normalized circles `(0, 1)`
/// and `P = (x0, y0)`, at most one unless all sign branches are requested.
pub fn count_spacelike_elliptic(p: (f64, f64), opts: &CountOptions) -> Result<SolutionSet, CountError> {
    check_planar(p, (0.0, 1.0))?;
    if p.1 == 0.0 {
        return Err(CountError::InvalidPoint("point lies on the rotation axis".into()));
    }
    let (profiles, obstruction) = se_profiles(p.0, p.1, opts)?;
    let profiles = profiles
        .into_iter()
        .map(|p| (ProfileCurve { negated: false, ..p }, Multiplicity::Simple))
        .collect();
    distinct(Cell::SE, profiles, obstruction)
}

fn se_pair(pair: &BoundaryPair, opts: &CountOptions) -> Result<SolutionSet, CountError> {
    let n = normalize_pair(pair)?;
    let (profiles, obstruction) = se_profiles(n.target.0, n.target.1, opts)?;
    let profiles = profiles
        .into_iter()
        .map(|p| {
            // -f and f sweep the same elliptic surface
            let q = n.transform.to_original(p);
            (ProfileCurve { negated: false, ..q }, Multiplicity::Simple)
        })
        .collect();
    distinct(Cell::SE, profiles, obstruction)
}

/// Timelike hyperbolic catenoids of type II: a signed sinh profile through
/// both circles, with the side of `z = 0` giving the sign.
pub fn count_timelike_hyperbolic_ii(pair: &BoundaryPair, _opts: &CountOptions) -> Result<SolutionSet, CountError> {
    expect_class(pair, RotationClass::HyperbolicII)?;
    let n = normalize_pair(pair)?;
    let (x0, y0) = n.target;
    match sinh_through(x0, y0)? {
        Some(p) => distinct(
            Cell::HIIt,
            vec![(n.transform.to_original(p), Multiplicity::Simple)],
            None,
        ),
        None => {
            let reason = if y0 > 0.0 && pair.equal_radius().is_some() {
                "equal circles on the same side of the plane z = 0 cannot be joined by a sinh profile".to_string()
            } else {
                format!("normalized point ({x0}, {y0}) lies outside the region reached by sinh profiles")
            };
            Ok(SolutionSet::empty(Cell::HIIt, reason))
        }
    }
}

fn expect_class(pair: &BoundaryPair, class: RotationClass) -> Result<(), CountError> {
    pair.validate()?;
    if pair.class() != class {
        return Err(CountError::InvalidPair(format!(
            "expected {class} circles, got {}",
            pair.class()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------- cosh ---

fn ln_cosh(x: f64) -> f64 {
    let ax = x.abs();
    ax + (-2.0 * ax).exp().ln_1p() - LN_2
}

/// Roots `u` of `ln cosh(u + d·cosh u) − ln ρ − ln cosh u`: with
/// `a = cosh(u)` and `b = u`, the profile `cosh(as + b)/a` passes through
/// `(0, 1)` and `(d, ρ)`.
fn hyperbolic_i_roots(d: f64, rho: f64, cfg: &RootConfig) -> Result<Vec<RootResult>, CountError> {
    let ln_rho = rho.ln();
    let l = |u: f64| ln_cosh(u + d * u.cosh()) - ln_rho - ln_cosh(u);
    let dl = |u: f64| {
        let w = u + d * u.cosh();
        w.tanh() * (1.0 + d * u.sinh()) - u.tanh()
    };
    // l(u) >= |d| cosh u − 2|u| − ln 2 − |ln ρ|, increasing once |d| sinh u > 2
    let ad = d.abs();
    let mut bound = 1.0;
    while !(ad * f64::cosh(bound) - 2.0 * bound - LN_2 - ln_rho.abs() > 0.0 && ad * f64::sinh(bound) > 2.0) {
        bound += 0.5;
    }
    Ok(count_roots(l, dl, -bound, bound, cfg)?)
}

/// Timelike hyperbolic catenoids of type I: `0`, `1` (tangential) or `2`.
pub fn count_hyperbolic_i(pair: &BoundaryPair, opts: &CountOptions) -> Result<SolutionSet, CountError> {
    expect_class(pair, RotationClass::HyperbolicI)?;
    let n = normalize_pair(pair)?;
    if let Some(reason) = n.obstruction {
        return Ok(SolutionSet::empty(Cell::HI, reason));
    }
    let (d, rho) = n.target;
    let profiles: Vec<_> = hyperbolic_i_roots(d, rho, &opts.roots)?
        .into_iter()
        .map(|r| {
            let p = ProfileCurve {
                family: ProfileFamily::CoshOverA,
                a: r.x.cosh(),
                b: r.x,
                negated: false,
            };
            (n.transform.to_original(p), r.multiplicity)
        })
        .collect();
    let obstruction = profiles
        .is_empty()
        .then(|| "separation too large for the radii: no cosh profile reaches both circles".to_string());
    distinct(Cell::HI, profiles, obstruction)
}

// ---------------------------------------------------------------- sine ---

/// A normalized sine-profile solution for circles of radius 1 at `∓h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SineRoot {
    pub a: f64,
    pub b: f64,
    pub subfamily: Subfamily,
    pub multiplicity: Multiplicity,
}

fn wrap(b: f64, period: f64) -> f64 {
    let w = b.rem_euclid(period);
    if w >= period {
        0.0
    } else {
        w
    }
}

fn same_angle(x: f64, y: f64, period: f64) -> bool {
    let d = (x - y).rem_euclid(period);
    d.min(period - d) <= DEDUPE_TOL
}

fn same_a(x: f64, y: f64) -> bool {
    (x - y).abs() <= DEDUPE_TOL * x.abs().max(y.abs()).max(1.0)
}

/// Every `(a, b)` with `|sin(∓ah + b)/a| = 1`, tagged by sub-family, with
/// `b` reduced to `[0, π)`.
///
/// - `1a`: `b = π/2`, `cos(ah) = a`
/// - `1b`: `a = kπ/h`, `sin b = ±kπ/h`
/// - `2a`: `b = 0`, `sin(ah) = a`
/// - `2b`: `a = (2k+1)π/(2h)`, `cos b = ±(2k+1)π/(2h)`
/// - `1a-`, `2a-`: `cos(ah) = −a`, `sin(ah) = −a` (sign branches only)
pub fn sine_roots(h: f64, opts: &CountOptions) -> Result<Vec<SineRoot>, CountError> {
    if h <= 0.0 || !h.is_finite() {
        return Err(CountError::InvalidPair(format!(
            "half-separation must be positive, got {h}"
        )));
    }
    let cfg = opts.roots.for_period(2.0 * PI / h);
    let mut branches = vec![Subfamily::OneA, Subfamily::TwoA];
    if opts.all_sign_branches {
        branches.extend([Subfamily::OneANeg, Subfamily::TwoANeg]);
    }
    let mut out = Vec::new();
    for sf in branches {
        let b = if matches!(sf, Subfamily::OneA | Subfamily::OneANeg) {
            PI / 2.0
        } else {
            0.0
        };
        for r in branch_roots(h, sf, &cfg)? {
            out.push(SineRoot {
                a: r.x,
                b,
                subfamily: sf,
                multiplicity: r.multiplicity,
            });
        }
    }

    let mut push_pair = |sf: Subfamily, a: f64, beta: f64| {
        let b1 = wrap(beta, PI);
        let b2 = wrap(PI - beta, PI);
        out.push(SineRoot {
            a,
            b: b1,
            subfamily: sf,
            multiplicity: Multiplicity::Simple,
        });
        if !same_angle(b1, b2, PI) {
            out.push(SineRoot {
                a,
                b: b2,
                subfamily: sf,
                multiplicity: Multiplicity::Simple,
            });
        }
    };
    for k in 1.. {
        let c = k as f64 * PI / h;
        if c > 1.0 {
            break;
        }
        push_pair(Subfamily::OneB, c, c.asin());
    }
    for k in 0.. {
        let c = (2 * k + 1) as f64 * PI / (2.0 * h);
        if c > 1.0 {
            break;
        }
        // {acos c, π − acos c} = {β, π − β} with β = π/2 − asin c
        push_pair(Subfamily::TwoB, c, c.acos());
    }
    out.sort_by_key(|s| order(s.subfamily));
    Ok(out)
}

// sin x − x without cancellation near 0
fn sin_gap(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        let x2 = x * x;
        -x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)))
    } else {
        x.sin() - x
    }
}

// x cos x − sin x without cancellation near 0
fn cos_gap(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        let x2 = x * x;
        -x * x2 / 3.0 * (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0 * (1.0 - x2 / 54.0)))
    } else {
        x * x.cos() - x.sin()
    }
}

/// Roots in `[A_FLOOR, A_CEIL]` of the one-parameter branches:
/// `cos(ah) = ±a` for `1a`/`1a-`, `sin(ah) = ±a` for `2a`/`2a-`. The sine
/// branches are scanned as `sin(ah)/a ∓ 1`, which has the same positive
/// roots but stays away from zero as `a → 0`.
pub fn branch_roots(h: f64, sf: Subfamily, cfg: &RootConfig) -> Result<Vec<RootResult>, CountError> {
    let sinc = |a: f64| sin_gap(a * h) / a + h;
    let dsinc = |a: f64| cos_gap(a * h) / (a * a);
    let roots = match sf {
        Subfamily::OneA => count_roots(
            |a| (a * h).cos() - a,
            |a| -h * (a * h).sin() - 1.0,
            A_FLOOR,
            A_CEIL,
            cfg,
        )?,
        Subfamily::OneANeg => count_roots(
            |a| (a * h).cos() + a,
            |a| -h * (a * h).sin() + 1.0,
            A_FLOOR,
            A_CEIL,
            cfg,
        )?,
        Subfamily::TwoA => count_roots(|a| sinc(a) - 1.0, dsinc, A_FLOOR, A_CEIL, cfg)?,
        Subfamily::TwoANeg => count_roots(|a| sinc(a) + 1.0, dsinc, A_FLOOR, A_CEIL, cfg)?,
        Subfamily::OneB | Subfamily::TwoB => {
            return Err(CountError::InvalidSweep(format!(
                "{sf} is enumerated in closed form, not scanned"
            )))
        }
    };
    Ok(roots)
}

fn order(sf: Subfamily) -> usize {
    Subfamily::ALL.iter().position(|x| *x == sf).unwrap_or(usize::MAX)
}

fn class_ids<T>(items: &[T], congruent: impl Fn(&T, &T) -> bool) -> Vec<usize> {
    let mut ids: Vec<usize> = Vec::with_capacity(items.len());
    let mut next = 0;
    for (i, x) in items.iter().enumerate() {
        match (0..i).find(|&j| congruent(&items[j], x)) {
            Some(j) => ids.push(ids[j]),
            None => {
                ids.push(next);
                next += 1;
            }
        }
    }
    ids
}

fn sine_set(
    cell: Cell,
    roots: Vec<SineRoot>,
    ids: Vec<usize>,
    transform: Transform,
    period: f64,
    obstruction: Option<String>,
) -> Result<SolutionSet, CountError> {
    let solutions = roots
        .iter()
        .zip(ids)
        .map(|(s, class_id)| {
            let mut p = transform.to_original(ProfileCurve {
                family: ProfileFamily::SinOverA,
                a: s.a,
                b: s.b,
                negated: false,
            });
            p.b = wrap(p.b, period);
            Ok(Solution {
                catenoid: CatenoidSpec::new(cell.class(), cell.causal(), p)?.with_subfamily(s.subfamily),
                multiplicity: s.multiplicity,
                class_id,
            })
        })
        .collect::<Result<Vec<_>, CountError>>()?;
    Ok(SolutionSet::new(cell, solutions, obstruction))
}

fn symmetric_sine_set(cell: Cell, r: f64, h: f64, center: f64, opts: &CountOptions) -> Result<SolutionSet, CountError> {
    if r <= 0.0 || !r.is_finite() {
        return Err(CountError::InvalidPair(format!("radius must be positive, got {r}")));
    }
    let roots = sine_roots(h / r, opts)?;
    // f ~ −f (b + π) and the mirror s → −s (b → −b)
    let ids = class_ids(&roots, |x, y| {
        same_a(x.a, y.a) && (same_angle(x.b, y.b, PI) || same_angle(x.b, -y.b, PI))
    });
    let transform = Transform {
        abscissa_shift: center,
        ordinate_shift: 0.0,
        scale: r,
        sign: 1.0,
    };
    sine_set(cell, roots, ids, transform, PI, None)
}

/// Timelike elliptic catenoids spanning circles of radius `r` in the
/// planes `z = ±h`.
pub fn count_timelike_elliptic(r: f64, h: f64, opts: &CountOptions) -> Result<SolutionSet, CountError> {
    symmetric_sine_set(Cell::TE, r, h, 0.0, opts)
}

/// Spacelike hyperbolic catenoids of type II for circles of radius `r` at
/// `x = ±h`, without side constraints (the same equations as the timelike
/// elliptic case).
pub fn count_spacelike_hyperbolic_ii(r: f64, h: f64, opts: &CountOptions) -> Result<SolutionSet, CountError> {
    symmetric_sine_set(Cell::HIIs, r, h, 0.0, opts)
}

fn equal_radius_or_scope(pair: &BoundaryPair, cell: Cell) -> Result<f64, CountError> {
    pair.equal_radius().ok_or_else(|| {
        CountError::OutOfScope(format!(
            "{cell} counting is restricted to equal radii (got {} and {})",
            pair.circle1.radius().unwrap_or(f64::NAN),
            pair.circle2.radius().unwrap_or(f64::NAN)
        ))
    })
}

fn te_pair(pair: &BoundaryPair, opts: &CountOptions) -> Result<SolutionSet, CountError> {
    let r = equal_radius_or_scope(pair, Cell::TE)?;
    let (z1, z2) = (pair.circle1.profile_abscissa(), pair.circle2.profile_abscissa());
    symmetric_sine_set(Cell::TE, r, 0.5 * (z2 - z1).abs(), 0.5 * (z1 + z2), opts)
}

/// Spacelike hyperbolic type II catenoids for an equal-radius pair, keeping
/// only the solutions whose sign at each plane matches the circle's side.
fn hiis_pair(pair: &BoundaryPair, opts: &CountOptions) -> Result<SolutionSet, CountError> {
    let r = equal_radius_or_scope(pair, Cell::HIIs)?;
    let (x1, x2) = (pair.circle1.profile_abscissa(), pair.circle2.profile_abscissa());
    let (v1, v2) = (pair.circle1.profile_value(), pair.circle2.profile_value());
    let center = 0.5 * (x1 + x2);
    let (p1, p2) = ((x1 - center) / r, (x2 - center) / r);
    let roots: Vec<SineRoot> = sine_roots(0.5 * (x2 - x1).abs() / r, opts)?
        .into_iter()
        .filter_map(|s| {
            [s.b, s.b + PI].into_iter().find_map(|b| {
                let ok = (s.a * p1 + b).sin().signum() == v1.signum() && (s.a * p2 + b).sin().signum() == v2.signum();
                ok.then_some(SineRoot {
                    b: wrap(b, 2.0 * PI),
                    ..s
                })
            })
        })
        .collect();
    let same_side = v1 * v2 > 0.0;
    let ids = class_ids(&roots, |x, y| {
        let mirror = if same_side { PI - y.b } else { -y.b };
        same_a(x.a, y.a) && (same_angle(x.b, y.b, 2.0 * PI) || same_angle(x.b, mirror, 2.0 * PI))
    });
    let obstruction = roots
        .is_empty()
        .then(|| "no sine profile takes the prescribed signs at both planes".to_string());
    let transform = Transform {
        abscissa_shift: center,
        ordinate_shift: 0.0,
        scale: r,
        sign: 1.0,
    };
    sine_set(Cell::HIIs, roots, ids, transform, 2.0 * PI, obstruction)
}

// ----------------------------------------------------------- parabolic ---

/// Parabolic catenoids through the normalized points `(1, 0)` and
/// `Q = (x0, y0)`: `a = y0 / (x0³ − 1)` is forced, its sign picks the
/// causal character. Returns the spacelike and timelike sets.
pub fn count_parabolic(q: (f64, f64)) -> Result<(SolutionSet, SolutionSet), CountError> {
    check_planar(q, (1.0, 0.0))?;
    if q.0 == 0.0 {
        return Err(CountError::InvalidPoint("point lies on the rotation axis".into()));
    }
    parabolic_sets(q, &Transform::IDENTITY)
}

fn parabolic_sets(q: (f64, f64), transform: &Transform) -> Result<(SolutionSet, SolutionSet), CountError> {
    let (x0, y0) = q;
    let a = y0 / (x0.powi(3) - 1.0);
    let cubic = |family, a: f64| {
        let p = ProfileCurve {
            family,
            a,
            b: if family == ProfileFamily::CubicPlus { -a } else { a },
            negated: false,
        };
        vec![(transform.to_original(p), Multiplicity::Simple)]
    };
    let spacelike = if a > 0.0 && a.is_finite() {
        distinct(Cell::PAs, cubic(ProfileFamily::CubicPlus, a), None)?
    } else {
        SolutionSet::empty(Cell::PAs, "normalized point outside R1 ∪ R2 (a <= 0)")
    };
    let timelike = if a < 0.0 && a.is_finite() {
        distinct(Cell::PAt, cubic(ProfileFamily::CubicMinus, -a), None)?
    } else {
        SolutionSet::empty(Cell::PAt, "normalized point outside T1 ∪ T2 (a >= 0)")
    };
    Ok((spacelike, timelike))
}

fn parabolic_pair(pair: &BoundaryPair) -> Result<(SolutionSet, SolutionSet), CountError> {
    let n = normalize_pair(pair)?;
    parabolic_sets(n.target, &n.transform)
}

// ------------------------------------------------------------ dispatch ---

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Computed,
    Inadmissible,
    OutOfScope,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub cell: Option<Cell>,
    pub class: RotationClass,
    pub causal: CausalCharacter,
    pub status: CellStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<SolutionSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CellReport {
    fn computed(set: SolutionSet) -> Self {
        Self {
            cell: Some(set.cell),
            class: set.cell.class(),
            causal: set.cell.causal(),
            status: CellStatus::Computed,
            set: Some(set),
            note: None,
        }
    }

    fn from_result(cell: Cell, r: Result<SolutionSet, CountError>) -> Result<Self, CountError> {
        match r {
            Ok(set) => Ok(Self::computed(set)),
            Err(CountError::OutOfScope(note)) => Ok(Self {
                cell: Some(cell),
                class: cell.class(),
                causal: cell.causal(),
                status: CellStatus::OutOfScope,
                set: None,
                note: Some(note),
            }),
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountTable {
    pub pair: BoundaryPair,
    pub cells: Vec<CellReport>,
}

impl CountTable {
    pub fn get(&self, cell: Cell) -> Option<&SolutionSet> {
        self.cells
            .iter()
            .find(|c| c.cell == Some(cell))
            .and_then(|c| c.set.as_ref())
    }
}

/// Every admissible cell for the pair's rotation class.
pub fn count_all(pair: &BoundaryPair, opts: &CountOptions) -> Result<CountTable, CountError> {
    pair.validate()?;
    let cells = match pair.class() {
        RotationClass::Elliptic => vec![
            CellReport::computed(se_pair(pair, opts)?),
            CellReport::from_result(Cell::TE, te_pair(pair, opts))?,
        ],
        RotationClass::HyperbolicI => vec![
            CellReport {
                cell: None,
                class: RotationClass::HyperbolicI,
                causal: CausalCharacter::Spacelike,
                status: CellStatus::Inadmissible,
                set: None,
                note: Some("no spacelike rotational surface of hyperbolic type I has zero mean curvature".into()),
            },
            CellReport::computed(count_hyperbolic_i(pair, opts)?),
        ],
        RotationClass::HyperbolicII => vec![
            CellReport::from_result(Cell::HIIs, hiis_pair(pair, opts))?,
            CellReport::computed(count_timelike_hyperbolic_ii(pair, opts)?),
        ],
        RotationClass::Parabolic => {
            let (s, t) = parabolic_pair(pair)?;
            vec![CellReport::computed(s), CellReport::computed(t)]
        }
    };
    Ok(CountTable { pair: *pair, cells })
}

/// Solutions of one cell for a pair.
pub fn count_cell(pair: &BoundaryPair, cell: Cell, opts: &CountOptions) -> Result<SolutionSet, CountError> {
    if pair.class() != cell.class() {
        return Err(CountError::InvalidPair(format!(
            "cell {cell} needs {} circles, got {}",
            cell.class(),
            pair.class()
        )));
    }
    match cell {
        Cell::SE => se_pair(pair, opts),
        Cell::TE => te_pair(pair, opts),
        Cell::HI => count_hyperbolic_i(pair, opts),
        Cell::HIIt => count_timelike_hyperbolic_ii(pair, opts),
        Cell::HIIs => hiis_pair(pair, opts),
        Cell::PAs => Ok(parabolic_pair(pair)?.0),
        Cell::PAt => Ok(parabolic_pair(pair)?.1),
    }
}

// ----------------------------------------------------------- constants ---

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantResiduals {
    /// `u·tanh(u) − 1` at `u*`.
    pub u_star: f64,
    /// `cosh(c1·a/2)/a − 1` at the minimizing `a`.
    pub c1_catenary: f64,
    pub h_star_1a: f64,
    pub h_star_2a: f64,
    /// `∂F/∂a` at the two tangencies.
    pub h_star_1a_slope: f64,
    pub h_star_2a_slope: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalConstants {
    /// Largest separation/radius ratio (full separation) for which a
    /// hyperbolic type I catenoid joins two equal circles.
    pub c1_catenary: f64,
    pub u_star: f64,
    /// `c1` recomputed as a tangency of `cosh(aD/2)/a = 1`.
    pub c1_tangency: f64,
    /// Half-separation at which `cos(ah) = a` gains two roots.
    pub h_star_1a: f64,
    /// Half-separation at which `sin(ah) = a` gains two roots.
    pub h_star_2a: f64,
    pub onset_1b: f64,
    pub onset_2b: f64,
    /// `N(h) = 1` for `h/r <= c0`.
    pub c0: f64,
    pub residuals: ConstantResiduals,
}

pub fn tangency_1a() -> Result<Tangency, RootError> {
    solve_tangency(
        |a, h| (a * h).cos() - a,
        |a, h| -h * (a * h).sin() - 1.0,
        |h| (1.5 * PI / h, 2.0 * PI / h),
        2.0,
        20.0,
    )
}

pub fn tangency_2a() -> Result<Tangency, RootError> {
    solve_tangency(
        |a, h| (a * h).sin() - a,
        |a, h| h * (a * h).cos() - 1.0,
        |h| (2.0 * PI / h, 2.5 * PI / h),
        2.0,
        20.0,
    )
}

/// Tangency of `cosh(a·D/2)/a = 1` in the full separation `D`.
pub fn tangency_catenary() -> Result<Tangency, RootError> {
    solve_tangency(
        |a, d| (0.5 * a * d).cosh() / a - 1.0,
        |a, d| 0.5 * d * (0.5 * a * d).sinh() / a - (0.5 * a * d).cosh() / (a * a),
        |d| (2.0 / d, 4.0 / d),
        1.0,
        2.0,
    )
}

/// Root of `u·tanh(u) = 1` on `[1, 2]`.
pub fn u_star() -> Result<f64, RootError> {
    let g = |u: f64| u * u.tanh() - 1.0;
    Ok(bisect(g, Bracket::new(g, 1.0, 2.0)?, 0.0)?.x)
}

pub fn critical_constants() -> Result<CriticalConstants, CountError> {
    let u = u_star()?;
    let c1 = 2.0 * u / u.cosh();
    let cat = tangency_catenary()?;
    let t1 = tangency_1a()?;
    let t2 = tangency_2a()?;
    let a_min = 2.0 * u / c1;
    Ok(CriticalConstants {
        c1_catenary: c1,
        u_star: u,
        c1_tangency: cat.lambda,
        h_star_1a: t1.lambda,
        h_star_2a: t2.lambda,
        onset_1b: PI,
        onset_2b: PI / 2.0,
        c0: 1.0,
        residuals: ConstantResiduals {
            u_star: u * u.tanh() - 1.0,
            c1_catenary: (0.5 * a_min * c1).cosh() / a_min - 1.0,
            h_star_1a: t1.value,
            h_star_2a: t2.value,
            h_star_1a_slope: t1.derivative,
            h_star_2a_slope: t2.derivative,
        },
    })
}

// --------------------------------------------------------------- sweep ---

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub h: f64,
    pub raw_count: usize,
    pub deduped_count: usize,
    pub n_1a: usize,
    pub n_1b: usize,
    pub n_2a: usize,
    pub n_2b: usize,
    pub n_1a_neg: usize,
    pub n_2a_neg: usize,
    pub tangential: bool,
}

impl SweepRow {
    pub fn from_set(h: f64, set: &SolutionSet) -> Self {
        Self {
            h,
            raw_count: set.raw_count,
            deduped_count: set.deduped_count,
            n_1a: set.count(Subfamily::OneA),
            n_1b: set.count(Subfamily::OneB),
            n_2a: set.count(Subfamily::TwoA),
            n_2b: set.count(Subfamily::TwoB),
            n_1a_neg: set.count(Subfamily::OneANeg),
            n_2a_neg: set.count(Subfamily::TwoANeg),
            tangential: set.has_tangential(),
        }
    }
}

/// `N(h)` on `steps` evenly spaced half-separations in `[h_lo, h_hi]`.
pub fn sweep_n(
    r: f64,
    h_lo: f64,
    h_hi: f64,
    steps: usize,
    cell: Cell,
    opts: &CountOptions,
) -> Result<Vec<SweepRow>, CountError> {
    if !matches!(cell, Cell::TE | Cell::HIIs) {
        return Err(CountError::InvalidSweep(format!("cell must be TE or HIIs, got {cell}")));
    }
    if steps < 2 {
        return Err(CountError::InvalidSweep(format!("need at least 2 steps, got {steps}")));
    }
    if r <= 0.0 || !r.is_finite() {
        return Err(CountError::InvalidSweep(format!("radius must be positive, got {r}")));
    }
    if !(h_lo > 0.0 && h_lo < h_hi && h_hi.is_finite()) {
        return Err(CountError::InvalidSweep(format!(
            "need 0 < h_lo < h_hi, got [{h_lo}, {h_hi}]"
        )));
    }
    (0..steps)
        .map(|i| {
            let h = if i + 1 == steps {
                h_hi
            } else {
                h_lo + (h_hi - h_lo) * i as f64 / (steps - 1) as f64
            };
            let set = symmetric_sine_set(cell, r, h, 0.0, opts)?;
            Ok(SweepRow::from_set(h, &set))
        })
        .collect()
}

// ------------------------------------------------------- certification ---

/// Residual and interpolation check of one solution against its pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub max_residual: f64,
    pub max_deviation: f64,
    pub sign_ok: bool,
    pub samples: usize,
}

impl Certificate {
    pub fn passes(&self, residual_tol: f64, deviation_tol: f64) -> bool {
        self.sign_ok && self.samples > 0 && self.max_residual < residual_tol && self.max_deviation < deviation_tol
    }
}

/// Samples a `10 × 10` grid of `(s, t)` between the two planes (skipping
/// singular points) and 21 points of each boundary circle.
pub fn certify(spec: &CatenoidSpec, pair: &BoundaryPair) -> Result<Certificate, CountError> {
    let (s1, s2) = (pair.circle1.profile_abscissa(), pair.circle2.profile_abscissa());
    let (lo, hi) = (s1.min(s2), s1.max(s2));
    let mut max_residual: f64 = 0.0;
    let mut sign_ok = true;
    let mut samples = 0;
    for i in 0..10 {
        let s = lo + (hi - lo) * (i as f64 + 0.5) / 10.0;
        if !spec.profile.is_regular_at(s) {
            continue;
        }
        for j in 0..10 {
            let t = -1.0 + 2.0 * j as f64 / 9.0;
            let ff = spec.fundamental_forms(s, t);
            if ff.is_degenerate() {
                continue;
            }
            samples += 1;
            max_residual = max_residual.max(ff.normalized_residual().abs());
            sign_ok &= surface_causal_character(&ff) == spec.causal;
        }
    }
    let max_deviation = spec
        .circle_deviation(&pair.circle1, 1.0, 21)?
        .max(spec.circle_deviation(&pair.circle2, 1.0, 21)?);
    Ok(Certificate {
        max_residual,
        max_deviation,
        sign_ok,
        samples,
    })
}
