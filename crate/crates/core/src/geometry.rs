//! Lorentz-Minkowski primitives: the metric `dx² + dy² − dz²`, causal
//! classification, the three one-parameter rotation groups, their circle
//! orbits, rotational surfaces and the zero mean curvature residual.
//!
//! Every rotational surface is written as `X(s, t) = A(t)·γ(s)` where
//! `A(t)` is the rotation group of the class and `γ` the meridian curve
//! built from a profile function `f`. All partial derivatives come from
//! closed forms of `A`, `A'`, `A''` and the profile jet; finite
//! differences only appear in tests.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative threshold below which `⟨v, v⟩` counts as zero.
pub const LIGHTLIKE_TOL: f64 = 1e-12;

/// Relative threshold below which the induced metric counts as degenerate.
pub const DEGENERATE_TOL: f64 = 1e-12;

/// Sample points closer than this to a zero of `f` (or to `s = 0` for the
/// cubic profiles) are treated as singular.
pub const SINGULAR_EXCLUSION: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("invalid circle: field `{field}` {reason}")]
    InvalidCircle { field: &'static str, reason: String },
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("inadmissible cell ({class}, {causal}): no catenoid profile exists")]
    InadmissibleCell {
        class: RotationClass,
        causal: CausalCharacter,
    },
    #[error("profile family {family} does not generate ({class}, {causal}) catenoids")]
    FamilyMismatch {
        class: RotationClass,
        causal: CausalCharacter,
        family: ProfileFamily,
    },
    #[error("degenerate induced metric at (s, t) = ({s}, {t}): EG - F^2 = {discriminant:e}")]
    DegenerateMetric { s: f64, t: f64, discriminant: f64 },
}

/// A point or vector in Lorentz-Minkowski 3-space.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LorentzVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl LorentzVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn inner(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y - self.z * other.z
    }

    pub fn euclidean_norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn euclidean_distance(&self, other: &Self) -> f64 {
        (*self - *other).euclidean_norm_sq().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn causal_character(&self) -> CausalCharacter {
        let q = self.inner(self);
        let n = self.euclidean_norm_sq();
        if n == 0.0 {
            return CausalCharacter::Spacelike;
        }
        if q.abs() <= LIGHTLIKE_TOL * (1.0 + n) {
            CausalCharacter::Lightlike
        } else if q > 0.0 {
            CausalCharacter::Spacelike
        } else {
            CausalCharacter::Timelike
        }
    }

    fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl Add for LorentzVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for LorentzVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for LorentzVector {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Self::new(self.x * k, self.y * k, self.z * k)
    }
}

impl Neg for LorentzVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

pub fn lorentz_inner(u: &LorentzVector, v: &LorentzVector) -> f64 {
    u.inner(v)
}

pub fn causal_character(v: &LorentzVector) -> CausalCharacter {
    v.causal_character()
}

/// Euclidean triple product `det(u, v, w)`.
pub fn det3(u: &LorentzVector, v: &LorentzVector, w: &LorentzVector) -> f64 {
    u.x * (v.y * w.z - v.z * w.y) - u.y * (v.x * w.z - v.z * w.x) + u.z * (v.x * w.y - v.y * w.x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
}

impl fmt::Display for CausalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Spacelike => "spacelike",
            Self::Timelike => "timelike",
            Self::Lightlike => "lightlike",
        })
    }
}

/// Rotation group of a rotational surface, named by the causal character
/// of its axis. The two hyperbolic types share the axis `sp{e1}` and differ
/// in the plane containing the meridian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RotationClass {
    Elliptic,
    HyperbolicI,
    HyperbolicII,
    Parabolic,
}

impl fmt::Display for RotationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Elliptic => "elliptic",
            Self::HyperbolicI => "hyperbolic_i",
            Self::HyperbolicII => "hyperbolic_ii",
            Self::Parabolic => "parabolic",
        })
    }
}

/// Row-major 3×3 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix3(pub [[f64; 3]; 3]);

impl Matrix3 {
    pub const IDENTITY: Self = Self([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn apply(&self, v: &LorentzVector) -> LorentzVector {
        let m = &self.0;
        let a = v.as_array();
        let row = |i: usize| m[i][0] * a[0] + m[i][1] * a[1] + m[i][2] * a[2];
        LorentzVector::new(row(0), row(1), row(2))
    }

    pub fn compose(&self, other: &Self) -> Self {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        Self(out)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                d = d.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        d
    }
}

/// The isometry `A(t)` fixing the rotation axis of `class`.
pub fn rotation_matrix(class: RotationClass, t: f64) -> Matrix3 {
    match class {
        RotationClass::Elliptic => {
            let (s, c) = t.sin_cos();
            Matrix3([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
        }
        RotationClass::HyperbolicI | RotationClass::HyperbolicII => {
            let (s, c) = (t.sinh(), t.cosh());
            Matrix3([[1.0, 0.0, 0.0], [0.0, c, s], [0.0, s, c]])
        }
        RotationClass::Parabolic => {
            let h = 0.5 * t * t;
            Matrix3([[1.0 - h, t, h], [-t, 1.0, t], [-h, t, 1.0 + h]])
        }
    }
}

fn rotation_derivative(class: RotationClass, t: f64) -> Matrix3 {
    match class {
        RotationClass::Elliptic => {
            let (s, c) = t.sin_cos();
            Matrix3([[-s, -c, 0.0], [c, -s, 0.0], [0.0, 0.0, 0.0]])
        }
        RotationClass::HyperbolicI | RotationClass::HyperbolicII => {
            let (s, c) = (t.sinh(), t.cosh());
            Matrix3([[0.0, 0.0, 0.0], [0.0, s, c], [0.0, c, s]])
        }
        RotationClass::Parabolic => Matrix3([[-t, 1.0, t], [-1.0, 0.0, 1.0], [-t, 1.0, t]]),
    }
}

fn rotation_second_derivative(class: RotationClass, t: f64) -> Matrix3 {
    match class {
        RotationClass::Elliptic => {
            let (s, c) = t.sin_cos();
            Matrix3([[-c, s, 0.0], [-s, -c, 0.0], [0.0, 0.0, 0.0]])
        }
        RotationClass::HyperbolicI | RotationClass::HyperbolicII => {
            let (s, c) = (t.sinh(), t.cosh());
            Matrix3([[0.0, 0.0, 0.0], [0.0, c, s], [0.0, s, c]])
        }
        RotationClass::Parabolic => Matrix3([[-1.0, 0.0, 1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 1.0]]),
    }
}

/// Which side of the plane `y = 0` (type I) or `z = 0` (type II) a
/// hyperbolic circle lies on. Serialized as `1` / `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Side {
    Positive,
    Negative,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Positive => 1.0,
            Side::Negative => -1.0,
        }
    }

    pub fn from_sign(v: f64) -> Self {
        if v < 0.0 {
            Side::Negative
        } else {
            Side::Positive
        }
    }
}

impl TryFrom<i8> for Side {
    type Error = String;
    fn try_from(v: i8) -> Result<Self, String> {
        match v {
            1 => Ok(Side::Positive),
            -1 => Ok(Side::Negative),
            other => Err(format!("side must be 1 or -1, got {other}")),
        }
    }
}

impl From<Side> for i8 {
    fn from(s: Side) -> i8 {
        match s {
            Side::Positive => 1,
            Side::Negative => -1,
        }
    }
}

/// A circle of Lorentz-Minkowski space: the orbit of a point off the axis
/// under one of the rotation groups.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case", deny_unknown_fields)]
pub enum CircleSpec {
    /// Euclidean circle of radius `r` in the plane at height `z`.
    Elliptic { z: f64, r: f64 },
    /// Timelike hyperbola in the plane at `x`, on `side` of `y = 0`.
    HyperbolicI { x: f64, r: f64, side: Side },
    /// Spacelike hyperbola in the plane at `x`, on `side` of `z = 0`.
    HyperbolicII { x: f64, r: f64, side: Side },
    /// Parabola through the anchor `(a, 0, c)`, requires `a != c`.
    Parabolic { a: f64, c: f64 },
}

impl CircleSpec {
    pub fn elliptic(z: f64, r: f64) -> Result<Self, GeometryError> {
        Self::Elliptic { z, r }.validated()
    }

    pub fn hyperbolic_i(x: f64, r: f64, side: Side) -> Result<Self, GeometryError> {
        Self::HyperbolicI { x, r, side }.validated()
    }

    pub fn hyperbolic_ii(x: f64, r: f64, side: Side) -> Result<Self, GeometryError> {
        Self::HyperbolicII { x, r, side }.validated()
    }

    pub fn parabolic(a: f64, c: f64) -> Result<Self, GeometryError> {
        Self::Parabolic { a, c }.validated()
    }

    pub fn validated(self) -> Result<Self, GeometryError> {
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        let finite = |field: &'static str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(GeometryError::InvalidCircle {
                    field,
                    reason: format!("must be finite, got {v}"),
                })
            }
        };
        let radius = |r: f64| {
            finite("r", r)?;
            if r > 0.0 {
                Ok(())
            } else {
                Err(GeometryError::InvalidCircle {
                    field: "r",
                    reason: format!("must be positive, got {r}"),
                })
            }
        };
        match *self {
            CircleSpec::Elliptic { z, r } => {
                finite("z", z)?;
                radius(r)
            }
            CircleSpec::HyperbolicI { x, r, .. } | CircleSpec::HyperbolicII { x, r, .. } => {
                finite("x", x)?;
                radius(r)
            }
            CircleSpec::Parabolic { a, c } => {
                finite("a", a)?;
                finite("c", c)?;
                if a - c == 0.0 {
                    Err(GeometryError::InvalidCircle {
                        field: "c",
                        reason: "anchor lies on the lightlike axis (a - c = 0)".into(),
                    })
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn class(&self) -> RotationClass {
        match self {
            CircleSpec::Elliptic { .. } => RotationClass::Elliptic,
            CircleSpec::HyperbolicI { .. } => RotationClass::HyperbolicI,
            CircleSpec::HyperbolicII { .. } => RotationClass::HyperbolicII,
            CircleSpec::Parabolic { .. } => RotationClass::Parabolic,
        }
    }

    /// Meridian parameter `s` of the plane containing the circle.
    pub fn profile_abscissa(&self) -> f64 {
        match *self {
            CircleSpec::Elliptic { z, .. } => z,
            CircleSpec::HyperbolicI { x, .. } | CircleSpec::HyperbolicII { x, .. } => x,
            CircleSpec::Parabolic { a, c } => 0.5 * (a - c),
        }
    }

    /// Value the profile must take at [`Self::profile_abscissa`]. Elliptic
    /// radii are unsigned: `f = ±r` both describe the circle.
    pub fn profile_value(&self) -> f64 {
        match *self {
            CircleSpec::Elliptic { r, .. } => r,
            CircleSpec::HyperbolicI { r, side, .. } | CircleSpec::HyperbolicII { r, side, .. } => side.sign() * r,
            CircleSpec::Parabolic { a, c } => 0.5 * (a + c),
        }
    }

    pub fn radius(&self) -> Option<f64> {
        match *self {
            CircleSpec::Elliptic { r, .. } | CircleSpec::HyperbolicI { r, .. } | CircleSpec::HyperbolicII { r, .. } => {
                Some(r)
            }
            CircleSpec::Parabolic { .. } => None,
        }
    }

    pub fn circle_point(&self, t: f64) -> Result<LorentzVector, GeometryError> {
        self.validate()?;
        Ok(match *self {
            CircleSpec::Elliptic { z, r } => {
                let (s, c) = t.sin_cos();
                LorentzVector::new(r * c, r * s, z)
            }
            CircleSpec::HyperbolicI { x, r, side } => {
                let k = side.sign() * r;
                LorentzVector::new(x, k * t.cosh(), k * t.sinh())
            }
            CircleSpec::HyperbolicII { x, r, side } => {
                let k = side.sign() * r;
                LorentzVector::new(x, k * t.sinh(), k * t.cosh())
            }
            CircleSpec::Parabolic { a, c } => {
                let q = t * t / (2.0 * (c - a));
                LorentzVector::new(a + q, t, c + q)
            }
        })
    }

    /// Rotation angle `τ` with `A(τ)·circle_point(0) = circle_point(t)`.
    /// The parabolic orbit is parametrized by arclength along `e2`, so its
    /// angle is rescaled by `c - a`.
    pub fn rotation_angle(&self, t: f64) -> f64 {
        match *self {
            CircleSpec::Parabolic { a, c } => t / (c - a),
            _ => t,
        }
    }
}

pub fn circle_point(c: &CircleSpec, t: f64) -> Result<LorentzVector, GeometryError> {
    c.circle_point(t)
}

/// Generating functions of rotational catenoids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileFamily {
    /// `f(s) = sinh(as + b) / a`
    SinhOverA,
    /// `f(s) = sin(as + b) / a`
    SinOverA,
    /// `f(s) = cosh(as + b) / a`
    CoshOverA,
    /// `f(s) = a s^3 + b`, `a > 0`
    CubicPlus,
    /// `f(s) = -a s^3 + b`, `a > 0`
    CubicMinus,
}

impl fmt::Display for ProfileFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::SinhOverA => "sinh_over_a",
            Self::SinOverA => "sin_over_a",
            Self::CoshOverA => "cosh_over_a",
            Self::CubicPlus => "cubic_plus",
            Self::CubicMinus => "cubic_minus",
        })
    }
}

/// Value and first two derivatives of a profile at one abscissa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileJet {
    pub f: f64,
    pub df: f64,
    pub d2f: f64,
}

/// Anything that can be evaluated as a meridian profile.
pub trait Profile {
    fn jet(&self, s: f64) -> ProfileJet;
}

/// Adapter turning a closure into a [`Profile`], used to test arbitrary
/// (non-catenoid) generating curves.
pub struct FnProfile<F>(pub F);

impl<F: Fn(f64) -> ProfileJet> Profile for FnProfile<F> {
    fn jet(&self, s: f64) -> ProfileJet {
        (self.0)(s)
    }
}

/// A member of one of the catenoid profile families.
///
/// `negated` multiplies the whole profile by `-1`. It is only kept for
/// `SinhOverA`: every other family absorbs the sign into its parameters
/// (see [`ProfileCurve::negate`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileCurve {
    pub family: ProfileFamily,
    pub a: f64,
    pub b: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub negated: bool,
}

impl ProfileCurve {
    pub fn new(family: ProfileFamily, a: f64, b: f64) -> Result<Self, GeometryError> {
        let p = Self {
            family,
            a,
            b,
            negated: false,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        if !self.a.is_finite() || !self.b.is_finite() {
            return Err(GeometryError::InvalidProfile(format!(
                "parameters must be finite (a = {}, b = {})",
                self.a, self.b
            )));
        }
        match self.family {
            ProfileFamily::SinhOverA | ProfileFamily::SinOverA | ProfileFamily::CoshOverA => {
                if self.a == 0.0 {
                    return Err(GeometryError::InvalidProfile(format!(
                        "{} requires a != 0",
                        self.family
                    )));
                }
            }
            ProfileFamily::CubicPlus | ProfileFamily::CubicMinus => {
                if self.a <= 0.0 {
                    return Err(GeometryError::InvalidProfile(format!(
                        "{} requires a > 0, got {}",
                        self.family, self.a
                    )));
                }
            }
        }
        if self.negated && self.family != ProfileFamily::SinhOverA {
            return Err(GeometryError::InvalidProfile(format!(
                "{} is closed under negation; use ProfileCurve::negate",
                self.family
            )));
        }
        Ok(())
    }

    /// The profile `-f`, written in canonical parameters.
    pub fn negate(self) -> Self {
        match self.family {
            ProfileFamily::SinhOverA => Self {
                negated: !self.negated,
                ..self
            },
            ProfileFamily::SinOverA => Self {
                b: wrap_angle(self.b + PI),
                ..self
            },
            ProfileFamily::CoshOverA => Self {
                a: -self.a,
                b: -self.b,
                ..self
            },
            ProfileFamily::CubicPlus => Self {
                family: ProfileFamily::CubicMinus,
                b: -self.b,
                ..self
            },
            ProfileFamily::CubicMinus => Self {
                family: ProfileFamily::CubicPlus,
                b: -self.b,
                ..self
            },
        }
    }

    pub fn value(&self, s: f64) -> f64 {
        self.jet(s).f
    }

    /// Abscissae in `[lo, hi]` where the rotational surface generated by
    /// this profile is singular: zeros of `f` for the transcendental
    /// families, the axis point `s = 0` for the cubics.
    pub fn singular_abscissae(&self, lo: f64, hi: f64) -> Vec<f64> {
        let (a, b) = (self.a, self.b);
        let mut out = Vec::new();
        match self.family {
            ProfileFamily::SinhOverA => out.push(-b / a),
            ProfileFamily::CoshOverA => {}
            ProfileFamily::SinOverA => {
                // zeros at (kπ - b) / a
                let (u, v) = (a * lo + b, a * hi + b);
                let (u, v) = if u <= v { (u, v) } else { (v, u) };
                let k_lo = (u / PI).ceil() as i64;
                let k_hi = (v / PI).floor() as i64;
                for k in k_lo..=k_hi {
                    out.push((k as f64 * PI - b) / a);
                }
            }
            ProfileFamily::CubicPlus | ProfileFamily::CubicMinus => out.push(0.0),
        }
        out.retain(|s| *s >= lo && *s <= hi);
        out.sort_by(|x, y| x.total_cmp(y));
        out
    }

    /// Whether `s` is far enough from every singular abscissa to sample.
    pub fn is_regular_at(&self, s: f64) -> bool {
        match self.family {
            ProfileFamily::CubicPlus | ProfileFamily::CubicMinus => s.abs() > SINGULAR_EXCLUSION,
            _ => self.value(s).abs() > SINGULAR_EXCLUSION,
        }
    }
}

impl Profile for ProfileCurve {
    fn jet(&self, s: f64) -> ProfileJet {
        let (a, b) = (self.a, self.b);
        let w = a * s + b;
        let jet = match self.family {
            ProfileFamily::SinhOverA => ProfileJet {
                f: w.sinh() / a,
                df: w.cosh(),
                d2f: a * w.sinh(),
            },
            ProfileFamily::SinOverA => {
                let (sw, cw) = w.sin_cos();
                ProfileJet {
                    f: sw / a,
                    df: cw,
                    d2f: -a * sw,
                }
            }
            ProfileFamily::CoshOverA => ProfileJet {
                f: w.cosh() / a,
                df: w.sinh(),
                d2f: a * w.cosh(),
            },
            ProfileFamily::CubicPlus => ProfileJet {
                f: a * s * s * s + b,
                df: 3.0 * a * s * s,
                d2f: 6.0 * a * s,
            },
            ProfileFamily::CubicMinus => ProfileJet {
                f: -a * s * s * s + b,
                df: -3.0 * a * s * s,
                d2f: -6.0 * a * s,
            },
        };
        if self.negated {
            ProfileJet {
                f: -jet.f,
                df: -jet.df,
                d2f: -jet.d2f,
            }
        } else {
            jet
        }
    }
}

pub fn profile_eval(p: &ProfileCurve, s: f64) -> ProfileJet {
    p.jet(s)
}

/// Reduce an angle to `[0, 2π)`.
pub fn wrap_angle(b: f64) -> f64 {
    let w = b.rem_euclid(2.0 * PI);
    if w >= 2.0 * PI {
        0.0
    } else {
        w
    }
}

/// Profile family generating `(class, causal)` catenoids, or `None` for the
/// empty cell `(HyperbolicI, Spacelike)` and for lightlike surfaces.
pub fn catenoid_family(class: RotationClass, causal: CausalCharacter) -> Option<ProfileFamily> {
    use CausalCharacter::*;
    use RotationClass::*;
    match (class, causal) {
        (Elliptic, Spacelike) => Some(ProfileFamily::SinhOverA),
        (Elliptic, Timelike) => Some(ProfileFamily::SinOverA),
        (HyperbolicI, Timelike) => Some(ProfileFamily::CoshOverA),
        (HyperbolicII, Spacelike) => Some(ProfileFamily::SinOverA),
        (HyperbolicII, Timelike) => Some(ProfileFamily::SinhOverA),
        (Parabolic, Spacelike) => Some(ProfileFamily::CubicPlus),
        (Parabolic, Timelike) => Some(ProfileFamily::CubicMinus),
        _ => None,
    }
}

/// Sub-family labels of the sine-profile boundary problem.
///
/// `1a`/`2a` are the branches `cos(ah) = a` and `sin(ah) = a`; the `-`
/// variants `cos(ah) = -a`, `sin(ah) = -a` are only enumerated when all
/// sign branches are requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subfamily {
    #[serde(rename = "1a")]
    OneA,
    #[serde(rename = "1b")]
    OneB,
    #[serde(rename = "2a")]
    TwoA,
    #[serde(rename = "2b")]
    TwoB,
    #[serde(rename = "1a-")]
    OneANeg,
    #[serde(rename = "2a-")]
    TwoANeg,
}

impl Subfamily {
    pub const ALL: [Subfamily; 6] = [
        Subfamily::OneA,
        Subfamily::OneB,
        Subfamily::TwoA,
        Subfamily::TwoB,
        Subfamily::OneANeg,
        Subfamily::TwoANeg,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Subfamily::OneA => "1a",
            Subfamily::OneB => "1b",
            Subfamily::TwoA => "2a",
            Subfamily::TwoB => "2b",
            Subfamily::OneANeg => "1a-",
            Subfamily::TwoANeg => "2a-",
        }
    }
}

impl fmt::Display for Subfamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A catenoid: an admissible (class, causal character, profile) triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatenoidSpec {
    pub class: RotationClass,
    pub causal: CausalCharacter,
    pub profile: ProfileCurve,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subfamily: Option<Subfamily>,
}

impl CatenoidSpec {
    pub fn new(class: RotationClass, causal: CausalCharacter, profile: ProfileCurve) -> Result<Self, GeometryError> {
        let spec = Self {
            class,
            causal,
            profile,
            subfamily: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_subfamily(mut self, subfamily: Subfamily) -> Self {
        self.subfamily = Some(subfamily);
        self
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        self.profile.validate()?;
        let family = catenoid_family(self.class, self.causal).ok_or(GeometryError::InadmissibleCell {
            class: self.class,
            causal: self.causal,
        })?;
        if family != self.profile.family {
            return Err(GeometryError::FamilyMismatch {
                class: self.class,
                causal: self.causal,
                family: self.profile.family,
            });
        }
        Ok(())
    }

    pub fn surface_point(&self, s: f64, t: f64) -> LorentzVector {
        surface_point(self.class, &self.profile, s, t)
    }

    pub fn fundamental_forms(&self, s: f64, t: f64) -> FundamentalForms {
        fundamental_forms(self.class, &self.profile, s, t)
    }

    pub fn mean_curvature_residual(&self, s: f64, t: f64) -> Result<f64, GeometryError> {
        mean_curvature_residual(self.class, &self.profile, s, t)
    }

    pub fn metric_discriminant(&self, s: f64, t: f64) -> f64 {
        self.fundamental_forms(s, t).discriminant()
    }

    /// Distance from the circle to the surface trace at the circle's
    /// abscissa, sampled at `n` orbit parameters in `[-t_max, t_max]`, each
    /// divided by `1 + |p|`.
    pub fn circle_deviation(&self, circle: &CircleSpec, t_max: f64, n: usize) -> Result<f64, GeometryError> {
        if circle.class() != self.class {
            return Ok(f64::INFINITY);
        }
        let s = circle.profile_abscissa();
        let f = self.profile.value(s);
        let mut worst: f64 = 0.0;
        for i in 0..n.max(2) {
            let t = -t_max + 2.0 * t_max * i as f64 / (n.max(2) - 1) as f64;
            let p = circle.circle_point(t)?;
            let mut tau = circle.rotation_angle(t);
            // an elliptic profile of the opposite sign hits the antipode
            if self.class == RotationClass::Elliptic && f < 0.0 {
                tau += PI;
            }
            let q = self.surface_point(s, tau);
            let scale = 1.0 + p.euclidean_norm_sq().sqrt();
            worst = worst.max(p.euclidean_distance(&q) / scale);
        }
        Ok(worst)
    }
}

/// `X(s, t)` and all partials up to second order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceJet {
    pub point: LorentzVector,
    pub ds: LorentzVector,
    pub dt: LorentzVector,
    pub dss: LorentzVector,
    pub dst: LorentzVector,
    pub dtt: LorentzVector,
}

/// Meridian `γ(s)` and its first two derivatives in the plane fixed by the
/// class.
fn meridian(class: RotationClass, s: f64, j: ProfileJet) -> [LorentzVector; 3] {
    let v = LorentzVector::new;
    match class {
        RotationClass::Elliptic => [v(j.f, 0.0, s), v(j.df, 0.0, 1.0), v(j.d2f, 0.0, 0.0)],
        RotationClass::HyperbolicI => [v(s, j.f, 0.0), v(1.0, j.df, 0.0), v(0.0, j.d2f, 0.0)],
        RotationClass::HyperbolicII => [v(s, 0.0, j.f), v(1.0, 0.0, j.df), v(0.0, 0.0, j.d2f)],
        RotationClass::Parabolic => [
            v(j.f + s, 0.0, j.f - s),
            v(j.df + 1.0, 0.0, j.df - 1.0),
            v(j.d2f, 0.0, j.d2f),
        ],
    }
}

pub fn surface_jet<P: Profile + ?Sized>(class: RotationClass, profile: &P, s: f64, t: f64) -> SurfaceJet {
    let [g, g1, g2] = meridian(class, s, profile.jet(s));
    let a0 = rotation_matrix(class, t);
    let a1 = rotation_derivative(class, t);
    let a2 = rotation_second_derivative(class, t);
    SurfaceJet {
        point: a0.apply(&g),
        ds: a0.apply(&g1),
        dt: a1.apply(&g),
        dss: a0.apply(&g2),
        dst: a1.apply(&g1),
        dtt: a2.apply(&g),
    }
}

pub fn surface_point<P: Profile + ?Sized>(class: RotationClass, profile: &P, s: f64, t: f64) -> LorentzVector {
    let [g, _, _] = meridian(class, s, profile.jet(s));
    rotation_matrix(class, t).apply(&g)
}

/// First fundamental form and the three determinants entering `H = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub d_tt: f64,
    pub d_st: f64,
    pub d_ss: f64,
}

impl FundamentalForms {
    pub fn from_jet(j: &SurfaceJet) -> Self {
        Self {
            e: j.ds.inner(&j.ds),
            f: j.ds.inner(&j.dt),
            g: j.dt.inner(&j.dt),
            d_tt: det3(&j.ds, &j.dt, &j.dtt),
            d_st: det3(&j.ds, &j.dt, &j.dst),
            d_ss: det3(&j.ds, &j.dt, &j.dss),
        }
    }

    pub fn discriminant(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    pub fn is_degenerate(&self) -> bool {
        let d = self.discriminant();
        let scale = self.e * self.e + 2.0 * self.f * self.f + self.g * self.g;
        !d.is_finite() || scale == 0.0 || d.abs() <= DEGENERATE_TOL * scale
    }

    /// `E·det(Xs,Xt,Xtt) − 2F·det(Xs,Xt,Xst) + G·det(Xs,Xt,Xss)` divided by
    /// `1 + |E·Dtt| + 2|F·Dst| + |G·Dss|`.
    pub fn normalized_residual(&self) -> f64 {
        let (a, b, c) = (self.e * self.d_tt, self.f * self.d_st, self.g * self.d_ss);
        (a - 2.0 * b + c) / (1.0 + a.abs() + 2.0 * b.abs() + c.abs())
    }
}

pub fn fundamental_forms<P: Profile + ?Sized>(class: RotationClass, profile: &P, s: f64, t: f64) -> FundamentalForms {
    FundamentalForms::from_jet(&surface_jet(class, profile, s, t))
}

pub fn metric_discriminant<P: Profile + ?Sized>(class: RotationClass, profile: &P, s: f64, t: f64) -> f64 {
    fundamental_forms(class, profile, s, t).discriminant()
}

/// Scale-normalized left side of the zero mean curvature equation.
pub fn mean_curvature_residual<P: Profile + ?Sized>(
    class: RotationClass,
    profile: &P,
    s: f64,
    t: f64,
) -> Result<f64, GeometryError> {
    let ff = fundamental_forms(class, profile, s, t);
    if ff.is_degenerate() {
        return Err(GeometryError::DegenerateMetric {
            s,
            t,
            discriminant: ff.discriminant(),
        });
    }
    Ok(ff.normalized_residual())
}

/// Causal character of a surface from the sign of `EG − F²`.
pub fn surface_causal_character(ff: &FundamentalForms) -> CausalCharacter {
    if ff.is_degenerate() {
        CausalCharacter::Lightlike
    } else if ff.discriminant() > 0.0 {
        CausalCharacter::Spacelike
    } else {
        CausalCharacter::Timelike
    }
}
