//! Scalar root machinery: bracket scans, guarded bisection with a Newton
//! finish, root counting that folds near-double roots into a single
//! tangential root, the periodic extrema of `cos(ah) − a`, and a
//! two-condition solver for the parameter where a double root appears.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap on bisection steps.
pub const MAX_BISECTION: usize = 200;

/// Geometric bracket expansion stops at `a0 · 2^±EXPANSION_STEPS`.
pub const EXPANSION_STEPS: i32 = 60;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("a scan grid needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("non-finite function value {value} at x = {x}")]
    NonFinite { x: f64, value: f64 },
    #[error("[{lo}, {hi}] does not bracket a sign change")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("iteration cap of {0} reached")]
    IterationCap(usize),
    #[error("extremum value keeps one sign on [{lo}, {hi}]")]
    NoTangency { lo: f64, hi: f64 },
    #[error("parameter out of domain: {0}")]
    Domain(String),
}

/// An interval on which `f` changes sign (or a single point where it
/// vanishes, with `lo == hi`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<Self, RootError> {
        if lo > hi || !lo.is_finite() || !hi.is_finite() {
            return Err(RootError::InvalidInterval { lo, hi });
        }
        let f_lo = eval(&f, lo)?;
        let f_hi = eval(&f, hi)?;
        if f_lo * f_hi > 0.0 {
            return Err(RootError::NoSignChange { lo, hi });
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplicity {
    Simple,
    Tangential,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootResult {
    pub x: f64,
    pub residual: f64,
    pub multiplicity: Multiplicity,
    pub iterations: usize,
}

/// Tolerances of [`count_roots`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RootConfig {
    /// Largest grid step of the initial scan.
    pub step: f64,
    /// Roots closer than this around a near-zero extremum are merged.
    pub merge_tol: f64,
    /// An extremum with `|f| <=` this is a candidate double root.
    pub extremum_tol: f64,
    /// `|f'| <=` this marks a root as tangential.
    pub derivative_tol: f64,
    /// Grid values with `|f| <=` this are roots on their own.
    pub zero_tol: f64,
    /// Bracket width at which bisection hands over to Newton.
    pub newton_switch: f64,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            step: 1e-3,
            merge_tol: 1e-6,
            extremum_tol: 1e-9,
            derivative_tol: 1e-8,
            zero_tol: 1e-15,
            newton_switch: 1e-6,
        }
    }
}

impl RootConfig {
    /// Same config with the grid step also bounded by `period / 64`.
    pub fn for_period(self, period: f64) -> Self {
        Self {
            step: self.step.min(period / 64.0),
            ..self
        }
    }
}

fn eval(f: &impl Fn(f64) -> f64, x: f64) -> Result<f64, RootError> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(RootError::NonFinite { x, value: v })
    }
}

// Like `eval` but lets ±∞ through: only the sign is needed.
fn eval_signed(f: &impl Fn(f64) -> f64, x: f64) -> Result<f64, RootError> {
    let v = f(x);
    if v.is_nan() {
        Err(RootError::NonFinite { x, value: v })
    } else {
        Ok(v)
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| {
        if i + 1 == n {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    })
}

/// Sign changes of `f` on a uniform `n`-point grid over `[lo, hi]`.
/// Grid points where `|f| < 1e-15` come back as degenerate brackets.
pub fn scan_brackets(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Result<Vec<Bracket>, RootError> {
    if lo >= hi || !lo.is_finite() || !hi.is_finite() {
        return Err(RootError::InvalidInterval { lo, hi });
    }
    if n < 2 {
        return Err(RootError::TooFewPoints(n));
    }
    let pts = grid(lo, hi, n)
        .map(|x| eval(&f, x).map(|v| (x, v)))
        .collect::<Result<Vec<_>, _>>()?;
    let zero = |v: f64| v.abs() < RootConfig::default().zero_tol;
    let mut out = Vec::new();
    for (i, &(x, v)) in pts.iter().enumerate() {
        if zero(v) {
            out.push(Bracket {
                lo: x,
                hi: x,
                f_lo: v,
                f_hi: v,
            });
        }
        if let Some(&(x2, v2)) = pts.get(i + 1) {
            if !zero(v) && !zero(v2) && v * v2 < 0.0 {
                out.push(Bracket {
                    lo: x,
                    hi: x2,
                    f_lo: v,
                    f_hi: v2,
                });
            }
        }
    }
    Ok(out)
}

/// Plain bisection down to width `tol` (or to floating-point resolution).
pub fn bisect(f: impl Fn(f64) -> f64, b: Bracket, tol: f64) -> Result<RootResult, RootError> {
    let done = |x: f64, fx: f64, it: usize| RootResult {
        x,
        residual: fx,
        multiplicity: Multiplicity::Simple,
        iterations: it,
    };
    if b.f_lo == 0.0 || b.is_degenerate() {
        return Ok(done(b.lo, b.f_lo, 0));
    }
    if b.f_hi == 0.0 {
        return Ok(done(b.hi, b.f_hi, 0));
    }
    if b.f_lo * b.f_hi > 0.0 {
        return Err(RootError::NoSignChange { lo: b.lo, hi: b.hi });
    }
    let (mut lo, mut hi, mut f_lo) = (b.lo, b.hi, b.f_lo);
    for it in 1..=MAX_BISECTION {
        let mid = lo + 0.5 * (hi - lo);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            let fm = eval_signed(&f, mid)?;
            return Ok(done(mid, fm, it));
        }
        let fm = eval_signed(&f, mid)?;
        if fm == 0.0 {
            return Ok(done(mid, fm, it));
        }
        if (fm > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Err(RootError::IterationCap(MAX_BISECTION))
}

/// Bisection to `cfg.newton_switch`, then Newton steps clamped to the
/// shrinking bracket.
pub fn refine(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    b: Bracket,
    cfg: &RootConfig,
) -> Result<RootResult, RootError> {
    let coarse = bisect(&f, b, cfg.newton_switch)?;
    if coarse.residual == 0.0 || b.is_degenerate() {
        return Ok(classify(coarse, &df, cfg));
    }
    let w = cfg.newton_switch;
    let (mut lo, mut hi) = ((coarse.x - w).max(b.lo), (coarse.x + w).min(b.hi));
    let mut f_lo = eval(&f, lo)?;
    let f_hi = eval(&f, hi)?;
    if f_lo * f_hi > 0.0 {
        // the coarse window lost the sign change; fall back to the full bracket
        lo = b.lo;
        hi = b.hi;
        f_lo = b.f_lo;
    }
    let mut x = coarse.x;
    let mut fx = coarse.residual;
    let mut iterations = coarse.iterations;
    for _ in 0..MAX_BISECTION {
        iterations += 1;
        if fx == 0.0 {
            break;
        }
        if (fx > 0.0) == (f_lo > 0.0) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
        }
        let d = df(x);
        let mut nx = x - fx / d;
        if !nx.is_finite() || nx <= lo || nx >= hi {
            nx = lo + 0.5 * (hi - lo);
        }
        if (nx - x).abs() <= 4.0 * f64::EPSILON * (1.0 + x.abs()) || nx <= lo || nx >= hi {
            x = nx;
            fx = eval(&f, x)?;
            break;
        }
        x = nx;
        fx = eval(&f, x)?;
    }
    Ok(classify(
        RootResult {
            x,
            residual: fx,
            multiplicity: Multiplicity::Simple,
            iterations,
        },
        &df,
        cfg,
    ))
}

fn classify(mut r: RootResult, df: &impl Fn(f64) -> f64, cfg: &RootConfig) -> RootResult {
    if df(r.x).abs() <= cfg.derivative_tol {
        r.multiplicity = Multiplicity::Tangential;
    }
    r
}

/// Solve `f(a) = target` for a caller-asserted strictly monotone `f` on
/// `(0, ∞)`. The bracket grows geometrically from `a0` in both directions;
/// `None` means the target lies outside the range reached.
pub fn solve_monotone(f: impl Fn(f64) -> f64, target: f64, a0: f64) -> Result<Option<RootResult>, RootError> {
    if a0 <= 0.0 || !a0.is_finite() {
        return Err(RootError::Domain(format!("a0 must be positive, got {a0}")));
    }
    let g = |a: f64| f(a) - target;
    let g0 = eval_signed(&g, a0)?;
    if g0 == 0.0 {
        return Ok(Some(RootResult {
            x: a0,
            residual: 0.0,
            multiplicity: Multiplicity::Simple,
            iterations: 0,
        }));
    }
    for k in 1..=EXPANSION_STEPS {
        let scale = 2f64.powi(k);
        for (near, far) in [(a0 * 2f64.powi(k - 1), a0 * scale), (a0 / scale, a0 / 2f64.powi(k - 1))] {
            let (g_lo, g_hi) = (eval_signed(&g, near.min(far))?, eval_signed(&g, near.max(far))?);
            if g_lo * g_hi <= 0.0 {
                let b = Bracket {
                    lo: near.min(far),
                    hi: near.max(far),
                    f_lo: g_lo,
                    f_hi: g_hi,
                };
                let mut r = bisect(g, b, 0.0)?;
                r.residual = eval_signed(&g, r.x)?;
                return Ok(Some(r));
            }
        }
    }
    Ok(None)
}

/// All roots of `f` on `[lo, hi]`.
///
/// The interval is scanned on a grid of step `cfg.step`. Cells where `f'`
/// changes sign are split at the interior extremum; each sign-changing
/// piece yields a refined root. When the extremum value is within
/// `cfg.extremum_tol` of zero and every root found in the cell sits within
/// `cfg.merge_tol` of it, the cell reports one tangential root instead.
pub fn count_roots(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    cfg: &RootConfig,
) -> Result<Vec<RootResult>, RootError> {
    if lo >= hi || !lo.is_finite() || !hi.is_finite() {
        return Err(RootError::InvalidInterval { lo, hi });
    }
    let cells = ((hi - lo) / cfg.step).ceil().max(1.0) as usize;
    let xs: Vec<f64> = grid(lo, hi, cells + 1).collect();
    let fs = xs.iter().map(|&x| eval(&f, x)).collect::<Result<Vec<_>, _>>()?;
    let ds = xs.iter().map(|&x| eval(&df, x)).collect::<Result<Vec<_>, _>>()?;

    let mut roots = Vec::new();
    for (i, (&x, &v)) in xs.iter().zip(&fs).enumerate() {
        if v.abs() <= cfg.zero_tol {
            let multiplicity = if ds[i].abs() <= cfg.derivative_tol {
                Multiplicity::Tangential
            } else {
                Multiplicity::Simple
            };
            roots.push(RootResult {
                x,
                residual: v,
                multiplicity,
                iterations: 0,
            });
        }
    }

    for i in 0..cells {
        let mut knots = vec![(xs[i], fs[i])];
        let mut extremum = None;
        if ds[i] * ds[i + 1] < 0.0 {
            let b = Bracket {
                lo: xs[i],
                hi: xs[i + 1],
                f_lo: ds[i],
                f_hi: ds[i + 1],
            };
            let xe = bisect(&df, b, 0.0)?.x;
            let fe = eval(&f, xe)?;
            knots.push((xe, fe));
            extremum = Some((xe, fe));
        }
        knots.push((xs[i + 1], fs[i + 1]));

        let mut found = Vec::new();
        for w in knots.windows(2) {
            let ((a, fa), (b, fb)) = (w[0], w[1]);
            let nonzero = fa.abs() > cfg.zero_tol && fb.abs() > cfg.zero_tol;
            if nonzero && fa * fb < 0.0 {
                let br = Bracket {
                    lo: a,
                    hi: b,
                    f_lo: fa,
                    f_hi: fb,
                };
                found.push(refine(&f, &df, br, cfg)?);
            }
        }
        if let Some((xe, fe)) = extremum {
            let near_zero = fe.abs() <= cfg.extremum_tol;
            if near_zero && found.iter().all(|r| (r.x - xe).abs() <= cfg.merge_tol) {
                found = vec![RootResult {
                    x: xe,
                    residual: fe,
                    multiplicity: Multiplicity::Tangential,
                    iterations: 0,
                }];
            }
        }
        roots.extend(found);
    }

    roots.sort_by(|a, b| a.x.total_cmp(&b.x));
    let mut merged: Vec<RootResult> = Vec::with_capacity(roots.len());
    for r in roots {
        match merged.last_mut() {
            Some(prev) if r.x == prev.x => {}
            Some(prev)
                if (r.x - prev.x).abs() <= cfg.merge_tol
                    && (r.multiplicity == Multiplicity::Tangential
                        || prev.multiplicity == Multiplicity::Tangential) =>
            {
                if prev.multiplicity != Multiplicity::Tangential {
                    *prev = r;
                }
            }
            _ => merged.push(r),
        }
    }
    Ok(merged)
}

/// `cos(ah) − a` or `sin(ah) − a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodicKind {
    CosFamily,
    SinFamily,
}

impl PeriodicKind {
    pub fn value(self, h: f64, a: f64) -> f64 {
        match self {
            PeriodicKind::CosFamily => (a * h).cos() - a,
            PeriodicKind::SinFamily => (a * h).sin() - a,
        }
    }

    pub fn derivative(self, h: f64, a: f64) -> f64 {
        match self {
            PeriodicKind::CosFamily => -h * (a * h).sin() - 1.0,
            PeriodicKind::SinFamily => h * (a * h).cos() - 1.0,
        }
    }
}

/// Local minima `m_k` and maxima `M_k` of a periodic family.
///
/// For the cos family `m_k = m0 + 2kπ/h` and `M_k = −m0 + (2k+1)π/h`.
/// The sin family is the cos family translated by `shift = π/(2h)` in `a`
/// and by `−shift` in value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicExtrema {
    pub h: f64,
    pub kind: PeriodicKind,
    pub m0: f64,
    pub shift: f64,
    pub minima: Vec<f64>,
    pub maxima: Vec<f64>,
    pub min_values: Vec<f64>,
    pub max_values: Vec<f64>,
}

pub fn periodic_extrema(h: f64, kind: PeriodicKind, k_max: usize) -> Result<PeriodicExtrema, RootError> {
    if h <= 1.0 || !h.is_finite() {
        return Err(RootError::Domain(format!("periodic extrema need h > 1, got {h}")));
    }
    let cos = PeriodicKind::CosFamily;
    let b = Bracket::new(|a| cos.derivative(h, a), PI / h, 1.5 * PI / h)?;
    let m0 = bisect(|a| cos.derivative(h, a), b, 0.0)?.x;
    let root_term = (h * h - 1.0).sqrt() / h;
    let shift = match kind {
        PeriodicKind::CosFamily => 0.0,
        PeriodicKind::SinFamily => PI / (2.0 * h),
    };
    let ks = 0..=k_max;
    let minima_cos: Vec<f64> = ks.clone().map(|k| m0 + 2.0 * k as f64 * PI / h).collect();
    let maxima_cos: Vec<f64> = ks.map(|k| -m0 + (2 * k + 1) as f64 * PI / h).collect();
    let g_m0 = cos.value(h, m0);
    Ok(PeriodicExtrema {
        h,
        kind,
        m0,
        shift,
        minima: minima_cos.iter().map(|m| m + shift).collect(),
        maxima: maxima_cos.iter().map(|m| m + shift).collect(),
        min_values: (0..=k_max).map(|k| g_m0 - 2.0 * k as f64 * PI / h - shift).collect(),
        max_values: (0..=k_max)
            .map(|k| root_term + m0 - (2 * k + 1) as f64 * PI / h - shift)
            .collect(),
    })
}

/// Output of [`solve_tangency`]: at `(x, lambda)` both `F` and `∂F/∂x`
/// vanish.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tangency {
    pub lambda: f64,
    pub x: f64,
    pub value: f64,
    pub derivative: f64,
}

/// Parameter `λ` in `[lam_lo, lam_hi]` at which the extremum of `F(·, λ)`
/// located inside `locate(λ)` touches zero.
pub fn solve_tangency(
    f: impl Fn(f64, f64) -> f64,
    fx: impl Fn(f64, f64) -> f64,
    locate: impl Fn(f64) -> (f64, f64),
    lam_lo: f64,
    lam_hi: f64,
) -> Result<Tangency, RootError> {
    if lam_lo >= lam_hi || lam_lo.is_nan() || lam_hi.is_nan() {
        return Err(RootError::InvalidInterval { lo: lam_lo, hi: lam_hi });
    }
    let extremum = |lam: f64| -> Result<(f64, f64), RootError> {
        let (a, b) = locate(lam);
        let br = Bracket::new(|x| fx(x, lam), a, b)?;
        let xe = bisect(|x| fx(x, lam), br, 0.0)?.x;
        Ok((xe, f(xe, lam)))
    };
    let (_, v_lo) = extremum(lam_lo)?;
    let (_, v_hi) = extremum(lam_hi)?;
    if v_lo * v_hi > 0.0 {
        return Err(RootError::NoTangency { lo: lam_lo, hi: lam_hi });
    }
    let (mut lo, mut hi, mut f_lo) = (lam_lo, lam_hi, v_lo);
    for _ in 0..MAX_BISECTION {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let (_, v) = extremum(mid)?;
        if v == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (v > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = v;
        } else {
            hi = mid;
        }
    }
    let lambda = lo + 0.5 * (hi - lo);
    let (x, value) = extremum(lambda)?;
    Ok(Tangency {
        lambda,
        x,
        value,
        derivative: fx(x, lambda),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_finds_single_bracket() {
        let b = scan_brackets(|x| x * x - 1.0, 0.0, 2.0, 9).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].contains(1.0));
        assert!(scan_brackets(|x| 1.0 + x * x, -1.0, 1.0, 50).unwrap().is_empty());
        assert_eq!(scan_brackets(|x| (2.0 * x).cos() - x, 0.0, 1.0, 64).unwrap().len(), 1);
    }

    #[test]
    fn scan_rejects_bad_input() {
        assert!(matches!(
            scan_brackets(|x| x, 0.0, 1.0, 1),
            Err(RootError::TooFewPoints(1))
        ));
        assert!(matches!(
            scan_brackets(|x| 1.0 / (x - 0.5), 0.0, 1.0, 3),
            Err(RootError::NonFinite { .. })
        ));
    }

    #[test]
    fn bisection_basics() {
        let r = bisect(|x| x - 0.5, Bracket::new(|x| x - 0.5, 0.0, 1.0).unwrap(), 1e-12).unwrap();
        assert_eq!(r.x, 0.5);
        let f = |x: f64| x * x * x;
        let r = bisect(f, Bracket::new(f, -1.0, 2.0).unwrap(), 1e-12).unwrap();
        assert!(r.x.abs() < 1e-12);
        let g = |a: f64| a.sinh() / a - 2.0;
        let r = bisect(g, Bracket::new(g, 1e-3, 10.0).unwrap(), 0.0).unwrap();
        assert!(g(r.x).abs() < 1e-12);
        assert!((r.x - 2.17731898496531).abs() < 1e-12);
    }

    #[test]
    fn bracket_requires_sign_change() {
        assert!(matches!(
            Bracket::new(|x| x * x + 1.0, -1.0, 1.0),
            Err(RootError::NoSignChange { .. })
        ));
    }

    #[test]
    fn monotone_solves() {
        let r = solve_monotone(|a| a, 7.0, 1.0).unwrap().unwrap();
        assert!((r.x - 7.0).abs() < 1e-12);
        assert!(solve_monotone(|a| (a * 1.0).sinh() / a, 2.0, 1.0).unwrap().is_some());
        assert!(solve_monotone(|a| (a * 1.0).sinh() / a, 0.5, 1.0).unwrap().is_none());
        let r = solve_monotone(|a| a.exp(), 1e-300, 1.0).unwrap();
        assert!(r.is_none());
    }

    #[test]
    fn counts_cos_family() {
        let cfg = RootConfig::default();
        let count = |h: f64| {
            count_roots(|a| (a * h).cos() - a, |a| -h * (a * h).sin() - 1.0, 1e-9, 1.1, &cfg)
                .unwrap()
                .len()
        };
        assert_eq!(count(6.0), 1);
        assert_eq!(count(6.5), 3);
    }

    #[test]
    fn double_root_is_tangential() {
        let r = count_roots(|x| x * x, |x| 2.0 * x, -1.0, 1.0, &RootConfig::default()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, Multiplicity::Tangential);
        assert!(r[0].x.abs() < 1e-9);
        // off-grid touch point
        let r = count_roots(
            |x| (x - 0.1234567).powi(2),
            |x| 2.0 * (x - 0.1234567),
            -1.0,
            1.0,
            &RootConfig::default(),
        )
        .unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, Multiplicity::Tangential);
    }

    #[test]
    fn close_simple_roots_stay_separate() {
        let (p, q) = (0.3, 0.3 + 2e-4);
        let r = count_roots(
            |x| (x - p) * (x - q),
            |x| 2.0 * x - p - q,
            0.0,
            1.0,
            &RootConfig::default(),
        )
        .unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|r| r.multiplicity == Multiplicity::Simple));
    }

    #[test]
    fn extrema_closed_form() {
        let e = periodic_extrema(6.5, PeriodicKind::CosFamily, 3).unwrap();
        let h: f64 = 6.5;
        assert!((e.m0 - (PI + (1.0 / h).asin()) / h).abs() < 1e-13);
        assert!((e.max_values[1] - 0.0452139354826).abs() < 1e-10);
        let e2 = periodic_extrema(2.0, PeriodicKind::CosFamily, 1).unwrap();
        assert!((e2.max_values[1] + 2.01376786200620).abs() < 1e-10);
        for k in 0..=3 {
            let g = PeriodicKind::CosFamily.value(h, e.minima[k]);
            assert!((g - e.min_values[k]).abs() < 1e-12);
            let g = PeriodicKind::CosFamily.value(h, e.maxima[k]);
            assert!((g - e.max_values[k]).abs() < 1e-12);
        }
        assert!(periodic_extrema(1.0, PeriodicKind::SinFamily, 1).is_err());
    }

    #[test]
    fn sin_family_extrema_are_shifted() {
        let h = 9.0;
        let e = periodic_extrema(h, PeriodicKind::SinFamily, 2).unwrap();
        for k in 0..=2 {
            assert!((PeriodicKind::SinFamily.value(h, e.maxima[k]) - e.max_values[k]).abs() < 1e-12);
            assert!(PeriodicKind::SinFamily.derivative(h, e.minima[k]).abs() < 1e-9);
        }
    }

    #[test]
    fn tangency_onsets() {
        let t = solve_tangency(
            |a, h| (a * h).cos() - a,
            |a, h| -h * (a * h).sin() - 1.0,
            |h| (1.5 * PI / h, 2.0 * PI / h),
            2.0,
            20.0,
        )
        .unwrap();
        assert!((t.lambda - 6.20239528557313).abs() < 1e-9);
        assert!(t.value.abs() < 1e-10 && t.derivative.abs() < 1e-8);

        let t = solve_tangency(
            |a, h| (a * h).sin() - a,
            |a, h| h * (a * h).cos() - 1.0,
            |h| (2.0 * PI / h, 2.5 * PI / h),
            2.0,
            20.0,
        )
        .unwrap();
        assert!((t.lambda - 7.78970576749272).abs() < 1e-9);
    }

    #[test]
    fn tangency_needs_sign_change() {
        let r = solve_tangency(|x, l| x * x + l, |x, _| 2.0 * x, |_| (-1.0, 1.0), 1.0, 2.0);
        assert!(matches!(r, Err(RootError::NoTangency { .. })));
    }
}
