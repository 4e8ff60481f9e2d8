//! Arc length, surface area and enclosed volume.
//!
//! Infinite parameter ranges are handled in two ways. Where the integrand
//! decays exponentially (`t` for `R > 1`, `α` for `R < 1`) the range is cut
//! and the discarded tail is bounded in closed form; the bound is added to
//! the error estimate and recorded as the truncation. For `R = 1` the decay
//! is only algebraic, so infinite ranges are compactified instead (polar
//! coordinates with `ρ = tan θ` on the full plane, `x = a ± tan u` on
//! half-lines) and nothing is discarded.
//!
//! The volume is `|∬ f · (f_t × f_α)| / 3`, the flux of the position field
//! through the closed immersed surface, which counts multiplicities.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{Branch, Regime, TractrixParams};
use crate::quadrature::{integrate_1d, integrate_2d, AdaptiveOptions, QuadratureResult, Truncation};
use crate::surface::{metric_generic, surface_point_unchecked, SurfacePatch};
use crate::tractrix::{eval_velocity, singular_parameters, Vec3};

/// Smallest tolerance accepted for area and volume.
pub const MIN_SURFACE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureOptions {
    pub tol: f64,
    /// Fraction of `tol` reserved for truncated tails.
    pub truncation_share: f64,
    pub max_evals: usize,
}

impl MeasureOptions {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            truncation_share: 0.01,
            max_evals: 20_000_000,
        }
    }
}

fn check_tol(tol: f64, min: f64) -> Result<()> {
    if tol.is_finite() && tol >= min {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

/// `∫ |f'| dt` over `[lo, hi]`, split at the cusps.
pub fn arc_length(p: &TractrixParams, lo: f64, hi: f64, tol: f64) -> Result<QuadratureResult> {
    check_tol(tol, 0.0)?;
    if tol == 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    let breaks = singular_parameters(p, lo, hi)?;
    let opts = AdaptiveOptions {
        tol,
        max_evals: 2_000_000,
    };
    integrate_1d(|t| Ok(eval_velocity(p, t)?.1.norm()), lo, hi, &breaks, &opts)?.into_converged()
}

/// `(1/3) ∬ f · (f_u × f_v) du dv` for any parametrized surface; `surface`
/// returns `(f, f_u, f_v)`. Signed.
pub fn flux_volume<F>(
    mut surface: F,
    u: (f64, f64),
    v: (f64, f64),
    u_breaks: &[f64],
    v_breaks: &[f64],
    opts: &AdaptiveOptions,
) -> Result<QuadratureResult>
where
    F: FnMut(f64, f64) -> Result<(Vec3, Vec3, Vec3)>,
{
    let raw = AdaptiveOptions {
        tol: 3.0 * opts.tol,
        ..*opts
    };
    let r = integrate_2d(
        |a, b| {
            let (f, fu, fv) = surface(a, b)?;
            Ok(f.dot(&fu.cross(&fv)))
        },
        u,
        v,
        u_breaks,
        v_breaks,
        &raw,
    )?;
    Ok(QuadratureResult {
        value: r.value / 3.0,
        error_estimate: r.error_estimate / 3.0,
        ..r
    })
}

/// `∬ |f_u × f_v| du dv` for any parametrized surface.
pub fn parametric_area<F>(
    mut surface: F,
    u: (f64, f64),
    v: (f64, f64),
    u_breaks: &[f64],
    v_breaks: &[f64],
    opts: &AdaptiveOptions,
) -> Result<QuadratureResult>
where
    F: FnMut(f64, f64) -> Result<(Vec3, Vec3, Vec3)>,
{
    integrate_2d(
        |a, b| {
            let (_, fu, fv) = surface(a, b)?;
            Ok(fu.cross(&fv).norm())
        },
        u,
        v,
        u_breaks,
        v_breaks,
        opts,
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Measure {
    Area,
    Volume,
}

/// One-dimensional change of variables onto a finite interval.
#[derive(Debug, Clone, Copy, PartialEq)]
enum AxisMap {
    Identity(f64, f64),
    /// `x = tan u`, `u ∈ (−π/2, π/2)`
    Line,
    /// `x = a + tan u`, `u ∈ [0, π/2)`
    Above(f64),
    /// `x = b − tan u`, `u ∈ [0, π/2)`
    Below(f64),
}

impl AxisMap {
    fn for_range(lo: f64, hi: f64) -> Self {
        match (lo.is_finite(), hi.is_finite()) {
            (true, true) => AxisMap::Identity(lo, hi),
            (false, false) => AxisMap::Line,
            (true, false) => AxisMap::Above(lo),
            (false, true) => AxisMap::Below(hi),
        }
    }

    fn range(&self) -> (f64, f64) {
        match *self {
            AxisMap::Identity(a, b) => (a, b),
            AxisMap::Line => (-FRAC_PI_2, FRAC_PI_2),
            AxisMap::Above(_) | AxisMap::Below(_) => (0.0, FRAC_PI_2),
        }
    }

    // Image of a physical breakpoint in the mapped variable.
    fn preimage(&self, x: f64) -> f64 {
        match *self {
            AxisMap::Identity(..) => x,
            AxisMap::Line => x.atan(),
            AxisMap::Above(a) => (x - a).atan(),
            AxisMap::Below(b) => (b - x).atan(),
        }
    }

    fn apply(&self, u: f64) -> (f64, f64) {
        let sec2 = || {
            let c = u.cos();
            1.0 / (c * c)
        };
        match *self {
            AxisMap::Identity(..) => (u, 1.0),
            AxisMap::Line => (u.tan(), sec2()),
            AxisMap::Above(a) => (a + u.tan(), sec2()),
            AxisMap::Below(b) => (b - u.tan(), sec2()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum DomainMap {
    Axes(AxisMap, AxisMap),
    /// `t = tan θ cos ψ`, `α = tan θ sin ψ` over `θ ∈ [0, π/2)`, `ψ ∈ [0, 2π]`.
    Polar,
}

impl DomainMap {
    /// `(t, α, |Jacobian|)` for mapped coordinates `(x, y)`.
    fn apply(&self, x: f64, y: f64) -> (f64, f64, f64) {
        match self {
            DomainMap::Axes(mt, ma) => {
                let (t, jt) = mt.apply(x);
                let (a, ja) = ma.apply(y);
                (t, a, jt * ja)
            }
            DomainMap::Polar => {
                let rho = x.tan();
                let c = x.cos();
                let (s, k) = y.sin_cos();
                (rho * k, rho * s, rho / (c * c))
            }
        }
    }
}

struct Plan {
    map: DomainMap,
    x: (f64, f64),
    y: (f64, f64),
    x_breaks: Vec<f64>,
    y_breaks: Vec<f64>,
    truncation: Option<Truncation>,
}

/// Cut point `T ≥ t0` with `c·e^(−kT) ≤ budget`, and the resulting bound.
fn cut(c: f64, k: f64, t0: f64, budget: f64) -> (f64, f64) {
    let t = t0.max((c / budget).ln() / k);
    (t, c * (-k * t).exp())
}

// Truncated range and the total tail bound for a possibly infinite range
// whose integrand obeys |g| ≤ c·e^(−k|x|) for |x| ≥ x0 (per unit of the
// other variable, already folded into c).
fn truncate(lo: f64, hi: f64, c: f64, k: f64, x0: f64, budget: f64) -> ((f64, f64), f64) {
    let (cut_at, bound) = cut(c, k, x0, budget);
    let mut total = 0.0;
    let new_hi = if hi.is_finite() {
        hi
    } else {
        total += bound;
        cut_at.max(lo + 1.0)
    };
    let new_lo = if lo.is_finite() {
        lo
    } else {
        total += bound;
        (-cut_at).min(new_hi - 1.0)
    };
    ((new_lo, new_hi), total)
}

fn infinite_ends(lo: f64, hi: f64) -> usize {
    usize::from(!lo.is_finite()) + usize::from(!hi.is_finite())
}

fn plan(s: &SurfacePatch, measure: Measure, trunc_budget: f64) -> Result<Plan> {
    let r = s.radius;
    let (t_lo, t_hi) = s.t_range;
    let (a_lo, a_hi) = s.alpha_range;
    let cusps = s.cuspidal_edges();
    match s.regime {
        Regime::Supercritical => {
            if !(a_lo.is_finite() && a_hi.is_finite()) {
                return Err(Error::UnsupportedDomain(
                    "alpha range must be finite for R > 1".into(),
                ));
            }
            let la = a_hi - a_lo;
            let lam = s.lambda;
            // For R cosh λt ≥ 2: √(EG) ≤ 8(R²−1)/R²·e^(−λ|t|) and
            // |f·(f_t × f_α)| ≤ 8λ(R+1)√(R²−1)/R·e^(−λ|t|).
            let c = match measure {
                Measure::Area => la * 8.0 * (r * r - 1.0) / (r * r * lam),
                Measure::Volume => la * 8.0 * (r + 1.0) * (r * r - 1.0).sqrt() / r,
            };
            let t0 = (2.0 / r).max(1.0).acosh() / lam;
            let ends = infinite_ends(t_lo, t_hi);
            let per_end = trunc_budget / ends.max(1) as f64;
            let ((lo, hi), bound) = truncate(t_lo, t_hi, c, lam, t0, per_end);
            let truncation = (ends > 0).then(|| Truncation {
                description: format!("t cut to [{lo}, {hi}]; exponential tail bound"),
                bound,
            });
            let mut y_breaks = Vec::new();
            for k in 1..8 {
                y_breaks.push(a_lo + la * k as f64 / 8.0);
            }
            Ok(Plan {
                map: DomainMap::Axes(AxisMap::Identity(lo, hi), AxisMap::Identity(a_lo, a_hi)),
                x: (lo, hi),
                y: (a_lo, a_hi),
                x_breaks: cusps,
                y_breaks,
                truncation,
            })
        }
        Regime::Critical => {
            if s.t_range == (f64::NEG_INFINITY, f64::INFINITY)
                && s.alpha_range == (f64::NEG_INFINITY, f64::INFINITY)
            {
                return Ok(Plan {
                    map: DomainMap::Polar,
                    x: (0.0, FRAC_PI_2),
                    y: (0.0, 2.0 * PI),
                    x_breaks: vec![PI / 8.0, PI / 4.0, 3.0 * PI / 8.0],
                    y_breaks: (1..8).map(|k| k as f64 * PI / 4.0).collect(),
                    truncation: None,
                });
            }
            let mt = AxisMap::for_range(t_lo, t_hi);
            let ma = AxisMap::for_range(a_lo, a_hi);
            let x_breaks = cusps.iter().map(|&c| mt.preimage(c)).collect();
            let y_breaks = if ma.range().0 < ma.preimage(0.0) && ma.preimage(0.0) < ma.range().1 {
                vec![ma.preimage(0.0)]
            } else {
                Vec::new()
            };
            Ok(Plan {
                map: DomainMap::Axes(mt, ma),
                x: mt.range(),
                y: ma.range(),
                x_breaks,
                y_breaks,
                truncation: None,
            })
        }
        Regime::Subcritical => {
            if !(t_lo.is_finite() && t_hi.is_finite()) {
                return Err(Error::UnsupportedDomain(
                    "t range must be finite for R < 1".into(),
                ));
            }
            let lt = t_hi - t_lo;
            let lam = s.lambda;
            // For cosh α ≥ 2: √(EG) ≤ 16(1−R²)e^(−2|α|) and
            // |f·(f_t × f_α)| ≤ 16λR(R+1)√(1−R²)e^(−2|α|).
            let c = match measure {
                Measure::Area => lt * 8.0 * (1.0 - r * r),
                Measure::Volume => lt * 8.0 * lam * r * (r + 1.0) * (1.0 - r * r).sqrt(),
            };
            let a0 = 2f64.acosh();
            let ends = infinite_ends(a_lo, a_hi);
            let per_end = trunc_budget / ends.max(1) as f64;
            let ((lo, hi), bound) = truncate(a_lo, a_hi, c, 2.0, a0, per_end);
            let truncation = (ends > 0).then(|| Truncation {
                description: format!("alpha cut to [{lo}, {hi}]; exponential tail bound"),
                bound,
            });
            let y_breaks = [-1.0, 0.0, 1.0].into_iter().filter(|&v| lo < v && v < hi).collect();
            Ok(Plan {
                map: DomainMap::Axes(AxisMap::Identity(t_lo, t_hi), AxisMap::Identity(lo, hi)),
                x: (t_lo, t_hi),
                y: (lo, hi),
                x_breaks: cusps,
                y_breaks,
                truncation,
            })
        }
    }
}

fn measure_with(s: &SurfacePatch, measure: Measure, opts: &MeasureOptions) -> Result<QuadratureResult> {
    check_tol(opts.tol, MIN_SURFACE_TOL)?;
    if !(0.0..1.0).contains(&opts.truncation_share) {
        return Err(Error::InvalidTolerance(opts.truncation_share));
    }
    let scale = if measure == Measure::Volume { 3.0 } else { 1.0 };
    let trunc_budget = opts.truncation_share * opts.tol * scale;
    let plan = plan(s, measure, trunc_budget)?;
    let quad = AdaptiveOptions {
        tol: (1.0 - opts.truncation_share) * opts.tol,
        max_evals: opts.max_evals,
    };
    let map = plan.map;
    let r = match measure {
        Measure::Area => integrate_2d(
            |x, y| {
                let (t, a, j) = map.apply(x, y);
                let (e, g) = metric_generic(s, t, a)?;
                Ok((e * g).sqrt() * j)
            },
            plan.x,
            plan.y,
            &plan.x_breaks,
            &plan.y_breaks,
            &quad,
        )?,
        Measure::Volume => {
            let mut r = flux_volume(
                |x, y| {
                    let (t, a, j) = map.apply(x, y);
                    let p = surface_point_unchecked(s, t, a)?;
                    Ok((p.f, p.f_t * j, p.f_alpha))
                },
                plan.x,
                plan.y,
                &plan.x_breaks,
                &plan.y_breaks,
                &quad,
            )?;
            r.value = r.value.abs();
            r
        }
    };
    let truncation = plan.truncation.map(|t| Truncation {
        bound: t.bound / scale,
        ..t
    });
    let trunc_bound = truncation.as_ref().map_or(0.0, |t| t.bound);
    let error_estimate = r.error_estimate + trunc_bound;
    QuadratureResult {
        value: r.value,
        error_estimate,
        evaluations: r.evaluations,
        converged: r.converged && error_estimate <= opts.tol,
        truncation,
    }
    .into_converged()
}

pub fn surface_area(s: &SurfacePatch, tol: f64) -> Result<QuadratureResult> {
    surface_area_with(s, &MeasureOptions::new(tol))
}

pub fn surface_area_with(s: &SurfacePatch, opts: &MeasureOptions) -> Result<QuadratureResult> {
    measure_with(s, Measure::Area, opts)
}

/// Volume with multiplicities. For `R < 1` the value is computed but has no
/// reference target (see [`volume_target`]).
pub fn enclosed_volume(s: &SurfacePatch, tol: f64) -> Result<QuadratureResult> {
    enclosed_volume_with(s, &MeasureOptions::new(tol))
}

pub fn enclosed_volume_with(s: &SurfacePatch, opts: &MeasureOptions) -> Result<QuadratureResult> {
    measure_with(s, Measure::Volume, opts)
}

/// Area of one unit of one subcritical component:
/// `4(arctan√((1+R)/(1−R)) − arctan√((1−R)/(1+R)))`.
pub fn subcritical_unit_area(radius: f64) -> Result<f64> {
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::InvalidRadius(radius));
    }
    let q = ((1.0 + radius) / (1.0 - radius)).sqrt();
    Ok(4.0 * (q.atan() - (1.0 / q).atan()))
}

fn is_full_circle(s: &SurfacePatch) -> bool {
    (s.alpha_range.1 - s.alpha_range.0 - 2.0 * PI).abs() < 1e-12
}

/// Known area of a patch, when it is a complete surface or a full unit.
pub fn area_target(s: &SurfacePatch) -> Option<f64> {
    let full_t = s.t_range == (f64::NEG_INFINITY, f64::INFINITY);
    let full_a = s.alpha_range == (f64::NEG_INFINITY, f64::INFINITY);
    match s.regime {
        Regime::Supercritical if full_t && is_full_circle(s) => Some(4.0 * PI),
        Regime::Critical if full_t && full_a => Some(4.0 * PI),
        Regime::Subcritical if full_a => {
            let w = PI / s.lambda;
            let n = (s.t_range.0 / w).round();
            let aligned = (s.t_range.0 - n * w).abs() < 1e-12 * w.max(1.0)
                && (s.t_range.1 - s.t_range.0 - w).abs() < 1e-12 * w.max(1.0);
            aligned.then(|| subcritical_unit_area(s.radius).ok()).flatten()
        }
        _ => None,
    }
}

/// `2π/3` for the complete surfaces with `R ≥ 1`; no target for `R < 1`.
pub fn volume_target(s: &SurfacePatch) -> Option<f64> {
    let full_t = s.t_range == (f64::NEG_INFINITY, f64::INFINITY);
    let full_a = s.alpha_range == (f64::NEG_INFINITY, f64::INFINITY);
    match s.regime {
        Regime::Supercritical if full_t && is_full_circle(s) => Some(2.0 * PI / 3.0),
        Regime::Critical if full_t && full_a => Some(2.0 * PI / 3.0),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusArea {
    pub radius: f64,
    pub area: QuadratureResult,
}

/// Complete-surface areas for several `R ≥ 1`.
pub fn area_r_independence(radii: &[f64], tol: f64) -> Result<Vec<RadiusArea>> {
    radii
        .iter()
        .map(|&radius| {
            let s = SurfacePatch::new(radius, Branch::Plus)?;
            if s.regime == Regime::Subcritical {
                return Err(Error::UnsupportedRegime {
                    op: "area_r_independence",
                    regime: s.regime,
                });
            }
            Ok(RadiusArea {
                radius,
                area: surface_area(&s, tol)?,
            })
        })
        .collect()
}
