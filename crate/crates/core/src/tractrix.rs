//! Closed-form circular tractrices and their structural predicates.
//!
//! A tractrix is assembled from the triple `ξ(t)` by rotating
//! `(ξ₁, −ξ₂, ξ₃)` about the x³-axis through the angle `t/R`, so `t` is the
//! arc length of the directrix circle `C` of radius `R`.

use std::f64::consts::PI;

use nalgebra::Vector3;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::{Jet, Scalar};
use crate::params::{Regime, TractrixParams};

pub type Vec3 = Vector3<f64>;

/// Denominators below this magnitude are reported as singular evaluations.
pub const DENOMINATOR_EPS: f64 = 1e-14;
/// `|ξ₂|` below this marks a cusp.
pub const CUSP_EPS: f64 = 1e-12;

/// Position, derivatives and the ξ-triple at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub t: f64,
    pub xi: Vec3,
    pub f: Vec3,
    pub d1: Vec3,
    pub d2: Vec3,
    pub d3: Vec3,
    pub speed: f64,
}

pub(crate) fn xi_generic<S: Scalar>(
    regime: Regime,
    radius: f64,
    lambda: f64,
    c1: S,
    c2: S,
    t: S,
) -> Result<[S; 3]> {
    let check = |d: &S| {
        let v = d.value();
        if v.abs() < DENOMINATOR_EPS || !v.is_finite() {
            Err(Error::SingularEvaluation {
                t: t.value(),
                denominator: v,
            })
        } else {
            Ok(())
        }
    };
    match regime {
        Regime::Supercritical => {
            let lt = t * lambda;
            let ch = lt.cosh();
            let d = c1 / radius + ch;
            check(&d)?;
            Ok([
                ch * (radius - 1.0 / radius) / d,
                lt.sinh() * lambda / d,
                c2 * lambda / d,
            ])
        }
        Regime::Critical => {
            let d = c1 + t * t;
            check(&d)?;
            Ok([S::cst(2.0) / d, t * 2.0 / d, c2 / d])
        }
        Regime::Subcritical => {
            let lt = t * lambda;
            let co = lt.cos();
            let d = c1 / radius + co;
            check(&d)?;
            Ok([
                co * (radius - 1.0 / radius) / d,
                -(lt.sin() * lambda) / d,
                c2 * lambda / d,
            ])
        }
    }
}

/// Rotation of `(ξ₁, −ξ₂, ξ₃)` through `t/R`.
pub(crate) fn position_generic<S: Scalar>(radius: f64, xi: [S; 3], t: S) -> [S; 3] {
    let theta = t / radius;
    let (s, c) = (theta.sin(), theta.cos());
    [xi[0] * c + xi[1] * s, -(xi[1] * c) + xi[0] * s, xi[2]]
}

pub fn eval_xi(p: &TractrixParams, t: f64) -> Result<Vec3> {
    if !t.is_finite() {
        return Err(Error::NonFinite("t"));
    }
    let xi = xi_generic(p.regime, p.radius, p.lambda, p.c1, p.c2, t)?;
    Ok(Vec3::from(xi))
}

pub fn position(p: &TractrixParams, t: f64) -> Result<Vec3> {
    let xi = xi_generic(p.regime, p.radius, p.lambda, p.c1, p.c2, t)?;
    Ok(Vec3::from(position_generic(p.radius, xi, t)))
}

fn jet_position<const N: usize>(p: &TractrixParams, t: f64) -> Result<([Jet<N>; 3], [Jet<N>; 3])> {
    if !t.is_finite() {
        return Err(Error::NonFinite("t"));
    }
    let tj = Jet::<N>::variable(t);
    let c1 = Jet::constant(p.c1);
    let c2 = Jet::constant(p.c2);
    let xi = xi_generic(p.regime, p.radius, p.lambda, c1, c2, tj)?;
    Ok((xi, position_generic(p.radius, xi, tj)))
}

fn column<const N: usize>(v: &[Jet<N>; 3], k: usize) -> Vec3 {
    Vec3::new(v[0].derivative(k), v[1].derivative(k), v[2].derivative(k))
}

/// Position with exact first to third derivatives.
pub fn eval_curve(p: &TractrixParams, t: f64) -> Result<CurveSample> {
    let (xi, f) = jet_position::<4>(p, t)?;
    let d1 = column(&f, 1);
    Ok(CurveSample {
        t,
        xi: column(&xi, 0),
        f: column(&f, 0),
        d1,
        d2: column(&f, 2),
        d3: column(&f, 3),
        speed: d1.norm(),
    })
}

/// Position and velocity only.
pub fn eval_velocity(p: &TractrixParams, t: f64) -> Result<(Vec3, Vec3)> {
    let (_, f) = jet_position::<2>(p, t)?;
    Ok((column(&f, 0), column(&f, 1)))
}

/// Point of the directrix circle at arc length `t`.
pub fn directrix_point(p: &TractrixParams, t: f64) -> Vec3 {
    circle_point(p.radius, t)
}

pub(crate) fn circle_point(radius: f64, t: f64) -> Vec3 {
    let th = t / radius;
    Vec3::new(radius * th.cos(), radius * th.sin(), 0.0)
}

pub(crate) fn circle_tangent(radius: f64, t: f64) -> Vec3 {
    let th = t / radius;
    Vec3::new(-th.sin(), th.cos(), 0.0)
}

/// `|f + f'/ξ₂ − c(t)|`: the unit tangent segment from `f(t)` ends on the directrix.
pub fn tracing_residual(p: &TractrixParams, t: f64) -> Result<f64> {
    let (xi, f) = jet_position::<2>(p, t)?;
    let xi2 = xi[1].value();
    if xi2.abs() < CUSP_EPS {
        return Err(Error::SingularPoint { t, xi2 });
    }
    let tip = column(&f, 0) + column(&f, 1) / xi2;
    Ok((tip - directrix_point(p, t)).norm())
}

fn check_window(lo: f64, hi: f64) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::InvalidInterval { lo, hi });
    }
    Ok(())
}

/// Cusps inside `[lo, hi]`: `t = 0` for `R ≥ 1`, `t = nπ/λ` for `R < 1`.
pub fn singular_parameters(p: &TractrixParams, lo: f64, hi: f64) -> Result<Vec<f64>> {
    check_window(lo, hi)?;
    let out = match p.regime {
        Regime::Supercritical | Regime::Critical => {
            if lo <= 0.0 && 0.0 <= hi {
                vec![0.0]
            } else {
                Vec::new()
            }
        }
        Regime::Subcritical => {
            let step = PI / p.lambda;
            let first = (lo / step).ceil() as i64;
            let last = (hi / step).floor() as i64;
            (first..=last).map(|n| n as f64 * step).collect()
        }
    };
    debug_assert!(out
        .iter()
        .all(|&t| eval_xi(p, t).map(|xi| xi[1].abs() <= CUSP_EPS * (1.0 + t.abs())).unwrap_or(false)));
    Ok(out)
}

/// The circle `C_∞` of radius `√(R²−1)` approached by a supercritical tractrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticCircle {
    pub radius: f64,
    directrix_radius: f64,
    lambda: f64,
}

impl AsymptoticCircle {
    pub fn new(directrix_radius: f64) -> Self {
        let radius = (directrix_radius * directrix_radius - 1.0).sqrt();
        Self {
            radius,
            directrix_radius,
            lambda: radius / directrix_radius,
        }
    }

    /// Parametrization of `C_∞` approached as `t → +∞`.
    pub fn f_plus(&self, t: f64) -> Vec3 {
        let th = t / self.directrix_radius;
        self.lambda
            * Vec3::new(
                self.radius * th.cos() + th.sin(),
                self.radius * th.sin() - th.cos(),
                0.0,
            )
    }

    /// Parametrization of `C_∞` approached as `t → −∞`.
    pub fn f_minus(&self, t: f64) -> Vec3 {
        let th = t / self.directrix_radius;
        self.lambda
            * Vec3::new(
                self.radius * th.cos() - th.sin(),
                self.radius * th.sin() + th.cos(),
                0.0,
            )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AsymptoticTarget {
    Circle(AsymptoticCircle),
    Origin,
    /// `O₁ = (0, 0, −√(1−R²))`, `O₂ = (0, 0, √(1−R²))`
    PointPair { lower: [f64; 3], upper: [f64; 3] },
}

pub fn asymptotic_target(p: &TractrixParams) -> AsymptoticTarget {
    match p.regime {
        Regime::Supercritical => AsymptoticTarget::Circle(AsymptoticCircle::new(p.radius)),
        Regime::Critical => AsymptoticTarget::Origin,
        Regime::Subcritical => {
            let h = (1.0 - p.radius * p.radius).sqrt();
            AsymptoticTarget::PointPair {
                lower: [0.0, 0.0, -h],
                upper: [0.0, 0.0, h],
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticGap {
    pub gap: f64,
    pub bound: f64,
}

impl AsymptoticGap {
    pub fn holds(&self) -> bool {
        self.gap < self.bound
    }
}

/// Distance to the asymptotic target together with its exponential
/// (`R > 1`) or `2/|t|` (`R = 1`) bound.
pub fn asymptotic_bound_check(p: &TractrixParams, t: f64) -> Result<AsymptoticGap> {
    let f = position(p, t)?;
    match p.regime {
        Regime::Supercritical => {
            let circle = AsymptoticCircle::new(p.radius);
            if t >= 0.0 {
                Ok(AsymptoticGap {
                    gap: (f - circle.f_plus(t)).norm(),
                    bound: 2.0 * (-p.lambda * t).exp(),
                })
            } else {
                Ok(AsymptoticGap {
                    gap: (f - circle.f_minus(t)).norm(),
                    bound: 2.0 * (p.lambda * t).exp(),
                })
            }
        }
        Regime::Critical => {
            if t == 0.0 {
                return Err(Error::SingularPoint { t, xi2: 0.0 });
            }
            Ok(AsymptoticGap {
                gap: f.norm(),
                bound: 2.0 / t.abs(),
            })
        }
        Regime::Subcritical => Err(Error::UnsupportedRegime {
            op: "asymptotic_bound_check",
            regime: p.regime,
        }),
    }
}

/// Length of one unit (arc between consecutive cusps) for `R < 1`.
pub fn unit_length(p: &TractrixParams) -> Result<f64> {
    if p.regime != Regime::Subcritical {
        return Err(Error::UnsupportedRegime {
            op: "unit_length",
            regime: p.regime,
        });
    }
    let r = p.radius;
    Ok(p.c1.signum() * ((p.c1 + r) / (p.c1 - r)).abs().ln())
}

/// Rotation about the x³-axis by `angle` (counter-clockwise seen from `+x³`).
pub fn rotate_about_x3(v: &Vec3, angle: f64) -> Vec3 {
    let (s, c) = angle.sin_cos();
    Vec3::new(v.x * c - v.y * s, v.x * s + v.y * c, v.z)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeriodData {
    /// Parameter period `T = 2π/λ`.
    pub period: f64,
    /// Rotation `φ = 2π/√(1−R²)` relating `f(t+T)` to `f(t)`.
    pub rotation: f64,
    pub closed: bool,
    pub petals: Option<u64>,
    pub windings: Option<u64>,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Periodicity of a subcritical tractrix. Closedness is only asserted when
/// the caller supplies `ν = √(1−R²)` as an exact rational `p/q`.
pub fn period_data(p: &TractrixParams, nu_rational: Option<(i64, i64)>) -> Result<PeriodData> {
    if p.regime != Regime::Subcritical {
        return Err(Error::UnsupportedRegime {
            op: "period_data",
            regime: p.regime,
        });
    }
    let nu = (1.0 - p.radius * p.radius).sqrt();
    let mut data = PeriodData {
        period: 2.0 * PI / p.lambda,
        rotation: 2.0 * PI / nu,
        closed: false,
        petals: None,
        windings: None,
    };
    if let Some((num, den)) = nu_rational {
        if num <= 0 || den <= 0 || num >= den {
            return Err(Error::InvalidRational { p: num, q: den });
        }
        let g = gcd(num, den);
        let (num, den) = (num / g, den / g);
        if (num as f64 / den as f64 - nu).abs() > 1e-12 {
            return Err(Error::InconsistentRational { p: num, q: den, nu });
        }
        // φ = 2π·den/num, so n·φ ∈ 2πℤ first for n = num, after den turns.
        data.closed = true;
        data.petals = Some(num as u64);
        data.windings = Some(den as u64);
    }
    Ok(data)
}

/// Continued-fraction approximation of `ν = √(1−R²)` with denominator at
/// most `max_den`. Only a hint: a float never proves rationality.
pub fn suggest_rational(nu: f64, max_den: i64) -> Option<(i64, i64)> {
    if !(nu > 0.0 && nu < 1.0) || max_den < 1 {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut x = nu;
    let mut best = None;
    for _ in 0..64 {
        let a = x.floor();
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        best = Some((h2, k2));
        if (h2 as f64 / k2 as f64 - nu).abs() <= 1e-12 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = x - a;
        if frac.abs() < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    best.filter(|&(h, _)| h > 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitSample {
    pub radius: f64,
    pub shifted: [f64; 3],
    pub limit: [f64; 3],
    pub gap: f64,
}

/// Classical linear tractrix `(−c₁ sech t, t − tanh t, c₂ sech t)`.
pub fn linear_tractrix(c1: f64, c2: f64, t: f64) -> Vec3 {
    let sech = 1.0 / t.cosh();
    Vec3::new(-c1 * sech, t - t.tanh(), c2 * sech)
}

/// Compares `f − (R, 0, 0)` with the linear tractrix for growing `R`.
pub fn linear_tractrix_limit(selector: f64, t: f64, radii: &[f64]) -> Result<Vec<LimitSample>> {
    let mut prev = 1.0;
    let mut out = Vec::with_capacity(radii.len());
    for &r in radii {
        if !(r > prev) || !r.is_finite() {
            return Err(Error::InvalidRadiusSequence(r));
        }
        prev = r;
        let p = TractrixParams::from_selector(r, selector, Default::default())?;
        let f = position(&p, t)?;
        let shifted = Vec3::new(f.x - r, f.y, f.z);
        let limit = linear_tractrix(p.c1, p.c2, t);
        out.push(LimitSample {
            radius: r,
            shifted: shifted.into(),
            limit: limit.into(),
            gap: (shifted - limit).norm(),
        });
    }
    Ok(out)
}
