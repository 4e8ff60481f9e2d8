//! Circular pseudospheres: the surfaces swept by the family of circular
//! tractrices sharing one directrix.
//!
//! The family is parametrized by `α` through the constants
//! `(cos α, sin α)` for `R > 1`, `(1 + α², 2α)` for `R = 1` and
//! `(±cosh α, sinh α)` for `R < 1`; the two signs of the last case are the
//! two connected components and are always handled as separate patches.
//!
//! All partial derivatives are exact (Taylor jets). Mixed partials come from
//! polarization along the diagonal direction `(1, 1)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frenet::frenet_from_derivatives;
use crate::jet::{Jet, Scalar};
use crate::params::{constants_for, lambda_for, Branch, Regime, TractrixParams};
use crate::tractrix::{
    circle_point, position_generic, singular_parameters, xi_generic, Vec3, CUSP_EPS,
    DENOMINATOR_EPS,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfacePatch {
    pub radius: f64,
    pub regime: Regime,
    pub lambda: f64,
    pub branch: Branch,
    pub t_range: (f64, f64),
    pub alpha_range: (f64, f64),
}

impl SurfacePatch {
    /// Default patch: the complete surface for `R ≥ 1` (`α ∈ [0, 2π]` when
    /// `R > 1`), and the unit `0 ≤ t ≤ π/λ` of the chosen component for `R < 1`.
    pub fn new(radius: f64, branch: Branch) -> Result<Self> {
        let regime = Regime::from_radius(radius)?;
        let lambda = lambda_for(radius);
        let inf = f64::INFINITY;
        let (t_range, alpha_range) = match regime {
            Regime::Supercritical => ((-inf, inf), (0.0, 2.0 * PI)),
            Regime::Critical => ((-inf, inf), (-inf, inf)),
            Regime::Subcritical => ((0.0, PI / lambda), (-inf, inf)),
        };
        Ok(Self {
            radius,
            regime,
            lambda,
            branch: if regime == Regime::Subcritical {
                branch
            } else {
                Branch::Plus
            },
            t_range,
            alpha_range,
        })
    }

    /// The `n`-th unit `nπ/λ ≤ t ≤ (n+1)π/λ` of a subcritical component.
    pub fn unit(radius: f64, branch: Branch, n: i64) -> Result<Self> {
        let patch = Self::new(radius, branch)?;
        if patch.regime != Regime::Subcritical {
            return Err(Error::UnsupportedRegime {
                op: "unit",
                regime: patch.regime,
            });
        }
        let w = PI / patch.lambda;
        patch.with_t_range(n as f64 * w, (n + 1) as f64 * w)
    }

    pub fn with_t_range(mut self, lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        self.t_range = (lo, hi);
        Ok(self)
    }

    pub fn with_alpha_range(mut self, lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        self.alpha_range = (lo, hi);
        Ok(self)
    }

    /// `α` lives on a circle for `R > 1`.
    pub fn alpha_is_periodic(&self) -> bool {
        self.regime == Regime::Supercritical
    }

    /// The tractrix `α = const` of the family.
    pub fn params_at(&self, alpha: f64) -> Result<TractrixParams> {
        TractrixParams::from_selector(self.radius, alpha, self.branch)
    }

    fn check_domain(&self, t: f64, alpha: f64) -> Result<()> {
        if !t.is_finite() {
            return Err(Error::NonFinite("t"));
        }
        if !alpha.is_finite() {
            return Err(Error::NonFinite("alpha"));
        }
        let in_t = self.t_range.0 <= t && t <= self.t_range.1;
        let in_a = self.alpha_is_periodic()
            || (self.alpha_range.0 <= alpha && alpha <= self.alpha_range.1);
        if in_t && in_a {
            Ok(())
        } else {
            Err(Error::OutOfDomain { t, alpha })
        }
    }

    /// Cusp parameters (cuspidal edges) inside the finite part of the t-range.
    pub fn cuspidal_edges(&self) -> Vec<f64> {
        let p = TractrixParams::from_selector(self.radius, 0.0, self.branch)
            .expect("patch radius was validated");
        let lo = self.t_range.0.max(-1e6);
        let hi = self.t_range.1.min(1e6);
        singular_parameters(&p, lo, hi).unwrap_or_default()
    }

    // (ξ, f) as jets along the direction (dt, da) through (t, alpha).
    fn jets<const N: usize>(
        &self,
        t: f64,
        alpha: f64,
        dt: f64,
        da: f64,
    ) -> Result<([Jet<N>; 3], [Jet<N>; 3])> {
        let tj = Jet::<N>::along(t, dt);
        let aj = Jet::<N>::along(alpha, da);
        let (c1, c2) = constants_for(self.regime, self.branch, aj);
        let xi = xi_generic(self.regime, self.radius, self.lambda, c1, c2, tj)?;
        Ok((xi, position_generic(self.radius, xi, tj)))
    }

    /// Plain position without derivatives.
    pub fn position(&self, t: f64, alpha: f64) -> Result<Vec3> {
        let (c1, c2) = constants_for(self.regime, self.branch, alpha);
        let xi = xi_generic(self.regime, self.radius, self.lambda, c1, c2, t)?;
        Ok(Vec3::from(position_generic(self.radius, xi, t)))
    }
}

fn column<const N: usize>(v: &[Jet<N>; 3], k: usize) -> Vec3 {
    Vec3::new(v[0].derivative(k), v[1].derivative(k), v[2].derivative(k))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSample {
    pub t: f64,
    pub alpha: f64,
    pub xi: Vec3,
    pub f: Vec3,
    pub f_t: Vec3,
    pub f_alpha: Vec3,
}

impl SurfaceSample {
    /// `(f_t × f_α) / |f_t × f_α|`; `None` on the cuspidal edge.
    pub fn unit_normal(&self) -> Option<Vec3> {
        let n = self.f_t.cross(&self.f_alpha);
        let len = n.norm();
        (len > 0.0).then(|| n / len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondOrderSample {
    pub first: SurfaceSample,
    pub f_tt: Vec3,
    pub f_ta: Vec3,
    pub f_aa: Vec3,
}

pub fn surface_point(s: &SurfacePatch, t: f64, alpha: f64) -> Result<SurfaceSample> {
    s.check_domain(t, alpha)?;
    surface_point_unchecked(s, t, alpha)
}

// Skips the patch-range check; integration maps may step slightly outside
// a truncated range.
pub(crate) fn surface_point_unchecked(s: &SurfacePatch, t: f64, alpha: f64) -> Result<SurfaceSample> {
    let (xi, ft) = s.jets::<2>(t, alpha, 1.0, 0.0)?;
    let (_, fa) = s.jets::<2>(t, alpha, 0.0, 1.0)?;
    Ok(SurfaceSample {
        t,
        alpha,
        xi: column(&xi, 0),
        f: column(&ft, 0),
        f_t: column(&ft, 1),
        f_alpha: column(&fa, 1),
    })
}

pub fn second_order(s: &SurfacePatch, t: f64, alpha: f64) -> Result<SecondOrderSample> {
    s.check_domain(t, alpha)?;
    let (xi, ft) = s.jets::<3>(t, alpha, 1.0, 0.0)?;
    let (_, fa) = s.jets::<3>(t, alpha, 0.0, 1.0)?;
    let (_, fd) = s.jets::<3>(t, alpha, 1.0, 1.0)?;
    let f_tt = column(&ft, 2);
    let f_aa = column(&fa, 2);
    // D²_(1,1) f = f_tt + 2 f_tα + f_αα
    let f_ta = (column(&fd, 2) - f_tt - f_aa) / 2.0;
    Ok(SecondOrderSample {
        first: SurfaceSample {
            t,
            alpha,
            xi: column(&xi, 0),
            f: column(&ft, 0),
            f_t: column(&ft, 1),
            f_alpha: column(&fa, 1),
        },
        f_tt,
        f_ta,
        f_aa,
    })
}

/// First fundamental form in the `(t, α)` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricTensor {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl MetricTensor {
    pub fn sqrt_det(&self) -> f64 {
        (self.e * self.g - self.f * self.f).max(0.0).sqrt()
    }
}

// (E, G) of the analytic metric; F vanishes identically.
pub(crate) fn metric_generic<S: Scalar>(s: &SurfacePatch, t: S, alpha: S) -> Result<(S, S)> {
    let r = s.radius;
    let (num, den, stretch) = match s.regime {
        Regime::Supercritical => {
            let lt = t * s.lambda;
            (r * r - 1.0, alpha.cos() + lt.cosh() * r, lt.sinh())
        }
        Regime::Critical => (4.0, alpha * alpha + t * t + 1.0, t),
        Regime::Subcritical => {
            let lt = t * s.lambda;
            (
                1.0 - r * r,
                alpha.cosh() * s.branch.sign() + lt.cos() * r,
                lt.sin(),
            )
        }
    };
    if den.value().abs() < DENOMINATOR_EPS {
        return Err(Error::SingularEvaluation {
            t: t.value(),
            denominator: den.value(),
        });
    }
    let g = S::cst(num) / (den * den);
    Ok((g * stretch * stretch, g))
}

pub fn metric_analytic(s: &SurfacePatch, t: f64, alpha: f64) -> Result<MetricTensor> {
    let (e, g) = metric_generic(s, t, alpha)?;
    Ok(MetricTensor { e, f: 0.0, g })
}

/// Radius of the coordinate circle `t = const`.
pub fn coordinate_circle_radius(s: &SurfacePatch, t: f64) -> f64 {
    let r = s.radius;
    match s.regime {
        Regime::Supercritical => {
            let c = (s.lambda * t).cosh();
            (r * r - 1.0).sqrt() / (r * r * c * c - 1.0).sqrt()
        }
        Regime::Critical => 1.0 / (t * t + 1.0).sqrt(),
        Regime::Subcritical => {
            let c = (s.lambda * t).cos();
            (1.0 - r * r).sqrt() / (1.0 - r * r * c * c).sqrt()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleCheck {
    pub radius_formula: f64,
    /// Mean of `1/κ` over the α samples.
    pub radius_numeric: f64,
    /// Largest deviation of `1/κ` from `radius_formula`.
    pub radius_error: f64,
    pub torsion_max: f64,
    pub samples: usize,
}

const CIRCLE_SAMPLES: usize = 24;

/// Curvature and torsion of the α-curve `t = const`, sampled along α.
pub fn coordinate_circle_check(s: &SurfacePatch, t: f64) -> Result<CircleCheck> {
    let alphas: Vec<f64> = match s.regime {
        Regime::Supercritical => (0..CIRCLE_SAMPLES)
            .map(|i| 2.0 * PI * i as f64 / CIRCLE_SAMPLES as f64)
            .collect(),
        _ => (0..CIRCLE_SAMPLES)
            .map(|i| -4.0 + 8.0 * i as f64 / (CIRCLE_SAMPLES - 1) as f64)
            .collect(),
    };
    let radius_formula = coordinate_circle_radius(s, t);
    let mut sum = 0.0;
    let mut radius_error: f64 = 0.0;
    let mut torsion_max: f64 = 0.0;
    for &a in &alphas {
        let (_, f) = s.jets::<4>(t, a, 0.0, 1.0)?;
        let fr = frenet_from_derivatives(a, &column(&f, 1), &column(&f, 2), &column(&f, 3))
            .ok_or(Error::VanishingCurvature { t })?;
        let rad = 1.0 / fr.curvature;
        sum += rad;
        radius_error = radius_error.max((rad - radius_formula).abs());
        torsion_max = torsion_max.max(fr.torsion.abs());
    }
    Ok(CircleCheck {
        radius_formula,
        radius_numeric: sum / alphas.len() as f64,
        radius_error,
        torsion_max,
        samples: alphas.len(),
    })
}

/// Gauss curvature from the analytic metric through the orthogonal-coordinate formula
/// `K = −1/(2W) [∂_α(E_α/W) + ∂_t(G_t/W)]`, `W = √(EG)`.
pub fn gauss_curvature(s: &SurfacePatch, t: f64, alpha: f64) -> Result<f64> {
    s.check_domain(t, alpha)?;
    let (et, gt) = metric_generic(s, Jet::<3>::variable(t), Jet::constant(alpha))?;
    let (ea, ga) = metric_generic(s, Jet::<3>::constant(t), Jet::variable(alpha))?;
    let e = et.value();
    let g = gt.value();
    if e.sqrt() < CUSP_EPS {
        return Err(Error::SingularPoint { t, xi2: e.sqrt() });
    }
    let w = (e * g).sqrt();
    let (e_t, g_t, g_tt) = (et.derivative(1), gt.derivative(1), gt.derivative(2));
    let (e_a, g_a, e_aa) = (ea.derivative(1), ga.derivative(1), ea.derivative(2));
    let w_a = (e_a * g + e * g_a) / (2.0 * w);
    let w_t = (e_t * g + e * g_t) / (2.0 * w);
    let d_alpha = e_aa / w - e_a * w_a / (w * w);
    let d_t = g_tt / w - g_t * w_t / (w * w);
    Ok(-(d_alpha + d_t) / (2.0 * w))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureLineProbe {
    /// `F = ⟨f_t, f_α⟩`
    pub first_form: f64,
    /// `M = ⟨f_tα, n⟩`
    pub second_form: f64,
}

/// Off-diagonal coefficients of both fundamental forms. Both vanish exactly
/// when the coordinate lines are lines of curvature.
pub fn curvature_line_probe(s: &SurfacePatch, t: f64, alpha: f64) -> Result<CurvatureLineProbe> {
    let so = second_order(s, t, alpha)?;
    let n = so
        .first
        .unit_normal()
        .ok_or(Error::SingularPoint { t, xi2: so.first.xi.y })?;
    Ok(CurvatureLineProbe {
        first_form: so.first.f_t.dot(&so.first.f_alpha),
        second_form: so.f_ta.dot(&n),
    })
}

/// `|f + f_t/ξ₂ − c(t)|` for the surface.
pub fn surface_tracing_residual(s: &SurfacePatch, t: f64, alpha: f64) -> Result<f64> {
    let p = surface_point(s, t, alpha)?;
    if p.xi.y.abs() < CUSP_EPS {
        return Err(Error::SingularPoint { t, xi2: p.xi.y });
    }
    Ok((p.f + p.f_t / p.xi.y - circle_point(s.radius, t)).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tractrix::{eval_curve, rotate_about_x3};
    use approx::assert_relative_eq;

    fn patch(r: f64) -> SurfacePatch {
        SurfacePatch::new(r, Branch::Plus).unwrap()
    }

    /// Extrinsic Gauss curvature (LN − M²)/(EG − F²) from the second partials.
    fn extrinsic_gauss(s: &SurfacePatch, t: f64, a: f64) -> f64 {
        let so = second_order(s, t, a).unwrap();
        let p = so.first;
        let n = p.unit_normal().unwrap();
        let (e, f, g) = (p.f_t.dot(&p.f_t), p.f_t.dot(&p.f_alpha), p.f_alpha.dot(&p.f_alpha));
        let (l, m, nn) = (so.f_tt.dot(&n), so.f_ta.dot(&n), so.f_aa.dot(&n));
        (l * nn - m * m) / (e * g - f * f)
    }

    #[test]
    fn cuspidal_edge_point_is_unit_distance_from_directrix() {
        let s = patch(2.0);
        for &a in &[0.0, 1.0, 3.0, 5.5] {
            let p = surface_point(&s, 0.0, a).unwrap();
            assert_relative_eq!((p.f - circle_point(2.0, 0.0)).norm(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn alpha_zero_matches_curve() {
        let s = patch(1.0);
        let p = surface_point(&s, 1.0, 0.0).unwrap();
        let c = eval_curve(&TractrixParams::from_constants(1.0, 1.0, 0.0).unwrap(), 1.0).unwrap();
        assert_relative_eq!(p.f, c.f, epsilon = 1e-15);
        assert_relative_eq!(p.f_t, c.d1, epsilon = 1e-15);
    }

    #[test]
    fn partials_match_finite_differences() {
        let h = 1e-6;
        for s in [patch(2.0), patch(1.0), patch(0.6), SurfacePatch::new(0.6, Branch::Minus).unwrap()] {
            let (t, a) = (0.8, 0.4);
            let p = surface_point(&s, t, a).unwrap();
            let ft = (s.position(t + h, a).unwrap() - s.position(t - h, a).unwrap()) / (2.0 * h);
            let fa = (s.position(t, a + h).unwrap() - s.position(t, a - h).unwrap()) / (2.0 * h);
            assert_relative_eq!(p.f_t, ft, max_relative = 1e-6, epsilon = 1e-9);
            assert_relative_eq!(p.f_alpha, fa, max_relative = 1e-6, epsilon = 1e-9);
            let so = second_order(&s, t, a).unwrap();
            let fta = (surface_point(&s, t, a + h).unwrap().f_t - surface_point(&s, t, a - h).unwrap().f_t)
                / (2.0 * h);
            assert_relative_eq!(so.f_ta, fta, max_relative = 1e-6, epsilon = 1e-8);
        }
    }

    #[test]
    fn metric_examples() {
        let m = metric_analytic(&patch(1.0), 1.0, 0.0).unwrap();
        assert_relative_eq!(m.e, 1.0, epsilon = 1e-15);
        assert_relative_eq!(m.g, 1.0, epsilon = 1e-15);
        assert_eq!(m.f, 0.0);
        let m = metric_analytic(&patch(2.0), 0.0, 1.3).unwrap();
        assert_eq!(m.e, 0.0);
        assert!(m.g > 0.0);
    }

    #[test]
    fn metric_matches_partials() {
        for s in [patch(3.5), patch(1.0), patch(0.6), SurfacePatch::new(0.3, Branch::Minus).unwrap()] {
            let s = s.with_t_range(-5.0, 5.0).unwrap();
            for &(t, a) in &[(0.3, 0.2), (1.1, -0.9), (1.9, 2.4)] {
                let p = surface_point(&s, t, a).unwrap();
                let m = metric_analytic(&s, t, a).unwrap();
                assert!((m.e - p.f_t.dot(&p.f_t)).abs() <= 1e-12);
                assert!((m.g - p.f_alpha.dot(&p.f_alpha)).abs() <= 1e-12);
                assert!(p.f_t.dot(&p.f_alpha).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn mirror_symmetries() {
        for s in [patch(2.0), patch(1.0), patch(0.6)] {
            let s = s.with_t_range(-10.0, 10.0).unwrap();
            for &(t, a) in &[(0.7, 0.3), (1.5, 1.2), (2.2, -0.4)] {
                let f = s.position(t, a).unwrap();
                let g = s.position(t, -a).unwrap();
                assert_relative_eq!(g, Vec3::new(f.x, f.y, -f.z), epsilon = 1e-12);
                let h = s.position(-t, a).unwrap();
                assert_relative_eq!(h, Vec3::new(f.x, -f.y, f.z), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn coordinate_circle_radii() {
        assert_relative_eq!(coordinate_circle_radius(&patch(2.0), 0.0), 1.0, epsilon = 1e-15);
        assert_relative_eq!(coordinate_circle_radius(&patch(1.0), 0.0), 1.0);
        let s = patch(0.6);
        assert_relative_eq!(coordinate_circle_radius(&s, PI / s.lambda), 1.0, epsilon = 1e-15);
        assert_relative_eq!(coordinate_circle_radius(&s, PI / (2.0 * s.lambda)), 0.8, epsilon = 1e-15);
        let l = 3f64.sqrt() / 2.0;
        assert_relative_eq!(
            coordinate_circle_radius(&patch(2.0), 1.0),
            3f64.sqrt() / (4.0 * l.cosh().powi(2) - 1.0).sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn coordinate_curves_are_circles() {
        let cases = [(patch(2.0), 1.0), (patch(1.0), 2.0), (patch(0.6), PI / (2.0 * 4.0 / 3.0))];
        for (s, t) in cases {
            let c = coordinate_circle_check(&s, t).unwrap();
            assert!(c.radius_error <= 1e-8, "{c:?}");
            assert!(c.torsion_max <= 1e-10, "{c:?}");
        }
        let c = coordinate_circle_check(&patch(1.0), 2.0).unwrap();
        assert_relative_eq!(c.radius_numeric, 1.0 / 5f64.sqrt(), epsilon = 1e-8);
    }

    #[test]
    fn gauss_curvature_intrinsic_matches_extrinsic() {
        for s in [patch(2.0), patch(1.25), patch(1.0), patch(0.6), SurfacePatch::new(0.6, Branch::Minus).unwrap()] {
            for &(t, a) in &[(0.5, 0.3), (1.2, 2.0), (1.9, -1.0)] {
                let ki = gauss_curvature(&s, t, a).unwrap();
                let ke = extrinsic_gauss(&s, t, a);
                assert_relative_eq!(ki, ke, max_relative = 1e-7, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn gauss_curvature_is_not_constant() {
        let s = patch(2.0);
        let k1 = gauss_curvature(&s, 1.0, 0.0).unwrap();
        let k2 = gauss_curvature(&s, 2.0, 0.0).unwrap();
        assert!((k1 - k2).abs() > 1e-4);
        assert!(gauss_curvature(&s, 0.0, 1.0).is_err());
    }

    #[test]
    fn large_radius_approaches_classical_pseudosphere() {
        let s = patch(1000.0);
        for &(t, a) in &[(0.8, 0.0), (1.5, 1.0), (2.5, 4.0)] {
            assert!((gauss_curvature(&s, t, a).unwrap() + 1.0).abs() < 1e-2);
        }
    }

    #[test]
    fn curvature_line_probes() {
        let cases = [
            (patch(2.0), 1.0, 0.7),
            (patch(1.0), 1.5, -2.0),
            (patch(0.6), 0.3, 0.2),
        ];
        for (s, t, a) in cases {
            let p = curvature_line_probe(&s, t, a).unwrap();
            assert!(p.first_form.abs() <= 1e-9 && p.second_form.abs() <= 1e-9, "{p:?}");
        }
    }

    #[test]
    fn surface_tracing_examples() {
        assert!(surface_tracing_residual(&patch(2.0), 1.0, 2.0).unwrap() <= 1e-9);
        assert!(surface_tracing_residual(&patch(1.0), -2.0, 1.0).unwrap() <= 1e-9);
        let s = SurfacePatch::new(0.6, Branch::Minus).unwrap();
        assert!(surface_tracing_residual(&s, 0.5, 0.0).unwrap() <= 1e-9);
        assert!(surface_tracing_residual(&patch(2.0), 0.0, 2.0).is_err());
    }

    #[test]
    fn subcritical_surface_period() {
        let s = patch(0.6).with_t_range(-100.0, 100.0).unwrap();
        let period = 2.0 * PI / s.lambda;
        let phi = 2.0 * PI / 0.8;
        for &(t, a) in &[(0.3, 0.1), (1.7, -1.2), (-2.0, 0.5)] {
            let f = s.position(t, a).unwrap();
            let g = s.position(t + period, a).unwrap();
            assert_relative_eq!(g, rotate_about_x3(&f, phi), epsilon = 1e-10);
        }
    }

    #[test]
    fn out_of_domain_is_rejected() {
        assert!(matches!(
            surface_point(&patch(0.6), -1.0, 0.0),
            Err(Error::OutOfDomain { .. })
        ));
        // α is an angle for R > 1
        assert!(surface_point(&patch(2.0), 1.0, -0.5).is_ok());
    }

    #[test]
    fn cuspidal_edges_of_default_patches() {
        assert_eq!(patch(2.0).cuspidal_edges(), vec![0.0]);
        let s = patch(0.6);
        let e = s.cuspidal_edges();
        assert_eq!(e.len(), 2);
        assert_relative_eq!(e[1], PI / s.lambda, epsilon = 1e-14);
    }
}
