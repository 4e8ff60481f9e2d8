//! Frenet frames, curvature and torsion.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{Regime, TractrixParams};
use crate::tractrix::{eval_curve, singular_parameters, Vec3};

/// Points with `|ξ₂|` below this are treated as cusps.
pub const REGULAR_EPS: f64 = 1e-10;
/// Curvature below this leaves the normal undefined.
pub const CURVATURE_EPS: f64 = 1e-12;
/// Tolerance used to decide planarity from the constants.
pub const PLANAR_EPS: f64 = 1e-12;
/// Windows for torsion profiles must stay this far from cusps.
pub const CUSP_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetData {
    pub t: f64,
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
    pub curvature: f64,
    pub torsion: f64,
}

/// Frenet apparatus from the first three derivatives of any regular curve.
/// Returns `None` when the speed or the curvature vanishes.
pub fn frenet_from_derivatives(t: f64, d1: &Vec3, d2: &Vec3, d3: &Vec3) -> Option<FrenetData> {
    let speed = d1.norm();
    if speed == 0.0 {
        return None;
    }
    let cross = d1.cross(d2);
    let cross_norm = cross.norm();
    let curvature = cross_norm / speed.powi(3);
    if curvature < CURVATURE_EPS {
        return None;
    }
    let tangent = d1 / speed;
    let binormal = cross / cross_norm;
    let normal = binormal.cross(&tangent);
    let torsion = cross.dot(d3) / (cross_norm * cross_norm);
    Some(FrenetData {
        t,
        tangent,
        normal,
        binormal,
        curvature,
        torsion,
    })
}

pub fn frenet(p: &TractrixParams, t: f64) -> Result<FrenetData> {
    let s = eval_curve(p, t)?;
    if s.xi.y.abs() < REGULAR_EPS {
        return Err(Error::SingularPoint { t, xi2: s.xi.y });
    }
    frenet_from_derivatives(t, &s.d1, &s.d2, &s.d3).ok_or(Error::VanishingCurvature { t })
}

/// Planar iff `c2 = 0` and `c1 = ±1` (only `c1 = 1` exists for `R = 1`).
pub fn is_planar(p: &TractrixParams) -> bool {
    let c1_ok = (p.c1 - 1.0).abs() <= PLANAR_EPS
        || (p.regime != Regime::Critical && (p.c1 + 1.0).abs() <= PLANAR_EPS);
    p.c2.abs() <= PLANAR_EPS && c1_ok
}

/// `n` equally spaced `(t, τ)` samples on `[lo, hi]`.
pub fn torsion_profile(p: &TractrixParams, lo: f64, hi: f64, n: usize) -> Result<Vec<(f64, f64)>> {
    if !(lo.is_finite() && hi.is_finite()) || lo > hi || n == 0 {
        return Err(Error::InvalidInterval { lo, hi });
    }
    if let Some(&t) = singular_parameters(p, lo - CUSP_MARGIN, hi + CUSP_MARGIN)?.first() {
        return Err(Error::WindowContainsSingularity { t });
    }
    (0..n)
        .map(|i| {
            let t = if n == 1 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            };
            frenet(p, t).map(|fr| (t, fr.torsion))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tractrix::position;
    use approx::assert_relative_eq;

    fn params(r: f64, c1: f64, c2: f64) -> TractrixParams {
        TractrixParams::from_constants(r, c1, c2).unwrap()
    }

    #[test]
    fn helix_oracle() {
        // helix (a cos s, a sin s, b s): κ = a/(a²+b²), τ = b/(a²+b²)
        let (a, b, s) = (2.0, 0.5, 0.3f64);
        let d1 = Vec3::new(-a * s.sin(), a * s.cos(), b);
        let d2 = Vec3::new(-a * s.cos(), -a * s.sin(), 0.0);
        let d3 = Vec3::new(a * s.sin(), -a * s.cos(), 0.0);
        let fr = frenet_from_derivatives(s, &d1, &d2, &d3).unwrap();
        assert_relative_eq!(fr.curvature, a / (a * a + b * b), epsilon = 1e-15);
        assert_relative_eq!(fr.torsion, b / (a * a + b * b), epsilon = 1e-15);
    }

    #[test]
    fn planar_case_has_zero_torsion() {
        let fr = frenet(&params(2.0, 1.0, 0.0), 1.0).unwrap();
        assert_eq!(fr.torsion, 0.0);
    }

    #[test]
    fn non_planar_case_has_torsion() {
        let fr = frenet(&params(2.0, 0.6, 0.8), 1.0).unwrap();
        assert!(fr.torsion.abs() > 1e-6);
    }

    #[test]
    fn frame_is_orthonormal() {
        let fr = frenet(&params(0.6, 0.5f64.cosh(), 0.5f64.sinh()), 0.7).unwrap();
        let (t, n, b) = (fr.tangent, fr.normal, fr.binormal);
        for v in [t, n, b] {
            assert_relative_eq!(v.norm(), 1.0, epsilon = 1e-12);
        }
        assert!(t.dot(&n).abs() < 1e-12 && t.dot(&b).abs() < 1e-12 && n.dot(&b).abs() < 1e-12);
        assert_relative_eq!(t.cross(&n), b, epsilon = 1e-12);
    }

    #[test]
    fn curvature_approaches_asymptotic_circle() {
        let fr = frenet(&params(2.0, 0.6, 0.8), 25.0).unwrap();
        assert!((fr.curvature - 1.0 / 3f64.sqrt()).abs() < 1e-3);
        assert!(fr.torsion.abs() < 1e-3);
    }

    #[test]
    fn curvature_matches_finite_difference_oracle() {
        let p = params(1.0, 2.0, 2.0);
        let t = 1.3;
        let h = 1e-4;
        let f = |s: f64| position(&p, s).unwrap();
        let d1 = (f(t + h) - f(t - h)) / (2.0 * h);
        let d2 = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
        let k_fd = d1.cross(&d2).norm() / d1.norm().powi(3);
        let fr = frenet(&p, t).unwrap();
        assert_relative_eq!(fr.curvature, k_fd, max_relative = 1e-6);
    }

    #[test]
    fn cusp_is_rejected() {
        assert!(matches!(
            frenet(&params(2.0, 0.6, 0.8), 0.0),
            Err(Error::SingularPoint { .. })
        ));
    }

    #[test]
    fn planarity_from_constants() {
        assert!(is_planar(&params(2.0, -1.0, 0.0)));
        assert!(is_planar(&params(2.0, 1.0, 0.0)));
        assert!(is_planar(&params(1.0, 1.0, 0.0)));
        assert!(is_planar(&params(0.6, -1.0, 0.0)));
        assert!(!is_planar(&params(0.6, 0.5f64.cosh(), 0.5f64.sinh())));
        assert!(!is_planar(&params(2.0, 0.6, 0.8)));
    }

    #[test]
    fn torsion_profiles() {
        let planar = torsion_profile(&params(2.0, -1.0, 0.0), 0.5, 6.0, 20).unwrap();
        assert!(planar.iter().all(|&(_, tau)| tau.abs() <= 1e-10));

        let p = params(0.6, 1f64.cosh(), 1f64.sinh());
        let unit = std::f64::consts::PI / p.lambda;
        let prof = torsion_profile(&p, 0.01, unit - 0.01, 50).unwrap();
        assert_eq!(prof.len(), 50);
        assert!(prof.iter().all(|&(_, tau)| tau.abs() > 0.0));

        assert!(matches!(
            torsion_profile(&p, -1.0, 1.0, 5),
            Err(Error::WindowContainsSingularity { .. })
        ));
    }

    #[test]
    fn torsion_is_odd_in_t() {
        let p = params(2.0, 0.6, 0.8);
        for &t in &[0.3, 1.0, 2.5, 6.0] {
            let a = frenet(&p, t).unwrap().torsion;
            let b = frenet(&p, -t).unwrap().torsion;
            assert_relative_eq!(a, -b, max_relative = 1e-10);
        }
    }
}
