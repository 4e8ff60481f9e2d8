//! Rear track of a unit rod whose front end follows a directrix:
//! `x' = ⟨c − x, c'⟩ (c − x)` with `|c − x| = 1`.
//!
//! The closed-form circular tractrices solve this ODE, which makes the
//! integrator an independent check on them.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frenet::CUSP_MARGIN;
use crate::params::TractrixParams;
use crate::tractrix::{circle_point, circle_tangent, eval_velocity, position, singular_parameters, Vec3};

/// Rod-length tolerance for a single ODE evaluation.
pub const ROD_TOL: f64 = 1e-6;
/// Rod-length tolerance for an initial condition.
pub const INITIAL_ROD_TOL: f64 = 1e-9;

pub trait Directrix {
    fn point(&self, t: f64) -> Vec3;
    /// `c'(t)`; a unit vector when the parametrization is by arc length.
    fn velocity(&self, t: f64) -> Vec3;
    fn is_arc_length(&self) -> bool;

    fn unit_tangent(&self, t: f64) -> Vec3 {
        self.velocity(t).normalize()
    }
}

/// Circle of radius `R` in the `x¹x²`-plane, by arc length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleDirectrix {
    pub radius: f64,
}

impl CircleDirectrix {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidRadius(radius));
        }
        Ok(Self { radius })
    }
}

impl Directrix for CircleDirectrix {
    fn point(&self, t: f64) -> Vec3 {
        circle_point(self.radius, t)
    }
    fn velocity(&self, t: f64) -> Vec3 {
        circle_tangent(self.radius, t)
    }
    fn is_arc_length(&self) -> bool {
        true
    }
}

/// Straight line `origin + t·direction` with `|direction| = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineDirectrix {
    pub origin: Vec3,
    pub direction: Vec3,
}

impl LineDirectrix {
    pub fn new(origin: Vec3, direction: Vec3) -> Result<Self> {
        let n = direction.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidDirectrix("zero direction".into()));
        }
        Ok(Self {
            origin,
            direction: direction / n,
        })
    }
}

impl Directrix for LineDirectrix {
    fn point(&self, t: f64) -> Vec3 {
        self.origin + self.direction * t
    }
    fn velocity(&self, _t: f64) -> Vec3 {
        self.direction
    }
    fn is_arc_length(&self) -> bool {
        true
    }
}

/// Natural cubic spline through sampled points, one per coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct PolylineDirectrix {
    knots: Vec<f64>,
    values: Vec<Vec3>,
    // second derivatives at the knots
    moments: Vec<Vec3>,
    arc_length: bool,
}

#[derive(Debug, Deserialize)]
struct CsvRow {
    t: f64,
    x: f64,
    y: f64,
    z: f64,
}

impl PolylineDirectrix {
    pub fn from_samples(samples: &[(f64, Vec3)]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidDirectrix("need at least two samples".into()));
        }
        if samples.iter().any(|(t, p)| !t.is_finite() || !p.iter().all(|v| v.is_finite())) {
            return Err(Error::InvalidDirectrix("non-finite sample".into()));
        }
        if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidDirectrix("t must be strictly increasing".into()));
        }
        let knots: Vec<f64> = samples.iter().map(|s| s.0).collect();
        let values: Vec<Vec3> = samples.iter().map(|s| s.1).collect();
        let moments = natural_moments(&knots, &values);
        let mut out = Self {
            knots,
            values,
            moments,
            arc_length: false,
        };
        // Natural end conditions bend the spline near the ends; judge the
        // parametrization on interior knots.
        let interior = if out.knots.len() > 4 {
            &out.knots[2..out.knots.len() - 2]
        } else {
            &out.knots[..]
        };
        out.arc_length = interior.iter().all(|&t| (out.velocity(t).norm() - 1.0).abs() <= 1e-4);
        Ok(out)
    }

    /// Reads `t,x,y,z` rows (with header).
    pub fn from_csv(path: &Path) -> Result<Self> {
        let mut reader =
            csv::Reader::from_path(path).map_err(|e| Error::InvalidDirectrix(e.to_string()))?;
        let mut samples = Vec::new();
        for row in reader.deserialize() {
            let row: CsvRow = row.map_err(|e| Error::InvalidDirectrix(e.to_string()))?;
            samples.push((row.t, Vec3::new(row.x, row.y, row.z)));
        }
        Self::from_samples(&samples)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.knots[0], *self.knots.last().expect("non-empty"))
    }

    // Segment index, clamped so that evaluation outside the knots extrapolates.
    fn segment(&self, t: f64) -> usize {
        let k = self.knots.partition_point(|&x| x <= t);
        k.clamp(1, self.knots.len() - 1) - 1
    }
}

fn natural_moments(t: &[f64], y: &[Vec3]) -> Vec<Vec3> {
    let n = t.len();
    let mut m = vec![Vec3::zeros(); n];
    if n < 3 {
        return m;
    }
    // Thomas algorithm on the interior equations.
    let mut diag = vec![0.0; n];
    let mut rhs = vec![Vec3::zeros(); n];
    let mut upper = vec![0.0; n];
    for i in 1..n - 1 {
        let h0 = t[i] - t[i - 1];
        let h1 = t[i + 1] - t[i];
        let lower = h0 / 6.0;
        diag[i] = (h0 + h1) / 3.0;
        upper[i] = h1 / 6.0;
        rhs[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
        if i > 1 {
            let w = lower / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] = rhs[i] - rhs[i - 1] * w;
        }
    }
    for i in (1..n - 1).rev() {
        let next = if i + 1 < n - 1 { m[i + 1] } else { Vec3::zeros() };
        m[i] = (rhs[i] - next * upper[i]) / diag[i];
    }
    m
}

impl Directrix for PolylineDirectrix {
    fn point(&self, t: f64) -> Vec3 {
        let i = self.segment(t);
        let (a, b) = (self.knots[i], self.knots[i + 1]);
        let h = b - a;
        let (u, v) = (b - t, t - a);
        let (ma, mb) = (self.moments[i], self.moments[i + 1]);
        ma * (u.powi(3) / (6.0 * h))
            + mb * (v.powi(3) / (6.0 * h))
            + (self.values[i] - ma * (h * h / 6.0)) * (u / h)
            + (self.values[i + 1] - mb * (h * h / 6.0)) * (v / h)
    }

    fn velocity(&self, t: f64) -> Vec3 {
        let i = self.segment(t);
        let (a, b) = (self.knots[i], self.knots[i + 1]);
        let h = b - a;
        let (u, v) = (b - t, t - a);
        let (ma, mb) = (self.moments[i], self.moments[i + 1]);
        -ma * (u * u / (2.0 * h)) + mb * (v * v / (2.0 * h))
            + (self.values[i + 1] - self.values[i]) / h
            - (mb - ma) * (h / 6.0)
    }

    fn is_arc_length(&self) -> bool {
        self.arc_length
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RearTrackState {
    pub t: f64,
    pub x: Vec3,
}

fn rate<D: Directrix + ?Sized>(d: &D, t: f64, x: &Vec3) -> Vec3 {
    let rod = d.point(t) - x;
    rod * rod.dot(&d.velocity(t))
}

/// Right-hand side of the rear-track ODE.
pub fn rear_track_ode<D: Directrix + ?Sized>(d: &D, state: &RearTrackState) -> Result<Vec3> {
    let length = (d.point(state.t) - state.x).norm();
    if (length - 1.0).abs() > ROD_TOL {
        return Err(Error::RodLengthViolation {
            t: state.t,
            length,
        });
    }
    Ok(rate(d, state.t, &state.x))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub states: Vec<RearTrackState>,
    /// Step actually used (`(t1 − t0)/n`, at most the requested one).
    pub step: f64,
    /// Largest `| |c − x| − 1 |` after an RK4 step, before projection.
    pub max_drift: f64,
    /// Largest displacement caused by projecting back onto the unit sphere.
    pub max_renormalization: f64,
    /// Parameters where `⟨c − x, c'⟩` changes sign (cusps of the track).
    pub cusp_crossings: Vec<f64>,
}

/// Fixed-step RK4 from `(t0, x0)` to `t1`, projecting `x` back onto the unit
/// sphere around `c(t)` after every step.
pub fn integrate<D: Directrix + ?Sized>(d: &D, x0: Vec3, t0: f64, t1: f64, h: f64) -> Result<Trajectory> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidStep(h));
    }
    if !(t0.is_finite() && t1.is_finite()) || t1 <= t0 {
        return Err(Error::InvalidInterval { lo: t0, hi: t1 });
    }
    let length = (d.point(t0) - x0).norm();
    if (length - 1.0).abs() > INITIAL_ROD_TOL {
        return Err(Error::RodLengthViolation { t: t0, length });
    }
    let n = ((t1 - t0) / h).ceil().max(1.0) as usize;
    let step = (t1 - t0) / n as f64;
    let mut states = Vec::with_capacity(n + 1);
    states.push(RearTrackState { t: t0, x: x0 });
    let (mut max_drift, mut max_renormalization) = (0.0f64, 0.0f64);
    let mut cusp_crossings = Vec::new();
    let mut x = x0;
    let mut alignment = (d.point(t0) - x0).dot(&d.velocity(t0));
    for i in 0..n {
        let t = t0 + step * i as f64;
        let tn = t0 + step * (i + 1) as f64;
        let k1 = rate(d, t, &x);
        let k2 = rate(d, t + step / 2.0, &(x + k1 * (step / 2.0)));
        let k3 = rate(d, t + step / 2.0, &(x + k2 * (step / 2.0)));
        let k4 = rate(d, tn, &(x + k3 * step));
        let raw = x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (step / 6.0);
        let rod = d.point(tn) - raw;
        let len = rod.norm();
        if !len.is_finite() || len == 0.0 {
            return Err(Error::RodLengthViolation { t: tn, length: len });
        }
        max_drift = max_drift.max((len - 1.0).abs());
        let projected = d.point(tn) - rod / len;
        max_renormalization = max_renormalization.max((projected - raw).norm());
        x = projected;
        let next = (d.point(tn) - x).dot(&d.velocity(tn));
        if alignment != 0.0 && next != 0.0 && alignment.signum() != next.signum() {
            cusp_crossings.push(t + step * alignment / (alignment - next));
        }
        if next != 0.0 {
            alignment = next;
        }
        states.push(RearTrackState { t: tn, x });
    }
    Ok(Trajectory {
        states,
        step,
        max_drift,
        max_renormalization,
        cusp_crossings,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleComparison {
    pub t0: f64,
    pub t1: f64,
    pub step: f64,
    pub steps: usize,
    /// `max |x(t) − f(t)|` over all steps.
    pub max_error: f64,
    pub max_drift: f64,
    pub max_renormalization: f64,
    pub cusp_crossings: Vec<f64>,
}

/// Integrates from the closed-form point `f(t0)` on the circle directrix and
/// compares with `f` along the way. Starting on or next to a cusp is refused.
pub fn compare_with_closed_form(p: &TractrixParams, t0: f64, t1: f64, h: f64) -> Result<OracleComparison> {
    if !t0.is_finite() {
        return Err(Error::NonFinite("t0"));
    }
    if !singular_parameters(p, t0 - CUSP_MARGIN, t0 + CUSP_MARGIN)?.is_empty() {
        return Err(Error::CuspInitialCondition { t: t0 });
    }
    let d = CircleDirectrix::new(p.radius)?;
    let traj = integrate(&d, position(p, t0)?, t0, t1, h)?;
    let mut max_error = 0.0f64;
    for s in &traj.states {
        max_error = max_error.max((s.x - position(p, s.t)?).norm());
    }
    Ok(OracleComparison {
        t0,
        t1,
        step: traj.step,
        steps: traj.states.len() - 1,
        max_error,
        max_drift: traj.max_drift,
        max_renormalization: traj.max_renormalization,
        cusp_crossings: traj.cusp_crossings,
    })
}

/// `max |f' − ⟨c − f, c'⟩(c − f)|` over `n` equally spaced samples.
pub fn residual_of_closed_form(p: &TractrixParams, lo: f64, hi: f64, n: usize) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite()) || lo > hi || n == 0 {
        return Err(Error::InvalidInterval { lo, hi });
    }
    let d = CircleDirectrix::new(p.radius)?;
    let mut worst = 0.0f64;
    for i in 0..n {
        let t = if n == 1 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        };
        let (f, d1) = eval_velocity(p, t)?;
        worst = worst.max((d1 - rate(&d, t, &f)).norm());
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DriftOrder {
    pub step: f64,
    pub drift: f64,
    pub drift_half_step: f64,
    /// `drift / drift_half_step`; about 16 to 32 for a fourth-order scheme.
    pub ratio: f64,
}

/// Pre-projection rod drift at `h` and `h/2`.
pub fn drift_order<D: Directrix + ?Sized>(d: &D, x0: Vec3, t0: f64, t1: f64, h: f64) -> Result<DriftOrder> {
    let a = integrate(d, x0, t0, t1, h)?;
    let b = integrate(d, x0, t0, t1, h / 2.0)?;
    Ok(DriftOrder {
        step: a.step,
        drift: a.max_drift,
        drift_half_step: b.max_drift,
        ratio: a.max_drift / b.max_drift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{make_params, Branch};
    use crate::tractrix::{eval_curve, linear_tractrix, AsymptoticCircle};
    use std::io::Write;

    fn params(r: f64, c1: f64, c2: f64) -> TractrixParams {
        TractrixParams::from_constants(r, c1, c2).unwrap()
    }

    #[test]
    fn stationary_configuration_has_zero_rate() {
        let d = CircleDirectrix::new(2.0).unwrap();
        let t = 0.7;
        let normal = Vec3::new(0.0, 0.0, 1.0);
        let x = d.point(t) - normal;
        let v = rear_track_ode(&d, &RearTrackState { t, x }).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn rate_is_along_the_rod() {
        let p = params(2.0, 0.6, 0.8);
        let d = CircleDirectrix::new(2.0).unwrap();
        let x = position(&p, 1.0).unwrap();
        let v = rear_track_ode(&d, &RearTrackState { t: 1.0, x }).unwrap();
        let rod = d.point(1.0) - x;
        assert!((v.dot(&rod) - v.norm()).abs() < 1e-12 || (v.dot(&rod) + v.norm()).abs() < 1e-12);
        let d1 = eval_curve(&p, 1.0).unwrap().d1;
        assert!((v - d1).norm() < 1e-9);
    }

    #[test]
    fn rod_violation() {
        let d = CircleDirectrix::new(2.0).unwrap();
        let s = RearTrackState {
            t: 0.0,
            x: Vec3::zeros(),
        };
        assert!(matches!(rear_track_ode(&d, &s), Err(Error::RodLengthViolation { .. })));
        assert!(matches!(
            integrate(&d, Vec3::new(0.5, 0.0, 0.0), 0.0, 1.0, 1e-3),
            Err(Error::RodLengthViolation { .. })
        ));
        assert!(matches!(
            integrate(&d, Vec3::new(1.0, 0.0, 0.0), 0.0, 1.0, 0.0),
            Err(Error::InvalidStep(_))
        ));
    }

    #[test]
    fn closed_forms_solve_the_ode() {
        for p in [
            params(2.0, 0.6, 0.8),
            params(1.0, 2.0, 2.0),
            params(0.6, -1f64.cosh(), 1f64.sinh()),
        ] {
            let r = residual_of_closed_form(&p, -6.0, 6.0, 241).unwrap();
            assert!(r <= 1e-9, "{p:?}: {r}");
        }
    }

    #[test]
    fn asymptotic_circle_is_a_solution() {
        let c = AsymptoticCircle::new(2.0);
        let d = CircleDirectrix::new(2.0).unwrap();
        let h = 1e-5;
        for i in 0..20 {
            let t = -5.0 + 0.5 * i as f64;
            for f in [|c: &AsymptoticCircle, t| c.f_plus(t), |c: &AsymptoticCircle, t| c.f_minus(t)] {
                let x = f(&c, t);
                let dx = (f(&c, t + h) - f(&c, t - h)) / (2.0 * h);
                let v = rear_track_ode(&d, &RearTrackState { t, x }).unwrap();
                assert!((dx - v).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn exceptional_point_is_stationary() {
        let r: f64 = 0.6;
        let d = CircleDirectrix::new(r).unwrap();
        let o1 = Vec3::new(0.0, 0.0, -(1.0 - r * r).sqrt());
        let traj = integrate(&d, o1, 0.0, 10.0, 1e-2).unwrap();
        assert!(traj.states.iter().all(|s| (s.x - o1).norm() < 1e-14));
    }

    #[test]
    fn oracle_matches_in_every_regime() {
        let cases = [
            (params(2.0, 0.6, 0.8), 0.5),
            (params(1.0, 2.0, 2.0), 0.5),
            (params(0.9, 0.5f64.cosh(), 0.5f64.sinh()), 0.5),
        ];
        for (p, t0) in cases {
            let cmp = compare_with_closed_form(&p, t0, t0 + 5.0, 1e-3).unwrap();
            assert!(cmp.max_error <= 1e-6, "{p:?}: {}", cmp.max_error);
            assert!(cmp.max_renormalization <= 1e-9);
            assert!(cmp.cusp_crossings.is_empty());
        }
    }

    #[test]
    fn cusp_start_is_refused() {
        let p = params(2.0, 0.6, 0.8);
        assert!(matches!(
            compare_with_closed_form(&p, 0.0, 5.0, 1e-3),
            Err(Error::CuspInitialCondition { .. })
        ));
    }

    #[test]
    fn crossing_a_cusp_is_flagged() {
        let p = make_params(2.0, 0.4, Branch::Plus).unwrap();
        let cmp = compare_with_closed_form(&p, -2.0, 2.0, 1e-3).unwrap();
        assert_eq!(cmp.cusp_crossings.len(), 1);
        assert!(cmp.cusp_crossings[0].abs() < 1e-3);
    }

    #[test]
    fn linear_directrix_gives_classical_tractrix() {
        let d = LineDirectrix::new(Vec3::zeros(), Vec3::new(0.0, 1.0, 0.0)).unwrap();
        let (c1, c2) = (0.6, 0.8);
        let t0 = 0.5;
        let traj = integrate(&d, linear_tractrix(c1, c2, t0), t0, t0 + 5.0, 1e-3).unwrap();
        for s in &traj.states {
            assert!((s.x - linear_tractrix(c1, c2, s.t)).norm() < 1e-8);
        }
    }

    #[test]
    fn drift_is_fourth_order() {
        let p = params(2.0, 0.6, 0.8);
        let d = CircleDirectrix::new(2.0).unwrap();
        let x0 = position(&p, 0.5).unwrap();
        let o = drift_order(&d, x0, 0.5, 5.5, 0.1).unwrap();
        assert!(o.ratio >= 15.0, "{o:?}");
    }

    #[test]
    fn spline_reproduces_a_circle_from_csv() {
        let radius = 2.0;
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "t,x,y,z").unwrap();
        for i in 0..=400 {
            let t = -1.0 + 0.025 * i as f64;
            let c = circle_point(radius, t);
            writeln!(file, "{t},{},{},{}", c.x, c.y, c.z).unwrap();
        }
        let poly = PolylineDirectrix::from_csv(file.path()).unwrap();
        assert!(poly.is_arc_length());
        assert_eq!(poly.domain(), (-1.0, 9.0));
        let exact = CircleDirectrix::new(radius).unwrap();
        for i in 0..50 {
            let t = 0.0 + 0.17 * i as f64;
            assert!((poly.point(t) - exact.point(t)).norm() < 1e-7);
            assert!((poly.velocity(t) - exact.velocity(t)).norm() < 1e-5);
        }
        let p = params(radius, 0.6, 0.8);
        let traj = integrate(&poly, position(&p, 0.5).unwrap(), 0.5, 5.5, 1e-3).unwrap();
        let last = traj.states.last().unwrap();
        assert!((last.x - position(&p, last.t).unwrap()).norm() < 1e-4);
    }

    #[test]
    fn bad_polylines() {
        assert!(PolylineDirectrix::from_samples(&[(0.0, Vec3::zeros())]).is_err());
        assert!(PolylineDirectrix::from_samples(&[(0.0, Vec3::zeros()), (0.0, Vec3::x())]).is_err());
        let two = PolylineDirectrix::from_samples(&[(0.0, Vec3::zeros()), (2.0, Vec3::x() * 2.0)]).unwrap();
        assert!((two.point(1.0) - Vec3::x()).norm() < 1e-15);
        assert!(two.is_arc_length());
    }
}
