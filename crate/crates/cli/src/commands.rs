use std::f64::consts::PI;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use circular_tractrix::checks::{run_suite, surface_for, CheckReport};
use circular_tractrix::frenet::frenet;
use circular_tractrix::measures::{area_target, enclosed_volume, surface_area, volume_target};
use circular_tractrix::mesh::{build_mesh, write_obj, MeshResolution};
use circular_tractrix::quadrature::QuadratureResult;
use circular_tractrix::rear_track::{compare_with_closed_form, drift_order, integrate, CircleDirectrix, PolylineDirectrix};
use circular_tractrix::surface::SurfacePatch;
use circular_tractrix::tractrix::{eval_curve, period_data, position, suggest_rational};
use circular_tractrix::{Branch, Error, Regime, TractrixParams, Vec3};
use serde::Serialize;
use serde_json::json;

use crate::args::{BranchArg, CurveArgs, MeasureArgs, ParamArgs, PetalArgs, RearTrackArgs, RegimeArg, SurfaceArgs, VerifyArgs};

pub const SCHEMA: u32 = 1;

/// Coarse step of the RK4 drift-order check.
const DRIFT_ORDER_STEP: f64 = 0.1;
const DRIFT_ORDER_MIN_RATIO: f64 = 15.0;

#[derive(Debug)]
pub enum Failure {
    /// Bad flags or config: exit 2.
    Invalid(String),
    /// A check or computation failed: exit 1.
    Failed(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Failed(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Failed(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::InvalidRadius(_)
            | Error::NonFinite(_)
            | Error::ConstraintViolated { .. }
            | Error::InvalidInterval { .. }
            | Error::InvalidRational { .. }
            | Error::InconsistentRational { .. }
            | Error::InvalidRadiusSequence(_)
            | Error::OutOfDomain { .. }
            | Error::UnsupportedDomain(_)
            | Error::UnsupportedRegime { .. }
            | Error::InvalidTolerance(_)
            | Error::InvalidStep(_)
            | Error::InvalidDirectrix(_)
            | Error::CuspInitialCondition { .. } => Failure::Invalid(msg),
            _ => Failure::Failed(msg),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Failed(format!("i/o error: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn branch(b: BranchArg) -> Branch {
    match b {
        BranchArg::Plus => Branch::Plus,
        BranchArg::Minus => Branch::Minus,
    }
}

fn regime(r: RegimeArg) -> Regime {
    match r {
        RegimeArg::Supercritical => Regime::Supercritical,
        RegimeArg::Critical => Regime::Critical,
        RegimeArg::Subcritical => Regime::Subcritical,
    }
}

fn resolve_radius(p: &ParamArgs) -> Result<f64, Failure> {
    match (p.radius, p.regime) {
        (Some(r), Some(want)) => {
            let got = Regime::from_radius(r)?;
            if got != regime(want) {
                return Err(Failure::Invalid(format!("R = {r} is {got}, not {}", regime(want))));
            }
            Ok(r)
        }
        (Some(r), None) => {
            Regime::from_radius(r)?;
            Ok(r)
        }
        (None, Some(RegimeArg::Critical)) => Ok(1.0),
        (None, _) => Err(Failure::Invalid("--R is required".into())),
    }
}

fn resolve_params(p: &ParamArgs) -> Result<TractrixParams, Failure> {
    let r = resolve_radius(p)?;
    Ok(match (p.c1, p.c2) {
        (Some(c1), Some(c2)) => TractrixParams::from_constants(r, c1, c2)?,
        _ => TractrixParams::from_selector(r, p.selector.unwrap_or(0.0), branch(p.branch))?,
    })
}

fn emit(out: &Option<PathBuf>, content: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, content),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            stdout.flush()
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct CurveRow {
    t: f64,
    x: f64,
    y: f64,
    z: f64,
    speed: f64,
    kappa: f64,
    tau: f64,
}

pub fn eval_curve_cmd(a: &CurveArgs) -> Outcome {
    let p = resolve_params(&a.params)?;
    if a.samples < 2 || !(a.t_min < a.t_max) {
        return Err(Failure::Invalid("need t-min < t-max and at least 2 samples".into()));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for i in 0..a.samples {
        let t = a.t_min + (a.t_max - a.t_min) * i as f64 / (a.samples - 1) as f64;
        let c = eval_curve(&p, t)?;
        // curvature and torsion are undefined on cusps
        let (kappa, tau) = frenet(&p, t).map_or((f64::NAN, f64::NAN), |f| (f.curvature, f.torsion));
        w.serialize(CurveRow {
            t,
            x: c.f.x,
            y: c.f.y,
            z: c.f.z,
            speed: c.speed,
            kappa,
            tau,
        })
        .map_err(|e| Failure::Failed(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Failed(e.to_string()))?;
    emit(&a.out, &String::from_utf8(bytes).expect("csv is utf-8"))?;
    Ok(())
}

fn sidecar_path(obj: &Path) -> PathBuf {
    obj.with_extension("edges.json")
}

pub fn eval_surface_cmd(a: &SurfaceArgs) -> Outcome {
    let r = resolve_radius(&a.params)?;
    let reg = Regime::from_radius(r)?;
    let lambda = circular_tractrix::params::lambda_for(r);
    let (t_def, a_def) = match reg {
        Regime::Supercritical => ((-4.0, 4.0), (0.0, 2.0 * PI)),
        Regime::Critical => ((-4.0, 4.0), (-4.0, 4.0)),
        Regime::Subcritical => ((0.0, 2.0 * PI / lambda), (-3.0, 3.0)),
    };
    let t_range = (a.t_min.unwrap_or(t_def.0), a.t_max.unwrap_or(t_def.1));
    let alpha_range = (a.alpha_min.unwrap_or(a_def.0), a.alpha_max.unwrap_or(a_def.1));
    let branches: &[Branch] = if reg == Regime::Subcritical {
        &[Branch::Plus, Branch::Minus]
    } else {
        &[Branch::Plus]
    };
    let patches = branches
        .iter()
        .map(|&b| {
            SurfacePatch::new(r, b)?
                .with_t_range(t_range.0, t_range.1)?
                .with_alpha_range(alpha_range.0, alpha_range.1)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mesh = build_mesh(
        &patches,
        MeshResolution {
            t_samples: a.t_samples,
            alpha_samples: a.alpha_samples,
        },
    )?;
    let mut obj = Vec::new();
    write_obj(&mesh, &mut obj)?;
    fs::write(&a.out, obj)?;
    let sidecar = json!({
        "schema": SCHEMA,
        "command": "eval-surface",
        "radius": r,
        "regime": reg,
        "objects": mesh.objects.iter().map(|o| json!({
            "name": o.name,
            "vertices": o.vertices.len(),
            "triangles": o.triangles.len(),
        })).collect::<Vec<_>>(),
        "cuspidal_edges": mesh.cuspidal_edges,
    });
    fs::write(sidecar_path(&a.out), to_json(&sidecar))?;
    Ok(())
}

fn first_failure(checks: &[CheckReport]) -> Option<&CheckReport> {
    checks.iter().find(|c| !c.pass)
}

pub fn verify_cmd(a: &VerifyArgs) -> Outcome {
    let p = resolve_params(&a.params)?;
    if a.samples == 0 {
        return Err(Failure::Invalid("--samples must be positive".into()));
    }
    let checks = run_suite(&p, a.samples)?;
    let pass = checks.iter().all(|c| c.pass);
    let report = json!({
        "schema": SCHEMA,
        "command": "verify",
        "params": p,
        "branch": surface_for(&p)?.branch,
        "checks": checks,
        "pass": pass,
    });
    emit(&a.out, &to_json(&report))?;
    match first_failure(&checks) {
        None => Ok(()),
        Some(c) => Err(Failure::Failed(format!(
            "check {} failed: max_residual {} (tolerance {})",
            c.check, c.max_residual, c.tolerance
        ))),
    }
}

fn measure_patch(a: &MeasureArgs) -> Result<SurfacePatch, Failure> {
    let r = resolve_radius(&a.params)?;
    let b = branch(a.params.branch);
    let mut s = if Regime::from_radius(r)? == Regime::Subcritical {
        SurfacePatch::unit(r, b, a.unit)?
    } else {
        SurfacePatch::new(r, b)?
    };
    if a.t_min.is_some() || a.t_max.is_some() {
        s = s.with_t_range(a.t_min.unwrap_or(s.t_range.0), a.t_max.unwrap_or(s.t_range.1))?;
    }
    if a.alpha_min.is_some() || a.alpha_max.is_some() {
        s = s.with_alpha_range(
            a.alpha_min.unwrap_or(s.alpha_range.0),
            a.alpha_max.unwrap_or(s.alpha_range.1),
        )?;
    }
    Ok(s)
}

// JSON has no infinities; unbounded range ends are written as strings.
fn range_json(r: (f64, f64)) -> serde_json::Value {
    let end = |v: f64| {
        if v.is_finite() {
            json!(v)
        } else if v > 0.0 {
            json!("inf")
        } else {
            json!("-inf")
        }
    };
    json!([end(r.0), end(r.1)])
}

fn measure_report(command: &str, s: &SurfacePatch, tol: f64, r: &QuadratureResult, target: Option<f64>) -> (serde_json::Value, bool) {
    let pass = r.converged && target.is_none_or(|t| (r.value - t).abs() <= tol);
    let report = json!({
        "schema": SCHEMA,
        "command": command,
        "radius": s.radius,
        "regime": s.regime,
        "branch": s.branch,
        "t_range": range_json(s.t_range),
        "alpha_range": range_json(s.alpha_range),
        "tol": tol,
        "value": r.value,
        "error_estimate": r.error_estimate,
        "evaluations": r.evaluations,
        "converged": r.converged,
        "truncation": r.truncation,
        "target": target,
        "pass": pass,
    });
    (report, pass)
}

pub fn measure_cmd(a: &MeasureArgs, volume: bool) -> Outcome {
    let s = measure_patch(a)?;
    let (command, r, target) = if volume {
        ("volume", enclosed_volume(&s, a.tol)?, volume_target(&s))
    } else {
        ("area", surface_area(&s, a.tol)?, area_target(&s))
    };
    let (report, pass) = measure_report(command, &s, a.tol, &r, target);
    emit(&a.out, &to_json(&report))?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Failed(format!(
            "{command} {} misses target {:?} by more than {}",
            r.value, target, a.tol
        )))
    }
}

pub fn rear_track_cmd(a: &RearTrackArgs) -> Outcome {
    let t1 = a.t1.unwrap_or(a.t0 + 5.0);
    if let Some(path) = &a.directrix {
        let x0 = a.x0.as_ref().expect("clap enforces --x0");
        let d = PolylineDirectrix::from_csv(path)?;
        let traj = integrate(&d, Vec3::new(x0[0], x0[1], x0[2]), a.t0, t1, a.h)?;
        let report = json!({
            "schema": SCHEMA,
            "command": "rear-track",
            "directrix": path,
            "arc_length_parametrized": circular_tractrix::rear_track::Directrix::is_arc_length(&d),
            "trajectory": traj,
        });
        emit(&a.out, &to_json(&report))?;
        return Ok(());
    }
    let p = resolve_params(&a.params)?;
    let cmp = compare_with_closed_form(&p, a.t0, t1, a.h)?;
    let circle = CircleDirectrix::new(p.radius)?;
    let order = drift_order(&circle, position(&p, a.t0)?, a.t0, t1, DRIFT_ORDER_STEP)?;
    let pass = cmp.max_error <= a.max_error && order.ratio >= DRIFT_ORDER_MIN_RATIO;
    let report = json!({
        "schema": SCHEMA,
        "command": "rear-track",
        "params": p,
        "comparison": cmp,
        "drift_order": order,
        "max_error_allowed": a.max_error,
        "pass": pass,
    });
    emit(&a.out, &to_json(&report))?;
    if pass {
        Ok(())
    } else if cmp.max_error > a.max_error {
        Err(Failure::Failed(format!("rear track deviates by {} (allowed {})", cmp.max_error, a.max_error)))
    } else {
        Err(Failure::Failed(format!("drift order ratio {} below {DRIFT_ORDER_MIN_RATIO}", order.ratio)))
    }
}

fn parse_rational(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Invalid(format!("--nu expects p/q, got {s:?}"));
    let (p, q) = s.split_once('/').ok_or_else(bad)?;
    Ok((p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?))
}

pub fn petals_cmd(a: &PetalArgs) -> Outcome {
    let nu = a.nu.as_deref().map(parse_rational).transpose()?;
    let mut params = a.params.clone();
    if params.radius.is_none() {
        let Some((num, den)) = nu else {
            return Err(Failure::Invalid("petals needs --R or --nu".into()));
        };
        if num <= 0 || den <= 0 || num >= den {
            return Err(Error::InvalidRational { p: num, q: den }.into());
        }
        let v = num as f64 / den as f64;
        params.radius = Some((1.0 - v * v).sqrt());
    }
    let p = resolve_params(&params)?;
    let data = period_data(&p, nu)?;
    let nu_value = (1.0 - p.radius * p.radius).sqrt();
    let report = json!({
        "schema": SCHEMA,
        "command": "petals",
        "radius": p.radius,
        "nu": a.nu,
        "nu_value": nu_value,
        "period": data.period,
        "phi": data.rotation,
        "closed": data.closed,
        "petals": data.petals,
        "windings": data.windings,
        "suggested_rational": if nu.is_none() { suggest_rational(nu_value, 1000) } else { None },
    });
    emit(&a.out, &to_json(&report))?;
    Ok(())
}
