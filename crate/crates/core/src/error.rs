use thiserror::Error;

use crate::params::Regime;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("directrix radius must be positive and finite, got {0}")]
    InvalidRadius(f64),

    #[error("non-finite input for `{0}`")]
    NonFinite(&'static str),

    #[error("constants (c1={c1}, c2={c2}) violate the {regime} constraint (residual {residual:e})")]
    ConstraintViolated {
        regime: Regime,
        c1: f64,
        c2: f64,
        residual: f64,
    },

    #[error("denominator vanishes at t={t} (|denominator|={denominator:e})")]
    SingularEvaluation { t: f64, denominator: f64 },

    #[error("t={t} is a singular point (|xi2|={xi2:e})")]
    SingularPoint { t: f64, xi2: f64 },

    #[error("curvature vanishes at t={t}")]
    VanishingCurvature { t: f64 },

    #[error("`{op}` is not defined in the {regime} regime")]
    UnsupportedRegime { op: &'static str, regime: Regime },

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("window comes within 1e-3 of the singular parameter {t}")]
    WindowContainsSingularity { t: f64 },

    #[error("invalid rational {p}/{q}")]
    InvalidRational { p: i64, q: i64 },

    #[error("rational {p}/{q} does not match sqrt(1-R^2)={nu}")]
    InconsistentRational { p: i64, q: i64, nu: f64 },

    #[error("radius sequence must be strictly increasing and > 1 (offending value {0})")]
    InvalidRadiusSequence(f64),

    #[error("parameter ({t}, {alpha}) lies outside the patch domain")]
    OutOfDomain { t: f64, alpha: f64 },

    #[error("unsupported integration domain: {0}")]
    UnsupportedDomain(String),

    #[error("integrand is not finite at ({x}, {y})")]
    NonFiniteIntegrand { x: f64, y: f64 },

    #[error("quadrature did not converge: value {value}, error estimate {error_estimate:e} after {evaluations} evaluations")]
    NotConverged {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    #[error("tolerance {0:e} is outside the supported range")]
    InvalidTolerance(f64),

    #[error("rod length {length} at t={t} differs from 1")]
    RodLengthViolation { t: f64, length: f64 },

    #[error("initial parameter t={t} is a cusp of the closed-form solution")]
    CuspInitialCondition { t: f64 },

    #[error("invalid step size {0}")]
    InvalidStep(f64),

    #[error("invalid directrix: {0}")]
    InvalidDirectrix(String),
}
