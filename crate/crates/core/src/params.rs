//! Directrix radius, regime and the one-parameter family of constants.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::Scalar;

/// Constraint residual accepted after construction, relative to `1 + c1² + c2²`.
pub const CONSTRAINT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `R > 1`
    Supercritical,
    /// `R = 1` exactly
    Critical,
    /// `0 < R < 1`
    Subcritical,
}

impl Regime {
    pub fn from_radius(radius: f64) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::InvalidRadius(radius));
        }
        Ok(if radius > 1.0 {
            Regime::Supercritical
        } else if radius == 1.0 {
            Regime::Critical
        } else {
            Regime::Subcritical
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::Supercritical => "supercritical",
            Regime::Critical => "critical",
            Regime::Subcritical => "subcritical",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sign of `c1 = ±cosh(selector)` in the subcritical regime. The two signs
/// give the two connected components of a subcritical pseudosphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// `λ` for a given radius: `√|R²−1| / R` (zero at `R = 1`).
pub fn lambda_for(radius: f64) -> f64 {
    (radius * radius - 1.0).abs().sqrt() / radius
}

/// Constants of the family as functions of the selector `α`, generic so the
/// pseudosphere can differentiate through them.
pub(crate) fn constants_for<S: Scalar>(regime: Regime, branch: Branch, selector: S) -> (S, S) {
    match regime {
        Regime::Supercritical => (selector.cos(), selector.sin()),
        Regime::Critical => (selector * selector + 1.0, selector * 2.0),
        Regime::Subcritical => (selector.cosh() * branch.sign(), selector.sinh()),
    }
}

fn constraint_residual(regime: Regime, c1: f64, c2: f64) -> f64 {
    let raw = match regime {
        Regime::Supercritical => c1 * c1 + c2 * c2 - 1.0,
        Regime::Critical => 4.0 * (c1 - 1.0) - c2 * c2,
        Regime::Subcritical => c1 * c1 - c2 * c2 - 1.0,
    };
    raw.abs() / (1.0 + c1 * c1 + c2 * c2)
}

/// Parameters of one circular tractrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TractrixParams {
    pub radius: f64,
    pub c1: f64,
    pub c2: f64,
    pub lambda: f64,
    pub regime: Regime,
}

impl TractrixParams {
    /// Builds parameters from a point on the constraint curve:
    /// `(cos s, sin s)` for `R > 1`, `(1 + s², 2s)` for `R = 1` and
    /// `(±cosh s, sinh s)` for `R < 1`. The branch is ignored unless `R < 1`.
    pub fn from_selector(radius: f64, selector: f64, branch: Branch) -> Result<Self> {
        let regime = Regime::from_radius(radius)?;
        if !selector.is_finite() {
            return Err(Error::NonFinite("selector"));
        }
        let (c1, c2) = constants_for(regime, branch, selector);
        Ok(Self {
            radius,
            c1,
            c2,
            lambda: lambda_for(radius),
            regime,
        })
    }

    /// Builds parameters from explicit constants, checking the regime constraint.
    pub fn from_constants(radius: f64, c1: f64, c2: f64) -> Result<Self> {
        let regime = Regime::from_radius(radius)?;
        if !c1.is_finite() {
            return Err(Error::NonFinite("c1"));
        }
        if !c2.is_finite() {
            return Err(Error::NonFinite("c2"));
        }
        let residual = constraint_residual(regime, c1, c2);
        if residual > CONSTRAINT_TOL {
            return Err(Error::ConstraintViolated {
                regime,
                c1,
                c2,
                residual,
            });
        }
        Ok(Self {
            radius,
            c1,
            c2,
            lambda: lambda_for(radius),
            regime,
        })
    }

    pub fn constraint_residual(&self) -> f64 {
        constraint_residual(self.regime, self.c1, self.c2)
    }
}

/// Shorthand for [`TractrixParams::from_selector`].
pub fn make_params(radius: f64, selector: f64, branch: Branch) -> Result<TractrixParams> {
    TractrixParams::from_selector(radius, selector, branch)
}
