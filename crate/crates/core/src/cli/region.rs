use nalgebra::DVector;
use serde::Serialize;

use super::config::AnalysisConfig;
use super::output::{num, render, Tabular};
use super::OutputFormat;
use crate::error::{Error, Result};
use crate::evidence::default_reference;
use crate::hypotheses::null_space;
use crate::models::{LogLikModel, ParamVector};
use crate::special_fn::ChiSquare;

pub const DEFAULT_POINTS: usize = 360;

const BISECTION_STEPS: usize = 200;
const MAX_RADIUS: f64 = 1e12;

#[derive(Debug, Clone, Serialize)]
pub struct RegionPoint {
    pub alpha: f64,
    pub index: usize,
    pub angle: f64,
    pub theta: Vec<f64>,
}

impl Tabular for RegionPoint {
    fn headers() -> Vec<&'static str> {
        vec!["alpha", "index", "angle", "theta"]
    }

    fn cells(&self) -> Vec<Option<String>> {
        vec![
            Some(num(self.alpha)),
            Some(self.index.to_string()),
            Some(num(self.angle)),
            Some(
                self.theta
                    .iter()
                    .map(|x| num(*x))
                    .collect::<Vec<_>>()
                    .join(";"),
            ),
        ]
    }
}

/// Orthonormal basis of the directions θ can move in without leaving the
/// affine hull of Θ.
fn tangent_basis(model: &dyn LogLikModel) -> Vec<DVector<f64>> {
    let k = model.ambient_dim();
    match model.implicit_constraints() {
        None => (0..k)
            .map(|i| DVector::from_fn(k, |j, _| if i == j { 1.0 } else { 0.0 }))
            .collect(),
        Some((a, _)) => null_space(&a, 1e-10),
    }
}

/// Largest r with θ̂ + r·u inside the domain and T below `level`.
fn boundary_radius(
    model: &dyn LogLikModel,
    center: &DVector<f64>,
    u: &DVector<f64>,
    level: f64,
) -> Result<f64> {
    let inside = |r: f64| -> Result<bool> {
        let theta = ParamVector::from_dvector(&(center + u * r))?;
        if !model.in_domain(&theta) {
            return Ok(false);
        }
        Ok(model.deviance_at(&theta)? < level)
    };
    let mut lo = 0.0;
    let mut hi = 1e-6;
    while inside(hi)? {
        lo = hi;
        hi *= 2.0;
        if hi > MAX_RADIUS {
            return Err(Error::NonConvergence(
                "confidence region is unbounded along a ray".into(),
            ));
        }
    }
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if inside(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Traces {θ : T_θ = F⁻¹(1 - α)} by sweeping `points` rays around θ̂.
///
/// Where a ray leaves the parameter domain before reaching the level set
/// the domain edge is reported instead.
pub fn region_boundary(
    model: &dyn LogLikModel,
    f: &ChiSquare,
    alphas: &[f64],
    points: usize,
) -> Result<Vec<RegionPoint>> {
    if model.full_dim() != 2 {
        return Err(Error::InvalidInput(format!(
            "region export needs a 2-dimensional parameter space, model has {}",
            model.full_dim()
        )));
    }
    if points == 0 {
        return Err(Error::InvalidInput("points must be positive".into()));
    }
    let basis = tangent_basis(model);
    let center = model.mle()?.to_dvector();
    let mut out = Vec::with_capacity(alphas.len() * points);
    for &alpha in alphas {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidInput(format!(
                "alpha must lie in (0, 1], got {alpha}"
            )));
        }
        let level = f.upper_quantile(alpha)?;
        for index in 0..points {
            let angle = std::f64::consts::TAU * index as f64 / points as f64;
            let u = &basis[0] * angle.cos() + &basis[1] * angle.sin();
            let r = if level > 0.0 {
                boundary_radius(model, &center, &u, level)?
            } else {
                0.0
            };
            out.push(RegionPoint {
                alpha,
                index,
                angle,
                theta: (&center + u * r).iter().copied().collect(),
            });
        }
    }
    Ok(out)
}

pub fn run_region(
    cfg: &AnalysisConfig,
    alphas: &[f64],
    points: usize,
    format: OutputFormat,
) -> Result<String> {
    let model = cfg.build_model()?;
    let f = match cfg.f_dof {
        Some(k) => ChiSquare::new(k)?,
        None => default_reference(model.as_ref())?,
    };
    render(
        &region_boundary(model.as_ref(), &f, alphas, points)?,
        format,
    )
}
