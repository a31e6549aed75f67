//! Null sets Θ₀ and the constrained maximum-likelihood fit θ̂₀.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{LogLikModel, ParamVector, Trinomial};
use crate::optimize::{brent_maximize, nelder_mead_maximize, Bracket1D};

/// Feasibility tolerance on constraint residuals.
pub const CONSTRAINT_TOL: f64 = 1e-8;
/// Tolerance handed to the 1-D and simplex optimizers.
pub const OPTIMIZER_TOL: f64 = 1e-10;

const RANK_TOL: f64 = 1e-10;

type CurveMap = Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>;

/// A continuous one-parameter family t ↦ θ(t), t ∈ [lo, hi].
#[derive(Clone)]
pub struct Curve {
    name: String,
    lo: f64,
    hi: f64,
    map: CurveMap,
}

impl Curve {
    pub fn new<F>(name: impl Into<String>, lo: f64, hi: f64, map: F) -> Result<Self>
    where
        F: Fn(f64) -> Vec<f64> + Send + Sync + 'static,
    {
        if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
            return Err(Error::InvalidInput(format!(
                "curve range [{lo}, {hi}] is empty"
            )));
        }
        Ok(Self {
            name: name.into(),
            lo,
            hi,
            map: Arc::new(map),
        })
    }

    /// θ(t) = (t², 2t(1-t), (1-t)²): the Hardy-Weinberg curve θ₃ = (1 - √θ₁)².
    pub fn hardy_weinberg() -> Self {
        Self::new("hardy_weinberg", 0.0, 1.0, hardy_weinberg_point).expect("static range")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn range(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn at(&self, t: f64) -> Vec<f64> {
        (self.map)(t)
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Curve")
            .field("name", &self.name)
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .finish_non_exhaustive()
    }
}

pub fn hardy_weinberg_point(t: f64) -> Vec<f64> {
    vec![t * t, 2.0 * t * (1.0 - t), (1.0 - t) * (1.0 - t)]
}

/// Declarative description of Θ₀.
#[derive(Debug, Clone)]
pub enum NullSet {
    Empty,
    /// Θ itself.
    Full,
    Point(ParamVector),
    /// {θ : Cθ = d}, with C of full row rank.
    Linear {
        c: DMatrix<f64>,
        d: DVector<f64>,
    },
    Curve(Curve),
    /// Axis-aligned box lo ≤ θ ≤ hi (models without implicit constraints only).
    Box {
        lo: ParamVector,
        hi: ParamVector,
    },
    Union(Vec<NullSet>),
    /// Closure of the complement of the inner set.
    Complement(Box<NullSet>),
}

impl NullSet {
    pub fn linear(rows: &[Vec<f64>], d: &[f64]) -> Result<Self> {
        let m = rows.len();
        if m == 0 || d.len() != m {
            return Err(Error::InvalidInput(format!(
                "linear null needs matching non-empty C and d, got {m} rows and {} entries",
                d.len()
            )));
        }
        let k = rows[0].len();
        if rows.iter().any(|r| r.len() != k) || k == 0 {
            return Err(Error::InvalidInput("ragged constraint matrix".into()));
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        let c = DMatrix::from_row_slice(m, k, &flat);
        if rank(&c) < m {
            return Err(Error::InvalidInput(
                "constraint matrix C must have full row rank".into(),
            ));
        }
        Ok(NullSet::Linear {
            c,
            d: DVector::from_column_slice(d),
        })
    }

    pub fn point(coords: &[f64]) -> Result<Self> {
        Ok(NullSet::Point(ParamVector::new(coords.to_vec())?))
    }

    pub fn complement(self) -> Self {
        NullSet::Complement(Box::new(self))
    }

    /// Checks shapes against the model's ambient dimension.
    pub fn validate(&self, model: &dyn LogLikModel) -> Result<()> {
        let k = model.ambient_dim();
        match self {
            NullSet::Empty | NullSet::Full => Ok(()),
            NullSet::Point(p) => {
                if p.dim() != k || !model.in_domain(p) {
                    return Err(Error::InvalidInput(format!(
                        "point {:?} is not in the parameter domain",
                        p.as_slice()
                    )));
                }
                Ok(())
            }
            NullSet::Linear { c, d } => {
                if c.ncols() != k || c.nrows() != d.len() {
                    return Err(Error::InvalidInput(format!(
                        "linear null is {}x{} but the model has {k} coordinates",
                        c.nrows(),
                        c.ncols()
                    )));
                }
                Ok(())
            }
            NullSet::Curve(curve) => {
                let got = curve.at(curve.lo).len();
                if got != k {
                    return Err(Error::InvalidInput(format!(
                        "curve `{}` maps to {got} coordinates, model has {k}",
                        curve.name
                    )));
                }
                Ok(())
            }
            NullSet::Box { lo, hi } => {
                if model.implicit_constraints().is_some() {
                    return Err(Error::Unsupported(
                        "box nulls need a model without implicit constraints".into(),
                    ));
                }
                if lo.dim() != k || hi.dim() != k {
                    return Err(Error::InvalidInput(
                        "box bounds have the wrong dimension".into(),
                    ));
                }
                if lo.as_slice().iter().zip(hi.as_slice()).any(|(a, b)| a > b) {
                    return Err(Error::InvalidInput("box has lo > hi".into()));
                }
                Ok(())
            }
            NullSet::Union(members) => {
                if members.is_empty() {
                    return Err(Error::EmptySet("union with no members".into()));
                }
                members.iter().try_for_each(|m| m.validate(model))
            }
            NullSet::Complement(inner) => inner.validate(model),
        }
    }

    /// True when the set is known to be empty.
    pub fn is_empty_set(&self) -> bool {
        match self {
            NullSet::Empty => true,
            NullSet::Union(members) => members.iter().all(NullSet::is_empty_set),
            NullSet::Complement(inner) => matches!(**inner, NullSet::Full),
            _ => false,
        }
    }

    /// True when the set is all of Θ.
    pub fn is_full(&self) -> bool {
        match self {
            NullSet::Full => true,
            NullSet::Union(members) => members.iter().any(NullSet::is_full),
            NullSet::Complement(inner) => inner.is_empty_set(),
            _ => false,
        }
    }
}

fn rank(m: &DMatrix<f64>) -> usize {
    if m.nrows() == 0 {
        return 0;
    }
    m.clone().svd(false, false).rank(RANK_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitMethod {
    ClosedForm,
    Parametrized1d,
    PenaltyNm,
}

/// Result of maximizing ℓ over (the closure of) Θ₀.
#[derive(Debug, Clone)]
pub struct ConstrainedFit {
    pub theta0_hat: ParamVector,
    pub loglik0: f64,
    /// T_Θ₀ = 2(ℓ(θ̂) - ℓ(θ̂₀)).
    pub deviance: f64,
    pub converged: bool,
    pub method: FitMethod,
}

impl ConstrainedFit {
    fn at(
        model: &dyn LogLikModel,
        theta: ParamVector,
        converged: bool,
        method: FitMethod,
    ) -> Result<Self> {
        let loglik0 = model.loglik(&theta)?;
        let deviance = model.deviance_at(&theta)?;
        Ok(Self {
            theta0_hat: theta,
            loglik0,
            deviance,
            converged,
            method,
        })
    }
}

fn safe_loglik(model: &dyn LogLikModel, coords: Vec<f64>) -> f64 {
    match ParamVector::new(coords) {
        Ok(p) if model.in_domain(&p) => model.loglik(&p).unwrap_or(f64::NEG_INFINITY),
        _ => f64::NEG_INFINITY,
    }
}

/// θ̂₀ = argsup over the closure of Θ₀ of ℓ.
pub fn constrained_mle(model: &dyn LogLikModel, null: &NullSet) -> Result<ConstrainedFit> {
    null.validate(model)?;
    fit(model, null)
}

fn fit(model: &dyn LogLikModel, null: &NullSet) -> Result<ConstrainedFit> {
    match null {
        NullSet::Empty => Err(Error::EmptySet(
            "Θ₀ = ∅ has no constrained maximizer".into(),
        )),
        NullSet::Full => ConstrainedFit::at(model, model.mle()?, true, FitMethod::ClosedForm),
        NullSet::Point(p) => ConstrainedFit::at(model, p.clone(), true, FitMethod::ClosedForm),
        NullSet::Linear { c, d } => fit_linear(model, c, d),
        NullSet::Curve(curve) => fit_curve(model, curve),
        NullSet::Box { lo, hi } => fit_box(model, lo.as_slice(), hi.as_slice()),
        NullSet::Union(members) => fit_union(model, members),
        NullSet::Complement(inner) => fit_complement(model, inner),
    }
}

fn fit_union(model: &dyn LogLikModel, members: &[NullSet]) -> Result<ConstrainedFit> {
    let mut best: Option<ConstrainedFit> = None;
    for m in members.iter().filter(|m| !m.is_empty_set()) {
        let f = fit(model, m)?;
        // strict comparison: earliest member wins ties
        if best.as_ref().is_none_or(|b| f.loglik0 > b.loglik0) {
            best = Some(f);
        }
    }
    best.ok_or_else(|| Error::EmptySet("every union member is empty".into()))
}

fn fit_linear(
    model: &dyn LogLikModel,
    c: &DMatrix<f64>,
    d: &DVector<f64>,
) -> Result<ConstrainedFit> {
    let theta_hat = model.mle()?.to_dvector();
    if let (Some(g), None) = (model.information(), model.implicit_constraints()) {
        // minimize (θ-θ̂)ᵀG(θ-θ̂) subject to Cθ = d
        let g_inv = g
            .try_inverse()
            .ok_or_else(|| Error::Singular("information matrix".into()))?;
        let s = c * &g_inv * c.transpose();
        let s_inv = s
            .try_inverse()
            .ok_or_else(|| Error::Singular("C G⁻¹ Cᵀ".into()))?;
        let resid = c * &theta_hat - d;
        let theta0 = &theta_hat - &g_inv * c.transpose() * s_inv * resid;
        return ConstrainedFit::at(
            model,
            ParamVector::from_dvector(&theta0)?,
            true,
            FitMethod::ClosedForm,
        );
    }

    // Stack implicit model constraints with the null's rows and search the
    // affine solution set θ = θp + N z.
    let (a, b) = match model.implicit_constraints() {
        Some((ai, bi)) => {
            let mut a = DMatrix::zeros(ai.nrows() + c.nrows(), c.ncols());
            a.rows_mut(0, ai.nrows()).copy_from(&ai);
            a.rows_mut(ai.nrows(), c.nrows()).copy_from(c);
            let mut b = DVector::zeros(bi.len() + d.len());
            b.rows_mut(0, bi.len()).copy_from(&bi);
            b.rows_mut(bi.len(), d.len()).copy_from(d);
            (a, b)
        }
        None => (c.clone(), d.clone()),
    };
    let k = a.ncols();
    let svd = a.clone().svd(true, true);
    let theta_p = svd
        .solve(&b, RANK_TOL)
        .map_err(|e| Error::Singular(format!("constraint system: {e}")))?;
    if (&a * &theta_p - &b).amax() > CONSTRAINT_TOL {
        return Err(Error::EmptySet(
            "linear constraints are inconsistent".into(),
        ));
    }
    let null_cols = null_space(&a, RANK_TOL);
    if null_cols.is_empty() {
        return ConstrainedFit::at(
            model,
            ParamVector::from_dvector(&theta_p)?,
            true,
            FitMethod::ClosedForm,
        );
    }
    let n_mat = DMatrix::from_columns(&null_cols);
    let lift = |z: &[f64]| -> Vec<f64> {
        let zv = DVector::from_column_slice(z);
        (&theta_p + &n_mat * zv).iter().copied().collect()
    };

    let center: Vec<f64> = vec![1.0 / k as f64; k];
    let candidates = [
        theta_hat.clone(),
        DVector::from_vec(center),
        theta_p.clone(),
    ];
    let start = candidates
        .iter()
        .map(|t| n_mat.transpose() * (t - &theta_p))
        .find(|z| safe_loglik(model, lift(z.as_slice())).is_finite())
        .ok_or_else(|| {
            Error::NonConvergence("no feasible starting point inside the domain".into())
        })?;

    let res = nelder_mead_maximize(
        |z| safe_loglik(model, lift(z)),
        start.as_slice(),
        OPTIMIZER_TOL * 1e-3,
    );
    let theta0 = ParamVector::new(lift(&res.point))?;
    ConstrainedFit::at(model, theta0, res.converged, FitMethod::PenaltyNm)
}

pub(crate) fn null_space(a: &DMatrix<f64>, tol: f64) -> Vec<DVector<f64>> {
    // AᵀA is k x k and shares its null space with A
    let ata = a.transpose() * a;
    let eig = ata.symmetric_eigen();
    let scale = eig.eigenvalues.amax().max(1.0);
    (0..eig.eigenvalues.len())
        .filter(|&i| eig.eigenvalues[i].abs() <= tol * scale)
        .map(|i| eig.eigenvectors.column(i).into_owned())
        .collect()
}

fn fit_curve(model: &dyn LogLikModel, curve: &Curve) -> Result<ConstrainedFit> {
    let bracket = Bracket1D::new(curve.lo, curve.hi, OPTIMIZER_TOL)?;
    let (t, _) = brent_maximize(|t| safe_loglik(model, curve.at(t)), bracket)?;
    let theta = ParamVector::new(curve.at(t))?;
    ConstrainedFit::at(model, theta, true, FitMethod::Parametrized1d)
}

fn clamp_to(z: &[f64], lo: &[f64], hi: &[f64]) -> Vec<f64> {
    z.iter()
        .zip(lo.iter().zip(hi))
        .map(|(v, (l, h))| v.clamp(*l, *h))
        .collect()
}

fn fit_box(model: &dyn LogLikModel, lo: &[f64], hi: &[f64]) -> Result<ConstrainedFit> {
    let mle = model.mle()?;
    let inside = mle
        .as_slice()
        .iter()
        .zip(lo.iter().zip(hi))
        .all(|(v, (l, h))| *l <= *v && *v <= *h);
    if inside {
        return ConstrainedFit::at(model, mle, true, FitMethod::ClosedForm);
    }
    let start = clamp_to(mle.as_slice(), lo, hi);
    let res = nelder_mead_maximize(
        |z| safe_loglik(model, clamp_to(z, lo, hi)),
        &start,
        OPTIMIZER_TOL * 1e-3,
    );
    let theta = ParamVector::new(clamp_to(&res.point, lo, hi))?;
    ConstrainedFit::at(model, theta, res.converged, FitMethod::PenaltyNm)
}

/// Whether θ lies in the interior of `null`. Lower-dimensional sets have
/// empty interior.
fn interior_contains(null: &NullSet, theta: &[f64]) -> Result<bool> {
    Ok(match null {
        NullSet::Empty | NullSet::Point(_) | NullSet::Linear { .. } | NullSet::Curve(_) => false,
        NullSet::Full => true,
        NullSet::Box { lo, hi } => theta
            .iter()
            .zip(lo.as_slice().iter().zip(hi.as_slice()))
            .all(|(v, (l, h))| *l < *v && *v < *h),
        NullSet::Union(members) => {
            let mut any = false;
            for m in members {
                any |= interior_contains(m, theta)?;
            }
            any
        }
        NullSet::Complement(inner) => !closure_contains(inner, theta)?,
    })
}

fn closure_contains(null: &NullSet, theta: &[f64]) -> Result<bool> {
    Ok(match null {
        NullSet::Empty => false,
        NullSet::Full => true,
        NullSet::Point(p) => p
            .as_slice()
            .iter()
            .zip(theta)
            .all(|(a, b)| (a - b).abs() <= CONSTRAINT_TOL),
        NullSet::Linear { c, d } => {
            (c * DVector::from_column_slice(theta) - d).amax() <= CONSTRAINT_TOL
        }
        NullSet::Box { lo, hi } => theta
            .iter()
            .zip(lo.as_slice().iter().zip(hi.as_slice()))
            .all(|(v, (l, h))| *l <= *v && *v <= *h),
        NullSet::Union(members) => {
            let mut any = false;
            for m in members {
                any |= closure_contains(m, theta)?;
            }
            any
        }
        NullSet::Curve(_) | NullSet::Complement(_) => {
            return Err(Error::Unsupported(
                "closure membership for curves and nested complements".into(),
            ))
        }
    })
}

fn fit_complement(model: &dyn LogLikModel, inner: &NullSet) -> Result<ConstrainedFit> {
    if inner.is_full() {
        return Err(Error::EmptySet("complement of Θ is empty".into()));
    }
    if let NullSet::Complement(x) = inner {
        return fit(model, x);
    }
    let mle = model.mle()?;
    if !interior_contains(inner, mle.as_slice())? {
        return ConstrainedFit::at(model, mle, true, FitMethod::ClosedForm);
    }
    // θ̂ sits inside the inner set: the sup over the complement closure is
    // attained on the inner set's boundary.
    match inner {
        NullSet::Box { lo, hi } => fit_box_boundary(model, lo.as_slice(), hi.as_slice()),
        _ => Err(Error::Unsupported(
            "complement of a full-dimensional set other than a box".into(),
        )),
    }
}

fn fit_box_boundary(model: &dyn LogLikModel, lo: &[f64], hi: &[f64]) -> Result<ConstrainedFit> {
    let mut best: Option<ConstrainedFit> = None;
    for axis in 0..lo.len() {
        for bound in [lo[axis], hi[axis]] {
            let mut flo = lo.to_vec();
            let mut fhi = hi.to_vec();
            flo[axis] = bound;
            fhi[axis] = bound;
            let f = fit_box(model, &flo, &fhi)?;
            if best.as_ref().is_none_or(|b| f.loglik0 > b.loglik0) {
                best = Some(f);
            }
        }
    }
    best.ok_or_else(|| Error::EmptySet("zero-dimensional box".into()))
}

/// Closed-form Hardy-Weinberg fit: t̂ = (2x₁ + x₂) / (2n).
pub fn hw_constrained_mle_closed_form(counts: &Trinomial) -> Result<ConstrainedFit> {
    let [x1, x2, _] = counts.counts();
    let t = (2 * x1 + x2) as f64 / (2 * counts.n()) as f64;
    let theta = ParamVector::new(hardy_weinberg_point(t))?;
    ConstrainedFit::at(counts, theta, true, FitMethod::ClosedForm)
}

/// r = dim Θ - dim Θ₀.
pub fn codimension(null: &NullSet, full_dim: usize) -> Result<usize> {
    match null {
        NullSet::Empty => Err(Error::UndefinedCodimension("empty set".into())),
        NullSet::Full | NullSet::Box { .. } => Ok(0),
        NullSet::Point(_) => Ok(full_dim),
        NullSet::Linear { c, .. } => Ok(rank(c)),
        NullSet::Curve(_) => full_dim
            .checked_sub(1)
            .ok_or_else(|| Error::UndefinedCodimension("curve in a 0-dimensional space".into())),
        NullSet::Union(members) => {
            let dims: Vec<usize> = members
                .iter()
                .filter(|m| !m.is_empty_set())
                .map(|m| codimension(m, full_dim))
                .collect::<Result<_>>()?;
            match dims.split_first() {
                Some((first, rest)) if rest.iter().all(|r| r == first) => Ok(*first),
                Some(_) => Err(Error::UndefinedCodimension(
                    "union members differ in dimension; supply an explicit codimension".into(),
                )),
                None => Err(Error::UndefinedCodimension("empty union".into())),
            }
        }
        NullSet::Complement(inner) => {
            if inner.is_full() {
                Err(Error::UndefinedCodimension(
                    "complement of Θ is empty".into(),
                ))
            } else {
                Ok(0)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::MvnIdentityMean;
    use crate::optimize::grid_oracle_maximize;
    use approx::assert_abs_diff_eq;

    fn mvn() -> MvnIdentityMean {
        MvnIdentityMean::new(100, ParamVector::new(vec![0.14, -0.16]).unwrap()).unwrap()
    }

    #[test]
    fn hw_curve_fit_matches_closed_form() {
        let t = Trinomial::new(5, 10, 5).unwrap();
        let fit = constrained_mle(&t, &NullSet::Curve(Curve::hardy_weinberg())).unwrap();
        assert!(
            fit.theta0_hat
                .max_abs_diff(&ParamVector::new(vec![0.25, 0.5, 0.25]).unwrap())
                < 1e-8
        );
        assert_eq!(fit.method, FitMethod::Parametrized1d);
    }

    #[test]
    fn hw_closed_form_examples() {
        let f = hw_constrained_mle_closed_form(&Trinomial::new(5, 15, 0).unwrap()).unwrap();
        assert_eq!(f.theta0_hat.as_slice(), &[0.390625, 0.46875, 0.140625]);
        let f = hw_constrained_mle_closed_form(&Trinomial::new(0, 0, 20).unwrap()).unwrap();
        assert_eq!(f.theta0_hat.as_slice(), &[0.0, 0.0, 1.0]);
        assert_eq!(f.deviance, 0.0);
    }

    #[test]
    fn hw_grid_oracle_agrees() {
        let t = Trinomial::new(1, 7, 12).unwrap();
        let (tg, _) = grid_oracle_maximize(
            |s| {
                t.loglik(&ParamVector::new(hardy_weinberg_point(s)).unwrap())
                    .unwrap()
            },
            0.0,
            1.0,
            100_000,
        );
        assert_abs_diff_eq!(tg, 0.225, epsilon = 1e-5);
    }

    #[test]
    fn mvn_linear_projection() {
        let m = mvn();
        let null = NullSet::linear(&[vec![1.0, -1.0]], &[0.0]).unwrap();
        let fit = constrained_mle(&m, &null).unwrap();
        assert_abs_diff_eq!(fit.theta0_hat[0], -0.01, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.theta0_hat[1], -0.01, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.deviance, 4.5, epsilon = 1e-12);
    }

    #[test]
    fn point_fit_is_the_point() {
        let m = mvn();
        let fit = constrained_mle(&m, &NullSet::point(&[0.0, 0.0]).unwrap()).unwrap();
        assert_eq!(fit.theta0_hat.as_slice(), &[0.0, 0.0]);
        assert_eq!(fit.loglik0, m.loglik(&fit.theta0_hat).unwrap());
    }

    #[test]
    fn trinomial_linear_null_uses_subspace_search() {
        // θ1 = θ3 on the simplex; closed form θ1 = θ3 = (x1+x3)/(2n)
        let t = Trinomial::new(3, 10, 7).unwrap();
        let null = NullSet::linear(&[vec![1.0, 0.0, -1.0]], &[0.0]).unwrap();
        let fit = constrained_mle(&t, &null).unwrap();
        assert_eq!(fit.method, FitMethod::PenaltyNm);
        assert_abs_diff_eq!(fit.theta0_hat[0], 0.25, epsilon = 1e-6);
        assert_abs_diff_eq!(fit.theta0_hat[1], 0.5, epsilon = 1e-6);
        assert_abs_diff_eq!(fit.theta0_hat[2], 0.25, epsilon = 1e-6);
        assert_abs_diff_eq!(
            fit.theta0_hat.as_slice().iter().sum::<f64>(),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn union_and_degenerate_cases() {
        let m = mvn();
        let u = NullSet::Union(vec![
            NullSet::point(&[0.0, 0.0]).unwrap(),
            NullSet::linear(&[vec![1.0, -1.0]], &[0.0]).unwrap(),
        ]);
        let fit = constrained_mle(&m, &u).unwrap();
        assert_abs_diff_eq!(fit.deviance, 4.5, epsilon = 1e-12);
        assert!(matches!(
            constrained_mle(&m, &NullSet::Union(vec![])),
            Err(Error::EmptySet(_))
        ));
        assert!(matches!(
            constrained_mle(&m, &NullSet::Empty),
            Err(Error::EmptySet(_))
        ));
        assert!(NullSet::linear(&[vec![1.0, 1.0], vec![2.0, 2.0]], &[0.0, 0.0]).is_err());
    }

    #[test]
    fn complement_of_sharp_null_is_mle() {
        let m = mvn();
        let c = NullSet::point(&[0.0, 0.0]).unwrap().complement();
        let fit = constrained_mle(&m, &c).unwrap();
        assert_eq!(fit.deviance, 0.0);
    }

    #[test]
    fn complement_of_box_around_mle() {
        let m = mvn();
        let bx = NullSet::Box {
            lo: ParamVector::new(vec![0.0, -0.2]).unwrap(),
            hi: ParamVector::new(vec![0.2, 0.0]).unwrap(),
        };
        let fit = constrained_mle(&m, &bx.complement()).unwrap();
        // nearest face is θ2 = -0.2 at distance 0.04
        assert_abs_diff_eq!(fit.deviance, 100.0 * 0.04f64.powi(2), epsilon = 1e-9);
    }

    #[test]
    fn codimensions() {
        let c = NullSet::linear(&[vec![1.0, -1.0]], &[0.0]).unwrap();
        assert_eq!(
            codimension(&NullSet::point(&[0.0, 0.0]).unwrap(), 2).unwrap(),
            2
        );
        assert_eq!(codimension(&c, 2).unwrap(), 1);
        assert_eq!(
            codimension(&NullSet::Curve(Curve::hardy_weinberg()), 2).unwrap(),
            1
        );
        let mixed = NullSet::Union(vec![NullSet::point(&[0.0, 0.0]).unwrap(), c]);
        assert!(matches!(
            codimension(&mixed, 2),
            Err(Error::UndefinedCodimension(_))
        ));
    }
}
