//! s-values, likelihood-ratio and Wald p-values, the p ↔ s duality and
//! belief pairs.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypotheses::{codimension, constrained_mle, ConstrainedFit, NullSet};
use crate::models::{LogLikModel, ParamVector, Trinomial};
use crate::special_fn::{ln_gamma, ChiSquare};

/// Largest enumerable trinomial sample size for the exact conservative p-value.
pub const MAX_ENUMERATION_N: u64 = 200;

/// ⟨Φ(A), Φ(Aᶜ)⟩, the degree of belief in a set and in its complement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportPair {
    pub support: f64,
    pub co_support: f64,
}

impl SupportPair {
    pub fn new(support: f64, co_support: f64) -> Result<Self> {
        for v in [support, co_support] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!(
                    "support value {v} is outside [0, 1]"
                )));
            }
        }
        Ok(Self {
            support,
            co_support,
        })
    }
}

/// Everything computed for one null hypothesis.
#[derive(Debug, Clone)]
pub struct EvidenceReport {
    pub s_value: f64,
    /// T_Θ₀; +inf for the empty set.
    pub deviance: f64,
    /// θ̂₀; absent for the empty set.
    pub theta0_hat: Option<ParamVector>,
    pub p_value_lr: Option<f64>,
    pub p_value_wald: Option<f64>,
    pub belief_pair: SupportPair,
    /// k = dim Θ.
    pub dof_full: usize,
    /// r = dim Θ - dim Θ₀, when defined.
    pub dof_null_codim: Option<usize>,
    pub p_value_conservative: Option<f64>,
    /// s-value cutoff matching the configured p-value level.
    pub alpha_corrected: Option<f64>,
}

/// Flat serialized form with fixed field names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub s_value: f64,
    pub deviance: Option<f64>,
    pub p_lr: Option<f64>,
    pub p_wald: Option<f64>,
    pub s_complement: f64,
    pub theta0_hat: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_conservative: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_corrected: Option<f64>,
}

impl EvidenceReport {
    pub fn record(&self) -> ReportRecord {
        ReportRecord {
            s_value: self.s_value,
            deviance: self.deviance.is_finite().then_some(self.deviance),
            p_lr: self.p_value_lr,
            p_wald: self.p_value_wald,
            s_complement: self.belief_pair.co_support,
            theta0_hat: self.theta0_hat.clone().map(Vec::from),
            p_conservative: self.p_value_conservative,
            alpha_corrected: self.alpha_corrected,
        }
    }
}

/// Reference distribution F used for the confidence regions: χ² with
/// k = dim Θ degrees of freedom.
pub fn default_reference(model: &dyn LogLikModel) -> Result<ChiSquare> {
    ChiSquare::new(model.full_dim() as u32)
}

/// s-value together with the deviance and fit it came from.
#[derive(Debug, Clone)]
pub struct SValue {
    pub s: f64,
    pub deviance: f64,
    pub fit: Option<ConstrainedFit>,
}

fn s_from_deviance(deviance: f64, f: &ChiSquare) -> Result<f64> {
    if deviance == f64::INFINITY {
        return Ok(0.0);
    }
    f.sf(deviance)
}

/// s(Θ₀) = 1 - F(T_Θ₀).
pub fn s_value(model: &dyn LogLikModel, null: &NullSet, f: &ChiSquare) -> Result<SValue> {
    null.validate(model)?;
    if null.is_empty_set() {
        return Ok(SValue {
            s: 0.0,
            deviance: f64::INFINITY,
            fit: None,
        });
    }
    let fit = constrained_mle(model, null)?;
    if !fit.converged {
        return Err(Error::NonConvergence(format!(
            "constrained fit stopped at {:?} (ℓ = {}) without meeting tolerance",
            fit.theta0_hat.as_slice(),
            fit.loglik0
        )));
    }
    Ok(SValue {
        s: s_from_deviance(fit.deviance, f)?,
        deviance: fit.deviance,
        fit: Some(fit),
    })
}

/// Per-analysis knobs for [`evaluate`].
#[derive(Debug, Clone, Copy, Default)]
pub struct AnalysisOptions {
    /// Overrides the default χ²_k reference F.
    pub reference: Option<ChiSquare>,
    /// Overrides the codimension r used for F_H0.
    pub codimension: Option<usize>,
    /// p-value level to translate into an s-value threshold.
    pub alpha: Option<f64>,
}

/// Full report for one null: s-value, LR and Wald p-values and belief pair.
pub fn evaluate(
    model: &dyn LogLikModel,
    null: &NullSet,
    opts: &AnalysisOptions,
) -> Result<EvidenceReport> {
    let f = match opts.reference {
        Some(f) => f,
        None => default_reference(model)?,
    };
    let sv = s_value(model, null, &f)?;
    let s_comp = s_value(model, &null.clone().complement(), &f)?.s;
    let belief_pair = SupportPair::new(sv.s, s_comp)?;

    let codim = match opts.codimension {
        Some(r) => Some(r),
        None if null.is_empty_set() => None,
        None => match codimension(null, model.full_dim()) {
            Ok(r) => Some(r),
            Err(Error::UndefinedCodimension(_)) => None,
            Err(e) => return Err(e),
        },
    };
    let f_h0 = codim
        .filter(|&r| r >= 1)
        .map(|r| ChiSquare::new(r as u32))
        .transpose()?;
    let p_value_lr = match (&f_h0, sv.fit.as_ref()) {
        (Some(fh), Some(_)) => Some(s_from_deviance(sv.deviance, fh)?),
        _ => None,
    };
    let p_value_wald = wald_for(model, null)?
        .map(|(w, rank)| ChiSquare::new(rank as u32)?.sf(w))
        .transpose()?;
    let alpha_corrected = match (opts.alpha, &f_h0) {
        (Some(a), Some(fh)) => Some(corrected_threshold(a, &f, fh)?),
        _ => None,
    };

    Ok(EvidenceReport {
        s_value: sv.s,
        deviance: sv.deviance,
        theta0_hat: sv.fit.map(|fit| fit.theta0_hat),
        p_value_lr,
        p_value_wald,
        belief_pair,
        dof_full: model.full_dim(),
        dof_null_codim: codim,
        p_value_conservative: None,
        alpha_corrected,
    })
}

/// Wald statistic and rank(C) for point/linear nulls on models that expose
/// an exact information matrix.
fn wald_for(model: &dyn LogLikModel, null: &NullSet) -> Result<Option<(f64, usize)>> {
    if model.implicit_constraints().is_some() {
        return Ok(None);
    }
    let Some(info) = model.information() else {
        return Ok(None);
    };
    let k = model.ambient_dim();
    let (c, d) = match null {
        NullSet::Point(p) => (DMatrix::identity(k, k), p.to_dvector()),
        NullSet::Linear { c, d } => (c.clone(), d.clone()),
        _ => return Ok(None),
    };
    let cov = info
        .try_inverse()
        .ok_or_else(|| Error::Singular("information matrix".into()))?;
    let w = wald_statistic(&model.mle()?, &c, &d, &cov)?;
    Ok(Some((w, c.nrows())))
}

/// Closed-form path: `s_value` plus the rest of the report, with F given.
pub fn s_value_closed_form(
    model: &dyn LogLikModel,
    null: &NullSet,
    f: &ChiSquare,
) -> Result<EvidenceReport> {
    evaluate(
        model,
        null,
        &AnalysisOptions {
            reference: Some(*f),
            ..Default::default()
        },
    )
}

/// sup{α ∈ (0,1) : Λ_α ∩ Θ₀ ≠ ∅} by bisection on α, with Λ_α ∩ Θ₀
/// non-empty iff min over Θ₀ of T_θ ≤ F⁻¹(1 - α).
pub fn s_value_region_based(
    model: &dyn LogLikModel,
    null: &NullSet,
    f: &ChiSquare,
    alpha_tol: f64,
) -> Result<f64> {
    if !(alpha_tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "alpha tolerance must be positive, got {alpha_tol}"
        )));
    }
    null.validate(model)?;
    if null.is_empty_set() {
        return Ok(0.0);
    }
    let fit = constrained_mle(model, null)?;
    if !fit.converged {
        return Err(Error::NonConvergence(
            "constrained fit for region test".into(),
        ));
    }
    let min_dev = fit.deviance;
    let meets = |alpha: f64| -> Result<bool> { Ok(min_dev <= f.upper_quantile(alpha)?) };
    if meets(1.0)? {
        return Ok(1.0);
    }
    // meets(α) holds as α → 0 whenever Θ₀ is non-empty and T is finite
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    if !min_dev.is_finite() {
        return Ok(0.0);
    }
    while hi - lo > alpha_tol {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if meets(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// p = 1 - F_H0(T_Θ₀) with F_H0 = χ²_r.
pub fn p_value_lr(model: &dyn LogLikModel, null: &NullSet, r: usize) -> Result<f64> {
    if r == 0 {
        return Err(Error::UndefinedCodimension(
            "likelihood-ratio p-value needs r >= 1".into(),
        ));
    }
    let fit = constrained_mle(model, null)?;
    s_from_deviance(fit.deviance, &ChiSquare::new(r as u32)?)
}

/// p-value of an observed likelihood-ratio statistic against χ²_r.
pub fn p_value_from_statistic(t: f64, r: usize) -> Result<f64> {
    if r == 0 {
        return Err(Error::UndefinedCodimension("p-value needs r >= 1".into()));
    }
    s_from_deviance(t, &ChiSquare::new(r as u32)?)
}

/// W = (Cθ̂ - d)ᵀ [C A Cᵀ]⁻¹ (Cθ̂ - d).
pub fn wald_statistic(
    theta_hat: &ParamVector,
    c: &DMatrix<f64>,
    d: &DVector<f64>,
    a: &DMatrix<f64>,
) -> Result<f64> {
    let k = theta_hat.dim();
    if c.ncols() != k || a.shape() != (k, k) || d.len() != c.nrows() {
        return Err(Error::InvalidInput(
            "Wald statistic dimensions do not agree".into(),
        ));
    }
    let resid = c * theta_hat.to_dvector() - d;
    let m = c * a * c.transpose();
    let chol = m
        .cholesky()
        .ok_or_else(|| Error::Singular("C A Cᵀ is not positive definite".into()))?;
    let w = resid.dot(&chol.solve(&resid));
    Ok(w.max(0.0))
}

fn ln_multinomial_pmf(outcome: [u64; 3], theta: &[f64], ln_n_fact: f64) -> f64 {
    let mut acc = ln_n_fact;
    for (&o, &t) in outcome.iter().zip(theta) {
        if o == 0 {
            continue;
        }
        if t <= 0.0 {
            return f64::NEG_INFINITY;
        }
        acc += o as f64 * t.ln() - ln_gamma(o as f64 + 1.0);
    }
    acc
}

fn null_grid(null: &NullSet, grid_points: usize) -> Result<Vec<Vec<f64>>> {
    match null {
        NullSet::Point(p) => Ok(vec![p.as_slice().to_vec()]),
        NullSet::Curve(curve) => {
            let (lo, hi) = curve.range();
            let n = grid_points.max(2);
            Ok((0..n)
                .map(|i| {
                    let t = if i == n - 1 {
                        hi
                    } else {
                        lo + (hi - lo) * i as f64 / (n - 1) as f64
                    };
                    curve.at(t)
                })
                .collect())
        }
        NullSet::Union(members) => {
            let mut out = Vec::new();
            for m in members {
                out.extend(null_grid(m, grid_points)?);
            }
            Ok(out)
        }
        _ => Err(Error::Unsupported(
            "exact conservative p-value needs a point, curve or union of those".into(),
        )),
    }
}

/// sup over θ ∈ Θ₀ of P_θ(T_Θ₀ > t_obs), by enumerating every trinomial
/// outcome with the observed n and scanning Θ₀ on a grid.
pub fn p_value_conservative_exact(
    counts: &Trinomial,
    null: &NullSet,
    t_obs: f64,
    grid_points: usize,
) -> Result<f64> {
    if t_obs.is_nan() {
        return Err(Error::InvalidInput("observed statistic is NaN".into()));
    }
    let n = counts.n();
    if n > MAX_ENUMERATION_N {
        return Err(Error::Unsupported(format!(
            "n = {n} is too large to enumerate exactly (limit {MAX_ENUMERATION_N}); use Monte Carlo"
        )));
    }
    if t_obs == f64::INFINITY {
        return Ok(0.0);
    }
    null.validate(counts)?;
    let grid = null_grid(null, grid_points)?;

    let cutoff = t_obs + 1e-9 * t_obs.abs().max(1.0);
    let mut extreme: Vec<[u64; 3]> = Vec::new();
    for a in 0..=n {
        for b in 0..=(n - a) {
            let outcome = [a, b, n - a - b];
            let model = Trinomial::new(outcome[0], outcome[1], outcome[2])?;
            let fit = constrained_mle(&model, null)?;
            if fit.deviance > cutoff {
                extreme.push(outcome);
            }
        }
    }

    let ln_n_fact = ln_gamma(n as f64 + 1.0);
    let mut best: f64 = 0.0;
    for theta in &grid {
        let tail: f64 = extreme
            .iter()
            .map(|&o| ln_multinomial_pmf(o, theta, ln_n_fact).exp())
            .sum();
        best = best.max(tail);
    }
    Ok(best.min(1.0))
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::Domain(format!("{name} = {v} is outside [0, 1]")));
    }
    Ok(())
}

/// s = 1 - F(F_H0⁻¹(1 - p)).
pub fn s_from_p(p: f64, f: &ChiSquare, f_h0: &ChiSquare) -> Result<f64> {
    check_unit("p", p)?;
    f.sf(f_h0.upper_quantile(p)?)
}

/// p = 1 - F_H0(F⁻¹(1 - s)).
pub fn p_from_s(s: f64, f: &ChiSquare, f_h0: &ChiSquare) -> Result<f64> {
    check_unit("s", s)?;
    f_h0.sf(f.upper_quantile(s)?)
}

/// α' = 1 - F(F_H0⁻¹(1 - α)): the s-value cutoff equivalent to rejecting
/// at p ≤ α.
pub fn corrected_threshold(alpha: f64, f: &ChiSquare, f_h0: &ChiSquare) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    s_from_p(alpha, f, f_h0)
}

/// ⟨s(Θ₀), s(closure of Θ₀ᶜ)⟩.
pub fn belief_pair(model: &dyn LogLikModel, null: &NullSet, f: &ChiSquare) -> Result<SupportPair> {
    let s = s_value(model, null, f)?.s;
    let sc = s_value(model, &null.clone().complement(), f)?.s;
    SupportPair::new(s, sc)
}

/// s of a union from its members' reports: the maximum member s-value.
pub fn s_value_union(members: &[EvidenceReport]) -> f64 {
    members.iter().map(|r| r.s_value).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypotheses::Curve;
    use crate::models::MvnIdentityMean;
    use approx::assert_abs_diff_eq;

    fn mvn() -> MvnIdentityMean {
        MvnIdentityMean::new(100, ParamVector::new(vec![0.14, -0.16]).unwrap()).unwrap()
    }

    fn chi(k: u32) -> ChiSquare {
        ChiSquare::new(k).unwrap()
    }

    #[test]
    fn sharp_and_linear_nulls() {
        let m = mvn();
        let p = NullSet::point(&[0.0, 0.0]).unwrap();
        let l = NullSet::linear(&[vec![1.0, -1.0]], &[0.0]).unwrap();
        let rp = evaluate(&m, &p, &AnalysisOptions::default()).unwrap();
        let rl = evaluate(&m, &l, &AnalysisOptions::default()).unwrap();
        assert_abs_diff_eq!(rp.s_value, (-2.26f64).exp(), epsilon = 1e-12);
        assert_abs_diff_eq!(rl.s_value, (-2.25f64).exp(), epsilon = 1e-12);
        assert_eq!(rp.belief_pair.co_support, 1.0);
        assert_abs_diff_eq!(
            rp.p_value_lr.unwrap(),
            rp.p_value_wald.unwrap(),
            epsilon = 1e-12
        );
        assert_eq!(rl.dof_null_codim, Some(1));
    }

    #[test]
    fn boundary_values() {
        let m = mvn();
        let f = chi(2);
        assert_eq!(s_value(&m, &NullSet::Empty, &f).unwrap().s, 0.0);
        assert_eq!(s_value(&m, &NullSet::Full, &f).unwrap().s, 1.0);
        assert_eq!(
            s_value_region_based(&m, &NullSet::Empty, &f, 1e-9).unwrap(),
            0.0
        );
        assert_eq!(
            s_value_region_based(&m, &NullSet::Full, &f, 1e-9).unwrap(),
            1.0
        );
        let bp = belief_pair(&m, &NullSet::Full, &f).unwrap();
        assert_eq!((bp.support, bp.co_support), (1.0, 0.0));
    }

    #[test]
    fn region_based_matches_closed_form_on_zero_count_table_row() {
        let t = Trinomial::new(5, 15, 0).unwrap();
        let null = NullSet::Curve(Curve::hardy_weinberg());
        let f = chi(2);
        let closed = s_value(&t, &null, &f).unwrap().s;
        let region = s_value_region_based(&t, &null, &f, 1e-10).unwrap();
        assert_abs_diff_eq!(closed, 0.008_077_935_669_463, epsilon = 1e-9);
        assert_abs_diff_eq!(closed, region, epsilon = 1e-9);
    }

    #[test]
    fn lr_p_values() {
        assert_abs_diff_eq!(
            p_value_from_statistic(4.52, 2).unwrap(),
            0.104,
            epsilon = 5e-4
        );
        assert_abs_diff_eq!(
            p_value_from_statistic(4.5, 1).unwrap(),
            0.034,
            epsilon = 5e-4
        );
        assert_eq!(p_value_from_statistic(0.0, 3).unwrap(), 1.0);
        assert!(p_value_lr(&mvn(), &NullSet::Full, 0).is_err());
    }

    #[test]
    fn wald_examples() {
        let m = mvn();
        let th = m.mle().unwrap();
        let cov = DMatrix::identity(2, 2) / 100.0;
        let w = wald_statistic(&th, &DMatrix::identity(2, 2), &DVector::zeros(2), &cov).unwrap();
        assert_abs_diff_eq!(w, 4.52, epsilon = 1e-12);
        let c = DMatrix::from_row_slice(1, 2, &[1.0, -1.0]);
        let w = wald_statistic(&th, &c, &DVector::zeros(1), &cov).unwrap();
        assert_abs_diff_eq!(w, 4.5, epsilon = 1e-12);
        let d = DVector::from_vec(vec![0.3]);
        assert_abs_diff_eq!(
            wald_statistic(&th, &c, &d, &cov).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        assert!(wald_statistic(&th, &c, &d, &DMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn duality_examples() {
        let (f2, f1) = (chi(2), chi(1));
        assert_abs_diff_eq!(s_from_p(0.3, &f2, &f2).unwrap(), 0.3, epsilon = 1e-12);
        assert_abs_diff_eq!(
            s_from_p(0.0339, &f2, &f1).unwrap(),
            0.105_412_907_199_48,
            epsilon = 1e-10
        );
        let s = s_from_p(0.2, &f2, &f1).unwrap();
        assert_abs_diff_eq!(p_from_s(s, &f2, &f1).unwrap(), 0.2, epsilon = 1e-9);
        assert!(s_from_p(1.5, &f2, &f1).is_err());
        assert!(p_from_s(-0.5, &f2, &f1).is_err());
    }

    #[test]
    fn corrected_thresholds() {
        let (f2, f1) = (chi(2), chi(1));
        assert_abs_diff_eq!(
            corrected_threshold(0.05, &f1, &f1).unwrap(),
            0.05,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            corrected_threshold(0.05, &f2, &f1).unwrap(),
            0.146_500_064_486_08,
            epsilon = 1e-10
        );
        assert!(corrected_threshold(1e-12, &f2, &f1).unwrap() < 1e-9);
        assert!(corrected_threshold(0.0, &f2, &f1).is_err());
        assert!(corrected_threshold(1.0, &f2, &f1).is_err());
    }

    #[test]
    fn union_of_reports() {
        let mk = |s: f64| EvidenceReport {
            s_value: s,
            deviance: 0.0,
            theta0_hat: None,
            p_value_lr: None,
            p_value_wald: None,
            belief_pair: SupportPair::new(s, 1.0).unwrap(),
            dof_full: 2,
            dof_null_codim: None,
            p_value_conservative: None,
            alpha_corrected: None,
        };
        assert_eq!(s_value_union(&[mk(0.3), mk(0.7)]), 0.7);
        assert_eq!(s_value_union(&[mk(0.3), mk(0.3)]), 0.3);
    }

    #[test]
    fn conservative_p_value_golden() {
        // mpmath enumeration over 231 outcomes x 101 grid points
        let t = Trinomial::new(5, 15, 0).unwrap();
        let null = NullSet::Curve(Curve::hardy_weinberg());
        let p = p_value_conservative_exact(&t, &null, 9.637, 101).unwrap();
        assert_abs_diff_eq!(p, 0.004_135_408_804_731_33, epsilon = 1e-12);
        assert_eq!(
            p_value_conservative_exact(&t, &null, f64::INFINITY, 101).unwrap(),
            0.0
        );
        let p0 = p_value_conservative_exact(&Trinomial::new(5, 10, 5).unwrap(), &null, 0.0, 101)
            .unwrap();
        assert_abs_diff_eq!(p0, 0.999_928_348_880_195, epsilon = 1e-10);
        let big = Trinomial::new(100, 100, 1).unwrap();
        assert!(p_value_conservative_exact(&big, &null, 1.0, 11).is_err());
    }
}
