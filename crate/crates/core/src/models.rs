//! Parametric models: a log-likelihood, its maximizer and the dimension of
//! the parameter space.
//!
//! Log-likelihoods are only defined up to an additive constant per model
//! instance. Everything downstream works with deviances, where the constant
//! cancels.

use std::io::Read;
use std::ops::Index;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in the parameter space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ParamVector(Vec<f64>);

impl ParamVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInput(
                "parameter vector must be non-empty".into(),
            ));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite coordinate {bad}")));
        }
        Ok(Self(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn to_dvector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.0)
    }

    pub(crate) fn from_dvector(v: &DVector<f64>) -> Result<Self> {
        Self::new(v.iter().copied().collect())
    }

    pub fn max_abs_diff(&self, other: &ParamVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl TryFrom<Vec<f64>> for ParamVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ParamVector> for Vec<f64> {
    fn from(p: ParamVector) -> Self {
        p.0
    }
}

impl Index<usize> for ParamVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// A model with a strictly concave log-likelihood over Θ.
///
/// Parameters live in an ambient coordinate space of `ambient_dim()` reals.
/// Models whose natural coordinates are tied by affine identities (the
/// trinomial simplex) report them through `implicit_constraints`; the
/// dimension of Θ is then the ambient dimension minus the number of
/// implicit constraints.
pub trait LogLikModel: Send + Sync {
    fn ambient_dim(&self) -> usize;

    /// Rows `(A, b)` with `A θ = b` holding on all of Θ.
    fn implicit_constraints(&self) -> Option<(DMatrix<f64>, DVector<f64>)> {
        None
    }

    fn full_dim(&self) -> usize {
        self.ambient_dim() - self.implicit_constraints().map_or(0, |(a, _)| a.nrows())
    }

    /// Membership in the closure of the parameter domain.
    fn in_domain(&self, theta: &ParamVector) -> bool;

    /// ℓ(θ) up to the model constant. May be `-inf` on the boundary.
    fn loglik(&self, theta: &ParamVector) -> Result<f64>;

    fn mle(&self) -> Result<ParamVector>;

    /// Precision matrix G when ℓ(θ) = ℓ(θ̂) - ½ (θ-θ̂)ᵀ G (θ-θ̂) holds exactly.
    fn information(&self) -> Option<DMatrix<f64>> {
        None
    }

    /// T_θ = 2(ℓ(θ̂) - ℓ(θ)).
    fn deviance_at(&self, theta: &ParamVector) -> Result<f64> {
        let top = self.loglik(&self.mle()?)?;
        let here = self.loglik(theta)?;
        if here == f64::NEG_INFINITY {
            return Ok(f64::INFINITY);
        }
        Ok((2.0 * (top - here)).max(0.0))
    }
}

pub(crate) fn check_dim(theta: &ParamVector, dim: usize) -> Result<()> {
    if theta.dim() != dim {
        return Err(Error::Domain(format!(
            "expected a {dim}-dimensional parameter, got {}",
            theta.dim()
        )));
    }
    Ok(())
}

/// Mean of a d-variate normal with identity covariance, summarized by (n, x̄).
#[derive(Debug, Clone)]
pub struct MvnIdentityMean {
    n: usize,
    xbar: ParamVector,
}

impl MvnIdentityMean {
    pub fn new(n: usize, xbar: ParamVector) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("sample size must be at least 1".into()));
        }
        Ok(Self { n, xbar })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn xbar(&self) -> &ParamVector {
        &self.xbar
    }
}

impl LogLikModel for MvnIdentityMean {
    fn ambient_dim(&self) -> usize {
        self.xbar.dim()
    }

    fn in_domain(&self, theta: &ParamVector) -> bool {
        theta.dim() == self.xbar.dim()
    }

    fn loglik(&self, mu: &ParamVector) -> Result<f64> {
        check_dim(mu, self.xbar.dim())?;
        let sq: f64 = self
            .xbar
            .as_slice()
            .iter()
            .zip(mu.as_slice())
            .map(|(x, m)| (x - m).powi(2))
            .sum();
        Ok(-0.5 * self.n as f64 * sq)
    }

    fn mle(&self) -> Result<ParamVector> {
        Ok(self.xbar.clone())
    }

    fn information(&self) -> Option<DMatrix<f64>> {
        let d = self.xbar.dim();
        Some(DMatrix::identity(d, d) * self.n as f64)
    }

    fn deviance_at(&self, mu: &ParamVector) -> Result<f64> {
        Ok(-2.0 * self.loglik(mu)?)
    }
}

/// y = X b + e with e ~ N(0, I); no intercept is added.
#[derive(Debug, Clone)]
pub struct LinearRegressionKnownVar {
    y: DVector<f64>,
    x: DMatrix<f64>,
    gram: DMatrix<f64>,
    b_hat: ParamVector,
}

impl LinearRegressionKnownVar {
    pub fn new(y: DVector<f64>, x: DMatrix<f64>) -> Result<Self> {
        let (n, q) = x.shape();
        if y.len() != n {
            return Err(Error::InvalidInput(format!(
                "response has {} rows but design has {n}",
                y.len()
            )));
        }
        if q == 0 || n < q {
            return Err(Error::InvalidInput(format!(
                "design must have 1 <= columns <= rows, got {n}x{q}"
            )));
        }
        let gram = x.transpose() * &x;
        let chol = gram
            .clone()
            .cholesky()
            .ok_or_else(|| Error::Singular("XᵀX is not positive definite".into()))?;
        let b = chol.solve(&(x.transpose() * &y));
        let b_hat = ParamVector::from_dvector(&b)?;
        Ok(Self { y, x, gram, b_hat })
    }

    /// Reads a CSV with a `y` column followed by covariate columns.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr.headers()?.clone();
        let y_col = headers
            .iter()
            .position(|h| h == "y")
            .ok_or_else(|| Error::InvalidInput("regression CSV needs a `y` column".into()))?;
        let x_cols: Vec<usize> = (0..headers.len()).filter(|&i| i != y_col).collect();
        let mut ys = Vec::new();
        let mut xs = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let parse = |i: usize| -> Result<f64> {
                rec[i]
                    .parse::<f64>()
                    .map_err(|e| Error::InvalidInput(format!("bad number {:?}: {e}", &rec[i])))
            };
            ys.push(parse(y_col)?);
            for &c in &x_cols {
                xs.push(parse(c)?);
            }
        }
        let n = ys.len();
        let x = DMatrix::from_row_slice(n, x_cols.len(), &xs);
        Self::new(DVector::from_vec(ys), x)
    }

    pub fn design(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn response(&self) -> &DVector<f64> {
        &self.y
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }
}

impl LogLikModel for LinearRegressionKnownVar {
    fn ambient_dim(&self) -> usize {
        self.x.ncols()
    }

    fn in_domain(&self, theta: &ParamVector) -> bool {
        theta.dim() == self.x.ncols()
    }

    fn loglik(&self, b: &ParamVector) -> Result<f64> {
        check_dim(b, self.x.ncols())?;
        let resid = &self.y - &self.x * b.to_dvector();
        Ok(-0.5 * resid.norm_squared())
    }

    fn mle(&self) -> Result<ParamVector> {
        Ok(self.b_hat.clone())
    }

    fn information(&self) -> Option<DMatrix<f64>> {
        Some(self.gram.clone())
    }

    fn deviance_at(&self, b: &ParamVector) -> Result<f64> {
        check_dim(b, self.x.ncols())?;
        let diff = self.b_hat.to_dvector() - b.to_dvector();
        Ok((diff.transpose() * &self.gram * &diff)[(0, 0)])
    }
}

const SIMPLEX_TOL: f64 = 1e-9;

/// Trinomial counts with parameters on the 2-simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Trinomial {
    counts: [u64; 3],
}

impl Trinomial {
    pub fn new(x1: u64, x2: u64, x3: u64) -> Result<Self> {
        if x1 + x2 + x3 == 0 {
            return Err(Error::InvalidInput(
                "trinomial needs at least one observation".into(),
            ));
        }
        Ok(Self {
            counts: [x1, x2, x3],
        })
    }

    pub fn counts(&self) -> [u64; 3] {
        self.counts
    }

    pub fn n(&self) -> u64 {
        self.counts.iter().sum()
    }
}

impl LogLikModel for Trinomial {
    fn ambient_dim(&self) -> usize {
        3
    }

    fn implicit_constraints(&self) -> Option<(DMatrix<f64>, DVector<f64>)> {
        Some((
            DMatrix::from_element(1, 3, 1.0),
            DVector::from_element(1, 1.0),
        ))
    }

    fn in_domain(&self, theta: &ParamVector) -> bool {
        theta.dim() == 3
            && theta.as_slice().iter().all(|&t| t >= -SIMPLEX_TOL)
            && (theta.as_slice().iter().sum::<f64>() - 1.0).abs() <= SIMPLEX_TOL
    }

    fn loglik(&self, theta: &ParamVector) -> Result<f64> {
        if !self.in_domain(theta) {
            return Err(Error::Domain(format!(
                "{:?} is outside the closed 2-simplex",
                theta.as_slice()
            )));
        }
        let mut acc = 0.0;
        for (&x, &t) in self.counts.iter().zip(theta.as_slice()) {
            if x == 0 {
                continue; // 0·log 0 = 0
            }
            if t <= 0.0 {
                return Ok(f64::NEG_INFINITY);
            }
            acc += x as f64 * t.ln();
        }
        Ok(acc)
    }

    fn mle(&self) -> Result<ParamVector> {
        let n = self.n() as f64;
        ParamVector::new(self.counts.iter().map(|&x| x as f64 / n).collect())
    }
}
