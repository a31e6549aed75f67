#![allow(dead_code)]

use std::f64::consts::PI;

use svalue::{Curve, LogLikModel, NullSet, ParamVector, Trinomial};

/// Trinomial in log-ratio coordinates φ = (ln θ₁/θ₃, ln θ₂/θ₃), an
/// unconstrained bijection of the open simplex.
pub struct LogRatioTrinomial {
    pub counts: [f64; 3],
}

impl LogRatioTrinomial {
    pub fn new(counts: [u64; 3]) -> Self {
        Self {
            counts: counts.map(|c| c as f64),
        }
    }

    pub fn to_simplex(phi: &[f64]) -> [f64; 3] {
        let m = phi[0].max(phi[1]).max(0.0);
        let e = [(phi[0] - m).exp(), (phi[1] - m).exp(), (-m).exp()];
        let z: f64 = e.iter().sum();
        e.map(|v| v / z)
    }

    pub fn from_simplex(theta: &[f64]) -> Vec<f64> {
        vec![(theta[0] / theta[2]).ln(), (theta[1] / theta[2]).ln()]
    }

    /// Hardy-Weinberg curve mapped into φ coordinates.
    pub fn hardy_weinberg_null() -> NullSet {
        let eps = 1e-9;
        let curve = Curve::new("hardy_weinberg_logratio", eps, 1.0 - eps, |t| {
            vec![2.0 * (t / (1.0 - t)).ln(), (2.0 * t / (1.0 - t)).ln()]
        })
        .unwrap();
        NullSet::Curve(curve)
    }
}

impl LogLikModel for LogRatioTrinomial {
    fn ambient_dim(&self) -> usize {
        2
    }

    fn in_domain(&self, theta: &ParamVector) -> bool {
        theta.as_slice().iter().all(|v| v.is_finite())
    }

    fn loglik(&self, phi: &ParamVector) -> svalue::Result<f64> {
        let th = Self::to_simplex(phi.as_slice());
        Ok(self
            .counts
            .iter()
            .zip(th)
            .map(|(&x, t)| if x == 0.0 { 0.0 } else { x * t.ln() })
            .sum())
    }

    fn mle(&self) -> svalue::Result<ParamVector> {
        ParamVector::new(Self::from_simplex(&self.counts))
    }
}

pub fn trinomial(c: [u64; 3]) -> Trinomial {
    Trinomial::new(c[0], c[1], c[2]).unwrap()
}

/// Γ(r/2) for a positive integer r, from Γ(1/2) = √π, Γ(1) = 1 and Γ(a+1) = aΓ(a).
pub fn gamma_half_integer(r: u32) -> f64 {
    let (mut a, mut g) = if r.is_multiple_of(2) {
        (1.0, 1.0)
    } else {
        (0.5, PI.sqrt())
    };
    while a < r as f64 / 2.0 - 1e-12 {
        g *= a;
        a += 1.0;
    }
    g
}

/// χ²_r CDF by composite Simpson on the substitution x = u², which removes
/// the r = 1 singularity at the origin.
pub fn chisq_cdf_by_integration(x: f64, r: u32) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let k = r as f64 / 2.0;
    let norm = 2f64.powf(k) * gamma_half_integer(r);
    let g = |u: f64| -> f64 {
        if u == 0.0 {
            return if r == 1 { 2.0 / norm } else { 0.0 };
        }
        let t = u * u;
        2.0 * u * t.powf(k - 1.0) * (-t / 2.0).exp() / norm
    };
    let b = x.sqrt();
    let n = 20_000;
    let h = b / n as f64;
    let mut sum = g(0.0) + g(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * g(i as f64 * h);
    }
    sum * h / 3.0
}

/// Kolmogorov-Smirnov distance between a sample and U(0, 1).
pub fn ks_uniform(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let lo = x - i as f64 / n;
            let hi = (i + 1) as f64 / n - x;
            lo.max(hi)
        })
        .fold(0.0, f64::max)
}

/// KS critical value at the 1% level for large samples.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.6276 / (n as f64).sqrt()
}
