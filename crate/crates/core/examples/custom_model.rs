//! Plugging a user-defined likelihood into the evidence machinery: a
//! Poisson pair with rates (l1, l2) and the null l1 = l2.

use svalue::evidence::{evaluate, AnalysisOptions};
use svalue::{LogLikModel, NullSet, ParamVector};

struct PoissonPair {
    counts: [f64; 2],
}

impl LogLikModel for PoissonPair {
    fn ambient_dim(&self) -> usize {
        2
    }

    fn in_domain(&self, theta: &ParamVector) -> bool {
        theta.as_slice().iter().all(|&l| l > 0.0)
    }

    fn loglik(&self, theta: &ParamVector) -> svalue::Result<f64> {
        Ok(self
            .counts
            .iter()
            .zip(theta.as_slice())
            .map(|(&x, &l)| x * l.ln() - l)
            .sum())
    }

    fn mle(&self) -> svalue::Result<ParamVector> {
        ParamVector::new(self.counts.to_vec())
    }
}

fn main() -> svalue::Result<()> {
    let model = PoissonPair {
        counts: [12.0, 25.0],
    };
    let equal = NullSet::linear(&[vec![1.0, -1.0]], &[0.0])?;
    let r = evaluate(&model, &equal, &AnalysisOptions::default())?;
    println!(
        "l1 = l2: theta0 = {:.4?}  T = {:.4}  s = {:.4}  p = {:.4}",
        r.theta0_hat.as_ref().unwrap().as_slice(),
        r.deviance,
        r.s_value,
        r.p_value_lr.unwrap()
    );
    Ok(())
}
