//! Nested hypotheses on a bivariate normal mean: p-values disagree with the
//! nesting, s-values respect it.

use svalue::evidence::{evaluate, AnalysisOptions};
use svalue::{MvnIdentityMean, NullSet, ParamVector};

fn main() -> svalue::Result<()> {
    let model = MvnIdentityMean::new(100, ParamVector::new(vec![0.14, -0.16])?)?;
    let origin = NullSet::point(&[0.0, 0.0])?;
    let diagonal = NullSet::linear(&[vec![1.0, -1.0]], &[0.0])?;
    let opts = AnalysisOptions::default();

    for (name, null) in [("mu1 = mu2 = 0", &origin), ("mu1 = mu2", &diagonal)] {
        let r = evaluate(&model, null, &opts)?;
        println!(
            "{name:<14} T = {:.4}  p_LR = {:.4}  p_Wald = {:.4}  s = {:.4}  theta0 = {:?}",
            r.deviance,
            r.p_value_lr.unwrap(),
            r.p_value_wald.unwrap(),
            r.s_value,
            r.theta0_hat
                .as_ref()
                .map(|t| t.as_slice().to_vec())
                .unwrap()
        );
    }
    Ok(())
}
