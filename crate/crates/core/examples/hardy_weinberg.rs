//! Hardy-Weinberg equilibrium on trinomial counts: s-value, asymptotic and
//! exact conservative p-values.

use svalue::evidence::{evaluate, p_value_conservative_exact, AnalysisOptions};
use svalue::hypotheses::hw_constrained_mle_closed_form;
use svalue::{Curve, NullSet, Trinomial};

fn main() -> svalue::Result<()> {
    let null = NullSet::Curve(Curve::hardy_weinberg());
    for counts in [[5, 15, 0], [1, 8, 11], [9, 9, 2]] {
        let model = Trinomial::new(counts[0], counts[1], counts[2])?;
        let r = evaluate(&model, &null, &AnalysisOptions::default())?;
        let exact = p_value_conservative_exact(&model, &null, r.deviance, 2001)?;
        let closed = hw_constrained_mle_closed_form(&model)?;
        println!(
            "{counts:?}: s = {:.4}  p_asym = {:.4}  p_exact = {:.4}  theta0 = {:.4?}",
            r.s_value,
            r.p_value_lr.unwrap(),
            exact,
            closed.theta0_hat.as_slice()
        );
    }
    Ok(())
}
