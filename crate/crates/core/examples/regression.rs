//! Known-variance linear regression read from CSV, with coefficient nulls.

use svalue::evidence::{evaluate, AnalysisOptions};
use svalue::{LinearRegressionKnownVar, LogLikModel, NullSet};

const DATA: &str = include_str!("../data/example_1_2.csv");

fn main() -> svalue::Result<()> {
    let model = LinearRegressionKnownVar::from_csv(DATA.as_bytes())?;
    println!("b_hat = {:?}", model.mle()?.as_slice());

    let nulls = [
        ("b1 = 0", NullSet::linear(&[vec![1.0, 0.0]], &[0.0])?),
        ("b2 = 0", NullSet::linear(&[vec![0.0, 1.0]], &[0.0])?),
        ("b = 0", NullSet::point(&[0.0, 0.0])?),
    ];
    for (name, null) in &nulls {
        let r = evaluate(&model, null, &AnalysisOptions::default())?;
        println!(
            "{name:<7} T = {:.4}  p = {:.4}  s = {:.4}",
            r.deviance,
            r.p_value_lr.unwrap(),
            r.s_value
        );
    }
    Ok(())
}
