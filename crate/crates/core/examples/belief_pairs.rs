//! Belief pairs <s(H), s(not H)> and their classification.

use svalue::abc::{belief_order, check_support_structure, classify_state, SupportStructure};
use svalue::evidence::{belief_pair, default_reference};
use svalue::{MvnIdentityMean, NullSet, ParamVector};

fn main() -> svalue::Result<()> {
    let model = MvnIdentityMean::new(100, ParamVector::new(vec![0.14, -0.16])?)?;
    let f = default_reference(&model)?;
    let hypotheses = [
        ("mu = (0, 0)", NullSet::point(&[0.0, 0.0])?),
        ("mu = (0.5, 0.5)", NullSet::point(&[0.5, 0.5])?),
        (
            "mu1 >= 0",
            NullSet::Box {
                lo: ParamVector::new(vec![0.0, -1e6])?,
                hi: ParamVector::new(vec![1e6, 1e6])?,
            },
        ),
        ("everything", NullSet::Full),
    ];
    let mut pairs = Vec::new();
    for (name, null) in &hypotheses {
        let pair = belief_pair(&model, null, &f)?;
        let state = classify_state(&pair, 0.05, 0.05)?;
        println!(
            "{name:<16} <{:.4}, {:.4}>  {state}",
            pair.support, pair.co_support
        );
        pairs.push(pair);
    }
    println!(
        "origin below everything: {}",
        belief_order(&pairs[0], &pairs[3])
    );

    let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let mut samples = Vec::new();
    for &a in &grid {
        for &b in &grid {
            for &c in &grid {
                samples.push((a, b, c));
            }
        }
    }
    for s in [
        SupportStructure::possibility(),
        SupportStructure::clamped_sum(),
        SupportStructure::sum_mod_one(),
    ] {
        let report = check_support_structure(&s, &samples);
        println!(
            "{:<12} axioms hold: {}  violations: {}",
            s.name,
            report.all_hold(),
            report.violations.len()
        );
    }
    Ok(())
}
