//! Boundary points of likelihood confidence regions, and the region-based
//! s-value found by bisection over alpha.

use svalue::cli::region::region_boundary;
use svalue::evidence::{default_reference, s_value, s_value_region_based};
use svalue::{MvnIdentityMean, NullSet, ParamVector};

fn main() -> svalue::Result<()> {
    let model = MvnIdentityMean::new(100, ParamVector::new(vec![0.14, -0.16])?)?;
    let f = default_reference(&model)?;
    let null = NullSet::point(&[0.0, 0.0])?;

    let closed = s_value(&model, &null, &f)?.s;
    let region = s_value_region_based(&model, &null, &f, 1e-12)?;
    println!("s closed form = {closed:.10}  region based = {region:.10}");

    for p in region_boundary(&model, &f, &[closed, 0.5], 8)? {
        println!(
            "alpha {:.4}  angle {:.3}  theta {:.5?}",
            p.alpha, p.angle, p.theta
        );
    }
    Ok(())
}
