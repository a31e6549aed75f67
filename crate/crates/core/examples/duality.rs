//! Converting between p-values and s-values, and the s-value threshold that
//! matches a p-value level.

use svalue::evidence::{corrected_threshold, p_from_s, s_from_p};
use svalue::ChiSquare;

fn main() -> svalue::Result<()> {
    let f = ChiSquare::new(2)?;
    for r in 1..=2 {
        let f_h0 = ChiSquare::new(r)?;
        let alpha = corrected_threshold(0.05, &f, &f_h0)?;
        println!("k = 2, r = {r}: p <= 0.05 corresponds to s <= {alpha:.6}");
        for p in [0.01, 0.0339, 0.1] {
            let s = s_from_p(p, &f, &f_h0)?;
            println!(
                "  p = {p:<7} s = {s:.6}  back to p = {:.6}",
                p_from_s(s, &f, &f_h0)?
            );
        }
    }
    Ok(())
}
