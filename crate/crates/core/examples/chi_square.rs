//! Chi-square CDF, survival function and quantiles.

use svalue::ChiSquare;

fn main() -> svalue::Result<()> {
    for dof in 1..=4 {
        let chi = ChiSquare::new(dof)?;
        let q95 = chi.quantile(0.95)?;
        println!(
            "dof {dof}: F(4.52) = {:.6}  1-F(4.52) = {:.6}  F^-1(0.95) = {q95:.6}",
            chi.cdf(4.52)?,
            chi.sf(4.52)?,
        );
    }
    let chi2 = ChiSquare::new(2)?;
    println!(
        "upper quantile at 1e-10, dof 2: {:.6}",
        chi2.upper_quantile(1e-10)?
    );
    Ok(())
}
