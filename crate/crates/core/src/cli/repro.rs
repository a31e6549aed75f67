//! Recomputes the published examples and Hardy-Weinberg table.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::output::{num, render, Tabular};
use super::{Outcome, OutputFormat};
use crate::error::{Error, Result};
use crate::evidence::{evaluate, AnalysisOptions};
use crate::hypotheses::{Curve, NullSet};
use crate::models::{
    LinearRegressionKnownVar, LogLikModel, MvnIdentityMean, ParamVector, Trinomial,
};

pub const EXAMPLE_1_2_CSV: &str = include_str!("../../data/example_1_2.csv");
pub const TABLE1_CSV: &str = include_str!("../../data/table1.csv");

/// Sample size of every Hardy-Weinberg table row.
pub const TABLE1_N: u64 = 20;
/// Tolerance for each Hardy-Weinberg s-value.
pub const TABLE1_TOLERANCE: f64 = 0.005;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReproId {
    Ex1_1,
    Ex1_2,
    Ex5_1,
    Ex5_2,
    Table1,
}

impl FromStr for ReproId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ex1.1" => ReproId::Ex1_1,
            "ex1.2" => ReproId::Ex1_2,
            "ex5.1" => ReproId::Ex5_1,
            "ex5.2" => ReproId::Ex5_2,
            "table1" => ReproId::Table1,
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown example `{other}`; expected ex1.1, ex1.2, ex5.1, ex5.2 or table1"
                )))
            }
        })
    }
}

/// One computed quantity beside its published value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub quantity: String,
    pub computed: f64,
    pub rounded: String,
    pub published: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Cell {
    fn new(quantity: impl Into<String>, computed: f64, published: f64, tolerance: f64) -> Self {
        Self {
            quantity: quantity.into(),
            computed,
            rounded: format!("{:.2}", round_half_away(computed, 2)),
            published,
            tolerance,
            pass: (computed - published).abs() <= tolerance,
        }
    }

    /// Tolerance of one unit in the last printed digit.
    fn printed(quantity: impl Into<String>, computed: f64, published: f64, decimals: i32) -> Self {
        Self::new(quantity, computed, published, 10f64.powi(-decimals))
    }
}

impl Tabular for Cell {
    fn headers() -> Vec<&'static str> {
        vec![
            "quantity",
            "computed",
            "rounded",
            "published",
            "tolerance",
            "status",
        ]
    }

    fn cells(&self) -> Vec<Option<String>> {
        vec![
            Some(self.quantity.clone()),
            Some(num(self.computed)),
            Some(self.rounded.clone()),
            Some(num(self.published)),
            Some(num(self.tolerance)),
            Some(if self.pass { "pass" } else { "FAIL" }.into()),
        ]
    }
}

pub fn round_half_away(x: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    (x * scale).round() / scale
}

/// Published Hardy-Weinberg row.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct Table1Row {
    pub x1: u64,
    pub x3: u64,
    pub s_value: f64,
    pub e_value: f64,
    pub p_value: f64,
}

pub fn table1_rows() -> Result<Vec<Table1Row>> {
    csv::Reader::from_reader(TABLE1_CSV.as_bytes())
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

pub fn example_1_2_model() -> Result<LinearRegressionKnownVar> {
    LinearRegressionKnownVar::from_csv(EXAMPLE_1_2_CSV.as_bytes())
}

pub fn example_1_1_model() -> Result<MvnIdentityMean> {
    MvnIdentityMean::new(100, ParamVector::new(vec![0.14, -0.16])?)
}

/// s-value of the Hardy-Weinberg curve for counts (x1, n - x1 - x3, x3).
pub fn hardy_weinberg_s(x1: u64, x3: u64, n: u64) -> Result<f64> {
    let x2 = n
        .checked_sub(x1 + x3)
        .ok_or_else(|| Error::InvalidInput(format!("x1 + x3 exceeds n = {n}")))?;
    let model = Trinomial::new(x1, x2, x3)?;
    let null = NullSet::Curve(Curve::hardy_weinberg());
    Ok(evaluate(&model, &null, &AnalysisOptions::default())?.s_value)
}

fn regression_nulls() -> Result<[NullSet; 3]> {
    Ok([
        NullSet::linear(&[vec![1.0, 0.0]], &[0.0])?,
        NullSet::linear(&[vec![0.0, 1.0]], &[0.0])?,
        NullSet::point(&[0.0, 0.0])?,
    ])
}

fn mvn_nulls() -> Result<[NullSet; 2]> {
    Ok([
        NullSet::point(&[0.0, 0.0])?,
        NullSet::linear(&[vec![1.0, -1.0]], &[0.0])?,
    ])
}

/// Every comparison for `id`. `tolerance` replaces the per-cell defaults.
pub fn repro_cells(id: ReproId, tolerance: Option<f64>) -> Result<Vec<Cell>> {
    let opts = AnalysisOptions::default();
    let mut cells = match id {
        ReproId::Ex1_1 => {
            let m = example_1_1_model()?;
            let [h1, h2] = mvn_nulls()?;
            let r1 = evaluate(&m, &h1, &opts)?;
            let r2 = evaluate(&m, &h2, &opts)?;
            vec![
                Cell::printed("T1", r1.deviance, 4.52, 2),
                Cell::printed("p1", need(r1.p_value_lr)?, 0.10, 2),
                Cell::printed("T2", r2.deviance, 4.5, 1),
                Cell::printed("p2", need(r2.p_value_lr)?, 0.03, 2),
            ]
        }
        ReproId::Ex1_2 => {
            let m = example_1_2_model()?;
            let nulls = regression_nulls()?;
            let mut cells = Vec::new();
            for (i, (null, (t, p, dp))) in nulls
                .iter()
                .zip([(4.48, 0.03, 2), (4.00, 0.045, 3), (4.59, 0.10, 2)])
                .enumerate()
            {
                let r = evaluate(&m, null, &opts)?;
                cells.push(Cell::printed(format!("T{}", i + 1), r.deviance, t, 2));
                cells.push(Cell::printed(
                    format!("p{}", i + 1),
                    need(r.p_value_lr)?,
                    p,
                    dp,
                ));
            }
            cells
        }
        ReproId::Ex5_1 => {
            let m = example_1_1_model()?;
            let [h1, h2] = mvn_nulls()?;
            let r1 = evaluate(&m, &h1, &opts)?;
            let r2 = evaluate(&m, &h2, &opts)?;
            let theta0 = r2
                .theta0_hat
                .ok_or_else(|| Error::NonConvergence("no constrained fit".into()))?;
            vec![
                Cell::new("s1", r1.s_value, 0.104, 0.001),
                Cell::new("s2", r2.s_value, 0.105, 0.001),
                Cell::new("theta0_1", theta0[0], -0.01, 0.001),
                Cell::new("theta0_2", theta0[1], -0.01, 0.001),
            ]
        }
        ReproId::Ex5_2 => {
            let m = example_1_2_model()?;
            let b = m.mle()?;
            let mut cells = vec![
                Cell::new("b1", b[0], 0.1966, 5e-4),
                Cell::new("b2", b[1], -0.1821, 5e-4),
            ];
            for (i, (null, s)) in regression_nulls()?
                .iter()
                .zip([0.107, 0.135, 0.101])
                .enumerate()
            {
                let r = evaluate(&m, null, &opts)?;
                cells.push(Cell::new(format!("s{}", i + 1), r.s_value, s, 0.002));
            }
            cells
        }
        ReproId::Table1 => table1_rows()?
            .iter()
            .map(|row| {
                let s = hardy_weinberg_s(row.x1, row.x3, TABLE1_N)?;
                Ok(Cell::new(
                    format!("s(x1={},x3={})", row.x1, row.x3),
                    s,
                    row.s_value,
                    TABLE1_TOLERANCE,
                ))
            })
            .collect::<Result<_>>()?,
    };
    if let Some(tol) = tolerance {
        if !(tol >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "tolerance must be non-negative, got {tol}"
            )));
        }
        for c in &mut cells {
            *c = Cell::new(c.quantity.clone(), c.computed, c.published, tol);
        }
    }
    Ok(cells)
}

fn need(p: Option<f64>) -> Result<f64> {
    p.ok_or_else(|| Error::UndefinedCodimension("LR p-value is undefined".into()))
}

pub fn run_repro(id: ReproId, tolerance: Option<f64>, format: OutputFormat) -> Result<Outcome> {
    let cells = repro_cells(id, tolerance)?;
    let exit_code = if cells.iter().all(|c| c.pass) { 0 } else { 1 };
    Ok(Outcome {
        text: render(&cells, format)?,
        exit_code,
    })
}
