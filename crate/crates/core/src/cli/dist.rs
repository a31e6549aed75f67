use clap::ValueEnum;
use serde::Serialize;

use super::output::{num, render, Tabular};
use super::OutputFormat;
use crate::error::Result;
use crate::special_fn::ChiSquare;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistOp {
    Cdf,
    Quantile,
}

#[derive(Debug, Clone, Serialize)]
pub struct DistRow {
    pub op: DistOp,
    pub dof: u32,
    pub at: f64,
    pub value: f64,
}

impl Tabular for DistRow {
    fn headers() -> Vec<&'static str> {
        vec!["op", "dof", "at", "value"]
    }

    fn cells(&self) -> Vec<Option<String>> {
        let op = match self.op {
            DistOp::Cdf => "cdf",
            DistOp::Quantile => "quantile",
        };
        vec![
            Some(op.into()),
            Some(self.dof.to_string()),
            Some(num(self.at)),
            Some(num(self.value)),
        ]
    }
}

pub fn run_dist(op: DistOp, dof: u32, at: f64, format: OutputFormat) -> Result<String> {
    let chi = ChiSquare::new(dof)?;
    let value = match op {
        DistOp::Cdf => chi.cdf(at)?,
        DistOp::Quantile => chi.quantile(at)?,
    };
    render(&[DistRow { op, dof, at, value }], format)
}
