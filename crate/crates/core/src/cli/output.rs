//! Rendering of row-shaped results as JSON, CSV or an aligned text table.

use serde::Serialize;

use super::OutputFormat;
use crate::error::Result;

/// A row with fixed column names; `None` cells render as empty (CSV) or `-`.
pub trait Tabular {
    fn headers() -> Vec<&'static str>;
    fn cells(&self) -> Vec<Option<String>>;
}

pub fn num(x: f64) -> String {
    format!("{x}")
}

pub fn opt_num(x: Option<f64>) -> Option<String> {
    x.map(num)
}

pub fn render<T: Tabular + Serialize>(rows: &[T], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(rows)?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Csv => to_csv(rows),
        OutputFormat::Table => Ok(to_table(rows)),
    }
}

fn to_csv<T: Tabular>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(T::headers())?;
    for row in rows {
        w.write_record(row.cells().into_iter().map(Option::unwrap_or_default))?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn to_table<T: Tabular>(rows: &[T]) -> String {
    let headers: Vec<String> = T::headers().into_iter().map(String::from).collect();
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            r.cells()
                .into_iter()
                .map(|c| c.unwrap_or_else(|| "-".into()))
                .collect()
        })
        .collect();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in &body {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        let mut s = padded.join("  ").trim_end().to_string();
        s.push('\n');
        s
    };
    let mut out = line(&headers);
    for row in &body {
        out.push_str(&line(row));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        name: &'static str,
        value: Option<f64>,
    }

    impl Tabular for Row {
        fn headers() -> Vec<&'static str> {
            vec!["name", "value"]
        }
        fn cells(&self) -> Vec<Option<String>> {
            vec![Some(self.name.into()), opt_num(self.value)]
        }
    }

    #[test]
    fn formats() {
        let rows = [
            Row {
                name: "a",
                value: Some(0.5),
            },
            Row {
                name: "bb",
                value: None,
            },
        ];
        assert_eq!(
            render(&rows, OutputFormat::Csv).unwrap(),
            "name,value\na,0.5\nbb,\n"
        );
        assert_eq!(
            render(&rows, OutputFormat::Table).unwrap(),
            "name  value\na     0.5\nbb    -\n"
        );
        let json: serde_json::Value =
            serde_json::from_str(&render(&rows, OutputFormat::Json).unwrap()).unwrap();
        assert_eq!(json[1]["value"], serde_json::Value::Null);
    }
}
