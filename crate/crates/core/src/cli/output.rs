use clap::ValueEnum;
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// A command's output before formatting.
#[derive(Debug, Clone)]
pub struct Report {
    value: Value,
    csv: Option<String>,
    rows: Option<(Vec<String>, Vec<Vec<String>>)>,
    braid: Option<String>,
}

impl Report {
    pub fn json(value: Value) -> Self {
        Report { value, csv: None, rows: None, braid: None }
    }

    pub fn with_csv(value: Value, csv: String) -> Self {
        Report { csv: Some(csv), ..Report::json(value) }
    }

    pub fn with_rows(value: Value, headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        let headers = headers.iter().map(|h| h.to_string()).collect();
        Report { rows: Some((headers, rows)), ..Report::json(value) }
    }

    pub fn braid(value: Value, text: String) -> Self {
        Report { braid: Some(text), ..Report::json(value) }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        let pretty = || serde_json::to_string_pretty(&self.value).expect("report serializes") + "\n";
        match format {
            Format::Json => Ok(pretty()),
            Format::Csv => {
                if let Some(csv) = &self.csv {
                    return Ok(csv.clone());
                }
                let (headers, rows) = self
                    .rows
                    .as_ref()
                    .ok_or_else(|| Error::Parse("this command has no CSV output; use --format json".into()))?;
                let mut out = headers.join(",") + "\n";
                for row in rows {
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
                Ok(out)
            }
            Format::Table => {
                if let Some((headers, rows)) = &self.rows {
                    return Ok(table(headers, rows));
                }
                if let Some(csv) = &self.csv {
                    let mut lines = csv.lines().map(|l| l.split(',').map(str::to_string).collect::<Vec<_>>());
                    let headers = lines.next().unwrap_or_default();
                    return Ok(table(&headers, &lines.collect::<Vec<_>>()));
                }
                match &self.braid {
                    Some(b) => Ok(format!("{b}\n{}", pretty())),
                    None => Ok(pretty()),
                }
            }
        }
    }
}

fn table(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers);
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn formats() {
        let r = Report::with_rows(json!({"a": 1}), &["r", "tv"], vec![vec!["5".into(), "1".into()]]);
        assert_eq!(r.render(Format::Csv).unwrap(), "r,tv\n5,1\n");
        assert_eq!(r.render(Format::Table).unwrap(), "r  tv\n5   1\n");
        let v: Value = serde_json::from_str(&r.render(Format::Json).unwrap()).unwrap();
        assert_eq!(v, json!({"a": 1}));
        assert!(Report::json(json!(null)).render(Format::Csv).is_err());
    }
}
