use std::fmt::Write as _;

use serde_json::{Map, Number, Value};

use wbavg::Real;

/// A single output value. Reals keep their full decimal form.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(String),
    Int(i64),
    Text(String),
}

impl Cell {
    pub fn real<T: Real>(x: T) -> Cell {
        Cell::Real(x.to_decimal())
    }

    fn csv(&self) -> String {
        match self {
            Cell::Real(s) | Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // numbers keep their literal digits (arbitrary_precision)
            Cell::Real(s) => s.parse::<Number>().map(Value::Number).unwrap_or_else(|_| Value::String(s.clone())),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub summary: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn with_columns(cols: &[&str]) -> Self {
        Report { columns: cols.iter().map(|c| c.to_string()).collect(), ..Default::default() }
    }

    pub fn put(&mut self, key: &str, v: impl Into<Cell>) {
        self.summary.push((key.to_string(), v.into()));
    }

    pub fn put_real<T: Real>(&mut self, key: &str, v: T) {
        self.summary.push((key.to_string(), Cell::real(v)));
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    /// `# config: …` and `# version: …` lines, summary as `# key: value`,
    /// then a header row and the data rows.
    pub fn to_csv(&self, config: &Value, version: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# config: {config}");
        let _ = writeln!(out, "# version: {version}");
        for (k, v) in &self.summary {
            let _ = writeln!(out, "# {k}: {}", v.csv());
        }
        if !self.columns.is_empty() {
            out.push_str(&self.columns.join(","));
            out.push('\n');
            for r in &self.rows {
                let line: Vec<String> = r.iter().map(Cell::csv).collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self, config: &Value, version: &str) -> String {
        let mut result = Map::new();
        for (k, v) in &self.summary {
            result.insert(k.clone(), v.json());
        }
        if !self.columns.is_empty() {
            let rows: Vec<Value> = self
                .rows
                .iter()
                .map(|r| {
                    let mut m = Map::new();
                    for (c, v) in self.columns.iter().zip(r) {
                        m.insert(c.clone(), v.json());
                    }
                    Value::Object(m)
                })
                .collect();
            result.insert("rows".into(), Value::Array(rows));
        }
        let mut top = Map::new();
        top.insert("config".into(), config.clone());
        top.insert("version".into(), Value::String(version.to_string()));
        top.insert("result".into(), Value::Object(result));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wbavg::DD;

    #[test]
    fn dd_values_keep_all_digits_in_json() {
        let mut r = Report::default();
        r.put_real("rho", DD::parse_decimal("0.718053759982066107095244936117").unwrap());
        let s = r.to_json(&Value::Null, "0");
        assert!(s.contains("7.18053759982066107095244936117e-1"), "{s}");
        let v: Value = serde_json::from_str(&s).unwrap();
        assert!(v["result"]["rho"].is_number());
    }

    #[test]
    fn csv_layout() {
        let mut r = Report::with_columns(&["k", "b"]);
        r.put("n", 4usize);
        r.row(vec![1usize.into(), Cell::real(0.5f64)]);
        let s = r.to_csv(&Value::Null, "0.1.0");
        assert_eq!(s, "# config: null\n# version: 0.1.0\n# n: 4\nk,b\n1,5e-1\n");
    }
}
