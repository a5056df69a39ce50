use std::fmt::Write as _;

use serde_json::{json, Map, Value};

/// Result rows of one run plus the material only JSON output carries.
#[derive(Debug, Default)]
pub struct Table {
    /// Lines emitted as `# ` comments above the CSV header.
    pub preamble: Vec<String>,
    pub header: Vec<String>,
    /// Numeric cells (empty when missing) and the `flags` cell.
    pub rows: Vec<(Vec<Option<f64>>, String)>,
    pub histograms: Vec<Value>,
    pub models: Vec<Value>,
    pub any_failed: bool,
    pub numerical_failure: bool,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Self {
            header,
            ..Self::default()
        }
    }

    pub fn push(&mut self, cells: Vec<Option<f64>>, flags: String) {
        debug_assert_eq!(cells.len() + 1, self.header.len());
        self.rows.push((cells, flags));
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for line in &self.preamble {
            let _ = writeln!(out, "# {line}");
        }
        let _ = writeln!(out, "{}", self.header.join(","));
        for (cells, flags) in &self.rows {
            for c in cells {
                if let Some(v) = c {
                    let _ = write!(out, "{v}");
                }
                out.push(',');
            }
            let _ = writeln!(out, "{flags}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|(cells, flags)| {
                let mut m = Map::new();
                for (k, c) in self.header.iter().zip(cells) {
                    m.insert(k.clone(), c.map_or(Value::Null, Value::from));
                }
                m.insert("flags".into(), Value::from(flags.as_str()));
                Value::Object(m)
            })
            .collect();
        let doc = json!({
            "preamble": self.preamble,
            "columns": self.header,
            "rows": rows,
            "analytic": self.models,
            "simulations": self.histograms,
        });
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }
}
