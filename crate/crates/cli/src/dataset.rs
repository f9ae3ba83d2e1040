//! Column-labeled numeric tables with a commented metadata header, a
//! content hash, and an optional JSON mirror.

use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

/// Output unit convention. Paper-literal keeps plain Hz coefficients;
/// angular multiplies frequency-like columns by 2 pi and relabels them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    PaperLiteral,
    Angular,
}

impl Convention {
    pub fn tag(&self) -> &'static str {
        match self {
            Convention::PaperLiteral => "paper-literal",
            Convention::Angular => "angular",
        }
    }
}

pub struct FigureDataset {
    pub name: String,
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
}

pub struct Column {
    pub label: String,
    pub unit: String,
    /// Columns in Hz that the angular convention scales by 2 pi.
    pub frequency_like: bool,
}

impl Column {
    pub fn new(label: &str, unit: &str) -> Self {
        Self {
            label: label.into(),
            unit: unit.into(),
            frequency_like: false,
        }
    }

    pub fn freq(label: &str) -> Self {
        Self {
            label: label.into(),
            unit: "Hz".into(),
            frequency_like: true,
        }
    }
}

impl FigureDataset {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            metadata: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.metadata.push((key.into(), value.to_string()));
        self
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    fn body(&self, convention: Convention) -> String {
        let mut out = String::new();
        let labels: Vec<String> = self
            .columns
            .iter()
            .map(|c| {
                if convention == Convention::Angular && c.frequency_like {
                    format!("{}_rad_per_s", c.label)
                } else if c.unit.is_empty() {
                    c.label.clone()
                } else {
                    format!("{}_{}", c.label, sanitize(&c.unit))
                }
            })
            .collect();
        out.push_str(&labels.join(","));
        out.push('\n');
        let tau = 2.0 * std::f64::consts::PI;
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .zip(self.columns.iter())
                .map(|(v, c)| {
                    let v = if convention == Convention::Angular && c.frequency_like {
                        v * tau
                    } else {
                        *v
                    };
                    format!("{v:.12e}")
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Render the CSV with the commented metadata header.
    pub fn to_csv(&self, convention: Convention, seed: u64) -> String {
        let body = self.body(convention);
        let hash = Sha256::digest(body.as_bytes());
        let mut head = String::new();
        let _ = writeln!(head, "# dataset: {}", self.name);
        let _ = writeln!(head, "# convention: {}", convention.tag());
        let _ = writeln!(head, "# seed: {seed}");
        let _ = writeln!(head, "# phase-rule: phase = coefficient * time (no extra 2*pi)");
        let _ = writeln!(
            head,
            "# constants: e=1.602176634e-19 C, h=6.62607015e-34 J s, hbar=1.054571817e-34 J s, k_B=1.380649e-23 J/K, k_C=8.9875517923e9 N m^2/C^2"
        );
        for (k, v) in &self.metadata {
            let _ = writeln!(head, "# {k}: {v}");
        }
        let _ = writeln!(head, "# sha256: {hash:x}");
        head + &body
    }

    /// Write CSV plus a JSON mirror next to it.
    pub fn write(
        &self,
        dir: &Path,
        convention: Convention,
        seed: u64,
        json_mirror: bool,
    ) -> anyhow::Result<std::path::PathBuf> {
        std::fs::create_dir_all(dir)?;
        let csv_path = dir.join(format!("{}.csv", self.name));
        std::fs::write(&csv_path, self.to_csv(convention, seed))?;
        if json_mirror {
            let json_path = dir.join(format!("{}.json", self.name));
            let mut obj = serde_json::Map::new();
            obj.insert("dataset".into(), self.name.clone().into());
            obj.insert("convention".into(), convention.tag().into());
            obj.insert("seed".into(), seed.into());
            let meta: serde_json::Map<String, serde_json::Value> = self
                .metadata
                .iter()
                .map(|(k, v)| (k.clone(), v.clone().into()))
                .collect();
            obj.insert("metadata".into(), meta.into());
            obj.insert(
                "columns".into(),
                self.columns
                    .iter()
                    .map(|c| serde_json::json!({"label": c.label, "unit": c.unit}))
                    .collect::<Vec<_>>()
                    .into(),
            );
            obj.insert(
                "rows".into(),
                self.rows
                    .iter()
                    .map(|r| serde_json::json!(r))
                    .collect::<Vec<_>>()
                    .into(),
            );
            std::fs::write(&json_path, serde_json::to_string_pretty(&obj)?)?;
        }
        Ok(csv_path)
    }
}

fn sanitize(unit: &str) -> String {
    unit.replace(['/', ' ', '^'], "_")
}
