//! Rendering of reports as JSON, CSV or aligned text.

use clap::ValueEnum;
use serde_json::Value;
use wheelhouse::report::HomologyReport;
use wheelhouse::stability::{ComparisonReport, MultiplicityReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A rendered report: a JSON document and a flat table.
pub struct Table {
    pub title: String,
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

fn opt(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn homology(r: &HomologyReport, title: String) -> Table {
    let rows = r
        .blocks
        .iter()
        .map(|b| {
            let iso = b.isotypic.as_ref().map(|m| m.iter().map(|(p, x)| format!("({p}):{x}")).collect::<Vec<_>>().join(" ")).unwrap_or_default();
            vec![b.part.clone(), b.n.to_string(), b.w.to_string(), b.d.to_string(), b.dim.to_string(), iso, b.untrusted.to_string()]
        })
        .collect();
    Table { title, json: serde_json::to_value(r).expect("report serializes"), header: vec!["part", "n", "w", "d", "dim", "isotypic", "untrusted"], rows }
}

pub fn comparison(r: &ComparisonReport) -> Table {
    let rows = r
        .blocks
        .iter()
        .map(|b| {
            vec![
                opt(b.n),
                opt(b.dim_v),
                b.w.to_string(),
                b.d.to_string(),
                b.p.to_string(),
                b.q.to_string(),
                b.quantity.clone(),
                b.left.to_string(),
                opt(b.right),
                b.in_stable_range.to_string(),
                b.matches.to_string(),
            ]
        })
        .collect();
    Table {
        title: format!("{} {} {}", r.theorem.as_str(), r.operad, if r.passed() { "PASS" } else { "FAIL" }),
        json: serde_json::to_value(r).expect("report serializes"),
        header: vec!["n", "dimV", "w", "d", "p", "q", "quantity", "left", "right", "in_stable_range", "matches"],
        rows,
    }
}

pub fn multiplicity(r: &MultiplicityReport) -> Table {
    let join = |p: &[usize]| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    Table {
        title: format!("{} {} alpha=({}) beta=({})", r.operad, r.wheeling, join(&r.alpha), join(&r.beta)),
        json: serde_json::to_value(r).expect("report serializes"),
        header: vec!["w", "d", "multiplicity"],
        rows: r.blocks.iter().map(|b| vec![b.w.to_string(), b.d.to_string(), b.multiplicity.to_string()]).collect(),
    }
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json renders") + "\n",
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
            }
            Format::Text => {
                let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
                for r in &self.rows {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |cells: &mut dyn Iterator<Item = &str>| {
                    let s: Vec<String> = cells.zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                    s.join("  ").trim_end().to_string() + "\n"
                };
                let mut out = format!("# {}\n", self.title);
                out += &line(&mut self.header.iter().copied());
                for r in &self.rows {
                    out += &line(&mut r.iter().map(|s| s.as_str()));
                }
                out
            }
        }
    }
}
