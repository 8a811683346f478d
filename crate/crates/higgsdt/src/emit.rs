//! Table documents and their JSON, CSV and LaTeX renderings.

use std::io::Write;

use anyhow::Result;
use higgsdt_core::algebra::{format_poly, LaurentPoly, VarTable};
use higgsdt_core::dt::HalfPowerValue;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::{json, Map, Number, Value as Json};

use crate::cli::Format;

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "higgsdt/1";

#[derive(Clone, Debug)]
pub enum Cell {
    Null,
    Text(String),
    Bool(bool),
    Int(BigInt),
    Rat(BigRational),
    Float(f64),
    Poly(LaurentPoly),
    /// Ω-style value, the same for every degree.
    Omega(HalfPowerValue),
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v.into())
    }
}

/// One emitted document: parameters, a results table, optional summary.
#[derive(Debug)]
pub struct Document {
    pub command: &'static str,
    pub params: Map<String, Json>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Map<String, Json>,
    pub vars: VarTable,
}

impl Document {
    pub fn new(command: &'static str, vars: VarTable, columns: &[&str]) -> Self {
        Document {
            command,
            params: Map::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Map::new(),
            vars,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Json>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Json => self.write_json(out),
            Format::Csv => self.write_csv(out),
            Format::Latex => self.write_latex(out),
        }
    }

    fn write_json(&self, out: &mut dyn Write) -> Result<()> {
        let results: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Json> =
                    self.columns.iter().zip(row).map(|(c, v)| (c.clone(), json_cell(v, &self.vars))).collect();
                Json::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("schema".into(), SCHEMA.into());
        doc.insert("command".into(), self.command.into());
        doc.insert("params".into(), Json::Object(self.params.clone()));
        doc.insert("results".into(), Json::Array(results));
        for (k, v) in &self.summary {
            doc.insert(k.clone(), v.clone());
        }
        serde_json::to_writer_pretty(&mut *out, &Json::Object(doc))?;
        writeln!(out)?;
        Ok(())
    }

    fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| plain_cell(c, &self.vars)))?;
        }
        w.flush()?;
        Ok(())
    }

    fn write_latex(&self, out: &mut dyn Write) -> Result<()> {
        writeln!(out, "% {} {}", SCHEMA, self.command)?;
        for (k, v) in &self.params {
            writeln!(out, "% {k} = {v}")?;
        }
        writeln!(out, "\\begin{{tabular}}{{{}}}", "l".repeat(self.columns.len().max(1)))?;
        let header: Vec<String> = self.columns.iter().map(|c| format!("\\texttt{{{}}}", latex_escape(c))).collect();
        writeln!(out, "{} \\\\", header.join(" & "))?;
        writeln!(out, "\\hline")?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| latex_cell(c, &self.vars)).collect();
            writeln!(out, "{} \\\\", cells.join(" & "))?;
        }
        writeln!(out, "\\end{{tabular}}")?;
        Ok(())
    }
}

fn big_json(n: &BigInt) -> Json {
    // arbitrary_precision keeps the digits exact
    serde_json::from_str::<Number>(&n.to_string()).map(Json::Number).unwrap_or_else(|_| Json::String(n.to_string()))
}

fn rat_json(r: &BigRational) -> Json {
    if r.is_integer() {
        big_json(&r.to_integer())
    } else {
        Json::String(r.to_string())
    }
}

/// `[[monomial, coeff], …]` in the polynomial's own term order.
pub fn poly_json(p: &LaurentPoly, vars: &VarTable) -> Json {
    Json::Array(p.terms().map(|(m, c)| json!([vars.format_monomial(&m), rat_json(&c)])).collect())
}

fn json_cell(c: &Cell, vars: &VarTable) -> Json {
    match c {
        Cell::Null => Json::Null,
        Cell::Text(s) => Json::String(s.clone()),
        Cell::Bool(b) => Json::Bool(*b),
        Cell::Int(n) => big_json(n),
        Cell::Rat(r) => rat_json(r),
        Cell::Float(x) => Number::from_f64(*x).map(Json::Number).unwrap_or(Json::Null),
        Cell::Poly(p) => poly_json(p, vars),
        Cell::Omega(h) => json!({
            "sign": h.sign(),
            "half_exp": h.half_exp(),
            "body": poly_json(h.body(), vars),
            "degrees": "all",
        }),
    }
}

fn plain_cell(c: &Cell, vars: &VarTable) -> String {
    match c {
        Cell::Null => String::new(),
        Cell::Text(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
        Cell::Int(n) => n.to_string(),
        Cell::Rat(r) => r.to_string(),
        Cell::Float(x) => format!("{x:e}"),
        Cell::Poly(p) => format_poly(p, vars),
        Cell::Omega(h) => h.display(vars),
    }
}

fn latex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '_' | '&' | '%' | '#' | '$' | '{' | '}' => {
                out.push('\\');
                out.push(ch);
            }
            _ => out.push(ch),
        }
    }
    out
}

fn latex_var(name: &str) -> String {
    let split = name.find(|c: char| c.is_ascii_digit());
    match split {
        Some(i) => {
            let (head, idx) = name.split_at(i);
            let head = if head == "a" { "\\alpha" } else { head };
            format!("{head}_{{{idx}}}")
        }
        None => name.to_string(),
    }
}

fn latex_monomial(m: &higgsdt_core::algebra::Monomial, vars: &VarTable) -> String {
    let mut parts = Vec::new();
    for (i, name) in vars.names().iter().enumerate() {
        let e = m.exponent(i);
        if e == 0 {
            continue;
        }
        let v = latex_var(name);
        parts.push(if e == 1 { v } else { format!("{v}^{{{e}}}") });
    }
    parts.join(" ")
}

fn latex_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// Polynomial in math notation without surrounding `$`.
pub fn latex_poly(p: &LaurentPoly, vars: &VarTable) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let mono = latex_monomial(&m, vars);
        if mono.is_empty() {
            s.push_str(&latex_rat(&abs));
        } else if abs.is_one() {
            s.push_str(&mono);
        } else {
            s.push_str(&latex_rat(&abs));
            s.push(' ');
            s.push_str(&mono);
        }
    }
    s
}

fn latex_cell(c: &Cell, vars: &VarTable) -> String {
    match c {
        Cell::Null => "--".into(),
        Cell::Text(s) => latex_escape(s),
        Cell::Bool(b) => b.to_string(),
        Cell::Int(n) => format!("${n}$"),
        Cell::Rat(r) => format!("${}$", latex_rat(r)),
        Cell::Float(x) => format!("${x:.1e}$"),
        Cell::Poly(p) => format!("${}$", latex_poly(p, vars)),
        Cell::Omega(h) => {
            let sign = if h.sign() < 0 { "-" } else { "" };
            let e = h.half_exp();
            let power = if e == 0 {
                String::new()
            } else if e % 2 == 0 {
                if e == 2 { "q".into() } else { format!("q^{{{}}}", e / 2) }
            } else {
                format!("q^{{{e}/2}}")
            };
            let body = h.body();
            if body.is_zero() {
                "$0$".into()
            } else if body.is_one() {
                format!("${sign}{}$", if power.is_empty() { "1".into() } else { power })
            } else {
                format!("${sign}{power}\\left({}\\right)$", latex_poly(body, vars))
            }
        }
    }
}
