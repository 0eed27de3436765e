//! Columnar plain-text tables.
//!
//! The exchange format is whitespace-separated columns with `#` comment
//! lines. Two header directives are recognized:
//!
//! ```text
//! # units: natural
//! # columns: tau t x y z ut ux uy uz at ax ay az
//! ```
//!
//! Writers always emit both directives; readers require the units tag.

use crate::geometry::{CurvatureComponents, CurveData, FourVector, GeometryError};
use std::fmt::Write as _;

/// Fixed float formatting used by every exporter (17 significant digits keeps
/// round-trips bit-exact and output deterministic).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A parsed columnar table.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub units: Option<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn parse(text: &str) -> Result<Table, String> {
        let mut out = Table::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(u) = rest.strip_prefix("units:") {
                    out.units = Some(u.trim().to_string());
                } else if let Some(c) = rest.strip_prefix("columns:") {
                    out.columns = c.split_whitespace().map(str::to_string).collect();
                }
                continue;
            }
            let row: Result<Vec<f64>, _> = line.split_whitespace().map(str::parse).collect();
            match row {
                Ok(r) => out.rows.push(r),
                Err(e) => return Err(format!("line {}: {e}", lineno + 1)),
            }
        }
        if let Some(w) = out.rows.first().map(Vec::len) {
            if out.rows.iter().any(|r| r.len() != w) {
                return Err("ragged rows".into());
            }
            if !out.columns.is_empty() && out.columns.len() != w {
                return Err(format!(
                    "header names {} columns but rows have {w}",
                    out.columns.len()
                ));
            }
        }
        Ok(out)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

/// Render a table with header directives.
pub fn write_table(units: &str, columns: &[&str], rows: &[Vec<f64>]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# units: {units}");
    let _ = writeln!(s, "# columns: {}", columns.join(" "));
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&v| fmt_f64(v)).collect();
        let _ = writeln!(s, "{}", cells.join(" "));
    }
    s
}

const CURVE_COLUMNS: [&str; 13] = [
    "tau", "t", "x", "y", "z", "ut", "ux", "uy", "uz", "at", "ax", "ay", "az",
];

/// Serialize a curve to the columnar format.
pub fn curve_to_table(curve: &CurveData) -> String {
    let rows: Vec<Vec<f64>> = curve
        .taus()
        .iter()
        .zip(curve.events().iter())
        .zip(curve.velocities().iter().zip(curve.accelerations().iter()))
        .map(|((&tau, ev), (u, a))| {
            let mut row = vec![tau];
            row.extend_from_slice(ev);
            row.extend_from_slice(u);
            row.extend_from_slice(a);
            row
        })
        .collect();
    write_table("natural", &CURVE_COLUMNS, &rows)
}

/// Parse a curve from the columnar format. Requires `# units: natural`.
pub fn curve_from_table(text: &str) -> Result<CurveData, GeometryError> {
    let table = Table::parse(text).map_err(GeometryError::Table)?;
    match table.units.as_deref() {
        Some("natural") => {}
        Some(other) => {
            return Err(GeometryError::Table(format!(
                "unsupported unit system {other:?}; curve tables must be in natural units"
            )))
        }
        None => {
            return Err(GeometryError::Table(
                "missing '# units:' header tag".into(),
            ))
        }
    }
    let width = table.rows.first().map(Vec::len).unwrap_or(0);
    if width != 13 {
        return Err(GeometryError::Table(format!(
            "expected 13 columns (tau, event, velocity, acceleration), got {width}"
        )));
    }
    let mut taus = Vec::new();
    let mut events: Vec<FourVector> = Vec::new();
    let mut us: Vec<FourVector> = Vec::new();
    let mut accs: Vec<FourVector> = Vec::new();
    for r in &table.rows {
        taus.push(r[0]);
        events.push([r[1], r[2], r[3], r[4]]);
        us.push([r[5], r[6], r[7], r[8]]);
        accs.push([r[9], r[10], r[11], r[12]]);
    }
    CurveData::from_samples(taus, events, us, accs, Vec::new(), None)
}

/// Serialize curvature components R_{0i0j}(τ) (the six independent entries).
pub fn curvature_to_table(taus: &[f64], curvature: &[CurvatureComponents]) -> String {
    let cols = [
        "tau", "r0101", "r0102", "r0103", "r0202", "r0203", "r0303",
    ];
    let rows: Vec<Vec<f64>> = taus
        .iter()
        .zip(curvature.iter())
        .map(|(&tau, c)| {
            vec![
                tau,
                c.r_0i0j[0][0],
                c.r_0i0j[0][1],
                c.r_0i0j[0][2],
                c.r_0i0j[1][1],
                c.r_0i0j[1][2],
                c.r_0i0j[2][2],
            ]
        })
        .collect();
    write_table("natural", &cols, &rows)
}

/// Parse tabulated R_{0i0j}(τ); symmetric completion is applied.
pub fn curvature_from_table(text: &str) -> Result<(Vec<f64>, Vec<CurvatureComponents>), GeometryError> {
    let table = Table::parse(text).map_err(GeometryError::Table)?;
    if table.units.as_deref() != Some("natural") {
        return Err(GeometryError::Table(
            "curvature tables must declare '# units: natural'".into(),
        ));
    }
    let width = table.rows.first().map(Vec::len).unwrap_or(0);
    if width != 7 {
        return Err(GeometryError::Table(format!(
            "expected 7 columns (tau + six R_0i0j entries), got {width}"
        )));
    }
    let mut taus = Vec::new();
    let mut comps = Vec::new();
    for r in &table.rows {
        taus.push(r[0]);
        let mut c = CurvatureComponents::default();
        c.r_0i0j[0][0] = r[1];
        c.r_0i0j[0][1] = r[2];
        c.r_0i0j[1][0] = r[2];
        c.r_0i0j[0][2] = r[3];
        c.r_0i0j[2][0] = r[3];
        c.r_0i0j[1][1] = r[4];
        c.r_0i0j[1][2] = r[5];
        c.r_0i0j[2][1] = r[5];
        c.r_0i0j[2][2] = r[6];
        comps.push(c);
    }
    Ok((taus, comps))
}
