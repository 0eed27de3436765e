//! Re-shape result tables into two/three-column plot series.

use std::path::Path;
use wightman::table::{fmt_f64, Table};

pub enum PlotKind {
    Spectrum,
    Sweep,
    Kernel,
}

impl PlotKind {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "spectrum" => Ok(PlotKind::Spectrum),
            "sweep" => Ok(PlotKind::Sweep),
            "kernel" => Ok(PlotKind::Kernel),
            other => Err(format!(
                "unknown plot kind {other:?} (expected spectrum, sweep or kernel)"
            )),
        }
    }
}

/// Read the relevant results table and emit plot-ready columns.
pub fn emit_plotdata(results_dir: &Path, kind: PlotKind) -> Result<String, String> {
    let (file, header, cols): (&str, &str, Vec<&str>) = match kind {
        PlotKind::Spectrum => (
            "spectrum.tsv",
            "# columns: omega re_w im_w",
            vec!["omega", "re_w", "im_w"],
        ),
        PlotKind::Sweep => (
            "edr_sweep.tsv",
            "# columns: t beta_hat abs_err",
            vec!["t", "beta_hat", "abs_err"],
        ),
        PlotKind::Kernel => (
            "kernel.tsv",
            "# columns: dtau re_w im_w",
            vec!["dtau", "re_w", "im_w"],
        ),
    };
    let path = results_dir.join(file);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let table = Table::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let series: Vec<Vec<f64>> = cols
        .iter()
        .map(|name| {
            table
                .column(name)
                .ok_or_else(|| format!("{}: missing column {name}", path.display()))
        })
        .collect::<Result<_, _>>()?;

    let mut out = String::new();
    out.push_str(header);
    out.push('\n');
    for row in 0..series[0].len() {
        let cells: Vec<String> = series.iter().map(|c| fmt_f64(c[row])).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    Ok(out)
}
