//! Whitespace-delimited column files for external plotting.

use std::io::{self, Write};

use clifft::grid::radial_profile;
use clifft::uncertainty::DecayFit;
use clifft::SampledField;

#[derive(Debug, Clone, PartialEq)]
pub struct PlotFile {
    /// File stem; written as `plots/<name>.dat`.
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl PlotFile {
    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "# {}", self.columns.join(" "))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
            writeln!(w, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Shell-averaged `(‖x‖, ‖f‖_c)` profile. A zero field gives no rows.
pub fn profile(name: &str, f: &SampledField) -> PlotFile {
    let rows = if f.is_zero() {
        Vec::new()
    } else {
        radial_profile(f)
            .into_iter()
            .map(|(r, v)| vec![r, v])
            .collect()
    };
    PlotFile {
        name: name.to_string(),
        columns: vec!["radius", "norm"],
        rows,
    }
}

/// Profile with `log ‖f‖_c` next to the fitted line `log C - p ‖x‖²`.
pub fn decay_overlay(name: &str, f: &SampledField, fit: Option<&DecayFit>) -> PlotFile {
    let mut out = profile(name, f);
    out.columns = vec!["radius", "norm", "log_norm", "fitted_log_norm"];
    for row in &mut out.rows {
        let (r, v) = (row[0], row[1]);
        let fitted = fit.map_or(f64::NAN, |d| d.c.ln() - d.p * r * r);
        row.extend([v.ln(), fitted]);
    }
    out
}
