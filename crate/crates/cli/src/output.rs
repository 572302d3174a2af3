//! Report files: `report.csv`, `summary.json`, `plots/*.dat` and `bench.json`.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::bench::BenchTable;
use crate::config::RunConfig;
use crate::suite::{Report, Row};

pub const CSV_HEADER: &str = "id,params,value,tolerance,pass";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn write_csv<W: Write>(rows: &[Row], mut w: W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{:e},{},{}",
            csv_field(&r.id),
            csv_field(&r.params),
            r.value,
            csv_field(&r.tolerance),
            r.pass
        )?;
    }
    Ok(())
}

pub fn summary(cfg: &RunConfig, report: &Report) -> Value {
    let gating = report.rows.iter().filter(|r| r.gating).count();
    let passed = report.rows.iter().filter(|r| r.gating && r.pass).count();
    let details: Map<String, Value> = report.details.iter().cloned().collect();
    json!({
        "command": cfg.command.as_str(),
        "config": cfg,
        "rows": report.rows.len(),
        "gating_rows": gating,
        "passed": passed,
        "failed": report.failed_ids(),
        "all_passed": report.all_passed(),
        "errors": report.errors,
        "details": details,
    })
}

fn create(path: &Path) -> io::Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

/// Write every report file into `dir`, creating it if needed.
pub fn write_all(
    dir: &Path,
    cfg: &RunConfig,
    report: &Report,
    bench: Option<&BenchTable>,
) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut csv = create(&dir.join("report.csv"))?;
    write_csv(&report.rows, &mut csv)?;
    csv.flush()?;

    let mut js = create(&dir.join("summary.json"))?;
    serde_json::to_writer_pretty(&mut js, &summary(cfg, report))?;
    writeln!(js)?;
    js.flush()?;

    if !report.plots.is_empty() {
        let plots = dir.join("plots");
        fs::create_dir_all(&plots)?;
        for p in &report.plots {
            let mut w = create(&plots.join(format!("{}.dat", p.name)))?;
            p.write_to(&mut w)?;
            w.flush()?;
        }
    }
    if let Some(table) = bench {
        let mut w = create(&dir.join("bench.json"))?;
        serde_json::to_writer_pretty(&mut w, table)?;
        writeln!(w)?;
        w.flush()?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite::Tol;

    #[test]
    fn csv_has_fixed_columns() {
        let mut r = Report::default();
        r.check("a.b", "m=2;N=8".into(), Ok(1.5e-7), Tol::AtMost(1e-6));
        r.check("c", "x=1,2".into(), Ok(3.0), Tol::AtMost(1.0));
        let mut buf = Vec::new();
        write_csv(&r.rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "a.b,m=2;N=8,1.5e-7,<= 1e-6,true");
        assert_eq!(lines[2], "c,\"x=1,2\",3e0,<= 1e0,false");
    }

    #[test]
    fn summary_counts_and_omits_output_path() {
        let mut r = Report::default();
        r.check("ok", String::new(), Ok(0.0), Tol::AtMost(1.0));
        r.check("bad", String::new(), Ok(2.0), Tol::AtMost(1.0));
        r.info("note", String::new(), Ok(5.0), Tol::AtMost(1.0));
        let s = summary(&RunConfig::default(), &r);
        assert_eq!(s["gating_rows"], 2);
        assert_eq!(s["passed"], 1);
        assert_eq!(s["failed"], json!(["bad"]));
        assert_eq!(s["all_passed"], false);
        assert!(s["config"].get("output").is_none());
    }
}
