//! Field serialization.
//!
//! Binary layout (little-endian): `m: u64`, `R: f64`, `N: u64`, then
//! `N^m · 2^m` coefficients as `f64`, node-major.
//!
//! CSV layout: a `m,R,N` header line and its value line, a header naming the
//! blades (`1,e1,e2,e12`), then one row of `2^m` coefficients per node.

use std::io::{BufRead, BufReader, Read, Write};

use crate::algebra::BladeIndex;
use crate::error::{Error, Result};

use super::{GridSpec, SampledField};

pub fn write_binary<W: Write>(field: &SampledField, mut w: W) -> Result<()> {
    let g = field.grid();
    w.write_all(&(g.dim() as u64).to_le_bytes())?;
    w.write_all(&g.half_width().to_le_bytes())?;
    w.write_all(&(g.points() as u64).to_le_bytes())?;
    for v in field.raw() {
        w.write_all(&v.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_binary<R: Read>(mut r: R) -> Result<SampledField> {
    let mut word = [0u8; 8];
    let mut next = |r: &mut R| -> Result<[u8; 8]> {
        r.read_exact(&mut word)
            .map_err(|e| Error::Format(format!("truncated binary field: {e}")))?;
        Ok(word)
    };
    let m = u64::from_le_bytes(next(&mut r)?) as usize;
    let half_width = f64::from_le_bytes(next(&mut r)?);
    let points = u64::from_le_bytes(next(&mut r)?) as usize;
    let grid = GridSpec::new(m, half_width, points)?;
    let count = grid.node_count() << m;
    let mut data = Vec::with_capacity(count);
    for _ in 0..count {
        data.push(f64::from_le_bytes(next(&mut r)?));
    }
    let mut extra = [0u8; 1];
    if r.read(&mut extra)? != 0 {
        return Err(Error::Format("trailing bytes after binary field".into()));
    }
    SampledField::from_raw(grid, data)
}

pub fn write_csv<W: Write>(field: &SampledField, w: W) -> Result<()> {
    let mut w = std::io::BufWriter::new(w);
    let g = field.grid();
    writeln!(w, "m,R,N")?;
    writeln!(w, "{},{:?},{}", g.dim(), g.half_width(), g.points())?;
    let labels: Vec<String> = (0..field.blades())
        .map(|b| BladeIndex(b as u32).label())
        .collect();
    writeln!(w, "{}", labels.join(","))?;
    for node in 0..field.len() {
        let row: Vec<String> = field
            .coeffs(node)
            .iter()
            .map(|v| format!("{v:?}"))
            .collect();
        writeln!(w, "{}", row.join(","))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> Result<SampledField> {
    let mut lines = BufReader::new(r).lines();
    let mut line = |what: &str| -> Result<String> {
        lines
            .next()
            .ok_or_else(|| Error::Format(format!("missing {what}")))?
            .map_err(Error::from)
    };
    if line("header")?.trim() != "m,R,N" {
        return Err(Error::Format("first line must be `m,R,N`".into()));
    }
    let dims = line("grid line")?;
    let parts: Vec<&str> = dims.trim().split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Format(format!("bad grid line `{dims}`")));
    }
    let bad = |s: &str| Error::Format(format!("bad number `{s}`"));
    let m: usize = parts[0].parse().map_err(|_| bad(parts[0]))?;
    let half_width: f64 = parts[1].parse().map_err(|_| bad(parts[1]))?;
    let points: usize = parts[2].parse().map_err(|_| bad(parts[2]))?;
    let grid = GridSpec::new(m, half_width, points)?;
    let blades = 1usize << m;
    let labels = line("blade header")?;
    if labels.trim().split(',').count() != blades {
        return Err(Error::Format(format!("expected {blades} blade columns")));
    }
    let mut data = Vec::with_capacity(grid.node_count() * blades);
    for node in 0..grid.node_count() {
        let row = line(&format!("row {node}"))?;
        let vals = row
            .trim()
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| bad(s)))
            .collect::<Result<Vec<f64>>>()?;
        if vals.len() != blades {
            return Err(Error::Format(format!(
                "row {node} has {} columns",
                vals.len()
            )));
        }
        data.extend(vals);
    }
    SampledField::from_raw(grid, data)
}
