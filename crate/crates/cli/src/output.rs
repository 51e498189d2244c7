use std::fs::File;
use std::io::{self, BufWriter, Write};

use anyhow::Context;
use serde::Serialize;

use crate::Common;

pub fn sink(c: &Common) -> anyhow::Result<Box<dyn Write>> {
    Ok(match &c.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn json<T: Serialize>(c: &Common, value: &T) -> anyhow::Result<()> {
    let mut w = sink(c)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Header plus rows of already formatted cells.
pub fn csv(c: &Common, header: &[String], rows: &[Vec<String>]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(sink(c)?);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn num(x: f64) -> String {
    format!("{x:.15e}")
}
