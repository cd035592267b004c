use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

use northcott::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    config: &'a Config,
    result: &'a T,
}

pub fn json<T: Serialize>(command: &str, config: &Config, result: &T) -> io::Result<()> {
    let env = Envelope {
        schema: 1,
        command,
        config,
        result,
    };
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &env)?;
    writeln!(out)
}

/// One compact JSON object per line.
pub fn json_line<T: Serialize>(value: &T) -> io::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value)?;
    writeln!(out)
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()
}

pub fn table(header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = io::stdout().lock();
    writeln!(out, "{}", line(header.to_vec()))?;
    for r in rows {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

pub fn rows(format: Format, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    match format {
        Format::Csv => csv(header, rows),
        _ => table(header, rows),
    }
}
