use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

/// Rows projected from a result for `table` and `csv` output.
#[derive(Debug, Clone, Default)]
pub struct Grid {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Grid {
    pub fn new<I, S>(header: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Grid { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows.push(row.into_iter().map(|c| c.to_string()).collect());
    }
}

#[derive(Debug, Serialize)]
pub struct Envelope {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub findings: Vec<String>,
}

pub struct Sink {
    out: Box<dyn Write>,
    format: Format,
}

impl Sink {
    pub fn open(path: Option<&Path>, format: Format) -> io::Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Sink { out, format })
    }

    pub fn format(&self) -> Format {
        self.format
    }

    /// One JSON value on its own line.
    pub fn line<T: Serialize>(&mut self, value: &T) -> io::Result<()> {
        serde_json::to_writer(&mut self.out, value)?;
        writeln!(self.out)
    }

    pub fn envelope(&mut self, env: &Envelope, grid: &Grid) -> io::Result<()> {
        for f in &env.findings {
            eprintln!("finding: {f}");
        }
        match self.format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut self.out, env)?;
                writeln!(self.out)?;
            }
            Format::Table => self.table(grid)?,
            Format::Csv => self.csv(grid)?,
        }
        self.out.flush()
    }

    pub fn table(&mut self, grid: &Grid) -> io::Result<()> {
        let cols = grid.header.len();
        let mut width: Vec<usize> = grid.header.iter().map(|h| h.chars().count()).collect();
        for row in &grid.rows {
            for (i, cell) in row.iter().enumerate().take(cols) {
                width[i] = width[i].max(cell.chars().count());
            }
        }
        let render = |cells: &[String]| -> String {
            cells
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{c:<w$}", w = width[i]))
                .collect::<Vec<_>>()
                .join(" | ")
                .trim_end()
                .to_string()
        };
        writeln!(self.out, "{}", render(&grid.header))?;
        let rule: Vec<String> = width.iter().map(|&w| "-".repeat(w)).collect();
        writeln!(self.out, "{}", rule.join("-+-"))?;
        for row in &grid.rows {
            writeln!(self.out, "{}", render(row))?;
        }
        Ok(())
    }

    pub fn csv(&mut self, grid: &Grid) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(&mut self.out);
        w.write_record(&grid.header)?;
        for row in &grid.rows {
            w.write_record(row)?;
        }
        w.flush()
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }
}
