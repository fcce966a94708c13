//! Report sinks: aligned text, JSON lines, CSV.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    /// One JSON document per line.
    Json,
    Csv,
}

pub struct Sink<W: Write> {
    pub format: Format,
    out: W,
    csv: Option<csv::Writer<Vec<u8>>>,
    /// Rows buffered for column alignment in pretty mode.
    grid: Vec<Vec<String>>,
}

impl<W: Write> Sink<W> {
    pub fn new(format: Format, out: W) -> Self {
        Sink {
            format,
            out,
            csv: None,
            grid: Vec::new(),
        }
    }

    /// A line of free text; pretty mode only.
    pub fn line(&mut self, text: impl AsRef<str>) -> io::Result<()> {
        if self.format == Format::Pretty {
            self.flush_grid()?;
            writeln!(self.out, "{}", text.as_ref())?;
        }
        Ok(())
    }

    /// A table row for pretty mode; columns are aligned when the grid is flushed.
    pub fn row(&mut self, cells: Vec<String>) {
        if self.format == Format::Pretty {
            self.grid.push(cells);
        }
    }

    pub fn json(&mut self, value: &impl Serialize) -> io::Result<()> {
        if self.format == Format::Json {
            let text = serde_json::to_string(value).map_err(io::Error::other)?;
            writeln!(self.out, "{text}")?;
        }
        Ok(())
    }

    /// Writes the header the first time, then the record.
    pub fn csv(&mut self, header: &[&str], record: &[String]) -> io::Result<()> {
        if self.format != Format::Csv {
            return Ok(());
        }
        let w = self.csv.get_or_insert_with(|| {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header).expect("writing to memory");
            w
        });
        w.write_record(record).map_err(io::Error::other)
    }

    fn flush_grid(&mut self) -> io::Result<()> {
        let grid = std::mem::take(&mut self.grid);
        let widths: Vec<usize> = (0..grid.iter().map(Vec::len).max().unwrap_or(0))
            .map(|i| {
                grid.iter()
                    .filter_map(|r| r.get(i))
                    .map(|c| c.chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        for row in grid {
            let mut text = String::new();
            for (i, cell) in row.iter().enumerate() {
                if i + 1 == row.len() {
                    text.push_str(cell);
                } else {
                    text.push_str(&format!("{cell:<w$}  ", w = widths[i]));
                }
            }
            writeln!(self.out, "{}", text.trim_end())?;
        }
        Ok(())
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.flush_grid()?;
        if let Some(w) = self.csv.take() {
            let bytes = w
                .into_inner()
                .map_err(|e| io::Error::other(e.to_string()))?;
            self.out.write_all(&bytes)?;
        }
        self.out.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(format: Format, f: impl FnOnce(&mut Sink<&mut Vec<u8>>)) -> String {
        let mut buf = Vec::new();
        let mut sink = Sink::new(format, &mut buf);
        f(&mut sink);
        sink.finish().unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn pretty_aligns_columns() {
        let text = render(Format::Pretty, |s| {
            s.row(vec!["a".into(), "1/2".into()]);
            s.row(vec!["long".into(), "3".into()]);
            s.line("done").unwrap();
        });
        assert_eq!(text, "a     1/2\nlong  3\ndone\n");
    }

    #[test]
    fn csv_quotes_and_writes_one_header() {
        let text = render(Format::Csv, |s| {
            s.csv(&["k", "v"], &["a,b".into(), "1/2".into()]).unwrap();
            s.csv(&["k", "v"], &["c".into(), "3".into()]).unwrap();
            s.line("ignored").unwrap();
        });
        assert_eq!(text, "k,v\n\"a,b\",1/2\nc,3\n");
    }
}
