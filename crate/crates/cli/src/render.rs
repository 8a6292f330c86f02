//! Report serialization in the three output formats.

use std::io::Write;

use latconv::report::{overall, ReportEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn render(entries: &[ReportEntry], format: Format) -> Result<Vec<u8>, Box<dyn std::error::Error>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(entries)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for e in entries {
                w.serialize(e)?;
            }
            Ok(w.into_inner()?)
        }
        Format::Text => {
            let mut out = Vec::new();
            for e in entries {
                write!(out, "{:<8} {:<13} {}", e.status.to_string().to_uppercase(), e.check, e.inputs)?;
                if let (Some(l), Some(r)) = (&e.lhs, &e.rhs) {
                    write!(out, "  lhs={l} rhs={r}")?;
                }
                if let Some(g) = &e.gap {
                    write!(out, " gap={g}")?;
                }
                writeln!(out)?;
                if let Some(w) = &e.witness {
                    writeln!(out, "         witness: {w}")?;
                }
            }
            writeln!(out, "overall: {} ({} entries)", overall(entries), entries.len())?;
            Ok(out)
        }
    }
}
