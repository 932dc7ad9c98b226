//! Rendering of reports as text, versioned JSON, or CSV.

use serde::Serialize;

use crate::CliResult;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: &'static str,
    command: &'static str,
    #[serde(flatten)]
    body: &'a T,
}

pub trait Report: Serialize + Sized {
    const COMMAND: &'static str;

    fn text(&self) -> String;

    fn csv_header(&self) -> Vec<&'static str>;

    fn csv_rows(&self) -> Vec<Vec<String>>;

    fn render(&self, fmt: Format) -> CliResult<String> {
        match fmt {
            Format::Text => Ok(self.text()),
            Format::Json => {
                let env = Envelope { schema_version: SCHEMA_VERSION, command: Self::COMMAND, body: self };
                let mut s = serde_json::to_string_pretty(&env).map_err(std::io::Error::other)?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(self.csv_header()).map_err(std::io::Error::other)?;
                for row in self.csv_rows() {
                    w.write_record(&row).map_err(std::io::Error::other)?;
                }
                let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
        }
    }
}

/// Invariant factors in one CSV cell.
pub fn join_factors(fs: &[String]) -> String {
    fs.join(";")
}
