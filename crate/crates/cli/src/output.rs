//! Text and `key=value` record output.

use std::fmt::Display;
use std::io::Write;

use crate::Format;

/// Buffered output in either format. Text uses `key: value`, records use
/// `key=value`.
pub struct Out {
    format: Format,
    lines: Vec<String>,
}

impl Out {
    pub fn new(format: Format) -> Self {
        Out { format, lines: Vec::new() }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn field(&mut self, key: &str, value: impl Display) {
        let line = match self.format {
            Format::Text => format!("{key}: {value}"),
            Format::Records => format!("{key}={value}"),
        };
        self.lines.push(line);
    }

    /// A numbered field: `key.i=value` in records, an indented list in text.
    pub fn indexed(&mut self, key: &str, i: usize, value: impl Display) {
        let line = match self.format {
            Format::Text => format!("  {i:>3}. {value}"),
            Format::Records => format!("{key}.{i}={value}"),
        };
        self.lines.push(line);
    }

    pub fn raw(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn flush(&mut self) {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        for line in self.lines.drain(..) {
            // A closed pipe is not worth reporting.
            if writeln!(lock, "{line}").is_err() {
                return;
            }
        }
    }
}
