//! Output sinks, provenance headers and error-to-exit-code mapping.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use crate::{Emit, GlobalOpts};

#[derive(Debug)]
pub enum CliError {
    /// Invalid input; exit code 2.
    Validation(String),
    /// Failed computation or I/O; exit code 1.
    Compute(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Compute(m) => f.write_str(m),
        }
    }
}

impl From<plustrace::Error> for CliError {
    fn from(e: plustrace::Error) -> Self {
        if e.is_validation() {
            CliError::Validation(e.to_string())
        } else {
            CliError::Compute(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Compute(format!("I/O error: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Compute(format!("serialization error: {e}"))
    }
}

/// Where results go, plus the format and header settings.
pub struct Sink {
    w: Box<dyn Write>,
    emit: Option<Emit>,
    header: bool,
}

impl Sink {
    pub fn open(g: &GlobalOpts) -> Result<Self, CliError> {
        let w: Box<dyn Write> = match &g.output {
            Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
                CliError::Compute(format!("cannot create {}: {e}", p.display()))
            })?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Sink { w, emit: g.emit, header: !g.no_header })
    }

    pub fn emit_or(&self, default: Emit) -> Emit {
        self.emit.unwrap_or(default)
    }

    /// '#' lines naming the tool version, the command and its parameters.
    pub fn provenance(&mut self, command: &str, params: &[(&str, String)]) -> Result<(), CliError> {
        if !self.header {
            return Ok(());
        }
        writeln!(self.w, "# plustrace {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(self.w, "# command: {command}")?;
        for (k, v) in params {
            writeln!(self.w, "# {k}: {v}")?;
        }
        Ok(())
    }

    pub fn line(&mut self, s: &str) -> Result<(), CliError> {
        writeln!(self.w, "{s}")?;
        Ok(())
    }

    pub fn json<T: serde::Serialize>(&mut self, v: &T) -> Result<(), CliError> {
        let mut value = serde_json::to_value(v)?;
        round_floats(&mut value);
        serde_json::to_writer_pretty(&mut self.w, &value)?;
        writeln!(self.w)?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<(), CliError> {
        self.w.flush()?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.flush()
    }
}

/// Rounds every float to 15 significant digits, matching the CSV output.
fn round_floats(v: &mut serde_json::Value) {
    use serde_json::Value;
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            let r: f64 = plustrace::report::fmt_g(x).parse().unwrap_or(x);
            if let Some(num) = serde_json::Number::from_f64(r) {
                *n = num;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}
