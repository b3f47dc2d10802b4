pub mod simulate;
pub mod solve;
pub mod surface;
pub mod verify;

use std::io::Write;

use serde::Serialize;

use crate::error::{CliError, CliResult};

/// Write one JSON object as a line of `out`.
pub(crate) fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> CliResult<()> {
    let line = serde_json::to_string(value).expect("report types serialize");
    writeln!(out, "{line}").map_err(|e| CliError::io("<stdout>", e))
}
