//! Small shared helpers: validated output, RFC-4180 CSV assembly.

use anyhow::{Context, Result};
use std::path::{Path, PathBuf};

/// Create the output directory (if needed) and return the path of a file in
/// it.
pub fn output_file(dir: &Path, name: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    Ok(dir.join(name))
}

/// Write a JSON document with a trailing newline.
pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Assemble CSV lines with RFC-4180 CRLF endings and write them.
pub fn write_csv(path: &Path, lines: &[String]) -> Result<()> {
    let mut text = String::with_capacity(lines.iter().map(|l| l.len() + 2).sum());
    for line in lines {
        text.push_str(line);
        text.push_str("\r\n");
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// A usage error: reported and mapped to exit code 2.
pub fn usage_error(msg: String) -> u8 {
    eprintln!("usage error: {msg}");
    2
}
