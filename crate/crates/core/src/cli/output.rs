use std::io::Write;
use std::path::PathBuf;

use serde_json::json;

use super::args::{Format, OutputArgs};
use super::{CliError, Outcome, OUT_DIR_ENV};

fn render(outcome: &Outcome, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let doc = json!({
                "command": outcome.command,
                "params": outcome.params,
                "results": outcome.results,
                "checks": outcome.checks,
            });
            let mut s = serde_json::to_vec_pretty(&doc).map_err(std::io::Error::other)?;
            s.push(b'\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&outcome.table.header)
                .map_err(std::io::Error::other)?;
            for row in &outcome.table.rows {
                w.write_record(row).map_err(std::io::Error::other)?;
            }
            w.into_inner()
                .map_err(|e| std::io::Error::other(e.to_string()).into())
        }
    }
}

fn destination(outcome: &Outcome, out: &OutputArgs) -> Option<PathBuf> {
    if let Some(p) = &out.output {
        return Some(p.clone());
    }
    let dir = std::env::var_os(OUT_DIR_ENV).filter(|d| !d.is_empty())?;
    Some(PathBuf::from(dir).join(format!("{}.{}", outcome.command, out.format.extension())))
}

/// Writes the outcome to the file named by `--output`, else to
/// `$SL2C_OUT_DIR/<command>.<ext>`, else to stdout. Files are replaced
/// atomically.
pub fn write(outcome: &Outcome, out: &OutputArgs) -> Result<(), CliError> {
    let bytes = render(outcome, out.format)?;
    match destination(outcome, out) {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(&bytes)?;
            stdout.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
                _ => PathBuf::from("."),
            };
            std::fs::create_dir_all(&dir)?;
            let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
            tmp.write_all(&bytes)?;
            tmp.flush()?;
            tmp.persist(&path).map_err(|e| e.error)?;
        }
    }
    Ok(())
}
