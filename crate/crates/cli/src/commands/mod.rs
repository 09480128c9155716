pub mod figures;
pub mod libration;
pub mod omega;
pub mod simulate;
pub mod sums;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::CliError;

/// Buffered file at `path`, or the caller's stdout.
pub(crate) fn sink<'a>(path: Option<&Path>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>, CliError> {
    Ok(match path {
        Some(p) => Box::new(create(p)?),
        None => Box::new(stdout),
    })
}

pub(crate) fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    Ok(BufWriter::new(
        File::create(path).map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))?,
    ))
}
