//! One module per batch mode.

pub mod analyze;
pub mod audit;
pub mod formulas;
pub mod ode;
pub mod simulate;
pub mod sweep;

use nslog::field::FieldError;

/// Command failures, split by exit-code class.
#[derive(Debug)]
pub enum CmdError {
    /// Exit code 2.
    Numerical(String),
    /// Exit code 3.
    Io(std::io::Error),
}

impl std::fmt::Display for CmdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CmdError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CmdError::Io(e) => write!(f, "i/o failure: {e}"),
        }
    }
}

impl std::error::Error for CmdError {}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Io(e)
    }
}

impl From<FieldError> for CmdError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::Io(io) => CmdError::Io(io),
            other => CmdError::Numerical(other.to_string()),
        }
    }
}

pub(crate) fn num_err<E: std::fmt::Display>(e: E) -> CmdError {
    CmdError::Numerical(e.to_string())
}

/// Shared helper: build the grid described by the [grid] block.
pub(crate) fn build_grid(block: &crate::config::GridBlock) -> Result<nslog::field::Grid, CmdError> {
    let npts = vec![block.n; block.rank];
    let box_len = vec![block.box_len; block.rank];
    nslog::field::Grid::new(block.rank, &npts, &box_len).map_err(num_err)
}
