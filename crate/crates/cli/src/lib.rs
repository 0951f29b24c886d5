//! File formats, JSON views and process exit codes for the `pencil-persist` binary.

pub mod error;
pub mod json;
pub mod matrix_file;

pub use error::CliError;
pub use matrix_file::MatrixFile;
