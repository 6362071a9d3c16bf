//! File formats and commands behind the `injspec` binary.

pub mod check;
mod describe;
pub mod error;
pub mod format;
mod loaded;
pub mod localize;
pub mod sheaf;
pub mod spectrum;

pub use describe::{describe_algebra, subscript};
pub use error::CliError;
pub use loaded::{int_family, Loaded};
