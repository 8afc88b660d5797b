//! File formats, bundled example complexes and the command-line front end
//! for [`cubegrowth_core`].

pub mod cli;
pub mod examples;
pub mod format;
pub mod render;

pub use examples::{bundled, bundled_examples};
pub use format::{load_complex, parse_complex, LoadError};
