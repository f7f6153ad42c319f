pub mod error;
pub mod fixtures;
pub mod formats;
pub mod generators;
pub mod graph;
pub mod iso;
pub mod spectral;
pub mod survey;
pub mod tu;

pub use error::{Error, Result};
pub use graph::{ClusteredGraph, Graph};
