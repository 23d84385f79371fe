//! Random partitions under the Gelfand and Plancherel measures: exact
//! combinatorics, the algebra of central characters, and seeded Monte Carlo
//! checks of limit shapes and gaussian fluctuations.

pub mod algebra;
pub mod asymptotics;
pub mod characters;
pub mod diagram;
pub mod error;
pub mod measures;
pub mod partition;
pub mod sampling;
pub mod series;
pub mod square_roots;
pub mod stats;
pub mod svg;
pub mod transition;
pub mod util;
pub mod verify;

pub use error::{Error, Result};
pub use measures::Measure;
pub use partition::Partition;
