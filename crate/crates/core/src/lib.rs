//! Affine oriented matroids from rational hyperplane arrangements, their
//! bounded complexes, and checkable certificates that a bounded complex is a
//! PL ball.

pub mod bounded;
pub mod error;
pub mod io;
pub mod om;
pub mod realization;
pub mod report;
pub mod signvec;
pub mod svg;
pub mod topology;

pub use error::{Error, Result};
pub use om::{AxiomReport, CovectorSet, TopePoset, UniformityReport};
pub use realization::{Arrangement, Hyperplane, VectorConfiguration};
pub use signvec::{ElementSet, GroundSet, Sign, SignVector};
