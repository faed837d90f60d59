//! Step-graphon density computations for two-coloring problems: exact and
//! floating-point homomorphism densities, monochromatic densities, common
//! neighborhood distributions, inequality verification, and a numerical
//! search for extremal instances.

pub mod commonness;
pub mod density;
pub mod error;
pub mod graph;
pub mod graphon;
pub mod neighborhood;
pub mod optimize;
pub mod scalar;

pub use error::{Error, LemmaViolation, Result};
pub use graph::Graph;
pub use graphon::StepGraphon;
pub use scalar::{Backend, Rat, Scalar};
