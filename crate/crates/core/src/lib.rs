//! Quasi-free states of fermions and bosons on a finite ground space and the
//! point processes they induce.

pub mod alphadet;
pub mod cli;
pub mod configspace;
pub mod correlation;
pub mod error;
pub mod fock;
pub mod ground;
pub mod io;
pub mod kernels;
pub mod linalg;
pub mod sampler;
pub mod verify;

pub use configspace::{Caps, Configuration, ConfigurationFunction, SymmetricIndicator};
pub use correlation::{CorrelationTable, PointDistribution};
pub use error::{Error, Result};
pub use ground::{GroundSpace, KernelModel, Site, Statistics, Window};
