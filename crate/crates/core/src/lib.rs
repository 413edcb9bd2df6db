//! Mutually-unbiased-bases (MUB) tomography and the MUB star-product scheme.
//!
//! * [`linalg`]: dense complex matrices and validated state types
//! * [`mub`]: MUB construction, validation, projectors and the MUB-POVM
//! * [`tomography`]: scanning states into tomograms and reconstructing them
//! * [`starprod`]: symbols, kernels, product identities and the Lie structure of MUB projectors
//! * [`qubit`]: qubit closed forms and the SIC-POVM scheme
//! * [`sim`]: finite-shot measurement simulation and the Stern-Gerlach model

pub mod error;
pub mod linalg;
pub mod mub;
pub mod qubit;
pub mod random;
pub mod report;
pub mod sim;
pub mod starprod;
pub mod tomography;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, Tolerances, UnitVector};
pub use mub::{construct_mub, CompositeIndex, MubSet, ProjectorSet};
pub use tomography::Tomogram;
