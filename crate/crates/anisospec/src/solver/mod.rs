//! Independent numerical oracle: triangulation plus discrete minimization of
//! the anisotropic Rayleigh quotient over piecewise-linear fields vanishing
//! on the boundary.

pub mod convergence;
pub mod fem;
pub mod mesh;
pub mod slices;
pub mod sparse;

pub use convergence::{convergence_study, ConvergenceStudy};
pub use fem::{rayleigh_eval, rayleigh_minimize, DiscreteField, SolverOpts};
pub use mesh::{triangulate, Mesh};
pub use slices::{slice_check, SliceReport};
