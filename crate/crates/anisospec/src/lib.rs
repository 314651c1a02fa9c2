//! Anisotropic fundamental frequencies of planar membranes.
//!
//! The crate models 2D anisotropies (nonnegative, convex, 1-homogeneous
//! functions on the plane), polygonal membranes with holes, and the spectral
//! quantities connecting them: one-dimensional p-Laplacian frequencies,
//! degenerate-anisotropy membrane frequencies via directional widths, the
//! optimal anisotropic constants with their extremizers, and a finite-element
//! Rayleigh-quotient solver used as an independent numerical cross-check.
//!
//! Modules:
//! - [`anisotropy`]: the anisotropy grammar, sup-norms, classification,
//!   dominating degenerate minorants and polar-body geometry.
//! - [`geometry`]: membranes, directional width functions, attainment
//!   predicates and the shape generator gallery.
//! - [`spectra`]: closed-form frequencies and shape inequalities.
//! - [`solver`]: triangulation and discrete Rayleigh-quotient minimization.
//! - [`verify`]: machine-readable verification suites over all of the above.

pub mod anisotropy;
pub mod error;
pub mod geometry;
pub mod io;
pub mod math;
pub mod solver;
pub mod spectra;
pub mod verify;

pub use anisotropy::{Anisotropy, AnisotropyClass, ConvexBodyPoly};
pub use error::Error;
pub use geometry::{Membrane, SectionComponents, TriState, WidthProfile};
pub use solver::{DiscreteField, Mesh, SolverOpts};
pub use spectra::{ExtremizerSet, Method, SpectralResult};
