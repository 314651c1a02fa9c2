//! Polygonal membranes, directional widths and the shape gallery.

pub mod generators;
pub mod membrane;
pub mod width;

pub use membrane::{Membrane, SectionComponents};
pub use width::{
    attainment_check, attainment_multiplicity, chord_width, has_optimal_design,
    section_in_direction, width_profile, TriState, WidthProfile, WitnessStrip, TOL_CLUSTER,
};
