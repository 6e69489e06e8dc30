//! Exact computations for pencils of quadrics in projective space over
//! cyclotomic fields: Segre symbols, degree-4 del Pezzo threefolds, finite
//! monomial group actions, and the Picard lattice of quartic del Pezzo surfaces.

pub mod algebra;
pub mod checks;
pub mod fixtures;
pub mod groups;
pub mod lattice;
pub mod pencil;
pub mod threefold;
