pub mod einstein;
pub mod mobius;
pub mod radial;
pub mod table;

pub use einstein::{Einstein2, Einstein3, EinsteinModel, Velocity};
pub use mobius::MobiusModel;
pub use radial::{radial_add, EinsteinLaw, RadialLaw, RadialScalar};
pub use table::FiniteTable;
