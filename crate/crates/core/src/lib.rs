//! Gyrogroup models, axiom verification, coset machinery and dyadic
//! prenorm metrics.

pub mod coset;
pub mod error;
pub mod gyro;
pub mod laws;
pub mod models;
pub mod prenorm;
pub mod report;
pub mod sample;
pub mod set;

pub use error::{ChainViolation, CosetError, GyroError, PrenormError};
pub use gyro::{gyr_by_formula, Gyrogroup, NormedGyrogroup, Sampled};
pub use laws::{check_axioms, check_identities, check_law, AxiomReport, Law, LawOutcome, Witness};
pub use models::{
    radial_add, Einstein2, Einstein3, EinsteinLaw, EinsteinModel, FiniteTable, MobiusModel, RadialLaw,
    RadialScalar, Velocity,
};
pub use report::{CheckOutcome, Report, Verdict};
pub use sample::{for_each_tuple, SampleSpec};
pub use set::ElemSet;
pub use coset::{
    check_homogeneity, check_partition, homogeneity_translate, is_l_subgyrogroup, is_subgyrogroup, left_cosets,
    same_coset, transport_element, CosetPartition, Region, Subset, SubsetSpec,
};
