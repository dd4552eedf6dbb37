//! Laplace-space solution of the triple-porosity model and its
//! single-medium limit.

pub mod laplace;
pub mod linalg;
pub mod params;
pub mod single;

pub use laplace::{
    assemble, characteristic_coefficients, checked_assembly, field_from_assembly,
    field_pressure_laplace, m_terms, modal_coefficients, solve_boundary, wellbore_pressure_laplace,
    BoundarySystem, LaplaceAssembly, MTerms, ModalVector,
};
pub use params::{
    from_dimensionless, to_dimensionless, DimensionlessScaling, PhysicalParams,
    TriplePorosityParams,
};
pub use single::single_medium_pressure_laplace;
