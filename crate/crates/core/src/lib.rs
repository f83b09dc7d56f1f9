//! Weight-symmetric hypergraph states: construction, local-unitary transforms,
//! geometric measure of entanglement and Mermin-type nonlocality.

pub mod binom;
pub mod dense;
pub mod entanglement;
pub mod error;
pub mod hypergraph;
pub mod nonlocality;
pub mod numeric;
pub mod transforms;

pub use num_complex::Complex64;

pub use dense::{build_dense, product_state_optimize, DenseState, PauliString, ProductOptimum};
pub use entanglement::{geomeasure_closed, geomeasure_oracle, geomeasure_symmetric_numeric, GeoMeasureResult};
pub use error::{Error, Result};
pub use hypergraph::{
    build_symmetric, classify_stabilizer, symmetric_to_dense, HypergraphSpec, StabilizerClass, SymmetricState,
};
pub use nonlocality::{mermin_quantum_value, robustness_value, table1_families, BellReport, RobustnessVariant};
pub use transforms::{ghz_odd_decompose, sqrt_pauli, Branch, Pauli, SingleQubitOp};
