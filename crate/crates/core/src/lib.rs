//! k-uniform and absolutely maximally entangled qudit graph states built
//! from MDS codes over prime fields.
//!
//! The exact side ([`field`], [`matrix`], [`codes`], [`graph`],
//! [`stabilizer`]) works over GF(p); the dense oracle ([`dense`],
//! [`analysis`]) is generic over the real scalar type.

pub mod analysis;
pub mod codes;
pub mod dense;
pub mod error;
pub mod field;
pub mod graph;
pub mod matrix;
pub mod scalar;
pub mod stabilizer;

pub use codes::{mds_a_matrix, mds_code, singleton_array, Codeword, LinearCode, SingletonArray};
pub use error::{Error, Result};
pub use field::{Fp, PrimeField};
pub use graph::{Adjacency, HierarchySpec, Level};
pub use matrix::MatrixGF;
pub use scalar::Scalar;
pub use stabilizer::{PauliProduct, StabilizerGroupDesc};

/// Double-precision state vector, the default oracle backend.
pub type State = dense::StateVector<f64>;
/// Single-precision state vector.
pub type StateF32 = dense::StateVector<f32>;
pub type Density = dense::ReducedDensity<f64>;
pub type DensityF32 = dense::ReducedDensity<f32>;
pub type RankSpectrum = analysis::RankSpectrum;
