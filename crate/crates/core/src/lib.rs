//! Numerical verification of geodesic-orbit and naturally reductive metrics
//! on compact homogeneous spaces `G/H`.

pub mod builders;
pub mod catalog;
pub mod gocheck;
pub mod liealg;
pub mod natred;
pub mod numerics;
pub mod repmod;

pub use builders::{build_chain, BuildError, EmbeddingChain, SpaceId, Table1Row};
pub use liealg::{HomogeneousSpace, LieAlgebra, LieError, Subalgebra};
pub use numerics::{Matrix, NumericsError, TolerancePolicy, Vector};
