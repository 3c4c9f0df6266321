//! Exact symbolic toolkit for the two-parameter quantum matrix algebras:
//! R-matrices and antisymmetrizer tensors over Q(r,s), the RTT-presented
//! algebras, quantum determinants, Casimir elements, Gauss generators, and
//! mechanical verification of their identities.

pub mod fun;
pub mod laurent;
pub mod ncpoly;
pub mod perm;
pub mod rewrite;
pub mod report;
pub mod rmatrix;
pub mod scalar;
pub mod tensor;
pub mod urs;
