//! Exact computations for weight-three Calabi–Yau type Hodge structures.
//!
//! The crate builds the horizontal families attached to cubic potentials,
//! tests Hodge–Riemann positivity, classifies nilpotent degenerations,
//! computes Hodge numbers of cominuscule representations, and verifies the
//! 27-lines combinatorics behind the Cartan cubic. Every computation is exact.

pub mod cubic_family;
pub mod exactnum;
pub mod hodge_riemann;
pub mod hodgestar;
pub mod invariant_cubics;
pub mod lmhs;
pub mod rootdata;
pub mod sampling;
pub mod symplectic;
