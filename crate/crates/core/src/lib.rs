//! Exact computations for cyclic quotient singularities, weighted blow-ups,
//! Du Val classification, truncated local algebras and weighted projective
//! hypersurfaces.

pub mod cli;
pub mod cyclo;
pub mod duval;
pub mod linalg;
pub mod locdef;
pub mod poly;
pub mod wblow;
pub mod wps;
