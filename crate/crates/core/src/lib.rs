//! Exact, desk-scale checks of the numerical ingredients behind the stable
//! cohomology of spaces of non-singular homogeneous polynomials.

pub mod cli;
pub mod homology;
pub mod linalg;
pub mod vassiliev;
