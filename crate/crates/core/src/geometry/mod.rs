//! Exact polyhedral primitives: affine forms, feasibility, H/V-representations.

mod affine;
mod feasibility;
mod polyhedron;

pub use affine::Affine;
pub use feasibility::{find_point, is_feasible, strict_feasible};
pub use polyhedron::{Polyhedron, VRep};
