//! Simplicial and cubical homology over the rationals.

mod grid;
mod rank;
mod simplicial;
mod triangulate;

pub use grid::{grid_oracle, GridPredicate, GridResult};
pub use rank::{column_rank, Column};
pub use simplicial::{betti, SimplicialComplex, SimplicialPair};
pub use triangulate::{triangulate, triangulate_cells};
