//! Invariants of moment-angle complexes `Z_K` of finite simplicial complexes: exact
//! integral homology, the Hochster decomposition with its cup products, spherical
//! filtrations, and bounds on the Lusternik–Schnirelmann category.

pub mod bounds;
pub mod cache;
pub mod certificate;
pub mod cochain;
pub mod complex;
pub mod cycles;
pub mod error;
pub mod filtration;
pub mod fixtures;
pub mod hmf;
pub mod homology;
pub mod io;
pub mod koszul;
pub mod report;
pub mod smith;
pub mod sphere;
pub mod store;
pub mod tor;
pub mod vertex_set;
pub mod well_behaved;

pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use vertex_set::VertexSet;
