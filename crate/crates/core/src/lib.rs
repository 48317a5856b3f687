//! Coxeter and Artin group machinery built around edge-labeled graphs.
//!
//! Everything about `W_Γ` is exact: the word problem is decided by braid-class
//! search and finite groups are enumerated into tables. Artin-level objects are
//! limited to what can be certified: free reduction, the projection to `W_Γ`,
//! the positive section and replayable braid certificates.

pub mod amalgam;
pub mod artin;
pub mod braid;
pub mod coxeter;
pub mod cube;
pub mod decompose;
pub mod error;
pub mod finite;
pub mod graph;
pub mod parabolic;
pub mod tree;
pub mod verify;

pub use coxeter::{Caps, Coxeter, CoxeterElement, Side};
pub use error::{Error, Result};
pub use graph::{LabeledGraph, Vertex, VertexSet};
