//! Finite fields, projective spaces and the geometries `X(n, t, q)`,
//! together with explicit isomorphisms between their models and an
//! automorphism counter for small incidence structures.

pub mod autcount;
pub mod coset;
pub mod error;
pub mod fields;
pub mod graph;
pub mod incidence;
pub mod isomaps;
pub mod linalg;
pub mod linrep;
pub mod pointsets;
pub mod projgeom;
pub mod xgeom;

pub use error::{Error, Result};
pub use fields::{parse_field_spec, CompanionAlgebra, Fe, Field, FieldCtx, FieldElement};
pub use incidence::{IncidenceStructure, Label};
pub use isomaps::{verify_map, GeometryMap, MapStatus};
pub use linalg::Matrix;
pub use projgeom::{Budget, Frame, ProjPoint, Subspace};
