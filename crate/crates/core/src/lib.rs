//! Projective planes over the ring of double numbers GF(q) x GF(q).
//!
//! The plane has `(q^2+q+1)^2` points and as many lines, `(q+1)^2` points
//! on every line, and a neighbour relation that is not an equivalence
//! relation because the coordinate ring has two maximal ideals. Reducing
//! modulo either ideal maps the plane onto PG(2,q); the [`hom`] module
//! exposes both reductions and how they split neighbourhoods.
//!
//! ```
//! use ringplane::plane::PlaneCtx;
//!
//! let plane = PlaneCtx::new(2).unwrap();
//! assert_eq!(plane.num_points(), 49);
//! let a = plane.point(0);
//! assert_eq!(plane.neighbourhood(a).unwrap().len(), 12);
//! ```

pub mod cli;
pub mod error;
pub mod export;
pub mod gf;
pub mod hom;
pub mod neighbour;
pub mod pg;
pub mod plane;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
pub use gf::FieldCtx;
pub use hom::HomTag;
pub use neighbour::{NeighbourGraph, Relation, RelationKind};
pub use plane::{CoordTriple, LineClass, PlaneConfig, PlaneCtx, PointClass, PointType};
pub use ring::{DoubleRing, RingElem};
