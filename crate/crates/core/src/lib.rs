//! Exact enumeration of 2-term silting objects of finite-dimensional
//! algebras given by quivers with relations, together with the poset
//! symmetries induced by anti-automorphisms.

pub mod algebra;
pub mod catalog;
pub mod complex;
pub mod construct;
pub mod decompose;
pub mod enumerate;
pub mod error;
pub mod gabriel;
pub mod hom;
pub mod io;
pub mod linalg;
pub mod pathalg;
pub mod quiver;
pub mod scalar;
pub mod silting;
pub mod symmetry;

pub use algebra::{Algebra, Elem};
pub use error::{Error, Result};
pub use pathalg::{build_algebra, build_algebra_with, BuildOptions};
pub use quiver::{opposite_presentation, Arrow, Presentation, Quiver, Relation};
pub use scalar::{FieldKind, Scalar};
