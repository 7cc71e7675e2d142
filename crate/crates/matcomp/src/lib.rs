//! Matroids as relations on subset lattices.
//!
//! This crate models matroids with partitioned ground sets as relations
//! between subset lattices and builds three composition operations on them:
//!
//! * strict composition `∘` — ordinary relational composition, which can
//!   produce the zero relation;
//! * lax composition `•` — the minimal-mismatch relaxation, which never
//!   vanishes on nonzero inputs and carries a numerical type `(k, l)`;
//! * weighted composition `★` — lax composition weighted by `x^k y^l` over a
//!   commutative semiring, interpolating between the other two.
//!
//! On top of the composition engine sit the classical constructions
//! (deletion, contraction, minors, connections, symmetrization), the Tutte
//! polynomial, path functors on directed and bicolored graphs, bounded
//! M-convex relations, and the dominant-morphism/lift machinery that turns
//! the theory's hardest theorems into executable checks.

pub mod compose;
pub mod digraph;
pub mod error;
pub mod ground;
pub mod lift;
pub mod matroid;
pub mod matroid_ops;
pub mod mconvex;
pub mod relation;
pub mod star;

pub use error::{Error, Result};
pub use ground::{GroundSet, Subset};
pub use matroid::{is_matroid, Matroid};
pub use relation::{
    matroid_as_morphism, morphism_as_matroid, BasicRelation, CompositionType, Point,
    SubsetRelation,
};
