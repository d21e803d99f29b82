//! Exact invariants of flat G-connections on closed 4-manifolds computed
//! from involutory quasitriangular Hopf G-algebras and G-colored Kirby
//! diagrams.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod builtin;
pub mod cyclo;
pub mod error;
pub mod group;
pub mod invariant;
pub mod kirby;
pub mod linalg;

pub use algebra::{GradedTensor, GradedVector, HopfGAlgebra, IntegralData};
pub use cyclo::CycloScalar;
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupElement, GroupHom, Presentation};
pub use invariant::{evaluate, evaluate_summed, InvariantValue};
pub use kirby::{ColoredDiagram, KirbyDiagram, MoveSpec};
