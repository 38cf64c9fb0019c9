//! Exact linear algebra over prime fields and exact rational polyhedra.

mod enumerate;
mod field;
mod matrix;
mod polyhedron;
mod rational;
mod subspace;

pub use enumerate::{coefficient_tuples, elements, projective_points, subspace_count, subspaces_between};
pub use field::{NotPrime, PrimeField, DEFAULT_PRIME};
pub use matrix::{quotient_map, quotient_with_section, ExactAlgError, Matrix};
pub use polyhedron::{Bound, Inequality, Interval, System};
pub use rational::{ceil_div, floor_div, int, rat, rational_gcd, Rational};
pub use subspace::{combine, Subspace};
