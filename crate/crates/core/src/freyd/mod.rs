//! The free abelian category on a quiver: pp-pair objects, pp-defined maps,
//! Serre kernels and theory comparison.

mod morphism;
mod object;
mod oracle;
mod theory;

pub use morphism::{check_morphism, check_sequents, AbMorphism, Mode, MorphismCheck};
pub use object::{AbObject, Route};
pub use oracle::{Membership, SerreKernelOracle};
pub use theory::{induced_functor_eval, same_regular_theory_bounded, TheoryVerdict};
