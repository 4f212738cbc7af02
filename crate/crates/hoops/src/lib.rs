//! Computations in groups of loops.
//!
//! A based loop traces a closed curve and composes by concatenation;
//! identifying immediately retraced segments makes these composition
//! classes a group. The crate makes that group computable for exact
//! piecewise-linear curves: loops decompose over their self-intersection
//! arrangement into free generators and a word, group identities decide
//! which words die in every holonomy representation of a given structure
//! group, and connections can be synthesized to realize prescribed
//! holonomies on the generators.
//!
//! The `pathology` module builds the smooth curves that separate this
//! picture from the differentiable one: a loop with trivial abelian
//! holonomy that no amount of retracing removes.

pub mod gauge;
pub mod geom;
pub mod pathology;
pub mod synth;
pub mod words;
