//! Finite global actions and groupoid atlases.
//!
//! A groupoid atlas is a set of points covered by local groupoids whose
//! index set carries a reflexive relation; related charts are glued by
//! structural functors. Global actions (a group with a family of
//! subgroups acting by left multiplication) are the motivating special
//! case. This crate computes the invariants that make sense at desk
//! scale, exactly over the integers:
//!
//! * path components,
//! * weak and strong fundamental groups, as finite presentations with
//!   abelian invariants,
//! * truncated weak and strong nerves, with face data and exports,
//! * integer homology with torsion via Smith normal form,
//! * the comparison map between local and glued chains, with the
//!   cycle criterion for its injectivity.
//!
//! Start with the runnable examples, one per capability:
//!
//! ```text
//! cargo run -p groupoid-atlas --example dihedral_weak_pi1
//! cargo run -p groupoid-atlas --example gl_components
//! cargo run -p groupoid-atlas --example rombitos_homology
//! cargo run -p groupoid-atlas --example one_sphere_nerves
//! cargo run -p groupoid-atlas --example group_homology_z2
//! cargo run -p groupoid-atlas --example jmap_acyclicity
//! cargo run -p groupoid-atlas --example atlas_transforms
//! cargo run -p groupoid-atlas --example presentation_toolkit
//! cargo run -p groupoid-atlas --example explicit_path
//! ```
//!
//! The same pipelines are scriptable through the `gatlas` binary, which
//! reads a small JSON spec file; see the `cli` module.

pub mod algebra;
pub mod atlas;
pub mod cli;
pub mod corpus;
pub mod fundamental;
pub mod groupoid;
pub mod homology;
pub mod nerve;
pub mod simplicial;
pub mod util;
