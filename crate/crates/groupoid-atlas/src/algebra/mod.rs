//! Exact integer linear algebra, finite groups, and group presentations.

pub mod group;
pub mod matrix;
pub mod presentation;
pub mod snf;

pub use group::{
    dihedral_3, group_from_permutations, group_from_table, FiniteGroup, GroupError,
    DEFAULT_CLOSURE_CAP,
};
pub use matrix::IntMatrix;
pub use presentation::{render_word, AbelianInvariants, GroupPresentation, TietzeBudget, Word};
pub use snf::{rank, smith_normal_form, SmithDecomposition};
