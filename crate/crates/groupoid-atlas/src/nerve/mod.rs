//! The two nerves of an atlas: the weak nerve of point tuples and the
//! strong nerve of arrow chains, plus the simplicial maps connecting
//! them.

mod maps;
mod strong;
mod weak;

pub use maps::{
    induced_strong_map, induced_weak_map, projection_to_weak, push_ref, section_of_projection,
    verify_simplicial_map, NerveMap,
};
pub use strong::{strong_nerve, strong_nerve_raw, strong_nerve_with_budget, StrongNerve};
pub use weak::{weak_nerve, weak_nerve_with_budget, WeakNerve};

/// Cap on the number of simplices examined per dimension before a
/// computation refuses to continue.
pub const DEFAULT_DIM_BUDGET: usize = 1_000_000;
