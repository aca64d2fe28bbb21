//! Fundamental groups of the dihedral group covered by a rotation
//! and a reflection.
//!
//! The two cyclic subgroups generate the whole group, so the atlas is
//! connected, and the weak fundamental group is free of rank two: the
//! cover behaves like a wedge of two circles.

use groupoid_atlas::algebra::dihedral_3;
use groupoid_atlas::atlas::{from_global_action, RelationMode};
use groupoid_atlas::fundamental::{path_components, pi1_strong, pi1_weak};

fn main() {
    let g = dihedral_3();
    let r = (0..g.order()).find(|&x| g.element_order(x) == 3).unwrap();
    let s = (0..g.order()).find(|&x| g.element_order(x) == 2).unwrap();
    let rotation = g.subgroup_closure(&[r]);
    let reflection = g.subgroup_closure(&[s]);
    let atlas = from_global_action(&g, &[rotation, reflection], RelationMode::Inclusion)
        .expect("the subgroups are closed");

    let pc = path_components(&atlas);
    println!("points: {}, components: {}", atlas.point_count(), pc.count());

    let weak = pi1_weak(&atlas, 0).expect("the atlas is connected");
    println!("weak  pi1 = {weak}");
    match weak.detected_free_rank() {
        Some(r) => println!("weak  pi1 is free of rank {r}"),
        None => println!("weak  pi1 kept relators; abelianization {}", weak.abelian_invariants()),
    }

    let strong = pi1_strong(&atlas, 0).expect("the atlas is connected");
    println!("strong pi1 = {strong}");
    println!("strong abelianization: {}", strong.abelian_invariants());
}
