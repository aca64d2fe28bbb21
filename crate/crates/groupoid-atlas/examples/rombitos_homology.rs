//! Two triangles sharing an edge, with only the shared edge's
//! endpoints in both charts.
//!
//! The weak fundamental group is trivial while the strong one
//! abelianizes to Z, so the projection between them is not injective
//! here. The strong nerve carries the homology of a circle, and the
//! projection onto the weak nerve admits no simplicial section.

use groupoid_atlas::corpus::overlapping_triangles;
use groupoid_atlas::fundamental::{p_induced, pi1_strong, pi1_weak};
use groupoid_atlas::homology::homology;
use groupoid_atlas::nerve::{projection_to_weak, section_of_projection, strong_nerve, weak_nerve};

fn main() {
    let atlas = overlapping_triangles();

    let weak = pi1_weak(&atlas, 0).expect("connected");
    let strong = pi1_strong(&atlas, 0).expect("connected");
    println!("weak  pi1 abelianized: {}", weak.abelian_invariants());
    println!("strong pi1 abelianized: {}", strong.abelian_invariants());

    let cmp = p_induced(&atlas, 0).expect("connected");
    println!(
        "projection surjective: {}, isomorphism: {}",
        cmp.surjective_abelianized, cmp.iso_abelianized,
    );

    let h = homology(&atlas, 4).expect("truncation is positive");
    print!("{h}");

    let sn = strong_nerve(&atlas, 2).expect("within budget");
    let wn = weak_nerve(&atlas, 2).expect("within budget");
    let p = projection_to_weak(&sn, &wn).expect("projection is simplicial");
    match section_of_projection(&sn, &wn, &p) {
        Some(_) => println!("the projection has a simplicial section"),
        None => println!("no simplicial section of the projection exists"),
    }
}
