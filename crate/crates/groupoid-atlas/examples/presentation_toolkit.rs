//! Working with finite presentations directly: reduction, budgeted
//! simplification, and abelian invariants.
//!
//! The sample presentation is the Klein bottle group, whose
//! abelianization is Z x Z/2, plus a padded variant that the
//! simplifier shrinks back down.

use groupoid_atlas::algebra::presentation::{cyclic_reduce, free_reduce};
use groupoid_atlas::algebra::{GroupPresentation, TietzeBudget};

fn main() {
    let klein = GroupPresentation::new(
        vec!["a".into(), "b".into()],
        vec![vec![1, 2, 1, -2]],
    );
    println!("klein bottle: {klein}");
    println!("abelianization: {}", klein.abelian_invariants());

    let noisy = vec![1, -1, 2, 1, 1, -1, 2, -2];
    println!(
        "free reduce {:?} -> {:?}, cyclic reduce -> {:?}",
        noisy,
        free_reduce(&noisy),
        cyclic_reduce(&noisy),
    );

    let padded = GroupPresentation::new(
        vec!["a".into(), "b".into(), "c".into(), "d".into()],
        vec![
            vec![3, -1, -2],
            vec![4, -3],
            vec![1, 2, 1, -2, 4, -3],
        ],
    );
    println!("padded: {padded}");
    let slim = padded.simplified(&TietzeBudget::default());
    println!("simplified: {slim}");
    println!("abelianization: {}", slim.abelian_invariants());
    match slim.detected_free_rank() {
        Some(r) => println!("detected free of rank {r}"),
        None => println!("relators remain after simplification"),
    }
}
