//! Homology of a single point carrying the group of order two.
//!
//! The strong nerve of a one-point chart with a vertex group is the
//! bar construction on that group, so the homology computed here is
//! group homology: alternating Z/2 and 0 in positive dimensions.

use groupoid_atlas::corpus::group_point;
use groupoid_atlas::homology::{chain_complex, homology_of_chain_complex};
use groupoid_atlas::nerve::strong_nerve;

fn main() {
    let atlas = group_point(2);
    let k = 5;
    let sn = strong_nerve(&atlas, k).expect("within budget");
    println!("cells per dimension: {:?}", sn.complex.counts());

    let cc = chain_complex(&sn.complex).expect("boundaries square to zero");
    for (n, b) in cc.boundaries.iter().enumerate() {
        println!("boundary from dimension {}: {} x {}", n + 1, b.rows(), b.cols());
    }

    let h = homology_of_chain_complex(&cc);
    print!("{h}");
}
