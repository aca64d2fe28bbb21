//! Kernel analysis of the map gluing local chains into nerve chains.
//!
//! A single related pair keeps every chart-level class graph acyclic
//! and the gluing map injective. Closing a tower of one-point charts
//! turns the index graph into a triangle, and the kernel picks up a
//! rank for each independent cycle; the cycle criterion predicts this
//! exactly while every class meets each chart at most once. Collapsing
//! a loop into two flat charts breaks that multiplicity bound, and the
//! criterion stops being exact: the chart graphs stay acyclic while
//! the kernel does not vanish.

use groupoid_atlas::corpus::{chart_tower, corpus, loop_collapse};
use groupoid_atlas::homology::j_map_analysis;

fn report(name: &str, atlas: &groupoid_atlas::atlas::Atlas) {
    let r = j_map_analysis(atlas, 2).expect("the locals are connected");
    println!("{name}:");
    println!("  multiplicity free: {}", r.multiplicity_free);
    for d in &r.dims {
        println!(
            "  dim {}: {} classes, matrix {} x {}, kernel rank {}",
            d.dim,
            d.classes.len(),
            d.matrix.rows(),
            d.matrix.cols(),
            d.kernel_rank,
        );
    }
    println!("  injective: {}", r.injective);
    println!("  all chart graphs acyclic: {}", r.all_acyclic);
    println!("  cycle criterion matches the kernel: {}", r.verdict_matches);
}

fn main() {
    let segment = corpus()
        .into_iter()
        .find(|(name, _)| name == "segment")
        .expect("the shelf has a segment")
        .1;
    report("segment with one pair", &segment);
    report("tower closing to a triangle", &chart_tower());
    report("loop collapsed into flat charts", &loop_collapse());
}
