//! Building an atlas by hand: three points on a path, two segment
//! charts glued over a shared edge.
//!
//! Charts carry tree groupoids on their frames, and the single
//! relation pair maps the overlap arrows upward. The result is
//! contractible: one component, trivial fundamental group, and the
//! homology of a point.

use groupoid_atlas::atlas::{validate_atlas, Atlas, Chart, RelationPair};
use groupoid_atlas::fundamental::{path_components, pi1_weak};
use groupoid_atlas::groupoid::tree_groupoid;
use groupoid_atlas::homology::homology;

fn main() {
    let points = vec!["a".to_string(), "b".to_string(), "c".to_string()];
    let left = Chart {
        name: "left".into(),
        frame: vec![0, 1],
        local: tree_groupoid(2).unwrap(),
    };
    let wide = Chart {
        name: "wide".into(),
        frame: vec![0, 1, 2],
        local: tree_groupoid(3).unwrap(),
    };
    // tree arrows are numbered source major, so the two-object tree
    // lists id0, 0->1, 1->0, id1 and the three-object tree puts the
    // arrow x->y at 3x + y
    let pair = RelationPair { lower: 0, upper: 1, arrow_map: vec![0, 1, 3, 4] };
    let atlas = Atlas::new(points, vec![left, wide], vec![pair]).expect("well formed");

    let report = validate_atlas(&atlas);
    println!("valid: {}", report.is_valid());
    for failure in report.failures() {
        println!("  failed: {}", failure.clause);
    }

    let pc = path_components(&atlas);
    println!("components: {}", pc.count());

    let pi1 = pi1_weak(&atlas, 0).expect("connected");
    println!("weak pi1 trivial: {}", pi1.is_trivial_detected());

    let h = homology(&atlas, 3).expect("truncation is positive");
    print!("{h}");
}
