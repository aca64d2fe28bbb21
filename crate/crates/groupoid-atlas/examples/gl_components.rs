//! Component counts of the elementary-subgroup atlases over Z/m.
//!
//! The component count equals the order of the unit group of Z/m,
//! detected here purely by gluing orbits across the charts.

use groupoid_atlas::atlas::gl_atlas;
use groupoid_atlas::fundamental::path_components;

fn main() {
    for m in 2..=5 {
        let atlas = gl_atlas(2, m).expect("the candidate grid is small");
        let pc = path_components(&atlas);
        println!(
            "gl(2, Z/{m}): {} points, {} charts, {} components",
            atlas.point_count(),
            atlas.chart_count(),
            pc.count(),
        );
    }
}
