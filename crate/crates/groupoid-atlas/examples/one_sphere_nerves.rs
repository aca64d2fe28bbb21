//! Weak and strong nerves of a triangle boundary.
//!
//! Three segment charts cover the three edges. The two nerves agree
//! dimension by dimension, and homology sees the circle. The atlas
//! here is read from a spec file, the same format the command line
//! tool takes.

use groupoid_atlas::cli::spec::AtlasSpecFile;
use groupoid_atlas::homology::homology;
use groupoid_atlas::nerve::{strong_nerve, weak_nerve};

fn main() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/specs/one_sphere.json"
    ))
    .expect("the spec file ships with the crate");
    let spec = AtlasSpecFile::parse(&text).expect("the spec parses");
    let atlas = spec.build_atlas().expect("the spec builds");

    let k = 3;
    let wn = weak_nerve(&atlas, k).expect("within budget");
    let sn = strong_nerve(&atlas, k).expect("within budget");
    println!("weak   cells per dimension: {:?}", wn.complex.counts());
    println!("strong cells per dimension: {:?}", sn.complex.counts());
    println!(
        "euler characteristic: weak {}, strong {}",
        wn.complex.euler_characteristic(),
        sn.complex.euler_characteristic(),
    );

    let h = homology(&atlas, k).expect("truncation is positive");
    print!("{h}");
    println!("json: {}", h.to_json());
}
