//! Normal forms of an atlas: splitting locals into connected pieces,
//! adjoining singleton charts, closing the relation, and merging
//! mutually related indices.
//!
//! Each step returns a morphism witness, checked here against the
//! validator, and the property flags show what each step buys.

use groupoid_atlas::algebra::dihedral_3;
use groupoid_atlas::atlas::{
    atlas_properties, dedupe_paired_indices, from_global_action, irreducibilize, regularize,
    transitive_closure, validate_atlas, validate_morphism, Atlas, RelationMode,
};

fn describe(name: &str, atlas: &Atlas) {
    let p = atlas_properties(atlas);
    println!(
        "{name}: {} charts, irreducible {}, good {}, regular {}",
        atlas.chart_count(),
        p.irreducible,
        p.good,
        p.regular,
    );
}

fn main() {
    let g = dihedral_3();
    let whole = (0..g.order()).collect::<Vec<_>>();
    let rotation = g.subgroup_closure(&[1]);
    let atlas = from_global_action(&g, &[whole, rotation], RelationMode::Inclusion)
        .expect("the subgroups are closed");
    describe("cover by the whole group and a rotation", &atlas);

    let (irr, split) = irreducibilize(&atlas).expect("splitting is always possible");
    validate_morphism(&irr, &atlas, &split).expect("the splitting morphism checks out");
    describe("after splitting locals", &irr);

    let (reg, embed) = regularize(&irr).expect("adjoining singletons is always possible");
    validate_morphism(&irr, &reg, &embed).expect("the inclusion checks out");
    describe("after adjoining singleton charts", &reg);

    let closed = transitive_closure(&reg).expect("the relation closes consistently");
    println!("closed relation: {} pairs", closed.relation_pairs().len());

    let dedupe = dedupe_paired_indices(&closed).expect("classes merge consistently");
    validate_morphism(&dedupe.deduped, &dedupe.closed, &dedupe.into_closed)
        .expect("the inclusion checks out");
    describe("after merging mutually related indices", &dedupe.deduped);

    let report = validate_atlas(&dedupe.deduped);
    println!("final atlas valid: {}", report.is_valid());
}
