//! The ten headline checks, one test each, with their time budgets
//! asserted alongside the mathematical content.

use std::time::{Duration, Instant};

use num_bigint::BigInt;

use groupoid_atlas::algebra::{smith_normal_form, AbelianInvariants};
use groupoid_atlas::atlas::{gl_atlas, RelationMode};
use groupoid_atlas::corpus::{
    corpus, dihedral_cover, group_point, one_sphere, overlapping_triangles,
    random_discrete_atlases, random_group_covers, random_inclusion_atlases, random_mixed_atlases,
};
use groupoid_atlas::fundamental::{path_components, pi1_strong, pi1_via_nerve, pi1_weak};
use groupoid_atlas::homology::{
    chain_complex, direct_sum_invariants, homology, j_map_analysis, local_homology_comparison,
};
use groupoid_atlas::nerve::{projection_to_weak, section_of_projection, strong_nerve, weak_nerve};

fn free(rank: usize) -> AbelianInvariants {
    AbelianInvariants { free_rank: rank, torsion: Vec::new() }
}

fn torsion(parts: &[i64]) -> AbelianInvariants {
    AbelianInvariants { free_rank: 0, torsion: parts.iter().map(|&t| BigInt::from(t)).collect() }
}

fn within(start: Instant, bound: Duration, what: &str) {
    let took = start.elapsed();
    assert!(took <= bound, "{what} took {took:?}, over the {bound:?} budget");
    eprintln!("{what}: PASS in {took:?}");
}

#[test]
fn criterion_01_weak_pi1_of_the_dihedral_cover_is_free_of_rank_two() {
    let start = Instant::now();
    let atlas = dihedral_cover(RelationMode::Inclusion);
    let pi1 = pi1_weak(&atlas, 1).expect("the cover is connected");
    assert_eq!(pi1.detected_free_rank(), Some(2), "expected a free group of rank 2, got {pi1}");
    within(start, Duration::from_secs(1), "criterion 01");
}

#[test]
fn criterion_02_component_counts_equal_coset_counts_on_fifty_covers() {
    let start = Instant::now();
    let samples = random_group_covers(20260817, 50);
    assert_eq!(samples.len(), 50);
    for s in &samples {
        let gens: Vec<usize> = s.subgroups.iter().flatten().copied().collect();
        let joint = s.group.subgroup_closure(&gens);
        let expected = s.group.order() / joint.len();
        let got = path_components(&s.atlas).count();
        assert_eq!(got, expected, "{}: {got} components, {expected} cosets", s.name);
    }
    within(start, Duration::from_secs(10), "criterion 02");
}

#[test]
fn criterion_03_elementary_atlas_components_count_the_units() {
    let start = Instant::now();
    for (m, want) in [(2usize, 1usize), (3, 2), (4, 2), (5, 4)] {
        let atlas = gl_atlas(2, m).expect("the candidate grid is small");
        let got = path_components(&atlas).count();
        assert_eq!(got, want, "modulus {m}: {got} components, expected {want}");
    }
    within(start, Duration::from_secs(60), "criterion 03");
}

#[test]
fn criterion_04_shared_edge_triangles_split_the_two_fundamental_groups() {
    let start = Instant::now();
    let atlas = overlapping_triangles();

    let strong = pi1_strong(&atlas, 0).expect("connected");
    assert_eq!(strong.abelian_invariants(), free(1), "strong pi1 should abelianize to Z");
    let weak = pi1_weak(&atlas, 0).expect("connected");
    assert!(weak.is_trivial_detected(), "weak pi1 should reduce to the trivial group");

    let h = homology(&atlas, 4).expect("positive truncation");
    assert_eq!(h.groups[0], free(1), "H_0");
    assert_eq!(h.groups[1], free(1), "H_1");
    assert_eq!(h.groups[2], free(0), "H_2");
    assert_eq!(h.groups[3], free(0), "H_3");

    let sn = strong_nerve(&atlas, 2).expect("within budget");
    let wn = weak_nerve(&atlas, 2).expect("within budget");
    let p = projection_to_weak(&sn, &wn).expect("the projection is simplicial");
    assert!(
        section_of_projection(&sn, &wn, &p).is_none(),
        "the projection admitted a simplicial section",
    );
    within(start, Duration::from_secs(5), "criterion 04");
}

#[test]
fn criterion_05_triangle_boundary_has_circle_homology_and_equal_nerves() {
    let start = Instant::now();
    let atlas = one_sphere();
    let h = homology(&atlas, 3).expect("positive truncation");
    assert_eq!(h.groups[0], free(1), "H_0");
    assert_eq!(h.groups[1], free(1), "H_1");
    assert_eq!(h.groups[2], free(0), "H_2");

    let wn = weak_nerve(&atlas, 3).expect("within budget");
    let sn = strong_nerve(&atlas, 3).expect("within budget");
    assert_eq!(wn.complex.counts(), sn.complex.counts(), "nerve cell counts diverge");
    within(start, Duration::from_secs(5), "criterion 05");
}

#[test]
fn criterion_06_involution_point_computes_group_homology() {
    let start = Instant::now();
    let atlas = group_point(2);
    let h = homology(&atlas, 5).expect("positive truncation");
    assert_eq!(h.groups[1], torsion(&[2]), "H_1");
    assert_eq!(h.groups[2], free(0), "H_2");
    assert_eq!(h.groups[3], torsion(&[2]), "H_3");
    within(start, Duration::from_secs(5), "criterion 06");
}

#[test]
fn criterion_07_the_two_engines_and_homology_agree_across_the_shelf() {
    let start = Instant::now();
    let shelf = corpus();
    assert!(shelf.len() >= 20, "the shelf holds {} atlases, need 20", shelf.len());
    for (name, atlas) in &shelf {
        let pc = path_components(atlas);
        let mut parts = Vec::new();
        for comp in &pc.components {
            let base = comp[0];
            let s = pi1_strong(atlas, base).expect("base in range").abelian_invariants();
            let n = pi1_via_nerve(atlas, base, 2).expect("base in range").abelian_invariants();
            assert_eq!(s, n, "{name}: engines disagree at base {base}");
            parts.push(s);
        }
        let h1 = homology(atlas, 2).expect("positive truncation").groups[1].clone();
        let summed = direct_sum_invariants(&parts);
        assert_eq!(summed, h1, "{name}: abelianized pi1 differs from H_1");
    }
    within(start, Duration::from_secs(60), "criterion 07");
}

#[test]
fn criterion_08_chain_level_identities_hold_on_shelf_and_random_atlases() {
    let start = Instant::now();
    let mut atlases: Vec<_> = corpus().into_iter().map(|(_, a)| a).collect();
    atlases.extend(random_mixed_atlases(8101, 100));
    let mut snf_checked = 0usize;
    for (i, atlas) in atlases.iter().enumerate() {
        let sn = strong_nerve(atlas, 2).expect("within budget");
        sn.complex.verify().unwrap_or_else(|e| panic!("atlas {i}: strong nerve: {e}"));
        let wn = weak_nerve(atlas, 2).expect("within budget");
        wn.complex.verify().unwrap_or_else(|e| panic!("atlas {i}: weak nerve: {e}"));

        let cc = chain_complex(&sn.complex)
            .unwrap_or_else(|e| panic!("atlas {i}: strong boundaries do not square to zero: {e}"));
        chain_complex(&wn.complex)
            .unwrap_or_else(|e| panic!("atlas {i}: weak boundaries do not square to zero: {e}"));

        for b in &cc.boundaries {
            if b.rows() * b.cols() <= 20_000 {
                let s = smith_normal_form(b);
                assert!(s.verify(b), "atlas {i}: smith decomposition fails its identities");
                snf_checked += 1;
            }
        }

        let pc = path_components(atlas);
        let h0 = homology(atlas, 1).expect("positive truncation").groups[0].clone();
        assert_eq!(h0, free(pc.count()), "atlas {i}: H_0 rank differs from component count");
    }
    assert!(snf_checked >= 100, "only {snf_checked} boundary matrices were small enough");
    eprintln!("criterion 08: verified {snf_checked} smith decompositions");
    within(start, Duration::from_secs(120), "criterion 08");
}

#[test]
fn criterion_09_cycle_criterion_matches_kernels_on_inclusion_atlases() {
    let start = Instant::now();
    let atlases = random_inclusion_atlases(4242, 100);
    assert_eq!(atlases.len(), 100);
    for (i, atlas) in atlases.iter().enumerate() {
        let r = j_map_analysis(atlas, 2).expect("locals are connected");
        assert!(r.multiplicity_free, "atlas {i}: a class meets some chart twice");
        assert!(
            r.verdict_matches,
            "atlas {i}: cycle criterion and kernel rank disagree",
        );
    }
    within(start, Duration::from_secs(120), "criterion 09");
}

#[test]
fn criterion_10_unrelated_charts_sum_their_local_homology() {
    let start = Instant::now();
    let atlases = random_discrete_atlases(77, 20);
    assert_eq!(atlases.len(), 20);
    for (i, atlas) in atlases.iter().enumerate() {
        let r = local_homology_comparison(atlas, 4).expect("no related pairs");
        assert!(r.h1_torsion_matches, "atlas {i}: H_1 torsion differs");
        assert!(r.h1_free_surplus.is_some(), "atlas {i}: H_1 does not split as expected");
        for d in &r.higher {
            assert!(d.equal, "atlas {i}: H_{} differs from the local sum", d.dim);
        }
        assert!(r.holds, "atlas {i}: the comparison fails");
    }
    within(start, Duration::from_secs(60), "criterion 10");
}
