//! A shelf of small named atlases plus seeded random families for the
//! heavier test suites. The named shelf keeps one instance of every
//! shape the crate handles: simplicial covers, group covers with and
//! without related indices, one-object vertex groups, towers of
//! indices over a single point, and the general linear family.

use std::collections::BTreeSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{dihedral_3, group_from_permutations, FiniteGroup, DEFAULT_CLOSURE_CAP};
use crate::atlas::{
    from_global_action, from_simplicial_complex, from_single_groupoid, gl_atlas, Atlas, Chart,
    RelationMode, RelationPair, NO_ARROW,
};
use crate::groupoid::{action_groupoid, discrete_groupoid, tree_groupoid, Groupoid};

/// Two solid triangles glued along a shared edge.
pub fn overlapping_triangles() -> Atlas {
    let points = vec!["a".into(), "b".into(), "c".into(), "d".into()];
    let charts = vec![
        Chart { name: "abc".into(), frame: vec![0, 1, 2], local: tree_groupoid(3).unwrap() },
        Chart { name: "abd".into(), frame: vec![0, 1, 3], local: tree_groupoid(3).unwrap() },
    ];
    Atlas::new(points, charts, Vec::new()).unwrap()
}

/// The boundary of a triangle: three segments glued in a cycle.
pub fn one_sphere() -> Atlas {
    complex(3, &[&[0, 1], &[1, 2], &[0, 2]])
}

/// A single point carrying the one-object groupoid with a cyclic
/// vertex group of order `m`.
pub fn group_point(m: usize) -> Atlas {
    let g = FiniteGroup::cyclic(m);
    let local = action_groupoid(&g, 1, |_, x| x).unwrap();
    from_single_groupoid(local, vec!["x".into()]).unwrap()
}

/// The order-six dihedral group covered by its rotation subgroup and
/// one reflection subgroup.
pub fn dihedral_cover(mode: RelationMode) -> Atlas {
    let g = dihedral_3();
    let r = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
    let s = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
    from_global_action(&g, &[g.subgroup_closure(&[r]), g.subgroup_closure(&[s])], mode).unwrap()
}

/// Three one-point charts chained by two related pairs.
pub fn chart_tower() -> Atlas {
    let charts = (0..3)
        .map(|i| Chart { name: format!("c{i}"), frame: vec![0], local: tree_groupoid(1).unwrap() })
        .collect();
    let pairs = vec![
        RelationPair { lower: 0, upper: 1, arrow_map: vec![0] },
        RelationPair { lower: 1, upper: 2, arrow_map: vec![0] },
    ];
    Atlas::new(vec!["x".into()], charts, pairs).unwrap()
}

/// An involution chart whose loop is collapsed by two functors into
/// trivial charts over the same point.
pub fn loop_collapse() -> Atlas {
    let z2 = FiniteGroup::cyclic(2);
    let charts = vec![
        Chart { name: "loop".into(), frame: vec![0], local: action_groupoid(&z2, 1, |_, x| x).unwrap() },
        Chart { name: "flat1".into(), frame: vec![0], local: tree_groupoid(1).unwrap() },
        Chart { name: "flat2".into(), frame: vec![0], local: tree_groupoid(1).unwrap() },
    ];
    let pairs = vec![
        RelationPair { lower: 0, upper: 1, arrow_map: vec![0, 0] },
        RelationPair { lower: 0, upper: 2, arrow_map: vec![0, 0] },
    ];
    Atlas::new(vec!["x".into()], charts, pairs).unwrap()
}

/// Two points carrying independent involution charts.
pub fn involution_pair() -> Atlas {
    let z2 = FiniteGroup::cyclic(2);
    let charts = vec![
        Chart {
            name: "left".into(),
            frame: vec![0],
            local: action_groupoid(&z2, 1, |_, x| x).unwrap(),
        },
        Chart {
            name: "right".into(),
            frame: vec![1],
            local: action_groupoid(&z2, 1, |_, x| x).unwrap(),
        },
    ];
    Atlas::new(vec!["x".into(), "y".into()], charts, Vec::new()).unwrap()
}

fn complex(n: usize, facets: &[&[usize]]) -> Atlas {
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    let facets: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
    from_simplicial_complex(labels, &facets).unwrap()
}

/// Every named atlas in the shelf, keyed by a short stable name.
pub fn corpus() -> Vec<(String, Atlas)> {
    let d3 = dihedral_3();
    let reflections: Vec<usize> = (0..6).filter(|&x| d3.element_order(x) == 2).collect();
    let c6 = FiniteGroup::cyclic(6);
    let list = vec![
        ("rombitos", overlapping_triangles()),
        ("one-sphere", one_sphere()),
        ("filled-triangle", complex(3, &[&[0, 1, 2]])),
        ("segment", complex(2, &[&[0, 1]])),
        ("path-chain", complex(4, &[&[0, 1], &[1, 2], &[2, 3]])),
        ("square-circle", complex(4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]])),
        (
            "complete-graph",
            complex(4, &[&[0, 1], &[0, 2], &[0, 3], &[1, 2], &[1, 3], &[2, 3]]),
        ),
        (
            "tetrahedron-boundary",
            complex(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]),
        ),
        ("wedged-triangles", complex(5, &[&[0, 1, 2], &[2, 3, 4]])),
        ("dihedral-free-cover", dihedral_cover(RelationMode::Inclusion)),
        ("dihedral-meet-cover", dihedral_cover(RelationMode::IntersectionClosure)),
        (
            "dihedral-reflections",
            from_global_action(
                &d3,
                &[
                    d3.subgroup_closure(&[reflections[0]]),
                    d3.subgroup_closure(&[reflections[1]]),
                ],
                RelationMode::Inclusion,
            )
            .unwrap(),
        ),
        (
            "dihedral-whole",
            from_global_action(&d3, &[(0..6).collect()], RelationMode::Inclusion).unwrap(),
        ),
        (
            "cyclic-six-cover",
            from_global_action(
                &c6,
                &[c6.subgroup_closure(&[2]), c6.subgroup_closure(&[3])],
                RelationMode::Inclusion,
            )
            .unwrap(),
        ),
        ("involution-point", group_point(2)),
        ("rotation-point", group_point(3)),
        ("quarter-turn-point", group_point(4)),
        ("involution-pair", involution_pair()),
        ("gl2-z2", gl_atlas(2, 2).unwrap()),
        ("chart-tower", chart_tower()),
        ("loop-collapse", loop_collapse()),
    ];
    list.into_iter().map(|(n, a)| (n.to_string(), a)).collect()
}

/// A sampled group cover: the group, the chosen subgroups, and the
/// atlas of the induced global action.
pub struct GroupCoverSample {
    pub name: String,
    pub group: FiniteGroup,
    pub subgroups: Vec<Vec<usize>>,
    pub atlas: Atlas,
}

/// Seeded covers of groups of order at most 24 by one to three cyclic
/// or two-generated subgroups, under a random relation mode.
pub fn random_group_covers(seed: u64, count: usize) -> Vec<GroupCoverSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let (tag, group) = random_group(&mut rng);
            let k = rng.gen_range(1..=3);
            let subgroups: Vec<Vec<usize>> = (0..k)
                .map(|_| {
                    let gens: Vec<usize> = (0..rng.gen_range(1..=2))
                        .map(|_| rng.gen_range(0..group.order()))
                        .collect();
                    group.subgroup_closure(&gens)
                })
                .collect();
            let mode = random_mode(&mut rng);
            let atlas = from_global_action(&group, &subgroups, mode).unwrap();
            GroupCoverSample { name: format!("cover-{i}-{tag}"), group, subgroups, atlas }
        })
        .collect()
}

/// Seeded atlases whose charts are full subgroupoids of one ambient
/// contractible groupoid and whose functors are the inclusions. Every
/// sample is irreducible and each gluing class meets each chart at
/// most once.
pub fn random_inclusion_atlases(seed: u64, count: usize) -> Vec<Atlas> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_inclusion_atlas(&mut rng)).collect()
}

/// Seeded atlases drawn from all the construction paths: inclusion
/// lattices, group covers, simplicial covers, discrete families, and
/// the general linear family.
pub fn random_mixed_atlases(seed: u64, count: usize) -> Vec<Atlas> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| match i % 5 {
            0 => random_inclusion_atlas(&mut rng),
            1 => random_cover_atlas(&mut rng),
            2 => random_complex_atlas(&mut rng),
            3 => random_discrete_atlas(&mut rng),
            _ => gl_atlas(2, 2).unwrap(),
        })
        .collect()
}

/// Seeded atlases with no related pairs at all, mixing contractible
/// charts, cyclic vertex groups, and discrete charts over shared
/// points.
pub fn random_discrete_atlases(seed: u64, count: usize) -> Vec<Atlas> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_discrete_atlas(&mut rng)).collect()
}

fn random_group(rng: &mut ChaCha8Rng) -> (String, FiniteGroup) {
    match rng.gen_range(0u32..6) {
        0 | 1 => {
            let n = rng.gen_range(2..=24);
            (format!("c{n}"), FiniteGroup::cyclic(n))
        }
        2 => ("d3".into(), dihedral_3()),
        3 => {
            let n = rng.gen_range(4..=12);
            (format!("d{n}"), dihedral(n))
        }
        4 => ("s4".into(), symmetric_4()),
        _ => ("a4".into(), alternating_4()),
    }
}

fn dihedral(n: usize) -> FiniteGroup {
    let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    group_from_permutations(
        n,
        &[("r".to_string(), rotation), ("s".to_string(), reflection)],
        DEFAULT_CLOSURE_CAP,
    )
    .unwrap()
}

fn symmetric_4() -> FiniteGroup {
    group_from_permutations(
        4,
        &[("t".to_string(), vec![1, 0, 2, 3]), ("c".to_string(), vec![1, 2, 3, 0])],
        DEFAULT_CLOSURE_CAP,
    )
    .unwrap()
}

fn alternating_4() -> FiniteGroup {
    group_from_permutations(
        4,
        &[("a".to_string(), vec![1, 2, 0, 3]), ("b".to_string(), vec![0, 2, 3, 1])],
        DEFAULT_CLOSURE_CAP,
    )
    .unwrap()
}

fn random_mode(rng: &mut ChaCha8Rng) -> RelationMode {
    match rng.gen_range(0u32..3) {
        0 => RelationMode::Discrete,
        1 => RelationMode::Inclusion,
        _ => RelationMode::IntersectionClosure,
    }
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    if s.is_empty() {
        s.push(rng.gen_range(0..n));
    }
    s
}

fn cover_all(subsets: &mut [Vec<usize>], points: usize) {
    let covered: BTreeSet<usize> = subsets.iter().flatten().copied().collect();
    let missing: Vec<usize> = (0..points).filter(|p| !covered.contains(p)).collect();
    if let Some(last) = subsets.last_mut() {
        last.extend(missing);
        last.sort_unstable();
        last.dedup();
    }
}

fn random_inclusion_atlas(rng: &mut ChaCha8Rng) -> Atlas {
    let points = rng.gen_range(2..=5);
    let ambient = tree_groupoid(points).unwrap();
    let chart_count = rng.gen_range(2..=4);
    let mut subsets: Vec<Vec<usize>> =
        (0..chart_count).map(|_| random_subset(rng, points)).collect();
    cover_all(&mut subsets, points);
    let built: Vec<(Groupoid, Vec<usize>)> =
        subsets.iter().map(|s| ambient.full_subgroupoid(s)).collect();
    let lookup: Vec<Vec<u32>> = built
        .iter()
        .map(|(_, keep)| {
            let mut inv = vec![NO_ARROW; ambient.arrow_count()];
            for (new, &old) in keep.iter().enumerate() {
                inv[old] = new as u32;
            }
            inv
        })
        .collect();
    let charts: Vec<Chart> = subsets
        .iter()
        .zip(&built)
        .enumerate()
        .map(|(i, (s, (local, _)))| Chart {
            name: format!("u{i}"),
            frame: s.clone(),
            local: local.clone(),
        })
        .collect();
    let mut pairs = Vec::new();
    for i in 0..chart_count {
        for j in 0..chart_count {
            if i == j {
                continue;
            }
            let contained = subsets[i].iter().all(|p| subsets[j].binary_search(p).is_ok());
            if contained && rng.gen_bool(0.75) {
                let arrow_map: Vec<u32> = built[i].1.iter().map(|&old| lookup[j][old]).collect();
                pairs.push(RelationPair { lower: i, upper: j, arrow_map });
            }
        }
    }
    let labels = (0..points).map(|p| format!("p{p}")).collect();
    Atlas::new(labels, charts, pairs).unwrap()
}

fn small_subgroup(rng: &mut ChaCha8Rng, group: &FiniteGroup, cap: usize) -> Vec<usize> {
    for _ in 0..6 {
        let gens: Vec<usize> =
            (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..group.order())).collect();
        let h = group.subgroup_closure(&gens);
        if h.len() <= cap {
            return h;
        }
    }
    group.subgroup_closure(&[])
}

fn random_cover_atlas(rng: &mut ChaCha8Rng) -> Atlas {
    let group = loop {
        let (_, g) = random_group(rng);
        if g.order() <= 12 {
            break g;
        }
    };
    let k = rng.gen_range(1..=2);
    let subgroups: Vec<Vec<usize>> = (0..k).map(|_| small_subgroup(rng, &group, 6)).collect();
    let mode = random_mode(rng);
    from_global_action(&group, &subgroups, mode).unwrap()
}

fn random_complex_atlas(rng: &mut ChaCha8Rng) -> Atlas {
    let points = rng.gen_range(3..=5);
    let facet_count = rng.gen_range(2..=4);
    let mut facets: Vec<Vec<usize>> = (0..facet_count)
        .map(|_| {
            let size = rng.gen_range(1..=3);
            let mut f: Vec<usize> = (0..points).collect();
            f.shuffle(rng);
            f.truncate(size);
            f.sort_unstable();
            f
        })
        .collect();
    cover_all(&mut facets, points);
    let labels = (0..points).map(|p| format!("v{p}")).collect();
    from_simplicial_complex(labels, &facets).unwrap()
}

fn random_discrete_atlas(rng: &mut ChaCha8Rng) -> Atlas {
    let points = rng.gen_range(1..=4);
    let chart_count = rng.gen_range(1..=3);
    let mut subsets: Vec<Vec<usize>> =
        (0..chart_count).map(|_| random_subset(rng, points)).collect();
    cover_all(&mut subsets, points);
    let charts = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let local = match rng.gen_range(0u32..3) {
                0 => tree_groupoid(s.len()).unwrap(),
                1 if s.len() == 1 => {
                    let g = FiniteGroup::cyclic(rng.gen_range(2..=4));
                    action_groupoid(&g, 1, |_, x| x).unwrap()
                }
                1 => tree_groupoid(s.len()).unwrap(),
                _ => discrete_groupoid(s.len()),
            };
            Chart { name: format!("u{i}"), frame: s.clone(), local }
        })
        .collect();
    let labels = (0..points).map(|p| format!("p{p}")).collect();
    Atlas::new(labels, charts, Vec::new()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::validate_atlas;

    fn fingerprint(atlas: &Atlas) -> String {
        format!("{:?}|{:?}|{:?}", atlas.point_labels(), atlas.charts(), atlas.relation_pairs())
    }

    #[test]
    fn the_shelf_is_broad_and_well_formed() {
        let shelf = corpus();
        assert!(shelf.len() >= 20);
        let mut names: Vec<&str> = shelf.iter().map(|(n, _)| n.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), shelf.len());
        for (name, atlas) in &shelf {
            let report = validate_atlas(atlas);
            assert!(report.is_valid(), "{name}: {:?}", report.failures());
            for p in 0..atlas.point_count() {
                assert!(!atlas.indices_containing(p).is_empty(), "{name} leaves {p} uncovered");
            }
        }
    }

    #[test]
    fn group_covers_are_valid_and_reproducible() {
        let a = random_group_covers(7, 12);
        let b = random_group_covers(7, 12);
        assert_eq!(a.len(), 12);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(fingerprint(&x.atlas), fingerprint(&y.atlas));
            assert!(x.group.order() <= 24);
            assert!(!x.subgroups.is_empty());
            assert!(validate_atlas(&x.atlas).is_valid(), "{}", x.name);
        }
        assert_ne!(
            fingerprint(&random_group_covers(8, 3)[2].atlas),
            fingerprint(&random_group_covers(9, 3)[2].atlas),
        );
    }

    #[test]
    fn inclusion_atlases_suit_the_gluing_analysis() {
        let list = random_inclusion_atlases(11, 20);
        for atlas in &list {
            assert!(validate_atlas(atlas).is_valid());
            for c in atlas.charts() {
                assert!(c.local.is_connected());
            }
            for p in atlas.relation_pairs() {
                assert!(p.arrow_map.iter().all(|&a| a != NO_ARROW));
            }
        }
        let again = random_inclusion_atlases(11, 20);
        for (x, y) in list.iter().zip(&again) {
            assert_eq!(fingerprint(x), fingerprint(y));
        }
    }

    #[test]
    fn mixed_and_discrete_families_are_valid() {
        for atlas in random_mixed_atlases(3, 25) {
            assert!(validate_atlas(&atlas).is_valid());
        }
        for atlas in random_discrete_atlases(5, 10) {
            assert!(atlas.relation_pairs().is_empty());
            assert!(validate_atlas(&atlas).is_valid());
        }
    }
}
