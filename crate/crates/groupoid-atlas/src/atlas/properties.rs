//! Order-theoretic predicates of an atlas. All of them read the index
//! relation through its reflexive-transitive closure.

use std::collections::BTreeSet;

use super::Atlas;

#[derive(Clone, Debug)]
pub struct AtlasProperties {
    /// Every point lies in some frame.
    pub covered: bool,
    /// Every local groupoid is connected.
    pub irreducible: bool,
    /// For every point, the set of indices whose frame contains it has
    /// an initial element.
    pub good: bool,
    /// Good, and the local groupoid at each initial index is a single
    /// object with its identity.
    pub regular: bool,
    /// For every frame-contained point set, the set of indices whose
    /// frame contains it has an initial element.
    pub has_infimum: bool,
    /// For every frame-contained point set, every two indices whose
    /// frames contain it have an upper bound among them.
    pub frames_filtered: bool,
    pub witnesses: Vec<String>,
}

/// Every realizable index set `{alpha | s is inside the frame of
/// alpha}`, one representative point set `s` each. These are exactly
/// the nonempty members of the family of per-point index sets closed
/// under pairwise intersection; the representative is the largest
/// point set realizing the member.
pub fn frame_representatives(atlas: &Atlas) -> Vec<(Vec<usize>, Vec<usize>)> {
    let per_point: Vec<BTreeSet<usize>> = (0..atlas.point_count())
        .map(|p| atlas.indices_containing(p).into_iter().collect())
        .collect();
    let mut family: Vec<BTreeSet<usize>> = Vec::new();
    for s in &per_point {
        if !s.is_empty() && !family.contains(s) {
            family.push(s.clone());
        }
    }
    let mut head = 0;
    while head < family.len() {
        let current = family[head].clone();
        for other in per_point.iter() {
            let meet: BTreeSet<usize> = current.intersection(other).copied().collect();
            if !meet.is_empty() && !family.contains(&meet) {
                family.push(meet);
            }
        }
        head += 1;
    }
    family
        .into_iter()
        .map(|indices| {
            let frame: Vec<usize> = (0..atlas.point_count())
                .filter(|&p| indices.is_subset(&per_point[p]))
                .collect();
            (frame, indices.into_iter().collect())
        })
        .collect()
}

fn initial_element(indices: &[usize], leq: &[Vec<bool>]) -> Option<usize> {
    indices
        .iter()
        .copied()
        .find(|&a| indices.iter().all(|&b| leq[a][b]))
}

pub fn atlas_properties(atlas: &Atlas) -> AtlasProperties {
    let leq = atlas.order_closure();
    let mut witnesses = Vec::new();

    let mut covered = true;
    for p in 0..atlas.point_count() {
        if atlas.indices_containing(p).is_empty() {
            covered = false;
            witnesses.push(format!("point {} is uncovered", atlas.point_label(p)));
            break;
        }
    }

    let mut irreducible = true;
    for (i, c) in atlas.charts().iter().enumerate() {
        let parts = c.local.components().len();
        if parts != 1 {
            irreducible = false;
            witnesses.push(format!("chart {} ({}) has {} components", i, c.name, parts));
            break;
        }
    }

    let mut good = covered;
    let mut regular = covered;
    for p in 0..atlas.point_count() {
        let phi = atlas.indices_containing(p);
        match initial_element(&phi, &leq) {
            Some(a) => {
                let local = &atlas.chart(a).local;
                if local.object_count() != 1 || local.arrow_count() != 1 {
                    if regular {
                        witnesses.push(format!(
                            "initial chart of point {} is not a single identity",
                            atlas.point_label(p)
                        ));
                    }
                    regular = false;
                }
            }
            None => {
                if good {
                    witnesses.push(format!(
                        "point {} has no initial chart among {:?}",
                        atlas.point_label(p),
                        phi
                    ));
                }
                good = false;
                regular = false;
            }
        }
    }

    let mut has_infimum = covered;
    let mut frames_filtered = covered;
    for (frame, indices) in frame_representatives(atlas) {
        if initial_element(&indices, &leq).is_none() {
            if has_infimum {
                let pts: Vec<&str> =
                    frame.iter().map(|&p| atlas.point_label(p)).collect();
                witnesses.push(format!(
                    "frame {{{}}} has no initial chart among {:?}",
                    pts.join(" "),
                    indices
                ));
            }
            has_infimum = false;
        }
        let filtered = indices.iter().all(|&a| {
            indices
                .iter()
                .all(|&b| indices.iter().any(|&c| leq[a][c] && leq[b][c]))
        });
        if !filtered {
            if frames_filtered {
                let pts: Vec<&str> =
                    frame.iter().map(|&p| atlas.point_label(p)).collect();
                witnesses.push(format!(
                    "indices over frame {{{}}} are not filtered",
                    pts.join(" ")
                ));
            }
            frames_filtered = false;
        }
    }

    AtlasProperties {
        covered,
        irreducible,
        good,
        regular,
        has_infimum,
        frames_filtered,
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::dihedral_3;
    use crate::atlas::{from_global_action, from_simplicial_complex, RelationMode};

    fn dihedral_cover(mode: RelationMode) -> Atlas {
        let g = dihedral_3();
        let r = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        let s = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        from_global_action(&g, &[g.subgroup_closure(&[r]), g.subgroup_closure(&[s])], mode)
            .unwrap()
    }

    #[test]
    fn discrete_cover_is_not_good() {
        let p = atlas_properties(&dihedral_cover(RelationMode::Discrete));
        assert!(p.covered);
        assert!(!p.irreducible);
        assert!(!p.good);
        assert!(!p.regular);
        assert!(!p.has_infimum);
        assert!(!p.frames_filtered);
    }

    #[test]
    fn meet_closure_gives_an_infimum() {
        let p = atlas_properties(&dihedral_cover(RelationMode::IntersectionClosure));
        assert!(p.covered);
        assert!(p.good);
        assert!(!p.regular, "the initial local is a whole group, not a point");
        assert!(p.has_infimum);
        assert!(!p.frames_filtered, "the two subgroups have no common upper chart");
    }

    #[test]
    fn simplicial_atlases_are_regular() {
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let a =
            from_simplicial_complex(labels, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let p = atlas_properties(&a);
        assert!(p.covered && p.irreducible && p.good && p.regular && p.has_infimum);
        assert!(!p.frames_filtered, "two edges at a vertex have no common upper chart");
    }

    #[test]
    fn frame_representatives_cover_all_intersections() {
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let a =
            from_simplicial_complex(labels, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let reps = frame_representatives(&a);
        // frames: three singletons and three edges
        assert_eq!(reps.len(), 6);
        for (frame, indices) in reps {
            for &p in &frame {
                for &i in &indices {
                    assert!(a.chart(i).frame.binary_search(&p).is_ok());
                }
            }
        }
    }
}
