//! Atlas rewrites: splitting locals into components, adjoining
//! initial singleton indices, transitive closure, and removal of
//! mutually related index pairs.

use super::{Atlas, AtlasError, AtlasMorphism, Chart, RelationPair, NO_ARROW};
use crate::groupoid::tree_groupoid;

/// Splits every local groupoid into its components. Each new index is
/// a pair of an old index and one component; the returned morphism is
/// the canonical map back, forgetting the component. Any morphism from
/// an atlas with connected locals factors uniquely through it.
pub fn irreducibilize(atlas: &Atlas) -> Result<(Atlas, AtlasMorphism), AtlasError> {
    struct Piece {
        parent: usize,
        chart: Chart,
        arrow_back: Vec<usize>,
        arrow_fwd: Vec<u32>,
        object_set: Vec<usize>,
    }
    let mut pieces: Vec<Piece> = Vec::new();
    let mut pieces_of: Vec<Vec<usize>> = vec![Vec::new(); atlas.chart_count()];
    for (alpha, chart) in atlas.charts().iter().enumerate() {
        for (k, comp) in chart.local.components().into_iter().enumerate() {
            let (local, arrow_back) = chart.local.full_subgroupoid(&comp.objects);
            let mut arrow_fwd = vec![NO_ARROW; chart.local.arrow_count()];
            for (new, &old) in arrow_back.iter().enumerate() {
                arrow_fwd[old] = new as u32;
            }
            let frame: Vec<usize> = comp.objects.iter().map(|&i| chart.frame[i]).collect();
            pieces_of[alpha].push(pieces.len());
            pieces.push(Piece {
                parent: alpha,
                chart: Chart {
                    name: format!("{}#{}", chart.name, k),
                    frame,
                    local,
                },
                arrow_back,
                arrow_fwd,
                object_set: comp.objects,
            });
        }
    }
    let mut pairs = Vec::new();
    for pair in atlas.relation_pairs() {
        let upper_chart = atlas.chart(pair.upper);
        for &pi in &pieces_of[pair.lower] {
            let inside = pieces[pi].object_set.iter().all(|&obj| {
                let g = atlas.chart(pair.lower).frame[obj];
                upper_chart.frame.binary_search(&g).is_ok()
            });
            if !inside {
                continue;
            }
            // the image of a connected piece lies in one upper component
            let seed_global = pieces[pi].chart.frame[0];
            let seed_upper = upper_chart.frame.binary_search(&seed_global).unwrap();
            let qi = *pieces_of[pair.upper]
                .iter()
                .find(|&&q| pieces[q].object_set.binary_search(&seed_upper).is_ok())
                .unwrap();
            let arrow_map: Vec<u32> = pieces[pi]
                .arrow_back
                .iter()
                .map(|&old| {
                    let img = atlas
                        .apply_functor(pair, old)
                        .expect("component inside the overlap");
                    pieces[qi].arrow_fwd[img]
                })
                .collect();
            if arrow_map.iter().any(|&a| a == NO_ARROW) {
                return Err(AtlasError::Invalid(format!(
                    "image of a component of chart {} under ({}, {}) is split",
                    pair.lower, pair.lower, pair.upper
                )));
            }
            pairs.push(RelationPair { lower: pi, upper: qi, arrow_map });
        }
    }
    let morphism = AtlasMorphism {
        point_map: (0..atlas.point_count()).collect(),
        index_map: pieces.iter().map(|p| p.parent).collect(),
        arrow_maps: pieces
            .iter()
            .map(|p| p.arrow_back.iter().map(|&a| a as u32).collect())
            .collect(),
    };
    let charts = pieces.into_iter().map(|p| p.chart).collect();
    let out = Atlas::new(atlas.point_labels().to_vec(), charts, pairs)?;
    Ok((out, morphism))
}

/// Adjoins one singleton index per point, below every index whose
/// frame contains the point. The returned morphism is the inclusion of
/// the original atlas.
pub fn regularize(atlas: &Atlas) -> Result<(Atlas, AtlasMorphism), AtlasError> {
    let base = atlas.chart_count();
    let mut charts = atlas.charts().to_vec();
    let mut pairs = atlas.relation_pairs().to_vec();
    for p in 0..atlas.point_count() {
        charts.push(Chart {
            name: format!("pt_{}", atlas.point_label(p)),
            frame: vec![p],
            local: tree_groupoid(1)?,
        });
        for alpha in atlas.indices_containing(p) {
            let obj = atlas.global_to_local(alpha, p).unwrap();
            let id = atlas.chart(alpha).local.identity_of(obj) as u32;
            pairs.push(RelationPair { lower: base + p, upper: alpha, arrow_map: vec![id] });
        }
    }
    let morphism = AtlasMorphism {
        point_map: (0..atlas.point_count()).collect(),
        index_map: (0..base).collect(),
        arrow_maps: atlas
            .charts()
            .iter()
            .map(|c| (0..c.local.arrow_count() as u32).collect())
            .collect(),
    };
    let out = Atlas::new(atlas.point_labels().to_vec(), charts, pairs)?;
    Ok((out, morphism))
}

/// The retraction of the regularization back onto a good atlas: each
/// singleton index goes to an initial index of its point. None when
/// some point has no initial index in the direct relation.
pub fn regularization_retraction(
    original: &Atlas,
    regularized: &Atlas,
) -> Option<AtlasMorphism> {
    let base = original.chart_count();
    let mut index_map: Vec<usize> = (0..base).collect();
    let mut arrow_maps: Vec<Vec<u32>> = original
        .charts()
        .iter()
        .map(|c| (0..c.local.arrow_count() as u32).collect())
        .collect();
    for p in 0..original.point_count() {
        let phi = original.indices_containing(p);
        let initial = phi
            .iter()
            .copied()
            .find(|&a| phi.iter().all(|&b| original.leq(a, b)))?;
        let obj = original.global_to_local(initial, p).unwrap();
        index_map.push(initial);
        arrow_maps.push(vec![original.chart(initial).local.identity_of(obj) as u32]);
    }
    let _ = regularized;
    Some(AtlasMorphism {
        point_map: (0..original.point_count()).collect(),
        index_map,
        arrow_maps,
    })
}

/// Adds every composite pair of the relation. Composites must agree
/// with stored pairs where both exist, must cover the full overlap of
/// their endpoints, and round trips between mutually related indices
/// must be identities; otherwise the closure is inconsistent.
pub fn transitive_closure(atlas: &Atlas) -> Result<Atlas, AtlasError> {
    let mut pairs: Vec<RelationPair> = atlas.relation_pairs().to_vec();
    loop {
        let mut added = false;
        let snapshot = pairs.clone();
        for ab in &snapshot {
            for bc in &snapshot {
                if bc.lower != ab.upper {
                    continue;
                }
                let composite = |a: usize| -> u32 {
                    match ab.arrow_map[a] {
                        NO_ARROW => NO_ARROW,
                        mid => bc.arrow_map[mid as usize],
                    }
                };
                if ab.lower == bc.upper {
                    let local = &atlas.chart(ab.lower).local;
                    for a in 0..ab.arrow_map.len() {
                        let round = composite(a);
                        if round != NO_ARROW && round as usize != a {
                            return Err(AtlasError::ClosureConflict(format!(
                                "round trip {} -> {} -> {} moves arrow {}",
                                ab.lower, ab.upper, ab.lower, a
                            )));
                        }
                        let _ = local;
                    }
                    continue;
                }
                let existing = pairs
                    .iter()
                    .position(|p| p.lower == ab.lower && p.upper == bc.upper);
                match existing {
                    Some(i) => {
                        for a in 0..ab.arrow_map.len() {
                            let via = composite(a);
                            if via != NO_ARROW && pairs[i].arrow_map[a] != via {
                                return Err(AtlasError::ClosureConflict(format!(
                                    "routes {} -> {} -> {} and {} -> {} disagree at arrow {}",
                                    ab.lower, ab.upper, bc.upper, ab.lower, bc.upper, a
                                )));
                            }
                        }
                    }
                    None => {
                        let lower_chart = atlas.chart(ab.lower);
                        let upper_chart = atlas.chart(bc.upper);
                        let map: Vec<u32> =
                            (0..ab.arrow_map.len()).map(composite).collect();
                        for (a, &img) in map.iter().enumerate() {
                            let s = lower_chart.frame[lower_chart.local.src(a)];
                            let t = lower_chart.frame[lower_chart.local.tgt(a)];
                            let in_overlap = upper_chart.frame.binary_search(&s).is_ok()
                                && upper_chart.frame.binary_search(&t).is_ok();
                            if in_overlap && img == NO_ARROW {
                                return Err(AtlasError::ClosureConflict(format!(
                                    "composite {} -> {} -> {} misses arrow {} of the overlap",
                                    ab.lower, ab.upper, bc.upper, a
                                )));
                            }
                            if !in_overlap && img != NO_ARROW {
                                return Err(AtlasError::ClosureConflict(format!(
                                    "composite {} -> {} -> {} exceeds the overlap at arrow {}",
                                    ab.lower, ab.upper, bc.upper, a
                                )));
                            }
                        }
                        pairs.push(RelationPair {
                            lower: ab.lower,
                            upper: bc.upper,
                            arrow_map: map,
                        });
                        added = true;
                    }
                }
            }
        }
        if !added {
            return Atlas::new(atlas.point_labels().to_vec(), atlas.charts().to_vec(), pairs);
        }
    }
}

#[derive(Clone, Debug)]
pub struct DedupeResult {
    /// The input with its relation transitively closed; the morphism
    /// witnesses live over this atlas.
    pub closed: Atlas,
    /// The closed atlas restricted to one representative per class of
    /// mutually related indices.
    pub deduped: Atlas,
    /// Inclusion of the deduped atlas into the closed one.
    pub into_closed: AtlasMorphism,
    /// Retraction sending every index to its representative.
    pub onto_deduped: AtlasMorphism,
}

/// Collapses classes of mutually related indices to their least
/// member. Requires connected locals. The two returned morphisms
/// compose to the identity on the deduped atlas one way, and to a
/// corestriction of the identity the other way.
pub fn dedupe_paired_indices(atlas: &Atlas) -> Result<DedupeResult, AtlasError> {
    for (i, c) in atlas.charts().iter().enumerate() {
        let parts = c.local.components().len();
        if parts != 1 {
            return Err(AtlasError::NotIrreducible(format!(
                "chart {} ({}) has {} components",
                i, c.name, parts
            )));
        }
    }
    let closed = transitive_closure(atlas)?;
    let n = closed.chart_count();
    let rep: Vec<usize> = (0..n)
        .map(|a| {
            (0..n)
                .find(|&b| closed.leq(a, b) && closed.leq(b, a))
                .unwrap_or(a)
        })
        .collect();
    let reps: Vec<usize> = {
        let mut v: Vec<usize> = rep.clone();
        v.sort_unstable();
        v.dedup();
        v
    };
    let rank = |a: usize| reps.binary_search(&a).unwrap();
    let charts: Vec<Chart> = reps.iter().map(|&a| closed.chart(a).clone()).collect();
    let mut pairs = Vec::new();
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            if i != j {
                if let Some(p) = closed.pair_between(a, b) {
                    pairs.push(RelationPair {
                        lower: i,
                        upper: j,
                        arrow_map: p.arrow_map.clone(),
                    });
                }
            }
        }
    }
    let deduped = Atlas::new(closed.point_labels().to_vec(), charts, pairs)?;
    let into_closed = AtlasMorphism {
        point_map: (0..closed.point_count()).collect(),
        index_map: reps.clone(),
        arrow_maps: reps
            .iter()
            .map(|&a| (0..closed.chart(a).local.arrow_count() as u32).collect())
            .collect(),
    };
    let mut onto_arrow_maps = Vec::with_capacity(n);
    for a in 0..n {
        if rep[a] == a {
            onto_arrow_maps.push((0..closed.chart(a).local.arrow_count() as u32).collect());
        } else {
            let p = closed.pair_between(a, rep[a]).expect("paired indices are related");
            if p.arrow_map.iter().any(|&x| x == NO_ARROW) {
                return Err(AtlasError::NotIrreducible(format!(
                    "structure functor ({}, {}) is not total",
                    a, rep[a]
                )));
            }
            onto_arrow_maps.push(p.arrow_map.clone());
        }
    }
    let onto_deduped = AtlasMorphism {
        point_map: (0..closed.point_count()).collect(),
        index_map: rep.iter().map(|&r| rank(r)).collect(),
        arrow_maps: onto_arrow_maps,
    };
    Ok(DedupeResult { closed, deduped, into_closed, onto_deduped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::dihedral_3;
    use crate::atlas::{
        atlas_properties, compose_morphisms, from_global_action, from_simplicial_complex,
        identity_morphism, is_corestriction, morphisms_equal, validate_atlas, validate_morphism,
        RelationMode,
    };

    fn dihedral_cover() -> Atlas {
        let g = dihedral_3();
        let r = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        let s = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        from_global_action(
            &g,
            &[g.subgroup_closure(&[r]), g.subgroup_closure(&[s])],
            RelationMode::Discrete,
        )
        .unwrap()
    }

    #[test]
    fn components_become_indices() {
        let a = dihedral_cover();
        let (ia, to_a) = irreducibilize(&a).unwrap();
        assert_eq!(ia.chart_count(), 5);
        assert!(validate_atlas(&ia).is_valid());
        assert!(atlas_properties(&ia).irreducible);
        validate_morphism(&ia, &a, &to_a).unwrap();
        // orbit frames: two of size three, three of size two
        let mut sizes: Vec<usize> = ia.charts().iter().map(|c| c.frame.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 2, 2, 3, 3]);
    }

    #[test]
    fn splitting_connected_atlases_changes_nothing() {
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let a = from_simplicial_complex(labels, &[vec![0, 1, 2]]).unwrap();
        let (ia, _) = irreducibilize(&a).unwrap();
        assert_eq!(ia.chart_count(), a.chart_count());
        assert_eq!(ia.relation_pairs().len(), a.relation_pairs().len());
    }

    fn map_onto_single_chart(
        src: &Atlas,
        dst: &Atlas,
        chart: usize,
        point_map: Vec<usize>,
    ) -> AtlasMorphism {
        let c = dst.chart(chart);
        let arrow_maps = src
            .charts()
            .iter()
            .map(|sc| {
                (0..sc.local.arrow_count())
                    .map(|x| {
                        let s = point_map[sc.frame[sc.local.src(x)]];
                        let t = point_map[sc.frame[sc.local.tgt(x)]];
                        let ls = c.frame.iter().position(|&p| p == s).unwrap();
                        let lt = c.frame.iter().position(|&p| p == t).unwrap();
                        let hom = c.local.hom(ls, lt);
                        assert_eq!(hom.len(), 1);
                        hom[0] as u32
                    })
                    .collect()
            })
            .collect();
        AtlasMorphism {
            point_map,
            index_map: vec![chart; src.chart_count()],
            arrow_maps,
        }
    }

    #[test]
    fn factorization_through_component_split() {
        // a morphism from an atlas with connected locals lands inside
        // single orbits, hence lifts uniquely through the split
        let a = dihedral_cover();
        let (ia, to_a) = irreducibilize(&a).unwrap();
        let seg = from_simplicial_complex(vec!["x".into(), "y".into()], &[vec![0, 1]]).unwrap();
        // target the rotation orbit of the group identity inside chart 0
        let rot = 0usize;
        let orbit_points: Vec<usize> = {
            let c = a.chart(rot);
            let comp = c
                .local
                .components()
                .into_iter()
                .find(|k| k.objects.contains(&0))
                .unwrap();
            comp.objects.iter().map(|&i| c.frame[i]).collect()
        };
        let point_map = vec![orbit_points[0], orbit_points[1]];
        let g = map_onto_single_chart(&seg, &a, rot, point_map.clone());
        validate_morphism(&seg, &a, &g).unwrap();
        // the lift picks the component holding the image
        let lift_index = (0..ia.chart_count())
            .find(|&i| to_a.index_map[i] == rot && ia.chart(i).frame.contains(&orbit_points[0]))
            .unwrap();
        let h = map_onto_single_chart(&seg, &ia, lift_index, point_map);
        validate_morphism(&seg, &ia, &h).unwrap();
        assert!(morphisms_equal(&compose_morphisms(&h, &to_a), &g));
    }

    #[test]
    fn regularization_is_good_and_regular() {
        let a = dihedral_cover();
        assert!(!atlas_properties(&a).good);
        let (ra, incl) = regularize(&a).unwrap();
        assert!(validate_atlas(&ra).is_valid());
        let p = atlas_properties(&ra);
        assert!(p.good && p.regular);
        validate_morphism(&a, &ra, &incl).unwrap();
        // the retraction needs the original atlas to be good
        assert!(regularization_retraction(&a, &ra).is_none());
    }

    #[test]
    fn good_atlas_retraction_witnesses() {
        let labels = vec!["a".into(), "b".into()];
        let good = from_simplicial_complex(labels, &[vec![0, 1]]).unwrap();
        let (rg, incl) = regularize(&good).unwrap();
        let retr = regularization_retraction(&good, &rg).unwrap();
        validate_morphism(&rg, &good, &retr).unwrap();
        let round_on_good = compose_morphisms(&incl, &retr);
        assert!(morphisms_equal(&round_on_good, &identity_morphism(&good)));
        let round_on_reg = compose_morphisms(&retr, &incl);
        assert!(is_corestriction(&rg, &rg, &identity_morphism(&rg), &round_on_reg));
    }

    #[test]
    fn closure_adds_composites() {
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let tri = from_simplicial_complex(labels, &[vec![0, 1, 2]]).unwrap();
        // drop the composite pairs from vertices to the top simplex
        let keep: Vec<RelationPair> = tri
            .relation_pairs()
            .iter()
            .filter(|p| {
                !(tri.chart(p.lower).frame.len() == 1 && tri.chart(p.upper).frame.len() == 3)
            })
            .cloned()
            .collect();
        let sparse =
            Atlas::new(tri.point_labels().to_vec(), tri.charts().to_vec(), keep).unwrap();
        let closed = transitive_closure(&sparse).unwrap();
        assert_eq!(closed.relation_pairs().len(), tri.relation_pairs().len());
        assert!(validate_atlas(&closed).is_valid());
    }

    #[test]
    fn paired_indices_collapse() {
        // two copies of the same tree chart, related both ways
        let labels = vec!["a".into(), "b".into()];
        let t = tree_groupoid(2).unwrap();
        let charts = vec![
            Chart { name: "0".into(), frame: vec![0, 1], local: t.clone() },
            Chart { name: "1".into(), frame: vec![0, 1], local: t.clone() },
            Chart { name: "2".into(), frame: vec![0, 1], local: t },
        ];
        let id_map: Vec<u32> = (0..4).collect();
        let pairs = vec![
            RelationPair { lower: 0, upper: 1, arrow_map: id_map.clone() },
            RelationPair { lower: 1, upper: 0, arrow_map: id_map.clone() },
            RelationPair { lower: 1, upper: 2, arrow_map: id_map.clone() },
        ];
        let a = Atlas::new(labels, charts, pairs).unwrap();
        let out = dedupe_paired_indices(&a).unwrap();
        assert_eq!(out.deduped.chart_count(), 2);
        validate_morphism(&out.deduped, &out.closed, &out.into_closed).unwrap();
        validate_morphism(&out.closed, &out.deduped, &out.onto_deduped).unwrap();
        let round_small = compose_morphisms(&out.into_closed, &out.onto_deduped);
        assert!(morphisms_equal(&round_small, &identity_morphism(&out.deduped)));
        let round_big = compose_morphisms(&out.onto_deduped, &out.into_closed);
        assert!(is_corestriction(
            &out.closed,
            &out.closed,
            &round_big,
            &identity_morphism(&out.closed)
        ));
    }

    #[test]
    fn dedupe_requires_connected_locals() {
        let a = dihedral_cover();
        assert!(matches!(
            dedupe_paired_indices(&a),
            Err(AtlasError::NotIrreducible(_))
        ));
    }
}
