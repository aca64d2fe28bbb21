//! Path components and fundamental groups of an atlas.
//!
//! Three engines compute a fundamental group presentation. The strong
//! one glues local arrows into global classes and presents the vertex
//! group of the resulting groupoid. The weak one is the edge-path
//! group of the tuple complex. The third reads generators and
//! relations off any 2-truncated simplicial set, so it applies to
//! either nerve and cross-checks the other two.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::presentation::{free_reduce, inverse_word, Word};
use crate::algebra::{
    smith_normal_form, AbelianInvariants, GroupPresentation, IntMatrix, TietzeBudget,
};
use crate::atlas::{atlas_properties, Atlas, AtlasError, NO_ARROW};
use crate::nerve::strong_nerve;
use crate::simplicial::{SimplexRef, SimplicialSetTrunc};
use crate::util::UnionFind;

/// The partition of the points by connectivity through local arrows.
#[derive(Clone, Debug)]
pub struct PathComponents {
    /// Point to component id.
    pub assignment: Vec<usize>,
    /// Sorted points of each component, ordered by least point.
    pub components: Vec<Vec<usize>>,
}

impl PathComponents {
    pub fn count(&self) -> usize {
        self.components.len()
    }
}

pub fn path_components(atlas: &Atlas) -> PathComponents {
    let mut uf = UnionFind::new(atlas.point_count());
    for chart in atlas.charts() {
        let local = &chart.local;
        for a in 0..local.arrow_count() {
            uf.union(chart.frame[local.src(a)], chart.frame[local.tgt(a)]);
        }
    }
    let components = uf.blocks();
    let mut assignment = vec![0; atlas.point_count()];
    for (i, comp) in components.iter().enumerate() {
        for &p in comp {
            assignment[p] = i;
        }
    }
    PathComponents { assignment, components }
}

/// Local arrows glued along every structure functor.
#[derive(Clone, Debug)]
pub struct GlobalArrows {
    /// Per chart, per arrow, the class id.
    pub class_of: Vec<Vec<usize>>,
    /// Least member `(chart, arrow)` of each class.
    pub reps: Vec<(usize, usize)>,
    /// Whether any member of the class is an identity arrow.
    pub is_identity_class: Vec<bool>,
    /// Global source and target point of each class.
    pub endpoints: Vec<(usize, usize)>,
}

impl GlobalArrows {
    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    pub fn label(&self, atlas: &Atlas, class: usize) -> String {
        let (chart, arrow) = self.reps[class];
        let c = atlas.chart(chart);
        format!("{}: {}", c.name, c.local.label(arrow))
    }
}

pub fn global_arrows(atlas: &Atlas) -> GlobalArrows {
    let mut offsets = Vec::with_capacity(atlas.chart_count());
    let mut total = 0usize;
    for chart in atlas.charts() {
        offsets.push(total);
        total += chart.local.arrow_count();
    }
    let mut uf = UnionFind::new(total);
    for pair in atlas.relation_pairs() {
        for (a, &img) in pair.arrow_map.iter().enumerate() {
            if img != NO_ARROW {
                uf.union(offsets[pair.lower] + a, offsets[pair.upper] + img as usize);
            }
        }
    }
    let blocks = uf.blocks();
    let locate = |id: usize| {
        let chart = offsets.partition_point(|&o| o <= id) - 1;
        (chart, id - offsets[chart])
    };
    let mut class_of: Vec<Vec<usize>> =
        atlas.charts().iter().map(|c| vec![0; c.local.arrow_count()]).collect();
    let mut reps = Vec::with_capacity(blocks.len());
    let mut is_identity_class = Vec::with_capacity(blocks.len());
    let mut endpoints = Vec::with_capacity(blocks.len());
    for (cls, block) in blocks.iter().enumerate() {
        let mut identity = false;
        for &id in block {
            let (chart, arrow) = locate(id);
            class_of[chart][arrow] = cls;
            identity |= atlas.chart(chart).local.is_identity(arrow);
        }
        let (chart, arrow) = locate(block[0]);
        let local = &atlas.chart(chart).local;
        reps.push((chart, arrow));
        is_identity_class.push(identity);
        endpoints.push((
            atlas.local_to_global(chart, local.src(arrow)),
            atlas.local_to_global(chart, local.tgt(arrow)),
        ));
    }
    GlobalArrows { class_of, reps, is_identity_class, endpoints }
}

fn check_base(atlas: &Atlas, base: usize) -> Result<(), AtlasError> {
    if base >= atlas.point_count() {
        return Err(AtlasError::BasePointNotFound(format!(
            "point {base} of {}",
            atlas.point_count()
        )));
    }
    Ok(())
}

struct StrongPresentationParts {
    presentation: GroupPresentation,
    /// Classes acting as generators, in generator order.
    generator_classes: Vec<usize>,
    arrows: GlobalArrows,
}

/// Presentation of the vertex group at `base` of the groupoid of
/// global arrow classes. When `tree` is given it must map every
/// non-base point of the component to a class joining it to its
/// parent, and those classes are used as the spanning tree. Otherwise
/// a breadth-first tree is grown.
fn strong_presentation_parts(
    atlas: &Atlas,
    base: usize,
    tree: Option<&BTreeMap<usize, usize>>,
) -> Result<StrongPresentationParts, AtlasError> {
    check_base(atlas, base)?;
    let arrows = global_arrows(atlas);
    let classes = arrows.class_count();

    let mut visited = vec![false; atlas.point_count()];
    let mut tree_class = vec![false; classes];
    visited[base] = true;
    match tree {
        Some(pref) => {
            for (&child, &cls) in pref {
                visited[child] = true;
                tree_class[cls] = true;
            }
        }
        None => {
            let mut adjacency: Vec<Vec<(usize, usize)>> =
                vec![Vec::new(); atlas.point_count()];
            for cls in 0..classes {
                let (s, t) = arrows.endpoints[cls];
                adjacency[s].push((t, cls));
                if t != s {
                    adjacency[t].push((s, cls));
                }
            }
            for row in &mut adjacency {
                row.sort_unstable();
            }
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(base);
            while let Some(x) = queue.pop_front() {
                for &(y, cls) in &adjacency[x] {
                    if visited[y] {
                        continue;
                    }
                    visited[y] = true;
                    tree_class[cls] = true;
                    queue.push_back(y);
                }
            }
        }
    }

    let mut generator_classes = Vec::new();
    let mut gen_of_class: Vec<Option<usize>> = vec![None; classes];
    for cls in 0..classes {
        let (s, _) = arrows.endpoints[cls];
        if visited[s] && !tree_class[cls] && !arrows.is_identity_class[cls] {
            gen_of_class[cls] = Some(generator_classes.len());
            generator_classes.push(cls);
        }
    }
    let word_of = |cls: usize| -> Word {
        match gen_of_class[cls] {
            Some(g) => vec![(g + 1) as i32],
            None => Vec::new(),
        }
    };

    let mut relators: BTreeSet<Word> = BTreeSet::new();
    for (ci, chart) in atlas.charts().iter().enumerate() {
        let local = &chart.local;
        for y in 0..local.object_count() {
            if !visited[atlas.local_to_global(ci, y)] {
                continue;
            }
            for &g in local.arrows_into(y) {
                for &h in local.arrows_from(y) {
                    let gh = local
                        .compose(h as usize, g as usize)
                        .expect("arrows meeting at an object compose");
                    let mut w = word_of(arrows.class_of[ci][g as usize]);
                    w.extend(word_of(arrows.class_of[ci][h as usize]));
                    w.extend(inverse_word(&word_of(arrows.class_of[ci][gh])));
                    let w = free_reduce(&w);
                    if !w.is_empty() {
                        relators.insert(w);
                    }
                }
            }
        }
    }

    let names =
        generator_classes.iter().map(|&cls| arrows.label(atlas, cls)).collect::<Vec<_>>();
    let presentation = GroupPresentation::new(names, relators.into_iter().collect());
    Ok(StrongPresentationParts { presentation, generator_classes, arrows })
}

/// The fundamental group presented from global arrow classes, Tietze
/// reduced.
pub fn pi1_strong(atlas: &Atlas, base: usize) -> Result<GroupPresentation, AtlasError> {
    pi1_strong_with_budget(atlas, base, &TietzeBudget::default())
}

/// Same presentation, simplified under the given budget.
pub fn pi1_strong_with_budget(
    atlas: &Atlas,
    base: usize,
    budget: &TietzeBudget,
) -> Result<GroupPresentation, AtlasError> {
    let parts = strong_presentation_parts(atlas, base, None)?;
    Ok(parts.presentation.simplified(budget))
}

/// Unordered edges and triangles of point tuples inside single
/// components, the 2-skeleton the weak group is read from.
struct WeakSkeleton {
    edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), usize>,
    triangles: Vec<[usize; 3]>,
    adjacency: Vec<Vec<usize>>,
}

fn weak_skeleton(atlas: &Atlas) -> WeakSkeleton {
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut triangles: BTreeSet<[usize; 3]> = BTreeSet::new();
    for chart in atlas.charts() {
        for comp in chart.local.components() {
            let pts: Vec<usize> = comp.objects.iter().map(|&o| chart.frame[o]).collect();
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    edges.insert((pts[i].min(pts[j]), pts[i].max(pts[j])));
                    for k in j + 1..pts.len() {
                        let mut t = [pts[i], pts[j], pts[k]];
                        t.sort_unstable();
                        triangles.insert(t);
                    }
                }
            }
        }
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    let edge_index = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); atlas.point_count()];
    for &(x, y) in &edges {
        adjacency[x].push(y);
        adjacency[y].push(x);
    }
    WeakSkeleton { edges, edge_index, triangles: triangles.into_iter().collect(), adjacency }
}

struct WeakPresentationParts {
    presentation: GroupPresentation,
    /// The spanning tree, child point to parent point.
    tree_parent: BTreeMap<usize, usize>,
    /// Edge id to generator id, None on tree edges.
    gen_of_edge: Vec<Option<usize>>,
    skeleton: WeakSkeleton,
}

fn weak_presentation_parts(
    atlas: &Atlas,
    base: usize,
) -> Result<WeakPresentationParts, AtlasError> {
    check_base(atlas, base)?;
    let skeleton = weak_skeleton(atlas);
    let mut visited = vec![false; atlas.point_count()];
    let mut tree_edge = vec![false; skeleton.edges.len()];
    let mut tree_parent = BTreeMap::new();
    let mut queue = std::collections::VecDeque::new();
    visited[base] = true;
    queue.push_back(base);
    while let Some(x) = queue.pop_front() {
        for &y in &skeleton.adjacency[x] {
            if visited[y] {
                continue;
            }
            visited[y] = true;
            tree_edge[skeleton.edge_index[&(x.min(y), x.max(y))]] = true;
            tree_parent.insert(y, x);
            queue.push_back(y);
        }
    }
    let mut gen_of_edge: Vec<Option<usize>> = vec![None; skeleton.edges.len()];
    let mut names = Vec::new();
    for (i, &(x, y)) in skeleton.edges.iter().enumerate() {
        if visited[x] && !tree_edge[i] {
            gen_of_edge[i] = Some(names.len());
            names.push(format!("{}-{}", atlas.point_label(x), atlas.point_label(y)));
        }
    }
    let word_of = |s: usize, t: usize| -> Word {
        let e = skeleton.edge_index[&(s.min(t), s.max(t))];
        match gen_of_edge[e] {
            None => Vec::new(),
            Some(g) => {
                if s < t {
                    vec![(g + 1) as i32]
                } else {
                    vec![-((g + 1) as i32)]
                }
            }
        }
    };
    let mut relators: BTreeSet<Word> = BTreeSet::new();
    for &[x, y, z] in &skeleton.triangles {
        if !visited[x] {
            continue;
        }
        let mut w = word_of(x, y);
        w.extend(word_of(y, z));
        w.extend(word_of(z, x));
        let w = free_reduce(&w);
        if !w.is_empty() {
            relators.insert(w);
        }
    }
    let presentation = GroupPresentation::new(names, relators.into_iter().collect());
    Ok(WeakPresentationParts { presentation, tree_parent, gen_of_edge, skeleton })
}

/// The edge-path group of the tuple complex, Tietze reduced.
pub fn pi1_weak(atlas: &Atlas, base: usize) -> Result<GroupPresentation, AtlasError> {
    pi1_weak_with_budget(atlas, base, &TietzeBudget::default())
}

/// Same presentation, simplified under the given budget.
pub fn pi1_weak_with_budget(
    atlas: &Atlas,
    base: usize,
    budget: &TietzeBudget,
) -> Result<GroupPresentation, AtlasError> {
    let parts = weak_presentation_parts(atlas, base)?;
    Ok(parts.presentation.simplified(budget))
}

/// Reads a fundamental group presentation off a 2-truncated simplicial
/// set at the given vertex cell.
pub fn pi1_of_complex(
    complex: &SimplicialSetTrunc,
    base_vertex: usize,
) -> Result<GroupPresentation, AtlasError> {
    if complex.k < 2 {
        return Err(AtlasError::Invalid(
            "a fundamental group needs at least the 2-truncation".into(),
        ));
    }
    if base_vertex >= complex.cells[0].len() {
        return Err(AtlasError::BasePointNotFound(format!(
            "vertex {base_vertex} of {}",
            complex.cells[0].len()
        )));
    }
    let edge_ends = |idx: usize| -> (usize, usize) {
        let faces = &complex.cells[1][idx].faces;
        (faces[1].core_idx, faces[0].core_idx)
    };
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); complex.cells[0].len()];
    for e in 0..complex.cells[1].len() {
        let (s, t) = edge_ends(e);
        adjacency[s].push((t, e));
        if t != s {
            adjacency[t].push((s, e));
        }
    }
    for row in &mut adjacency {
        row.sort_unstable();
    }
    let mut visited = vec![false; complex.cells[0].len()];
    let mut tree_edge = vec![false; complex.cells[1].len()];
    let mut queue = std::collections::VecDeque::new();
    visited[base_vertex] = true;
    queue.push_back(base_vertex);
    while let Some(x) = queue.pop_front() {
        for &(y, e) in &adjacency[x] {
            if visited[y] {
                continue;
            }
            visited[y] = true;
            tree_edge[e] = true;
            queue.push_back(y);
        }
    }
    let mut gen_of_edge: Vec<Option<usize>> = vec![None; complex.cells[1].len()];
    let mut names = Vec::new();
    for e in 0..complex.cells[1].len() {
        let (s, _) = edge_ends(e);
        if visited[s] && !tree_edge[e] {
            gen_of_edge[e] = Some(names.len());
            names.push(complex.cells[1][e].label.clone());
        }
    }
    let word_of = |r: &SimplexRef| -> Word {
        if r.is_degenerate() {
            return Vec::new();
        }
        match gen_of_edge[r.core_idx] {
            Some(g) => vec![(g + 1) as i32],
            None => Vec::new(),
        }
    };
    let mut relators: BTreeSet<Word> = BTreeSet::new();
    for cell in &complex.cells[2] {
        let start = match &cell.faces[2] {
            r if r.is_degenerate() => r.core_idx,
            r => edge_ends(r.core_idx).0,
        };
        if !visited[start] {
            continue;
        }
        let mut w = word_of(&cell.faces[2]);
        w.extend(word_of(&cell.faces[0]));
        w.extend(inverse_word(&word_of(&cell.faces[1])));
        let w = free_reduce(&w);
        if !w.is_empty() {
            relators.insert(w);
        }
    }
    Ok(GroupPresentation::new(names, relators.into_iter().collect()))
}

/// The fundamental group read off the strong nerve truncated at `k`,
/// Tietze reduced.
pub fn pi1_via_nerve(
    atlas: &Atlas,
    base: usize,
    k: usize,
) -> Result<GroupPresentation, AtlasError> {
    check_base(atlas, base)?;
    if k < 2 {
        return Err(AtlasError::Invalid(
            "a fundamental group needs at least the 2-truncation".into(),
        ));
    }
    let nerve = strong_nerve(atlas, k)?;
    let vertex = (0..nerve.complex.cells[0].len())
        .find(|&v| nerve.cell_endpoints(0, v) == [base])
        .ok_or_else(|| {
            AtlasError::BasePointNotFound(format!("no vertex class for point {base}"))
        })?;
    let p = pi1_of_complex(&nerve.complex, vertex)?;
    Ok(p.simplified(&TietzeBudget::default()))
}

/// How the projection acts on the two fundamental groups, with the
/// abelianized comparison.
#[derive(Clone, Debug)]
pub struct ProjectionComparison {
    pub strong: GroupPresentation,
    pub weak: GroupPresentation,
    /// Abelianized generator images: one column per strong generator,
    /// one row per weak generator.
    pub matrix: IntMatrix,
    pub strong_invariants: AbelianInvariants,
    pub weak_invariants: AbelianInvariants,
    pub surjective_abelianized: bool,
    pub iso_abelianized: bool,
}

/// The homomorphism induced by forgetting arrows, presented over
/// spanning trees chosen so the strong tree projects onto the weak
/// one.
pub fn p_induced(atlas: &Atlas, base: usize) -> Result<ProjectionComparison, AtlasError> {
    let weak = weak_presentation_parts(atlas, base)?;
    let arrows = global_arrows(atlas);

    let mut preference: BTreeMap<usize, usize> = BTreeMap::new();
    for (&child, &parent) in &weak.tree_parent {
        let cls = (0..arrows.class_count())
            .find(|&c| {
                let (s, t) = arrows.endpoints[c];
                (s, t) == (parent, child) || (s, t) == (child, parent)
            })
            .ok_or_else(|| {
                AtlasError::Invalid(format!(
                    "no arrow class realizes the tree edge {parent}-{child}"
                ))
            })?;
        preference.insert(child, cls);
    }
    let strong = strong_presentation_parts(atlas, base, Some(&preference))?;

    let weak_gens = weak.presentation.generators.len();
    let strong_gens = strong.presentation.generators.len();
    let mut matrix = IntMatrix::zeros(weak_gens, strong_gens);
    for (col, &cls) in strong.generator_classes.iter().enumerate() {
        let (s, t) = strong.arrows.endpoints[cls];
        if s == t {
            continue;
        }
        let e = weak.skeleton.edge_index[&(s.min(t), s.max(t))];
        if let Some(g) = weak.gen_of_edge[e] {
            let delta = if s < t { BigInt::one() } else { -BigInt::one() };
            matrix.set(g, col, delta);
        }
    }

    let mut stacked = IntMatrix::zeros(weak_gens, strong_gens + weak.presentation.relators.len());
    for r in 0..weak_gens {
        for c in 0..strong_gens {
            stacked.set(r, c, matrix.get(r, c).clone());
        }
    }
    for (j, rel) in weak.presentation.relators.iter().enumerate() {
        for &x in rel {
            let r = (x.abs() - 1) as usize;
            let delta = if x > 0 { BigInt::one() } else { -BigInt::one() };
            let cur = stacked.get(r, strong_gens + j).clone();
            stacked.set(r, strong_gens + j, cur + delta);
        }
    }
    let dec = smith_normal_form(&stacked);
    let surjective_abelianized =
        dec.rank() == weak_gens && dec.d.iter().all(|d| d.is_one());
    let strong_invariants = strong.presentation.abelian_invariants();
    let weak_invariants = weak.presentation.abelian_invariants();
    let iso_abelianized = surjective_abelianized && strong_invariants == weak_invariants;

    Ok(ProjectionComparison {
        strong: strong.presentation,
        weak: weak.presentation,
        matrix,
        strong_invariants,
        weak_invariants,
        surjective_abelianized,
        iso_abelianized,
    })
}

/// The standing assumptions under which the projection is known to
/// identify the two fundamental groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectionHypotheses {
    /// Every realizable frame set has an initial index.
    pub has_infimum: bool,
    /// Every local vertex group is trivial.
    pub locals_simply_connected: bool,
    /// Every realizable frame set is upward directed, the stronger
    /// variant.
    pub frames_filtered: bool,
}

impl ProjectionHypotheses {
    pub fn satisfied(&self) -> bool {
        self.has_infimum && self.locals_simply_connected
    }
}

pub fn check_p_iso_hypotheses(atlas: &Atlas) -> ProjectionHypotheses {
    let props = atlas_properties(atlas);
    let mut simply_connected = true;
    'outer: for chart in atlas.charts() {
        for x in 0..chart.local.object_count() {
            if chart.local.hom(x, x).len() != 1 {
                simply_connected = false;
                break 'outer;
            }
        }
    }
    ProjectionHypotheses {
        has_infimum: props.has_infimum,
        locals_simply_connected: simply_connected,
        frames_filtered: props.frames_filtered,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::{dihedral_3, FiniteGroup};
    use crate::atlas::{
        from_global_action, from_simplicial_complex, from_single_groupoid, Chart, RelationMode,
        RelationPair,
    };
    use crate::groupoid::{action_groupoid, tree_groupoid};
    use crate::nerve::weak_nerve;

    fn two_overlapping_triangles() -> Atlas {
        let points = vec!["a".into(), "b".into(), "c".into(), "d".into()];
        let charts = vec![
            Chart { name: "abc".into(), frame: vec![0, 1, 2], local: tree_groupoid(3).unwrap() },
            Chart { name: "abd".into(), frame: vec![0, 1, 3], local: tree_groupoid(3).unwrap() },
        ];
        Atlas::new(points, charts, Vec::<RelationPair>::new()).unwrap()
    }

    fn dihedral_pair_atlas(mode: RelationMode) -> Atlas {
        let g = dihedral_3();
        let r = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        let s = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        from_global_action(&g, &[g.subgroup_closure(&[r]), g.subgroup_closure(&[s])], mode)
            .unwrap()
    }

    #[test]
    fn components_count_cosets_of_the_join() {
        let atlas = dihedral_pair_atlas(RelationMode::Inclusion);
        assert_eq!(path_components(&atlas).count(), 1);
        let g = dihedral_3();
        let r = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        let single =
            from_global_action(&g, &[g.subgroup_closure(&[r])], RelationMode::Inclusion)
                .unwrap();
        let pc = path_components(&single);
        assert_eq!(pc.count(), 2);
        assert_eq!(pc.components[0].len(), 3);
    }

    #[test]
    fn free_cover_has_free_weak_group() {
        let atlas = dihedral_pair_atlas(RelationMode::Inclusion);
        let p = pi1_weak(&atlas, 0).unwrap();
        assert_eq!(p.detected_free_rank(), Some(2));
    }

    #[test]
    fn overlapping_triangles_split_the_two_groups() {
        let atlas = two_overlapping_triangles();
        let weak = pi1_weak(&atlas, 0).unwrap();
        assert!(weak.is_trivial_detected());
        let strong = pi1_strong(&atlas, 0).unwrap();
        let inv = strong.abelian_invariants();
        assert_eq!(inv.free_rank, 1);
        assert!(inv.torsion.is_empty());
    }

    #[test]
    fn triangle_boundary_gives_the_infinite_cyclic_group() {
        let atlas = from_simplicial_complex(
            vec!["a".into(), "b".into(), "c".into()],
            &[vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        let weak = pi1_weak(&atlas, 0).unwrap();
        let strong = pi1_strong(&atlas, 0).unwrap();
        assert_eq!(weak.detected_free_rank(), Some(1));
        assert_eq!(strong.abelian_invariants().free_rank, 1);
        let via = pi1_via_nerve(&atlas, 0, 2).unwrap();
        assert_eq!(via.abelian_invariants(), strong.abelian_invariants());
    }

    #[test]
    fn one_object_involution_group() {
        let z2 = FiniteGroup::cyclic(2);
        let local = action_groupoid(&z2, 1, |_, x| x).unwrap();
        let atlas = from_single_groupoid(local, vec!["x".into()]).unwrap();
        let strong = pi1_strong(&atlas, 0).unwrap();
        let inv = strong.abelian_invariants();
        assert_eq!(inv.free_rank, 0);
        assert_eq!(inv.torsion, vec![BigInt::from(2)]);
        let weak = pi1_weak(&atlas, 0).unwrap();
        assert!(weak.is_trivial_detected());
    }

    #[test]
    fn nerve_engine_matches_the_direct_one() {
        let atlas = dihedral_pair_atlas(RelationMode::Inclusion);
        let direct = pi1_strong(&atlas, 0).unwrap();
        let via = pi1_via_nerve(&atlas, 0, 2).unwrap();
        assert_eq!(direct.abelian_invariants(), via.abelian_invariants());
        assert_eq!(via.detected_free_rank(), Some(2));
    }

    #[test]
    fn weak_engine_matches_the_nerve_of_tuples() {
        let atlas = two_overlapping_triangles();
        let nerve = weak_nerve(&atlas, 2).unwrap();
        let via = pi1_of_complex(&nerve.complex, 0)
            .unwrap()
            .simplified(&TietzeBudget::default());
        let direct = pi1_weak(&atlas, 0).unwrap();
        assert_eq!(via.abelian_invariants(), direct.abelian_invariants());
    }

    #[test]
    fn projection_comparison_on_split_example() {
        let atlas = two_overlapping_triangles();
        let cmp = p_induced(&atlas, 0).unwrap();
        assert!(cmp.surjective_abelianized);
        assert!(!cmp.iso_abelianized);
        assert_eq!(cmp.strong_invariants.free_rank, 1);
        assert!(cmp.weak_invariants.is_trivial());
    }

    #[test]
    fn hypotheses_guarantee_the_isomorphism() {
        let atlas = dihedral_pair_atlas(RelationMode::IntersectionClosure);
        let hyp = check_p_iso_hypotheses(&atlas);
        assert!(hyp.has_infimum);
        assert!(hyp.locals_simply_connected);
        assert!(hyp.satisfied());
        assert!(!hyp.frames_filtered);
        let cmp = p_induced(&atlas, 0).unwrap();
        assert!(cmp.iso_abelianized);
    }

    #[test]
    fn hypotheses_fail_without_relations() {
        let hyp = check_p_iso_hypotheses(&two_overlapping_triangles());
        assert!(!hyp.has_infimum);
        assert!(hyp.locals_simply_connected);
        assert!(!hyp.satisfied());
    }

    #[test]
    fn missing_base_point_is_reported() {
        let atlas = two_overlapping_triangles();
        assert!(matches!(
            pi1_weak(&atlas, 9).unwrap_err(),
            AtlasError::BasePointNotFound(_)
        ));
        assert!(matches!(
            pi1_strong(&atlas, 9).unwrap_err(),
            AtlasError::BasePointNotFound(_)
        ));
    }

    #[test]
    fn base_point_in_another_component_sees_only_its_part() {
        let g = dihedral_3();
        let r = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        let atlas =
            from_global_action(&g, &[g.subgroup_closure(&[r])], RelationMode::Inclusion)
                .unwrap();
        for base in 0..6 {
            let p = pi1_weak(&atlas, base).unwrap();
            assert!(p.is_trivial_detected());
        }
    }
}
