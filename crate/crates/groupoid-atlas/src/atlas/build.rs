//! Atlas constructors: global actions, elementary linear groups,
//! simplicial complexes, and single groupoids.

use super::{arrow_map_by_endpoints, Atlas, AtlasError, Chart, RelationPair};
use crate::algebra::FiniteGroup;
use crate::groupoid::{action_groupoid, tree_groupoid, Groupoid};

/// How to relate the indices of a global-action atlas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationMode {
    /// No related pairs besides the implicit reflexive ones.
    Discrete,
    /// alpha <= beta whenever the subgroup of alpha is contained in the
    /// subgroup of beta.
    Inclusion,
    /// Close the family under pairwise intersection first, then relate
    /// by inclusion.
    IntersectionClosure,
}

/// The atlas of a group acting on itself by left multiplication, one
/// index per subgroup in the family. Every frame is the whole group.
pub fn from_global_action(
    group: &FiniteGroup,
    subgroups: &[Vec<usize>],
    mode: RelationMode,
) -> Result<Atlas, AtlasError> {
    if subgroups.is_empty() {
        return Err(AtlasError::Invalid("a global action needs at least one subgroup".into()));
    }
    let mut family: Vec<Vec<usize>> = Vec::new();
    for h in subgroups {
        group.is_subgroup(h)?;
        let mut h = h.clone();
        h.sort_unstable();
        h.dedup();
        family.push(h);
    }
    if mode == RelationMode::IntersectionClosure {
        loop {
            let mut grew = false;
            let snapshot = family.clone();
            for i in 0..snapshot.len() {
                for j in i + 1..snapshot.len() {
                    let meet: Vec<usize> = snapshot[i]
                        .iter()
                        .copied()
                        .filter(|g| snapshot[j].binary_search(g).is_ok())
                        .collect();
                    if !family.contains(&meet) {
                        family.push(meet);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        family.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        family.dedup();
    }

    let n = group.order();
    let frame: Vec<usize> = (0..n).collect();
    let mut charts = Vec::with_capacity(family.len());
    for (i, h) in family.iter().enumerate() {
        let (hg, back) = group.subgroup_as_group(h)?;
        let local = action_groupoid(&hg, n, |a, x| group.mul(back[a], x))?;
        charts.push(Chart { name: format!("H{i}"), frame: frame.clone(), local });
    }
    let mut pairs = Vec::new();
    if mode != RelationMode::Discrete {
        for (a, ha) in family.iter().enumerate() {
            for (b, hb) in family.iter().enumerate() {
                if a != b && ha.iter().all(|g| hb.binary_search(g).is_ok()) {
                    let arrow_map = arrow_map_by_endpoints(&charts[a], &charts[b])?;
                    pairs.push(RelationPair { lower: a, upper: b, arrow_map });
                }
            }
        }
    }
    let labels = (0..n).map(|g| group.label(g).to_string()).collect();
    Atlas::new(labels, charts, pairs)
}

fn unit_mod(v: usize, m: usize) -> bool {
    let mut a = v % m;
    let mut b = m;
    while a != 0 {
        (a, b) = (b % a, a);
    }
    b == 1
}

/// The general linear group over the integers mod `modulus`, as a
/// multiplication table over all invertible size x size matrices.
pub fn general_linear_group(size: usize, modulus: usize) -> Result<FiniteGroup, AtlasError> {
    if size == 0 || modulus < 2 {
        return Err(AtlasError::Invalid("need size >= 1 and modulus >= 2".into()));
    }
    let cells = size * size;
    let candidates = (modulus as u128).checked_pow(cells as u32);
    match candidates {
        Some(c) if c <= 2_000_000 => {}
        _ => {
            return Err(AtlasError::TooLarge(format!(
                "{modulus}^{cells} candidate matrices"
            )))
        }
    }
    let decode = |mut code: usize| -> Vec<usize> {
        let mut m = vec![0; cells];
        for v in m.iter_mut() {
            *v = code % modulus;
            code /= modulus;
        }
        m
    };
    let encode = |m: &[usize]| -> usize {
        m.iter().rev().fold(0, |acc, &v| acc * modulus + v)
    };
    let det = |m: &[usize]| -> usize {
        fn go(m: &[usize], rows: &[usize], cols: &[usize], size: usize, modulus: usize) -> usize {
            if rows.len() == 1 {
                return m[rows[0] * size + cols[0]] % modulus;
            }
            let mut acc = 0i64;
            let sub_rows = &rows[1..];
            for (k, &c) in cols.iter().enumerate() {
                let sub_cols: Vec<usize> =
                    cols.iter().copied().filter(|&x| x != c).collect();
                let minor = go(m, sub_rows, &sub_cols, size, modulus) as i64;
                let sign = if k % 2 == 0 { 1 } else { -1 };
                acc += sign * (m[rows[0] * size + c] as i64) * minor;
            }
            acc.rem_euclid(modulus as i64) as usize
        }
        let idx: Vec<usize> = (0..size).collect();
        go(m, &idx, &idx, size, modulus)
    };
    let mut elements = Vec::new();
    let mut rank_of = vec![usize::MAX; candidates.unwrap() as usize];
    for code in 0..candidates.unwrap() as usize {
        let m = decode(code);
        if unit_mod(det(&m), modulus) {
            rank_of[code] = elements.len();
            elements.push(m);
        }
    }
    let matmul = |a: &[usize], b: &[usize]| -> Vec<usize> {
        let mut out = vec![0; cells];
        for i in 0..size {
            for j in 0..size {
                let mut acc = 0;
                for k in 0..size {
                    acc += a[i * size + k] * b[k * size + j];
                }
                out[i * size + j] = acc % modulus;
            }
        }
        out
    };
    let order = elements.len();
    let mut table = vec![vec![0usize; order]; order];
    for a in 0..order {
        for b in 0..order {
            table[a][b] = rank_of[encode(&matmul(&elements[a], &elements[b]))];
        }
    }
    let labels: Vec<String> = elements
        .iter()
        .map(|m| {
            let rows: Vec<String> = (0..size)
                .map(|i| {
                    let row: Vec<String> =
                        (0..size).map(|j| m[i * size + j].to_string()).collect();
                    row.join(",")
                })
                .collect();
            format!("[{}]", rows.join(";"))
        })
        .collect();
    Ok(crate::algebra::group::from_validated_table(&table, labels))
}

/// The atlas of elementary subgroups of GL(size, Z/modulus): one index
/// per closed set of off-diagonal positions, ordered by inclusion. A
/// position set is closed when (i,j) and (j,k) with i != k force (i,k).
pub fn gl_atlas(size: usize, modulus: usize) -> Result<Atlas, AtlasError> {
    if size < 2 {
        return Err(AtlasError::Invalid("need size >= 2 for off-diagonal positions".into()));
    }
    let group = general_linear_group(size, modulus)?;
    let positions: Vec<(usize, usize)> = (0..size)
        .flat_map(|i| (0..size).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let k = positions.len();
    if k > 20 {
        return Err(AtlasError::TooLarge(format!("2^{k} position sets")));
    }
    let closed = |mask: usize| -> bool {
        for (a, &(i, j)) in positions.iter().enumerate() {
            if mask & (1 << a) == 0 {
                continue;
            }
            for (b, &(j2, kk)) in positions.iter().enumerate() {
                if mask & (1 << b) == 0 || j2 != j || kk == i {
                    continue;
                }
                let c = positions.iter().position(|&p| p == (i, kk)).unwrap();
                if mask & (1 << c) == 0 {
                    return false;
                }
            }
        }
        true
    };
    let elementary = |i: usize, j: usize| -> usize {
        let mut m = vec![0usize; size * size];
        for d in 0..size {
            m[d * size + d] = 1;
        }
        m[i * size + j] = 1;
        let label = {
            let rows: Vec<String> = (0..size)
                .map(|r| {
                    let row: Vec<String> =
                        (0..size).map(|c| m[r * size + c].to_string()).collect();
                    row.join(",")
                })
                .collect();
            format!("[{}]", rows.join(";"))
        };
        (0..group.order()).find(|&g| group.label(g) == label).unwrap()
    };
    let masks: Vec<usize> = (0..1usize << k).filter(|&m| closed(m)).collect();
    let n = group.order();
    let frame: Vec<usize> = (0..n).collect();
    let mut charts = Vec::with_capacity(masks.len());
    for &mask in &masks {
        let gens: Vec<usize> = positions
            .iter()
            .enumerate()
            .filter(|&(a, _)| mask & (1 << a) != 0)
            .map(|(_, &(i, j))| elementary(i, j))
            .collect();
        let h = group.subgroup_closure(&gens);
        let (hg, back) = group.subgroup_as_group(&h)?;
        let local = action_groupoid(&hg, n, |a, x| group.mul(back[a], x))?;
        let name: Vec<String> = positions
            .iter()
            .enumerate()
            .filter(|&(a, _)| mask & (1 << a) != 0)
            .map(|(_, &(i, j))| format!("{i}{j}"))
            .collect();
        charts.push(Chart { name: format!("e[{}]", name.join(" ")), frame: frame.clone(), local });
    }
    let mut pairs = Vec::new();
    for (a, &ma) in masks.iter().enumerate() {
        for (b, &mb) in masks.iter().enumerate() {
            if a != b && ma & mb == ma {
                let arrow_map = arrow_map_by_endpoints(&charts[a], &charts[b])?;
                pairs.push(RelationPair { lower: a, upper: b, arrow_map });
            }
        }
    }
    let labels = (0..n).map(|g| group.label(g).to_string()).collect();
    Atlas::new(labels, charts, pairs)
}

/// The atlas of a finite simplicial complex: one index per simplex of
/// the downward closure of the facets, with the simply connected
/// groupoid on its vertices, related by inclusion of simplices.
pub fn from_simplicial_complex(
    point_labels: Vec<String>,
    facets: &[Vec<usize>],
) -> Result<Atlas, AtlasError> {
    if facets.is_empty() || facets.iter().any(|f| f.is_empty()) {
        return Err(AtlasError::EmptyComplex);
    }
    let points = point_labels.len();
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        f.dedup();
        if *f.last().unwrap() >= points {
            return Err(AtlasError::Invalid("facet mentions unknown vertices".into()));
        }
        let m = f.len();
        for mask in 1usize..1 << m {
            let s: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).map(|i| f[i]).collect();
            simplices.push(s);
        }
    }
    simplices.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    simplices.dedup();
    let mut charts = Vec::with_capacity(simplices.len());
    for s in &simplices {
        let names: Vec<&str> = s.iter().map(|&v| point_labels[v].as_str()).collect();
        charts.push(Chart {
            name: format!("{{{}}}", names.join(" ")),
            frame: s.clone(),
            local: tree_groupoid(s.len())?,
        });
    }
    let mut pairs = Vec::new();
    for (a, sa) in simplices.iter().enumerate() {
        for (b, sb) in simplices.iter().enumerate() {
            if a != b && sa.iter().all(|v| sb.binary_search(v).is_ok()) {
                let arrow_map = arrow_map_by_endpoints(&charts[a], &charts[b])?;
                pairs.push(RelationPair { lower: a, upper: b, arrow_map });
            }
        }
    }
    Atlas::new(point_labels, charts, pairs)
}

/// The atlas with a single index whose local groupoid is the whole
/// structure.
pub fn from_single_groupoid(
    local: Groupoid,
    point_labels: Vec<String>,
) -> Result<Atlas, AtlasError> {
    if local.object_count() != point_labels.len() {
        return Err(AtlasError::Invalid("label count differs from object count".into()));
    }
    let frame = (0..local.object_count()).collect();
    let chart = Chart { name: "G".into(), frame, local };
    Atlas::new(point_labels, vec![chart], Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::dihedral_3;
    use crate::atlas::validate_atlas;

    #[test]
    fn dihedral_cover_shape() {
        let g = dihedral_3();
        let r = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        let s = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let rot = g.subgroup_closure(&[r]);
        let refl = g.subgroup_closure(&[s]);
        let a = from_global_action(&g, &[rot, refl], RelationMode::Discrete).unwrap();
        assert_eq!(a.point_count(), 6);
        assert_eq!(a.chart_count(), 2);
        assert!(a.relation_pairs().is_empty());
        assert_eq!(a.chart(0).local.components().len(), 2);
        assert_eq!(a.chart(1).local.components().len(), 3);
        assert!(validate_atlas(&a).is_valid());
    }

    #[test]
    fn intersection_closure_adds_the_meet() {
        let g = dihedral_3();
        let r = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        let s = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let rot = g.subgroup_closure(&[r]);
        let refl = g.subgroup_closure(&[s]);
        let a = from_global_action(&g, &[rot, refl], RelationMode::IntersectionClosure).unwrap();
        assert_eq!(a.chart_count(), 3);
        assert_eq!(a.chart(0).local.arrow_count(), 6);
        assert_eq!(a.relation_pairs().len(), 2);
        assert!(validate_atlas(&a).is_valid());
    }

    #[test]
    fn small_linear_group_orders() {
        assert_eq!(general_linear_group(2, 2).unwrap().order(), 6);
        assert_eq!(general_linear_group(2, 3).unwrap().order(), 48);
        assert_eq!(general_linear_group(2, 4).unwrap().order(), 96);
    }

    #[test]
    fn gl_atlas_has_four_indices_for_size_two() {
        let a = gl_atlas(2, 2).unwrap();
        assert_eq!(a.chart_count(), 4);
        assert_eq!(a.point_count(), 6);
        // empty set below the two singletons, everything below the full set
        assert_eq!(a.relation_pairs().len(), 5);
        assert!(validate_atlas(&a).is_valid());
    }

    #[test]
    fn boundary_of_triangle() {
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let a = from_simplicial_complex(labels, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(a.chart_count(), 6);
        assert_eq!(a.relation_pairs().len(), 6);
        assert!(validate_atlas(&a).is_valid());
    }

    #[test]
    fn empty_complex_is_rejected() {
        assert!(matches!(
            from_simplicial_complex(vec!["a".into()], &[]),
            Err(AtlasError::EmptyComplex)
        ));
    }
}
