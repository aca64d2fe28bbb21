//! Simplicial maps between nerves: the endpoint projection from the
//! strong to the weak nerve, maps induced by atlas morphisms, and an
//! exhaustive search for sections of the projection.

use crate::atlas::AtlasMorphism;
use crate::simplicial::{SimplexRef, SimplicialSetTrunc};

use super::{StrongNerve, WeakNerve};

/// One image reference per cell, dimension by dimension.
pub type NerveMap = Vec<Vec<SimplexRef>>;

/// Pushes a possibly degenerate reference through a cellwise map.
pub fn push_ref(map: &NerveMap, r: &SimplexRef) -> SimplexRef {
    let base = &map[r.core_dim][r.core_idx];
    SimplexRef {
        core_dim: base.core_dim,
        core_idx: base.core_idx,
        eta: r.eta.iter().map(|&p| base.eta[p as usize]).collect(),
    }
}

/// Checks that a cellwise map lands in the target and commutes with
/// every face.
pub fn verify_simplicial_map(
    src: &SimplicialSetTrunc,
    dst: &SimplicialSetTrunc,
    map: &NerveMap,
) -> Result<(), String> {
    if map.len() != src.cells.len() {
        return Err("the map does not cover every dimension".into());
    }
    for (dim, row) in map.iter().enumerate() {
        if row.len() != src.cells[dim].len() {
            return Err(format!("dimension {dim} is not fully covered"));
        }
        for (idx, image) in row.iter().enumerate() {
            if image.dim() != dim {
                return Err(format!("cell {idx} in dimension {dim} changes dimension"));
            }
            if image.core_dim >= dst.cells.len()
                || image.core_idx >= dst.cells[image.core_dim].len()
            {
                return Err(format!("cell {idx} in dimension {dim} lands outside the target"));
            }
            if dim == 0 {
                continue;
            }
            let r = SimplexRef::nondegenerate(dim, idx);
            for i in 0..=dim {
                let lhs = dst.face(image, i);
                let rhs = push_ref(map, &src.face(&r, i));
                if lhs != rhs {
                    return Err(format!(
                        "face {i} of cell {idx} in dimension {dim} does not commute"
                    ));
                }
            }
        }
    }
    Ok(())
}

/// The projection that forgets arrows and keeps endpoint tuples.
pub fn projection_to_weak(strong: &StrongNerve, weak: &WeakNerve) -> Result<NerveMap, String> {
    if weak.complex.k < strong.complex.k {
        return Err("the weak nerve is truncated below the strong one".into());
    }
    let mut map = Vec::with_capacity(strong.complex.k + 1);
    for dim in 0..=strong.complex.k {
        let mut row = Vec::with_capacity(strong.cell_reps[dim].len());
        for idx in 0..strong.cell_reps[dim].len() {
            let tuple = strong.cell_endpoints(dim, idx);
            let r = weak.tuple_ref(&tuple).ok_or_else(|| {
                format!("the endpoints of cell {idx} in dimension {dim} form no weak simplex")
            })?;
            row.push(r);
        }
        map.push(row);
    }
    Ok(map)
}

/// The map of weak nerves induced by a morphism of atlases.
pub fn induced_weak_map(
    f: &AtlasMorphism,
    src: &WeakNerve,
    dst: &WeakNerve,
) -> Result<NerveMap, String> {
    if dst.complex.k < src.complex.k {
        return Err("the target nerve is truncated below the source".into());
    }
    let mut map = Vec::with_capacity(src.complex.k + 1);
    for dim in 0..=src.complex.k {
        let mut row = Vec::with_capacity(src.tuples[dim].len());
        for (idx, tuple) in src.tuples[dim].iter().enumerate() {
            let image: Vec<usize> = tuple.iter().map(|&p| f.point_map[p]).collect();
            let r = dst.tuple_ref(&image).ok_or_else(|| {
                format!("the image of cell {idx} in dimension {dim} is no weak simplex")
            })?;
            row.push(r);
        }
        map.push(row);
    }
    Ok(map)
}

/// The map of strong nerves induced by a morphism of atlases. Both
/// nerves must live on the atlases the morphism connects.
pub fn induced_strong_map(
    f: &AtlasMorphism,
    src: &StrongNerve,
    dst: &StrongNerve,
) -> Result<NerveMap, String> {
    if dst.complex.k < src.complex.k {
        return Err("the target nerve is truncated below the source".into());
    }
    let mut map = Vec::with_capacity(src.complex.k + 1);
    for dim in 0..=src.complex.k {
        let mut row = Vec::with_capacity(src.cell_reps[dim].len());
        for (idx, (chart, key)) in src.cell_reps[dim].iter().enumerate() {
            let target_chart = f.index_map[*chart];
            let r = if dim == 0 {
                let id_arrow = src.atlas.chart(*chart).local.identity_of(key[0] as usize);
                let img = f.arrow_maps[*chart][id_arrow] as usize;
                let obj = dst.atlas.chart(target_chart).local.src(img);
                dst.vertex_ref(target_chart, obj)
            } else {
                let mapped: Vec<u32> =
                    key.iter().map(|&a| f.arrow_maps[*chart][a as usize]).collect();
                dst.chain_ref(target_chart, &mapped)
            };
            row.push(r.ok_or_else(|| {
                format!("no image class for cell {idx} in dimension {dim}")
            })?);
        }
        map.push(row);
    }
    Ok(map)
}

/// Exhaustive search for a simplicial section of the projection: a
/// choice of strong cell over every weak cell, compatible with all
/// faces. Returns the chosen strong cell per weak cell, or None after
/// the whole space is ruled out.
pub fn section_of_projection(
    strong: &StrongNerve,
    weak: &WeakNerve,
    p: &NerveMap,
) -> Option<Vec<Vec<usize>>> {
    let k = p.len().checked_sub(1)?;
    let mut candidates: Vec<Vec<Vec<usize>>> = Vec::with_capacity(k + 1);
    for dim in 0..=k {
        let mut per_cell = vec![Vec::new(); weak.complex.cells[dim].len()];
        for (c, image) in p[dim].iter().enumerate() {
            if !image.is_degenerate() {
                per_cell[image.core_idx].push(c);
            }
        }
        candidates.push(per_cell);
    }
    let order: Vec<(usize, usize)> = (0..=k)
        .flat_map(|d| (0..weak.complex.cells[d].len()).map(move |i| (d, i)))
        .collect();
    let mut assignment: Vec<Vec<Option<usize>>> =
        (0..=k).map(|d| vec![None; weak.complex.cells[d].len()]).collect();
    if extend_section(strong, weak, &candidates, &order, &mut assignment, 0) {
        Some(
            assignment
                .into_iter()
                .map(|row| row.into_iter().map(Option::unwrap).collect())
                .collect(),
        )
    } else {
        None
    }
}

fn extend_section(
    strong: &StrongNerve,
    weak: &WeakNerve,
    candidates: &[Vec<Vec<usize>>],
    order: &[(usize, usize)],
    assignment: &mut Vec<Vec<Option<usize>>>,
    pos: usize,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let (dim, w) = order[pos];
    'next: for &c in &candidates[dim][w] {
        if dim > 0 {
            let wr = SimplexRef::nondegenerate(dim, w);
            let cr = SimplexRef::nondegenerate(dim, c);
            for i in 0..=dim {
                let wf = weak.complex.face(&wr, i);
                let lifted = match assignment[wf.core_dim][wf.core_idx] {
                    Some(s) => SimplexRef {
                        core_dim: wf.core_dim,
                        core_idx: s,
                        eta: wf.eta.clone(),
                    },
                    None => continue 'next,
                };
                if strong.complex.face(&cr, i) != lifted {
                    continue 'next;
                }
            }
        }
        assignment[dim][w] = Some(c);
        if extend_section(strong, weak, candidates, order, assignment, pos + 1) {
            return true;
        }
        assignment[dim][w] = None;
    }
    false
}
