//! The weak nerve: simplices are point tuples supported inside a
//! single component of a single local groupoid, identified purely by
//! their content.

use std::collections::{BTreeSet, HashMap};

use crate::atlas::{Atlas, AtlasError};
use crate::simplicial::{Cell, SimplexRef, SimplicialSetTrunc};

use super::DEFAULT_DIM_BUDGET;

#[derive(Debug)]
pub struct WeakNerve {
    pub complex: SimplicialSetTrunc,
    /// Per dimension, the point tuple each cell stands for.
    pub tuples: Vec<Vec<Vec<usize>>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
}

impl WeakNerve {
    /// The reference of an arbitrary tuple, degenerate or not.
    pub fn tuple_ref(&self, tuple: &[usize]) -> Option<SimplexRef> {
        let (core, eta) = collapse(tuple);
        if core.len() > self.lookup.len() {
            return None;
        }
        let idx = *self.lookup[core.len() - 1].get(&core)?;
        Some(SimplexRef { core_dim: core.len() - 1, core_idx: idx, eta })
    }
}

/// Squeezes adjacent repeats out of a tuple, returning the core and
/// the monotone surjection that restores the original.
pub(crate) fn collapse(tuple: &[usize]) -> (Vec<usize>, Vec<u8>) {
    let mut core = vec![tuple[0]];
    let mut eta = vec![0u8];
    for &v in &tuple[1..] {
        if v != *core.last().unwrap() {
            core.push(v);
        }
        eta.push((core.len() - 1) as u8);
    }
    (core, eta)
}

pub fn weak_nerve(atlas: &Atlas, k: usize) -> Result<WeakNerve, AtlasError> {
    weak_nerve_with_budget(atlas, k, DEFAULT_DIM_BUDGET)
}

pub fn weak_nerve_with_budget(
    atlas: &Atlas,
    k: usize,
    budget: usize,
) -> Result<WeakNerve, AtlasError> {
    let mut comps: BTreeSet<Vec<usize>> = BTreeSet::new();
    for chart in atlas.charts() {
        for comp in chart.local.components() {
            comps.insert(comp.objects.iter().map(|&o| chart.frame[o]).collect());
        }
    }
    let comps: Vec<Vec<usize>> = comps.into_iter().collect();

    let mut tuples: Vec<Vec<Vec<usize>>> = Vec::with_capacity(k + 1);
    tuples.push((0..atlas.point_count()).map(|p| vec![p]).collect());
    for n in 1..=k {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut work = 0usize;
        for comp in &comps {
            let mut tuple = Vec::with_capacity(n + 1);
            emit_tuples(comp, n + 1, &mut tuple, &mut |t| {
                work += 1;
                if work > budget {
                    return Err(AtlasError::TooLarge(format!(
                        "more than {budget} candidate tuples in dimension {n}"
                    )));
                }
                seen.insert(t.to_vec());
                Ok(())
            })?;
        }
        tuples.push(seen.into_iter().collect());
    }

    let mut lookup: Vec<HashMap<Vec<usize>, usize>> = Vec::with_capacity(k + 1);
    for dim_tuples in &tuples {
        lookup.push(dim_tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect());
    }

    let mut cells: Vec<Vec<Cell>> = Vec::with_capacity(k + 1);
    for (n, dim_tuples) in tuples.iter().enumerate() {
        let mut dim_cells = Vec::with_capacity(dim_tuples.len());
        for t in dim_tuples {
            let label =
                t.iter().map(|&p| atlas.point_label(p)).collect::<Vec<_>>().join(" ");
            let mut faces = Vec::with_capacity(if n == 0 { 0 } else { n + 1 });
            if n > 0 {
                for i in 0..=n {
                    let mut sub = t.clone();
                    sub.remove(i);
                    let (core, eta) = collapse(&sub);
                    let idx = lookup[core.len() - 1][&core];
                    faces.push(SimplexRef { core_dim: core.len() - 1, core_idx: idx, eta });
                }
            }
            dim_cells.push(Cell { label, faces });
        }
        cells.push(dim_cells);
    }

    Ok(WeakNerve { complex: SimplicialSetTrunc { k, cells }, tuples, lookup })
}

fn emit_tuples(
    comp: &[usize],
    len: usize,
    tuple: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> Result<(), AtlasError>,
) -> Result<(), AtlasError> {
    if tuple.len() == len {
        return visit(tuple);
    }
    for &q in comp {
        if tuple.last() == Some(&q) {
            continue;
        }
        tuple.push(q);
        emit_tuples(comp, len, tuple, visit)?;
        tuple.pop();
    }
    Ok(())
}
