//! The strong nerve: simplices are composable chains of local arrows,
//! identified whenever a structure functor carries one chain to
//! another.
//!
//! A chain whose image under some functor contains identity arrows is
//! glued to a degeneracy of a lower cell. Such classes produce no cell
//! of their own; references to them resolve through the degeneracy.

use std::collections::HashMap;

use crate::atlas::{irreducibilize, regularize, Atlas, AtlasError, NO_ARROW};
use crate::groupoid::Groupoid;
use crate::simplicial::{Cell, SimplexRef, SimplicialSetTrunc};
use crate::util::UnionFind;

use super::DEFAULT_DIM_BUDGET;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Chain(usize, Vec<u32>),
    Collapsed(SimplexRef),
}

#[derive(Debug)]
pub struct StrongNerve {
    /// The atlas the chain classes live on. `strong_nerve` rebuilds
    /// the input so that every point carries its own chart and every
    /// local groupoid is connected; `strong_nerve_raw` keeps the input
    /// as given.
    pub atlas: Atlas,
    pub complex: SimplicialSetTrunc,
    /// Per dimension and cell, the least member chain `(chart, arrows)`.
    /// Dimension zero stores the local object instead of arrows.
    pub cell_reps: Vec<Vec<(usize, Vec<u32>)>>,
    /// Per dimension and cell, the sorted charts of all member chains.
    pub cell_charts: Vec<Vec<Vec<usize>>>,
    class_refs: Vec<HashMap<(usize, Vec<u32>), SimplexRef>>,
}

impl StrongNerve {
    pub fn vertex_ref(&self, chart: usize, obj: usize) -> Option<SimplexRef> {
        self.class_refs[0].get(&(chart, vec![obj as u32])).cloned()
    }

    /// The cell reference of a composable local chain, identity arrows
    /// allowed.
    pub fn chain_ref(&self, chart: usize, arrows: &[u32]) -> Option<SimplexRef> {
        if arrows.is_empty() || arrows.len() > self.complex.k {
            return None;
        }
        let local = &self.atlas.chart(chart).local;
        let src = local.src(arrows[0] as usize);
        canonical_ref(local, &self.class_refs, chart, arrows, src)
    }

    /// Global endpoint tuple of a cell's representative chain.
    pub fn cell_endpoints(&self, dim: usize, idx: usize) -> Vec<usize> {
        let (chart, key) = &self.cell_reps[dim][idx];
        let local = &self.atlas.chart(*chart).local;
        if dim == 0 {
            return vec![self.atlas.local_to_global(*chart, key[0] as usize)];
        }
        let mut pts = vec![self.atlas.local_to_global(*chart, local.src(key[0] as usize))];
        for &a in key.iter() {
            pts.push(self.atlas.local_to_global(*chart, local.tgt(a as usize)));
        }
        pts
    }

    /// Cells whose member chains admit no chart below all the others,
    /// reported as (dimension, cell) pairs.
    pub fn cells_without_initial_chart(&self) -> Vec<(usize, usize)> {
        let closure = self.atlas.order_closure();
        let mut bad = Vec::new();
        for (dim, per_cell) in self.cell_charts.iter().enumerate() {
            for (idx, set) in per_cell.iter().enumerate() {
                let ok = set.iter().any(|&a| set.iter().all(|&b| closure[a][b]));
                if !ok {
                    bad.push((dim, idx));
                }
            }
        }
        bad
    }
}

pub fn strong_nerve(atlas: &Atlas, k: usize) -> Result<StrongNerve, AtlasError> {
    strong_nerve_with_budget(atlas, k, DEFAULT_DIM_BUDGET)
}

pub fn strong_nerve_with_budget(
    atlas: &Atlas,
    k: usize,
    budget: usize,
) -> Result<StrongNerve, AtlasError> {
    let (reg, _) = regularize(atlas)?;
    let (prepared, _) = irreducibilize(&reg)?;
    build(prepared, k, budget)
}

/// Chain classes over the atlas exactly as given. Charts that share a
/// point produce distinct vertices unless some relation glues them.
pub fn strong_nerve_raw(atlas: &Atlas, k: usize) -> Result<StrongNerve, AtlasError> {
    build(atlas.clone(), k, DEFAULT_DIM_BUDGET)
}

fn build(atlas: Atlas, k: usize, budget: usize) -> Result<StrongNerve, AtlasError> {
    let mut class_refs: Vec<HashMap<(usize, Vec<u32>), SimplexRef>> = Vec::new();
    let mut all_cells: Vec<Vec<Cell>> = Vec::new();
    let mut all_reps: Vec<Vec<(usize, Vec<u32>)>> = Vec::new();
    let mut all_charts: Vec<Vec<Vec<usize>>> = Vec::new();

    for n in 0..=k {
        let mut nodes: Vec<Node> = Vec::new();
        let mut ids: HashMap<Node, usize> = HashMap::new();
        for (ci, chart) in atlas.charts().iter().enumerate() {
            let mut chain = Vec::with_capacity(n.max(1));
            emit_chains(&chart.local, n, &mut chain, &mut |key| {
                if nodes.len() == budget {
                    return Err(AtlasError::TooLarge(format!(
                        "more than {budget} chains in dimension {n}"
                    )));
                }
                let node = Node::Chain(ci, key.to_vec());
                ids.insert(node.clone(), nodes.len());
                nodes.push(node);
                Ok(())
            })?;
        }

        let seed_count = nodes.len();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for i in 0..seed_count {
            let (ci, key) = match &nodes[i] {
                Node::Chain(c, key) => (*c, key.clone()),
                Node::Collapsed(_) => unreachable!("seeds are chains"),
            };
            for pair in atlas.relation_pairs() {
                if pair.lower != ci {
                    continue;
                }
                let upper_local = &atlas.chart(pair.upper).local;
                let target = if n == 0 {
                    let id_arrow = atlas.chart(ci).local.identity_of(key[0] as usize);
                    let img = pair.arrow_map[id_arrow];
                    if img == NO_ARROW {
                        continue;
                    }
                    Node::Chain(pair.upper, vec![upper_local.src(img as usize) as u32])
                } else {
                    let mapped: Vec<u32> = key
                        .iter()
                        .map(|&a| pair.arrow_map[a as usize])
                        .take_while(|&a| a != NO_ARROW)
                        .collect();
                    if mapped.len() < key.len() {
                        continue;
                    }
                    if mapped.iter().all(|&a| !upper_local.is_identity(a as usize)) {
                        Node::Chain(pair.upper, mapped)
                    } else {
                        let src = upper_local.src(mapped[0] as usize);
                        let r = canonical_ref(
                            upper_local,
                            &class_refs,
                            pair.upper,
                            &mapped,
                            src,
                        )
                        .ok_or_else(|| {
                            AtlasError::Invalid(
                                "a functor image refers to a missing lower chain".into(),
                            )
                        })?;
                        Node::Collapsed(r)
                    }
                };
                let j = match ids.get(&target) {
                    Some(&j) => j,
                    None => {
                        if nodes.len() == budget {
                            return Err(AtlasError::TooLarge(format!(
                                "more than {budget} chains in dimension {n}"
                            )));
                        }
                        let j = nodes.len();
                        ids.insert(target.clone(), j);
                        nodes.push(target);
                        j
                    }
                };
                edges.push((i, j));
            }
        }

        let mut uf = UnionFind::new(nodes.len());
        for (a, b) in edges {
            uf.union(a, b);
        }

        struct ClassInfo {
            members: Vec<(usize, Vec<u32>)>,
            alias: Option<SimplexRef>,
        }
        let mut classes: Vec<ClassInfo> = Vec::new();
        for block in uf.blocks() {
            let mut members = Vec::new();
            let mut alias: Option<SimplexRef> = None;
            for id in block {
                match &nodes[id] {
                    Node::Chain(c, key) => members.push((*c, key.clone())),
                    Node::Collapsed(r) => match &alias {
                        None => alias = Some(r.clone()),
                        Some(prev) if prev == r => {}
                        Some(_) => {
                            return Err(AtlasError::Invalid(
                                "chain identifications do not respect degeneracies".into(),
                            ))
                        }
                    },
                }
            }
            members.sort();
            classes.push(ClassInfo { members, alias });
        }
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by(|&a, &b| classes[a].members[0].cmp(&classes[b].members[0]));

        let mut refs: HashMap<(usize, Vec<u32>), SimplexRef> = HashMap::new();
        let mut cells = Vec::new();
        let mut reps = Vec::new();
        let mut chart_sets = Vec::new();
        for &c in &order {
            let info = &classes[c];
            let r = match &info.alias {
                Some(a) => a.clone(),
                None => SimplexRef::nondegenerate(n, cells.len()),
            };
            for m in &info.members {
                refs.insert(m.clone(), r.clone());
            }
            if info.alias.is_none() {
                let rep = info.members[0].clone();
                let mut cs: Vec<usize> = info.members.iter().map(|m| m.0).collect();
                cs.dedup();
                cells.push(make_cell(&atlas, &class_refs, n, &rep)?);
                reps.push(rep);
                chart_sets.push(cs);
            }
        }
        class_refs.push(refs);
        all_cells.push(cells);
        all_reps.push(reps);
        all_charts.push(chart_sets);
    }

    Ok(StrongNerve {
        atlas,
        complex: SimplicialSetTrunc { k, cells: all_cells },
        cell_reps: all_reps,
        cell_charts: all_charts,
        class_refs,
    })
}

/// Strips identity arrows from a chain and resolves what is left
/// through the computed classes, composing the degeneracies. `src_obj`
/// pins the underlying object when every arrow is an identity.
fn canonical_ref(
    local: &Groupoid,
    class_refs: &[HashMap<(usize, Vec<u32>), SimplexRef>],
    chart: usize,
    arrows: &[u32],
    src_obj: usize,
) -> Option<SimplexRef> {
    let mut core = Vec::with_capacity(arrows.len());
    let mut eta = vec![0u8];
    for &a in arrows {
        if !local.is_identity(a as usize) {
            core.push(a);
        }
        eta.push(core.len() as u8);
    }
    let base = if core.is_empty() {
        class_refs.first()?.get(&(chart, vec![src_obj as u32]))?
    } else {
        class_refs.get(core.len())?.get(&(chart, core))?
    };
    Some(SimplexRef {
        core_dim: base.core_dim,
        core_idx: base.core_idx,
        eta: eta.iter().map(|&p| base.eta[p as usize]).collect(),
    })
}

fn make_cell(
    atlas: &Atlas,
    class_refs: &[HashMap<(usize, Vec<u32>), SimplexRef>],
    n: usize,
    rep: &(usize, Vec<u32>),
) -> Result<Cell, AtlasError> {
    let (chart_idx, key) = rep;
    let chart = atlas.chart(*chart_idx);
    let local = &chart.local;
    if n == 0 {
        let label =
            atlas.point_label(atlas.local_to_global(*chart_idx, key[0] as usize)).to_string();
        return Ok(Cell { label, faces: vec![] });
    }
    let label = format!(
        "{}: {}",
        chart.name,
        key.iter().map(|&a| local.label(a as usize)).collect::<Vec<_>>().join("·")
    );
    let mut faces = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let (sub, src_obj) = if i == 0 {
            (key[1..].to_vec(), local.tgt(key[0] as usize))
        } else if i == n {
            (key[..n - 1].to_vec(), local.src(key[0] as usize))
        } else {
            let mut sub = key[..i - 1].to_vec();
            let glued = local.compose(key[i] as usize, key[i - 1] as usize).ok_or_else(|| {
                AtlasError::Invalid(format!("chain {key:?} is not composable at {i}"))
            })?;
            sub.push(glued as u32);
            sub.extend_from_slice(&key[i + 1..]);
            (sub, local.src(key[0] as usize))
        };
        let r = canonical_ref(local, class_refs, *chart_idx, &sub, src_obj).ok_or_else(|| {
            AtlasError::Invalid("a face chain is missing from the lower dimension".into())
        })?;
        faces.push(r);
    }
    Ok(Cell { label, faces })
}

fn emit_chains(
    local: &Groupoid,
    n: usize,
    chain: &mut Vec<u32>,
    visit: &mut impl FnMut(&[u32]) -> Result<(), AtlasError>,
) -> Result<(), AtlasError> {
    if n == 0 {
        for x in 0..local.object_count() {
            visit(&[x as u32])?;
        }
        return Ok(());
    }
    if chain.len() == n {
        return visit(chain);
    }
    let candidates: Vec<u32> = match chain.last() {
        Some(&last) => local.arrows_from(local.tgt(last as usize)).to_vec(),
        None => (0..local.arrow_count() as u32).collect(),
    };
    for a in candidates {
        if local.is_identity(a as usize) {
            continue;
        }
        chain.push(a);
        emit_chains(local, n, chain, visit)?;
        chain.pop();
    }
    Ok(())
}
