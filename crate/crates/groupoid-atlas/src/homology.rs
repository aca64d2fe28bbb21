//! Integer homology of an atlas, read off its nerve, plus the two
//! reports about how local chains assemble: the kernel analysis of the
//! gluing map j and the discrete-relation comparison against the
//! direct sum of the local homologies.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{rank, smith_normal_form, AbelianInvariants, IntMatrix};
use crate::atlas::{
    from_single_groupoid, transitive_closure, Atlas, AtlasError, RelationPair, NO_ARROW,
};
use crate::groupoid::Groupoid;
use crate::nerve::{strong_nerve, DEFAULT_DIM_BUDGET};
use crate::simplicial::SimplicialSetTrunc;
use crate::util::UnionFind;

/// Boundary matrices over the nondegenerate cells of a truncated
/// simplicial set, degenerate faces dropped.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// Cell counts per dimension, 0 through the truncation.
    pub ranks: Vec<usize>,
    /// `boundaries[n]` maps dimension `n + 1` to dimension `n`: one
    /// row per n-cell, one column per (n+1)-cell.
    pub boundaries: Vec<IntMatrix>,
}

pub fn chain_complex(s: &SimplicialSetTrunc) -> Result<ChainComplex, AtlasError> {
    let ranks: Vec<usize> = s.cells.iter().map(|level| level.len()).collect();
    let mut boundaries = Vec::with_capacity(s.k);
    for n in 1..=s.k {
        let mut m = IntMatrix::zeros(ranks[n - 1], ranks[n]);
        for (j, cell) in s.cells[n].iter().enumerate() {
            for (i, f) in cell.faces.iter().enumerate() {
                if f.is_degenerate() {
                    continue;
                }
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let cur = m.get(f.core_idx, j) + sign;
                m.set(f.core_idx, j, cur);
            }
        }
        boundaries.push(m);
    }
    for n in 1..boundaries.len() {
        if !boundaries[n - 1].mul(&boundaries[n]).is_zero() {
            return Err(AtlasError::NormalizationFailure(format!(
                "d_{} after d_{}",
                n,
                n + 1
            )));
        }
    }
    Ok(ChainComplex { ranks, boundaries })
}

/// Homology groups of dimensions 0 through `k - 1`; dimension `k`
/// would need the cells one level above the truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub k: usize,
    pub groups: Vec<AbelianInvariants>,
}

impl std::fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (n, g) in self.groups.iter().enumerate() {
            writeln!(f, "H_{n} = {g}")?;
        }
        Ok(())
    }
}

impl HomologyResult {
    /// Per-dimension `{free_rank, torsion[]}` with the validity bound.
    pub fn to_json(&self) -> String {
        let groups: Vec<serde_json::Value> = self
            .groups
            .iter()
            .map(|g| {
                serde_json::json!({
                    "free_rank": g.free_rank,
                    "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({ "truncation": self.k, "groups": groups }).to_string()
    }
}

pub fn homology_of_chain_complex(cc: &ChainComplex) -> HomologyResult {
    let k = cc.boundaries.len();
    let decs: Vec<_> = cc.boundaries.iter().map(smith_normal_form).collect();
    let groups = (0..k)
        .map(|n| {
            let below = if n == 0 { 0 } else { decs[n - 1].rank() };
            let torsion =
                decs[n].d.iter().filter(|d| **d > BigInt::one()).cloned().collect();
            AbelianInvariants { free_rank: cc.ranks[n] - below - decs[n].rank(), torsion }
        })
        .collect();
    HomologyResult { k, groups }
}

pub fn homology(atlas: &Atlas, k: usize) -> Result<HomologyResult, AtlasError> {
    if k == 0 {
        return Err(AtlasError::Invalid("homology needs a truncation of at least 1".into()));
    }
    let nerve = strong_nerve(atlas, k)?;
    let cc = chain_complex(&nerve.complex)?;
    Ok(homology_of_chain_complex(&cc))
}

/// One glued chain class: its spread over the charts and the shape of
/// the two graphs the kernel question reduces to.
#[derive(Clone, Debug)]
pub struct ChainClassGraph {
    /// Charts holding at least one member, ascending.
    pub charts: Vec<usize>,
    /// Member chains over all charts.
    pub members: usize,
    /// Whether the chart-level graph of this class has a cycle; this
    /// is the published criterion.
    pub index_cyclic: bool,
    /// Independent cycles of the member-level graph; these sum to the
    /// kernel rank of the dimension.
    pub member_cycle_rank: usize,
}

impl ChainClassGraph {
    pub fn multiplicity_free(&self) -> bool {
        self.members == self.charts.len()
    }
}

#[derive(Clone, Debug)]
pub struct JMapDimension {
    pub dim: usize,
    /// One row per local chain per chart, one column per local chain
    /// per related pair; a column holds the chain minus its image.
    pub matrix: IntMatrix,
    pub kernel_rank: usize,
    pub classes: Vec<ChainClassGraph>,
}

/// Kernel analysis of the map assembling local chains into nerve
/// chains, per dimension up to the truncation. Chain bases here keep
/// the degenerate chains, which is the setting where the cycle
/// criterion lives.
#[derive(Clone, Debug)]
pub struct JMapReport {
    pub k: usize,
    pub dims: Vec<JMapDimension>,
    /// Every kernel rank is zero.
    pub injective: bool,
    /// No class has a cyclic chart-level graph.
    pub all_acyclic: bool,
    /// Whether the cycle criterion agreed with the kernel computation.
    pub verdict_matches: bool,
    /// Every class meets each chart in at most one chain. The
    /// criterion is exact on such atlases.
    pub multiplicity_free: bool,
}

fn unnormalized_chains(
    local: &Groupoid,
    dim: usize,
    budget: &mut usize,
) -> Result<Vec<Vec<u32>>, AtlasError> {
    let mut out = Vec::new();
    if dim == 0 {
        for x in 0..local.object_count() {
            if *budget == 0 {
                return Err(AtlasError::TooLarge("chain basis budget exhausted".into()));
            }
            *budget -= 1;
            out.push(vec![x as u32]);
        }
        return Ok(out);
    }
    fn extend(
        local: &Groupoid,
        dim: usize,
        stack: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        budget: &mut usize,
    ) -> Result<(), AtlasError> {
        if stack.len() == dim {
            if *budget == 0 {
                return Err(AtlasError::TooLarge("chain basis budget exhausted".into()));
            }
            *budget -= 1;
            out.push(stack.clone());
            return Ok(());
        }
        let next: Vec<u32> = match stack.last() {
            None => (0..local.arrow_count() as u32).collect(),
            Some(&a) => local.arrows_from(local.tgt(a as usize)).to_vec(),
        };
        for a in next {
            stack.push(a);
            extend(local, dim, stack, out, budget)?;
            stack.pop();
        }
        Ok(())
    }
    let mut stack = Vec::with_capacity(dim);
    extend(local, dim, &mut stack, &mut out, budget)?;
    Ok(out)
}

fn map_chain(pair: &RelationPair, upper: &Groupoid, lower: &Groupoid, key: &[u32], dim: usize) -> Vec<u32> {
    if dim == 0 {
        let img = pair.arrow_map[lower.identity_of(key[0] as usize)];
        vec![upper.src(img as usize) as u32]
    } else {
        key.iter().map(|&a| pair.arrow_map[a as usize]).collect()
    }
}

pub fn j_map_analysis(atlas: &Atlas, k: usize) -> Result<JMapReport, AtlasError> {
    for chart in atlas.charts() {
        if !chart.local.is_connected() {
            return Err(AtlasError::NotIrreducible(format!(
                "chart {} is disconnected",
                chart.name
            )));
        }
    }
    let atlas = transitive_closure(atlas)?;
    let pairs: Vec<&RelationPair> = atlas
        .relation_pairs()
        .iter()
        .filter(|p| p.lower != p.upper && p.arrow_map.iter().all(|&a| a != NO_ARROW))
        .collect();

    let mut dims = Vec::with_capacity(k + 1);
    for dim in 0..=k {
        let mut budget = DEFAULT_DIM_BUDGET;
        let mut offsets = Vec::with_capacity(atlas.chart_count());
        let mut total = 0usize;
        let mut chain_lists = Vec::with_capacity(atlas.chart_count());
        for chart in atlas.charts() {
            offsets.push(total);
            let chains = unnormalized_chains(&chart.local, dim, &mut budget)?;
            total += chains.len();
            chain_lists.push(chains);
        }
        let lookup: Vec<HashMap<&[u32], usize>> = chain_lists
            .iter()
            .map(|chains| chains.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect())
            .collect();

        let mut uf = UnionFind::new(total);
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut cols = 0usize;
        for pair in &pairs {
            cols += chain_lists[pair.lower].len();
        }
        let mut matrix = IntMatrix::zeros(total, cols);
        let mut col = 0usize;
        for pair in &pairs {
            let lower = &atlas.chart(pair.lower).local;
            let upper = &atlas.chart(pair.upper).local;
            for (i, key) in chain_lists[pair.lower].iter().enumerate() {
                let image = map_chain(pair, upper, lower, key, dim);
                let j = lookup[pair.upper][image.as_slice()];
                let a = offsets[pair.lower] + i;
                let b = offsets[pair.upper] + j;
                matrix.set(a, col, BigInt::one());
                matrix.set(b, col, -BigInt::one());
                uf.union(a, b);
                edges.push((a, b));
                col += 1;
            }
        }

        let blocks = uf.blocks();
        let mut block_of = vec![0usize; total];
        for (s, block) in blocks.iter().enumerate() {
            for &m in block {
                block_of[m] = s;
            }
        }
        let chart_of = |id: usize| offsets.partition_point(|&o| o <= id) - 1;
        let mut edge_counts = vec![0usize; blocks.len()];
        for &(a, _) in &edges {
            edge_counts[block_of[a]] += 1;
        }
        let classes: Vec<ChainClassGraph> = blocks
            .iter()
            .enumerate()
            .map(|(s, block)| {
                let chart_set: BTreeSet<usize> =
                    block.iter().map(|&m| chart_of(m)).collect();
                let mut mini = UnionFind::new(chart_set.len());
                let pos: HashMap<usize, usize> =
                    chart_set.iter().enumerate().map(|(i, &c)| (c, i)).collect();
                let mut cyclic = false;
                for pair in &pairs {
                    if let (Some(&a), Some(&b)) = (pos.get(&pair.lower), pos.get(&pair.upper))
                    {
                        if !mini.union(a, b) {
                            cyclic = true;
                        }
                    }
                }
                ChainClassGraph {
                    charts: chart_set.into_iter().collect(),
                    members: block.len(),
                    index_cyclic: cyclic,
                    member_cycle_rank: edge_counts[s] + 1 - block.len(),
                }
            })
            .collect();

        let kernel_rank = cols - rank(&matrix);
        debug_assert_eq!(
            kernel_rank,
            classes.iter().map(|c| c.member_cycle_rank).sum::<usize>()
        );
        dims.push(JMapDimension { dim, matrix, kernel_rank, classes });
    }

    let injective = dims.iter().all(|d| d.kernel_rank == 0);
    let all_acyclic = dims.iter().all(|d| d.classes.iter().all(|c| !c.index_cyclic));
    let multiplicity_free =
        dims.iter().all(|d| d.classes.iter().all(|c| c.multiplicity_free()));
    Ok(JMapReport {
        k,
        dims,
        injective,
        all_acyclic,
        verdict_matches: injective == all_acyclic,
        multiplicity_free,
    })
}

/// Invariant factors of a finite direct sum.
pub fn direct_sum_invariants(parts: &[AbelianInvariants]) -> AbelianInvariants {
    let free_rank = parts.iter().map(|p| p.free_rank).sum();
    let all: Vec<BigInt> = parts.iter().flat_map(|p| p.torsion.iter().cloned()).collect();
    if all.is_empty() {
        return AbelianInvariants { free_rank, torsion: Vec::new() };
    }
    let mut m = IntMatrix::zeros(all.len(), all.len());
    for (i, t) in all.into_iter().enumerate() {
        m.set(i, i, t);
    }
    let dec = smith_normal_form(&m);
    AbelianInvariants {
        free_rank,
        torsion: dec.d.iter().filter(|d| **d > BigInt::one()).cloned().collect(),
    }
}

#[derive(Clone, Debug)]
pub struct DimensionComparison {
    pub dim: usize,
    pub atlas: AbelianInvariants,
    pub locals: AbelianInvariants,
    pub equal: bool,
}

/// For an atlas whose indices are unrelated, homology against the
/// direct sum over the charts: equality from dimension 2 up, and in
/// dimension 1 equal torsion with a free complement.
#[derive(Clone, Debug)]
pub struct LocalHomologyReport {
    pub k: usize,
    pub h1_atlas: AbelianInvariants,
    pub h1_locals: AbelianInvariants,
    pub h1_torsion_matches: bool,
    /// Rank of the free complement, present when the split shape
    /// holds in dimension 1.
    pub h1_free_surplus: Option<usize>,
    pub higher: Vec<DimensionComparison>,
    pub holds: bool,
}

pub fn local_homology_comparison(
    atlas: &Atlas,
    k: usize,
) -> Result<LocalHomologyReport, AtlasError> {
    if !atlas.relation_pairs().is_empty() {
        return Err(AtlasError::PhiNotDiscrete(format!(
            "{} relation pairs present",
            atlas.relation_pairs().len()
        )));
    }
    if k < 2 {
        return Err(AtlasError::Invalid(
            "the comparison needs a truncation of at least 2".into(),
        ));
    }
    let whole = homology(atlas, k)?;
    let mut per_chart = Vec::with_capacity(atlas.chart_count());
    for chart in atlas.charts() {
        let labels =
            chart.frame.iter().map(|&p| atlas.point_label(p).to_string()).collect();
        let single = from_single_groupoid(chart.local.clone(), labels)?;
        per_chart.push(homology(&single, k)?);
    }
    let locals: Vec<AbelianInvariants> = (0..k)
        .map(|n| {
            let parts: Vec<AbelianInvariants> =
                per_chart.iter().map(|h| h.groups[n].clone()).collect();
            direct_sum_invariants(&parts)
        })
        .collect();

    let h1_atlas = whole.groups[1].clone();
    let h1_locals = locals[1].clone();
    let h1_torsion_matches = h1_atlas.torsion == h1_locals.torsion;
    let h1_free_surplus = if h1_torsion_matches && h1_atlas.free_rank >= h1_locals.free_rank
    {
        Some(h1_atlas.free_rank - h1_locals.free_rank)
    } else {
        None
    };
    let higher: Vec<DimensionComparison> = (2..k)
        .map(|n| DimensionComparison {
            dim: n,
            atlas: whole.groups[n].clone(),
            locals: locals[n].clone(),
            equal: whole.groups[n] == locals[n],
        })
        .collect();
    let holds = h1_free_surplus.is_some() && higher.iter().all(|c| c.equal);
    Ok(LocalHomologyReport {
        k,
        h1_atlas,
        h1_locals,
        h1_torsion_matches,
        h1_free_surplus,
        higher,
        holds,
    })
}
