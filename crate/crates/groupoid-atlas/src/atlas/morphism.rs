//! Maps between atlases: a point map, an index map preserving the
//! relation, and a functor per index, natural in the index.

use super::{Atlas, AtlasError, NO_ARROW};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtlasMorphism {
    /// Image of each point.
    pub point_map: Vec<usize>,
    /// Image of each index.
    pub index_map: Vec<usize>,
    /// For each source index, the image of each arrow of its local
    /// groupoid inside the local groupoid of the image index.
    pub arrow_maps: Vec<Vec<u32>>,
}

pub fn identity_morphism(atlas: &Atlas) -> AtlasMorphism {
    AtlasMorphism {
        point_map: (0..atlas.point_count()).collect(),
        index_map: (0..atlas.chart_count()).collect(),
        arrow_maps: atlas
            .charts()
            .iter()
            .map(|c| (0..c.local.arrow_count() as u32).collect())
            .collect(),
    }
}

/// `second` after `first`.
pub fn compose_morphisms(first: &AtlasMorphism, second: &AtlasMorphism) -> AtlasMorphism {
    AtlasMorphism {
        point_map: first.point_map.iter().map(|&p| second.point_map[p]).collect(),
        index_map: first.index_map.iter().map(|&i| second.index_map[i]).collect(),
        arrow_maps: first
            .index_map
            .iter()
            .zip(&first.arrow_maps)
            .map(|(&mid, arrows)| {
                arrows.iter().map(|&a| second.arrow_maps[mid][a as usize]).collect()
            })
            .collect(),
    }
}

pub fn morphisms_equal(f: &AtlasMorphism, g: &AtlasMorphism) -> bool {
    f == g
}

/// Checks that `f` is a morphism from `src` to `dst`: shapes, relation
/// preservation, each arrow map a functor over the point map, and
/// naturality squares along related pairs of `src`.
pub fn validate_morphism(src: &Atlas, dst: &Atlas, f: &AtlasMorphism) -> Result<(), AtlasError> {
    let fail = |msg: String| Err(AtlasError::Invalid(msg));
    if f.point_map.len() != src.point_count()
        || f.index_map.len() != src.chart_count()
        || f.arrow_maps.len() != src.chart_count()
    {
        return fail("morphism tables have the wrong lengths".into());
    }
    if f.point_map.iter().any(|&p| p >= dst.point_count()) {
        return fail("point map goes out of range".into());
    }
    if f.index_map.iter().any(|&i| i >= dst.chart_count()) {
        return fail("index map goes out of range".into());
    }
    for p in src.relation_pairs() {
        if !dst.leq(f.index_map[p.lower], f.index_map[p.upper]) {
            return fail(format!(
                "relation pair ({}, {}) is not preserved",
                p.lower, p.upper
            ));
        }
    }
    for (alpha, chart) in src.charts().iter().enumerate() {
        let image = dst.chart(f.index_map[alpha]);
        let map = &f.arrow_maps[alpha];
        if map.len() != chart.local.arrow_count() {
            return fail(format!("arrow map of index {alpha} has the wrong length"));
        }
        if map.iter().any(|&a| a as usize >= image.local.arrow_count()) {
            return fail(format!("arrow map of index {alpha} goes out of range"));
        }
        for a in 0..chart.local.arrow_count() {
            let s_global = chart.frame[chart.local.src(a)];
            let t_global = chart.frame[chart.local.tgt(a)];
            let fs = f.point_map[s_global];
            let ft = f.point_map[t_global];
            let img = map[a] as usize;
            let (is_ok, it_ok) = (
                image.frame[image.local.src(img)] == fs,
                image.frame[image.local.tgt(img)] == ft,
            );
            if !is_ok || !it_ok {
                return fail(format!(
                    "index {alpha}: arrow {a} does not follow the point map"
                ));
            }
            if chart.local.is_identity(a) && !image.local.is_identity(img) {
                return fail(format!(
                    "index {alpha}: identity at {} is not sent to an identity",
                    src.point_label(s_global)
                ));
            }
        }
        for g in 0..chart.local.arrow_count() {
            for &fa in chart.local.arrows_into(chart.local.src(g)) {
                let fa = fa as usize;
                let gf = chart.local.compose(g, fa).unwrap();
                let lhs = map[gf] as usize;
                let rhs = image.local.compose(map[g] as usize, map[fa] as usize);
                if rhs != Some(lhs) {
                    return fail(format!(
                        "index {alpha}: composite of ({g}, {fa}) is not preserved"
                    ));
                }
            }
        }
    }
    for p in src.relation_pairs() {
        let la = f.index_map[p.lower];
        let lb = f.index_map[p.upper];
        for a in 0..p.arrow_map.len() {
            if p.arrow_map[a] == NO_ARROW {
                continue;
            }
            let down_then_right = f.arrow_maps[p.upper][p.arrow_map[a] as usize];
            let right = f.arrow_maps[p.lower][a];
            let right_then_down = if la == lb {
                Some(right as usize)
            } else {
                dst.pair_between(la, lb)
                    .and_then(|q| q.arrow_map.get(right as usize).copied())
                    .and_then(|x| if x == NO_ARROW { None } else { Some(x as usize) })
            };
            if right_then_down != Some(down_then_right as usize) {
                return fail(format!(
                    "pair ({}, {}): naturality fails at arrow {}",
                    p.lower, p.upper, a
                ));
            }
        }
    }
    Ok(())
}

/// Whether `f` is a corestriction of `g`: pointwise smaller indices,
/// with the structure functor of `dst` carrying each local functor of
/// `f` onto the one of `g`.
pub fn is_corestriction(src: &Atlas, dst: &Atlas, f: &AtlasMorphism, g: &AtlasMorphism) -> bool {
    for alpha in 0..src.chart_count() {
        let fa = f.index_map[alpha];
        let ga = g.index_map[alpha];
        if !dst.leq(fa, ga) {
            return false;
        }
        for a in 0..src.chart(alpha).local.arrow_count() {
            let lifted = if fa == ga {
                Some(f.arrow_maps[alpha][a] as usize)
            } else {
                let pair = match dst.pair_between(fa, ga) {
                    Some(p) => p,
                    None => return false,
                };
                dst.apply_functor(pair, f.arrow_maps[alpha][a] as usize)
            };
            if lifted != Some(g.arrow_maps[alpha][a] as usize) {
                return false;
            }
        }
    }
    true
}
