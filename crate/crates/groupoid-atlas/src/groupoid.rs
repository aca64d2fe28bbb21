//! Finite groupoids with explicit composition tables.

use thiserror::Error;

use crate::algebra::{group_from_table, FiniteGroup, GroupError};
use crate::util::UnionFind;

#[derive(Debug, Error)]
pub enum GroupoidError {
    #[error("not a groupoid: {0}")]
    NotAGroupoid(String),
    #[error("not a group action: {0}")]
    NotAnAction(String),
    #[error("a tree groupoid needs at least one object")]
    EmptyObjectSet,
    #[error("object {0} not found")]
    ObjectNotFound(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A finite groupoid. Arrows are stored extensionally: every composite
/// is in the table, keyed by the pair of arrow ids.
///
/// `compose(g, f)` is `g` after `f`, defined exactly when
/// `tgt(f) = src(g)`. Arrow ids are ordered by (src, tgt, label rank)
/// at construction time so downstream choices are reproducible.
#[derive(Clone, Debug)]
pub struct Groupoid {
    objects: usize,
    src: Vec<u32>,
    tgt: Vec<u32>,
    identity: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
    compose_keys: Vec<u64>,
    compose_vals: Vec<u32>,
    out_arrows: Vec<Vec<u32>>,
    in_arrows: Vec<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub struct GroupoidComponent {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Groupoid {
    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn arrow_count(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, a: usize) -> usize {
        self.src[a] as usize
    }

    pub fn tgt(&self, a: usize) -> usize {
        self.tgt[a] as usize
    }

    pub fn identity_of(&self, x: usize) -> usize {
        self.identity[x] as usize
    }

    pub fn is_identity(&self, a: usize) -> bool {
        self.identity[self.src[a] as usize] as usize == a
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    /// `g` after `f`; None when the endpoints do not match.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let key = g as u64 * self.arrow_count() as u64 + f as u64;
        self.compose_keys
            .binary_search(&key)
            .ok()
            .map(|i| self.compose_vals[i] as usize)
    }

    pub fn arrows_from(&self, x: usize) -> &[u32] {
        &self.out_arrows[x]
    }

    pub fn arrows_into(&self, x: usize) -> &[u32] {
        &self.in_arrows[x]
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        self.out_arrows[x]
            .iter()
            .map(|&a| a as usize)
            .filter(|&a| self.tgt(a) == y)
            .collect()
    }

    pub fn components(&self) -> Vec<GroupoidComponent> {
        let mut uf = UnionFind::new(self.objects);
        for a in 0..self.arrow_count() {
            uf.union(self.src(a), self.tgt(a));
        }
        let blocks = uf.blocks();
        let mut index_of_root = vec![usize::MAX; self.objects];
        for (i, block) in blocks.iter().enumerate() {
            for &x in block {
                index_of_root[x] = i;
            }
        }
        let mut out: Vec<GroupoidComponent> = blocks
            .into_iter()
            .map(|objects| GroupoidComponent { objects, arrows: Vec::new() })
            .collect();
        for a in 0..self.arrow_count() {
            out[index_of_root[self.src(a)]].arrows.push(a);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Restricts to the arrows with both ends in `objs`. Objects are
    /// renumbered by their position in the sorted subset; the second
    /// return value maps new arrow ids to old ones.
    pub fn full_subgroupoid(&self, objs: &[usize]) -> (Groupoid, Vec<usize>) {
        let mut s: Vec<usize> = objs.to_vec();
        s.sort_unstable();
        s.dedup();
        let mut new_obj = vec![usize::MAX; self.objects];
        for (i, &x) in s.iter().enumerate() {
            new_obj[x] = i;
        }
        let keep: Vec<usize> = (0..self.arrow_count())
            .filter(|&a| new_obj[self.src(a)] != usize::MAX && new_obj[self.tgt(a)] != usize::MAX)
            .collect();
        let mut new_arrow = vec![u32::MAX; self.arrow_count()];
        for (i, &a) in keep.iter().enumerate() {
            new_arrow[a] = i as u32;
        }
        let src = keep.iter().map(|&a| new_obj[self.src(a)] as u32).collect();
        let tgt = keep.iter().map(|&a| new_obj[self.tgt(a)] as u32).collect();
        let identity = s.iter().map(|&x| new_arrow[self.identity_of(x)]).collect();
        let inverse = keep.iter().map(|&a| new_arrow[self.inverse(a)]).collect();
        let labels = keep.iter().map(|&a| self.labels[a].clone()).collect();
        let mut compose = Vec::new();
        for &g in &keep {
            for &f in &keep {
                if self.tgt(f) == self.src(g) {
                    let gf = self.compose(g, f).unwrap();
                    compose.push((new_arrow[g] as usize, new_arrow[f] as usize, new_arrow[gf] as usize));
                }
            }
        }
        let g = assemble(s.len(), src, tgt, identity, inverse, labels, &compose);
        (g, keep)
    }

    /// The group of loops at `x`.
    pub fn vertex_group(&self, x: usize) -> Result<FiniteGroup, GroupoidError> {
        if x >= self.objects {
            return Err(GroupoidError::ObjectNotFound(x));
        }
        let loops = self.hom(x, x);
        let pos = |a: usize| loops.iter().position(|&b| b == a).unwrap();
        let table: Vec<Vec<usize>> = loops
            .iter()
            .map(|&a| loops.iter().map(|&b| pos(self.compose(a, b).unwrap())).collect())
            .collect();
        let labels = loops.iter().map(|&a| self.labels[a].clone()).collect();
        Ok(group_from_table(&table, Some(labels))?)
    }

    /// Exhaustive structural check: endpoints, units, inverses, the
    /// totality of the composition table, and associativity on all
    /// composable triples. Quadratic to cubic in arrows per object.
    pub fn verify(&self) -> Result<(), GroupoidError> {
        let bad = |msg: String| Err(GroupoidError::NotAGroupoid(msg));
        let m = self.arrow_count();
        for x in 0..self.objects {
            let e = self.identity_of(x);
            if e >= m || self.src(e) != x || self.tgt(e) != x {
                return bad(format!("identity of object {x} is not a loop at {x}"));
            }
        }
        for a in 0..m {
            if self.src(a) >= self.objects || self.tgt(a) >= self.objects {
                return bad(format!("arrow {a} has an endpoint out of range"));
            }
            let i = self.inverse(a);
            if i >= m || self.src(i) != self.tgt(a) || self.tgt(i) != self.src(a) {
                return bad(format!("inverse of arrow {a} has mismatched endpoints"));
            }
            if self.compose(i, a) != Some(self.identity_of(self.src(a)))
                || self.compose(a, i) != Some(self.identity_of(self.tgt(a)))
            {
                return bad(format!("arrow {a} composed with its inverse is not the identity"));
            }
        }
        let mut exp_out = vec![Vec::new(); self.objects];
        let mut exp_in = vec![Vec::new(); self.objects];
        for a in 0..m {
            exp_out[self.src(a)].push(a as u32);
            exp_in[self.tgt(a)].push(a as u32);
        }
        if exp_out != self.out_arrows || exp_in != self.in_arrows {
            return bad("the arrow adjacency lists disagree with the endpoint maps".into());
        }
        let composable: u64 = (0..self.objects)
            .map(|y| self.in_arrows[y].len() as u64 * self.out_arrows[y].len() as u64)
            .sum();
        if self.compose_keys.len() as u64 != composable {
            return bad(format!(
                "the composition table has {} entries for {composable} composable pairs",
                self.compose_keys.len(),
            ));
        }
        let mw = m as u64;
        let mut prev = None;
        for (&key, &val) in self.compose_keys.iter().zip(&self.compose_vals) {
            if prev.is_some_and(|p| p >= key) {
                return bad("the composition table keys are not strictly increasing".into());
            }
            prev = Some(key);
            let g = (key / mw) as usize;
            let f = (key % mw) as usize;
            if g >= m || f >= m || self.tgt(f) != self.src(g) {
                return bad(format!("composite defined for non-composable ({g}, {f})"));
            }
            let gf = val as usize;
            if gf >= m || self.src(gf) != self.src(f) || self.tgt(gf) != self.tgt(g) {
                return bad(format!("composite of ({g}, {f}) has wrong endpoints"));
            }
        }
        for f in 0..m {
            let e_src = self.identity_of(self.src(f));
            let e_tgt = self.identity_of(self.tgt(f));
            if self.compose(f, e_src) != Some(f) || self.compose(e_tgt, f) != Some(f) {
                return bad(format!("identity is not a unit for arrow {f}"));
            }
        }
        // dense per-object composite tables keep the exhaustive
        // associativity sweep to a few array reads per triple
        let mut pos_out = vec![0u32; m];
        let mut pos_in = vec![0u32; m];
        for y in 0..self.objects {
            for (i, &a) in self.out_arrows[y].iter().enumerate() {
                pos_out[a as usize] = i as u32;
            }
            for (i, &a) in self.in_arrows[y].iter().enumerate() {
                pos_in[a as usize] = i as u32;
            }
        }
        let mut tables = Vec::with_capacity(self.objects);
        for y in 0..self.objects {
            let ins = &self.in_arrows[y];
            let outs = &self.out_arrows[y];
            let mut t = vec![0u32; ins.len() * outs.len()];
            for (gi, &g) in outs.iter().enumerate() {
                for (fi, &f) in ins.iter().enumerate() {
                    match self.compose(g as usize, f as usize) {
                        Some(gf) => t[gi * ins.len() + fi] = gf as u32,
                        None => return bad(format!("missing composite for ({g}, {f})")),
                    }
                }
            }
            tables.push(t);
        }
        for f in 0..m {
            let y = self.tgt(f);
            let fy = pos_in[f] as usize;
            let iny = self.in_arrows[y].len();
            for (gi, &g) in self.out_arrows[y].iter().enumerate() {
                let g = g as usize;
                let gf = tables[y][gi * iny + fy] as usize;
                let z = self.tgt(g);
                let inz = self.in_arrows[z].len();
                let g_in = pos_in[g] as usize;
                let gf_in = pos_in[gf] as usize;
                for (hi, &h) in self.out_arrows[z].iter().enumerate() {
                    let hg = tables[z][hi * inz + g_in] as usize;
                    let h_gf = tables[z][hi * inz + gf_in];
                    let hg_f = tables[y][pos_out[hg] as usize * iny + fy];
                    if h_gf != hg_f {
                        return bad(format!("associativity fails at ({h}, {g}, {f})"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn assemble(
    objects: usize,
    src: Vec<u32>,
    tgt: Vec<u32>,
    identity: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
    composition: &[(usize, usize, usize)],
) -> Groupoid {
    let m = src.len() as u64;
    let mut entries: Vec<(u64, u32)> = composition
        .iter()
        .map(|&(g, f, gf)| (g as u64 * m + f as u64, gf as u32))
        .collect();
    entries.sort_unstable();
    let compose_keys = entries.iter().map(|e| e.0).collect();
    let compose_vals = entries.iter().map(|e| e.1).collect();
    let mut out_arrows = vec![Vec::new(); objects];
    let mut in_arrows = vec![Vec::new(); objects];
    for a in 0..src.len() {
        out_arrows[src[a] as usize].push(a as u32);
        in_arrows[tgt[a] as usize].push(a as u32);
    }
    Groupoid {
        objects,
        src,
        tgt,
        identity,
        inverse,
        labels,
        compose_keys,
        compose_vals,
        out_arrows,
        in_arrows,
    }
}

/// Builds and fully verifies a groupoid from explicit data. Arrows are
/// given as (src, tgt, label); `composition` lists (g, f, g∘f).
pub fn from_parts(
    objects: usize,
    arrows: Vec<(usize, usize, String)>,
    identities: Vec<usize>,
    inverses: Vec<usize>,
    composition: &[(usize, usize, usize)],
) -> Result<Groupoid, GroupoidError> {
    let m = arrows.len();
    if identities.len() != objects || inverses.len() != m {
        return Err(GroupoidError::NotAGroupoid(
            "identity or inverse table has the wrong length".into(),
        ));
    }
    for &(s, t, _) in &arrows {
        if s >= objects || t >= objects {
            return Err(GroupoidError::NotAGroupoid("arrow endpoint out of range".into()));
        }
    }
    for &(g, f, gf) in composition {
        if g >= m || f >= m || gf >= m {
            return Err(GroupoidError::NotAGroupoid("composition entry out of range".into()));
        }
    }
    let mut seen = std::collections::HashSet::new();
    for &(g, f, _) in composition {
        if !seen.insert((g, f)) {
            return Err(GroupoidError::NotAGroupoid(format!(
                "duplicate composition entry for ({g}, {f})"
            )));
        }
    }
    let src = arrows.iter().map(|a| a.0 as u32).collect();
    let tgt = arrows.iter().map(|a| a.1 as u32).collect();
    let labels = arrows.into_iter().map(|a| a.2).collect();
    let identity = identities.iter().map(|&a| a as u32).collect();
    let inverse = inverses.iter().map(|&a| a as u32).collect();
    let g = assemble(objects, src, tgt, identity, inverse, labels, composition);
    g.verify()?;
    Ok(g)
}

/// The groupoid of a group action: objects are the points, arrows are
/// the pairs (g, x) from x to g·x. Valid by construction once the
/// action laws are checked.
pub fn action_groupoid(
    group: &FiniteGroup,
    points: usize,
    act: impl Fn(usize, usize) -> usize,
) -> Result<Groupoid, GroupoidError> {
    let n = group.order();
    for x in 0..points {
        if act(0, x) != x {
            return Err(GroupoidError::NotAnAction(format!("identity moves point {x}")));
        }
        for g in 0..n {
            if act(g, x) >= points {
                return Err(GroupoidError::NotAnAction(format!("({g}, {x}) maps out of range")));
            }
            for h in 0..n {
                if act(h, act(g, x)) != act(group.mul(h, g), x) {
                    return Err(GroupoidError::NotAnAction(format!(
                        "compatibility fails at ({h}, {g}, {x})"
                    )));
                }
            }
        }
    }
    // arrows ordered by (src, tgt, group element)
    let mut order: Vec<(usize, usize)> = Vec::with_capacity(n * points);
    for x in 0..points {
        for g in 0..n {
            order.push((x, g));
        }
    }
    order.sort_unstable_by_key(|&(x, g)| (x, act(g, x), g));
    let mut arrow_of = vec![u32::MAX; n * points];
    let mut src = Vec::with_capacity(order.len());
    let mut tgt = Vec::with_capacity(order.len());
    let mut labels = Vec::with_capacity(order.len());
    for (a, &(x, g)) in order.iter().enumerate() {
        arrow_of[g * points + x] = a as u32;
        src.push(x as u32);
        tgt.push(act(g, x) as u32);
        labels.push(format!("({};{})", group.label(g), x));
    }
    let identity: Vec<u32> = (0..points).map(|x| arrow_of[x]).collect();
    let inverse: Vec<u32> = order
        .iter()
        .map(|&(x, g)| arrow_of[group.inv(g) * points + act(g, x)])
        .collect();
    let mut out_arrows = vec![Vec::new(); points];
    let mut in_arrows = vec![Vec::new(); points];
    for a in 0..src.len() {
        out_arrows[src[a] as usize].push(a as u32);
        in_arrows[tgt[a] as usize].push(a as u32);
    }
    let m = order.len() as u64;
    let mut compose_keys = Vec::with_capacity(points * n * n);
    let mut compose_vals = Vec::with_capacity(points * n * n);
    for b in 0..order.len() {
        let (y, h) = order[b];
        for &a in &in_arrows[y] {
            let (x, g) = order[a as usize];
            compose_keys.push(b as u64 * m + a as u64);
            compose_vals.push(arrow_of[group.mul(h, g) * points + x]);
        }
    }
    Ok(Groupoid {
        objects: points,
        src,
        tgt,
        identity,
        inverse,
        labels,
        compose_keys,
        compose_vals,
        out_arrows,
        in_arrows,
    })
}

/// The simply connected groupoid on `n` objects: exactly one arrow for
/// each ordered pair.
pub fn tree_groupoid(n: usize) -> Result<Groupoid, GroupoidError> {
    if n == 0 {
        return Err(GroupoidError::EmptyObjectSet);
    }
    let mut src = Vec::with_capacity(n * n);
    let mut tgt = Vec::with_capacity(n * n);
    let mut labels = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            src.push(x as u32);
            tgt.push(y as u32);
            labels.push(format!("t{x}_{y}"));
        }
    }
    let arrow = |x: usize, y: usize| (x * n + y) as u32;
    let identity: Vec<u32> = (0..n).map(|x| arrow(x, x)).collect();
    let inverse: Vec<u32> = (0..n * n).map(|a| arrow(a % n, a / n)).collect();
    let mut composition = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                composition.push((arrow(y, z) as usize, arrow(x, y) as usize, arrow(x, z) as usize));
            }
        }
    }
    Ok(assemble(n, src, tgt, identity, inverse, labels, &composition))
}

/// Identities only: one isolated object per point.
pub fn discrete_groupoid(n: usize) -> Groupoid {
    let src: Vec<u32> = (0..n as u32).collect();
    let labels = (0..n).map(|x| format!("id{x}")).collect();
    let composition: Vec<(usize, usize, usize)> = (0..n).map(|a| (a, a, a)).collect();
    assemble(n, src.clone(), src.clone(), src.clone(), src, labels, &composition)
}
