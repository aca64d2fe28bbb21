//! Brute-force oracles that freeze expected values for the main suite.
//!
//! Everything here is independent of the library on purpose: groups are
//! generated from permutations by naive closure, orbits by naive left
//! multiplication, nerve quotients by explicit chain enumeration over a
//! hand-rolled union-find. The frozen numbers are asserted here once and
//! reused as expectations elsewhere.

use std::collections::{BTreeSet, HashMap, HashSet};

fn find(parent: &mut Vec<usize>, x: usize) -> usize {
    if parent[x] != x {
        let r = find(parent, parent[x]);
        parent[x] = r;
    }
    parent[x]
}

fn union(parent: &mut Vec<usize>, a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[rb] = ra;
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn perm_closure(gens: &[Vec<usize>], degree: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..degree).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(id.clone());
    let mut queue = vec![id];
    while let Some(p) = queue.pop() {
        for g in gens {
            let q = compose(g, &p);
            if seen.insert(q.clone()) {
                queue.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

struct Table {
    n: usize,
    mul: Vec<usize>,
}

fn table_from_perms(gens: &[Vec<usize>], degree: usize) -> Table {
    let elems = perm_closure(gens, degree);
    let index: HashMap<Vec<usize>, usize> =
        elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let n = elems.len();
    let mut mul = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = index[&compose(&elems[a], &elems[b])];
        }
    }
    Table { n, mul }
}

impl Table {
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let id = (0..self.n).find(|&e| (0..self.n).all(|x| self.mul(e, x) == x)).unwrap();
        let mut seen: BTreeSet<usize> = [id].into();
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(g, x);
                if seen.insert(y) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    fn left_orbits(&self, sub: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        for g in 0..self.n {
            for &h in sub {
                union(&mut parent, g, self.mul(h, g));
            }
        }
        let mut orbits: HashMap<usize, BTreeSet<usize>> = HashMap::new();
        for g in 0..self.n {
            let r = find(&mut parent, g);
            orbits.entry(r).or_default().insert(g);
        }
        let mut out: Vec<BTreeSet<usize>> = orbits.into_values().collect();
        out.sort();
        out
    }
}

fn d3() -> Table {
    // r = 3-cycle, s = transposition
    table_from_perms(&[vec![1, 2, 0], vec![1, 0, 2]], 3)
}

fn d3_cover() -> Vec<BTreeSet<usize>> {
    let g = d3();
    let r_gen = (0..6).find(|&x| g.closure(&[x]).len() == 3).unwrap();
    let s_gen = (0..6)
        .find(|&x| {
            let c = g.closure(&[x]);
            c.len() == 2
        })
        .unwrap();
    let mut cover = g.left_orbits(&g.closure(&[r_gen]));
    cover.extend(g.left_orbits(&g.closure(&[s_gen])));
    cover
}

fn tuples(support: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &out {
            for &x in support {
                let mut t2 = t.clone();
                t2.push(x);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

fn nondegenerate(t: &[usize]) -> bool {
    t.windows(2).all(|w| w[0] != w[1])
}

/// Nondegenerate weak-nerve counts per dimension: tuples without adjacent
/// repeats whose support lies inside one cover member.
fn weak_counts(cover: &[BTreeSet<usize>], kmax: usize) -> Vec<usize> {
    (0..=kmax)
        .map(|k| {
            let mut seen: HashSet<Vec<usize>> = HashSet::new();
            for c in cover {
                let support: Vec<usize> = c.iter().copied().collect();
                for t in tuples(&support, k + 1) {
                    if nondegenerate(&t) {
                        seen.insert(t);
                    }
                }
            }
            seen.len()
        })
        .collect()
}

/// Strong-nerve class counts for atlases whose local groupoids are tree
/// groupoids (at most one arrow between any two objects). A k-chain in a
/// tree groupoid is exactly an object tuple of length k+1, and every
/// structural functor is the inclusion, so chains are merged across
/// related indices when the tuples agree. A class counts as degenerate
/// when any member tuple has an adjacent repeat; with inclusions all
/// members share one tuple.
fn strong_counts_tree(locals: &[Vec<usize>], leq: &[(usize, usize)], kmax: usize) -> Vec<usize> {
    (0..=kmax)
        .map(|k| {
            let mut nodes: Vec<(usize, Vec<usize>)> = Vec::new();
            let mut id: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            for (i, objs) in locals.iter().enumerate() {
                for t in tuples(objs, k + 1) {
                    id.insert((i, t.clone()), nodes.len());
                    nodes.push((i, t));
                }
            }
            let mut parent: Vec<usize> = (0..nodes.len()).collect();
            for &(a, b) in leq {
                for t in tuples(&locals[a], k + 1) {
                    let na = id[&(a, t.clone())];
                    let nb = id[&(b, t)];
                    union(&mut parent, na, nb);
                }
            }
            let mut degenerate_roots: HashSet<usize> = HashSet::new();
            for i in 0..nodes.len() {
                if !nondegenerate(&nodes[i].1) {
                    let r = find(&mut parent, i);
                    degenerate_roots.insert(r);
                }
            }
            let mut roots: HashSet<usize> = HashSet::new();
            for i in 0..nodes.len() {
                let r = find(&mut parent, i);
                roots.insert(r);
            }
            roots.iter().filter(|r| !degenerate_roots.contains(r)).count()
        })
        .collect()
}

#[test]
fn oracle_dihedral_weak_nerve_counts() {
    let counts = weak_counts(&d3_cover(), 4);
    println!("dihedral weak nerve counts: {counts:?}");
    assert_eq!(counts, vec![6, 18, 30, 54, 102]);
}

#[test]
fn oracle_dihedral_cover_shape() {
    let cover = d3_cover();
    let sizes: Vec<usize> = cover.iter().map(|c| c.len()).collect();
    // two rotation orbits of size 3, three reflection orbits of size 2
    let mut sorted = sizes.clone();
    sorted.sort();
    println!("dihedral cover sizes: {sizes:?}");
    assert_eq!(sorted, vec![2, 2, 2, 3, 3]);
    assert_eq!(cover.len(), 5);
}

#[test]
fn oracle_dihedral_vietoris_skeleton() {
    let cover = d3_cover();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut triangles: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    for c in &cover {
        let v: Vec<usize> = c.iter().copied().collect();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                edges.insert((v[i], v[j]));
                for k in j + 1..v.len() {
                    triangles.insert((v[i], v[j], v[k]));
                }
            }
        }
    }
    println!("dihedral vietoris: V=6 E={} T={}", edges.len(), triangles.len());
    assert_eq!(edges.len(), 9);
    assert_eq!(triangles.len(), 2);
    // euler characteristic -1, so with both triangles independent the
    // edge-path group is free of rank 2
    assert_eq!(6 as isize - 9 + 2, -1);
}

#[test]
fn oracle_dihedral_strong_nerve_counts() {
    // pipeline atlas by hand: local components of the two action groupoids
    // are tree groupoids because left multiplication is free; regularizing
    // appends one singleton per point below the components containing it
    let cover = d3_cover();
    let mut locals: Vec<Vec<usize>> = cover.iter().map(|c| c.iter().copied().collect()).collect();
    let mut leq: Vec<(usize, usize)> = Vec::new();
    for x in 0..6 {
        let sing = locals.len();
        locals.push(vec![x]);
        for (i, c) in cover.iter().enumerate() {
            if c.contains(&x) {
                leq.push((sing, i));
            }
        }
    }
    let counts = strong_counts_tree(&locals, &leq, 4);
    println!("dihedral strong nerve counts: {counts:?}");
    assert_eq!(counts, vec![6, 18, 30, 54, 102]);
}

#[test]
fn oracle_rombitos_nerve_counts() {
    // two tree locals sharing two points, discrete index relation
    let base: Vec<Vec<usize>> = vec![vec![0, 1, 2], vec![0, 1, 3]];
    let mut locals = base.clone();
    let mut leq = Vec::new();
    for x in 0..4 {
        let sing = locals.len();
        locals.push(vec![x]);
        for (i, objs) in base.iter().enumerate() {
            if objs.contains(&x) {
                leq.push((sing, i));
            }
        }
    }
    let strong = strong_counts_tree(&locals, &leq, 4);
    println!("rombitos strong nerve counts: {strong:?}");
    assert_eq!(strong, vec![4, 12, 24, 48, 96]);

    let cover: Vec<BTreeSet<usize>> = base.iter().map(|c| c.iter().copied().collect()).collect();
    let weak = weak_counts(&cover, 4);
    println!("rombitos weak nerve counts: {weak:?}");
    assert_eq!(weak, vec![4, 10, 22, 46, 94]);
}

#[test]
fn oracle_one_sphere_nerve_counts() {
    // boundary of the 2-simplex: three vertex locals, three edge locals
    let locals: Vec<Vec<usize>> =
        vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]];
    let leq = vec![(0, 3), (0, 4), (1, 3), (1, 5), (2, 4), (2, 5)];
    let strong = strong_counts_tree(&locals, &leq, 4);
    println!("one-sphere strong nerve counts: {strong:?}");
    assert_eq!(strong, vec![3, 6, 6, 6, 6]);

    let cover: Vec<BTreeSet<usize>> =
        locals.iter().map(|c| c.iter().copied().collect()).collect();
    let weak = weak_counts(&cover, 4);
    println!("one-sphere weak nerve counts: {weak:?}");
    assert_eq!(weak, strong);
}

fn gl2_pi0(m: usize) -> usize {
    let idx = |a: usize, b: usize, c: usize, d: usize| ((a * m + b) * m + c) * m + d;
    let unit = |x: usize| (1..m).any(|y| x * y % m == 1) || (m == 1);
    let det = |a: usize, b: usize, c: usize, d: usize| (a * d + m * m - b * c % (m * m)) % m;
    let mut invertible = vec![false; m * m * m * m];
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    invertible[idx(a, b, c, d)] = unit(det(a, b, c, d));
                }
            }
        }
    }
    // elementary generators: I + r e_01 and I + r e_10, r nonzero
    let mut gens: Vec<[usize; 4]> = Vec::new();
    for r in 1..m {
        gens.push([1, r, 0, 1]);
        gens.push([1, 0, r, 1]);
    }
    let mut parent: Vec<usize> = (0..m * m * m * m).collect();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    if !invertible[idx(a, b, c, d)] {
                        continue;
                    }
                    for g in &gens {
                        // g * M mod m
                        let (ga, gb, gc, gd) = (g[0], g[1], g[2], g[3]);
                        let (na, nb) = ((ga * a + gb * c) % m, (ga * b + gb * d) % m);
                        let (nc, nd) = ((gc * a + gd * c) % m, (gc * b + gd * d) % m);
                        union(&mut parent, idx(a, b, c, d), idx(na, nb, nc, nd));
                    }
                }
            }
        }
    }
    let mut roots = HashSet::new();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    if invertible[idx(a, b, c, d)] {
                        roots.insert(find(&mut parent, idx(a, b, c, d)));
                    }
                }
            }
        }
    }
    roots.len()
}

#[test]
fn oracle_gl2_component_counts() {
    let counts: Vec<usize> = (2..=5).map(gl2_pi0).collect();
    println!("gl2 component counts for m=2..5: {counts:?}");
    assert_eq!(counts, vec![1, 2, 2, 4]);
    // equals the unit-group orders
    let units: Vec<usize> =
        (2..=5).map(|m| (1..m).filter(|x| num_gcd(*x, m) == 1).count()).collect();
    assert_eq!(counts, units);
}

fn num_gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn oracle_z2_bar_boundaries() {
    // one-object groupoid with arrow group Z/2 = {0,1} under xor; full
    // k-chains are words over {0,1}; nondegenerate ones avoid the identity 0
    let boundary_entry = |k: usize| -> i64 {
        // normalized boundary of the all-ones chain in degree k, expressed
        // in the single nondegenerate basis chain of degree k-1
        let chain = vec![1u8; k];
        let mut total = 0i64;
        for i in 0..=k {
            let face: Vec<u8> = if i == 0 {
                chain[1..].to_vec()
            } else if i == k {
                chain[..k - 1].to_vec()
            } else {
                let mut f = Vec::new();
                f.extend_from_slice(&chain[..i - 1]);
                f.push(chain[i - 1] ^ chain[i]);
                f.extend_from_slice(&chain[i + 1..]);
                f
            };
            if face.iter().all(|&x| x == 1) {
                total += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        total
    };
    let ds: Vec<i64> = (1..=5).map(boundary_entry).collect();
    println!("z2 bar boundaries d1..d5: {ds:?}");
    assert_eq!(ds, vec![0, 2, 0, 2, 0]);
}

#[test]
fn oracle_dihedral_intersection_closure() {
    let g = d3();
    let r_gen = (0..6).find(|&x| g.closure(&[x]).len() == 3).unwrap();
    let s_gen = (0..6).find(|&x| g.closure(&[x]).len() == 2).unwrap();
    let hr = g.closure(&[r_gen]);
    let hs = g.closure(&[s_gen]);
    let meet: BTreeSet<usize> = hr.intersection(&hs).copied().collect();
    let family: BTreeSet<BTreeSet<usize>> = [hr, hs, meet].into();
    println!("dihedral intersection-closed family size: {}", family.len());
    assert_eq!(family.len(), 3);
}

#[test]
fn oracle_smith_determinant_divisors() {
    // invariant factors d_i = gcd(i-minors)/gcd((i-1)-minors), independent
    // of any reduction strategy
    fn minors_gcd(m: &[Vec<i64>], k: usize) -> i64 {
        let rows = m.len();
        let cols = m[0].len();
        let mut g = 0i64;
        let row_sets = subsets(rows, k);
        let col_sets = subsets(cols, k);
        for rs in &row_sets {
            for cs in &col_sets {
                let d = det(&submatrix(m, rs, cs));
                g = gcd64(g, d.abs());
            }
        }
        g
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 0..n {
            for mut rest in subsets_from(first + 1, n, k - 1) {
                let mut s = vec![first];
                s.append(&mut rest);
                out.push(s);
            }
        }
        out
    }
    fn subsets_from(start: usize, n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in start..n {
            for mut rest in subsets_from(first + 1, n, k - 1) {
                let mut s = vec![first];
                s.append(&mut rest);
                out.push(s);
            }
        }
        out
    }
    fn submatrix(m: &[Vec<i64>], rs: &[usize], cs: &[usize]) -> Vec<Vec<i64>> {
        rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect()
    }
    fn det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return m[0][0];
        }
        let mut total = 0;
        for j in 0..n {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|row| {
                    row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &v)| v).collect()
                }).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            total += sign * m[0][j] * det(&minor);
        }
        total
    }
    fn gcd64(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd64(b, a % b)
        }
    }
    fn invariant_factors(m: &[Vec<i64>]) -> Vec<i64> {
        let rank_max = m.len().min(m[0].len());
        let mut prev = 1i64;
        let mut out = Vec::new();
        for k in 1..=rank_max {
            let g = minors_gcd(m, k);
            if g == 0 {
                break;
            }
            out.push(g / prev);
            prev = g;
        }
        out
    }

    assert_eq!(invariant_factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    assert_eq!(invariant_factors(&[vec![0, 0], vec![3, -1]]), vec![1]);
    assert_eq!(invariant_factors(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
    assert_eq!(
        invariant_factors(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
        vec![1, 1, 1]
    );
    // the relator matrix of <a,b | aba^-1b^-1, a^3 b^-1> has invariant
    // factors (1): free rank 1, no torsion
    assert_eq!(invariant_factors(&[vec![0, 0], vec![3, -1]]), vec![1]);
}
