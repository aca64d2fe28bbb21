use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

/// Default cap on closure enumeration sizes.
pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("closure exceeded the cap of {0} elements")]
    ClosureBudgetExceeded(usize),
}

/// A finite group as a multiplication table over `0..order`.
///
/// Element `0` is always the identity; constructors relabel to enforce
/// this.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup { order: 1, mul: vec![0], inv: vec![0], labels: vec!["e".into()] }
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = ((a + b) % n) as u32;
            }
        }
        let inv = (0..n).map(|a| ((n - a) % n) as u32).collect();
        let labels = (0..n)
            .map(|a| if a == 0 { "e".to_string() } else { format!("t{a}") })
            .collect();
        FiniteGroup { order: n, mul, inv, labels }
    }

    /// Closure of a generating set, sorted.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen: BTreeSet<usize> = [0].into();
        let mut queue: VecDeque<usize> = [0].into();
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_subgroup(&self, elements: &[usize]) -> Result<(), GroupError> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if !set.contains(&0) {
            return Err(GroupError::NotASubgroup("missing the identity".into()));
        }
        for &a in &set {
            if a >= self.order {
                return Err(GroupError::NotASubgroup(format!("element {a} out of range")));
            }
            if !set.contains(&self.inv(a)) {
                return Err(GroupError::NotASubgroup(format!(
                    "inverse of {} not in the set",
                    self.labels[a]
                )));
            }
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(GroupError::NotASubgroup(format!(
                        "{} * {} escapes the set",
                        self.labels[a], self.labels[b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The subgroup on `elements` as a group in its own right, with the
    /// parent's labels. The second return value maps new indices back to
    /// parent elements; it is sorted, so the identity stays first.
    pub fn subgroup_as_group(
        &self,
        elements: &[usize],
    ) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        self.is_subgroup(elements)?;
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos = |g: usize| elems.binary_search(&g).unwrap();
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        let labels = elems.iter().map(|&g| self.labels[g].clone()).collect();
        let group = group_from_table(&table, Some(labels))?;
        Ok((group, elems))
    }

    /// Partition of the group into left cosets gH, ordered by least
    /// representative.
    pub fn left_cosets(&self, subgroup: &[usize]) -> Result<Vec<Vec<usize>>, GroupError> {
        self.is_subgroup(subgroup)?;
        let mut assigned = vec![false; self.order];
        let mut out = Vec::new();
        for g in 0..self.order {
            if assigned[g] {
                continue;
            }
            let mut coset: Vec<usize> = subgroup.iter().map(|&h| self.mul(g, h)).collect();
            coset.sort_unstable();
            coset.dedup();
            for &x in &coset {
                assigned[x] = true;
            }
            out.push(coset);
        }
        Ok(out)
    }
}

/// Validates a multiplication table and relabels so the identity is 0.
pub fn group_from_table(
    table: &[Vec<usize>],
    labels: Option<Vec<String>>,
) -> Result<FiniteGroup, GroupError> {
    let n = table.len();
    if n == 0 {
        return Err(GroupError::NotAGroup("empty table".into()));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(GroupError::NotAGroup(format!("row {i} has length {}", row.len())));
        }
        for &v in row {
            if v >= n {
                return Err(GroupError::NotAGroup(format!("entry {v} out of range in row {i}")));
            }
        }
    }
    let labels = match labels {
        Some(l) => {
            if l.len() != n {
                return Err(GroupError::NotAGroup("label count differs from order".into()));
            }
            l
        }
        None => (0..n).map(|i| i.to_string()).collect(),
    };
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| GroupError::NotAGroup("no two-sided identity".into()))?;
    for a in 0..n {
        if !(0..n).any(|b| table[a][b] == identity && table[b][a] == identity) {
            return Err(GroupError::NotAGroup(format!("no inverse for {}", labels[a])));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(GroupError::NotAGroup(format!(
                        "associativity fails at ({}, {}, {})",
                        labels[a], labels[b], labels[c]
                    )));
                }
            }
        }
    }
    Ok(finish_table(table, labels, identity))
}

// relabel: identity first, everything else keeps its relative order
fn finish_table(table: &[Vec<usize>], labels: Vec<String>, identity: usize) -> FiniteGroup {
    let n = table.len();
    let mut order_map = vec![0usize; n];
    let mut new_of_old = vec![0usize; n];
    let mut next = 0;
    for old in std::iter::once(identity).chain((0..n).filter(|&x| x != identity)) {
        order_map[next] = old;
        new_of_old[old] = next;
        next += 1;
    }
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = new_of_old[table[order_map[a]][order_map[b]]] as u32;
        }
    }
    let relabeled: Vec<String> = order_map.iter().map(|&old| labels[old].clone()).collect();
    let mut inv = vec![0u32; n];
    for a in 0..n {
        inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).unwrap() as u32;
    }
    FiniteGroup { order: n, mul, inv, labels: relabeled }
}

// For tables that are groups by construction; skips the cubic
// associativity sweep but still locates and front-loads the identity.
pub(crate) fn from_validated_table(table: &[Vec<usize>], labels: Vec<String>) -> FiniteGroup {
    let n = table.len();
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .expect("caller guarantees a group");
    finish_table(table, labels, identity)
}

fn compose_perms(p: &[usize], q: &[usize]) -> Vec<usize> {
    // apply q first, then p
    q.iter().map(|&i| p[i]).collect()
}

/// Generates a finite group from permutations, with word labels.
///
/// Elements are discovered breadth-first, so each label is a shortest
/// product of generator names. The cap bounds the closure size.
pub fn group_from_permutations(
    degree: usize,
    generators: &[(String, Vec<usize>)],
    cap: usize,
) -> Result<FiniteGroup, GroupError> {
    for (name, p) in generators {
        let mut seen = vec![false; degree];
        if p.len() != degree {
            return Err(GroupError::NotAGroup(format!("generator {name} has wrong degree")));
        }
        for &i in p {
            if i >= degree || seen[i] {
                return Err(GroupError::NotAGroup(format!("generator {name} is not a permutation")));
            }
            seen[i] = true;
        }
    }
    let id: Vec<usize> = (0..degree).collect();
    let mut elems: Vec<Vec<usize>> = vec![id.clone()];
    let mut words: Vec<String> = vec!["e".to_string()];
    let mut index: HashMap<Vec<usize>, usize> = [(id, 0usize)].into();
    let mut queue: VecDeque<usize> = [0].into();
    while let Some(i) = queue.pop_front() {
        for (name, p) in generators {
            let q = compose_perms(&elems[i], p);
            if !index.contains_key(&q) {
                if elems.len() >= cap {
                    return Err(GroupError::ClosureBudgetExceeded(cap));
                }
                let word = if i == 0 { name.clone() } else { format!("{}*{}", words[i], name) };
                index.insert(q.clone(), elems.len());
                words.push(word);
                elems.push(q);
                queue.push_back(elems.len() - 1);
            }
        }
    }
    let n = elems.len();
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = index[&compose_perms(&elems[a], &elems[b])] as u32;
        }
    }
    let mut inv = vec![0u32; n];
    for a in 0..n {
        inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).unwrap() as u32;
    }
    Ok(FiniteGroup { order: n, mul, inv, labels: words })
}

/// The symmetry group of the triangle, used all over the examples.
pub fn dihedral_3() -> FiniteGroup {
    group_from_permutations(
        3,
        &[("r".to_string(), vec![1, 2, 0]), ("s".to_string(), vec![1, 0, 2])],
        DEFAULT_CLOSURE_CAP,
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_structure() {
        let g = dihedral_3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.label(0), "e");
        let r = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        let s = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        assert_eq!(g.subgroup_closure(&[r]).len(), 3);
        assert_eq!(g.subgroup_closure(&[s]).len(), 2);
        assert_eq!(g.subgroup_closure(&[r, s]).len(), 6);
        assert_eq!(g.subgroup_closure(&[]), vec![0]);
    }

    #[test]
    fn table_roundtrip_relabels_identity() {
        // cyclic group of order 3 written with identity at position 2
        let table = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = group_from_table(&table, Some(vec!["a".into(), "b".into(), "e".into()])).unwrap();
        assert_eq!(g.label(0), "e");
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.element_order(1), 3);
        assert!(g.is_abelian());
    }

    #[test]
    fn table_rejections() {
        // a loop of order 5 with every element self-inverse, so not a group
        let not_assoc = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match group_from_table(&not_assoc, None) {
            Err(GroupError::NotAGroup(msg)) => {
                assert!(msg.contains("associativity"), "{msg}")
            }
            other => panic!("expected rejection, got {other:?}"),
        }
        let no_id = vec![vec![0, 0], vec![0, 0]];
        assert!(matches!(group_from_table(&no_id, None), Err(GroupError::NotAGroup(_))));
        let ragged = vec![vec![0, 1], vec![1]];
        assert!(matches!(group_from_table(&ragged, None), Err(GroupError::NotAGroup(_))));
    }

    #[test]
    fn closure_cap_applies() {
        let err = group_from_permutations(
            5,
            &[("a".to_string(), vec![1, 2, 3, 4, 0]), ("b".to_string(), vec![1, 0, 2, 3, 4])],
            10,
        );
        assert!(matches!(err, Err(GroupError::ClosureBudgetExceeded(10))));
    }

    #[test]
    fn left_cosets_of_dihedral() {
        let g = dihedral_3();
        let r = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        let s = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let hr = g.subgroup_closure(&[r]);
        let hs = g.subgroup_closure(&[s]);
        let cr = g.left_cosets(&hr).unwrap();
        assert_eq!(cr.len(), 2);
        assert!(cr.iter().all(|c| c.len() == 3));
        let cs = g.left_cosets(&hs).unwrap();
        assert_eq!(cs.len(), 3);
        assert!(cs.iter().all(|c| c.len() == 2));
        assert!(g.left_cosets(&[0, r]).is_err());
    }

    #[test]
    fn permutation_labels_are_words() {
        let g = dihedral_3();
        assert!(g.labels().iter().any(|w| w == "r"));
        assert!(g.labels().iter().any(|w| w == "s"));
        assert!(g.labels().iter().any(|w| w.contains('*')));
    }

    #[test]
    fn cyclic_groups() {
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.element_order(1), 4);
        assert_eq!(z4.inv(1), 3);
        assert!(z4.is_abelian());
        assert_eq!(FiniteGroup::trivial().order(), 1);
    }
}
