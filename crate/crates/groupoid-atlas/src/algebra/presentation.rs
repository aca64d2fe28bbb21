use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;

/// A word in a free group: nonzero letters, `+k` means generator `k-1`,
/// `-k` its inverse.
pub type Word = Vec<i32>;

pub fn inverse_word(w: &[i32]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last().is_some_and(|&y| y == -x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn cyclic_reduce(w: &[i32]) -> Word {
    let mut out = free_reduce(w);
    while out.len() >= 2 && out[0] == -out[out.len() - 1] {
        out.pop();
        out.remove(0);
    }
    out
}

/// Least rotation of the word or its inverse, so conjugate and inverted
/// relators compare equal.
fn canonical_cyclic(w: &[i32]) -> Word {
    let w = cyclic_reduce(w);
    if w.is_empty() {
        return w;
    }
    let mut best: Option<Word> = None;
    for candidate in [w.clone(), inverse_word(&w)] {
        for shift in 0..candidate.len() {
            let mut rot = candidate[shift..].to_vec();
            rot.extend_from_slice(&candidate[..shift]);
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap()
}

/// Invariant factors of a finitely generated abelian group.
///
/// `torsion` is in divisibility order with every entry at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct TietzeBudget {
    /// Hard cap on the summed relator length a substitution may produce.
    pub max_total_length: usize,
    /// Safety cap on simplification rounds.
    pub max_passes: usize,
}

impl Default for TietzeBudget {
    fn default() -> Self {
        TietzeBudget { max_total_length: 2_000_000, max_passes: 100_000 }
    }
}

/// A finite group presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

/// Writes a word as a product of named letters, `1` when empty.
pub fn render_word(word: &[i32], names: &[String]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|&x| {
            let name = &names[x.unsigned_abs() as usize - 1];
            if x > 0 {
                name.clone()
            } else {
                format!("{name}^-1")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> =
            self.relators.iter().map(|r| render_word(r, &self.generators)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rendered.join(", "))
    }
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> GroupPresentation {
        let p = GroupPresentation { generators, relators };
        p.check();
        p
    }

    pub fn free(rank: usize) -> GroupPresentation {
        GroupPresentation {
            generators: (0..rank).map(|i| format!("x{i}")).collect(),
            relators: Vec::new(),
        }
    }

    pub fn trivial() -> GroupPresentation {
        GroupPresentation { generators: Vec::new(), relators: Vec::new() }
    }

    fn check(&self) {
        let n = self.generators.len() as i32;
        for r in &self.relators {
            for &x in r {
                assert!(x != 0 && x.abs() <= n, "letter {x} out of range for {n} generators");
            }
        }
    }

    /// Presents the free group on no relators after simplification.
    pub fn detected_free_rank(&self) -> Option<usize> {
        if self.relators.is_empty() {
            Some(self.generators.len())
        } else {
            None
        }
    }

    pub fn is_trivial_detected(&self) -> bool {
        self.generators.is_empty()
    }

    /// Invariant factors of the abelianization, via the Smith form of
    /// the relator exponent matrix.
    pub fn abelian_invariants(&self) -> AbelianInvariants {
        let g = self.generators.len();
        let r = self.relators.len().max(1);
        let mut m = IntMatrix::zeros(r, g);
        for (i, rel) in self.relators.iter().enumerate() {
            for &x in rel {
                let j = (x.abs() - 1) as usize;
                let delta = if x > 0 { BigInt::one() } else { -BigInt::one() };
                let cur = m.get(i, j).clone();
                m.set(i, j, cur + delta);
            }
        }
        let dec = smith_normal_form(&m);
        let torsion: Vec<BigInt> =
            dec.d.iter().filter(|d| **d > BigInt::one()).cloned().collect();
        AbelianInvariants { free_rank: g - dec.d.len(), torsion }
    }

    pub fn render_word(&self, w: &[i32]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let gen = &self.generators[(w[i].abs() - 1) as usize];
            let exp = (j - i) as i64 * if w[i] > 0 { 1 } else { -1 };
            if exp == 1 {
                parts.push(gen.clone());
            } else {
                parts.push(format!("{gen}^{exp}"));
            }
            i = j;
        }
        parts.join(" ")
    }

    pub fn describe(&self) -> String {
        if self.generators.is_empty() {
            return "trivial group".to_string();
        }
        if let Some(rank) = self.detected_free_rank() {
            return format!("free of rank {rank} (detected)");
        }
        let rels: Vec<String> = self.relators.iter().map(|r| self.render_word(r)).collect();
        format!("< {} | {} >", self.generators.join(", "), rels.join(", "))
    }

    fn reduce_and_dedupe(&mut self) {
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        let mut out = Vec::with_capacity(self.relators.len());
        for r in &self.relators {
            let c = canonical_cyclic(r);
            if !c.is_empty() && seen.insert(c.clone()) {
                out.push(c);
            }
        }
        out.sort_by(|a, b| (a.len(), &**a).cmp(&(b.len(), &**b)));
        self.relators = out;
    }

    fn total_length(&self) -> usize {
        self.relators.iter().map(|r| r.len()).sum()
    }

    /// Finds a relator in which some generator occurs exactly once, and
    /// uses it to eliminate that generator, shortest relators first.
    /// Returns false when no elimination fits the budget.
    fn eliminate_one(&mut self, budget: &TietzeBudget) -> bool {
        let current: usize = self.total_length();
        for ri in 0..self.relators.len() {
            let rel = &self.relators[ri];
            for (pos, &letter) in rel.iter().enumerate() {
                let g = (letter.abs() - 1) as usize;
                if rel.iter().filter(|&&x| x.abs() - 1 == g as i32).count() != 1 {
                    continue;
                }
                let u = &rel[..pos];
                let v = &rel[pos + 1..];
                // u g^e v = 1, so g = (u^-1 v^-1)^e
                let mut rep: Word = inverse_word(u);
                rep.extend(inverse_word(v));
                if letter < 0 {
                    rep = inverse_word(&rep);
                }
                rep = free_reduce(&rep);
                let occ_elsewhere: usize = self
                    .relators
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != ri)
                    .map(|(_, r)| r.iter().filter(|&&x| x.abs() - 1 == g as i32).count())
                    .sum();
                let projected = current - rel.len() - occ_elsewhere + occ_elsewhere * rep.len();
                if projected > budget.max_total_length {
                    continue;
                }
                let rep_inv = inverse_word(&rep);
                let mut new_relators = Vec::with_capacity(self.relators.len() - 1);
                for (i, r) in self.relators.iter().enumerate() {
                    if i == ri {
                        continue;
                    }
                    let mut w: Word = Vec::with_capacity(r.len());
                    for &x in r {
                        let gx = (x.abs() - 1) as usize;
                        if gx == g {
                            w.extend(if x > 0 { rep.iter() } else { rep_inv.iter() });
                        } else {
                            let shifted = if gx > g { x.abs() - 1 } else { x.abs() };
                            w.push(if x > 0 { shifted } else { -shifted });
                        }
                    }
                    new_relators.push(free_reduce(&w));
                }
                self.generators.remove(g);
                self.relators = new_relators;
                return true;
            }
        }
        false
    }

    /// Simplifies in place: free and cyclic reduction, duplicate relator
    /// removal, and generator elimination wherever a relator mentions a
    /// generator exactly once.
    pub fn tietze_simplify(&mut self, budget: &TietzeBudget) {
        for _ in 0..budget.max_passes {
            self.reduce_and_dedupe();
            if !self.eliminate_one(budget) {
                break;
            }
        }
        self.reduce_and_dedupe();
    }

    pub fn simplified(mut self, budget: &TietzeBudget) -> GroupPresentation {
        self.tietze_simplify(budget);
        self
    }
}
