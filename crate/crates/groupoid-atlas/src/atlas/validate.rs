//! Exhaustive axiom checking for explicitly supplied atlases.

use super::{Atlas, NO_ARROW};

#[derive(Clone, Debug)]
pub struct ClauseReport {
    pub clause: String,
    pub passed: bool,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub clauses: Vec<ClauseReport>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&ClauseReport> {
        self.clauses.iter().filter(|c| !c.passed).collect()
    }
}

const WITNESS_CAP: usize = 5;

struct Clause {
    name: &'static str,
    witnesses: Vec<String>,
}

impl Clause {
    fn new(name: &'static str) -> Clause {
        Clause { name, witnesses: Vec::new() }
    }

    fn blame(&mut self, w: String) {
        if self.witnesses.len() < WITNESS_CAP {
            self.witnesses.push(w);
        }
    }

    fn into_report(self) -> ClauseReport {
        ClauseReport {
            clause: self.name.to_string(),
            passed: self.witnesses.is_empty(),
            witnesses: self.witnesses,
        }
    }
}

/// Checks every atlas axiom and reports per-clause witnesses: local
/// groupoid laws, covering, overlaps being unions of components,
/// structure functors being total on their domain, endpoint and
/// identity preservation, functoriality, and coherence of triangles
/// present in the relation.
pub fn validate_atlas(atlas: &Atlas) -> ValidationReport {
    let mut locals = Clause::new("locals are groupoids");
    for (i, c) in atlas.charts().iter().enumerate() {
        if let Err(e) = c.local.verify() {
            locals.blame(format!("chart {} ({}): {}", i, c.name, e));
        }
    }

    let mut covered = Clause::new("every point is covered");
    for p in 0..atlas.point_count() {
        if atlas.indices_containing(p).is_empty() {
            covered.blame(format!("point {} ({})", p, atlas.point_label(p)));
        }
    }

    let mut overlaps = Clause::new("overlaps are unions of components");
    for pair in atlas.relation_pairs() {
        let lower = atlas.chart(pair.lower);
        let upper = atlas.chart(pair.upper);
        let inside: Vec<bool> = lower
            .frame
            .iter()
            .map(|g| upper.frame.binary_search(g).is_ok())
            .collect();
        for comp in lower.local.components() {
            let hits = comp.objects.iter().filter(|&&x| inside[x]).count();
            if hits != 0 && hits != comp.objects.len() {
                overlaps.blame(format!(
                    "pair ({}, {}): component of object {} is split by the overlap",
                    pair.lower, pair.upper, comp.objects[0]
                ));
            }
        }
    }

    let mut domain = Clause::new("functors are total on the overlap");
    let mut endpoints = Clause::new("functors preserve endpoints and identities");
    let mut functorial = Clause::new("functors preserve composition");
    for pair in atlas.relation_pairs() {
        let lower = atlas.chart(pair.lower);
        let upper = atlas.chart(pair.upper);
        let inside: Vec<bool> = lower
            .frame
            .iter()
            .map(|g| upper.frame.binary_search(g).is_ok())
            .collect();
        for a in 0..lower.local.arrow_count() {
            let in_domain = inside[lower.local.src(a)] && inside[lower.local.tgt(a)];
            let image = pair.arrow_map[a];
            if in_domain && image == NO_ARROW {
                domain.blame(format!(
                    "pair ({}, {}): arrow {} has no image",
                    pair.lower, pair.upper, a
                ));
                continue;
            }
            if !in_domain {
                if image != NO_ARROW {
                    domain.blame(format!(
                        "pair ({}, {}): arrow {} is outside the overlap but has an image",
                        pair.lower, pair.upper, a
                    ));
                }
                continue;
            }
            let image = image as usize;
            let gs = lower.frame[lower.local.src(a)];
            let gt = lower.frame[lower.local.tgt(a)];
            if upper.frame[upper.local.src(image)] != gs
                || upper.frame[upper.local.tgt(image)] != gt
            {
                endpoints.blame(format!(
                    "pair ({}, {}): arrow {} lands on different points",
                    pair.lower, pair.upper, a
                ));
            }
            if lower.local.is_identity(a) && !upper.local.is_identity(image) {
                endpoints.blame(format!(
                    "pair ({}, {}): identity at point {} is not sent to an identity",
                    pair.lower, pair.upper, gs
                ));
            }
        }
        for g in 0..lower.local.arrow_count() {
            if pair.arrow_map[g] == NO_ARROW {
                continue;
            }
            for f in 0..lower.local.arrow_count() {
                if pair.arrow_map[f] == NO_ARROW || lower.local.tgt(f) != lower.local.src(g) {
                    continue;
                }
                let gf = lower.local.compose(g, f).unwrap();
                let lhs = pair.arrow_map[gf];
                let rhs = upper
                    .local
                    .compose(pair.arrow_map[g] as usize, pair.arrow_map[f] as usize)
                    .map(|x| x as u32);
                if rhs != Some(lhs) {
                    functorial.blame(format!(
                        "pair ({}, {}): composite of ({}, {}) is not preserved",
                        pair.lower, pair.upper, g, f
                    ));
                }
            }
        }
    }

    let mut coherence = Clause::new("structure functors compose coherently");
    for ab in atlas.relation_pairs() {
        for bc in atlas.relation_pairs() {
            if bc.lower != ab.upper {
                continue;
            }
            let Some(ac) = atlas.pair_between(ab.lower, bc.upper) else { continue };
            for a in 0..ab.arrow_map.len() {
                let via = match ab.arrow_map[a] {
                    NO_ARROW => continue,
                    m => bc.arrow_map[m as usize],
                };
                if via == NO_ARROW {
                    continue;
                }
                if ac.arrow_map[a] != via {
                    coherence.blame(format!(
                        "pairs ({}, {}, {}): arrow {} takes two routes",
                        ab.lower, ab.upper, bc.upper, a
                    ));
                }
            }
        }
    }

    ValidationReport {
        clauses: vec![
            locals.into_report(),
            covered.into_report(),
            overlaps.into_report(),
            domain.into_report(),
            endpoints.into_report(),
            functorial.into_report(),
            coherence.into_report(),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{Chart, RelationPair};
    use crate::groupoid::tree_groupoid;

    fn two_tree_charts() -> (Vec<String>, Vec<Chart>) {
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let charts = vec![
            Chart { name: "0".into(), frame: vec![0, 1], local: tree_groupoid(2).unwrap() },
            Chart { name: "1".into(), frame: vec![0, 1, 2], local: tree_groupoid(3).unwrap() },
        ];
        (labels, charts)
    }

    #[test]
    fn inclusion_of_trees_is_valid() {
        let (labels, charts) = two_tree_charts();
        let map = crate::atlas::arrow_map_by_endpoints(&charts[0], &charts[1]).unwrap();
        let a = Atlas::new(labels, charts, vec![RelationPair { lower: 0, upper: 1, arrow_map: map }])
            .unwrap();
        let report = validate_atlas(&a);
        assert!(report.is_valid(), "{:?}", report.failures());
    }

    #[test]
    fn uncovered_point_is_reported() {
        let labels = vec!["a".into(), "b".into()];
        let charts =
            vec![Chart { name: "0".into(), frame: vec![0], local: tree_groupoid(1).unwrap() }];
        let a = Atlas::new(labels, charts, Vec::new()).unwrap();
        let report = validate_atlas(&a);
        assert!(!report.is_valid());
        let failing: Vec<_> = report.failures();
        assert_eq!(failing.len(), 1);
        assert!(failing[0].clause.contains("covered"));
        assert!(failing[0].witnesses[0].contains('b'));
    }

    #[test]
    fn wrong_endpoint_image_is_reported() {
        let (labels, charts) = two_tree_charts();
        // send the arrow 0 -> 1 to the identity at 0
        let mut map = crate::atlas::arrow_map_by_endpoints(&charts[0], &charts[1]).unwrap();
        let bad_arrow = (0..charts[0].local.arrow_count())
            .find(|&a| charts[0].local.src(a) == 0 && charts[0].local.tgt(a) == 1)
            .unwrap();
        map[bad_arrow] = charts[1].local.identity_of(0) as u32;
        let a = Atlas::new(labels, charts, vec![RelationPair { lower: 0, upper: 1, arrow_map: map }])
            .unwrap();
        let report = validate_atlas(&a);
        assert!(report
            .failures()
            .iter()
            .any(|c| c.clause.contains("endpoints")));
    }

    #[test]
    fn split_component_is_reported() {
        // one chart is a tree on {a, c}, whose single component meets
        // the overlap with {a, b} in just one point
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let charts = vec![
            Chart { name: "0".into(), frame: vec![0, 2], local: tree_groupoid(2).unwrap() },
            Chart { name: "1".into(), frame: vec![0, 1], local: tree_groupoid(2).unwrap() },
        ];
        let map = vec![charts[1].local.identity_of(0) as u32, super::NO_ARROW, super::NO_ARROW, super::NO_ARROW];
        let a = Atlas::new(labels, charts, vec![RelationPair { lower: 0, upper: 1, arrow_map: map }])
            .unwrap();
        let report = validate_atlas(&a);
        assert!(report
            .failures()
            .iter()
            .any(|c| c.clause.contains("unions of components")));
    }
}
