//! Groupoid atlases: a set of points, an indexed family of local
//! groupoids over overlapping frames, and structure functors along a
//! relation on the indices.

mod build;
mod morphism;
mod properties;
mod transforms;
mod validate;

pub use build::{
    from_global_action, from_simplicial_complex, from_single_groupoid, gl_atlas, RelationMode,
};
pub use morphism::{
    compose_morphisms, identity_morphism, is_corestriction, morphisms_equal, validate_morphism,
    AtlasMorphism,
};
pub use properties::{atlas_properties, frame_representatives, AtlasProperties};
pub use transforms::{
    dedupe_paired_indices, irreducibilize, regularization_retraction, regularize,
    transitive_closure,
};
pub use validate::{validate_atlas, ClauseReport, ValidationReport};

use thiserror::Error;

use crate::algebra::GroupError;
use crate::groupoid::{Groupoid, GroupoidError};

/// Marks an arrow as outside the domain of a partial structure functor.
pub const NO_ARROW: u32 = u32::MAX;

#[derive(Debug, Error)]
pub enum AtlasError {
    #[error("invalid atlas data: {0}")]
    Invalid(String),
    #[error("atlas is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("transitive closure is inconsistent: {0}")]
    ClosureConflict(String),
    #[error("a simplicial complex needs at least one nonempty facet")]
    EmptyComplex,
    #[error("construction exceeds the size budget: {0}")]
    TooLarge(String),
    #[error("base point not found: {0}")]
    BasePointNotFound(String),
    #[error("boundary maps do not square to zero: {0}")]
    NormalizationFailure(String),
    #[error("the index relation is not discrete: {0}")]
    PhiNotDiscrete(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

/// One index of the atlas: a frame of global points and a local
/// groupoid whose object `i` stands for the point `frame[i]`.
#[derive(Clone, Debug)]
pub struct Chart {
    pub name: String,
    pub frame: Vec<usize>,
    pub local: Groupoid,
}

/// A related pair of indices `lower <= upper` together with the arrow
/// part of the structure functor. `arrow_map[a]` is the image in the
/// upper local groupoid, or [`NO_ARROW`] when `a` lies outside the
/// overlap of the two frames.
#[derive(Clone, Debug)]
pub struct RelationPair {
    pub lower: usize,
    pub upper: usize,
    pub arrow_map: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Atlas {
    point_labels: Vec<String>,
    charts: Vec<Chart>,
    pairs: Vec<RelationPair>,
}

impl Atlas {
    /// Structural assembly: ranges, frame shape, and relation shape are
    /// checked here; the full axioms live in [`validate_atlas`].
    pub fn new(
        point_labels: Vec<String>,
        charts: Vec<Chart>,
        mut pairs: Vec<RelationPair>,
    ) -> Result<Atlas, AtlasError> {
        let points = point_labels.len();
        if points == 0 {
            return Err(AtlasError::Invalid("no points".into()));
        }
        for (i, c) in charts.iter().enumerate() {
            if c.frame.is_empty() {
                return Err(AtlasError::Invalid(format!("chart {i} has an empty frame")));
            }
            if c.frame.windows(2).any(|w| w[0] >= w[1]) {
                return Err(AtlasError::Invalid(format!(
                    "chart {i} frame is not sorted and distinct"
                )));
            }
            if *c.frame.last().unwrap() >= points {
                return Err(AtlasError::Invalid(format!("chart {i} frame mentions unknown points")));
            }
            if c.local.object_count() != c.frame.len() {
                return Err(AtlasError::Invalid(format!(
                    "chart {i} has {} objects for a frame of {} points",
                    c.local.object_count(),
                    c.frame.len()
                )));
            }
        }
        pairs.sort_by_key(|p| (p.lower, p.upper));
        for w in pairs.windows(2) {
            if w[0].lower == w[1].lower && w[0].upper == w[1].upper {
                return Err(AtlasError::Invalid(format!(
                    "duplicate relation pair ({}, {})",
                    w[0].lower, w[0].upper
                )));
            }
        }
        for p in &pairs {
            if p.lower >= charts.len() || p.upper >= charts.len() {
                return Err(AtlasError::Invalid("relation pair index out of range".into()));
            }
            if p.lower == p.upper {
                return Err(AtlasError::Invalid(format!(
                    "reflexive pair ({}, {}); identities are implicit",
                    p.lower, p.upper
                )));
            }
            if p.arrow_map.len() != charts[p.lower].local.arrow_count() {
                return Err(AtlasError::Invalid(format!(
                    "arrow map for ({}, {}) has the wrong length",
                    p.lower, p.upper
                )));
            }
            let upper_arrows = charts[p.upper].local.arrow_count() as u32;
            if p.arrow_map.iter().any(|&a| a != NO_ARROW && a >= upper_arrows) {
                return Err(AtlasError::Invalid(format!(
                    "arrow map for ({}, {}) mentions unknown arrows",
                    p.lower, p.upper
                )));
            }
        }
        Ok(Atlas { point_labels, charts, pairs })
    }

    pub fn point_count(&self) -> usize {
        self.point_labels.len()
    }

    pub fn point_label(&self, p: usize) -> &str {
        &self.point_labels[p]
    }

    pub fn point_labels(&self) -> &[String] {
        &self.point_labels
    }

    pub fn chart_count(&self) -> usize {
        self.charts.len()
    }

    pub fn chart(&self, i: usize) -> &Chart {
        &self.charts[i]
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn relation_pairs(&self) -> &[RelationPair] {
        &self.pairs
    }

    pub fn pair_between(&self, lower: usize, upper: usize) -> Option<&RelationPair> {
        self.pairs
            .binary_search_by_key(&(lower, upper), |p| (p.lower, p.upper))
            .ok()
            .map(|i| &self.pairs[i])
    }

    /// The relation as given, plus reflexivity.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.pair_between(a, b).is_some()
    }

    /// Reflexive-transitive closure of the index relation as a dense
    /// boolean matrix. Order-theoretic predicates read the relation
    /// through this closure.
    pub fn order_closure(&self) -> Vec<Vec<bool>> {
        let n = self.charts.len();
        let mut m = vec![vec![false; n]; n];
        for i in 0..n {
            m[i][i] = true;
        }
        for p in &self.pairs {
            m[p.lower][p.upper] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if m[i][k] {
                    for j in 0..n {
                        if m[k][j] {
                            m[i][j] = true;
                        }
                    }
                }
            }
        }
        m
    }

    pub fn indices_containing(&self, point: usize) -> Vec<usize> {
        (0..self.charts.len())
            .filter(|&i| self.charts[i].frame.binary_search(&point).is_ok())
            .collect()
    }

    pub fn local_to_global(&self, chart: usize, obj: usize) -> usize {
        self.charts[chart].frame[obj]
    }

    pub fn global_to_local(&self, chart: usize, point: usize) -> Option<usize> {
        self.charts[chart].frame.binary_search(&point).ok()
    }

    /// Applies the structure functor of a stored pair to an arrow of
    /// the lower local groupoid.
    pub fn apply_functor(&self, pair: &RelationPair, arrow: usize) -> Option<usize> {
        match pair.arrow_map[arrow] {
            NO_ARROW => None,
            a => Some(a as usize),
        }
    }
}

/// Arrow map of a structure functor between two charts whose local
/// hom-sets are at most singletons on the overlap, matching arrows by
/// their global endpoints. Suits tree and free-action locals.
pub(crate) fn arrow_map_by_endpoints(
    lower: &Chart,
    upper: &Chart,
) -> Result<Vec<u32>, AtlasError> {
    let mut map = vec![NO_ARROW; lower.local.arrow_count()];
    for a in 0..lower.local.arrow_count() {
        let s = lower.frame[lower.local.src(a)];
        let t = lower.frame[lower.local.tgt(a)];
        let (ls, lt) = match (upper.frame.binary_search(&s), upper.frame.binary_search(&t)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => continue,
        };
        let hom = upper.local.hom(ls, lt);
        match hom.len() {
            1 => map[a] = hom[0] as u32,
            0 => {
                return Err(AtlasError::Invalid(format!(
                    "no arrow {} -> {} in chart {}",
                    s, t, upper.name
                )))
            }
            _ => {
                return Err(AtlasError::Invalid(format!(
                    "ambiguous arrow {} -> {} in chart {}",
                    s, t, upper.name
                )))
            }
        }
    }
    Ok(map)
}
