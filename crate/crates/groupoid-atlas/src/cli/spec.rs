//! The declarative input format: one file names some groups, builds
//! one atlas from them, and lists the options applied before any
//! computation runs.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::algebra::{
    group_from_permutations, group_from_table, FiniteGroup, DEFAULT_CLOSURE_CAP,
};
use crate::atlas::{
    dedupe_paired_indices, from_global_action, from_simplicial_complex, from_single_groupoid,
    gl_atlas, irreducibilize, regularize, Atlas, AtlasError, Chart, RelationMode, RelationPair,
    NO_ARROW,
};
use crate::groupoid::{action_groupoid, discrete_groupoid, tree_groupoid, Groupoid};

use super::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtlasSpecFile {
    pub version: String,
    #[serde(default)]
    pub groups: BTreeMap<String, GroupSpec>,
    pub atlas: AtlasSpec,
    #[serde(default)]
    pub options: OptionsSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default)]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub names: Option<Vec<String>>,
    #[serde(default)]
    pub permutations: Option<PermutationsSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermutationsSpec {
    pub degree: usize,
    pub generators: Vec<(String, Vec<usize>)>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AtlasSpec {
    GlobalAction {
        group: String,
        subgroups: Vec<Vec<ElementRef>>,
        #[serde(default)]
        relations: RelationsSpec,
    },
    Gl {
        size: usize,
        modulus: usize,
    },
    Complex {
        #[serde(default)]
        labels: Option<Vec<String>>,
        facets: Vec<Vec<usize>>,
    },
    SingleGroupoid {
        labels: Vec<String>,
        local: LocalSpec,
    },
    Explicit {
        points: Vec<String>,
        charts: Vec<ChartSpec>,
        #[serde(default)]
        pairs: Vec<PairSpec>,
    },
}

/// A group element given by index or by its label.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Label(String),
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationsSpec {
    Discrete,
    #[default]
    Inclusion,
    Meets,
}

impl RelationsSpec {
    fn mode(self) -> RelationMode {
        match self {
            RelationsSpec::Discrete => RelationMode::Discrete,
            RelationsSpec::Inclusion => RelationMode::Inclusion,
            RelationsSpec::Meets => RelationMode::IntersectionClosure,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalSpec {
    Tree { objects: usize },
    Discrete { objects: usize },
    VertexGroup { group: String },
    Action { group: String, points: usize, images: Vec<Vec<usize>> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    pub name: String,
    pub frame: Vec<usize>,
    pub local: LocalSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub lower: usize,
    pub upper: usize,
    pub arrow_map: Vec<Option<u32>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptionsSpec {
    pub truncation: Option<usize>,
    pub base_point: Option<String>,
    pub pipeline: Vec<String>,
    pub max_cells_per_dim: Option<usize>,
    pub tietze_max_length: Option<usize>,
    pub tietze_max_passes: Option<usize>,
}

fn build_error(e: AtlasError) -> CliError {
    match e {
        AtlasError::TooLarge(m) => CliError::Budget(m),
        other => CliError::Validation(other.to_string()),
    }
}

impl AtlasSpecFile {
    pub fn parse(text: &str) -> Result<AtlasSpecFile, CliError> {
        let file: AtlasSpecFile =
            serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        if file.version != "v1" {
            return Err(CliError::Parse(format!(
                "unsupported version {:?}, expected \"v1\"",
                file.version
            )));
        }
        Ok(file)
    }

    /// Builds the atlas and applies the pipeline stages in order.
    pub fn build_atlas(&self) -> Result<Atlas, CliError> {
        let mut groups = BTreeMap::new();
        for (name, spec) in &self.groups {
            groups.insert(name.clone(), build_group(name, spec)?);
        }
        let mut atlas = self.base_atlas(&groups)?;
        for stage in &self.options.pipeline {
            atlas = match stage.as_str() {
                "regularize" => regularize(&atlas).map_err(build_error)?.0,
                "irreducibilize" => irreducibilize(&atlas).map_err(build_error)?.0,
                "dedupe" => dedupe_paired_indices(&atlas).map_err(build_error)?.deduped,
                other => {
                    return Err(CliError::Parse(format!("unknown pipeline stage: {other:?}")))
                }
            };
        }
        Ok(atlas)
    }

    fn base_atlas(&self, groups: &BTreeMap<String, FiniteGroup>) -> Result<Atlas, CliError> {
        match &self.atlas {
            AtlasSpec::GlobalAction { group, subgroups, relations } => {
                let g = lookup(groups, group)?;
                let members: Vec<Vec<usize>> = subgroups
                    .iter()
                    .map(|gens| {
                        let gens: Vec<usize> = gens
                            .iter()
                            .map(|r| resolve_element(g, group, r))
                            .collect::<Result<_, _>>()?;
                        Ok(g.subgroup_closure(&gens))
                    })
                    .collect::<Result<_, CliError>>()?;
                from_global_action(g, &members, relations.mode()).map_err(build_error)
            }
            AtlasSpec::Gl { size, modulus } => gl_atlas(*size, *modulus).map_err(build_error),
            AtlasSpec::Complex { labels, facets } => {
                let labels = labels.clone().unwrap_or_else(|| {
                    let n = facets.iter().flatten().max().map_or(0, |m| m + 1);
                    (0..n).map(|i| format!("v{i}")).collect()
                });
                from_simplicial_complex(labels, facets).map_err(build_error)
            }
            AtlasSpec::SingleGroupoid { labels, local } => {
                let local = build_local(local, groups)?;
                from_single_groupoid(local, labels.clone()).map_err(build_error)
            }
            AtlasSpec::Explicit { points, charts, pairs } => {
                let charts: Vec<Chart> = charts
                    .iter()
                    .map(|c| {
                        Ok(Chart {
                            name: c.name.clone(),
                            frame: c.frame.clone(),
                            local: build_local(&c.local, groups)?,
                        })
                    })
                    .collect::<Result<_, CliError>>()?;
                let pairs: Vec<RelationPair> = pairs
                    .iter()
                    .map(|p| RelationPair {
                        lower: p.lower,
                        upper: p.upper,
                        arrow_map: p.arrow_map.iter().map(|a| a.unwrap_or(NO_ARROW)).collect(),
                    })
                    .collect();
                Atlas::new(points.clone(), charts, pairs).map_err(build_error)
            }
        }
    }
}

fn lookup<'a>(
    groups: &'a BTreeMap<String, FiniteGroup>,
    name: &str,
) -> Result<&'a FiniteGroup, CliError> {
    groups.get(name).ok_or_else(|| CliError::Parse(format!("unknown group: {name:?}")))
}

fn resolve_element(group: &FiniteGroup, owner: &str, r: &ElementRef) -> Result<usize, CliError> {
    match r {
        ElementRef::Index(i) => {
            if *i < group.order() {
                Ok(*i)
            } else {
                Err(CliError::Parse(format!("element {i} out of range for group {owner:?}")))
            }
        }
        ElementRef::Label(s) => group
            .labels()
            .iter()
            .position(|l| l == s)
            .ok_or_else(|| CliError::Parse(format!("no element {s:?} in group {owner:?}"))),
    }
}

fn build_group(name: &str, spec: &GroupSpec) -> Result<FiniteGroup, CliError> {
    if spec.names.is_some() && spec.table.is_none() {
        return Err(CliError::Parse(format!("group {name:?}: names apply only to tables")));
    }
    match (&spec.table, &spec.permutations) {
        (Some(t), None) => group_from_table(t, spec.names.clone())
            .map_err(|e| CliError::Validation(format!("group {name:?}: {e}"))),
        (None, Some(p)) => group_from_permutations(p.degree, &p.generators, DEFAULT_CLOSURE_CAP)
            .map_err(|e| CliError::Validation(format!("group {name:?}: {e}"))),
        _ => Err(CliError::Parse(format!(
            "group {name:?}: give exactly one of table or permutations"
        ))),
    }
}

fn build_local(
    spec: &LocalSpec,
    groups: &BTreeMap<String, FiniteGroup>,
) -> Result<Groupoid, CliError> {
    match spec {
        LocalSpec::Tree { objects } => tree_groupoid(*objects).map_err(|e| {
            CliError::Validation(e.to_string())
        }),
        LocalSpec::Discrete { objects } => Ok(discrete_groupoid(*objects)),
        LocalSpec::VertexGroup { group } => {
            let g = lookup(groups, group)?;
            action_groupoid(g, 1, |_, x| x).map_err(|e| CliError::Validation(e.to_string()))
        }
        LocalSpec::Action { group, points, images } => {
            let g = lookup(groups, group)?;
            if images.len() != g.order() {
                return Err(CliError::Parse(format!(
                    "action needs one image row per element of {group:?}"
                )));
            }
            if images.iter().any(|row| row.len() != *points || row.iter().any(|x| x >= points)) {
                return Err(CliError::Parse(format!(
                    "action image rows must list {points} points"
                )));
            }
            action_groupoid(g, *points, |e, x| images[e][x])
                .map_err(|e| CliError::Validation(e.to_string()))
        }
    }
}
