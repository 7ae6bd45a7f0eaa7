//! On-disk documents: model files (species, balance matrix or explicit
//! transitions, grading, caps) and graph files (a reconstructed cluster
//! graph bundled with the basis that names its clusters). Both are JSON
//! with fixed key order, so equal inputs produce byte-identical files.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{BasisCache, Binomial, GroebnerBasis, State, TermOrder};
use crate::cluster::{ClusterArc, ClusterGraph, GraphCaps};
use crate::error::{Error, Result};
use crate::grading::{check_homogeneous, find_positive_grading, Grading};
use crate::parse::{render_state, validate_species};
use crate::reactions::{elementary_reactions, partition_transitions};

pub const DEFAULT_MAX_REACTANTS: u32 = 2;

/// Mass/charge balance rows with human labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceMatrix {
    pub row_labels: Vec<String>,
    pub rows: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionLists {
    pub reversible: Vec<Vec<i64>>,
    pub irreversible: Vec<Vec<i64>>,
}

/// Enumeration and reconstruction guards; absent fields take defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    pub fiber: usize,
    pub states: usize,
    pub nodes: usize,
    pub arcs: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            fiber: 200_000,
            states: 200_000,
            nodes: 100_000,
            arcs: 1_000_000,
        }
    }
}

impl Caps {
    pub fn graph_caps(&self) -> GraphCaps {
        GraphCaps {
            nodes: self.nodes,
            arcs: self.arcs,
            fiber: self.fiber,
        }
    }
}

/// The JSON document. A model needs species plus either a balance matrix
/// (transitions are then enumerated on load) or explicit transition lists;
/// a grading row is found from the matrix when not supplied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub species: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub balance: Option<BalanceMatrix>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub transitions: Option<TransitionLists>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub grading: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub caps: Option<Caps>,
}

impl ModelFile {
    pub fn load(path: &Path) -> Result<ModelFile> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// A validated, fully resolved model.
#[derive(Debug, Clone)]
pub struct Model {
    pub species: Vec<String>,
    pub reversible: Vec<Vec<i64>>,
    pub irreversible: Vec<Vec<i64>>,
    pub grading: Grading,
    pub balance: Option<BalanceMatrix>,
    pub caps: Caps,
}

impl Model {
    pub fn load(path: &Path) -> Result<Model> {
        Model::resolve(ModelFile::load(path)?)
    }

    pub fn resolve(file: ModelFile) -> Result<Model> {
        validate_species(&file.species)?;
        let n = file.species.len();

        if let Some(b) = &file.balance {
            if b.rows.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidModel(
                    "balance rows do not match the species count".into(),
                ));
            }
            if b.row_labels.len() != b.rows.len() {
                return Err(Error::InvalidModel(
                    "balance row labels do not match the row count".into(),
                ));
            }
        }

        let grading = match &file.grading {
            Some(rows) => {
                let g = Grading::new(rows.clone())?;
                if g.n_vars() != n {
                    return Err(Error::InvalidModel(
                        "grading width does not match the species count".into(),
                    ));
                }
                g
            }
            None => match &file.balance {
                Some(b) => find_positive_grading(&b.rows)?,
                None => {
                    return Err(Error::InvalidModel(
                        "explicit transitions need an explicit grading".into(),
                    ))
                }
            },
        };

        let caps = file.caps.unwrap_or_default();
        let (reversible, irreversible) = match &file.transitions {
            Some(t) => {
                let mut all: Vec<Vec<i64>> = Vec::new();
                for d in t.reversible.iter() {
                    if d.len() != n {
                        return Err(Error::InvalidModel("transition width mismatch".into()));
                    }
                    all.push(d.clone());
                    all.push(d.iter().map(|v| -v).collect());
                }
                for d in t.irreversible.iter() {
                    if d.len() != n {
                        return Err(Error::InvalidModel("transition width mismatch".into()));
                    }
                    all.push(d.clone());
                }
                let (u, dd) = partition_transitions(&all)?;
                for d in t.irreversible.iter() {
                    if u.contains(d) || u.contains(&d.iter().map(|v| -v).collect::<Vec<_>>()) {
                        return Err(Error::InvalidModel(format!(
                            "transition {d:?} is listed as irreversible but has a mirror"
                        )));
                    }
                }
                (u, dd)
            }
            None => match &file.balance {
                Some(b) => {
                    let enumeration =
                        elementary_reactions(&b.rows, &grading, DEFAULT_MAX_REACTANTS, caps.fiber)?;
                    partition_transitions(&enumeration.distinct())?
                }
                None => {
                    return Err(Error::InvalidModel(
                        "a model needs a balance matrix or explicit transitions".into(),
                    ))
                }
            },
        };

        let mut moves = reversible.clone();
        moves.extend(irreversible.iter().cloned());
        if !check_homogeneous(&moves, &grading) {
            return Err(Error::InvalidModel(
                "transitions are not homogeneous under the grading".into(),
            ));
        }

        Ok(Model {
            species: file.species,
            reversible,
            irreversible,
            grading,
            balance: file.balance,
            caps,
        })
    }

    pub fn to_file(&self) -> ModelFile {
        ModelFile {
            species: self.species.clone(),
            balance: self.balance.clone(),
            transitions: Some(TransitionLists {
                reversible: self.reversible.clone(),
                irreversible: self.irreversible.clone(),
            }),
            grading: Some(self.grading.rows().to_vec()),
            caps: Some(self.caps),
        }
    }

    pub fn parse_state(&self, expr: &str) -> Result<State> {
        crate::parse::parse_state(expr, &self.species)
    }

    /// Basis of the reversible ideal under the default graded order.
    pub fn base_basis(&self) -> Result<GroebnerBasis> {
        let gens: Vec<Binomial> = self
            .reversible
            .iter()
            .map(|d| Binomial::from_transition(d).ok_or(Error::ZeroTransition))
            .collect::<Result<_>>()?;
        crate::algebra::buchberger(&gens, &TermOrder::graded(self.grading.positive_row())?)
    }

    /// Full cache covering every irreversible demand.
    pub fn basis_cache(&self) -> Result<BasisCache> {
        BasisCache::build(&self.reversible, &self.grading, &self.irreversible)
    }
}

/// Whitespace-separated balance matrix text: a header line of species
/// names, then one row per line, optionally prefixed with a label token
/// (anything that does not parse as an integer). `#` starts a comment.
pub fn parse_matrix_text(text: &str) -> Result<(Vec<String>, BalanceMatrix)> {
    let mut species: Option<Vec<String>> = None;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match &species {
            None => species = Some(tokens.iter().map(|t| t.to_string()).collect()),
            Some(sp) => {
                let (label, nums) = if tokens[0].parse::<i64>().is_err() {
                    (tokens[0].to_string(), &tokens[1..])
                } else {
                    (format!("r{}", rows.len()), &tokens[..])
                };
                if nums.len() != sp.len() {
                    return Err(Error::InvalidModel(format!(
                        "row `{label}` has {} entries for {} species",
                        nums.len(),
                        sp.len()
                    )));
                }
                let row: Vec<i64> = nums
                    .iter()
                    .map(|t| {
                        t.parse::<i64>().map_err(|_| {
                            Error::InvalidModel(format!("bad integer `{t}` in row `{label}`"))
                        })
                    })
                    .collect::<Result<_>>()?;
                labels.push(label);
                rows.push(row);
            }
        }
    }
    let species = species.ok_or_else(|| Error::InvalidModel("empty matrix file".into()))?;
    validate_species(&species)?;
    if rows.is_empty() {
        return Err(Error::InvalidModel("matrix file has no rows".into()));
    }
    Ok((
        species,
        BalanceMatrix {
            row_labels: labels,
            rows,
        },
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub rep: State,
    pub expression: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphArcRecord {
    pub from: usize,
    pub to: usize,
    pub label: Vec<i64>,
    pub witness: State,
    pub reaction: String,
}

/// A cluster graph together with everything needed to query it: species
/// names, the term order and basis that canonicalize states, the grading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub species: Vec<String>,
    pub grading: Vec<Vec<i64>>,
    pub order: TermOrder,
    pub basis: Vec<Binomial>,
    pub nodes: Vec<GraphNode>,
    pub arcs: Vec<GraphArcRecord>,
    pub initial: Vec<usize>,
}

impl GraphFile {
    pub fn assemble(
        species: &[String],
        grading: &Grading,
        basis: &GroebnerBasis,
        graph: &ClusterGraph,
    ) -> GraphFile {
        let nodes = graph
            .nodes()
            .iter()
            .map(|rep| GraphNode {
                rep: rep.clone(),
                expression: render_state(rep, species),
            })
            .collect();
        let arcs = graph
            .arcs()
            .iter()
            .map(|a| GraphArcRecord {
                from: a.from,
                to: a.to,
                label: a.label.clone(),
                witness: a.witness.clone(),
                reaction: crate::dot::render_reaction(&a.label, species),
            })
            .collect();
        GraphFile {
            species: species.to_vec(),
            grading: grading.rows().to_vec(),
            order: basis.order().clone(),
            basis: basis.elements().to_vec(),
            nodes,
            arcs,
            initial: graph.initial().to_vec(),
        }
    }

    pub fn load(path: &Path) -> Result<GraphFile> {
        let file: GraphFile = serde_json::from_str(&fs::read_to_string(path)?)?;
        file.validate()?;
        Ok(file)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        validate_species(&self.species)?;
        let basis = self.groebner()?;
        self.cluster_graph()?;
        let n = self.species.len();
        for node in &self.nodes {
            if node.rep.len() != n {
                return Err(Error::InvalidGraph("node width mismatch".into()));
            }
            // representatives are exactly the normal-form fixed points
            if !basis.is_standard(&node.rep) {
                return Err(Error::InvalidGraph(format!(
                    "node `{}` is not a canonical representative",
                    node.expression
                )));
            }
        }
        Ok(())
    }

    /// Rebuild the basis, re-checking orientation and reducedness.
    pub fn groebner(&self) -> Result<GroebnerBasis> {
        GroebnerBasis::from_parts(self.order.clone(), self.basis.clone())
    }

    pub fn cluster_graph(&self) -> Result<ClusterGraph> {
        let nodes: Vec<State> = self.nodes.iter().map(|n| n.rep.clone()).collect();
        let arcs: Vec<ClusterArc> = self
            .arcs
            .iter()
            .map(|a| ClusterArc {
                from: a.from,
                to: a.to,
                label: a.label.clone(),
                witness: a.witness.clone(),
            })
            .collect();
        ClusterGraph::from_raw_parts(nodes, arcs, self.initial.clone())
    }

    pub fn parse_state(&self, expr: &str) -> Result<State> {
        crate::parse::parse_state(expr, &self.species)
    }
}
