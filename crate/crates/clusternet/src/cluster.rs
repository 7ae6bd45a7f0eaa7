//! Cluster-graph reconstruction.
//!
//! States joined by reversible moves form clusters; directed moves induce
//! arcs between clusters. Reconstruction never enumerates cluster members:
//! a normal form names each cluster, and colon ideals under coordinate-
//! maximizing orders decide whether a directed move applies somewhere in a
//! cluster. An exhaustive mode that does enumerate members is available as
//! a completeness guard.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{negative_part, BasisCache, Exponent, State};
use crate::error::{Error, Result};
use crate::grading::enumerate_fiber;

/// A directed multigraph on canonical cluster representatives. Arcs carry
/// the directed move realizing them plus one witness state for audit.
/// Construction sorts nodes and arcs, so equal graphs serialize identically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterGraph {
    nodes: Vec<State>,
    arcs: Vec<ClusterArc>,
    initial: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClusterArc {
    pub from: usize,
    pub to: usize,
    pub label: Vec<i64>,
    pub witness: State,
}

/// How arcs out of a cluster are discovered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReconstructionMode {
    /// One witness per (cluster, move) via the connectivity test.
    Direct,
    /// Enumerate every cluster member and try every move on each; complete
    /// by construction, bounded by the fiber cap.
    Exhaustive,
}

/// Caps guarding runaway reconstructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCaps {
    pub nodes: usize,
    pub arcs: usize,
    pub fiber: usize,
}

impl Default for GraphCaps {
    fn default() -> Self {
        GraphCaps {
            nodes: 100_000,
            arcs: 1_000_000,
            fiber: 200_000,
        }
    }
}

impl ClusterGraph {
    pub(crate) fn from_parts(
        nodes: BTreeSet<State>,
        arcs: BTreeMap<(State, State, Vec<i64>), State>,
        initial: BTreeSet<State>,
    ) -> Self {
        let nodes: Vec<State> = nodes.into_iter().collect();
        let index = |s: &State| nodes.binary_search(s).expect("arc endpoint not a node");
        let arcs: Vec<ClusterArc> = arcs
            .into_iter()
            .map(|((from, to, label), witness)| ClusterArc {
                from: index(&from),
                to: index(&to),
                label,
                witness,
            })
            .collect();
        let initial: Vec<usize> = initial.iter().map(index).collect();
        ClusterGraph {
            nodes,
            arcs,
            initial,
        }
    }

    /// Rebuild from serialized parts, validating indices and sort order.
    pub fn from_raw_parts(
        nodes: Vec<State>,
        arcs: Vec<ClusterArc>,
        initial: Vec<usize>,
    ) -> Result<Self> {
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGraph("nodes not sorted and distinct".into()));
        }
        if arcs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGraph("arcs not sorted and distinct".into()));
        }
        for a in &arcs {
            if a.from >= nodes.len() || a.to >= nodes.len() {
                return Err(Error::InvalidGraph("arc endpoint out of range".into()));
            }
            if a.from == a.to {
                return Err(Error::InvalidGraph("self-loop arc".into()));
            }
        }
        if initial.iter().any(|&i| i >= nodes.len()) {
            return Err(Error::InvalidGraph("initial index out of range".into()));
        }
        Ok(ClusterGraph {
            nodes,
            arcs,
            initial,
        })
    }

    pub fn nodes(&self) -> &[State] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[ClusterArc] {
        &self.arcs
    }

    /// Indices of the clusters the initial states fell into.
    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn node_index(&self, rep: &State) -> Option<usize> {
        self.nodes.binary_search(rep).ok()
    }

    /// Equality on nodes and labeled arcs, ignoring witnesses.
    pub fn same_shape(&self, other: &ClusterGraph) -> bool {
        self.nodes == other.nodes
            && self.arcs.len() == other.arcs.len()
            && self
                .arcs
                .iter()
                .zip(&other.arcs)
                .all(|(a, b)| (a.from, a.to, &a.label) == (b.from, b.to, &b.label))
    }
}

/// Find a state in the cluster of `y` whose `j`-th coordinate reaches
/// `demand[j]`, while staying at or above `demand` off `j`.
///
/// With `dbar = demand - demand[j]*e_j`, the cluster of `y - dbar` under
/// the colon ideal `J : x^dbar` mirrors the part of `y`'s cluster sitting
/// above `dbar`; its normal form under the order maximizing coordinate `j`
/// realizes the maximal `j`-th entry, so a single normal form decides the
/// question.
pub fn coordinate_lift(
    cache: &BasisCache,
    y: &State,
    demand: &Exponent,
    j: usize,
) -> Result<Option<State>> {
    let n = cache.grading().n_vars();
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, limit: n });
    }
    if demand.get(j) == 0 {
        return Err(Error::Contract("coordinate_lift needs j in the demand support"));
    }
    let mut dbar_entries = demand.entries().to_vec();
    dbar_entries[j] = 0;
    let dbar = Exponent::new(dbar_entries);
    let shifted = y
        .checked_sub(&dbar)
        .ok_or(Error::Contract("coordinate_lift needs y >= demand off j"))?;
    let basis = cache.colon_max_basis(&dbar, j)?;
    let zbar = basis.normal_form(&shifted)?;
    if zbar.get(j) >= demand.get(j) {
        Ok(Some(zbar.checked_add(&dbar)?))
    } else {
        Ok(None)
    }
}

/// Find a state in the cluster of `y` to which the directed move `d`
/// applies (result stays nonnegative), or `None` if no member qualifies.
///
/// Coordinates of `d-` are satisfied one at a time in ascending order,
/// each step lifting the next coordinate while holding the already
/// satisfied ones. A move with empty negative support applies everywhere,
/// so `y` itself is returned.
pub fn transition_witness(cache: &BasisCache, y: &State, d: &[i64]) -> Result<Option<State>> {
    let neg = negative_part(d);
    let supp = neg.support();
    let mut z = y.clone();
    let mut demand = Exponent::zeros(y.len());
    for &s in &supp {
        let mut entries = demand.entries().to_vec();
        entries[s] = neg.get(s);
        demand = Exponent::new(entries);
        match coordinate_lift(cache, &z, &demand, s)? {
            Some(next) => z = next,
            None => return Ok(None),
        }
    }
    #[cfg(debug_assertions)]
    {
        let sound = cache.base().is_connected(y, &z)? && z.apply_signed(d).is_some();
        debug_assert!(sound, "witness must stay in the cluster and admit the move");
    }
    Ok(Some(z))
}

/// Reconstruct the part of the cluster graph reachable from `initial`.
///
/// Worklist search: pop a representative, probe every directed move, add
/// an arc whenever the move leads to a different cluster, enqueue unseen
/// targets. The worklist is FIFO and moves are probed in input order, so
/// the result is deterministic; per-node probes run in parallel and are
/// merged in move order.
pub fn build_cluster_graph(
    cache: &BasisCache,
    directed: &[Vec<i64>],
    initial: &[State],
    mode: ReconstructionMode,
    caps: GraphCaps,
) -> Result<ClusterGraph> {
    let base = cache.base();
    let mut initial_reps: BTreeSet<State> = BTreeSet::new();
    let mut queue: VecDeque<State> = VecDeque::new();
    let mut visited: BTreeSet<State> = BTreeSet::new();
    for s in initial {
        let rep = base.normal_form(s)?;
        initial_reps.insert(rep.clone());
        if visited.insert(rep.clone()) {
            queue.push_back(rep);
        }
    }
    let mut arcs: BTreeMap<(State, State, Vec<i64>), State> = BTreeMap::new();

    while let Some(u) = queue.pop_front() {
        // per-move targets, computed in parallel, merged in move order
        let probes: Vec<Vec<(State, State)>> = directed
            .par_iter()
            .map(|d| probe_move(cache, &u, d, mode, caps))
            .collect::<Result<Vec<_>>>()?;
        for (d, targets) in directed.iter().zip(probes) {
            for (w, witness) in targets {
                arcs.entry((u.clone(), w.clone(), d.clone()))
                    .or_insert(witness);
                if arcs.len() > caps.arcs {
                    return Err(Error::CapExceeded {
                        what: "arcs",
                        cap: caps.arcs,
                        partial: arcs.len() - 1,
                    });
                }
                if visited.insert(w.clone()) {
                    if visited.len() > caps.nodes {
                        return Err(Error::CapExceeded {
                            what: "nodes",
                            cap: caps.nodes,
                            partial: visited.len() - 1,
                        });
                    }
                    queue.push_back(w);
                }
            }
        }
    }

    Ok(ClusterGraph::from_parts(visited, arcs, initial_reps))
}

/// Targets reached from cluster `u` by move `d`: `(target rep, witness)`
/// pairs, deduplicated, witnesses lexicographically minimal per target in
/// exhaustive mode.
fn probe_move(
    cache: &BasisCache,
    u: &State,
    d: &[i64],
    mode: ReconstructionMode,
    caps: GraphCaps,
) -> Result<Vec<(State, State)>> {
    let base = cache.base();
    match mode {
        ReconstructionMode::Direct => {
            let Some(z) = transition_witness(cache, u, d)? else {
                return Ok(Vec::new());
            };
            let t = z
                .apply_signed(d)
                .ok_or(Error::Contract("witness does not admit its move"))?;
            let w = base.normal_form(&t)?;
            if w == *u {
                Ok(Vec::new())
            } else {
                Ok(vec![(w, z)])
            }
        }
        ReconstructionMode::Exhaustive => {
            let grading = cache.grading();
            let degree = grading.degree(u)?;
            let fiber = enumerate_fiber(grading, &degree, caps.fiber)?;
            let mut out: BTreeMap<State, State> = BTreeMap::new();
            for z in fiber {
                if base.normal_form(&z)? != *u {
                    continue;
                }
                let Some(t) = z.apply_signed(d) else { continue };
                let w = base.normal_form(&t)?;
                if w != *u {
                    // fiber enumeration is ascending, first witness is minimal
                    out.entry(w).or_insert(z);
                }
            }
            Ok(out.into_iter().collect())
        }
    }
}
